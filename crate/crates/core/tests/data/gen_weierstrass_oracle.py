"""Reference Weierstrass samples by direct extended-precision summation.

Evaluates W(t_k) = sum_{n=0}^{n_max} cos(2^n t_k) / 2^((2-D) n) with
t_k = 2*pi*k/(N-1), k = 0..N-1 (N points from 0 to 2*pi inclusive), at
120 decimal digits, with no modular reduction of the phase. Output: one value per line, 17 significant digits.
"""
import sys
import mpmath

mpmath.mp.dps = 120


def series(d, n_points, n_max):
    d = mpmath.mpf(d)
    two_pi = 2 * mpmath.pi
    amps = [mpmath.power(2, -(2 - d) * n) for n in range(n_max + 1)]
    out = []
    for k in range(n_points):
        t = two_pi * k / (n_points - 1)
        s = mpmath.mpf(0)
        for n in range(n_max + 1):
            s += mpmath.cos(mpmath.power(2, n) * t) * amps[n]
        out.append(s)
    return out


if __name__ == "__main__":
    d, n_points, n_max, path = sys.argv[1], int(sys.argv[2]), int(sys.argv[3]), sys.argv[4]
    with open(path, "w") as f:
        for v in series(d, n_points, n_max):
            f.write(mpmath.nstr(v, 17, strip_zeros=False) + "\n")
