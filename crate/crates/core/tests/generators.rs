use std::path::PathBuf;

use fracdim::generators::{add_white_noise, downsample, fbm, segment, weierstrass, FbmSpec, WeierstrassSpec};
use fracdim::GeneratorKind;

fn fixture(name: &str) -> Vec<f64> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    std::fs::read_to_string(path).unwrap().lines().map(|l| l.trim().parse().unwrap()).collect()
}

#[test]
fn weierstrass_short_series_matches_oracle() {
    let expected = fixture("wf_d1.2_n64_m20.txt");
    let got = weierstrass(&WeierstrassSpec { dimension: 1.2, num_points: 64, n_max: 20 }).unwrap();
    assert_eq!(got.len(), 64);
    for (k, (a, b)) in got.samples().iter().zip(&expected).enumerate() {
        assert!((a - b).abs() <= 1e-9, "sample {k}: {a} vs {b}");
    }
    assert_eq!(got.meta().generator, GeneratorKind::Weierstrass);
    assert_eq!(got.meta().target_dimension, Some(1.2));
    assert_eq!(got.meta().stride, 1);
}

#[test]
fn two_point_fbm_increment_variance() {
    // a single increment is N(0, v); check the ensemble variance
    let v = 2.5;
    let n = 20_000;
    let sum_sq: f64 = (0..n)
        .map(|s| {
            let x = fbm(&FbmSpec { hurst: 0.3, length: 2, seed: s, scale: v }).unwrap();
            x.samples()[1].powi(2)
        })
        .sum();
    let var = sum_sq / n as f64;
    // standard error of a chi-square mean is v * sqrt(2 / n) ~ 0.025
    assert!((var - v).abs() < 0.1, "variance {var}");
}

#[test]
fn pipeline_preserves_provenance() {
    let ts = weierstrass(&WeierstrassSpec::new(1.4)).unwrap();
    let noisy = add_white_noise(&ts, 60.0, 3).unwrap();
    let coarse = downsample(&noisy, 10).unwrap();
    assert_eq!(coarse.len(), 31_416);
    let pieces = segment(&coarse, 500).unwrap();
    assert_eq!(pieces.len(), 62);
    let last = pieces.last().unwrap().meta();
    assert_eq!(last.snr_db, Some(60.0));
    assert_eq!(last.stride, 10);
    assert_eq!(last.segment_index, Some(61));
    assert_eq!(last.target_dimension, Some(1.4));
}

#[test]
fn paper_sample_counts() {
    let wf = weierstrass(&WeierstrassSpec::new(1.5)).unwrap();
    let fb = fbm(&FbmSpec::from_dimension(1.5, 320_000, 1)).unwrap();
    assert_eq!(segment(&wf, 500).unwrap().len(), 628);
    assert_eq!(segment(&fb, 500).unwrap().len(), 640);
    assert_eq!(downsample(&wf, 100).unwrap().len(), 3142);
    assert_eq!(downsample(&wf, 10).unwrap().len(), 31_416);
}
