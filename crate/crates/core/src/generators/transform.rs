use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::series::{Provenance, TimeSeries};

/// Adds white Gaussian noise at `snr_db` relative to the measured mean
/// square of `ts`.
pub fn add_white_noise(ts: &TimeSeries, snr_db: f64, seed: u64) -> Result<TimeSeries> {
    if ts.is_empty() {
        return Err(Error::InvalidParameter("cannot add noise to an empty series".into()));
    }
    if !snr_db.is_finite() {
        return Err(Error::InvalidParameter(format!("snr_db {snr_db} must be finite")));
    }
    let x = ts.samples();
    let power = x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64;
    let noise_var = power / 10f64.powf(snr_db / 10.0);
    let meta = Provenance { snr_db: Some(snr_db), seed: Some(seed), ..ts.meta().clone() };
    if noise_var == 0.0 {
        return Ok(TimeSeries::from_parts_unchecked(x.to_vec(), meta));
    }
    let normal = Normal::new(0.0, noise_var.sqrt())
        .map_err(|e| Error::InvalidParameter(format!("noise level: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noisy = x.iter().map(|v| v + normal.sample(&mut rng)).collect();
    TimeSeries::new(noisy, meta)
}

/// Keeps every `stride`-th sample starting with the first.
pub fn downsample(ts: &TimeSeries, stride: usize) -> Result<TimeSeries> {
    if stride == 0 {
        return Err(Error::InvalidParameter("stride must be >= 1".into()));
    }
    if ts.len() < stride {
        return Err(Error::TooShort { needed: stride, got: ts.len() });
    }
    let samples = ts.samples().iter().step_by(stride).copied().collect();
    let meta = Provenance { stride: ts.meta().stride * stride, ..ts.meta().clone() };
    Ok(TimeSeries::from_parts_unchecked(samples, meta))
}

/// Splits into `len / segment_length` consecutive non-overlapping pieces;
/// the tail remainder is dropped.
pub fn segment(ts: &TimeSeries, segment_length: usize) -> Result<Vec<TimeSeries>> {
    if segment_length < 2 {
        return Err(Error::InvalidParameter(format!("segment length {segment_length} < 2")));
    }
    if segment_length > ts.len() {
        return Err(Error::TooShort { needed: segment_length, got: ts.len() });
    }
    Ok(ts
        .samples()
        .chunks_exact(segment_length)
        .enumerate()
        .map(|(i, chunk)| {
            let meta = Provenance { segment_index: Some(i), ..ts.meta().clone() };
            TimeSeries::from_parts_unchecked(chunk.to_vec(), meta)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{weierstrass, WeierstrassSpec};
    use proptest::prelude::*;

    fn ramp(n: usize) -> TimeSeries {
        TimeSeries::from_samples((1..=n).map(|i| i as f64).collect()).unwrap()
    }

    #[test]
    fn downsample_indices() {
        let ts = downsample(&ramp(10), 3).unwrap();
        assert_eq!(ts.samples(), &[1.0, 4.0, 7.0, 10.0]);
        assert_eq!(ts.meta().stride, 3);
        let twice = downsample(&ts, 2).unwrap();
        assert_eq!(twice.meta().stride, 6);
        assert_eq!(downsample(&ramp(10), 1).unwrap(), ramp(10));
        assert!(downsample(&ramp(10), 0).is_err());
        assert!(downsample(&ramp(2), 3).is_err());
    }

    #[test]
    fn coarse_sampling_of_full_weierstrass() {
        let wf = weierstrass(&WeierstrassSpec { n_max: 4, ..WeierstrassSpec::new(1.5) }).unwrap();
        assert_eq!(downsample(&wf, 100).unwrap().len(), 3142);
        assert_eq!(downsample(&wf, 10).unwrap().len(), 31416);
        assert_eq!(segment(&wf, 500).unwrap().len(), 628);
    }

    #[test]
    fn segment_counts() {
        assert_eq!(segment(&ramp(320_000), 500).unwrap().len(), 640);
        let one = segment(&ramp(500), 500).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].samples(), ramp(500).samples());
        assert_eq!(one[0].meta().segment_index, Some(0));
        assert!(segment(&ramp(10), 11).is_err());
        assert!(segment(&ramp(10), 1).is_err());
    }

    #[test]
    fn noise_on_zero_signal_is_zero() {
        let zero = TimeSeries::from_samples(vec![0.0; 1000]).unwrap();
        let out = add_white_noise(&zero, 50.0, 3).unwrap();
        assert_eq!(out.samples(), zero.samples());
        assert_eq!(out.meta().snr_db, Some(50.0));
    }

    #[test]
    fn realized_snr() {
        let wf = weierstrass(&WeierstrassSpec { num_points: 20_000, n_max: 60, ..WeierstrassSpec::new(1.2) })
            .unwrap();
        for snr in [50.0, 60.0, 70.0] {
            let noisy = add_white_noise(&wf, snr, 9).unwrap();
            let ps: f64 = wf.samples().iter().map(|v| v * v).sum();
            let pn: f64 = noisy.samples().iter().zip(wf.samples()).map(|(a, b)| (a - b).powi(2)).sum();
            let realized = 10.0 * (ps / pn).log10();
            assert!((realized - snr).abs() < 0.5, "snr {snr}: realized {realized}");
        }
        assert_eq!(add_white_noise(&wf, 50.0, 1).unwrap(), add_white_noise(&wf, 50.0, 1).unwrap());
        assert!(add_white_noise(&wf, f64::NAN, 1).is_err());
    }

    proptest! {
        #[test]
        fn segments_concatenate_to_input(n in 2usize..400, len in 2usize..60) {
            prop_assume!(len <= n);
            let ts = ramp(n);
            let parts = segment(&ts, len).unwrap();
            prop_assert_eq!(parts.len(), n / len);
            let mut joined: Vec<f64> = parts.iter().flat_map(|p| p.samples().to_vec()).collect();
            joined.extend_from_slice(&ts.samples()[parts.len() * len..]);
            prop_assert_eq!(joined, ts.samples().to_vec());
        }
    }
}
