//! Thin wrappers over rustfft with the numpy-style conventions used here:
//! forward = unnormalized `Σ x_g e^{-2πi kg/n}`, inverse = unnormalized
//! `Σ X_k e^{+2πi kg/n}` (divide by `n` explicitly where needed).

use crate::C64;
use rustfft::FftPlanner;

/// In-place unnormalized forward DFT.
pub(crate) fn fft_forward(data: &mut [C64]) {
    FftPlanner::new().plan_fft_forward(data.len()).process(data);
}

/// In-place unnormalized inverse DFT (no 1/n factor).
pub(crate) fn fft_inverse(data: &mut [C64]) {
    FftPlanner::new().plan_fft_inverse(data.len()).process(data);
}

/// Integer DFT frequencies in storage order: 0, 1, …, n/2-1, -n/2, …, -1
/// (for even n; odd n runs 0…(n-1)/2, -(n-1)/2…-1).
pub(crate) fn dft_int_freqs(n: usize) -> Vec<i64> {
    let half = (n as i64 + 1) / 2;
    (0..n as i64).map(|k| if k < half { k } else { k - n as i64 }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_inverse_round_trip() {
        let n = 16;
        let orig: Vec<C64> = (0..n)
            .map(|g| C64::new((g as f64).sin(), (g as f64 * 0.3).cos()))
            .collect();
        let mut data = orig.clone();
        fft_forward(&mut data);
        fft_inverse(&mut data);
        for (a, b) in orig.iter().zip(&data) {
            assert!((a - b / n as f64).norm() < 1e-13);
        }
    }

    #[test]
    fn frequencies_match_numpy_order() {
        assert_eq!(dft_int_freqs(8), vec![0, 1, 2, 3, -4, -3, -2, -1]);
        assert_eq!(dft_int_freqs(5), vec![0, 1, 2, -2, -1]);
    }

    #[test]
    fn forward_matches_direct_sum() {
        let n = 8;
        let x: Vec<C64> = (0..n).map(|g| C64::new(g as f64, -(g as f64) * 0.5)).collect();
        let mut data = x.clone();
        fft_forward(&mut data);
        for k in 0..n {
            let mut direct = C64::new(0.0, 0.0);
            for (g, xg) in x.iter().enumerate() {
                let ang = -2.0 * std::f64::consts::PI * (k * g) as f64 / n as f64;
                direct += xg * C64::new(ang.cos(), ang.sin());
            }
            assert!((direct - data[k]).norm() < 1e-12);
        }
    }
}
