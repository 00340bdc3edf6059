//! Arbitrary-length DFT by the chirp transform, and cyclic convolutions
//! built on it.
//!
//! A length-`n` DFT is rewritten with `jk = (j^2 + k^2 - (k-j)^2) / 2` as a
//! linear convolution against the chirp `exp(i pi t^2 / n)`, which is then
//! evaluated with power-of-two FFTs of length at least `2n - 1`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

pub struct ChirpDft {
    len: usize,
    // exp(-i pi j^2 / n), j = 0..n
    chirp: Vec<Complex64>,
    // FFT of the conjugate chirp laid out cyclically, pre-scaled by 1/L
    kernel: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    backward: Arc<dyn Fft<f64>>,
}

fn chirp_at(j: usize, len: usize) -> Complex64 {
    // j^2 mod 2n keeps the phase argument small and exact
    let two_n = 2 * len as u128;
    let sq = (j as u128 * j as u128) % two_n;
    Complex64::from_polar(1.0, -PI * sq as f64 / len as f64)
}

impl ChirpDft {
    pub fn new(len: usize) -> Self {
        assert!(len > 0, "DFT length must be positive");
        let inner = (2 * len - 1).next_power_of_two();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(inner);
        let backward = planner.plan_fft_inverse(inner);

        let chirp: Vec<Complex64> = (0..len).map(|j| chirp_at(j, len)).collect();
        let scale = 1.0 / inner as f64;
        let mut kernel = vec![Complex64::new(0.0, 0.0); inner];
        kernel[0] = chirp[0].conj() * scale;
        for t in 1..len {
            let w = chirp[t].conj() * scale;
            kernel[t] = w;
            kernel[inner - t] = w;
        }
        forward.process(&mut kernel);

        ChirpDft {
            len,
            chirp,
            kernel,
            forward,
            backward,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// In-place forward DFT, `X_k = sum_j x_j exp(-2 pi i jk / n)`.
    pub fn forward(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.len);
        let mut work = vec![Complex64::new(0.0, 0.0); self.kernel.len()];
        for ((w, x), c) in work.iter_mut().zip(data.iter()).zip(&self.chirp) {
            *w = x * c;
        }
        self.forward.process(&mut work);
        for (w, k) in work.iter_mut().zip(&self.kernel) {
            *w *= k;
        }
        self.backward.process(&mut work);
        for ((out, w), c) in data.iter_mut().zip(&work).zip(&self.chirp) {
            *out = w * c;
        }
    }

    /// In-place inverse DFT including the `1/n` normalization.
    pub fn inverse(&self, data: &mut [Complex64]) {
        data.iter_mut().for_each(|x| *x = x.conj());
        self.forward(data);
        let scale = 1.0 / self.len as f64;
        data.iter_mut().for_each(|x| *x = x.conj() * scale);
    }
}

/// `c_j = sum_k a_k b_{(j - k) mod n}` for equal-length inputs.
pub fn cyclic_convolution(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(a.len(), b.len(), "cyclic convolution needs equal lengths");
    if a.is_empty() {
        return Vec::new();
    }
    let dft = ChirpDft::new(a.len());
    let mut fa = a.to_vec();
    let mut fb = b.to_vec();
    dft.forward(&mut fa);
    dft.forward(&mut fb);
    fa.iter_mut().zip(&fb).for_each(|(x, y)| *x *= y);
    dft.inverse(&mut fa);
    fa
}

pub fn cyclic_self_convolution(a: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() {
        return Vec::new();
    }
    let dft = ChirpDft::new(a.len());
    let mut fa = a.to_vec();
    dft.forward(&mut fa);
    fa.iter_mut().for_each(|x| *x = *x * *x);
    dft.inverse(&mut fa);
    fa
}
