//! Flat Rayleigh channel realizations, per-antenna norms, the max-norm
//! antenna selection rule, AWGN, and reproducible random substreams.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Dense complex matrix used for channels, codewords and received blocks.
pub type CMatrix = DMatrix<Complex64>;

/// A reproducible random substream keyed by `(seed, stream_id)`.
///
/// Each Monte Carlo trial (and each role inside a trial) owns its own
/// stream, so results do not depend on the order in which trials run.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Standard normal draw.
    pub fn gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Circularly-symmetric complex Gaussian with the given variance.
    pub fn complex_gaussian(&mut self, variance: f64) -> Complex64 {
        let scale = (variance / 2.0).sqrt();
        let re = self.gaussian();
        let im = self.gaussian();
        Complex64::new(re * scale, im * scale)
    }

    pub fn bit(&mut self) -> u8 {
        (self.rng.next_u32() & 1) as u8
    }

    pub fn bits(&mut self, n: usize) -> Vec<u8> {
        (0..n).map(|_| self.bit()).collect()
    }
}

/// An `nr x nt` flat-fading channel. Column `i` is the vector seen from
/// transmit antenna `i` across all receive antennas.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelMatrix(CMatrix);

impl ChannelMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.nrows() == 0 || entries.ncols() == 0 {
            return Err(Error::InvalidDimension(format!(
                "channel must be at least 1x1, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries
            .iter()
            .any(|h| !h.re.is_finite() || !h.im.is_finite())
        {
            return Err(Error::InvalidInput("channel entries must be finite".into()));
        }
        Ok(Self(entries))
    }

    /// Row-major constructor, handy for tests and the C interface.
    pub fn from_row_slice(nr: usize, nt: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != nr * nt {
            return Err(Error::InvalidDimension(format!(
                "expected {} entries for a {nr}x{nt} channel, got {}",
                nr * nt,
                entries.len()
            )));
        }
        Self::new(CMatrix::from_row_slice(nr, nt, entries))
    }

    /// Unit-gain channel (every entry `1 + 0i`), used for non-fading runs.
    pub fn unit(nr: usize, nt: usize) -> Result<Self> {
        check_dims(nr, nt)?;
        Ok(Self(CMatrix::from_element(
            nr,
            nt,
            Complex64::new(1.0, 0.0),
        )))
    }

    pub fn nr(&self) -> usize {
        self.0.nrows()
    }

    pub fn nt(&self) -> usize {
        self.0.ncols()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn column(&self, i: usize) -> Vec<Complex64> {
        self.0.column(i).iter().copied().collect()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self(self.0.map(|h| h * factor))
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.0.iter().map(|h| h.norm_sqr()).sum()
    }
}

fn check_dims(nr: usize, nt: usize) -> Result<()> {
    if nr == 0 || nt == 0 {
        return Err(Error::InvalidDimension(format!(
            "nr and nt must be positive, got {nr}x{nt}"
        )));
    }
    Ok(())
}

/// Draws an `nr x nt` matrix of i.i.d. CN(0, 1) entries.
///
/// Entries are drawn column by column, so the first `k` columns of an
/// `nr x nt` draw equal an `nr x k` draw from the same stream state.
pub fn sample_rayleigh(nr: usize, nt: usize, stream: &mut RngStream) -> Result<ChannelMatrix> {
    check_dims(nr, nt)?;
    let mut entries = CMatrix::zeros(nr, nt);
    for c in 0..nt {
        for r in 0..nr {
            entries[(r, c)] = stream.complex_gaussian(1.0);
        }
    }
    Ok(ChannelMatrix(entries))
}

/// Euclidean norm of every column of `h`.
pub fn column_norms(h: &ChannelMatrix) -> Vec<f64> {
    h.0.column_iter()
        .map(|col| col.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt())
        .collect()
}

/// Index of the transmit antenna with the largest column norm. Ties go to
/// the lowest index.
pub fn select_best_antenna(h: &ChannelMatrix) -> usize {
    argmax_lowest(&column_norms(h))
}

pub(crate) fn argmax_lowest(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Adds i.i.d. CN(0, `noise_variance`) to every entry of `signal`.
///
/// Noise is drawn row by row (one channel use at a time).
pub fn add_awgn(signal: &CMatrix, noise_variance: f64, stream: &mut RngStream) -> Result<CMatrix> {
    if !(noise_variance >= 0.0) || !noise_variance.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "noise variance must be finite and nonnegative, got {noise_variance}"
        )));
    }
    let mut out = signal.clone();
    if noise_variance == 0.0 {
        return Ok(out);
    }
    for r in 0..out.nrows() {
        for c in 0..out.ncols() {
            out[(r, c)] += stream.complex_gaussian(noise_variance);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rayleigh_shape_and_determinism() {
        let h = sample_rayleigh(2, 4, &mut RngStream::new(7, 0)).unwrap();
        assert_eq!((h.nr(), h.nt()), (2, 4));
        assert!(h
            .matrix()
            .iter()
            .all(|x| x.re.is_finite() && x.im.is_finite()));

        let a = sample_rayleigh(2, 4, &mut RngStream::new(7, 0)).unwrap();
        let b = sample_rayleigh(2, 4, &mut RngStream::new(7, 0)).unwrap();
        assert_eq!(a, b);
        let other = sample_rayleigh(2, 4, &mut RngStream::new(7, 1)).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn rayleigh_rejects_zero_dims() {
        let mut s = RngStream::new(1, 0);
        assert!(matches!(
            sample_rayleigh(0, 2, &mut s),
            Err(Error::InvalidDimension(_))
        ));
        assert!(matches!(
            sample_rayleigh(2, 0, &mut s),
            Err(Error::InvalidDimension(_))
        ));
    }

    #[test]
    fn rayleigh_unit_entry_power() {
        // law of large numbers on E|h|^2 = 1; |h|^2 ~ Exp(1) so the
        // standard error over n draws is 1/sqrt(n)
        let n = 1_000_000;
        let mut s = RngStream::new(11, 3);
        let mut acc = 0.0;
        for _ in 0..n {
            acc += sample_rayleigh(1, 1, &mut s).unwrap().matrix()[(0, 0)].norm_sqr();
        }
        let mean = acc / n as f64;
        assert!((mean - 1.0).abs() < 0.01, "mean |h|^2 = {mean}");
        assert!((mean - 1.0).abs() < 3.0 / (n as f64).sqrt());
    }

    #[test]
    fn column_norm_cases() {
        let eye = ChannelMatrix::new(CMatrix::identity(2, 2)).unwrap();
        assert_eq!(column_norms(&eye), vec![1.0, 1.0]);

        let single = ChannelMatrix::from_row_slice(2, 1, &[c(3.0, 4.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(column_norms(&single), vec![5.0]);

        let zero = ChannelMatrix::new(CMatrix::zeros(2, 3)).unwrap();
        assert_eq!(column_norms(&zero), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn select_best_cases() {
        let h =
            ChannelMatrix::from_row_slice(1, 3, &[c(1.0, 0.0), c(0.0, 3.0), c(2.0, 0.0)]).unwrap();
        assert_eq!(select_best_antenna(&h), 1);
        let h = ChannelMatrix::from_row_slice(2, 1, &[c(0.1, 0.0), c(0.2, 0.0)]).unwrap();
        assert_eq!(select_best_antenna(&h), 0);
        let h = ChannelMatrix::from_row_slice(1, 2, &[c(2.0, 0.0), c(0.0, -2.0)]).unwrap();
        assert_eq!(select_best_antenna(&h), 0);
    }

    #[test]
    fn awgn_zero_variance_is_identity() {
        let x = CMatrix::from_fn(3, 2, |r, c| Complex64::new(r as f64, c as f64));
        let y = add_awgn(&x, 0.0, &mut RngStream::new(1, 1)).unwrap();
        assert_eq!(x, y);
        assert!(matches!(
            add_awgn(&x, -1.0, &mut RngStream::new(1, 1)),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn awgn_variance_and_determinism() {
        let x = CMatrix::zeros(1000, 1000);
        let y = add_awgn(&x, 1.0, &mut RngStream::new(5, 9)).unwrap();
        let var = y.iter().map(|n| n.norm_sqr()).sum::<f64>() / 1e6;
        assert!((var - 1.0).abs() < 0.01, "variance {var}");
        let y2 = add_awgn(&x, 1.0, &mut RngStream::new(5, 9)).unwrap();
        assert_eq!(y, y2);
    }

    fn arb_channel() -> impl Strategy<Value = ChannelMatrix> {
        (1usize..5, 1usize..6, any::<u64>()).prop_map(|(nr, nt, seed)| {
            sample_rayleigh(nr, nt, &mut RngStream::new(seed, 0)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn selection_invariant_under_positive_scaling(h in arb_channel(), k in 1e-3f64..1e3) {
            prop_assert_eq!(select_best_antenna(&h), select_best_antenna(&h.scaled(k)));
        }

        #[test]
        fn column_norms_permute_with_columns(h in arb_channel(), rot in 0usize..8) {
            let nt = h.nt();
            let perm: Vec<usize> = (0..nt).map(|i| (i + rot) % nt).collect();
            let permuted = CMatrix::from_fn(h.nr(), nt, |r, c| h.matrix()[(r, perm[c])]);
            let permuted = ChannelMatrix::new(permuted).unwrap();
            let norms = column_norms(&h);
            let expect: Vec<f64> = perm.iter().map(|&p| norms[p]).collect();
            prop_assert_eq!(column_norms(&permuted), expect);
        }
    }
}
