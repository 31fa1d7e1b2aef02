//! BPSK mapping, orthogonal space-time block codes, single-antenna
//! selection transmission, and the MRC / zero-forcing receivers.

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use num_complex::Complex64;

use crate::channel::{CMatrix, ChannelMatrix};
use crate::error::{Error, Result};

/// Relative singular-value threshold below which a composite channel is
/// treated as rank deficient.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Transmit scheme of a link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    /// Orthogonal space-time block code over all transmit antennas.
    Stbc,
    /// Single-antenna transmission from the antenna with the strongest channel.
    MaxSel,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Stbc => "stbc",
            Scheme::MaxSel => "maxsel",
        }
    }

    /// Checks that the scheme can drive `nt` transmit antennas.
    pub fn validate(self, nt: usize) -> Result<()> {
        match self {
            Scheme::Stbc if nt != 2 && nt != 4 => Err(Error::InvalidParameter(format!(
                "stbc needs 2 or 4 transmit antennas, got {nt}"
            ))),
            _ if nt == 0 => Err(Error::InvalidParameter("nt must be at least 1".into())),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "stbc" => Ok(Scheme::Stbc),
            "maxsel" => Ok(Scheme::MaxSel),
            other => Err(Error::InvalidInput(format!(
                "unknown scheme `{other}` (expected stbc or maxsel)"
            ))),
        }
    }
}

/// A transmitted block: rows are channel uses, columns are transmit antennas.
#[derive(Debug, Clone, PartialEq)]
pub struct Codeword {
    symbols: CMatrix,
    symbols_carried: usize,
}

impl Codeword {
    pub fn new(symbols: CMatrix, symbols_carried: usize) -> Result<Self> {
        if symbols.nrows() == 0 || symbols.ncols() == 0 || symbols_carried == 0 {
            return Err(Error::InvalidDimension("empty codeword".into()));
        }
        Ok(Self {
            symbols,
            symbols_carried,
        })
    }

    pub fn n_time(&self) -> usize {
        self.symbols.nrows()
    }

    pub fn n_tx(&self) -> usize {
        self.symbols.ncols()
    }

    pub fn symbols(&self) -> &CMatrix {
        &self.symbols
    }

    pub fn symbols_carried(&self) -> usize {
        self.symbols_carried
    }

    /// Total radiated energy, sum of |x|^2 over the block.
    pub fn energy(&self) -> f64 {
        self.symbols.iter().map(|x| x.norm_sqr()).sum()
    }
}

/// Decoder output: one decision statistic per information symbol plus the
/// post-combining SNR multiplier of that symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftSymbols {
    pub values: Vec<Complex64>,
    pub effective_gain: Vec<f64>,
}

impl SoftSymbols {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn bpsk_modulate(bits: &[u8]) -> Vec<Complex64> {
    bits.iter()
        .map(|&b| Complex64::new(if b == 0 { 1.0 } else { -1.0 }, 0.0))
        .collect()
}

/// Hard decision: bit 0 iff the real part is nonnegative.
pub fn bpsk_demodulate(soft: &SoftSymbols) -> Vec<u8> {
    soft.values.iter().map(|v| u8::from(v.re < 0.0)).collect()
}

/// One nonzero cell of a dispersion matrix: symbol `k` contributes
/// `re(s_k) * on_re + im(s_k) * on_im` at `(time, antenna)`.
#[derive(Debug, Clone, Copy)]
struct Cell {
    time: usize,
    antenna: usize,
    on_re: Complex64,
    on_im: Complex64,
}

/// A complex orthogonal design stored as per-symbol sparse dispersion
/// matrices. The codeword is real-linear in the information symbols.
#[derive(Debug, Clone)]
pub struct OrthogonalDesign {
    n_time: usize,
    n_tx: usize,
    cells: Vec<Vec<Cell>>,
}

impl OrthogonalDesign {
    /// Builds a design from a layout of `(symbol, sign, conjugated)` entries
    /// scaled by `scale`.
    fn from_layout(layout: &[&[(usize, f64, bool)]], n_symbols: usize, scale: f64) -> Self {
        let n_time = layout.len();
        let n_tx = layout[0].len();
        let mut cells = vec![Vec::new(); n_symbols];
        for (time, row) in layout.iter().enumerate() {
            for (antenna, &(k, sign, conj)) in row.iter().enumerate() {
                let a = sign * scale;
                cells[k].push(Cell {
                    time,
                    antenna,
                    on_re: Complex64::new(a, 0.0),
                    on_im: Complex64::new(0.0, if conj { -a } else { a }),
                });
            }
        }
        Self {
            n_time,
            n_tx,
            cells,
        }
    }

    pub fn n_time(&self) -> usize {
        self.n_time
    }

    pub fn n_tx(&self) -> usize {
        self.n_tx
    }

    pub fn n_symbols(&self) -> usize {
        self.cells.len()
    }

    pub fn encode(&self, symbols: &[Complex64]) -> Result<Codeword> {
        if symbols.len() != self.n_symbols() {
            return Err(Error::InvalidInput(format!(
                "{}-antenna STBC block takes {} symbols, got {}",
                self.n_tx,
                self.n_symbols(),
                symbols.len()
            )));
        }
        let mut x = CMatrix::zeros(self.n_time, self.n_tx);
        for (s, cells) in symbols.iter().zip(&self.cells) {
            for cell in cells {
                x[(cell.time, cell.antenna)] += cell.on_re * s.re + cell.on_im * s.im;
            }
        }
        Codeword::new(x, self.n_symbols())
    }

    /// Linear ML combining: projects the received block onto the effective
    /// signature of each real and imaginary symbol component.
    pub fn decode(&self, received: &CMatrix, h: &ChannelMatrix) -> Result<SoftSymbols> {
        if h.nt() != self.n_tx {
            return Err(Error::InvalidInput(format!(
                "channel has {} transmit antennas, code needs {}",
                h.nt(),
                self.n_tx
            )));
        }
        if received.nrows() != self.n_time || received.ncols() != h.nr() {
            return Err(Error::InvalidInput(format!(
                "received block is {}x{}, expected {}x{}",
                received.nrows(),
                received.ncols(),
                self.n_time,
                h.nr()
            )));
        }
        let hm = h.matrix();
        let mut values = Vec::with_capacity(self.n_symbols());
        let mut gains = Vec::with_capacity(self.n_symbols());
        for cells in &self.cells {
            let (mut z_re, mut z_im, mut g_re, mut g_im) = (0.0, 0.0, 0.0, 0.0);
            for cell in cells {
                for r in 0..h.nr() {
                    let hv = hm[(r, cell.antenna)];
                    let y = received[(cell.time, r)];
                    let sig_re = cell.on_re * hv;
                    let sig_im = cell.on_im * hv;
                    z_re += (sig_re.conj() * y).re;
                    z_im += (sig_im.conj() * y).re;
                    g_re += sig_re.norm_sqr();
                    g_im += sig_im.norm_sqr();
                }
            }
            let re = if g_re > 0.0 { z_re / g_re } else { 0.0 };
            let im = if g_im > 0.0 { z_im / g_im } else { 0.0 };
            values.push(Complex64::new(re, im));
            gains.push(g_re);
        }
        Ok(SoftSymbols {
            values,
            effective_gain: gains,
        })
    }
}

static ALAMOUTI: LazyLock<OrthogonalDesign> = LazyLock::new(|| {
    OrthogonalDesign::from_layout(
        &[
            &[(0, 1.0, false), (1, 1.0, false)],
            &[(1, -1.0, true), (0, 1.0, true)],
        ],
        2,
        std::f64::consts::FRAC_1_SQRT_2,
    )
});

// Rate-1/2 complex orthogonal design for four antennas: a real 4x4
// orthogonal design stacked over its conjugate.
static OSTBC4: LazyLock<OrthogonalDesign> = LazyLock::new(|| {
    let real: [[(usize, f64); 4]; 4] = [
        [(0, 1.0), (1, 1.0), (2, 1.0), (3, 1.0)],
        [(1, -1.0), (0, 1.0), (3, -1.0), (2, 1.0)],
        [(2, -1.0), (3, 1.0), (0, 1.0), (1, -1.0)],
        [(3, -1.0), (2, -1.0), (1, 1.0), (0, 1.0)],
    ];
    let rows: Vec<Vec<(usize, f64, bool)>> = [false, true]
        .iter()
        .flat_map(|&conj| {
            real.iter()
                .map(move |row| row.iter().map(|&(k, s)| (k, s, conj)).collect())
        })
        .collect();
    let layout: Vec<&[(usize, f64, bool)]> = rows.iter().map(Vec::as_slice).collect();
    OrthogonalDesign::from_layout(&layout, 4, 1.0 / 8f64.sqrt())
});

/// The orthogonal design used for `nt` transmit antennas (2 or 4).
pub fn stbc_design(nt: usize) -> Result<&'static OrthogonalDesign> {
    match nt {
        2 => Ok(&ALAMOUTI),
        4 => Ok(&OSTBC4),
        _ => Err(Error::InvalidParameter(format!(
            "no orthogonal design for {nt} transmit antennas"
        ))),
    }
}

/// Alamouti block `[[s1, s2], [-s2*, s1*]] / sqrt(2)`.
pub fn alamouti_encode(symbols: &[Complex64]) -> Result<Codeword> {
    ALAMOUTI.encode(symbols)
}

/// Rate-1/2 orthogonal block over four antennas, 8 channel uses, block
/// energy equal to the input energy.
pub fn ostbc4_encode(symbols: &[Complex64]) -> Result<Codeword> {
    OSTBC4.encode(symbols)
}

/// Decodes an orthogonal STBC block; the design is chosen from `h.nt()`.
pub fn stbc_decode(received: &CMatrix, h: &ChannelMatrix) -> Result<SoftSymbols> {
    stbc_design(h.nt())
        .map_err(|e| Error::InvalidInput(e.to_string()))?
        .decode(received, h)
}

/// Places `symbols` on column `antenna` of an `n x nt` block.
pub fn selection_transmit(symbols: &[Complex64], antenna: usize, nt: usize) -> Result<Codeword> {
    if antenna >= nt {
        return Err(Error::InvalidInput(format!(
            "antenna {antenna} out of range for {nt} transmit antennas"
        )));
    }
    let mut x = CMatrix::zeros(symbols.len(), nt);
    for (t, s) in symbols.iter().enumerate() {
        x[(t, antenna)] = *s;
    }
    Codeword::new(x, symbols.len())
}

/// Maximal ratio combining with channel vector `h`: statistic `h^H y` for
/// every channel use, gain `||h||^2`.
pub fn mrc_combine(received: &CMatrix, h: &[Complex64]) -> Result<SoftSymbols> {
    if received.ncols() != h.len() {
        return Err(Error::InvalidInput(format!(
            "received block has {} antennas, channel vector has {}",
            received.ncols(),
            h.len()
        )));
    }
    let gain: f64 = h.iter().map(|x| x.norm_sqr()).sum();
    let values = received
        .row_iter()
        .map(|y| y.iter().zip(h).map(|(y, h)| h.conj() * y).sum())
        .collect::<Vec<Complex64>>();
    Ok(SoftSymbols {
        effective_gain: vec![gain; values.len()],
        values,
    })
}

/// Zero-forcing separation of `K` simultaneous streams.
///
/// `received` is `n_time x nr`, `composite` is `nr x K` with one column per
/// stream. Returns one `SoftSymbols` per stream; `effective_gain` is the
/// post-ZF SNR multiplier `1 / [(H^H H)^-1]_kk`.
pub fn zf_receive(received: &CMatrix, composite: &CMatrix) -> Result<Vec<SoftSymbols>> {
    let (nr, k) = composite.shape();
    if k == 0 || k > nr {
        return Err(Error::InvalidInput(format!(
            "zero forcing needs 1 <= streams <= receive antennas, got {k} streams and {nr} antennas"
        )));
    }
    if received.ncols() != nr {
        return Err(Error::InvalidInput(format!(
            "received block has {} antennas, composite channel has {nr}",
            received.ncols()
        )));
    }
    let svd = composite.clone().svd(false, false);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smax > 0.0) || smin <= RANK_TOLERANCE * smax {
        return Err(Error::SingularChannel);
    }
    let hh = composite.adjoint();
    let gram_inv = (&hh * composite)
        .try_inverse()
        .ok_or(Error::SingularChannel)?;
    let w = &gram_inv * &hh;
    // n_time x K
    let est = received * w.transpose();
    Ok((0..k)
        .map(|s| {
            let g = 1.0 / gram_inv[(s, s)].re;
            SoftSymbols {
                values: est.column(s).iter().copied().collect(),
                effective_gain: vec![g; est.nrows()],
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{sample_rayleigh, RngStream};
    use nalgebra::{DMatrix, DVector};
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn random_symbols(n: usize, s: &mut RngStream) -> Vec<Complex64> {
        (0..n).map(|_| s.complex_gaussian(1.0)).collect()
    }

    fn through(x: &Codeword, h: &ChannelMatrix) -> CMatrix {
        x.symbols() * h.matrix().transpose()
    }

    /// Independent route: stack the real-linear map s -> X(s) H^T as a real
    /// matrix by probing unit inputs, then solve the least-squares system.
    fn least_squares_decode(
        encode: fn(&[Complex64]) -> Result<Codeword>,
        k: usize,
        h: &ChannelMatrix,
        y: &CMatrix,
    ) -> Vec<Complex64> {
        let probe = |v: Vec<Complex64>| -> Vec<f64> {
            let out = through(&encode(&v).unwrap(), h);
            out.iter().flat_map(|z| [z.re, z.im]).collect()
        };
        let mut cols = Vec::new();
        for i in 0..k {
            let mut v = vec![c(0.0); k];
            v[i] = c(1.0);
            cols.push(probe(v.clone()));
            v[i] = Complex64::new(0.0, 1.0);
            cols.push(probe(v));
        }
        let rows = cols[0].len();
        let a = DMatrix::from_fn(rows, 2 * k, |r, col| cols[col][r]);
        let b = DVector::from_iterator(rows, y.iter().flat_map(|z| [z.re, z.im]));
        let sol = a.svd(true, true).solve(&b, 1e-12).unwrap();
        (0..k)
            .map(|i| Complex64::new(sol[2 * i], sol[2 * i + 1]))
            .collect()
    }

    #[test]
    fn bpsk_mapping() {
        assert_eq!(bpsk_modulate(&[0, 1, 0]), vec![c(1.0), c(-1.0), c(1.0)]);
        assert!(bpsk_modulate(&[]).is_empty());
        let soft = SoftSymbols {
            values: vec![c(0.3), c(-2.1), c(0.0), Complex64::new(0.0, -5.0)],
            effective_gain: vec![1.0; 4],
        };
        assert_eq!(bpsk_demodulate(&soft), vec![0, 1, 0, 0]);
    }

    #[test]
    fn alamouti_real_pair() {
        let cw = alamouti_encode(&[c(1.0), c(1.0)]).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!((cw.n_time(), cw.n_tx()), (2, 2));
        let x = cw.symbols();
        for (got, want) in [
            (x[(0, 0)], r),
            (x[(0, 1)], r),
            (x[(1, 0)], -r),
            (x[(1, 1)], r),
        ] {
            assert!((got - c(want)).norm() < 1e-15);
        }
        assert!((cw.energy() - 2.0).abs() < 1e-12);
        assert!(matches!(
            alamouti_encode(&[c(1.0)]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn ostbc4_shape_energy_and_zero() {
        let bits = [0, 1, 1, 0];
        let cw = ostbc4_encode(&bpsk_modulate(&bits)).unwrap();
        assert_eq!((cw.n_time(), cw.n_tx(), cw.symbols_carried()), (8, 4, 4));
        assert!((cw.energy() - 4.0).abs() < 1e-12);
        let zero = ostbc4_encode(&[c(0.0); 4]).unwrap();
        assert!(zero.symbols().iter().all(|x| *x == c(0.0)));
        assert!(matches!(
            ostbc4_encode(&[c(1.0); 3]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn stbc_noiseless_matches_least_squares_oracle() {
        let mut s = RngStream::new(42, 0);
        for trial in 0..1000 {
            let nr = 1 + trial % 4;
            for (nt, encode) in [
                (2, alamouti_encode as fn(&[Complex64]) -> Result<Codeword>),
                (4, ostbc4_encode),
            ] {
                let k = if nt == 2 { 2 } else { 4 };
                let sym = random_symbols(k, &mut s);
                let h = sample_rayleigh(nr, nt, &mut s).unwrap();
                let y = through(&encode(&sym).unwrap(), &h);
                let soft = stbc_decode(&y, &h).unwrap();
                let oracle = least_squares_decode(encode, k, &h, &y);
                for i in 0..k {
                    assert!((soft.values[i] - sym[i]).norm() < 1e-10);
                    assert!((oracle[i] - sym[i]).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn stbc_effective_gain() {
        let mut s = RngStream::new(3, 3);
        // 2x1 Alamouti: ||h||^2 / 2
        let h = sample_rayleigh(1, 2, &mut s).unwrap();
        let y = through(&alamouti_encode(&[c(1.0), c(-1.0)]).unwrap(), &h);
        let soft = stbc_decode(&y, &h).unwrap();
        for g in &soft.effective_gain {
            assert!((g - h.frobenius_norm_sqr() / 2.0).abs() < 1e-12);
        }
        // 4-antenna design: block scale 1/sqrt(8), each symbol appears twice
        // per antenna, so the gain is 2 * ||H||_F^2 / 8
        let h = sample_rayleigh(3, 4, &mut s).unwrap();
        let y = CMatrix::zeros(8, 3);
        let soft = stbc_decode(&y, &h).unwrap();
        for g in &soft.effective_gain {
            assert!((g - h.frobenius_norm_sqr() / 4.0).abs() < 1e-12);
        }
        let zero = ChannelMatrix::new(CMatrix::zeros(2, 2)).unwrap();
        let soft = stbc_decode(&CMatrix::zeros(2, 2), &zero).unwrap();
        assert_eq!(soft.effective_gain, vec![0.0, 0.0]);
    }

    #[test]
    fn stbc_decode_dimension_errors() {
        let h = ChannelMatrix::unit(2, 4).unwrap();
        assert!(stbc_decode(&CMatrix::zeros(7, 2), &h).is_err());
        assert!(stbc_decode(&CMatrix::zeros(8, 3), &h).is_err());
        let h3 = ChannelMatrix::unit(2, 3).unwrap();
        assert!(matches!(
            stbc_decode(&CMatrix::zeros(8, 2), &h3),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn selection_placement() {
        let cw = selection_transmit(&[c(1.0), c(-1.0)], 2, 4).unwrap();
        assert_eq!((cw.n_time(), cw.n_tx()), (2, 4));
        for t in 0..2 {
            for a in 0..4 {
                let want = if a == 2 { [c(1.0), c(-1.0)][t] } else { c(0.0) };
                assert_eq!(cw.symbols()[(t, a)], want);
            }
        }
        assert!((cw.energy() / cw.symbols_carried() as f64 - 1.0).abs() < 1e-12);
        let siso = selection_transmit(&[c(1.0)], 0, 1).unwrap();
        assert_eq!(siso.symbols()[(0, 0)], c(1.0));
        assert!(selection_transmit(&[c(1.0)], 4, 4).is_err());
    }

    #[test]
    fn mrc_cases() {
        let y = CMatrix::from_column_slice(3, 1, &[c(0.5), c(-1.0), c(2.0)]);
        let soft = mrc_combine(&y, &[c(1.0)]).unwrap();
        assert_eq!(soft.values, vec![c(0.5), c(-1.0), c(2.0)]);

        let mut s = RngStream::new(9, 9);
        let h: Vec<Complex64> = (0..4).map(|_| s.complex_gaussian(1.0)).collect();
        let n2: f64 = h.iter().map(|x| x.norm_sqr()).sum();
        let y = CMatrix::from_fn(1, 4, |_, r| h[r] * -1.0);
        let soft = mrc_combine(&y, &h).unwrap();
        assert!((soft.values[0] - c(-n2)).norm() < 1e-12);
        assert_eq!(bpsk_demodulate(&soft), vec![1]);
        assert!(mrc_combine(&y, &h[..3]).is_err());
    }

    #[test]
    fn mrc_post_combining_snr() {
        // signal power ||h||^4 over noise power ||h||^2 sigma^2
        let h = vec![c(0.8), Complex64::new(0.3, -0.4), c(-1.1)];
        let n2: f64 = h.iter().map(|x| x.norm_sqr()).sum();
        let sigma2 = 0.5;
        let mut s = RngStream::new(1, 2);
        let n = 200_000;
        let y = CMatrix::from_fn(n, 3, |_, _| s.complex_gaussian(sigma2));
        let soft = mrc_combine(&y, &h).unwrap();
        let noise_power = soft.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / n as f64;
        let snr = n2 * n2 / noise_power;
        let expected = n2 * (1.0 / sigma2);
        assert!((snr / expected - 1.0).abs() < 0.02, "{snr} vs {expected}");
    }

    #[test]
    fn zf_identity_and_rank() {
        let eye = CMatrix::identity(3, 3);
        let y = CMatrix::from_fn(2, 3, |t, r| c((t * 3 + r) as f64));
        let out = zf_receive(&y, &eye).unwrap();
        for (k, stream) in out.iter().enumerate() {
            for t in 0..2 {
                assert!((stream.values[t] - y[(t, k)]).norm() < 1e-12);
            }
        }
        assert!(zf_receive(&y, &CMatrix::identity(3, 4)).is_err());
        let singular = CMatrix::from_fn(3, 2, |r, _| c(r as f64 + 1.0));
        assert!(matches!(
            zf_receive(&y, &singular),
            Err(Error::SingularChannel)
        ));
    }

    #[test]
    fn zf_recovers_four_bpsk_streams() {
        let mut s = RngStream::new(77, 1);
        for _ in 0..200 {
            let h = sample_rayleigh(4, 4, &mut s).unwrap();
            let x = CMatrix::from_fn(16, 4, |_, _| bpsk_modulate(&[s.bit()])[0]);
            let y = &x * h.matrix().transpose();
            let out = zf_receive(&y, h.matrix()).unwrap();
            for k in 0..4 {
                for t in 0..16 {
                    // cross-stream leakage must vanish
                    assert!((out[k].values[t] - x[(t, k)]).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn scheme_parse_and_validate() {
        assert_eq!("STBC".parse::<Scheme>().unwrap(), Scheme::Stbc);
        assert_eq!("maxsel".parse::<Scheme>().unwrap(), Scheme::MaxSel);
        assert!("qam".parse::<Scheme>().is_err());
        assert!(Scheme::Stbc.validate(3).is_err());
        assert!(Scheme::Stbc.validate(4).is_ok());
        assert!(Scheme::MaxSel.validate(3).is_ok());
    }

    proptest! {
        // conjugated rows make the codes real-linear, not complex-linear
        #[test]
        fn encode_is_linear_in_real_scalars(a in -3.0f64..3.0, seed in any::<u64>()) {
            let mut s = RngStream::new(seed, 0);
            for (k, encode) in [(2, alamouti_encode as fn(&[Complex64]) -> Result<Codeword>), (4, ostbc4_encode)] {
                let sym = random_symbols(k, &mut s);
                let scaled: Vec<Complex64> = sym.iter().map(|x| x * a).collect();
                let lhs = encode(&scaled).unwrap();
                let rhs = encode(&sym).unwrap().symbols().map(|x| x * a);
                prop_assert!((lhs.symbols() - rhs).norm() < 1e-12);
            }
        }

        #[test]
        fn energy_per_information_symbol_is_one(bits in proptest::collection::vec(0u8..2, 4)) {
            let sym = bpsk_modulate(&bits);
            let a = alamouti_encode(&sym[..2]).unwrap();
            let o = ostbc4_encode(&sym).unwrap();
            let m = selection_transmit(&sym, 1, 4).unwrap();
            for cw in [a, o, m] {
                prop_assert!((cw.energy() / cw.symbols_carried() as f64 - 1.0).abs() < 1e-12);
            }
        }
    }
}
