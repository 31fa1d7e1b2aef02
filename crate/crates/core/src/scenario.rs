//! Victim link plus hidden-node interferers: composing received blocks and
//! running single Monte Carlo trials.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::channel::{
    add_awgn, sample_rayleigh, select_best_antenna, CMatrix, ChannelMatrix, RngStream,
};
use crate::error::{Error, Result};
use crate::phy::{
    bpsk_demodulate, bpsk_modulate, mrc_combine, selection_transmit, stbc_decode, stbc_design,
    Codeword, Scheme,
};

/// Information symbols carried by one selection-diversity block.
pub const SELECTION_BLOCK_SYMBOLS: usize = 4;

/// Upper bound on interferers per scenario (keeps stream ids disjoint).
pub const MAX_INTERFERERS: usize = 64;

/// Substream roles inside one trial. The stream id of a role is
/// `trial_index << 8 | role`, so every role of every trial is independent.
pub mod role {
    pub const VICTIM_CHANNEL: u64 = 0;
    pub const VICTIM_BITS: u64 = 1;
    pub const NOISE: u64 = 2;

    pub fn interferer_channel(i: usize) -> u64 {
        16 + 2 * i as u64
    }

    pub fn interferer_bits(i: usize) -> u64 {
        17 + 2 * i as u64
    }
}

pub fn stream_for(seed: u64, trial_index: u64, role: u64) -> RngStream {
    debug_assert!(role < 256);
    RngStream::new(seed, (trial_index << 8) | role)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fading {
    Rayleigh,
    /// Every channel entry is `1 + 0i`.
    None,
}

impl Fading {
    pub fn as_str(self) -> &'static str {
        match self {
            Fading::Rayleigh => "rayleigh",
            Fading::None => "none",
        }
    }
}

impl FromStr for Fading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rayleigh" => Ok(Fading::Rayleigh),
            "none" => Ok(Fading::None),
            other => Err(Error::InvalidInput(format!(
                "unknown fading `{other}` (expected rayleigh or none)"
            ))),
        }
    }
}

impl fmt::Display for Fading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How interferer power relates to the swept SNR.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerMode {
    /// Interferers keep a fixed power while the victim AP's power is swept;
    /// `power_ratio_db` is the per-interferer power relative to the noise
    /// floor (equivalently, relative to the victim at 0 dB SNR).
    Fixed,
    /// Interferers follow the victim's power; `power_ratio_db` is relative to
    /// the victim at every sweep point.
    Tracking,
}

impl PowerMode {
    pub fn as_str(self) -> &'static str {
        match self {
            PowerMode::Fixed => "fixed",
            PowerMode::Tracking => "tracking",
        }
    }
}

impl FromStr for PowerMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fixed" => Ok(PowerMode::Fixed),
            "tracking" => Ok(PowerMode::Tracking),
            other => Err(Error::InvalidInput(format!(
                "unknown power mode `{other}` (expected fixed or tracking)"
            ))),
        }
    }
}

impl fmt::Display for PowerMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkSpec {
    pub nt: usize,
    pub nr: usize,
    pub scheme: Scheme,
    pub fading: Fading,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterfererSpec {
    pub count: usize,
    pub nt_each: usize,
    pub scheme: Scheme,
    pub power_ratio_db: f64,
    pub power_mode: PowerMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnrSweep {
    pub start_db: f64,
    pub stop_db: f64,
    pub step_db: f64,
}

impl SnrSweep {
    /// Sweep points from start to stop inclusive (half-step slack on the end).
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop_db - self.start_db) / self.step_db + 0.5).floor();
        if n < 0.0 {
            return Vec::new();
        }
        (0..=n as usize)
            .map(|i| self.start_db + i as f64 * self.step_db)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub link: LinkSpec,
    pub interferers: InterfererSpec,
    pub snr: SnrSweep,
    pub trials_per_point: u64,
    /// Early-stop target per sweep point; 0 disables early stopping.
    pub max_bit_errors: u64,
    pub packet_bits: u64,
    pub seed: u64,
    /// Optional slope-fit window in dB; the default is the top 10 dB of
    /// points with enough errors.
    pub slope_window: Option<(f64, f64)>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            link: LinkSpec {
                nt: 4,
                nr: 4,
                scheme: Scheme::Stbc,
                fading: Fading::Rayleigh,
            },
            interferers: InterfererSpec {
                count: 3,
                nt_each: 4,
                scheme: Scheme::Stbc,
                power_ratio_db: 10.0,
                power_mode: PowerMode::Fixed,
            },
            snr: SnrSweep {
                start_db: 0.0,
                stop_db: 20.0,
                step_db: 2.0,
            },
            trials_per_point: 100_000,
            max_bit_errors: 200,
            packet_bits: 4000,
            seed: 1,
            slope_window: None,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |key: &str, msg: String| Err(Error::InvalidParameter(format!("{key}: {msg}")));
        if self.link.nt == 0 {
            return bad("link.nt", "must be at least 1".into());
        }
        if self.link.nr == 0 {
            return bad("link.nr", "must be at least 1".into());
        }
        if let Err(e) = self.link.scheme.validate(self.link.nt) {
            return bad("link.scheme", e.to_string());
        }
        if self.interferers.count > MAX_INTERFERERS {
            return bad(
                "interferers.count",
                format!("at most {MAX_INTERFERERS} interferers"),
            );
        }
        if self.interferers.nt_each == 0 {
            return bad("interferers.nt_each", "must be at least 1".into());
        }
        if let Err(e) = self.interferers.scheme.validate(self.interferers.nt_each) {
            return bad("interferers.scheme", e.to_string());
        }
        if !self.interferers.power_ratio_db.is_finite() {
            return bad("interferers.power_ratio_db", "must be finite".into());
        }
        let s = &self.snr;
        if !(s.step_db > 0.0) || !s.step_db.is_finite() {
            return bad("snr.step_db", format!("must be > 0, got {}", s.step_db));
        }
        if !s.start_db.is_finite() || !s.stop_db.is_finite() {
            return bad("snr.start_db", "sweep bounds must be finite".into());
        }
        if s.stop_db < s.start_db {
            return bad("snr.stop_db", "must not be below snr.start_db".into());
        }
        if self.trials_per_point == 0 {
            return bad("run.trials_per_point", "must be at least 1".into());
        }
        if self.packet_bits == 0 {
            return bad("run.packet_bits", "must be at least 1".into());
        }
        if let Some((lo, hi)) = self.slope_window {
            if !(lo < hi) {
                return bad("run.slope_window", "lo must be below hi".into());
            }
        }
        Ok(())
    }

    pub fn with_scheme(&self, scheme: Scheme) -> Self {
        let mut c = self.clone();
        c.link.scheme = scheme;
        c
    }
}

/// Noise variance for an SNR in dB (unit energy per information symbol).
pub fn noise_variance(snr_db: f64) -> f64 {
    10f64.powf(-snr_db / 10.0)
}

/// Amplitude-squared scale applied to each interferer codeword.
pub fn interferer_power(spec: &InterfererSpec, snr_db: f64) -> f64 {
    let ratio = 10f64.powf(spec.power_ratio_db / 10.0);
    match spec.power_mode {
        PowerMode::Tracking => ratio,
        PowerMode::Fixed => ratio * noise_variance(snr_db),
    }
}

/// One interfering transmission as seen at the victim client.
#[derive(Debug, Clone)]
pub struct InterferenceBlock {
    pub codeword: Codeword,
    /// Interferer-to-victim-client channel (`nr x nt_each`).
    pub channel: ChannelMatrix,
    /// Power scale relative to the codeword's own normalization.
    pub power: f64,
}

/// `y = H_d x + sum_i sqrt(p_i) H_i x_i + n` for every channel use.
///
/// Interferer blocks shorter or longer than the victim's are cyclically
/// extended or truncated to its length.
pub fn compose_received(
    desired: &Codeword,
    h_d: &ChannelMatrix,
    interferers: &[InterferenceBlock],
    noise_variance: f64,
    stream: &mut RngStream,
) -> Result<CMatrix> {
    if desired.n_tx() != h_d.nt() {
        return Err(Error::InvalidInput(format!(
            "codeword has {} antennas, channel has {}",
            desired.n_tx(),
            h_d.nt()
        )));
    }
    let n_time = desired.n_time();
    let mut y = desired.symbols() * h_d.matrix().transpose();
    for (i, blk) in interferers.iter().enumerate() {
        if blk.channel.nr() != h_d.nr() || blk.codeword.n_tx() != blk.channel.nt() {
            return Err(Error::InvalidInput(format!(
                "interferer {i}: channel {}x{} does not match codeword with {} antennas at {} receive antennas",
                blk.channel.nr(),
                blk.channel.nt(),
                blk.codeword.n_tx(),
                h_d.nr()
            )));
        }
        if !(blk.power >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "interferer {i}: negative power"
            )));
        }
        let amp = blk.power.sqrt();
        let xi = blk.codeword.symbols();
        let hi = blk.channel.matrix();
        for t in 0..n_time {
            let row = t % xi.nrows();
            for r in 0..h_d.nr() {
                let mut acc = Complex64::new(0.0, 0.0);
                for a in 0..xi.ncols() {
                    acc += hi[(r, a)] * xi[(row, a)];
                }
                y[(t, r)] += acc * amp;
            }
        }
    }
    add_awgn(&y, noise_variance, stream)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TrialOutcome {
    pub bits_sent: u64,
    pub bit_errors: u64,
}

impl std::ops::Add for TrialOutcome {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self {
            bits_sent: self.bits_sent + o.bits_sent,
            bit_errors: self.bit_errors + o.bit_errors,
        }
    }
}

/// Information symbols per block for `scheme` on `nt` antennas.
pub fn block_symbols(scheme: Scheme, nt: usize) -> Result<usize> {
    match scheme {
        Scheme::Stbc => Ok(stbc_design(nt)?.n_symbols()),
        Scheme::MaxSel => Ok(SELECTION_BLOCK_SYMBOLS),
    }
}

fn draw_channel(
    fading: Fading,
    nr: usize,
    nt: usize,
    stream: &mut RngStream,
) -> Result<ChannelMatrix> {
    match fading {
        Fading::Rayleigh => sample_rayleigh(nr, nt, stream),
        Fading::None => ChannelMatrix::unit(nr, nt),
    }
}

/// Interferer transmission covering at least `n_time` channel uses, built
/// from fresh i.i.d. blocks of the interferer's own scheme.
///
/// A selection-diversity interferer picks its antenna against its own
/// client, which is independent of the channel toward the victim, so it is
/// modelled as always using antenna 0.
pub fn interferer_codeword(
    scheme: Scheme,
    nt: usize,
    n_time: usize,
    bits: &mut RngStream,
) -> Result<Codeword> {
    let mut rows: Vec<CMatrix> = Vec::new();
    let mut covered = 0;
    let mut carried = 0;
    while covered < n_time {
        let k = block_symbols(scheme, nt)?;
        let sym = bpsk_modulate(&bits.bits(k));
        let cw = match scheme {
            Scheme::Stbc => stbc_design(nt)?.encode(&sym)?,
            Scheme::MaxSel => selection_transmit(&sym, 0, nt)?,
        };
        covered += cw.n_time();
        carried += cw.symbols_carried();
        rows.push(cw.symbols().clone());
    }
    let mut x = CMatrix::zeros(covered, nt);
    let mut t = 0;
    for blk in rows {
        x.rows_mut(t, blk.nrows()).copy_from(&blk);
        t += blk.nrows();
    }
    Codeword::new(x, carried)
}

/// Runs one trial of the configured link at `snr_db`.
///
/// Every random draw comes from a substream keyed by `(seed, trial_index,
/// role)`; the same trial index reuses the same channels, bits and noise
/// across SNR points and schemes.
pub fn run_trial(config: &ScenarioConfig, snr_db: f64, trial_index: u64) -> Result<TrialOutcome> {
    let link = &config.link;
    let seed = config.seed;
    let h_d = draw_channel(
        link.fading,
        link.nr,
        link.nt,
        &mut stream_for(seed, trial_index, role::VICTIM_CHANNEL),
    )?;
    let k = block_symbols(link.scheme, link.nt)?;
    let bits = stream_for(seed, trial_index, role::VICTIM_BITS).bits(k);
    let symbols = bpsk_modulate(&bits);

    let (codeword, antenna) = match link.scheme {
        Scheme::Stbc => (stbc_design(link.nt)?.encode(&symbols)?, None),
        Scheme::MaxSel => {
            let a = select_best_antenna(&h_d);
            (selection_transmit(&symbols, a, link.nt)?, Some(a))
        }
    };

    let spec = &config.interferers;
    let power = interferer_power(spec, snr_db);
    let interferers = (0..spec.count)
        .map(|i| {
            let channel = draw_channel(
                link.fading,
                link.nr,
                spec.nt_each,
                &mut stream_for(seed, trial_index, role::interferer_channel(i)),
            )?;
            let codeword = interferer_codeword(
                spec.scheme,
                spec.nt_each,
                codeword.n_time(),
                &mut stream_for(seed, trial_index, role::interferer_bits(i)),
            )?;
            Ok(InterferenceBlock {
                codeword,
                channel,
                power,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let y = compose_received(
        &codeword,
        &h_d,
        &interferers,
        noise_variance(snr_db),
        &mut stream_for(seed, trial_index, role::NOISE),
    )?;

    let soft = match antenna {
        None => stbc_decode(&y, &h_d)?,
        Some(a) => mrc_combine(&y, &h_d.column(a))?,
    };
    let decided = bpsk_demodulate(&soft);
    let bit_errors = decided.iter().zip(&bits).filter(|(a, b)| a != b).count() as u64;
    Ok(TrialOutcome {
        bits_sent: bits.len() as u64,
        bit_errors,
    })
}
