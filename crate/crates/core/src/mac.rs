//! Controller-coordinated simultaneous transmission across APs.
//!
//! The controller picks a group of up to `N` APs with pending downlink
//! traffic, each AP learns its best transmit antenna from per-antenna RSSI
//! (channel reciprocity), and then all group members transmit in one shared
//! TxOP to `N`-antenna clients that separate the streams by zero forcing.

use std::fmt;

use rayon::prelude::*;

use crate::channel::{
    argmax_lowest, column_norms, sample_rayleigh, CMatrix, ChannelMatrix, RngStream,
};
use crate::error::{Error, Result};
use crate::phy::{bpsk_demodulate, bpsk_modulate, zf_receive};
use crate::scenario::{noise_variance, stream_for, TrialOutcome};

/// RSSI reported for an antenna whose channel norm is exactly zero.
pub const RSSI_FLOOR_DB: f64 = -100.0;

mod role {
    pub const CHANNELS: u64 = 0;
    pub const RSSI: u64 = 1;
    pub const TXOP: u64 = 2;
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApNode {
    pub id: usize,
    pub nt: usize,
    pub pending_downlink: bool,
    pub assigned_antenna: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClientNode {
    pub id: usize,
    pub nr: usize,
    pub serving_ap: usize,
}

/// AP ids in the controller's priority order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GroupSchedule {
    pub group: Vec<usize>,
}

impl GroupSchedule {
    pub fn len(&self) -> usize {
        self.group.len()
    }

    pub fn is_empty(&self) -> bool {
        self.group.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RssiReport {
    pub per_antenna_rssi: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Sounding,
    Txop,
    Idle,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Sounding => "sounding",
            EventKind::Txop => "txop",
            EventKind::Idle => "idle",
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimelineEvent {
    pub start_ms: f64,
    pub duration_ms: f64,
    pub kind: EventKind,
    pub ap_ids: Vec<usize>,
}

impl TimelineEvent {
    pub fn end_ms(&self) -> f64 {
        self.start_ms + self.duration_ms
    }

    /// A TxOP shared by more than one AP.
    pub fn is_simultaneous(&self) -> bool {
        self.kind == EventKind::Txop && self.ap_ids.len() > 1
    }
}

/// Logical-clock timeline of one channel.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EventTimeline {
    pub events: Vec<TimelineEvent>,
}

impl EventTimeline {
    pub fn end_ms(&self) -> f64 {
        self.events.last().map_or(0.0, TimelineEvent::end_ms)
    }

    /// Appends an event starting where the previous one ended.
    pub fn push(&mut self, kind: EventKind, duration_ms: f64, ap_ids: Vec<usize>) {
        let start_ms = self.end_ms();
        self.events.push(TimelineEvent {
            start_ms,
            duration_ms,
            kind,
            ap_ids,
        });
    }

    pub fn total_ms(&self) -> f64 {
        self.events.iter().map(|e| e.duration_ms).sum()
    }

    pub fn count(&self, kind: EventKind) -> usize {
        self.events.iter().filter(|e| e.kind == kind).count()
    }

    /// Events are ordered, have nonnegative durations and do not overlap.
    pub fn is_consistent(&self) -> bool {
        self.events.iter().all(|e| e.duration_ms >= 0.0)
            && self
                .events
                .windows(2)
                .all(|w| w[1].start_ms >= w[0].end_ms() - 1e-12)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MacConfig {
    /// Antennas per AP and per client (`N`), also the group capacity.
    pub n_antennas: usize,
    pub sounding_ms: f64,
    pub txop_ms: f64,
    /// Per-link SNR; `inf` runs noiseless.
    pub snr_db: f64,
    pub seed: u64,
    /// Charge one sounding slot per AP instead of one for the whole group.
    pub per_ap_sounding: bool,
    /// Standard deviation of the dB-domain RSSI error.
    pub rssi_noise_db: f64,
    pub n_aps: usize,
    pub episodes: u64,
    pub bits_per_link: usize,
}

impl Default for MacConfig {
    fn default() -> Self {
        Self {
            n_antennas: 4,
            sounding_ms: 1.0,
            txop_ms: 4.0,
            snr_db: 25.0,
            seed: 1,
            per_ap_sounding: false,
            rssi_noise_db: 1.0,
            n_aps: 4,
            episodes: 1000,
            bits_per_link: 100,
        }
    }
}

impl MacConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |key: &str, msg: &str| Err(Error::InvalidParameter(format!("{key}: {msg}")));
        if self.n_antennas == 0 {
            return bad("mac.n_antennas", "must be at least 1");
        }
        if !(self.sounding_ms > 0.0) || !self.sounding_ms.is_finite() {
            return bad("mac.sounding_ms", "must be > 0");
        }
        if !(self.txop_ms > 0.0) || !self.txop_ms.is_finite() {
            return bad("mac.txop_ms", "must be > 0");
        }
        if self.snr_db.is_nan() || self.snr_db == f64::NEG_INFINITY {
            return bad("mac.snr_db", "must be a number or inf");
        }
        if !(self.rssi_noise_db >= 0.0) || !self.rssi_noise_db.is_finite() {
            return bad("mac.rssi_noise_db", "must be >= 0");
        }
        if self.episodes == 0 {
            return bad("mac.episodes", "must be at least 1");
        }
        if self.bits_per_link == 0 {
            return bad("mac.bits_per_link", "must be at least 1");
        }
        Ok(())
    }
}

/// First `n` pending APs in ascending id order.
pub fn select_group(aps: &[ApNode], n: usize) -> GroupSchedule {
    let mut pending: Vec<usize> = aps
        .iter()
        .filter(|ap| ap.pending_downlink)
        .map(|ap| ap.id)
        .collect();
    pending.sort_unstable();
    pending.dedup();
    pending.truncate(n);
    GroupSchedule { group: pending }
}

/// Per-antenna RSSI: `20 log10 ||h_i||` plus Gaussian error of `noise_db`
/// standard deviation. A zero column reports `RSSI_FLOOR_DB`.
pub fn rssi_observe(
    h: &ChannelMatrix,
    noise_db: f64,
    stream: &mut RngStream,
) -> Result<RssiReport> {
    if !(noise_db >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "rssi noise must be >= 0 dB, got {noise_db}"
        )));
    }
    let per_antenna_rssi = column_norms(h)
        .into_iter()
        .map(|norm| {
            // always draw so the stream position does not depend on the channel
            let err = stream.gaussian() * noise_db;
            if norm == 0.0 {
                RSSI_FLOOR_DB
            } else {
                20.0 * norm.log10() + err
            }
        })
        .collect();
    Ok(RssiReport { per_antenna_rssi })
}

/// Antenna with the largest RSSI, lowest index on ties.
pub fn rssi_select(report: &RssiReport) -> usize {
    argmax_lowest(&report.per_antenna_rssi)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SoundingOutcome {
    /// Assigned antenna per group member, in group order.
    pub assignments: Vec<usize>,
    pub reports: Vec<RssiReport>,
    pub timeline: EventTimeline,
}

/// Antenna assignment for every group member in priority order.
///
/// `channels[k]` is the channel between group member `k` and its client.
/// By default the whole phase is charged one `sounding_ms` slot; with
/// `per_ap_sounding` each AP gets its own consecutive slot.
pub fn sounding_phase(
    group: &GroupSchedule,
    channels: &[ChannelMatrix],
    config: &MacConfig,
    stream: &mut RngStream,
) -> Result<SoundingOutcome> {
    if channels.len() != group.len() {
        return Err(Error::InvalidInput(format!(
            "{} channels for a group of {}",
            channels.len(),
            group.len()
        )));
    }
    let reports = channels
        .iter()
        .map(|h| rssi_observe(h, config.rssi_noise_db, stream))
        .collect::<Result<Vec<_>>>()?;
    let assignments = reports.iter().map(rssi_select).collect();

    let mut timeline = EventTimeline::default();
    if config.per_ap_sounding {
        for &id in &group.group {
            timeline.push(EventKind::Sounding, config.sounding_ms, vec![id]);
        }
    } else {
        timeline.push(EventKind::Sounding, config.sounding_ms, group.group.clone());
    }
    Ok(SoundingOutcome {
        assignments,
        reports,
        timeline,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkOutcome {
    pub ap_id: usize,
    pub outcome: TrialOutcome,
    /// The client's composite channel was rank deficient; all bits count
    /// as errors.
    pub outage: bool,
}

/// All group members transmit at once, each on its assigned antenna.
///
/// `client_channels[i][k]` is the `nr x nt` channel from group member `k`
/// to the client of group member `i`. Each client zero-forces the
/// composite `nr x K` channel and keeps its own AP's stream.
pub fn simultaneous_txop(
    group: &GroupSchedule,
    assignments: &[usize],
    client_channels: &[Vec<ChannelMatrix>],
    config: &MacConfig,
    stream: &mut RngStream,
) -> Result<Vec<LinkOutcome>> {
    let k = group.len();
    if assignments.len() != k || client_channels.len() != k {
        return Err(Error::InvalidInput(format!(
            "group of {k} with {} assignments and {} client channel sets",
            assignments.len(),
            client_channels.len()
        )));
    }
    let n = config.bits_per_link;
    let bits: Vec<Vec<u8>> = (0..k).map(|_| stream.bits(n)).collect();
    let x = CMatrix::from_fn(n, k, |t, s| bpsk_modulate(&bits[s][t..=t])[0]);
    let sigma2 = noise_variance(config.snr_db);

    let mut out = Vec::with_capacity(k);
    for (i, row) in client_channels.iter().enumerate() {
        if row.len() != k {
            return Err(Error::InvalidInput(format!(
                "client {i} has {} channels, expected {k}",
                row.len()
            )));
        }
        let nr = row[0].nr();
        if k > nr {
            return Err(Error::InvalidInput(format!(
                "group of {k} exceeds client {i}'s {nr} receive antennas"
            )));
        }
        let mut composite = CMatrix::zeros(nr, k);
        for (s, h) in row.iter().enumerate() {
            if h.nr() != nr || assignments[s] >= h.nt() {
                return Err(Error::InvalidInput(format!(
                    "client {i}: channel {s} is {}x{} with antenna {}",
                    h.nr(),
                    h.nt(),
                    assignments[s]
                )));
            }
            composite.set_column(s, &h.matrix().column(assignments[s]));
        }
        let clean = &x * composite.transpose();
        let y = crate::channel::add_awgn(&clean, sigma2, stream)?;
        let (bit_errors, outage) = match zf_receive(&y, &composite) {
            Ok(streams) => {
                let decided = bpsk_demodulate(&streams[i]);
                let e = decided.iter().zip(&bits[i]).filter(|(a, b)| a != b).count();
                (e as u64, false)
            }
            Err(Error::SingularChannel) => (n as u64, true),
            Err(e) => return Err(e),
        };
        out.push(LinkOutcome {
            ap_id: group.group[i],
            outcome: TrialOutcome {
                bits_sent: n as u64,
                bit_errors,
            },
            outage,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Airtime {
    pub coordinated_ms: f64,
    pub sequential_ms: f64,
    pub gain: f64,
}

/// One sounding phase plus one shared TxOP, against `group_size`
/// back-to-back TxOPs. An empty group reports gain 0.
pub fn airtime_compare(config: &MacConfig, group_size: usize) -> Airtime {
    let slots = if config.per_ap_sounding {
        group_size as f64
    } else {
        1.0
    };
    let coordinated_ms = slots * config.sounding_ms + config.txop_ms;
    let sequential_ms = group_size as f64 * config.txop_ms;
    let gain = if group_size == 0 {
        0.0
    } else {
        sequential_ms / coordinated_ms
    };
    Airtime {
        coordinated_ms,
        sequential_ms,
        gain,
    }
}

/// Baseline CSMA timeline: the group's TxOPs one after another.
pub fn sequential_timeline(group: &GroupSchedule, config: &MacConfig) -> EventTimeline {
    let mut t = EventTimeline::default();
    for &id in &group.group {
        t.push(EventKind::Txop, config.txop_ms, vec![id]);
    }
    t
}

#[derive(Debug, Clone, PartialEq)]
pub struct MacSummary {
    pub group: GroupSchedule,
    pub airtime: Airtime,
    pub bits_sent: u64,
    pub bit_errors: u64,
    pub outages: u64,
    /// Bit errors over bits sent across all links and episodes (0 when
    /// nothing was sent).
    pub mean_link_ber: f64,
    /// Coordinated timeline of the first episode.
    pub timeline: EventTimeline,
}

struct EpisodeResult {
    bits_sent: u64,
    bit_errors: u64,
    outages: u64,
    timeline: EventTimeline,
}

fn run_episode(config: &MacConfig, group: &GroupSchedule, episode: u64) -> Result<EpisodeResult> {
    let n = config.n_antennas;
    let k = group.len();
    if k == 0 {
        let mut timeline = EventTimeline::default();
        timeline.push(EventKind::Sounding, config.sounding_ms, Vec::new());
        timeline.push(EventKind::Idle, config.txop_ms, Vec::new());
        return Ok(EpisodeResult {
            bits_sent: 0,
            bit_errors: 0,
            outages: 0,
            timeline,
        });
    }
    let mut chan = stream_for(config.seed, episode, role::CHANNELS);
    let client_channels = (0..k)
        .map(|_| (0..k).map(|_| sample_rayleigh(n, n, &mut chan)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    // reciprocity: each AP measures the channel to its own client
    let serving: Vec<ChannelMatrix> = (0..k).map(|i| client_channels[i][i].clone()).collect();
    let sounding = sounding_phase(
        group,
        &serving,
        config,
        &mut stream_for(config.seed, episode, role::RSSI),
    )?;
    let links = simultaneous_txop(
        group,
        &sounding.assignments,
        &client_channels,
        config,
        &mut stream_for(config.seed, episode, role::TXOP),
    )?;
    let mut timeline = sounding.timeline;
    timeline.push(EventKind::Txop, config.txop_ms, group.group.clone());
    Ok(EpisodeResult {
        bits_sent: links.iter().map(|l| l.outcome.bits_sent).sum(),
        bit_errors: links.iter().map(|l| l.outcome.bit_errors).sum(),
        outages: links.iter().filter(|l| l.outage).count() as u64,
        timeline,
    })
}

/// Repeats group selection, sounding and the shared TxOP over fresh
/// channel draws. `n_aps` APs all have pending downlink traffic.
pub fn run_mac_episode(config: &MacConfig, n_aps: usize, episodes: u64) -> Result<MacSummary> {
    config.validate()?;
    if episodes == 0 {
        return Err(Error::InvalidParameter(
            "episodes must be at least 1".into(),
        ));
    }
    let aps: Vec<ApNode> = (0..n_aps)
        .map(|id| ApNode {
            id,
            nt: config.n_antennas,
            pending_downlink: true,
            assigned_antenna: None,
        })
        .collect();
    let group = select_group(&aps, config.n_antennas);
    let first = run_episode(config, &group, 0)?;
    let rest = (1..episodes)
        .into_par_iter()
        .map(|e| run_episode(config, &group, e).map(|r| (r.bits_sent, r.bit_errors, r.outages)))
        .try_reduce(|| (0, 0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1, a.2 + b.2)))?;
    let bits_sent = first.bits_sent + rest.0;
    let bit_errors = first.bit_errors + rest.1;
    let outages = first.outages + rest.2;
    Ok(MacSummary {
        airtime: airtime_compare(config, group.len()),
        mean_link_ber: if bits_sent == 0 {
            0.0
        } else {
            bit_errors as f64 / bits_sent as f64
        },
        group,
        bits_sent,
        bit_errors,
        outages,
        timeline: first.timeline,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::select_best_antenna;
    use num_complex::Complex64;

    fn aps(pending: &[bool]) -> Vec<ApNode> {
        pending
            .iter()
            .enumerate()
            .map(|(id, &p)| ApNode {
                id,
                nt: 4,
                pending_downlink: p,
                assigned_antenna: None,
            })
            .collect()
    }

    fn noiseless() -> MacConfig {
        MacConfig {
            snr_db: f64::INFINITY,
            rssi_noise_db: 0.0,
            ..MacConfig::default()
        }
    }

    #[test]
    fn group_selection() {
        assert_eq!(select_group(&aps(&[true; 6]), 4).group, vec![0, 1, 2, 3]);
        assert!(select_group(&aps(&[false; 5]), 4).is_empty());
        let g = select_group(&aps(&[false, true, false, false, true]), 4);
        assert_eq!(g.group, vec![1, 4]);
    }

    #[test]
    fn rssi_cases() {
        let mut s = RngStream::new(1, 1);
        let h = ChannelMatrix::from_row_slice(
            1,
            2,
            &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)],
        )
        .unwrap();
        let r = rssi_observe(&h, 0.0, &mut s).unwrap();
        assert!(r.per_antenna_rssi[0].abs() < 1e-12);
        assert!((r.per_antenna_rssi[1] - 6.0206).abs() < 1e-4);
        assert_eq!(rssi_select(&r), 1);

        let z = ChannelMatrix::from_row_slice(
            1,
            2,
            &[Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0)],
        )
        .unwrap();
        let r = rssi_observe(&z, 3.0, &mut s).unwrap();
        assert_eq!(r.per_antenna_rssi[0], RSSI_FLOOR_DB);
        assert!(rssi_observe(&z, -1.0, &mut s).is_err());

        let tie = RssiReport {
            per_antenna_rssi: vec![-3.0, 5.0, 5.0],
        };
        assert_eq!(rssi_select(&tie), 1);
        assert_eq!(
            rssi_select(&RssiReport {
                per_antenna_rssi: vec![1.0]
            }),
            0
        );
    }

    #[test]
    fn noiseless_rssi_matches_norm_selection() {
        let mut s = RngStream::new(4, 0);
        for _ in 0..1000 {
            let h = sample_rayleigh(4, 4, &mut s).unwrap();
            let r = rssi_observe(&h, 0.0, &mut s).unwrap();
            assert_eq!(rssi_select(&r), select_best_antenna(&h));
        }
    }

    #[test]
    fn sounding_assignments_and_timeline() {
        let cfg = noiseless();
        let group = GroupSchedule {
            group: vec![0, 1, 2],
        };
        let mut s = RngStream::new(3, 3);
        let chans: Vec<_> = (0..3)
            .map(|_| sample_rayleigh(4, 4, &mut s).unwrap())
            .collect();
        let out = sounding_phase(&group, &chans, &cfg, &mut s).unwrap();
        let expect: Vec<usize> = chans.iter().map(select_best_antenna).collect();
        assert_eq!(out.assignments, expect);
        assert_eq!(out.timeline.count(EventKind::Sounding), 1);
        assert_eq!(out.timeline.total_ms(), 1.0);

        let per_ap = MacConfig {
            per_ap_sounding: true,
            ..cfg.clone()
        };
        let out = sounding_phase(&group, &chans, &per_ap, &mut s).unwrap();
        assert_eq!(out.timeline.count(EventKind::Sounding), 3);
        assert_eq!(out.timeline.end_ms(), 3.0);
        assert!(out.timeline.is_consistent());

        let single: Vec<_> = (0..3)
            .map(|_| sample_rayleigh(4, 1, &mut s).unwrap())
            .collect();
        let out = sounding_phase(&group, &single, &MacConfig::default(), &mut s).unwrap();
        assert_eq!(out.assignments, vec![0, 0, 0]);
        assert!(sounding_phase(&group, &single[..2], &cfg, &mut s).is_err());
    }

    #[test]
    fn sounding_is_deterministic() {
        let cfg = MacConfig::default();
        let group = GroupSchedule {
            group: vec![0, 1, 2, 3],
        };
        let chans: Vec<_> = (0..4)
            .map(|i| sample_rayleigh(4, 4, &mut RngStream::new(5, i)).unwrap())
            .collect();
        let a = sounding_phase(&group, &chans, &cfg, &mut RngStream::new(8, 8)).unwrap();
        let b = sounding_phase(&group, &chans, &cfg, &mut RngStream::new(8, 8)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn airtime_cases() {
        let cfg = MacConfig::default();
        let a = airtime_compare(&cfg, 4);
        assert_eq!(
            (a.coordinated_ms, a.sequential_ms, a.gain),
            (5.0, 16.0, 3.2)
        );
        let a = airtime_compare(&cfg, 0);
        assert_eq!((a.coordinated_ms, a.sequential_ms, a.gain), (5.0, 0.0, 0.0));
        let a = airtime_compare(&cfg, 1);
        assert_eq!((a.coordinated_ms, a.sequential_ms), (5.0, 4.0));
        assert!((a.gain - 0.8).abs() < 1e-15);
        let per_ap = MacConfig {
            per_ap_sounding: true,
            ..cfg
        };
        assert_eq!(airtime_compare(&per_ap, 4).coordinated_ms, 8.0);
    }

    #[test]
    fn single_link_txop_is_point_to_point() {
        let cfg = MacConfig {
            snr_db: 5.0,
            bits_per_link: 400,
            ..MacConfig::default()
        };
        let group = GroupSchedule { group: vec![7] };
        let h = sample_rayleigh(4, 4, &mut RngStream::new(1, 0)).unwrap();
        let a = select_best_antenna(&h);
        let out = simultaneous_txop(
            &group,
            &[a],
            &[vec![h.clone()]],
            &cfg,
            &mut RngStream::new(2, 0),
        )
        .unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].ap_id, 7);

        // same draws decoded by MRC on the selected antenna
        let mut s = RngStream::new(2, 0);
        let bits = s.bits(400);
        let x = CMatrix::from_fn(400, 1, |t, _| bpsk_modulate(&bits[t..=t])[0]);
        let col = CMatrix::from_column_slice(4, 1, &h.column(a));
        let y =
            crate::channel::add_awgn(&(&x * col.transpose()), noise_variance(5.0), &mut s).unwrap();
        let soft = crate::phy::mrc_combine(&y, &h.column(a)).unwrap();
        let e = bpsk_demodulate(&soft)
            .iter()
            .zip(&bits)
            .filter(|(a, b)| a != b)
            .count();
        assert_eq!(out[0].outcome.bit_errors, e as u64);
    }

    #[test]
    fn noiseless_full_group_is_error_free() {
        let s = run_mac_episode(&noiseless(), 4, 200).unwrap();
        assert_eq!(s.bit_errors, 0);
        assert_eq!(s.outages, 0);
        assert_eq!(s.bits_sent, 200 * 4 * 100);
        assert_eq!(s.airtime.gain, 3.2);
        assert_eq!(s.timeline.count(EventKind::Sounding), 1);
        assert_eq!(
            s.timeline
                .events
                .iter()
                .filter(|e| e.is_simultaneous())
                .count(),
            1
        );
        assert_eq!(s.timeline.total_ms(), 5.0);
    }

    #[test]
    fn episodes_degenerate_and_deterministic() {
        let cfg = MacConfig::default();
        let one = run_mac_episode(&cfg, 1, 20).unwrap();
        assert_eq!(one.group.group, vec![0]);
        assert_eq!(one.bits_sent, 20 * 100);
        let empty = run_mac_episode(&cfg, 0, 5).unwrap();
        assert_eq!(empty.airtime.gain, 0.0);
        assert_eq!(empty.mean_link_ber, 0.0);
        assert_eq!(empty.timeline.count(EventKind::Idle), 1);
        let a = run_mac_episode(&cfg, 6, 50).unwrap();
        let b = run_mac_episode(&cfg, 6, 50).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.group.len(), 4);
    }

    #[test]
    fn singular_client_channel_is_outage() {
        let cfg = MacConfig {
            n_antennas: 2,
            bits_per_link: 10,
            ..noiseless()
        };
        let group = GroupSchedule { group: vec![0, 1] };
        let h = ChannelMatrix::unit(2, 2).unwrap();
        let chans = vec![vec![h.clone(), h.clone()], vec![h.clone(), h]];
        let out =
            simultaneous_txop(&group, &[0, 0], &chans, &cfg, &mut RngStream::new(1, 1)).unwrap();
        assert!(out.iter().all(|l| l.outage && l.outcome.bit_errors == 10));
    }
}
