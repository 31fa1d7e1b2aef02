//! C ABI for the simulator.
//!
//! Every function returns a [`MaxantStatus`]. On failure a message is kept
//! per thread and can be read with [`maxant_last_error`]. Handles are
//! opaque; free each with its matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use maxant::channel::{select_best_antenna, ChannelMatrix};
use maxant::config::{self, Entry};
use maxant::mac::{airtime_compare, run_mac_episode, MacConfig};
use maxant::montecarlo::{ber_sweep, fit_diversity_order, per_from_ber, BerPoint, SweepResult};
use maxant::phy::Scheme;
use maxant::report::write_sweep_csv;
use maxant::scenario::ScenarioConfig;
use maxant::Error;
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxantStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidConfig = 2,
    InvalidInput = 3,
    Io = 4,
    InsufficientData = 5,
    Singular = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxantScheme {
    Stbc = 0,
    MaxSel = 1,
}

impl From<Scheme> for MaxantScheme {
    fn from(s: Scheme) -> Self {
        match s {
            Scheme::Stbc => MaxantScheme::Stbc,
            Scheme::MaxSel => MaxantScheme::MaxSel,
        }
    }
}

impl From<MaxantScheme> for Scheme {
    fn from(s: MaxantScheme) -> Self {
        match s {
            MaxantScheme::Stbc => Scheme::Stbc,
            MaxantScheme::MaxSel => Scheme::MaxSel,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MaxantBerPoint {
    pub snr_db: f64,
    /// 0 = STBC, 1 = max-antenna selection.
    pub scheme: u32,
    pub trials: u64,
    pub bits_sent: u64,
    pub bit_errors: u64,
    pub ber: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl From<&BerPoint> for MaxantBerPoint {
    fn from(p: &BerPoint) -> Self {
        MaxantBerPoint {
            snr_db: p.snr_db,
            scheme: MaxantScheme::from(p.scheme) as u32,
            trials: p.trials,
            bits_sent: p.bits_sent,
            bit_errors: p.bit_errors,
            ber: p.ber,
            ci_low: p.ci_low,
            ci_high: p.ci_high,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MaxantSlopeFit {
    pub slope: f64,
    pub slope_stderr: f64,
    pub intercept: f64,
    pub window_lo_db: f64,
    pub window_hi_db: f64,
    pub r_squared: f64,
    pub n_points: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MaxantAirtime {
    pub coordinated_ms: f64,
    pub sequential_ms: f64,
    pub gain: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MaxantMacSummary {
    pub group_size: u64,
    pub airtime: MaxantAirtime,
    pub bits_sent: u64,
    pub bit_errors: u64,
    pub outages: u64,
    pub mean_link_ber: f64,
}

/// Parsed scenario plus the entries it was built from, so overrides can
/// be layered on later.
pub struct MaxantScenario {
    entries: Vec<Entry>,
    config: ScenarioConfig,
}

pub struct MaxantSweep {
    result: SweepResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> MaxantStatus {
    match err {
        Error::Config { .. } | Error::InvalidParameter(_) => MaxantStatus::InvalidConfig,
        Error::Io { .. } => MaxantStatus::Io,
        Error::InsufficientData(_) => MaxantStatus::InsufficientData,
        Error::SingularChannel => MaxantStatus::Singular,
        _ => MaxantStatus::InvalidInput,
    }
}

enum Failure {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type FfiResult = Result<(), Failure>;

fn guard(f: impl FnOnce() -> FfiResult) -> MaxantStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            MaxantStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            MaxantStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            MaxantStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Core(Error::InvalidInput(format!("{what} is not UTF-8"))))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn maxant_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `out_per` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn maxant_per_from_ber(
    ber: f64,
    packet_bits: u64,
    out_per: *mut f64,
) -> MaxantStatus {
    guard(|| {
        let o = out(out_per, "out_per")?;
        *o = per_from_ber(ber, packet_bits)?;
        Ok(())
    })
}

/// Scenario from config text (same format as the CLI). Pass null for the
/// documented defaults.
///
/// # Safety
/// `text` must be null or a NUL-terminated string; `out_scenario` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn maxant_scenario_new(
    text: *const c_char,
    out_scenario: *mut *mut MaxantScenario,
) -> MaxantStatus {
    guard(|| {
        let o = out(out_scenario, "out_scenario")?;
        *o = ptr::null_mut();
        let entries = if text.is_null() {
            Vec::new()
        } else {
            config::parse_entries(self::text(text, "text")?)?
        };
        let config = config::scenario_from_entries(&entries)?;
        *o = Box::into_raw(Box::new(MaxantScenario { entries, config }));
        Ok(())
    })
}

/// Applies a `section.key=value` override. On error the scenario is left
/// unchanged.
///
/// # Safety
/// `scenario` must come from `maxant_scenario_new`; `assignment` must be a
/// NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn maxant_scenario_set(
    scenario: *mut MaxantScenario,
    assignment: *const c_char,
) -> MaxantStatus {
    guard(|| {
        let s = out(scenario, "scenario")?;
        let entry = config::parse_override(text(assignment, "assignment")?)?;
        let mut entries: Vec<Entry> = s
            .entries
            .iter()
            .filter(|e| e.key != entry.key)
            .cloned()
            .collect();
        entries.push(entry);
        s.config = config::scenario_from_entries(&entries)?;
        s.entries = entries;
        Ok(())
    })
}

/// # Safety
/// `scenario` must be null or come from `maxant_scenario_new`, and must
/// not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn maxant_scenario_free(scenario: *mut MaxantScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Runs the BER sweep for both schemes.
///
/// # Safety
/// `scenario` must come from `maxant_scenario_new`; `out_sweep` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn maxant_sweep_run(
    scenario: *const MaxantScenario,
    out_sweep: *mut *mut MaxantSweep,
) -> MaxantStatus {
    guard(|| {
        let s = handle(scenario, "scenario")?;
        let o = out(out_sweep, "out_sweep")?;
        *o = ptr::null_mut();
        let result = ber_sweep(&s.config, &[Scheme::Stbc, Scheme::MaxSel])?;
        *o = Box::into_raw(Box::new(MaxantSweep { result }));
        Ok(())
    })
}

/// Number of points, sorted by scheme then SNR. 0 for a null handle.
///
/// # Safety
/// `sweep` must be null or come from `maxant_sweep_run`.
#[no_mangle]
pub unsafe extern "C" fn maxant_sweep_len(sweep: *const MaxantSweep) -> usize {
    sweep.as_ref().map_or(0, |s| s.result.points.len())
}

/// # Safety
/// `sweep` must come from `maxant_sweep_run`; `out_point` must be valid.
#[no_mangle]
pub unsafe extern "C" fn maxant_sweep_point(
    sweep: *const MaxantSweep,
    index: usize,
    out_point: *mut MaxantBerPoint,
) -> MaxantStatus {
    guard(|| {
        let s = handle(sweep, "sweep")?;
        let o = out(out_point, "out_point")?;
        let p = s.result.points.get(index).ok_or_else(|| {
            Error::InvalidInput(format!(
                "index {index} out of {} points",
                s.result.points.len()
            ))
        })?;
        *o = p.into();
        Ok(())
    })
}

/// Diversity-order fit for one scheme over `[lo_db, hi_db]`.
///
/// # Safety
/// `sweep` must come from `maxant_sweep_run`; `out_fit` must be valid.
#[no_mangle]
pub unsafe extern "C" fn maxant_sweep_fit(
    sweep: *const MaxantSweep,
    scheme: MaxantScheme,
    lo_db: f64,
    hi_db: f64,
    out_fit: *mut MaxantSlopeFit,
) -> MaxantStatus {
    guard(|| {
        let s = handle(sweep, "sweep")?;
        let o = out(out_fit, "out_fit")?;
        let fit = fit_diversity_order(&s.result.scheme_points(scheme.into()), (lo_db, hi_db))?;
        *o = MaxantSlopeFit {
            slope: fit.slope,
            slope_stderr: fit.slope_stderr,
            intercept: fit.intercept,
            window_lo_db: fit.snr_window_db.0,
            window_hi_db: fit.snr_window_db.1,
            r_squared: fit.r_squared,
            n_points: fit.n_points as u64,
        };
        Ok(())
    })
}

/// Writes the sweep CSV exactly as the CLI does.
///
/// # Safety
/// `sweep` must come from `maxant_sweep_run`; `path` must be a
/// NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn maxant_sweep_write_csv(
    sweep: *const MaxantSweep,
    path: *const c_char,
) -> MaxantStatus {
    guard(|| {
        let s = handle(sweep, "sweep")?;
        let path = Path::new(text(path, "path")?);
        let file = std::fs::File::create(path).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            source: e,
        })?;
        write_sweep_csv(&s.result, std::io::BufWriter::new(file))?;
        Ok(())
    })
}

/// # Safety
/// `sweep` must be null or come from `maxant_sweep_run`, and must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn maxant_sweep_free(sweep: *mut MaxantSweep) {
    if !sweep.is_null() {
        drop(Box::from_raw(sweep));
    }
}

/// Coordinated versus sequential airtime for a group of `group_size` APs.
///
/// # Safety
/// `out_airtime` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn maxant_airtime_compare(
    sounding_ms: f64,
    txop_ms: f64,
    per_ap_sounding: bool,
    group_size: usize,
    out_airtime: *mut MaxantAirtime,
) -> MaxantStatus {
    guard(|| {
        let o = out(out_airtime, "out_airtime")?;
        let cfg = MacConfig {
            sounding_ms,
            txop_ms,
            per_ap_sounding,
            ..MacConfig::default()
        };
        cfg.validate()?;
        let a = airtime_compare(&cfg, group_size);
        *o = MaxantAirtime {
            coordinated_ms: a.coordinated_ms,
            sequential_ms: a.sequential_ms,
            gain: a.gain,
        };
        Ok(())
    })
}

/// Transmit antenna with the largest channel norm. `re` and `im` hold the
/// `nr x nt` channel in row-major order.
///
/// # Safety
/// `re` and `im` must each point to `nr * nt` doubles; `out_antenna` must
/// be valid.
#[no_mangle]
pub unsafe extern "C" fn maxant_select_best_antenna(
    re: *const f64,
    im: *const f64,
    nr: usize,
    nt: usize,
    out_antenna: *mut usize,
) -> MaxantStatus {
    guard(|| {
        let o = out(out_antenna, "out_antenna")?;
        if re.is_null() || im.is_null() {
            return Err(Failure::Null("channel"));
        }
        let len = nr
            .checked_mul(nt)
            .ok_or_else(|| Error::InvalidDimension(format!("{nr}x{nt} overflows")))?;
        let (re, im) = (
            std::slice::from_raw_parts(re, len),
            std::slice::from_raw_parts(im, len),
        );
        let cells: Vec<Complex64> = re
            .iter()
            .zip(im)
            .map(|(&a, &b)| Complex64::new(a, b))
            .collect();
        let h = ChannelMatrix::from_row_slice(nr, nt, &cells)?;
        *o = select_best_antenna(&h);
        Ok(())
    })
}

/// Runs the coordinated MAC episodes described by the `[mac]` section of
/// `text` (null for defaults).
///
/// # Safety
/// `text` must be null or a NUL-terminated string; `out_summary` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn maxant_mac_run(
    text: *const c_char,
    out_summary: *mut MaxantMacSummary,
) -> MaxantStatus {
    guard(|| {
        let o = out(out_summary, "out_summary")?;
        let cfg = if text.is_null() {
            MacConfig::default()
        } else {
            config::parse_mac(self::text(text, "text")?)?
        };
        let s = run_mac_episode(&cfg, cfg.n_aps, cfg.episodes)?;
        *o = MaxantMacSummary {
            group_size: s.group.len() as u64,
            airtime: MaxantAirtime {
                coordinated_ms: s.airtime.coordinated_ms,
                sequential_ms: s.airtime.sequential_ms,
                gain: s.airtime.gain,
            },
            bits_sent: s.bits_sent,
            bit_errors: s.bit_errors,
            outages: s.outages,
            mean_link_ber: s.mean_link_ber,
        };
        Ok(())
    })
}
