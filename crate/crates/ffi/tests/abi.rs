use std::ffi::{CStr, CString};
use std::ptr;

use maxant_ffi::*;

fn last_error() -> String {
    let p = maxant_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

const QUICK: &str = "seed = 4\n[interferers]\ncount = 1\n[snr]\nstop_db = 8\nstep_db = 4\n[run]\ntrials_per_point = 3000\n";

fn quick_scenario() -> *mut MaxantScenario {
    let text = CString::new(QUICK).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { maxant_scenario_new(text.as_ptr(), &mut s) },
        MaxantStatus::Ok
    );
    assert!(!s.is_null());
    s
}

#[test]
fn per_matches_core() {
    let mut per = 0.0;
    assert_eq!(
        unsafe { maxant_per_from_ber(1e-4, 4000, &mut per) },
        MaxantStatus::Ok
    );
    assert!((per - 0.3297).abs() < 1e-4);
    assert!(maxant_last_error().is_null());

    assert_eq!(
        unsafe { maxant_per_from_ber(2.0, 4000, &mut per) },
        MaxantStatus::InvalidInput
    );
    assert!(!last_error().is_empty());
    assert_eq!(
        unsafe { maxant_per_from_ber(0.1, 1, ptr::null_mut()) },
        MaxantStatus::NullPointer
    );
    assert!(last_error().contains("out_per"));
}

#[test]
fn sweep_through_handles() {
    let s = quick_scenario();
    let mut sweep = ptr::null_mut();
    assert_eq!(unsafe { maxant_sweep_run(s, &mut sweep) }, MaxantStatus::Ok);
    assert_eq!(unsafe { maxant_sweep_len(sweep) }, 2 * 3);

    let mut p = MaxantBerPoint::default();
    assert_eq!(
        unsafe { maxant_sweep_point(sweep, 0, &mut p) },
        MaxantStatus::Ok
    );
    assert_eq!(p.scheme, MaxantScheme::Stbc as u32);
    assert_eq!(p.snr_db, 0.0);
    assert!(p.ci_low <= p.ber && p.ber <= p.ci_high);
    assert_eq!(
        unsafe { maxant_sweep_point(sweep, 3, &mut p) },
        MaxantStatus::Ok
    );
    assert_eq!(p.scheme, MaxantScheme::MaxSel as u32);
    assert_eq!(
        unsafe { maxant_sweep_point(sweep, 6, &mut p) },
        MaxantStatus::InvalidInput
    );

    let mut fit = MaxantSlopeFit::default();
    let st = unsafe { maxant_sweep_fit(sweep, MaxantScheme::Stbc, 0.0, 8.0, &mut fit) };
    assert_eq!(st, MaxantStatus::Ok, "{}", last_error());
    assert_eq!(fit.n_points, 3);
    assert!(fit.slope > 0.0);
    let st = unsafe { maxant_sweep_fit(sweep, MaxantScheme::Stbc, 0.0, 3.0, &mut fit) };
    assert_eq!(st, MaxantStatus::InsufficientData);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let cpath = CString::new(path.to_str().unwrap()).unwrap();
    assert_eq!(
        unsafe { maxant_sweep_write_csv(sweep, cpath.as_ptr()) },
        MaxantStatus::Ok
    );
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 7);
    assert!(csv.starts_with("snr_db,scheme,trials,"));

    let bad = CString::new(dir.path().join("no/such/dir.csv").to_str().unwrap()).unwrap();
    assert_eq!(
        unsafe { maxant_sweep_write_csv(sweep, bad.as_ptr()) },
        MaxantStatus::Io
    );

    unsafe {
        maxant_sweep_free(sweep);
        maxant_scenario_free(s);
    }
}

#[test]
fn overrides_validate_and_roll_back() {
    let s = quick_scenario();
    let ok = CString::new("snr.stop_db=4").unwrap();
    assert_eq!(
        unsafe { maxant_scenario_set(s, ok.as_ptr()) },
        MaxantStatus::Ok
    );
    let bad = CString::new("snr.step_db=0").unwrap();
    assert_eq!(
        unsafe { maxant_scenario_set(s, bad.as_ptr()) },
        MaxantStatus::InvalidConfig
    );
    assert!(last_error().contains("snr.step_db"));
    let unknown = CString::new("link.colour=red").unwrap();
    assert_eq!(
        unsafe { maxant_scenario_set(s, unknown.as_ptr()) },
        MaxantStatus::InvalidConfig
    );

    let mut sweep = ptr::null_mut();
    assert_eq!(unsafe { maxant_sweep_run(s, &mut sweep) }, MaxantStatus::Ok);
    assert_eq!(unsafe { maxant_sweep_len(sweep) }, 2 * 2);
    unsafe {
        maxant_sweep_free(sweep);
        maxant_scenario_free(s);
    }
}

#[test]
fn bad_scenario_text_leaves_null_handle() {
    let text = CString::new("[link]\nnt = x\n").unwrap();
    let mut s = ptr::dangling_mut();
    assert_eq!(
        unsafe { maxant_scenario_new(text.as_ptr(), &mut s) },
        MaxantStatus::InvalidConfig
    );
    assert!(s.is_null());
    assert!(last_error().contains("line 2"));

    let mut d = ptr::null_mut();
    assert_eq!(
        unsafe { maxant_scenario_new(ptr::null(), &mut d) },
        MaxantStatus::Ok
    );
    unsafe { maxant_scenario_free(d) };
}

#[test]
fn null_handles_are_rejected() {
    let mut sweep = ptr::null_mut();
    assert_eq!(
        unsafe { maxant_sweep_run(ptr::null(), &mut sweep) },
        MaxantStatus::NullPointer
    );
    assert_eq!(unsafe { maxant_sweep_len(ptr::null()) }, 0);
    unsafe {
        maxant_sweep_free(ptr::null_mut());
        maxant_scenario_free(ptr::null_mut());
    }
}

#[test]
fn airtime_and_selection() {
    let mut a = MaxantAirtime::default();
    assert_eq!(
        unsafe { maxant_airtime_compare(1.0, 4.0, false, 4, &mut a) },
        MaxantStatus::Ok
    );
    assert_eq!(
        (a.coordinated_ms, a.sequential_ms, a.gain),
        (5.0, 16.0, 3.2)
    );
    assert_eq!(
        unsafe { maxant_airtime_compare(1.0, 4.0, true, 4, &mut a) },
        MaxantStatus::Ok
    );
    assert_eq!(a.coordinated_ms, 8.0);
    assert_eq!(
        unsafe { maxant_airtime_compare(-1.0, 4.0, true, 4, &mut a) },
        MaxantStatus::InvalidConfig
    );

    // 2x3, column 2 strongest
    let re = [0.1, 0.0, 1.0, 0.2, 0.5, 0.0];
    let im = [0.0, 0.3, 0.0, 0.0, 0.0, 1.0];
    let mut k = usize::MAX;
    assert_eq!(
        unsafe { maxant_select_best_antenna(re.as_ptr(), im.as_ptr(), 2, 3, &mut k) },
        MaxantStatus::Ok
    );
    assert_eq!(k, 2);
    assert_eq!(
        unsafe { maxant_select_best_antenna(re.as_ptr(), ptr::null(), 2, 3, &mut k) },
        MaxantStatus::NullPointer
    );
}

#[test]
fn mac_run_defaults_and_noiseless() {
    let text = CString::new("[mac]\nepisodes = 50\nsnr_db = inf\n").unwrap();
    let mut m = MaxantMacSummary::default();
    assert_eq!(
        unsafe { maxant_mac_run(text.as_ptr(), &mut m) },
        MaxantStatus::Ok,
        "{}",
        last_error()
    );
    assert_eq!(m.group_size, 4);
    assert_eq!(m.bits_sent, 50 * 4 * 100);
    assert_eq!(m.bit_errors, 0);
    assert_eq!(m.airtime.gain, 3.2);
}
