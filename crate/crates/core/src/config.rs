//! Flat `key = value` configuration files with `[section]` headers.
//!
//! Keys are addressed as `section.key` (`seed` lives outside any section).
//! Every key in the schema is optional; unknown sections and keys are
//! rejected with the offending line number.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mac::MacConfig;
use crate::scenario::ScenarioConfig;

/// Default configuration, as printed by `--help`.
pub const DEFAULT_CONFIG_TEXT: &str = include_str!("default_config.ini");

const SCENARIO_KEYS: &[&str] = &[
    "seed",
    "link.nt",
    "link.nr",
    "link.scheme",
    "link.fading",
    "interferers.count",
    "interferers.nt_each",
    "interferers.scheme",
    "interferers.power_ratio_db",
    "interferers.power_mode",
    "snr.start_db",
    "snr.stop_db",
    "snr.step_db",
    "run.trials_per_point",
    "run.max_bit_errors",
    "run.packet_bits",
    "run.slope_window",
];

const MAC_KEYS: &[&str] = &[
    "seed",
    "mac.n_antennas",
    "mac.sounding_ms",
    "mac.txop_ms",
    "mac.snr_db",
    "mac.rssi_noise_db",
    "mac.per_ap_sounding",
    "mac.n_aps",
    "mac.episodes",
    "mac.bits_per_link",
];

/// One `key = value` assignment. `line` is 0 for command-line overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

fn known(key: &str) -> bool {
    SCENARIO_KEYS.contains(&key) || MAC_KEYS.contains(&key)
}

/// Splits config text into entries, checking syntax and key names.
pub fn parse_entries(text: &str) -> Result<Vec<Entry>> {
    let mut section = String::new();
    let mut entries: Vec<Entry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split(['#', ';']).next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| Error::config(line, body, "unterminated section header"))?
                .trim();
            if !matches!(name, "link" | "interferers" | "snr" | "run" | "mac") {
                return Err(Error::config(line, name, "unknown section"));
            }
            section = name.to_string();
            continue;
        }
        let (k, v) = body
            .split_once('=')
            .ok_or_else(|| Error::config(line, body, "expected `key = value`"))?;
        let k = k.trim();
        let key = if section.is_empty() {
            k.to_string()
        } else {
            format!("{section}.{k}")
        };
        if k.is_empty() || !known(&key) {
            return Err(Error::config(line, key, "unknown key"));
        }
        if let Some(prev) = entries.iter().find(|e| e.key == key) {
            return Err(Error::config(
                line,
                key,
                format!("duplicate key (first set on line {})", prev.line),
            ));
        }
        entries.push(Entry {
            key,
            value: v.trim().to_string(),
            line,
        });
    }
    Ok(entries)
}

/// Parses a `key=value` command-line override.
pub fn parse_override(text: &str) -> Result<Entry> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| Error::config(0, text, "override must look like key=value"))?;
    let key = k.trim().to_string();
    if !known(&key) {
        return Err(Error::config(0, key, "unknown key in override"));
    }
    Ok(Entry {
        key,
        value: v.trim().to_string(),
        line: 0,
    })
}

fn value<T: FromStr>(e: &Entry) -> Result<T>
where
    T::Err: fmt::Display,
{
    e.value.parse::<T>().map_err(|err| {
        Error::config(
            e.line,
            &e.key,
            format!("invalid value `{}`: {err}", e.value),
        )
    })
}

fn window(e: &Entry) -> Result<(f64, f64)> {
    parse_window(&e.value).map_err(|msg| Error::config(e.line, &e.key, msg))
}

/// Parses `lo:hi` in dB.
pub fn parse_window(text: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| format!("window `{text}` must look like lo:hi"))?;
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|e| format!("window lower bound: {e}"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|e| format!("window upper bound: {e}"))?;
    if !(lo < hi) {
        return Err(format!("window `{text}` needs lo < hi"));
    }
    Ok((lo, hi))
}

fn line_of(entries: &[Entry], key: &str) -> usize {
    entries
        .iter()
        .rev()
        .find(|e| e.key == key)
        .map_or(0, |e| e.line)
}

/// Maps a validation failure of the form `key: message` back to the line
/// that set the key.
fn locate(err: Error, entries: &[Entry]) -> Error {
    match err {
        Error::InvalidParameter(msg) => match msg.split_once(": ") {
            Some((key, rest)) => Error::config(line_of(entries, key), key, rest),
            None => Error::config(0, "", msg),
        },
        other => other,
    }
}

/// Scenario configuration from `entries` (later entries win), defaults
/// applied, validated.
pub fn scenario_from_entries(entries: &[Entry]) -> Result<ScenarioConfig> {
    let mut c = ScenarioConfig::default();
    for e in entries {
        match e.key.as_str() {
            "seed" => c.seed = value(e)?,
            "link.nt" => c.link.nt = value(e)?,
            "link.nr" => c.link.nr = value(e)?,
            "link.scheme" => c.link.scheme = value(e)?,
            "link.fading" => c.link.fading = value(e)?,
            "interferers.count" => c.interferers.count = value(e)?,
            "interferers.nt_each" => c.interferers.nt_each = value(e)?,
            "interferers.scheme" => c.interferers.scheme = value(e)?,
            "interferers.power_ratio_db" => c.interferers.power_ratio_db = value(e)?,
            "interferers.power_mode" => c.interferers.power_mode = value(e)?,
            "snr.start_db" => c.snr.start_db = value(e)?,
            "snr.stop_db" => c.snr.stop_db = value(e)?,
            "snr.step_db" => c.snr.step_db = value(e)?,
            "run.trials_per_point" => c.trials_per_point = value(e)?,
            "run.max_bit_errors" => c.max_bit_errors = value(e)?,
            "run.packet_bits" => c.packet_bits = value(e)?,
            "run.slope_window" => c.slope_window = Some(window(e)?),
            k if MAC_KEYS.contains(&k) => {}
            k => return Err(Error::config(e.line, k, "unknown key")),
        }
    }
    c.validate().map_err(|err| locate(err, entries))?;
    Ok(c)
}

pub fn mac_from_entries(entries: &[Entry]) -> Result<MacConfig> {
    let mut c = MacConfig::default();
    for e in entries {
        match e.key.as_str() {
            "seed" => c.seed = value(e)?,
            "mac.n_antennas" => c.n_antennas = value(e)?,
            "mac.sounding_ms" => c.sounding_ms = value(e)?,
            "mac.txop_ms" => c.txop_ms = value(e)?,
            "mac.snr_db" => c.snr_db = value(e)?,
            "mac.rssi_noise_db" => c.rssi_noise_db = value(e)?,
            "mac.per_ap_sounding" => c.per_ap_sounding = value(e)?,
            "mac.n_aps" => c.n_aps = value(e)?,
            "mac.episodes" => c.episodes = value(e)?,
            "mac.bits_per_link" => c.bits_per_link = value(e)?,
            k if SCENARIO_KEYS.contains(&k) => {}
            k => return Err(Error::config(e.line, k, "unknown key")),
        }
    }
    c.validate().map_err(|err| locate(err, entries))?;
    Ok(c)
}

pub fn parse_scenario(text: &str) -> Result<ScenarioConfig> {
    scenario_from_entries(&parse_entries(text)?)
}

pub fn parse_mac(text: &str) -> Result<MacConfig> {
    mac_from_entries(&parse_entries(text)?)
}

impl fmt::Display for ScenarioConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "\n[link]")?;
        writeln!(f, "nt = {}", self.link.nt)?;
        writeln!(f, "nr = {}", self.link.nr)?;
        writeln!(f, "scheme = {}", self.link.scheme)?;
        writeln!(f, "fading = {}", self.link.fading)?;
        writeln!(f, "\n[interferers]")?;
        writeln!(f, "count = {}", self.interferers.count)?;
        writeln!(f, "nt_each = {}", self.interferers.nt_each)?;
        writeln!(f, "scheme = {}", self.interferers.scheme)?;
        writeln!(f, "power_ratio_db = {}", self.interferers.power_ratio_db)?;
        writeln!(f, "power_mode = {}", self.interferers.power_mode)?;
        writeln!(f, "\n[snr]")?;
        writeln!(f, "start_db = {}", self.snr.start_db)?;
        writeln!(f, "stop_db = {}", self.snr.stop_db)?;
        writeln!(f, "step_db = {}", self.snr.step_db)?;
        writeln!(f, "\n[run]")?;
        writeln!(f, "trials_per_point = {}", self.trials_per_point)?;
        writeln!(f, "max_bit_errors = {}", self.max_bit_errors)?;
        writeln!(f, "packet_bits = {}", self.packet_bits)?;
        if let Some((lo, hi)) = self.slope_window {
            writeln!(f, "slope_window = {lo}:{hi}")?;
        }
        Ok(())
    }
}

impl fmt::Display for MacConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "\n[mac]")?;
        writeln!(f, "n_antennas = {}", self.n_antennas)?;
        writeln!(f, "sounding_ms = {}", self.sounding_ms)?;
        writeln!(f, "txop_ms = {}", self.txop_ms)?;
        writeln!(f, "snr_db = {}", self.snr_db)?;
        writeln!(f, "rssi_noise_db = {}", self.rssi_noise_db)?;
        writeln!(f, "per_ap_sounding = {}", self.per_ap_sounding)?;
        writeln!(f, "n_aps = {}", self.n_aps)?;
        writeln!(f, "episodes = {}", self.episodes)?;
        writeln!(f, "bits_per_link = {}", self.bits_per_link)
    }
}
