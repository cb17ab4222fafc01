//! Text state files.
//!
//! The first non-blank, non-comment line is a tag:
//!
//! ```text
//! # GHZ state
//! acin
//! 0.7071067811865476 0 0 0 0.7071067811865476 0
//! ```
//!
//! `acin` is followed by one line `lambda0 .. lambda4 phi`; `amplitudes` by
//! eight lines `re im` in basis order `|000>` .. `|111>`. Lines starting with
//! `#` are comments.

use std::fmt::Write as _;
use std::path::Path;

use qss_core::states::{from_acin, AcinParams, PureState3};
use qss_core::C64;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StateSpec {
    Acin(AcinParams),
    Amplitudes(PureState3),
}

impl StateSpec {
    pub fn state(&self) -> PureState3 {
        match self {
            StateSpec::Acin(p) => from_acin(p),
            StateSpec::Amplitudes(s) => *s,
        }
    }

    pub fn params(&self) -> Option<AcinParams> {
        match self {
            StateSpec::Acin(p) => Some(*p),
            StateSpec::Amplitudes(_) => None,
        }
    }
}

fn numbers(line: usize, text: &str, want: usize) -> Result<Vec<f64>> {
    let vals = text
        .split_whitespace()
        .map(|t| t.parse::<f64>().map_err(|_| Error::parse(line, format!("not a number: {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if vals.len() != want {
        return Err(Error::parse(line, format!("expected {want} numbers, found {}", vals.len())));
    }
    Ok(vals)
}

pub fn parse(text: &str) -> Result<StateSpec> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (tag_line, tag) = lines.next().ok_or_else(|| Error::parse(1, "empty state file"))?;
    let spec = match tag {
        "acin" => {
            let (n, l) = lines.next().ok_or_else(|| Error::parse(tag_line, "missing Acin coefficients"))?;
            let v = numbers(n, l, 6)?;
            let p =
                AcinParams::new([v[0], v[1], v[2], v[3], v[4]], v[5]).map_err(|e| Error::parse(n, e.to_string()))?;
            StateSpec::Acin(p)
        }
        "amplitudes" => {
            let mut amps = [C64::new(0.0, 0.0); 8];
            for (i, a) in amps.iter_mut().enumerate() {
                let (n, l) = lines
                    .next()
                    .ok_or_else(|| Error::parse(tag_line, format!("expected 8 amplitude lines, found {i}")))?;
                let v = numbers(n, l, 2)?;
                *a = C64::new(v[0], v[1]);
            }
            let s = PureState3::new(amps).map_err(|e| Error::parse(tag_line, e.to_string()))?;
            StateSpec::Amplitudes(s)
        }
        other => return Err(Error::parse(tag_line, format!("unknown tag {other:?} (expected acin or amplitudes)"))),
    };
    if let Some((n, _)) = lines.next() {
        return Err(Error::parse(n, "unexpected trailing content"));
    }
    Ok(spec)
}

pub fn load(path: &Path) -> Result<StateSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse(&text).map_err(|e| Error::InFile { path: path.into(), source: Box::new(e) })
}

/// Shortest round-tripping text for `spec`.
pub fn render(spec: &StateSpec) -> String {
    let mut out = String::new();
    match spec {
        StateSpec::Acin(p) => {
            let l = p.lambda();
            let _ = writeln!(out, "acin\n{} {} {} {} {} {}", l[0], l[1], l[2], l[3], l[4], p.phi());
        }
        StateSpec::Amplitudes(s) => {
            out.push_str("amplitudes\n");
            for a in s.amplitudes() {
                let _ = writeln!(out, "{} {}", a.re, a.im);
            }
        }
    }
    out
}
