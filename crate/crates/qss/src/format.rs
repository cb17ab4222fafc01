//! Number formatting, the sweep CSV schema, the flat `key=value` record and
//! the human-readable table.

use qss_core::analysis::{check_theorem1, check_theorem2, AnalysisRecord};

pub const CSV_HEADER: &str = "idx,l0,l1,l2,l3,l4,phi,theta2_ab,theta2_ac,f_ab,f_ac,f_max,theta3,f_csr,m_ab,m_ac,s_max,secret_shareable,msr_boundary,thm1_slack,thm2_slack";

/// `x` with 12 significant digits, trailing zeros removed; scientific
/// notation outside `1e-5 <= |x| < 1e12`.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.into()
    }
}

/// Twelve decimals with trailing zeros trimmed, keeping at least one digit
/// after the point: `2/3 -> 0.666666666667`, `1 -> 1.0`.
pub fn human(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.12}");
    let t = s.trim_end_matches('0');
    let t = if t.ends_with('.') { format!("{t}0") } else { t.to_string() };
    if t == "-0.0" {
        "0.0".into()
    } else {
        t
    }
}

/// Field values in CSV column order.
pub fn fields(idx: u64, r: &AnalysisRecord) -> Vec<String> {
    let f = &r.fidelity;
    let b = &r.bell;
    let mut out = vec![idx.to_string()];
    match r.params {
        Some(p) => {
            out.extend(p.lambda().iter().map(|&l| sig12(l)));
            out.push(sig12(p.phi()));
        }
        None => out.extend(std::iter::repeat_n(String::new(), 6)),
    }
    out.extend(
        [f.theta2_ab, f.theta2_ac, f.f_ab, f.f_ac, f.f_max, f.theta3, f.f_csr, b.m_ab, b.m_ac, b.s_max].map(sig12),
    );
    out.push(r.flags.secret_shareable.to_string());
    out.push(r.flags.msr_boundary.to_string());
    out.push(check_theorem1(r).map(sig12).unwrap_or_default());
    out.push(check_theorem2(r).map(sig12).unwrap_or_default());
    out
}

pub fn csv_row(idx: u64, r: &AnalysisRecord) -> String {
    fields(idx, r).join(",")
}

/// Single line `idx=0 l0=... thm2_slack=...` in CSV column order.
pub fn kv_record(idx: u64, r: &AnalysisRecord) -> String {
    CSV_HEADER.split(',').zip(fields(idx, r)).map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

pub fn table(r: &AnalysisRecord) -> String {
    let f = &r.fidelity;
    let b = &r.bell;
    let opt = |v: Option<f64>| v.map(human).unwrap_or_else(|| "n/a".into());
    let mut rows: Vec<(&str, String)> = Vec::new();
    if let Some(p) = r.params {
        let l = p.lambda();
        rows.push(("lambda", l.map(human).join(" ")));
        rows.push(("phi", human(p.phi())));
    }
    rows.extend([
        ("theta2_ab", human(f.theta2_ab)),
        ("theta2_ac", human(f.theta2_ac)),
        ("f_ab", human(f.f_ab)),
        ("f_ac", human(f.f_ac)),
        ("f_max", human(f.f_max)),
        ("theta3", human(f.theta3)),
        ("best_axis", f.best_axis.map(human).join(" ")),
        ("f_csr", human(f.f_csr)),
        ("m_ab", human(b.m_ab)),
        ("m_ac", human(b.m_ac)),
        ("s_ab", human(b.s_ab)),
        ("s_ac", human(b.s_ac)),
        ("s_max", human(b.s_max)),
        ("secret_shareable", r.flags.secret_shareable.to_string()),
        ("msr_boundary", r.flags.msr_boundary.to_string()),
        ("tie_ab_ac", r.flags.tie_ab_ac.to_string()),
        ("thm1_slack", opt(check_theorem1(r))),
        ("thm2_slack", opt(check_theorem2(r))),
    ]);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}
