//! Figure datasets: scatter CSV, analytic boundary CSV and a gnuplot script.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use qss_core::analysis::{figure_from_points, FigureData, FigureKind, FigurePoint};

use crate::format::sig12;
use crate::sweep::{self, SweepSpec};
use crate::{Error, Result};

/// Scatter over the sweep described by `spec` (Acin states, phase
/// included), plus GHZ marker and boundary.
pub fn compute(kind: FigureKind, spec: &SweepSpec) -> Result<FigureData> {
    let spec = SweepSpec { include_phase: true, ..*spec };
    let mut points = Vec::with_capacity(spec.n as usize);
    sweep::run(&spec, |i, r| {
        points.push(FigurePoint::new(kind, Some(i), r));
        Ok(())
    })?;
    Ok(figure_from_points(kind, points)?)
}

pub fn scatter_csv(d: &FigureData) -> String {
    let mut out = format!("idx,{},f_csr,secret_shareable,msr_boundary\n", d.kind.x_label());
    let row = |out: &mut String, idx: String, p: &FigurePoint| {
        let _ = writeln!(out, "{idx},{},{},{},{}", sig12(p.x), sig12(p.y), p.secret_shareable, p.msr_boundary);
    };
    for p in &d.points {
        row(&mut out, p.idx.map(|i| i.to_string()).unwrap_or_default(), p);
    }
    row(&mut out, "ghz".into(), &d.ghz);
    out
}

pub fn boundary_csv(d: &FigureData) -> String {
    let mut out = format!("{},f_csr\n", d.kind.x_label());
    for (x, y) in &d.boundary {
        let _ = writeln!(out, "{},{}", sig12(*x), sig12(*y));
    }
    out
}

/// Gnuplot script expecting the two CSV files next to it.
pub fn gnuplot(d: &FigureData, stem: &str) -> String {
    let (xlabel, title) = match d.kind {
        FigureKind::RfVsTf => ("max(F_AB, F_AC)", "Reconstruction fidelity vs teleportation fidelity"),
        FigureKind::RfVsBell => ("max(S_AB, S_AC)", "Reconstruction fidelity vs CHSH value"),
    };
    format!(
        r#"# {title}
set datafile separator ','
set key top left
set title '{title}'
set xlabel '{xlabel}'
set ylabel 'F_CSR'
set terminal pngcairo size 800,600
set output '{stem}.png'
plot '{stem}.csv' every ::1 using ((stringcolumn(1) eq "ghz") ? 1/0 : $2):3 with points pt 7 ps 0.3 lc rgb '#a0a0a0' title 'Acin states', \
     '{stem}.boundary.csv' every ::1 using 1:2 with lines lw 2 lc rgb 'red' title 'bound', \
     '{stem}.csv' every ::1 using ((stringcolumn(1) eq "ghz") ? $2 : 1/0):3 with points pt 7 ps 1.5 lc rgb 'green' title 'GHZ'
"#
    )
}

/// Writes `PREFIX.csv`, `PREFIX.boundary.csv` and `PREFIX.gp`; returns the
/// paths written.
pub fn write(d: &FigureData, prefix: &Path) -> Result<[PathBuf; 3]> {
    let stem = prefix.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "figure".into());
    let with = |suffix: &str| {
        let mut p = prefix.as_os_str().to_owned();
        p.push(suffix);
        PathBuf::from(p)
    };
    let paths = [with(".csv"), with(".boundary.csv"), with(".gp")];
    for (path, body) in paths.iter().zip([scatter_csv(d), boundary_csv(d), gnuplot(d, &stem)]) {
        fs::write(path, body).map_err(|e| Error::io(path, e))?;
    }
    Ok(paths)
}
