//! Plain-text summaries for the terminal.

use std::fmt::Write;

use quivreg_core::algebra::HilbertMatrix;
use quivreg_core::diagnostics::{Growth, Status, Verdict, Witness};
use quivreg_core::report::{Report, ResolveReport};
use quivreg_core::resolution::{BettiTable, ExtTable, GlobalDimension};

pub fn hilbert(h: &HilbertMatrix) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "Hilbert matrix (dim e_i A_d e_j), d = 0..{}", h.truncation);
    for i in 0..h.vertex_count {
        for j in 0..h.vertex_count {
            let row: Vec<String> = h.entries[i][j].iter().map(usize::to_string).collect();
            let _ = writeln!(s, "  ({i},{j}): {}", row.join(" "));
        }
    }
    let totals: Vec<String> = h.totals().iter().map(usize::to_string).collect();
    let _ = writeln!(s, "  total: {}", totals.join(" "));
    s
}

fn betti(b: &BettiTable) -> String {
    let mut s = String::new();
    for row in &b.rows {
        let _ = writeln!(s, "Betti numbers of S_{} (count x vertex(degree))", row.simple);
        for st in &row.steps {
            let cells: Vec<String> = st.entries.iter().map(|e| format!("{}x{}({})", e.count, e.vertex, e.degree)).collect();
            let body = if cells.is_empty() { "0".to_string() } else { cells.join(" ") };
            let _ = writeln!(s, "  step {} [window {}..{}]: {}", st.step, st.window.lo, st.window.hi, body);
        }
    }
    s
}

fn ext(e: &ExtTable) -> String {
    let mut s = String::new();
    for row in &e.rows {
        let _ = writeln!(s, "Ext^s(S_{}, A) (dim x right vertex(shift))", row.simple);
        for st in &row.steps {
            let cells: Vec<String> = st.entries.iter().map(|x| format!("{}x{}({})", x.dimension, x.vertex, x.degree)).collect();
            let body = if cells.is_empty() { "0".to_string() } else { cells.join(" ") };
            let _ = writeln!(s, "  s = {} [shifts {}..{}]: {}", st.step, st.window.lo, st.window.hi, body);
        }
    }
    s
}

fn global_dimension(g: &GlobalDimension) -> String {
    match g {
        GlobalDimension::ExactlyD(d) => format!("{d}"),
        GlobalDimension::AtLeast(d) => format!(">= {d}"),
        GlobalDimension::InconclusiveWindow => "undetermined".into(),
    }
}

fn witness(w: &Witness) -> String {
    match w {
        Witness::ForbiddenExt { simple, step, vertex, degree, dimension } => {
            format!("Ext^{step}(S_{simple}, A) has dimension {dimension} at right vertex {vertex}, shift {degree}")
        }
        Witness::NotInvertible { source, failure } => format!("{source:?} bimodule is not invertible: {:?}", failure.failure),
        Witness::Socle { degree, source, target, coords } => {
            let terms: Vec<String> = coords.iter().map(|(b, c)| format!("{c}*b{b}")).collect();
            format!("socle element {} in e_{source} A_{degree} e_{target}", terms.join(" + "))
        }
    }
}

pub fn verdict(v: &Verdict) -> String {
    let dim = v.dimension.map_or("-".to_string(), |d| d.to_string());
    let mut s = match &v.status {
        Status::CertifiedUpTo { truncation, .. } => {
            format!("CERTIFIED up to degree {truncation}: twisted Calabi-Yau of dimension {dim}")
        }
        Status::Refuted { witness: w } => format!("REFUTED (dimension tested: {dim}): {}", witness(w)),
        Status::Inconclusive { reason } => format!("INCONCLUSIVE: {reason}"),
    };
    let _ = write!(s, " [branch {:?}]", v.branch);
    if let (Some(nak), true) = (&v.nakayama, v.is_certified()) {
        let _ = write!(s, "\n  Nakayama permutation {:?}, shifts {:?}", nak.permutation, nak.shifts);
    }
    s
}

pub fn check(r: &Report) -> String {
    let mut s = String::new();
    let p = &r.parameters;
    let _ = writeln!(s, "field {}, truncation {}, maxstep {}", p.field, p.truncation, p.maxstep);
    s.push_str(&hilbert(&r.hilbert));
    s.push_str(&betti(&r.betti));
    let _ = writeln!(s, "graded global dimension: {}", global_dimension(&r.global_dimension));
    s.push_str(&ext(&r.ext));
    let _ = writeln!(s, "{}", verdict(&r.verdict));
    let c = &r.checks;
    let _ = writeln!(s, "checks:");
    let _ = writeln!(s, "  socle dims (degrees 0..{}): {:?}{}", c.socle.window, c.socle.dimensions, if c.socle.consistent { "" } else { "  INCONSISTENT" });
    let duality = match (&c.duality.applicable, &c.duality.mismatch) {
        (false, _) => "not applicable".to_string(),
        (true, None) => "pass".to_string(),
        (true, Some(m)) => format!("FAIL {m:?}"),
    };
    let _ = writeln!(s, "  Betti duality: {duality}");
    let _ = writeln!(s, "  opposite algebra: {} ({})", verdict(&c.opposite.verdict).replace('\n', " "), if c.opposite.agrees { "agrees" } else { "DISAGREES" });
    let growth = match &c.growth {
        Growth::PolynomialGrowth { degree, window } => format!("polynomial, GK degree {degree} (fit on {}..{})", window.lo, window.hi),
        Growth::SuperpolynomialSuspected { min_ratio } => format!("superpolynomial suspected (ratio >= {min_ratio:.3})"),
        Growth::Undetermined { reason } => format!("undetermined: {reason}"),
    };
    let _ = writeln!(s, "  growth: {growth}");
    let tensor = match &c.tensor.mismatch {
        None => "A = T_S(J/J^2) through the truncation".to_string(),
        Some(m) => format!("not a tensor algebra (degree {}: {} vs {})", m.degree, m.tensor_dimension, m.algebra_dimension),
    };
    let _ = writeln!(s, "  tensor recognition: {tensor}");
    let _ = writeln!(s, "  associativity samples: {} ({} failures, seed {})", c.associativity.samples, c.associativity.failures, c.associativity.seed);
    let times: Vec<String> = r.timings.iter().map(|t| format!("{} {:.3}s", t.phase, t.seconds)).collect();
    let _ = writeln!(s, "timings: {}", times.join(", "));
    s
}

pub fn resolve(r: &ResolveReport) -> String {
    let mut s = betti(&r.betti);
    let _ = writeln!(s, "graded global dimension: {}", global_dimension(&r.global_dimension));
    if let Some(step) = r.exhausted_at {
        let _ = writeln!(s, "window exhausted at step {step}");
    }
    s
}
