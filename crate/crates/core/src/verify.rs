//! Cross-checks every closed-form result against the homology oracle on a
//! desk-scale range of levels.

use std::fmt;

use crate::bounds::Bounds;
use crate::complex::{EnumerationCap, FaceSet, HochsterComplex};
use crate::error::{Error, Result};
use crate::homology::{betti_hochster_all, ChainComplexData};
use crate::lattice::{MultiDegree, Veronese};
use crate::morse::{morse_bounds, morse_report, vertex_matching};
use crate::theorems::{
    extremal_case_m2, extremal_certificate_m2, extremal_p, positive_block_end,
    predict_betti_wedge, sharpness_certificate, sharpness_p_max, sharpness_witness,
    verify_slice, Classification, SliceOptions,
};

#[derive(Clone, Debug, Default)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: usize,
    pub failures: Vec<String>,
    pub skipped: usize,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            ..Default::default()
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(what());
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.ok() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {:<22} {} confirmed, {} failed, {} skipped",
            self.name,
            self.passed,
            self.failures.len(),
            self.skipped
        )?;
        for msg in self.failures.iter().take(10) {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(CheckResult::ok)
    }

    pub fn skipped(&self) -> usize {
        self.checks.iter().map(|c| c.skipped).sum()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    pub cap: EnumerationCap,
    /// Added to every `A_j`; nonzero values must make the suite fail.
    pub upper_bound_shift: i64,
}

fn enumerate(lattice: &Veronese, b: &MultiDegree, cap: &EnumerationCap) -> Result<Option<FaceSet>> {
    match HochsterComplex::new(lattice, b.clone())?.enumerate(cap) {
        Ok(f) => Ok(Some(f)),
        Err(Error::CapExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Homology self-checks plus the Morse inequalities on one complex.
fn check_complex(
    b: &MultiDegree,
    faces: &FaceSet,
    homology: &mut CheckResult,
    morse: &mut CheckResult,
) -> Result<()> {
    let cc = ChainComplexData::build(faces)?;
    let reduced = cc.reduced_betti_numbers();
    homology.record(cc.boundary_squares_to_zero(), || format!("{b}: ∂∘∂ ≠ 0"));
    homology.record(cc.euler_characteristic_consistent(&reduced), || {
        format!("{b}: Euler characteristic mismatch")
    });
    let h = |q: usize| reduced.get(q + 1).copied().unwrap_or(0);
    for v in faces.vertices() {
        let report = morse_report(&vertex_matching(faces, v)?, faces)?;
        let inequalities = (0..reduced.len()).all(|q| report.count(q) as u64 >= h(q));
        morse.record(report.acyclic && inequalities, || {
            format!("{b}: vertex matching over {v} fails acyclicity or m_q ≥ h_q")
        });
    }
    if !faces.vertices().is_empty() {
        for bound in morse_bounds(faces)? {
            morse.record(bound.value as u64 >= h(bound.q), || {
                format!("{b}: N_{} = {} < β_{}", bound.q, bound.value, bound.q + 1)
            });
        }
    }
    Ok(())
}

/// Runs bound soundness and complex checks on every level `1..=j_max`, and
/// the wedge, extremal and sharpness statements for `p ≤ p_max`.
pub fn run_suite(lattice: &Veronese, j_max: usize, p_max: usize, opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut bounds = Bounds::new(lattice)?;
    bounds.corrupt_upper_bound(opts.upper_bound_shift);
    let slice_opts = SliceOptions {
        cap: opts.cap,
        check: true,
    };

    let mut soundness = CheckResult::new("bounds soundness");
    let mut slice_theorems = CheckResult::new("slice predictions");
    let mut homology = CheckResult::new("homology self-checks");
    let mut morse = CheckResult::new("morse inequalities");
    for j in 1..=j_max {
        let p_list: Vec<usize> = (0..=j).collect();
        let report = verify_slice(&bounds, j, &p_list, &slice_opts)?;
        for cell in &report.cells {
            let target = match cell.classification {
                Classification::VanishUpper | Classification::VanishLower => &mut soundness,
                Classification::Theorem => &mut slice_theorems,
                _ => continue,
            };
            match cell.oracle {
                Some(_) => target.record(cell.predicted == cell.oracle, || {
                    format!(
                        "{} p={}: predicted {:?} ({}), oracle {:?}",
                        cell.b, cell.p, cell.predicted, cell.classification, cell.oracle
                    )
                }),
                None => target.skipped += 1,
            }
        }
        for b in MultiDegree::all_with_total(lattice.m() + 1, lattice.d() * j as u64) {
            match enumerate(lattice, &b, &opts.cap)? {
                Some(faces) => check_complex(&b, &faces, &mut homology, &mut morse)?,
                None => homology.skipped += 1,
            }
        }
    }

    let mut wedge = CheckResult::new("wedge #D = oracle");
    let end = positive_block_end(lattice);
    for p in lattice.m()..end.min(p_max + 1) {
        let b0 = lattice.prefix_coord_sum(0, p + 1) - 1;
        let rest = lattice.d() * (p as u64 + 1) - b0;
        for tail in MultiDegree::all_with_total(lattice.m(), rest) {
            let b = MultiDegree::new(std::iter::once(b0).chain(tail.coords().iter().copied()).collect());
            let prediction = predict_betti_wedge(lattice, p, &b)?;
            match betti_hochster_all(lattice, &b, &opts.cap) {
                Ok(oracle) => wedge.record(
                    (0..oracle.len().max(p + 1))
                        .all(|q| prediction.betti(q) == oracle.get(q).copied().unwrap_or(0)),
                    || format!("{b}: #D = {} but oracle gives {oracle:?}", prediction.count),
                ),
                Err(Error::CapExceeded(_)) => wedge.skipped += 1,
                Err(e) => return Err(e),
            }
        }
    }

    let mut extremal = CheckResult::new("extremal case");
    if lattice.m() == 2 && extremal_p(lattice) <= p_max {
        let p = extremal_p(lattice);
        let b0 = lattice.prefix_coord_sum(0, p + 1) - 1;
        let rest = lattice.d() * (p as u64 + 1) - b0;
        for b1 in 0..=rest {
            let b = MultiDegree::new(vec![b0, b1, rest - b1]);
            let predicted = extremal_case_m2(lattice, &b)?.value;
            match enumerate(lattice, &b, &opts.cap)? {
                Some(faces) => {
                    let cc = ChainComplexData::build(&faces)?;
                    let oracle = cc.reduced_betti_numbers().get(p).copied().unwrap_or(0);
                    let cert = extremal_certificate_m2(lattice, &b, &faces)?;
                    extremal.record(
                        oracle == predicted && cert.acyclic && cert.critical.len() as u64 == 1 + predicted,
                        || format!("{b}: predicted {predicted}, oracle {oracle}"),
                    );
                }
                None => extremal.skipped += 1,
            }
        }
    }

    let mut sharpness = CheckResult::new("sharpness witnesses");
    for p in 1..=sharpness_p_max(lattice).min(p_max) {
        let w = sharpness_witness(lattice, p)?;
        match enumerate(lattice, &w.b, &opts.cap)? {
            Some(faces) => {
                let cc = ChainComplexData::build(&faces)?;
                let oracle = cc.reduced_betti_numbers().get(p).copied().unwrap_or(0);
                let cert = sharpness_certificate(lattice, &w, &faces)?;
                sharpness.record(
                    oracle == w.predicted_betti
                        && oracle >= 1
                        && cert.acyclic
                        && cert.critical.len() as u64 == 1 + w.predicted_betti,
                    || format!("p={p} {}: predicted {}, oracle {oracle}", w.b, w.predicted_betti),
                );
            }
            None => sharpness.skipped += 1,
        }
    }

    Ok(SuiteReport {
        checks: vec![soundness, slice_theorems, wedge, extremal, sharpness, homology, morse],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_for_d2() {
        let v = Veronese::with(2, 2).unwrap();
        let report = run_suite(&v, 4, 3, &SuiteOptions::default()).unwrap();
        assert!(report.ok(), "{report}");
        assert!(report.checks.iter().all(|c| c.passed > 0), "{report}");
    }

    #[test]
    fn suite_catches_a_corrupted_bound() {
        let v = Veronese::with(2, 2).unwrap();
        let opts = SuiteOptions {
            upper_bound_shift: -1,
            ..Default::default()
        };
        let report = run_suite(&v, 4, 3, &opts).unwrap();
        assert!(!report.ok());
        assert!(!report.checks[0].ok());
    }
}
