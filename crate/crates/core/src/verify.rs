//! Exhaustive verification of codes: the pairwise distance scan and the
//! composition classifier. Structural audits live in [`audit`].

pub mod audit;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::code::{Composition, SubspaceCode};
use crate::error::{Error, Result};
use crate::projgeo::{subspace_distance, Subspace};

/// A named pass/fail entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    /// A failed computation becomes a failed check carrying the error text.
    pub fn from_result(name: impl Into<String>, r: Result<String>) -> Self {
        match r {
            Ok(detail) => Check::new(name, true, detail),
            Err(e) => Check::new(name, false, e.to_string()),
        }
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "[{mark}] {}", self.name)
        } else {
            write!(f, "[{mark}] {} ({})", self.name, self.detail)
        }
    }
}

/// Result of the full pairwise scan.
#[derive(Clone, Debug)]
pub struct DistanceScan {
    pub min: usize,
    /// Lex-least index pair `(i, j)`, `i < j`, attaining `min`.
    pub witness: (usize, usize),
    /// Minimum distance per pair of vector dimensions `(k1 <= k2)`.
    pub by_dims: BTreeMap<(usize, usize), usize>,
}

type Partial = ((usize, usize, usize), BTreeMap<(usize, usize), usize>);

fn merge(mut a: Partial, b: Partial) -> Partial {
    a.0 = a.0.min(b.0);
    for (k, v) in b.1 {
        let e = a.1.entry(k).or_insert(v);
        *e = (*e).min(v);
    }
    a
}

/// Exact scan over all unordered pairs, fanned out over rows; the reduction
/// takes the minimum `(d, i, j)` so the witness does not depend on
/// scheduling.
pub fn scan(code: &SubspaceCode) -> Result<DistanceScan> {
    let words = code.codewords();
    if words.len() < 2 {
        return Err(Error::TooFewCodewords);
    }
    let f = &code.field;
    let identity: Partial = ((usize::MAX, usize::MAX, usize::MAX), BTreeMap::new());
    let (best, by_dims) = (0..words.len())
        .into_par_iter()
        .map(|i| {
            let a = &words[i];
            let mut acc = identity.clone();
            for (j, b) in words.iter().enumerate().skip(i + 1) {
                let d = subspace_distance(f, a, b);
                acc.0 = acc.0.min((d, i, j));
                let key = (a.dim().min(b.dim()), a.dim().max(b.dim()));
                let e = acc.1.entry(key).or_insert(d);
                *e = (*e).min(d);
            }
            acc
        })
        .reduce(|| identity.clone(), merge);
    Ok(DistanceScan {
        min: best.0,
        witness: (best.1, best.2),
        by_dims,
    })
}

/// Minimum distance and the lex-least pair of codewords attaining it.
pub fn min_distance(code: &SubspaceCode) -> Result<(usize, (Subspace, Subspace))> {
    let s = scan(code)?;
    let w = code.codewords();
    Ok((s.min, (w[s.witness.0], w[s.witness.1])))
}

/// The composition class whose template matches the histogram exactly.
pub fn detect_composition(histogram: [usize; 4], q: u64) -> Option<Composition> {
    Composition::ALL.into_iter().find(|c| c.histogram(q) == histogram)
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub distance: usize,
    pub first: Subspace,
    pub second: Subspace,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub q: u64,
    pub size: usize,
    /// Points, lines, planes, solids.
    pub histogram: [usize; 4],
    /// `"I"`..`"IV"` or `"nonstandard"`.
    pub detected_type: String,
    pub min_distance: Option<usize>,
    pub witness: Option<Witness>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn composition(&self) -> Option<Composition> {
        Composition::ALL
            .into_iter()
            .find(|c| c.to_string() == self.detected_type)
    }
}

pub fn classify(code: &SubspaceCode) -> VerificationReport {
    let q = code.q();
    let histogram = code.histogram();
    let detected = detect_composition(histogram, q);
    let optimal = (2 * (q * q * q + 1)) as usize;
    let mut checks = vec![Check::new(
        "size is 2(q^3+1)",
        code.len() == optimal,
        format!("{} of {optimal}", code.len()),
    )];
    checks.push(Check::new(
        "composition matches a type I-IV template",
        detected.is_some(),
        format!("{histogram:?}"),
    ));
    if let Some(t) = code.code_type {
        checks.push(Check::new(
            "declared type matches composition",
            detected == Some(t.composition()),
            format!("declared {t}"),
        ));
    }
    let (min_distance, witness) = match scan(code) {
        Ok(s) => {
            let w = code.codewords();
            let same_dim_ok = s
                .by_dims
                .iter()
                .filter(|((a, b), _)| a == b)
                .all(|(_, &d)| d >= 4);
            checks.push(Check::new(
                "line pairs at distance >= 4",
                s.by_dims.get(&(2, 2)).is_none_or(|&d| d >= 4),
                "",
            ));
            checks.push(Check::new(
                "plane pairs at distance >= 4",
                s.by_dims.get(&(3, 3)).is_none_or(|&d| d >= 4),
                "",
            ));
            checks.push(Check::new(
                "no line inside a plane",
                s.by_dims.get(&(2, 3)).is_none_or(|&d| d >= 3),
                "",
            ));
            checks.push(Check::new(
                "minimum attained only by mixed-dimension pairs",
                same_dim_ok,
                "",
            ));
            checks.push(Check::new(
                "minimum distance is 3",
                s.min == 3,
                format!("d={}", s.min),
            ));
            let witness = Witness {
                distance: s.min,
                first: w[s.witness.0],
                second: w[s.witness.1],
            };
            (Some(s.min), Some(witness))
        }
        Err(e) => {
            checks.push(Check::new("minimum distance is defined", false, e.to_string()));
            (None, None)
        }
    };
    VerificationReport {
        q,
        size: code.len(),
        histogram,
        detected_type: detected.map_or_else(|| "nonstandard".to_string(), |c| c.to_string()),
        min_distance,
        witness,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::Field;
    use crate::projgeo::{coordinate_span, distance_via_meet, enumerate_subspaces};

    #[test]
    fn two_disjoint_lines() {
        let f = Field::new(2, 1).unwrap();
        let code = SubspaceCode::new(
            f.clone(),
            None,
            vec![coordinate_span(&f, &[0, 1]), coordinate_span(&f, &[2, 3])],
        )
        .unwrap();
        let (d, _) = min_distance(&code).unwrap();
        assert_eq!(d, 4);
        let report = classify(&code);
        assert_eq!(report.detected_type, "nonstandard");
        assert!(!report.all_passed());
    }

    #[test]
    fn line_inside_plane() {
        let f = Field::new(3, 1).unwrap();
        let line = coordinate_span(&f, &[0, 1]);
        let plane = coordinate_span(&f, &[0, 1, 4]);
        let other = coordinate_span(&f, &[2, 3]);
        let code = SubspaceCode::new(f, None, vec![line, plane, other]).unwrap();
        let (d, (a, b)) = min_distance(&code).unwrap();
        assert_eq!(d, 1);
        assert_eq!((a, b), (line, plane));
    }

    #[test]
    fn singleton_is_rejected() {
        let f = Field::new(2, 1).unwrap();
        let code = SubspaceCode::new(f.clone(), None, vec![coordinate_span(&f, &[0])]).unwrap();
        assert_eq!(min_distance(&code).unwrap_err(), Error::TooFewCodewords);
    }

    #[test]
    fn witness_is_lex_least() {
        // Three points pairwise at distance 2: the witness must be (0, 1).
        let f = Field::new(2, 1).unwrap();
        let pts = enumerate_subspaces::<5>(&f, 1).unwrap();
        let code = SubspaceCode::new(f, None, pts[..3].to_vec()).unwrap();
        let s = scan(&code).unwrap();
        assert_eq!((s.min, s.witness), (2, (0, 1)));
    }

    #[test]
    fn scan_agrees_with_meet_route_on_q2() {
        // Independent route: brute minimum with intersection bases.
        let f = Field::new(2, 1).unwrap();
        let mut words = enumerate_subspaces::<5>(&f, 2).unwrap()[..40].to_vec();
        words.extend(enumerate_subspaces::<5>(&f, 3).unwrap()[100..130].iter());
        let code = SubspaceCode::new(f.clone(), None, words.clone()).unwrap();
        let s = scan(&code).unwrap();
        let w = code.codewords();
        let mut best = (usize::MAX, 0, 0);
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                best = best.min((distance_via_meet(&f, &w[i], &w[j]), i, j));
            }
        }
        assert_eq!((s.min, s.witness), (best.0, (best.1, best.2)));
    }

    #[test]
    fn templates() {
        assert_eq!(detect_composition([1, 28, 27, 0], 3), Some(Composition::I));
        assert_eq!(detect_composition([0, 8, 9, 1], 2), Some(Composition::II));
        assert_eq!(detect_composition([0, 2, 0, 0], 2), None);
    }
}
