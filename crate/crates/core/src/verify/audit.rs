//! Structural audits: one named check per orbit or incidence claim the
//! constructions rely on, recomputed from scratch by enumeration.

use std::collections::{BTreeSet, HashSet};

use crate::code::{CodeType, Parity};
use crate::construct_even::{
    assemble_code_even, build_scaffold_even, is_good_line, klein_cross_check, pencil_coverage, EvenScaffold,
};
use crate::construct_odd::{assemble_code_odd, build_scaffold_odd, OddScaffold};
use crate::error::{Error, Result};
use crate::galois::{find_irreducible_cubic, find_quadratic_alpha, Field};
use crate::orbits::{build_group_even, build_group_odd, is_partial_spread, Group, Label, OrbitTable};
use crate::projgeo::{Matrix, Subspace, DIM};

use super::{classify, Check};

/// Largest field order `audit_lemmas` accepts.
pub const AUDIT_MAX_Q: usize = 9;
/// Line censuses and exhaustive closure checks run up to this order.
pub const FULL_CENSUS_MAX_Q: usize = 5;
/// The six-dimensional polarity check runs up to this order.
pub const KLEIN_MAX_Q: usize = 4;

pub fn audit_lemmas(f: &Field) -> Result<Vec<Check>> {
    let q = f.order();
    if q > AUDIT_MAX_Q {
        return Err(Error::OutOfRange {
            q: q as u64,
            range: "q <= 9",
        });
    }
    match Parity::of(f) {
        Parity::Odd => audit_odd(f),
        Parity::Even => audit_even(f),
    }
}

fn sorted(mut v: Vec<Subspace>) -> Vec<Subspace> {
    v.sort_unstable();
    v
}

/// Compares the orbits of a table with an expected partition, as sets of
/// sets.
fn same_partition(table: &OrbitTable, expected: Vec<Vec<Subspace>>) -> bool {
    let got: BTreeSet<&Vec<Subspace>> = table.orbits.values().collect();
    let want: Vec<Vec<Subspace>> = expected.into_iter().map(sorted).collect();
    let want: BTreeSet<&Vec<Subspace>> = want.iter().collect();
    got == want
}

fn element_orders(f: &Field, g: &Group, order: u64) -> bool {
    let id = Matrix::<DIM>::identity();
    g.elements()
        .iter()
        .all(|e| e.matrix == id || (e.matrix != id && e.matrix.pow(f, order) == id))
}

fn code_checks(checks: &mut Vec<Check>, types: &[CodeType], mut build: impl FnMut(CodeType) -> Result<crate::code::SubspaceCode>) {
    for &t in types {
        let name = format!("type {t} code: size, composition, d = 3");
        checks.push(match build(t) {
            Ok(code) => {
                let report = classify(&code);
                let detail = format!(
                    "{} codewords, histogram {:?}, d={}",
                    report.size,
                    report.histogram,
                    report.min_distance.map_or("-".into(), |d| d.to_string())
                );
                Check::new(name, report.all_passed(), detail)
            }
            Err(e) => Check::new(name, false, e.to_string()),
        });
    }
}

fn audit_odd(f: &Field) -> Result<Vec<Check>> {
    let q = f.order();
    let p = f.characteristic() as u64;
    let mut checks = Vec::new();
    let cubic = find_irreducible_cubic(f);
    let g = build_group_odd(f, cubic)?;
    checks.push(Check::new("odd group has order q^3", g.order() == q * q * q, format!("{}", g.order())));
    if q <= FULL_CENSUS_MAX_Q {
        checks.push(Check::from_result(
            "odd group is closed under products and inverses",
            g.verify_closure(f).map(|_| String::new()),
        ));
        checks.push(Check::new("odd product law", odd_product_law(f, &g), ""));
    }
    checks.push(Check::new("non-identity elements have order p", element_orders(f, &g, p), ""));

    let frame = crate::projgeo::OddFrame::new(f);
    let points = OrbitTable::build(f, &g, 1)?;
    let mut expected: Vec<Vec<Subspace>> = frame.ell.points(f).into_iter().map(|x| vec![x]).collect();
    let pi_pts = frame.pi.points(f);
    expected.push(pi_pts.iter().filter(|x| !frame.ell.contains(f, x)).copied().collect());
    for s in &frame.solids {
        expected.push(s.points(f).into_iter().filter(|x| !frame.pi.contains(f, x)).collect());
    }
    checks.push(Check::new(
        "point orbits: points of ell, pi \\ ell, Pi_i \\ pi",
        points.orbits.len() == 2 * q + 3 && same_partition(&points, expected),
        format!("{} orbits, sizes {:?}", points.orbits.len(), points.size_profile()),
    ));

    if q <= FULL_CENSUS_MAX_Q {
        let lines = OrbitTable::build(f, &g, 2)?;
        let (mut a, mut b, mut c, mut d, mut fixed, mut other) = (0, 0, 0, 0, 0, 0);
        let mut spreads = true;
        for (id, m) in &lines.orbits {
            let size = m.len();
            if *id == frame.ell {
                fixed += usize::from(size == 1);
                continue;
            }
            match id.meet(f, &frame.pi) {
                Some(x) if x.dim() == 2 => a += usize::from(size == q),
                Some(x) if frame.ell.contains(f, &x) => b += usize::from(size == q * q),
                Some(_) => c += usize::from(size == q * q * q),
                None => {
                    d += usize::from(size == q * q * q);
                    spreads &= is_partial_spread(f, m);
                }
            }
            other += 1;
        }
        let want = (q + 1, (q + 1) * (q + 1), q * (q + 1), q * q * q);
        checks.push(Check::new(
            "line orbits: types a-d plus ell",
            fixed == 1 && (a, b, c, d) == want && other == a + b + c + d,
            format!("a={a} b={b} c={c} d={d}"),
        ));
        checks.push(Check::new("type-d line orbits are partial spreads", spreads, ""));
    }

    match build_scaffold_odd(f) {
        Ok(s) => {
            checks.push(Check::new(
                "scaffold: alpha^G and L' have q^3 members",
                s.p_prime.len() == q * q * q && s.l_prime.len() == q * q * q,
                format!("L' id {}", s.l_prime_id),
            ));
            odd_scaffold_checks(f, &s, &mut checks);
            code_checks(&mut checks, &CodeType::ODD, |t| assemble_code_odd(&s, t));
        }
        Err(e) => checks.push(Check::new("scaffold", false, e.to_string())),
    }
    Ok(checks)
}

fn odd_product_law(f: &Field, g: &Group) -> bool {
    let two = f.scalar(2);
    g.elements().iter().all(|y| {
        let Label::Odd { r: r1, s: s1, t: t1 } = y.label else { return false };
        let Ok(inv) = y.matrix.inverse(f) else { return false };
        g.elements().iter().all(|x| {
            let Label::Odd { r, s, t } = x.label else { return false };
            // M M'^{-1} = M_{r-r', s-s', t-t'-2s'(r-r')}
            let dr = f.sub(r, r1);
            let label = Label::Odd {
                r: dr,
                s: f.sub(s, s1),
                t: f.sub(f.sub(t, t1), f.mul(two, f.mul(s1, dr))),
            };
            g.find(label).is_some_and(|z| z.matrix == x.matrix.mul(f, &inv))
        })
    })
}

fn odd_scaffold_checks(f: &Field, s: &OddScaffold, checks: &mut Vec<Check>) {
    let lines_in_planes = s
        .l_prime
        .iter()
        .all(|l| s.p_prime.iter().all(|p| !p.contains(f, l)));
    checks.push(Check::new("no line of L' lies in a plane of alpha^G", lines_in_planes, ""));
    checks.push(Check::new(
        "every plane of alpha^G meets xi in a point",
        s.p_prime.iter().all(|p| p.meet_dim(f, &s.xi_plane) == 1),
        "",
    ));
}

fn audit_even(f: &Field) -> Result<Vec<Check>> {
    let q = f.order();
    let mut checks = Vec::new();
    let alpha = find_quadratic_alpha(f);
    let g = build_group_even(f, alpha)?;
    checks.push(Check::new(
        "even group has order q^3 - q",
        g.order() == q * q * q - q,
        format!("{}", g.order()),
    ));
    if q <= KLEIN_MAX_Q {
        checks.push(Check::from_result(
            "even group is closed under products and inverses",
            g.verify_closure(f).map(|_| String::new()),
        ));
    }
    let g1 = g.subgroup(|l| matches!(l, Label::Even { a: 1, b: 0, .. }));
    let g2 = g.subgroup(|l| matches!(l, Label::Even { a: 1, c: 1, d: 0, .. }));
    let g3 = g.subgroup(|l| matches!(l, Label::Even { b: 0, c: 1, d: 0, .. }));
    let subgroups_ok = [(&g1, q + 1), (&g2, q), (&g3, q - 1)]
        .iter()
        .all(|(h, n)| h.order() == *n && h.verify_closure(f).is_ok());
    checks.push(Check::new(
        "subgroups G1, G2, G3 of orders q+1, q, q-1",
        subgroups_ok,
        format!("{} {} {}", g1.order(), g2.order(), g3.order()),
    ));

    let s = match build_scaffold_even(f) {
        Ok(s) => s,
        Err(e) => {
            checks.push(Check::new("even geometry and scaffold", false, e.to_string()));
            return Ok(checks);
        }
    };
    let geo = &s.geometry;
    let frame = &geo.frame;

    let points = OrbitTable::build(f, &g, 1)?;
    let in_pi_or_h = |x: &Subspace| frame.pi.contains(f, x) || geo.is_on_hyperbolic(x);
    let mut expected = vec![
        vec![frame.nucleus],
        frame.ell.points(f),
        frame
            .pi
            .points(f)
            .into_iter()
            .filter(|x| !frame.ell.contains(f, x) && *x != frame.nucleus)
            .collect(),
        geo.hyperbolic.iter().filter(|x| !frame.ell.contains(f, x)).copied().collect(),
        frame.sigma.points(f).into_iter().filter(|x| !geo.is_on_hyperbolic(x)).collect(),
        geo.cone.iter().filter(|x| !in_pi_or_h(x)).copied().collect(),
    ];
    expected.extend(geo.parabolic.iter().map(|(_, pts)| pts.clone()));
    checks.push(Check::new(
        "point orbits: N, ell, pi \\ (ell u N), H \\ ell, Sigma \\ H, C \\ (pi u H), Q_i \\ H",
        points.orbits.len() == q + 5 && same_partition(&points, expected),
        format!("{} orbits, sizes {:?}", points.orbits.len(), points.size_profile()),
    ));

    checks.push(Check::new(
        "W(3,q) has (q+1)(q^2+1) lines and |T| = q^3 - q",
        geo.w_lines.len() == (q + 1) * (q * q + 1) && geo.tset.len() == q * q * q - q,
        format!("{} and {}", geo.w_lines.len(), geo.tset.len()),
    ));
    checks.push(Check::new(
        "T is a single orbit",
        crate::orbits::orbit(f, &geo.t, &g) == geo.tset,
        "",
    ));
    let reg_failures: Vec<String> = geo
        .tset
        .iter()
        .filter_map(|t| geo.regulus_check(t).err().map(|e| e.to_string()))
        .collect();
    checks.push(Check::new(
        "t^G2 together with ell is a regulus for every t in T",
        reg_failures.is_empty(),
        reg_failures.first().cloned().unwrap_or_default(),
    ));

    let sizes_ok = geo.good_orbits.len() == q * q - q
        && geo
            .good_orbits
            .iter()
            .all(|o| o.members.len() == q * q * q - q && is_partial_spread(f, &o.members));
    checks.push(Check::new(
        "q^2 - q good line-orbits of q^3 - q pairwise disjoint lines",
        sizes_ok,
        format!("{} orbits", geo.good_orbits.len()),
    ));
    checks.push(Check::new(
        "good lines meet every pencil class once",
        geo.good_orbits.iter().all(|o| o.members.iter().all(|l| is_good_line(f, l))),
        "",
    ));

    even_plane_checks(f, &s, &mut checks);

    if q <= KLEIN_MAX_Q {
        checks.push(match klein_cross_check(&s) {
            Ok(r) => {
                let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                Check::new(
                    "Klein polarity maps sigma^G onto a good plane-orbit",
                    failed.is_empty(),
                    failed.join("; "),
                )
            }
            Err(e) => Check::new("Klein polarity maps sigma^G onto a good plane-orbit", false, e.to_string()),
        });
    }

    code_checks(&mut checks, &CodeType::EVEN, |t| assemble_code_even(&s, t));
    Ok(checks)
}

fn even_plane_checks(f: &Field, s: &EvenScaffold, checks: &mut Vec<Check>) {
    let geo = &s.geometry;
    let q = geo.q();
    let pairwise = s
        .p1
        .iter()
        .enumerate()
        .all(|(i, a)| s.p1[i + 1..].iter().all(|b| a.meet_dim(f, b) == 1));
    checks.push(Check::new(
        "good plane-orbit: q^3 - q planes pairwise meeting in a point",
        s.p1.len() == q * q * q - q && pairwise,
        format!("{} planes", s.p1.len()),
    ));
    let tset: HashSet<&Subspace> = geo.tset.iter().collect();
    checks.push(Check::new(
        "good planes meet Sigma in a line of T",
        s.p1.iter().all(|p| {
            p.meet(f, &geo.frame.sigma)
                .is_some_and(|t| t.dim() == 2 && tset.contains(&t))
        }),
        "",
    ));
    let cone: HashSet<&Subspace> = geo.cone.iter().collect();
    let mut conics = true;
    let mut coverage_ok = true;
    let mut nucleus_ok = true;
    let mut covered = BTreeSet::new();
    let mut detail = String::new();
    for p in &s.p1 {
        let c: Vec<Subspace> = p.points(f).into_iter().filter(|x| cone.contains(x)).collect();
        let lines = p.subspaces(f, 2);
        let arcs = lines.iter().all(|l| c.iter().filter(|x| l.contains(f, x)).count() <= 2);
        conics &= c.len() == q + 1 && arcs;
        match pencil_coverage(geo, p) {
            Ok(cov) => {
                covered.extend(cov.orbits.iter().copied());
                // Lines through the nucleus are tangent to the conic.
                nucleus_ok &= !c.contains(&cov.nucleus)
                    && lines
                        .iter()
                        .filter(|l| l.contains(f, &cov.nucleus))
                        .all(|l| c.iter().filter(|x| l.contains(f, x)).count() == 1);
            }
            Err(e) => {
                coverage_ok = false;
                if detail.is_empty() {
                    detail = e.to_string();
                }
            }
        }
    }
    checks.push(Check::new("good planes meet the cone C in a conic", conics, ""));
    checks.push(Check::new(
        "every good plane covers q-1 good line-orbits through one point",
        coverage_ok,
        detail,
    ));
    checks.push(Check::new(
        "covered lines pass through the nucleus of the conic",
        coverage_ok && nucleus_ok,
        "",
    ));
    checks.push(Check::new(
        "good plane-orbit covers the same q-1 line-orbits in every plane",
        coverage_ok && covered.len() == q - 1 && !covered.contains(&s.l1_index),
        format!("{covered:?}"),
    ));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_all_pass(checks: &[Check]) {
        for c in checks {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn audit_q2() {
        let checks = audit_lemmas(&Field::new(2, 1).unwrap()).unwrap();
        assert!(checks.iter().any(|c| c.name.starts_with("Klein")));
        assert_all_pass(&checks);
    }

    #[test]
    fn audit_q3() {
        let checks = audit_lemmas(&Field::new(3, 1).unwrap()).unwrap();
        assert!(checks.iter().any(|c| c.name.starts_with("line orbits")));
        assert_all_pass(&checks);
    }

    #[test]
    fn out_of_range() {
        let f = Field::new(11, 1).unwrap();
        assert!(matches!(audit_lemmas(&f), Err(Error::OutOfRange { .. })));
    }
}
