//! Optimal codes for odd q.
//!
//! The planes are the orbit of a plane `alpha` meeting `pi` in a single
//! point off `ell`, the lines are a type-d line orbit (lines skew to `pi`)
//! avoiding `alpha`, and one extra line and plane close both families off at
//! `q^3 + 1` members. The remaining types swap single codewords for a point
//! of `ell` or a solid through `pi`.

use std::collections::HashSet;

use crate::code::{CodeType, Parameter, Parity, SubspaceCode};
use crate::error::{ensure, Error, Result};
use crate::galois::{find_irreducible_cubic, Elem, Field};
use crate::orbits::{build_group_odd, is_partial_spread, orbit, Group};
use crate::projgeo::{coordinate_span, enumerate_subspaces, OddFrame, Subspace, DIM};

#[derive(Clone, Debug)]
pub struct OddScaffold {
    pub field: Field,
    pub frame: OddFrame,
    pub cubic: (Elem, Elem, Elem),
    pub group: Group,
    /// `<e3, e4, e5>`, meeting `pi` in `A = e3`.
    pub alpha_plane: Subspace,
    /// `alpha^G`: `q^3` planes pairwise meeting in a point.
    pub p_prime: Vec<Subspace>,
    /// Orbit ids of the `q^2` lines of `alpha` skew to `pi`.
    pub excluded_line_orbits: Vec<Subspace>,
    /// The first type-d line orbit not met by `alpha`.
    pub l_prime: Vec<Subspace>,
    pub l_prime_id: Subspace,
    /// `<e1, e3>`, a line of `pi` other than `ell`.
    pub r_line: Subspace,
    /// `<ell, e4>`, a plane through `ell` other than `pi`.
    pub xi_plane: Subspace,
    /// `e2`, a point of `ell` off `r_line`.
    pub x_point: Subspace,
    /// `<pi, xi> = {X5 = 0}`.
    pub pi_j: Subspace,
    /// `{X4 = 0}`.
    pub pi_k: Subspace,
}

fn odd_field_check(f: &Field) -> Result<()> {
    if f.is_even() {
        Err(Error::Characteristic {
            needed: "odd",
            p: f.characteristic(),
        })
    } else {
        Ok(())
    }
}

/// Pairwise check over a family, returning the first offending pair.
fn all_pairs(items: &[Subspace], mut ok: impl FnMut(&Subspace, &Subspace) -> bool) -> Option<(Subspace, Subspace)> {
    for (i, a) in items.iter().enumerate() {
        for b in &items[i + 1..] {
            if !ok(a, b) {
                return Some((*a, *b));
            }
        }
    }
    None
}

pub fn build_scaffold_odd(f: &Field) -> Result<OddScaffold> {
    odd_field_check(f)?;
    let q = f.order();
    let q3 = q * q * q;
    let frame = OddFrame::new(f);
    let cubic = find_irreducible_cubic(f);
    let group = build_group_odd(f, cubic)?;

    let alpha_plane = coordinate_span(f, &[2, 3, 4]);
    let a_point = coordinate_span(f, &[2]);
    ensure(
        alpha_plane.meet(f, &frame.pi) == Some(a_point) && !frame.ell.contains(f, &a_point),
        "alpha meets pi in a point off ell",
        || format!("{alpha_plane}"),
    )?;

    let p_prime = orbit(f, &alpha_plane, &group);
    ensure(p_prime.len() == q3, "|alpha^G| = q^3", || format!("got {}", p_prime.len()))?;
    if let Some((a, b)) = all_pairs(&p_prime, |a, b| a.meet_dim(f, b) == 1) {
        return Err(crate::error::invariant(
            "planes of alpha^G pairwise meet in a point",
            format!("{a} and {b}"),
        ));
    }

    // Lines of alpha skew to pi are the lines of alpha missing A.
    let alpha_lines: Vec<Subspace> = alpha_plane
        .subspaces(f, 2)
        .into_iter()
        .filter(|l| l.is_disjoint(f, &frame.pi))
        .collect();
    ensure(alpha_lines.len() == q * q, "alpha has q^2 lines skew to pi", || {
        format!("got {}", alpha_lines.len())
    })?;
    let mut excluded: HashSet<Subspace> = HashSet::new();
    let mut excluded_ids = Vec::with_capacity(alpha_lines.len());
    for l in &alpha_lines {
        let o = orbit(f, l, &group);
        ensure(!excluded.contains(l), "lines of alpha lie in distinct orbits", || format!("{l}"))?;
        excluded_ids.push(o[0]);
        excluded.extend(o);
    }
    excluded_ids.sort_unstable();

    // The first type-d line outside the excluded orbits is the least member
    // of its orbit, hence the id of the first admissible orbit.
    let lines = enumerate_subspaces::<DIM>(f, 2)?;
    let l_prime_id = *lines
        .iter()
        .find(|l| l.is_disjoint(f, &frame.pi) && !excluded.contains(l))
        .ok_or_else(|| crate::error::invariant("an admissible type-d orbit exists", "none found"))?;
    let l_prime = orbit(f, &l_prime_id, &group);
    ensure(l_prime[0] == l_prime_id, "orbit id is the least member", || format!("{l_prime_id}"))?;
    ensure(l_prime.len() == q3, "|L'| = q^3", || format!("got {}", l_prime.len()))?;
    ensure(is_partial_spread(f, &l_prime), "L' is a partial spread", || format!("{l_prime_id}"))?;
    ensure(
        l_prime.iter().all(|l| !alpha_plane.contains(f, l)),
        "no line of L' lies in alpha",
        String::new,
    )?;

    let r_line = coordinate_span(f, &[0, 2]);
    let xi_plane = coordinate_span(f, &[0, 1, 3]);
    let x_point = coordinate_span(f, &[1]);
    let pi_j = frame.pi.join(f, &xi_plane);
    let pi_k = Subspace::from_equations(f, &[[0, 0, 0, 1, 0]])?;

    ensure(
        frame.pi.contains(f, &r_line) && r_line != frame.ell,
        "r is a line of pi other than ell",
        || format!("{r_line}"),
    )?;
    ensure(
        xi_plane.contains(f, &frame.ell) && xi_plane != frame.pi,
        "xi is a plane through ell other than pi",
        || format!("{xi_plane}"),
    )?;
    ensure(
        frame.ell.contains(f, &x_point) && !r_line.contains(f, &x_point),
        "X lies on ell and off r",
        || format!("{x_point}"),
    )?;
    ensure(
        pi_j == frame.solids[q] && pi_k == frame.solids[q - 1] && pi_j != pi_k,
        "Pi_j = {X5=0} and Pi_k = {X4=0} are distinct solids through pi",
        || format!("{pi_j} {pi_k}"),
    )?;
    ensure(
        p_prime.iter().all(|p| p.meet_dim(f, &xi_plane) == 1),
        "every plane of alpha^G meets xi in a point",
        String::new,
    )?;

    Ok(OddScaffold {
        field: f.clone(),
        frame,
        cubic,
        group,
        alpha_plane,
        p_prime,
        excluded_line_orbits: excluded_ids,
        l_prime,
        l_prime_id,
        r_line,
        xi_plane,
        x_point,
        pi_j,
        pi_k,
    })
}

/// Assembles the code of the requested type:
///
/// | type | codewords |
/// |------|-----------|
/// | IV   | `P' ∪ {xi} ∪ L' ∪ {r}` |
/// | I    | `P' ∪ L' ∪ {r} ∪ {X}` |
/// | II   | `P' ∪ {xi} ∪ L' ∪ {Pi_k}` |
/// | III  | `P' ∪ L' ∪ {X, Pi_k}` |
pub fn assemble_code_odd(s: &OddScaffold, code_type: CodeType) -> Result<SubspaceCode> {
    let mut words: Vec<Subspace> = Vec::with_capacity(2 * s.p_prime.len() + 2);
    words.extend_from_slice(&s.p_prime);
    words.extend_from_slice(&s.l_prime);
    match code_type {
        CodeType::IV => words.extend([s.xi_plane, s.r_line]),
        CodeType::I => words.extend([s.r_line, s.x_point]),
        CodeType::II => words.extend([s.xi_plane, s.pi_k]),
        CodeType::III => words.extend([s.x_point, s.pi_k]),
        other => {
            return Err(Error::TypeNotAvailable {
                code_type: other.to_string(),
                parity: Parity::Odd.to_string(),
            })
        }
    }
    let q = s.field.order();
    let expected = 2 * (q * q * q + 1);
    ensure(words.len() == expected, "code size 2(q^3+1)", || format!("got {}", words.len()))?;

    let (a, b, c) = s.cubic;
    let mut code = SubspaceCode::new(s.field.clone(), Some(code_type), words)?
        .with_parameter("cubic", Parameter::Elements(vec![a, b, c]))
        .with_parameter("alpha_plane", Parameter::Subspace(s.alpha_plane))
        .with_parameter("l_prime_id", Parameter::Subspace(s.l_prime_id));
    let extras: &[(&str, Subspace)] = match code_type {
        CodeType::IV => &[("xi_plane", s.xi_plane), ("r_line", s.r_line)],
        CodeType::I => &[("r_line", s.r_line), ("x_point", s.x_point)],
        CodeType::II => &[("xi_plane", s.xi_plane), ("pi_j", s.pi_j), ("pi_k", s.pi_k)],
        _ => &[("x_point", s.x_point), ("pi_k", s.pi_k)],
    };
    for (name, sub) in extras {
        code = code.with_parameter(name, Parameter::Subspace(*sub));
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Composition;
    use crate::orbits::orbit_id;
    use crate::projgeo::subspace_distance;

    fn scaffold(q: u32) -> OddScaffold {
        build_scaffold_odd(&Field::new(q, 1).unwrap()).unwrap()
    }

    #[test]
    fn scaffold_q3() {
        let s = scaffold(3);
        let f = &s.field;
        assert_eq!(s.p_prime.len(), 27);
        assert_eq!(s.l_prime.len(), 27);
        assert_eq!(s.excluded_line_orbits.len(), 9);
        let mut ids = s.excluded_line_orbits.clone();
        ids.dedup();
        assert_eq!(ids.len(), 9);
        assert!(!s.excluded_line_orbits.contains(&s.l_prime_id));
        assert!(s.frame.ell.contains(f, &s.x_point));
        assert!(!s.r_line.contains(f, &s.x_point));
        assert_eq!(orbit_id(f, &s.l_prime[13], &s.group), s.l_prime_id);
    }

    #[test]
    fn even_field_is_rejected() {
        let f = Field::new(2, 2).unwrap();
        assert!(matches!(build_scaffold_odd(&f), Err(Error::Characteristic { .. })));
    }

    #[test]
    fn codes_q3_have_the_right_composition_and_distance() {
        let s = scaffold(3);
        let f = &s.field;
        for t in CodeType::ODD {
            let code = assemble_code_odd(&s, t).unwrap();
            assert_eq!(code.len(), 56);
            assert_eq!(code.histogram(), t.composition().histogram(3));
            let words = code.codewords();
            let mut min = usize::MAX;
            for (i, a) in words.iter().enumerate() {
                for b in &words[i + 1..] {
                    let d = subspace_distance(f, a, b);
                    if a.dim() == b.dim() {
                        assert!(d >= 4, "{t}: {a} {b}");
                    }
                    min = min.min(d);
                }
            }
            assert_eq!(min, 3, "type {t}");
        }
        assert_eq!(assemble_code_odd(&s, CodeType::I).unwrap().histogram(), [1, 28, 27, 0]);
        assert_eq!(Composition::IV.histogram(3), [0, 28, 28, 0]);
    }

    #[test]
    fn even_only_types_are_rejected() {
        let s = scaffold(3);
        assert!(matches!(
            assemble_code_odd(&s, CodeType::IVPrime),
            Err(Error::TypeNotAvailable { .. })
        ));
    }

    #[test]
    fn scaffold_is_deterministic() {
        let a = scaffold(3);
        let b = scaffold(3);
        assert_eq!(a.l_prime_id, b.l_prime_id);
        assert_eq!(a.p_prime, b.p_prime);
    }
}
