//! Optimal codes for even q.
//!
//! Inside the solid `Sigma = {X1 = 0}` sits the hyperbolic quadric
//! `H: X2 X5 + X3 X4 = 0` with its reguli `R1` (through `ell`) and `R2`. The
//! group fixes the pencil of quadrics spanned by `X1^2 = 0` and
//! `X2 X5 + X3 X4 = 0`; its members are `Sigma` (doubled), the cone with
//! vertex `N` over `H`, and `q - 1` parabolic quadrics
//! `lambda X1^2 + X2 X5 + X3 X4 = 0`. Outside `pi ∪ H` these members cut the
//! point set into `q + 1` orbits of size `q^3 - q`, and a "good" line meets
//! each of them exactly once.
//!
//! All membership questions (tangency, quadric points, reguli) are answered
//! by counting points rather than through bilinear forms, which behave
//! differently in characteristic 2.

mod klein;

pub use klein::{klein_cross_check, KleinReport};

use std::collections::{HashMap, HashSet};

use crate::code::{CodeType, Parameter, Parity, SubspaceCode};
use crate::error::{ensure, invariant, Error, Result};
use crate::galois::{find_quadratic_alpha, Elem, Field};
use crate::orbits::{build_group_even, is_partial_spread, orbit, Group, Label};
use crate::projgeo::{enumerate_subspaces, EvenFrame, Row, Subspace, DIM};

/// `X2 X5 + X3 X4`.
pub fn quadratic_form(f: &Field, v: &Row<DIM>) -> Elem {
    f.add(f.mul(v[1], v[4]), f.mul(v[2], v[3]))
}

/// Which part of the pencil partition a point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PencilClass {
    /// Points of `pi ∪ H`, met by no good line.
    Base,
    /// `Sigma \ H`.
    Sigma,
    /// `Cone \ (pi ∪ H)`.
    Cone,
    /// `Q_lambda \ H` for `lambda X1^2 + X2 X5 + X3 X4 = 0`, `lambda != 0`.
    Parabolic(Elem),
}

pub fn pencil_class(f: &Field, point: &Subspace) -> PencilClass {
    let v = point.vector();
    let value = quadratic_form(f, &v);
    if v[3] == 0 && v[4] == 0 {
        return PencilClass::Base;
    }
    if v[0] == 0 {
        return if value == 0 {
            PencilClass::Base
        } else {
            PencilClass::Sigma
        };
    }
    if value == 0 {
        return PencilClass::Cone;
    }
    // lambda = -Q(v) / X1^2
    let x1_sq = f.mul(v[0], v[0]);
    PencilClass::Parabolic(f.neg(f.mul(value, f.inv_nonzero(x1_sq))))
}

/// A line meeting every non-base pencil class exactly once.
pub fn is_good_line(f: &Field, line: &Subspace) -> bool {
    let mut seen = HashSet::new();
    line.points(f).iter().all(|p| {
        let c = pencil_class(f, p);
        c != PencilClass::Base && seen.insert(c)
    })
}

#[derive(Clone, Debug)]
pub struct LineOrbit {
    pub id: Subspace,
    pub members: Vec<Subspace>,
}

/// Everything up to and including the good line-orbits.
#[derive(Clone, Debug)]
pub struct EvenGeometry {
    pub field: Field,
    pub frame: EvenFrame,
    pub alpha_f: Elem,
    pub group: Group,
    /// Points of `H`.
    pub hyperbolic: Vec<Subspace>,
    /// Regulus of `H` containing `ell`.
    pub r1: Vec<Subspace>,
    /// Opposite regulus.
    pub r2: Vec<Subspace>,
    /// Lines of `W(3,q)`: lines of `Sigma` meeting `H` in 1 or `q+1` points.
    pub w_lines: Vec<Subspace>,
    /// Lines of `W(3,q)` with exactly one point in `H \ ell`.
    pub tset: Vec<Subspace>,
    /// Points of the cone `X2 X5 + X3 X4 = 0` (vertex `N`, contains `pi`).
    pub cone: Vec<Subspace>,
    /// `(lambda, points of Q_lambda \ H)` for each nonzero `lambda`.
    pub parabolic: Vec<(Elem, Vec<Subspace>)>,
    /// Lex-least element of `tset`.
    pub t: Subspace,
    /// `t ∩ H`.
    pub tangent_point: Subspace,
    /// The `q^2 - q` lines of `<N, t>` through neither `N` nor `t ∩ H`.
    pub good_line_reps: Vec<Subspace>,
    /// Good line-orbits sorted by id.
    pub good_orbits: Vec<LineOrbit>,
    good_index: HashMap<Subspace, usize>,
}

fn even_field_check(f: &Field) -> Result<()> {
    if f.is_even() {
        Ok(())
    } else {
        Err(Error::Characteristic {
            needed: "even",
            p: f.characteristic(),
        })
    }
}

fn count_in(f: &Field, sub: &Subspace, set: &HashSet<Subspace>) -> usize {
    sub.points(f).iter().filter(|p| set.contains(p)).count()
}

fn first_pair(items: &[Subspace], mut ok: impl FnMut(&Subspace, &Subspace) -> bool) -> Option<(Subspace, Subspace)> {
    for (i, a) in items.iter().enumerate() {
        for b in &items[i + 1..] {
            if !ok(a, b) {
                return Some((*a, *b));
            }
        }
    }
    None
}

pub fn build_even_geometry(f: &Field) -> Result<EvenGeometry> {
    even_field_check(f)?;
    let q = f.order();
    let frame = EvenFrame::new(f);
    let alpha_f = find_quadratic_alpha(f);
    let group = build_group_even(f, alpha_f)?;
    ensure(group.order() == q * q * q - q, "|G| = q^3 - q", || format!("got {}", group.order()))?;

    let hyperbolic: Vec<Subspace> = frame
        .sigma
        .points(f)
        .into_iter()
        .filter(|p| quadratic_form(f, &p.vector()) == 0)
        .collect();
    ensure(hyperbolic.len() == (q + 1) * (q + 1), "|H| = (q+1)^2", || {
        format!("got {}", hyperbolic.len())
    })?;
    let h_set: HashSet<Subspace> = hyperbolic.iter().copied().collect();

    let sigma_lines = frame.sigma.subspaces(f, 2);
    let on_h: Vec<(Subspace, usize)> = sigma_lines.iter().map(|l| (*l, count_in(f, l, &h_set))).collect();
    let h_lines: Vec<Subspace> = on_h.iter().filter(|(_, n)| *n == q + 1).map(|(l, _)| *l).collect();
    ensure(h_lines.len() == 2 * (q + 1), "H contains 2(q+1) lines", || format!("got {}", h_lines.len()))?;
    let (r1, r2): (Vec<Subspace>, Vec<Subspace>) = h_lines
        .iter()
        .partition(|l| **l == frame.ell || l.is_disjoint(f, &frame.ell));
    ensure(r1.len() == q + 1 && r2.len() == q + 1, "two reguli of q+1 lines", || {
        format!("{} and {}", r1.len(), r2.len())
    })?;
    ensure(
        is_partial_spread(f, &r1) && is_partial_spread(f, &r2),
        "each regulus consists of pairwise disjoint lines",
        String::new,
    )?;
    ensure(
        r1.iter().all(|a| r2.iter().all(|b| a.meet_dim(f, b) == 1)),
        "lines of opposite reguli meet",
        String::new,
    )?;

    let w_lines: Vec<Subspace> = on_h
        .iter()
        .filter(|(_, n)| *n == 1 || *n == q + 1)
        .map(|(l, _)| *l)
        .collect();
    ensure(w_lines.len() == (q + 1) * (q * q + 1), "W(3,q) has (q+1)(q^2+1) lines", || {
        format!("got {}", w_lines.len())
    })?;

    let ell_points: HashSet<Subspace> = frame.ell.points(f).into_iter().collect();
    let h_off_ell: HashSet<Subspace> = h_set.difference(&ell_points).copied().collect();
    let tset: Vec<Subspace> = w_lines
        .iter()
        .filter(|l| count_in(f, l, &h_off_ell) == 1)
        .copied()
        .collect();
    ensure(tset.len() == q * q * q - q, "|T| = q^3 - q", || format!("got {}", tset.len()))?;
    let t = tset[0];
    ensure(orbit(f, &t, &group) == tset, "G is transitive on T", String::new)?;
    let tangent_point = *t
        .points(f)
        .iter()
        .find(|p| h_set.contains(p))
        .expect("t meets H");

    let mut cone = Vec::new();
    let mut parabolic: Vec<(Elem, Vec<Subspace>)> = f.nonzero().map(|l| (l, Vec::new())).collect();
    let mut class_sizes: HashMap<PencilClass, usize> = HashMap::new();
    for p in enumerate_subspaces::<DIM>(f, 1)? {
        let v = p.vector();
        let value = quadratic_form(f, &v);
        if value == 0 {
            cone.push(p);
        } else if v[0] != 0 {
            let lambda = f.neg(f.mul(value, f.inv_nonzero(f.mul(v[0], v[0]))));
            parabolic[lambda as usize - 1].1.push(p);
        }
        *class_sizes.entry(pencil_class(f, &p)).or_default() += 1;
    }
    ensure(class_sizes.len() == q + 2, "pencil classes", || format!("{class_sizes:?}"))?;
    for (class, size) in &class_sizes {
        let expected = match class {
            PencilClass::Base => 2 * q * q + 2 * q + 1,
            _ => q * q * q - q,
        };
        ensure(*size == expected, "pencil members partition PG(4,q)", || {
            format!("{class:?} has {size} points")
        })?;
    }
    // Each parabolic member contains H and |Q \ H| = q^3 - q.
    for (lambda, pts) in &parabolic {
        ensure(pts.len() == q * q * q - q, "|Q_lambda \\ H| = q^3 - q", || {
            format!("lambda={lambda}: {}", pts.len())
        })?;
    }

    let gamma0 = frame.nucleus.join(f, &t);
    let good_line_reps: Vec<Subspace> = gamma0
        .subspaces(f, 2)
        .into_iter()
        .filter(|l| !l.contains(f, &frame.nucleus) && !l.contains(f, &tangent_point))
        .collect();
    ensure(good_line_reps.len() == q * q - q, "q^2 - q good line representatives", || {
        format!("got {}", good_line_reps.len())
    })?;
    let mut good_orbits = Vec::with_capacity(good_line_reps.len());
    for rep in &good_line_reps {
        ensure(is_good_line(f, rep), "good line meets each pencil class once", || format!("{rep}"))?;
        let members = orbit(f, rep, &group);
        ensure(members.len() == q * q * q - q, "good line-orbit has q^3 - q lines", || {
            format!("{rep}: {}", members.len())
        })?;
        ensure(is_partial_spread(f, &members), "good line-orbit is a partial spread", || {
            format!("{rep}")
        })?;
        good_orbits.push(LineOrbit { id: members[0], members });
    }
    good_orbits.sort_by_key(|o| o.id);
    let mut good_index = HashMap::new();
    for (i, o) in good_orbits.iter().enumerate() {
        for m in &o.members {
            ensure(good_index.insert(*m, i).is_none(), "good line-orbits are distinct", || {
                format!("{m}")
            })?;
        }
    }

    Ok(EvenGeometry {
        field: f.clone(),
        frame,
        alpha_f,
        group,
        hyperbolic,
        r1,
        r2,
        w_lines,
        tset,
        cone,
        parabolic,
        t,
        tangent_point,
        good_line_reps,
        good_orbits,
        good_index,
    })
}

impl EvenGeometry {
    pub fn q(&self) -> usize {
        self.field.order()
    }

    pub fn good_orbit_of(&self, line: &Subspace) -> Option<usize> {
        self.good_index.get(line).copied()
    }

    pub fn is_on_hyperbolic(&self, point: &Subspace) -> bool {
        let v = point.vector();
        v[0] == 0 && quadratic_form(&self.field, &v) == 0
    }

    /// The single point of `H` on a line of `T`.
    pub fn tangency_point(&self, t: &Subspace) -> Result<Subspace> {
        let pts: Vec<Subspace> = t
            .points(&self.field)
            .into_iter()
            .filter(|p| self.is_on_hyperbolic(p))
            .collect();
        match pts.as_slice() {
            [u] => Ok(*u),
            _ => Err(invariant("line of T meets H once", format!("{t}: {} points", pts.len()))),
        }
    }

    /// `R`: the point where the `R2` line through `u` meets `ell`.
    pub fn regulus_foot(&self, u: &Subspace) -> Result<Subspace> {
        let f = &self.field;
        let m = self
            .r2
            .iter()
            .find(|m| m.contains(f, u))
            .ok_or_else(|| invariant("a line of R2 passes through U", format!("{u}")))?;
        m.meet(f, &self.frame.ell)
            .ok_or_else(|| invariant("lines of R2 meet ell", format!("{m}")))
    }

    /// `t^{G2} ∪ {ell}` for `G2 = { M(1,b,1,0) }`, verified to be a regulus:
    /// `q+1` pairwise disjoint lines covering `(q+1)^2` points whose
    /// transversals include three pairwise disjoint lines.
    pub fn regulus_check(&self, t: &Subspace) -> Result<Vec<Subspace>> {
        let f = &self.field;
        let q = self.q();
        ensure(self.tset.binary_search(t).is_ok(), "t is a line of T", || format!("{t}"))?;
        let g2 = self
            .group
            .subgroup(|l| matches!(l, Label::Even { a: 1, c: 1, d: 0, .. }));
        let mut lines = orbit(f, t, &g2);
        lines.push(self.frame.ell);
        lines.sort_unstable();
        lines.dedup();
        ensure(lines.len() == q + 1, "regulus has q+1 lines", || format!("got {}", lines.len()))?;
        ensure(is_partial_spread(f, &lines), "regulus lines are pairwise disjoint", String::new)?;
        let covered: HashSet<Subspace> = lines.iter().flat_map(|l| l.points(f)).collect();
        ensure(covered.len() == (q + 1) * (q + 1), "regulus covers (q+1)^2 points", || {
            format!("got {}", covered.len())
        })?;
        let transversals: Vec<Subspace> = self
            .frame
            .sigma
            .subspaces(f, 2)
            .into_iter()
            .filter(|x| lines.iter().all(|l| x.meet_dim(f, l) == 1))
            .collect();
        ensure(
            transversals.len() >= 3 && is_partial_spread(f, &transversals[..3]),
            "three pairwise disjoint transversals",
            || format!("{} transversals", transversals.len()),
        )?;
        Ok(lines)
    }
}

/// Orbit of `gamma = <t, U'>`: `q^3 - q` planes pairwise meeting in a point.
pub fn good_plane_orbit(g: &EvenGeometry, t: &Subspace, u_prime: &Subspace) -> Result<Vec<Subspace>> {
    let f = &g.field;
    let q = g.q();
    ensure(g.tset.binary_search(t).is_ok(), "t is a line of T", || format!("{t}"))?;
    let u = g.tangency_point(t)?;
    let r = g.regulus_foot(&u)?;
    let rn = r.join(f, &g.frame.nucleus);
    if u_prime.dim() != 1
        || !g.frame.pi.contains(f, u_prime)
        || g.frame.ell.contains(f, u_prime)
        || rn.contains(f, u_prime)
    {
        return Err(Error::ExcludedPoint(u_prime.to_string()));
    }
    let gamma = t.join(f, u_prime);
    let planes = orbit(f, &gamma, &g.group);
    ensure(planes.len() == q * q * q - q, "good plane-orbit has q^3 - q planes", || {
        format!("got {}", planes.len())
    })?;
    if let Some((a, b)) = first_pair(&planes, |a, b| a.meet_dim(f, b) == 1) {
        return Err(invariant("good planes pairwise meet in a point", format!("{a} and {b}")));
    }
    Ok(planes)
}

/// Good line-orbits represented inside a good plane.
#[derive(Clone, Debug)]
pub struct Coverage {
    /// Indices into `EvenGeometry::good_orbits`, ascending.
    pub orbits: Vec<usize>,
    /// The covered lines of the plane.
    pub lines: Vec<Subspace>,
    /// Common point of the covered lines (nucleus of the induced conics).
    pub nucleus: Subspace,
}

pub fn pencil_coverage(g: &EvenGeometry, gamma: &Subspace) -> Result<Coverage> {
    let f = &g.field;
    let q = g.q();
    let mut lines = Vec::new();
    let mut orbits = Vec::new();
    for l in gamma.subspaces(f, 2) {
        if let Some(i) = g.good_orbit_of(&l) {
            lines.push(l);
            orbits.push(i);
        }
    }
    orbits.sort_unstable();
    let distinct = orbits.windows(2).all(|w| w[0] != w[1]);
    ensure(orbits.len() == q - 1 && distinct, "plane covers q-1 distinct good orbits", || {
        format!("{gamma}: {orbits:?}")
    })?;
    let t = gamma
        .meet(f, &g.frame.sigma)
        .filter(|t| t.dim() == 2)
        .ok_or_else(|| invariant("good plane meets Sigma in a line", format!("{gamma}")))?;
    let u = g.tangency_point(&t)?;
    let u_prime = gamma
        .meet(f, &g.frame.pi)
        .filter(|x| x.dim() == 1)
        .ok_or_else(|| invariant("good plane meets pi in a point", format!("{gamma}")))?;
    let nucleus = lines[0]
        .meet(f, &t)
        .ok_or_else(|| invariant("covered line meets t", format!("{}", lines[0])))?;
    ensure(nucleus != u, "nucleus differs from U", || format!("{nucleus}"))?;
    for l in &lines {
        ensure(l.contains(f, &nucleus), "covered lines are concurrent", || format!("{l}"))?;
        ensure(
            !l.contains(f, &u) && !l.contains(f, &u_prime),
            "covered lines avoid U and U'",
            || format!("{l}"),
        )?;
    }
    Ok(Coverage {
        orbits,
        lines,
        nucleus,
    })
}

#[derive(Clone, Debug)]
pub struct EvenScaffold {
    pub geometry: EvenGeometry,
    /// `R` for the tangency point of `t`.
    pub r_point: Subspace,
    /// Lex-least point of `pi \ (ell ∪ RN)`.
    pub u_prime: Subspace,
    pub gamma: Subspace,
    pub p1: Vec<Subspace>,
    pub coverage: Coverage,
    /// Index of `L1` in `geometry.good_orbits`.
    pub l1_index: usize,
    /// `<m, N>` for `m` in `R1`; contains `pi`.
    pub p2: Vec<Subspace>,
    /// `<m, N>` for `m` in `R2`.
    pub p3: Vec<Subspace>,
    /// `<ell, (1,0,0,1,0)>`.
    pub pi_prime: Subspace,
    /// `<pi, pi'> = {X5 = 0}`.
    pub s1: Subspace,
    /// `{X4 = 0}`.
    pub s2: Subspace,
    /// The line of `R2` inside `s2`.
    pub r2_line: Subspace,
    /// Lex-least line of `pi` other than `ell` avoiding `N`.
    pub r_line: Subspace,
    /// `ell ∩ r_line`.
    pub v_point: Subspace,
    /// Lex-least plane of `P3` not through `V`.
    pub tau: Subspace,
    /// `tau ∩ ell`.
    pub v_prime: Subspace,
}

impl EvenScaffold {
    pub fn l1(&self) -> &LineOrbit {
        &self.geometry.good_orbits[self.l1_index]
    }
}

pub fn build_scaffold_even(f: &Field) -> Result<EvenScaffold> {
    let geometry = build_even_geometry(f)?;
    let g = &geometry;
    let frame = &g.frame;

    let r_point = g.regulus_foot(&g.tangent_point)?;
    let rn = r_point.join(f, &frame.nucleus);
    let u_prime = *frame
        .pi
        .points(f)
        .iter()
        .find(|p| !frame.ell.contains(f, p) && !rn.contains(f, p))
        .ok_or_else(|| invariant("an admissible U' exists", String::new()))?;
    let gamma = g.t.join(f, &u_prime);
    let p1 = good_plane_orbit(g, &g.t, &u_prime)?;
    let coverage = pencil_coverage(g, &gamma)?;
    let l1_index = (0..g.good_orbits.len())
        .find(|i| !coverage.orbits.contains(i))
        .ok_or_else(|| invariant("an uncovered good line-orbit exists", String::new()))?;

    let cone_over = |lines: &[Subspace]| -> Vec<Subspace> {
        let mut v: Vec<Subspace> = lines.iter().map(|m| m.join(f, &frame.nucleus)).collect();
        v.sort_unstable();
        v
    };
    let p2 = cone_over(&g.r1);
    let p3 = cone_over(&g.r2);
    ensure(p2.binary_search(&frame.pi).is_ok(), "pi belongs to P2", String::new)?;

    let l1 = &g.good_orbits[l1_index].members;
    let mut lines: Vec<Subspace> = l1.clone();
    lines.extend_from_slice(&g.r2);
    ensure(is_partial_spread(f, &lines), "L1 ∪ R2 are pairwise disjoint", String::new)?;

    let pi_prime = Subspace::span(f, &[[0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [1, 0, 0, 1, 0]])?;
    ensure(
        pi_prime.contains(f, &frame.ell) && !frame.sigma.contains(f, &pi_prime),
        "pi' contains ell and is not in Sigma",
        || format!("{pi_prime}"),
    )?;
    let s1 = frame.pi.join(f, &pi_prime);
    let s2 = Subspace::from_equations(f, &[[0, 0, 0, 1, 0]])?;
    ensure(
        s2.dim() == 4 && s2.contains(f, &frame.pi) && s2 != s1,
        "S2 is a solid through pi other than S1",
        || format!("{s2}"),
    )?;
    let in_s2: Vec<&Subspace> = g.r2.iter().filter(|m| s2.contains(f, m)).collect();
    let r2_line = match in_s2.as_slice() {
        [m] => **m,
        _ => return Err(invariant("S2 contains one line of R2", format!("{}", in_s2.len()))),
    };

    let r_line = *frame
        .pi
        .subspaces(f, 2)
        .iter()
        .find(|l| **l != frame.ell && !l.contains(f, &frame.nucleus))
        .expect("pi has lines avoiding N");
    let v_point = r_line.meet(f, &frame.ell).expect("lines of a plane meet");
    let tau = *p3
        .iter()
        .find(|p| !p.contains(f, &v_point))
        .ok_or_else(|| invariant("a plane of P3 avoids V", String::new()))?;
    let v_prime = tau
        .meet(f, &frame.ell)
        .filter(|x| x.dim() == 1)
        .ok_or_else(|| invariant("tau meets ell in a point", format!("{tau}")))?;

    Ok(EvenScaffold {
        r_point,
        u_prime,
        gamma,
        p1,
        coverage,
        l1_index,
        p2,
        p3,
        pi_prime,
        s1,
        s2,
        r2_line,
        r_line,
        v_point,
        tau,
        v_prime,
        geometry,
    })
}

/// Assembles one of the even-q codes:
///
/// | type | codewords |
/// |------|-----------|
/// | IV   | `P1 ∪ P2 ∪ L1 ∪ R2` |
/// | IV'  | `P1 ∪ (P2 \ {pi}) ∪ {pi'} ∪ L1 ∪ R2` |
/// | IV'' | `P1 ∪ P3 ∪ L1 ∪ R1` |
/// | II   | `P1 ∪ (P2 \ {pi}) ∪ {pi'} ∪ L1 ∪ (R2 \ {r2}) ∪ {S2}` |
/// | III  | `P1 ∪ (P2 \ {pi}) ∪ L1 ∪ (R2 \ {r2}) ∪ {S2, r2 ∩ ell}` |
/// | I    | `P1 ∪ (P3 \ {tau}) ∪ L1 ∪ (R1 \ {ell}) ∪ {r, V'}` |
pub fn assemble_code_even(s: &EvenScaffold, code_type: CodeType) -> Result<SubspaceCode> {
    let g = &s.geometry;
    let f = &g.field;
    let pi = g.frame.pi;
    let without = |set: &[Subspace], x: &Subspace| -> Vec<Subspace> {
        set.iter().filter(|y| *y != x).copied().collect()
    };
    let mut words: Vec<Subspace> = s.p1.clone();
    words.extend_from_slice(&s.l1().members);
    let r2_foot = s
        .r2_line
        .meet(f, &g.frame.ell)
        .ok_or_else(|| invariant("r2 meets ell", String::new()))?;
    let mut params: Vec<(&str, Parameter)> = vec![
        ("alpha_f", Parameter::Elements(vec![g.alpha_f])),
        ("t", Parameter::Subspace(g.t)),
        ("u_prime", Parameter::Subspace(s.u_prime)),
        ("gamma", Parameter::Subspace(s.gamma)),
        ("l1_id", Parameter::Subspace(s.l1().id)),
    ];
    match code_type {
        CodeType::IV => {
            words.extend(&s.p2);
            words.extend(&g.r2);
        }
        CodeType::IVPrime => {
            words.extend(without(&s.p2, &pi));
            words.push(s.pi_prime);
            words.extend(&g.r2);
            params.push(("pi_prime", Parameter::Subspace(s.pi_prime)));
        }
        CodeType::IVDoublePrime => {
            words.extend(&s.p3);
            words.extend(&g.r1);
        }
        CodeType::II => {
            words.extend(without(&s.p2, &pi));
            words.push(s.pi_prime);
            words.extend(without(&g.r2, &s.r2_line));
            words.push(s.s2);
            params.push(("pi_prime", Parameter::Subspace(s.pi_prime)));
            params.push(("s2", Parameter::Subspace(s.s2)));
            params.push(("r2", Parameter::Subspace(s.r2_line)));
        }
        CodeType::III => {
            words.extend(without(&s.p2, &pi));
            words.extend(without(&g.r2, &s.r2_line));
            words.push(s.s2);
            words.push(r2_foot);
            params.push(("s2", Parameter::Subspace(s.s2)));
            params.push(("r2", Parameter::Subspace(s.r2_line)));
        }
        CodeType::I => {
            words.extend(without(&s.p3, &s.tau));
            words.extend(without(&g.r1, &g.frame.ell));
            words.push(s.r_line);
            words.push(s.v_prime);
            params.push(("r_line", Parameter::Subspace(s.r_line)));
            params.push(("tau", Parameter::Subspace(s.tau)));
            params.push(("v_prime", Parameter::Subspace(s.v_prime)));
        }
    }
    let q = g.q();
    let expected = 2 * (q * q * q + 1);
    ensure(words.len() == expected, "code size 2(q^3+1)", || format!("got {}", words.len()))?;
    let mut code = SubspaceCode::new(f.clone(), Some(code_type), words)?;
    debug_assert_eq!(code.parity, Parity::Even);
    for (name, p) in params {
        code = code.with_parameter(name, p);
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeo::subspace_distance;

    fn scaffold(q: u32) -> EvenScaffold {
        let (p, h) = crate::galois::prime_power(q as u64).unwrap();
        build_scaffold_even(&Field::new(p, h).unwrap()).unwrap()
    }

    #[test]
    fn geometry_counts_q2() {
        let s = scaffold(2);
        let g = &s.geometry;
        assert_eq!(g.hyperbolic.len(), 9);
        assert_eq!(g.w_lines.len(), 15);
        assert_eq!(g.tset.len(), 6);
        assert_eq!(g.good_line_reps.len(), 2);
        assert_eq!(g.good_orbits.len(), 2);
        assert!(g.r1.contains(&g.frame.ell));
        // H plus the affine zeros of the form: (q+1)^2 + q^3 + q^2 - q
        assert_eq!(g.cone.len(), 19);
    }

    #[test]
    fn regulus_q2() {
        let s = scaffold(2);
        let g = &s.geometry;
        let reg = g.regulus_check(&g.t).unwrap();
        assert_eq!(reg.len(), 3);
        assert!(reg.contains(&g.frame.ell));
        let nope = g.frame.ell;
        assert!(g.regulus_check(&nope).is_err());
    }

    #[test]
    fn good_plane_orbit_q2() {
        let s = scaffold(2);
        let g = &s.geometry;
        let f = &g.field;
        assert_eq!(s.p1.len(), 6);
        for p in &s.p1 {
            let t = p.meet(f, &g.frame.sigma).unwrap();
            assert!(g.tset.binary_search(&t).is_ok());
        }
        // excluded choices of U'
        let on_ell = g.frame.ell.points(f)[0];
        assert!(matches!(good_plane_orbit(g, &g.t, &on_ell), Err(Error::ExcludedPoint(_))));
        assert!(matches!(
            good_plane_orbit(g, &g.t, &g.frame.nucleus),
            Err(Error::ExcludedPoint(_))
        ));
    }

    #[test]
    fn coverage_q2_and_q4() {
        for q in [2, 4] {
            let s = scaffold(q);
            assert_eq!(s.coverage.orbits.len(), q as usize - 1);
            assert!(!s.coverage.orbits.contains(&s.l1_index));
        }
    }

    #[test]
    fn codes_q2() {
        let s = scaffold(2);
        let f = &s.geometry.field;
        for t in CodeType::EVEN {
            let code = assemble_code_even(&s, t).unwrap();
            assert_eq!(code.len(), 18, "{t}");
            assert_eq!(code.histogram(), t.composition().histogram(2), "{t}");
            let w = code.codewords();
            let mut min = usize::MAX;
            for (i, a) in w.iter().enumerate() {
                for b in &w[i + 1..] {
                    min = min.min(subspace_distance(f, a, b));
                }
            }
            assert_eq!(min, 3, "{t}");
        }
        assert_eq!(assemble_code_even(&s, CodeType::III).unwrap().histogram(), [1, 8, 8, 1]);
        assert_eq!(assemble_code_even(&s, CodeType::IV).unwrap().histogram(), [0, 9, 9, 0]);
    }

    #[test]
    fn odd_field_is_rejected() {
        let f = Field::new(3, 1).unwrap();
        assert!(matches!(build_even_geometry(&f), Err(Error::Characteristic { .. })));
    }

    #[test]
    fn pencil_classes_of_named_points() {
        let f = Field::new(2, 2).unwrap();
        let p = |v| Subspace::point(&f, v).unwrap();
        assert_eq!(pencil_class(&f, &p([1, 0, 0, 0, 0])), PencilClass::Base);
        assert_eq!(pencil_class(&f, &p([0, 0, 0, 1, 0])), PencilClass::Base);
        assert_eq!(pencil_class(&f, &p([0, 1, 0, 0, 1])), PencilClass::Sigma);
        assert_eq!(pencil_class(&f, &p([1, 0, 0, 1, 0])), PencilClass::Cone);
        assert_eq!(pencil_class(&f, &p([1, 1, 0, 0, 1])), PencilClass::Parabolic(1));
    }
}
