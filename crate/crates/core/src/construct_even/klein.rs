//! Cross-check of the good plane-orbit through the polarity of the Klein
//! quadric `K: X1 X6 + X2 X5 + X3 X4 = 0` of PG(5,q).
//!
//! `S = PG(4,q)` is the hyperplane `X6 = 0` and `S' = {X1 = 0}`; `N = e1`,
//! `N' = e6`. The extended group acts as `M` on the first five coordinates
//! and fixes `X6`, so `(v1, .., v5) -> (0, v2, .., v5, v1)` carries the
//! action on `S` to the action on `S'`.

use std::collections::HashSet;

use crate::error::{invariant, Result};
use crate::galois::Field;
use crate::projgeo::{apply, enumerate_subspaces, Matrix, Row, Subspace, DIM};
use crate::verify::Check;

use super::{good_plane_orbit, EvenScaffold};

const KD: usize = 6;

#[derive(Clone, Debug)]
pub struct KleinReport {
    pub checks: Vec<Check>,
    /// `{x^perp : x in sigma^G}`, read back in `S`, sorted.
    pub planes: Vec<Subspace>,
}

impl KleinReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn klein_form(f: &Field, x: &Row<KD>) -> u8 {
    let mut acc = 0;
    for i in 0..3 {
        acc = f.add(acc, f.mul(x[i], x[KD - 1 - i]));
    }
    acc
}

/// `W^perp` for `B(x, y) = sum x_i y_{7-i}`.
pub fn perp(f: &Field, w: &Subspace<KD>) -> Result<Subspace<KD>> {
    let eqs: Vec<Row<KD>> = w
        .basis()
        .iter()
        .map(|r| {
            let mut rev = *r;
            rev.reverse();
            rev
        })
        .collect();
    Subspace::from_equations(f, &eqs)
}

fn to_primed(f: &Field, u: &Subspace) -> Result<Subspace<KD>> {
    let rows: Vec<Row<KD>> = u
        .basis()
        .iter()
        .map(|r| [0, r[1], r[2], r[3], r[4], r[0]])
        .collect();
    Subspace::span(f, &rows)
}

/// Reads a subspace of `X6 = 0` back in `S`.
fn drop_last(f: &Field, u: &Subspace<KD>) -> Result<Subspace> {
    if u.basis().iter().any(|r| r[KD - 1] != 0) {
        return Err(invariant("subspace lies in X6 = 0", format!("{u}")));
    }
    let rows: Vec<Row<DIM>> = u.basis().iter().map(|r| [r[0], r[1], r[2], r[3], r[4]]).collect();
    Subspace::span(f, &rows)
}

fn extend(m: &Matrix<DIM>) -> Matrix<KD> {
    let mut out = [[0; KD]; KD];
    for (dst, src) in out.iter_mut().zip(&m.0) {
        dst[..DIM].copy_from_slice(src);
    }
    out[KD - 1][KD - 1] = 1;
    Matrix(out)
}

pub fn klein_cross_check(s: &EvenScaffold) -> Result<KleinReport> {
    let g = &s.geometry;
    let f = &g.field;
    let q = g.q();
    let mut checks = Vec::new();

    let points6 = enumerate_subspaces::<KD>(f, 1)?;
    let on_k: Vec<Subspace<KD>> = points6
        .iter()
        .filter(|p| klein_form(f, &p.vector()) == 0)
        .copied()
        .collect();
    let k_set: HashSet<Subspace<KD>> = on_k.iter().copied().collect();
    checks.push(Check::new(
        "|K| = (q^2+1)(q^2+q+1)",
        on_k.len() == (q * q + 1) * (q * q + q + 1),
        format!("{}", on_k.len()),
    ));

    let mut cone_in_s = Vec::new();
    for p in &on_k {
        if p.vector()[KD - 1] == 0 {
            cone_in_s.push(drop_last(f, p)?);
        }
    }
    cone_in_s.sort_unstable();
    checks.push(Check::new("K meets S in the cone C", cone_in_s == g.cone, ""));

    let bar: Vec<Matrix<KD>> = g.group.elements().iter().map(|e| extend(&e.matrix)).collect();
    let preserves = bar
        .iter()
        .all(|m| on_k.iter().all(|p| apply(f, m, p).is_ok_and(|x| k_set.contains(&x))));
    checks.push(Check::new("extended group stabilizes K", preserves, ""));

    // Lex-least good line of S'.
    let mut primed = Vec::new();
    for o in &g.good_orbits {
        for l in &o.members {
            primed.push(to_primed(f, l)?);
        }
    }
    let r = *primed
        .iter()
        .min()
        .ok_or_else(|| invariant("good lines exist", String::new()))?;
    let n = Subspace::<KD>::point(f, [1, 0, 0, 0, 0, 0])?;
    let sigma = n.join(f, &r);

    let conic: Vec<Subspace<KD>> = sigma
        .points(f)
        .into_iter()
        .filter(|p| k_set.contains(p))
        .collect();
    let no_three_collinear = sigma
        .subspaces(f, 2)
        .iter()
        .all(|l| conic.iter().filter(|p| l.contains(f, p)).count() <= 2);
    checks.push(Check::new(
        "sigma meets K in a conic",
        conic.len() == q + 1 && no_three_collinear,
        format!("{} points", conic.len()),
    ));

    let mut orbit6: Vec<Subspace<KD>> = bar.iter().map(|m| apply(f, m, &sigma)).collect::<Result<_>>()?;
    orbit6.sort_unstable();
    orbit6.dedup();
    let mut involution = true;
    let mut planes = Vec::with_capacity(orbit6.len());
    for x in &orbit6 {
        let xp = perp(f, x)?;
        involution &= xp.dim() == KD - x.dim() && perp(f, &xp)? == *x;
        planes.push(drop_last(f, &xp)?);
    }
    planes.sort_unstable();
    checks.push(Check::new("perp is an involution", involution, ""));
    checks.push(Check::new(
        "polar images are q^3 - q planes of S",
        planes.len() == q * q * q - q && planes.iter().all(|p| p.dim() == 3),
        format!("{}", planes.len()),
    ));
    let pairwise = planes
        .iter()
        .enumerate()
        .all(|(i, a)| planes[i + 1..].iter().all(|b| a.meet_dim(f, b) == 1));
    checks.push(Check::new("polar images pairwise meet in a point", pairwise, ""));

    let sp = drop_last(f, &perp(f, &sigma)?)?;
    let direct = match (sp.meet(f, &g.frame.sigma), sp.meet(f, &g.frame.pi)) {
        (Some(t), Some(u)) if t.dim() == 2 && u.dim() == 1 => good_plane_orbit(g, &t, &u),
        _ => Err(invariant("sigma^perp meets Sigma in a line and pi in a point", format!("{sp}"))),
    };
    checks.push(match direct {
        Ok(direct) => Check::new("polar images form a good plane-orbit", direct == planes, ""),
        Err(e) => Check::new("polar images form a good plane-orbit", false, e.to_string()),
    });
    let conic_sections = planes.iter().all(|p| {
        p.points(f).iter().filter(|x| g.cone.binary_search(x).is_ok()).count() == q + 1
    });
    checks.push(Check::new("each polar image meets C in q+1 points", conic_sections, ""));

    Ok(KleinReport { checks, planes })
}
