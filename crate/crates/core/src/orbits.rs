//! The two automorphism groups and their orbits on subspaces of PG(4,q).
//!
//! For odd q the group is `{ M(r,s,t) }`, a p-group of order q^3 (isomorphic
//! to the Heisenberg group, which is not checked here). For even q it is
//! `{ M(a,b,c,d) : a != 0, c^2 + cd + alpha d^2 = 1 }` of order q^3 - q.
//! Orbits are computed by applying every group element; an orbit is
//! identified by its lex-least member.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::code::Parity;
use crate::error::{ensure, Error, Result};
use crate::galois::{Elem, Field};
use crate::projgeo::{enumerate_subspaces, Matrix, Subspace, DIM};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Odd { r: Elem, s: Elem, t: Elem },
    Even { a: Elem, b: Elem, c: Elem, d: Elem },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub matrix: Matrix<DIM>,
    pub label: Label,
}

impl GroupElement {
    #[inline]
    pub fn apply(&self, f: &Field, u: &Subspace) -> Subspace {
        u.transform(f, &self.matrix)
    }
}

/// `M(r,s,t)` for the irreducible cubic `X^3 + aX^2 + bX + c`.
pub fn odd_matrix(f: &Field, cubic: (Elem, Elem, Elem), r: Elem, s: Elem, t: Elem) -> Matrix<DIM> {
    let (a, b, c) = cubic;
    let two = f.scalar(2);
    let m14 = f.add(f.sub(f.mul(r, r), f.mul(a, r)), s);
    let m24 = f.sub(f.mul(two, f.mul(r, s)), t);
    let m25 = f.sub(f.add(f.mul(s, s), f.mul(b, s)), f.mul(c, r));
    Matrix([
        [1, 0, r, m14, t],
        [0, 1, s, m24, m25],
        [0, 0, 1, f.mul(two, r), f.mul(two, s)],
        [0, 0, 0, 1, 0],
        [0, 0, 0, 0, 1],
    ])
}

/// `M(a,b,c,d)` for the irreducible quadratic `X^2 + X + alpha`.
pub fn even_matrix(f: &Field, alpha: Elem, a: Elem, b: Elem, c: Elem, d: Elem) -> Result<Matrix<DIM>> {
    let ai = f.inv(a)?;
    let cd = f.add(c, d);
    let ad = f.mul(alpha, d);
    Ok(Matrix([
        [1, 0, 0, 0, 0],
        [0, f.mul(a, c), f.mul(a, ad), f.mul(b, c), f.mul(b, ad)],
        [0, f.mul(a, d), f.mul(a, cd), f.mul(b, d), f.mul(b, cd)],
        [0, 0, 0, f.mul(ai, c), f.mul(ai, ad)],
        [0, 0, 0, f.mul(ai, d), f.mul(ai, cd)],
    ]))
}

/// Pairs `(c, d)` with `c^2 + cd + alpha d^2 = 1`, by exhaustive scan.
pub fn norm_one_pairs(f: &Field, alpha: Elem) -> Vec<(Elem, Elem)> {
    let mut out = Vec::new();
    for c in f.elements() {
        for d in f.elements() {
            let v = f.add(f.add(f.mul(c, c), f.mul(c, d)), f.mul(alpha, f.mul(d, d)));
            if v == 1 {
                out.push((c, d));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Group {
    pub parity: Parity,
    elements: Vec<GroupElement>,
}

impl Group {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn find(&self, label: Label) -> Option<&GroupElement> {
        self.elements.iter().find(|g| g.label == label)
    }

    /// Elements whose label satisfies `pred`, as a group of the same parity.
    pub fn subgroup(&self, pred: impl Fn(&Label) -> bool) -> Group {
        Group {
            parity: self.parity,
            elements: self.elements.iter().filter(|g| pred(&g.label)).cloned().collect(),
        }
    }

    /// Looks a matrix up among the elements.
    pub fn label_of(&self, m: &Matrix<DIM>) -> Option<Label> {
        self.elements.iter().find(|g| g.matrix == *m).map(|g| g.label)
    }

    /// Exhaustive closure check under products and inverses.
    pub fn verify_closure(&self, f: &Field) -> Result<()> {
        let set: HashSet<Matrix<DIM>> = self.elements.iter().map(|g| g.matrix).collect();
        ensure(set.len() == self.order(), "distinct group elements", || {
            format!("{} matrices for {} labels", set.len(), self.order())
        })?;
        for g in &self.elements {
            let inv = g.matrix.inverse(f)?;
            ensure(set.contains(&inv), "closed under inverses", || format!("{:?}", g.label))?;
            for h in &self.elements {
                let gh = g.matrix.mul(f, &h.matrix);
                ensure(set.contains(&gh), "closed under products", || {
                    format!("{:?} * {:?}", g.label, h.label)
                })?;
            }
        }
        Ok(())
    }
}

pub fn build_group_odd(f: &Field, cubic: (Elem, Elem, Elem)) -> Result<Group> {
    if f.is_even() {
        return Err(Error::Characteristic {
            needed: "odd",
            p: f.characteristic(),
        });
    }
    let (a, b, c) = cubic;
    ensure(!f.has_root(&[a, b, c]), "cubic is root-free", || format!("{cubic:?}"))?;
    let mut elements = Vec::with_capacity(f.order().pow(3));
    for r in f.elements() {
        for s in f.elements() {
            for t in f.elements() {
                elements.push(GroupElement {
                    matrix: odd_matrix(f, cubic, r, s, t),
                    label: Label::Odd { r, s, t },
                });
            }
        }
    }
    Ok(Group {
        parity: Parity::Odd,
        elements,
    })
}

pub fn build_group_even(f: &Field, alpha: Elem) -> Result<Group> {
    if !f.is_even() {
        return Err(Error::Characteristic {
            needed: "even",
            p: f.characteristic(),
        });
    }
    ensure(!f.has_root(&[1, alpha]), "X^2+X+alpha is irreducible", || format!("alpha={alpha}"))?;
    let pairs = norm_one_pairs(f, alpha);
    let mut elements = Vec::new();
    for a in f.nonzero() {
        for b in f.elements() {
            for &(c, d) in &pairs {
                elements.push(GroupElement {
                    matrix: even_matrix(f, alpha, a, b, c, d)?,
                    label: Label::Even { a, b, c, d },
                });
            }
        }
    }
    Ok(Group {
        parity: Parity::Even,
        elements,
    })
}

/// `{ g(u) : g in G }`, sorted; the first entry is the orbit id.
pub fn orbit(f: &Field, u: &Subspace, g: &Group) -> Vec<Subspace> {
    let mut out: Vec<Subspace> = g.elements.iter().map(|x| x.apply(f, u)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn orbit_id(f: &Field, u: &Subspace, g: &Group) -> Subspace {
    g.elements.iter().map(|x| x.apply(f, u)).min().expect("groups are nonempty")
}

pub fn stabilizer_order(f: &Field, u: &Subspace, g: &Group) -> usize {
    g.elements.iter().filter(|x| x.apply(f, u) == *u).count()
}

/// All orbits of a group on the `k`-subspaces, keyed by orbit id.
#[derive(Clone, Debug)]
pub struct OrbitTable {
    pub k: usize,
    pub orbits: BTreeMap<Subspace, Vec<Subspace>>,
}

impl OrbitTable {
    pub fn build(f: &Field, g: &Group, k: usize) -> Result<Self> {
        let all = enumerate_subspaces::<DIM>(f, k)?;
        let mut seen: HashSet<Subspace> = HashSet::with_capacity(all.len());
        let mut orbits = BTreeMap::new();
        // Visiting in canonical order makes the first unseen member the id.
        for u in &all {
            if seen.contains(u) {
                continue;
            }
            let members = orbit(f, u, g);
            debug_assert_eq!(members[0], *u);
            seen.extend(members.iter().copied());
            orbits.insert(*u, members);
        }
        Ok(OrbitTable { k, orbits })
    }

    pub fn census(&self) -> Vec<(Subspace, usize)> {
        self.orbits.iter().map(|(id, m)| (*id, m.len())).collect()
    }

    /// Orbit id for every subspace.
    pub fn index(&self) -> HashMap<Subspace, Subspace> {
        let mut out = HashMap::new();
        for (id, members) in &self.orbits {
            for m in members {
                out.insert(*m, *id);
            }
        }
        out
    }

    /// Multiset of orbit sizes as `size -> count`.
    pub fn size_profile(&self) -> BTreeMap<usize, usize> {
        size_profile(self.orbits.values().map(Vec::len))
    }
}

pub fn size_profile(sizes: impl IntoIterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for s in sizes {
        *out.entry(s).or_insert(0) += 1;
    }
    out
}

/// Complete partition of the `k`-subspaces into orbits, as (id, size).
pub fn orbit_census(f: &Field, g: &Group, k: usize) -> Result<Vec<(Subspace, usize)>> {
    Ok(OrbitTable::build(f, g, k)?.census())
}

/// Whether the lines are pairwise disjoint, decided by counting covered
/// points.
pub fn is_partial_spread(f: &Field, lines: &[Subspace]) -> bool {
    let mut covered = HashSet::new();
    let mut total = 0;
    for l in lines {
        for p in l.points(f) {
            covered.insert(p);
            total += 1;
        }
    }
    covered.len() == total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{find_irreducible_cubic, find_quadratic_alpha, prime_power};
    use crate::projgeo::{coordinate_span, EvenFrame, OddFrame};

    fn field(q: u64) -> Field {
        let (p, h) = prime_power(q).unwrap();
        Field::new(p, h).unwrap()
    }

    fn odd_group(q: u64) -> (Field, Group) {
        let f = field(q);
        let g = build_group_odd(&f, find_irreducible_cubic(&f)).unwrap();
        (f, g)
    }

    fn even_group(q: u64) -> (Field, Group) {
        let f = field(q);
        let g = build_group_even(&f, find_quadratic_alpha(&f)).unwrap();
        (f, g)
    }

    #[test]
    fn odd_group_order_and_element_orders() {
        let (f, g) = odd_group(3);
        assert_eq!(g.order(), 27);
        let id = Matrix::identity();
        assert_eq!(g.find(Label::Odd { r: 0, s: 0, t: 0 }).unwrap().matrix, id);
        for x in g.elements() {
            let ord = (1..=27).find(|&n| x.matrix.pow(&f, n) == id).unwrap();
            assert!(ord == 1 || ord == 3, "{:?} has order {ord}", x.label);
        }
        g.verify_closure(&f).unwrap();
        let (f5, g5) = odd_group(5);
        assert_eq!(g5.order(), 125);
        g5.verify_closure(&f5).unwrap();
    }

    #[test]
    fn odd_product_law() {
        for q in [3, 5] {
            let (f, g) = odd_group(q);
            let cubic = find_irreducible_cubic(&f);
            let two = f.scalar(2);
            for x in g.elements() {
                let Label::Odd { r, s, t } = x.label else { unreachable!() };
                for y in g.elements() {
                    let Label::Odd { r: r2, s: s2, t: t2 } = y.label else { unreachable!() };
                    let lhs = x.matrix.mul(&f, &y.matrix.inverse(&f).unwrap());
                    let dr = f.sub(r, r2);
                    let rhs = odd_matrix(
                        &f,
                        cubic,
                        dr,
                        f.sub(s, s2),
                        f.sub(f.sub(t, t2), f.mul(two, f.mul(s2, dr))),
                    );
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn odd_power_law() {
        let (f, g) = odd_group(3);
        let cubic = find_irreducible_cubic(&f);
        let m = g.find(Label::Odd { r: 1, s: 1, t: 0 }).unwrap().matrix;
        assert_eq!(m.mul(&f, &m), odd_matrix(&f, cubic, 2, 2, 2));
        for x in g.elements() {
            let Label::Odd { r, s, t } = x.label else { unreachable!() };
            for n in 0..6i64 {
                let nn = f.scalar(n);
                let nt = f.add(f.mul(nn, t), f.mul(f.scalar(n * (n - 1)), f.mul(r, s)));
                assert_eq!(
                    x.matrix.pow(&f, n as u64),
                    odd_matrix(&f, cubic, f.mul(nn, r), f.mul(nn, s), nt)
                );
            }
        }
    }

    #[test]
    fn wrong_characteristic_is_rejected() {
        let f = field(4);
        assert!(matches!(build_group_odd(&f, (0, 0, 1)), Err(Error::Characteristic { .. })));
        let f = field(3);
        assert!(matches!(build_group_even(&f, 2), Err(Error::Characteristic { .. })));
    }

    #[test]
    fn even_group_structure() {
        let f = field(2);
        assert_eq!(norm_one_pairs(&f, 1).len(), 3);
        for q in [2, 4, 8] {
            let (f, g) = even_group(q);
            let q = q as usize;
            assert_eq!(g.order(), q * q * q - q);
            assert_eq!(
                g.find(Label::Even { a: 1, b: 0, c: 1, d: 0 }).unwrap().matrix,
                Matrix::identity()
            );
            let g1 = g.subgroup(|l| matches!(l, Label::Even { a: 1, b: 0, .. }));
            let g2 = g.subgroup(|l| matches!(l, Label::Even { a: 1, c: 1, d: 0, .. }));
            let g3 = g.subgroup(|l| matches!(l, Label::Even { b: 0, c: 1, d: 0, .. }));
            assert_eq!((g1.order(), g2.order(), g3.order()), (q + 1, q, q - 1));
            if q <= 4 {
                g.verify_closure(&f).unwrap();
            }
            for sub in [&g1, &g2, &g3] {
                sub.verify_closure(&f).unwrap();
            }
            // G1 and G3 cyclic, G2 elementary abelian
            let id = Matrix::identity();
            let order_of = |m: &Matrix<5>| (1..=q * q * q).find(|&n| m.pow(&f, n as u64) == id).unwrap();
            assert!(g1.elements().iter().any(|x| order_of(&x.matrix) == q + 1));
            assert!(g3.elements().iter().any(|x| order_of(&x.matrix) == q - 1));
            assert!(g2.elements().iter().all(|x| order_of(&x.matrix) <= 2));
        }
    }

    #[test]
    fn orbit_examples_odd() {
        let (f, g) = odd_group(3);
        let frame = OddFrame::new(&f);
        assert_eq!(orbit(&f, &frame.ell, &g), vec![frame.ell]);
        // a point of Π_i \ π
        let p = Subspace::point(&f, [0, 0, 0, 1, 1]).unwrap();
        assert_eq!(orbit(&f, &p, &g).len(), 27);
        assert_eq!(stabilizer_order(&f, &p, &g), 1);
    }

    #[test]
    fn orbit_example_even() {
        let (f, g) = even_group(2);
        let frame = EvenFrame::new(&f);
        assert_eq!(orbit(&f, &frame.nucleus, &g), vec![frame.nucleus]);
    }

    #[test]
    fn odd_point_census_q3() {
        let (f, g) = odd_group(3);
        let table = OrbitTable::build(&f, &g, 1).unwrap();
        let profile: Vec<_> = table.size_profile().into_iter().collect();
        assert_eq!(profile, vec![(1, 4), (9, 1), (27, 4)]);
        assert_eq!(table.census().iter().map(|c| c.1).sum::<usize>(), 121);
    }

    #[test]
    fn even_point_census_q2() {
        let (f, g) = even_group(2);
        let mut sizes: Vec<usize> = orbit_census(&f, &g, 1).unwrap().iter().map(|c| c.1).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 3, 6, 6, 6, 6]);
    }

    #[test]
    fn odd_line_census_q3() {
        let (f, g) = odd_group(3);
        let frame = OddFrame::new(&f);
        let table = OrbitTable::build(&f, &g, 2).unwrap();
        let disjoint_27: Vec<_> = table
            .orbits
            .iter()
            .filter(|(id, m)| m.len() == 27 && id.is_disjoint(&f, &frame.pi))
            .collect();
        assert_eq!(disjoint_27.len(), 27);
        for (_, members) in disjoint_27 {
            assert!(is_partial_spread(&f, members));
        }
    }

    #[test]
    fn orbit_stabilizer_and_divisibility() {
        let (f, g) = odd_group(3);
        let (fe, ge) = even_group(4);
        for (f, g) in [(&f, &g), (&fe, &ge)] {
            for k in [2, 3] {
                for u in enumerate_subspaces::<DIM>(f, k).unwrap().iter().step_by(53) {
                    let size = orbit(f, u, g).len();
                    assert_eq!(g.order() % size, 0);
                    assert_eq!(size * stabilizer_order(f, u, g), g.order());
                }
            }
        }
    }

    #[test]
    fn orbits_partition_subspaces() {
        let (f, g) = even_group(2);
        let table = OrbitTable::build(&f, &g, 3).unwrap();
        let total: usize = table.orbits.values().map(Vec::len).sum();
        assert_eq!(total, 155);
        let idx = table.index();
        assert_eq!(idx.len(), 155);
        for (id, members) in &table.orbits {
            assert_eq!(orbit_id(&f, &members[members.len() - 1], &g), *id);
        }
    }

    #[test]
    fn partial_spread_detection() {
        let f = field(2);
        let a = coordinate_span::<5>(&f, &[0, 1]);
        let b = coordinate_span::<5>(&f, &[2, 3]);
        let c = coordinate_span::<5>(&f, &[1, 4]);
        assert!(is_partial_spread(&f, &[a, b]));
        assert!(!is_partial_spread(&f, &[a, b, c]));
    }
}
