//! Subspaces of PG(N-1, q) as canonical row-reduced matrices.
//!
//! Homogeneous coordinates `X_1..X_N` are stored 0-indexed: `X_i` lives in
//! column `i - 1`. Every subspace is kept as its unique reduced row echelon
//! basis, so equality of subspaces is equality of matrices and the derived
//! ordering (vector dimension first, then the basis read row-major) is the
//! global tie-break for every "choose the first" step in the constructions.

use std::fmt;

use crate::error::{Error, Result};
use crate::galois::{Elem, Field};

/// Ambient vector dimension of PG(4, q).
pub const DIM: usize = 5;

pub type Row<const N: usize> = [Elem; N];

/// Cap on the number of subspaces a single enumeration may produce.
pub const ENUMERATION_LIMIT: u128 = 2_000_000;

/// Row-reduces `rows` in place and returns the rank. The first `rank` rows
/// hold the reduced echelon basis, the rest are zero.
pub fn rref<const N: usize>(f: &Field, rows: &mut [Row<N>]) -> usize {
    let mut rank = 0;
    for col in 0..N {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let s = f.inv_nonzero(rows[rank][col]);
        if s != 1 {
            for x in &mut rows[rank][col..] {
                *x = f.mul(*x, s);
            }
        }
        let prow = rows[rank];
        for (i, row) in rows.iter_mut().enumerate() {
            let c = row[col];
            if i != rank && c != 0 {
                for j in col..N {
                    row[j] = f.sub(row[j], f.mul(c, prow[j]));
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank<const N: usize>(f: &Field, rows: &[Row<N>]) -> usize {
    let mut buf = rows.to_vec();
    rref(f, &mut buf)
}

/// Basis of the vectors `x` with `<row, x> = 0` for every given row, under
/// the standard dot product.
pub fn annihilator<const N: usize>(f: &Field, rows: &[Row<N>]) -> Vec<Row<N>> {
    let mut buf = rows.to_vec();
    let r = rref(f, &mut buf);
    let mut pivots = Vec::with_capacity(r);
    for row in &buf[..r] {
        pivots.push(row.iter().position(|&x| x != 0).unwrap());
    }
    let mut out = Vec::with_capacity(N - r);
    for free in (0..N).filter(|c| !pivots.contains(c)) {
        let mut v = [0; N];
        v[free] = 1;
        for (row, &pc) in buf[..r].iter().zip(&pivots) {
            v[pc] = f.neg(row[free]);
        }
        out.push(v);
    }
    out
}

pub fn dot<const N: usize>(f: &Field, a: &Row<N>, b: &Row<N>) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// A nonzero subspace of GF(q)^N in canonical (RREF) form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace<const N: usize = DIM> {
    k: u8,
    rows: [Row<N>; N],
}

impl<const N: usize> fmt::Debug for Subspace<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, row) in self.basis().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, ">")
    }
}

/// Serialized as the list of canonical basis rows.
impl<const N: usize> serde::Serialize for Subspace<N> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.basis().iter().map(|r| r.as_slice()))
    }
}

impl<const N: usize> fmt::Display for Subspace<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<const N: usize> Subspace<N> {
    /// Canonical form of the row space of `rows`.
    pub fn span(f: &Field, rows: &[Row<N>]) -> Result<Self> {
        let mut buf = rows.to_vec();
        let k = rref(f, &mut buf);
        if k == 0 {
            return Err(Error::ZeroSpan);
        }
        let mut out = [[0; N]; N];
        out[..k].copy_from_slice(&buf[..k]);
        Ok(Subspace { k: k as u8, rows: out })
    }

    pub fn point(f: &Field, v: Row<N>) -> Result<Self> {
        Self::span(f, &[v])
    }

    /// Subspace cut out by linear equations (each row is a coefficient vector).
    pub fn from_equations(f: &Field, eqs: &[Row<N>]) -> Result<Self> {
        Self::span(f, &annihilator(f, eqs))
    }

    pub fn whole() -> Self {
        let mut rows = [[0; N]; N];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        Subspace { k: N as u8, rows }
    }

    /// Wraps rows already known to be a reduced echelon basis.
    pub(crate) fn from_rref_unchecked(basis: &[Row<N>]) -> Self {
        let mut rows = [[0; N]; N];
        rows[..basis.len()].copy_from_slice(basis);
        Subspace {
            k: basis.len() as u8,
            rows,
        }
    }

    /// Vector dimension.
    pub fn dim(&self) -> usize {
        self.k as usize
    }

    /// Projective dimension (`dim() - 1`).
    pub fn proj_dim(&self) -> usize {
        self.dim() - 1
    }

    pub fn basis(&self) -> &[Row<N>] {
        &self.rows[..self.dim()]
    }

    /// The spanning vector of a point (first nonzero coordinate is 1).
    pub fn vector(&self) -> Row<N> {
        self.rows[0]
    }

    pub fn is_canonical(&self, f: &Field) -> bool {
        Subspace::span(f, self.basis()).is_ok_and(|s| s == *self)
    }

    /// Equations (annihilator basis) of this subspace.
    pub fn equations(&self, f: &Field) -> Vec<Row<N>> {
        annihilator(f, self.basis())
    }

    pub fn sum_dim(&self, f: &Field, other: &Self) -> usize {
        let mut buf: Vec<Row<N>> = Vec::with_capacity(self.dim() + other.dim());
        buf.extend_from_slice(self.basis());
        buf.extend_from_slice(other.basis());
        rref(f, &mut buf)
    }

    /// Vector dimension of the intersection, via the dimension formula.
    pub fn meet_dim(&self, f: &Field, other: &Self) -> usize {
        self.dim() + other.dim() - self.sum_dim(f, other)
    }

    pub fn join(&self, f: &Field, other: &Self) -> Self {
        let mut buf: Vec<Row<N>> = Vec::with_capacity(self.dim() + other.dim());
        buf.extend_from_slice(self.basis());
        buf.extend_from_slice(other.basis());
        Subspace::span(f, &buf).expect("join of nonzero subspaces is nonzero")
    }

    /// Intersection computed from equations: `U ∩ V = (U⊥ + V⊥)⊥`.
    pub fn meet(&self, f: &Field, other: &Self) -> Option<Self> {
        let mut eqs = annihilator(f, self.basis());
        eqs.extend(annihilator(f, other.basis()));
        Subspace::span(f, &annihilator(f, &eqs)).ok()
    }

    pub fn contains(&self, f: &Field, other: &Self) -> bool {
        other.dim() <= self.dim() && self.sum_dim(f, other) == self.dim()
    }

    pub fn contains_vector(&self, f: &Field, v: &Row<N>) -> bool {
        let eqs = annihilator(f, self.basis());
        eqs.iter().all(|e| dot(f, e, v) == 0)
    }

    pub fn is_disjoint(&self, f: &Field, other: &Self) -> bool {
        self.sum_dim(f, other) == self.dim() + other.dim()
    }

    /// All points of this subspace, in canonical order.
    pub fn points(&self, f: &Field) -> Vec<Subspace<N>> {
        self.subspaces(f, 1)
    }

    /// All `j`-dimensional subspaces contained in this one, sorted.
    pub fn subspaces(&self, f: &Field, j: usize) -> Vec<Subspace<N>> {
        let k = self.dim();
        let mut out = Vec::new();
        for_each_rref(f, k, j, |coeffs| {
            let rows: Vec<Row<N>> = coeffs
                .iter()
                .map(|c| combine(f, c, self.basis()))
                .collect();
            out.push(Subspace::span(f, &rows).expect("independent coefficients"));
        });
        out.sort_unstable();
        out
    }

    /// Image under the column-vector action `v -> M v`.
    pub fn transform(&self, f: &Field, m: &Matrix<N>) -> Self {
        let mut buf = [[0; N]; N];
        for (dst, src) in buf.iter_mut().zip(self.basis()) {
            *dst = m.mul_vec(f, src);
        }
        let k = rref(f, &mut buf[..self.dim()]);
        debug_assert_eq!(k, self.dim(), "transform by a singular matrix");
        Subspace { k: k as u8, rows: buf }
    }
}

/// `sum_i coeffs[i] * rows[i]`.
pub fn combine<const N: usize>(f: &Field, coeffs: &[Elem], rows: &[Row<N>]) -> Row<N> {
    let mut out = [0; N];
    for (&c, row) in coeffs.iter().zip(rows) {
        if c != 0 {
            for j in 0..N {
                out[j] = f.add(out[j], f.mul(c, row[j]));
            }
        }
    }
    out
}

/// Calls `visit` with every `k x n` reduced echelon matrix of rank `k`
/// (rows as vectors of length `n`), grouped by pivot pattern.
fn for_each_rref(f: &Field, n: usize, k: usize, mut visit: impl FnMut(&[Vec<Elem>])) {
    if k == 0 || k > n {
        return;
    }
    let q = f.order();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pivots = &pivots;
                (pivots[i] + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let mut rows = vec![vec![0 as Elem; n]; k];
        for (i, &p) in pivots.iter().enumerate() {
            rows[i][p] = 1;
        }
        let mut digits = vec![0usize; free.len()];
        loop {
            for (&(i, c), &d) in free.iter().zip(&digits) {
                rows[i][c] = d as Elem;
            }
            visit(&rows);
            // odometer increment
            let mut pos = 0;
            while pos < digits.len() {
                digits[pos] += 1;
                if digits[pos] < q {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
        }
        // next pivot combination
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Gaussian binomial coefficient `[n choose k]_q`.
pub fn gaussian_binomial(n: usize, k: usize, q: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Every `k`-dimensional subspace of GF(q)^N, each once, in canonical order.
pub fn enumerate_subspaces<const N: usize>(f: &Field, k: usize) -> Result<Vec<Subspace<N>>> {
    let count = gaussian_binomial(N, k, f.order() as u128);
    if count > ENUMERATION_LIMIT {
        return Err(Error::EnumerationBound {
            count,
            bound: ENUMERATION_LIMIT,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    for_each_rref(f, N, k, |rows| {
        let rows: Vec<Row<N>> = rows.iter().map(|r| r.as_slice().try_into().unwrap()).collect();
        out.push(Subspace::from_rref_unchecked(&rows));
    });
    out.sort_unstable();
    Ok(out)
}

/// Subspace distance `dim(U+V) - dim(U∩V) = 2 dim(U+V) - dim U - dim V`.
pub fn subspace_distance<const N: usize>(f: &Field, u: &Subspace<N>, v: &Subspace<N>) -> usize {
    2 * u.sum_dim(f, v) - u.dim() - v.dim()
}

/// The same distance computed through an explicit intersection basis.
pub fn distance_via_meet<const N: usize>(f: &Field, u: &Subspace<N>, v: &Subspace<N>) -> usize {
    let meet = u.meet(f, v).map_or(0, |m| m.dim());
    u.dim() + v.dim() - 2 * meet
}

/// Square matrix over GF(q) acting on column vectors from the left.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Matrix<const N: usize>(pub [Row<N>; N]);

impl<const N: usize> Matrix<N> {
    pub fn identity() -> Self {
        let mut m = [[0; N]; N];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        Matrix(m)
    }

    pub fn mul_vec(&self, f: &Field, v: &Row<N>) -> Row<N> {
        let mut out = [0; N];
        for (o, row) in out.iter_mut().zip(&self.0) {
            *o = dot(f, row, v);
        }
        out
    }

    pub fn mul(&self, f: &Field, other: &Self) -> Self {
        let mut out = [[0; N]; N];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                let mut acc = 0;
                for l in 0..N {
                    acc = f.add(acc, f.mul(self.0[i][l], other.0[l][j]));
                }
                *x = acc;
            }
        }
        Matrix(out)
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        rank(f, &self.0) == N
    }

    pub fn inverse(&self, f: &Field) -> Result<Self> {
        // Gauss-Jordan on [M | I], stored as rows of width 2N in two halves.
        let mut left = self.0;
        let mut right = Self::identity().0;
        for col in 0..N {
            let pivot = (col..N).find(|&r| left[r][col] != 0).ok_or(Error::Singular)?;
            left.swap(col, pivot);
            right.swap(col, pivot);
            let s = f.inv_nonzero(left[col][col]);
            for j in 0..N {
                left[col][j] = f.mul(left[col][j], s);
                right[col][j] = f.mul(right[col][j], s);
            }
            for i in 0..N {
                let c = left[i][col];
                if i != col && c != 0 {
                    for j in 0..N {
                        left[i][j] = f.sub(left[i][j], f.mul(c, left[col][j]));
                        right[i][j] = f.sub(right[i][j], f.mul(c, right[col][j]));
                    }
                }
            }
        }
        Ok(Matrix(right))
    }

    pub fn pow(&self, f: &Field, n: u64) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc.mul(f, self))
    }
}

/// Image of `u` under `g`; fails when `g` is singular.
pub fn apply<const N: usize>(f: &Field, g: &Matrix<N>, u: &Subspace<N>) -> Result<Subspace<N>> {
    if !g.is_invertible(f) {
        return Err(Error::Singular);
    }
    Ok(u.transform(f, g))
}

/// Unit vector `e_i` (0-indexed).
pub fn unit<const N: usize>(i: usize) -> Row<N> {
    let mut v = [0; N];
    v[i] = 1;
    v
}

/// Span of unit vectors, given by 0-indexed coordinates.
pub fn coordinate_span<const N: usize>(f: &Field, coords: &[usize]) -> Subspace<N> {
    let rows: Vec<Row<N>> = coords.iter().map(|&i| unit(i)).collect();
    Subspace::span(f, &rows).expect("nonempty coordinate span")
}

/// Fixed subspaces of the odd-characteristic construction.
#[derive(Clone, Debug)]
pub struct OddFrame {
    /// The plane `X4 = X5 = 0`.
    pub pi: Subspace,
    /// The line `X3 = X4 = X5 = 0`.
    pub ell: Subspace,
    /// The `q+1` solids through `pi`: `X4 = ω^(i-1) X5` for `i < q`, then
    /// `X4 = 0`, then `X5 = 0`.
    pub solids: Vec<Subspace>,
}

impl OddFrame {
    pub fn new(f: &Field) -> Self {
        let pi = coordinate_span(f, &[0, 1, 2]);
        let ell = coordinate_span(f, &[0, 1]);
        let q = f.order() as u64;
        let mut solids = Vec::with_capacity(q as usize + 1);
        for i in 0..q - 1 {
            let w = f.pow(f.omega(), i);
            solids.push(Subspace::from_equations(f, &[[0, 0, 0, 1, f.neg(w)]]).unwrap());
        }
        solids.push(Subspace::from_equations(f, &[[0, 0, 0, 1, 0]]).unwrap());
        solids.push(Subspace::from_equations(f, &[[0, 0, 0, 0, 1]]).unwrap());
        OddFrame { pi, ell, solids }
    }
}

/// Fixed subspaces of the even-characteristic construction.
#[derive(Clone, Debug)]
pub struct EvenFrame {
    /// The plane `X4 = X5 = 0`.
    pub pi: Subspace,
    /// The line `X1 = X4 = X5 = 0`.
    pub ell: Subspace,
    /// The solid `X1 = 0`.
    pub sigma: Subspace,
    /// The point `N = (1,0,0,0,0)`.
    pub nucleus: Subspace,
}

impl EvenFrame {
    pub fn new(f: &Field) -> Self {
        EvenFrame {
            pi: coordinate_span(f, &[0, 1, 2]),
            ell: coordinate_span(f, &[1, 2]),
            sigma: coordinate_span(f, &[1, 2, 3, 4]),
            nucleus: coordinate_span(f, &[0]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, h: u32) -> Field {
        Field::new(p, h).unwrap()
    }

    /// Brute-force subspace membership: enumerate every vector of GF(q)^N
    /// spanned by the rows.
    fn span_vectors<const N: usize>(f: &Field, rows: &[Row<N>]) -> Vec<Row<N>> {
        let q = f.order();
        let k = rows.len();
        let mut out = Vec::new();
        for n in 0..q.pow(k as u32) {
            let coeffs: Vec<Elem> = (0..k).map(|i| ((n / q.pow(i as u32)) % q) as Elem).collect();
            out.push(combine(f, &coeffs, rows));
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    #[test]
    fn canonicalize_examples() {
        let f = gf(3, 1);
        let full = Subspace::<5>::span(&f, &Matrix::<5>::identity().0).unwrap();
        assert_eq!(full.dim(), 5);
        assert_eq!(full, Subspace::whole());

        let u = Subspace::<5>::span(&f, &[[1, 0, 0, 0, 0], [2, 0, 0, 0, 0]]).unwrap();
        assert_eq!(u.dim(), 1);
        assert_eq!(u.basis(), &[[1, 0, 0, 0, 0]]);

        assert_eq!(Subspace::<5>::span(&f, &[[0; 5]]), Err(Error::ZeroSpan));
    }

    #[test]
    fn scrambled_basis_of_ell_canonicalizes_to_ell() {
        let f = gf(3, 1);
        let ell = OddFrame::new(&f).ell;
        let scrambled = [[2, 1, 0, 0, 0], [1, 1, 0, 0, 0], [0, 2, 0, 0, 0]];
        let u = Subspace::span(&f, &scrambled).unwrap();
        assert_eq!(u, ell);
        assert_eq!(u.basis(), &[[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]]);
        // same vector set as the oracle span
        assert_eq!(span_vectors(&f, &scrambled), span_vectors(&f, u.basis()));
    }

    #[test]
    fn distance_examples() {
        let f = gf(2, 1);
        let a = coordinate_span::<5>(&f, &[0, 1]);
        let b = coordinate_span::<5>(&f, &[2, 3]);
        let plane = coordinate_span::<5>(&f, &[1, 2, 3]);
        assert_eq!(subspace_distance(&f, &a, &a), 0);
        assert_eq!(subspace_distance(&f, &a, &b), 4);
        assert_eq!(subspace_distance(&f, &a, &plane), 3);
        assert_eq!(a.meet_dim(&f, &plane), 1);
    }

    #[test]
    fn enumeration_counts() {
        let f2 = gf(2, 1);
        assert_eq!(enumerate_subspaces::<5>(&f2, 1).unwrap().len(), 31);
        assert_eq!(enumerate_subspaces::<5>(&f2, 2).unwrap().len(), 155);
        assert_eq!(gaussian_binomial(5, 2, 2), 31 * 15 / 3);
        let f3 = gf(3, 1);
        assert_eq!(enumerate_subspaces::<5>(&f3, 1).unwrap().len(), 121);
        for q in [2u64, 3, 4, 5] {
            let (p, h) = crate::galois::prime_power(q).unwrap();
            let f = gf(p, h);
            for k in 1..=4 {
                let all = enumerate_subspaces::<5>(&f, k).unwrap();
                assert_eq!(all.len() as u128, gaussian_binomial(5, k, q as u128));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                assert!(all.iter().all(|s| s.is_canonical(&f) && s.dim() == k));
            }
        }
    }

    #[test]
    fn enumeration_bound() {
        let f = gf(13, 1);
        assert!(matches!(
            enumerate_subspaces::<5>(&f, 2),
            Err(Error::EnumerationBound { .. })
        ));
    }

    #[test]
    fn enumeration_contains_named_subspaces() {
        let f = gf(3, 1);
        let odd = OddFrame::new(&f);
        let planes = enumerate_subspaces::<5>(&f, 3).unwrap();
        let lines = enumerate_subspaces::<5>(&f, 2).unwrap();
        let solids = enumerate_subspaces::<5>(&f, 4).unwrap();
        assert!(planes.binary_search(&odd.pi).is_ok());
        assert!(lines.binary_search(&odd.ell).is_ok());
        assert_eq!(odd.solids.len(), 4);
        for s in &odd.solids {
            assert!(solids.binary_search(s).is_ok());
            assert!(s.contains(&f, &odd.pi));
        }
        assert!(odd.pi.contains(&f, &odd.ell));

        let f2 = gf(2, 1);
        let even = EvenFrame::new(&f2);
        assert_eq!(even.sigma.meet(&f2, &even.pi), Some(even.ell));
        assert!(even.pi.contains(&f2, &even.nucleus));
        assert!(!even.ell.contains(&f2, &even.nucleus));
        assert!(enumerate_subspaces::<5>(&f2, 4).unwrap().contains(&even.sigma));
    }

    #[test]
    fn metric_axioms_and_modular_law_q2() {
        let f = gf(2, 1);
        let mut all = Vec::new();
        for k in 1..=4 {
            all.extend(enumerate_subspaces::<5>(&f, k).unwrap());
        }
        // pairs: symmetry, identity of indiscernibles, modular law, two routes
        let sample: Vec<_> = all.iter().step_by(7).collect();
        for u in &all {
            for v in &sample {
                let d = subspace_distance(&f, u, v);
                assert_eq!(d, subspace_distance(&f, v, u));
                assert_eq!(d == 0, u == *v);
                assert_eq!(d, distance_via_meet(&f, u, v));
                let meet = u.meet(&f, v).map_or(0, |m| m.dim());
                assert_eq!(u.sum_dim(&f, v) + meet, u.dim() + v.dim());
            }
        }
        // triangle inequality on a strided set of triples
        let tri: Vec<_> = all.iter().step_by(11).collect();
        for a in &tri {
            for b in &tri {
                for c in &tri {
                    assert!(
                        subspace_distance(&f, a, c)
                            <= subspace_distance(&f, a, b) + subspace_distance(&f, b, c)
                    );
                }
            }
        }
    }

    #[test]
    fn meet_matches_brute_force_vectors() {
        let f = gf(3, 1);
        let lines = enumerate_subspaces::<5>(&f, 2).unwrap();
        let planes = enumerate_subspaces::<5>(&f, 3).unwrap();
        for (l, p) in lines.iter().step_by(37).zip(planes.iter().step_by(29)) {
            let lv = span_vectors(&f, l.basis());
            let pv = span_vectors(&f, p.basis());
            let common = lv.iter().filter(|v| pv.contains(v)).count();
            let expected = match l.meet(&f, p) {
                Some(m) => 3usize.pow(m.dim() as u32),
                None => 1,
            };
            assert_eq!(common, expected);
        }
    }

    #[test]
    fn apply_is_a_group_action() {
        let f = gf(3, 1);
        let g = Matrix([
            [1, 0, 1, 1, 0],
            [0, 1, 1, 2, 2],
            [0, 0, 1, 2, 2],
            [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1],
        ]);
        let h = Matrix([
            [0, 1, 0, 0, 0],
            [1, 0, 0, 0, 0],
            [0, 0, 2, 0, 0],
            [0, 0, 1, 1, 0],
            [1, 0, 0, 0, 1],
        ]);
        let gi = g.inverse(&f).unwrap();
        assert_eq!(g.mul(&f, &gi), Matrix::identity());
        for u in enumerate_subspaces::<5>(&f, 2).unwrap().iter().step_by(13) {
            assert_eq!(apply(&f, &Matrix::identity(), u).unwrap(), *u);
            assert_eq!(apply(&f, &gi, &apply(&f, &g, u).unwrap()).unwrap(), *u);
            let gh = g.mul(&f, &h);
            assert_eq!(
                apply(&f, &g, &apply(&f, &h, u).unwrap()).unwrap(),
                apply(&f, &gh, u).unwrap()
            );
        }
        let singular = Matrix([[0; 5]; 5]);
        assert_eq!(
            apply(&f, &singular, &OddFrame::new(&f).ell),
            Err(Error::Singular)
        );
        assert_eq!(singular.inverse(&f), Err(Error::Singular));
    }

    #[test]
    fn points_and_subspaces_of() {
        let f = gf(2, 2);
        let plane = coordinate_span::<5>(&f, &[0, 2, 4]);
        assert_eq!(plane.points(&f).len(), 21);
        assert_eq!(plane.subspaces(&f, 2).len(), 21);
        for l in plane.subspaces(&f, 2) {
            assert!(plane.contains(&f, &l));
            assert_eq!(l.points(&f).len(), 5);
        }
    }

    #[test]
    fn equations_roundtrip() {
        let f = gf(5, 1);
        for u in enumerate_subspaces::<5>(&f, 3).unwrap().iter().step_by(97) {
            let eqs = u.equations(&f);
            assert_eq!(eqs.len(), 2);
            assert_eq!(Subspace::from_equations(&f, &eqs).unwrap(), *u);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rows_strategy(q: u8, k: usize) -> impl Strategy<Value = Vec<[u8; 5]>> {
            prop::collection::vec(prop::array::uniform5(0..q), 1..=k)
        }

        proptest! {
            #[test]
            fn canonical_form_is_idempotent_and_preserves_span(rows in rows_strategy(3, 4)) {
                let f = Field::new(3, 1).unwrap();
                if let Ok(u) = Subspace::span(&f, &rows) {
                    prop_assert_eq!(Subspace::span(&f, u.basis()).unwrap(), u);
                    prop_assert_eq!(span_vectors(&f, &rows), span_vectors(&f, u.basis()));
                } else {
                    prop_assert!(rows.iter().all(|r| r.iter().all(|&x| x == 0)));
                }
            }

            #[test]
            fn distance_routes_agree(a in rows_strategy(4, 4), b in rows_strategy(4, 4)) {
                let f = Field::new(2, 2).unwrap();
                if let (Ok(u), Ok(v)) = (Subspace::span(&f, &a), Subspace::span(&f, &b)) {
                    prop_assert_eq!(subspace_distance(&f, &u, &v), distance_via_meet(&f, &u, &v));
                }
            }
        }
    }
}
