//! Subspaces of F_p^m in canonical reduced row-echelon form, their exhaustive
//! enumeration, and complements under the trace pairing on F_{q1} × F_{q2}.

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{ExtField, PrimeField};
use crate::matrix::Mat;

/// A subspace stored as its RREF basis. Two values are equal iff the
/// subspaces are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    fp: PrimeField,
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(serializer)
    }
}

impl Subspace {
    pub fn span(fp: PrimeField, ambient: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        let m = Mat::from_rows(vectors, ambient)?;
        Ok(Self::from_matrix(fp, &m))
    }

    /// Row space of `m`.
    pub fn from_matrix(fp: PrimeField, m: &Mat) -> Self {
        let (basis, pivots) = m.rref(fp);
        Subspace {
            fp,
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn zero(fp: PrimeField, ambient: usize) -> Self {
        Subspace {
            fp,
            ambient,
            basis: Mat::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(fp: PrimeField, ambient: usize) -> Self {
        Subspace {
            fp,
            ambient,
            basis: Mat::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn prime_field(&self) -> PrimeField {
        self.fp
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.basis.to_rows()
    }

    /// Membership by reduction against the RREF rows: v ∈ H iff
    /// v = Σ v[pivot_i] · row_i.
    pub fn contains(&self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let fp = self.fp;
        let p = fp.p() as u64;
        (0..self.ambient).all(|j| {
            let mut acc = 0u64;
            for (i, &pc) in self.pivots.iter().enumerate() {
                acc += v[pc] as u64 * self.basis.get(i, j) as u64;
            }
            (acc % p) as u32 == v[j]
        })
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::span(self.fp, self.ambient, &rows).expect("same ambient dimension")
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    /// Visits every element Σ c_i row_i, coefficients in lexicographic order.
    pub fn for_each_element(&self, mut visit: impl FnMut(&[u32])) {
        let fp = self.fp;
        let r = self.dim();
        let mut v = vec![0u32; self.ambient];
        crate::gf::for_each_vector(fp.p(), r, |c| {
            v.iter_mut().for_each(|x| *x = 0);
            for (i, &ci) in c.iter().enumerate() {
                if ci == 0 {
                    continue;
                }
                for (j, x) in v.iter_mut().enumerate() {
                    *x = fp.add(*x, fp.mul(ci, self.basis.get(i, j)));
                }
            }
            visit(&v);
        });
    }

    pub fn elements(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        self.for_each_element(|v| out.push(v.to_vec()));
        out
    }

    /// A uniformly random subspace of the given dimension.
    pub fn random(fp: PrimeField, ambient: usize, dim: usize, rng: &mut impl rand::Rng) -> Self {
        assert!(dim <= ambient);
        loop {
            let m = Mat::random(dim, ambient, fp, rng);
            if m.rank(fp) == dim {
                return Subspace::from_matrix(fp, &m);
            }
        }
    }

    /// A random (non-canonical) basis of this subspace.
    pub fn random_basis(&self, rng: &mut impl rand::Rng) -> Mat {
        let change = Mat::random_invertible(self.dim(), self.fp, rng);
        change.mul(&self.basis, self.fp)
    }
}

/// Number of r-dimensional subspaces of F_p^m.
pub fn gaussian_binomial(p: u32, m: usize, r: usize) -> u128 {
    if r > m {
        return 0;
    }
    let p = p as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..r {
        num *= p.pow((m - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// All r-subsets of {0..m}, in colexicographic order.
pub fn pivot_sets(m: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for c in start..m {
            cur.push(c);
            rec(c + 1, m, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, r, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// Every subspace whose RREF has exactly this pivot set; free entries run
/// lexicographically (row-major).
pub fn subspaces_with_pivots(fp: PrimeField, m: usize, pivots: &[usize]) -> Vec<Subspace> {
    let r = pivots.len();
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| ((c + 1)..m).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    crate::gf::for_each_vector(fp.p(), free.len(), |vals| {
        let mut basis = Mat::zeros(r, m);
        for (i, &c) in pivots.iter().enumerate() {
            basis.set(i, c, 1);
        }
        for (&(i, j), &v) in free.iter().zip(vals) {
            basis.set(i, j, v);
        }
        out.push(Subspace {
            fp,
            ambient: m,
            basis,
            pivots: pivots.to_vec(),
        });
    });
    out
}

/// Every r-dimensional subspace of F_p^m, each exactly once, in canonical
/// order.
pub fn enumerate_subspaces(
    fp: PrimeField,
    m: usize,
    r: usize,
) -> Result<impl Iterator<Item = Subspace>> {
    if r > m {
        return Err(Error::BadDims(format!("dimension {r} exceeds ambient {m}")));
    }
    Ok(pivot_sets(m, r)
        .into_iter()
        .flat_map(move |piv| subspaces_with_pivots(fp, m, &piv)))
}

/// Every subspace of F_p^m, ordered by dimension.
pub fn all_subspaces(fp: PrimeField, m: usize) -> Vec<Subspace> {
    (0..=m)
        .flat_map(|r| enumerate_subspaces(fp, m, r).expect("r ≤ m"))
        .collect()
}

/// Maximum of `score` over all r-dimensional subspaces, with the canonically
/// first subspace attaining it. Work is split by pivot set.
pub fn max_over_subspaces<F>(fp: PrimeField, m: usize, r: usize, score: F) -> Result<(usize, Subspace)>
where
    F: Fn(&Subspace) -> usize + Sync,
{
    if r > m {
        return Err(Error::BadDims(format!("dimension {r} exceeds ambient {m}")));
    }
    let sets = pivot_sets(m, r);
    let best = sets
        .par_iter()
        .enumerate()
        .map(|(idx, piv)| {
            let mut best: Option<(usize, Subspace)> = None;
            for h in subspaces_with_pivots(fp, m, piv) {
                let v = score(&h);
                if best.as_ref().is_none_or(|(b, _)| v > *b) {
                    best = Some((v, h));
                }
            }
            let (v, h) = best.expect("nonempty pivot class");
            (v, idx, h)
        })
        .reduce_with(|a, b| {
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        })
        .expect("at least one subspace");
    Ok((best.0, best.2))
}

/// The ambient space F = F_{q1} × F_{q2} ≅ F_p^{s1+s2} by concatenated
/// coordinates, with pairing ⟨(u,v),(x,y)⟩ = Tr(ux) + Tr(vy).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSpaceCtx {
    field1: ExtField,
    field2: ExtField,
    pairing: Mat,
}

impl PairSpaceCtx {
    pub fn new(field1: ExtField, field2: ExtField) -> Result<Self> {
        if field1.p() != field2.p() {
            return Err(Error::Config(format!(
                "fields have different characteristic ({} vs {})",
                field1.p(),
                field2.p()
            )));
        }
        let pairing = Mat::block_diag(field1.trace_gram(), field2.trace_gram());
        Ok(PairSpaceCtx {
            field1,
            field2,
            pairing,
        })
    }

    pub fn field1(&self) -> &ExtField {
        &self.field1
    }

    pub fn field2(&self) -> &ExtField {
        &self.field2
    }

    pub fn prime_field(&self) -> PrimeField {
        self.field1.prime_field()
    }

    pub fn p(&self) -> u32 {
        self.field1.p()
    }

    pub fn s1(&self) -> usize {
        self.field1.degree()
    }

    pub fn s2(&self) -> usize {
        self.field2.degree()
    }

    pub fn s(&self) -> usize {
        self.s1() + self.s2()
    }

    /// Gram matrix of the trace pairing in concatenated coordinates.
    pub fn pairing_gram(&self) -> &Mat {
        &self.pairing
    }

    pub fn pair(&self, a: &[u32], b: &[u32]) -> u32 {
        self.pairing.bilinear(a, b, self.prime_field())
    }

    pub fn split<'a>(&self, v: &'a [u32]) -> (&'a [u32], &'a [u32]) {
        v.split_at(self.s1())
    }

    /// Annihilator of H under the trace pairing.
    pub fn orthogonal_complement(&self, h: &Subspace) -> Subspace {
        let fp = self.prime_field();
        if h.dim() == 0 {
            return Subspace::full(fp, self.s());
        }
        let constraints = h.basis().mul(&self.pairing, fp);
        Subspace::from_matrix(fp, &constraints.null_space(fp))
    }
}

/// U × V inside F_p^{s1+s2}.
pub fn product_subspace(u: &Subspace, v: &Subspace) -> Subspace {
    let fp = u.prime_field();
    let (s1, s2) = (u.ambient_dim(), v.ambient_dim());
    let mut rows = Vec::with_capacity(u.dim() + v.dim());
    for r in u.basis_vectors() {
        let mut row = r;
        row.extend(std::iter::repeat_n(0, s2));
        rows.push(row);
    }
    for r in v.basis_vectors() {
        let mut row = vec![0; s1];
        row.extend(r);
        rows.push(row);
    }
    Subspace::span(fp, s1 + s2, &rows).expect("block rows have ambient length")
}

/// Coordinate vectors stored contiguously.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointSet {
    dim: usize,
    data: Vec<u32>,
}

impl PointSet {
    pub fn new(dim: usize) -> Self {
        PointSet {
            dim,
            data: Vec::new(),
        }
    }

    pub fn push(&mut self, v: &[u32]) {
        assert_eq!(v.len(), self.dim);
        self.data.extend_from_slice(v);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, i: usize) -> &[u32] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.data.chunks_exact(self.dim.max(1)).take(self.len())
    }
}

impl FromIterator<Vec<u32>> for PointSet {
    fn from_iter<I: IntoIterator<Item = Vec<u32>>>(iter: I) -> Self {
        let mut it = iter.into_iter().peekable();
        let dim = it.peek().map_or(0, |v| v.len());
        let mut ps = PointSet::new(dim);
        for v in it {
            ps.push(&v);
        }
        ps
    }
}

/// |{v ∈ points : v ∈ H}|.
pub fn intersect_count(points: &PointSet, h: &Subspace) -> usize {
    if points.is_empty() {
        return 0;
    }
    if h.dim() == h.ambient_dim() {
        return points.len();
    }
    points.iter().filter(|v| h.contains(v)).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use std::collections::HashSet;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let fp = f(3);
        assert_eq!(enumerate_subspaces(fp, 3, 0).unwrap().count(), 1);
        assert_eq!(enumerate_subspaces(fp, 2, 1).unwrap().count(), 4);
        assert_eq!(enumerate_subspaces(fp, 4, 2).unwrap().count(), 130);
        assert!(matches!(enumerate_subspaces(fp, 2, 3), Err(Error::BadDims(_))));
        assert_eq!(gaussian_binomial(3, 5, 2), 1210);
    }

    #[test]
    fn enumeration_counts_match_gaussian_binomial_and_are_distinct() {
        for p in [3u64, 5] {
            let fp = f(p);
            for m in 0..=5usize {
                if p == 5 && m == 5 {
                    continue; // 5-dim over F_5 has ~10^5 subspaces per rank; m ≤ 4 is plenty
                }
                for r in 0..=m {
                    let mut seen = HashSet::new();
                    for h in enumerate_subspaces(fp, m, r).unwrap() {
                        assert_eq!(h.dim(), r);
                        assert_eq!(Subspace::from_matrix(fp, h.basis()), h);
                        assert!(seen.insert(h.basis().clone()));
                    }
                    assert_eq!(seen.len() as u128, gaussian_binomial(p as u32, m, r), "p={p} m={m} r={r}");
                }
            }
        }
    }

    #[test]
    fn pivot_sets_are_colex() {
        assert_eq!(
            pivot_sets(3, 2),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        assert_eq!(pivot_sets(4, 1).len(), 4);
    }

    #[test]
    fn orthogonal_complement_examples() {
        let f3 = ExtField::new(3, 1, None).unwrap();
        let ctx = PairSpaceCtx::new(f3.clone(), f3).unwrap();
        let fp = ctx.prime_field();
        assert_eq!(ctx.orthogonal_complement(&Subspace::zero(fp, 2)), Subspace::full(fp, 2));
        assert_eq!(ctx.orthogonal_complement(&Subspace::full(fp, 2)), Subspace::zero(fp, 2));
        let h = Subspace::span(fp, 2, &[vec![1, 1]]).unwrap();
        let expect = Subspace::span(fp, 2, &[vec![1, 2]]).unwrap();
        assert_eq!(ctx.orthogonal_complement(&h), expect);
    }

    #[test]
    fn orthogonal_complement_is_involution() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (p, s1, s2) in [(3u64, 2usize, 1usize), (3, 2, 2), (5, 1, 2), (3, 3, 2)] {
            let ctx = PairSpaceCtx::new(
                ExtField::new(p, s1, None).unwrap(),
                ExtField::new(p, s2, None).unwrap(),
            )
            .unwrap();
            let fp = ctx.prime_field();
            for _ in 0..200 {
                let dim = rand::Rng::gen_range(&mut rng, 0..=ctx.s());
                let h = Subspace::random(fp, ctx.s(), dim, &mut rng);
                let perp = ctx.orthogonal_complement(&h);
                assert_eq!(perp.dim(), ctx.s() - h.dim());
                assert_eq!(ctx.orthogonal_complement(&perp), h);
                for a in h.basis_vectors() {
                    for b in perp.basis_vectors() {
                        assert_eq!(ctx.pair(&a, &b), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn intersect_count_examples() {
        let fp = f(3);
        let h = Subspace::span(fp, 2, &[vec![1, 1]]).unwrap();
        assert_eq!(intersect_count(&PointSet::new(2), &h), 0);
        let d: PointSet = vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]
            .into_iter()
            .collect();
        assert_eq!(intersect_count(&d, &Subspace::full(fp, 2)), 4);
        assert_eq!(intersect_count(&d, &h), 2);
    }

    #[test]
    fn product_subspace_examples() {
        let fp = f(3);
        let u = Subspace::span(fp, 2, &[vec![1, 0]]).unwrap();
        let v = Subspace::full(fp, 1);
        let prod = product_subspace(&u, &v);
        assert_eq!(prod.basis_vectors(), vec![vec![1, 0, 0], vec![0, 0, 1]]);
        let w = Subspace::span(fp, 2, &[vec![1, 2]]).unwrap();
        assert_eq!(product_subspace(&Subspace::zero(fp, 1), &w).dim(), 1);
        assert_eq!(
            product_subspace(&Subspace::full(fp, 2), &Subspace::full(fp, 2)),
            Subspace::full(fp, 4)
        );
    }

    #[test]
    fn zero_forms_anchor() {
        // D = all nonzero points: max over k-dim H of |D ∩ H| is p^k − 1
        let fp = f(3);
        let d: PointSet = crate::gf::lex_vectors(3, 3)
            .into_iter()
            .filter(|v| v.iter().any(|&c| c != 0))
            .collect();
        for k in 0..=3 {
            let (best, _) = max_over_subspaces(fp, 3, k, |h| intersect_count(&d, h)).unwrap();
            assert_eq!(best, 3usize.pow(k as u32) - 1);
        }
    }

    #[test]
    fn max_witness_is_canonically_first() {
        let fp = f(3);
        let (best, h) = max_over_subspaces(fp, 2, 1, |_| 1).unwrap();
        assert_eq!(best, 1);
        assert_eq!(h, enumerate_subspaces(fp, 2, 1).unwrap().next().unwrap());
    }
}
