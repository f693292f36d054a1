//! Quadratic forms on F_{p^s} with values in F_p.
//!
//! A form is stored as its symmetric Gram matrix A in the polynomial basis,
//! f(x) = X A X^T. The linear map L_f with F(x, y) = Tr(x L_f(y)) is only
//! used through its coordinate action X ↦ X·A, which gives L_f(x) in the
//! trace-dual coordinates (Tr(L_f(x) y) = X A Y^T).

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{for_each_vector, ExtField, FieldElem, PrimeField};
use crate::matrix::Mat;
use crate::subspace::Subspace;

/// A sign ε ∈ {+1, −1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// From a nonzero ±1 integer.
    pub fn from_value(v: i64) -> Sign {
        if v > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// How a form is supplied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FormInput {
    /// Symmetric Gram matrix over F_p in the polynomial basis.
    Gram { rows: Vec<Vec<u32>> },
    /// f(x) = Σ_i Tr(a_i x^{p^i + 1}); each a_i given by its coordinates.
    TracePoly { coeffs: Vec<Vec<u32>> },
    /// Values of f on every element, in lexicographic coordinate order.
    Table { values: Vec<u32> },
}

/// Symmetric congruence diagonalization: returns invertible M and the nonzero
/// diagonal entries λ_1..λ_R with M A M^T = diag(λ_1, ..., λ_R, 0, ..., 0).
pub fn diagonalize_symmetric(a: &Mat, fp: PrimeField) -> (Mat, Vec<u32>) {
    debug_assert!(a.is_symmetric());
    let n = a.rows();
    let mut b = a.clone();
    let mut m = Mat::identity(n);
    let mut lambdas = Vec::new();
    for k in 0..n {
        let pivot = match (k..n).find(|&i| b.get(i, i) != 0) {
            Some(i) => i,
            None => {
                // No diagonal pivot left: B[i][j] ≠ 0 gives B'[i][i] = 2B[i][j].
                let Some((i, j)) = (k..n)
                    .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                    .find(|&(i, j)| b.get(i, j) != 0)
                else {
                    break;
                };
                b.add_row_multiple(i, j, 1, fp);
                b.add_col_multiple(i, j, 1, fp);
                m.add_row_multiple(i, j, 1, fp);
                i
            }
        };
        b.swap_rows(k, pivot);
        b.swap_cols(k, pivot);
        m.swap_rows(k, pivot);
        let inv = fp.inv(b.get(k, k)).expect("nonzero pivot");
        for t in (k + 1)..n {
            let bt = b.get(t, k);
            if bt == 0 {
                continue;
            }
            let c = fp.neg(fp.mul(bt, inv));
            b.add_row_multiple(t, k, c, fp);
            b.add_col_multiple(t, k, c, fp);
            m.add_row_multiple(t, k, c, fp);
        }
        lambdas.push(b.get(k, k));
    }
    (m, lambdas)
}

/// η̄ of the product, +1 for the empty product.
pub fn sign_of(lambdas: &[u32], fp: PrimeField) -> Sign {
    let prod = lambdas.iter().fold(1u32, |acc, &l| fp.mul(acc, l));
    Sign::from_value(fp.eta(prod))
}

/// Rank and sign of a symmetric matrix.
pub fn rank_sign_of(a: &Mat, fp: PrimeField) -> (usize, Sign) {
    let (_, lambdas) = diagonalize_symmetric(a, fp);
    (lambdas.len(), sign_of(&lambdas, fp))
}

/// Dimension of a maximal totally isotropic subspace of a nondegenerate form
/// of rank `rank` and sign `sign`.
pub fn witt_index(rank: usize, sign: Sign, fp: PrimeField) -> usize {
    if rank % 2 == 1 {
        (rank - 1) / 2
    } else if sign.value() == fp.pstar_sign().pow((rank / 2) as u32) {
        rank / 2
    } else {
        rank / 2 - 1
    }
}

/// e_f: dimension of the largest subspace containing the radical on which f
/// vanishes.
pub fn isotropic_dim(s: usize, rank: usize, sign: Sign, fp: PrimeField) -> usize {
    s - rank + witt_index(rank, sign, fp)
}

#[derive(Clone, Debug)]
pub struct QuadForm {
    field: ExtField,
    gram: Mat,
    rank: usize,
    sign: Sign,
    radical: Subspace,
    diag_transform: Mat,
    lambdas: Vec<u32>,
}

/// f restricted to a subspace H.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictedForm {
    pub dim: usize,
    pub rank: usize,
    pub sign: Sign,
}

impl QuadForm {
    pub fn from_gram(field: &ExtField, gram: Mat) -> Result<Self> {
        let s = field.degree();
        let fp = field.prime_field();
        if gram.rows() != s || gram.cols() != s {
            return Err(Error::DimensionMismatch {
                expected: s,
                got: gram.rows().max(gram.cols()),
            });
        }
        if (0..s).any(|i| gram.row(i).iter().any(|&c| c >= fp.p())) {
            return Err(Error::NotQuadratic("gram entry out of range".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::NotQuadratic("gram matrix is not symmetric".into()));
        }
        let (m, lambdas) = diagonalize_symmetric(&gram, fp);
        let rank = lambdas.len();
        let sign = sign_of(&lambdas, fp);
        let radical = Subspace::from_matrix(fp, &gram.null_space(fp));
        Ok(QuadForm {
            field: field.clone(),
            gram,
            rank,
            sign,
            radical,
            diag_transform: m,
            lambdas,
        })
    }

    pub fn from_input(field: &ExtField, input: &FormInput) -> Result<Self> {
        match input {
            FormInput::Gram { rows } => {
                let m = Mat::from_rows(rows, field.degree())?;
                Self::from_gram(field, m)
            }
            FormInput::TracePoly { coeffs } => {
                if coeffs.len() > field.degree() {
                    return Err(Error::DimensionMismatch {
                        expected: field.degree(),
                        got: coeffs.len(),
                    });
                }
                let a: Vec<FieldElem> = coeffs
                    .iter()
                    .map(|c| field.uncoords(c))
                    .collect::<Result<_>>()?;
                let eval = |x: &FieldElem| trace_poly_eval(field, &a, x);
                let form = Self::from_gram(field, polarize(field, eval))?;
                form.check_against(|x| trace_poly_eval(field, &a, x))?;
                Ok(form)
            }
            FormInput::Table { values } => {
                let q = field.order() as usize;
                if values.len() != q {
                    return Err(Error::DimensionMismatch {
                        expected: q,
                        got: values.len(),
                    });
                }
                let index = |x: &FieldElem| {
                    x.coeffs()
                        .iter()
                        .fold(0usize, |acc, &c| acc * field.p() as usize + c as usize)
                };
                let lookup = |x: &FieldElem| values[index(x)] % field.p();
                let form = Self::from_gram(field, polarize(field, lookup))?;
                form.check_against(lookup)?;
                Ok(form)
            }
        }
    }

    fn check_against(&self, eval: impl Fn(&FieldElem) -> u32) -> Result<()> {
        for x in self.field.elements() {
            let expect = eval(&x);
            if self.eval(&x) != expect {
                return Err(Error::NotQuadratic(format!(
                    "X A X^T = {} but input gives {} at {:?}",
                    self.eval(&x),
                    expect,
                    x.coeffs()
                )));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn prime_field(&self) -> PrimeField {
        self.field.prime_field()
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.field.degree()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn rank_sign(&self) -> (usize, Sign) {
        (self.rank, self.sign)
    }

    /// (M, λ) with M A M^T = diag(λ, 0, ..., 0).
    pub fn diagonalize(&self) -> (&Mat, &[u32]) {
        (&self.diag_transform, &self.lambdas)
    }

    pub fn radical(&self) -> &Subspace {
        &self.radical
    }

    pub fn eval_coords(&self, x: &[u32]) -> u32 {
        self.gram.bilinear(x, x, self.prime_field())
    }

    pub fn eval(&self, x: &FieldElem) -> u32 {
        self.eval_coords(x.coeffs())
    }

    /// F(x, y) = ½(f(x+y) − f(x) − f(y)) = X A Y^T.
    pub fn bilinear_coords(&self, x: &[u32], y: &[u32]) -> u32 {
        self.gram.bilinear(x, y, self.prime_field())
    }

    pub fn bilinear(&self, x: &FieldElem, y: &FieldElem) -> u32 {
        self.bilinear_coords(x.coeffs(), y.coeffs())
    }

    /// L_f(x) in trace-dual coordinates: X·A.
    pub fn lf_apply(&self, x: &FieldElem) -> Vec<u32> {
        self.gram.vec_mul(x.coeffs(), self.prime_field())
    }

    /// Whether b ∈ S_f = Im L_f (b in ordinary coordinates).
    pub fn in_image(&self, b: &[u32]) -> bool {
        self.solve_xb_coords(b).is_some()
    }

    /// Some x_b with L_f(x_b) = −b/2, or `None` when b ∉ S_f.
    pub fn solve_xb(&self, b: &FieldElem) -> Option<FieldElem> {
        self.solve_xb_coords(b.coeffs())
            .map(|x| self.field.uncoords(&x).expect("solution has field length"))
    }

    /// Coordinate version of [`QuadForm::solve_xb`]: solves X·A = −½·(B·T).
    pub fn solve_xb_coords(&self, b: &[u32]) -> Option<Vec<u32>> {
        let fp = self.prime_field();
        let dual = self.field.trace_gram().vec_mul(b, fp);
        let c = fp.neg(fp.half());
        let target: Vec<u32> = dual.iter().map(|&d| fp.mul(c, d)).collect();
        self.gram.solve_left(&target, fp)
    }

    /// Rank and sign of f on the row space of `basis` (any basis).
    pub fn restrict_basis(&self, basis: &Mat) -> RestrictedForm {
        let fp = self.prime_field();
        let g = basis.mul(&self.gram, fp).mul(&basis.transpose(), fp);
        let (rank, sign) = rank_sign_of(&g, fp);
        RestrictedForm {
            dim: basis.rows(),
            rank,
            sign,
        }
    }

    pub fn restrict(&self, h: &Subspace) -> RestrictedForm {
        self.restrict_basis(h.basis())
    }

    /// Vectors of the nondegenerate part: rows of M with nonzero λ.
    fn nondegenerate_basis(&self) -> Mat {
        let rows: Vec<Vec<u32>> = (0..self.rank)
            .map(|i| self.diag_transform.row(i).to_vec())
            .collect();
        Mat::from_rows(&rows, self.dim()).expect("rows of M")
    }

    /// Splits off up to `max_pairs` hyperbolic planes from the nondegenerate
    /// subspace spanned by `basis`. Returns the isotropic half of each pair
    /// and a basis of the remaining orthogonal complement.
    fn split_hyperbolic(&self, mut basis: Mat, max_pairs: usize) -> (Vec<Vec<u32>>, Mat) {
        let fp = self.prime_field();
        let mut isotropic = Vec::new();
        while isotropic.len() < max_pairs && basis.rows() >= 2 {
            let Some(v) = self.find_vector(&basis, 3, |val| val == 0) else {
                break;
            };
            let av = self.gram.vec_mul(&v, fp);
            let (wi, fvw) = (0..basis.rows())
                .map(|i| (i, dot(basis.row(i), &av, fp)))
                .find(|&(_, c)| c != 0)
                .expect("nondegenerate subspace pairs with every nonzero vector");
            let inv = fp.inv(fvw).unwrap();
            let w: Vec<u32> = basis.row(wi).iter().map(|&c| fp.mul(c, inv)).collect();
            let aw = self.gram.vec_mul(&w, fp);
            // coefficient vectors c with F(cB, v) = F(cB, w) = 0
            let k = basis.rows();
            let mut cons = Mat::zeros(2, k);
            for i in 0..k {
                cons.set(0, i, dot(basis.row(i), &av, fp));
                cons.set(1, i, dot(basis.row(i), &aw, fp));
            }
            basis = cons.null_space(fp).mul(&basis, fp);
            isotropic.push(v);
        }
        (isotropic, basis)
    }

    /// Searches combinations of the first `span` rows of `basis` for a
    /// nonzero vector whose value satisfies `accept`.
    fn find_vector(&self, basis: &Mat, span: usize, accept: impl Fn(u32) -> bool) -> Option<Vec<u32>> {
        let fp = self.prime_field();
        let k = basis.rows().min(span);
        let mut found = None;
        for_each_vector(fp.p(), k, |c| {
            if found.is_some() || c.iter().all(|&x| x == 0) {
                return;
            }
            let mut v = vec![0u32; self.dim()];
            for (i, &ci) in c.iter().enumerate() {
                for (j, x) in v.iter_mut().enumerate() {
                    *x = fp.add(*x, fp.mul(ci, basis.get(i, j)));
                }
            }
            if accept(self.eval_coords(&v)) {
                found = Some(v);
            }
        });
        found
    }

    /// A subspace of dimension e_f containing the radical on which f
    /// vanishes identically.
    pub fn isotropic_subspace(&self) -> Subspace {
        let fp = self.prime_field();
        let pairs = witt_index(self.rank, self.sign, fp);
        let (iso, _) = self.split_hyperbolic(self.nondegenerate_basis(), pairs);
        let mut rows = self.radical.basis_vectors();
        rows.extend(iso);
        let h = Subspace::span(fp, self.dim(), &rows).expect("vectors of ambient length");
        debug_assert_eq!(h.dim(), isotropic_dim(self.dim(), self.rank, self.sign, fp));
        h
    }

    /// l_0 for the rank-one construction: ⌊R_f / 2⌋.
    pub fn rank_one_dim(&self) -> usize {
        self.rank / 2
    }

    /// A subspace H meeting the radical trivially with restricted rank 1 and
    /// restricted sign η̄(a).
    ///
    /// The standard variant has dimension ⌊R_f/2⌋. With `extended` (odd R_f
    /// only) the dimension is (R_f+1)/2, which exists only when
    /// η̄(a) = η̄(−1)^{(R_f−1)/2} ε_f.
    pub fn rank_one_subspace(&self, a: u32, extended: bool) -> Result<Subspace> {
        let fp = self.prime_field();
        let a = a % fp.p();
        if a == 0 {
            return Err(Error::BadResidue(a, fp.p()));
        }
        let target = fp.eta(a);
        let (dim, pairs) = if extended {
            if self.rank.is_multiple_of(2) {
                return Err(Error::RankTooSmall(format!(
                    "extended variant needs odd rank, got {}",
                    self.rank
                )));
            }
            (self.rank.div_ceil(2), (self.rank - 1) / 2)
        } else {
            let l0 = self.rank_one_dim();
            if l0 == 0 {
                return Err(Error::RankTooSmall(format!("rank {} gives l_0 = 0", self.rank)));
            }
            (l0, l0 - 1)
        };
        let (iso, rest) = self.split_hyperbolic(self.nondegenerate_basis(), pairs);
        assert_eq!(iso.len(), pairs, "Witt index covers the required pairs");
        let u = self
            .find_vector(&rest, 3, |val| val != 0 && fp.eta(val) == target)
            .ok_or_else(|| {
                Error::RankTooSmall(format!(
                    "no vector of class η̄ = {target} orthogonal to the isotropic part"
                ))
            })?;
        let mut rows = vec![u];
        rows.extend(iso);
        let h = Subspace::span(fp, self.dim(), &rows).expect("vectors of ambient length");
        debug_assert_eq!(h.dim(), dim);
        Ok(h)
    }
}

fn dot(a: &[u32], b: &[u32], fp: PrimeField) -> u32 {
    let p = fp.p() as u64;
    (a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum::<u64>() % p) as u32
}

fn trace_poly_eval(field: &ExtField, coeffs: &[FieldElem], x: &FieldElem) -> u32 {
    let fp = field.prime_field();
    let mut acc = 0;
    let mut frob = x.clone(); // x^{p^i}
    for a in coeffs {
        let term = field.mul(a, &field.mul(&frob, x));
        acc = fp.add(acc, field.trace(&term));
        frob = field.pow(&frob, field.p() as u64);
    }
    acc
}

/// Gram matrix from values: A[i][j] = ½(f(v_i+v_j) − f(v_i) − f(v_j)).
fn polarize(field: &ExtField, eval: impl Fn(&FieldElem) -> u32) -> Mat {
    let fp = field.prime_field();
    let s = field.degree();
    let basis: Vec<FieldElem> = (0..s).map(|j| field.basis_elem(j)).collect();
    let diag: Vec<u32> = basis.iter().map(&eval).collect();
    let mut a = Mat::zeros(s, s);
    for i in 0..s {
        a.set(i, i, diag[i]);
        for j in (i + 1)..s {
            let both = eval(&field.add(&basis[i], &basis[j]));
            let v = fp.mul(fp.half(), fp.sub(fp.sub(both, diag[i]), diag[j]));
            a.set(i, j, v);
            a.set(j, i, v);
        }
    }
    a
}
