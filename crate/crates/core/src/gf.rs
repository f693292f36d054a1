//! Prime-field and extension-field arithmetic over odd characteristic.
//!
//! Extension fields use the polynomial basis `{1, α, ..., α^{s-1}}` of the
//! chosen modulus, so an element is its coefficient vector (constant term
//! first) and `coords`/`uncoords` are the identity on that vector.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Mat;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_p for an odd prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if p > u32::MAX as u64 / 2 {
            return Err(Error::BadDims(format!("prime {p} is too large")));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// The inverse of 2.
    #[inline]
    pub fn half(&self) -> u32 {
        self.p.div_ceil(2)
    }

    /// Quadratic character η̄ via Euler's criterion, with η̄(0) = 0.
    pub fn eta(&self, a: u32) -> i64 {
        let a = a % self.p;
        if a == 0 {
            return 0;
        }
        if self.pow(a, (self.p as u64 - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// υ(0) = p − 1, υ(z) = −1 otherwise.
    pub fn upsilon(&self, a: u32) -> i64 {
        if a.is_multiple_of(self.p) {
            self.p as i64 - 1
        } else {
            -1
        }
    }

    /// p* = (−1)^{(p−1)/2} p.
    pub fn pstar(&self) -> i64 {
        self.pstar_sign() * self.p as i64
    }

    /// η̄(−1) = (−1)^{(p−1)/2}.
    pub fn pstar_sign(&self) -> i64 {
        if self.p % 4 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn least_nonsquare(&self) -> u32 {
        (2..self.p).find(|&a| self.eta(a) == -1).expect("odd prime has a non-square")
    }

    /// Some square root of `a` when it is a square.
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        let a = a % self.p;
        (0..self.p).find(|&x| self.mul(x, x) == a)
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.p
    }
}

/// Calls `visit` on every vector of F_p^m in lexicographic order (first
/// coordinate most significant).
pub fn for_each_vector(p: u32, m: usize, mut visit: impl FnMut(&[u32])) {
    let mut v = vec![0u32; m];
    loop {
        visit(&v);
        let mut i = m;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < p {
                break;
            }
            v[i] = 0;
        }
    }
}

/// All vectors of F_p^m in lexicographic order.
pub fn lex_vectors(p: u32, m: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity((p as usize).pow(m as u32));
    for_each_vector(p, m, |v| out.push(v.to_vec()));
    out
}

/// An element of F_{p^s} as its coordinate vector in the polynomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldElem(Vec<u32>);

impl FieldElem {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// F_{p^s} = F_p[x]/(modulus).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    fp: PrimeField,
    s: usize,
    /// Little-endian, monic, length s + 1.
    modulus: Vec<u32>,
    /// Tr(α^j) for j < s.
    trace_coords: Vec<u32>,
    /// T[i][j] = Tr(α^i α^j); Tr(xy) = X T Y^T.
    trace_gram: Mat,
}

impl ExtField {
    /// Builds F_{p^s}. Without a modulus the lexicographically least monic
    /// irreducible polynomial (compared constant term first) is used.
    pub fn new(p: u64, s: usize, modulus: Option<Vec<u32>>) -> Result<Self> {
        let fp = PrimeField::new(p)?;
        if s == 0 {
            return Err(Error::BadDims("extension degree must be at least 1".into()));
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != s + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected {} coefficients for degree {s}, got {}",
                        s + 1,
                        m.len()
                    )));
                }
                if m[s] != 1 {
                    return Err(Error::BadModulus("modulus must be monic".into()));
                }
                if m.iter().any(|&c| c >= fp.p()) {
                    return Err(Error::BadModulus("coefficient out of range".into()));
                }
                if !is_irreducible(fp, &m) {
                    return Err(Error::ReducibleModulus(m, fp.p()));
                }
                m
            }
            None => least_irreducible(fp, s),
        };
        let mut field = ExtField {
            fp,
            s,
            modulus,
            trace_coords: Vec::new(),
            trace_gram: Mat::zeros(0, 0),
        };
        field.trace_coords = (0..s)
            .map(|j| field.trace_by_frobenius(&field.basis_elem(j)))
            .collect();
        let mut t = Mat::zeros(s, s);
        for i in 0..s {
            for j in 0..s {
                let prod = field.mul(&field.basis_elem(i), &field.basis_elem(j));
                t.set(i, j, field.trace(&prod));
            }
        }
        field.trace_gram = t;
        Ok(field)
    }

    pub fn prime_field(&self) -> PrimeField {
        self.fp
    }

    pub fn p(&self) -> u32 {
        self.fp.p()
    }

    pub fn degree(&self) -> usize {
        self.s
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        (self.p() as u64).pow(self.s as u32)
    }

    pub fn trace_gram(&self) -> &Mat {
        &self.trace_gram
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(vec![0; self.s])
    }

    pub fn one(&self) -> FieldElem {
        self.from_prime(1)
    }

    pub fn from_prime(&self, c: u32) -> FieldElem {
        let mut v = vec![0; self.s];
        v[0] = c % self.p();
        FieldElem(v)
    }

    /// The basis element α^j.
    pub fn basis_elem(&self, j: usize) -> FieldElem {
        let mut v = vec![0; self.s];
        v[j] = 1;
        FieldElem(v)
    }

    pub fn coords(&self, x: &FieldElem) -> Vec<u32> {
        x.0.clone()
    }

    pub fn uncoords(&self, v: &[u32]) -> Result<FieldElem> {
        if v.len() != self.s {
            return Err(Error::DimensionMismatch {
                expected: self.s,
                got: v.len(),
            });
        }
        if v.iter().any(|&c| c >= self.p()) {
            return Err(Error::BadDims(format!("coordinate out of range in {v:?}")));
        }
        Ok(FieldElem(v.to_vec()))
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().zip(&b.0).map(|(&x, &y)| self.fp.add(x, y)).collect())
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().zip(&b.0).map(|(&x, &y)| self.fp.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().map(|&x| self.fp.neg(x)).collect())
    }

    pub fn scale(&self, c: u32, a: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().map(|&x| self.fp.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let s = self.s;
        let fp = self.fp;
        let mut prod = vec![0u32; 2 * s - 1];
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                prod[i + j] = fp.add(prod[i + j], fp.mul(ai, bj));
            }
        }
        // x^s ≡ −(m_0 + m_1 x + ... + m_{s−1} x^{s−1})
        for k in (s..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..s {
                let t = fp.mul(c, self.modulus[j]);
                prod[k - s + j] = fp.sub(prod[k - s + j], t);
            }
        }
        prod.truncate(s);
        FieldElem(prod)
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Absolute trace to F_p, evaluated as a linear functional on coordinates.
    pub fn trace(&self, x: &FieldElem) -> u32 {
        self.trace_coords_of(&x.0)
    }

    pub fn trace_coords_of(&self, v: &[u32]) -> u32 {
        let p = self.p() as u64;
        let acc: u64 = v
            .iter()
            .zip(&self.trace_coords)
            .map(|(&c, &t)| c as u64 * t as u64)
            .sum();
        (acc % p) as u32
    }

    /// x + x^p + ... + x^{p^{s−1}} computed with Frobenius powers.
    pub fn trace_by_frobenius(&self, x: &FieldElem) -> u32 {
        let mut acc = self.zero();
        let mut term = x.clone();
        for _ in 0..self.s {
            acc = self.add(&acc, &term);
            term = self.pow(&term, self.p() as u64);
        }
        debug_assert!(acc.0[1..].iter().all(|&c| c == 0), "trace left F_p");
        acc.0[0]
    }

    /// Row vector φ with Tr(b y) = φ · Y^T for every y.
    pub fn dual_coords(&self, b: &FieldElem) -> Vec<u32> {
        self.trace_gram.vec_mul(&b.0, self.fp)
    }

    /// Every element, in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<FieldElem> {
        lex_vectors(self.p(), self.s).into_iter().map(FieldElem).collect()
    }
}

/// Remainder of `a` modulo monic `m`, both little-endian.
fn poly_rem(fp: PrimeField, a: &[u32], m: &[u32]) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (j, &mj) in m.iter().enumerate() {
                r[shift + j] = fp.sub(r[shift + j], fp.mul(lead, mj));
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree ≤ deg/2.
pub fn is_irreducible(fp: PrimeField, modulus: &[u32]) -> bool {
    let deg = modulus.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let mut reducible = false;
        for_each_vector(fp.p(), d, |low| {
            if reducible {
                return;
            }
            let mut divisor = low.to_vec();
            divisor.push(1);
            if poly_rem(fp, modulus, &divisor).iter().all(|&c| c == 0) {
                reducible = true;
            }
        });
        if reducible {
            return false;
        }
    }
    true
}

fn least_irreducible(fp: PrimeField, s: usize) -> Vec<u32> {
    let mut found = None;
    for_each_vector(fp.p(), s, |low| {
        if found.is_some() {
            return;
        }
        let mut m = low.to_vec();
        m.push(1);
        if is_irreducible(fp, &m) {
            found = Some(m);
        }
    });
    found.expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_field_examples() {
        let f3 = ExtField::new(3, 1, None).unwrap();
        assert_eq!(f3.modulus(), &[0, 1]);
        assert!(ExtField::new(3, 2, Some(vec![1, 0, 1])).is_ok());
        assert_eq!(
            ExtField::new(3, 2, Some(vec![2, 0, 1])),
            Err(Error::ReducibleModulus(vec![2, 0, 1], 3))
        );
        assert_eq!(ExtField::new(9, 1, None), Err(Error::NonPrime(9)));
        assert_eq!(ExtField::new(2, 1, None), Err(Error::EvenCharacteristic));
        assert!(matches!(ExtField::new(3, 2, Some(vec![1, 0, 2])), Err(Error::BadModulus(_))));
    }

    #[test]
    fn default_modulus_is_least_irreducible() {
        assert_eq!(ExtField::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
        // x^3 + 2x + 1 is the first cubic without roots mod 3 in this order
        let f27 = ExtField::new(3, 3, None).unwrap();
        let m = f27.modulus().to_vec();
        for c in 0..3u32 {
            let v = (m[0] + m[1] * c + m[2] * c * c + c * c * c) % 3;
            assert_ne!(v, 0);
        }
    }

    #[test]
    fn trace_examples() {
        let f9 = ExtField::new(3, 2, Some(vec![1, 0, 1])).unwrap();
        assert_eq!(f9.trace(&f9.zero()), 0);
        for c in 0..3 {
            assert_eq!(f9.trace(&f9.from_prime(c)), (2 * c) % 3);
        }
        let alpha = f9.uncoords(&[0, 1]).unwrap();
        assert_eq!(f9.trace(&alpha), 0);
    }

    #[test]
    fn coords_examples() {
        let f9 = ExtField::new(3, 2, Some(vec![1, 0, 1])).unwrap();
        assert_eq!(f9.coords(&f9.zero()), vec![0, 0]);
        let x = f9.uncoords(&[1, 2]).unwrap();
        assert_eq!(f9.coords(&x), vec![1, 2]);
        assert_eq!(
            f9.uncoords(&[1, 2, 0]),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        );
    }

    #[test]
    fn trace_is_linear_balanced_and_frobenius_stable() {
        for (p, s) in [(3u64, 1usize), (3, 2), (3, 3), (5, 1), (5, 2), (5, 3)] {
            let f = ExtField::new(p, s, None).unwrap();
            let fp = f.prime_field();
            let elems = f.elements();
            let mut fibers = vec![0u64; p as usize];
            for x in &elems {
                let t = f.trace(x);
                assert_eq!(t, f.trace_by_frobenius(x));
                fibers[t as usize] += 1;
                if f.order() <= 729 {
                    assert_eq!(f.trace(&f.pow(x, p)), t);
                }
                for c in 0..p as u32 {
                    assert_eq!(f.trace(&f.scale(c, x)), fp.mul(c, t));
                }
            }
            assert!(fibers.iter().all(|&n| n == p.pow(s as u32 - 1)));
            for x in elems.iter().step_by(3) {
                for y in elems.iter().step_by(5) {
                    assert_eq!(f.trace(&f.add(x, y)), fp.add(f.trace(x), f.trace(y)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_smoke() {
        let f = ExtField::new(5, 2, None).unwrap();
        let elems = f.elements();
        for x in &elems {
            if !x.is_zero() {
                // x^{q-1} = 1
                assert_eq!(f.pow(x, f.order() - 1), f.one());
            }
        }
    }

    #[test]
    fn legendre_by_euler() {
        let f = PrimeField::new(7).unwrap();
        let squares: Vec<u32> = (1..7).map(|x| f.mul(x, x)).collect();
        for a in 1..7 {
            assert_eq!(f.eta(a) == 1, squares.contains(&a));
        }
        assert_eq!(f.eta(0), 0);
        assert_eq!(PrimeField::new(3).unwrap().eta(2), -1);
    }
}
