//! Exact arithmetic in Z[ζ_p] and the character sums built on it.
//!
//! Elements are integer vectors on the basis {1, ζ, ..., ζ^{p−2}}; ζ^{p−1} is
//! rewritten as −(1 + ζ + ... + ζ^{p−2}), which makes the representation
//! canonical. Coefficients are i64: the direct sums have at most p^s ≤ 3^7
//! unit terms, and the closed forms multiply at most (p*)^{s/2} p^s, far below
//! 2^63 for every field handled here.

use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{self, Q};
use crate::gf::{FieldElem, PrimeField};
use crate::quadform::QuadForm;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<i64>,
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        CycInt {
            p,
            coeffs: vec![0; p as usize - 1],
        }
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        let mut z = CycInt::zero(p);
        z.coeffs[0] = n;
        z
    }

    pub fn one(p: u32) -> Self {
        CycInt::from_int(p, 1)
    }

    /// Σ_k full[k] ζ^k for a coefficient list of length p.
    pub fn from_full(p: u32, full: &[i64]) -> Self {
        assert_eq!(full.len(), p as usize);
        let top = full[p as usize - 1];
        CycInt {
            p,
            coeffs: full[..p as usize - 1].iter().map(|&c| c - top).collect(),
        }
    }

    /// ζ^k, exponent taken mod p.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        let mut full = vec![0i64; p as usize];
        full[k.rem_euclid(p as i64) as usize] = 1;
        CycInt::from_full(p, &full)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Length-p coefficient list with a zero top entry.
    pub fn to_full(&self) -> Vec<i64> {
        let mut full = self.coeffs.clone();
        full.push(0);
        full
    }

    /// The rational integer this element equals, if any.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CycInt::one(self.p);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// σ_z: ζ ↦ ζ^z.
    pub fn galois(&self, z: u32) -> Result<Self> {
        let p = self.p;
        if z.is_multiple_of(p) {
            return Err(Error::BadResidue(z, p));
        }
        let mut full = vec![0i64; p as usize];
        for (k, &c) in self.coeffs.iter().enumerate() {
            let e = (k as u64 * z as u64 % p as u64) as usize;
            full[e] += c;
        }
        Ok(CycInt::from_full(p, &full))
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p);
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p);
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.scale(-1)
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p);
        let p = self.p as usize;
        let mut full = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                full[(i + j) % p] += a * b;
            }
        }
        CycInt::from_full(self.p, &full)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycInt {
            type Output = CycInt;
            fn $m(self, rhs: CycInt) -> CycInt {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// g = Σ_{x∈F_p} ζ^{x²}, the element with g² = p*.
pub fn gauss_sqrt(fp: PrimeField) -> CycInt {
    let p = fp.p();
    let mut full = vec![0i64; p as usize];
    for x in 0..p {
        full[fp.mul(x, x) as usize] += 1;
    }
    CycInt::from_full(p, &full)
}

/// (p*)^{m/2}, realized with the Gauss sum for odd m.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedHalfPower {
    pub fp: PrimeField,
    pub m: u32,
}

impl SignedHalfPower {
    pub fn new(fp: PrimeField, m: u32) -> Self {
        SignedHalfPower { fp, m }
    }

    pub fn value(&self) -> CycInt {
        let p = self.fp.p();
        let int_part = CycInt::from_int(p, self.fp.pstar().pow(self.m / 2));
        if self.m.is_multiple_of(2) {
            int_part
        } else {
            &int_part * &gauss_sqrt(self.fp)
        }
    }
}

/// Σ_{y∈F_p^*} σ_y((p*)^{r/2} ζ^z), evaluated in Z[ζ_p] and checked against
/// η̄(−z) p^r (p*)^{−(r−1)/2} (odd r) or υ(z) p^r (p*)^{−r/2} (even r).
pub fn sigma_orbit_sum(fp: PrimeField, r: u32, z: u32) -> Result<i64> {
    let p = fp.p();
    let base = &SignedHalfPower::new(fp, r).value() * &CycInt::zeta_pow(p, z as i64);
    let mut acc = CycInt::zero(p);
    for y in 1..p {
        acc = &acc + &base.galois(y)?;
    }
    let direct = acc
        .as_integer()
        .ok_or_else(|| Error::OracleMismatch(format!("orbit sum {acc:?} is not rational")))?;
    let r = r as i64;
    let closed = if r % 2 == 1 {
        exact::int(fp.eta(fp.neg(z))) * exact::p_pow(fp, r) * exact::pstar_pow(fp, -(r - 1) / 2)
    } else {
        exact::int(fp.upsilon(z)) * exact::p_pow(fp, r) * exact::pstar_pow(fp, -r / 2)
    };
    if closed != exact::int(direct) {
        return Err(Error::OracleMismatch(format!(
            "orbit sum p={p} r={r} z={z}: direct {direct}, closed {closed}"
        )));
    }
    Ok(direct)
}

/// Σ_x ζ^{f(x) − Tr(bx)} by summation over F_q.
pub fn weil_sum_direct(f: &QuadForm, b: &FieldElem) -> CycInt {
    let field = f.field();
    let fp = field.prime_field();
    let dual = field.dual_coords(b);
    let mut counts = vec![0i64; fp.p() as usize];
    crate::gf::for_each_vector(fp.p(), field.degree(), |x| {
        let tr = dual
            .iter()
            .zip(x)
            .fold(0u32, |acc, (&d, &c)| fp.add(acc, fp.mul(d, c)));
        counts[fp.sub(f.eval_coords(x), tr) as usize] += 1;
    });
    CycInt::from_full(fp.p(), &counts)
}

/// 0 when b ∉ S_f, else ε_f (p*)^{R_f/2} p^{s−R_f} ζ^{−f(x_b)}.
pub fn weil_sum_closed(f: &QuadForm, b: &FieldElem) -> CycInt {
    let fp = f.prime_field();
    let p = fp.p();
    let Some(xb) = f.solve_xb(b) else {
        return CycInt::zero(p);
    };
    let (rank, sign) = f.rank_sign();
    let scale = sign.value() * (p as i64).pow((f.dim() - rank) as u32);
    let half = SignedHalfPower::new(fp, rank as u32).value().scale(scale);
    &half * &CycInt::zeta_pow(p, -(f.eval(&xb) as i64))
}

/// Weil sum, evaluated directly and in closed form; the two must agree.
pub fn weil_sum(f: &QuadForm, b: &FieldElem) -> Result<CycInt> {
    let direct = weil_sum_direct(f, b);
    let closed = weil_sum_closed(f, b);
    if direct != closed {
        return Err(Error::OracleMismatch(format!(
            "Weil sum at b={:?}: direct {direct:?}, closed {closed:?}",
            b.coeffs()
        )));
    }
    Ok(direct)
}

pub fn subspace_char_sum_direct(f: &QuadForm, h: &Subspace) -> CycInt {
    let p = f.prime_field().p();
    let mut counts = vec![0i64; p as usize];
    h.for_each_element(|x| counts[f.eval_coords(x) as usize] += 1);
    CycInt::from_full(p, &counts)
}

/// ε_H (p*)^{R_H/2} p^{r−R_H}.
pub fn subspace_char_sum_closed(f: &QuadForm, h: &Subspace) -> CycInt {
    let fp = f.prime_field();
    let r = f.restrict(h);
    let scale = r.sign.value() * (fp.p() as i64).pow((r.dim - r.rank) as u32);
    SignedHalfPower::new(fp, r.rank as u32).value().scale(scale)
}

/// Σ_{x∈H} ζ^{f(x)}, evaluated directly and in closed form.
pub fn subspace_char_sum(f: &QuadForm, h: &Subspace) -> Result<CycInt> {
    let direct = subspace_char_sum_direct(f, h);
    let closed = subspace_char_sum_closed(f, h);
    if direct != closed {
        return Err(Error::OracleMismatch(format!(
            "subspace sum on {:?}: direct {direct:?}, closed {closed:?}",
            h.basis_vectors()
        )));
    }
    Ok(direct)
}

/// |H ∩ D_β| by the level-set closed form in (R_H, ε_H).
pub fn level_set_count(f: &QuadForm, h: &Subspace, beta: u32) -> Result<u64> {
    let fp = f.prime_field();
    let r = f.restrict(h);
    let dim = r.dim as i64;
    let rank = r.rank as i64;
    let eps = exact::int(r.sign.value());
    let q: Q = if rank % 2 == 0 {
        exact::p_pow(fp, dim - 1)
            * (exact::int(1) + exact::int(fp.upsilon(beta)) * eps * exact::pstar_pow(fp, -rank / 2))
    } else {
        exact::p_pow(fp, dim - 1)
            * (exact::int(1) + exact::int(fp.eta(beta)) * eps * exact::pstar_pow(fp, -(rank - 1) / 2))
    };
    exact::as_integer(&q)
        .filter(|&n| n >= 0)
        .map(|n| n as u64)
        .ok_or_else(|| Error::OracleMismatch(format!("level-set count {q} is not a count")))
}

pub fn level_set_count_direct(f: &QuadForm, h: &Subspace, beta: u32) -> u64 {
    let mut n = 0;
    h.for_each_element(|x| {
        if f.eval_coords(x) == beta {
            n += 1;
        }
    });
    n
}
