//! Exact rational arithmetic for closed forms containing (p*)^{k} with
//! negative k. Denominators are powers of p, so every comparison is exact.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::gf::PrimeField;

pub type Q = Ratio<i128>;

pub fn int(n: i64) -> Q {
    Q::from_integer(n as i128)
}

/// p^e for any integer e.
pub fn p_pow(fp: PrimeField, e: i64) -> Q {
    let base = Q::from_integer(fp.p() as i128);
    pow(base, e)
}

/// (p*)^e for any integer e.
pub fn pstar_pow(fp: PrimeField, e: i64) -> Q {
    pow(Q::from_integer(fp.pstar() as i128), e)
}

fn pow(base: Q, e: i64) -> Q {
    let mut acc = Q::one();
    for _ in 0..e.unsigned_abs() {
        acc *= base;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// The integer value, or `None` when `q` has a denominator.
pub fn as_integer(q: &Q) -> Option<i128> {
    if q.is_integer() {
        Some(q.to_integer())
    } else {
        None
    }
}

pub fn is_nonneg(q: &Q) -> bool {
    *q >= Q::zero()
}
