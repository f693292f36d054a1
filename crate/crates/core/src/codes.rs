//! The code C_D: defining set, generator matrix, weight distributions.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{self, Q};
use crate::gf::{for_each_vector, PrimeField};
use crate::matrix::Mat;
use crate::quadform::{QuadForm, Sign};
use crate::subspace::{PairSpaceCtx, PointSet};

/// Brute-force enumeration guard on the number of messages p^s.
pub const DEFAULT_BRUTE_LIMIT: u128 = 1_000_000;

/// D = {(x, y) ≠ (0, 0) : f(x) + g(y) = 0} as concatenated coordinate
/// vectors in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefiningSet {
    points: PointSet,
}

impl DefiningSet {
    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }
}

fn check_forms(ctx: &PairSpaceCtx, f: &QuadForm, g: &QuadForm) -> Result<()> {
    if f.field() != ctx.field1() || g.field() != ctx.field2() {
        return Err(Error::Config("forms are not defined over the context's fields".into()));
    }
    Ok(())
}

pub fn build_defining_set(ctx: &PairSpaceCtx, f: &QuadForm, g: &QuadForm) -> Result<DefiningSet> {
    check_forms(ctx, f, g)?;
    let fp = ctx.prime_field();
    let gy: Vec<(Vec<u32>, u32)> = crate::gf::lex_vectors(fp.p(), ctx.s2())
        .into_iter()
        .map(|y| {
            let v = g.eval_coords(&y);
            (y, v)
        })
        .collect();
    let mut points = PointSet::new(ctx.s());
    let mut buf = vec![0u32; ctx.s()];
    for_each_vector(fp.p(), ctx.s1(), |x| {
        let fx = f.eval_coords(x);
        let x_zero = x.iter().all(|&c| c == 0);
        buf[..ctx.s1()].copy_from_slice(x);
        for (y, gv) in &gy {
            if fp.add(fx, *gv) != 0 || (x_zero && y.iter().all(|&c| c == 0)) {
                continue;
            }
            buf[ctx.s1()..].copy_from_slice(y);
            points.push(&buf);
        }
    });
    Ok(DefiningSet { points })
}

/// Weight → multiplicity, including the zero word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct WeightDist(BTreeMap<u64, u64>);

impl WeightDist {
    pub fn new() -> Self {
        WeightDist(BTreeMap::new())
    }

    pub fn add(&mut self, weight: u64, count: u64) {
        *self.0.entry(weight).or_insert(0) += count;
    }

    pub fn get(&self, weight: u64) -> u64 {
        self.0.get(&weight).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.0.iter().map(|(&w, &a)| (w, a))
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn nonzero_weights(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().copied().filter(|&w| w > 0)
    }

    fn merge(mut self, other: WeightDist) -> WeightDist {
        for (w, a) in other.0 {
            self.add(w, a);
        }
        self
    }
}

impl<const N: usize> From<[(u64, u64); N]> for WeightDist {
    fn from(rows: [(u64, u64); N]) -> Self {
        let mut wd = WeightDist::new();
        for (w, a) in rows {
            wd.add(w, a);
        }
        wd
    }
}

/// The code C_D together with its generator matrix.
#[derive(Clone, Debug)]
pub struct CodeCD {
    ctx: PairSpaceCtx,
    f: QuadForm,
    g: QuadForm,
    defining_set: DefiningSet,
    /// s × n; row j is the codeword of the j-th unit message.
    generator: Mat,
}

impl CodeCD {
    pub fn new(ctx: &PairSpaceCtx, f: &QuadForm, g: &QuadForm) -> Result<Self> {
        let defining_set = build_defining_set(ctx, f, g)?;
        let fp = ctx.prime_field();
        let s = ctx.s();
        let n = defining_set.n();
        // column i = pairing · point_i^T
        let mut generator = Mat::zeros(s, n);
        for (i, pt) in defining_set.points().iter().enumerate() {
            let col = ctx.pairing_gram().vec_mul(pt, fp);
            for (j, &c) in col.iter().enumerate() {
                generator.set(j, i, c);
            }
        }
        Ok(CodeCD {
            ctx: ctx.clone(),
            f: f.clone(),
            g: g.clone(),
            defining_set,
            generator,
        })
    }

    pub fn ctx(&self) -> &PairSpaceCtx {
        &self.ctx
    }

    pub fn f(&self) -> &QuadForm {
        &self.f
    }

    pub fn g(&self) -> &QuadForm {
        &self.g
    }

    pub fn defining_set(&self) -> &DefiningSet {
        &self.defining_set
    }

    pub fn n(&self) -> usize {
        self.defining_set.n()
    }

    pub fn s(&self) -> usize {
        self.ctx.s()
    }

    pub fn prime_field(&self) -> PrimeField {
        self.ctx.prime_field()
    }

    pub fn generator(&self) -> &Mat {
        &self.generator
    }

    /// (Tr(x x_i) + Tr(y y_i))_i for the message (x, y) in coordinates.
    pub fn codeword(&self, message: &[u32]) -> Vec<u32> {
        if self.n() == 0 {
            return Vec::new();
        }
        self.generator.vec_mul(message, self.prime_field())
    }

    /// Rank of the message → codeword map.
    pub fn dimension(&self) -> usize {
        if self.n() == 0 {
            0
        } else {
            self.generator.rank(self.prime_field())
        }
    }

    pub fn rank(&self) -> usize {
        self.f.rank() + self.g.rank()
    }

    pub fn sign(&self) -> Sign {
        self.f.sign() * self.g.sign()
    }

    /// Enumerates all p^s messages. Workers own disjoint message ranges
    /// (split on the leading coordinates) and merge private histograms.
    pub fn weight_distribution_bruteforce(&self, limit: u128) -> Result<WeightDist> {
        let p = self.prime_field().p();
        let s = self.s();
        let size = (p as u128).pow(s as u32);
        if size > limit {
            return Err(Error::TooLarge { size, limit });
        }
        if self.n() == 0 {
            return Ok(WeightDist::from([(0, size as u64)]));
        }
        let lead = s.min(2);
        let prefixes = crate::gf::lex_vectors(p, lead);
        let wd = prefixes
            .par_iter()
            .map(|prefix| {
                let mut local = WeightDist::new();
                let mut msg = vec![0u32; s];
                msg[..lead].copy_from_slice(prefix);
                for_each_vector(p, s - lead, |rest| {
                    msg[lead..].copy_from_slice(rest);
                    let w = self.codeword(&msg).iter().filter(|&&c| c != 0).count();
                    local.add(w as u64, 1);
                });
                local
            })
            .reduce(WeightDist::new, WeightDist::merge);
        Ok(wd)
    }

    /// Generator matrix as CSV: s rows, n columns, no header.
    /// s rows of n comma-separated entries; empty when n = 0.
    pub fn generator_csv(&self) -> String {
        let mut out = String::new();
        if self.generator.cols() == 0 {
            return out;
        }
        for j in 0..self.generator.rows() {
            let row: Vec<String> = self.generator.row(j).iter().map(|c| c.to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn integral(q: Q, what: &str) -> Result<u64> {
    exact::as_integer(&q)
        .filter(|&n| n >= 0)
        .map(|n| n as u64)
        .ok_or_else(|| Error::NonIntegerWeight(format!("{what} = {q}")))
}

/// n = p^{s−1} − 1 for odd R; p^{s−1} − 1 + (p−1)p^{s−1} ε (p*)^{−R/2} for even R.
pub fn predicted_length(fp: PrimeField, s: usize, rank: usize, sign: Sign) -> Result<u64> {
    let s = s as i64;
    let r = rank as i64;
    let base = exact::p_pow(fp, s - 1) - exact::int(1);
    let q = if r % 2 == 1 {
        base
    } else {
        base + exact::int(fp.p() as i64 - 1)
            * exact::p_pow(fp, s - 1)
            * exact::int(sign.value())
            * exact::pstar_pow(fp, -r / 2)
    };
    integral(q, "length")
}

/// The three nonzero-weight rows of the weight-distribution table for the
/// parity of R, as exact (weight, multiplicity) pairs.
pub fn predicted_rows(fp: PrimeField, s: usize, rank: usize, sign: Sign) -> [(Q, Q); 3] {
    let p = fp.p() as i64;
    let s = s as i64;
    let r = rank as i64;
    let one = exact::int(1);
    let eps = exact::int(sign.value());
    let w0 = exact::int(p - 1) * exact::p_pow(fp, s - 2);
    if r % 2 == 1 {
        let t = eps * exact::pstar_pow(fp, -(r - 1) / 2);
        let half = Q::new(1, 2);
        [
            (w0, exact::p_pow(fp, s) - exact::p_pow(fp, r) + exact::p_pow(fp, r - 1) - one),
            (w0 * (one - t), half * exact::int(p - 1) * exact::p_pow(fp, r - 1) * (one + t)),
            (w0 * (one + t), half * exact::int(p - 1) * exact::p_pow(fp, r - 1) * (one - t)),
        ]
    } else {
        let t = eps * exact::pstar_pow(fp, -r / 2);
        let one_minus_inv_p = one - exact::p_pow(fp, -1);
        [
            (
                w0,
                exact::p_pow(fp, r - 1) - one + eps * one_minus_inv_p * exact::pstar_pow(fp, r / 2),
            ),
            (w0 * (one + exact::int(p - 1) * t), exact::p_pow(fp, s) - exact::p_pow(fp, r)),
            (w0 * (one + exact::int(p) * t), one_minus_inv_p * exact::p_pow(fp, r) * (one - t)),
        ]
    }
}

/// Table prediction of the full weight distribution (zero word included).
/// Rows with zero multiplicity are dropped; a non-integral or negative entry
/// is an error.
pub fn weight_distribution_predicted(
    fp: PrimeField,
    s: usize,
    rank: usize,
    sign: Sign,
) -> Result<WeightDist> {
    let mut wd = WeightDist::from([(0, 1)]);
    for (w, a) in predicted_rows(fp, s, rank, sign) {
        let a = integral(a, "multiplicity")?;
        if a == 0 {
            continue;
        }
        wd.add(integral(w, "weight")?, a);
    }
    Ok(wd)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityCheck {
    /// p · w_min > (p − 1) · w_max
    pub holds: bool,
    pub w_min: u64,
    pub w_max: u64,
}

/// The w_min / w_max > (p − 1)/p sufficient condition for every nonzero
/// codeword to be minimal, compared in integers.
pub fn minimality_check(wd: &WeightDist, fp: PrimeField) -> Result<MinimalityCheck> {
    let w_min = wd.nonzero_weights().min().ok_or(Error::EmptyCode)?;
    let w_max = wd.nonzero_weights().max().ok_or(Error::EmptyCode)?;
    let p = fp.p() as u64;
    Ok(MinimalityCheck {
        holds: p * w_min > (p - 1) * w_max,
        w_min,
        w_max,
    })
}

/// Summary of a built code against the length and table predictions.
#[derive(Clone, Debug, Serialize)]
pub struct CodeReport {
    pub p: u32,
    pub s1: usize,
    pub s2: usize,
    pub rank_f: usize,
    pub sign_f: Sign,
    pub rank_g: usize,
    pub sign_g: Sign,
    pub n: usize,
    pub dimension: usize,
    pub predicted_length: Option<u64>,
    pub length_matches: bool,
    pub warnings: Vec<String>,
}

impl CodeReport {
    pub fn new(code: &CodeCD) -> Self {
        let fp = code.prime_field();
        let predicted = predicted_length(fp, code.s(), code.rank(), code.sign()).ok();
        let mut warnings = Vec::new();
        if code.n() == 0 {
            warnings.push("defining set is empty (n = 0)".to_string());
        }
        let dimension = code.dimension();
        if dimension < code.s() {
            warnings.push(format!(
                "dimension {dimension} < s = {}; the table and hierarchy formulas assume full dimension",
                code.s()
            ));
        }
        CodeReport {
            p: fp.p(),
            s1: code.ctx().s1(),
            s2: code.ctx().s2(),
            rank_f: code.f().rank(),
            sign_f: code.f().sign(),
            rank_g: code.g().rank(),
            sign_g: code.g().sign(),
            n: code.n(),
            dimension,
            predicted_length: predicted,
            length_matches: predicted == Some(code.n() as u64),
            warnings,
        }
    }
}
