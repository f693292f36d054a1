//! Generalized Hamming weights of C_D.
//!
//! Exact values come from exhaustive subspace maximization:
//! d_r = n − max{|D ∩ H| : dim H = s − r} or, equivalently,
//! d_r = n + 1 − max{|N(H)| : dim H = r} with |N(H)| = |H^⊥ ∩ D| + 1.
//! Predicted values come from the rank/sign closed forms.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::codes::CodeCD;
use crate::error::{Error, Result};
use crate::exact::{self, Q};
use crate::gf::PrimeField;
use crate::matrix::Mat;
use crate::quadform::{isotropic_dim, QuadForm, Sign};
use crate::subspace::{
    enumerate_subspaces, gaussian_binomial, intersect_count, max_over_subspaces, product_subspace,
    PairSpaceCtx, Subspace,
};

/// Which weight-hierarchy closed form applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HierarchyCase {
    /// R even, ε = η̄(−1)^{R/2}.
    EvenA,
    /// R even, ε = −η̄(−1)^{R/2}.
    EvenB,
    /// R odd.
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HierarchyParams {
    #[serde(skip)]
    pub fp: PrimeField,
    pub p: u32,
    pub s1: usize,
    pub s2: usize,
    pub rank_f: usize,
    pub rank_g: usize,
    pub sign_f: Sign,
    pub sign_g: Sign,
}

impl HierarchyParams {
    pub fn new(fp: PrimeField, s1: usize, s2: usize, f: (usize, Sign), g: (usize, Sign)) -> Self {
        HierarchyParams {
            fp,
            p: fp.p(),
            s1,
            s2,
            rank_f: f.0,
            sign_f: f.1,
            rank_g: g.0,
            sign_g: g.1,
        }
    }

    pub fn from_code(code: &CodeCD) -> Self {
        HierarchyParams::new(
            code.prime_field(),
            code.ctx().s1(),
            code.ctx().s2(),
            code.f().rank_sign(),
            code.g().rank_sign(),
        )
    }

    pub fn s(&self) -> usize {
        self.s1 + self.s2
    }

    pub fn rank(&self) -> usize {
        self.rank_f + self.rank_g
    }

    pub fn sign(&self) -> Sign {
        self.sign_f * self.sign_g
    }

    pub fn e_f(&self) -> usize {
        isotropic_dim(self.s1, self.rank_f, self.sign_f, self.fp)
    }

    pub fn e_g(&self) -> usize {
        isotropic_dim(self.s2, self.rank_g, self.sign_g, self.fp)
    }

    pub fn case(&self) -> Option<HierarchyCase> {
        let r = self.rank();
        if r == 0 {
            None
        } else if r % 2 == 1 {
            Some(HierarchyCase::Odd)
        } else if self.sign().value() == self.fp.pstar_sign().pow((r / 2) as u32) {
            Some(HierarchyCase::EvenA)
        } else {
            Some(HierarchyCase::EvenB)
        }
    }
}

fn integral(q: Q, what: &str) -> Result<u64> {
    exact::as_integer(&q)
        .filter(|&n| n >= 0)
        .map(|n| n as u64)
        .ok_or_else(|| Error::NonIntegerWeight(format!("{what} = {q}")))
}

/// d_r from the closed form selected by the parity of R and the sign.
pub fn ghw_predicted(params: &HierarchyParams, r: usize) -> Result<u64> {
    let case = params.case().ok_or(Error::NoApplicableTheorem)?;
    let s = params.s();
    if r == 0 || r > s {
        return Err(Error::BadDims(format!("r = {r} outside 1..={s}")));
    }
    let fp = params.fp;
    let pp = |e: i64| exact::p_pow(fp, e);
    let p = fp.p() as i64;
    let (s, r, big_r) = (s as i64, r as i64, params.rank() as i64);
    let q = match case {
        HierarchyCase::EvenA => {
            if r < big_r / 2 {
                pp(s - 1) - pp(s - 1 - r)
            } else {
                pp(s - 1) - pp(s - r) + exact::int(p - 1) * pp(s - 1 - big_r / 2)
            }
        }
        HierarchyCase::EvenB => {
            if r == 1 {
                pp(s - 2) * exact::int(p - 1) * (exact::int(1) - pp(1 - big_r / 2))
            } else if r <= big_r / 2 {
                pp(s - 1) - pp(s - 1 - r) - exact::int(p * p - 1) * pp(s - 2 - big_r / 2)
            } else {
                pp(s - 1) - pp(s - r) - exact::int(p - 1) * pp(s - 1 - big_r / 2)
            }
        }
        HierarchyCase::Odd => {
            if r <= (big_r - 1) / 2 {
                pp(s - 1) - pp(s - 1 - r) - exact::int(p - 1) * pp(s - 2 - (big_r - 1) / 2)
            } else {
                pp(s - 1) - pp(s - r)
            }
        }
    };
    integral(q, &format!("d_{r}"))
}

/// Σ_{i<r} ⌈d_1 / p^i⌉.
pub fn griesmer_sum(d1: u64, r: usize, p: u32) -> u64 {
    let mut total = 0;
    let mut pi = 1u64;
    for _ in 0..r {
        total += d1.div_ceil(pi);
        pi = pi.saturating_mul(p as u64);
    }
    total
}

/// Checks that f(x_b) does not depend on the chosen solution of
/// L_f(x_b) = −b/2, for every b ∈ S_f.
pub fn assert_xb_well_defined(f: &QuadForm) -> Result<()> {
    let fp = f.prime_field();
    for b in f.field().elements() {
        let Some(xb) = f.solve_xb(&b) else {
            continue;
        };
        let v = f.eval(&xb);
        let mut ok = true;
        f.radical().for_each_element(|k| {
            let x: Vec<u32> = xb.coeffs().iter().zip(k).map(|(&a, &c)| fp.add(a, c)).collect();
            ok &= f.eval_coords(&x) == v;
        });
        if !ok {
            return Err(Error::OracleMismatch(format!(
                "f(x_b) depends on the solution for b = {:?}",
                b.coeffs()
            )));
        }
    }
    Ok(())
}

fn lex_index(v: &[u32], p: u32) -> usize {
    v.iter().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// f(x_u) for every u, `None` when u ∉ S_f; indexed by lexicographic rank.
fn xb_values(f: &QuadForm) -> Vec<Option<u32>> {
    f.field()
        .elements()
        .iter()
        .map(|u| f.solve_xb(u).map(|x| f.eval(&x)))
        .collect()
}

/// Counting helpers for one code: |N(H)| and S_{fg,H}(t), each evaluated
/// directly and by the closed form.
pub struct Counter<'a> {
    code: &'a CodeCD,
    f_vals: Vec<Option<u32>>,
    g_vals: Vec<Option<u32>>,
}

impl<'a> Counter<'a> {
    pub fn new(code: &'a CodeCD) -> Result<Self> {
        assert_xb_well_defined(code.f())?;
        assert_xb_well_defined(code.g())?;
        Ok(Counter {
            code,
            f_vals: xb_values(code.f()),
            g_vals: xb_values(code.g()),
        })
    }

    fn ctx(&self) -> &PairSpaceCtx {
        self.code.ctx()
    }

    fn fp(&self) -> PrimeField {
        self.code.prime_field()
    }

    /// f(x_u) + g(y_v) when (u, v) ∈ S_f × S_g.
    fn pair_value(&self, uv: &[u32]) -> Option<u32> {
        let p = self.fp().p();
        let (u, v) = self.ctx().split(uv);
        let fu = self.f_vals[lex_index(u, p)]?;
        let gv = self.g_vals[lex_index(v, p)]?;
        Some(self.fp().add(fu, gv))
    }

    /// |H^⊥ ∩ D| + 1.
    pub fn count_n_direct(&self, h: &Subspace) -> usize {
        let perp = self.ctx().orthogonal_complement(h);
        intersect_count(self.code.defining_set().points(), &perp) + 1
    }

    /// p^{s−r−1}(1 + ε (p*)^{−R/2} Σ υ(f(x_u)+g(y_v))) for even R, with
    /// η̄ and (p*)^{−(R−1)/2} for odd R; the sum runs over H ∩ (S_f × S_g).
    pub fn count_n_closed(&self, h: &Subspace) -> Result<usize> {
        let fp = self.fp();
        let params = HierarchyParams::from_code(self.code);
        let big_r = params.rank() as i64;
        let odd = big_r % 2 == 1;
        let mut sum = 0i64;
        h.for_each_element(|uv| {
            if let Some(t) = self.pair_value(uv) {
                sum += if odd { fp.eta(t) } else { fp.upsilon(t) };
            }
        });
        let e = if odd { -(big_r - 1) / 2 } else { -big_r / 2 };
        let q = exact::p_pow(fp, params.s() as i64 - h.dim() as i64 - 1)
            * (exact::int(1)
                + exact::int(params.sign().value()) * exact::pstar_pow(fp, e) * exact::int(sum));
        integral(q, "|N(H)|")
            .map(|n| n as usize)
            .map_err(|e| Error::OracleMismatch(e.to_string()))
    }

    /// |N(H)| both ways; they must agree.
    pub fn count_n(&self, h: &Subspace) -> Result<usize> {
        let direct = self.count_n_direct(h);
        let closed = self.count_n_closed(h)?;
        if direct != closed {
            return Err(Error::OracleMismatch(format!(
                "|N(H)| for H = {:?}: direct {direct}, closed {closed}",
                h.basis_vectors()
            )));
        }
        Ok(direct)
    }

    fn check_in_image(&self, f: &QuadForm, u: &Subspace, side: &str) -> Result<()> {
        for row in u.basis_vectors() {
            if !f.in_image(&row) {
                return Err(Error::BadSubspace(format!("{side}: {row:?} ∉ S")));
            }
        }
        Ok(())
    }

    /// #{(u, v) ∈ U × V : f(x_u) + g(y_v) = t} by enumeration.
    pub fn count_sfg_direct(&self, u: &Subspace, v: &Subspace, t: u32) -> Result<usize> {
        self.check_in_image(self.code.f(), u, "U")?;
        self.check_in_image(self.code.g(), v, "V")?;
        let fp = self.fp();
        let p = fp.p();
        let gv: Vec<u32> = v
            .elements()
            .iter()
            .map(|y| self.g_vals[lex_index(y, p)].expect("V ⊆ S_g"))
            .collect();
        let mut n = 0;
        u.for_each_element(|x| {
            let fu = self.f_vals[lex_index(x, p)].expect("U ⊆ S_f");
            n += gv.iter().filter(|&&g| fp.add(fu, g) == t % p).count();
        });
        Ok(n)
    }

    /// Closed form in the rank and sign of f and g on the preimages
    /// L_f^{−1}(U), L_g^{−1}(V) (chosen to meet the radicals trivially).
    pub fn count_sfg_closed(&self, u: &Subspace, v: &Subspace, t: u32) -> Result<usize> {
        self.check_in_image(self.code.f(), u, "U")?;
        self.check_in_image(self.code.g(), v, "V")?;
        let fp = self.fp();
        let rf = restricted_on_preimage(self.code.f(), u);
        let rg = restricted_on_preimage(self.code.g(), v);
        let r = (u.dim() + v.dim()) as i64;
        let rank = (rf.0 + rg.0) as i64;
        let eps = exact::int((rf.1 * rg.1).value());
        let q = if rank % 2 == 1 {
            exact::p_pow(fp, r - 1)
                * (exact::int(1) + eps * exact::pstar_pow(fp, -(rank - 1) / 2) * exact::int(fp.eta(t)))
        } else {
            exact::p_pow(fp, r - 1)
                * (exact::int(1) + eps * exact::pstar_pow(fp, -rank / 2) * exact::int(fp.upsilon(t)))
        };
        integral(q, "S_fg")
            .map(|n| n as usize)
            .map_err(|e| Error::OracleMismatch(e.to_string()))
    }

    pub fn count_sfg(&self, u: &Subspace, v: &Subspace, t: u32) -> Result<usize> {
        let direct = self.count_sfg_direct(u, v, t)?;
        let closed = self.count_sfg_closed(u, v, t)?;
        if direct != closed {
            return Err(Error::OracleMismatch(format!(
                "S_fg(t={t}) on U={:?}, V={:?}: direct {direct}, closed {closed}",
                u.basis_vectors(),
                v.basis_vectors()
            )));
        }
        Ok(direct)
    }
}

/// S_f = Im L_f as a subspace of F_{q} in ordinary coordinates.
pub fn image_subspace(f: &QuadForm) -> Subspace {
    let fp = f.prime_field();
    let field = f.field();
    // L_f(x) in dual coordinates is X·A; ordinary coordinates are X·A·T^{-1}.
    let t_inv = field.trace_gram().inverse(fp).expect("trace form is nondegenerate");
    let rows = f.gram().mul(&t_inv, fp);
    Subspace::from_matrix(fp, &rows)
}

/// (rank, sign) of f on a preimage W of U under L_f with W ∩ radical = 0.
fn restricted_on_preimage(f: &QuadForm, u: &Subspace) -> (usize, Sign) {
    if u.dim() == 0 {
        return (0, Sign::Plus);
    }
    let rows: Vec<Vec<u32>> = u
        .basis_vectors()
        .iter()
        .map(|row| f.solve_xb_coords(row).expect("U ⊆ S_f"))
        .collect();
    let w = Mat::from_rows(&rows, f.dim()).expect("solutions have field length");
    let r = f.restrict_basis(&w);
    (r.rank, r.sign)
}

/// Which maximization realizes the exact GHW.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GhwSide {
    /// max |D ∩ H| over (s − r)-dimensional H.
    Intersection,
    /// max |H^⊥ ∩ D| + 1 over r-dimensional H.
    Annihilator,
    /// Whichever enumerates fewer subspaces (ties go to `Intersection`).
    Auto,
}

fn check_dimension(code: &CodeCD) -> Result<()> {
    let dim = code.dimension();
    if dim < code.s() {
        return Err(Error::DimensionDeficient { dim, s: code.s() });
    }
    Ok(())
}

/// Exact d_r by exhaustive maximization over subspaces of F ≅ F_p^s.
pub fn ghw_exact(code: &CodeCD, r: usize, side: GhwSide, limit: u128) -> Result<u64> {
    check_dimension(code)?;
    let s = code.s();
    if r == 0 || r > s {
        return Err(Error::BadDims(format!("r = {r} outside 1..={s}")));
    }
    let p = code.prime_field().p();
    let count_inter = gaussian_binomial(p, s, s - r);
    let count_annih = gaussian_binomial(p, s, r);
    let side = match side {
        GhwSide::Auto if count_annih < count_inter => GhwSide::Annihilator,
        GhwSide::Auto => GhwSide::Intersection,
        other => other,
    };
    let size = if side == GhwSide::Intersection { count_inter } else { count_annih };
    if size > limit {
        return Err(Error::TooLarge { size, limit });
    }
    let fp = code.prime_field();
    let n = code.n() as u64;
    let d = code.defining_set().points();
    match side {
        GhwSide::Intersection => {
            let (best, _) = max_over_subspaces(fp, s, s - r, |h| intersect_count(d, h))?;
            Ok(n - best as u64)
        }
        _ => {
            let ctx = code.ctx();
            let (best, _) = max_over_subspaces(fp, s, r, |h| {
                intersect_count(d, &ctx.orthogonal_complement(h)) + 1
            })?;
            Ok(n + 1 - best as u64)
        }
    }
}

/// d_r straight from the definition: the least support size of an
/// r-dimensional subcode, over all r-dimensional message subspaces.
pub fn ghw_by_definition(code: &CodeCD, r: usize) -> Result<u64> {
    check_dimension(code)?;
    let fp = code.prime_field();
    let gen = code.generator();
    let mut best = u64::MAX;
    for m in enumerate_subspaces(fp, code.s(), r)? {
        let sub = m.basis().mul(gen, fp);
        let support = (0..sub.cols()).filter(|&j| (0..sub.rows()).any(|i| sub.get(i, j) != 0)).count();
        best = best.min(support as u64);
    }
    Ok(best)
}

/// Largest |N(U × V)| over product subspaces with dim U + dim V = r.
pub fn product_max_n(code: &CodeCD, r: usize) -> Result<usize> {
    let fp = code.prime_field();
    let ctx = code.ctx();
    let d = code.defining_set().points();
    let mut best = 0;
    for r1 in 0..=r.min(ctx.s1()) {
        let r2 = r - r1;
        if r2 > ctx.s2() {
            continue;
        }
        let vs: Vec<Subspace> = enumerate_subspaces(fp, ctx.s2(), r2)?.collect();
        for u in enumerate_subspaces(fp, ctx.s1(), r1)? {
            for v in &vs {
                let h = product_subspace(&u, v);
                best = best.max(intersect_count(d, &ctx.orthogonal_complement(&h)) + 1);
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, Serialize)]
pub struct HierarchyRow {
    pub r: usize,
    pub exact: Option<u64>,
    pub predicted: Option<u64>,
    pub case: Option<HierarchyCase>,
    /// Σ_{i<r} ⌈d_1 / p^i⌉ from the exact d_1.
    pub griesmer: Option<u64>,
    /// d_r equals the bound; only recorded for the even-A case with r ≤ R/2.
    pub griesmer_equality: Option<bool>,
    /// Some product subspace U × V attains max |N(H_r)|.
    pub product_witness: Option<bool>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HierarchyReport {
    pub params: HierarchyParams,
    pub n: usize,
    pub dimension: usize,
    pub case: Option<HierarchyCase>,
    pub rows: Vec<HierarchyRow>,
    pub monotone: Option<bool>,
    pub griesmer_bound_holds: Option<bool>,
    pub warnings: Vec<String>,
    pub verdict: bool,
}

#[derive(Clone, Debug)]
pub struct HierarchyOptions {
    pub limit: u128,
    pub side: GhwSide,
    pub product_witness: bool,
}

impl Default for HierarchyOptions {
    fn default() -> Self {
        HierarchyOptions {
            limit: 1_000_000,
            side: GhwSide::Auto,
            product_witness: true,
        }
    }
}

/// Exact and predicted hierarchy for r in `rs`, with the Griesmer checks.
pub fn hierarchy_report(
    code: &CodeCD,
    rs: RangeInclusive<usize>,
    opts: &HierarchyOptions,
) -> Result<HierarchyReport> {
    let params = HierarchyParams::from_code(code);
    let case = params.case();
    let s = code.s();
    let p = code.prime_field().p();
    let dimension = code.dimension();
    let mut warnings = Vec::new();
    let full_dim = dimension == s;
    if !full_dim {
        warnings.push(format!(
            "dimension {dimension} < s = {s}: exact hierarchy via subspace maximization not applicable"
        ));
    }
    if case.is_none() {
        warnings.push("R = 0: no closed-form hierarchy".into());
    }
    let rs: Vec<usize> = rs.filter(|&r| r >= 1 && r <= s).collect();
    let d1_exact = if full_dim {
        Some(ghw_exact(code, 1, opts.side, opts.limit)?)
    } else {
        None
    };
    let mut rows = Vec::new();
    for &r in &rs {
        let exact = if full_dim {
            Some(if r == 1 { d1_exact.unwrap() } else { ghw_exact(code, r, opts.side, opts.limit)? })
        } else {
            None
        };
        let predicted = match ghw_predicted(&params, r) {
            Ok(v) => Some(v),
            Err(Error::NoApplicableTheorem) => None,
            Err(Error::NonIntegerWeight(msg)) => {
                warnings.push(format!("predicted d_{r} not integral: {msg}"));
                None
            }
            Err(e) => return Err(e),
        };
        let griesmer = d1_exact.map(|d1| griesmer_sum(d1, r, p));
        let griesmer_equality = match (case, exact, griesmer) {
            (Some(HierarchyCase::EvenA), Some(e), Some(g)) if r <= params.rank() / 2 => Some(e == g),
            _ => None,
        };
        let product_witness = match exact {
            Some(e) if opts.product_witness => {
                let target = code.n() as u64 + 1 - e;
                Some(product_max_n(code, r)? as u64 == target)
            }
            _ => None,
        };
        let matches = match (exact, predicted) {
            (Some(e), Some(q)) => Some(e == q),
            _ => None,
        };
        rows.push(HierarchyRow {
            r,
            exact,
            predicted,
            case,
            griesmer,
            griesmer_equality,
            product_witness,
            matches,
        });
    }
    let exacts: Vec<u64> = rows.iter().filter_map(|row| row.exact).collect();
    let monotone = if full_dim && exacts.len() == rows.len() {
        Some(exacts.windows(2).all(|w| w[0] < w[1]))
    } else {
        None
    };
    let griesmer_bound_holds = if full_dim {
        Some(rows.iter().all(|row| match (row.exact, row.griesmer) {
            (Some(e), Some(g)) => e >= g,
            _ => true,
        }))
    } else {
        None
    };
    let verdict = rows.iter().all(|row| row.matches != Some(false) && row.griesmer_equality != Some(false))
        && monotone != Some(false)
        && griesmer_bound_holds != Some(false);
    Ok(HierarchyReport {
        params,
        n: code.n(),
        dimension,
        case,
        rows,
        monotone,
        griesmer_bound_holds,
        warnings,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::ExtField;
    use crate::quadform::FormInput;

    fn code(p: u64, f: (usize, FormInput), g: (usize, FormInput)) -> CodeCD {
        let k1 = ExtField::new(p, f.0, None).unwrap();
        let k2 = ExtField::new(p, g.0, None).unwrap();
        let qf = QuadForm::from_input(&k1, &f.1).unwrap();
        let qg = QuadForm::from_input(&k2, &g.1).unwrap();
        CodeCD::new(&PairSpaceCtx::new(k1, k2).unwrap(), &qf, &qg).unwrap()
    }

    fn gram(rows: &[&[u32]]) -> FormInput {
        FormInput::Gram {
            rows: rows.iter().map(|r| r.to_vec()).collect(),
        }
    }

    fn tr_sq(s: usize) -> FormInput {
        let mut one = vec![0; s];
        one[0] = 1;
        FormInput::TracePoly { coeffs: vec![one] }
    }

    fn case_a() -> CodeCD {
        code(3, (1, gram(&[&[1]])), (1, gram(&[&[2]])))
    }

    fn odd() -> CodeCD {
        code(3, (2, tr_sq(2)), (1, gram(&[&[1]])))
    }

    #[test]
    fn count_n_examples() {
        let c = case_a();
        let counter = Counter::new(&c).unwrap();
        let fp = c.prime_field();
        assert_eq!(counter.count_n(&Subspace::zero(fp, 2)).unwrap(), c.n() + 1);
        let h = Subspace::span(fp, 2, &[vec![1, 1]]).unwrap();
        assert_eq!(counter.count_n(&h).unwrap(), 3);

        let z = code(3, (1, gram(&[&[0]])), (1, gram(&[&[0]])));
        let counter = Counter::new(&z).unwrap();
        for h in crate::subspace::all_subspaces(fp, 2) {
            let perp = z.ctx().orthogonal_complement(&h);
            assert_eq!(counter.count_n(&h).unwrap(), 3usize.pow(perp.dim() as u32));
        }
    }

    #[test]
    fn count_sfg_examples() {
        let c = case_a();
        let counter = Counter::new(&c).unwrap();
        let fp = c.prime_field();
        let z = Subspace::zero(fp, 1);
        assert_eq!(counter.count_sfg(&z, &z, 0).unwrap(), 1);
        assert_eq!(counter.count_sfg(&z, &z, 1).unwrap(), 0);
        let full = Subspace::full(fp, 1);
        // x_u = u (since −1/2 ≡ 1 mod 3), so f(x_u) + g(y_v) = u² + 2v²,
        // which vanishes on 5 of the 9 pairs: (0,0) and u, v both nonzero
        assert_eq!(counter.count_sfg_direct(&full, &full, 0).unwrap(), 5);
        assert_eq!(counter.count_sfg(&full, &full, 0).unwrap(), 5);
    }

    #[test]
    fn count_sfg_rejects_subspace_outside_image() {
        let c = code(3, (2, gram(&[&[1, 0], &[0, 0]])), (1, gram(&[&[1]])));
        let counter = Counter::new(&c).unwrap();
        let fp = c.prime_field();
        let img = image_subspace(c.f());
        assert_eq!(img.dim(), 1);
        let outside = enumerate_subspaces(fp, 2, 1).unwrap().find(|h| *h != img).unwrap();
        let v = Subspace::zero(fp, 1);
        assert!(matches!(counter.count_sfg(&outside, &v, 0), Err(Error::BadSubspace(_))));
        counter.count_sfg(&img, &v, 0).unwrap();
    }

    #[test]
    fn ghw_exact_examples() {
        let c = case_a();
        assert_eq!(ghw_exact(&c, 1, GhwSide::Auto, u128::MAX).unwrap(), 2);
        assert_eq!(ghw_exact(&c, 2, GhwSide::Auto, u128::MAX).unwrap(), 4);
        let o = odd();
        for (r, want) in [(1, 4), (2, 6), (3, 8)] {
            for side in [GhwSide::Intersection, GhwSide::Annihilator] {
                assert_eq!(ghw_exact(&o, r, side, u128::MAX).unwrap(), want);
            }
            assert_eq!(ghw_by_definition(&o, r).unwrap(), want);
        }
        assert!(matches!(
            ghw_exact(&o, 1, GhwSide::Auto, 5),
            Err(Error::TooLarge { .. })
        ));
        let empty = code(3, (1, gram(&[&[1]])), (1, gram(&[&[1]])));
        assert_eq!(
            ghw_exact(&empty, 1, GhwSide::Auto, u128::MAX),
            Err(Error::DimensionDeficient { dim: 0, s: 2 })
        );
    }

    #[test]
    fn ghw_predicted_examples() {
        let fp = PrimeField::new(3).unwrap();
        let a = HierarchyParams::new(fp, 1, 1, (1, Sign::Plus), (1, Sign::Minus));
        assert_eq!(a.case(), Some(HierarchyCase::EvenA));
        assert_eq!((ghw_predicted(&a, 1).unwrap(), ghw_predicted(&a, 2).unwrap()), (2, 4));
        let o = HierarchyParams::new(fp, 2, 1, (2, Sign::Minus), (1, Sign::Plus));
        assert_eq!(o.case(), Some(HierarchyCase::Odd));
        let got: Vec<u64> = (1..=3).map(|r| ghw_predicted(&o, r).unwrap()).collect();
        assert_eq!(got, vec![4, 6, 8]);
        let b = HierarchyParams::new(fp, 2, 2, (2, Sign::Minus), (2, Sign::Plus));
        assert_eq!(b.case(), Some(HierarchyCase::EvenB));
        let got: Vec<u64> = (1..=4).map(|r| ghw_predicted(&b, r).unwrap()).collect();
        assert_eq!(got, vec![12, 16, 18, 20]);
        let z = HierarchyParams::new(fp, 1, 1, (0, Sign::Plus), (0, Sign::Plus));
        assert_eq!(ghw_predicted(&z, 1), Err(Error::NoApplicableTheorem));
    }

    #[test]
    fn griesmer_examples() {
        assert_eq!(griesmer_sum(7, 1, 3), 7);
        assert_eq!(griesmer_sum(18, 2, 3), 24);
        assert_eq!(griesmer_sum(2, 2, 3), 3);
    }

    #[test]
    fn hierarchy_report_examples() {
        let rep = hierarchy_report(&case_a(), 1..=2, &HierarchyOptions::default()).unwrap();
        assert!(rep.verdict);
        assert!(rep.rows.iter().all(|r| r.matches == Some(true)));
        assert_eq!(rep.rows[0].griesmer_equality, Some(true));

        let rep = hierarchy_report(&odd(), 1..=3, &HierarchyOptions::default()).unwrap();
        assert!(rep.verdict);
        assert_eq!(rep.rows.iter().map(|r| r.exact.unwrap()).collect::<Vec<_>>(), vec![4, 6, 8]);

        let zero = code(3, (1, gram(&[&[0]])), (1, gram(&[&[0]])));
        let rep = hierarchy_report(&zero, 1..=2, &HierarchyOptions::default()).unwrap();
        assert_eq!(rep.case, None);
        assert!(rep.rows.iter().all(|r| r.predicted.is_none() && r.exact.is_some()));

        let rep = hierarchy_report(&odd(), 2..=2, &HierarchyOptions::default()).unwrap();
        assert_eq!(rep.rows.len(), 1);
    }

    #[test]
    fn image_subspace_matches_solver() {
        let c = odd();
        let f = c.f();
        let img = image_subspace(f);
        for u in f.field().elements() {
            assert_eq!(img.contains(u.coeffs()), f.in_image(u.coeffs()));
        }
    }
}
