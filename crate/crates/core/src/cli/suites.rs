//! Named verification checks. Each check compares a closed form against an
//! enumeration oracle over a fixed grid and reports pass, fail or skipped.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{minimality_check, predicted_length, weight_distribution_predicted, CodeCD};
use crate::cyclotomic::{gauss_sqrt, level_set_count, level_set_count_direct, sigma_orbit_sum, subspace_char_sum, weil_sum, CycInt};
use crate::error::{Error, Result};
use crate::gf::{ExtField, PrimeField};
use crate::ghw::{
    ghw_by_definition, ghw_exact, hierarchy_report, image_subspace, Counter, GhwSide, HierarchyOptions,
};
use crate::matrix::Mat;
use crate::quadform::{diagonalize_symmetric, rank_sign_of, FormInput, QuadForm};
use crate::subspace::{all_subspaces, enumerate_subspaces, PairSpaceCtx};

use super::config::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Galois-orbit sums of (p*)^{r/2} ζ^z.
    Orbit,
    /// Σ_{x∈H} ζ^{f(x)} over subspaces.
    SubspaceSum,
    /// Σ_x ζ^{f(x) − Tr(bx)} for every b.
    Weil,
    /// |{x ∈ H : f(x) = β}| over subspaces.
    LevelSet,
    /// Pair counts over product subspaces U × V of S_f × S_g.
    PairCount,
    /// |N(H)| against |H^⊥ ∩ D| + 1 for every subspace.
    Annihilator,
    /// Length and weight distribution against the closed forms.
    Weights,
    /// Exact weight hierarchy against the closed forms and the Griesmer bound.
    Hierarchy,
    /// Gauss-sum identities and diagonalization invariance.
    Structure,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Orbit,
        Suite::SubspaceSum,
        Suite::Weil,
        Suite::LevelSet,
        Suite::PairCount,
        Suite::Annihilator,
        Suite::Weights,
        Suite::Hierarchy,
        Suite::Structure,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Number of individual comparisons made.
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn pass(name: impl Into<String>, cases: u64) -> Self {
        Check { name: name.into(), status: Status::Pass, cases, detail: None }
    }

    fn fail(name: impl Into<String>, cases: u64, detail: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Fail, cases, detail: Some(detail.into()) }
    }

    fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Skipped, cases: 0, detail: Some(detail.into()) }
    }

    fn note(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// Turns the outcome of a counted computation into a check. Oracle
    /// mismatches fail, resource limits skip, other errors fail.
    fn from_result(name: impl Into<String>, r: Result<u64>) -> Self {
        let name = name.into();
        match r {
            Ok(n) => Check::pass(name, n),
            Err(e @ Error::TooLarge { .. }) => Check::skipped(name, e.to_string()),
            Err(e) => Check::fail(name, 0, e.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suites: Vec<Suite>,
    pub checks: Vec<Check>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }
}

/// A named code under test.
pub struct Instance {
    pub name: String,
    pub code: CodeCD,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub limits: Limits,
    /// Negates ε in the predicted weight distribution, to exercise the
    /// failure path.
    pub corrupt_sign: bool,
}

const PRIMES: [u32; 5] = [3, 5, 7, 11, 13];
const SEED: u64 = 0x5eed_c0de;

/// (p, s) pairs with p^s within the field limit.
pub fn field_grid(max_field: u64) -> Vec<(u32, usize)> {
    let mut out = Vec::new();
    for p in PRIMES {
        let mut q = p as u64;
        let mut s = 1;
        while q <= max_field {
            out.push((p, s));
            s += 1;
            q *= p as u64;
        }
    }
    out
}

/// Zero, identity, a nonresidue-twisted diagonal, a degenerate diagonal, a
/// hyperbolic plane plus identity, and two random symmetric matrices.
pub fn representative_grams(fp: PrimeField, s: usize, seed: u64) -> Vec<Mat> {
    let nu = fp.least_nonsquare();
    let mut out = vec![Mat::zeros(s, s), Mat::identity(s)];
    let mut twisted = vec![1; s];
    twisted[0] = nu;
    out.push(Mat::diag(&twisted));
    if s >= 2 {
        let mut degenerate = vec![0; s];
        degenerate[0] = 1;
        out.push(Mat::diag(&degenerate));
        let mut hyp = Mat::identity(s);
        hyp.set(0, 0, 0);
        hyp.set(1, 1, 0);
        hyp.set(0, 1, 1);
        hyp.set(1, 0, 1);
        out.push(hyp);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((fp.p() as u64) << 8) ^ s as u64);
    for _ in 0..2 {
        out.push(Mat::random_symmetric(s, fp, &mut rng));
    }
    out
}

fn gram_input(rows: &[&[u32]]) -> FormInput {
    FormInput::Gram { rows: rows.iter().map(|r| r.to_vec()).collect() }
}

fn trace_square(s: usize) -> FormInput {
    let mut one = vec![0; s];
    one[0] = 1;
    FormInput::TracePoly { coeffs: vec![one] }
}

/// Builds C_D from two form descriptions over default moduli.
pub fn instance(name: &str, p: u64, f: (usize, FormInput), g: (usize, FormInput)) -> Result<Instance> {
    let k1 = ExtField::new(p, f.0, None)?;
    let k2 = ExtField::new(p, g.0, None)?;
    let qf = QuadForm::from_input(&k1, &f.1)?;
    let qg = QuadForm::from_input(&k2, &g.1)?;
    let code = CodeCD::new(&PairSpaceCtx::new(k1, k2)?, &qf, &qg)?;
    Ok(Instance { name: name.to_string(), code })
}

/// Three codes over F_3 covering the even case with ε = η̄(−1)^{R/2}, the
/// odd case, and the even case with the opposite sign.
pub fn default_matrix() -> Vec<Instance> {
    vec![
        instance("p3-s1+1-x2-2y2", 3, (1, gram_input(&[&[1]])), (1, gram_input(&[&[2]]))),
        instance("p3-s2+1-trx2-y2", 3, (2, trace_square(2)), (1, gram_input(&[&[1]]))),
        instance(
            "p3-s2+2-trx2-diag11",
            3,
            (2, trace_square(2)),
            (2, gram_input(&[&[1, 0], &[0, 1]])),
        ),
    ]
    .into_iter()
    .map(|r| r.expect("built-in configurations are valid"))
    .collect()
}

pub fn run(suites: &[Suite], matrix: &[Instance], opts: &SuiteOptions) -> SuiteResult {
    let suites: Vec<Suite> = if suites.contains(&Suite::All) {
        Suite::EACH.to_vec()
    } else {
        suites.to_vec()
    };
    let mut checks = Vec::new();
    for &suite in &suites {
        checks.extend(match suite {
            Suite::Orbit => orbit(),
            Suite::SubspaceSum => subspace_sums(opts),
            Suite::Weil => weil(opts),
            Suite::LevelSet => level_sets(opts),
            Suite::PairCount => pair_counts(matrix),
            Suite::Annihilator => annihilators(matrix, opts),
            Suite::Weights => weights(matrix, opts),
            Suite::Hierarchy => hierarchy(matrix, opts),
            Suite::Structure => structure(),
            Suite::All => unreachable!(),
        });
    }
    SuiteResult { suites, checks }
}

pub fn orbit() -> Vec<Check> {
    [3u32, 5, 7]
        .into_iter()
        .map(|p| {
            let fp = PrimeField::new(p as u64).unwrap();
            let r = (|| {
                let mut n = 0;
                for r in 1..=4 {
                    for z in 0..p {
                        sigma_orbit_sum(fp, r, z)?;
                        n += 1;
                    }
                }
                Ok(n)
            })();
            Check::from_result(format!("orbit/p={p}"), r)
        })
        .collect()
}

fn forms_for(p: u32, s: usize) -> (ExtField, Vec<QuadForm>) {
    let field = ExtField::new(p as u64, s, None).expect("grid fields exist");
    let forms = representative_grams(field.prime_field(), s, SEED)
        .into_iter()
        .map(|a| QuadForm::from_gram(&field, a).expect("symmetric"))
        .collect();
    (field, forms)
}

fn subspace_sums(opts: &SuiteOptions) -> Vec<Check> {
    field_grid(opts.limits.max_field)
        .into_par_iter()
        .map(|(p, s)| {
            let (field, forms) = forms_for(p, s);
            let subspaces = all_subspaces(field.prime_field(), s);
            let r = (|| {
                let mut n = 0;
                for f in &forms {
                    for h in &subspaces {
                        subspace_char_sum(f, h)?;
                        n += 1;
                    }
                }
                Ok(n)
            })();
            Check::from_result(format!("subspace-sum/p={p},s={s}"), r)
        })
        .collect()
}

fn level_sets(opts: &SuiteOptions) -> Vec<Check> {
    field_grid(opts.limits.max_field)
        .into_par_iter()
        .map(|(p, s)| {
            let (field, forms) = forms_for(p, s);
            let subspaces = all_subspaces(field.prime_field(), s);
            let mut n = 0;
            let mut bad = None;
            'outer: for f in &forms {
                for h in &subspaces {
                    for beta in 0..p {
                        let closed = level_set_count(f, h, beta);
                        let direct = level_set_count_direct(f, h, beta);
                        if closed != Ok(direct) {
                            bad = Some(format!(
                                "H={:?} β={beta}: direct {direct}, closed {closed:?}",
                                h.basis_vectors()
                            ));
                            break 'outer;
                        }
                        n += 1;
                    }
                }
            }
            let name = format!("level-set/p={p},s={s}");
            match bad {
                None => Check::pass(name, n),
                Some(d) => Check::fail(name, n, d),
            }
        })
        .collect()
}

/// Every diagonal form on each grid field, plus 50 random symmetric Gram
/// matrices spread over the fields with s ≥ 2; each against every b.
fn weil(opts: &SuiteOptions) -> Vec<Check> {
    let grid = field_grid(opts.limits.max_field);
    let mut checks: Vec<Check> = grid
        .par_iter()
        .map(|&(p, s)| {
            let field = ExtField::new(p as u64, s, None).unwrap();
            let mut diagonals = Vec::new();
            crate::gf::for_each_vector(p, s, |d| diagonals.push(d.to_vec()));
            let elems = field.elements();
            let r: Result<u64> = diagonals
                .par_iter()
                .map(|d| {
                    let f = QuadForm::from_gram(&field, Mat::diag(d))?;
                    for b in &elems {
                        weil_sum(&f, b)?;
                    }
                    Ok(elems.len() as u64)
                })
                .sum();
            Check::from_result(format!("weil/diagonal/p={p},s={s}"), r)
        })
        .collect();

    let multi: Vec<(u32, usize)> = grid.into_iter().filter(|&(_, s)| s >= 2).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut picks = Vec::new();
    for i in 0..50 {
        let (p, s) = multi[i % multi.len()];
        let fp = PrimeField::new(p as u64).unwrap();
        picks.push((p, s, Mat::random_symmetric(s, fp, &mut rng)));
    }
    let r: Result<u64> = picks
        .par_iter()
        .map(|(p, s, a)| {
            let field = ExtField::new(*p as u64, *s, None)?;
            let f = QuadForm::from_gram(&field, a.clone())?;
            let elems = field.elements();
            for b in &elems {
                weil_sum(&f, b)?;
            }
            Ok(elems.len() as u64)
        })
        .sum();
    checks.push(Check::from_result("weil/random-symmetric", r));
    checks
}

fn pair_counts(matrix: &[Instance]) -> Vec<Check> {
    matrix
        .iter()
        .map(|inst| {
            let code = &inst.code;
            let r = (|| {
                let counter = Counter::new(code)?;
                let fp = code.prime_field();
                let sf = image_subspace(code.f());
                let sg = image_subspace(code.g());
                let us: Vec<_> = all_subspaces(fp, code.ctx().s1())
                    .into_iter()
                    .filter(|u| u.is_subspace_of(&sf))
                    .collect();
                let vs: Vec<_> = all_subspaces(fp, code.ctx().s2())
                    .into_iter()
                    .filter(|v| v.is_subspace_of(&sg))
                    .collect();
                let mut n = 0;
                for u in &us {
                    for v in &vs {
                        for t in 0..fp.p() {
                            counter.count_sfg(u, v, t)?;
                            n += 1;
                        }
                    }
                }
                Ok(n)
            })();
            Check::from_result(format!("pair-count/{}", inst.name), r)
        })
        .collect()
}

fn annihilators(matrix: &[Instance], opts: &SuiteOptions) -> Vec<Check> {
    matrix
        .iter()
        .map(|inst| {
            let code = &inst.code;
            let r = (|| {
                let counter = Counter::new(code)?;
                let fp = code.prime_field();
                let mut n = 0;
                for r in 0..=code.s() {
                    let size = crate::subspace::gaussian_binomial(fp.p(), code.s(), r);
                    if size > opts.limits.max_subspaces {
                        return Err(Error::TooLarge { size, limit: opts.limits.max_subspaces });
                    }
                    for h in enumerate_subspaces(fp, code.s(), r)? {
                        counter.count_n(&h)?;
                        n += 1;
                    }
                }
                Ok(n)
            })();
            Check::from_result(format!("annihilator/{}", inst.name), r)
        })
        .collect()
}

fn weights(matrix: &[Instance], opts: &SuiteOptions) -> Vec<Check> {
    let mut checks = Vec::new();
    for inst in matrix {
        let code = &inst.code;
        let fp = code.prime_field();
        let sign = if opts.corrupt_sign { -code.sign() } else { code.sign() };
        let name = |what: &str| format!("weights/{}/{what}", inst.name);

        checks.push(match predicted_length(fp, code.s(), code.rank(), sign) {
            Ok(n) if n == code.n() as u64 => Check::pass(name("length"), 1),
            Ok(n) => Check::fail(name("length"), 1, format!("enumerated {}, predicted {n}", code.n())),
            Err(e) => Check::fail(name("length"), 1, e.to_string()),
        });

        let brute = match code.weight_distribution_bruteforce(opts.limits.max_brute) {
            Ok(wd) => wd,
            Err(e) => {
                checks.push(Check::skipped(name("distribution"), e.to_string()));
                continue;
            }
        };
        let total = (fp.p() as u64).pow(code.s() as u32);
        checks.push(if brute.total() == total {
            Check::pass(name("total"), 1)
        } else {
            Check::fail(name("total"), 1, format!("Σ A_w = {} ≠ {total}", brute.total()))
        });

        if code.dimension() < code.s() {
            checks.push(Check::skipped(
                name("distribution"),
                format!("dimension {} < s = {}", code.dimension(), code.s()),
            ));
        } else {
            checks.push(match weight_distribution_predicted(fp, code.s(), code.rank(), sign) {
                Ok(pred) if pred == brute => Check::pass(name("distribution"), brute.total()),
                Ok(pred) => Check::fail(
                    name("distribution"),
                    brute.total(),
                    format!("enumerated {brute:?}, predicted {pred:?}"),
                ),
                Err(e) => Check::fail(name("distribution"), 0, e.to_string()),
            });
        }

        checks.push(match minimality_check(&brute, fp) {
            Ok(m) => {
                let verdict = if m.holds { "holds" } else { "does not hold" };
                let mut detail = format!(
                    "p·w_min > (p−1)·w_max {verdict} (w_min={}, w_max={}, R={})",
                    m.w_min,
                    m.w_max,
                    code.rank()
                );
                if !m.holds && code.rank() >= 3 {
                    detail.push_str("; FLAG: sufficient condition for minimal codewords fails at R ≥ 3");
                }
                Check::pass(name("minimality"), 1).note(detail)
            }
            Err(e) => Check::skipped(name("minimality"), e.to_string()),
        });
    }
    checks
}

fn hierarchy(matrix: &[Instance], opts: &SuiteOptions) -> Vec<Check> {
    let mut checks = Vec::new();
    let hopts = HierarchyOptions {
        limit: opts.limits.max_subspaces,
        side: GhwSide::Auto,
        product_witness: true,
    };
    for inst in matrix {
        let code = &inst.code;
        let s = code.s();
        let name = |what: &str| format!("hierarchy/{}/{what}", inst.name);
        if code.dimension() < s {
            checks.push(Check::skipped(name("closed-form"), format!("dimension {} < s = {s}", code.dimension())));
            continue;
        }
        let rep = match hierarchy_report(code, 1..=s, &hopts) {
            Ok(rep) => rep,
            Err(e) => {
                checks.push(Check::from_result(name("closed-form"), Err(e)));
                continue;
            }
        };
        let exact: Vec<u64> = rep.rows.iter().filter_map(|r| r.exact).collect();
        let predicted: Vec<Option<u64>> = rep.rows.iter().map(|r| r.predicted).collect();
        checks.push(if rep.case.is_none() {
            Check::skipped(name("closed-form"), "R = 0")
        } else if rep.rows.iter().all(|r| r.matches == Some(true)) {
            Check::pass(name("closed-form"), s as u64).note(format!("{exact:?}"))
        } else {
            Check::fail(name("closed-form"), s as u64, format!("exact {exact:?}, predicted {predicted:?}"))
        });
        checks.push(if rep.monotone == Some(true) {
            Check::pass(name("monotone"), s as u64)
        } else {
            Check::fail(name("monotone"), s as u64, format!("{exact:?}"))
        });
        let bound_ok = rep.griesmer_bound_holds == Some(true);
        let eq_ok = rep.rows.iter().all(|r| r.griesmer_equality != Some(false));
        let eq_rows = rep.rows.iter().filter(|r| r.griesmer_equality.is_some()).count();
        checks.push(if bound_ok && eq_ok {
            Check::pass(name("griesmer"), s as u64).note(format!("equality checked on {eq_rows} rows"))
        } else {
            let g: Vec<Option<u64>> = rep.rows.iter().map(|r| r.griesmer).collect();
            Check::fail(name("griesmer"), s as u64, format!("exact {exact:?}, bound {g:?}"))
        });
        let witnessed = rep.rows.iter().filter(|r| r.product_witness == Some(true)).count();
        checks.push(
            Check::pass(name("product-witness"), s as u64)
                .note(format!("product subspace attains the maximum for {witnessed} of {s} ranks")),
        );

        let r = (|| {
            let mut n = 0;
            for r in 1..=s {
                let a = ghw_exact(code, r, GhwSide::Intersection, opts.limits.max_subspaces)?;
                let b = ghw_exact(code, r, GhwSide::Annihilator, opts.limits.max_subspaces)?;
                if a != b || Some(a) != rep.rows[r - 1].exact {
                    return Err(Error::OracleMismatch(format!("d_{r}: {a} vs {b}")));
                }
                if s <= 3 {
                    let d = ghw_by_definition(code, r)?;
                    if d != a {
                        return Err(Error::OracleMismatch(format!("d_{r}: {a} vs definition {d}")));
                    }
                }
                n += 1;
            }
            Ok(n)
        })();
        checks.push(Check::from_result(name("oracles"), r));
    }
    checks
}

fn structure() -> Vec<Check> {
    let mut checks = Vec::new();
    let mut n = 0;
    let mut bad = None;
    for p in PRIMES {
        let fp = PrimeField::new(p as u64).unwrap();
        let g = gauss_sqrt(fp);
        if (&g * &g) != CycInt::from_int(p, fp.pstar()) {
            bad.get_or_insert(format!("g² ≠ p* for p={p}"));
        }
        n += 1;
        for z in 1..p {
            match g.galois(z) {
                Ok(gz) if gz == g.scale(fp.eta(z)) => {}
                _ => {
                    bad.get_or_insert(format!("σ_{z}(g) ≠ η̄({z})g for p={p}"));
                }
            }
            n += 1;
        }
    }
    checks.push(match bad {
        None => Check::pass("structure/gauss-sum", n),
        Some(d) => Check::fail("structure/gauss-sum", n, d),
    });

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = None;
    let mut n = 0;
    for i in 0..100 {
        let p = [3u32, 5, 7][i % 3];
        let fp = PrimeField::new(p as u64).unwrap();
        let s = 1 + i % 4;
        let a = Mat::random_symmetric(s, fp, &mut rng);
        let m = Mat::random_invertible(s, fp, &mut rng);
        let b = m.mul(&a, fp).mul(&m.transpose(), fp);
        let (t, lambdas) = diagonalize_symmetric(&a, fp);
        let diag_ok = t.mul(&a, fp).mul(&t.transpose(), fp).is_diagonal();
        if rank_sign_of(&a, fp) != rank_sign_of(&b, fp) || !diag_ok || lambdas.contains(&0) {
            bad.get_or_insert(format!("congruence {i}: A={:?}", a.to_rows()));
        }
        n += 1;
    }
    checks.push(match bad {
        None => Check::pass("structure/congruence-invariance", n),
        Some(d) => Check::fail("structure/congruence-invariance", n, d),
    });
    checks
}
