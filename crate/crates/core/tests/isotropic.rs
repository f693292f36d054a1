//! Isotropic and rank-one subspaces against exhaustive search over all
//! subspaces.

use qfcodes::cli::suites::representative_grams;
use qfcodes::gf::{for_each_vector, ExtField};
use qfcodes::matrix::Mat;
use qfcodes::quadform::{isotropic_dim, QuadForm, Sign};
use qfcodes::subspace::all_subspaces;

const GRID: [(u64, usize); 6] = [(3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3)];

fn forms(p: u64, s: usize) -> (ExtField, Vec<QuadForm>) {
    let field = ExtField::new(p, s, None).unwrap();
    let fp = field.prime_field();
    let mut grams = representative_grams(fp, s, 7);
    for_each_vector(p as u32, s, |d| grams.push(Mat::diag(d)));
    let forms = grams.into_iter().map(|a| QuadForm::from_gram(&field, a).unwrap()).collect();
    (field, forms)
}

#[test]
fn largest_totally_isotropic_subspace() {
    for (p, s) in GRID {
        let (field, forms) = forms(p, s);
        let fp = field.prime_field();
        let subspaces = all_subspaces(fp, s);
        for f in &forms {
            let best = subspaces.iter().filter(|h| f.restrict(h).rank == 0).map(|h| h.dim()).max().unwrap();
            let (rank, sign) = f.rank_sign();
            assert_eq!(isotropic_dim(s, rank, sign, fp), best, "p={p} A={:?}", f.gram().to_rows());
            let h = f.isotropic_subspace();
            assert_eq!((h.dim(), f.restrict(&h).rank), (best, 0));
        }
    }
}

#[test]
fn rank_one_subspaces() {
    for (p, s) in GRID {
        let (field, forms) = forms(p, s);
        let fp = field.prime_field();
        let subspaces = all_subspaces(fp, s);
        for f in forms.iter().filter(|f| f.rank() == s && s >= 2) {
            for a in 1..p as u32 {
                let want = Sign::from_value(fp.eta(a));
                let best = subspaces
                    .iter()
                    .filter(|h| {
                        let r = f.restrict(h);
                        r.rank == 1 && r.sign == want
                    })
                    .map(|h| h.dim())
                    .max()
                    .unwrap_or(0);

                let h = f.rank_one_subspace(a, false).unwrap();
                let r = f.restrict(&h);
                assert_eq!((h.dim(), r.rank, r.sign), (s / 2, 1, want));

                if s % 2 == 1 {
                    let cond = fp.eta(a) == fp.pstar_sign().pow(((s - 1) / 2) as u32) * f.sign().value();
                    let ext = f.rank_one_subspace(a, true);
                    assert_eq!(ext.is_ok(), cond, "p={p} A={:?} a={a}", f.gram().to_rows());
                    assert_eq!(best, if cond { s.div_ceil(2) } else { s / 2 });
                    if let Ok(h) = ext {
                        let r = f.restrict(&h);
                        assert_eq!((h.dim(), r.rank, r.sign), (s.div_ceil(2), 1, want));
                    }
                } else {
                    assert_eq!(best, s / 2);
                }
            }
        }
    }
}
