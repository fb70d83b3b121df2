//! Named test rings and module families used by the property sweeps.

use std::collections::BTreeMap;

use crate::algebra::{enumerate_ideals, Ring};
use crate::error::{Error, Result};
use crate::fplinalg::FpMatrix;
use crate::modules::{direct_sum, dual, free_module, regular_module, residue_module, FinModule};
use crate::par::{checked_pow_within, Limits};
use crate::speclang::ring_from_expr;

/// A ring of the default corpus, named by its defining expression.
#[derive(Clone, Debug)]
pub struct CorpusRing {
    pub name: &'static str,
    pub expr: &'static str,
    pub ring: Ring,
}

/// The default corpus: fields, dual numbers, trivial extensions and a product.
pub const DEFAULT_CORPUS: &[(&str, &str)] = &[
    ("F2", "gf(2)"),
    ("F3", "gf(3)"),
    ("F4", "gf(2, [1,1,1])"),
    ("F2[x]/(x^2)", "quot(2, [0,0,1])"),
    ("F3[x]/(x^2)", "quot(3, [0,0,1])"),
    ("F2|x F2", "trivext(gf(2), free(1))"),
    ("F2|x F2^2", "trivext(gf(2), free(2))"),
    ("F2[x]/(x^2) |x k", "trivext(quot(2, [0,0,1]), quotfree(1, [(0,1)]))"),
    ("F2 x F2", "prod(gf(2), gf(2))"),
];

/// Rings outside the default corpus that some sweeps add.
pub const EXTENDED_CORPUS: &[(&str, &str)] = &[
    ("F3|x F3", "trivext(gf(3), free(1))"),
    ("F5|x F5", "trivext(gf(5), free(1))"),
    ("F2|x F2^3", "trivext(gf(2), free(3))"),
    ("F2[x]/(x^2) |x itself", "trivext(quot(2, [0,0,1]), regular)"),
    ("F2 x (F2|x F2^2)", "prod(gf(2), trivext(gf(2), free(2)))"),
];

fn build(list: &[(&'static str, &'static str)]) -> Vec<CorpusRing> {
    list.iter()
        .map(|&(name, expr)| CorpusRing {
            name,
            expr,
            ring: ring_from_expr(expr).expect("corpus expressions elaborate"),
        })
        .collect()
}

pub fn default_corpus() -> Vec<CorpusRing> {
    build(DEFAULT_CORPUS)
}

pub fn extended_corpus() -> Vec<CorpusRing> {
    let mut v = default_corpus();
    v.extend(build(EXTENDED_CORPUS));
    v
}

/// Regular, free of rank 2, residue field, its dual, and every cyclic `R/I` and ideal `I`
/// (when the ideal lattice is small enough to enumerate).
pub fn generated_modules(ring: &Ring, limits: &Limits) -> Vec<FinModule> {
    let reg = regular_module(ring);
    let k = residue_module(ring);
    let mut out = vec![
        reg.clone(),
        free_module(ring, 2),
        k.clone(),
        dual(&reg),
        direct_sum(&k, &reg).expect("same ring"),
    ];
    if let Ok(ideals) = enumerate_ideals(ring, limits) {
        for i in ideals.iter().filter(|i| i.dim() > 0 && i.dim() < ring.dim()) {
            out.push(i.quotient_module());
            out.push(i.as_module());
        }
    }
    dedupe_equal(out)
}

fn dedupe_equal(v: Vec<FinModule>) -> Vec<FinModule> {
    let mut out: Vec<FinModule> = Vec::new();
    for m in v {
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

/// Builds the full action from matrices assigned to the ring generators, checking
/// linear consistency along the way; `None` if the assignment is not a module.
fn extend_generator_action(ring: &Ring, n: usize, gens: &[FpMatrix]) -> Option<FinModule> {
    let p = ring.p();
    let d = ring.dim();
    let gen_idx = ring.generators();
    // echelon basis of ring elements reached so far, each with its matrix
    let mut rows: Vec<(Vec<u32>, FpMatrix, usize)> = Vec::new();
    let mut queue = vec![(ring.one().to_vec(), FpMatrix::identity(p, n))];
    while let Some((x, mx)) = queue.pop() {
        // reduce x against the echelon rows
        let (mut r, mut mr) = (x.clone(), mx.clone());
        for (row, mrow, piv) in &rows {
            let c = r[*piv];
            if c != 0 {
                let neg = crate::fplinalg::neg(c, p);
                for (a, b) in r.iter_mut().zip(row) {
                    *a = crate::fplinalg::add(*a, crate::fplinalg::mul(neg, *b, p), p);
                }
                mr.add_scaled(neg, mrow);
            }
        }
        match r.iter().position(|&c| c != 0) {
            None => {
                if !mr.is_zero() {
                    return None;
                }
            }
            Some(piv) => {
                let s = crate::fplinalg::inv(r[piv], p);
                let r: Vec<u32> = r.iter().map(|&c| crate::fplinalg::mul(c, s, p)).collect();
                let mr = mr.scale(s);
                // keep the echelon rows reduced at the new pivot
                for (row, mrow, _) in rows.iter_mut() {
                    let c = row[piv];
                    if c != 0 {
                        let neg = crate::fplinalg::neg(c, p);
                        for (a, b) in row.iter_mut().zip(&r) {
                            *a = crate::fplinalg::add(*a, crate::fplinalg::mul(neg, *b, p), p);
                        }
                        mrow.add_scaled(neg, &mr);
                    }
                }
                rows.push((r, mr, piv));
                for (&g, mg) in gen_idx.iter().zip(gens) {
                    queue.push((ring.mul_elements(&x, &ring.basis_element(g)), mx.mul(mg)));
                }
            }
        }
    }
    if rows.len() != d {
        return None;
    }
    // rows are fully reduced: row with pivot i is e_i
    let mut action = vec![FpMatrix::zeros(p, n, n); d];
    for (row, m, piv) in rows {
        debug_assert!(row.iter().enumerate().all(|(j, &c)| c == u32::from(j == piv)));
        action[piv] = m;
    }
    FinModule::new(ring, action).ok()
}

/// Canonical key of a tuple of matrices under simultaneous conjugation by `GL_n(F_p)`.
fn canonical_key(mats: &[FpMatrix], group: &[(FpMatrix, FpMatrix)]) -> Vec<u32> {
    group
        .iter()
        .map(|(g, gi)| {
            mats.iter()
                .flat_map(|m| g.mul(m).mul(gi).entries().to_vec())
                .collect::<Vec<u32>>()
        })
        .min()
        .unwrap_or_default()
}

fn general_linear_group(p: u32, n: usize) -> Vec<(FpMatrix, FpMatrix)> {
    let count = (p as u64).pow((n * n) as u32);
    (0..count)
        .filter_map(|t| {
            let data = crate::modules::digits(t, p, n * n);
            let g = FpMatrix::from_vec(p, n, n, data).expect("shape");
            g.inverse().map(|gi| (g, gi))
        })
        .collect()
}

/// Every module of dimension `dim` up to isomorphism, by exhaustive search over
/// matrices for the ring generators.
pub fn modules_of_dim(ring: &Ring, dim: usize, limits: &Limits) -> Result<Vec<FinModule>> {
    let p = ring.p();
    let s = ring.generators().len();
    let per = dim * dim;
    let count = checked_pow_within(p as u64, per * s, limits.search_cap.max(1 << 18)).ok_or_else(|| {
        Error::cap(
            "small module enumeration",
            format!("{p}^{}", per * s),
            limits.search_cap.max(1 << 18),
        )
    })?;
    if dim == 0 {
        return Ok(vec![crate::modules::zero_module(ring)]);
    }
    let group = general_linear_group(p, dim);
    let found = limits.exec.filter_map_range(count, |t| {
        let digits = crate::modules::digits(t, p, per * s);
        let gens: Vec<FpMatrix> = digits
            .chunks(per)
            .map(|c| FpMatrix::from_vec(p, dim, dim, c.to_vec()).expect("shape"))
            .collect();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                if a.mul(b) != b.mul(a) {
                    return None;
                }
            }
        }
        let module = extend_generator_action(ring, dim, &gens)?;
        let key = canonical_key(&gens, &group);
        // keep only the canonical representative of each orbit
        (key == gens.iter().flat_map(|m| m.entries().to_vec()).collect::<Vec<_>>()).then_some((key, module))
    });
    let unique: BTreeMap<Vec<u32>, FinModule> = found.into_iter().collect();
    Ok(unique.into_values().collect())
}

/// Every module of dimension at most `max_dim`, up to isomorphism.
pub fn small_modules(ring: &Ring, max_dim: usize, limits: &Limits) -> Result<Vec<FinModule>> {
    let mut out = Vec::new();
    for n in 0..=max_dim {
        out.extend(modules_of_dim(ring, n, limits)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::is_isomorphic;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn corpus_builds() {
        assert_eq!(default_corpus().len(), 9);
        assert!(extended_corpus().len() > 9);
    }

    #[test]
    fn module_counts() {
        // vector spaces: one per dimension
        let f2 = ring_from_expr("gf(2)").unwrap();
        assert_eq!(small_modules(&f2, 3, &lim()).unwrap().len(), 4);
        // F_2[x]/(x^2)-modules of dim n: partitions of n into parts <= 2
        let d = ring_from_expr("quot(2, [0,0,1])").unwrap();
        let counts: Vec<usize> = (0..=3).map(|n| modules_of_dim(&d, n, &lim()).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 2]);
        // F_4-modules: F_4-spaces, so only even F_2-dimension
        let f4 = ring_from_expr("gf(2, [1,1,1])").unwrap();
        let counts: Vec<usize> = (0..=3).map(|n| modules_of_dim(&f4, n, &lim()).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 0, 1, 0]);
        // F_2 x F_2: pairs (a, b) with a + b = n
        let pr = ring_from_expr("prod(gf(2), gf(2))").unwrap();
        let counts: Vec<usize> = (0..=3).map(|n| modules_of_dim(&pr, n, &lim()).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 4]);
    }

    #[test]
    fn enumerated_modules_are_pairwise_non_isomorphic() {
        let r = ring_from_expr("trivext(gf(2), free(2))").unwrap();
        let ms = modules_of_dim(&r, 2, &lim()).unwrap();
        for (i, a) in ms.iter().enumerate() {
            for b in &ms[i + 1..] {
                assert!(!is_isomorphic(a, b, &lim()).unwrap().is_iso());
            }
        }
        // k^2, the two cyclic quotients of dim 2 up to GL_2 symmetry of the square-zero part
        assert!(ms.len() >= 2);
    }

    #[test]
    fn generated_family() {
        let r = ring_from_expr("trivext(gf(2), free(1))").unwrap();
        let ms = generated_modules(&r, &lim());
        assert!(ms.iter().any(|m| m.dim() == 1));
        assert!(ms.iter().any(|m| m.dim() == 4));
    }
}
