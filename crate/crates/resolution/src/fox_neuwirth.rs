//! Compactly supported cohomology of unordered configuration spaces of the
//! plane, from the Fox–Neuwirth cell structure on the one-point
//! compactification, plus an independent check via the simplicial deleted
//! product of a triangulated disk.
//!
//! Fox–Neuwirth cells are compositions `(n_1, ..., n_k)` of `r`: `k`
//! vertical lines carrying `n_i` points each, of dimension `r + k`. The
//! point at infinity is dropped, so the complex computes reduced
//! cohomology. Merging two adjacent columns has coefficient a Gaussian
//! binomial at `q = -1`.

use std::collections::{BTreeMap, HashMap};

use pqmaps_core::bookkeeping::{BettiRow, BettiTable};
use pqmaps_core::FieldKind;

use crate::chain::{Cell, FilteredChainComplex};
use crate::complex::SimplicialComplex;

pub const DEFAULT_BOUND: usize = 4;

/// A triangulated disk (hexagon fan), shipped as data.
pub const C2_MODEL_DISK: &str = include_str!("../../../data/c2_model_disk.json");

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FoxNeuwirthError {
    #[error("r must be at least 1")]
    Zero,
    #[error("r = {r} is above the bound {bound}")]
    AboveBound { r: usize, bound: usize },
}

fn binomial(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `[n choose k]` at `q = -1`.
pub fn gaussian_binomial_minus_one(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    if n.is_multiple_of(2) && !k.is_multiple_of(2) {
        return 0;
    }
    binomial((n / 2) as u64, (k / 2) as u64)
}

fn compositions(r: usize) -> Vec<Vec<usize>> {
    (0u64..1 << (r - 1))
        .map(|mask| {
            let mut parts = vec![1];
            for i in 0..r - 1 {
                if mask >> i & 1 == 1 {
                    parts.push(1);
                } else {
                    *parts.last_mut().expect("nonempty") += 1;
                }
            }
            parts
        })
        .collect()
}

/// Reduced cellular chain complex of the compactified configuration space
/// of `r` unordered points in the plane.
pub fn fox_neuwirth_complex(r: usize) -> Result<FilteredChainComplex, FoxNeuwirthError> {
    if r == 0 {
        return Err(FoxNeuwirthError::Zero);
    }
    let mut cells = compositions(r);
    cells.sort_by_key(|c| (c.len(), c.clone()));
    let index: HashMap<Vec<usize>, usize> = cells.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let boundary = cells
        .iter()
        .map(|c| {
            let mut col = Vec::new();
            let mut before = 0;
            for j in 0..c.len().saturating_sub(1) {
                let coeff = gaussian_binomial_minus_one(c[j] + c[j + 1], c[j]);
                let a = before + 1 + c[j];
                before += 1 + c[j];
                if coeff == 0 {
                    continue;
                }
                let mut merged = c.clone();
                merged[j] += merged.remove(j + 1);
                let sign = if (a + 1) % 2 == 0 { 1 } else { -1 };
                col.push((index[&merged], sign * coeff));
            }
            col
        })
        .collect();
    let meta = cells.iter().map(|c| Cell { dim: r + c.len(), level: 1 }).collect();
    Ok(FilteredChainComplex::new(meta, boundary).expect("Fox-Neuwirth boundary squares to zero"))
}

/// Nonzero ranks of `H_c^*` of the configuration space of `r` unordered
/// points in the plane, by degree.
pub fn fox_neuwirth_betti(r: usize, field: FieldKind, bound: usize) -> Result<BTreeMap<usize, u64>, FoxNeuwirthError> {
    if r > bound {
        return Err(FoxNeuwirthError::AboveBound { r, bound });
    }
    let betti = fox_neuwirth_complex(r)?.betti(field);
    Ok(betti.into_iter().enumerate().filter(|&(_, b)| b > 0).collect())
}

/// Table with every degree `0..=2r` for `r = 1..=rmax`.
pub fn betti_table(rmax: usize, field: FieldKind, bound: usize) -> Result<BettiTable, FoxNeuwirthError> {
    let mut rows = Vec::new();
    for r in 1..=rmax {
        let ranks = fox_neuwirth_betti(r, field, bound)?;
        for degree in 0..=2 * r {
            rows.push(BettiRow {
                r: r as i64,
                degree: degree as i64,
                rank: ranks.get(&degree).copied().unwrap_or(0),
                field: field.name().to_string(),
            });
        }
    }
    Ok(BettiTable::new(1, rows).expect("rows are consistent"))
}

/// Chain complex of the unordered simplicial deleted product: cells are
/// pairs of vertex-disjoint simplices `{s, t}` with `[t x s] = (-1)^{|s||t|} [s x t]`.
pub fn deleted_product(k: &SimplicialComplex) -> FilteredChainComplex {
    let all = k.all_simplices();
    let pos: HashMap<&[usize], usize> = all.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let disjoint = |a: &[usize], b: &[usize]| a.iter().all(|v| !b.contains(v));
    let mut pairs = Vec::new();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if disjoint(&all[i], &all[j]) {
                pairs.push((i, j));
            }
        }
    }
    pairs.sort_by_key(|&(i, j)| (all[i].len() + all[j].len(), i, j));
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(n, &p)| (p, n)).collect();
    let dim = |i: usize| all[i].len() - 1;
    // oriented pair (i, j) as +/- a canonical cell
    let canon = |i: usize, j: usize| -> (usize, i64) {
        if i < j {
            (index[&(i, j)], 1)
        } else {
            (index[&(j, i)], if (dim(i) * dim(j)) % 2 == 0 { 1 } else { -1 })
        }
    };
    let faces = |i: usize| -> Vec<(usize, i64)> {
        let s = &all[i];
        if s.len() == 1 {
            return Vec::new();
        }
        (0..s.len())
            .map(|n| {
                let mut f = s.clone();
                f.remove(n);
                (pos[f.as_slice()], if n % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    };
    let boundary = pairs
        .iter()
        .map(|&(i, j)| {
            let mut col = Vec::new();
            for (fi, a) in faces(i) {
                let (c, s) = canon(fi, j);
                col.push((c, a * s));
            }
            let outer = if dim(i) % 2 == 0 { 1 } else { -1 };
            for (fj, b) in faces(j) {
                let (c, s) = canon(i, fj);
                col.push((c, outer * b * s));
            }
            col
        })
        .collect();
    let meta = pairs.iter().map(|&(i, j)| Cell { dim: dim(i) + dim(j), level: 1 }).collect();
    FilteredChainComplex::new(meta, boundary).expect("deleted product boundary squares to zero")
}

/// `H_c^*` of two unordered points in the plane via Poincare duality on the
/// deleted product of the shipped disk: `rank H_c^{4-i} = b_i`.
pub fn c2_from_disk_model(field: FieldKind) -> BTreeMap<usize, u64> {
    let disk: SimplicialComplex = serde_json::from_str(C2_MODEL_DISK).expect("shipped model parses");
    let betti = deleted_product(&disk).betti(field);
    betti.into_iter().enumerate().filter(|&(i, b)| b > 0 && i <= 4).map(|(i, b)| (4 - i, b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_binomials() {
        assert_eq!(gaussian_binomial_minus_one(2, 1), 0);
        assert_eq!(gaussian_binomial_minus_one(3, 1), 1);
        assert_eq!(gaussian_binomial_minus_one(4, 2), 2);
        assert_eq!(gaussian_binomial_minus_one(5, 2), 2);
        assert_eq!(gaussian_binomial_minus_one(6, 3), 0);
    }

    #[test]
    fn small_cases() {
        let q = FieldKind::Rational;
        assert_eq!(fox_neuwirth_betti(1, q, DEFAULT_BOUND).unwrap(), BTreeMap::from([(2, 1)]));
        assert_eq!(fox_neuwirth_betti(2, q, DEFAULT_BOUND).unwrap(), BTreeMap::from([(3, 1), (4, 1)]));
        for r in 3..=6 {
            let b = fox_neuwirth_betti(r, q, 6).unwrap();
            assert_eq!(b, BTreeMap::from([(2 * r - 1, 1), (2 * r, 1)]), "r = {r}");
        }
    }

    #[test]
    fn bound_is_enforced() {
        assert_eq!(
            fox_neuwirth_betti(5, FieldKind::Rational, DEFAULT_BOUND),
            Err(FoxNeuwirthError::AboveBound { r: 5, bound: 4 })
        );
        assert_eq!(fox_neuwirth_betti(0, FieldKind::Rational, 4), Err(FoxNeuwirthError::Zero));
    }

    #[test]
    fn disk_model_matches_r2() {
        assert_eq!(c2_from_disk_model(FieldKind::Rational), BTreeMap::from([(3, 1), (4, 1)]));
    }

    #[test]
    fn deleted_product_of_a_segment_is_two_points() {
        // a subdivided segment: unordered pairs of disjoint points ~ one component
        let seg = SimplicialComplex::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(deleted_product(&seg).betti(FieldKind::Rational), vec![1, 0, 0]);
    }

    #[test]
    fn table_covers_all_degrees() {
        let t = betti_table(3, FieldKind::Rational, DEFAULT_BOUND).unwrap();
        assert_eq!(t.rows.len(), 3 + 5 + 7);
        assert!(t.rows.iter().all(|row| row.degree <= 2 * row.r));
    }
}
