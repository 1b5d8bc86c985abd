//! Induced maps of resolutions. A map `g: X -> X'` over the same target
//! (`h = h' g`) sends a cell `(tau, S)` to `(tau, g(S))`, or to zero when
//! two members of `S` land on the same simplex of `X'`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::complex::{ComplexError, SimplicialComplex, SimplicialMap};
use crate::resolution::{build_resolution, Mode, Resolution, ResolutionError};

#[derive(Debug, thiserror::Error)]
pub enum FunctorError {
    #[error("vertices {a} and {b} do not lie over the same target vertex")]
    NotFiberMates { a: usize, b: usize },
    #[error("vertices {a} and {b} span a simplex; merging them would collapse it")]
    Adjacent { a: usize, b: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
}

/// `X' = X / (a ~ b)` over the same target, and the vertex map `g`.
pub fn merge_fiber_mates(map: &SimplicialMap, a: usize, b: usize) -> Result<(SimplicialMap, Vec<usize>), FunctorError> {
    let h = map.vertex_map();
    if a == b || a >= h.len() || b >= h.len() || h[a] != h[b] {
        return Err(FunctorError::NotFiberMates { a, b });
    }
    let (keep, drop) = (a.min(b), a.max(b));
    let x = map.source();
    if x.maximal_simplices().iter().any(|s| s.contains(&keep) && s.contains(&drop)) {
        return Err(FunctorError::Adjacent { a, b });
    }
    let g: Vec<usize> = (0..x.vertex_count())
        .map(|v| match v.cmp(&drop) {
            std::cmp::Ordering::Less => v,
            std::cmp::Ordering::Equal => keep,
            std::cmp::Ordering::Greater => v - 1,
        })
        .collect();
    let simplices = x.maximal_simplices().iter().map(|s| s.iter().map(|&v| g[v]).collect()).collect();
    let merged = SimplicialComplex::new(x.vertex_count() - 1, simplices)?;
    let h2: Vec<usize> = (0..merged.vertex_count()).map(|w| h[g.iter().position(|&x| x == w).expect("g onto")]).collect();
    Ok((SimplicialMap::new(merged, map.target().clone(), h2)?, g))
}

/// The induced chain map, as integer columns in the cells of `to`.
pub fn induced_chain_map(from: &Resolution, to: &Resolution, g: &[usize]) -> Vec<Vec<(usize, i64)>> {
    let index: HashMap<(usize, &[usize]), usize> =
        to.cells.iter().enumerate().map(|(i, c)| ((c.base, c.members.as_slice()), i)).collect();
    let fiber_index: Vec<HashMap<Vec<usize>, usize>> =
        to.fibers.iter().map(|f| f.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
    from.cells
        .iter()
        .map(|c| {
            let mut images: Vec<usize> = c
                .members
                .iter()
                .map(|&m| {
                    let s: Vec<usize> = from.fibers[c.base][m].iter().map(|&v| g[v]).collect();
                    fiber_index[c.base][&s]
                })
                .collect();
            let mut sign = 1;
            for i in 0..images.len() {
                for j in 0..images.len() - 1 - i {
                    if images[j] > images[j + 1] {
                        images.swap(j, j + 1);
                        sign = -sign;
                    }
                }
            }
            if images.windows(2).any(|w| w[0] == w[1]) {
                return Vec::new();
            }
            vec![(index[&(c.base, images.as_slice())], sign)]
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorialityReport {
    pub merged: (usize, usize),
    pub source_cells: usize,
    pub target_cells: usize,
    /// `d' f = f d` on every cell.
    pub chain_map: bool,
    /// Every cell lands at a level no higher than its own.
    pub filtration_preserved: bool,
}

impl FunctorialityReport {
    pub fn holds(&self) -> bool {
        self.chain_map && self.filtration_preserved
    }
}

fn compose(cols: &[Vec<(usize, i64)>], v: &[(usize, i64)]) -> HashMap<usize, i64> {
    let mut out: HashMap<usize, i64> = HashMap::new();
    for &(i, a) in v {
        for &(j, b) in &cols[i] {
            *out.entry(j).or_default() += a * b;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Resolve `map` and its quotient by `a ~ b` at the same depth and check
/// that the induced map is a filtration-preserving chain map.
pub fn check_functoriality(map: &SimplicialMap, a: usize, b: usize, seed: u64) -> Result<FunctorialityReport, FunctorError> {
    let (quotient, g) = merge_fiber_mates(map, a, b)?;
    let depth = map.max_fiber().max(1);
    let rx = build_resolution(map, &Mode::Nondegenerate, Some(depth), seed)?;
    let ry = build_resolution(&quotient, &Mode::Nondegenerate, Some(depth), seed.wrapping_add(1))?;
    let f = induced_chain_map(&rx, &ry, &g);
    let dx = rx.complex.boundary();
    let dy = ry.complex.boundary();
    let chain_map = (0..f.len()).all(|c| compose(dy, &f[c]) == compose(&f, &dx[c]));
    let filtration_preserved = f.iter().enumerate().all(|(c, col)| {
        col.iter().all(|&(t, _)| ry.complex.cells()[t].level <= rx.complex.cells()[c].level)
    });
    Ok(FunctorialityReport {
        merged: (a, b),
        source_cells: rx.complex.len(),
        target_cells: ry.complex.len(),
        chain_map,
        filtration_preserved,
    })
}

/// All pairs of distinct fiber mates that do not share a simplex.
pub fn mergeable_pairs(map: &SimplicialMap) -> Vec<(usize, usize)> {
    let h = map.vertex_map();
    let x = map.source();
    let mut out = Vec::new();
    for a in 0..h.len() {
        for b in a + 1..h.len() {
            if h[a] == h[b] && !x.maximal_simplices().iter().any(|s| s.contains(&a) && s.contains(&b)) {
                out.push((a, b));
            }
        }
    }
    out
}
