//! Simplicial resolutions of finite-to-one simplicial surjections.
//!
//! Over the interior of a target simplex `tau` with fiber `F(tau)` (the
//! source simplices mapping bijectively onto it), the resolution is
//! `tau x Delta^{F(tau)}`. It is cut into product cells `(tau, S)` for
//! nonempty `S` in `F(tau)`; the filtration level is `|S|`, so the stage
//! `X_k` keeps the cells with `|S| <= k`. The boundary is that of a product,
//! where restricting to a face of `tau` sends each member of `S` to its face
//! over it; when two members collide the cell degenerates and contributes 0.

use std::collections::HashMap;

use num_rational::BigRational;
use pqmaps_core::field::rat;
use pqmaps_core::seeds::trial_rng;
use pqmaps_core::FieldKind;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::chain::{Cell, ChainError, FilteredChainComplex, LevelBetti};
use crate::complex::SimplicialMap;
use crate::embedding::{affine_rank, moment_placement, EmbeddingData, EmbeddingError, MAX_ATTEMPTS};

/// Interior sample points per target simplex, besides the barycenter.
pub const EXTRA_TEST_POINTS: usize = 2;
/// Fiber subsets checked per sample point before switching to sampling.
const SUBSET_LIMIT: usize = 64;

#[derive(Debug, thiserror::Error)]
pub enum ResolutionError {
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("map is not finite-to-one; only depth 1 is supported for such maps (requested {depth})")]
    NotFinite { depth: usize },
    #[error("embedding: {0}")]
    Embedding(#[from] EmbeddingError),
    #[error("embedding is degenerate over target simplex {simplex:?}")]
    Degenerate { simplex: Vec<usize> },
    #[error("no non-degenerate embedding after {attempts} attempts")]
    Exhausted { attempts: u64 },
    #[error("constructed complex is invalid: {0}")]
    Chain(#[from] ChainError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Mode {
    Nondegenerate,
    Embedded { embedding: EmbeddingData },
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Nondegenerate => "nondegenerate",
            Mode::Embedded { .. } => "embedded",
        }
    }
}

/// A cell `(tau, S)`: `members` index the ordered fiber of target simplex
/// `base`. For depth-1 resolutions of maps that are not finite-to-one,
/// `base` is instead a source simplex index and `members` is `[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionCell {
    pub base: usize,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NondegeneracyCertificate {
    pub embedding_dimension: usize,
    /// Fiber points checked jointly (the `2k` of general position).
    pub subset_size: usize,
    pub simplices_checked: usize,
    pub points_per_simplex: usize,
    pub attempts: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Resolution {
    pub map: SimplicialMap,
    pub mode: String,
    pub depth: usize,
    pub seed: u64,
    pub finite_to_one: bool,
    pub target_simplices: Vec<Vec<usize>>,
    /// `fibers[t]`: ordered aligned source simplices over target simplex `t`.
    pub fibers: Vec<Vec<Vec<usize>>>,
    pub cells: Vec<ResolutionCell>,
    pub complex: FilteredChainComplex,
    pub embedding: Option<EmbeddingData>,
    pub certificate: Option<NondegeneracyCertificate>,
}

impl Resolution {
    /// Number of cells over each target simplex at each level, as
    /// `(target index, fiber size, counts by level)`.
    pub fn fiber_profile(&self) -> Vec<(usize, usize, Vec<usize>)> {
        let mut counts: Vec<Vec<usize>> = vec![vec![0; self.depth]; self.target_simplices.len()];
        if self.finite_to_one {
            for c in &self.cells {
                counts[c.base][c.members.len() - 1] += 1;
            }
        }
        counts.into_iter().enumerate().map(|(t, c)| (t, self.fibers[t].len(), c)).collect()
    }

    pub fn betti(&self, field: FieldKind) -> Vec<u64> {
        self.complex.betti(field)
    }

    pub fn level_table(&self, field: FieldKind) -> Vec<LevelBetti> {
        self.complex.level_table(field)
    }
}

/// Barycenter plus seeded rational interior points of a `d`-simplex.
fn test_points(d: usize, rng: &mut impl Rng) -> Vec<Vec<BigRational>> {
    let n = d + 1;
    let mut pts = vec![vec![rat(1, n as i64); n]];
    if d == 0 {
        return pts;
    }
    for _ in 0..EXTRA_TEST_POINTS {
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=1000)).collect();
        let total: i64 = w.iter().sum();
        pts.push(w.iter().map(|&x| rat(x, total)).collect());
    }
    pts
}

/// Order fibers by their image at the barycenter, then certify that fiber
/// points over sampled interior points are in general position.
fn order_and_certify(
    fibers: &mut [Vec<Vec<usize>>],
    targets: &[Vec<usize>],
    emb: &EmbeddingData,
    subset_size: usize,
    rng: &mut impl Rng,
) -> Result<NondegeneracyCertificate, ResolutionError> {
    let mut checked = 0;
    for (t, fiber) in fibers.iter_mut().enumerate() {
        let d = targets[t].len() - 1;
        let points = test_points(d, rng);
        let mut keyed: Vec<(Vec<BigRational>, Vec<usize>)> =
            fiber.drain(..).map(|s| (emb.image(&s, &points[0]), s)).collect();
        keyed.sort();
        *fiber = keyed.into_iter().map(|(_, s)| s).collect();
        if fiber.len() < 2 {
            continue;
        }
        checked += 1;
        let size = subset_size.min(fiber.len());
        for bary in &points {
            let images: Vec<Vec<BigRational>> = fiber.iter().map(|s| emb.image(s, bary)).collect();
            for subset in subsets(fiber.len(), size, rng) {
                let pts: Vec<&Vec<BigRational>> = subset.iter().map(|&i| &images[i]).collect();
                if affine_rank(&pts) != size - 1 {
                    return Err(ResolutionError::Degenerate { simplex: targets[t].clone() });
                }
            }
        }
    }
    Ok(NondegeneracyCertificate {
        embedding_dimension: emb.dimension,
        subset_size,
        simplices_checked: checked,
        points_per_simplex: 1 + EXTRA_TEST_POINTS,
        attempts: 1,
    })
}

fn subsets(n: usize, k: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        all.push(c.clone());
        if all.len() > SUBSET_LIMIT {
            break;
        }
        let mut i = k;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return all;
        }
    }
    (0..SUBSET_LIMIT)
        .map(|_| {
            let mut s = rand::seq::index::sample(rng, n, k).into_vec();
            s.sort_unstable();
            s
        })
        .collect()
}

/// Sign of the permutation sorting `v` (entries distinct).
fn sort_sign(v: &mut [usize]) -> i64 {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    sign
}

/// Build the resolution of `map` truncated at `depth` (default: the largest
/// fiber, which gives the whole resolution).
pub fn build_resolution(
    map: &SimplicialMap,
    mode: &Mode,
    depth: Option<usize>,
    seed: u64,
) -> Result<Resolution, ResolutionError> {
    let targets = map.target().all_simplices();
    let mut fibers: Vec<Vec<Vec<usize>>> = map.fibers().into_iter().map(|(_, f)| f).collect();
    let max_fiber = fibers.iter().map(Vec::len).max().unwrap_or(1);
    let depth = depth.unwrap_or(max_fiber);
    if depth == 0 {
        return Err(ResolutionError::ZeroDepth);
    }
    if !map.is_finite_to_one() {
        if depth != 1 {
            return Err(ResolutionError::NotFinite { depth });
        }
        return Ok(source_as_resolution(map, mode, seed, targets, fibers));
    }

    let subset_size = (2 * depth).min(max_fiber);
    let (embedding, certificate) = match mode {
        Mode::Embedded { embedding } => {
            embedding.validate(map.source().vertex_count())?;
            let mut rng = trial_rng(seed, 0);
            let cert = order_and_certify(&mut fibers, &targets, embedding, subset_size, &mut rng)?;
            (embedding.clone(), cert)
        }
        Mode::Nondegenerate => {
            let edges: Vec<(usize, usize)> = map
                .source()
                .all_simplices()
                .into_iter()
                .filter(|s| s.len() == 2)
                .map(|s| (s[0], s[1]))
                .collect();
            let mut found = None;
            for attempt in 0..MAX_ATTEMPTS {
                let attempt_seed = seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
                let mut rng = trial_rng(attempt_seed, 0);
                let mut emb = match moment_placement(map.source().vertex_count(), depth, &mut rng) {
                    Ok(e) => e,
                    Err(EmbeddingError::Degenerate { .. }) => continue,
                    Err(e) => return Err(e.into()),
                };
                emb.bend_edges(edges.iter().copied(), &mut rng);
                let mut trial = fibers.clone();
                match order_and_certify(&mut trial, &targets, &emb, subset_size, &mut rng) {
                    Ok(mut cert) => {
                        cert.attempts = attempt + 1;
                        fibers = trial;
                        found = Some((emb, cert));
                        break;
                    }
                    Err(ResolutionError::Degenerate { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
            found.ok_or(ResolutionError::Exhausted { attempts: MAX_ATTEMPTS })?
        }
    };

    let (cells, complex) = assemble(&targets, &fibers, depth)?;
    Ok(Resolution {
        map: map.clone(),
        mode: mode.name().to_string(),
        depth,
        seed,
        finite_to_one: true,
        target_simplices: targets,
        fibers,
        cells,
        complex,
        embedding: Some(embedding),
        certificate: Some(certificate),
    })
}

fn source_as_resolution(
    map: &SimplicialMap,
    mode: &Mode,
    seed: u64,
    targets: Vec<Vec<usize>>,
    fibers: Vec<Vec<Vec<usize>>>,
) -> Resolution {
    let cells = (0..map.source().simplex_count()).map(|i| ResolutionCell { base: i, members: vec![0] }).collect();
    Resolution {
        map: map.clone(),
        mode: mode.name().to_string(),
        depth: 1,
        seed,
        finite_to_one: false,
        target_simplices: targets,
        fibers,
        cells,
        complex: map.source().chain_complex(),
        embedding: None,
        certificate: None,
    }
}

fn for_each_subset(n: usize, max: usize, mut f: impl FnMut(Vec<usize>)) {
    for size in 1..=max.min(n) {
        let mut c: Vec<usize> = (0..size).collect();
        loop {
            f(c.clone());
            let mut i = size;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if c[i] < n - size + i {
                    c[i] += 1;
                    for j in i + 1..size {
                        c[j] = c[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
}

/// Cells ordered by (level, dimension, target simplex, members), and the
/// product boundary.
fn assemble(
    targets: &[Vec<usize>],
    fibers: &[Vec<Vec<usize>>],
    depth: usize,
) -> Result<(Vec<ResolutionCell>, FilteredChainComplex), ResolutionError> {
    let target_index: HashMap<&[usize], usize> = targets.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let fiber_index: Vec<HashMap<&[usize], usize>> =
        fibers.iter().map(|f| f.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()).collect();

    // (level, dim, target simplex, members)
    type Key = (usize, usize, usize, Vec<usize>);
    let mut keyed: Vec<(Key, ResolutionCell)> = Vec::new();
    for (t, fiber) in fibers.iter().enumerate() {
        let d = targets[t].len() - 1;
        for_each_subset(fiber.len(), depth, |members| {
            let level = members.len();
            keyed.push(((level, d + level - 1, t, members.clone()), ResolutionCell { base: t, members }));
        });
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let cells: Vec<ResolutionCell> = keyed.into_iter().map(|(_, c)| c).collect();
    let id: HashMap<(usize, &[usize]), usize> =
        cells.iter().enumerate().map(|(i, c)| ((c.base, c.members.as_slice()), i)).collect();

    let mut meta = Vec::with_capacity(cells.len());
    let mut boundary = Vec::with_capacity(cells.len());
    for c in &cells {
        let tau = &targets[c.base];
        let d = tau.len() - 1;
        let level = c.members.len();
        meta.push(Cell { dim: d + level - 1, level });
        let mut col: Vec<(usize, i64)> = Vec::new();
        if d > 0 {
            for i in 0..=d {
                let mut face = tau.clone();
                face.remove(i);
                let ft = target_index[face.as_slice()];
                let mut images: Vec<usize> = c
                    .members
                    .iter()
                    .map(|&m| {
                        let mut sf = fibers[c.base][m].clone();
                        sf.remove(i);
                        fiber_index[ft][sf.as_slice()]
                    })
                    .collect();
                let sign = sort_sign(&mut images);
                if images.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                let alt = if i % 2 == 0 { 1 } else { -1 };
                col.push((id[&(ft, images.as_slice())], alt * sign));
            }
        }
        if level > 1 {
            let outer = if d.is_multiple_of(2) { 1 } else { -1 };
            for j in 0..level {
                let mut rest = c.members.clone();
                rest.remove(j);
                let alt = if j % 2 == 0 { 1 } else { -1 };
                col.push((id[&(c.base, rest.as_slice())], outer * alt));
            }
        }
        boundary.push(col);
    }
    Ok((cells, FilteredChainComplex::new(meta, boundary)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    pub field: FieldKind,
    pub resolution_betti: Vec<u64>,
    pub target_betti: Vec<u64>,
    pub holds: bool,
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Homology-level check that the projection to the target is an
/// equivalence: equal Betti numbers.
pub fn check_resolution_equivalence(res: &Resolution, field: FieldKind) -> Equivalence {
    let resolution_betti = trim(res.betti(field));
    let target_betti = trim(res.map.target().betti(field));
    let holds = resolution_betti == target_betti;
    Equivalence { field, resolution_betti, target_betti, holds }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingComparison {
    pub field: FieldKind,
    pub seeds: (u64, u64),
    pub table_a: Vec<LevelBetti>,
    pub table_b: Vec<LevelBetti>,
    pub agree: bool,
}

/// Build non-degenerate resolutions from two seeds and compare the homology
/// of every filtration stage.
pub fn compare_embeddings(
    map: &SimplicialMap,
    seed_a: u64,
    seed_b: u64,
    depth: Option<usize>,
    field: FieldKind,
) -> Result<EmbeddingComparison, ResolutionError> {
    let a = build_resolution(map, &Mode::Nondegenerate, depth, seed_a)?;
    let b = build_resolution(map, &Mode::Nondegenerate, depth, seed_b)?;
    let table_a = a.level_table(field);
    let table_b = b.level_table(field);
    let agree = table_a == table_b;
    Ok(EmbeddingComparison { field, seeds: (seed_a, seed_b), table_a, table_b, agree })
}
