//! Embeddings of a source complex in `R^N` used to realize resolutions:
//! vertices on the moment curve with seeded rational parameters, optionally
//! bent along edges so that fiber points over a simplex stay in general
//! position.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};
use pqmaps_core::field::{format_rational, parse_rational, Fp};
use pqmaps_core::linalg::DenseMatrix;
use pqmaps_core::seeds::trial_rng;
use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Subset families up to this size are checked exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 2000;
/// Subsets drawn when the family is larger.
pub const SAMPLED_SUBSETS: usize = 500;
/// Parameter draws before `moment_embedding` gives up.
pub const MAX_ATTEMPTS: u64 = 8;

const PARAM_RANGE: i64 = 1 << 20;
const PARAM_DENOM: i64 = 97;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("embedding has {found} coordinate rows for {expected} vertices")]
    VertexCount { expected: usize, found: usize },
    #[error("coordinate row {row} has length {found}, expected {expected}")]
    Dimension { row: usize, expected: usize, found: usize },
    #[error("points {subset:?} are affinely dependent")]
    Degenerate { subset: Vec<usize> },
    #[error("no certified embedding after {attempts} attempts")]
    Exhausted { attempts: u64 },
    #[error("invalid rational `{0}`")]
    Rational(String),
}

/// Coordinates per source vertex in `R^dimension`, extended over a simplex
/// with barycentric coordinates `b` as
/// `sum_i b_i x(v_i) + sum_{i<j} b_i b_j bend(v_i, v_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingData {
    pub dimension: usize,
    pub coordinates: Vec<Vec<BigRational>>,
    /// Moment-curve parameter per vertex when the embedding came from one.
    pub parameters: Option<Vec<BigRational>>,
    pub bends: BTreeMap<(usize, usize), Vec<BigRational>>,
}

#[derive(Serialize, Deserialize)]
struct BendWire {
    edge: [usize; 2],
    offset: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct EmbeddingWire {
    dimension: usize,
    coordinates: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parameters: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    bends: Vec<BendWire>,
}

fn strs(v: &[BigRational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn rats(v: &[String]) -> Result<Vec<BigRational>, EmbeddingError> {
    v.iter().map(|s| parse_rational(s).ok_or_else(|| EmbeddingError::Rational(s.clone()))).collect()
}

impl Serialize for EmbeddingData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        EmbeddingWire {
            dimension: self.dimension,
            coordinates: self.coordinates.iter().map(|c| strs(c)).collect(),
            parameters: self.parameters.as_ref().map(|p| strs(p)),
            bends: self.bends.iter().map(|(&(a, b), o)| BendWire { edge: [a, b], offset: strs(o) }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EmbeddingData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = EmbeddingWire::deserialize(d)?;
        let parse = || -> Result<EmbeddingData, EmbeddingError> {
            let coordinates = w.coordinates.iter().map(|c| rats(c)).collect::<Result<Vec<_>, _>>()?;
            let parameters = w.parameters.as_ref().map(|p| rats(p)).transpose()?;
            let mut bends = BTreeMap::new();
            for b in &w.bends {
                let key = (b.edge[0].min(b.edge[1]), b.edge[0].max(b.edge[1]));
                bends.insert(key, rats(&b.offset)?);
            }
            let e = EmbeddingData { dimension: w.dimension, coordinates, parameters, bends };
            e.validate(e.coordinates.len())?;
            Ok(e)
        };
        parse().map_err(serde::de::Error::custom)
    }
}

impl EmbeddingData {
    pub fn validate(&self, vertices: usize) -> Result<(), EmbeddingError> {
        if self.coordinates.len() != vertices {
            return Err(EmbeddingError::VertexCount { expected: vertices, found: self.coordinates.len() });
        }
        for (row, c) in self.coordinates.iter().chain(self.bends.values()).enumerate() {
            if c.len() != self.dimension {
                return Err(EmbeddingError::Dimension { row, expected: self.dimension, found: c.len() });
            }
        }
        Ok(())
    }

    /// Image of the point with barycentric coordinates `bary` on `simplex`.
    pub fn image(&self, simplex: &[usize], bary: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.dimension];
        for (i, &v) in simplex.iter().enumerate() {
            for (o, x) in out.iter_mut().zip(&self.coordinates[v]) {
                *o += &bary[i] * x;
            }
        }
        for i in 0..simplex.len() {
            for j in i + 1..simplex.len() {
                let key = (simplex[i].min(simplex[j]), simplex[i].max(simplex[j]));
                if let Some(bend) = self.bends.get(&key) {
                    let w = &bary[i] * &bary[j];
                    for (o, x) in out.iter_mut().zip(bend) {
                        *o += &w * x;
                    }
                }
            }
        }
        out
    }

    /// Add a bend for every listed edge, each a fresh moment-curve point.
    pub fn bend_edges(&mut self, edges: impl IntoIterator<Item = (usize, usize)>, rng: &mut impl Rng) {
        for (a, b) in edges {
            let t = random_param(rng);
            self.bends.insert((a.min(b), a.max(b)), moment_point(&t, self.dimension));
        }
    }
}

/// `(t, t^2, ..., t^dim)`.
pub fn moment_point(t: &BigRational, dim: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(dim);
    let mut acc = BigRational::one();
    for _ in 0..dim {
        acc = &acc * t;
        out.push(acc.clone());
    }
    out
}

fn random_param(rng: &mut impl Rng) -> BigRational {
    let num = rng.gen_range(-PARAM_RANGE..=PARAM_RANGE);
    let den = rng.gen_range(1..=PARAM_DENOM);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Large prime for the modular fast path of [`affine_rank`].
const RANK_PRIME: u32 = 2_147_483_647;
type Fbig = Fp<RANK_PRIME>;

fn reduce_mod(x: &BigRational) -> Option<Fbig> {
    use pqmaps_core::field::Field;
    let p = BigInt::from(RANK_PRIME);
    let to = |v: &BigInt| Fbig::new(i64::try_from(v.mod_floor(&p)).expect("reduced below the prime"));
    let den = to(x.denom());
    if den.is_zero() {
        return None;
    }
    Some(to(x.numer()).div(&den))
}

/// Affine rank of a point set (number of independent difference vectors).
/// Full rank modulo a large prime certifies full rank over `Q`; anything
/// else is settled by exact elimination.
pub fn affine_rank(points: &[&Vec<BigRational>]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let rows: Vec<Vec<BigRational>> =
        points[1..].iter().map(|p| p.iter().zip(points[0]).map(|(a, b)| a - b).collect()).collect();
    let modular: Option<Vec<Vec<Fbig>>> = rows.iter().map(|r| r.iter().map(reduce_mod).collect()).collect();
    if let Some(m) = modular {
        if DenseMatrix::from_rows(m).rank() == rows.len() {
            return rows.len();
        }
    }
    DenseMatrix::from_rows(rows).rank()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralPositionCertificate {
    pub subset_size: usize,
    pub subsets_checked: u64,
    pub exhaustive: bool,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Check that every `size`-subset of `points` (all of them when fewer) is
/// affinely independent; exhaustive for small families, sampled otherwise.
pub fn certify_general_position(
    points: &[Vec<BigRational>],
    size: usize,
    rng: &mut impl Rng,
) -> Result<GeneralPositionCertificate, EmbeddingError> {
    let n = points.len();
    let size = size.min(n);
    let family = binomial(n as u64, size as u64);
    let check = |subset: &[usize]| -> Result<(), EmbeddingError> {
        let pts: Vec<&Vec<BigRational>> = subset.iter().map(|&i| &points[i]).collect();
        if size > 0 && affine_rank(&pts) != size - 1 {
            return Err(EmbeddingError::Degenerate { subset: subset.to_vec() });
        }
        Ok(())
    };
    if size == 0 {
        return Ok(GeneralPositionCertificate { subset_size: 0, subsets_checked: 0, exhaustive: true });
    }
    if family <= EXHAUSTIVE_LIMIT {
        let mut c: Vec<usize> = (0..size).collect();
        loop {
            check(&c)?;
            if !next_combination(&mut c, n) {
                break;
            }
        }
        return Ok(GeneralPositionCertificate { subset_size: size, subsets_checked: family, exhaustive: true });
    }
    // equal parameters are the typical failure; sampling alone could miss them
    let distinct: BTreeSet<&Vec<BigRational>> = points.iter().collect();
    if distinct.len() < n {
        let (i, j) = first_duplicate(points);
        return Err(EmbeddingError::Degenerate { subset: vec![i, j] });
    }
    for _ in 0..SAMPLED_SUBSETS {
        let mut subset = sample(rng, n, size).into_vec();
        subset.sort_unstable();
        check(&subset)?;
    }
    Ok(GeneralPositionCertificate { subset_size: size, subsets_checked: SAMPLED_SUBSETS as u64, exhaustive: false })
}

fn first_duplicate(points: &[Vec<BigRational>]) -> (usize, usize) {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return (i, j);
            }
        }
    }
    unreachable!("caller found a duplicate")
}

/// Vertices placed at the given parameters on the moment curve of degree
/// `2k - 1`, certified so that any `2k` images are affinely independent.
pub fn moment_embedding_with_params(
    params: Vec<BigRational>,
    k: usize,
    rng: &mut impl Rng,
) -> Result<(EmbeddingData, GeneralPositionCertificate), EmbeddingError> {
    if k == 0 {
        return Err(EmbeddingError::ZeroK);
    }
    let dimension = 2 * k - 1;
    let coordinates: Vec<Vec<BigRational>> = params.iter().map(|t| moment_point(t, dimension)).collect();
    let cert = certify_general_position(&coordinates, 2 * k, rng)?;
    Ok((EmbeddingData { dimension, coordinates, parameters: Some(params), bends: BTreeMap::new() }, cert))
}

/// Seeded moment-curve embedding of `vertices` points; resamples on a
/// failed certification and reports failure after [`MAX_ATTEMPTS`].
pub fn moment_embedding(
    vertices: usize,
    k: usize,
    seed: u64,
) -> Result<(EmbeddingData, GeneralPositionCertificate), EmbeddingError> {
    if k == 0 {
        return Err(EmbeddingError::ZeroK);
    }
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = trial_rng(seed, attempt);
        let params = (0..vertices).map(|_| random_param(&mut rng)).collect();
        match moment_embedding_with_params(params, k, &mut rng) {
            Ok(found) => return Ok(found),
            Err(EmbeddingError::Degenerate { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(EmbeddingError::Exhausted { attempts: MAX_ATTEMPTS })
}

/// Moment-curve placement whose only check is that the parameters are
/// distinct, which already forces general position (Vandermonde). Used
/// where a stronger certificate is computed downstream.
pub fn moment_placement(vertices: usize, k: usize, rng: &mut impl Rng) -> Result<EmbeddingData, EmbeddingError> {
    if k == 0 {
        return Err(EmbeddingError::ZeroK);
    }
    let params: Vec<BigRational> = (0..vertices).map(|_| random_param(rng)).collect();
    let distinct: BTreeSet<&BigRational> = params.iter().collect();
    if distinct.len() < params.len() {
        let i = (0..params.len()).find(|&i| params[..i].contains(&params[i])).expect("duplicate");
        let j = params.iter().position(|p| *p == params[i]).expect("present");
        return Err(EmbeddingError::Degenerate { subset: vec![j, i] });
    }
    let dimension = 2 * k - 1;
    let coordinates = params.iter().map(|t| moment_point(t, dimension)).collect();
    Ok(EmbeddingData { dimension, coordinates, parameters: Some(params), bends: BTreeMap::new() })
}
