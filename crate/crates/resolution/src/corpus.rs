//! Seeded random finite-to-one simplicial surjections.

use rand::Rng;
use serde::{Deserialize, Serialize};

use pqmaps_core::seeds::trial_rng;

use crate::complex::{SimplicialComplex, SimplicialMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusParams {
    pub min_target_vertices: usize,
    pub max_target_vertices: usize,
    pub max_facets: usize,
    /// Largest target simplex dimension.
    pub max_dim: usize,
    /// Source vertices over each target vertex: `1..=max_sheets`.
    pub max_sheets: usize,
    /// Lifts of each target facet: `1..=max_lifts`.
    pub max_lifts: usize,
    /// Cap on the number of simplices of source and target.
    pub max_simplices: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            min_target_vertices: 3,
            max_target_vertices: 6,
            max_facets: 4,
            max_dim: 2,
            max_sheets: 3,
            max_lifts: 3,
            max_simplices: 200,
        }
    }
}

/// One random surjection: a random target, `1..=max_sheets` source vertices
/// over each target vertex, and `1..=max_lifts` lifts of every facet, each
/// choosing one source vertex over every vertex of the facet. Lifts are
/// injective on vertices, so the map is finite-to-one.
pub fn random_surjection(rng: &mut impl Rng, params: &CorpusParams) -> SimplicialMap {
    loop {
        let n = rng.gen_range(params.min_target_vertices..=params.max_target_vertices);
        let facets: Vec<Vec<usize>> = (0..rng.gen_range(1..=params.max_facets))
            .map(|_| {
                let size = rng.gen_range(2..=(params.max_dim + 1).min(n));
                let mut s = rand::seq::index::sample(rng, n, size).into_vec();
                s.sort_unstable();
                s
            })
            .collect();
        let target = SimplicialComplex::new(n, facets).expect("valid target");

        let mut sheets: Vec<Vec<usize>> = Vec::with_capacity(n);
        let mut vertex_map = Vec::new();
        for y in 0..n {
            let count = rng.gen_range(1..=params.max_sheets);
            sheets.push((vertex_map.len()..vertex_map.len() + count).collect());
            vertex_map.extend(std::iter::repeat_n(y, count));
        }
        let mut lifts = Vec::new();
        for facet in target.maximal_simplices() {
            for _ in 0..rng.gen_range(1..=params.max_lifts) {
                lifts.push(facet.iter().map(|&y| sheets[y][rng.gen_range(0..sheets[y].len())]).collect());
            }
        }
        let source = SimplicialComplex::new(vertex_map.len(), lifts).expect("valid source");
        if source.simplex_count() > params.max_simplices || target.simplex_count() > params.max_simplices {
            continue;
        }
        return SimplicialMap::new(source, target, vertex_map).expect("lifts give a surjection");
    }
}

pub fn corpus(seed: u64, count: usize, params: &CorpusParams) -> Vec<SimplicialMap> {
    (0..count as u64).map(|i| random_surjection(&mut trial_rng(seed, i), params)).collect()
}
