//! Finite simplicial complexes given by maximal simplices, and simplicial
//! maps between them.

use std::collections::{BTreeMap, BTreeSet};

use pqmaps_core::FieldKind;
use serde::{Deserialize, Serialize};

use crate::chain::{Cell, FilteredChainComplex};

/// Largest simplex dimension accepted; the face closure is exponential.
pub const MAX_SIMPLEX_DIM: usize = 12;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("simplex {index} is empty")]
    EmptySimplex { index: usize },
    #[error("simplex {index} uses vertex {vertex} but there are only {count} vertices")]
    VertexOutOfRange { index: usize, vertex: usize, count: usize },
    #[error("simplex {index} repeats vertex {vertex}")]
    RepeatedVertex { index: usize, vertex: usize },
    #[error("simplex {index} has dimension {dim}, above the supported {max}")]
    TooLarge { index: usize, dim: usize, max: usize },
    #[error("vertex map has {found} entries for {expected} source vertices")]
    MapLength { expected: usize, found: usize },
    #[error("vertex {vertex} maps to {image}, outside the target")]
    MapOutOfRange { vertex: usize, image: usize },
    #[error("image of source simplex {simplex:?} is not a target simplex")]
    NotSimplicial { simplex: Vec<usize> },
    #[error("target simplex {simplex:?} has no preimage")]
    NotSurjective { simplex: Vec<usize> },
}

/// Vertices `0..vertices`, each a 0-simplex, plus the downward closure of
/// `simplices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    vertices: usize,
    simplices: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct ComplexWire {
    vertices: usize,
    simplices: Vec<Vec<usize>>,
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = ComplexWire::deserialize(d)?;
        SimplicialComplex::new(w.vertices, w.simplices).map_err(serde::de::Error::custom)
    }
}

impl SimplicialComplex {
    /// Simplices are sorted and deduplicated; non-maximal ones are dropped.
    pub fn new(vertices: usize, simplices: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        let mut clean: BTreeSet<Vec<usize>> = BTreeSet::new();
        for (index, s) in simplices.into_iter().enumerate() {
            if s.is_empty() {
                return Err(ComplexError::EmptySimplex { index });
            }
            let mut sorted = s.clone();
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(ComplexError::RepeatedVertex { index, vertex: w[0] });
                }
            }
            if let Some(&v) = sorted.iter().find(|&&v| v >= vertices) {
                return Err(ComplexError::VertexOutOfRange { index, vertex: v, count: vertices });
            }
            if sorted.len() > MAX_SIMPLEX_DIM + 1 {
                return Err(ComplexError::TooLarge { index, dim: sorted.len() - 1, max: MAX_SIMPLEX_DIM });
            }
            clean.insert(sorted);
        }
        let all: Vec<Vec<usize>> = clean.into_iter().collect();
        let maximal = all
            .iter()
            .filter(|s| !all.iter().any(|t| t.len() > s.len() && is_subset(s, t)))
            .cloned()
            .collect();
        Ok(SimplicialComplex { vertices, simplices: maximal })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn maximal_simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    /// Every simplex, sorted by dimension and then lexicographically.
    pub fn all_simplices(&self) -> Vec<Vec<usize>> {
        let mut set: BTreeSet<(usize, Vec<usize>)> = (0..self.vertices).map(|v| (0, vec![v])).collect();
        for s in &self.simplices {
            for mask in 1u32..(1 << s.len()) {
                let face: Vec<usize> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                set.insert((face.len() - 1, face));
            }
        }
        set.into_iter().map(|(_, f)| f).collect()
    }

    pub fn simplex_count(&self) -> usize {
        self.all_simplices().len()
    }

    pub fn dimension(&self) -> usize {
        self.simplices.iter().map(|s| s.len() - 1).max().unwrap_or(0)
    }

    /// Simplicial chain complex, all cells at level 1.
    pub fn chain_complex(&self) -> FilteredChainComplex {
        let all = self.all_simplices();
        let index: BTreeMap<&[usize], usize> = all.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let cells = all.iter().map(|s| Cell { dim: s.len() - 1, level: 1 }).collect();
        let boundary = all
            .iter()
            .map(|s| {
                if s.len() == 1 {
                    return Vec::new();
                }
                (0..s.len())
                    .map(|i| {
                        let mut face = s.clone();
                        face.remove(i);
                        (index[face.as_slice()], if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        FilteredChainComplex::new(cells, boundary).expect("simplicial boundary is a filtered complex")
    }

    pub fn betti(&self, field: FieldKind) -> Vec<u64> {
        self.chain_complex().betti(field)
    }

    /// Boundary of the standard `n`-simplex.
    pub fn sphere(n: usize) -> SimplicialComplex {
        let facets = (0..=n + 1).map(|skip| (0..=n + 1).filter(|&v| v != skip).collect()).collect();
        SimplicialComplex::new(n + 2, facets).expect("valid")
    }

    pub fn point() -> SimplicialComplex {
        SimplicialComplex::new(1, vec![vec![0]]).expect("valid")
    }

    /// Cycle graph on `n >= 3` vertices.
    pub fn cycle(n: usize) -> SimplicialComplex {
        SimplicialComplex::new(n, (0..n).map(|i| vec![i, (i + 1) % n]).collect()).expect("valid")
    }

    /// The 7-vertex triangulation of the torus.
    pub fn torus7() -> SimplicialComplex {
        let facets = (0..7).flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]]).collect();
        SimplicialComplex::new(7, facets).expect("valid")
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

/// Vertex assignment between complexes that carries simplices to simplices
/// and hits every target simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: Vec<usize>,
}

#[derive(Deserialize)]
struct MapWire {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: Vec<usize>,
}

impl<'de> Deserialize<'de> for SimplicialMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = MapWire::deserialize(d)?;
        SimplicialMap::new(w.source, w.target, w.vertex_map).map_err(serde::de::Error::custom)
    }
}

impl SimplicialMap {
    pub fn new(source: SimplicialComplex, target: SimplicialComplex, vertex_map: Vec<usize>) -> Result<Self, ComplexError> {
        if vertex_map.len() != source.vertex_count() {
            return Err(ComplexError::MapLength { expected: source.vertex_count(), found: vertex_map.len() });
        }
        if let Some((vertex, &image)) = vertex_map.iter().enumerate().find(|(_, &w)| w >= target.vertex_count()) {
            return Err(ComplexError::MapOutOfRange { vertex, image });
        }
        let target_all: BTreeSet<Vec<usize>> = target.all_simplices().into_iter().collect();
        let mut hit: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in source.all_simplices() {
            let img = image_of(&vertex_map, &s);
            if !target_all.contains(&img) {
                return Err(ComplexError::NotSimplicial { simplex: s });
            }
            hit.insert(img);
        }
        if let Some(missing) = target_all.iter().find(|t| !hit.contains(*t)) {
            return Err(ComplexError::NotSurjective { simplex: missing.clone() });
        }
        Ok(SimplicialMap { source, target, vertex_map })
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    /// Injective on every source simplex, i.e. finite-to-one on the
    /// geometric realization.
    pub fn is_finite_to_one(&self) -> bool {
        self.source.maximal_simplices().iter().all(|s| image_of(&self.vertex_map, s).len() == s.len())
    }

    /// For each target simplex (in [`SimplicialComplex::all_simplices`]
    /// order), the source simplices mapping bijectively onto it, each listed
    /// so that entry `i` maps to vertex `i` of the target simplex.
    pub fn fibers(&self) -> Vec<(Vec<usize>, Vec<Vec<usize>>)> {
        let targets = self.target.all_simplices();
        let mut by_target: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = targets.iter().map(|t| (t.clone(), Vec::new())).collect();
        for s in self.source.all_simplices() {
            let img = image_of(&self.vertex_map, &s);
            if img.len() != s.len() {
                continue;
            }
            let aligned = img.iter().map(|w| *s.iter().find(|&&v| self.vertex_map[v] == *w).expect("in image")).collect();
            by_target.get_mut(&img).expect("simplicial").push(aligned);
        }
        targets
            .into_iter()
            .map(|t| {
                let f = by_target.remove(&t).unwrap_or_default();
                (t, f)
            })
            .collect()
    }

    pub fn max_fiber(&self) -> usize {
        self.fibers().iter().map(|(_, f)| f.len()).max().unwrap_or(0)
    }

    pub fn identity(complex: SimplicialComplex) -> SimplicialMap {
        let n = complex.vertex_count();
        SimplicialMap::new(complex.clone(), complex, (0..n).collect()).expect("identity is a surjection")
    }

    /// Two points over one point.
    pub fn two_points() -> SimplicialMap {
        let source = SimplicialComplex::new(2, vec![vec![0], vec![1]]).expect("valid");
        SimplicialMap::new(source, SimplicialComplex::point(), vec![0, 0]).expect("valid")
    }

    /// The hexagon wrapped twice around the triangle.
    pub fn hexagon_double_cover() -> SimplicialMap {
        SimplicialMap::new(SimplicialComplex::cycle(6), SimplicialComplex::cycle(3), (0..6).map(|i| i % 3).collect())
            .expect("valid")
    }
}

fn image_of(map: &[usize], s: &[usize]) -> Vec<usize> {
    let mut img: Vec<usize> = s.iter().map(|&v| map[v]).collect();
    img.sort_unstable();
    img.dedup();
    img
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_homology() {
        assert_eq!(SimplicialComplex::point().betti(FieldKind::Rational), vec![1]);
        assert_eq!(SimplicialComplex::sphere(2).betti(FieldKind::Rational), vec![1, 0, 1]);
        assert_eq!(SimplicialComplex::torus7().betti(FieldKind::Rational), vec![1, 2, 1]);
        assert_eq!(SimplicialComplex::torus7().betti(FieldKind::F2), vec![1, 2, 1]);
        assert_eq!(SimplicialComplex::cycle(5).betti(FieldKind::F3), vec![1, 1]);
    }

    #[test]
    fn torus_is_closed_surface() {
        let t = SimplicialComplex::torus7();
        assert_eq!(t.maximal_simplices().len(), 14);
        assert_eq!(t.simplex_count(), 7 + 21 + 14);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(SimplicialComplex::new(2, vec![vec![0, 2]]), Err(ComplexError::VertexOutOfRange { .. })));
        assert!(matches!(SimplicialComplex::new(2, vec![vec![1, 1]]), Err(ComplexError::RepeatedVertex { .. })));
        let y = SimplicialComplex::cycle(3);
        let x = SimplicialComplex::new(2, vec![vec![0, 1]]).unwrap();
        assert!(matches!(SimplicialMap::new(x, y.clone(), vec![0, 1]), Err(ComplexError::NotSurjective { .. })));
        let x = SimplicialComplex::new(2, vec![vec![0], vec![1]]).unwrap();
        let seg = SimplicialComplex::new(2, vec![vec![0, 1]]).unwrap();
        assert!(matches!(SimplicialMap::new(x, seg, vec![0, 1]), Err(ComplexError::NotSurjective { .. })));
        let tri = SimplicialComplex::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(matches!(SimplicialMap::new(tri, y, vec![0, 1, 2]), Err(ComplexError::NotSimplicial { .. })));
    }

    #[test]
    fn fibers_are_aligned() {
        let h = SimplicialMap::hexagon_double_cover();
        assert!(h.is_finite_to_one());
        let fibers = h.fibers();
        let (t, f) = fibers.iter().find(|(t, _)| t == &vec![0, 2]).unwrap();
        assert_eq!(f.len(), 2);
        for s in f {
            for (i, v) in s.iter().enumerate() {
                assert_eq!(h.vertex_map()[*v], t[i]);
            }
        }
        assert_eq!(h.max_fiber(), 2);
    }

    #[test]
    fn collapsing_map_is_not_finite() {
        let seg = SimplicialComplex::new(2, vec![vec![0, 1]]).unwrap();
        let h = SimplicialMap::new(seg, SimplicialComplex::point(), vec![0, 0]).unwrap();
        assert!(!h.is_finite_to_one());
    }

    #[test]
    fn json_shape() {
        let h = SimplicialMap::two_points();
        let v = serde_json::to_value(&h).unwrap();
        assert_eq!(v["vertex_map"], serde_json::json!([0, 0]));
        assert_eq!(v["target"]["simplices"], serde_json::json!([[0]]));
        let back: SimplicialMap = serde_json::from_value(v).unwrap();
        assert_eq!(back, h);
    }
}
