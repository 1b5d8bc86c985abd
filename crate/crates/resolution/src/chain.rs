//! Finite filtered chain complexes with integer boundary coefficients, and
//! their homology over a chosen field.

use std::collections::HashMap;

use pqmaps_core::field::Field;
use pqmaps_core::linalg::{rank_of_columns, SparseVec};
use pqmaps_core::FieldKind;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("boundary has {found} columns but there are {cells} cells")]
    Shape { cells: usize, found: usize },
    #[error("cell {cell}: boundary refers to missing cell {target}")]
    MissingCell { cell: usize, target: usize },
    #[error("cell {cell} of dimension {dim} has a boundary term in dimension {found}")]
    Degree { cell: usize, dim: usize, found: usize },
    #[error("cell {cell} at level {level} has a boundary term at higher level {found}")]
    Filtration { cell: usize, level: usize, found: usize },
    #[error("boundary of boundary is nonzero on cell {cell}")]
    NotAComplex { cell: usize },
}

/// Run a generic function for the field selected at runtime.
macro_rules! with_field {
    ($kind:expr, $func:ident ( $($arg:expr),* $(,)? )) => {
        match $kind {
            pqmaps_core::FieldKind::Rational => $func::<num_rational::BigRational>($($arg),*),
            pqmaps_core::FieldKind::F2 => $func::<pqmaps_core::field::F2>($($arg),*),
            pqmaps_core::FieldKind::F3 => $func::<pqmaps_core::field::F3>($($arg),*),
            pqmaps_core::FieldKind::F5 => $func::<pqmaps_core::field::F5>($($arg),*),
            pqmaps_core::FieldKind::F7 => $func::<pqmaps_core::field::F7>($($arg),*),
        }
    };
}
pub(crate) use with_field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub dim: usize,
    pub level: usize,
}

/// Cells with a dimension and a filtration level; `boundary[c]` lists
/// `(face, coefficient)` pairs. Construction checks that the boundary lowers
/// dimension by one, never raises the level, and squares to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilteredChainComplex {
    cells: Vec<Cell>,
    boundary: Vec<Vec<(usize, i64)>>,
}

#[derive(Deserialize)]
struct Wire {
    cells: Vec<Cell>,
    boundary: Vec<Vec<(usize, i64)>>,
}

impl<'de> Deserialize<'de> for FilteredChainComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        FilteredChainComplex::new(w.cells, w.boundary).map_err(serde::de::Error::custom)
    }
}

impl FilteredChainComplex {
    pub fn new(cells: Vec<Cell>, boundary: Vec<Vec<(usize, i64)>>) -> Result<Self, ChainError> {
        if cells.len() != boundary.len() {
            return Err(ChainError::Shape { cells: cells.len(), found: boundary.len() });
        }
        let mut boundary = boundary;
        for (c, col) in boundary.iter_mut().enumerate() {
            *col = normalize(std::mem::take(col));
            for &(t, _) in col.iter() {
                let face = cells.get(t).ok_or(ChainError::MissingCell { cell: c, target: t })?;
                if face.dim + 1 != cells[c].dim {
                    return Err(ChainError::Degree { cell: c, dim: cells[c].dim, found: face.dim });
                }
                if face.level > cells[c].level {
                    return Err(ChainError::Filtration { cell: c, level: cells[c].level, found: face.level });
                }
            }
        }
        for (c, col) in boundary.iter().enumerate() {
            let mut acc: HashMap<usize, i128> = HashMap::new();
            for &(t, a) in col {
                for &(u, b) in &boundary[t] {
                    *acc.entry(u).or_default() += a as i128 * b as i128;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return Err(ChainError::NotAComplex { cell: c });
            }
        }
        Ok(FilteredChainComplex { cells, boundary })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn boundary(&self) -> &[Vec<(usize, i64)>] {
        &self.boundary
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `None` for the empty complex.
    pub fn max_dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    /// `(min, max)` filtration level, `None` for the empty complex.
    pub fn level_range(&self) -> Option<(usize, usize)> {
        let min = self.cells.iter().map(|c| c.level).min()?;
        let max = self.cells.iter().map(|c| c.level).max()?;
        Some((min, max))
    }

    pub fn count_in_dim(&self, dim: usize) -> usize {
        self.cells.iter().filter(|c| c.dim == dim).count()
    }

    /// Subcomplex of cells at level `<= level`, reindexed.
    pub fn truncate(&self, level: usize) -> FilteredChainComplex {
        let mut map = vec![usize::MAX; self.cells.len()];
        let mut cells = Vec::new();
        for (i, c) in self.cells.iter().enumerate() {
            if c.level <= level {
                map[i] = cells.len();
                cells.push(*c);
            }
        }
        let boundary = (0..self.cells.len())
            .filter(|&i| map[i] != usize::MAX)
            .map(|i| self.boundary[i].iter().map(|&(t, a)| (map[t], a)).collect())
            .collect();
        FilteredChainComplex { cells, boundary }
    }

    /// Disjoint union; the cells of `other` come after those of `self`.
    pub fn direct_sum(&self, other: &FilteredChainComplex) -> FilteredChainComplex {
        let shift = self.cells.len();
        let mut cells = self.cells.clone();
        cells.extend_from_slice(&other.cells);
        let mut boundary = self.boundary.clone();
        boundary.extend(other.boundary.iter().map(|col| col.iter().map(|&(t, a)| (t + shift, a)).collect()));
        FilteredChainComplex { cells, boundary }
    }

    /// Same cells with every level replaced by `f(level)`; fails if the
    /// result is not filtered.
    pub fn relevel(&self, f: impl Fn(usize) -> usize) -> Result<FilteredChainComplex, ChainError> {
        let cells = self.cells.iter().map(|c| Cell { dim: c.dim, level: f(c.level) }).collect();
        FilteredChainComplex::new(cells, self.boundary.clone())
    }

    pub fn betti(&self, field: FieldKind) -> Vec<u64> {
        with_field!(field, betti_generic(self))
    }

    /// Betti numbers of every filtration stage `F_k` for `k` in the level
    /// range, each padded to the length of the full complex's Betti vector.
    pub fn level_table(&self, field: FieldKind) -> Vec<LevelBetti> {
        let Some((lo, hi)) = self.level_range() else {
            return Vec::new();
        };
        let width = self.max_dim().map_or(0, |d| d + 1);
        (lo..=hi)
            .map(|level| {
                let mut betti = self.truncate(level).betti(field);
                betti.resize(width, 0);
                LevelBetti { level, betti }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelBetti {
    pub level: usize,
    pub betti: Vec<u64>,
}

fn normalize(col: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    let mut acc: std::collections::BTreeMap<usize, i64> = std::collections::BTreeMap::new();
    for (t, a) in col {
        *acc.entry(t).or_default() += a;
    }
    acc.into_iter().filter(|&(_, a)| a != 0).collect()
}

/// Per-dimension local indexing of a complex together with its boundary
/// columns over `F`.
pub(crate) struct Graded<F> {
    /// `by_dim[d]` lists global cell ids of dimension `d`.
    pub by_dim: Vec<Vec<usize>>,
    /// `columns[d][j]`: boundary of the `j`-th cell of dimension `d`, in
    /// local coordinates of dimension `d - 1`.
    pub columns: Vec<Vec<SparseVec<F>>>,
}

impl<F: Field> Graded<F> {
    pub fn new(fc: &FilteredChainComplex) -> Self {
        let top = fc.max_dim().map_or(0, |d| d + 1);
        let mut by_dim = vec![Vec::new(); top];
        let mut local = vec![0; fc.len()];
        for (i, c) in fc.cells.iter().enumerate() {
            local[i] = by_dim[c.dim].len();
            by_dim[c.dim].push(i);
        }
        let columns = by_dim
            .iter()
            .map(|ids| {
                ids.iter()
                    .map(|&i| {
                        SparseVec::from_pairs(
                            fc.boundary[i].iter().map(|&(t, a)| (local[t], F::from_i64(a))).collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        Graded { by_dim, columns }
    }

    pub fn betti(&self) -> Vec<u64> {
        let ranks: Vec<usize> = self.columns.iter().map(|cols| rank_of_columns(cols)).collect();
        (0..self.by_dim.len())
            .map(|d| {
                let next = ranks.get(d + 1).copied().unwrap_or(0);
                (self.by_dim[d].len() - ranks[d] - next) as u64
            })
            .collect()
    }
}

fn betti_generic<F: Field>(fc: &FilteredChainComplex) -> Vec<u64> {
    Graded::<F>::new(fc).betti()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Segment with endpoints at level 1 and the interior at level 2.
    fn segment() -> FilteredChainComplex {
        FilteredChainComplex::new(
            vec![Cell { dim: 0, level: 1 }, Cell { dim: 0, level: 1 }, Cell { dim: 1, level: 2 }],
            vec![vec![], vec![], vec![(1, 1), (0, -1)]],
        )
        .unwrap()
    }

    #[test]
    fn segment_homology() {
        let s = segment();
        assert_eq!(s.betti(FieldKind::Rational), vec![1, 0]);
        assert_eq!(s.betti(FieldKind::F2), vec![1, 0]);
        let t = s.level_table(FieldKind::Rational);
        assert_eq!(t[0], LevelBetti { level: 1, betti: vec![2, 0] });
        assert_eq!(t[1], LevelBetti { level: 2, betti: vec![1, 0] });
    }

    #[test]
    fn rejects_filtration_violation() {
        let err = FilteredChainComplex::new(
            vec![Cell { dim: 0, level: 2 }, Cell { dim: 1, level: 1 }],
            vec![vec![], vec![(0, 1)]],
        )
        .unwrap_err();
        assert!(matches!(err, ChainError::Filtration { .. }));
    }

    #[test]
    fn rejects_nonzero_square() {
        // a triangle whose edge boundaries are inconsistent
        let cells = vec![
            Cell { dim: 0, level: 1 },
            Cell { dim: 0, level: 1 },
            Cell { dim: 1, level: 1 },
            Cell { dim: 2, level: 1 },
        ];
        let err = FilteredChainComplex::new(cells, vec![vec![], vec![], vec![(1, 1), (0, -1)], vec![(2, 1)]]).unwrap_err();
        assert_eq!(err, ChainError::NotAComplex { cell: 3 });
    }

    #[test]
    fn projective_plane_torsion_is_field_dependent() {
        // RP^2 as one cell in each dimension: d1 = 0, d2 = 2
        let fc = FilteredChainComplex::new(
            vec![Cell { dim: 0, level: 1 }, Cell { dim: 1, level: 1 }, Cell { dim: 2, level: 1 }],
            vec![vec![], vec![], vec![(1, 2)]],
        )
        .unwrap();
        assert_eq!(fc.betti(FieldKind::Rational), vec![1, 0, 0]);
        assert_eq!(fc.betti(FieldKind::F2), vec![1, 1, 1]);
        assert_eq!(fc.betti(FieldKind::F3), vec![1, 0, 0]);
    }

    #[test]
    fn json_round_trip_validates() {
        let s = segment();
        let text = serde_json::to_string(&s).unwrap();
        let back: FilteredChainComplex = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let bad = r#"{"cells":[{"dim":0,"level":1}],"boundary":[[[3,1]]]}"#;
        assert!(serde_json::from_str::<FilteredChainComplex>(bad).is_err());
    }
}
