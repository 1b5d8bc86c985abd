//! Pages of the spectral sequence of a filtered chain complex, computed
//! directly from the almost-cycle subspaces
//! `Z^r_p = { x in F_p C : dx in F_{p-r} C }`:
//!
//! `E^r_p = Z^r_p / (Z^{r-1}_{p-1} + d Z^{r-1}_{p+r-1})`.
//!
//! Entries are keyed by filtration level `p` and total degree `n`; the
//! differential `d^r` goes from `(p, n)` to `(p - r, n - 1)`.

use std::collections::{BTreeMap, HashMap};

use pqmaps_core::field::Field;
use pqmaps_core::linalg::{rank_and_kernel, span_dim, SparseVec};
use pqmaps_core::FieldKind;
use serde::{Deserialize, Serialize};

use crate::chain::{with_field, FilteredChainComplex, Graded};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageEntry {
    pub level: usize,
    pub degree: usize,
    pub rank: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Differential {
    pub from_level: usize,
    pub degree: usize,
    pub rank: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Page {
    pub r: usize,
    /// Nonzero entries only.
    pub entries: Vec<PageEntry>,
    /// Nonzero differentials `d^r` leaving each entry.
    pub differentials: Vec<Differential>,
}

impl Page {
    pub fn rank(&self, level: usize, degree: usize) -> u64 {
        self.entries.iter().find(|e| e.level == level && e.degree == degree).map_or(0, |e| e.rank)
    }

    pub fn total_in_degree(&self, degree: usize) -> u64 {
        self.entries.iter().filter(|e| e.degree == degree).map(|e| e.rank).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralPages {
    pub field: FieldKind,
    /// `E^1, E^2, ...` up to the first page past which all differentials
    /// vanish for degree reasons; the last page is `E^infinity`.
    pub pages: Vec<Page>,
    pub betti: Vec<u64>,
    /// Graded ranks of `E^infinity` summed over levels, per degree.
    pub infinity_totals: Vec<u64>,
    /// `infinity_totals == betti`.
    pub converged: bool,
    /// Every page equals the homology of the previous one (rank check).
    pub consistent: bool,
}

impl SpectralPages {
    pub fn e1(&self) -> &Page {
        &self.pages[0]
    }

    pub fn infinity(&self) -> &Page {
        self.pages.last().expect("at least one page")
    }
}

pub fn spectral_sequence(fc: &FilteredChainComplex, field: FieldKind) -> SpectralPages {
    with_field!(field, pages_generic(fc, field))
}

struct Engine<'a, F> {
    fc: &'a FilteredChainComplex,
    g: Graded<F>,
    lo: usize,
    hi: usize,
    z_cache: HashMap<(i64, i64, usize), Vec<SparseVec<F>>>,
}

impl<F: Field> Engine<'_, F> {
    fn level_of(&self, dim: usize, local: usize) -> usize {
        self.fc.cells()[self.g.by_dim[dim][local]].level
    }

    fn dims(&self) -> usize {
        self.g.by_dim.len()
    }

    /// Basis of `Z^r_p` in degree `n`, in local coordinates.
    fn z(&mut self, r: i64, p: i64, n: usize) -> Vec<SparseVec<F>> {
        let (lo, hi) = (self.lo as i64, self.hi as i64);
        if n >= self.dims() || p < lo {
            return Vec::new();
        }
        // only `min(p, hi)` and the cut level `p - r`, clamped to where it
        // still constrains anything, matter
        let pe = p.min(hi);
        let cut = (p - r).clamp(lo - 1, pe);
        if let Some(v) = self.z_cache.get(&(pe, cut, n)) {
            return v.clone();
        }
        let members: Vec<usize> =
            (0..self.g.by_dim[n].len()).filter(|&j| self.level_of(n, j) as i64 <= pe).collect();
        let basis: Vec<SparseVec<F>> = if cut == pe || n == 0 {
            members.iter().map(|&j| SparseVec::unit(j)).collect()
        } else {
            let cols: Vec<SparseVec<F>> = members
                .iter()
                .map(|&j| self.g.columns[n][j].filter(|row| self.level_of(n - 1, row) as i64 > cut))
                .collect();
            let (_, kernel) = rank_and_kernel(&cols);
            kernel
                .into_iter()
                .map(|k| SparseVec::from_pairs(k.entries().iter().map(|(i, c)| (members[*i], c.clone())).collect()))
                .collect()
        };
        self.z_cache.insert((pe, cut, n), basis.clone());
        basis
    }

    fn apply_d(&self, n: usize, v: &SparseVec<F>) -> SparseVec<F> {
        let mut out = SparseVec::new();
        for (j, c) in v.entries() {
            out = out.axpy(c, &self.g.columns[n][*j]);
        }
        out
    }

    /// `d Z^r_p` in degree `n - 1`.
    fn dz(&mut self, r: i64, p: i64, n: usize) -> Vec<SparseVec<F>> {
        if n == 0 {
            return Vec::new();
        }
        self.z(r, p, n).iter().map(|v| self.apply_d(n, v)).collect()
    }

    fn entry(&mut self, r: i64, p: i64, n: usize) -> u64 {
        let num = self.z(r, p, n).len();
        let mut den = self.z(r - 1, p - 1, n);
        den.extend(self.dz(r - 1, p + r - 1, n + 1));
        (num - span_dim(den.iter())) as u64
    }

    /// Rank of `d^r : E^r_p(n) -> E^r_{p-r}(n-1)`.
    fn differential(&mut self, r: i64, p: i64, n: usize) -> u64 {
        if n == 0 {
            return 0;
        }
        let base = self.z(r - 1, p - r - 1, n - 1);
        let mut with_image = self.dz(r, p, n);
        with_image.extend(base.iter().cloned());
        let mut without = self.dz(r - 1, p - 1, n);
        without.extend(base);
        (span_dim(with_image.iter()) - span_dim(without.iter())) as u64
    }
}

fn pages_generic<F: Field>(fc: &FilteredChainComplex, field: FieldKind) -> SpectralPages {
    let g = Graded::<F>::new(fc);
    let betti = g.betti();
    let Some((lo, hi)) = fc.level_range() else {
        let empty = Page { r: 1, entries: Vec::new(), differentials: Vec::new() };
        return SpectralPages {
            field,
            pages: vec![empty],
            betti,
            infinity_totals: Vec::new(),
            converged: true,
            consistent: true,
        };
    };
    let dims = g.by_dim.len();
    let mut eng = Engine { fc, g, lo, hi, z_cache: HashMap::new() };
    let last = hi - lo + 1;
    let mut pages: Vec<Page> = Vec::new();
    let mut consistent = true;
    for r in 1..=last {
        let mut entries = Vec::new();
        let mut differentials = Vec::new();
        let mut table: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for p in lo..=hi {
            for n in 0..dims {
                let rank = eng.entry(r as i64, p as i64, n);
                if rank > 0 {
                    table.insert((p, n), rank);
                    entries.push(PageEntry { level: p, degree: n, rank });
                }
                if r < last {
                    let d = eng.differential(r as i64, p as i64, n);
                    if d > 0 {
                        differentials.push(Differential { from_level: p, degree: n, rank: d });
                    }
                }
            }
        }
        if let Some(prev) = pages.last() {
            // E^r = ker d / im d on the previous page
            for p in lo..=hi {
                for n in 0..dims {
                    let out = prev.differentials.iter().find(|d| d.from_level == p && d.degree == n).map_or(0, |d| d.rank);
                    let into = prev
                        .differentials
                        .iter()
                        .find(|d| d.from_level == p + prev.r && d.degree == n + 1)
                        .map_or(0, |d| d.rank);
                    let expected = prev.rank(p, n) as i64 - out as i64 - into as i64;
                    if expected != table.get(&(p, n)).copied().unwrap_or(0) as i64 {
                        consistent = false;
                    }
                }
            }
        }
        pages.push(Page { r, entries, differentials });
    }
    let infinity = pages.last().expect("nonempty");
    let infinity_totals: Vec<u64> = (0..dims).map(|n| infinity.total_in_degree(n)).collect();
    let converged = infinity_totals == betti;
    SpectralPages { field, pages, betti, infinity_totals, converged, consistent }
}
