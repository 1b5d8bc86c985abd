//! Closed-form invariants of the stabilization spectral sequence: dimensions
//! of the coefficient spaces, the stable range, discriminant codimension, the
//! dimension bound and bundle rank of the resolution strata, `E^1` entries
//! and their numeric evaluation against a Betti table.
//!
//! All arithmetic is on `i64`; every formula is evaluated without
//! special-casing, including the constant-map case `p = q = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{boundary_monomial_count, monomial_count, PolyError};

#[derive(Debug, Error)]
pub enum BookkeepingError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("r = {r} outside the validity range 1..={bound}")]
    OutOfRange { r: i64, bound: i64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("betti table: {0}")]
    Table(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Source dimension `m`, target dimension `n`, bidegree `(p, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProblemParams {
    pub m: u32,
    pub n: u32,
    pub p: u32,
    pub q: u32,
}

impl ProblemParams {
    pub fn new(m: u32, n: u32, p: u32, q: u32) -> Result<Self, BookkeepingError> {
        if m < 1 || m > n {
            return Err(BookkeepingError::InvalidParams(format!("need 1 <= m <= n, got m={m}, n={n}")));
        }
        if q > p {
            return Err(BookkeepingError::InvalidParams(format!("need p >= q, got p={p}, q={q}")));
        }
        Ok(ProblemParams { m, n, p, q })
    }

    /// Degree `d = p - q` of the maps.
    pub fn degree(&self) -> i64 {
        self.p as i64 - self.q as i64
    }

    /// `floor((p + 1) / 2)`: the strip where the resolution strata are
    /// vector bundles over configuration spaces.
    pub fn stable_bound(&self) -> i64 {
        (self.p as i64 + 1) / 2
    }

    /// Upper end of the validity range of the bundle and stable-page
    /// formulas: `p` in the `m = 1, q = 0` case, `floor((p+1)/2)` otherwise.
    pub fn validity_bound(&self) -> i64 {
        if segal_case_flag(self.m, self.q) {
            self.p as i64
        } else {
            self.stable_bound()
        }
    }
}

impl fmt::Display for ProblemParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, n={}, p={}, q={})", self.m, self.n, self.p, self.q)
    }
}

/// Complex dimensions of `V`, `W^i_{p,q}` and `W_{p,q}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub params: ProblemParams,
    /// Dimension of the span of the chart monomials (target of the Veronese map).
    pub dim_v: u64,
    /// All `(p, q)`-monomials in `m + 1` variables.
    pub dim_unrestricted: u64,
    /// Monomials fixed by the boundary (no `z_m`, no `conj(z_m)`).
    pub dim_boundary: u64,
    /// Free coefficients of one component.
    pub dim_wi: u64,
    /// `N_{p,q} = (n + 1) dim W^i`.
    pub n_pq: u64,
}

pub fn dimension_report(params: &ProblemParams) -> Result<DimensionReport, BookkeepingError> {
    let dim_v = monomial_count(params.m, params.p, params.q)?;
    let dim_boundary = boundary_monomial_count(params.m, params.p, params.q)?;
    let dim_wi = dim_v - dim_boundary;
    let n_pq = dim_wi.checked_mul(params.n as u64 + 1).ok_or(PolyError::Overflow)?;
    Ok(DimensionReport { params: *params, dim_v, dim_unrestricted: dim_v, dim_boundary, dim_wi, n_pq })
}

fn n_pq(params: &ProblemParams) -> Result<i64, BookkeepingError> {
    let n = dimension_report(params)?.n_pq;
    i64::try_from(n).map_err(|_| BookkeepingError::Poly(PolyError::Overflow))
}

/// Homology isomorphism range `(2n - 2m + 1)(floor((d + 1) / 2) + 1)`.
pub fn stable_range(m: i64, n: i64, d: i64) -> i64 {
    (2 * n - 2 * m + 1) * ((d + 1).div_euclid(2) + 1)
}

/// Complex codimension `n - m + 1` of the discriminant, and whether it is
/// at least two (so the complement is simply connected).
pub fn discriminant_codim(m: i64, n: i64) -> (i64, bool) {
    (n - m + 1, m < n)
}

/// Real dimension bound `2N - 2r(n - m + 1) + r - 1` for the `r`-th
/// filtration stratum.
pub fn dim_bound(params: &ProblemParams, r: i64) -> Result<i64, BookkeepingError> {
    if r < 1 {
        return Err(BookkeepingError::OutOfRange { r, bound: i64::MAX });
    }
    let (m, n) = (params.m as i64, params.n as i64);
    Ok(2 * n_pq(params)? - 2 * r * (n - m + 1) + r - 1)
}

/// Real rank `2N - (2n + 1)r - 1` of the vector bundle over the
/// configuration space `C_r(C^m)`.
pub fn bundle_rank(params: &ProblemParams, r: i64) -> Result<i64, BookkeepingError> {
    let bound = params.validity_bound();
    if r < 1 || r > bound {
        return Err(BookkeepingError::OutOfRange { r, bound });
    }
    Ok(2 * n_pq(params)? - (2 * params.n as i64 + 1) * r - 1)
}

/// True exactly for `m = 1, q = 0`, where the resolution is non-degenerate
/// and the bundle description holds for all `r <= p`.
pub fn segal_case_flag(m: u32, q: u32) -> bool {
    m == 1 && q == 0
}

/// Symbolic description of an `E^1` entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SymbolicGroup {
    /// `H^degree` of the one-point compactification of `C_r(C^m)`.
    CompactifiedConfigurationCohomology { degree: i64, r: i64, m: i64 },
    /// `H^degree` of the pair `(Z_r, Z_{r-1})` (compactified).
    RelativeResolutionCohomology { degree: i64, r: i64, p: i64, q: i64 },
    Zero { degree: i64 },
}

impl SymbolicGroup {
    pub fn degree(&self) -> i64 {
        match self {
            SymbolicGroup::CompactifiedConfigurationCohomology { degree, .. }
            | SymbolicGroup::RelativeResolutionCohomology { degree, .. }
            | SymbolicGroup::Zero { degree } => *degree,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SymbolicGroup::Zero { .. })
    }
}

impl fmt::Display for SymbolicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicGroup::CompactifiedConfigurationCohomology { degree, r, m } => {
                write!(f, "H^{degree}(C^_{r}(C^{m}))")
            }
            SymbolicGroup::RelativeResolutionCohomology { degree, r, .. } => {
                write!(f, "H^{degree}(Z^_{r}, Z^_{})", r - 1)
            }
            SymbolicGroup::Zero { .. } => f.write_str("0"),
        }
    }
}

/// Stable entry `E^1_{-r,s} = H^{2(n+1)r - s}(C^_r(C^m))`; independent of `p, q`.
pub fn e1_entry_stable(m: i64, n: i64, r: i64, s: i64) -> SymbolicGroup {
    let degree = 2 * (n + 1) * r - s;
    if r < 1 || degree < 0 || degree > 2 * m * r {
        SymbolicGroup::Zero { degree }
    } else {
        SymbolicGroup::CompactifiedConfigurationCohomology { degree, r, m }
    }
}

/// An `E^1` entry together with the homological degree `s - r` it
/// contributes to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1Entry {
    pub r: i64,
    pub s: i64,
    pub group: SymbolicGroup,
    pub contribution_degree: i64,
    pub stable: bool,
}

/// General entry `E^1_{-r,s} = H^{2N + r - s - 1}(Z^_r, Z^_{r-1})`. Zero
/// outside the sector `s >= 2(n - m + 1) r`, which is where the degree
/// index exceeds the dimension bound of the stratum.
pub fn e1_entry_general(params: &ProblemParams, r: i64, s: i64) -> Result<E1Entry, BookkeepingError> {
    if r < 1 || s < 0 {
        return Err(BookkeepingError::InvalidParams(format!("need r >= 1 and s >= 0, got r={r}, s={s}")));
    }
    let degree = 2 * n_pq(params)? + r - s - 1;
    let (m, n) = (params.m as i64, params.n as i64);
    let group = if s < 2 * (n - m + 1) * r || degree < 0 {
        SymbolicGroup::Zero { degree }
    } else {
        SymbolicGroup::RelativeResolutionCohomology { degree, r, p: params.p as i64, q: params.q as i64 }
    };
    Ok(E1Entry { r, s, group, contribution_degree: s - r, stable: false })
}

/// Region of `E^infinity` entries preserved by stabilization:
/// `r <= floor((p+1)/2)` and
/// `2(n-m+1) r <= s <= (2n-2m+1)(floor((p+1)/2) + 1) + r`.
pub fn stable_region(m: i64, n: i64, p: i64, r: i64, s: i64) -> bool {
    let half = (p + 1).div_euclid(2);
    r <= half && 2 * (n - m + 1) * r <= s && s <= (2 * n - 2 * m + 1) * (half + 1) + r
}

/// Sector constraints recorded with a page.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorConstraint {
    /// Nonzero entries satisfy `s >= slope * r`.
    pub slope: i64,
}

/// The `E^1` page over the rectangle `1 <= r <= rmax`, `0 <= s <= smax`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct E1Page {
    pub params: ProblemParams,
    /// Entries with `r <= stable_bound` use the stable formula.
    pub stable_bound: i64,
    pub extended: bool,
    pub sector: SectorConstraint,
    pub entries: Vec<E1Entry>,
}

/// Build the page. With `extended`, the stable strip reaches `r <= p` in the
/// `m = 1, q = 0` case; otherwise it is `r <= floor((p+1)/2)`.
pub fn e1_page(params: &ProblemParams, rmax: i64, smax: i64, extended: bool) -> Result<E1Page, BookkeepingError> {
    let stable_bound = if extended { params.validity_bound() } else { params.stable_bound() };
    let (m, n) = (params.m as i64, params.n as i64);
    let mut entries = Vec::new();
    for r in 1..=rmax {
        for s in 0..=smax {
            let entry = if r <= stable_bound {
                E1Entry { r, s, group: e1_entry_stable(m, n, r, s), contribution_degree: s - r, stable: true }
            } else {
                e1_entry_general(params, r, s)?
            };
            entries.push(entry);
        }
    }
    Ok(E1Page { params: *params, stable_bound, extended, sector: SectorConstraint { slope: 2 * (n - m + 1) }, entries })
}

/// One row of a Betti table: rank of `H~^degree(C^_r(C^m))` over `field`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRow {
    pub r: i64,
    pub degree: i64,
    pub rank: u64,
    pub field: String,
}

/// Ranks of the reduced cohomology of compactified configuration spaces,
/// read from CSV with columns `r,degree,rank,field`. A leading comment line
/// `# m=<value>` records the source dimension (default 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub m: i64,
    pub rows: Vec<BettiRow>,
}

impl BettiTable {
    pub fn new(m: i64, rows: Vec<BettiRow>) -> Result<Self, BookkeepingError> {
        let table = BettiTable { m, rows };
        table.validate()?;
        Ok(table)
    }

    pub fn empty(m: i64) -> Self {
        BettiTable { m, rows: Vec::new() }
    }

    pub fn validate(&self) -> Result<(), BookkeepingError> {
        let mut seen = std::collections::HashSet::new();
        for row in &self.rows {
            if row.r < 1 || row.degree < 0 || row.degree > 2 * self.m * row.r {
                return Err(BookkeepingError::Table(format!(
                    "row (r={}, degree={}) outside 0..=2mr with m={}",
                    row.r, row.degree, self.m
                )));
            }
            if !seen.insert((row.r, row.degree)) {
                return Err(BookkeepingError::Table(format!("duplicate row (r={}, degree={})", row.r, row.degree)));
            }
        }
        let fields: std::collections::HashSet<&str> = self.rows.iter().map(|r| r.field.as_str()).collect();
        if fields.len() > 1 {
            return Err(BookkeepingError::Table("rows mix coefficient fields".into()));
        }
        Ok(())
    }

    pub fn field(&self) -> Option<&str> {
        self.rows.first().map(|r| r.field.as_str())
    }

    pub fn lookup(&self, r: i64, degree: i64) -> Option<u64> {
        self.rows.iter().find(|row| row.r == r && row.degree == degree).map(|row| row.rank)
    }

    pub fn from_csv_reader<R: Read>(mut reader: R) -> Result<Self, BookkeepingError> {
        let mut text = String::new();
        reader.read_to_string(&mut text)?;
        let mut m = 1;
        for line in text.lines() {
            if let Some(rest) = line.trim().strip_prefix('#') {
                if let Some(v) = rest.trim().strip_prefix("m=") {
                    m = v.trim().parse().map_err(|_| BookkeepingError::Table(format!("bad m header `{line}`")))?;
                }
            }
        }
        let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for rec in rdr.deserialize() {
            let row: BettiRow = rec.map_err(|e| BookkeepingError::Table(e.to_string()))?;
            rows.push(row);
        }
        Self::new(m, rows)
    }

    pub fn from_csv_path(path: &Path) -> Result<Self, BookkeepingError> {
        Self::from_csv_reader(std::fs::File::open(path)?)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<(), BookkeepingError> {
        writeln!(out, "# m={}", self.m)?;
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row).map_err(|e| BookkeepingError::Table(e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// A stable entry instantiated with a rank from the table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericEntry {
    pub r: i64,
    pub s: i64,
    pub cohomological_degree: i64,
    pub contribution_degree: i64,
    pub rank: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UncoveredEntry {
    pub r: i64,
    pub s: i64,
    pub cohomological_degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageEvaluation {
    pub field: Option<String>,
    pub numeric: Vec<NumericEntry>,
    pub uncovered: Vec<UncoveredEntry>,
    /// Entries outside the stable strip; left symbolic.
    pub symbolic: Vec<E1Entry>,
    /// Contribution degree `s - r` to total rank of the stable entries.
    pub histogram: BTreeMap<i64, u64>,
    pub ranks_consumed: u64,
}

impl PageEvaluation {
    /// Lowest contribution degree `> 0` with nonzero rank.
    pub fn lowest_positive_degree(&self) -> Option<(i64, u64)> {
        self.histogram.iter().find(|(d, rank)| **d > 0 && **rank > 0).map(|(d, r)| (*d, *r))
    }
}

/// Replace every stable entry by its rank from `table`; an entry whose
/// degree lies in `0..=2mr` but has no table row is reported as uncovered,
/// never read as zero.
pub fn evaluate_page(page: &E1Page, table: &BettiTable) -> Result<PageEvaluation, BookkeepingError> {
    if table.m != page.params.m as i64 {
        return Err(BookkeepingError::Table(format!(
            "table describes m={} but the page has m={}",
            table.m, page.params.m
        )));
    }
    let mut eval = PageEvaluation {
        field: table.field().map(str::to_owned),
        numeric: Vec::new(),
        uncovered: Vec::new(),
        symbolic: Vec::new(),
        histogram: BTreeMap::new(),
        ranks_consumed: 0,
    };
    for entry in &page.entries {
        if !entry.stable {
            if !entry.group.is_zero() {
                eval.symbolic.push(entry.clone());
            }
            continue;
        }
        let SymbolicGroup::CompactifiedConfigurationCohomology { degree, r, .. } = entry.group else {
            continue;
        };
        match table.lookup(r, degree) {
            Some(rank) => {
                eval.ranks_consumed += rank;
                if rank > 0 {
                    *eval.histogram.entry(entry.contribution_degree).or_insert(0) += rank;
                }
                eval.numeric.push(NumericEntry {
                    r,
                    s: entry.s,
                    cohomological_degree: degree,
                    contribution_degree: entry.contribution_degree,
                    rank,
                });
            }
            None => eval.uncovered.push(UncoveredEntry { r, s: entry.s, cohomological_degree: degree }),
        }
    }
    Ok(eval)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(m: u32, n: u32, p: u32, q: u32) -> ProblemParams {
        ProblemParams::new(m, n, p, q).unwrap()
    }

    /// Free coefficients of one component by direct enumeration: monomials in
    /// m+1 variables touching the last one.
    fn dim_wi_by_enumeration(m: u32, p: u32, q: u32) -> u64 {
        crate::poly::homogeneous_monomials(m as usize + 1, p, q).iter().filter(|mono| mono.touches_last()).count() as u64
    }

    #[test]
    fn dimension_examples() {
        for d in 0..6 {
            let r = dimension_report(&pp(1, 1, d, 0)).unwrap();
            assert_eq!((r.dim_wi, r.n_pq), (d as u64, 2 * d as u64));
        }
        let r = dimension_report(&pp(2, 2, 1, 0)).unwrap();
        assert_eq!((r.dim_wi, r.n_pq), (1, 3));
        let r = dimension_report(&pp(1, 2, 3, 0)).unwrap();
        assert_eq!((r.dim_wi, r.n_pq), (3, 9));
        for m in 1..4 {
            for p in 0..4 {
                for q in 0..=p {
                    let r = dimension_report(&pp(m, 3, p, q)).unwrap();
                    assert_eq!(r.dim_wi, dim_wi_by_enumeration(m, p, q));
                    assert!(r.dim_wi < r.dim_unrestricted);
                }
            }
        }
    }

    #[test]
    fn invalid_params() {
        assert!(ProblemParams::new(2, 1, 1, 0).is_err());
        assert!(ProblemParams::new(0, 1, 1, 0).is_err());
        assert!(ProblemParams::new(1, 1, 0, 1).is_err());
        assert!(ProblemParams::new(1, 1, 0, 0).is_ok());
    }

    #[test]
    fn stable_range_examples() {
        assert_eq!(stable_range(1, 1, 2), 2);
        assert_eq!(stable_range(1, 2, 3), 9);
        assert_eq!(stable_range(2, 3, 4), 9);
    }

    #[test]
    fn codimension_examples() {
        assert_eq!(discriminant_codim(1, 1), (1, false));
        assert_eq!(discriminant_codim(1, 2), (2, true));
        assert_eq!(discriminant_codim(3, 3), (1, false));
    }

    #[test]
    fn dim_bound_examples() {
        assert_eq!(dim_bound(&pp(1, 1, 2, 0), 1).unwrap(), 6);
        // 2*9 - 2*2*2 + 2 - 1
        assert_eq!(dim_bound(&pp(1, 2, 3, 0), 2).unwrap(), 11);
        assert_eq!(dim_bound(&pp(2, 2, 1, 0), 1).unwrap(), 4);
    }

    #[test]
    fn bundle_rank_examples() {
        assert_eq!(bundle_rank(&pp(1, 2, 3, 0), 1).unwrap(), 12);
        assert_eq!(bundle_rank(&pp(1, 2, 3, 0), 2).unwrap(), 7);
        assert_eq!(bundle_rank(&pp(2, 2, 1, 0), 1).unwrap(), 0);
        assert!(matches!(bundle_rank(&pp(2, 2, 3, 1), 3), Err(BookkeepingError::OutOfRange { r: 3, bound: 2 })));
        // m = 1, q = 0 extends the range to r <= p
        assert_eq!(bundle_rank(&pp(1, 2, 3, 0), 3).unwrap(), 18 - 15 - 1);
        assert!(bundle_rank(&pp(1, 2, 3, 1), 3).is_err());
    }

    #[test]
    fn stable_entry_examples() {
        assert_eq!(
            e1_entry_stable(1, 2, 1, 4),
            SymbolicGroup::CompactifiedConfigurationCohomology { degree: 2, r: 1, m: 1 }
        );
        assert_eq!(e1_entry_stable(1, 2, 1, 7), SymbolicGroup::Zero { degree: -1 });
        assert_eq!(
            e1_entry_stable(1, 1, 2, 8),
            SymbolicGroup::CompactifiedConfigurationCohomology { degree: 0, r: 2, m: 1 }
        );
    }

    #[test]
    fn general_entry_examples() {
        let params = pp(1, 1, 2, 0);
        let e = e1_entry_general(&params, 1, 2).unwrap();
        assert_eq!(e.group.degree(), 6);
        assert!(!e.group.is_zero());
        let params = pp(1, 3, 2, 0);
        assert_eq!(e1_entry_general(&params, 1, 6).unwrap().contribution_degree, 5);
        // s below the sector
        assert!(e1_entry_general(&params, 1, 5).unwrap().group.is_zero());
    }

    #[test]
    fn stable_region_examples() {
        assert!(stable_region(1, 2, 3, 1, 4));
        assert!(!stable_region(1, 2, 3, 3, 12));
        assert!(!stable_region(1, 2, 3, 1, 11));
        assert!(stable_region(1, 2, 3, 1, 10));
    }

    #[test]
    fn segal_flag() {
        assert!(segal_case_flag(1, 0));
        assert!(!segal_case_flag(1, 1));
        assert!(!segal_case_flag(2, 0));
        assert_eq!(pp(1, 2, 5, 0).validity_bound(), 5);
        assert_eq!(pp(2, 2, 5, 0).validity_bound(), 3);
    }

    fn sphere_table() -> BettiTable {
        // r = 1 only: compactified plane is S^2
        BettiTable::new(
            1,
            (0..=2).map(|k| BettiRow { r: 1, degree: k, rank: u64::from(k == 2), field: "Q".into() }).collect(),
        )
        .unwrap()
    }

    #[test]
    fn evaluate_uncovered_rows() {
        let page = e1_page(&pp(1, 2, 5, 0), 2, 12, false).unwrap();
        let empty = evaluate_page(&page, &BettiTable::empty(1)).unwrap();
        assert!(empty.numeric.is_empty());
        // every stable entry with k in 0..=2r is uncovered: 3 for r=1, 5 for r=2
        assert_eq!(empty.uncovered.len(), 8);

        let eval = evaluate_page(&page, &sphere_table()).unwrap();
        assert_eq!(eval.uncovered.iter().map(|u| u.r).collect::<Vec<_>>(), vec![2; 5]);
        assert_eq!(eval.histogram.get(&3), Some(&1));
        assert_eq!(eval.histogram.values().sum::<u64>(), eval.ranks_consumed);
    }

    #[test]
    fn table_validation_and_csv() {
        let t = sphere_table();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let back = BettiTable::from_csv_reader(buf.as_slice()).unwrap();
        assert_eq!(back, t);
        let bad = BettiTable::new(1, vec![BettiRow { r: 1, degree: 3, rank: 1, field: "Q".into() }]);
        assert!(bad.is_err());
        let page = e1_page(&pp(2, 2, 3, 0), 1, 4, false).unwrap();
        assert!(evaluate_page(&page, &t).is_err());
    }
}
