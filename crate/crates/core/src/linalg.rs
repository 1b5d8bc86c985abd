//! Exact linear algebra over a [`Field`]: dense row reduction for the small
//! certification systems, and sparse incremental echelon forms for chain
//! complexes.

use std::collections::HashMap;

use crate::field::Field;
use crate::gaussian::GaussianRational;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Reduced row echelon form together with the pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<F> {
    pub matrix: DenseMatrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        DenseMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// Append `column` on the right.
    pub fn augment(&self, column: &[F]) -> Self {
        assert_eq!(column.len(), self.rows);
        let data = (0..self.rows)
            .flat_map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(column[i].clone());
                r
            })
            .collect();
        DenseMatrix { rows: self.rows, cols: self.cols + 1, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(src) = (prow..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(src, prow);
            let inv = m[(prow, col)].inv();
            for j in col..m.cols {
                m[(prow, j)] = m[(prow, j)].mul(&inv);
            }
            for r in 0..m.rows {
                if r == prow || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for j in col..m.cols {
                    let delta = factor.mul(&m[(prow, j)]);
                    if !delta.is_zero() {
                        m[(r, j)] = m[(r, j)].sub(&delta);
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![F::zero(); self.cols];
                v[fc] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = matrix[(row, fc)].neg();
                }
                v
            })
            .collect()
    }

    /// Solve `A x = b`. Returns a particular solution (free variables set to
    /// zero) or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        let Rref { matrix, pivots } = self.augment(b).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = F::one();
        for col in 0..m.cols {
            let Some(src) = (col..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                return F::zero();
            };
            if src != col {
                m.swap_rows(src, col);
                det = det.neg();
            }
            let pivot = m[(col, col)].clone();
            det = det.mul(&pivot);
            let inv = pivot.inv();
            for r in col + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].mul(&inv);
                for j in col..m.cols {
                    let delta = factor.mul(&m[(col, j)]);
                    m[(r, j)] = m[(r, j)].sub(&delta);
                }
            }
        }
        det
    }
}

impl<F> std::ops::Index<(usize, usize)> for DenseMatrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for DenseMatrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        SparseVec { entries: Vec::new() }
    }
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(index: usize) -> Self {
        SparseVec { entries: vec![(index, F::one())] }
    }

    /// Build from unsorted `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, F)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, F)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w = w.add(&v),
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<&(usize, F)> {
        self.entries.last()
    }

    pub fn get(&self, index: usize) -> F {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .map(|k| self.entries[k].1.clone())
            .unwrap_or_else(|_| F::zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v.mul(c))).collect() }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &F, other: &Self) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c.mul(y)));
                        b.next();
                    } else {
                        let s = x.add(&c.mul(y));
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c.mul(y)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    /// Keep only the entries whose index satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(usize) -> bool) -> Self {
        SparseVec { entries: self.entries.iter().filter(|(i, _)| keep(*i)).cloned().collect() }
    }
}

/// Incremental echelon basis keyed by leading (largest) index. Pivot vectors
/// are normalized to leading coefficient one.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pivots: HashMap<usize, SparseVec<F>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon { pivots: HashMap::new() }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut v = v.clone();
        while let Some((lead, c)) = v.leading().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => v = v.axpy(&c.neg(), p),
                None => break,
            }
        }
        v
    }

    /// Insert `v`; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        let r = self.reduce(v);
        match r.leading().cloned() {
            None => false,
            Some((lead, c)) => {
                self.pivots.insert(lead, r.scale(&c.inv()));
                true
            }
        }
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }
}

/// Dimension of the span of `vectors`.
pub fn span_dim<'a, F: Field>(vectors: impl IntoIterator<Item = &'a SparseVec<F>>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Column reduction of a linear map given by the images of basis vectors.
/// Returns `(rank, kernel basis)` with kernel vectors expressed in the
/// domain basis `0..columns.len()`.
pub fn rank_and_kernel<F: Field>(columns: &[SparseVec<F>]) -> (usize, Vec<SparseVec<F>>) {
    // pivot index -> (reduced image, combination of domain vectors)
    let mut pivots: HashMap<usize, (SparseVec<F>, SparseVec<F>)> = HashMap::new();
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut img = col.clone();
        let mut comb = SparseVec::unit(j);
        while let Some((lead, c)) = img.leading().cloned() {
            match pivots.get(&lead) {
                Some((pimg, pcomb)) => {
                    let f = c.neg();
                    img = img.axpy(&f, pimg);
                    comb = comb.axpy(&f, pcomb);
                }
                None => break,
            }
        }
        match img.leading().cloned() {
            None => kernel.push(comb),
            Some((lead, c)) => {
                let inv = c.inv();
                pivots.insert(lead, (img.scale(&inv), comb.scale(&inv)));
            }
        }
    }
    (pivots.len(), kernel)
}

/// Rank of a linear map given by column images.
pub fn rank_of_columns<F: Field>(columns: &[SparseVec<F>]) -> usize {
    span_dim(columns.iter())
}

impl DenseMatrix<GaussianRational> {
    /// Rank over `Q(i)`. Reduction mod a prime never raises the rank, so
    /// full rank there is full rank here; otherwise eliminate exactly.
    pub fn certified_rank(&self) -> usize {
        let full = self.rows.min(self.cols);
        let reduced: Option<Vec<_>> = self.data.iter().map(GaussianRational::reduce_mod).collect();
        if let Some(data) = reduced {
            if (DenseMatrix { rows: self.rows, cols: self.cols, data }).rank() == full {
                return full;
            }
        }
        self.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, F2};
    use num_rational::BigRational;

    fn q(rows: &[&[i64]]) -> DenseMatrix<BigRational> {
        DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect())
    }

    #[test]
    fn certified_rank_matches_exact_rank() {
        let g = |re: i64, im: i64| GaussianRational::from_ints(re, im);
        let full = DenseMatrix::from_rows(vec![vec![g(1, 0), g(0, 1), g(2, 3)], vec![g(0, 0), g(1, 1), g(-1, 0)]]);
        assert_eq!(full.certified_rank(), 2);
        // second row is i times the first
        let deficient = DenseMatrix::from_rows(vec![vec![g(1, 0), g(2, 1)], vec![g(0, 1), g(-1, 2)]]);
        assert_eq!(deficient.certified_rank(), 1);
        assert_eq!(deficient.rank(), 1);
    }

    #[test]
    fn rank_and_nullspace() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        for i in 0..3 {
            let dot = (0..3).fold(rat(0, 1), |acc, j| acc + &a[(i, j)] * &ns[0][j]);
            assert_eq!(dot, rat(0, 1));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = q(&[&[1, 1], &[1, 2]]);
        let x = a.solve(&[rat(3, 1), rat(5, 1)]).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(2, 1)]);
        let b = q(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[rat(1, 1), rat(3, 1)]).is_none());
    }

    #[test]
    fn determinant_vandermonde() {
        // det of the Vandermonde matrix on (0, 1, 3) is (1-0)(3-0)(3-1) = 6
        let v = q(&[&[1, 0, 0], &[1, 1, 1], &[1, 3, 9]]);
        assert_eq!(v.determinant(), rat(6, 1));
        assert_eq!(q(&[&[1, 2], &[2, 4]]).determinant(), rat(0, 1));
    }

    #[test]
    fn sparse_kernel_matches_dense() {
        // boundary of a triangle over F2: three edges, kernel is the cycle
        let cols: Vec<SparseVec<F2>> = vec![
            SparseVec::from_pairs(vec![(0, F2::one()), (1, F2::one())]),
            SparseVec::from_pairs(vec![(1, F2::one()), (2, F2::one())]),
            SparseVec::from_pairs(vec![(0, F2::one()), (2, F2::one())]),
        ];
        let (rank, ker) = rank_and_kernel(&cols);
        assert_eq!(rank, 2);
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0].entries().len(), 3);
    }

    #[test]
    fn axpy_cancels() {
        let a: SparseVec<BigRational> = SparseVec::from_pairs(vec![(0, rat(1, 1)), (3, rat(2, 1))]);
        let b = a.axpy(&rat(-1, 1), &a);
        assert!(b.is_zero());
        assert_eq!(a.get(3), rat(2, 1));
        assert_eq!(a.get(2), rat(0, 1));
    }
}
