//! Exact two-phase simplex over the rationals (Bland's rule, so it always
//! terminates). Sized for the handful of variables the simplex-intersection
//! certificates need.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: BigRational, x: Vec<BigRational> },
}

/// Maximize `objective · x` subject to `a x = b`, `x >= 0`.
pub fn maximize(a: &[Vec<BigRational>], b: &[BigRational], objective: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = objective.len();
    assert_eq!(b.len(), m);
    assert!(a.iter().all(|row| row.len() == n), "constraint width mismatch");

    // Columns: n original, m artificial, 1 rhs.
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut r = vec![BigRational::zero(); width];
        for j in 0..n {
            r[j] = if flip { -&row[j] } else { row[j].clone() };
        }
        r[n + i] = BigRational::one();
        r[width - 1] = if flip { -&b[i] } else { b[i].clone() };
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: maximize -sum(artificials).
    let mut phase1 = vec![BigRational::zero(); width - 1];
    for slot in phase1.iter_mut().skip(n) {
        *slot = -BigRational::one();
    }
    let mut obj = objective_row(&t, &basis, &phase1);
    if run_simplex(&mut t, &mut basis, &mut obj, n + m) == Step::Unbounded {
        unreachable!("phase one is bounded");
    }
    if obj[width - 1].is_positive() {
        // objective row stores -value; a positive entry means sum(artificials) > 0
        return LpOutcome::Infeasible;
    }

    // Pivot remaining artificials out of the basis, dropping redundant rows.
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= n {
            match (0..n).find(|&j| !t[i][j].is_zero()) {
                Some(j) => pivot(&mut t, &mut basis, &mut obj, i, j),
                None => {
                    t.remove(i);
                    basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    // Forbid artificials from re-entering.
    for row in t.iter_mut() {
        for v in row.iter_mut().take(n + m).skip(n) {
            *v = BigRational::zero();
        }
    }

    let mut phase2 = vec![BigRational::zero(); width - 1];
    phase2[..n].clone_from_slice(objective);
    let mut obj = objective_row(&t, &basis, &phase2);
    if run_simplex(&mut t, &mut basis, &mut obj, n) == Step::Unbounded {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![BigRational::zero(); n];
    for (row, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[row][width - 1].clone();
        }
    }
    let value = objective.iter().zip(&x).fold(BigRational::zero(), |acc, (c, v)| acc + c * v);
    LpOutcome::Optimal { value, x }
}

/// Feasibility of `a x = b, x >= 0`; returns a witness.
pub fn feasible_point(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.first().map_or(0, Vec::len);
    match maximize(a, b, &vec![BigRational::zero(); n]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

#[derive(PartialEq)]
enum Step {
    Optimal,
    Unbounded,
}

/// Reduced-cost row: `c_j - c_B B^{-1} A_j`, last entry `-c_B B^{-1} b`.
fn objective_row(t: &[Vec<BigRational>], basis: &[usize], c: &[BigRational]) -> Vec<BigRational> {
    let width = c.len() + 1;
    let mut obj: Vec<BigRational> = c.to_vec();
    obj.push(BigRational::zero());
    for (i, &bv) in basis.iter().enumerate() {
        let cb = &c[bv];
        if cb.is_zero() {
            continue;
        }
        for j in 0..width {
            obj[j] = &obj[j] - cb * &t[i][j];
        }
    }
    obj
}

fn run_simplex(
    t: &mut [Vec<BigRational>],
    basis: &mut [usize],
    obj: &mut [BigRational],
    allowed: usize,
) -> Step {
    let rhs = obj.len() - 1;
    loop {
        let Some(enter) = (0..allowed).find(|&j| obj[j].is_positive()) else {
            return Step::Optimal;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..t.len() {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][rhs] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((row, _)) = leave else {
            return Step::Unbounded;
        };
        pivot(t, basis, obj, row, enter);
    }
}

fn pivot(t: &mut [Vec<BigRational>], basis: &mut [usize], obj: &mut [BigRational], row: usize, col: usize) {
    let inv = t[row][col].recip();
    for v in t[row].iter_mut() {
        *v = &*v * &inv;
    }
    let prow = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (v, p) in r.iter_mut().zip(&prow) {
            *v = &*v - &f * p;
        }
    }
    if !obj[col].is_zero() {
        let f = obj[col].clone();
        for (v, p) in obj.iter_mut().zip(&prow) {
            *v = &*v - &f * p;
        }
    }
    basis[row] = col;
}
