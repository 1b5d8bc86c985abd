//! Membership in the discriminant: whether the components of a tuple share
//! a zero on `CP^m`. Exact for holomorphic binary forms (`m = 1, q = 0`),
//! numeric otherwise via a grid search and Levenberg–Marquardt refinement of
//! the scale-invariant objective `sum |F_i(z)|^2 / |z|^(2(p+q))`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binary_forms::{resultant, roots_float, BinaryForm, UPoly};
use crate::bookkeeping::ProblemParams;
use crate::field::Field;
use crate::gaussian::GaussianRational;
use crate::genpos::free_monomials;
use crate::poly::{homogeneous_monomials, MapTuple, PQMonomial, PQPolynomial, PolyError};
use crate::seeds::trial_rng;

#[derive(Debug, Error)]
pub enum DiscError {
    #[error("exact mode needs m = 1 and q = 0, got m = {m}, q = {q}")]
    UnsupportedMode { m: usize, q: u32 },
    #[error("planting a zero needs p >= 1")]
    CannotPlant,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    Numeric,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(Mode::Exact),
            "numeric" => Ok(Mode::Numeric),
            _ => Err(format!("unknown mode `{s}` (expected exact or numeric)")),
        }
    }
}

/// Grid density per real dimension: 64 for `m = 1`, 16 for `m = 2`, 6 beyond.
pub fn default_density(m: usize) -> usize {
    match m {
        1 => 64,
        2 => 16,
        _ => 6,
    }
}

/// `sum |F_i(z)|^2 / (sum |z_j|^2)^(p+q)`; invariant under `z -> lambda z`.
pub fn objective(t: &MapTuple, z: &[Complex64]) -> f64 {
    let norm: f64 = z.iter().map(Complex64::norm_sqr).sum();
    let num: f64 = t.components().iter().map(|c| c.evaluate_float_unchecked(z).norm_sqr()).sum();
    num / norm.powi((t.p() + t.q()) as i32)
}

fn normalize(z: &[Complex64]) -> Vec<Complex64> {
    let norm = z.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    z.iter().map(|w| w / norm).collect()
}

/// Largest `|F_i|` at the unit-norm representative.
pub fn normalized_residual(t: &MapTuple, z: &[Complex64]) -> f64 {
    let u = normalize(z);
    t.components().iter().map(|c| c.evaluate_float_unchecked(&u).norm()).fold(0.0, f64::max)
}

/// Hyperspherical grid on `CP^m`: `m` modulus angles in `[0, pi/2]`
/// (endpoints included, so coordinate points are hit exactly) and `m`
/// phases; coordinate 0 is real.
fn grid(m: usize, density: usize) -> Vec<Vec<Complex64>> {
    let k = density.max(2);
    let total = k.pow(2 * m as u32);
    (0..total)
        .map(|mut idx| {
            let mut digits = Vec::with_capacity(2 * m);
            for _ in 0..2 * m {
                digits.push(idx % k);
                idx /= k;
            }
            let mut z = Vec::with_capacity(m + 1);
            let mut s = 1.0;
            for j in 0..m {
                let theta = std::f64::consts::FRAC_PI_2 * digits[j] as f64 / (k - 1) as f64;
                let phase = if j == 0 { 0.0 } else { std::f64::consts::TAU * digits[m + j - 1] as f64 / k as f64 };
                z.push(Complex64::from_polar(s * theta.cos(), phase));
                s *= theta.sin();
            }
            let phase = std::f64::consts::TAU * digits[2 * m - 1] as f64 / k as f64;
            z.push(Complex64::from_polar(s, phase));
            z
        })
        .collect()
}

fn residuals(t: &MapTuple, z: &[Complex64]) -> DVector<f64> {
    let norm: f64 = z.iter().map(Complex64::norm_sqr).sum();
    let scale = norm.powf((t.p() + t.q()) as f64 / 2.0);
    let mut r = DVector::zeros(2 * t.components().len());
    for (i, c) in t.components().iter().enumerate() {
        let v = c.evaluate_float_unchecked(z) / scale;
        r[2 * i] = v.re;
        r[2 * i + 1] = v.im;
    }
    r
}

fn from_chart(chart: usize, u: &DVector<f64>, len: usize) -> Vec<Complex64> {
    let mut z = Vec::with_capacity(len);
    let mut k = 0;
    for j in 0..len {
        if j == chart {
            z.push(Complex64::new(1.0, 0.0));
        } else {
            z.push(Complex64::new(u[2 * k], u[2 * k + 1]));
            k += 1;
        }
    }
    z
}

/// Damped Gauss–Newton (Levenberg–Marquardt) with a central-difference
/// Jacobian, in the chart of the largest coordinate of the current point.
fn refine(t: &MapTuple, start: &[Complex64], iterations: usize) -> (Vec<Complex64>, f64) {
    let len = start.len();
    let mut z = normalize(start);
    let mut value = objective(t, &z);
    let mut lambda = 1e-3;
    for _ in 0..iterations {
        if value < 1e-32 {
            break;
        }
        let chart = (0..len).max_by(|&a, &b| z[a].norm().total_cmp(&z[b].norm())).expect("nonempty");
        let pivot = z[chart];
        let mut u = DVector::zeros(2 * (len - 1));
        let mut k = 0;
        for (j, w) in z.iter().enumerate() {
            if j != chart {
                let c = w / pivot;
                u[2 * k] = c.re;
                u[2 * k + 1] = c.im;
                k += 1;
            }
        }
        let r = residuals(t, &from_chart(chart, &u, len));
        let h = 1e-7;
        let mut jac = DMatrix::zeros(r.len(), u.len());
        for col in 0..u.len() {
            let mut up = u.clone();
            let mut dn = u.clone();
            up[col] += h;
            dn[col] -= h;
            let d = (residuals(t, &from_chart(chart, &up, len)) - residuals(t, &from_chart(chart, &dn, len))) / (2.0 * h);
            jac.set_column(col, &d);
        }
        let jtj = jac.transpose() * &jac;
        let jtr = jac.transpose() * &r;
        let mut improved = false;
        for _ in 0..12 {
            let mut a = jtj.clone();
            for d in 0..a.nrows() {
                a[(d, d)] += lambda * (1.0 + jtj[(d, d)]);
            }
            let Some(step) = a.lu().solve(&(-&jtr)) else {
                lambda *= 10.0;
                continue;
            };
            let candidate = normalize(&from_chart(chart, &(&u + &step), len));
            let v = objective(t, &candidate);
            if v < value {
                z = candidate;
                let converged = value - v <= 1e-15 * value;
                value = v;
                lambda = (lambda / 3.0).max(1e-12);
                improved = !converged;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    (z, value)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinNorm {
    pub value: f64,
    /// Unit-norm minimizer.
    pub argmin: Vec<[f64; 2]>,
    pub grid_points: usize,
    pub refined_starts: usize,
}

impl MinNorm {
    pub fn point(&self) -> Vec<Complex64> {
        self.argmin.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
    }
}

fn pairs(z: &[Complex64]) -> Vec<[f64; 2]> {
    z.iter().map(|w| [w.re, w.im]).collect()
}

/// Number of best grid points handed to local refinement.
const STARTS: usize = 8;

/// Multistart minimization of [`objective`] over `CP^m`.
pub fn min_norm(t: &MapTuple, density: usize, refinement_steps: usize) -> MinNorm {
    let points = grid(t.m(), density);
    let mut scored: Vec<(f64, usize)> = points.par_iter().enumerate().map(|(i, z)| (objective(t, z), i)).collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let starts: Vec<usize> = scored.iter().take(STARTS).map(|&(_, i)| i).collect();
    let refined: Vec<(Vec<Complex64>, f64)> =
        starts.par_iter().map(|&i| refine(t, &points[i], refinement_steps)).collect();
    let (best, value) = refined
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap_or_else(|| (normalize(&points[0]), objective(t, &points[0])));
    MinNorm { value, argmin: pairs(&best), grid_points: points.len(), refined_starts: starts.len() }
}

/// Where a witness lies relative to the hyperplane `z_m = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Location {
    Chart,
    Hyperplane,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessPoint {
    /// Unit-norm floating coordinates.
    pub coords: Vec<[f64; 2]>,
    /// Exact homogeneous coordinates when available.
    pub exact: Option<Vec<GaussianRational>>,
    pub location: Location,
    /// `max_i |F_i|` at the unit-norm representative.
    pub residual: f64,
}

impl WitnessPoint {
    fn from_float(t: &MapTuple, z: &[Complex64], exact: Option<Vec<GaussianRational>>) -> Self {
        let u = normalize(z);
        let location = if u.last().expect("nonempty").norm() > 1e-9 { Location::Chart } else { Location::Hyperplane };
        WitnessPoint { coords: pairs(&u), exact, location, residual: normalized_residual(t, &u) }
    }

    pub fn point(&self) -> Vec<Complex64> {
        self.coords.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rigor {
    /// Decided in exact arithmetic.
    Exact,
    /// The minimum over the sampled grid plus refinement; not a proof.
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    CommonZero { witness: WitnessPoint },
    NoCommonZero { lower_bound: Option<f64>, rigor: Rigor },
    Unknown { minimum: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    CommonZero,
    NoCommonZero,
    Unknown,
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::CommonZero { .. } => VerdictKind::CommonZero,
            Verdict::NoCommonZero { .. } => VerdictKind::NoCommonZero,
            Verdict::Unknown { .. } => VerdictKind::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroCertificate {
    pub mode: Mode,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub trace: Vec<String>,
}

/// Coefficients of a holomorphic polynomial on `CP^1` as a binary form.
fn binary_form(poly: &PQPolynomial) -> BinaryForm {
    let p = poly.p();
    (0..=p).map(|k| poly.coefficient(&PQMonomial::new(vec![p - k, k], vec![0, 0]))).collect()
}

fn exact_mode(t: &MapTuple, trace: &mut Vec<String>) -> Verdict {
    let p = t.p() as usize;
    let forms: Vec<BinaryForm> = t.components().iter().map(binary_form).collect();
    let g = GaussianRational::from_ints;
    let exact_witness = |coords: Vec<GaussianRational>| {
        let z: Vec<Complex64> = coords.iter().map(GaussianRational::to_complex).collect();
        Verdict::CommonZero { witness: WitnessPoint::from_float(t, &z, Some(coords)) }
    };
    if p == 0 {
        trace.push("constant components".into());
        return if forms.iter().all(|f| f[0].is_zero()) {
            exact_witness(vec![g(0, 0), g(1, 0)])
        } else {
            Verdict::NoCommonZero { lower_bound: None, rigor: Rigor::Exact }
        };
    }
    if forms.iter().all(|f| f[0].is_zero()) {
        trace.push("all coefficients of z0^p vanish: common zero [1:0]".into());
        return exact_witness(vec![g(1, 0), g(0, 0)]);
    }
    // Chart z1 = 1: f_i(x) = F_i(x, 1), coefficient of x^j is entry p - j.
    let chart: Vec<UPoly> = forms.iter().map(|f| UPoly::new(f.iter().rev().cloned().collect())).collect();
    let gcd = chart.iter().fold(UPoly::new(Vec::new()), |acc, f| acc.gcd(f));
    trace.push(format!("gcd in the chart z1 = 1 has degree {:?}", gcd.degree()));
    if t.components().len() == 2 {
        let res = resultant(&forms[0], &forms[1]);
        trace.push(format!("resultant {}", if res.is_zero() { "vanishes" } else { "nonzero" }));
    }
    match gcd.degree() {
        None => {
            trace.push("all components vanish identically".into());
            exact_witness(vec![g(0, 0), g(1, 0)])
        }
        Some(0) => Verdict::NoCommonZero { lower_bound: None, rigor: Rigor::Exact },
        Some(1) => {
            let c = gcd.coeffs();
            let x = c[0].neg().div(&c[1]);
            trace.push(format!("exact root {x}"));
            exact_witness(vec![x, g(1, 0)])
        }
        Some(_) => {
            let roots = roots_float(&gcd.to_float());
            trace.push(format!("{} floating roots of the gcd", roots.len()));
            let best = roots
                .iter()
                .map(|x| vec![*x, Complex64::new(1.0, 0.0)])
                .min_by(|a, b| normalized_residual(t, a).total_cmp(&normalized_residual(t, b)))
                .expect("positive degree");
            Verdict::CommonZero { witness: WitnessPoint::from_float(t, &best, None) }
        }
    }
}

/// Whether the components share a zero on `CP^m`. Exact mode (`m = 1`,
/// `q = 0`) decides by a gcd in the chart plus the point at infinity, with
/// the resultant as a second route for pairs. Numeric mode reports
/// no-common-zero above `tol`, common-zero below `tol^2`, unknown between.
pub fn has_common_zero(t: &MapTuple, mode: Mode, tol: f64) -> Result<ZeroCertificate, DiscError> {
    let mut trace = Vec::new();
    let verdict = match mode {
        Mode::Exact => {
            if t.m() != 1 || t.q() != 0 {
                return Err(DiscError::UnsupportedMode { m: t.m(), q: t.q() });
            }
            exact_mode(t, &mut trace)
        }
        Mode::Numeric => {
            let density = default_density(t.m());
            let mn = min_norm(t, density, 100);
            trace.push(format!(
                "grid of {} points, {} refined starts, minimum {:e}",
                mn.grid_points, mn.refined_starts, mn.value
            ));
            if mn.value > tol {
                Verdict::NoCommonZero { lower_bound: Some(mn.value), rigor: Rigor::Sampled }
            } else if mn.value < tol * tol {
                Verdict::CommonZero { witness: WitnessPoint::from_float(t, &mn.point(), None) }
            } else {
                Verdict::Unknown { minimum: mn.value }
            }
        }
    };
    if let Verdict::CommonZero { witness } = &verdict {
        trace.push(format!("witness in the {:?} with residual {:e}", witness.location, witness.residual));
    }
    Ok(ZeroCertificate { mode, verdict, trace })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilizationCheck {
    pub original: VerdictKind,
    pub stabilized: VerdictKind,
    /// `None` when either verdict is unknown.
    pub agree: Option<bool>,
}

/// Verdicts for `t` (exact when possible) and for its stabilization
/// (numeric, since it has `q >= 1`).
pub fn check_stabilization_membership(t: &MapTuple, tol: f64) -> Result<StabilizationCheck, DiscError> {
    let mode = if t.m() == 1 && t.q() == 0 { Mode::Exact } else { Mode::Numeric };
    let original = has_common_zero(t, mode, tol)?.verdict.kind();
    let stabilized = has_common_zero(&t.stabilize(), Mode::Numeric, tol)?.verdict.kind();
    let agree = (original != VerdictKind::Unknown && stabilized != VerdictKind::Unknown).then_some(original == stabilized);
    Ok(StabilizationCheck { original, stabilized, agree })
}

fn small_gaussian<R: Rng>(rng: &mut R, magnitude: i64) -> GaussianRational {
    GaussianRational::from_ints(rng.gen_range(-magnitude..=magnitude), rng.gen_range(-magnitude..=magnitude))
}

fn random_poly<R: Rng>(rng: &mut R, m: usize, p: u32, q: u32, magnitude: i64) -> PQPolynomial {
    let terms: Vec<_> = homogeneous_monomials(m + 1, p, q).into_iter().map(|mono| (mono, small_gaussian(rng, magnitude))).collect();
    PQPolynomial::from_terms(m, p, q, terms).expect("monomials of the right shape")
}

/// Tuple with all coefficients drawn from Gaussian integers in
/// `[-magnitude, magnitude]`; generically has no common zero.
pub fn random_tuple<R: Rng>(rng: &mut R, params: &ProblemParams, magnitude: i64) -> MapTuple {
    let (m, p, q) = (params.m as usize, params.p, params.q);
    MapTuple::from_components((0..=params.n).map(|_| random_poly(rng, m, p, q, magnitude)).collect())
        .expect("consistent shapes")
}

/// Tuple with prescribed boundary: `f_i` extended constantly plus random
/// free coefficients.
pub fn random_tuple_with_boundary<R: Rng>(
    rng: &mut R,
    params: &ProblemParams,
    boundary: &[PQPolynomial],
    magnitude: i64,
) -> Result<MapTuple, PolyError> {
    let (m, p, q) = (params.m as usize, params.p, params.q);
    let free = free_monomials(m, p, q);
    let comps = boundary
        .iter()
        .map(|f| {
            let terms: Vec<_> = free.iter().map(|mono| (mono.clone(), small_gaussian(rng, magnitude))).collect();
            PQPolynomial::from_terms(m, p, q, terms)?.add(&f.extend_constantly())
        })
        .collect::<Result<Vec<_>, _>>()?;
    MapTuple::new(comps, boundary.to_vec())
}

/// Tuple whose components lie in the ideal of the chart point `x`:
/// `F_i = sum_k (z_k - x_k z_m) G_ik` with random `(p-1, q)`-polynomials
/// `G_ik`. Returns the tuple and the planted point.
pub fn planted_tuple<R: Rng>(
    rng: &mut R,
    params: &ProblemParams,
    magnitude: i64,
) -> Result<(MapTuple, Vec<GaussianRational>), DiscError> {
    let (m, p, q) = (params.m as usize, params.p, params.q);
    if p == 0 {
        return Err(DiscError::CannotPlant);
    }
    let x: Vec<GaussianRational> = (0..m)
        .map(|_| {
            let d = rng.gen_range(1..=4);
            GaussianRational::new(
                num_rational::BigRational::new(rng.gen_range(-4..=4).into(), d.into()),
                num_rational::BigRational::new(rng.gen_range(-4..=4).into(), d.into()),
            )
        })
        .collect();
    let forms: Vec<PQPolynomial> = (0..m)
        .map(|k| {
            let zk = PQPolynomial::variable_power(m, k, 1, 0);
            let zm = PQPolynomial::variable_power(m, m, 1, 0);
            zk.sub(&zm.scale(&x[k])).expect("same shape")
        })
        .collect();
    let comps = (0..=params.n)
        .map(|_| {
            forms.iter().try_fold(PQPolynomial::zero(m, p, q), |acc, l| {
                acc.add(&l.mul(&random_poly(rng, m, p - 1, q, magnitude))?)
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((MapTuple::from_components(comps)?, x))
}

/// Mixed corpus: even entries carry a planted zero, odd entries are generic.
pub fn random_corpus(seed: u64, params: &ProblemParams, count: usize, magnitude: i64) -> Vec<(MapTuple, Option<Vec<GaussianRational>>)> {
    (0..count)
        .map(|k| {
            let mut rng = trial_rng(seed, k as u64);
            if k % 2 == 0 && params.p > 0 {
                let (t, x) = planted_tuple(&mut rng, params, magnitude).expect("p >= 1");
                (t, Some(x))
            } else {
                (random_tuple(&mut rng, params, magnitude), None)
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearityReport {
    pub params: ProblemParams,
    pub trials: u64,
    pub failures: u64,
}

/// On random tuples `t0, t1, t2` with a common boundary, checks exactly that
/// `stabilize(a t1 + b t2 - (a + b - 1) t0)` equals the same affine
/// combination of the stabilized tuples, and that stabilization commutes
/// with restriction to the hyperplane.
pub fn linearity_of_stabilization(params: &ProblemParams, trials: u64, seed: u64) -> Result<LinearityReport, DiscError> {
    let boundary = crate::genpos::default_boundary(params.m as usize, params.n as usize, params.p, params.q);
    let failures = (0..trials)
        .into_par_iter()
        .map(|k| -> Result<u64, DiscError> {
            let mut rng = trial_rng(seed, k);
            let ts = (0..3)
                .map(|_| random_tuple_with_boundary(&mut rng, params, &boundary, 5))
                .collect::<Result<Vec<_>, _>>()?;
            let (a, b) = (small_gaussian(&mut rng, 7), small_gaussian(&mut rng, 7));
            let c = GaussianRational::one().sub(&a).sub(&b);
            let weights = [a, b, c];
            let lhs = MapTuple::combine(&[&ts[1], &ts[2], &ts[0]], &weights)?.stabilize();
            let stab: Vec<MapTuple> = ts.iter().map(MapTuple::stabilize).collect();
            let rhs = MapTuple::combine(&[&stab[1], &stab[2], &stab[0]], &weights)?;
            let restricted = lhs.restrict_to_hyperplane() == lhs.boundary()
                && lhs.boundary().iter().zip(&boundary).all(|(s, f)| *s == f.stabilize());
            Ok(u64::from(lhs != rhs || !restricted))
        })
        .sum::<Result<u64, DiscError>>()?;
    Ok(LinearityReport { params: *params, trials, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(m: usize, i: usize) -> PQPolynomial {
        PQPolynomial::variable_power(m, i, 1, 0)
    }

    fn identity() -> MapTuple {
        MapTuple::from_components(vec![var(1, 0), var(1, 1)]).unwrap()
    }

    fn pp(m: u32, n: u32, p: u32, q: u32) -> ProblemParams {
        ProblemParams::new(m, n, p, q).unwrap()
    }

    #[test]
    fn min_norm_examples() {
        let mn = min_norm(&identity(), 16, 20);
        assert!((mn.value - 1.0).abs() < 1e-12);
        let t = MapTuple::from_components(vec![var(1, 0).mul(&var(1, 1)).unwrap(), var(1, 1).mul(&var(1, 1)).unwrap()])
            .unwrap();
        let mn = min_norm(&t, 16, 20);
        assert!(mn.value < 1e-20);
        assert!(mn.point()[1].norm() < 1e-9);
        let s = min_norm(&identity().stabilize(), 16, 20);
        assert!((s.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn objective_scale_invariant() {
        let mut rng = trial_rng(3, 0);
        let t = random_tuple(&mut rng, &pp(2, 2, 2, 1), 3);
        let z = [Complex64::new(0.3, -1.0), Complex64::new(2.0, 0.5), Complex64::new(-0.7, 0.1)];
        let lam = Complex64::new(-1.7, 2.3);
        let w: Vec<Complex64> = z.iter().map(|c| c * lam).collect();
        assert!((objective(&t, &z) - objective(&t, &w)).abs() < 1e-12 * objective(&t, &z));
    }

    #[test]
    fn exact_examples() {
        let d = 3;
        let t = MapTuple::from_components(vec![
            PQPolynomial::variable_power(1, 0, d, 0),
            PQPolynomial::variable_power(1, 1, d, 0),
        ])
        .unwrap();
        let c = has_common_zero(&t, Mode::Exact, DEFAULT_TOL).unwrap();
        assert_eq!(c.verdict.kind(), VerdictKind::NoCommonZero);

        let l = var(1, 0).sub(&var(1, 1)).unwrap();
        let t = MapTuple::from_components(vec![l.mul(&var(1, 0)).unwrap(), l.mul(&var(1, 1)).unwrap()]).unwrap();
        let c = has_common_zero(&t, Mode::Exact, DEFAULT_TOL).unwrap();
        let Verdict::CommonZero { witness } = c.verdict else { panic!("expected a zero") };
        let one = GaussianRational::one();
        assert_eq!(witness.exact, Some(vec![one.clone(), one]));
        assert_eq!(witness.location, Location::Chart);
    }

    #[test]
    fn exact_mode_rejected_outside_binary_forms() {
        let t = identity().stabilize();
        assert!(matches!(has_common_zero(&t, Mode::Exact, DEFAULT_TOL), Err(DiscError::UnsupportedMode { .. })));
    }

    #[test]
    fn planted_zero_found_numerically() {
        for (seed, params) in [(1, pp(1, 1, 3, 0)), (2, pp(1, 2, 2, 1)), (3, pp(2, 2, 2, 0))] {
            let mut rng = trial_rng(seed, 0);
            let (t, x) = planted_tuple(&mut rng, &params, 3).unwrap();
            let c = has_common_zero(&t, Mode::Numeric, DEFAULT_TOL).unwrap();
            let Verdict::CommonZero { witness } = c.verdict else { panic!("{params}: {:?}", c) };
            let z = witness.point();
            let last = *z.last().unwrap();
            for (k, xk) in x.iter().enumerate() {
                assert!((z[k] / last - xk.to_complex()).norm() < 1e-6, "{params}");
            }
        }
    }

    #[test]
    fn stabilization_preserves_verdicts() {
        let mut rng = trial_rng(11, 0);
        let (t, _) = planted_tuple(&mut rng, &pp(1, 1, 2, 0), 3).unwrap();
        let s = check_stabilization_membership(&t, DEFAULT_TOL).unwrap();
        assert_eq!((s.original, s.agree), (VerdictKind::CommonZero, Some(true)));
        let s = check_stabilization_membership(&identity(), DEFAULT_TOL).unwrap();
        assert_eq!((s.original, s.agree), (VerdictKind::NoCommonZero, Some(true)));
    }

    #[test]
    fn linearity_holds_exactly() {
        for params in [pp(1, 1, 2, 0), pp(2, 2, 1, 1)] {
            let r = linearity_of_stabilization(&params, 10, 4).unwrap();
            assert_eq!(r.failures, 0);
        }
    }
}
