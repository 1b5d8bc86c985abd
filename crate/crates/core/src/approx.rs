//! Least-squares approximation of sampled maps `CP^m -> CP^n` by
//! `(p, q)`-maps, boundary correction `P_1 = P + (f - P|_{z_m=0})`, and
//! Fubini–Study error measurement.
//!
//! Fitting raw coefficient vectors against the monomial basis is the same as
//! fitting the module generated by the monomial sections in the single-chart
//! setting, so no separate bundle objects are modelled.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::FromPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::discriminant::{has_common_zero, DiscError, Mode, ZeroCertificate, DEFAULT_TOL};
use crate::gaussian::GaussianRational;
use crate::poly::{homogeneous_monomials, MapTuple, PQMonomial, PQPolynomial, PolyError, ProjectivePoint};
use crate::seeds::trial_rng;

#[derive(Debug, Error)]
pub enum ApproxError {
    #[error("no samples")]
    Empty,
    #[error("sample {0} has a zero source or target vector")]
    ZeroVector(usize),
    #[error("sample {index}: expected {expected} coordinates, got {got}")]
    Dimension { index: usize, expected: usize, got: usize },
    #[error("samples {0} and {1} have the same source point")]
    DuplicateSource(usize, usize),
    #[error("coefficient {0} is not a finite number")]
    NonFinite(f64),
    #[error("least-squares solve failed: {0}")]
    Solve(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Disc(#[from] DiscError),
}

/// Fubini–Study distance `arccos(|<a, b>| / (|a| |b|))`, in `[0, pi/2]`.
pub fn fs_distance(a: &ProjectivePoint, b: &ProjectivePoint) -> Result<f64, PolyError> {
    if a.len() != b.len() {
        return Err(PolyError::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    fs_distance_float(&a.to_float(), &b.to_float()).ok_or(PolyError::ZeroPoint)
}

/// Floating version; `None` if either vector is zero.
pub fn fs_distance_float(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    let na = a.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    let nb = b.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return None;
    }
    // atan2(|perpendicular part|, |<a, b>|) equals the arccos but stays
    // accurate for nearby points.
    let (ua, ub): (Vec<Complex64>, Vec<Complex64>) = (a.iter().map(|z| z / na).collect(), b.iter().map(|z| z / nb).collect());
    let inner: Complex64 = ua.iter().zip(&ub).map(|(x, y)| x.conj() * y).sum();
    let perp = ub.iter().zip(&ua).map(|(y, x)| (y - inner * x).norm_sqr()).sum::<f64>().sqrt();
    Some(perp.atan2(inner.norm()))
}

/// One sample `(x, y)`: source representative and target value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub x: Vec<[f64; 2]>,
    pub y: Vec<[f64; 2]>,
}

fn complexes(v: &[[f64; 2]]) -> Vec<Complex64> {
    v.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn unit(v: &[Complex64]) -> Vec<Complex64> {
    let n = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    v.iter().map(|z| z / n).collect()
}

/// Samples of a map `CP^m -> CP^n`. Sources are normalized to unit norm;
/// targets are kept exactly as given, so a `(p, q)`-map sampled at unit
/// sources is fitted with zero residual.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledMap {
    m: usize,
    n: usize,
    xs: Vec<Vec<Complex64>>,
    ys: Vec<Vec<Complex64>>,
}

impl SampledMap {
    pub fn new(samples: &[Sample]) -> Result<Self, ApproxError> {
        let first = samples.first().ok_or(ApproxError::Empty)?;
        let (lx, ly) = (first.x.len(), first.y.len());
        if lx < 2 || ly < 1 {
            return Err(ApproxError::Dimension { index: 0, expected: 2, got: lx });
        }
        let mut xs = Vec::with_capacity(samples.len());
        let mut ys = Vec::with_capacity(samples.len());
        for (index, s) in samples.iter().enumerate() {
            if s.x.len() != lx {
                return Err(ApproxError::Dimension { index, expected: lx, got: s.x.len() });
            }
            if s.y.len() != ly {
                return Err(ApproxError::Dimension { index, expected: ly, got: s.y.len() });
            }
            let x = complexes(&s.x);
            let y = complexes(&s.y);
            if x.iter().chain(&y).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(ApproxError::NonFinite(f64::NAN));
            }
            if x.iter().all(|z| z.norm() == 0.0) || y.iter().all(|z| z.norm() == 0.0) {
                return Err(ApproxError::ZeroVector(index));
            }
            xs.push(unit(&x));
            ys.push(y);
        }
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                if fs_distance_float(&xs[i], &xs[j]).is_some_and(|d| d < 1e-12) {
                    return Err(ApproxError::DuplicateSource(i, j));
                }
            }
        }
        Ok(SampledMap { m: lx - 1, n: ly - 1, xs, ys })
    }

    /// Sample `target` at the given sources (normalized to unit norm first).
    pub fn from_fn(sources: &[Vec<Complex64>], target: impl Fn(&[Complex64]) -> Vec<Complex64>) -> Result<Self, ApproxError> {
        let samples: Vec<Sample> = sources
            .iter()
            .map(|x| {
                let u = unit(x);
                Sample { y: pairs(&target(&u)), x: pairs(&u) }
            })
            .collect();
        Self::new(&samples)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn sources(&self) -> &[Vec<Complex64>] {
        &self.xs
    }

    pub fn targets(&self) -> &[Vec<Complex64>] {
        &self.ys
    }

    pub fn to_samples(&self) -> Vec<Sample> {
        self.xs.iter().zip(&self.ys).map(|(x, y)| Sample { x: pairs(x), y: pairs(y) }).collect()
    }
}

/// Seeded points distributed uniformly for the Fubini–Study measure: unit
/// vectors with independent Gaussian coordinates.
pub fn fs_uniform_points(m: usize, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = trial_rng(seed, 0);
    let mut normal = move || {
        // Box–Muller
        let u1: f64 = 1.0 - rng.gen::<f64>();
        let u2: f64 = rng.gen();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    };
    (0..count).map(|_| unit(&(0..=m).map(|_| Complex64::new(normal(), normal())).collect::<Vec<_>>())).collect()
}

/// How the per-sample scalars `lambda_j` in `sum |F(x_j) - lambda_j y_j|^2`
/// are treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhasePolicy {
    /// Unit-modulus `lambda_j`, alternating with the coefficient solve.
    #[default]
    UnitPhase,
    /// `lambda_j = 1`: plain least squares.
    Fixed,
    /// Arbitrary complex `lambda_j`, coefficients and scalars normalized
    /// jointly: smallest right singular vector of the homogeneous system.
    Projective,
}

impl std::str::FromStr for PhasePolicy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "unit-phase" => Ok(PhasePolicy::UnitPhase),
            "fixed" => Ok(PhasePolicy::Fixed),
            "projective" => Ok(PhasePolicy::Projective),
            _ => Err(format!("unknown phase policy `{s}` (expected unit-phase, fixed or projective)")),
        }
    }
}

pub const MAX_ROUNDS: usize = 25;
pub const RELATIVE_STOP: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub p: u32,
    pub q: u32,
    pub policy: PhasePolicy,
    /// Fitted tuple; coefficients are the exact values of the floating fit.
    pub tuple: MapTuple,
    /// `sum_j |F(x_j) - lambda_j y_j|^2`.
    pub residual: f64,
    pub per_sample_residuals: Vec<f64>,
    pub fs_errors: Vec<f64>,
    pub sup_fs_error: f64,
    pub rounds: usize,
    pub underdetermined: bool,
    pub warnings: Vec<String>,
    pub boundary_agreement: Option<bool>,
    pub certificate: Option<ZeroCertificate>,
}

/// Floating state of a fit: coefficient columns (one per component, against
/// `homogeneous_monomials(m+1, p, q)`) and the per-sample scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct FitState {
    pub coefficients: DMatrix<Complex64>,
    pub lambdas: Vec<Complex64>,
}

impl FitState {
    /// The same values as a `(p+1, q+1)` fit: multiply by the norm form,
    /// which is 1 on unit-norm sources.
    pub fn stabilize(&self, m: usize, p: u32, q: u32) -> Self {
        let monos = homogeneous_monomials(m + 1, p, q);
        let up = homogeneous_monomials(m + 1, p + 1, q + 1);
        let index: std::collections::BTreeMap<&PQMonomial, usize> = up.iter().enumerate().map(|(i, mono)| (mono, i)).collect();
        let mut c = DMatrix::zeros(up.len(), self.coefficients.ncols());
        for (k, mono) in monos.iter().enumerate() {
            for j in 0..=m {
                let mut e = vec![0; m + 1];
                e[j] = 1;
                let bumped = mono.mul(&PQMonomial::new(e.clone(), e));
                let row = index[&bumped];
                for col in 0..c.ncols() {
                    c[(row, col)] += self.coefficients[(k, col)];
                }
            }
        }
        FitState { coefficients: c, lambdas: self.lambdas.clone() }
    }
}

fn design_matrix(xs: &[Vec<Complex64>], m: usize, p: u32, q: u32) -> DMatrix<Complex64> {
    let monos = homogeneous_monomials(m + 1, p, q);
    DMatrix::from_fn(xs.len(), monos.len(), |j, k| {
        let mono = &monos[k];
        let mut t = Complex64::new(1.0, 0.0);
        for (i, z) in xs[j].iter().enumerate() {
            t *= z.powu(mono.alpha[i]) * z.conj().powu(mono.beta[i]);
        }
        t
    })
}

fn targets(ys: &[Vec<Complex64>], lambdas: &[Complex64]) -> DMatrix<Complex64> {
    DMatrix::from_fn(ys.len(), ys[0].len(), |j, i| lambdas[j] * ys[j][i])
}

fn residual_of(a: &DMatrix<Complex64>, c: &DMatrix<Complex64>, ys: &[Vec<Complex64>], lambdas: &[Complex64]) -> (f64, Vec<f64>) {
    let diff = a * c - targets(ys, lambdas);
    let per: Vec<f64> = (0..diff.nrows()).map(|j| diff.row(j).iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()).collect();
    (per.iter().map(|r| r * r).sum(), per)
}

/// Closed-form optimal unit phase: `lambda_j = <y_j, F_j> / |<y_j, F_j>|`.
fn update_phases(values: &DMatrix<Complex64>, ys: &[Vec<Complex64>]) -> Vec<Complex64> {
    ys.iter()
        .enumerate()
        .map(|(j, y)| {
            let inner: Complex64 = y.iter().enumerate().map(|(i, yi)| yi.conj() * values[(j, i)]).sum();
            if inner.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                inner / inner.norm()
            }
        })
        .collect()
}

fn exact_tuple(c: &DMatrix<Complex64>, m: usize, p: u32, q: u32) -> Result<MapTuple, ApproxError> {
    let comps = (0..c.ncols())
        .map(|col| {
            let coeffs = c
                .column(col)
                .iter()
                .map(|z| {
                    let re = BigRational::from_f64(z.re).ok_or(ApproxError::NonFinite(z.re))?;
                    let im = BigRational::from_f64(z.im).ok_or(ApproxError::NonFinite(z.im))?;
                    Ok(GaussianRational::new(re, im))
                })
                .collect::<Result<Vec<_>, ApproxError>>()?;
            Ok(PQPolynomial::from_coefficients(m, p, q, &coeffs)?)
        })
        .collect::<Result<Vec<_>, ApproxError>>()?;
    Ok(MapTuple::from_components(comps)?)
}

/// Floating coefficient matrix of a tuple, against the fit basis.
pub fn tuple_coefficients(t: &MapTuple) -> DMatrix<Complex64> {
    let monos = homogeneous_monomials(t.m() + 1, t.p(), t.q());
    DMatrix::from_fn(monos.len(), t.components().len(), |k, i| t.components()[i].coefficient(&monos[k]).to_complex())
}

fn fs_errors(t: &MapTuple, samples: &SampledMap) -> Vec<f64> {
    samples
        .xs
        .iter()
        .zip(&samples.ys)
        .map(|(x, y)| {
            let v: Vec<Complex64> = t.components().iter().map(|c| c.evaluate_float_unchecked(x)).collect();
            // A fit vanishing at a sample is as far off as possible.
            fs_distance_float(&v, y).unwrap_or(std::f64::consts::FRAC_PI_2)
        })
        .collect()
}

/// Zero certificate for a fitted tuple: exact for binary holomorphic forms,
/// numeric otherwise.
fn certify(t: &MapTuple) -> Result<ZeroCertificate, ApproxError> {
    let mode = if t.m() == 1 && t.q() == 0 { Mode::Exact } else { Mode::Numeric };
    Ok(has_common_zero(t, mode, DEFAULT_TOL)?)
}

/// Least-squares fit of a `(p, q)`-map. With `start`, the alternation
/// begins from that state (used by the ladder).
pub fn fit_pq_map_from(
    samples: &SampledMap,
    p: u32,
    q: u32,
    policy: PhasePolicy,
    start: Option<&FitState>,
) -> Result<(FitReport, FitState), ApproxError> {
    let (m, s) = (samples.m, samples.len());
    let a = design_matrix(&samples.xs, m, p, q);
    let k = a.ncols();
    let mut warnings = Vec::new();
    let underdetermined = {
        let sv = a.clone().svd(false, false).singular_values;
        let tol = 1e-12 * sv.max().max(1.0);
        sv.iter().filter(|&&x| x > tol).count() < k
    };
    if underdetermined {
        warnings.push(format!("underdetermined: {s} samples for {k} coefficients; minimum-norm solution"));
    }
    let svd = a.clone().svd(true, true);
    let eps = 1e-12 * svd.singular_values.max().max(1.0);
    let solve = |b: &DMatrix<Complex64>| svd.solve(b, eps).map_err(|e| ApproxError::Solve(e.to_string()));

    let (state, rounds) = match policy {
        PhasePolicy::Fixed => {
            let lambdas = vec![Complex64::new(1.0, 0.0); s];
            (FitState { coefficients: solve(&targets(&samples.ys, &lambdas))?, lambdas }, 1)
        }
        PhasePolicy::UnitPhase => {
            let mut state = match start {
                Some(st) => st.clone(),
                None => {
                    let lambdas = vec![Complex64::new(1.0, 0.0); s];
                    FitState { coefficients: solve(&targets(&samples.ys, &lambdas))?, lambdas }
                }
            };
            let mut best = residual_of(&a, &state.coefficients, &samples.ys, &state.lambdas).0;
            let mut rounds = 0;
            for _ in 0..MAX_ROUNDS {
                rounds += 1;
                let lambdas = update_phases(&(&a * &state.coefficients), &samples.ys);
                let coefficients = solve(&targets(&samples.ys, &lambdas))?;
                let r = residual_of(&a, &coefficients, &samples.ys, &lambdas).0;
                if r > best {
                    break;
                }
                let gain = best - r;
                state = FitState { coefficients, lambdas };
                best = r;
                if gain <= RELATIVE_STOP * best.max(f64::MIN_POSITIVE) {
                    break;
                }
            }
            (state, rounds)
        }
        PhasePolicy::Projective => {
            let n1 = samples.n + 1;
            let cols = k * n1 + s;
            let mut h = DMatrix::zeros(s * n1, cols);
            for j in 0..s {
                for i in 0..n1 {
                    let row = j * n1 + i;
                    for c in 0..k {
                        h[(row, i * k + c)] = a[(j, c)];
                    }
                    h[(row, k * n1 + j)] = -samples.ys[j][i];
                }
            }
            // Smallest right singular vector via the Hermitian Gram matrix.
            let gram = h.adjoint() * &h;
            let eig = gram.symmetric_eigen();
            let idx = eig.eigenvalues.iter().enumerate().min_by(|x, y| x.1.total_cmp(y.1)).map(|x| x.0).unwrap_or(0);
            let v: DVector<Complex64> = eig.eigenvectors.column(idx).into_owned();
            let coefficients = DMatrix::from_fn(k, n1, |c, i| v[i * k + c]);
            let lambdas = (0..s).map(|j| v[k * n1 + j]).collect();
            (FitState { coefficients, lambdas }, 1)
        }
    };
    let tuple = exact_tuple(&state.coefficients, m, p, q)?;
    let (residual, per_sample_residuals) = residual_of(&a, &state.coefficients, &samples.ys, &state.lambdas);
    let fs = fs_errors(&tuple, samples);
    let sup_fs_error = fs.iter().cloned().fold(0.0, f64::max);
    let certificate = Some(certify(&tuple)?);
    let report = FitReport {
        p,
        q,
        policy,
        tuple,
        residual,
        per_sample_residuals,
        fs_errors: fs,
        sup_fs_error,
        rounds,
        underdetermined,
        warnings,
        boundary_agreement: None,
        certificate,
    };
    Ok((report, state))
}

pub fn fit_pq_map(samples: &SampledMap, p: u32, q: u32, policy: PhasePolicy) -> Result<FitReport, ApproxError> {
    Ok(fit_pq_map_from(samples, p, q, policy, None)?.0)
}

/// Fits at `(k+1, k)` for `k = 0..=kmax`. Rung `k+1` starts from the
/// stabilized rung-`k` solution, which has the same values on unit-norm
/// sources; since the alternation never accepts a worse state, the residual
/// is non-increasing along the ladder. Rungs run in order for that reason.
pub fn fit_ladder(samples: &SampledMap, kmax: u32, policy: PhasePolicy) -> Result<Vec<FitReport>, ApproxError> {
    let mut out = Vec::new();
    let mut prev: Option<FitState> = None;
    for k in 0..=kmax {
        let start = prev.as_ref().map(|st| st.stabilize(samples.m, k, k - 1));
        let (report, state) = fit_pq_map_from(samples, k + 1, k, policy, start.as_ref())?;
        out.push(report);
        prev = Some(state);
    }
    Ok(out)
}

/// Whether residuals along a ladder never increase, up to rounding: a rise
/// below `1e-12 * sum_j |y_j|^2` is noise from re-solving an exact fit.
pub fn ladder_non_increasing(ladder: &[FitReport], samples: &SampledMap) -> bool {
    let energy: f64 = samples.ys.iter().flatten().map(Complex64::norm_sqr).sum();
    let slack = 1e-12 * energy;
    ladder.windows(2).all(|w| w[1].residual <= w[0].residual + slack)
}

/// `P_1 = P + (f - P|_{z_m=0})`, the correction extended constantly in
/// `z_m`. Its restriction to the hyperplane is exactly `f`.
pub fn boundary_correct(poly: &PQPolynomial, boundary: &PQPolynomial) -> Result<PQPolynomial, ApproxError> {
    if boundary.m() + 1 != poly.m() || boundary.p() != poly.p() || boundary.q() != poly.q() {
        return Err(PolyError::IncompatibleBidegree(format!(
            "boundary ({}, {}) on CP^{} vs polynomial ({}, {}) on CP^{}",
            boundary.p(),
            boundary.q(),
            boundary.m(),
            poly.p(),
            poly.q(),
            poly.m()
        ))
        .into());
    }
    let diff = boundary.sub(&poly.restrict_to_hyperplane()?)?;
    Ok(poly.add(&diff.extend_constantly())?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrectionBound {
    /// `sup |P - S|` over the points and their hyperplane projections.
    pub eps: f64,
    /// `sup |P_1 - S|` over the same set.
    pub corrected_sup: f64,
    pub holds: bool,
}

/// Measures the correction bound. The measurement set is the given points
/// together with their projections `(x', 0)`; the reference `target` must
/// agree with the boundary data on the hyperplane for the bound to apply.
pub fn measure_correction(
    poly: &PQPolynomial,
    corrected: &PQPolynomial,
    target: impl Fn(&[Complex64]) -> Complex64,
    points: &[Vec<Complex64>],
) -> CorrectionBound {
    let mut set: Vec<Vec<Complex64>> = points.to_vec();
    for x in points {
        let mut proj = x.clone();
        *proj.last_mut().expect("nonempty point") = Complex64::new(0.0, 0.0);
        if proj.iter().any(|z| z.norm() > 0.0) {
            set.push(proj);
        }
    }
    let sup = |f: &PQPolynomial| set.iter().map(|x| (f.evaluate_float_unchecked(x) - target(x)).norm()).fold(0.0, f64::max);
    let eps = sup(poly);
    let corrected_sup = sup(corrected);
    let slack = 1e-12 * (1.0 + eps);
    CorrectionBound { eps, corrected_sup, holds: corrected_sup <= 2.0 * eps + slack }
}

/// Fit, then correct every component so the hyperplane restriction equals
/// the given boundary exactly. The report is recomputed for the corrected
/// tuple and records the boundary agreement.
pub fn approximate_with_boundary(
    samples: &SampledMap,
    boundary: &[PQPolynomial],
    p: u32,
    q: u32,
    policy: PhasePolicy,
) -> Result<FitReport, ApproxError> {
    if boundary.len() != samples.n + 1 {
        return Err(PolyError::ComponentCount { expected: samples.n + 1, got: boundary.len() }.into());
    }
    let (fit, state) = fit_pq_map_from(samples, p, q, policy, None)?;
    let corrected = fit
        .tuple
        .components()
        .iter()
        .zip(boundary)
        .map(|(c, f)| boundary_correct(c, f))
        .collect::<Result<Vec<_>, _>>()?;
    let tuple = MapTuple::new(corrected, boundary.to_vec())?;
    let boundary_agreement = tuple.restrict_to_hyperplane() == boundary;
    let a = design_matrix(&samples.xs, samples.m, p, q);
    let (residual, per_sample_residuals) = residual_of(&a, &tuple_coefficients(&tuple), &samples.ys, &state.lambdas);
    let fs = fs_errors(&tuple, samples);
    let sup_fs_error = fs.iter().cloned().fold(0.0, f64::max);
    let certificate = Some(certify(&tuple)?);
    Ok(FitReport {
        tuple,
        residual,
        per_sample_residuals,
        fs_errors: fs,
        sup_fs_error,
        boundary_agreement: Some(boundary_agreement),
        certificate,
        ..fit
    })
}

/// Amplitude of the documented non-algebraic target.
pub const BUMP_EPS: f64 = 0.5;

/// Bump-perturbed identity on `CP^1`:
/// `F(x) = (x0, x1 + eps * beta(t) * x0)` with `t = |x0|^2 / |x|^2` and
/// `beta(t) = exp(-((t - 0.5) / 0.15)^2)`. Smooth, well defined on `CP^1`,
/// and not a `(p, q)`-map for any `p, q`.
pub fn bump_target(x: &[Complex64]) -> Vec<Complex64> {
    let norm: f64 = x.iter().map(Complex64::norm_sqr).sum();
    let t = x[0].norm_sqr() / norm;
    let beta = (-((t - 0.5) / 0.15).powi(2)).exp();
    vec![x[0], x[1] + x[0] * (BUMP_EPS * beta)]
}
