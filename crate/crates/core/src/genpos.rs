//! Exact general-position certificates for configurations of points in the
//! affine chart `z_m = 1`: affine independence of Veronese images, rank of
//! the vanishing conditions, fiber dimensions of the resolution strata and
//! the disjoint-or-common-face dichotomy for image simplices.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bookkeeping::{bundle_rank, BookkeepingError, ProblemParams};
use crate::field::Field;
use crate::gaussian::{GaussianRational, ReductionField, REDUCTION_PRIME};
use crate::linalg::DenseMatrix;
use crate::lp::{maximize, LpOutcome};
use crate::poly::{chart_monomials, holo_power, homogeneous_monomials, veronese, PQMonomial, PQPolynomial, PolyError};
use crate::seeds::trial_rng;

#[derive(Debug, Error)]
pub enum GenposError {
    #[error("configuration is empty")]
    Empty,
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("point {index} has {got} coordinates, expected {expected}")]
    Dimension { index: usize, expected: usize, got: usize },
    #[error("configurations live in different dimensions")]
    MixedDimensions,
    #[error("boundary has {got} polynomials, expected {expected}")]
    Boundary { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Bookkeeping(#[from] BookkeepingError),
}

/// `r >= 1` distinct points of `C^m`, stored in a canonical order so every
/// derived quantity is independent of how the points were listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ConfigurationWire", into = "ConfigurationWire")]
pub struct Configuration {
    m: usize,
    points: Vec<Vec<GaussianRational>>,
}

#[derive(Serialize, Deserialize)]
struct ConfigurationWire {
    m: usize,
    points: Vec<Vec<GaussianRational>>,
}

impl TryFrom<ConfigurationWire> for Configuration {
    type Error = GenposError;
    fn try_from(w: ConfigurationWire) -> Result<Self, GenposError> {
        Configuration::new(w.m, w.points)
    }
}

impl From<Configuration> for ConfigurationWire {
    fn from(c: Configuration) -> Self {
        ConfigurationWire { m: c.m, points: c.points }
    }
}

fn sort_key(point: &[GaussianRational]) -> Vec<(BigRational, BigRational)> {
    point.iter().map(|z| (z.re.clone(), z.im.clone())).collect()
}

impl Configuration {
    pub fn new(m: usize, mut points: Vec<Vec<GaussianRational>>) -> Result<Self, GenposError> {
        if points.is_empty() {
            return Err(GenposError::Empty);
        }
        for (index, pt) in points.iter().enumerate() {
            if pt.len() != m {
                return Err(GenposError::Dimension { index, expected: m, got: pt.len() });
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(GenposError::DuplicatePoint(i, j));
                }
            }
        }
        points.sort_by_cached_key(|p| sort_key(p));
        Ok(Configuration { m, points })
    }

    /// Points of the line `C^1` given by single complex numbers.
    pub fn on_line(points: Vec<GaussianRational>) -> Result<Self, GenposError> {
        Self::new(1, points.into_iter().map(|z| vec![z]).collect())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<GaussianRational>] {
        &self.points
    }

    pub fn contains(&self, point: &[GaussianRational]) -> bool {
        self.points.iter().any(|p| p == point)
    }

    /// Seeded random configuration; coordinates `a/b + i c/d` with
    /// `|a|, |c| <= magnitude` and `1 <= b, d <= magnitude`, duplicates
    /// rejected and redrawn.
    pub fn random<R: Rng>(rng: &mut R, m: usize, r: usize, magnitude: i64) -> Self {
        assert!(r >= 1 && magnitude >= 1);
        let mut points: Vec<Vec<GaussianRational>> = Vec::with_capacity(r);
        while points.len() < r {
            let pt: Vec<GaussianRational> = (0..m)
                .map(|_| {
                    let mut part = || {
                        BigRational::new(rng.gen_range(-magnitude..=magnitude).into(), rng.gen_range(1..=magnitude).into())
                    };
                    GaussianRational::new(part(), part())
                })
                .collect();
            if !points.contains(&pt) {
                points.push(pt);
            }
        }
        Self::new(m, points).expect("distinct by construction")
    }
}

/// Default coordinate bound for random configurations.
pub const DEFAULT_MAGNITUDE: i64 = 1 << 16;

/// Nonvanishing Vandermonde minor: a linear form separating the points, its
/// values, and `det = prod_{i<j} (l_j - l_i)`. The Vandermonde matrix is the
/// Veronese matrix times the coefficient matrix of the powers of the form,
/// and that factorization is checked exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VandermondeCertificate {
    pub linear_form: Vec<GaussianRational>,
    pub values: Vec<GaussianRational>,
    pub determinant: GaussianRational,
    pub factorization_checked: bool,
    /// Prime modulo which the factorization was checked; `None` when it was
    /// checked in exact arithmetic.
    pub modulus: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimplexSpan {
    pub r: usize,
    /// Linear rank of the Veronese vectors (they all have first coordinate
    /// 1, so this is affine rank + 1).
    pub rank: usize,
    pub affine_rank: usize,
    pub is_simplex: bool,
    /// Whether `r <= p + 1`, the range where a simplex is guaranteed.
    pub guaranteed: bool,
    pub certificate: Option<VandermondeCertificate>,
}

fn veronese_rows(config: &Configuration, p: u32, q: u32) -> Result<Vec<Vec<GaussianRational>>, GenposError> {
    Ok(config.points.iter().map(|x| veronese(config.m, p, q, x)).collect::<Result<_, _>>()?)
}

fn linear_values(form: &[GaussianRational], config: &Configuration) -> Vec<GaussianRational> {
    config
        .points
        .iter()
        .map(|x| form.iter().zip(x).fold(GaussianRational::zero(), |acc, (c, xi)| acc.add(&c.mul(xi))))
        .collect()
}

fn all_distinct(values: &[GaussianRational]) -> bool {
    (0..values.len()).all(|i| (i + 1..values.len()).all(|j| values[i] != values[j]))
}

/// A linear form `(1, t, t^2, ...)` taking distinct values on the points;
/// only finitely many `t` fail, so the search terminates.
fn separating_form(config: &Configuration) -> Vec<GaussianRational> {
    for t in 0i64.. {
        let mut form = Vec::with_capacity(config.m);
        let mut c = GaussianRational::one();
        for _ in 0..config.m {
            form.push(c.clone());
            c = c.mul(&GaussianRational::from_ints(t, 0));
        }
        if all_distinct(&linear_values(&form, config)) {
            return form;
        }
    }
    unreachable!()
}

/// Coefficients of `l^k`, `k = 0..r`, in the chart-monomial basis: a
/// `dim V x r` matrix.
fn power_coefficients(form: &[GaussianRational], r: usize, p: u32, q: u32) -> DenseMatrix<GaussianRational> {
    let m = form.len();
    let monos = chart_monomials(m, p, q);
    let index: BTreeMap<&PQMonomial, usize> = monos.iter().enumerate().map(|(i, mono)| (mono, i)).collect();
    let mut t = DenseMatrix::zeros(monos.len(), r);
    let mut power: BTreeMap<Vec<u32>, GaussianRational> = BTreeMap::from([(vec![0; m], GaussianRational::one())]);
    for k in 0..r {
        for (alpha, c) in &power {
            let mono = PQMonomial::new(alpha.clone(), vec![0; m]);
            t[(index[&mono], k)] = c.clone();
        }
        let mut next: BTreeMap<Vec<u32>, GaussianRational> = BTreeMap::new();
        for (alpha, c) in &power {
            for (i, ci) in form.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                let mut a = alpha.clone();
                a[i] += 1;
                let e = next.entry(a).or_insert_with(GaussianRational::zero);
                *e = e.add(&c.mul(ci));
            }
        }
        power = next;
    }
    t
}

type Rf = ReductionField;

/// Coordinates and their conjugates mod the reduction prime.
fn reduced_point(x: &[GaussianRational]) -> Option<(Vec<Rf>, Vec<Rf>)> {
    let z = x.iter().map(GaussianRational::reduce_mod).collect::<Option<Vec<_>>>()?;
    let zbar = x.iter().map(|c| c.conj().reduce_mod()).collect::<Option<Vec<_>>>()?;
    Some((z, zbar))
}

fn pow_mod(base: Rf, e: u32) -> Rf {
    (0..e).fold(Rf::one(), |acc, _| acc.mul(&base))
}

/// Monomial at a chart point mod P. Exponents past the point's length
/// belong to the homogenizing coordinate, which is 1.
fn eval_mod(mono: &PQMonomial, z: &[Rf], zbar: &[Rf]) -> Rf {
    (0..z.len()).fold(Rf::one(), |acc, i| {
        acc.mul(&pow_mod(z[i], mono.alpha[i])).mul(&pow_mod(zbar[i], mono.beta[i]))
    })
}

/// Rows `(mono(x_j))_mono` mod P, or `None` when a coordinate has a
/// denominator divisible by P. Reduction is a ring map and never raises
/// rank, so full rank of these rows is full rank of the exact ones.
fn modular_rows(config: &Configuration, monos: &[PQMonomial]) -> Option<DenseMatrix<Rf>> {
    let rows = config
        .points
        .iter()
        .map(|x| reduced_point(x).map(|(z, zbar)| monos.iter().map(|mono| eval_mod(mono, &z, &zbar)).collect()))
        .collect::<Option<Vec<Vec<Rf>>>>()?;
    Some(DenseMatrix::from_rows(rows))
}

fn vandermonde_certificate(
    config: &Configuration,
    modular: Option<&DenseMatrix<Rf>>,
    p: u32,
    q: u32,
) -> Result<VandermondeCertificate, GenposError> {
    let r = config.r();
    let form = separating_form(config);
    let values = linear_values(&form, config);
    let mut determinant = GaussianRational::one();
    for i in 0..r {
        for j in i + 1..r {
            determinant = determinant.mul(&values[j].sub(&values[i]));
        }
    }
    let powers = power_coefficients(&form, r, p, q);
    // Check V = Veronese * T modulo P when everything reduces; the same
    // argument (det V != 0) then shows full rank mod P, hence over Q(i).
    let reduced = || -> Option<bool> {
        let rows = modular?;
        let t = DenseMatrix::from_rows(
            powers.to_rows().iter().map(|row| row.iter().map(GaussianRational::reduce_mod).collect()).collect::<Option<_>>()?,
        );
        let vals = values.iter().map(GaussianRational::reduce_mod).collect::<Option<Vec<_>>>()?;
        let vdm = DenseMatrix::from_rows(vals.iter().map(|&v| (0..r).map(|k| pow_mod(v, k as u32)).collect()).collect());
        Some(rows.mul(&t) == vdm && Some(vdm.determinant()) == determinant.reduce_mod())
    };
    if let Some(ok) = reduced() {
        return Ok(VandermondeCertificate {
            linear_form: form,
            values,
            determinant,
            factorization_checked: ok,
            modulus: Some(REDUCTION_PRIME),
        });
    }
    let vdm = DenseMatrix::from_rows(values.iter().map(|v| (0..r).map(|k| v.pow(k as u32)).collect()).collect());
    let product = DenseMatrix::from_rows(veronese_rows(config, p, q)?).mul(&powers);
    let factorization_checked = product == vdm && vdm.determinant() == determinant;
    Ok(VandermondeCertificate { linear_form: form, values, determinant, factorization_checked, modulus: None })
}

/// Affine rank of the Veronese images of the points. For `r <= p + 1` a
/// Vandermonde certificate is attached.
pub fn certify_simplex_span(config: &Configuration, p: u32, q: u32) -> Result<SimplexSpan, GenposError> {
    let r = config.r();
    let modular = modular_rows(config, &chart_monomials(config.m, p, q));
    let rank = match &modular {
        Some(rows) if rows.rank() == r => r,
        _ => DenseMatrix::from_rows(veronese_rows(config, p, q)?).certified_rank(),
    };
    let guaranteed = r <= p as usize + 1;
    let certificate = if guaranteed { Some(vandermonde_certificate(config, modular.as_ref(), p, q)?) } else { None };
    Ok(SimplexSpan { r, rank, affine_rank: rank - 1, is_simplex: rank == r, guaranteed, certificate })
}

/// Whether the vanishing conditions at the points have full rank mod P,
/// which certifies full rank exactly.
fn conditions_full_rank_mod_p(config: &Configuration, p: u32, q: u32) -> bool {
    modular_rows(config, &free_monomials(config.m, p, q)).is_some_and(|a| a.rank() == config.r())
}

/// Boundary data `f_i = z_i^p conj(z_i)^q` for `i < m`, zero otherwise. These
/// have no common zero on the hyperplane.
pub fn default_boundary(m: usize, n: usize, p: u32, q: u32) -> Vec<PQPolynomial> {
    (0..=n)
        .map(|i| if i < m { PQPolynomial::variable_power(m - 1, i, p, q) } else { PQPolynomial::zero(m - 1, p, q) })
        .collect()
}

/// Free monomials of one component: homogeneous `(p, q)`-monomials that
/// involve `z_m` or its conjugate.
pub fn free_monomials(m: usize, p: u32, q: u32) -> Vec<PQMonomial> {
    homogeneous_monomials(m + 1, p, q).into_iter().filter(PQMonomial::touches_last).collect()
}

/// Value at the chart point `(x, 1)`, through a cache of holomorphic powers
/// of `x`.
fn eval_at_chart(cache: &mut HashMap<Vec<u32>, GaussianRational>, mono: &PQMonomial, x: &[GaussianRational]) -> GaussianRational {
    let m = x.len();
    let a = holo_power(cache, x, &mono.alpha[..m]);
    if mono.beta[..m].iter().all(|&b| b == 0) {
        return a;
    }
    a.mul(&holo_power(cache, x, &mono.beta[..m]).conj())
}

/// Linear conditions on the free coefficients of component `i` saying the
/// component vanishes at every configuration point: `matrix * c = rhs`,
/// with `rhs = -f_i(x_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VanishingSystem {
    pub matrix: DenseMatrix<GaussianRational>,
    pub rhs: Vec<GaussianRational>,
}

impl VanishingSystem {
    pub fn build(config: &Configuration, p: u32, q: u32, boundary: &PQPolynomial) -> Result<Self, GenposError> {
        let free = free_monomials(config.m, p, q);
        let mut rows = Vec::with_capacity(config.r());
        let mut rhs = Vec::with_capacity(config.r());
        for x in &config.points {
            let mut cache = HashMap::from([(vec![0; config.m], GaussianRational::one())]);
            rows.push(free.iter().map(|mono| eval_at_chart(&mut cache, mono, x)).collect());
            rhs.push(boundary.evaluate_exact(x)?.neg());
        }
        Ok(VanishingSystem { matrix: DenseMatrix::from_rows(rows), rhs })
    }

    pub fn rank(&self) -> usize {
        self.matrix.certified_rank()
    }
}

fn check_boundary(boundary: &[PQPolynomial], n: usize) -> Result<(), GenposError> {
    if boundary.len() != n + 1 {
        return Err(GenposError::Boundary { expected: n + 1, got: boundary.len() });
    }
    Ok(())
}

/// True iff the vanishing conditions at the points are linearly independent
/// (the affine hyperplanes are in general position).
pub fn certify_hyperplane_general_position(config: &Configuration, params: &ProblemParams) -> Result<bool, GenposError> {
    if conditions_full_rank_mod_p(config, params.p, params.q) {
        return Ok(true);
    }
    let zero = PQPolynomial::zero(config.m - 1, params.p, params.q);
    Ok(VanishingSystem::build(config, params.p, params.q, &zero)?.rank() == config.r())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nullity {
    pub dim_wi: usize,
    pub rank: usize,
    pub solvable: bool,
    /// Dimension of the solution space; `None` when it is empty.
    pub nullity: Option<usize>,
}

/// Solution space of the vanishing conditions for component `i`.
pub fn vanishing_nullity(
    config: &Configuration,
    params: &ProblemParams,
    boundary: &[PQPolynomial],
    i: usize,
) -> Result<Nullity, GenposError> {
    check_boundary(boundary, params.n as usize)?;
    let sys = VanishingSystem::build(config, params.p, params.q, &boundary[i])?;
    let rank = sys.rank();
    let dim_wi = sys.matrix.ncols();
    // full row rank: every right-hand side is reachable
    let solvable = rank == sys.matrix.nrows() || sys.matrix.solve(&sys.rhs).is_some();
    Ok(Nullity { dim_wi, rank, solvable, nullity: solvable.then_some(dim_wi - rank) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberDimension {
    pub per_component: Vec<Option<usize>>,
    /// `2 * sum(nullity) + r - 1`; `None` if some component is infeasible.
    pub total_real_dim: Option<i64>,
    pub bundle_rank: i64,
    pub matches_bundle_rank: bool,
}

/// Real dimension of the fiber of the `r`-th stratum over the
/// configuration: the affine solution space of all `n + 1` components times
/// an open `(r-1)`-simplex.
pub fn certify_fiber_dimension(
    config: &Configuration,
    params: &ProblemParams,
    boundary: &[PQPolynomial],
) -> Result<FiberDimension, GenposError> {
    let r = config.r() as i64;
    let expected = bundle_rank(params, r)?;
    check_boundary(boundary, params.n as usize)?;
    // the matrix is the same for every component; with full row rank every
    // component is solvable and nothing depends on the boundary values
    let per_component = if conditions_full_rank_mod_p(config, params.p, params.q) {
        let dim_wi = free_monomials(config.m, params.p, params.q).len();
        vec![Some(dim_wi - config.r()); params.n as usize + 1]
    } else {
        (0..=params.n as usize)
            .map(|i| vanishing_nullity(config, params, boundary, i).map(|n| n.nullity))
            .collect::<Result<Vec<_>, _>>()?
    };
    let total_real_dim = per_component
        .iter()
        .try_fold(0i64, |acc, n| n.map(|k| acc + 2 * k as i64))
        .map(|s| s + r - 1);
    Ok(FiberDimension {
        per_component,
        total_real_dim,
        bundle_rank: expected,
        matches_bundle_rank: total_real_dim == Some(expected),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Intersection {
    Disjoint,
    /// The simplices meet, and only inside the face spanned by the shared
    /// vertices.
    CommonFace { shared: usize },
    /// They meet at a point with positive weight on a non-shared vertex.
    Bad,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dichotomy {
    pub intersection: Intersection,
    pub holds: bool,
}

/// Exact LP on barycentric weights `lambda` (on A) and `mu` (on B):
/// `sum lambda v(a) = sum mu v(b)`, both summing to one; maximize the
/// weight on vertices not shared by both configurations.
pub fn certify_disjoint_simplices(a: &Configuration, b: &Configuration, p: u32, q: u32) -> Result<Dichotomy, GenposError> {
    if a.m != b.m {
        return Err(GenposError::MixedDimensions);
    }
    let va = veronese_rows(a, p, q)?;
    let vb = veronese_rows(b, p, q)?;
    let (na, nb) = (a.r(), b.r());
    let width = na + nb;
    let zero = <BigRational as Zero>::zero;
    let one = || BigRational::from_integer(1.into());
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut rhs = Vec::new();
    for k in 0..va[0].len() {
        let mut re = vec![zero(); width];
        let mut im = vec![zero(); width];
        for j in 0..na {
            re[j] = va[j][k].re.clone();
            im[j] = va[j][k].im.clone();
        }
        for j in 0..nb {
            re[na + j] = -&vb[j][k].re;
            im[na + j] = -&vb[j][k].im;
        }
        for row in [re, im] {
            if row.iter().any(|c| !Zero::is_zero(c)) {
                rows.push(row);
                rhs.push(zero());
            }
        }
    }
    let mut sum_a = vec![zero(); width];
    sum_a[..na].iter_mut().for_each(|c| *c = one());
    rows.push(sum_a);
    rhs.push(one());
    let mut sum_b = vec![zero(); width];
    sum_b[na..].iter_mut().for_each(|c| *c = one());
    rows.push(sum_b);
    rhs.push(one());

    let objective: Vec<BigRational> = a
        .points
        .iter()
        .map(|x| if b.contains(x) { zero() } else { one() })
        .chain(b.points.iter().map(|x| if a.contains(x) { zero() } else { one() }))
        .collect();
    let shared = a.points.iter().filter(|x| b.contains(x)).count();
    let intersection = match maximize(&rows, &rhs, &objective) {
        LpOutcome::Infeasible => Intersection::Disjoint,
        LpOutcome::Optimal { value, .. } if !value.is_positive() => Intersection::CommonFace { shared },
        _ => Intersection::Bad,
    };
    let holds = intersection != Intersection::Bad;
    Ok(Dichotomy { intersection, holds })
}

/// Which statement a Monte Carlo run checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    /// Veronese images of `r <= p + 1` points are affinely independent.
    Vdm,
    /// Vanishing conditions at `r <= p` points are independent.
    Hyperplanes,
    /// Fiber dimension equals the bundle rank for `r <= floor((p+1)/2)`.
    Fiber,
    /// Image simplices of size `<= floor((p+1)/2)` are disjoint or share a face.
    Simplices,
}

impl std::str::FromStr for Lemma {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "vdm" => Ok(Lemma::Vdm),
            "hyperplanes" => Ok(Lemma::Hyperplanes),
            "fiber" => Ok(Lemma::Fiber),
            "simplices" => Ok(Lemma::Simplices),
            _ => Err(format!("unknown lemma `{s}` (expected vdm, hyperplanes, fiber or simplices)")),
        }
    }
}

impl Lemma {
    /// Whether the statement is claimed for this `r`.
    pub fn guaranteed(self, params: &ProblemParams, r: usize) -> bool {
        let p = params.p as usize;
        match self {
            Lemma::Vdm => r <= p + 1,
            Lemma::Hyperplanes => r <= p,
            Lemma::Fiber | Lemma::Simplices => r as i64 <= params.stable_bound(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: u64,
    pub configurations: Vec<Configuration>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub lemma: Lemma,
    pub params: ProblemParams,
    pub r: usize,
    pub guaranteed: bool,
    pub trials: u64,
    /// Trials where the statement failed. Outside the guaranteed range
    /// these are observations, not bugs.
    pub failures: u64,
    pub witnesses: Vec<Witness>,
}

/// Keep at most this many witnesses in a summary.
const MAX_WITNESSES: usize = 16;

fn run_trial(
    lemma: Lemma,
    params: &ProblemParams,
    r: usize,
    seed: u64,
    trial: u64,
    magnitude: i64,
) -> Result<Option<Witness>, GenposError> {
    let mut rng = trial_rng(seed, trial);
    let m = params.m as usize;
    let config = Configuration::random(&mut rng, m, r, magnitude);
    let witness = |configurations: Vec<Configuration>, detail: String| Some(Witness { trial, configurations, detail });
    Ok(match lemma {
        Lemma::Vdm => {
            let s = certify_simplex_span(&config, params.p, params.q)?;
            let cert_ok = s.certificate.as_ref().is_none_or(|c| c.factorization_checked && !c.determinant.is_zero());
            if s.is_simplex && cert_ok {
                None
            } else {
                witness(vec![config], format!("rank {} for {} points", s.rank, r))
            }
        }
        Lemma::Hyperplanes => {
            if certify_hyperplane_general_position(&config, params)? {
                None
            } else {
                witness(vec![config], "vanishing conditions dependent".into())
            }
        }
        Lemma::Fiber => {
            let boundary = default_boundary(m, params.n as usize, params.p, params.q);
            let f = certify_fiber_dimension(&config, params, &boundary)?;
            if f.matches_bundle_rank {
                None
            } else {
                witness(vec![config], format!("fiber dimension {:?} vs bundle rank {}", f.total_real_dim, f.bundle_rank))
            }
        }
        Lemma::Simplices => {
            // Second configuration: random size, sharing a random subset with the first.
            let rb = rng.gen_range(1..=r);
            let keep = rng.gen_range(0..=rb.min(r));
            let mut points: Vec<Vec<GaussianRational>> = config.points()[..keep].to_vec();
            while points.len() < rb {
                let extra = Configuration::random(&mut rng, m, 1, magnitude).points()[0].clone();
                if !points.contains(&extra) && !config.contains(&extra) {
                    points.push(extra);
                }
            }
            let other = Configuration::new(m, points)?;
            let d = certify_disjoint_simplices(&config, &other, params.p, params.q)?;
            if d.holds {
                None
            } else {
                witness(vec![config, other], "simplices meet outside their common face".into())
            }
        }
    })
}

/// Run `trials` independent random trials in parallel; trial `k` draws from
/// stream `k` of `seed`.
pub fn monte_carlo(
    lemma: Lemma,
    params: &ProblemParams,
    r: usize,
    trials: u64,
    seed: u64,
    magnitude: i64,
) -> Result<TrialSummary, GenposError> {
    if r == 0 {
        return Err(GenposError::Empty);
    }
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(lemma, params, r, seed, t, magnitude))
        .collect::<Result<Vec<_>, _>>()?;
    let failed: Vec<Witness> = outcomes.into_iter().flatten().collect();
    Ok(TrialSummary {
        lemma,
        params: *params,
        r,
        guaranteed: lemma.guaranteed(params, r),
        trials,
        failures: failed.len() as u64,
        witnesses: failed.into_iter().take(MAX_WITNESSES).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    fn line(points: &[(i64, i64)]) -> Configuration {
        Configuration::on_line(points.iter().map(|&(a, b)| g(a, b)).collect()).unwrap()
    }

    fn pp(m: u32, n: u32, p: u32, q: u32) -> ProblemParams {
        ProblemParams::new(m, n, p, q).unwrap()
    }

    #[test]
    fn modular_path_matches_exact_elimination() {
        for k in 0..40 {
            let mut rng = trial_rng(77, k);
            let (m, p, q) = (rng.gen_range(1..=2), rng.gen_range(1..=3), rng.gen_range(0..=1));
            let r = rng.gen_range(1..=p as usize + 3);
            let c = Configuration::random(&mut rng, m, r, 50);
            let exact = DenseMatrix::from_rows(veronese_rows(&c, p, q).unwrap()).rank();
            let s = certify_simplex_span(&c, p, q).unwrap();
            assert_eq!(s.rank, exact, "m={m} p={p} q={q} r={r}");
            if let Some(cert) = s.certificate {
                assert_eq!(cert.modulus, Some(REDUCTION_PRIME));
                assert!(cert.factorization_checked);
            }
            let zero = PQPolynomial::zero(m - 1, p, q);
            let sys = VanishingSystem::build(&c, p, q, &zero).unwrap();
            let params = pp(m as u32, m as u32, p, q);
            assert_eq!(certify_hyperplane_general_position(&c, &params).unwrap(), sys.matrix.rank() == r);
        }
    }

    #[test]
    fn simplex_span_examples() {
        let s = certify_simplex_span(&line(&[(0, 0), (1, 0), (0, 1)]), 2, 0).unwrap();
        assert_eq!((s.rank, s.is_simplex), (3, true));
        let cert = s.certificate.unwrap();
        assert!(cert.factorization_checked && !cert.determinant.is_zero());

        let s = certify_simplex_span(&line(&[(0, 0), (1, 0), (2, 0), (3, 0), (4, 0)]), 3, 0).unwrap();
        assert!(!s.is_simplex && !s.guaranteed);

        let c = Configuration::new(2, vec![vec![g(0, 0), g(0, 0)], vec![g(1, 0), g(0, 0)]]).unwrap();
        assert!(certify_simplex_span(&c, 1, 0).unwrap().is_simplex);
    }

    #[test]
    fn certificate_with_antiholomorphic_part_and_m2() {
        let c = Configuration::new(2, vec![vec![g(1, 0), g(0, 0)], vec![g(1, 0), g(2, 1)], vec![g(0, 0), g(5, 0)]]).unwrap();
        let s = certify_simplex_span(&c, 2, 1).unwrap();
        assert!(s.is_simplex && s.certificate.unwrap().factorization_checked);
    }

    #[test]
    fn duplicates_rejected() {
        assert!(matches!(
            Configuration::on_line(vec![g(1, 0), g(1, 0)]),
            Err(GenposError::DuplicatePoint(0, 1))
        ));
    }

    #[test]
    fn hyperplane_examples() {
        assert!(certify_hyperplane_general_position(&line(&[(1, 0), (2, 0)]), &pp(1, 1, 3, 0)).unwrap());
        // r > p: outcome reported, here dependent
        assert!(!certify_hyperplane_general_position(&line(&[(1, 0), (2, 0)]), &pp(1, 1, 1, 0)).unwrap());
    }

    #[test]
    fn nullity_examples() {
        let params = pp(1, 1, 3, 0);
        let b = default_boundary(1, 1, 3, 0);
        let n = vanishing_nullity(&line(&[(1, 0), (2, 0)]), &params, &b, 0).unwrap();
        assert_eq!((n.rank, n.nullity), (2, Some(1)));

        let params = pp(1, 1, 1, 0);
        let b = default_boundary(1, 1, 1, 0);
        let n = vanishing_nullity(&line(&[(1, 0), (2, 0)]), &params, &b, 0).unwrap();
        assert!(!n.solvable && n.nullity.is_none());

        let params = pp(2, 2, 1, 0);
        let b = default_boundary(2, 2, 1, 0);
        let c = Configuration::new(2, vec![vec![g(3, 1), g(-2, 0)]]).unwrap();
        assert_eq!(vanishing_nullity(&c, &params, &b, 0).unwrap().nullity, Some(0));
    }

    #[test]
    fn fiber_examples() {
        let f = certify_fiber_dimension(&line(&[(1, 0), (2, 0)]), &pp(1, 2, 3, 0), &default_boundary(1, 2, 3, 0)).unwrap();
        assert_eq!((f.total_real_dim, f.matches_bundle_rank), (Some(7), true));
        let c = Configuration::new(2, vec![vec![g(1, 0), g(1, 1)]]).unwrap();
        let f = certify_fiber_dimension(&c, &pp(2, 2, 1, 0), &default_boundary(2, 2, 1, 0)).unwrap();
        assert_eq!((f.total_real_dim, f.matches_bundle_rank), (Some(0), true));
        let f = certify_fiber_dimension(&line(&[(0, 1)]), &pp(1, 1, 2, 0), &default_boundary(1, 1, 2, 0)).unwrap();
        assert_eq!((f.total_real_dim, f.matches_bundle_rank), (Some(4), true));
    }

    #[test]
    fn simplices_examples() {
        let d = certify_disjoint_simplices(&line(&[(0, 0), (1, 0)]), &line(&[(2, 0), (3, 0)]), 4, 0).unwrap();
        assert_eq!(d.intersection, Intersection::Disjoint);
        let d = certify_disjoint_simplices(&line(&[(0, 0), (1, 0)]), &line(&[(1, 0), (2, 0)]), 4, 0).unwrap();
        assert_eq!(d.intersection, Intersection::CommonFace { shared: 1 });
        let a = line(&[(0, 0), (1, 0), (0, 2)]);
        let d = certify_disjoint_simplices(&a, &a, 4, 0).unwrap();
        assert_eq!(d.intersection, Intersection::CommonFace { shared: 3 });
    }

    #[test]
    fn simplices_bad_case_detected() {
        // p = 1: images are the points themselves in C ~ V; segment [0, 2]
        // crosses segment [1 - i, 1 + i] at 1.
        let d = certify_disjoint_simplices(&line(&[(0, 0), (2, 0)]), &line(&[(1, -1), (1, 1)]), 1, 0).unwrap();
        assert_eq!(d.intersection, Intersection::Bad);
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let params = pp(1, 2, 3, 0);
        let a = monte_carlo(Lemma::Fiber, &params, 2, 20, 5, 100).unwrap();
        let b = monte_carlo(Lemma::Fiber, &params, 2, 20, 5, 100).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.failures, 0);
        let s = monte_carlo(Lemma::Simplices, &pp(1, 1, 4, 0), 2, 20, 5, 100).unwrap();
        assert_eq!(s.failures, 0);
    }
}
