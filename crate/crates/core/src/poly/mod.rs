//! Bihomogeneous `(p, q)`-polynomials in `z_0..z_m` and their conjugates,
//! tuples of them defining maps `CP^m -> CP^n`, and the Veronese-type
//! embedding of the affine chart `z_m = 1`.

mod json;
mod monomial;
mod point;
mod tuple;

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use thiserror::Error;

use crate::field::Field;
use crate::gaussian::GaussianRational;

pub use json::{PolyJson, TermJson, TupleJson};
pub use monomial::{
    boundary_monomial_count, chart_monomials, exponent_vectors, homogeneous_monomials, monomial_count, PQMonomial,
};
pub use point::{ComplexValue, ProjectivePoint};
pub use tuple::MapTuple;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("monomial mismatch: {0}")]
    MonomialMismatch(String),
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("count exceeds the platform integer range")]
    Overflow,
    #[error("boundary mismatch in component {0}: restriction to z_m = 0 differs from the boundary polynomial")]
    BoundaryMismatch(usize),
    #[error("expected {expected} components, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("incompatible bidegree: {0}")]
    IncompatibleBidegree(String),
    #[error("the hyperplane z_m = 0 needs m >= 1")]
    NoHyperplane,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Exact `(p, q)`-polynomial on `CP^m`, i.e. in the `m + 1` homogeneous
/// variables `z_0..z_m`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PQPolynomial {
    m: usize,
    p: u32,
    q: u32,
    terms: BTreeMap<PQMonomial, GaussianRational>,
}

impl PQPolynomial {
    pub fn zero(m: usize, p: u32, q: u32) -> Self {
        PQPolynomial { m, p, q, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        m: usize,
        p: u32,
        q: u32,
        terms: impl IntoIterator<Item = (PQMonomial, GaussianRational)>,
    ) -> Result<Self, PolyError> {
        let mut poly = Self::zero(m, p, q);
        for (mono, c) in terms {
            mono.check(m + 1, p, q)?;
            poly.add_term(mono, c);
        }
        Ok(poly)
    }

    /// Polynomial with coefficient vector `coeffs` against
    /// `homogeneous_monomials(m + 1, p, q)`.
    pub fn from_coefficients(m: usize, p: u32, q: u32, coeffs: &[GaussianRational]) -> Result<Self, PolyError> {
        let monos = homogeneous_monomials(m + 1, p, q);
        if monos.len() != coeffs.len() {
            return Err(PolyError::DimensionMismatch { expected: monos.len(), got: coeffs.len() });
        }
        Self::from_terms(m, p, q, monos.into_iter().zip(coeffs.iter().cloned()))
    }

    /// `z_var` raised to `(a, b)` holomorphic/antiholomorphic powers.
    pub fn variable_power(m: usize, var: usize, a: u32, b: u32) -> Self {
        let mut alpha = vec![0; m + 1];
        let mut beta = vec![0; m + 1];
        alpha[var] = a;
        beta[var] = b;
        let mut poly = Self::zero(m, a, b);
        poly.add_term(PQMonomial::new(alpha, beta), GaussianRational::one());
        poly
    }

    /// The norm form `z_0 conj(z_0) + ... + z_m conj(z_m)`, a `(1, 1)`-polynomial.
    pub fn norm_form(m: usize) -> Self {
        let mut poly = Self::zero(m, 1, 1);
        for i in 0..=m {
            let mut e = vec![0; m + 1];
            e[i] = 1;
            poly.add_term(PQMonomial::new(e.clone(), e), GaussianRational::one());
        }
        poly
    }

    fn add_term(&mut self, mono: PQMonomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn nvars(&self) -> usize {
        self.m + 1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PQMonomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &PQMonomial) -> GaussianRational {
        self.terms.get(mono).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Dense coefficient vector in the documented monomial order.
    pub fn coefficients(&self) -> Vec<GaussianRational> {
        homogeneous_monomials(self.m + 1, self.p, self.q).iter().map(|mono| self.coefficient(mono)).collect()
    }

    fn same_shape(&self, other: &Self) -> Result<(), PolyError> {
        if self.m != other.m || self.p != other.p || self.q != other.q {
            return Err(PolyError::IncompatibleBidegree(format!(
                "(m={}, p={}, q={}) vs (m={}, p={}, q={})",
                self.m, self.p, self.q, other.m, other.p, other.q
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.scale(&GaussianRational::from_ints(-1, 0)))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.m, self.p, self.q);
        for (mono, v) in &self.terms {
            out.add_term(mono.clone(), v.mul(c));
        }
        out
    }

    /// Product; bidegrees add.
    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.m != other.m {
            return Err(PolyError::IncompatibleBidegree(format!("m={} vs m={}", self.m, other.m)));
        }
        let mut out = Self::zero(self.m, self.p + other.p, self.q + other.q);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x.mul(y));
            }
        }
        Ok(out)
    }

    /// Exact evaluation: `sum coeff * z^alpha * conj(z)^beta`.
    pub fn evaluate_exact(&self, z: &[GaussianRational]) -> Result<GaussianRational, PolyError> {
        if z.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch { expected: self.nvars(), got: z.len() });
        }
        let conj: Vec<GaussianRational> = z.iter().map(GaussianRational::conj).collect();
        let mut acc = GaussianRational::zero();
        for (mono, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..z.len() {
                if mono.alpha[i] > 0 {
                    t = t.mul(&z[i].pow(mono.alpha[i]));
                }
                if mono.beta[i] > 0 {
                    t = t.mul(&conj[i].pow(mono.beta[i]));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    pub fn evaluate_float(&self, z: &[Complex64]) -> Result<Complex64, PolyError> {
        if z.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch { expected: self.nvars(), got: z.len() });
        }
        Ok(self.evaluate_float_unchecked(z))
    }

    pub(crate) fn evaluate_float_unchecked(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (mono, c) in &self.terms {
            let mut t = c.to_complex();
            for (i, zi) in z.iter().enumerate() {
                if mono.alpha[i] > 0 {
                    t *= zi.powu(mono.alpha[i]);
                }
                if mono.beta[i] > 0 {
                    t *= zi.conj().powu(mono.beta[i]);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn evaluate(&self, point: &ProjectivePoint) -> Result<ComplexValue, PolyError> {
        match point {
            ProjectivePoint::Exact(z) => self.evaluate_exact(z).map(ComplexValue::Exact),
            ProjectivePoint::Float { coords, .. } => self.evaluate_float(coords).map(ComplexValue::Float),
        }
    }

    /// Multiply by the norm form: a `(p, q)`-polynomial viewed as a
    /// `(p + 1, q + 1)`-polynomial.
    pub fn stabilize(&self) -> Self {
        self.mul(&Self::norm_form(self.m)).expect("same ambient dimension")
    }

    /// Restriction to the hyperplane `z_m = 0`: drops every monomial that
    /// involves `z_m` or its conjugate. The result lives on `CP^{m-1}`.
    pub fn restrict_to_hyperplane(&self) -> Result<Self, PolyError> {
        if self.m == 0 {
            return Err(PolyError::NoHyperplane);
        }
        let mut out = Self::zero(self.m - 1, self.p, self.q);
        for (mono, c) in &self.terms {
            if !mono.touches_last() {
                out.add_term(mono.drop_last(), c.clone());
            }
        }
        Ok(out)
    }

    /// View a polynomial on `CP^{m-1}` as one on `CP^m` that does not depend
    /// on `z_m`.
    pub fn extend_constantly(&self) -> Self {
        let mut out = Self::zero(self.m + 1, self.p, self.q);
        for (mono, c) in &self.terms {
            out.add_term(mono.push_zero(), c.clone());
        }
        out
    }

    /// Dehomogenized coefficients at `z_m = 1`, keyed by chart monomials.
    pub fn chart_terms(&self) -> impl Iterator<Item = (PQMonomial, &GaussianRational)> {
        self.terms.iter().map(|(mono, c)| (mono.drop_last(), c))
    }

    /// Complex conjugate polynomial: a `(q, p)`-polynomial.
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero(self.m, self.q, self.p);
        for (mono, c) in &self.terms {
            out.add_term(PQMonomial::new(mono.beta.clone(), mono.alpha.clone()), c.conj());
        }
        out
    }
}

/// Degree of the map defined by `(p, q)`-polynomials: `p - q`.
pub fn degree_of_map(p: u32, q: u32) -> i64 {
    p as i64 - q as i64
}

/// Values of all chart monomials (see [`chart_monomials`]) at a point of
/// the affine chart `z_m = 1`, given by its first `m` coordinates.
pub fn veronese(m: usize, p: u32, q: u32, point: &[GaussianRational]) -> Result<Vec<GaussianRational>, PolyError> {
    if point.len() != m {
        return Err(PolyError::DimensionMismatch { expected: m, got: point.len() });
    }
    // every entry is z^alpha * conj(z^beta); memoize the holomorphic powers
    let mut holo: HashMap<Vec<u32>, GaussianRational> = HashMap::new();
    holo.insert(vec![0; m], GaussianRational::one());
    let mut power = |e: &[u32]| holo_power(&mut holo, point, e);
    Ok(chart_monomials(m, p, q)
        .iter()
        .map(|mono| {
            let a = power(&mono.alpha);
            if mono.beta.iter().all(|&b| b == 0) {
                return a;
            }
            a.mul(&power(&mono.beta).conj())
        })
        .collect())
}

pub(crate) fn holo_power(cache: &mut HashMap<Vec<u32>, GaussianRational>, point: &[GaussianRational], e: &[u32]) -> GaussianRational {
    if let Some(v) = cache.get(e) {
        return v.clone();
    }
    let i = e.iter().position(|&k| k > 0).expect("zero exponent is cached");
    let mut lower = e.to_vec();
    lower[i] -= 1;
    let v = holo_power(cache, point, &lower).mul(&point[i]);
    cache.insert(e.to_vec(), v.clone());
    v
}

/// Floating-point Veronese vector, same order as [`veronese`].
pub fn veronese_float(m: usize, p: u32, q: u32, point: &[Complex64]) -> Vec<Complex64> {
    chart_monomials(m, p, q)
        .iter()
        .map(|mono| {
            let mut t = Complex64::new(1.0, 0.0);
            for (i, z) in point.iter().enumerate().take(m) {
                t *= z.powu(mono.alpha[i]) * z.conj().powu(mono.beta[i]);
            }
            t
        })
        .collect()
}
