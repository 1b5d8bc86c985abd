use num_complex::Complex64;

use crate::gaussian::GaussianRational;
use crate::poly::{PQPolynomial, PolyError};

/// `n + 1` polynomials of a common bidegree `(p, q)` on `CP^m`, together
/// with the fixed boundary data `f` on the hyperplane `z_m = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapTuple {
    m: usize,
    n: usize,
    p: u32,
    q: u32,
    components: Vec<PQPolynomial>,
    boundary: Vec<PQPolynomial>,
}

impl MapTuple {
    /// Validates shapes and that every component restricts to its boundary
    /// polynomial.
    pub fn new(components: Vec<PQPolynomial>, boundary: Vec<PQPolynomial>) -> Result<Self, PolyError> {
        let first = components.first().ok_or(PolyError::ComponentCount { expected: 1, got: 0 })?;
        let (m, p, q) = (first.m(), first.p(), first.q());
        if m == 0 {
            return Err(PolyError::NoHyperplane);
        }
        let n = components.len() - 1;
        if boundary.len() != components.len() {
            return Err(PolyError::ComponentCount { expected: components.len(), got: boundary.len() });
        }
        for (i, (c, b)) in components.iter().zip(&boundary).enumerate() {
            if c.m() != m || c.p() != p || c.q() != q {
                return Err(PolyError::IncompatibleBidegree(format!("component {i} does not match component 0")));
            }
            if b.m() + 1 != m || b.p() != p || b.q() != q {
                return Err(PolyError::IncompatibleBidegree(format!("boundary {i} has the wrong shape")));
            }
            if c.restrict_to_hyperplane()? != *b {
                return Err(PolyError::BoundaryMismatch(i));
            }
        }
        Ok(MapTuple { m, n, p, q, components, boundary })
    }

    /// Tuple whose boundary is read off from the components.
    pub fn from_components(components: Vec<PQPolynomial>) -> Result<Self, PolyError> {
        let boundary = components.iter().map(PQPolynomial::restrict_to_hyperplane).collect::<Result<Vec<_>, _>>()?;
        Self::new(components, boundary)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn components(&self) -> &[PQPolynomial] {
        &self.components
    }

    pub fn boundary(&self) -> &[PQPolynomial] {
        &self.boundary
    }

    pub fn degree(&self) -> i64 {
        super::degree_of_map(self.p, self.q)
    }

    /// Multiply every component (and boundary polynomial) by the norm form.
    pub fn stabilize(&self) -> Self {
        MapTuple {
            m: self.m,
            n: self.n,
            p: self.p + 1,
            q: self.q + 1,
            components: self.components.iter().map(PQPolynomial::stabilize).collect(),
            boundary: self.boundary.iter().map(PQPolynomial::stabilize).collect(),
        }
    }

    /// Componentwise restriction to `z_m = 0`.
    pub fn restrict_to_hyperplane(&self) -> Vec<PQPolynomial> {
        self.components.iter().map(|c| c.restrict_to_hyperplane().expect("m >= 1")).collect()
    }

    pub fn evaluate_exact(&self, z: &[GaussianRational]) -> Result<Vec<GaussianRational>, PolyError> {
        self.components.iter().map(|c| c.evaluate_exact(z)).collect()
    }

    pub fn evaluate_float(&self, z: &[Complex64]) -> Result<Vec<Complex64>, PolyError> {
        self.components.iter().map(|c| c.evaluate_float(z)).collect()
    }

    /// Affine combination `sum_k weights[k] * tuples[k]`. The tuples must share
    /// shape; the boundary is combined the same way, so weights summing to
    /// one keep a common boundary fixed.
    pub fn combine(tuples: &[&MapTuple], weights: &[GaussianRational]) -> Result<Self, PolyError> {
        assert_eq!(tuples.len(), weights.len());
        let first = tuples.first().ok_or(PolyError::ComponentCount { expected: 1, got: 0 })?;
        let mut comps: Vec<PQPolynomial> =
            first.components.iter().map(|c| PQPolynomial::zero(c.m(), c.p(), c.q())).collect();
        let mut bnd: Vec<PQPolynomial> =
            first.boundary.iter().map(|c| PQPolynomial::zero(c.m(), c.p(), c.q())).collect();
        for (t, w) in tuples.iter().zip(weights) {
            if t.components.len() != comps.len() {
                return Err(PolyError::ComponentCount { expected: comps.len(), got: t.components.len() });
            }
            for i in 0..comps.len() {
                comps[i] = comps[i].add(&t.components[i].scale(w))?;
                bnd[i] = bnd[i].add(&t.boundary[i].scale(w))?;
            }
        }
        Ok(MapTuple { m: first.m, n: first.n, p: first.p, q: first.q, components: comps, boundary: bnd })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn identity_tuple() -> MapTuple {
        MapTuple::from_components(vec![PQPolynomial::variable_power(1, 0, 1, 0), PQPolynomial::variable_power(1, 1, 1, 0)])
            .unwrap()
    }

    #[test]
    fn stabilization_scales_values() {
        let t = identity_tuple();
        let s = t.stabilize();
        assert_eq!((s.p(), s.q(), s.degree()), (2, 1, 1));
        let x = [GaussianRational::from_ints(2, -1), GaussianRational::from_ints(0, 3)];
        let factor = x[0].norm_sqr() + x[1].norm_sqr();
        let a = t.evaluate_exact(&x).unwrap();
        let b = s.evaluate_exact(&x).unwrap();
        for (u, v) in a.iter().zip(&b) {
            assert_eq!(u.mul(&GaussianRational::real(factor.clone())), *v);
        }
        assert_eq!(s.restrict_to_hyperplane(), s.boundary().to_vec());
    }

    #[test]
    fn boundary_mismatch_rejected() {
        let comps = vec![PQPolynomial::variable_power(1, 0, 1, 0), PQPolynomial::variable_power(1, 1, 1, 0)];
        let wrong = vec![PQPolynomial::zero(0, 1, 0), PQPolynomial::zero(0, 1, 0)];
        assert_eq!(MapTuple::new(comps, wrong), Err(PolyError::BoundaryMismatch(0)));
    }
}
