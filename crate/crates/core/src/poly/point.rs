use num_complex::Complex64;

use crate::field::Field;
use crate::gaussian::GaussianRational;
use crate::poly::PolyError;

/// Homogeneous coordinates of a point of `CP^m`, exact or floating.
#[derive(Clone, Debug, PartialEq)]
pub enum ProjectivePoint {
    Exact(Vec<GaussianRational>),
    Float { coords: Vec<Complex64>, normalized: bool },
}

/// Result of evaluating a polynomial at a [`ProjectivePoint`].
#[derive(Clone, Debug, PartialEq)]
pub enum ComplexValue {
    Exact(GaussianRational),
    Float(Complex64),
}

impl ComplexValue {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            ComplexValue::Exact(g) => g.to_complex(),
            ComplexValue::Float(z) => *z,
        }
    }
}

impl ProjectivePoint {
    pub fn exact(coords: Vec<GaussianRational>) -> Result<Self, PolyError> {
        if coords.iter().all(GaussianRational::is_zero) {
            return Err(PolyError::ZeroPoint);
        }
        Ok(ProjectivePoint::Exact(coords))
    }

    pub fn float(coords: Vec<Complex64>) -> Result<Self, PolyError> {
        if coords.iter().all(|z| z.norm_sqr() == 0.0) {
            return Err(PolyError::ZeroPoint);
        }
        Ok(ProjectivePoint::Float { coords, normalized: false })
    }

    /// Point `(x_0, ..., x_{m-1}, 1)` of the affine chart `z_m = 1`.
    pub fn from_chart(chart: &[GaussianRational]) -> Self {
        let mut coords = chart.to_vec();
        coords.push(GaussianRational::one());
        ProjectivePoint::Exact(coords)
    }

    pub fn dim(&self) -> usize {
        self.len() - 1
    }

    pub fn len(&self) -> usize {
        match self {
            ProjectivePoint::Exact(c) => c.len(),
            ProjectivePoint::Float { coords, .. } => coords.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_float(&self) -> Vec<Complex64> {
        match self {
            ProjectivePoint::Exact(c) => c.iter().map(GaussianRational::to_complex).collect(),
            ProjectivePoint::Float { coords, .. } => coords.clone(),
        }
    }

    /// Unit-norm floating representative.
    pub fn normalized(&self) -> Self {
        let coords = self.to_float();
        let norm = coords.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        ProjectivePoint::Float { coords: coords.iter().map(|z| z / norm).collect(), normalized: true }
    }

    pub fn is_normalized(&self) -> bool {
        matches!(self, ProjectivePoint::Float { normalized: true, .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_vector_rejected() {
        assert_eq!(ProjectivePoint::exact(vec![GaussianRational::zero(); 3]), Err(PolyError::ZeroPoint));
        assert!(ProjectivePoint::float(vec![Complex64::new(0.0, 0.0)]).is_err());
    }

    #[test]
    fn normalization() {
        let p = ProjectivePoint::exact(vec![GaussianRational::from_ints(3, 0), GaussianRational::from_ints(0, 4)]).unwrap();
        let n = p.normalized();
        assert!(n.is_normalized());
        let c = n.to_float();
        assert!((c[0].re - 0.6).abs() < 1e-15 && (c[1].im - 0.8).abs() < 1e-15);
        assert_eq!(p.dim(), 1);
    }
}
