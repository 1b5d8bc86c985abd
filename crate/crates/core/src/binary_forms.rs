//! Univariate polynomials and binary forms over `Q(i)`: exact gcd and
//! Sylvester resultant, plus floating root finding for witnesses.

use num_complex::Complex64;

use crate::field::Field;
use crate::gaussian::GaussianRational;
use crate::linalg::DenseMatrix;

/// Coefficients from the constant term up; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(Vec<GaussianRational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(GaussianRational::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn leading(&self) -> &GaussianRational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv();
        UPoly(self.0.iter().map(|c| c.mul(&inv)).collect())
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        let d = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.leading().inv();
        let mut r = self.0.clone();
        while r.len() > d {
            let top = r.len() - 1;
            let c = r[top].mul(&lead_inv);
            if !c.is_zero() {
                for (k, dc) in divisor.0.iter().enumerate() {
                    let idx = top - d + k;
                    r[idx] = r[idx].sub(&c.mul(dc));
                }
            }
            r.pop();
        }
        UPoly::new(r)
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn evaluate(&self, x: &GaussianRational) -> GaussianRational {
        self.0.iter().rev().fold(GaussianRational::zero(), |acc, c| acc.mul(x).add(c))
    }

    pub fn to_float(&self) -> Vec<Complex64> {
        self.0.iter().map(GaussianRational::to_complex).collect()
    }
}

/// All complex roots of a polynomial given by floating coefficients (constant
/// term first), by simultaneous Weierstrass iteration followed by Newton
/// polishing.
pub fn roots_float(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = c[deg];
    let monic: Vec<Complex64> = c.iter().map(|z| z / lead).collect();
    let eval = |x: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * x + a);
    let radius = 1.0 + monic[..deg].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32) * radius.min(4.0) * 0.5).collect();
    for _ in 0..1000 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                z[i] += Complex64::new(1e-6, 1e-6);
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    let deriv: Vec<Complex64> = monic.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect();
    let eval_d = |x: Complex64| deriv.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * x + a);
    for root in &mut z {
        for _ in 0..20 {
            let d = eval_d(*root);
            if d.norm() == 0.0 {
                break;
            }
            let step = eval(*root) / d;
            *root -= step;
            if step.norm() < 1e-17 * (1.0 + root.norm()) {
                break;
            }
        }
    }
    z
}

/// Coefficients of a binary form of degree `d`: entry `k` multiplies
/// `z0^(d-k) z1^k`.
pub type BinaryForm = Vec<GaussianRational>;

/// Sylvester resultant of two binary forms of degrees `len - 1`. It
/// vanishes exactly when the forms have a common zero on `CP^1` (including
/// when both leading coefficients vanish).
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> GaussianRational {
    let (df, dg) = (f.len() - 1, g.len() - 1);
    let size = df + dg;
    if size == 0 {
        return GaussianRational::one();
    }
    let mut s = DenseMatrix::zeros(size, size);
    for row in 0..dg {
        for (k, c) in f.iter().enumerate() {
            s[(row, row + k)] = c.clone();
        }
    }
    for row in 0..df {
        for (k, c) in g.iter().enumerate() {
            s[(dg + row, row + k)] = c.clone();
        }
    }
    s.determinant()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    fn from_roots(roots: &[GaussianRational]) -> UPoly {
        let mut c = vec![GaussianRational::one()];
        for r in roots {
            let mut next = vec![GaussianRational::zero(); c.len() + 1];
            for (k, a) in c.iter().enumerate() {
                next[k + 1] = next[k + 1].add(a);
                next[k] = next[k].sub(&a.mul(r));
            }
            c = next;
        }
        UPoly::new(c)
    }

    #[test]
    fn gcd_recovers_common_roots() {
        let a = from_roots(&[g(1, 0), g(2, 1), g(-3, 0)]);
        let b = from_roots(&[g(2, 1), g(5, 0)]).monic();
        let d = a.gcd(&b);
        assert_eq!(d, from_roots(&[g(2, 1)]));
        assert_eq!(from_roots(&[g(1, 0)]).gcd(&from_roots(&[g(2, 0)])).degree(), Some(0));
    }

    #[test]
    fn resultant_detects_common_zero() {
        // (z0 - z1) z0 and (z0 - z1) z1
        let f = vec![g(1, 0), g(-1, 0), g(0, 0)];
        let h = vec![g(0, 0), g(1, 0), g(-1, 0)];
        assert!(resultant(&f, &h).is_zero());
        // z0^2 and z1^2
        let f = vec![g(1, 0), g(0, 0), g(0, 0)];
        let h = vec![g(0, 0), g(0, 0), g(1, 0)];
        assert!(!resultant(&f, &h).is_zero());
        // both vanish at [1:0]
        let f = vec![g(0, 0), g(1, 0)];
        let h = vec![g(0, 0), g(3, 2)];
        assert!(resultant(&f, &h).is_zero());
    }

    #[test]
    fn float_roots() {
        let p = from_roots(&[g(1, 0), g(0, 2), g(-3, 1), g(1, 1)]);
        let roots = roots_float(&p.to_float());
        assert_eq!(roots.len(), 4);
        for e in [Complex64::new(-3.0, 1.0), Complex64::new(0.0, 2.0), Complex64::new(1.0, 0.0), Complex64::new(1.0, 1.0)] {
            assert!(roots.iter().any(|r| (r - e).norm() < 1e-9), "{e} missing from {roots:?}");
        }
    }
}
