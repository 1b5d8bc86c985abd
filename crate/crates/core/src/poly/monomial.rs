use std::cmp::Ordering;

use crate::poly::PolyError;

/// Exponent pair `z^alpha * conj(z)^beta`.
///
/// Monomials are ordered by total degree `|alpha| + |beta|` ascending, then
/// by the concatenated exponent vector `(alpha, beta)` lexicographically
/// descending. In two variables this lists `1, z, conj(z), z conj(z)`.
/// Every serialized coefficient list and every Veronese vector follows this
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PQMonomial {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

impl PQMonomial {
    pub fn new(alpha: Vec<u32>, beta: Vec<u32>) -> Self {
        PQMonomial { alpha, beta }
    }

    pub fn constant(nvars: usize) -> Self {
        PQMonomial { alpha: vec![0; nvars], beta: vec![0; nvars] }
    }

    pub fn nvars(&self) -> usize {
        self.alpha.len()
    }

    pub fn holomorphic_degree(&self) -> u32 {
        self.alpha.iter().sum()
    }

    pub fn antiholomorphic_degree(&self) -> u32 {
        self.beta.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        PQMonomial {
            alpha: self.alpha.iter().zip(&other.alpha).map(|(a, b)| a + b).collect(),
            beta: self.beta.iter().zip(&other.beta).map(|(a, b)| a + b).collect(),
        }
    }

    /// Does the monomial involve the last variable or its conjugate?
    pub fn touches_last(&self) -> bool {
        self.alpha.last().copied().unwrap_or(0) + self.beta.last().copied().unwrap_or(0) > 0
    }

    /// Drop the last variable (callers make sure its exponents are zero or
    /// intend dehomogenization at `z_last = 1`).
    pub fn drop_last(&self) -> Self {
        let k = self.nvars().saturating_sub(1);
        PQMonomial { alpha: self.alpha[..k].to_vec(), beta: self.beta[..k].to_vec() }
    }

    /// Append a variable with zero exponents.
    pub fn push_zero(&self) -> Self {
        let mut m = self.clone();
        m.alpha.push(0);
        m.beta.push(0);
        m
    }

    /// Homogenize a chart monomial to bidegree `(p, q)` by giving the
    /// missing degree to a new last variable.
    pub fn homogenize(&self, p: u32, q: u32) -> Self {
        let mut m = self.clone();
        m.alpha.push(p - self.holomorphic_degree());
        m.beta.push(q - self.antiholomorphic_degree());
        m
    }

    pub fn check(&self, nvars: usize, p: u32, q: u32) -> Result<(), PolyError> {
        if self.alpha.len() != nvars || self.beta.len() != nvars {
            return Err(PolyError::MonomialMismatch(format!(
                "monomial has {} / {} exponents, expected {nvars}",
                self.alpha.len(),
                self.beta.len()
            )));
        }
        if self.holomorphic_degree() != p || self.antiholomorphic_degree() != q {
            return Err(PolyError::MonomialMismatch(format!(
                "monomial has bidegree ({}, {}), expected ({p}, {q})",
                self.holomorphic_degree(),
                self.antiholomorphic_degree()
            )));
        }
        Ok(())
    }
}

impl Ord for PQMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let d1 = self.holomorphic_degree() + self.antiholomorphic_degree();
        let d2 = other.holomorphic_degree() + other.antiholomorphic_degree();
        d1.cmp(&d2)
            .then_with(|| other.alpha.cmp(&self.alpha))
            .then_with(|| other.beta.cmp(&self.beta))
    }
}

impl PartialOrd for PQMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of length `nvars` with entry sum exactly `degree`.
pub fn exponent_vectors(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=degree).rev() {
            prefix.push(e);
            rec(nvars, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, degree, &mut Vec::new(), &mut out);
    out
}

/// All `(p, q)`-monomials in `nvars` homogeneous variables, sorted.
pub fn homogeneous_monomials(nvars: usize, p: u32, q: u32) -> Vec<PQMonomial> {
    let alphas = exponent_vectors(nvars, p);
    let betas = exponent_vectors(nvars, q);
    let mut out: Vec<PQMonomial> = alphas
        .iter()
        .flat_map(|a| betas.iter().map(move |b| PQMonomial::new(a.clone(), b.clone())))
        .collect();
    out.sort();
    out
}

/// All monomials in `nvars` affine variables with holomorphic degree at most
/// `p` and antiholomorphic degree at most `q`, sorted. These index the
/// coordinates of the Veronese-type embedding.
pub fn chart_monomials(nvars: usize, p: u32, q: u32) -> Vec<PQMonomial> {
    let mut out = Vec::new();
    for dp in 0..=p {
        for dq in 0..=q {
            for a in exponent_vectors(nvars, dp) {
                for b in exponent_vectors(nvars, dq) {
                    out.push(PQMonomial::new(a.clone(), b));
                }
            }
        }
    }
    out.sort();
    out
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    u64::try_from(acc).ok()
}

/// `C(p+m, m) * C(q+m, m)`: the dimension of the space of chart monomials in
/// `m` variables of degree at most `p` (resp. `q`), which is also the number
/// of `(p, q)`-monomials in `m + 1` homogeneous variables.
pub fn monomial_count(m: u32, p: u32, q: u32) -> Result<u64, PolyError> {
    let a = binomial(p as u64 + m as u64, m as u64).ok_or(PolyError::Overflow)?;
    let b = binomial(q as u64 + m as u64, m as u64).ok_or(PolyError::Overflow)?;
    a.checked_mul(b).ok_or(PolyError::Overflow)
}

/// Number of `(p, q)`-monomials in `m + 1` variables that do not involve
/// `z_m` or its conjugate (the ones fixed by the boundary data).
pub fn boundary_monomial_count(m: u32, p: u32, q: u32) -> Result<u64, PolyError> {
    if m == 0 {
        return Ok(0);
    }
    monomial_count(m - 1, p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_order() {
        let ms = chart_monomials(1, 1, 1);
        let shown: Vec<(Vec<u32>, Vec<u32>)> = ms.iter().map(|m| (m.alpha.clone(), m.beta.clone())).collect();
        assert_eq!(shown, vec![(vec![0], vec![0]), (vec![1], vec![0]), (vec![0], vec![1]), (vec![1], vec![1])]);
        let ms = chart_monomials(1, 2, 0);
        assert_eq!(ms.iter().map(|m| m.alpha[0]).collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn counts_match_enumeration() {
        for m in 1..4u32 {
            for p in 0..4u32 {
                for q in 0..3u32 {
                    let c = monomial_count(m, p, q).unwrap() as usize;
                    assert_eq!(chart_monomials(m as usize, p, q).len(), c);
                    assert_eq!(homogeneous_monomials(m as usize + 1, p, q).len(), c);
                }
            }
        }
        assert_eq!(monomial_count(1, 1, 0).unwrap(), 2);
        assert_eq!(monomial_count(2, 1, 1).unwrap(), 9);
        assert_eq!(monomial_count(1, 2, 1).unwrap(), 6);
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(monomial_count(60, 60, 60), Err(PolyError::Overflow)));
    }

    #[test]
    fn homogenize_round_trip() {
        for mono in chart_monomials(2, 2, 1) {
            let h = mono.homogenize(2, 1);
            h.check(3, 2, 1).unwrap();
            assert_eq!(h.drop_last(), mono);
        }
    }
}
