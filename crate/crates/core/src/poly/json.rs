//! JSON wire format.
//!
//! Polynomial: `{"m":1,"p":2,"q":0,"terms":[{"alpha":[2,0],"beta":[0,0],"re":"1/1","im":"0/1"}]}`.
//! `m` is the projective dimension, so exponent vectors have length `m + 1`.
//! Tuples add `"n"`, `"components"` and `"boundary"`; boundary polynomials
//! live on `CP^{m-1}` and carry their own `m` field (one less).

use serde::{Deserialize, Serialize};

use crate::gaussian::GaussianRational;
use crate::poly::{MapTuple, PQMonomial, PQPolynomial, PolyError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub m: usize,
    pub p: u32,
    pub q: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TupleJson {
    pub m: usize,
    pub n: usize,
    pub p: u32,
    pub q: u32,
    pub components: Vec<PolyJson>,
    pub boundary: Vec<PolyJson>,
}

impl From<&PQPolynomial> for PolyJson {
    fn from(poly: &PQPolynomial) -> Self {
        PolyJson {
            m: poly.m(),
            p: poly.p(),
            q: poly.q(),
            terms: poly
                .terms()
                .map(|(mono, c)| TermJson {
                    alpha: mono.alpha.clone(),
                    beta: mono.beta.clone(),
                    re: c.re_string(),
                    im: c.im_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolyJson> for PQPolynomial {
    type Error = PolyError;

    fn try_from(j: &PolyJson) -> Result<Self, PolyError> {
        let terms = j
            .terms
            .iter()
            .map(|t| {
                let c = GaussianRational::parse(&t.re, &t.im)
                    .ok_or_else(|| PolyError::Parse(format!("bad coefficient `{}` + i`{}`", t.re, t.im)))?;
                Ok((PQMonomial::new(t.alpha.clone(), t.beta.clone()), c))
            })
            .collect::<Result<Vec<_>, PolyError>>()?;
        PQPolynomial::from_terms(j.m, j.p, j.q, terms)
    }
}

impl From<&MapTuple> for TupleJson {
    fn from(t: &MapTuple) -> Self {
        TupleJson {
            m: t.m(),
            n: t.n(),
            p: t.p(),
            q: t.q(),
            components: t.components().iter().map(PolyJson::from).collect(),
            boundary: t.boundary().iter().map(PolyJson::from).collect(),
        }
    }
}

impl TryFrom<&TupleJson> for MapTuple {
    type Error = PolyError;

    fn try_from(j: &TupleJson) -> Result<Self, PolyError> {
        if j.components.len() != j.n + 1 {
            return Err(PolyError::ComponentCount { expected: j.n + 1, got: j.components.len() });
        }
        let comps = j.components.iter().map(PQPolynomial::try_from).collect::<Result<Vec<_>, _>>()?;
        for c in &comps {
            if c.m() != j.m || c.p() != j.p || c.q() != j.q {
                return Err(PolyError::IncompatibleBidegree("component header disagrees with tuple header".into()));
            }
        }
        let boundary = j.boundary.iter().map(PQPolynomial::try_from).collect::<Result<Vec<_>, _>>()?;
        MapTuple::new(comps, boundary)
    }
}

impl Serialize for PQPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PQPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        PQPolynomial::try_from(&j).map_err(serde::de::Error::custom)
    }
}

impl Serialize for MapTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TupleJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MapTuple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = TupleJson::deserialize(d)?;
        MapTuple::try_from(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_example_parses() {
        let src = r#"{"m":1,"p":2,"q":0,"terms":[{"alpha":[2,0],"beta":[0,0],"re":"1/1","im":"0/1"},
                      {"alpha":[1,1],"beta":[0,0],"re":"-1/2","im":"3"}]}"#;
        let p: PQPolynomial = serde_json::from_str(src).unwrap();
        assert_eq!(p.terms().count(), 2);
        let back = serde_json::to_string(&p).unwrap();
        assert!(back.contains(r#""re":"-1/2""#) && back.contains(r#""im":"3/1""#));
    }

    #[test]
    fn malformed_inputs_rejected() {
        let bad_coeff = r#"{"m":1,"p":1,"q":0,"terms":[{"alpha":[1,0],"beta":[0,0],"re":"1/0","im":"0"}]}"#;
        assert!(serde_json::from_str::<PQPolynomial>(bad_coeff).is_err());
        let bad_degree = r#"{"m":1,"p":2,"q":0,"terms":[{"alpha":[1,0],"beta":[0,0],"re":"1","im":"0"}]}"#;
        assert!(serde_json::from_str::<PQPolynomial>(bad_degree).is_err());
    }

    #[test]
    fn tuple_round_trip() {
        let t = MapTuple::from_components(vec![
            PQPolynomial::variable_power(1, 0, 1, 0),
            PQPolynomial::variable_power(1, 1, 1, 0),
        ])
        .unwrap()
        .stabilize();
        let s = serde_json::to_string(&t).unwrap();
        let u: MapTuple = serde_json::from_str(&s).unwrap();
        assert_eq!(t, u);
        assert_eq!(serde_json::to_string(&u).unwrap(), s);
    }
}
