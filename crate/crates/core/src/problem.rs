//! JSON problem files.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "vectors": ["1,0", "0,1", [1, 1]],
//!   "expression": "1/(z1*z2*(z1+z2))",
//!   "options": { "delta_witness": "2,1" }
//! }
//! ```
//!
//! `expression` is either text (see [`crate::expr`]) or a list of terms
//! `{"numerator": [[[e1, e2], "c"], ...], "denominator": [[input, exp], ...]}`
//! whose denominator indices refer to `vectors` (0-based).

use crate::arrangement::Arrangement;
use crate::element::RationalElement;
use crate::error::{Error, Result};
use crate::expr::parse_element;
use crate::linalg::{format_vector, parse_q, parse_vector};
use crate::poly::Polynomial;
use crate::Q;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VectorSpec {
    Text(String),
    List(Vec<Scalar>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermSpec {
    /// `(exponent vector, coefficient)` pairs.
    pub numerator: Vec<(Vec<u32>, Scalar)>,
    #[serde(default)]
    pub denominator: Vec<(usize, u32)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExpressionSpec {
    Text(String),
    Terms(Vec<TermSpec>),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_witness: Option<VectorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta0_witness: Option<VectorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_witness: Option<VectorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<VectorSpec>,
    /// Input indices spanning the wall.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall: Option<Vec<usize>>,
    /// Sign of the exponential for the residue of `exp(sign <h,z>) phi`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exp_sign: Option<i32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub vectors: Vec<VectorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expression: Option<ExpressionSpec>,
    #[serde(default)]
    pub options: Options,
}

pub fn scalar(s: &Scalar) -> Result<Q> {
    match s {
        Scalar::Int(n) => Ok(Q::from_integer((*n).into())),
        Scalar::Text(t) => parse_q(t),
    }
}

pub fn vector(v: &VectorSpec) -> Result<Vec<Q>> {
    match v {
        VectorSpec::Text(t) => parse_vector(t),
        VectorSpec::List(xs) => xs.iter().map(scalar).collect(),
    }
}

pub fn vector_spec(v: &[Q]) -> VectorSpec {
    VectorSpec::Text(format_vector(v).trim_start_matches('(').trim_end_matches(')').to_string())
}

impl ProblemFile {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("problem file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Parsed vectors; the arrangement itself may still fail to span.
    pub fn vectors(&self) -> Result<Vec<Vec<Q>>> {
        let vs: Vec<Vec<Q>> = self.vectors.iter().map(vector).collect::<Result<_>>()?;
        if let Some(d) = self.dim {
            if let Some(v) = vs.iter().find(|v| v.len() != d) {
                return Err(Error::DimensionMismatch { expected: d, got: v.len() });
            }
        }
        Ok(vs)
    }

    pub fn arrangement(&self) -> Result<Arrangement> {
        let vs = self.vectors()?;
        let dim = self.dim.or_else(|| vs.first().map(|v| v.len())).unwrap_or(0);
        let a = Arrangement::with_dim(dim, vs)?;
        if a.rank() < dim {
            return Err(Error::NotSpanning { rank: a.rank(), dim });
        }
        Ok(a)
    }

    pub fn element(&self, arr: &Arrangement) -> Result<RationalElement> {
        match &self.expression {
            None => Err(Error::Parse("problem file has no expression".into())),
            Some(e) => element_from_spec(arr, e),
        }
    }
}

pub fn element_from_spec(arr: &Arrangement, e: &ExpressionSpec) -> Result<RationalElement> {
    let r = arr.dim();
    match e {
        ExpressionSpec::Text(t) => parse_element(arr, t),
        ExpressionSpec::Terms(ts) => {
            let mut out = RationalElement::zero(r);
            for t in ts {
                let mut num = Polynomial::zero(r);
                for (exps, c) in &t.numerator {
                    if exps.len() != r {
                        return Err(Error::DimensionMismatch { expected: r, got: exps.len() });
                    }
                    num.add_term(exps, scalar(c)?);
                }
                out = out.add(&RationalElement::from_inputs(arr, num, &t.denominator)?);
            }
            Ok(out.collect())
        }
    }
}

/// Term-list form of an element, with denominators on each line's representative input.
pub fn element_spec(arr: &Arrangement, f: &RationalElement) -> ExpressionSpec {
    let mut out = Vec::new();
    for t in f.terms() {
        let mut num = t.numerator.clone();
        let mut den = Vec::new();
        for (&i, &e) in &t.denominator {
            num = num.scale(&num_traits::pow(arr.representative_scalar(i), e as usize));
            den.push((arr.representative(i), e));
        }
        let numerator = num.terms().map(|(e, c)| (e.clone(), Scalar::Text(c.to_string()))).collect();
        out.push(TermSpec { numerator, denominator: den });
    }
    ExpressionSpec::Terms(out)
}
