//! Canonical JSON encoding of polynomials.
//!
//! ```text
//! {"vars":["x","y","z","w","p","q","t"],"terms":[{"coef":"3/2","exps":[1,0,0,0,0,0,0]}]}
//! ```
//!
//! Terms are written in descending graded-lex order and every coefficient
//! carries an explicit denominator, so encoding is a pure function of the
//! polynomial and decoding followed by encoding reproduces the input bytes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::{Monomial, Polynomial, Var, NVARS};
use crate::error::{ParkError, Result};

#[derive(Serialize, Deserialize)]
struct Doc {
    vars: Vec<String>,
    terms: Vec<Term>,
}

#[derive(Serialize, Deserialize)]
struct Term {
    coef: String,
    exps: Vec<u32>,
}

fn coef_string(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

fn parse_coef(s: &str) -> Result<BigRational> {
    let bad = || ParkError::Parse(format!("bad coefficient `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn to_json(p: &Polynomial) -> String {
    let doc = Doc {
        vars: Var::ALL.iter().map(|v| v.name().to_string()).collect(),
        terms: p
            .terms()
            .rev()
            .map(|(m, c)| Term {
                coef: coef_string(c),
                exps: m.0.to_vec(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("serialising plain structs cannot fail")
}

pub fn from_json(s: &str) -> Result<Polynomial> {
    let doc: Doc = serde_json::from_str(s).map_err(|e| ParkError::Parse(e.to_string()))?;
    let expected: Vec<&str> = Var::ALL.iter().map(|v| v.name()).collect();
    if doc.vars != expected {
        return Err(ParkError::Parse(format!(
            "variable list must be {expected:?}, got {:?}",
            doc.vars
        )));
    }
    let mut p = Polynomial::zero();
    for t in doc.terms {
        let exps: [u32; NVARS] = t
            .exps
            .try_into()
            .map_err(|_| ParkError::Parse(format!("exponent vectors need {NVARS} entries")))?;
        p.add_term(Monomial(exps), parse_coef(&t.coef)?);
    }
    Ok(p)
}
