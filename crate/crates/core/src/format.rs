//! JSON representations.
//!
//! Integers are written as JSON numbers while they fit in 53 bits and as
//! decimal strings beyond that; both forms are accepted on input. Rationals
//! are integers or `"p/q"` strings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::error::Result;
use crate::lattice::{IntMatrix, LatticeMap, LatticePoint, QuotientStructure};
use crate::replica::MonomialFunction;
use crate::surface::CompleteFan2D;

const SAFE_BITS: u64 = 53;

/// An arbitrary-precision integer with the JSON encoding described above.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.abs().bits() <= SAFE_BITS {
            s.serialize_i64(i64::try_from(&self.0).expect("fits in 53 bits"))
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = BigInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<BigInt, E> {
        if v.fract() == 0.0 && v.abs() < 2f64.powi(SAFE_BITS as i32) {
            Ok(BigInt::from(v as i64))
        } else {
            Err(E::custom(format!("{v} is not an exact integer")))
        }
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<BigInt, E> {
        BigInt::from_str(v.trim()).map_err(|_| E::custom(format!("invalid integer {v:?}")))
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(IntVisitor).map(JsonInt)
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rank()))?;
        for c in self.coords() {
            seq.serialize_element(&JsonInt(c.clone()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LatticePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<JsonInt> = Vec::deserialize(d)?;
        Ok(LatticePoint::new(v.into_iter().map(|x| x.0).collect()))
    }
}

/// An exact rational: JSON integer, decimal string or `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonRational(pub BigRational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.denom().is_one() {
            JsonInt(self.0.numer().clone()).serialize(s)
        } else {
            s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(JsonInt),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(i) => Ok(JsonRational(BigRational::from_integer(i.0))),
            Raw::Str(s) => parse_rational(&s).map(JsonRational).map_err(de::Error::custom),
        }
    }
}

pub fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let bad = || format!("invalid rational {s:?}");
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(p, q))
        }
        None => BigInt::from_str(s.trim()).map(BigRational::from_integer).map_err(|_| bad()),
    }
}

/// `{"ambient_rank": n, "rays": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSpec {
    pub ambient_rank: usize,
    pub rays: Vec<LatticePoint>,
}

impl ConeSpec {
    /// Normalizes the generators into a [`Cone`].
    pub fn to_cone(&self) -> Result<Cone> {
        Cone::from_generators(self.ambient_rank, &self.rays)
    }

    /// Extremal rays, followed by `±` lineality generators if any.
    pub fn from_cone(cone: &Cone) -> Self {
        ConeSpec { ambient_rank: cone.ambient_rank(), rays: cone.generators() }
    }
}

/// `{"rays": [[a, b], ...]}` in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanSpec {
    pub rays: Vec<LatticePoint>,
}

impl FanSpec {
    pub fn to_fan(&self) -> Result<CompleteFan2D> {
        CompleteFan2D::new(self.rays.clone())
    }

    pub fn from_fan(fan: &CompleteFan2D) -> Self {
        FanSpec { rays: fan.rays().to_vec() }
    }
}

/// Matrix rows.
pub fn matrix_rows(m: &IntMatrix) -> Vec<LatticePoint> {
    (0..m.nrows()).map(|i| m.row(i)).collect()
}

pub fn map_rows(g: &LatticeMap) -> Vec<LatticePoint> {
    matrix_rows(g.matrix())
}

/// `{"m": [...], "coeff": c}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub m: LatticePoint,
    pub coeff: JsonRational,
}

pub fn function_from_terms(terms: &[TermSpec]) -> MonomialFunction {
    MonomialFunction::from_terms(terms.iter().map(|t| (t.m.clone(), t.coeff.0.clone())))
}

pub fn terms_of_function(f: &MonomialFunction) -> Vec<TermSpec> {
    f.terms().map(|(m, c)| TermSpec { m: m.clone(), coeff: JsonRational(c.clone()) }).collect()
}

/// `{"free_rank": r, "invariant_factors": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSpec {
    pub free_rank: usize,
    pub invariant_factors: Vec<JsonInt>,
}

impl From<&QuotientStructure> for QuotientSpec {
    fn from(q: &QuotientStructure) -> Self {
        QuotientSpec {
            free_rank: q.free_rank,
            invariant_factors: q.invariant_factors.iter().cloned().map(JsonInt).collect(),
        }
    }
}
