//! Serde adapters writing rationals as `{"num": "...", "den": "..."}` with
//! decimal-string components.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
struct Repr {
    num: String,
    den: String,
}

fn to_repr(q: &BigRational) -> Repr {
    Repr { num: q.numer().to_string(), den: q.denom().to_string() }
}

fn from_repr<E: serde::de::Error>(r: Repr) -> Result<BigRational, E> {
    let num: BigInt = r.num.parse().map_err(|_| E::custom(format!("bad numerator {:?}", r.num)))?;
    let den: BigInt = r.den.parse().map_err(|_| E::custom(format!("bad denominator {:?}", r.den)))?;
    if den.is_zero() || den.is_negative() {
        return Err(E::custom("denominator must be positive"));
    }
    let q = BigRational::new(num.clone(), den.clone());
    if q.numer() != &num || q.denom() != &den {
        return Err(E::custom("rational is not in lowest terms"));
    }
    Ok(q)
}

pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    to_repr(q).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
    from_repr(Repr::deserialize(d)?)
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_repr).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<Repr>::deserialize(d)?.into_iter().map(from_repr).collect()
    }
}

pub mod matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|row| row.iter().map(to_repr).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigRational>>, D::Error> {
        Vec::<Vec<Repr>>::deserialize(d)?
            .into_iter()
            .map(|row| row.into_iter().map(from_repr).collect())
            .collect()
    }
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        q.as_ref().map(to_repr).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<Repr>::deserialize(d)?.map(from_repr).transpose()
    }
}

/// Rational from an integer.
pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Rational a/b.
pub fn frac(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Display as `n` or `n/d`.
pub fn display(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
