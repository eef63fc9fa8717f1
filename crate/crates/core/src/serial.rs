//! Serialization helpers shared by every report type.
//!
//! * Exact rationals travel as `{"num": "<decimal>", "den": "<decimal>"}`.
//! * Floats are written with 17 significant digits in exponent form
//!   (`1.4142135623730951e0`), which round-trips every `f64` bit-exactly.
//!   Non-finite values are written as the strings `"inf"`, `"-inf"`, `"nan"`.
//! * CSV output is UTF-8 with LF line endings and a header row.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational with a lossless JSON form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(pub BigRational);

impl From<BigRational> for ExactRational {
    fn from(q: BigRational) -> Self {
        Self(q)
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalRepr {
            num: self.0.numer().to_string(),
            den: self.0.denom().to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RationalRepr::deserialize(d)?;
        let num = BigInt::from_str(&r.num).map_err(D::Error::custom)?;
        let den = BigInt::from_str(&r.den).map_err(D::Error::custom)?;
        if den == BigInt::from(0) {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Self(BigRational::new(num, den)))
    }
}

/// Canonical 17-significant-digit text of a float.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

fn parse_special(s: &str) -> Option<f64> {
    match s {
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        "nan" => Some(f64::NAN),
        _ => None,
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FloatRepr {
    Num(f64),
    Text(String),
}

impl FloatRepr {
    fn into_f64<E: serde::de::Error>(self) -> Result<f64, E> {
        match self {
            FloatRepr::Num(x) => Ok(x),
            FloatRepr::Text(s) => {
                parse_special(&s).ok_or_else(|| E::custom(format!("not a float: {s}")))
            }
        }
    }
}

fn raw(x: f64) -> Box<serde_json::value::RawValue> {
    let text = if x.is_finite() { fmt_f64(x) } else { format!("\"{}\"", fmt_f64(x)) };
    serde_json::value::RawValue::from_string(text).expect("formatted float is valid JSON")
}

/// `#[serde(with = "f17")]` for `f64` fields.
pub mod f17 {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        raw(*x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        FloatRepr::deserialize(d)?.into_f64()
    }
}

/// `#[serde(with = "f17_vec")]` for `Vec<f64>` fields.
pub mod f17_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(|&x| raw(x)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        Vec::<FloatRepr>::deserialize(d)?
            .into_iter()
            .map(FloatRepr::into_f64)
            .collect()
    }
}

/// `#[serde(with = "f17_opt")]` for `Option<f64>` fields.
pub mod f17_opt {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        x.map(raw).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Option::<FloatRepr>::deserialize(d)?
            .map(FloatRepr::into_f64)
            .transpose()
    }
}

/// `#[serde(with = "c17")]` for `Complex64` fields, written as `[re, im]`.
pub mod c17 {
    use super::*;
    use num_complex::Complex64;

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [raw(z.re), raw(z.im)].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[FloatRepr; 2]>::deserialize(d)?;
        Ok(Complex64::new(re.into_f64()?, im.into_f64()?))
    }
}

/// `#[serde(with = "c17_vec")]` for `Vec<Complex64>` fields.
pub mod c17_vec {
    use super::*;
    use num_complex::Complex64;

    pub fn serialize<S: Serializer>(zs: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        zs.iter().map(|z| [raw(z.re), raw(z.im)]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        Vec::<[FloatRepr; 2]>::deserialize(d)?
            .into_iter()
            .map(|[re, im]| Ok(Complex64::new(re.into_f64()?, im.into_f64()?)))
            .collect()
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize infallibly");
    s.push('\n');
    s
}

/// Minimal CSV builder: header row, comma separated, LF terminated.
#[derive(Debug, Clone)]
pub struct CsvTable {
    out: String,
    columns: usize,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        let mut out = header.join(",");
        out.push('\n');
        Self { out, columns: header.len() }
    }

    pub fn row(&mut self, fields: &[String]) {
        assert_eq!(fields.len(), self.columns, "CSV row width mismatch");
        self.out.push_str(&fields.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}
