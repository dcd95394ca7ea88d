//! Serialisers writing rationals as `"num/den"` strings, for use with
//! `#[serde(serialize_with = ...)]`.

use serde::ser::{SerializeMap, SerializeSeq};
use serde::Serializer;

use super::field::{format_rational, Rational};
use super::gaussian::GaussianRational;
use super::poly::Poly;

pub fn rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

pub fn option<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => rational(q, s),
        None => s.serialize_none(),
    }
}

pub fn seq<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let mut out = s.serialize_seq(Some(v.len()))?;
    for q in v {
        out.serialize_element(&format_rational(q))?;
    }
    out.end()
}

pub fn matrix<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(format_rational).collect()).collect();
    s.collect_seq(rows)
}

/// Coefficients in increasing degree.
pub fn poly<S: Serializer>(p: &Poly<Rational>, s: S) -> Result<S::Ok, S::Error> {
    seq(p.coeffs(), s)
}

pub fn option_poly<S: Serializer>(p: &Option<Poly<Rational>>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some(p) => poly(p, s),
        None => s.serialize_none(),
    }
}

/// `[re, im]` as two rational strings.
pub fn gaussian<S: Serializer>(z: &GaussianRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq([format_rational(&z.re), format_rational(&z.im)])
}

pub fn map_values<S: Serializer, K: serde::Serialize>(m: &std::collections::BTreeMap<K, Rational>, s: S) -> Result<S::Ok, S::Error> {
    let mut out = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        out.serialize_entry(k, &format_rational(v))?;
    }
    out.end()
}
