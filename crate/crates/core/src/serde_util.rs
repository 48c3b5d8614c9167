//! Exact numbers serialize as decimal strings.

use serde::ser::SerializeSeq;
use serde::Serializer;

use crate::exactmath::{ExactInt, ExactRat};

pub fn int<S: Serializer>(v: &ExactInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn rat<S: Serializer>(v: &ExactRat, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn opt_rat<S: Serializer>(v: &Option<ExactRat>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}

pub fn ints<S: Serializer>(v: &[ExactInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub fn opt_int<S: Serializer>(v: &Option<ExactInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}
