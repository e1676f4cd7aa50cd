//! Serializes rationals as `{"num": "<int>", "den": "<int>"}` so no precision is lost.

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::Serializer;

use crate::Rational;

pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Rational", 2)?;
    st.serialize_field("num", &x.numer().to_string())?;
    st.serialize_field("den", &x.denom().to_string())?;
    st.end()
}

/// Newtype that serializes through [`serialize`].
pub struct AsRecord<'a>(pub &'a Rational);

impl serde::Serialize for AsRecord<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize(self.0, s)
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&AsRecord(x))?;
        }
        seq.end()
    }
}
