//! Serde adapters: complex numbers travel as `[re, im]` pairs.

use num_complex::Complex;
use serde::de::Deserializer;
use serde::ser::{SerializeSeq, Serializer};
use serde::Deserialize;

use crate::scalar::Scalar;

pub mod complex {
    use super::*;
    use serde::Serialize;

    pub fn serialize<S: Serializer, T: Scalar>(c: &Complex<T>, s: S) -> Result<S::Ok, S::Error> {
        [c.re, c.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, T: Scalar>(d: D) -> Result<Complex<T>, D::Error> {
        let [re, im] = <[T; 2]>::deserialize(d)?;
        Ok(Complex::new(re, im))
    }
}

pub mod complex_vec {
    use super::*;

    pub fn serialize<S: Serializer, T: Scalar>(v: &[Complex<T>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for c in v {
            seq.serialize_element(&[c.re, c.im])?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>, T: Scalar>(
        d: D,
    ) -> Result<Vec<Complex<T>>, D::Error> {
        let raw = Vec::<[T; 2]>::deserialize(d)?;
        Ok(raw.into_iter().map(|[re, im]| Complex::new(re, im)).collect())
    }
}
