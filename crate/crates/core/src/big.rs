//! JSON form of big orders: a number when it fits in `u128`, else a string.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::ser::SerializeSeq;
use serde::Serializer;

pub fn ser<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u128() {
        Some(x) => s.serialize_u128(x),
        None => s.serialize_str(&v.to_string()),
    }
}

pub fn ser_vec<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    struct One<'a>(&'a BigUint);
    impl serde::Serialize for One<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            ser(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&One(x))?;
    }
    seq.end()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Serialize;

    #[derive(Serialize)]
    struct T {
        #[serde(serialize_with = "ser")]
        a: BigUint,
        #[serde(serialize_with = "ser")]
        b: BigUint,
    }

    #[test]
    fn small_as_number_big_as_string() {
        let t = T {
            a: BigUint::from(92_897_280u32),
            b: BigUint::from(1u32) << 130usize,
        };
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            format!("{{\"a\":92897280,\"b\":\"{}\"}}", BigUint::from(1u32) << 130usize)
        );
    }
}
