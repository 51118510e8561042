//! Serde adapters writing integers as decimal strings.

use std::fmt::Display;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serializer};

fn parse<T, E>(s: &str) -> Result<T, E>
where
    T: FromStr,
    T::Err: Display,
    E: serde::de::Error,
{
    s.parse().map_err(E::custom)
}

pub fn serialize<T: Display, S: Serializer>(n: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
where
    T: FromStr,
    T::Err: Display,
    D: Deserializer<'de>,
{
    parse(&String::deserialize(d)?)
}

pub mod option {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(n: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        match n {
            Some(n) => s.collect_str(n),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Option<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Option::<String>::deserialize(d)?.map(|s| parse(&s)).transpose()
    }
}

pub mod seq {
    use serde::ser::SerializeSeq;

    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for n in v {
            seq.serialize_element(&n.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Vec<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Vec::<String>::deserialize(d)?.iter().map(|s| parse(s)).collect()
    }
}

pub mod map {
    use std::collections::BTreeMap;

    use serde::ser::SerializeMap;
    use serde::Serialize;

    use super::*;

    pub fn serialize<K, T, S>(m: &BTreeMap<K, T>, s: S) -> Result<S::Ok, S::Error>
    where
        K: Serialize,
        T: Display,
        S: Serializer,
    {
        let mut map = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            map.serialize_entry(k, &v.to_string())?;
        }
        map.end()
    }

    pub fn deserialize<'de, K, T, D>(d: D) -> Result<BTreeMap<K, T>, D::Error>
    where
        K: Deserialize<'de> + Ord,
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        BTreeMap::<K, String>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| parse(&v).map(|v| (k, v)))
            .collect()
    }
}
