use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision signed integer used for every sum and binomial.
pub type ExactInt = BigInt;

/// Difference between a valuation and a bound. Infinite when the
/// valuation is (the value was zero); negative only for a violated bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slack {
    Finite(i64),
    Infinite,
}

impl Ord for Slack {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Slack::Finite(a), Slack::Finite(b)) => a.cmp(b),
            (Slack::Finite(_), Slack::Infinite) => Ordering::Less,
            (Slack::Infinite, Slack::Finite(_)) => Ordering::Greater,
            (Slack::Infinite, Slack::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Slack {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slack::Finite(v) => write!(f, "{v}"),
            Slack::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Slack {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Slack::Finite(v) => serializer.serialize_i64(*v),
            Slack::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Slack {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct SlackVisitor;

        impl de::Visitor<'_> for SlackVisitor {
            type Value = Slack;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or \"inf\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Slack, E> {
                Ok(Slack::Finite(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Slack, E> {
                i64::try_from(v)
                    .map(Slack::Finite)
                    .map_err(|_| E::invalid_value(de::Unexpected::Unsigned(v), &self))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Slack, E> {
                if v == f64::INFINITY {
                    Ok(Slack::Infinite)
                } else {
                    Err(E::invalid_value(de::Unexpected::Float(v), &self))
                }
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Slack, E> {
                if v == "inf" {
                    return Ok(Slack::Infinite);
                }
                v.parse::<i64>()
                    .map(Slack::Finite)
                    .map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }

        deserializer.deserialize_any(SlackVisitor)
    }
}

/// Serde adapter writing an [`ExactInt`] as a decimal string.
pub mod decimal {
    use super::ExactInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &ExactInt, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<ExactInt, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse()
            .map_err(|_| de::Error::invalid_value(de::Unexpected::Str(&s), &"a decimal integer"))
    }
}
