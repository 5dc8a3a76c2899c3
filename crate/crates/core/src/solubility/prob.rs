use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact probability `p/q` in lowest terms with `q > 0` and `0 ≤ p/q ≤ 1`.
///
/// Serialized as the string `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactProbability(BigRational);

impl ExactProbability {
    /// Panics if the value lies outside `[0, 1]` or `denominator` is zero.
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Self {
        Self::from_rational(BigRational::new(numerator.into(), denominator.into()))
    }

    pub fn from_rational(value: BigRational) -> Self {
        assert!(
            !value.is_negative() && value <= BigRational::one(),
            "probability out of range: {value}"
        );
        ExactProbability(value)
    }

    pub fn one() -> Self {
        ExactProbability(BigRational::one())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn product(&self, other: &ExactProbability) -> ExactProbability {
        ExactProbability(&self.0 * &other.0)
    }
}

impl fmt::Display for ExactProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for ExactProbability {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        let value = BigRational::new(n, d);
        if value < BigRational::zero() || value > BigRational::one() {
            return Err(format!("`{s}` is not a probability"));
        }
        Ok(ExactProbability(value))
    }
}

impl Serialize for ExactProbability {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactProbability {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let p = ExactProbability::new(1320, 3600);
        assert_eq!(p.to_string(), "11/30");
        assert_eq!(p, ExactProbability::new(11, 30));
    }

    #[test]
    fn parses_and_serializes() {
        let p: ExactProbability = "5/60".parse().unwrap();
        assert_eq!(p.to_string(), "1/12");
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "\"1/12\"");
        let back: ExactProbability = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!("3/2".parse::<ExactProbability>().is_err());
        assert!("1/0".parse::<ExactProbability>().is_err());
    }

    #[test]
    #[should_panic]
    fn rejects_values_above_one() {
        ExactProbability::new(7, 6);
    }
}
