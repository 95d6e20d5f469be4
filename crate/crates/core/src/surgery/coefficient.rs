use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::CrossingCoefficient;

/// Dehn surgery slope `p/q` in lowest terms with `q ≥ 0`; `∞` is `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurgeryCoefficient {
    p: i64,
    q: i64,
}

impl SurgeryCoefficient {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::Invalid("0/0 is not a slope".into()));
        }
        if q == 0 {
            return Ok(Self::INFINITY);
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = p.checked_neg().ok_or_else(|| Error::Invalid("slope overflow".into()))?;
            q = -q;
        }
        Ok(SurgeryCoefficient { p, q })
    }

    pub const INFINITY: SurgeryCoefficient = SurgeryCoefficient { p: 1, q: 0 };

    pub fn integer(p: i64) -> Self {
        SurgeryCoefficient { p, q: 1 }
    }

    pub fn p(self) -> i64 {
        self.p
    }

    pub fn q(self) -> i64 {
        self.q
    }

    pub fn is_infinite(self) -> bool {
        self.q == 0
    }
}

impl From<CrossingCoefficient> for SurgeryCoefficient {
    fn from(c: CrossingCoefficient) -> Self {
        let (p, q) = c.as_fraction();
        SurgeryCoefficient { p, q }
    }
}

impl fmt::Display for SurgeryCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.q {
            0 => write!(f, "inf"),
            1 => write!(f, "{}", self.p),
            q => write!(f, "{}/{}", self.p, q),
        }
    }
}

impl FromStr for SurgeryCoefficient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "inf" || t == "∞" {
            return Ok(Self::INFINITY);
        }
        let bad = || Error::Invalid(format!("slope {s:?} is not p, p/q or inf"));
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.parse().map_err(|_| bad())?, q.parse().map_err(|_| bad())?),
            None => (t.parse().map_err(|_| bad())?, 1),
        };
        Self::new(p, q)
    }
}

impl Serialize for SurgeryCoefficient {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let c = SurgeryCoefficient::new(2, -4).unwrap();
        assert_eq!((c.p(), c.q()), (-1, 2));
        assert_eq!(c.to_string(), "-1/2");
        assert!(SurgeryCoefficient::new(5, 0).unwrap().is_infinite());
        assert!(SurgeryCoefficient::new(0, 0).is_err());
        assert_eq!(
            "-6/3".parse::<SurgeryCoefficient>().unwrap(),
            SurgeryCoefficient::integer(-2)
        );
        assert_eq!(
            SurgeryCoefficient::from(CrossingCoefficient::Reciprocal(3)),
            SurgeryCoefficient::new(-1, 3).unwrap()
        );
    }
}
