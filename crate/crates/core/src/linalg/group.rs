use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Finitely generated abelian group `Z/d_1 ⊕ … ⊕ Z/d_k ⊕ Z^r`, with
/// `1 < d_1 | d_2 | … | d_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroup {
    /// From a Smith diagonal: units are dropped, zeros become free summands.
    pub fn from_diagonal(diagonal: &[BigInt]) -> Self {
        let mut invariant_factors = Vec::new();
        let mut free_rank = 0;
        for d in diagonal {
            let d = d.abs();
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                invariant_factors.push(d);
            }
        }
        AbelianGroup {
            invariant_factors,
            free_rank,
        }
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.invariant_factors.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AbelianGroup", 4)?;
        let factors: Vec<String> = self.invariant_factors.iter().map(ToString::to_string).collect();
        st.serialize_field("invariant_factors", &factors)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("order", &self.order().map(|o| o.to_string()))?;
        st.serialize_field("display", &self.to_string())?;
        st.end()
    }
}
