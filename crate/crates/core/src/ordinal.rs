//! Ordinals below ω^ω in Cantor normal form, plus a marker for "at least ω^ω".

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawOrdinal", into = "RawOrdinal")]
pub enum Ordinal {
    /// `(exponent, coefficient)` terms with strictly decreasing exponents and
    /// positive coefficients. The empty list is 0.
    Cnf(Vec<(u32, u64)>),
    AtLeastOmegaOmega,
}

const MARKER: &str = "≥w^w";

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawOrdinal {
    Terms(Vec<(u32, u64)>),
    Marker(String),
}

impl TryFrom<RawOrdinal> for Ordinal {
    type Error = Error;
    fn try_from(raw: RawOrdinal) -> Result<Self> {
        match raw {
            RawOrdinal::Terms(t) => Ordinal::cnf(t),
            RawOrdinal::Marker(m) if m == MARKER => Ok(Ordinal::AtLeastOmegaOmega),
            RawOrdinal::Marker(m) => invalid(format!("unknown ordinal marker {m:?}")),
        }
    }
}

impl From<Ordinal> for RawOrdinal {
    fn from(o: Ordinal) -> Self {
        match o {
            Ordinal::Cnf(t) => RawOrdinal::Terms(t),
            Ordinal::AtLeastOmegaOmega => RawOrdinal::Marker(MARKER.to_string()),
        }
    }
}

impl Ordinal {
    pub fn cnf(terms: Vec<(u32, u64)>) -> Result<Self> {
        let o = Ordinal::Cnf(terms);
        o.validate()?;
        Ok(o)
    }

    pub fn zero() -> Self {
        Ordinal::Cnf(Vec::new())
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal::Cnf(vec![(0, n)])
        }
    }

    /// `ω^k`
    pub fn omega_pow(k: u32) -> Self {
        Ordinal::Cnf(vec![(k, 1)])
    }

    pub fn validate(&self) -> Result<()> {
        if let Ordinal::Cnf(terms) = self {
            if terms.iter().any(|&(_, c)| c == 0) {
                return invalid("CNF coefficients must be positive");
            }
            if terms.windows(2).any(|w| w[0].0 <= w[1].0) {
                return invalid("CNF exponents must be strictly decreasing");
            }
        }
        Ok(())
    }

    /// The `k` with `self = ω^k`, if it has that form.
    pub fn as_omega_pow(&self) -> Option<u32> {
        match self {
            Ordinal::Cnf(t) if t.len() == 1 && t[0].1 == 1 => Some(t[0].0),
            _ => None,
        }
    }

    fn cmp_canonical(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Ordinal::AtLeastOmegaOmega, Ordinal::AtLeastOmegaOmega) => Ordering::Equal,
            (Ordinal::AtLeastOmegaOmega, _) => Ordering::Greater,
            (_, Ordinal::AtLeastOmegaOmega) => Ordering::Less,
            (Ordinal::Cnf(a), Ordinal::Cnf(b)) => {
                for (x, y) in a.iter().zip(b) {
                    let c = x.0.cmp(&y.0).then(x.1.cmp(&y.1));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                a.len().cmp(&b.len())
            }
        }
    }
}

/// Total order on canonical ordinals; two markers compare equal.
pub fn ordinal_compare(a: &Ordinal, b: &Ordinal) -> Result<Ordering> {
    a.validate()?;
    b.validate()?;
    Ok(a.cmp_canonical(b))
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_canonical(other)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = match self {
            Ordinal::AtLeastOmegaOmega => return write!(f, "{MARKER}"),
            Ordinal::Cnf(t) if t.is_empty() => return write!(f, "0"),
            Ordinal::Cnf(t) => t,
        };
        for (i, &(e, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "w")?,
                (1, c) => write!(f, "w*{c}")?,
                (e, 1) => write!(f, "w^{e}")?,
                (e, c) => write!(f, "w^{e}*{c}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
