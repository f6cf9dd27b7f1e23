use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GenKind {
    L,
    Lbar,
    T,
}

/// One of `L_j`, `L̄_j` (1-based index) or `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub kind: GenKind,
    /// 1-based; always 0 for `T`.
    pub index: usize,
}

impl Generator {
    pub fn l(index: usize) -> Self {
        Generator { kind: GenKind::L, index }
    }

    pub fn lbar(index: usize) -> Self {
        Generator { kind: GenKind::Lbar, index }
    }

    pub fn t() -> Self {
        Generator { kind: GenKind::T, index: 0 }
    }

    pub fn new(kind: GenKind, index: Option<usize>, rank: usize) -> Result<Self> {
        match (kind, index) {
            (GenKind::T, None) => Ok(Self::t()),
            (GenKind::T, Some(_)) => Err(Error::InvalidArgument("T carries no index".into())),
            (_, None) => Err(Error::InvalidArgument(format!("{kind:?} needs an index"))),
            (k, Some(i)) => {
                let g = Generator { kind: k, index: i };
                g.validate(rank)?;
                Ok(g)
            }
        }
    }

    pub fn validate(&self, rank: usize) -> Result<()> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        match self.kind {
            GenKind::T if self.index == 0 => Ok(()),
            GenKind::T => Err(Error::InvalidArgument("T carries no index".into())),
            _ if (1..=rank).contains(&self.index) => Ok(()),
            _ => Err(Error::IndexOutOfRange { index: self.index, rank }),
        }
    }

    /// 0-based position in a multi-index.
    pub(crate) fn slot(&self) -> usize {
        self.index.saturating_sub(1)
    }

    /// Weight in the grading where `L`, `L̄` count 1 and `T` counts 2.
    pub fn weight(&self) -> u32 {
        match self.kind {
            GenKind::T => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::L => write!(f, "L{}", self.index),
            GenKind::Lbar => write!(f, "Lb{}", self.index),
            GenKind::T => write!(f, "T"),
        }
    }
}

/// Sign `σ` in `L̄_k L_j = L_j L̄_k + σ δ_jk T`, i.e. `[L̄_k, L_j] = σ δ_jk T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sigma {
    Plus,
    Minus,
}

impl Sigma {
    pub fn value(self) -> i64 {
        match self {
            Sigma::Plus => 1,
            Sigma::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sigma::Plus),
            -1 => Ok(Sigma::Minus),
            _ => Err(Error::InvalidArgument(format!("sigma must be +1 or -1, got {v}"))),
        }
    }
}

/// Which multi-index carries the alternating sign in the coefficient of `(T^p)_Ψ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocSign {
    /// `(-1)^{|α|}` where `α` counts the `L` derivatives on `Ψ`.
    Alpha,
    /// `(-1)^{|β|}` where `β` counts the `L̄` derivatives on `Ψ`.
    Beta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignConvention {
    pub sigma: Sigma,
    pub loc_sign: LocSign,
}

impl SignConvention {
    pub const fn new(sigma: Sigma, loc_sign: LocSign) -> Self {
        SignConvention { sigma, loc_sign }
    }

    /// All four conventions in a fixed order.
    pub fn all() -> [SignConvention; 4] {
        [
            Self::new(Sigma::Plus, LocSign::Alpha),
            Self::new(Sigma::Plus, LocSign::Beta),
            Self::new(Sigma::Minus, LocSign::Alpha),
            Self::new(Sigma::Minus, LocSign::Beta),
        ]
    }
}

impl Default for SignConvention {
    fn default() -> Self {
        Self::new(Sigma::Plus, LocSign::Alpha)
    }
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sigma == Sigma::Plus { "+1" } else { "-1" };
        let l = match self.loc_sign {
            LocSign::Alpha => "alpha",
            LocSign::Beta => "beta",
        };
        write!(f, "sigma={s},locSign={l}")
    }
}

impl Serialize for SignConvention {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SignConvention", 2)?;
        st.serialize_field("sigma", &self.sigma.value())?;
        st.serialize_field("locSign", &self.loc_sign)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SignConvention {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(rename_all = "camelCase")]
        struct Raw {
            sigma: i64,
            loc_sign: LocSign,
        }
        let raw = Raw::deserialize(d)?;
        let sigma = Sigma::from_value(raw.sigma).map_err(serde::de::Error::custom)?;
        Ok(SignConvention::new(sigma, raw.loc_sign))
    }
}
