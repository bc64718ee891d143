//! Classical simple real groups and their complex models `(V, B, τ)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{FlexError, Result};
use crate::forms::{FormKind, Iota};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum Family {
    #[serde(rename = "SL_R")]
    SlR { n: usize },
    #[serde(rename = "SL_C")]
    SlC { n: usize },
    #[serde(rename = "SL_H")]
    SlH { m: usize },
    #[serde(rename = "SU")]
    Su { p: usize, q: usize },
    #[serde(rename = "SO")]
    So { p: usize, q: usize },
    #[serde(rename = "Sp_R")]
    SpR { m: usize },
    #[serde(rename = "Sp")]
    Sp { p: usize, q: usize },
    #[serde(rename = "SOstar")]
    SoStar { m: usize },
    #[serde(rename = "SO_C")]
    SoC { n: usize },
    #[serde(rename = "Sp_C")]
    SpC { m: usize },
}

/// How the standard representation is structured.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Shape {
    /// `SL` families: no invariant form.
    Linear,
    /// `SU(p,q)`: Hermitian form.
    Unitary,
    /// Real and complex forms of `O(n,ℂ)` / `Sp(n,ℂ)`.
    Orthogonal,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(flatten)]
    pub family: Family,
}

impl From<Family> for GroupSpec {
    fn from(family: Family) -> Self {
        GroupSpec { family }
    }
}

impl GroupSpec {
    pub fn new(family: Family) -> Result<Self> {
        let g = GroupSpec { family };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        use Family::*;
        let ok = match self.family {
            SlR { n } | SlC { n } => n >= 2,
            SlH { m } => m >= 1,
            Su { p, q } => p + q >= 2,
            So { p, q } => p + q >= 3,
            SoC { n } => n >= 3,
            SpR { m } | SpC { m } => m >= 1,
            Sp { p, q } => p + q >= 1,
            SoStar { m } => m >= 2,
        };
        if ok {
            Ok(())
        } else {
            Err(FlexError::Validation(format!("{self} is not semisimple or has invalid parameters")))
        }
    }

    pub fn shape(&self) -> Shape {
        use Family::*;
        match self.family {
            SlR { .. } | SlC { .. } | SlH { .. } => Shape::Linear,
            Su { .. } => Shape::Unitary,
            _ => Shape::Orthogonal,
        }
    }

    /// `ε` of the bilinear form, where there is one.
    pub fn epsilon(&self) -> Option<i8> {
        use Family::*;
        match self.family {
            So { .. } | SoStar { .. } | SoC { .. } => Some(1),
            SpR { .. } | Sp { .. } | SpC { .. } => Some(-1),
            Su { .. } => Some(1),
            _ => None,
        }
    }

    /// `τ² = η`; `None` for complex groups.
    pub fn eta(&self) -> Option<i8> {
        use Family::*;
        match self.family {
            SlC { .. } | SoC { .. } | SpC { .. } => None,
            SlH { .. } | Sp { .. } | SoStar { .. } => Some(-1),
            _ => Some(1),
        }
    }

    pub fn form_kind(&self) -> Option<FormKind> {
        let eps = self.epsilon()?;
        let iota = if self.shape() == Shape::Unitary { Iota::Conjugation } else { Iota::Identity };
        FormKind::new(iota, eps).ok()
    }

    pub fn is_complex(&self) -> bool {
        self.eta().is_none()
    }

    pub fn is_quaternionic(&self) -> bool {
        self.eta() == Some(-1)
    }

    pub fn is_compact(&self) -> bool {
        use Family::*;
        match self.family {
            Su { p, q } | So { p, q } | Sp { p, q } => p == 0 || q == 0,
            SlH { m } => m == 1,
            _ => false,
        }
    }

    /// Complex dimension of the standard module `V`.
    pub fn v_dim(&self) -> usize {
        use Family::*;
        match self.family {
            SlR { n } | SlC { n } | SoC { n } => n,
            SlH { m } | SpR { m } | SoStar { m } | SpC { m } => 2 * m,
            Su { p, q } | So { p, q } => p + q,
            Sp { p, q } => 2 * (p + q),
        }
    }

    /// Complex dimension of `𝔤_ℂ` (`sl`, `so` or `sp` of `V`).
    pub fn complex_lie_dim(&self) -> usize {
        let n = self.v_dim();
        match (self.shape(), self.epsilon()) {
            (Shape::Orthogonal, Some(1)) => n * (n - 1) / 2,
            (Shape::Orthogonal, _) => n * (n + 1) / 2,
            _ => n * n - 1,
        }
    }

    /// Real dimension of `G`.
    pub fn real_dim(&self) -> usize {
        let d = self.complex_lie_dim();
        if self.is_complex() {
            2 * d
        } else {
            d
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Family::*;
        match self.family {
            SlR { n } => write!(f, "SL({n},R)"),
            SlC { n } => write!(f, "SL({n},C)"),
            SlH { m } => write!(f, "SL({m},H)"),
            Su { p, q } => write!(f, "SU({p},{q})"),
            So { p, q } => write!(f, "SO({p},{q})"),
            SpR { m } => write!(f, "Sp({},R)", 2 * m),
            Sp { p, q } => write!(f, "Sp({p},{q})"),
            SoStar { m } => write!(f, "SO*({})", 2 * m),
            SoC { n } => write!(f, "SO({n},C)"),
            SpC { m } => write!(f, "Sp({},C)", 2 * m),
        }
    }
}
