use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `sin w = sin(theta) u / sinh u`.
    MonoMain,
    /// `w` in `[-pi/2, pi/2]`, `u` from `mu_-` up to `mu`.
    ArcLower,
    /// `w` in `[pi/2, 3pi/2]`, `u` from `mu` back down to `mu_-`.
    ArcUpper,
    /// `u` in `[mu, inf)`, `w` from `pi/2` down to `0`.
    Tail,
}

impl Branch {
    pub fn name(&self) -> &'static str {
        match self {
            Branch::MonoMain => "mono_main",
            Branch::ArcLower => "arc_lower",
            Branch::ArcUpper => "arc_upper",
            Branch::Tail => "tail",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Branch {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mono_main" => Ok(Branch::MonoMain),
            "arc_lower" => Ok(Branch::ArcLower),
            "arc_upper" => Ok(Branch::ArcUpper),
            "tail" => Ok(Branch::Tail),
            other => Err(format!("unknown branch `{other}`")),
        }
    }
}

/// Tangent slope `dw/du`; vertical tangents are a marker, not `inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slope {
    Finite(f64),
    Infinite,
}

impl Slope {
    pub fn finite(&self) -> Option<f64> {
        match self {
            Slope::Finite(v) => Some(*v),
            Slope::Infinite => None,
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(v) => write!(f, "{v:?}"),
            Slope::Infinite => f.write_str("inf"),
        }
    }
}

/// Point `R = u + i w` on a steepest-descent curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourPoint {
    pub u: f64,
    pub w: f64,
    pub dw_du: Slope,
    pub branch: Branch,
}
