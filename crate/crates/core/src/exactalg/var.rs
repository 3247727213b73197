use std::fmt;
use std::str::FromStr;

use crate::error::Error;

pub const NVARS: usize = 7;

/// The shared indeterminate alphabet. Declaration order is the canonical
/// order used for monomial sorting and rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q,
    X,
    X0,
    X1,
    Y,
    Y0,
    Y1,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Q, Var::X, Var::X0, Var::X1, Var::Y, Var::Y0, Var::Y1];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::X => "x",
            Var::X0 => "x0",
            Var::X1 => "x1",
            Var::Y => "y",
            Var::Y0 => "y0",
            Var::Y1 => "y1",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Var::ALL
            .iter()
            .copied()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown variable `{s}`")))
    }
}
