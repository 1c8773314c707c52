use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum FrameKind {
    /// `x1..xn`, the ring the forms live in.
    X,
    /// `y1..yn`, the dual ring of differential operators.
    Y,
    /// `u, z, v` on the dual side of three variables.
    Uvz,
}

/// Named set of variables a polynomial is written in.
///
/// The `Uvz` frame stores exponents in the order `(z, u, v)` so that plain
/// lexicographic comparison of exponent vectors is the lex order
/// `z > u > v`; it prints variables in the order `u, z, v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct VariableFrame {
    kind: FrameKind,
    n: usize,
}

impl VariableFrame {
    /// Storage index of `z` in the `Uvz` frame.
    pub const Z: usize = 0;
    /// Storage index of `u` in the `Uvz` frame.
    pub const U: usize = 1;
    /// Storage index of `v` in the `Uvz` frame.
    pub const V: usize = 2;

    pub fn x(n: usize) -> Self {
        Self { kind: FrameKind::X, n }
    }

    pub fn y(n: usize) -> Self {
        Self { kind: FrameKind::Y, n }
    }

    pub fn uvz() -> Self {
        Self { kind: FrameKind::Uvz, n: 3 }
    }

    pub fn kind(&self) -> FrameKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn var_name(&self, i: usize) -> String {
        match self.kind {
            FrameKind::X => format!("x{}", i + 1),
            FrameKind::Y => format!("y{}", i + 1),
            FrameKind::Uvz => ["z", "u", "v"][i].to_string(),
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        match self.kind {
            FrameKind::Uvz => match name {
                "z" => Some(Self::Z),
                "u" => Some(Self::U),
                "v" => Some(Self::V),
                _ => None,
            },
            FrameKind::X | FrameKind::Y => {
                let prefix = if self.kind == FrameKind::X { 'x' } else { 'y' };
                let digits = name.strip_prefix(prefix)?;
                if digits.starts_with('0') {
                    return None;
                }
                let i: usize = digits.parse().ok()?;
                (1..=self.n).contains(&i).then(|| i - 1)
            }
        }
    }

    /// Storage indices in the order variables are printed inside a monomial.
    pub fn print_order(&self) -> Vec<usize> {
        match self.kind {
            FrameKind::Uvz => vec![Self::U, Self::Z, Self::V],
            _ => (0..self.n).collect(),
        }
    }
}

impl fmt::Display for VariableFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FrameKind::X => write!(f, "X(n={})", self.n),
            FrameKind::Y => write!(f, "Y(n={})", self.n),
            FrameKind::Uvz => f.write_str("UVZ"),
        }
    }
}
