use std::fmt;

use serde::{Deserialize, Serialize};

/// An ordinal below ω², `ω·limit_part + finite_part`.
///
/// Field order gives the lexicographic comparison the derive relies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Ordinal {
    pub limit_part: usize,
    pub finite_part: usize,
}

impl Ordinal {
    pub const ZERO: Ordinal = Ordinal::new(0, 0);
    pub const OMEGA: Ordinal = Ordinal::new(1, 0);

    pub const fn new(limit_part: usize, finite_part: usize) -> Self {
        Ordinal {
            limit_part,
            finite_part,
        }
    }

    pub const fn finite(n: usize) -> Self {
        Ordinal::new(0, n)
    }

    pub fn succ(self) -> Self {
        Ordinal::new(self.limit_part, self.finite_part + 1)
    }

    pub fn is_limit(self) -> bool {
        self.limit_part > 0 && self.finite_part == 0
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let omega = match self.limit_part {
            0 => return write!(f, "{}", self.finite_part),
            1 => "ω".to_string(),
            k => format!("ω·{k}"),
        };
        match self.finite_part {
            0 => write!(f, "{omega}"),
            n => write!(f, "{omega}+{n}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(Ordinal::finite(3).to_string(), "3");
        assert_eq!(Ordinal::ZERO.to_string(), "0");
        assert_eq!(Ordinal::OMEGA.to_string(), "ω");
        assert_eq!(Ordinal::new(1, 1).to_string(), "ω+1");
        assert_eq!(Ordinal::new(2, 0).to_string(), "ω·2");
        assert_eq!(Ordinal::new(3, 4).to_string(), "ω·3+4");
    }

    #[test]
    fn order_is_lexicographic() {
        assert!(Ordinal::finite(1000) < Ordinal::OMEGA);
        assert!(Ordinal::OMEGA < Ordinal::OMEGA.succ());
        assert!(Ordinal::new(1, 99) < Ordinal::new(2, 0));
        assert_eq!(Ordinal::finite(2).succ(), Ordinal::finite(3));
        assert!(Ordinal::new(2, 0).is_limit());
        assert!(!Ordinal::ZERO.is_limit());
    }
}
