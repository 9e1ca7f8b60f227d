use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

/// The ordinal `ω·a + b`, for ordinals below `ω²`.
///
/// Field order makes the derived ordering lexicographic, which is ordinal
/// order on this range.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrdinalW2 {
    pub a: u64,
    pub b: u64,
}

impl OrdinalW2 {
    pub const ZERO: OrdinalW2 = OrdinalW2 { a: 0, b: 0 };
    pub const OMEGA: OrdinalW2 = OrdinalW2 { a: 1, b: 0 };

    pub const fn new(a: u64, b: u64) -> Self {
        Self { a, b }
    }

    pub const fn finite(n: u64) -> Self {
        Self { a: 0, b: n }
    }

    pub fn is_limit(self) -> bool {
        self.a > 0 && self.b == 0
    }

    pub fn successor(self) -> Self {
        Self { a: self.a, b: self.b + 1 }
    }
}

impl fmt::Display for OrdinalW2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (0, b) => write!(f, "{b}"),
            (1, 0) => write!(f, "ω"),
            (1, b) => write!(f, "ω+{b}"),
            (a, 0) => write!(f, "ω·{a}"),
            (a, b) => write!(f, "ω·{a}+{b}"),
        }
    }
}

/// Whether `gamma` splits into countably many cofinal subsets, which holds
/// exactly when `gamma = ω·α` for some `α > 0`: a finite tail leaves a
/// largest element that every cofinal subset must contain.
///
/// `gamma = 0` has no such partition and returns `false`.
pub fn is_kappa_multiple(gamma: OrdinalW2) -> bool {
    gamma.a >= 1 && gamma.b == 0
}

/// A finite cardinal or an aleph with index below `ω²`.
///
/// The derived ordering puts every finite cardinal below every aleph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cardinal {
    Finite(u64),
    Aleph(OrdinalW2),
}

impl Cardinal {
    pub const ZERO: Cardinal = Cardinal::Finite(0);
    pub const ONE: Cardinal = Cardinal::Finite(1);
    pub const ALEPH_0: Cardinal = Cardinal::Aleph(OrdinalW2::ZERO);

    pub fn aleph(a: u64, b: u64) -> Self {
        Cardinal::Aleph(OrdinalW2::new(a, b))
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Cardinal::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        !self.is_finite()
    }

    pub fn finite_value(self) -> Option<u64> {
        match self {
            Cardinal::Finite(n) => Some(n),
            Cardinal::Aleph(_) => None,
        }
    }

    /// `max(ℵ₀, self)`: the size of a countably infinite union of copies.
    pub fn times_aleph_0(self) -> Self {
        if self == Cardinal::ZERO {
            Cardinal::ZERO
        } else {
            self.max(Cardinal::ALEPH_0)
        }
    }
}

impl Default for Cardinal {
    fn default() -> Self {
        Cardinal::ZERO
    }
}

impl From<u64> for Cardinal {
    fn from(n: u64) -> Self {
        Cardinal::Finite(n)
    }
}

impl Add for Cardinal {
    type Output = Cardinal;

    fn add(self, rhs: Cardinal) -> Cardinal {
        match (self, rhs) {
            (Cardinal::Finite(x), Cardinal::Finite(y)) => {
                Cardinal::Finite(x.checked_add(y).expect("finite cardinal overflow"))
            }
            _ => self.max(rhs),
        }
    }
}

impl Mul for Cardinal {
    type Output = Cardinal;

    fn mul(self, rhs: Cardinal) -> Cardinal {
        match (self, rhs) {
            (Cardinal::Finite(x), Cardinal::Finite(y)) => {
                Cardinal::Finite(x.checked_mul(y).expect("finite cardinal overflow"))
            }
            _ if self == Cardinal::ZERO || rhs == Cardinal::ZERO => Cardinal::ZERO,
            _ => self.max(rhs),
        }
    }
}

impl std::iter::Sum for Cardinal {
    fn sum<I: Iterator<Item = Cardinal>>(iter: I) -> Cardinal {
        iter.fold(Cardinal::ZERO, Add::add)
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Aleph(i) => write!(f, "ℵ_{i}"),
        }
    }
}

pub fn card_compare(x: Cardinal, y: Cardinal) -> Ordering {
    x.cmp(&y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn compare_examples() {
        assert_eq!(card_compare(Cardinal::Finite(7), Cardinal::aleph(0, 0)), Ordering::Less);
        assert_eq!(card_compare(Cardinal::aleph(1, 0), Cardinal::aleph(1, 1)), Ordering::Less);
        assert_eq!(card_compare(Cardinal::Finite(3), Cardinal::Finite(3)), Ordering::Equal);
        assert_eq!(card_compare(Cardinal::aleph(0, 9), Cardinal::aleph(1, 0)), Ordering::Less);
    }

    #[test]
    fn kappa_multiples() {
        let cases = [
            (OrdinalW2::new(1, 0), true),
            (OrdinalW2::new(1, 1), false),
            (OrdinalW2::new(2, 0), true),
            (OrdinalW2::new(3, 5), false),
            (OrdinalW2::new(7, 0), true),
            (OrdinalW2::new(0, 4), false),
            (OrdinalW2::ZERO, false),
        ];
        for (g, want) in cases {
            assert_eq!(is_kappa_multiple(g), want, "{g}");
        }
    }

    #[test]
    fn limits_and_display() {
        assert!(OrdinalW2::new(2, 0).is_limit());
        assert!(!OrdinalW2::new(0, 0).is_limit());
        assert!(!OrdinalW2::new(2, 1).is_limit());
        assert_eq!(Cardinal::aleph(1, 0).to_string(), "ℵ_ω");
        assert_eq!(Cardinal::aleph(3, 2).to_string(), "ℵ_ω·3+2");
        assert_eq!(Cardinal::ALEPH_0.to_string(), "ℵ_0");
    }

    #[test]
    fn arithmetic_examples() {
        let a0 = Cardinal::ALEPH_0;
        assert_eq!(Cardinal::Finite(2) + Cardinal::Finite(3), Cardinal::Finite(5));
        assert_eq!(Cardinal::Finite(2) + a0, a0);
        assert_eq!(a0 * Cardinal::ZERO, Cardinal::ZERO);
        assert_eq!(a0 * Cardinal::Finite(3), a0);
        assert_eq!(Cardinal::aleph(1, 0) * a0, Cardinal::aleph(1, 0));
        assert_eq!(Cardinal::Finite(4).times_aleph_0(), a0);
    }

    fn arb_cardinal() -> impl Strategy<Value = Cardinal> {
        prop_oneof![(0u64..20).prop_map(Cardinal::Finite), (0u64..3, 0u64..3).prop_map(|(a, b)| Cardinal::aleph(a, b)),]
    }

    proptest! {
        #[test]
        fn sum_and_product_laws(x in arb_cardinal(), y in arb_cardinal(), z in arb_cardinal(), w in arb_cardinal()) {
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!((x + y) + z, x + (y + z));
            prop_assert_eq!((x * y) * z, x * (y * z));
            if x <= y {
                prop_assert!(x + w <= y + w);
                prop_assert!(x * w <= y * w);
            }
            if x.is_infinite() || y.is_infinite() {
                prop_assert_eq!(x + y, x.max(y));
                if x != Cardinal::ZERO && y != Cardinal::ZERO {
                    prop_assert_eq!(x * y, x.max(y));
                }
            }
        }
    }
}
