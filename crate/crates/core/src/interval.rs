//! Closed subintervals of [0, 1] and the scalar kernels built on them.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Half-width of the band around 0.5 in which two possibility degrees are
/// treated as a tie.
pub const RANK_TIE_BAND: f64 = 1e-12;

/// A closed interval `[lower, upper]` with `0 <= lower <= upper <= 1`.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct UnitInterval {
    lower: f64,
    upper: f64,
}

impl UnitInterval {
    pub const ZERO: UnitInterval = UnitInterval {
        lower: 0.0,
        upper: 0.0,
    };
    pub const ONE: UnitInterval = UnitInterval {
        lower: 1.0,
        upper: 1.0,
    };

    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        let in_range = |x: f64| (0.0..=1.0).contains(&x);
        if !in_range(lower) || !in_range(upper) {
            return Err(Error::OutOfRange { lower, upper });
        }
        if lower > upper {
            return Err(Error::Inverted { lower, upper });
        }
        Ok(UnitInterval { lower, upper })
    }

    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x)
    }

    /// Kernel results can drift outside [0, 1] by an ulp, and `a + b - ab`
    /// is not monotone after rounding, so the endpoints can cross by an ulp
    /// too. Pull both back.
    pub(crate) fn clamped(lower: f64, upper: f64) -> Self {
        let lower = lower.clamp(0.0, 1.0);
        let upper = upper.clamp(0.0, 1.0);
        debug_assert!(lower <= upper + 1e-12, "[{lower}, {upper}]");
        UnitInterval {
            lower,
            upper: upper.max(lower),
        }
    }

    #[inline]
    pub fn lower(&self) -> f64 {
        self.lower
    }

    #[inline]
    pub fn upper(&self) -> f64 {
        self.upper
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    #[inline]
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    /// `[1 - upper, 1 - lower]`.
    #[inline]
    pub fn complement(&self) -> Self {
        UnitInterval {
            lower: 1.0 - self.upper,
            upper: 1.0 - self.lower,
        }
    }

    #[inline]
    pub fn join(&self, other: &Self) -> Self {
        UnitInterval {
            lower: self.lower.max(other.lower),
            upper: self.upper.max(other.upper),
        }
    }

    #[inline]
    pub fn meet(&self, other: &Self) -> Self {
        UnitInterval {
            lower: self.lower.min(other.lower),
            upper: self.upper.min(other.upper),
        }
    }

    /// Both endpoints within `tol`.
    #[inline]
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.lower - other.lower).abs() <= tol && (self.upper - other.upper).abs() <= tol
    }

    /// Componentwise `<=`, allowing `tol` of slack.
    #[inline]
    pub fn le_within(&self, other: &Self, tol: f64) -> bool {
        self.lower <= other.lower + tol && self.upper <= other.upper + tol
    }
}

impl fmt::Debug for UnitInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

impl fmt::Display for UnitInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl TryFrom<[f64; 2]> for UnitInterval {
    type Error = Error;

    fn try_from([lower, upper]: [f64; 2]) -> Result<Self> {
        UnitInterval::new(lower, upper)
    }
}

impl From<UnitInterval> for [f64; 2] {
    fn from(a: UnitInterval) -> Self {
        [a.lower, a.upper]
    }
}

/// Orders two endpoints and builds the interval they span.
pub fn canonicalize_pair(a: f64, b: f64) -> Result<UnitInterval> {
    if a <= b {
        UnitInterval::new(a, b)
    } else {
        UnitInterval::new(b, a)
    }
}

/// An interval of reals with no range restriction, used for sums and
/// scalings on the way to a score.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealInterval {
    pub lower: f64,
    pub upper: f64,
}

impl From<UnitInterval> for RealInterval {
    fn from(a: UnitInterval) -> Self {
        RealInterval {
            lower: a.lower,
            upper: a.upper,
        }
    }
}

pub fn interval_add(a: RealInterval, b: RealInterval) -> RealInterval {
    RealInterval {
        lower: a.lower + b.lower,
        upper: a.upper + b.upper,
    }
}

pub fn interval_scale(k: f64, a: RealInterval) -> Result<RealInterval> {
    if k < 0.0 || k.is_nan() {
        return Err(Error::NegativeScalar(k));
    }
    Ok(RealInterval {
        lower: k * a.lower,
        upper: k * a.upper,
    })
}

/// Possibility degree that `a` is at least `b`.
///
/// When both intervals are points the ratio is undefined; the result is then
/// 1, 0 or 0.5 according to how the points compare.
pub fn possibility_ge(a: &UnitInterval, b: &UnitInterval) -> f64 {
    let total_width = a.width() + b.width();
    if total_width == 0.0 {
        return match a.lower.partial_cmp(&b.lower) {
            Some(Ordering::Greater) => 1.0,
            Some(Ordering::Less) => 0.0,
            _ => 0.5,
        };
    }
    let ratio = (b.upper - a.lower) / total_width;
    (1.0 - ratio.max(0.0)).max(0.0)
}

/// Total preorder used to sort the intervals of a hesitant element.
///
/// `Greater` when the possibility degree exceeds one half, `Less` when it
/// falls short; ties go to the lower endpoint, then the upper one.
pub fn rank_compare(a: &UnitInterval, b: &UnitInterval) -> Ordering {
    let p = possibility_ge(a, b);
    if p > 0.5 + RANK_TIE_BAND {
        return Ordering::Greater;
    }
    if p < 0.5 - RANK_TIE_BAND {
        return Ordering::Less;
    }
    a.lower
        .total_cmp(&b.lower)
        .then_with(|| a.upper.total_cmp(&b.upper))
}

/// `a + b - ab`
#[inline]
pub fn ring_sum_scalar(a: f64, b: f64) -> f64 {
    a + b - a * b
}

pub fn ring_sum_kernel(a: &UnitInterval, b: &UnitInterval) -> UnitInterval {
    UnitInterval::clamped(
        ring_sum_scalar(a.lower, b.lower),
        ring_sum_scalar(a.upper, b.upper),
    )
}

pub fn ring_product_kernel(a: &UnitInterval, b: &UnitInterval) -> UnitInterval {
    UnitInterval::clamped(a.lower * b.lower, a.upper * b.upper)
}

/// `(a + b) / (2 (ab + 1))`
#[inline]
pub fn star(a: f64, b: f64) -> f64 {
    (a + b) / (2.0 * (a * b + 1.0))
}

/// The four difference-like operators between hesitant elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    O1,
    O2,
    O3,
    O4,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 4] = [
        OperatorKind::O1,
        OperatorKind::O2,
        OperatorKind::O3,
        OperatorKind::O4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::O1 => "o1",
            OperatorKind::O2 => "o2",
            OperatorKind::O3 => "o3",
            OperatorKind::O4 => "o4",
        }
    }

    fn endpoint(self, x: f64, y: f64) -> f64 {
        match self {
            OperatorKind::O1 => {
                let d = (x - y).abs();
                d / (1.0 + d)
            }
            OperatorKind::O2 => {
                let d = (x - y).abs();
                d / (1.0 + 2.0 * d)
            }
            OperatorKind::O3 => (x - y).abs() / 2.0,
            OperatorKind::O4 => star(x, y).abs() / 2.0,
        }
    }
}

impl std::str::FromStr for OperatorKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "o1" => Ok(OperatorKind::O1),
            "o2" => Ok(OperatorKind::O2),
            "o3" => Ok(OperatorKind::O3),
            "o4" => Ok(OperatorKind::O4),
            other => Err(format!("unknown operator `{other}` (expected o1..o4)")),
        }
    }
}

/// Endpoint values before reordering: lower-with-lower, upper-with-upper.
pub fn operator_kernel_raw(kind: OperatorKind, a: &UnitInterval, b: &UnitInterval) -> (f64, f64) {
    (
        kind.endpoint(a.lower, b.lower),
        kind.endpoint(a.upper, b.upper),
    )
}

pub fn operator_kernel(kind: OperatorKind, a: &UnitInterval, b: &UnitInterval) -> UnitInterval {
    let (x, y) = operator_kernel_raw(kind, a, b);
    UnitInterval::clamped(x.min(y), x.max(y))
}
