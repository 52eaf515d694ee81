//! Numeric types usable as credence weights.
//!
//! Exact types (`Ratio<i64>`, `BigRational`) compare with `==`; the float
//! types fall back to a relative tolerance in [`Scalar::approx_eq`].

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive, Zero};

pub trait Scalar: Num + Clone + PartialOrd + Debug + Display + Send + Sync + 'static {
    /// Whether arithmetic on this type is exact.
    const EXACT: bool;

    fn from_ratio(num: u64, den: u64) -> Self;

    fn to_f64(&self) -> f64;

    /// Parses `"n/d"`, an integer, or (floats only) a decimal literal.
    fn parse_scalar(text: &str) -> Option<Self>;

    /// Equality for exact types; relative tolerance for floats.
    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }
}

fn split_ratio(text: &str) -> Option<(&str, &str)> {
    match text.split_once('/') {
        Some((n, d)) => Some((n.trim(), d.trim())),
        None => Some((text.trim(), "1")),
    }
}

macro_rules! float_scalar {
    ($t:ty, $eps:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_ratio(num: u64, den: u64) -> Self {
                (num as f64 / den as f64) as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn parse_scalar(text: &str) -> Option<Self> {
                let (n, d) = split_ratio(text)?;
                let n: $t = n.parse().ok()?;
                let d: $t = d.parse().ok()?;
                (d != 0.0).then(|| n / d)
            }

            fn approx_eq(&self, other: &Self) -> bool {
                let scale = self.abs().max(other.abs()).max(1.0);
                (self - other).abs() <= $eps * scale
            }
        }
    };
}

float_scalar!(f32, 1e-5);
float_scalar!(f64, 1e-12);

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;

    fn from_ratio(num: u64, den: u64) -> Self {
        Ratio::new(num as i64, den as i64)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_scalar(text: &str) -> Option<Self> {
        let (n, d) = split_ratio(text)?;
        let d: i64 = d.parse().ok()?;
        (d != 0).then_some(())?;
        Some(Ratio::new(n.parse().ok()?, d))
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_scalar(text: &str) -> Option<Self> {
        let (n, d) = split_ratio(text)?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n.parse().ok()?, d))
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}
