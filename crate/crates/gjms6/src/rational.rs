//! Small helpers around arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q0() -> Q {
    Q::zero()
}

pub fn q1() -> Q {
    Q::one()
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// "p/q" form, or "p" for integers.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn qpow(x: &Q, k: u32) -> Q {
    let mut r = Q::one();
    for _ in 0..k {
        r *= x;
    }
    r
}

pub fn qabs(x: &Q) -> Q {
    x.abs()
}

/// Best rational approximation with bounded denominator is not needed here; this
/// converts an f64 exactly (dyadic) for seeding exact computations from floats.
pub fn from_f64_exact(x: f64) -> Option<Q> {
    Q::from_float(x)
}

pub fn factorial(k: u32) -> Q {
    let mut r = Q::one();
    for i in 2..=k {
        r *= qi(i as i64);
    }
    r
}

/// Γ(a + m)/Γ(a) as an exact rational (rising factorial), m ≥ 0.
pub fn rising(a: &Q, m: u32) -> Q {
    let mut r = Q::one();
    let mut x = a.clone();
    for _ in 0..m {
        r *= &x;
        x += Q::one();
    }
    r
}

/// Γ(b)/Γ(a) for b − a a non-negative integer.
pub fn gamma_ratio(b: &Q, a: &Q) -> Option<Q> {
    let d = b - a;
    if !d.is_integer() || d.is_negative() {
        return None;
    }
    let m = d.to_integer().to_u32()?;
    Some(rising(a, m))
}

/// A value that is exact where the computation allows it.
#[derive(Clone, Debug, PartialEq)]
pub enum Num {
    Exact(Q),
    Float(f64),
}

impl Num {
    pub fn to_f64(&self) -> f64 {
        match self {
            Num::Exact(x) => to_f64(x),
            Num::Float(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Num::Exact(_))
    }

    pub fn exact(&self) -> Option<&Q> {
        match self {
            Num::Exact(x) => Some(x),
            Num::Float(_) => None,
        }
    }

    /// "p/q" for exact values, a decimal string otherwise.
    pub fn render(&self) -> String {
        match self {
            Num::Exact(x) => fmt_q(x),
            Num::Float(x) => fmt_f64(*x),
        }
    }
}

/// Fixed scientific format so reports do not depend on float printing heuristics.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{:.12e}", x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(fmt_q(&q(6, 4)), "3/2");
        assert_eq!(fmt_q(&q(-8, 4)), "-2");
        assert_eq!(fmt_q(&q0()), "0");
    }

    #[test]
    fn gamma_ratios_at_half_integers() {
        // Γ(9/2)/Γ(5/2) = (5/2)(7/2)
        assert_eq!(gamma_ratio(&q(9, 2), &q(5, 2)).unwrap(), q(35, 4));
        assert_eq!(gamma_ratio(&qi(6), &qi(1)).unwrap(), qi(120));
        assert!(gamma_ratio(&qi(1), &qi(2)).is_none());
    }
}
