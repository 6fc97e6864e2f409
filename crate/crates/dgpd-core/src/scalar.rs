//! Coefficient scalars: exact complex rationals with a float escape hatch.
//!
//! Algebra elements carry exact rational real and imaginary parts for as long
//! as every input is rational; the first transcendental factor (a phase
//! `e^{i r b c}`, say) demotes the whole computation to complex `f64`.
//! Mixing never promotes back. Equality of exact scalars is exact; float
//! comparisons go through [`Scalar::distance`] against a caller-held
//! tolerance.

use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::Zero;

/// Exact rational used throughout for weights and exact coefficients.
/// Desk-scale tables keep numerators and denominators tiny, so `i64`
/// components are ample.

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scalar {
    /// Exact complex rational, stored as (re, im).
    Exact(Rational, Rational),
    /// Complex double float; enters when a transcendental factor appears.
    Approx(Complex64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar::Exact(Rational::from_integer(n), Rational::zero())
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::Exact(r, Rational::zero())
    }

    pub fn from_complex(z: Complex64) -> Self {
        Scalar::Approx(z)
    }

    /// Unit phase `e^{i theta}`. Always approximate.
    pub fn phase(theta: f64) -> Self {
        Scalar::Approx(Complex64::cis(theta))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_, _))
    }

    /// True only for the exact zero. Approximate scalars are never
    /// structurally zero; pruning uses [`Scalar::abs`] against a threshold.
    pub fn is_exact_zero(&self) -> bool {
        match self {
            Scalar::Exact(re, im) => re.is_zero() && im.is_zero(),
            Scalar::Approx(_) => false,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(re, im) => Complex64::new(ratio_to_f64(*re), ratio_to_f64(*im)),
            Scalar::Approx(z) => *z,
        }
    }

    pub fn abs(&self) -> f64 {
        self.to_complex().norm()
    }

    /// Modulus of the difference. Exact pairs short-circuit to 0.0 on exact
    /// equality so no rounding can blur a true match.
    pub fn distance(&self, other: &Scalar) -> f64 {
        match (self, other) {
            (Scalar::Exact(a, b), Scalar::Exact(c, d)) if a == c && b == d => 0.0,
            _ => (self.to_complex() - other.to_complex()).norm(),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(re, im) => Scalar::Exact(*re, -im),
            Scalar::Approx(z) => Scalar::Approx(z.conj()),
        }
    }
}

fn ratio_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a, b), Scalar::Exact(c, d)) => Scalar::Exact(a + c, b + d),
            (x, y) => Scalar::Approx(x.to_complex() + y.to_complex()),
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = *self + rhs;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a, b), Scalar::Exact(c, d)) => {
                Scalar::Exact(a * c - b * d, a * d + b * c)
            }
            (x, y) => Scalar::Approx(x.to_complex() * y.to_complex()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(re, im) => Scalar::Exact(-re, -im),
            Scalar::Approx(z) => Scalar::Approx(-z),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(re, im) => {
                if im.is_zero() {
                    write!(f, "{re}")
                } else {
                    write!(f, "{re}+{im}i")
                }
            }
            Scalar::Approx(z) => write!(f, "{:.6}{:+.6}i", z.re, z.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_stays_exact() {
        let a = Scalar::Exact(Rational::new(1, 2), Rational::new(1, 3));
        let b = Scalar::Exact(Rational::new(1, 3), Rational::new(-1, 2));
        assert!((a + b).is_exact());
        assert!((a * b).is_exact());
        assert_eq!(
            a * b,
            Scalar::Exact(Rational::new(1, 3), Rational::new(-5, 36))
        );
    }

    #[test]
    fn mixing_demotes_to_float() {
        let a = Scalar::from_integer(2);
        let b = Scalar::phase(0.0);
        let c = a * b;
        assert!(!c.is_exact());
        assert!(c.distance(&Scalar::from_integer(2)) < 1e-15);
    }

    #[test]
    fn distance_exact_path_is_sharp() {
        let a = Scalar::Exact(Rational::new(1, 3), Rational::zero());
        let b = Scalar::Exact(Rational::new(1, 3), Rational::zero());
        assert_eq!(a.distance(&b), 0.0);
        let c = Scalar::Exact(Rational::new(1, 3), Rational::new(1, 1_000_000_000));
        assert!(a.distance(&c) > 0.0);
    }
}
