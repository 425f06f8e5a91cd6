//! Scalar backends for the coefficient field ℂ.
//!
//! Two concrete backends share one arithmetic contract:
//!
//! * [`GaussRat`]: Gaussian rationals (exact), used for every algebraic identity.
//! * [`Complex64`]: complex doubles, used by the integration engine.
//!
//! Both are `num_complex::Complex<T>` instantiations, so the field operations
//! come from `num-complex`; this module only adds conversion, exponentials
//! where they exist, and the textual form.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Exact complex scalar: real and imaginary parts are arbitrary-precision rationals.
pub type GaussRat = Complex<BigRational>;

/// Which scalar backend an algebra uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Float => f.write_str("float"),
        }
    }
}

pub trait Scalar:
    Clone + fmt::Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    const BACKEND: Backend;

    /// Widening conversion from the exact backend.
    fn from_gauss(q: &GaussRat) -> Self;

    fn from_i64(n: i64) -> Self;

    fn to_c64(&self) -> Complex64;

    /// `exp` of a general scalar; `None` when the backend cannot represent it.
    fn exp_checked(&self) -> Option<Self>;

    fn fmt_scalar(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;

    /// True when the scalar prints as a single signed term (no inner `+`).
    fn is_simple(&self) -> bool;
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn gauss(re: BigRational, im: BigRational) -> GaussRat {
    Complex::new(re, im)
}

pub fn gauss_int(n: i64) -> GaussRat {
    Complex::new(BigRational::from_integer(n.into()), BigRational::zero())
}

pub fn gauss_frac(n: i64, d: i64) -> GaussRat {
    Complex::new(rat(n, d), BigRational::zero())
}

pub fn gauss_i() -> GaussRat {
    Complex::new(BigRational::zero(), BigRational::one())
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl Scalar for GaussRat {
    const BACKEND: Backend = Backend::Exact;

    fn from_gauss(q: &GaussRat) -> Self {
        q.clone()
    }

    fn from_i64(n: i64) -> Self {
        gauss_int(n)
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn exp_checked(&self) -> Option<Self> {
        if self.is_zero() {
            Some(Self::one())
        } else {
            None
        }
    }

    fn fmt_scalar(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (&self.re, &self.im);
        if im.is_zero() {
            return fmt_rational(re, f);
        }
        if !re.is_zero() {
            fmt_rational(re, f)?;
            if im.is_positive() {
                f.write_str("+")?;
            }
        }
        if im.is_one() {
            f.write_str("i")
        } else if *im == -BigRational::one() {
            f.write_str("-i")
        } else {
            fmt_rational(im, f)?;
            f.write_str("*i")
        }
    }

    fn is_simple(&self) -> bool {
        self.re.is_zero() || self.im.is_zero()
    }
}

impl Scalar for Complex64 {
    const BACKEND: Backend = Backend::Float;

    fn from_gauss(q: &GaussRat) -> Self {
        q.to_c64()
    }

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn exp_checked(&self) -> Option<Self> {
        Some(self.exp())
    }

    fn fmt_scalar(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            return write!(f, "{}", self.re);
        }
        if self.re != 0.0 {
            write!(f, "{}", self.re)?;
            if self.im >= 0.0 {
                f.write_str("+")?;
            }
        }
        write!(f, "{}*i", self.im)
    }

    fn is_simple(&self) -> bool {
        self.re == 0.0 || self.im == 0.0
    }
}

/// Display adapter for any scalar.
pub struct ShowScalar<'a, S: Scalar>(pub &'a S);

impl<S: Scalar> fmt::Display for ShowScalar<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_scalar(f)
    }
}

/// Total order on exact points: real part first, then imaginary part.
pub fn cmp_gauss(a: &GaussRat, b: &GaussRat) -> std::cmp::Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

/// Exact conversion of an `f64` that is known to be a dyadic rational.
pub fn gauss_from_f64(x: f64) -> Option<GaussRat> {
    BigRational::from_float(x).map(|re| Complex::new(re, BigRational::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_printing() {
        assert_eq!(ShowScalar(&gauss_frac(3, 2)).to_string(), "3/2");
        assert_eq!(ShowScalar(&gauss_int(-4)).to_string(), "-4");
        let z = gauss(rat(1, 2), rat(-1, 3));
        assert_eq!(ShowScalar(&z).to_string(), "1/2-1/3*i");
        assert_eq!(ShowScalar(&gauss_i()).to_string(), "i");
        assert_eq!(ShowScalar(&(-gauss_i())).to_string(), "-i");
    }

    #[test]
    fn exact_division() {
        let a = gauss(rat(1, 1), rat(1, 1));
        let b = gauss(rat(1, 1), rat(-1, 1));
        assert_eq!(a.clone() / b, gauss_i());
        assert_eq!(Scalar::exp_checked(&GaussRat::zero()), Some(GaussRat::one()));
        assert_eq!(Scalar::exp_checked(&a), None);
    }

    #[test]
    fn ordering() {
        use std::cmp::Ordering::*;
        assert_eq!(cmp_gauss(&gauss_int(0), &gauss_int(1)), Less);
        assert_eq!(cmp_gauss(&gauss_i(), &gauss_int(0)), Greater);
    }
}
