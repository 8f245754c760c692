use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A Gaussian rational `re + im·i` with exact arithmetic.
///
/// `BigRational` keeps both parts reduced, so structural equality is value
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Coefficient {
    re: BigRational,
    im: BigRational,
}

impl Coefficient {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Coefficient { re, im }
    }

    pub fn zero() -> Self {
        Coefficient::default()
    }

    pub fn one() -> Self {
        Coefficient::from_integer(1)
    }

    pub fn i() -> Self {
        Coefficient::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Coefficient::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num / den` as a real coefficient. Panics on `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Coefficient::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(re: BigRational) -> Self {
        Coefficient::new(re, BigRational::zero())
    }

    /// Exact binary value of a finite float; `None` for NaN or infinities.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Coefficient::from_rational)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Coefficient::new(self.re.clone(), -self.im.clone())
    }

    pub fn mul_i(&self) -> Self {
        Coefficient::new(-self.im.clone(), self.re.clone())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Coefficient::new(&self.re * r, &self.im * r)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// The real part as a float, or an error carrying the coefficient when
    /// the imaginary part is nonzero.
    pub fn to_real_f64(&self) -> crate::Result<f64> {
        if !self.is_real() {
            return Err(crate::Error::NonRealCoefficient(self.to_string()));
        }
        Ok(self.re.to_f64().unwrap_or(f64::NAN))
    }

    /// Sign used when printing the coefficient as a leading `+`/`-`.
    pub(crate) fn is_negative_for_display(&self) -> bool {
        if self.im.is_zero() {
            self.re.is_negative()
        } else if self.re.is_zero() {
            self.im.is_negative()
        } else {
            false
        }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Coefficient {
    /// Magnitude text for printing after a sign has been emitted. `None`
    /// means "unit", which is elided when other factors follow.
    pub(crate) fn unsigned_text(&self) -> Option<String> {
        if self.im.is_zero() {
            let a = self.re.abs();
            if a.is_one() {
                None
            } else {
                Some(fmt_rational(&a))
            }
        } else if self.re.is_zero() {
            let b = self.im.abs();
            if b.is_one() {
                Some("i".to_string())
            } else {
                Some(format!("{}*i", fmt_rational(&b)))
            }
        } else {
            let (sign, b) = if self.im.is_negative() {
                ("-", -self.im.clone())
            } else {
                ("+", self.im.clone())
            };
            let imag = if b.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", fmt_rational(&b))
            };
            Some(format!("({} {} {})", fmt_rational(&self.re), sign, imag))
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative_for_display() {
            write!(f, "-")?;
        }
        match self.unsigned_text() {
            Some(t) => write!(f, "{t}"),
            None => write!(f, "1"),
        }
    }
}

impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        Coefficient::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: Coefficient) -> Coefficient {
        &self + &rhs
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        Coefficient::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: Coefficient) -> Coefficient {
        &self - &rhs
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        Coefficient::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: Coefficient) -> Coefficient {
        &self * &rhs
    }
}

/// Division in the field of Gaussian rationals. Panics on division by zero.
impl Div for &Coefficient {
    type Output = Coefficient;
    fn div(self, rhs: &Coefficient) -> Coefficient {
        let den = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        assert!(!den.is_zero(), "division by zero coefficient");
        let num = self * &rhs.conj();
        Coefficient::new(num.re / &den, num.im / &den)
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let a = Coefficient::new(BigRational::new(1.into(), 2.into()), BigRational::one());
        let b = Coefficient::from_ratio(2, 3);
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(Coefficient::i().mul_i(), Coefficient::from_integer(-1));
        assert_eq!(&Coefficient::i() * &Coefficient::i(), Coefficient::from_integer(-1));
        assert!((&a - &a).is_zero());
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn reduced_form_is_canonical() {
        assert_eq!(Coefficient::from_ratio(2, 4), Coefficient::from_ratio(1, 2));
        assert_eq!(Coefficient::from_ratio(-3, -6), Coefficient::from_ratio(1, 2));
    }

    #[test]
    fn exact_float_conversion() {
        assert_eq!(Coefficient::from_f64(0.5).unwrap(), Coefficient::from_ratio(1, 2));
        assert!(Coefficient::from_f64(f64::NAN).is_none());
        assert_eq!(Coefficient::from_f64(-0.25).unwrap().to_real_f64().unwrap(), -0.25);
    }

    #[test]
    fn display() {
        assert_eq!(Coefficient::from_ratio(-3, 4).to_string(), "-3/4");
        assert_eq!((-Coefficient::i()).to_string(), "-i");
        let z = Coefficient::new(BigRational::one(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(z.to_string(), "(1 - 1/2*i)");
    }

    #[test]
    fn non_real_rejected() {
        assert!(Coefficient::i().to_real_f64().is_err());
    }
}
