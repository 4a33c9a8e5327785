//! Exact Gaussian rationals: `re + im*I` with arbitrary-precision rational parts.
//!
//! This is the base field of every computation in the crate. No floating
//! point appears anywhere; a classification claim is only as good as the
//! arithmetic behind it.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of Q(sqrt(-1)), kept in lowest terms by `BigRational`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// `num/den`, panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussianRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// `(re_num/re_den) + (im_num/im_den)*I`.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        assert!(re_den != 0 && im_den != 0, "zero denominator");
        GaussianRational {
            re: BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            im: BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit sqrt(-1).
    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
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
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Field norm `re^2 + im^2` (a nonnegative rational, zero only at zero).
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(GaussianRational {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Euclidean-style integer power (exponents stay tiny here).
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Leading-sign test used by the renderer: negative when the first
    /// nonzero part is negative.
    pub fn is_display_negative(&self) -> bool {
        if !self.re.is_zero() {
            self.re.is_negative()
        } else {
            self.im.is_negative()
        }
    }

    /// Canonical square root in Q(sqrt(-1)), if one exists.
    ///
    /// Of the two roots `±r` the one with `r > -r` (lexicographic on
    /// `(re, im)`) is returned, so `sqrt(1) = 1` and `sqrt(-1) = I`.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.im.is_zero() {
            if self.re.is_positive() {
                let r = rational_sqrt(&self.re)?;
                return Some(GaussianRational {
                    re: r,
                    im: BigRational::zero(),
                });
            }
            let r = rational_sqrt(&(-self.re.clone()))?;
            return Some(GaussianRational {
                re: BigRational::zero(),
                im: r,
            });
        }
        // (p + q*I)^2 = x + y*I forces p^2 = (x + |c|)/2 and q = y / (2p).
        let norm_root = rational_sqrt(&self.norm())?;
        let two = BigRational::from_integer(BigInt::from(2));
        let p2 = (&self.re + &norm_root) / &two;
        let p = rational_sqrt(&p2)?;
        if p.is_zero() {
            return None;
        }
        let q = &self.im / (&two * &p);
        Some(GaussianRational { re: p, im: q })
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer();
    let den = r.denom();
    let num_root = num.sqrt();
    let den_root = den.sqrt();
    if &(&num_root * &num_root) == num && &(&den_root * &den_root) == den {
        Some(BigRational::new(num_root, den_root))
    } else {
        None
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

/// Panics on division by zero; use `checked_div` where zero is reachable.
impl Div for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let imag = |r: &BigRational| -> String {
            if r.is_one() {
                "I".to_string()
            } else {
                format!("{}*I", r)
            }
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                return write!(f, "-{}", imag(&-self.im.clone()));
            }
            return write!(f, "{}", imag(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "{} - {}", self.re, imag(&-self.im.clone()))
        } else {
            write!(f, "{} + {}", self.re, imag(&self.im))
        }
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts the canonical rendering: `0`, `-3/4`, `I`, `-I`, `5/4*I`,
    /// `1/2 + 3/4*I`, `1/2-3/4*I`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::InvalidScalar(s.to_string()));
        }
        // Split into at most two signed terms.
        let mut terms: Vec<String> = Vec::new();
        let mut current = String::new();
        for (idx, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && idx != 0 {
                let prev = compact.as_bytes()[idx - 1] as char;
                if prev != '/' && prev != '*' && prev != '+' && prev != '-' {
                    terms.push(std::mem::take(&mut current));
                }
            }
            current.push(ch);
        }
        terms.push(current);
        if terms.len() > 2 {
            return Err(Error::InvalidScalar(s.to_string()));
        }

        let parse_rat = |t: &str| -> Result<BigRational> {
            let t = t.trim();
            let (num, den) = match t.split_once('/') {
                Some((n, d)) => (n, d),
                None => (t, "1"),
            };
            let num: BigInt = num
                .parse()
                .map_err(|_| Error::InvalidScalar(s.to_string()))?;
            let den: BigInt = den
                .parse()
                .map_err(|_| Error::InvalidScalar(s.to_string()))?;
            if den.is_zero() {
                return Err(Error::InvalidScalar(s.to_string()));
            }
            Ok(BigRational::new(num, den))
        };

        let mut value = GaussianRational::zero();
        for term in terms {
            if term.is_empty() {
                return Err(Error::InvalidScalar(s.to_string()));
            }
            let (body, imaginary) = if let Some(b) = term.strip_suffix("*I") {
                (b.to_string(), true)
            } else if term == "I" || term == "+I" {
                ("1".to_string(), true)
            } else if term == "-I" {
                ("-1".to_string(), true)
            } else {
                (term.clone(), false)
            };
            let r = parse_rat(&body)?;
            let part = if imaginary {
                GaussianRational::new(BigRational::zero(), r)
            } else {
                GaussianRational::new(r, BigRational::zero())
            };
            value = &value + &part;
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> GaussianRational {
        GaussianRational::from_parts(re_num, re_den, im_num, im_den)
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
    }

    #[test]
    fn one_is_identity() {
        let x = g(3, 7, -2, 5);
        assert_eq!(&GaussianRational::one() * &x, x);
        assert_eq!(&x * &GaussianRational::one(), x);
    }

    #[test]
    fn division_example() {
        // (1+I)/(1-I) = I; check by multiplying back: I*(1-I) = 1+I.
        let num = g(1, 1, 1, 1);
        let den = g(1, 1, -1, 1);
        let q = num.checked_div(&den).unwrap();
        assert_eq!(q, GaussianRational::i());
        assert_eq!(&q * &den, num);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let x = GaussianRational::one();
        assert!(matches!(
            x.checked_div(&GaussianRational::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn sqrt_of_units() {
        assert_eq!(
            GaussianRational::from_int(1).sqrt(),
            Some(GaussianRational::one())
        );
        assert_eq!(
            GaussianRational::from_int(-1).sqrt(),
            Some(GaussianRational::i())
        );
        assert_eq!(
            GaussianRational::from_ratio(9, 16).sqrt(),
            Some(GaussianRational::from_ratio(3, 4))
        );
        assert_eq!(GaussianRational::from_int(2).sqrt(), None);
        assert_eq!(GaussianRational::from_int(-2).sqrt(), None);
    }

    #[test]
    fn sqrt_of_mixed_value() {
        // (1+I)^2 = 2I, and the canonical root of 2I has positive real part.
        let c = g(0, 1, 2, 1);
        let r = c.sqrt().unwrap();
        assert_eq!(r, g(1, 1, 1, 1));
        assert_eq!(&r * &r, c);
    }

    #[test]
    fn render_and_parse_round_trip() {
        for v in [
            GaussianRational::zero(),
            GaussianRational::one(),
            GaussianRational::i(),
            -GaussianRational::i(),
            g(-3, 4, 0, 1),
            g(1, 2, 3, 4),
            g(1, 2, -3, 4),
            g(0, 1, 5, 4),
        ] {
            let text = v.to_string();
            let back: GaussianRational = text.parse().unwrap();
            assert_eq!(back, v, "round trip failed for {text}");
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "x", "1//2", "1+2+3", "3/0"] {
            assert!(bad.parse::<GaussianRational>().is_err(), "{bad}");
        }
    }
}
