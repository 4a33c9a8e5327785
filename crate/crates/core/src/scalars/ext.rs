//! The quadratic extension ring Q(sqrt(-1))[a][s] / (s^2 + a^2 + 1).
//!
//! Elements are pairs `p0 + p1*s` of polynomials in the single variable `a`
//! (index 0); every product is reduced by `s^2 -> -(1 + a^2)`. This is the
//! exact habitat of `sqrt(-1 - a^2)` in the one-parameter families, and the
//! only extension the solver ever needs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalars::gauss::GaussianRational;
use crate::scalars::poly::Polynomial;

/// Index of the family parameter `a` inside extension-ring polynomials.
pub const PARAM_VAR: usize = 0;

/// `s^2` reduces to this: `-(1 + a^2)`.
pub fn s_squared() -> Polynomial {
    -&(&Polynomial::one() + &(&Polynomial::var(PARAM_VAR) * &Polynomial::var(PARAM_VAR)))
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExtensionElement {
    p0: Polynomial,
    p1: Polynomial,
}

impl ExtensionElement {
    pub fn new(p0: Polynomial, p1: Polynomial) -> Self {
        debug_assert!(
            p0.support_vars().iter().all(|&v| v == PARAM_VAR)
                && p1.support_vars().iter().all(|&v| v == PARAM_VAR),
            "extension elements are polynomials in `a` only"
        );
        ExtensionElement { p0, p1 }
    }

    pub fn zero() -> Self {
        ExtensionElement::default()
    }

    pub fn one() -> Self {
        ExtensionElement::new(Polynomial::one(), Polynomial::zero())
    }

    pub fn from_gauss(c: GaussianRational) -> Self {
        ExtensionElement::new(Polynomial::constant(c), Polynomial::zero())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        ExtensionElement::new(p, Polynomial::zero())
    }

    /// The family parameter `a`.
    pub fn a() -> Self {
        ExtensionElement::new(Polynomial::var(PARAM_VAR), Polynomial::zero())
    }

    /// The adjoined square root `s`.
    pub fn s() -> Self {
        ExtensionElement::new(Polynomial::zero(), Polynomial::one())
    }

    pub fn parts(&self) -> (&Polynomial, &Polynomial) {
        (&self.p0, &self.p1)
    }

    pub fn is_zero(&self) -> bool {
        self.p0.is_zero() && self.p1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.p1.is_zero() && self.p0.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_gauss(&self) -> Option<&GaussianRational> {
        if self.p1.is_zero() {
            self.p0.as_constant()
        } else {
            None
        }
    }

    /// Evaluates at `a = alpha`, `s = sigma`. Callers pick `sigma` with
    /// `sigma^2 = -(1 + alpha^2)` when they want a ring homomorphism.
    pub fn evaluate(&self, alpha: &GaussianRational, sigma: &GaussianRational) -> GaussianRational {
        let point = std::slice::from_ref(alpha);
        &self.p0.evaluate(point) + &(&self.p1.evaluate(point) * sigma)
    }

    pub fn is_display_negative(&self) -> bool {
        let lead_negative = |p: &Polynomial| {
            p.leading()
                .map(|(_, c)| c.is_display_negative())
                .unwrap_or(false)
        };
        if !self.p0.is_zero() {
            lead_negative(&self.p0)
        } else {
            lead_negative(&self.p1)
        }
    }
}

impl Add for &ExtensionElement {
    type Output = ExtensionElement;
    fn add(self, rhs: &ExtensionElement) -> ExtensionElement {
        ExtensionElement {
            p0: &self.p0 + &rhs.p0,
            p1: &self.p1 + &rhs.p1,
        }
    }
}

impl Sub for &ExtensionElement {
    type Output = ExtensionElement;
    fn sub(self, rhs: &ExtensionElement) -> ExtensionElement {
        ExtensionElement {
            p0: &self.p0 - &rhs.p0,
            p1: &self.p1 - &rhs.p1,
        }
    }
}

impl Mul for &ExtensionElement {
    type Output = ExtensionElement;
    fn mul(self, rhs: &ExtensionElement) -> ExtensionElement {
        let cross = &(&self.p1 * &rhs.p1) * &s_squared();
        ExtensionElement {
            p0: &(&self.p0 * &rhs.p0) + &cross,
            p1: &(&self.p0 * &rhs.p1) + &(&self.p1 * &rhs.p0),
        }
    }
}

impl Neg for &ExtensionElement {
    type Output = ExtensionElement;
    fn neg(self) -> ExtensionElement {
        ExtensionElement {
            p0: -&self.p0,
            p1: -&self.p1,
        }
    }
}

impl fmt::Display for ExtensionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |_: usize| "a".to_string();
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut pieces: Vec<String> = Vec::new();
        if !self.p0.is_zero() {
            pieces.push(self.p0.text(&name));
        }
        if !self.p1.is_zero() {
            let s_part = if self.p1 == Polynomial::one() {
                "s".to_string()
            } else if self.p1 == -&Polynomial::one() {
                "-s".to_string()
            } else {
                let t = self.p1.text(&name);
                if t.contains(' ') {
                    format!("({t})*s")
                } else {
                    format!("{t}*s")
                }
            };
            pieces.push(s_part);
        }
        let mut out = String::new();
        for (i, piece) in pieces.iter().enumerate() {
            if i == 0 {
                out.push_str(piece);
            } else if let Some(rest) = piece.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(piece);
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_times_s_is_the_defining_relation() {
        let s = ExtensionElement::s();
        assert_eq!(&s * &s, ExtensionElement::from_poly(s_squared()));
    }

    #[test]
    fn conjugate_product() {
        // (a + s)(a - s) = a^2 - s^2 = a^2 + 1 + a^2 = 2a^2 + 1.
        let a = ExtensionElement::a();
        let s = ExtensionElement::s();
        let lhs = &(&a + &s) * &(&a - &s);
        let expected = &(&Polynomial::var(PARAM_VAR) * &Polynomial::var(PARAM_VAR))
            .scale(&GaussianRational::from_int(2))
            + &Polynomial::one();
        assert_eq!(lhs, ExtensionElement::from_poly(expected));
    }

    #[test]
    fn one_is_identity() {
        let x = &(&ExtensionElement::a() * &ExtensionElement::s())
            + &ExtensionElement::from_gauss(GaussianRational::from_ratio(3, 7));
        assert_eq!(&ExtensionElement::one() * &x, x);
        assert_eq!(&x * &ExtensionElement::one(), x);
    }

    #[test]
    fn evaluation_respects_the_relation() {
        // At a = 0 the relation forces sigma^2 = -1, so sigma = ±I embeds
        // the ring into the Gaussian rationals.
        let i = GaussianRational::i();
        let zero = GaussianRational::zero();
        let x = &ExtensionElement::a() + &ExtensionElement::s();
        let y = &ExtensionElement::one() - &ExtensionElement::s();
        for sigma in [i.clone(), -&i] {
            let lhs = (&x * &y).evaluate(&zero, &sigma);
            let rhs = &x.evaluate(&zero, &sigma) * &y.evaluate(&zero, &sigma);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(ExtensionElement::s().to_string(), "s");
        assert_eq!((-&ExtensionElement::s()).to_string(), "-s");
        assert_eq!(ExtensionElement::a().to_string(), "a");
        let mixed = &ExtensionElement::a() - &ExtensionElement::s();
        assert_eq!(mixed.to_string(), "a - s");
    }
}
