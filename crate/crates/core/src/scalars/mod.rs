//! The exact scalar tower: Gaussian rationals, multivariate polynomials over
//! them, and the quadratic extension ring for `sqrt(-1 - a^2)`.

pub mod ext;
pub mod gauss;
pub mod poly;

pub use ext::ExtensionElement;
pub use gauss::GaussianRational;
pub use poly::{Monomial, Polynomial};

/// Ring operations the multivector code needs, implemented by every level of
/// the scalar tower. All values are immutable; operations are pure.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Scalar for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl Scalar for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl Scalar for ExtensionElement {
    fn zero() -> Self {
        ExtensionElement::zero()
    }
    fn one() -> Self {
        ExtensionElement::one()
    }
    fn is_zero(&self) -> bool {
        ExtensionElement::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}
