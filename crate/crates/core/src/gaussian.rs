//! Exact Gaussian integers `re + im·i` over a signed machine integer.
//!
//! Every spectrum in this crate is a sequence of these. Nothing is ever
//! rounded; moduli are compared as `re² + im²` in the scalar type.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{PrimInt, Signed};

/// Integer scalar usable as the component type of a [`Gaussian`].
pub trait Scalar: PrimInt + Signed + fmt::Debug + fmt::Display + Send + Sync + 'static {}

impl<T> Scalar for T where T: PrimInt + Signed + fmt::Debug + fmt::Display + Send + Sync + 'static {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gaussian<T> {
    pub re: T,
    pub im: T,
}

impl<T: Scalar> Gaussian<T> {
    pub fn new(re: T, im: T) -> Self {
        Gaussian { re, im }
    }

    pub fn zero() -> Self {
        Gaussian::new(T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Gaussian::new(T::one(), T::zero())
    }

    pub fn from_int(re: T) -> Self {
        Gaussian::new(re, T::zero())
    }

    /// `i^k`, with `k` reduced mod 4.
    pub fn i_pow(k: u32) -> Self {
        let (o, z) = (T::one(), T::zero());
        match k & 3 {
            0 => Gaussian::new(o, z),
            1 => Gaussian::new(z, o),
            2 => Gaussian::new(-o, z),
            _ => Gaussian::new(z, -o),
        }
    }

    /// The unit `(-1)^sign · i^k`.
    pub fn unit(sign: bool, k: u32) -> Self {
        Self::i_pow(k + if sign { 2 } else { 0 })
    }

    pub fn conj(self) -> Self {
        Gaussian::new(self.re, -self.im)
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sq(self) -> T {
        self.re * self.re + self.im * self.im
    }

    pub fn is_zero(self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Exact division by a rational integer; `None` unless both parts divide.
    pub fn div_exact(self, d: T) -> Option<Self> {
        if (self.re % d).is_zero() && (self.im % d).is_zero() {
            Some(Gaussian::new(self.re / d, self.im / d))
        } else {
            None
        }
    }

    /// Lossless widening/narrowing into another scalar type, if it fits.
    pub fn cast<U: Scalar>(self) -> Option<Gaussian<U>> {
        Some(Gaussian::new(U::from(self.re)?, U::from(self.im)?))
    }
}

impl<T: Scalar> Add for Gaussian<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Gaussian::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<T: Scalar> Sub for Gaussian<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Gaussian::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<T: Scalar> Mul for Gaussian<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Gaussian::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl<T: Scalar> Neg for Gaussian<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Gaussian::new(-self.re, -self.im)
    }
}

impl<T: Scalar> AddAssign for Gaussian<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: Scalar> SubAssign for Gaussian<T> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<T: Scalar> std::iter::Sum for Gaussian<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Gaussian::zero(), |a, b| a + b)
    }
}

impl<T: Scalar> fmt::Display for Gaussian<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < T::zero() {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}
