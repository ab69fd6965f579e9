use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::ExactError;

/// A point or direction with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RVector(Vec<Rational>);

impl RVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        RVector(vec![Rational::zero(); dim])
    }

    pub fn from_ints<I: Into<BigInt>>(coords: impl IntoIterator<Item = I>) -> Self {
        RVector(coords.into_iter().map(Rational::from_int).collect())
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = RVector::zeros(dim);
        v.0[axis] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    fn check_dim(&self, other: &RVector) -> Result<(), ExactError> {
        if self.dim() != other.dim() {
            return Err(ExactError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn dot(&self, other: &RVector) -> Result<Rational, ExactError> {
        self.check_dim(other)?;
        let mut acc = Rational::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * b);
            }
        }
        Ok(acc)
    }

    pub fn sub(&self, other: &RVector) -> Result<RVector, ExactError> {
        self.check_dim(other)?;
        Ok(RVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn add(&self, other: &RVector) -> Result<RVector, ExactError> {
        self.check_dim(other)?;
        Ok(RVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn scale(&self, factor: &Rational) -> RVector {
        RVector(self.0.iter().map(|a| a * factor).collect())
    }

    /// Appends a coordinate, producing a vector one dimension higher.
    pub fn extended(&self, extra: Rational) -> RVector {
        let mut coords = self.0.clone();
        coords.push(extra);
        RVector(coords)
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer vector `lcm * self`, i.e. the coordinates with denominators cleared.
    pub fn cleared(&self) -> Vec<BigInt> {
        let l = self.denominator_lcm();
        self.0
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect()
    }

    /// Positive multiple of `self` with coprime integer coordinates.
    pub fn primitive(&self) -> Vec<BigInt> {
        primitive_int(self.cleared())
    }
}

impl Index<usize> for RVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Debug for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Divides an integer vector by the gcd of its entries (positive factor only).
pub fn primitive_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

/// Flips the sign of `v` so that its first nonzero entry is positive.
/// Returns whether a flip happened.
pub fn orient_first_positive(v: &mut [BigInt]) -> bool {
    match v.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => {
            for x in v.iter_mut() {
                *x = -&*x;
            }
            true
        }
        _ => false,
    }
}
