use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::vector::{orient_first_positive, primitive_int};
use super::{RVector, Rational};
use crate::error::ExactError;

/// The affine hyperplane `{x : normal . x = offset}`.
///
/// Always stored canonically: the normal is a primitive integer vector whose
/// first nonzero coordinate is positive, and the offset is rescaled to match.
/// `below` means `normal . x < offset`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Hyperplane {
    #[serde(rename = "direction")]
    normal: RVector,
    offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: RVector, offset: Rational) -> Result<Self, ExactError> {
        if normal.is_zero() {
            return Err(ExactError::DegenerateSpan);
        }
        let l = normal.denominator_lcm();
        let cleared = normal.cleared();
        let mut prim = primitive_int(cleared.clone());
        // cleared = g * prim for some positive g
        let idx = prim
            .iter()
            .position(|x| x != &BigInt::from(0))
            .expect("nonzero");
        let g = Rational::new(cleared[idx].clone(), prim[idx].clone())?;
        let flipped = orient_first_positive(&mut prim);
        let mut offset = &(&offset * &Rational::from_int(l)) / &g;
        if flipped {
            offset = -offset;
        }
        Ok(Hyperplane {
            normal: RVector::from_ints(prim),
            offset,
        })
    }

    /// The hyperplane orthogonal to an integer direction at an offset given in
    /// the same scale as `direction . x`.
    pub fn from_direction(direction: &[BigInt], offset: Rational) -> Result<Self, ExactError> {
        Hyperplane::new(RVector::from_ints(direction.iter().cloned()), offset)
    }

    pub fn normal(&self) -> &RVector {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// Sign of `normal . p - offset`.
    pub fn side(&self, p: &RVector) -> Result<i32, ExactError> {
        Ok((&self.normal.dot(p)? - &self.offset).signum())
    }

    pub fn with_offset(&self, offset: Rational) -> Hyperplane {
        Hyperplane {
            normal: self.normal.clone(),
            offset,
        }
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}.x = {}", self.normal, self.offset)
    }
}
