use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::field::{CycloNumber, Field, RealAlg};

/// A point or vector in the plane with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: RealAlg,
    pub y: RealAlg,
}

impl Vec2 {
    pub fn new(x: RealAlg, y: RealAlg) -> Vec2 {
        Vec2 { x, y }
    }

    pub fn zero(field: &Field) -> Vec2 {
        Vec2::new(RealAlg::zero(field), RealAlg::zero(field))
    }

    /// Real and imaginary parts of a field element.
    pub fn from_complex(z: &CycloNumber) -> Vec2 {
        Vec2::new(RealAlg::real_part(z), RealAlg::imag_part(z))
    }

    pub fn field(&self) -> &Field {
        self.x.field()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn cross(&self, other: &Vec2) -> RealAlg {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Vec2) -> RealAlg {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn norm_sq(&self) -> RealAlg {
        self.dot(self)
    }

    pub fn scale(&self, k: &RealAlg) -> Vec2 {
        Vec2::new(&self.x * k, &self.y * k)
    }

    pub fn scale_int(&self, k: i64) -> Vec2 {
        Vec2::new(self.x.scale_int(k), self.y.scale_int(k))
    }

    /// Sign-normalised representative of the line through `self`: `y > 0`, or `y = 0` and `x > 0`.
    pub fn normalized_direction(&self) -> Vec2 {
        let s = self.y.sign();
        if s < 0 || (s == 0 && self.x.is_negative()) {
            -self
        } else {
            self.clone()
        }
    }

    /// True when `self` and `other` point in the same direction.
    pub fn same_direction(&self, other: &Vec2) -> bool {
        self.cross(other).is_zero() && self.dot(other).is_positive()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl Add<&Vec2> for &Vec2 {
    type Output = Vec2;
    fn add(self, o: &Vec2) -> Vec2 {
        Vec2::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub<&Vec2> for &Vec2 {
    type Output = Vec2;
    fn sub(self, o: &Vec2) -> Vec2 {
        Vec2::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-&self.x, -&self.y)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        &self + &o
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        &self - &o
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        -&self
    }
}
