use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclotomic::{CycloNumber, Field};
use super::numeric;

/// A real element of a cyclotomic field: a `CycloNumber` fixed by complex conjugation.
///
/// Ordering is exact. Zero is detected from the canonical form; the sign of a nonzero
/// value comes from interval evaluation with doubling precision.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RealAlg(CycloNumber);

impl RealAlg {
    /// Wraps `x`, returning `None` when it is not conjugation-fixed.
    pub fn new(x: CycloNumber) -> Option<RealAlg> {
        if x.is_real() {
            Some(RealAlg(x))
        } else {
            None
        }
    }

    /// Real part `(x + conj x) / 2`.
    pub fn real_part(x: &CycloNumber) -> RealAlg {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        RealAlg(x.add(&x.conj()).scale(&half))
    }

    /// Imaginary part `(x - conj x) / 2i`.
    pub fn imag_part(x: &CycloNumber) -> RealAlg {
        let f = x.field();
        assert!(f.conductor().is_multiple_of(4), "imaginary part needs i in the field");
        let minus_i = f.root(3 * f.conductor() as i64 / 4);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        RealAlg(x.sub(&x.conj()).mul(&minus_i).scale(&half))
    }

    pub fn zero(field: &Field) -> RealAlg {
        RealAlg(field.zero())
    }

    pub fn one(field: &Field) -> RealAlg {
        RealAlg(field.one())
    }

    pub fn int(field: &Field, k: i64) -> RealAlg {
        RealAlg(field.int(k))
    }

    pub fn rational(field: &Field, q: &BigRational) -> RealAlg {
        RealAlg(field.rational(q))
    }

    pub fn field(&self) -> &Field {
        self.0.field()
    }

    pub fn as_cyclo(&self) -> &CycloNumber {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Exact sign in `{-1, 0, 1}`.
    pub fn sign(&self) -> i32 {
        if self.0.is_zero() {
            return 0;
        }
        if let Some((v, err)) = self.0.real_part_f64() {
            if v.abs() > err {
                return if v > 0.0 { 1 } else { -1 };
            }
        }
        numeric::sign_nonzero(&self.0)
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> RealAlg {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Option<RealAlg> {
        self.0.inverse().map(RealAlg)
    }

    pub fn pow(&self, e: u32) -> RealAlg {
        RealAlg(self.0.pow(e))
    }

    pub fn scale_int(&self, k: i64) -> RealAlg {
        RealAlg(self.0.scale_int(k))
    }

    pub fn scale(&self, q: &BigRational) -> RealAlg {
        RealAlg(self.0.scale(q))
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.0.to_rational()
    }

    /// Positive integer value, if this number is one.
    pub fn to_positive_integer(&self) -> Option<u64> {
        use num_traits::{Signed, ToPrimitive};
        let q = self.to_rational()?;
        if q.is_integer() && q.is_positive() {
            q.to_integer().to_u64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// Decimal approximation with `digits` significant digits.
    pub fn approx(&self, digits: usize) -> String {
        numeric::approx_decimal(&self.0, digits)
    }
}

impl PartialOrd for RealAlg {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealAlg {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (self - other).sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&RealAlg> for &RealAlg {
            type Output = RealAlg;
            fn $method(self, rhs: &RealAlg) -> RealAlg {
                RealAlg(self.0.$inner(&rhs.0))
            }
        }
        impl $trait<RealAlg> for RealAlg {
            type Output = RealAlg;
            fn $method(self, rhs: RealAlg) -> RealAlg {
                RealAlg(self.0.$inner(&rhs.0))
            }
        }
        impl $trait<&RealAlg> for RealAlg {
            type Output = RealAlg;
            fn $method(self, rhs: &RealAlg) -> RealAlg {
                RealAlg(self.0.$inner(&rhs.0))
            }
        }
        impl $trait<RealAlg> for &RealAlg {
            type Output = RealAlg;
            fn $method(self, rhs: RealAlg) -> RealAlg {
                RealAlg(self.0.$inner(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl Div<&RealAlg> for &RealAlg {
    type Output = RealAlg;
    fn div(self, rhs: &RealAlg) -> RealAlg {
        let inv = rhs.recip().expect("division by zero");
        self * &inv
    }
}

impl Div<RealAlg> for RealAlg {
    type Output = RealAlg;
    fn div(self, rhs: RealAlg) -> RealAlg {
        &self / &rhs
    }
}

impl Neg for &RealAlg {
    type Output = RealAlg;
    fn neg(self) -> RealAlg {
        RealAlg(self.0.neg())
    }
}

impl Neg for RealAlg {
    type Output = RealAlg;
    fn neg(self) -> RealAlg {
        RealAlg(self.0.neg())
    }
}

impl fmt::Debug for RealAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.approx(12))
    }
}

impl fmt::Display for RealAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.approx(20))
    }
}

#[derive(Serialize, Deserialize)]
struct RealAlgJson {
    conductor: usize,
    coeffs: Vec<String>,
    #[serde(default)]
    approx: Option<String>,
}

impl Serialize for RealAlg {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RealAlgJson {
            conductor: self.0.conductor(),
            coeffs: self.0.coeffs().iter().map(|c| c.to_string()).collect(),
            approx: Some(self.approx(20)),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealAlg {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<RealAlg, D::Error> {
        let raw = RealAlgJson::deserialize(d)?;
        if raw.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let field = Field::with_conductor(raw.conductor);
        if raw.coeffs.len() != field.degree() {
            return Err(D::Error::custom(format!(
                "expected {} coefficients, found {}",
                field.degree(),
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| c.parse::<BigRational>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        RealAlg::new(field.from_coeffs(&coeffs))
            .ok_or_else(|| D::Error::custom("coefficients do not describe a real number"))
    }
}
