use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use super::numeric;

/// Shared data for the cyclotomic field of a fixed conductor.
pub struct FieldCtx {
    conductor: usize,
    degree: usize,
    /// `pow_red[k]` is `x^k mod Phi_N` for `0 <= k < N`.
    pow_red: Vec<Vec<BigInt>>,
    /// `cos(2 pi k / N)` for `0 <= k < degree`.
    cos_f64: Vec<f64>,
}

impl FieldCtx {
    fn new(conductor: usize) -> FieldCtx {
        assert!(conductor >= 1, "conductor must be positive");
        let phi = cyclotomic_polynomial(conductor);
        let degree = phi.len() - 1;
        let mut pow_red = Vec::with_capacity(conductor);
        let mut cur = vec![BigInt::zero(); degree];
        if degree > 0 {
            cur[0] = BigInt::one();
        }
        for _ in 0..conductor {
            pow_red.push(cur.clone());
            // multiply by x and reduce with the monic relation
            let top = cur[degree - 1].clone();
            for j in (1..degree).rev() {
                cur[j] = cur[j - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for j in 0..degree {
                    cur[j] -= &top * &phi[j];
                }
            }
        }
        let cos_f64 = (0..degree)
            .map(|k| (2.0 * std::f64::consts::PI * k as f64 / conductor as f64).cos())
            .collect();
        FieldCtx {
            conductor,
            degree,
            pow_red,
            cos_f64,
        }
    }
}

static FIELDS: Lazy<Mutex<HashMap<usize, Arc<FieldCtx>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Handle to the cyclotomic field `Q(zeta_N)`.
///
/// Handles are cheap to clone; all handles of one conductor share their tables.
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl Field {
    /// The field `Q(zeta_N)`.
    pub fn with_conductor(conductor: usize) -> Field {
        let mut map = FIELDS.lock().expect("field cache poisoned");
        let ctx = map
            .entry(conductor)
            .or_insert_with(|| Arc::new(FieldCtx::new(conductor)))
            .clone();
        Field(ctx)
    }

    /// The field of conductor `4n`, which contains `i`, `cos(pi/n)` and `sin(pi/n)`.
    pub fn for_polygon(n: usize) -> Field {
        Field::with_conductor(4 * n)
    }

    pub fn conductor(&self) -> usize {
        self.0.conductor
    }

    /// `phi(N)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub(crate) fn cos_f64(&self) -> &[f64] {
        &self.0.cos_f64
    }

    pub fn zero(&self) -> CycloNumber {
        CycloNumber {
            field: self.clone(),
            num: vec![BigInt::zero(); self.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(&self) -> CycloNumber {
        self.int(1)
    }

    pub fn int(&self, k: i64) -> CycloNumber {
        self.rational(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn rational(&self, q: &BigRational) -> CycloNumber {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = q.numer().clone();
        CycloNumber::normalized(self.clone(), num, q.denom().clone())
    }

    /// `zeta_N^k`, reduced.
    pub fn root(&self, k: i64) -> CycloNumber {
        let n = self.conductor() as i64;
        let e = k.rem_euclid(n) as usize;
        CycloNumber {
            field: self.clone(),
            num: self.0.pow_red[e].clone(),
            den: BigInt::one(),
        }
    }

    /// Builds a number from rational coefficients in the power basis.
    pub fn from_coeffs(&self, coeffs: &[BigRational]) -> CycloNumber {
        assert_eq!(coeffs.len(), self.degree(), "coefficient count must equal phi(N)");
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        CycloNumber::normalized(self.clone(), num, den)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor()
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.conductor())
    }
}

/// An element of `Q(zeta_N)` stored as `num / den` in the power basis `1, z, .., z^(phi-1)`.
///
/// The representation is canonical: `den > 0` and `gcd(num.., den) = 1`, so equality and
/// hashing are coefficient-wise.
#[derive(Clone)]
pub struct CycloNumber {
    field: Field,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNumber {
    fn normalized(field: Field, mut num: Vec<BigInt>, mut den: BigInt) -> CycloNumber {
        debug_assert!(!den.is_zero());
        if num.iter().all(Zero::is_zero) {
            return CycloNumber {
                field,
                num,
                den: BigInt::one(),
            };
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den = &den / &g;
        }
        CycloNumber { field, num, den }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn conductor(&self) -> usize {
        self.field.conductor()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Coefficients in the power basis as reduced rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if this number lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_field(&self, other: &CycloNumber) {
        assert_eq!(
            self.conductor(),
            other.conductor(),
            "mixing numbers of different cyclotomic fields"
        );
    }

    pub fn add(&self, other: &CycloNumber) -> CycloNumber {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &CycloNumber) -> CycloNumber {
        self.combine(other, true)
    }

    fn combine(&self, other: &CycloNumber, subtract: bool) -> CycloNumber {
        self.check_field(other);
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if subtract { a - b } else { a + b })
                .collect();
            return CycloNumber::normalized(self.field.clone(), num, self.den.clone());
        }
        let l = self.den.lcm(&other.den);
        let fa = &l / &self.den;
        let fb = &l / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let (x, y) = (a * &fa, b * &fb);
                if subtract {
                    x - y
                } else {
                    x + y
                }
            })
            .collect();
        CycloNumber::normalized(self.field.clone(), num, l)
    }

    pub fn neg(&self) -> CycloNumber {
        CycloNumber {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &CycloNumber) -> CycloNumber {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return self.field.zero();
        }
        let deg = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * deg - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = prod[..deg].to_vec();
        for (k, c) in prod.iter().enumerate().skip(deg) {
            if c.is_zero() {
                continue;
            }
            for (slot, r) in num.iter_mut().zip(&self.field.0.pow_red[k]) {
                if !r.is_zero() {
                    *slot += c * r;
                }
            }
        }
        CycloNumber::normalized(self.field.clone(), num, &self.den * &other.den)
    }

    pub fn scale(&self, q: &BigRational) -> CycloNumber {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        CycloNumber::normalized(self.field.clone(), num, &self.den * q.denom())
    }

    pub fn scale_int(&self, k: i64) -> CycloNumber {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn pow(&self, mut e: u32) -> CycloNumber {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Image under complex conjugation `zeta -> zeta^-1`.
    pub fn conj(&self) -> CycloNumber {
        let n = self.conductor();
        let deg = self.field.degree();
        let mut num = vec![BigInt::zero(); deg];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (n - k) % n;
            for (slot, r) in num.iter_mut().zip(&self.field.0.pow_red[e]) {
                if !r.is_zero() {
                    *slot += c * r;
                }
            }
        }
        CycloNumber::normalized(self.field.clone(), num, self.den.clone())
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Multiplicative inverse, `None` for zero.
    ///
    /// Solves `self * y = 1` as a linear system over `Q` in the power basis.
    pub fn inverse(&self) -> Option<CycloNumber> {
        if self.is_zero() {
            return None;
        }
        let deg = self.field.degree();
        // column j of the multiplication matrix is self * x^j
        let cols: Vec<Vec<BigRational>> = (0..deg)
            .map(|j| self.mul(&self.field.root(j as i64)).coeffs())
            .collect();
        let mut m: Vec<Vec<BigRational>> = (0..deg)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..deg).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..deg {
            let pivot = (col..deg).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, pivot);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..deg {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=deg {
                        let delta = &f * &m[col][c];
                        m[r][c] -= delta;
                    }
                }
            }
        }
        let sol: Vec<BigRational> = m.into_iter().map(|row| row[deg].clone()).collect();
        Some(self.field.from_coeffs(&sol))
    }

    /// Fast floating-point evaluation of the real part with an error bound, or `None`
    /// when the coefficients do not fit comfortably in `f64`.
    pub(crate) fn real_part_f64(&self) -> Option<(f64, f64)> {
        let den = self.den.to_f64()?;
        if !den.is_finite() || den == 0.0 {
            return None;
        }
        let mut acc = 0.0f64;
        let mut mag = 0.0f64;
        for (c, cs) in self.num.iter().zip(self.field.cos_f64()) {
            if c.is_zero() {
                continue;
            }
            let cf = c.to_f64()?;
            if !cf.is_finite() || cf.abs() > 1e15 {
                return None;
            }
            acc += cf * cs;
            mag += cf.abs();
        }
        let err = (mag * 4.0 * f64::EPSILON * (self.num.len() as f64 + 2.0)) / den;
        Some((acc / den, err))
    }

    /// Floating-point approximation of the real part.
    pub fn to_f64(&self) -> f64 {
        match self.real_part_f64() {
            Some((v, _)) => v,
            None => numeric::approx_f64(self),
        }
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor() && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloNumber {}

impl Hash for CycloNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.conductor().hash(state);
        self.den.hash(state);
        self.num.hash(state);
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "(")?;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*z^{}", c, k)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")/{} [N={}]", self.den, self.conductor())
    }
}

/// Integer coefficients (low to high) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    // x^n - 1 divided by every Phi_d with d a proper divisor of n
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::from(-1);
    p[n] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = exact_div_monic(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut q = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// Primitive root of unity constructor: `zeta_N^k` reduced modulo `Phi_N`.
pub fn cyclo_root(conductor: usize, k: i64) -> CycloNumber {
    Field::with_conductor(conductor).root(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        let as_i = |v: Vec<BigInt>| v.iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(as_i(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(as_i(cyclotomic_polynomial(20)), vec![1, 0, -1, 0, 1, 0, -1, 0, 1]);
    }

    #[test]
    fn root_identities() {
        let i = cyclo_root(4, 1);
        assert_eq!(i.mul(&i), Field::with_conductor(4).int(-1));
        let z = cyclo_root(20, 1);
        assert!(z.pow(20).is_one());
        assert_eq!(cyclo_root(20, 10), Field::with_conductor(20).int(-1));
        assert!(cyclo_root(20, 0).is_one());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::with_conductor(36);
        let a = f.root(1).add(&f.int(3)).sub(&f.root(7).scale_int(2));
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_one());
        assert!(f.zero().inverse().is_none());
    }

    #[test]
    fn conjugation_is_involution() {
        let f = Field::with_conductor(28);
        let a = f.root(3).add(&f.root(5).scale_int(-4));
        assert_eq!(a.conj().conj(), a);
        assert!(a.add(&a.conj()).is_real());
    }
}
