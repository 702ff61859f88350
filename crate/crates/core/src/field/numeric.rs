//! Fixed-point interval evaluation of cyclotomic numbers.
//!
//! A table holds `cos(2 pi k / N)` as integers scaled by `2^bits` together with a bound on
//! the absolute error of every entry in units of `2^-bits`. Evaluating `sum num_k cos_k`
//! against the accumulated error bound gives a certified enclosure of the real part.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use super::cyclotomic::CycloNumber;

struct CosTable {
    bits: u32,
    cos: Vec<BigInt>,
    err: Vec<u64>,
}

static TABLES: Lazy<Mutex<HashMap<(usize, u32), Arc<CosTable>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn table(conductor: usize, degree: usize, bits: u32) -> Arc<CosTable> {
    let key = (conductor, bits);
    if let Some(t) = TABLES.lock().expect("table cache poisoned").get(&key) {
        return t.clone();
    }
    let t = Arc::new(build_table(conductor, degree, bits));
    TABLES
        .lock()
        .expect("table cache poisoned")
        .insert(key, t.clone());
    t
}

/// `2^bits / m` series for `atan(1/m)`; returns value and error in ulps.
fn atan_inv(m: u64, bits: u32) -> (BigInt, u64) {
    let one = BigInt::one() << bits;
    let m2 = BigInt::from(m * m);
    let mut power = &one / BigInt::from(m);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    let mut terms: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power = &power / &m2;
        k += 1;
        terms += 1;
    }
    (sum, 3 * terms + 2)
}

fn pi_fixed(bits: u32) -> (BigInt, u64) {
    let (a5, e5) = atan_inv(5, bits);
    let (a239, e239) = atan_inv(239, bits);
    (a5 * 16 - a239 * 4, 16 * e5 + 4 * e239)
}

fn mul_fixed(a: &BigInt, b: &BigInt, bits: u32) -> BigInt {
    (a * b) >> bits
}

fn build_table(conductor: usize, degree: usize, bits: u32) -> CosTable {
    let (pi, e_pi) = pi_fixed(bits);
    let theta: BigInt = (&pi * BigInt::from(2)) / BigInt::from(conductor as u64);
    let e_theta = 2 * e_pi / conductor as u64 + 2;

    // Taylor series for cos and sin at theta < 1
    let one = BigInt::one() << bits;
    let mut cos = one.clone();
    let mut sin = theta.clone();
    let mut term = theta.clone();
    let mut k: u64 = 1;
    let mut steps: u64 = 0;
    loop {
        term = mul_fixed(&term, &theta, bits) / BigInt::from(k + 1);
        if term.is_zero() {
            break;
        }
        let sign_neg = k.div_ceil(2) % 2 == 1;
        if (k + 1).is_multiple_of(2) {
            if sign_neg {
                cos -= &term;
            } else {
                cos += &term;
            }
        } else if sign_neg {
            sin -= &term;
        } else {
            sin += &term;
        }
        k += 1;
        steps += 1;
    }
    let e1 = 2 * (e_theta + 3 * steps + 4);

    let mut out_cos = Vec::with_capacity(degree);
    let mut out_err = Vec::with_capacity(degree);
    let (mut re, mut im) = (one.clone(), BigInt::zero());
    for idx in 0..degree {
        out_cos.push(re.clone());
        out_err.push(if idx == 0 { 0 } else { idx as u64 * (e1 + 4) + 8 });
        let nre = mul_fixed(&re, &cos, bits) - mul_fixed(&im, &sin, bits);
        let nim = mul_fixed(&re, &sin, bits) + mul_fixed(&im, &cos, bits);
        re = nre;
        im = nim;
    }
    CosTable {
        bits,
        cos: out_cos,
        err: out_err,
    }
}

/// Scaled real part and its error bound, both in units of `2^-bits / den`.
fn enclosure(x: &CycloNumber, bits: u32) -> (BigInt, BigInt, u32) {
    let t = table(x.conductor(), x.field().degree(), bits);
    let mut sum = BigInt::zero();
    let mut err = BigInt::zero();
    for ((c, v), e) in x.numerators().iter().zip(&t.cos).zip(&t.err) {
        if c.is_zero() {
            continue;
        }
        sum += c * v;
        err += c.abs() * BigInt::from(*e + 1);
    }
    (sum, err, t.bits)
}

/// Certified sign of the real part of `x`.
///
/// The caller guarantees `x` is nonzero as an element of the real subfield, which makes the
/// precision-doubling loop terminate.
pub(crate) fn sign_nonzero(x: &CycloNumber) -> i32 {
    let mut bits = 128u32;
    loop {
        let (sum, err, _) = enclosure(x, bits);
        if sum.abs() > err {
            return if sum.sign() == Sign::Minus { -1 } else { 1 };
        }
        bits *= 2;
        assert!(bits <= 1 << 20, "sign refinement failed to separate from zero");
    }
}

/// Enclosure of the real part as a midpoint with relative accuracy better than `2^-rel_bits`.
fn accurate_value(x: &CycloNumber, rel_bits: u32) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let mut bits = 128u32;
    loop {
        let (sum, err, b) = enclosure(x, bits);
        if sum.abs() > (err << rel_bits) {
            return BigRational::new(sum, x.denominator() << b);
        }
        bits *= 2;
        assert!(bits <= 1 << 20, "approximation refinement diverged");
    }
}

pub(crate) fn approx_f64(x: &CycloNumber) -> f64 {
    accurate_value(x, 64).to_f64().unwrap_or(f64::NAN)
}

/// Decimal rendering of the real part with `digits` significant digits.
pub fn approx_decimal(x: &CycloNumber, digits: usize) -> String {
    let v = accurate_value(x, (digits as f64 * 3.33) as u32 + 16);
    format_significant(&v, digits)
}

pub(crate) fn format_significant(v: &BigRational, digits: usize) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let neg = v.is_negative();
    let a = v.abs();
    let ten = BigInt::from(10);
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e: i64 = {
        let approx = a.numer().bits() as f64 - a.denom().bits() as f64;
        (approx * std::f64::consts::LN_2 / std::f64::consts::LN_10).floor() as i64
    };
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while a < pow10(e) {
        e -= 1;
    }
    while a >= pow10(e + 1) {
        e += 1;
    }
    let scaled = &a / pow10(e - digits as i64 + 1);
    let mut mant = (scaled + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    if mant.to_string().len() > digits {
        mant /= &ten;
        e += 1;
    }
    let s = mant.to_string();
    let body = if (-6..21).contains(&e) {
        if e >= 0 {
            let int_len = e as usize + 1;
            if int_len >= s.len() {
                format!("{}{}", s, "0".repeat(int_len - s.len()))
            } else {
                format!("{}.{}", &s[..int_len], &s[int_len..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), s)
        }
    } else {
        format!("{}.{}e{}", &s[..1], &s[1..], e)
    };
    if neg {
        format!("-{}", body)
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn formats_significant_digits() {
        let r = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
        assert_eq!(format_significant(&r(1, 3), 5), "0.33333");
        assert_eq!(format_significant(&r(-2, 1), 3), "-2.00");
        assert_eq!(format_significant(&r(12345, 1), 3), "12300");
        assert_eq!(format_significant(&r(999999, 1000000), 3), "1.00");
    }

    #[test]
    fn cosine_of_root_is_accurate() {
        let f = Field::with_conductor(20);
        // cos(2 pi / 20) = cos(18 degrees)
        let z = f.root(1);
        let s = approx_decimal(&z, 20);
        assert_eq!(s, "0.95105651629515357212");
    }
}
