//! Exact arithmetic in cyclotomic fields.
//!
//! Every quantity attached to the regular `n`-gon lives in `Q(zeta_{4n})`: its real subfield
//! contains `cos(k pi / n)`, `sin(k pi / n)` and `lambda_n = 2 cot(pi / n)`.

mod cyclotomic;
pub mod numeric;
mod real;

pub use cyclotomic::{cyclo_root, cyclotomic_polynomial, CycloNumber, Field};
pub use real::RealAlg;

/// Arbitrary-precision rational used for coefficients.
pub type Rational = num_rational::BigRational;

impl Field {
    /// `cos(k pi / m)`; requires `2m | N`.
    pub fn cos_pi_frac(&self, k: i64, m: usize) -> RealAlg {
        let z = self.root_of_pi_frac(k, m);
        RealAlg::real_part(&z)
    }

    /// `sin(k pi / m)`; requires `2m | N` and `4 | N`.
    pub fn sin_pi_frac(&self, k: i64, m: usize) -> RealAlg {
        let z = self.root_of_pi_frac(k, m);
        RealAlg::imag_part(&z)
    }

    /// `exp(i k pi / m)` as a power of `zeta_N`.
    fn root_of_pi_frac(&self, k: i64, m: usize) -> CycloNumber {
        let n = self.conductor();
        assert!(n.is_multiple_of(2 * m), "conductor {} does not contain pi/{}", n, m);
        self.root(k * (n / (2 * m)) as i64)
    }
}

/// `cos(pi / n)` in the field of conductor `4n`.
pub fn cos_pi_over(n: usize) -> RealAlg {
    Field::for_polygon(n).cos_pi_frac(1, n)
}

/// `sin(pi / n)` in the field of conductor `4n`.
pub fn sin_pi_over(n: usize) -> RealAlg {
    Field::for_polygon(n).sin_pi_frac(1, n)
}

/// `lambda_n = 2 cot(pi / n) = 2 cos(pi/n) / sin(pi/n)`.
pub fn lambda_n(n: usize) -> RealAlg {
    let c = cos_pi_over(n);
    let s = sin_pi_over(n);
    (&c / &s).scale_int(2)
}

/// Exact sign of a real cyclotomic number.
pub fn sign(x: &RealAlg) -> i32 {
    x.sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cos_pi_over_five_is_root_of_quadratic() {
        let x = cos_pi_over(5);
        let f = x.field().clone();
        // 4x^2 - 2x - 1 = 0
        let p = &(&x * &x).scale_int(4) - &x.scale_int(2) - RealAlg::one(&f);
        assert!(p.is_zero());
        assert_eq!(x.sign(), 1);
        assert_eq!(x.approx(20), "0.80901699437494742410");
    }

    #[test]
    fn sin_pi_over_four_squared() {
        let s = sin_pi_over(4);
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(&s * &s, RealAlg::rational(s.field(), &half));
    }

    #[test]
    fn lambda_five_value() {
        assert_eq!(lambda_n(5).approx(11), "2.7527638409");
        assert_eq!(sign(&lambda_n(7)), 1);
    }

    #[test]
    fn sign_of_zero_and_difference() {
        let f = Field::for_polygon(5);
        assert_eq!(sign(&RealAlg::zero(&f)), 0);
        assert_eq!(sign(&(cos_pi_over(5) - sin_pi_over(5))), 1);
    }

    #[test]
    fn json_roundtrip() {
        let l = lambda_n(9);
        let s = serde_json::to_string(&l).unwrap();
        assert!(s.contains("\"conductor\":36"));
        let back: RealAlg = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn non_real_json_rejected() {
        let f = Field::with_conductor(4);
        let raw = "{\"conductor\":4,\"coeffs\":[\"0\",\"1\"],\"approx\":\"0\"}".to_string();
        assert_eq!(f.degree(), 2);
        assert!(serde_json::from_str::<RealAlg>(&raw).is_err());
    }
}
