//! Dense polynomials over arbitrary-precision integers, q-analogs, and exact
//! evaluation at roots of unity.
//!
//! Evaluation at a primitive d-th root of unity is done by reducing modulo the
//! d-th cyclotomic polynomial. A constant residue is an exact integer value,
//! independent of which primitive root is meant; a non-constant residue means
//! the polynomial does not take a single integer value on that root class and
//! is reported as such rather than approximated.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::{LazyLock, Mutex};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::matching::divisors;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// Division left a nonzero remainder: the dividend is not a polynomial
    /// multiple of the divisor. Carries the offending remainder.
    #[error("inexact polynomial division, remainder {remainder}")]
    InexactDivision { remainder: IntPoly },
    #[error("division by the zero polynomial")]
    DivisionByZero,
}

/// Dense integer polynomial; `coeffs[e]` is the coefficient of `q^e`.
/// Normalized so the last coefficient is nonzero; empty means zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    /// `c * q^e`.
    pub fn monomial(c: BigInt, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c;
        IntPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The value as a constant, if the degree is at most zero.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Evaluation at q = 1: the coefficient sum.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiply by `q^e`.
    fn mul_monomial(&self, e: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    /// Long division. Fails when the divisor is zero or a coefficient step
    /// does not divide (possible only for non-monic divisors).
    pub fn div_rem(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly), PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let db = divisor.coeffs.len() - 1;
        let lead = &divisor.coeffs[db];
        if self.coeffs.len() <= db {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len() - db];
        for i in (0..quot.len()).rev() {
            if rem[db + i].is_zero() {
                continue;
            }
            let (q, r) = rem[db + i].div_rem(lead);
            if !r.is_zero() {
                return Err(PolyError::InexactDivision {
                    remainder: IntPoly::from_coeffs(rem),
                });
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let sub = &q * b;
                rem[i + j] -= sub;
            }
            quot[i] = q;
        }
        Ok((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
    }

    /// Exact quotient; [`PolyError::InexactDivision`] if a remainder is left.
    pub fn exact_div(&self, divisor: &IntPoly) -> Result<IntPoly, PolyError> {
        let (quot, rem) = self.div_rem(divisor)?;
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(PolyError::InexactDivision { remainder: rem })
        }
    }

    /// Remainder modulo a monic divisor; never fails.
    pub fn rem_by_monic(&self, modulus: &IntPoly) -> IntPoly {
        debug_assert!(modulus.coeffs.last().is_some_and(|c| c.is_one()));
        let (_, rem) = self
            .div_rem(modulus)
            .expect("division by a monic polynomial cannot fail");
        rem
    }

    /// Serialize to the `{"coeffs": ["<decimal>", ...]}` JSON form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization cannot fail")
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        IntPoly::from_coeffs(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for IntPoly {
    /// `c0 + c1*q + c2*q^2 + ...` with zero terms omitted; `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct IntPolyJson {
    coeffs: Vec<String>,
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        IntPolyJson {
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = IntPolyJson::deserialize(deserializer)?;
        let coeffs: Result<Vec<BigInt>, _> = raw
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect();
        Ok(IntPoly::from_coeffs(coeffs?))
    }
}

/// The q-integer `[m]_q = 1 + q + ... + q^(m-1)`; zero for m = 0.
pub fn q_int(m: usize) -> IntPoly {
    IntPoly::from_coeffs(vec![BigInt::one(); m])
}

/// Gaussian binomial coefficient as an exact integer polynomial, via the
/// Pascal recurrence `[m r] = [m-1 r-1] + q^r [m-1 r]`.
///
/// Zero when `r < 0` or `r > m`; at q = 1 this is the ordinary binomial.
pub fn q_binomial(m: usize, r: i64) -> IntPoly {
    if r < 0 || r as usize > m {
        return IntPoly::zero();
    }
    let r = r as usize;
    // row[j] holds [m' j] while m' sweeps 0..=m.
    let mut row: Vec<IntPoly> = vec![IntPoly::one()];
    for mp in 1..=m {
        let upto = r.min(mp);
        let mut next: Vec<IntPoly> = Vec::with_capacity(upto + 1);
        for j in 0..=upto {
            let mut entry = if j >= 1 { row[j - 1].clone() } else { IntPoly::zero() };
            if j < row.len() {
                entry = &entry + &row[j].mul_monomial(j);
            }
            next.push(entry);
        }
        row = next;
    }
    row.swap_remove(r)
}

/// Gaussian binomial by the product/quotient form: the product of the top
/// q-integers divided exactly by the product of the bottom ones. An
/// independent route used to cross-check [`q_binomial`].
pub fn q_binomial_product(m: usize, r: i64) -> Result<IntPoly, PolyError> {
    if r < 0 || r as usize > m {
        return Ok(IntPoly::zero());
    }
    let r = r as usize;
    let mut numerator = IntPoly::one();
    let mut denominator = IntPoly::one();
    for i in 1..=r {
        numerator = &numerator * &q_int(m - r + i);
        denominator = &denominator * &q_int(i);
    }
    numerator.exact_div(&denominator)
}

static CYCLOTOMIC_MEMO: LazyLock<Mutex<HashMap<usize, IntPoly>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The d-th cyclotomic polynomial, by dividing `q^d - 1` by the cyclotomic
/// polynomials of the proper divisors of d. Results are memoized.
pub fn cyclotomic(d: usize) -> IntPoly {
    assert!(d >= 1, "cyclotomic index must be positive");
    let mut memo = CYCLOTOMIC_MEMO.lock().expect("cyclotomic memo poisoned");
    cyclotomic_rec(d, &mut memo)
}

fn cyclotomic_rec(d: usize, memo: &mut HashMap<usize, IntPoly>) -> IntPoly {
    if let Some(p) = memo.get(&d) {
        return p.clone();
    }
    let mut dividend = IntPoly::monomial(BigInt::one(), d);
    dividend = &dividend - &IntPoly::one();
    let mut proper_product = IntPoly::one();
    for e in divisors(d) {
        if e < d {
            proper_product = &proper_product * &cyclotomic_rec(e, memo);
        }
    }
    let phi = dividend
        .exact_div(&proper_product)
        .expect("proper cyclotomic factors divide q^d - 1");
    memo.insert(d, phi.clone());
    phi
}

/// The counting polynomial for matchings with `k` crossings (k = 1, 2, 3).
///
/// k = 1: `[2n choose n-2]_q`; k = 2: `[n+3]_q [2n choose n-3]_q / [2]_q`;
/// k = 3: `[n+5 choose 2]_q [2n choose n-4]_q / [3]_q + [2n choose n-3]_q`.
/// The quotients are taken product-first because the single q-integer ratios
/// are not by themselves polynomial; an inexact division would falsify the
/// polynomiality of the formula and is propagated, never masked.
pub fn csp_polynomial(n: usize, k: usize) -> Result<IntPoly, PolyError> {
    assert!((1..=3).contains(&k), "counting polynomials exist for k = 1, 2, 3");
    let n_i = n as i64;
    match k {
        1 => Ok(q_binomial(2 * n, n_i - 2)),
        2 => {
            let product = &q_int(n + 3) * &q_binomial(2 * n, n_i - 3);
            product.exact_div(&q_int(2))
        }
        _ => {
            let product = &q_binomial(n + 5, 2) * &q_binomial(2 * n, n_i - 4);
            let leading = product.exact_div(&q_int(3))?;
            Ok(&leading + &q_binomial(2 * n, n_i - 3))
        }
    }
}

/// Exact value of a polynomial at the root of unity `e^(2*pi*i*j/N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootOfUnityValue {
    /// Order of the root: `N / gcd(N, j)`.
    pub modulus_d: usize,
    /// The polynomial reduced modulo the `modulus_d`-th cyclotomic polynomial.
    pub residue: IntPoly,
    /// Present exactly when the residue is constant; then it is the exact
    /// value at every primitive root of that order.
    pub as_integer: Option<BigInt>,
}

/// Reduce `f` modulo the cyclotomic polynomial of the order of `e^(2*pi*i*j/N)`.
pub fn eval_at_unity(f: &IntPoly, big_n: usize, j: i64) -> RootOfUnityValue {
    assert!(big_n >= 1);
    let j = j.rem_euclid(big_n as i64) as usize;
    // gcd(N, 0) = N, so j = 0 reduces modulo the first cyclotomic polynomial,
    // i.e. evaluates at 1.
    let d = big_n / big_n.gcd(&j);
    let residue = f.rem_by_monic(&cyclotomic(d));
    let as_integer = residue.as_constant();
    RootOfUnityValue {
        modulus_d: d,
        residue,
        as_integer,
    }
}

/// Floating-point Horner evaluation at `e^(2*pi*i*j/N)`; a cross-check for
/// [`eval_at_unity`], not an exact result.
pub fn eval_complex(f: &IntPoly, big_n: usize, j: i64) -> Complex64 {
    let angle = 2.0 * std::f64::consts::PI * (j as f64) / (big_n as f64);
    let point = Complex64::from_polar(1.0, angle);
    let mut acc = Complex64::new(0.0, 0.0);
    for c in f.coeffs().iter().rev() {
        let c = c.to_f64().expect("coefficient out of float range");
        acc = acc * point + Complex64::new(c, 0.0);
    }
    acc
}

/// Euler's totient, as the degree the d-th cyclotomic polynomial must have.
pub fn euler_phi(d: usize) -> usize {
    let mut result = d;
    let mut m = d;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Sign summary of a coefficient list: the minimum coefficient.
pub fn min_coefficient(f: &IntPoly) -> BigInt {
    f.coeffs()
        .iter()
        .min()
        .cloned()
        .unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64_coeffs(coeffs)
    }

    #[test]
    fn q_int_basics() {
        assert!(q_int(0).is_zero());
        assert_eq!(q_int(1), IntPoly::one());
        assert_eq!(q_int(4), poly(&[1, 1, 1, 1]));
        assert_eq!(q_int(4).to_string(), "1 + 1*q + 1*q^2 + 1*q^3");
    }

    #[test]
    fn q_int_at_minus_one() {
        for m in 0..=50 {
            let v = eval_at_unity(&q_int(m), 2, 1);
            let expected = if m == 0 {
                0
            } else if m % 2 == 1 {
                1
            } else {
                0
            };
            assert_eq!(v.as_integer, Some(BigInt::from(expected)), "m={m}");
        }
    }

    #[test]
    fn q_int_at_cube_roots() {
        for m in 1..=50 {
            let v = eval_at_unity(&q_int(m), 3, 1);
            match m % 3 {
                0 => assert_eq!(v.as_integer, Some(BigInt::zero()), "m={m}"),
                1 => assert_eq!(v.as_integer, Some(BigInt::one()), "m={m}"),
                _ => {
                    assert_eq!(v.as_integer, None, "m={m}");
                    assert_eq!(v.residue, poly(&[1, 1]), "m={m}");
                }
            }
        }
    }

    #[test]
    fn even_q_int_halves_evaluate_to_half() {
        for m in (2..=50).step_by(2) {
            let half = q_int(m).exact_div(&q_int(2)).unwrap();
            let v = eval_at_unity(&half, 2, 1);
            assert_eq!(v.as_integer, Some(BigInt::from(m / 2)), "m={m}");
        }
    }

    #[test]
    fn q_int_thirds_evaluate_to_third() {
        for m in (3..=51).step_by(3) {
            let third = q_int(m).exact_div(&q_int(3)).unwrap();
            for j in [1, 2] {
                let v = eval_at_unity(&third, 3, j);
                assert_eq!(v.as_integer, Some(BigInt::from(m / 3)), "m={m} j={j}");
            }
        }
    }

    #[test]
    fn q_binomial_small_values() {
        assert_eq!(q_binomial(2, 1), poly(&[1, 1]));
        assert_eq!(q_binomial(4, 2), poly(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(14, 5).eval_at_one(), BigInt::from(2002));
        assert!(q_binomial(4, -1).is_zero());
        assert!(q_binomial(4, 5).is_zero());
        assert_eq!(q_binomial(4, 0), IntPoly::one());
    }

    #[test]
    fn q_binomial_symmetry_and_degree() {
        for m in 0..=30 {
            for r in 0..=m {
                let a = q_binomial(m, r as i64);
                assert_eq!(a, q_binomial(m, (m - r) as i64), "m={m} r={r}");
                assert_eq!(a.degree(), Some(r * (m - r)), "m={m} r={r}");
            }
        }
    }

    #[test]
    fn two_q_binomial_routes_agree() {
        for m in 0..=12 {
            for r in -1..=(m as i64 + 1) {
                assert_eq!(q_binomial(m, r), q_binomial_product(m, r).unwrap());
            }
        }
    }

    #[test]
    fn multiplication_and_division() {
        assert_eq!(&poly(&[1, 1]) * &poly(&[1, 0, 1]), poly(&[1, 1, 1, 1]));
        let quotient = poly(&[-1, 0, 0, 0, 1]).exact_div(&poly(&[-1, 1])).unwrap();
        assert_eq!(quotient, poly(&[1, 1, 1, 1]));
        let err = poly(&[1, 0, 1]).exact_div(&poly(&[1, 1])).unwrap_err();
        assert_eq!(
            err,
            PolyError::InexactDivision {
                remainder: poly(&[2])
            }
        );
        assert_eq!(
            poly(&[1]).exact_div(&IntPoly::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(cyclotomic(1), poly(&[-1, 1]));
        assert_eq!(cyclotomic(2), poly(&[1, 1]));
        assert_eq!(cyclotomic(3), poly(&[1, 1, 1]));
        assert_eq!(cyclotomic(6), poly(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), poly(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_degrees_and_products() {
        for big_n in 1..=200 {
            let mut product = IntPoly::one();
            let mut degree_sum = 0;
            for d in crate::matching::divisors(big_n) {
                let phi = cyclotomic(d);
                assert_eq!(phi.degree(), Some(euler_phi(d)), "d={d}");
                degree_sum += euler_phi(d);
                product = &product * &phi;
            }
            assert_eq!(degree_sum, big_n);
            let mut expected = IntPoly::monomial(BigInt::one(), big_n);
            expected = &expected - &IntPoly::one();
            assert_eq!(product, expected, "N={big_n}");
        }
    }

    #[test]
    fn counting_polynomials_at_one() {
        assert_eq!(
            csp_polynomial(7, 1).unwrap().eval_at_one(),
            BigInt::from(2002)
        );
        assert_eq!(
            csp_polynomial(5, 2).unwrap().eval_at_one(),
            BigInt::from(180)
        );
        assert_eq!(
            csp_polynomial(4, 3).unwrap().eval_at_one(),
            BigInt::from(20)
        );
        assert_eq!(csp_polynomial(3, 3).unwrap(), IntPoly::one());
    }

    #[test]
    fn counting_polynomials_are_integral() {
        for n in 3..=30 {
            for k in 1..=3 {
                let f = csp_polynomial(n, k).unwrap_or_else(|e| panic!("n={n} k={k}: {e}"));
                assert!(!f.is_zero(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn unity_evaluation_examples() {
        let f = csp_polynomial(7, 1).unwrap();
        assert_eq!(eval_at_unity(&f, 14, 7).as_integer, Some(BigInt::zero()));
        let f = csp_polynomial(6, 1).unwrap();
        assert_eq!(eval_at_unity(&f, 12, 6).as_integer, Some(BigInt::from(15)));
        assert_eq!(
            eval_at_unity(&f, 12, 0).as_integer,
            Some(f.eval_at_one())
        );
        assert_eq!(eval_at_unity(&f, 12, 12).modulus_d, 1);
        assert_eq!(eval_at_unity(&f, 12, -3).modulus_d, 4);
    }

    #[test]
    fn complex_evaluation_cross_checks() {
        let near = |z: Complex64, x: f64| (z - Complex64::new(x, 0.0)).norm() < 1e-9;
        assert!(near(eval_complex(&q_int(3), 2, 1), 1.0));
        assert!(near(eval_complex(&q_int(4), 2, 1), 0.0));
        assert!(near(eval_complex(&q_int(6), 3, 1), 0.0));

        for n in 3..=10 {
            for k in 1..=3 {
                let f = csp_polynomial(n, k).unwrap();
                for j in 1..=2 * n as i64 {
                    if let Some(exact) = eval_at_unity(&f, 2 * n, j).as_integer {
                        let float = eval_complex(&f, 2 * n, j);
                        let exact = exact.to_f64().unwrap();
                        assert!(
                            (float - Complex64::new(exact, 0.0)).norm() < 1e-6,
                            "n={n} k={k} j={j}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let f = q_binomial(4, 2);
        assert_eq!(f.to_json(), "{\"coeffs\":[\"1\",\"1\",\"2\",\"1\",\"1\"]}");
        let back: IntPoly = serde_json::from_str(&f.to_json()).unwrap();
        assert_eq!(back, f);
    }

    proptest! {
        #[test]
        fn product_then_exact_division_round_trips(
            a in prop::collection::vec(-9i64..=9, 0..8),
            b in prop::collection::vec(-9i64..=9, 1..8),
        ) {
            let a = IntPoly::from_i64_coeffs(&a);
            let b = IntPoly::from_i64_coeffs(&b);
            prop_assume!(!b.is_zero());
            let product = &a * &b;
            prop_assert_eq!(product.exact_div(&b).unwrap(), a);
        }

        #[test]
        fn display_omits_zero_terms(c0 in -5i64..=5, c2 in -5i64..=5) {
            let f = IntPoly::from_i64_coeffs(&[c0, 0, c2]);
            let text = f.to_string();
            prop_assert!(!text.contains("0*q"));
            if c0 != 0 && c2 != 0 {
                prop_assert_eq!(text, format!("{c0} + {c2}*q^2"));
            }
        }
    }
}
