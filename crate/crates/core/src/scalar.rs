//! Exact scalars: rationals, Pochhammer symbols, factorials, multinomial
//! coefficients and univariate polynomials over the rationals.
//!
//! Rationals are `num_rational::BigRational`, which is kept in lowest terms
//! with a positive denominator after every operation. Their textual form is
//! `p/q`, or `p` when the denominator is one; the sign sits on the numerator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_integer(value: Integer) -> Rational {
    Rational::from_integer(value)
}

pub fn half() -> Rational {
    frac(1, 2)
}

/// Parses `p/q`, `p` or `-p/q`. A zero denominator is rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    trimmed
        .parse::<Rational>()
        .map_err(|e| Error::InvalidRational(format!("{trimmed:?}: {e}")))
}

pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Rising factorial `(t)_n = t (t+1) ... (t+n-1)`; empty product for `n = 0`.
pub fn pochhammer(t: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut factor = t.clone();
    for _ in 0..n {
        acc *= &factor;
        factor += Rational::one();
    }
    acc
}

/// `(t)_λ = ∏ (t)_{λ_i}` over the parts of `λ`.
pub fn pochhammer_partition(t: &Rational, lambda: &Partition) -> Rational {
    lambda
        .parts()
        .iter()
        .map(|&p| pochhammer(t, p))
        .fold(Rational::one(), |acc, v| acc * v)
}

/// Rejects `kappa` when `(kappa + 1/2)_n` vanishes, i.e. `kappa = 1/2 - j`
/// for some `1 <= j <= n`.
pub fn ensure_pole_free(kappa: &Rational, n: u32) -> Result<()> {
    let shifted = kappa + half();
    if shifted.is_integer() && !shifted.is_positive() {
        let depth = (-shifted.to_integer()).to_u64().unwrap_or(u64::MAX);
        if depth < u64::from(n) {
            return Err(Error::Pole {
                kappa: kappa.clone(),
                factor: format!("(kappa+1/2)_{n}"),
            });
        }
    }
    Ok(())
}

/// Rejects `t` when the Pochhammer symbol `(t)_n` vanishes.
pub fn ensure_pochhammer_nonzero(t: &Rational, n: u32, kappa: &Rational, label: &str) -> Result<()> {
    if t.is_integer() && !t.is_positive() {
        let depth = (-t.to_integer()).to_u64().unwrap_or(u64::MAX);
        if depth < u64::from(n) {
            return Err(Error::Pole {
                kappa: kappa.clone(),
                factor: format!("({label})_{n}"),
            });
        }
    }
    Ok(())
}

pub fn factorial(n: u32) -> Integer {
    (2..=n).fold(Integer::one(), |acc, k| acc * k)
}

/// Binomial coefficient with the conventions used by the transition-matrix
/// formula: zero whenever `n < 0`, `k < 0` or `k > n` (so `C(-1, m) = 0`).
pub fn binomial(n: i64, k: i64) -> Integer {
    if n < 0 || k < 0 || k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Multinomial coefficient `j! / ∏ α_i!`, zero when some `α_i < 0`.
pub fn multinomial(j: u32, alpha: &[i64]) -> Result<Integer> {
    let total: i64 = alpha.iter().sum();
    if total != i64::from(j) {
        return Err(Error::Precondition(format!(
            "multinomial: entries sum to {total}, expected {j}"
        )));
    }
    if alpha.iter().any(|&a| a < 0) {
        return Ok(Integer::zero());
    }
    let denom = alpha
        .iter()
        .fold(Integer::one(), |acc, &a| acc * factorial(a as u32));
    Ok(factorial(j) / denom)
}

pub fn pow2(exp: i64) -> Rational {
    let base = Rational::from_integer(Integer::one() << exp.unsigned_abs());
    if exp >= 0 {
        base
    } else {
        base.recip()
    }
}

pub fn sign(exp: i64) -> Rational {
    if exp.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Dense univariate polynomial over the rationals; coefficient `i` belongs to
/// the `i`-th power. Trailing zeros are always trimmed, so the zero polynomial
/// has no coefficients and no degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut poly = UniPoly { coeffs };
        poly.trim();
        poly
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(value: Rational) -> Self {
        UniPoly::new(vec![value])
    }

    /// The indeterminate itself.
    pub fn identity() -> Self {
        UniPoly::new(vec![Rational::zero(), Rational::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, power: usize) -> Rational {
        self.coeffs.get(power).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Interpolating polynomial through the given nodes (distinct abscissae),
    /// built from Newton divided differences.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Self> {
        let n = points.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if points[i].0 == points[j].0 {
                    return Err(Error::Precondition(format!(
                        "interpolation nodes repeat at {}",
                        points[i].0
                    )));
                }
            }
        }
        let mut table: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &table[i] - &table[i - 1];
                let den = &points[i].0 - &points[i - level].0;
                table[i] = num / den;
            }
        }
        let mut poly = UniPoly::zero();
        for i in (0..n).rev() {
            let shift = UniPoly::new(vec![-points[i].0.clone(), Rational::one()]);
            poly = &(&poly * &shift) + &UniPoly::constant(table[i].clone());
        }
        Ok(poly)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match power {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{power}")?,
            }
        }
        Ok(())
    }
}

/// The polynomials `p_0, ..., p_{j_max}` with
/// `1/(κ+1/2)_n = κ^{-n} Σ_j p_j(n) (-κ)^{-j}`.
///
/// Each `p_j` is fixed by `p_j(0) = 0` and the first-difference recurrence
/// `p_j(n+1) - p_j(n) = (n + 1/2) p_{j-1}(n+1)`; values on `0..=2j` are
/// accumulated from the recurrence and interpolated, since `deg p_j = 2j`.
pub fn p_polys(j_max: usize) -> Vec<UniPoly> {
    let mut polys = vec![UniPoly::constant(Rational::one())];
    for j in 1..=j_max {
        let prev = &polys[j - 1];
        let nodes = 2 * j + 1;
        let mut points = Vec::with_capacity(nodes);
        let mut value = Rational::zero();
        points.push((Rational::zero(), value.clone()));
        for m in 1..nodes {
            let step = int(m as i64 - 1) + half();
            value += step * prev.eval(&int(m as i64));
            points.push((int(m as i64), value.clone()));
        }
        let poly = UniPoly::interpolate(&points).expect("integer nodes are distinct");
        polys.push(poly);
    }
    polys
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&int(5), 0), int(1));
        assert_eq!(pochhammer(&frac(1, 2), 2), frac(3, 4));
        assert_eq!(pochhammer(&frac(3, 2), 1), frac(3, 2));
    }

    #[test]
    fn pochhammer_partition_examples() {
        assert_eq!(pochhammer_partition(&half(), &Partition::empty()), int(1));
        assert_eq!(pochhammer_partition(&half(), &p(&[2, 1])), frac(3, 8));
        assert_eq!(pochhammer_partition(&int(1), &p(&[1, 1])), int(1));
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(2, &[1, 1]).unwrap(), Integer::from(2));
        assert_eq!(multinomial(3, &[2, 1]).unwrap(), Integer::from(3));
        assert_eq!(multinomial(2, &[3, -1]).unwrap(), Integer::zero());
        assert!(multinomial(2, &[1, 2]).is_err());
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(-1, 0), Integer::zero());
        assert_eq!(binomial(-1, 3), Integer::zero());
        assert_eq!(binomial(5, 2), Integer::from(10));
        assert_eq!(binomial(4, 0), Integer::one());
        assert_eq!(binomial(3, 4), Integer::zero());
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(format_rational(&frac(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(format_rational(&frac(0, 5)), "0");
        assert_eq!(parse_rational("-3/2").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational(" 4 ").unwrap(), int(4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn poles_detected() {
        assert!(ensure_pole_free(&frac(-1, 2), 1).is_err());
        assert!(ensure_pole_free(&frac(-3, 2), 1).is_ok());
        assert!(ensure_pole_free(&frac(-3, 2), 2).is_err());
        assert!(ensure_pole_free(&int(0), 10).is_ok());
        assert!(ensure_pole_free(&int(-1), 10).is_ok());
    }

    #[test]
    fn p_polys_known_cases() {
        let polys = p_polys(3);
        assert_eq!(polys[0], UniPoly::constant(int(1)));
        // n^2 / 2
        assert_eq!(polys[1], UniPoly::new(vec![int(0), int(0), half()]));
        // n (n+1) (3n^2 + n - 1) / 24
        let n = UniPoly::identity();
        let n1 = &n + &UniPoly::constant(int(1));
        let quad = UniPoly::new(vec![int(-1), int(1), int(3)]);
        let expected = (&(&n * &n1) * &quad).scale(&frac(1, 24));
        assert_eq!(polys[2], expected);
        // n^2 (n+1)(n+2)(n^2+n-1) / 48
        let n2 = &n + &UniPoly::constant(int(2));
        let quad3 = UniPoly::new(vec![int(-1), int(1), int(1)]);
        let expected3 = (&(&(&(&n * &n) * &n1) * &n2) * &quad3).scale(&frac(1, 48));
        assert_eq!(polys[3], expected3);
    }

    #[test]
    fn p_polys_degree_and_leading_coefficient() {
        let polys = p_polys(6);
        for (j, poly) in polys.iter().enumerate() {
            assert_eq!(poly.degree(), Some(2 * j));
            let expected = from_integer(Integer::one())
                / (pow2(j as i64) * from_integer(factorial(j as u32)));
            assert_eq!(poly.leading_coeff(), expected);
            if j >= 1 {
                assert_eq!(poly.eval(&int(0)), int(0));
            }
        }
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let target = UniPoly::new(vec![frac(1, 3), int(-2), int(0), frac(5, 7)]);
        let pts: Vec<_> = (0..4)
            .map(|i| {
                let x = frac(2 * i - 3, 2);
                let y = target.eval(&x);
                (x, y)
            })
            .collect();
        assert_eq!(UniPoly::interpolate(&pts).unwrap(), target);
    }
}
