//! Values of `h_λ` at `(1, 0, ..., 0)` and at `1^N`.
//!
//! At `1^N` the value does not depend on `N`. It is available as the defining
//! sum over `λ ⪯ μ`, and through a partial-fraction transformation in `κ`. The
//! latter uses only the `μ` with `μ_1 ≥ k(λ) = λ_1 + ⌊(n+1)/2⌋`. The helpers
//! here also check the degree bound of the numerator polynomial `q_λ`, and the
//! matching vanishing order of the Laurent expansion at `κ = ∞`.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partition::{enumerate, Partition};
use crate::scalar::{
    ensure_pole_free, factorial, format_rational, from_integer, half, int, p_polys, pochhammer,
    pochhammer_partition, pow2, sign, Rational, UniPoly,
};
use crate::symfunc::matrix_b_closed;

fn ensure_tilde(lambda: &Partition) -> Result<()> {
    if lambda.weight() < 2 || !lambda.is_tilde() {
        return Err(Error::Precondition(format!(
            "need λ_1 = λ_2 and |λ| ≥ 2, got {lambda}"
        )));
    }
    Ok(())
}

/// `B(λ,(n)) = (-1)^{n-λ_1} n (n-λ_2-1)! / ∏_{i≥2} λ_i!`, valid for `λ_1 = λ_2`.
pub fn b_to_single_row(lambda: &Partition) -> Result<Rational> {
    ensure_tilde(lambda)?;
    let n = lambda.weight();
    let tail = lambda.tail();
    Ok(sign(i64::from(n - lambda.get(0)))
        * int(n.into())
        * from_integer(factorial(n - lambda.get(1) - 1))
        / from_integer(tail.factorial()))
}

/// `h_λ(1,0,...,0) = 2^{-n} B(λ,(n)) / (n! (κ+1/2)_n N)`.
pub fn h_at_first_unit(lambda: &Partition, nvars: usize, kappa: &Rational) -> Result<Rational> {
    let b = b_to_single_row(lambda)?;
    lambda.ensure_fits(nvars)?;
    let n = lambda.weight();
    ensure_pole_free(kappa, n)?;
    Ok(pow2(-i64::from(n)) * b
        / (from_integer(factorial(n)) * pochhammer(&(kappa + half()), n) * int(nvars as i64)))
}

/// `h_λ(1^N) = 2^{-n} Σ_{λ⪯μ} B(λ,μ)/(μ!(κ+1/2)_μ)`, summed over `μ` with at most `nvars` parts.
pub fn h_at_ones_direct_in(lambda: &Partition, nvars: usize, kappa: &Rational) -> Result<Rational> {
    lambda.ensure_fits(nvars)?;
    let n = lambda.weight();
    ensure_pole_free(kappa, n)?;
    let shifted = kappa + half();
    let mut total = Rational::zero();
    for mu in enumerate(n, nvars, false) {
        if !lambda.preceq(&mu) {
            continue;
        }
        let b = matrix_b_closed(lambda, &mu)?;
        if b.is_zero() {
            continue;
        }
        total += b / (from_integer(mu.factorial()) * pochhammer_partition(&shifted, &mu));
    }
    Ok(total * pow2(-i64::from(n)))
}

/// [`h_at_ones_direct_in`] with `N = l(λ)`.
pub fn h_at_ones_direct(lambda: &Partition, kappa: &Rational) -> Result<Rational> {
    h_at_ones_direct_in(lambda, lambda.len().max(1), kappa)
}

/// `k(λ) = λ_1 + ⌊(n+1)/2⌋`.
pub fn k_of(lambda: &Partition) -> u32 {
    lambda.get(0) + lambda.weight().div_ceil(2)
}

/// The transformation formula
/// `2^{-n}/((κ+1/2)_{k-1} ∏_{i≥2}(κ+1/2)_{λ_i}) · Σ_{λ⪯μ, μ_1≥k} B(λ,μ)/μ! ·
/// Σ_{j=k}^{μ_1} ∏_{i≥2}(1-j+μ_i)_{λ_i-μ_i} (-1)^{j-k} / ((j-k)!(μ_1-j)!(κ-1/2+j))`.
pub fn h_at_ones_residue(lambda: &Partition, kappa: &Rational) -> Result<Rational> {
    ensure_tilde(lambda)?;
    let n = lambda.weight();
    ensure_pole_free(kappa, n)?;
    let k = k_of(lambda);
    let shifted = kappa + half();
    let nvars = lambda.len();
    let tail = lambda.tail();
    let mut sum = Rational::zero();
    for mu in enumerate(n, nvars, false) {
        if mu.get(0) < k || !lambda.preceq(&mu) {
            continue;
        }
        let b = matrix_b_closed(lambda, &mu)?;
        if b.is_zero() {
            continue;
        }
        let mut inner = Rational::zero();
        for j in k..=mu.get(0) {
            let mut prod = Rational::one();
            for i in 1..nvars {
                let base = int(1 - i64::from(j) + i64::from(mu.get(i)));
                prod *= pochhammer(&base, lambda.get(i) - mu.get(i));
            }
            if prod.is_zero() {
                continue;
            }
            let denom = from_integer(factorial(j - k) * factorial(mu.get(0) - j))
                * (kappa - half() + int(j.into()));
            inner += sign(i64::from(j - k)) * prod / denom;
        }
        sum += b / from_integer(mu.factorial()) * inner;
    }
    let prefactor = pow2(-i64::from(n)) / (pochhammer(&shifted, k - 1) * pochhammer_partition(&shifted, &tail));
    Ok(prefactor * sum)
}

/// `(2^{2l} l! (κ+1/2)_{(2l,l)})^{-1}`, the value of `h_{(l,l)}` at `1^N`.
pub fn special_value_ll(l: u32, kappa: &Rational) -> Rational {
    let shape = Partition::new(vec![2 * l, l]).expect("decreasing");
    Rational::one()
        / (pow2(2 * i64::from(l)) * from_integer(factorial(l)) * pochhammer_partition(&(kappa + half()), &shape))
}

/// `(2^{2l} (l-1)! (κ+1/2)_{(2l+1,l,1)})^{-1}`, the value of `h_{(l,l,1)}` at `1^N`.
pub fn special_value_ll1(l: u32, kappa: &Rational) -> Rational {
    assert!(l >= 1);
    let shape = Partition::new(vec![2 * l + 1, l, 1]).expect("decreasing");
    Rational::one()
        / (pow2(2 * i64::from(l)) * from_integer(factorial(l - 1)) * pochhammer_partition(&(kappa + half()), &shape))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Direct,
    Residue,
    Both,
}

/// The value of `h_λ(1^N)` by one or both routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalReport {
    pub lambda: Partition,
    pub kappa: Rational,
    pub direct: Option<Rational>,
    pub residue: Option<Rational>,
    pub matches: Option<bool>,
}

impl EvalReport {
    pub fn compute(lambda: &Partition, kappa: &Rational, method: Method) -> Result<Self> {
        let direct = match method {
            Method::Direct | Method::Both => Some(h_at_ones_direct(lambda, kappa)?),
            Method::Residue => None,
        };
        let residue = match method {
            Method::Residue | Method::Both => Some(h_at_ones_residue(lambda, kappa)?),
            Method::Direct => None,
        };
        let matches = match (&direct, &residue) {
            (Some(d), Some(r)) => Some(d == r),
            _ => None,
        };
        Ok(EvalReport {
            lambda: lambda.clone(),
            kappa: kappa.clone(),
            direct,
            residue,
            matches,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lambda": self.lambda.to_string(),
            "kappa": format_rational(&self.kappa),
            "direct": self.direct.as_ref().map(format_rational),
            "residue": self.residue.as_ref().map(format_rational),
            "match": self.matches,
        })
    }
}

/// Outcome of interpolating `q_λ(κ) = h_λ(1^N) (κ+1/2)_n ∏_{i≥2}(κ+1/2)_{λ_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QReport {
    pub q: UniPoly,
    pub degree: Option<usize>,
    pub bound: i64,
    pub ok: bool,
}

pub fn q_values(lambda: &Partition, kappa: &Rational) -> Result<Rational> {
    let shifted = kappa + half();
    Ok(h_at_ones_direct(lambda, kappa)?
        * pochhammer(&shifted, lambda.weight())
        * pochhammer_partition(&shifted, &lambda.tail()))
}

/// Interpolates `q_λ` at `κ = 1, ..., n-λ_1+1` and checks `deg q_λ ≤ ⌊n/2⌋ - λ_1`.
/// A further node confirms the interpolant, since `n-λ_1` bounds the degree a priori.
pub fn q_degree_check(lambda: &Partition) -> Result<QReport> {
    ensure_tilde(lambda)?;
    let n = lambda.weight();
    let count = (n - lambda.get(0) + 1) as i64;
    let points: Vec<(Rational, Rational)> = (1..=count)
        .map(|k| Ok((int(k), q_values(lambda, &int(k))?)))
        .collect::<Result<_>>()?;
    let q = UniPoly::interpolate(&points)?;
    let extra = int(count + 1);
    let confirmed = q.eval(&extra) == q_values(lambda, &extra)?;
    let bound = i64::from(n / 2) - i64::from(lambda.get(0));
    let degree = q.degree();
    let ok = confirmed && degree.is_none_or(|d| d as i64 <= bound);
    Ok(QReport { q, degree, bound, ok })
}

/// Laurent coefficients `a_n, ..., a_{n+s_max}` of `h_λ(1^N) = Σ_j a_j κ^{-j}` at infinity,
/// from `1/(κ+1/2)_m = κ^{-m} Σ_j p_j(m) (-κ)^{-j}`.
pub fn laurent_coefficients(lambda: &Partition, s_max: usize) -> Result<Vec<Rational>> {
    let n = lambda.weight();
    let p = p_polys(s_max);
    let nvars = lambda.len().max(1);
    let mut total = vec![Rational::zero(); s_max + 1];
    for mu in enumerate(n, nvars, false) {
        if !lambda.preceq(&mu) {
            continue;
        }
        let b = matrix_b_closed(lambda, &mu)?;
        if b.is_zero() {
            continue;
        }
        let mut series = vec![Rational::zero(); s_max + 1];
        series[0] = Rational::one();
        for &part in mu.parts() {
            let m = int(part.into());
            let factor: Vec<Rational> = p.iter().map(|pj| pj.eval(&m)).collect();
            let mut next = vec![Rational::zero(); s_max + 1];
            for (i, x) in series.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (j, y) in factor.iter().enumerate().take(s_max + 1 - i) {
                    next[i + j] += x * y;
                }
            }
            series = next;
        }
        let weight = b / from_integer(mu.factorial());
        for (slot, c) in total.iter_mut().zip(&series) {
            *slot += &weight * c;
        }
    }
    let scale = pow2(-i64::from(n));
    Ok(total
        .into_iter()
        .enumerate()
        .map(|(s, c)| c * &scale * sign(s as i64))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentReport {
    pub required_order: u32,
    pub leading_order: Option<u32>,
    pub interpolated_order: Option<u32>,
    pub ok: bool,
}

/// Checks that the Laurent coefficients of `h_λ(1^N)` vanish below `κ^{-⌊(3n+1)/2⌋}`,
/// and that the first nonzero one sits at `2n - λ_1 - deg q_λ` as the interpolation predicts.
/// Coefficients are computed through `κ^{-(n+j_max)}`.
pub fn laurent_vanishing_check(lambda: &Partition, j_max: usize) -> Result<LaurentReport> {
    ensure_tilde(lambda)?;
    let n = lambda.weight();
    let coeffs = laurent_coefficients(lambda, j_max)?;
    let required_order = (3 * n).div_ceil(2);
    let leading_order = coeffs.iter().position(|c| !c.is_zero()).map(|s| n + s as u32);
    let q = q_degree_check(lambda)?;
    let interpolated_order = q
        .degree
        .map(|d| 2 * n - lambda.get(0) - d as u32);
    let vanishing = coeffs
        .iter()
        .enumerate()
        .take_while(|(s, _)| n + (*s as u32) < required_order)
        .all(|(_, c)| c.is_zero());
    let consistent = match (leading_order, interpolated_order) {
        (Some(a), Some(b)) => a == b,
        (None, Some(b)) => b > n + j_max as u32,
        (_, None) => false,
    };
    Ok(LaurentReport {
        required_order,
        leading_order,
        interpolated_order,
        ok: vanishing && consistent && q.ok,
    })
}
