//! Symmetric polynomials in the monomial basis, the `e_1`-expansion
//! coefficients `⟨λ|ν⟩`, the modified basis `m̃_λ = e_1^{λ_1-λ_2} m_{(λ_2,λ_2,λ_3,...)}`
//! and the transition matrices between the two bases.
//!
//! `A(μ,λ)` is the coefficient of `m_μ` in `m̃_λ`, and `B = A^{-1}` expresses
//! `m_λ` in the modified basis. Both are unipotent and upper triangular in the
//! canonical label order. `B` is available two ways: by exact inversion of `A`
//! and by a closed formula, entry by entry. The two are independent and are
//! compared in the tests.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::partition::{enumerate, Partition};
use crate::scalar::{binomial, factorial, from_integer, multinomial, sign, Rational};

/// Homogeneous symmetric polynomial `Σ c_λ m_λ`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    degree: u32,
    terms: BTreeMap<Partition, Rational>,
}

impl SymPoly {
    pub fn zero(degree: u32) -> Self {
        SymPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(lambda: Partition) -> Self {
        let mut p = SymPoly::zero(lambda.weight());
        p.terms.insert(lambda, Rational::one());
        p
    }

    /// `m_()`, the constant polynomial 1.
    pub fn one() -> Self {
        SymPoly::monomial(Partition::empty())
    }

    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Partition, Rational)>) -> Result<Self> {
        let mut p = SymPoly::zero(degree);
        for (lambda, c) in terms {
            p.add_term(lambda, c)?;
        }
        Ok(p)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.terms.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, lambda: Partition, c: Rational) -> Result<()> {
        if lambda.weight() != self.degree {
            return Err(Error::WeightMismatch {
                left: lambda.to_string(),
                left_weight: lambda.weight(),
                right: format!("degree-{} polynomial", self.degree),
                right_weight: self.degree,
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        let entry = self.terms.entry(lambda).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn add(&self, other: &SymPoly) -> Result<SymPoly> {
        let mut out = self.clone();
        for (lambda, c) in &other.terms {
            out.add_term(lambda.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> SymPoly {
        if factor.is_zero() {
            return SymPoly::zero(self.degree);
        }
        SymPoly {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * factor))
                .collect(),
        }
    }

    /// Longest key, or zero for the zero polynomial.
    pub fn max_length(&self) -> usize {
        self.terms.keys().map(Partition::len).max().unwrap_or(0)
    }

    /// Evaluates `Σ c_λ m_λ(point)`.
    pub fn eval_at(&self, point: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (lambda, c) in &self.terms {
            let mut value = Rational::zero();
            for arrangement in distinct_arrangements(lambda, point.len()) {
                let mut term = Rational::one();
                for (x, &e) in point.iter().zip(&arrangement) {
                    if e > 0 {
                        term *= num_traits::pow(x.clone(), e as usize);
                    }
                }
                value += term;
            }
            total += c * value;
        }
        total
    }
}

/// Every distinct rearrangement of `nu` padded with zeros to `len` entries;
/// empty when `nu` has more than `len` parts.
pub fn distinct_arrangements(nu: &Partition, len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    bounded_arrangements(nu, len, |_, _| true, |a| out.push(a.to_vec()));
    out
}

/// Enumerates distinct rearrangements of `nu` padded to `len`, skipping any
/// prefix for which `allow(position, value)` fails.
fn bounded_arrangements(
    nu: &Partition,
    len: usize,
    allow: impl Fn(usize, u32) -> bool,
    mut visit: impl FnMut(&[u32]),
) {
    if nu.len() > len {
        return;
    }
    let mut counts: Vec<(u32, usize)> = nu.multiplicities().into_iter().collect();
    if len > nu.len() {
        counts.push((0, len - nu.len()));
    }
    let mut current = Vec::with_capacity(len);
    fn recurse(
        counts: &mut [(u32, usize)],
        len: usize,
        current: &mut Vec<u32>,
        allow: &dyn Fn(usize, u32) -> bool,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if current.len() == len {
            visit(current);
            return;
        }
        let pos = current.len();
        for k in 0..counts.len() {
            let (value, left) = counts[k];
            if left == 0 || !allow(pos, value) {
                continue;
            }
            counts[k].1 -= 1;
            current.push(value);
            recurse(counts, len, current, allow, visit);
            current.pop();
            counts[k].1 += 1;
        }
    }
    recurse(&mut counts, len, &mut current, &allow, &mut visit);
}

/// `⟨λ|ν⟩`, the coefficient of `m_λ` in `e_1^j m_ν` with `j = |λ| - |ν|`:
/// the sum of multinomials `C(j; λ - σ)` over distinct rearrangements `σ` of `ν`.
pub fn e1_coeff(lambda: &Partition, nu: &Partition) -> Result<Rational> {
    if lambda.weight() < nu.weight() {
        return Err(Error::WeightMismatch {
            left: lambda.to_string(),
            left_weight: lambda.weight(),
            right: nu.to_string(),
            right_weight: nu.weight(),
        });
    }
    Ok(e1_coeff_or_zero(lambda, nu))
}

/// As [`e1_coeff`], but zero when `|λ| < |ν|`.
pub(crate) fn e1_coeff_or_zero(lambda: &Partition, nu: &Partition) -> Rational {
    if lambda.weight() < nu.weight() || !nu.is_contained_in(lambda) {
        return Rational::zero();
    }
    let j = lambda.weight() - nu.weight();
    let parts = lambda.parts();
    let mut total = crate::scalar::Integer::zero();
    bounded_arrangements(
        nu,
        lambda.len(),
        |pos, value| value <= parts[pos],
        |sigma| {
            let alpha: Vec<i64> = parts
                .iter()
                .zip(sigma)
                .map(|(&l, &s)| i64::from(l) - i64::from(s))
                .collect();
            total += multinomial(j, &alpha).expect("entries sum to j");
        },
    );
    from_integer(total)
}

/// `e_1^j · f` in the monomial basis, dropping partitions with more than `nvars` parts.
pub fn e1_pow_mul(j: u32, f: &SymPoly, nvars: usize) -> SymPoly {
    let degree = f.degree() + j;
    let mut out = SymPoly::zero(degree);
    if j == 0 {
        for (nu, c) in f.terms() {
            if nu.len() <= nvars {
                out.add_term(nu.clone(), c.clone()).expect("same degree");
            }
        }
        return out;
    }
    let targets = enumerate(degree, nvars, false);
    for (nu, c) in f.terms() {
        for lambda in targets.iter().filter(|l| nu.is_contained_in(l)) {
            let coeff = e1_coeff_or_zero(lambda, nu);
            out.add_term(lambda.clone(), coeff * c).expect("same degree");
        }
    }
    out
}

/// `(λ_2, λ_2, λ_3, ...)`.
pub fn mtilde_core(lambda: &Partition) -> Partition {
    let second = lambda.get(1);
    let mut parts = vec![second];
    parts.extend(lambda.parts().iter().skip(1));
    Partition::new(parts).expect("weakly decreasing by construction")
}

/// `m̃_λ` in the monomial basis.
pub fn mtilde(lambda: &Partition, nvars: usize) -> Result<SymPoly> {
    lambda.ensure_fits(nvars)?;
    let power = lambda.get(0) - lambda.get(1);
    Ok(e1_pow_mul(power, &SymPoly::monomial(mtilde_core(lambda)), nvars))
}

/// `A(μ,λ)` over `P_n^(N)` in canonical order: column `λ` holds `m̃_λ`.
pub fn matrix_a(n: u32, nvars: usize) -> RatMatrix {
    let labels = enumerate(n, nvars, false);
    let mut a = RatMatrix::square_zeros(labels.clone());
    for (j, lambda) in labels.iter().enumerate() {
        let column = mtilde(lambda, nvars).expect("label fits");
        for (i, mu) in labels.iter().enumerate() {
            a.set(i, j, column.coeff(mu));
        }
    }
    a
}

/// `B` as the exact inverse of [`matrix_a`].
pub fn matrix_b_by_inversion(n: u32, nvars: usize) -> RatMatrix {
    matrix_a(n, nvars)
        .inverse()
        .expect("A is unipotent triangular")
}

/// Closed form of `B(μ,λ)`:
/// `(-1)^{λ_1-μ_1} { C(λ_1-μ_2, μ_1-μ_2) ⟨μ'|λ'⟩ + C(λ_1-μ_2-1, μ_1-μ_2) ⟨μ''|λ'⟩ }`
/// with `μ' = (μ_2, μ_3, ...)`, `μ'' = (μ_2-1, μ_3, ...)⁺`, `λ' = (λ_2, λ_3, ...)`.
pub fn matrix_b_closed(mu: &Partition, lambda: &Partition) -> Result<Rational> {
    if mu.weight() != lambda.weight() {
        return Err(Error::WeightMismatch {
            left: mu.to_string(),
            left_weight: mu.weight(),
            right: lambda.to_string(),
            right_weight: lambda.weight(),
        });
    }
    let (l1, m1, m2) = (
        i64::from(lambda.get(0)),
        i64::from(mu.get(0)),
        i64::from(mu.get(1)),
    );
    let lambda_tail = lambda.tail();
    let mu_tail = mu.tail();
    let mut value = from_integer(binomial(l1 - m2, m1 - m2)) * e1_coeff_or_zero(&mu_tail, &lambda_tail);
    if m2 > 0 {
        let mut shifted: Vec<u32> = mu_tail.parts().to_vec();
        shifted[0] -= 1;
        let mu_second = Partition::from_composition(&shifted);
        let c = binomial(l1 - m2 - 1, m1 - m2);
        if !c.is_zero() {
            value += from_integer(c) * e1_coeff_or_zero(&mu_second, &lambda_tail);
        }
    }
    Ok(sign(l1 - m1) * value)
}

/// [`matrix_b_closed`] tabulated over `P_n^(N)`.
pub fn matrix_b_closed_table(n: u32, nvars: usize) -> RatMatrix {
    let labels = enumerate(n, nvars, false);
    RatMatrix::from_fn(labels.clone(), labels, |mu, lambda| {
        matrix_b_closed(mu, lambda).expect("equal weights")
    })
}

/// Generalized binomial coefficient `λ! / (ν! (|λ|-|ν|)!) · ⟨λ|ν⟩`.
pub fn gen_binomial(lambda: &Partition, nu: &Partition) -> Result<Rational> {
    let bracket = e1_coeff(lambda, nu)?;
    let j = lambda.weight() - nu.weight();
    let scale = from_integer(lambda.factorial()) / from_integer(nu.factorial() * factorial(j));
    Ok(scale * bracket)
}

/// `Σ_{λ⪯μ} B(λ,μ)/μ! · g(μ)` over `μ ∈ P_n^(N)`, for `λ_1 = λ_2`. The sum
/// vanishes whenever `g` is symmetric of degree below `|λ|`; `g` receives
/// `μ` padded with zeros to `nvars` entries.
pub fn bsym0_check(
    lambda: &Partition,
    g: impl Fn(&[Rational]) -> Rational,
    nvars: usize,
) -> Result<Rational> {
    if !lambda.is_tilde() {
        return Err(Error::Precondition(format!(
            "bsym0_check needs λ_1 = λ_2, got {lambda}"
        )));
    }
    lambda.ensure_fits(nvars)?;
    let mut total = Rational::zero();
    for mu in enumerate(lambda.weight(), nvars, false) {
        if !lambda.preceq(&mu) {
            continue;
        }
        let b = matrix_b_closed(lambda, &mu)?;
        if b.is_zero() {
            continue;
        }
        let point: Vec<Rational> = (0..nvars)
            .map(|i| from_integer(mu.get(i).into()))
            .collect();
        total += b / from_integer(mu.factorial()) * g(&point);
    }
    Ok(total)
}
