//! Sparse polynomials in `x_1, ..., x_N` and the rational Dunkl operators of
//! the hyperoctahedral group.
//!
//! On monomials `D_i x^a = (a_i + 2κ[a_i odd]) x^{a - ε_i}`, which is the
//! difference-quotient definition evaluated in closed form. Indices are
//! zero-based throughout.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{
    ensure_pochhammer_nonzero, ensure_pole_free, format_rational, from_integer, half, int,
    parse_rational, pochhammer, pow2, Rational,
};
use crate::symfunc::{distinct_arrangements, SymPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl XPoly {
    pub fn zero(nvars: usize) -> Self {
        XPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = XPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn monomial(exponent: Vec<u32>, c: Rational) -> Self {
        let mut p = XPoly::zero(exponent.len());
        p.add_term(exponent, c);
        p
    }

    /// The coordinate function `x_i`.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut exponent = vec![0; nvars];
        exponent[i] = 1;
        XPoly::monomial(exponent, Rational::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: &[u32]) -> Rational {
        self.terms.get(exponent).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exponent: Vec<u32>, c: Rational) {
        assert_eq!(exponent.len(), self.nvars, "exponent length must equal the variable count");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exponent) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exponent);
                }
            }
            None => {
                self.terms.insert(exponent, c);
            }
        }
    }

    pub fn add(&self, other: &XPoly) -> XPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &XPoly) -> XPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> XPoly {
        if factor.is_zero() {
            return XPoly::zero(self.nvars);
        }
        XPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect(),
        }
    }

    pub fn mul(&self, other: &XPoly) -> XPoly {
        let mut out = XPoly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// `x_i · f`.
    pub fn mul_var(&self, i: usize) -> XPoly {
        XPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i] += 1;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            Some(d) => degrees.all(|x| x == d),
            None => true,
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let value = e
                .iter()
                .zip(point)
                .filter(|(&k, _)| k > 0)
                .fold(c.clone(), |v, (&k, x)| v * num_traits::pow(x.clone(), k as usize));
            acc + value
        })
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    /// Terms in graded-lex order: total degree ascending, then exponent vectors descending.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &Rational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| graded_lex(a, b));
        terms
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(e, c)| json!({ "exp": e, "coef": format_rational(c) }))
            .collect();
        json!({ "N": self.nvars, "terms": terms })
    }

    pub fn from_json(value: &Value) -> Result<XPoly> {
        let malformed = |what: &str| Error::Malformed(format!("polynomial JSON: {what}"));
        let nvars = value["N"].as_u64().ok_or_else(|| malformed("missing N"))? as usize;
        let terms = value["terms"].as_array().ok_or_else(|| malformed("missing terms"))?;
        let mut p = XPoly::zero(nvars);
        for term in terms {
            let exp: Vec<u32> = term["exp"]
                .as_array()
                .ok_or_else(|| malformed("missing exp"))?
                .iter()
                .map(|v| v.as_u64().map(|k| k as u32))
                .collect::<Option<_>>()
                .ok_or_else(|| malformed("exponent is not a nonnegative integer"))?;
            if exp.len() != nvars {
                return Err(malformed("exponent length differs from N"));
            }
            let coef = parse_rational(term["coef"].as_str().ok_or_else(|| malformed("missing coef"))?)?;
            p.add_term(exp, coef);
        }
        Ok(p)
    }
}

fn graded_lex(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| b.cmp(a))
}

/// `σ_i f`: the sign change `x_i ↦ -x_i`.
pub fn reflection(i: usize, f: &XPoly) -> XPoly {
    assert!(i < f.nvars, "reflection index out of range");
    XPoly {
        nvars: f.nvars,
        terms: f
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), if e[i] % 2 == 1 { -c.clone() } else { c.clone() }))
            .collect(),
    }
}

/// `‖x‖² = Σ x_i²`.
pub fn norm_sq(nvars: usize) -> XPoly {
    let mut p = XPoly::zero(nvars);
    for i in 0..nvars {
        let mut e = vec![0; nvars];
        e[i] = 2;
        p.add_term(e, Rational::one());
    }
    p
}

/// Expands `Σ c_λ m_λ(x²)` in `nvars` variables.
pub fn materialize_sym(f: &SymPoly, nvars: usize) -> Result<XPoly> {
    let mut out = XPoly::zero(nvars);
    for (lambda, c) in f.terms() {
        lambda.ensure_fits(nvars)?;
        for arrangement in distinct_arrangements(lambda, nvars) {
            out.add_term(arrangement.iter().map(|k| 2 * k).collect(), c.clone());
        }
    }
    Ok(out)
}

/// Eigenvalue of the intertwining operator on `x^α`: per coordinate
/// `(1/2)_n/(κ+1/2)_n` for `α_i = 2n` and `(1/2)_{n+1}/(κ+1/2)_{n+1}` for `α_i = 2n+1`.
pub fn intertwine_monomial(alpha: &[u32], kappa: &Rational) -> Result<Rational> {
    let shifted = kappa + half();
    let mut value = Rational::one();
    for &a in alpha {
        let n = a.div_ceil(2);
        ensure_pochhammer_nonzero(&shifted, n, kappa, "kappa+1/2")?;
        value *= pochhammer(&half(), n) / pochhammer(&shifted, n);
    }
    Ok(value)
}

/// The number of variables and the parameter `κ` shared by every operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorContext {
    nvars: usize,
    kappa: Rational,
    max_degree: u32,
}

impl OperatorContext {
    /// Rejects `κ` when `(κ+1/2)_{max_degree}` vanishes.
    pub fn new(nvars: usize, kappa: Rational, max_degree: u32) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::Precondition("at least one variable is required".into()));
        }
        ensure_pole_free(&kappa, max_degree)?;
        Ok(OperatorContext {
            nvars,
            kappa,
            max_degree,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn kappa(&self) -> &Rational {
        &self.kappa
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    fn check(&self, f: &XPoly) {
        assert_eq!(f.nvars, self.nvars, "polynomial and context disagree on N");
    }

    /// `D_i f`.
    pub fn dunkl(&self, i: usize, f: &XPoly) -> XPoly {
        self.check(f);
        assert!(i < self.nvars, "Dunkl index out of range");
        let two_kappa = int(2) * &self.kappa;
        let mut out = XPoly::zero(self.nvars);
        for (e, c) in &f.terms {
            let a = e[i];
            if a == 0 {
                continue;
            }
            let mut factor = int(a.into());
            if a % 2 == 1 {
                factor += &two_kappa;
            }
            let mut lowered = e.clone();
            lowered[i] -= 1;
            out.add_term(lowered, factor * c);
        }
        out
    }

    /// `Δ_κ f = Σ D_i² f`.
    pub fn laplacian(&self, f: &XPoly) -> XPoly {
        (0..self.nvars).fold(XPoly::zero(self.nvars), |acc, i| {
            acc.add(&self.dunkl(i, &self.dunkl(i, f)))
        })
    }

    pub fn laplacian_power(&self, s: u32, f: &XPoly) -> XPoly {
        (0..s).fold(f.clone(), |g, _| self.laplacian(&g))
    }

    /// `R_ij f = x_i D_j f - x_j D_i f`.
    pub fn angular(&self, i: usize, j: usize, f: &XPoly) -> XPoly {
        assert_ne!(i, j, "angular operator needs distinct indices");
        self.dunkl(j, f).mul_var(i).sub(&self.dunkl(i, f).mul_var(j))
    }

    /// `S_1 f = Σ_{i<j} R_ij² f`.
    pub fn casimir(&self, f: &XPoly) -> XPoly {
        let mut out = XPoly::zero(self.nvars);
        for i in 0..self.nvars {
            for j in i + 1..self.nvars {
                out = out.add(&self.angular(i, j, &self.angular(i, j, f)));
            }
        }
        out
    }

    /// `E f = Σ x_i D_i f`.
    pub fn euler(&self, f: &XPoly) -> XPoly {
        (0..self.nvars).fold(XPoly::zero(self.nvars), |acc, i| {
            acc.add(&self.dunkl(i, f).mul_var(i))
        })
    }

    /// `S_1` through `‖x‖² Δ_κ - E² - (N - 2 + 2κ Σ σ_i) E`.
    pub fn casimir_via_identity(&self, f: &XPoly) -> XPoly {
        let e = self.euler(f);
        let mut out = norm_sq(self.nvars).mul(&self.laplacian(f));
        out = out.sub(&self.euler(&e));
        out = out.sub(&e.scale(&int(self.nvars as i64 - 2)));
        let reflected = (0..self.nvars).fold(XPoly::zero(self.nvars), |acc, i| acc.add(&reflection(i, &e)));
        out.sub(&reflected.scale(&(int(2) * &self.kappa)))
    }

    /// `⟨f, g⟩_h = f(D_1, ..., D_N) g |_{x=0}`, applying the operators literally.
    pub fn pairing_h_oracle(&self, f: &XPoly, g: &XPoly) -> Rational {
        self.check(f);
        self.check(g);
        let mut total = Rational::zero();
        for (e, c) in &f.terms {
            let mut applied = g.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    applied = self.dunkl(i, &applied);
                }
            }
            total += c * applied.constant_term();
        }
        total
    }

    /// Compares `Δ_κ^s(‖x‖^{2j} f)` with `2^{2s}(-j)_s(-m-j+1-N/2-Nκ)_s ‖x‖^{2j-2s} f`
    /// for harmonic `f` homogeneous of degree `m`; false if `f` is not such a polynomial.
    pub fn laplacian_power_identity_check(&self, f: &XPoly, j: u32, s: u32) -> bool {
        if !f.is_homogeneous() || !self.laplacian(f).is_zero() {
            return false;
        }
        let m = f.degree().unwrap_or(0);
        let radial = |power: u32| (0..power).fold(XPoly::constant(self.nvars, Rational::one()), |acc, _| acc.mul(&norm_sq(self.nvars)));
        let lhs = self.laplacian_power(s, &radial(j).mul(f));
        if s > j {
            return lhs.is_zero();
        }
        let nv = int(self.nvars as i64);
        let shift = int(1 - i64::from(m) - i64::from(j)) - &nv * half() - &nv * &self.kappa;
        let factor = pow2(2 * i64::from(s)) * pochhammer(&int(-i64::from(j)), s) * pochhammer(&shift, s);
        let rhs = radial(j - s).mul(f).scale(&factor);
        lhs == rhs
    }
}

/// `D_i^a x_i^a = ∏_{k=1}^{a} (k + 2κ[k odd])`.
pub fn dunkl_power_constant(a: u32, kappa: &Rational) -> Rational {
    (1..=a).fold(Rational::one(), |acc, k| {
        let mut factor = from_integer(k.into());
        if k % 2 == 1 {
            factor += int(2) * kappa;
        }
        acc * factor
    })
}
