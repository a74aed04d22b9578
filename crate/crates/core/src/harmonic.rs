//! The invariant harmonic basis `h_μ`, its biorthogonal partners `g_λ`, the
//! `⟨·,·⟩_h` pairing on symmetric polynomials in `x²`, Gram matrices and the
//! closed forms of their determinants.
//!
//! Throughout `a = N/2 + Nκ`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::dunkl::{materialize_sym, norm_sq, OperatorContext, XPoly};
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::partition::{count_tilde, enumerate, Partition};
use crate::scalar::{
    ensure_pochhammer_nonzero, ensure_pole_free, factorial, from_integer, half, int, pochhammer,
    pochhammer_partition, pow2, Rational,
};
use crate::symfunc::{e1_coeff_or_zero, e1_pow_mul, matrix_b_by_inversion, matrix_b_closed, SymPoly};

/// `N/2 + Nκ`.
pub fn radial_shift(nvars: usize, kappa: &Rational) -> Rational {
    let n = int(nvars as i64);
    &n * half() + n * kappa
}

/// `λ! (κ+1/2)_λ m_λ(1^N)`, the norm scale of `m_λ(x²)` up to `2^{2|λ|}`.
pub fn monomial_weight(lambda: &Partition, nvars: usize, kappa: &Rational) -> Result<Rational> {
    Ok(from_integer(lambda.factorial())
        * pochhammer_partition(&(kappa + half()), lambda)
        * from_integer(lambda.m_at_ones(nvars)?))
}

/// Coefficients `c_λ = 2^{-2n}/(λ!(κ+1/2)_λ m_λ(1^N))` of `m_λ(x²) m_λ(y²)` in the
/// symmetrized reproducing kernel of degree `2n`.
pub fn kernel_kb(n: u32, nvars: usize, kappa: &Rational) -> Result<BTreeMap<Partition, Rational>> {
    ensure_pole_free(kappa, n)?;
    enumerate(n, nvars, false)
        .into_iter()
        .map(|lambda| {
            let c = pow2(-2 * i64::from(n)) / monomial_weight(&lambda, nvars, kappa)?;
            Ok((lambda, c))
        })
        .collect()
}

/// `h_μ = Σ_λ coeffs[λ] m_λ(x²)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicExpansion {
    pub mu: Partition,
    pub nvars: usize,
    pub kappa: Rational,
    pub coeffs: BTreeMap<Partition, Rational>,
}

impl HarmonicExpansion {
    pub fn degree(&self) -> u32 {
        self.mu.weight()
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.coeffs.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn to_sympoly(&self) -> SymPoly {
        SymPoly::from_terms(self.degree(), self.coeffs.clone()).expect("homogeneous keys")
    }

    pub fn materialize(&self) -> XPoly {
        materialize_sym(&self.to_sympoly(), self.nvars).expect("keys fit")
    }
}

/// `h_μ = 2^{-n} Σ_{μ⪯λ} B(μ,λ)/(λ!(κ+1/2)_λ m_λ(1^N)) · m_λ(x²)`.
pub fn h_expansion(mu: &Partition, nvars: usize, kappa: &Rational) -> Result<HarmonicExpansion> {
    mu.ensure_fits(nvars)?;
    let n = mu.weight();
    ensure_pole_free(kappa, n)?;
    let scale = pow2(-i64::from(n));
    let mut coeffs = BTreeMap::new();
    for lambda in enumerate(n, nvars, false) {
        if !mu.preceq(&lambda) {
            continue;
        }
        let b = matrix_b_closed(mu, &lambda)?;
        if b.is_zero() {
            continue;
        }
        let c = &scale * b / monomial_weight(&lambda, nvars, kappa)?;
        coeffs.insert(lambda, c);
    }
    Ok(HarmonicExpansion {
        mu: mu.clone(),
        nvars,
        kappa: kappa.clone(),
        coeffs,
    })
}

/// Materializes `h_μ` and compares `Δ_κ h_μ` with `2h_{μ-ε_1}`, or with zero when `μ_1 = μ_2`.
pub fn check_laph(mu: &Partition, nvars: usize, kappa: &Rational) -> Result<bool> {
    let h = h_expansion(mu, nvars, kappa)?;
    let ctx = OperatorContext::new(nvars, kappa.clone(), mu.weight())?;
    let lhs = ctx.laplacian(&h.materialize());
    let rhs = match mu.remove_first_box() {
        Some(lower) => h_expansion(&lower, nvars, kappa)?.materialize().scale(&int(2)),
        None => XPoly::zero(nvars),
    };
    Ok(lhs == rhs)
}

/// `Σ_j e_1(x²)^j · part_j`, each layer homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialLayered {
    pub degree: u32,
    pub layers: Vec<(u32, SymPoly)>,
}

impl RadialLayered {
    /// Collapses the layers into a single polynomial in the monomial basis.
    pub fn to_sympoly(&self, nvars: usize) -> SymPoly {
        self.layers.iter().fold(SymPoly::zero(self.degree), |acc, (j, part)| {
            acc.add(&e1_pow_mul(*j, part, nvars)).expect("homogeneous layers")
        })
    }
}

/// `g_λ = Σ_j e_1^j/(j!(2-a-2n)_j) · Σ_{σ⊂λ, |σ|=n-j} ⟨λ|σ⟩ m_σ/(σ!(κ+1/2)_σ m_σ(1^N))`.
pub fn g_expansion(lambda: &Partition, nvars: usize, kappa: &Rational) -> Result<RadialLayered> {
    lambda.ensure_fits(nvars)?;
    let n = lambda.weight();
    ensure_pole_free(kappa, n)?;
    let t = int(2 - 2 * i64::from(n)) - radial_shift(nvars, kappa);
    let mut layers = Vec::new();
    for j in 0..=n {
        let mut part = SymPoly::zero(n - j);
        for sigma in enumerate(n - j, nvars, false) {
            if !sigma.is_contained_in(lambda) {
                continue;
            }
            let c = e1_coeff_or_zero(lambda, &sigma) / monomial_weight(&sigma, nvars, kappa)?;
            part.add_term(sigma, c)?;
        }
        if part.is_zero() {
            continue;
        }
        ensure_pochhammer_nonzero(&t, j, kappa, "2-N/2-N*kappa-2n")?;
        let radial = Rational::one() / (from_integer(factorial(j)) * pochhammer(&t, j));
        layers.push((j, part.scale(&radial)));
    }
    Ok(RadialLayered { degree: n, layers })
}

/// `⟨f(x²), g(x²)⟩_h = Σ_λ f_λ g_λ 2^{2n} λ!(κ+1/2)_λ m_λ(1^N)`; zero across degrees.
pub fn pairing_h_fast(f: &SymPoly, g: &SymPoly, nvars: usize, kappa: &Rational) -> Result<Rational> {
    if f.degree() != g.degree() {
        return Ok(Rational::zero());
    }
    let scale = pow2(2 * i64::from(f.degree()));
    let mut total = Rational::zero();
    for (lambda, c) in f.terms() {
        let d = g.coeff(lambda);
        if d.is_zero() {
            continue;
        }
        total += c * d * monomial_weight(lambda, nvars, kappa)?;
    }
    Ok(total * scale)
}

/// `⟨g_λ, h_μ⟩_h`.
pub fn pairing_g_h(lambda: &Partition, mu: &Partition, nvars: usize, kappa: &Rational) -> Result<Rational> {
    let g = g_expansion(lambda, nvars, kappa)?.to_sympoly(nvars);
    let h = h_expansion(mu, nvars, kappa)?.to_sympoly();
    pairing_h_fast(&g, &h, nvars, kappa)
}

/// `2^n/(λ!(κ+1/2)_λ m_λ(1^N))`, the diagonal of the `g`/`h` pairing.
pub fn biorthogonality_value(lambda: &Partition, nvars: usize, kappa: &Rational) -> Result<Rational> {
    Ok(pow2(i64::from(lambda.weight())) / monomial_weight(lambda, nvars, kappa)?)
}

/// `⟨g_λ, h_μ⟩_h = δ_{λμ} 2^n/(λ!(κ+1/2)_λ m_λ(1^N))`.
pub fn biorthogonality_check(lambda: &Partition, mu: &Partition, nvars: usize, kappa: &Rational) -> Result<bool> {
    let got = pairing_g_h(lambda, mu, nvars, kappa)?;
    let want = if lambda == mu {
        biorthogonality_value(lambda, nvars, kappa)?
    } else {
        Rational::zero()
    };
    Ok(got == want)
}

/// `G = B C Bᵀ` restricted to `labels`, where `B` is indexed by all of `P_n^(N)`.
fn gram_from_b(b: &RatMatrix, labels: &[Partition], nvars: usize, kappa: &Rational) -> Result<RatMatrix> {
    let cols = b.col_labels();
    let weights: Vec<Rational> = cols
        .iter()
        .map(|s| Ok(Rational::one() / monomial_weight(s, nvars, kappa)?))
        .collect::<Result<_>>()?;
    let index = b.label_index();
    let rows: Vec<usize> = labels.iter().map(|l| index[l]).collect();
    let mut g = RatMatrix::square_zeros(labels.to_vec());
    for (i, &ri) in rows.iter().enumerate() {
        for (j, &rj) in rows.iter().enumerate().skip(i) {
            let mut entry = Rational::zero();
            for (k, w) in weights.iter().enumerate() {
                let (x, y) = (b.at(ri, k), b.at(rj, k));
                if !x.is_zero() && !y.is_zero() {
                    entry += x * y * w;
                }
            }
            g.set(j, i, entry.clone());
            g.set(i, j, entry);
        }
    }
    Ok(g)
}

/// `⟨h_λ, h_μ⟩_h` over `P̃_n^(N)` when `tilde_only`, else over `P_n^(N)`.
pub fn gram_matrix(n: u32, nvars: usize, kappa: &Rational, tilde_only: bool) -> Result<RatMatrix> {
    ensure_pole_free(kappa, n)?;
    let b = matrix_b_by_inversion(n, nvars);
    gram_from_b(&b, &enumerate(n, nvars, tilde_only), nvars, kappa)
}

/// `D_n = ∏_{λ∈P_n} (λ!(κ+1/2)_λ m_λ(1^N))^{-1}`, the determinant of the full Gram matrix.
pub fn full_gram_det_closed(n: u32, nvars: usize, kappa: &Rational) -> Result<Rational> {
    ensure_pole_free(kappa, n)?;
    enumerate(n, nvars, false)
        .iter()
        .try_fold(Rational::one(), |acc, l| Ok(acc / monomial_weight(l, nvars, kappa)?))
}

/// Simplified closed form of `det` of the `P̃_n`-Gram matrix; 1 for `n < 2`.
pub fn gram_det_closed(n: u32, nvars: usize, kappa: &Rational) -> Result<Rational> {
    ensure_pole_free(kappa, n)?;
    if n < 2 {
        return Ok(Rational::one());
    }
    let a = radial_shift(nvars, kappa);
    let mut value = Rational::one();
    for lambda in enumerate(n, nvars, true) {
        value /= monomial_weight(&lambda, nvars, kappa)?;
    }
    for mu in enumerate(n - 1, nvars, false) {
        let (m1, m2) = (i64::from(mu.get(0)), i64::from(mu.get(1)));
        let ties = mu.parts().iter().filter(|&&p| i64::from(p) == m1).count() as i64;
        let numer = int(m1 - m2 + 1) * (int(2 * i64::from(n) - 2 - m1 + m2) + &a);
        let last = kappa + half() + int(m1);
        if last.is_zero() {
            return Err(Error::Pole {
                kappa: kappa.clone(),
                factor: format!("kappa+1/2+{m1}"),
            });
        }
        value *= numer / (int((m1 + 1) * ties) * last);
    }
    Ok(value)
}

/// `(D_n/D_{n-1}) ∏_{i=1}^n (i(2n-i-1+a))^{d(n-i,N)}` with `d(k,N) = #P̃_k^(N)`.
pub fn gram_det_unsimplified(n: u32, nvars: usize, kappa: &Rational) -> Result<Rational> {
    if n == 0 {
        return Ok(Rational::one());
    }
    let a = radial_shift(nvars, kappa);
    let mut value = full_gram_det_closed(n, nvars, kappa)? / full_gram_det_closed(n - 1, nvars, kappa)?;
    for i in 1..=n {
        let base = int(i64::from(i)) * (int(2 * i64::from(n) - i64::from(i) - 1) + &a);
        let d = count_tilde(n - i, nvars);
        value *= num_traits::pow(base, d as usize);
    }
    Ok(value)
}

/// `2^{-2n}/(a)_{2n}`, converting `⟨·,·⟩_h` into the normalized sphere pairing in degree `2n`.
pub fn sphere_scale(n: u32, nvars: usize, kappa: &Rational) -> Result<Rational> {
    let a = radial_shift(nvars, kappa);
    ensure_pochhammer_nonzero(&a, 2 * n, kappa, "N/2+N*kappa")?;
    Ok(pow2(-2 * i64::from(n)) / pochhammer(&a, 2 * n))
}

pub fn sphere_pairing(f: &SymPoly, g: &SymPoly, nvars: usize, kappa: &Rational) -> Result<Rational> {
    if f.degree() != g.degree() {
        return Ok(Rational::zero());
    }
    Ok(pairing_h_fast(f, g, nvars, kappa)? * sphere_scale(f.degree(), nvars, kappa)?)
}

/// Splits an even homogeneous polynomial as `Σ_i ‖x‖^{2i} f_i` with each `f_i` harmonic,
/// peeling off the top layer `f_i = Δ_κ^i f/(2^{2i} i!(m-2i+a)_i)` until nothing remains.
pub fn harmonic_layers(ctx: &OperatorContext, f: &XPoly) -> Result<Vec<(u32, XPoly)>> {
    if !f.is_homogeneous() {
        return Err(Error::Precondition("layer decomposition needs a homogeneous polynomial".into()));
    }
    let m = f.degree().unwrap_or(0);
    let a = radial_shift(ctx.nvars(), ctx.kappa());
    let mut rest = f.clone();
    let mut layers = Vec::new();
    while !rest.is_zero() {
        let mut top = rest.clone();
        let mut i = 0;
        loop {
            let next = ctx.laplacian(&top);
            if next.is_zero() {
                break;
            }
            top = next;
            i += 1;
        }
        let shift = int(i64::from(m) - 2 * i64::from(i)) + &a;
        ensure_pochhammer_nonzero(&shift, i, ctx.kappa(), "m-2i+N/2+N*kappa")?;
        let c = Rational::one() / (pow2(2 * i64::from(i)) * from_integer(factorial(i)) * pochhammer(&shift, i));
        let layer = top.scale(&c);
        let radial = (0..i).fold(XPoly::constant(ctx.nvars(), Rational::one()), |acc, _| {
            acc.mul(&norm_sq(ctx.nvars()))
        });
        rest = rest.sub(&radial.mul(&layer));
        layers.push((i, layer));
    }
    layers.sort_by_key(|(i, _)| *i);
    Ok(layers)
}

/// `-2n(N-2+2n+2Nκ)`, the eigenvalue of `S_1` on harmonics of degree `2n`.
pub fn casimir_eigenvalue(n: u32, nvars: usize, kappa: &Rational) -> Rational {
    let nv = nvars as i64;
    int(-2 * i64::from(n)) * (int(nv - 2 + 2 * i64::from(n)) + int(2 * nv) * kappa)
}

/// Applies `S_1` to the materialized `h_μ` both as `Σ R_ij²` and through the
/// `Δ_κ`-based identity, and compares each with the eigenvalue multiple of `h_μ`.
pub fn casimir_check(mu: &Partition, nvars: usize, kappa: &Rational) -> Result<bool> {
    let h = h_expansion(mu, nvars, kappa)?.materialize();
    let ctx = OperatorContext::new(nvars, kappa.clone(), mu.weight())?;
    let want = h.scale(&casimir_eigenvalue(mu.weight(), nvars, kappa));
    Ok(ctx.casimir(&h) == want && ctx.casimir_via_identity(&h) == want)
}

/// Polynomial degree bound in `κ` for the certification of the determinant identity
/// after clearing denominators.
fn gram_identity_degree_bound(n: u32, nvars: usize) -> usize {
    let labels = enumerate(n, nvars, false);
    let d = enumerate(n, nvars, true).len();
    // lcm of (κ+1/2)_σ: factor (κ-1/2+j) appears max_σ #{i: σ_i >= j} times
    let lcm_degree: usize = (1..=n)
        .map(|j| labels.iter().map(|s| s.parts().iter().filter(|&&p| p >= j).count()).max().unwrap_or(0))
        .sum();
    let p_lower = enumerate(n - 1, nvars, false).len();
    d * lcm_degree + d * n as usize + p_lower
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramCertificate {
    pub n: u32,
    pub nvars: usize,
    pub nodes: usize,
    pub ok: bool,
}

/// Certifies `det(P̃_n-Gram) = gram_det_closed` as rational functions of `κ` by exact
/// comparison at enough integer nodes `κ = 1, 2, ...` to exceed the degree of the
/// cleared difference.
pub fn certify_gram_det_identity(n: u32, nvars: usize) -> Result<GramCertificate> {
    if n < 2 {
        return Ok(GramCertificate { n, nvars, nodes: 0, ok: true });
    }
    let nodes = gram_identity_degree_bound(n, nvars) + 1;
    let b = matrix_b_by_inversion(n, nvars);
    let labels = enumerate(n, nvars, true);
    let mut ok = true;
    for k in 1..=nodes as i64 {
        let kappa = int(k);
        let det = gram_from_b(&b, &labels, nvars, &kappa)?.determinant()?;
        if det != gram_det_closed(n, nvars, &kappa)? {
            ok = false;
            break;
        }
    }
    Ok(GramCertificate { n, nvars, nodes, ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn kernel_examples() {
        let k = frac(1, 3);
        let c = kernel_kb(1, 2, &k).unwrap();
        assert_eq!(c[&p("1")], pow2(-2) / ((&k + half()) * int(2)));
        let c = kernel_kb(2, 3, &k).unwrap();
        let s = &k + half();
        assert_eq!(c[&p("1,1")], pow2(-4) / (&s * &s * int(3)));
        assert!(c.values().all(|v| v > &Rational::zero()));
        assert!(kernel_kb(2, 2, &frac(-1, 2)).is_err());
    }

    #[test]
    fn h_expansion_examples() {
        let h = h_expansion(&p("1,1"), 2, &frac(1, 2)).unwrap();
        assert_eq!(h.coeffs.len(), 2);
        assert_eq!(h.coeff(&p("1,1")), frac(1, 4));
        assert_eq!(h.coeff(&p("2")), frac(-1, 16));
        let h = h_expansion(&p("4"), 3, &frac(2, 3)).unwrap();
        assert_eq!(h.coeffs.keys().cloned().collect::<Vec<_>>(), vec![p("4")]);
        assert!(h_expansion(&p("1,1,1"), 2, &int(1)).is_err());
        assert!(h_expansion(&p("2,1"), 3, &frac(-3, 2)).is_err());
    }

    #[test]
    fn leading_coefficient_of_h() {
        let k = frac(2, 7);
        for n in 1..=5 {
            for mu in enumerate(n, 4, false) {
                let h = h_expansion(&mu, 4, &k).unwrap();
                let want = Rational::one() / (pow2(n.into()) * monomial_weight(&mu, 4, &k).unwrap());
                assert_eq!(h.coeff(&mu), want);
                assert!(h.coeffs.keys().all(|l| mu.preceq(l)));
            }
        }
    }

    #[test]
    fn laph_small() {
        for k in [int(0), frac(1, 3)] {
            for n in 1..=4 {
                for mu in enumerate(n, 3, false) {
                    assert!(check_laph(&mu, 3, &k).unwrap(), "{mu} at {k}");
                }
            }
        }
    }

    #[test]
    fn iterated_laplacian_of_single_row() {
        let k = frac(1, 2);
        let ctx = OperatorContext::new(2, k.clone(), 4).unwrap();
        let h = h_expansion(&p("3"), 2, &k).unwrap().materialize();
        let got = ctx.laplacian_power(3, &h);
        assert_eq!(got, XPoly::constant(2, int(8)));
    }

    #[test]
    fn g_expansion_layers() {
        let g = g_expansion(&p("1,1"), 2, &int(1)).unwrap();
        assert_eq!(g.layers.len(), 3);
        assert_eq!(g.layers[0].0, 0);
        assert_eq!(g.layers[0].1.terms().keys().cloned().collect::<Vec<_>>(), vec![p("1,1")]);
        for (j, part) in &g.layers {
            assert_eq!(part.degree() + j, 2);
        }
        // ⟨(1,1)|()⟩ = 2 over 2!(2-a-4)_2 with a = 3
        let (_, top) = &g.layers[2];
        assert_eq!(top.coeff(&Partition::empty()), int(2) / (int(2) * int(-5) * int(-4)));
    }

    #[test]
    fn g_is_harmonic() {
        let k = frac(1, 3);
        for n in 2..=4 {
            for lambda in enumerate(n, 3, false) {
                let g = materialize_sym(&g_expansion(&lambda, 3, &k).unwrap().to_sympoly(3), 3).unwrap();
                let ctx = OperatorContext::new(3, k.clone(), n).unwrap();
                assert!(ctx.laplacian(&g).is_zero(), "{lambda}");
            }
        }
    }

    #[test]
    fn g_reproduces_coefficients() {
        let k = frac(3, 5);
        for n in 1..=3 {
            for lambda in enumerate(n, 3, false) {
                for mu in enumerate(n, 3, true) {
                    let got = pow2(-2 * i64::from(n)) * pairing_g_h(&lambda, &mu, 3, &k).unwrap();
                    assert_eq!(got, h_expansion(&mu, 3, &k).unwrap().coeff(&lambda), "{lambda} {mu}");
                }
            }
        }
    }

    #[test]
    fn biorthogonality_small() {
        let k = frac(1, 2);
        for n in 2..=4 {
            let shapes = enumerate(n, 4, true);
            for lambda in &shapes {
                for mu in &shapes {
                    assert!(biorthogonality_check(lambda, mu, 4, &k).unwrap());
                }
            }
        }
    }

    #[test]
    fn fast_pairing_examples() {
        let k = frac(1, 5);
        let m1 = SymPoly::monomial(p("1"));
        assert_eq!(pairing_h_fast(&m1, &m1, 2, &k).unwrap(), int(4) * (&k + half()) * int(2));
        assert!(pairing_h_fast(&m1, &SymPoly::monomial(p("2")), 2, &k).unwrap().is_zero());
        assert!(pairing_h_fast(&SymPoly::monomial(p("2")), &SymPoly::monomial(p("1,1")), 2, &k).unwrap().is_zero());
    }

    #[test]
    fn fast_pairing_matches_oracle_on_harmonics() {
        let k = frac(1, 3);
        let ctx = OperatorContext::new(3, k.clone(), 3).unwrap();
        for n in 1..=3 {
            for lambda in enumerate(n, 3, false) {
                for mu in enumerate(n, 3, false) {
                    let f = h_expansion(&lambda, 3, &k).unwrap();
                    let g = h_expansion(&mu, 3, &k).unwrap();
                    let fast = pairing_h_fast(&f.to_sympoly(), &g.to_sympoly(), 3, &k).unwrap();
                    assert_eq!(fast, ctx.pairing_h_oracle(&f.materialize(), &g.materialize()));
                }
            }
        }
    }

    #[test]
    fn gram_examples() {
        let k = frac(1, 3);
        let g = gram_matrix(2, 2, &k, true).unwrap();
        assert_eq!(g.nrows(), 1);
        let s = &k + half();
        let want = Rational::one() / (&s * &s) + int(4) / (int(2) * &s * (&s + int(1)) * int(2));
        assert_eq!(g.at(0, 0), &want);
        let full = gram_matrix(4, 3, &k, false).unwrap();
        assert!(full.is_symmetric());
        let b = matrix_b_by_inversion(4, 3);
        let c = RatMatrix::from_fn(b.col_labels().to_vec(), b.col_labels().to_vec(), |x, y| {
            if x == y {
                Rational::one() / monomial_weight(x, 3, &k).unwrap()
            } else {
                Rational::zero()
            }
        });
        assert_eq!(b.mul(&c).unwrap().mul(&b.transpose()).unwrap(), full);
    }

    #[test]
    fn gram_is_pairing_of_h() {
        let k = frac(5, 2);
        let g = gram_matrix(4, 3, &k, false).unwrap();
        for (i, l) in g.row_labels().iter().enumerate() {
            for (j, m) in g.col_labels().iter().enumerate() {
                let hl = h_expansion(l, 3, &k).unwrap().to_sympoly();
                let hm = h_expansion(m, 3, &k).unwrap().to_sympoly();
                assert_eq!(g.at(i, j), &pairing_h_fast(&hl, &hm, 3, &k).unwrap());
            }
        }
    }

    #[test]
    fn determinant_forms_agree() {
        for k in [frac(1, 2), frac(1, 3), int(2)] {
            assert!(gram_det_closed(1, 3, &k).unwrap().is_one());
            assert!(gram_det_unsimplified(1, 3, &k).unwrap().is_one());
            for n in 2..=5 {
                for nvars in 1..=4 {
                    let closed = gram_det_closed(n, nvars, &k).unwrap();
                    assert_eq!(closed, gram_det_unsimplified(n, nvars, &k).unwrap(), "n={n} N={nvars}");
                    let det = gram_matrix(n, nvars, &k, true).unwrap().determinant().unwrap();
                    assert_eq!(det, closed, "n={n} N={nvars} kappa={k}");
                    let full = gram_matrix(n, nvars, &k, false).unwrap().determinant().unwrap();
                    assert_eq!(full, full_gram_det_closed(n, nvars, &k).unwrap());
                }
            }
        }
    }

    #[test]
    fn certification_small() {
        for n in 2..=4 {
            let cert = certify_gram_det_identity(n, 3).unwrap();
            assert!(cert.ok, "n={n}");
        }
    }

    #[test]
    fn casimir_on_harmonics() {
        let k = frac(1, 3);
        assert_eq!(casimir_eigenvalue(2, 3, &k), int(-28));
        for n in 2..=4 {
            for mu in enumerate(n, 3, true) {
                assert!(casimir_check(&mu, 3, &k).unwrap(), "{mu}");
            }
        }
        assert!(!casimir_check(&p("2,1"), 3, &k).unwrap());
    }

    #[test]
    fn sphere_examples() {
        let one = SymPoly::one();
        assert!(sphere_pairing(&one, &one, 3, &frac(1, 2)).unwrap().is_one());
        assert_eq!(sphere_scale(1, 2, &int(0)).unwrap(), frac(1, 8));
        assert!(sphere_pairing(&one, &SymPoly::monomial(p("1")), 2, &int(1)).unwrap().is_zero());
    }

    #[test]
    fn layers_of_h() {
        let k = frac(1, 3);
        let nvars = 3;
        let ctx = OperatorContext::new(nvars, k.clone(), 6).unwrap();
        for n in 2..=4 {
            for mu in enumerate(n, nvars, false) {
                let h = h_expansion(&mu, nvars, &k).unwrap().materialize();
                let layers = harmonic_layers(&ctx, &h).unwrap();
                let depth = mu.get(0) - mu.get(1);
                assert_eq!(layers.last().unwrap().0, depth);
                for (_, layer) in &layers {
                    assert!(ctx.laplacian(layer).is_zero());
                }
                let mut lowest = mu.clone();
                for _ in 0..depth {
                    lowest = lowest.remove_first_box().unwrap();
                }
                let top = &layers.last().unwrap().1;
                let target = h_expansion(&lowest, nvars, &k).unwrap().materialize();
                let ratio = top.terms().values().next().unwrap() / target.terms().get(top.terms().keys().next().unwrap()).unwrap();
                assert_eq!(top, &target.scale(&ratio), "{mu}");
            }
        }
    }
}
