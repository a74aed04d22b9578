//! Self-check suites behind `bnharm verify`. Sizes scale with `max_n`, capped
//! where the underlying computation grows quickly.

use std::time::Instant;

use crate::dunkl::{materialize_sym, OperatorContext};
use crate::error::Result;
use crate::evaluation::{h_at_ones_direct, h_at_ones_residue, q_degree_check};
use crate::harmonic::{
    biorthogonality_check, casimir_check, check_laph, full_gram_det_closed, gram_det_closed,
    gram_det_unsimplified, gram_matrix, pairing_h_fast,
};
use crate::partition::{count_partitions, count_tilde, enumerate};
use crate::scalar::{frac, int, Rational};
use crate::symfunc::{matrix_b_by_inversion, matrix_b_closed_table, SymPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub millis: u128,
}

type Suite = fn(u32) -> Result<(bool, usize)>;

const SUITES: &[(&str, Suite)] = &[
    ("counting", counting),
    ("transition", transition),
    ("laplacian", laplacian),
    ("gram-determinant", gram_determinant),
    ("biorthogonality", biorthogonality),
    ("pairing-oracle", pairing_oracle),
    ("point-evaluation", point_evaluation),
    ("degree-bound", degree_bound),
    ("casimir", casimir),
];

pub fn run_all(max_n: u32) -> Vec<SuiteResult> {
    SUITES
        .iter()
        .map(|(name, suite)| {
            let start = Instant::now();
            let (passed, checks) = suite(max_n).unwrap_or((false, 0));
            SuiteResult {
                name,
                passed,
                checks,
                millis: start.elapsed().as_millis(),
            }
        })
        .collect()
}

fn kappas() -> Vec<Rational> {
    vec![int(0), frac(1, 3), frac(1, 2), int(2)]
}

fn counting(max_n: u32) -> Result<(bool, usize)> {
    let mut checks = 0;
    let mut ok = true;
    for n in 0..=max_n {
        for nvars in 1..=6usize {
            let tilde = count_tilde(n, nvars);
            ok &= tilde == enumerate(n, nvars, true).len() as u64;
            if n >= 1 {
                ok &= count_partitions(n, nvars) - count_partitions(n - 1, nvars) == tilde;
            }
            checks += 1;
        }
    }
    Ok((ok, checks))
}

fn transition(max_n: u32) -> Result<(bool, usize)> {
    let mut checks = 0;
    let mut ok = true;
    for n in 0..=max_n {
        for nvars in 1..=(max_n as usize).clamp(1, 6) {
            ok &= matrix_b_closed_table(n, nvars) == matrix_b_by_inversion(n, nvars);
            checks += 1;
        }
    }
    Ok((ok, checks))
}

fn laplacian(max_n: u32) -> Result<(bool, usize)> {
    let mut checks = 0;
    let mut ok = true;
    for k in kappas() {
        for n in 1..=max_n.min(5) {
            for nvars in 1..=4 {
                for mu in enumerate(n, nvars, false) {
                    ok &= check_laph(&mu, nvars, &k)?;
                    checks += 1;
                }
            }
        }
    }
    Ok((ok, checks))
}

fn gram_determinant(max_n: u32) -> Result<(bool, usize)> {
    let mut checks = 0;
    let mut ok = true;
    for k in [frac(1, 3), frac(1, 2), int(1), frac(7, 5), int(3)] {
        for n in 2..=max_n.min(6) {
            for nvars in 1..=4 {
                let closed = gram_det_closed(n, nvars, &k)?;
                ok &= gram_matrix(n, nvars, &k, true)?.determinant()? == closed;
                ok &= gram_det_unsimplified(n, nvars, &k)? == closed;
                ok &= gram_matrix(n, nvars, &k, false)?.determinant()? == full_gram_det_closed(n, nvars, &k)?;
                checks += 3;
            }
        }
    }
    Ok((ok, checks))
}

fn biorthogonality(max_n: u32) -> Result<(bool, usize)> {
    let mut checks = 0;
    let mut ok = true;
    let k = frac(2, 3);
    for n in 2..=max_n.min(5) {
        for nvars in 1..=4 {
            let shapes = enumerate(n, nvars, true);
            for lambda in &shapes {
                for mu in &shapes {
                    ok &= biorthogonality_check(lambda, mu, nvars, &k)?;
                    checks += 1;
                }
            }
        }
    }
    Ok((ok, checks))
}

fn pairing_oracle(max_n: u32) -> Result<(bool, usize)> {
    let mut checks = 0;
    let mut ok = true;
    for k in [frac(1, 3), int(2)] {
        for nvars in 1..=3 {
            let ctx = OperatorContext::new(nvars, k.clone(), 2 * max_n.min(3))?;
            for n in 0..=max_n.min(3) {
                let shapes = enumerate(n, nvars, false);
                for lambda in &shapes {
                    let f = SymPoly::monomial(lambda.clone());
                    let fx = materialize_sym(&f, nvars)?;
                    for mu in &shapes {
                        let g = SymPoly::monomial(mu.clone());
                        let gx = materialize_sym(&g, nvars)?;
                        ok &= pairing_h_fast(&f, &g, nvars, &k)? == ctx.pairing_h_oracle(&fx, &gx);
                        checks += 1;
                    }
                }
            }
        }
    }
    Ok((ok, checks))
}

fn point_evaluation(max_n: u32) -> Result<(bool, usize)> {
    let mut checks = 0;
    let mut ok = true;
    for k in [frac(1, 3), frac(1, 2), int(1), frac(7, 5)] {
        for n in 2..=max_n {
            for lambda in enumerate(n, n as usize, true) {
                let direct = h_at_ones_direct(&lambda, &k)?;
                ok &= direct == h_at_ones_residue(&lambda, &k)?;
                checks += 1;
            }
        }
    }
    Ok((ok, checks))
}

fn degree_bound(max_n: u32) -> Result<(bool, usize)> {
    let mut checks = 0;
    let mut ok = true;
    for n in 2..=max_n {
        for lambda in enumerate(n, n as usize, true) {
            ok &= q_degree_check(&lambda)?.ok;
            checks += 1;
        }
    }
    Ok((ok, checks))
}

fn casimir(max_n: u32) -> Result<(bool, usize)> {
    let mut checks = 0;
    let mut ok = true;
    for k in [frac(1, 3), int(1)] {
        for n in 2..=max_n.min(4) {
            for nvars in 1..=3 {
                for mu in enumerate(n, nvars, true) {
                    ok &= casimir_check(&mu, nvars, &k)?;
                    checks += 1;
                }
            }
        }
    }
    Ok((ok, checks))
}
