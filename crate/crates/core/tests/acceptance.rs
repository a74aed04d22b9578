//! Acceptance suite: one PASS/FAIL line per criterion, with timings.
//! Exits nonzero if any criterion fails or overruns its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bn_harmonics::cli::run;
use bn_harmonics::dunkl::{materialize_sym, OperatorContext};
use bn_harmonics::evaluation::{
    h_at_ones_direct, h_at_ones_residue, laurent_vanishing_check, q_degree_check,
};
use bn_harmonics::harmonic::{
    biorthogonality_value, casimir_eigenvalue, certify_gram_det_identity, full_gram_det_closed,
    gram_det_closed, gram_matrix, h_expansion, pairing_g_h, pairing_h_fast,
};
use bn_harmonics::partition::{count_partitions, count_tilde, enumerate};
use bn_harmonics::scalar::{frac, half, int, pochhammer_partition, pow2};
use bn_harmonics::symfunc::{matrix_b_by_inversion, matrix_b_closed};
use bn_harmonics::{Partition, Rational, SymPoly, XPoly};
use num_traits::{One, Zero};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn ground_truth_matrix() -> Outcome {
    let expected: [[i64; 9]; 9] = [
        [1, -2, 0, -2, 8, 0, 2, -18, 18],
        [0, 1, 0, 0, -10, 0, 0, 42, -72],
        [0, 0, 1, -3, 3, 0, 3, -9, 9],
        [0, 0, 0, 1, -3, 0, -2, 13, -18],
        [0, 0, 0, 0, 1, 0, 0, -9, 24],
        [0, 0, 0, 0, 0, 1, -2, 2, -2],
        [0, 0, 0, 0, 0, 0, 1, -4, 9],
        [0, 0, 0, 0, 0, 0, 0, 1, -6],
        [0, 0, 0, 0, 0, 0, 0, 0, 1],
    ];
    let labels = ["2,2,1,1", "3,1,1,1", "2,2,2", "3,2,1", "4,1,1", "3,3", "4,2", "5,1", "6"];
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = ["bnharm", "transition", "--which", "B", "--n", "6", "--N", "4", "--format", "json"];
    let code = run(args, &mut out, &mut err);
    if code != 0 {
        return outcome(false, format!("exit code {code}"));
    }
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    let got_labels: Vec<&str> = v["labels"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    let got_rows: Vec<Vec<String>> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect())
        .collect();
    let want_rows: Vec<Vec<String>> = expected.iter().map(|r| r.iter().map(i64::to_string).collect()).collect();
    let ok = got_labels == labels && got_rows == want_rows;
    outcome(ok, "81 entries and label order")
}

fn formula_vs_inversion() -> Outcome {
    let mut entries = 0;
    for n in 0..=8 {
        for nvars in 1..=6 {
            let b = matrix_b_by_inversion(n, nvars);
            for (i, mu) in b.row_labels().iter().enumerate() {
                for (j, lambda) in b.col_labels().iter().enumerate() {
                    if matrix_b_closed(mu, lambda).unwrap() != *b.at(i, j) {
                        return outcome(false, format!("B({mu},{lambda}) at N={nvars}"));
                    }
                    entries += 1;
                }
            }
        }
    }
    outcome(true, format!("{entries} entries"))
}

fn harmonicity_and_contiguity() -> Outcome {
    let mut cases = 0;
    for kappa in [int(0), frac(1, 3), frac(1, 2), int(2)] {
        for nvars in 1..=4 {
            let ctx = OperatorContext::new(nvars, kappa.clone(), 5).unwrap();
            for n in 0..=5 {
                for mu in enumerate(n, nvars, false) {
                    let h = h_expansion(&mu, nvars, &kappa).unwrap().materialize();
                    let lhs = ctx.laplacian(&h);
                    let rhs = if mu.get(0) > mu.get(1) {
                        let mut lower = mu.parts().to_vec();
                        lower[0] -= 1;
                        let lower = Partition::new(lower).unwrap();
                        h_expansion(&lower, nvars, &kappa).unwrap().materialize().scale(&int(2))
                    } else {
                        XPoly::zero(nvars)
                    };
                    if lhs != rhs {
                        return outcome(false, format!("μ={mu} N={nvars} κ={kappa}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    outcome(true, format!("{cases} (μ, N, κ) cases"))
}

fn gram_determinant() -> Outcome {
    let kappas = [frac(1, 3), frac(1, 2), int(1), frac(7, 5), int(2), frac(11, 4)];
    let mut cases = 0;
    let mut nodes = 0;
    for n in 2..=6 {
        for nvars in 1..=4 {
            for kappa in &kappas {
                let tilde = gram_matrix(n, nvars, kappa, true).unwrap().determinant().unwrap();
                if tilde != gram_det_closed(n, nvars, kappa).unwrap() {
                    return outcome(false, format!("tilde n={n} N={nvars} κ={kappa}"));
                }
                let full = gram_matrix(n, nvars, kappa, false).unwrap().determinant().unwrap();
                let product = enumerate(n, nvars, false).iter().fold(Rational::one(), |acc, l| {
                    acc / (bn_harmonics::scalar::from_integer(l.factorial())
                        * pochhammer_partition(&(kappa + half()), l)
                        * bn_harmonics::scalar::from_integer(l.m_at_ones(nvars).unwrap()))
                });
                if full != product || full != full_gram_det_closed(n, nvars, kappa).unwrap() {
                    return outcome(false, format!("full n={n} N={nvars} κ={kappa}"));
                }
                cases += 1;
            }
            let cert = certify_gram_det_identity(n, nvars).unwrap();
            if !cert.ok {
                return outcome(false, format!("identity in κ fails n={n} N={nvars}"));
            }
            nodes += cert.nodes;
        }
    }
    outcome(true, format!("{cases} exact cases at 6 κ; identity certified with {nodes} nodes"))
}

fn biorthogonality() -> Outcome {
    let mut pairs = 0;
    for kappa in [frac(1, 2), frac(5, 3)] {
        for n in 2..=5 {
            for nvars in 2..=5 {
                let shapes = enumerate(n, nvars, true);
                for lambda in &shapes {
                    for mu in &shapes {
                        let got = pairing_g_h(lambda, mu, nvars, &kappa).unwrap();
                        let want = if lambda == mu {
                            biorthogonality_value(lambda, nvars, &kappa).unwrap()
                        } else {
                            Rational::zero()
                        };
                        if got != want {
                            return outcome(false, format!("λ={lambda} μ={mu} N={nvars} κ={kappa}"));
                        }
                        pairs += 1;
                    }
                }
            }
        }
    }
    outcome(true, format!("{pairs} pairs"))
}

fn oracle_equivalence() -> Outcome {
    let mut pairs = 0;
    for kappa in [frac(1, 3), int(2)] {
        for nvars in 1..=3 {
            let ctx = OperatorContext::new(nvars, kappa.clone(), 6).unwrap();
            for n in 0..=3 {
                let shapes = enumerate(n, nvars, false);
                for lambda in &shapes {
                    let f = SymPoly::monomial(lambda.clone());
                    let fx = materialize_sym(&f, nvars).unwrap();
                    for mu in &shapes {
                        let g = SymPoly::monomial(mu.clone());
                        let gx = materialize_sym(&g, nvars).unwrap();
                        if pairing_h_fast(&f, &g, nvars, &kappa).unwrap() != ctx.pairing_h_oracle(&fx, &gx) {
                            return outcome(false, format!("{lambda} vs {mu} N={nvars} κ={kappa}"));
                        }
                        pairs += 1;
                    }
                }
            }
        }
    }
    outcome(true, format!("{pairs} pairs"))
}

fn point_evaluation() -> Outcome {
    let mut cases = 0;
    for kappa in [frac(1, 3), frac(1, 2), int(1), frac(7, 5)] {
        for n in 2..=8 {
            for lambda in enumerate(n, n as usize, true) {
                if h_at_ones_direct(&lambda, &kappa).unwrap() != h_at_ones_residue(&lambda, &kappa).unwrap() {
                    return outcome(false, format!("λ={lambda} κ={kappa}"));
                }
                cases += 1;
            }
        }
        for l in 1..=4u32 {
            let s = &kappa + half();
            let ll = Partition::new(vec![l, l]).unwrap();
            let want = Rational::one()
                / (pow2(2 * i64::from(l))
                    * bn_harmonics::scalar::factorial(l).into_rational()
                    * pochhammer_partition(&s, &Partition::new(vec![2 * l, l]).unwrap()));
            let ll1 = Partition::new(vec![l, l, 1]).unwrap();
            let want1 = Rational::one()
                / (pow2(2 * i64::from(l))
                    * bn_harmonics::scalar::factorial(l - 1).into_rational()
                    * pochhammer_partition(&s, &Partition::new(vec![2 * l + 1, l, 1]).unwrap()));
            for (shape, value) in [(ll, want), (ll1, want1)] {
                let direct = h_at_ones_direct(&shape, &kappa).unwrap();
                let residue = h_at_ones_residue(&shape, &kappa).unwrap();
                if direct != value || residue != value {
                    return outcome(false, format!("special value {shape} κ={kappa}"));
                }
                cases += 1;
            }
        }
    }
    outcome(true, format!("{cases} evaluations"))
}

trait IntoRational {
    fn into_rational(self) -> Rational;
}

impl IntoRational for bn_harmonics::Integer {
    fn into_rational(self) -> Rational {
        Rational::from_integer(self)
    }
}

fn degree_bound() -> Outcome {
    let mut cases = 0;
    for n in 2..=8u32 {
        for lambda in enumerate(n, n as usize, true) {
            let q = q_degree_check(&lambda).unwrap();
            let bound = i64::from(n / 2) - i64::from(lambda.get(0));
            if !q.ok || q.bound != bound || q.degree.is_some_and(|d| d as i64 > bound) {
                return outcome(false, format!("deg q for {lambda}"));
            }
            let laurent = laurent_vanishing_check(&lambda, n as usize).unwrap();
            let order = laurent.leading_order.unwrap_or(u32::MAX);
            if !laurent.ok || order < (3 * n).div_ceil(2) {
                return outcome(false, format!("Laurent order for {lambda}"));
            }
            cases += 1;
        }
    }
    outcome(true, format!("{cases} partitions"))
}

fn casimir_eigenvalue_check() -> Outcome {
    let mut cases = 0;
    for kappa in [int(0), frac(1, 3), int(2)] {
        for nvars in 1..=3 {
            let ctx = OperatorContext::new(nvars, kappa.clone(), 4).unwrap();
            for n in 2..=4u32 {
                let eigen = int(-2 * i64::from(n))
                    * (int(nvars as i64 - 2 + 2 * i64::from(n)) + int(2 * nvars as i64) * &kappa);
                if eigen != casimir_eigenvalue(n, nvars, &kappa) {
                    return outcome(false, "eigenvalue formula");
                }
                for mu in enumerate(n, nvars, true) {
                    let h = h_expansion(&mu, nvars, &kappa).unwrap().materialize();
                    let want = h.scale(&eigen);
                    if ctx.casimir(&h) != want || ctx.casimir_via_identity(&h) != want {
                        return outcome(false, format!("μ={mu} N={nvars} κ={kappa}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    outcome(true, format!("{cases} cases, both routes"))
}

fn counting() -> Outcome {
    for n in 0..=12 {
        for nvars in 1..=6 {
            let tilde = count_tilde(n, nvars);
            if tilde != enumerate(n, nvars, true).len() as u64 {
                return outcome(false, format!("count_tilde n={n} N={nvars}"));
            }
            if n >= 1 && count_partitions(n, nvars) - count_partitions(n - 1, nvars) != tilde {
                return outcome(false, format!("dimension n={n} N={nvars}"));
            }
        }
    }
    let six_three = enumerate(6, 3, true);
    if count_tilde(6, 3) != 2 || six_three != vec![p("2,2,2"), p("3,3")] {
        return outcome(false, "d(6,3)");
    }
    outcome(true, "n ≤ 12, N ≤ 6; d(6,3) = 2")
}

type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("ground-truth matrix B for P_6^(4)", ground_truth_matrix, Some(1)),
        ("closed B equals inverted A, n ≤ 8, N ≤ 6", formula_vs_inversion, Some(60)),
        ("harmonicity and contiguity of h_μ, n ≤ 5, N ≤ 4", harmonicity_and_contiguity, Some(120)),
        ("Gram determinants, n ≤ 6, N ≤ 4", gram_determinant, Some(120)),
        ("biorthogonality of g_λ and h_μ, n ≤ 5", biorthogonality, None),
        ("fast pairing equals operator pairing, n ≤ 3, N ≤ 3", oracle_equivalence, None),
        ("h_λ(1^N) direct equals residue, n ≤ 8; special values l ≤ 4", point_evaluation, None),
        ("deg q_λ ≤ ⌊n/2⌋ - λ_1 and Laurent vanishing, n ≤ 8", degree_bound, None),
        ("Casimir eigenvalue on h_μ, n ≤ 4, N ≤ 3", casimir_eigenvalue_check, None),
        ("counting d(n,N), n ≤ 12, N ≤ 6", counting, None),
    ];
    let mut failures = 0;
    for (index, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|s| elapsed <= Duration::from_secs(s));
        let ok = result.ok && in_time;
        if !ok {
            failures += 1;
        }
        let budget_note = match budget {
            Some(s) if !in_time => format!(", over the {s} s budget"),
            _ => String::new(),
        };
        println!(
            "{} [{}] {}: {} ({:.3} s{})",
            if ok { "PASS" } else { "FAIL" },
            index + 1,
            name,
            result.detail,
            elapsed.as_secs_f64(),
            budget_note
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
