//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use expcx::complexity::{maximal_value, satisfies_degree_bound};
use expcx::experiments::{
    compare_carlitz, count_exceptional_shifts, montecarlo_theorem2, verify_theorem3,
    verify_theorem_star, MonteCarloParams, Verdict,
};
use expcx::field::is_prime;
use expcx::generators::{check_derivative_identity, inversive_prefix, random_prefix};
use expcx::poly::{count_normalized_irreducible, is_irreducible};
use expcx::*;

/// Largest `|I_2(d) − main| / error_scale` accepted by criterion 7.
const CARLITZ_FACTOR: f64 = 4.0;
/// Criterion 8: `(d−1)^2 · binom(d+1, 2)` at `d = 3`.
const SHIFT_BOUND: u64 = 24;
/// Criterion 9 tolerances.
const MC_MAX_FRACTION: f64 = 0.05;
const MC_MAX_LOWER_BOUND_SHARE: f64 = 0.10;
const MC_SEED: u64 = 20_240_601;

fn field(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn criterion_1() -> Outcome {
    let f = field(5);
    let s = SequencePrefix::from_residues(f, vec![0, 0, 0, 0, 0, 1]).unwrap();
    let e = expansion_complexity(&s, 6).unwrap();
    let star = i_expansion_complexity(&s, 6, &SearchConfig::default()).unwrap();
    let xy = BivariatePoly::parse(f, "x*y").unwrap();
    let y_x5 = BivariatePoly::parse(f, "y - x^5")
        .unwrap()
        .normalize()
        .unwrap();
    let pass = e.value == 2
        && e.witness.as_ref() == Some(&xy)
        && star.value == 5
        && star.is_exact()
        && star.witness.as_ref() == Some(&y_x5);
    let show = |w: &Option<BivariatePoly>| w.as_ref().map_or("-".to_string(), |h| h.to_string());
    outcome(
        pass,
        format!(
            "E_6 = {} ({}), E*_6 = {} ({}, {:?})",
            e.value,
            show(&e.witness),
            star.value,
            show(&star.witness),
            star.status
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut violations = 0;
    let mut checked = 0;
    for i in 0..1000u64 {
        let q = [2, 3, 5][(i % 3) as usize];
        let s = random_prefix(field(q), 60, i);
        for (k, &e) in expansion_profile_values(&s, 60).unwrap().iter().enumerate() {
            checked += 1;
            if !satisfies_degree_bound(e, k + 1) {
                violations += 1;
            }
        }
    }
    outcome(
        violations == 0,
        format!("{checked} values of E_N, {violations} violations"),
    )
}

/// `Σ c_ij x^i G^j ≡ 0 mod x^n`, evaluated from scratch.
fn annihilates(p: u64, s: &[u64], n: usize, terms: &[(usize, usize, u64)]) -> bool {
    let mut acc = vec![0u64; n];
    for &(i, j, c) in terms {
        let mut power = vec![0u64; n];
        power[0] = 1;
        for _ in 0..j {
            let mut next = vec![0u64; n];
            for a in 0..n {
                for b in 0..n - a {
                    next[a + b] = (next[a + b] + power[a] * s[b]) % p;
                }
            }
            power = next;
        }
        for k in i..n {
            acc[k] = (acc[k] + c * power[k - i]) % p;
        }
    }
    acc.iter().all(|&v| v == 0)
}

/// Least `d` for which some normalized polynomial of degree exactly `d`
/// annihilates the prefix.
fn oracle_e(p: u64, s: &[u64], n: usize) -> u32 {
    if s[..n].iter().all(|&v| v == 0) {
        return 0;
    }
    for d in 1..=5usize {
        let monos: Vec<(usize, usize)> = (0..=d)
            .flat_map(|t| (0..=t).map(move |j| (t - j, j)))
            .collect();
        let top: Vec<usize> = (0..monos.len())
            .filter(|&k| monos[k].0 + monos[k].1 == d)
            .collect();
        for lead in top {
            // coefficient 1 on `lead`, zero on top monomials before it
            let free: Vec<usize> = (0..monos.len())
                .filter(|&k| {
                    k != lead && !(monos[k].0 + monos[k].1 == d && monos[k].1 < monos[lead].1)
                })
                .collect();
            let mut c = vec![0u64; free.len()];
            loop {
                let mut terms = vec![(monos[lead].0, monos[lead].1, 1)];
                terms.extend(
                    free.iter()
                        .zip(&c)
                        .filter(|(_, &v)| v != 0)
                        .map(|(&k, &v)| (monos[k].0, monos[k].1, v)),
                );
                if annihilates(p, s, n, &terms) {
                    return d as u32;
                }
                let Some(pos) = c.iter().position(|&v| v + 1 < p) else {
                    break;
                };
                c[pos] += 1;
                c[..pos].iter_mut().for_each(|v| *v = 0);
            }
        }
    }
    unreachable!("degree 3 always suffices for six symbols")
}

fn criterion_3() -> Outcome {
    let mut mismatches = Vec::new();
    for code in 0..729u32 {
        let symbols: Vec<u64> = (0..6).map(|k| (code / 3u32.pow(k) % 3) as u64).collect();
        let s = SequencePrefix::from_residues(field(3), symbols.clone()).unwrap();
        for n in 1..=6 {
            let got = expansion_complexity(&s, n).unwrap().value;
            let want = oracle_e(3, &symbols, n);
            if got != want {
                mismatches.push(format!("{symbols:?}/N={n}: {got} vs {want}"));
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        format!(
            "729 x 6 cases, {} mismatches {}",
            mismatches.len(),
            mismatches
                .iter()
                .take(3)
                .cloned()
                .collect::<Vec<_>>()
                .join("; ")
        ),
    )
}

fn criterion_4() -> Outcome {
    let primes: Vec<u64> = (3..=101).filter(|&p| is_prime(p)).collect();
    let failing: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|&p| verify_theorem3(field(p)).unwrap().verdict != Verdict::Pass)
        .collect();
    // the report is only trusted alongside an independent look at p = 101
    let s = inversive_prefix(field(101), 0, 100).unwrap();
    let direct = (2..=100).all(|n| expansion_complexity(&s, n).unwrap().value == maximal_value(n));
    outcome(
        failing.is_empty() && direct,
        format!(
            "{} primes, failing {failing:?}, p=101 pointwise {}",
            primes.len(),
            if direct { "ok" } else { "mismatch" }
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for p in [29u64, 31] {
        let r = verify_theorem_star(field(p), &SearchConfig::default()).unwrap();
        let window: Vec<_> = r
            .cases
            .iter()
            .filter(|c| c["d_prime"] == 6 && (23..28).contains(&c["n"].as_u64().unwrap()))
            .collect();
        let ok = window.len() == 5
            && window
                .iter()
                .all(|c| c["value"] == 6 && c["status"] == "exact");
        // the witnesses are re-checked here rather than taken on trust
        let s = inversive_prefix(field(p), 0, 28).unwrap();
        let witnesses_ok = window.iter().all(|c| {
            let h = BivariatePoly::parse(field(p), c["witness"].as_str().unwrap_or("")).unwrap();
            let n = c["n"].as_u64().unwrap() as usize;
            h.total_degree() == 6
                && is_irreducible(&h).unwrap()
                && h.eval_at_series(&s.prefix(n).series()).unwrap().is_zero()
        });
        pass &= ok && witnesses_ok;
        let values: Vec<String> = window
            .iter()
            .map(|c| format!("{}:{}", c["n"], c["value"]))
            .collect();
        parts.push(format!("p={p} [{}]", values.join(" ")));
    }
    outcome(pass, parts.join(", "))
}

fn criterion_6() -> Outcome {
    let mut failing = Vec::new();
    for p in [3u64, 5, 7, 11, 29, 101] {
        let r = check_derivative_identity(field(p), 3 * p as usize).unwrap();
        if !r.passed() {
            failing.push((p, r.first_mismatch));
        }
    }
    outcome(
        failing.is_empty(),
        format!("p in {{3,5,7,11,29,101}}, n_check = 3p, failing {failing:?}"),
    )
}

fn criterion_7() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (q, d_max) in [(2u64, 4u32), (3, 3)] {
        let r = compare_carlitz(field(q), d_max).unwrap();
        for c in &r.cases {
            let ratio = c["ratio"].as_f64().unwrap();
            pass &= ratio <= CARLITZ_FACTOR;
            parts.push(format!(
                "q={q} d={} I={} ratio={ratio:.3}",
                c["d"], c["exact"]
            ));
        }
    }
    for q in [2u64, 3, 5] {
        let i1 = count_normalized_irreducible(field(q), 1).unwrap();
        pass &= i1 == q * (q + 1);
        parts.push(format!("I(q={q},1)={i1}"));
    }
    outcome(
        pass,
        format!("tolerance {CARLITZ_FACTOR}; {}", parts.join(", ")),
    )
}

fn criterion_8() -> Outcome {
    let r = count_exceptional_shifts(field(101), 3).unwrap();
    let count = r.summary["exceptional_count"].as_u64().unwrap();
    outcome(
        count <= SHIFT_BOUND,
        format!(
            "{count} exceptional shifts {} (bound {SHIFT_BOUND})",
            r.summary["exceptional_shifts"]
        ),
    )
}

fn criterion_9() -> Outcome {
    let params = MonteCarloParams {
        n: 40,
        trials: 200,
        epsilon: 0.25,
        seed: MC_SEED,
        max_fraction: MC_MAX_FRACTION,
    };
    let cfg = SearchConfig::default();
    let r = montecarlo_theorem2(field(2), &params, &cfg).unwrap();
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| montecarlo_theorem2(field(2), &params, &cfg).unwrap());
    let fraction = r.summary["fraction"].as_f64().unwrap();
    let lb = r.summary["lower_bound_trials"].as_u64().unwrap() as f64 / params.trials as f64;
    let has_bound = r.summary["analytic_bound"].as_str() == Some("3/4096");
    let deterministic = serial.without_timing() == r.without_timing();
    let pass =
        lb <= MC_MAX_LOWER_BOUND_SHARE && fraction <= MC_MAX_FRACTION && has_bound && deterministic;
    outcome(
        pass,
        format!(
            "b = {}, fraction {fraction} (max {MC_MAX_FRACTION}), lower-bound share {lb}, analytic bound {}, serial = parallel: {deterministic}, verdict {:?}",
            r.summary["threshold"], r.summary["analytic_bound"], r.verdict
        ),
    )
}

fn criterion_10() -> Outcome {
    let f = field(11);
    let full = inversive_prefix(f, 0, 33).unwrap();
    let s = full.prefix(25);
    let Some(h) = find_defining_poly(&s, 5).unwrap() else {
        let e = expansion_complexity(&s, 25).unwrap().value;
        return outcome(
            false,
            format!("no irreducible h with d^2 <= 25 annihilates the prefix (E_25 = {e})"),
        );
    };
    let ext = extend_sequence(&h, &s, 8).unwrap();
    let pass = is_irreducible(&h).unwrap()
        && ext.status == ExtensionStatus::Complete
        && ext.appended == full.symbols()[25..33];
    outcome(
        pass,
        format!(
            "h = {h}, appended {:?}, status {:?}",
            ext.appended, ext.status
        ),
    )
}

type Criterion = fn() -> Outcome;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("example values E_6 and E*_6", criterion_1),
        ("degree bound on 1000 random sequences", criterion_2),
        (
            "brute-force oracle on all ternary length-6 prefixes",
            criterion_3,
        ),
        (
            "maximal profile of the inversive generator, 3 <= p <= 101",
            criterion_4,
        ),
        ("E*_N = 6 for p in {29, 31}, 23 <= N < 28", criterion_5),
        ("derivative identity", criterion_6),
        ("irreducible counts against the main term", criterion_7),
        ("exceptional shifts, p = 101, d = 3", criterion_8),
        ("Monte Carlo threshold fraction, q = 2, n = 40", criterion_9),
        ("defining polynomial and continuation, p = 11", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!(
            "{tag} criterion {:>2}: {name} [{:.1?}] {}",
            i + 1,
            start.elapsed(),
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
