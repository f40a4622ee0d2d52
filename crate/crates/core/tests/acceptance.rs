//! Acceptance run: one line per criterion with its verdict and timing.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cma_core::centralizer::CentralizerReport;
use cma_core::field::{BaseField, ExtensionField, PrimeField, Rationals};
use cma_core::homlab::{hom_dim_report, DomDim, GlDim, DEFAULT_RESOLUTION_CAP};
use cma_core::matrix::{elementary_divisors, Matrix};
use cma_core::oracle::{self, SuiteResult};
use cma_core::perm::{compare_cycle_types, CycleType};
use cma_core::sequiv::{
    j_transform, maximal_reducible, power_index_set, s_equivalent, Obstruction, PairMode,
    PowerIndexSet, SEquivOutcome,
};

const SEED: u64 = 20240601;

fn jordan_sum<F: BaseField>(field: F, blocks: &[(usize, i64)]) -> Matrix<F> {
    let mut m = Matrix::zeros(field.clone(), 0, 0);
    for &(n, a) in blocks {
        m = m.direct_sum(&Matrix::jordan_block(field.clone(), n, &field.from_i64(a))).unwrap();
    }
    m
}

fn set(v: &[usize]) -> PowerIndexSet {
    v.iter().copied().collect()
}

fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v
}

fn strs(v: &[&str]) -> Vec<String> {
    sorted(v.iter().map(|s| s.to_string()).collect())
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn suite(r: SuiteResult, min_trials: usize) -> Outcome {
    ensure(r.trials >= min_trials, format!("{}: only {} trials", r.name, r.trials))?;
    ensure(r.passed(), format!("{}: {} failures, first {:?}", r.name, r.failures, r.first_failure))?;
    Ok(match r.premises {
        Some(p) => format!("{} trials, {} with premise, 0 failures", r.trials, p),
        None => format!("{} trials, 0 failures", r.trials),
    })
}

fn example_one<F: BaseField>(field: F) -> Result<(), String> {
    let e = |x| format!("{x:?}");
    // x - 1 prints with a nonnegative residue over F_p
    let xm1 = cma_core::Poly::from_i64s(field.clone(), &[-1, 1]).to_string();
    let c = jordan_sum(field.clone(), &[(3, 0), (1, 0), (1, 1)]);
    let d = jordan_sum(field, &[(3, 1), (2, 1)]);
    let ec = elementary_divisors(&c).map_err(e)?;
    let ed = elementary_divisors(&d).map_err(e)?;
    let pw = |k: usize| format!("({xm1})^{k}");
    ensure(sorted(ec.display_list()) == strs(&["x^3", "x", &xm1]), format!("E_c = {ec}"))?;
    ensure(sorted(ed.display_list()) == strs(&[&pw(3), &pw(2)]), format!("E_d = {ed}"))?;
    let rc = maximal_reducible(&ec);
    let rd = maximal_reducible(&ed);
    ensure(rc.len() == 1 && rc[0].to_string() == "x^3", "R_c")?;
    ensure(rd.len() == 1 && rd[0].to_string() == pw(3), "R_d")?;
    let pc = power_index_set(&ec, &rc[0]).map_err(e)?;
    let pd = power_index_set(&ed, &rd[0]).map_err(e)?;
    ensure(pc == set(&[1, 3]) && pd == set(&[2, 3]), format!("P_c = {pc}, P_d = {pd}"))?;
    ensure(j_transform(&pd).map_err(e)? == set(&[1, 3]), "J(P_d)")?;
    let v = s_equivalent(&ec, &ed).map_err(e)?;
    let cert = v.certificate().ok_or("not equivalent")?;
    ensure(cert.pairs.len() == 1 && cert.pairs[0].mode == PairMode::JTransform, "mode")?;
    Ok(())
}

fn criterion_1() -> Outcome {
    example_one(Rationals)?;
    example_one(PrimeField::new(5).unwrap())?;
    Ok("Q and F_5 match".into())
}

fn criterion_2() -> Outcome {
    let e = |x| format!("{x:?}");
    let c = jordan_sum(Rationals, &[(5, 0), (4, 0), (1, 0)]);
    let d = jordan_sum(Rationals, &[(5, 0), (2, 0), (1, 0)]);
    let v = s_equivalent(&elementary_divisors(&c).map_err(e)?, &elementary_divisors(&d).map_err(e)?).map_err(e)?;
    let SEquivOutcome::NotEquivalent(Obstruction::HallViolation { subset, .. }) = &v.outcome else {
        return Err(format!("unexpected {:?}", v.outcome));
    };
    let diag = &subset[0];
    let cand = &diag.candidates[0];
    ensure(diag.src_set == set(&[1, 4, 5]), format!("src set {}", diag.src_set))?;
    ensure(cand.dst_set == set(&[1, 2, 5]), format!("dst set {}", cand.dst_set))?;
    ensure(cand.dst_j == set(&[3, 4, 5]), format!("J {}", cand.dst_j))?;
    Ok("{1, 4, 5} vs {1, 2, 5}, J = {3, 4, 5}".into())
}

fn criterion_3() -> Outcome {
    let e = |x| format!("{x:?}");
    let f3 = PrimeField::new(3).unwrap();
    let t = |s: &str| s.parse::<CycleType>().unwrap();
    let r = compare_cycle_types(&f3, &t("6,2"), &t("6,1")).map_err(e)?;
    // x + 2 = x - 1 over F_3
    ensure(
        sorted(r.left_divisors.display_list()) == strs(&["(x + 2)^3", "(x + 1)^3", "x + 2", "x + 1"]),
        format!("E(6,2) = {}", r.left_divisors),
    )?;
    ensure(
        sorted(r.right_divisors.display_list()) == strs(&["(x + 2)^3", "(x + 1)^3", "x + 2"]),
        format!("E(6,1) = {}", r.right_divisors),
    )?;
    ensure(!r.verdict.is_equivalent(), "(6,2) ~ (6,1)")?;
    ensure(r.left.singular_part_type == t("6,1,1") && r.right.singular_part_type == t("6,1"), "singular types")?;
    ensure(r.singular_verdict.is_equivalent(), "singular parts not equivalent")?;
    ensure(r.singular_strict_verdict.is_equivalent(), "singular parts not strictly equivalent")?;
    Ok("not equivalent; singular parts equivalent and strictly equivalent".into())
}

fn criterion_6() -> Outcome {
    let c = jordan_sum(Rationals, &[(3, 0), (1, 0), (1, 1)]);
    let d = jordan_sum(Rationals, &[(3, 1), (2, 1)]);
    let a = CentralizerReport::from_divisors(&elementary_divisors(&c).unwrap()).num_nonproj_simples;
    let b = CentralizerReport::from_divisors(&elementary_divisors(&d).unwrap()).num_nonproj_simples;
    ensure(a == 2 && b == 2, format!("example counts {a}/{b}"))?;
    suite(oracle::suite_arc_invariant(SEED, 200), 200).map(|s| format!("{s}; example pair 2/2"))
}

fn criterion_7() -> Outcome {
    let a = suite(oracle::suite_equivalence_relation(SEED, 200), 200)?;
    let b = suite(oracle::suite_similarity(SEED + 1, 200), 200)?;
    let c = suite(oracle::suite_j_involution(SEED + 2, 1000), 1000)?;
    Ok(format!("relation {a}; similarity {b}; J-involution {c}"))
}

fn criterion_10() -> Outcome {
    let e = |x| format!("{x:?}");
    // the curated pair: blocks x^3 with {1,3} and (x - 1)^3 with {2,3}
    let c = jordan_sum(Rationals, &[(3, 0), (1, 0), (1, 1)]);
    let d = jordan_sum(Rationals, &[(3, 1), (2, 1)]);
    let ec = elementary_divisors(&c).map_err(e)?;
    let ed = elementary_divisors(&d).map_err(e)?;
    let v = s_equivalent(&ec, &ed).map_err(e)?;
    for pair in &v.certificate().ok_or("not equivalent")?.pairs {
        let report = |irr: &cma_core::Poly<Rationals>, ex: &cma_core::matrix::ElementaryDivisorMultiset<Rationals>| {
            let k = ExtensionField::new(Rationals, irr).map_err(e)?;
            let g = ex.group(irr).unwrap();
            let u = irr.degree().unwrap();
            hom_dim_report(k, u, g.max_exp(), &g.distinct_exps().into_iter().collect(), DEFAULT_RESOLUTION_CAP, SEED)
                .map_err(e)
        };
        let (a, b) = (report(&pair.src.irr, &ec)?, report(&pair.dst.irr, &ed)?);
        ensure(a.gl_dim == b.gl_dim && a.dom_dim == b.dom_dim, format!("{a:?} vs {b:?}"))?;
    }
    let f2 = PrimeField::new(2).unwrap();
    let aus = hom_dim_report(f2, 1, 2, &set(&[1, 2]), DEFAULT_RESOLUTION_CAP, SEED).map_err(e)?;
    ensure(aus.gl_dim == GlDim::Finite(2) && aus.dom_dim == DomDim::Finite(2), format!("{aus:?}"))?;
    for n in 2..=6 {
        let u = hom_dim_report(f2, 1, n, &set(&[n]), DEFAULT_RESOLUTION_CAP, SEED).map_err(e)?;
        ensure(u.gl_dim == GlDim::DetectedInfinite && u.dom_dim == DomDim::Infinite, format!("{u:?}"))?;
    }
    suite(oracle::suite_omega_pairs(SEED, 50, 6), 50).map(|s| format!("{s}; anchors hold"))
}

/// Id, name, time limit in seconds, check.
type Criterion = (u32, &'static str, u64, Box<dyn Fn() -> Outcome>);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (1, "J-transform pair over Q and F_5", 1, Box::new(criterion_1)),
        (2, "Hall obstruction pair", 1, Box::new(criterion_2)),
        (3, "permutation classes (6,2) vs (6,1) over F_3", 1, Box::new(criterion_3)),
        (4, "formula vs SNF, n <= 7", 60, Box::new(|| suite(oracle::suite_formula_vs_snf(&[2, 3, 5], 7), 1))),
        (5, "commutant dimension oracle", 120, Box::new(|| suite(oracle::suite_commutant_dimension(SEED, 500), 500))),
        (6, "ARC invariant", 120, Box::new(criterion_6)),
        (7, "equivalence relation and similarity", 120, Box::new(criterion_7)),
        (8, "p-power J classification", 10, Box::new(|| suite(oracle::suite_p_power_classification(&[2, 3, 5]), 1))),
        (9, "singular parts preserve equivalence", 120, Box::new(|| suite(oracle::suite_singular_parts(SEED, 300), 300))),
        (10, "homological invariants of Omega pairs", 120, Box::new(criterion_10)),
        (11, "realization sanity, n <= 5", 60, Box::new(|| suite(oracle::suite_realization(5), 1))),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > Duration::from_secs(limit) => Err(format!("{msg}; over the {limit}s limit")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("criterion {id:>2} PASS [{:.2}s / {limit}s] {name}: {msg}", took.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("criterion {id:>2} FAIL [{:.2}s / {limit}s] {name}: {msg}", took.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
