//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use popswitch::cli::{half_cup_cap, iota_partition_counterexample, lift_functor_counterexample};
use popswitch::jw::{check_jw_properties, jones_wenzl, jw_solve_by_uniqueness};
use popswitch::karoubi::{check_direct_sum_hypotheses, decompose_jw, find_isomorphism, IdempotentObject};
use popswitch::otl::{
    alpha, beta, lift, scalar, verify_arc_move, verify_ia, verify_oio, verify_teleport, ArcMoveStatus, Chirality,
    OrElement, Signature,
};
use popswitch::qarith::{delta, quantum_int, verify_cor_q, verify_lemma_q, RatFunc};
use popswitch::tldiag::{enumerate_basis, Element, Matching};

const QIDENTITY_LIMIT: Duration = Duration::from_secs(5);
const JW_LIMIT: Duration = Duration::from_secs(60);
const DECOMPOSE_LIMIT: Duration = Duration::from_secs(600);
const LIFT_SAMPLES: usize = 200;
const CHIRALITIES: [Chirality; 2] = [Chirality::Standard, Chirality::Mirrored];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn qint(n: usize) -> RatFunc {
    RatFunc::from_poly(quantum_int(n as u32))
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    if t < limit {
        Ok(format!("{:.2} s < {} s", t.as_secs_f64(), limit.as_secs()))
    } else {
        Err(format!("took {:.2} s, limit {} s", t.as_secs_f64(), limit.as_secs()))
    }
}

fn quantum_identities() -> Outcome {
    let start = Instant::now();
    for k in 1..=30 {
        for l in 1..=30 {
            if !verify_lemma_q(k, l) || !verify_cor_q(k, l) {
                return Err(format!("k={k} l={l}"));
            }
        }
    }
    within(start, QIDENTITY_LIMIT)
}

fn tl_combinatorics() -> Outcome {
    let catalan = [1, 2, 5, 14, 42, 132, 429, 1430];
    for (n, &c) in (1..=8).zip(&catalan) {
        let got = enumerate_basis(n, n).len();
        if got != c {
            return Err(format!("n={n}: {got} diagrams, expected {c}"));
        }
    }
    let e = Element::from_diagram(Matching::cup_cap(2, 0).unwrap());
    if e.compose(&e).unwrap() != e.scale(&RatFunc::from_poly(delta())) {
        return Err("e1 e1 != (q + q^-1) e1".into());
    }
    Ok("Catalan counts n=1..8, e1^2 = (q + q^-1) e1".into())
}

fn jones_wenzl_properties() -> Outcome {
    let start = Instant::now();
    for n in 1..=8 {
        let p = jones_wenzl(n).map_err(|e| e.to_string())?.element;
        let rep = check_jw_properties(&p).map_err(|e| e.to_string())?;
        if !rep.all_pass() {
            return Err(format!("n={n}: {rep:?}"));
        }
        if n <= 6 && p != jw_solve_by_uniqueness(n).map_err(|e| e.to_string())? {
            return Err(format!("n={n}: differs from the uniqueness oracle"));
        }
    }
    within(start, JW_LIMIT)
}

fn quantum_dimension() -> Outcome {
    for n in 1..=8 {
        let t = jones_wenzl(n).unwrap().element.close_trace().unwrap();
        if t != qint(n + 1) {
            return Err(format!("n={n}: closure {t}"));
        }
    }
    Ok("closure(p_n) = [n+1], n=1..8".into())
}

fn oriented_soundness() -> Outcome {
    if let Some(c) = lift_functor_counterexample(LIFT_SAMPLES, 2024).map_err(|e| e.to_string())? {
        return Err(c);
    }
    let cap = lift(&Element::from_diagram(Matching::cap(2, 0).unwrap()));
    let cup = lift(&Element::from_diagram(Matching::cup(2, 0).unwrap()));
    for c in CHIRALITIES {
        if cap.or_compose(&cup, c).unwrap() != scalar(RatFunc::from_poly(delta())) {
            return Err(format!("loop orientations do not sum to q + q^-1 ({c})"));
        }
    }
    for n in 0..=6 {
        if let Some(c) = iota_partition_counterexample(n).map_err(|e| e.to_string())? {
            return Err(c);
        }
    }
    Ok(format!("{LIFT_SAMPLES} random pairs, loop sum, signature partition n<=6"))
}

fn lemma_suite() -> Outcome {
    for len in [0, 2, 4] {
        for s in Signature::all(len).into_iter().filter(Signature::is_balanced) {
            for c in CHIRALITIES {
                for x in [beta(3, c), alpha(2, c), &beta(1, c) + &beta(-1, c)] {
                    if !verify_teleport(&x, &s).unwrap() {
                        return Err(format!("teleport x={x} s={s}"));
                    }
                }
            }
        }
    }
    for k in 0..=8 {
        for n in 0..=k {
            for c in CHIRALITIES {
                if !verify_ia(k, n, c).unwrap() {
                    return Err(format!("ia k={k} n={n} ({c})"));
                }
            }
        }
    }
    for n in 0..=8 {
        for c in CHIRALITIES {
            if !verify_oio(n, c) {
                return Err(format!("oio n={n} ({c})"));
            }
        }
    }
    let mut conventions = Vec::new();
    for n in 0..=5 {
        let rep = verify_arc_move(n).map_err(|e| e.to_string())?;
        match rep.status {
            ArcMoveStatus::Validated(cs) => {
                let names: Vec<String> = cs.iter().map(ToString::to_string).collect();
                conventions.push(format!("n={n}: {}", names.join("+")));
            }
            ArcMoveStatus::EncodingFail => return Err(format!("{rep}")),
        }
    }
    Ok(format!("teleport, ia k<=8, oio n<=8; arcMove {}", conventions.join("; ")))
}

fn main_theorem() -> Outcome {
    let mut found = Vec::new();
    for n in 1..=4 {
        let start = Instant::now();
        let d = decompose_jw(n, Chirality::Standard).map_err(|e| e.to_string())?;
        let cert = d.certificate();
        if d.signatures().len() != n + 1 {
            return Err(format!("n={n}: {} summands", d.signatures().len()));
        }
        if !cert.validate().map_err(|e| e.to_string())? {
            return Err(format!("n={n}: certificate does not re-validate"));
        }
        let total = cert.summands().iter().fold(RatFunc::zero(), |acc, q| &acc + &q.closure());
        if total != qint(n + 1) {
            return Err(format!("n={n}: closure sum {total}"));
        }
        let sigs: Vec<String> = d.signatures().iter().map(ToString::to_string).collect();
        found.push(format!("n={n} {{{}}}", sigs.join(",")));
        if n == 4 {
            within(start, DECOMPOSE_LIMIT)?;
        }
    }
    Ok(found.join(" "))
}

fn dir_sum() -> Outcome {
    let c = Chirality::Standard;
    let obj = |x: &Element| IdempotentObject::lifted(x, c).map_err(|e| e.to_string());
    let id2 = obj(&Element::identity(2))?;
    let parts = [obj(&jones_wenzl(2).unwrap().element)?, obj(&half_cup_cap())?];
    if !check_direct_sum_hypotheses(&id2, &parts).map_err(|e| e.to_string())? {
        return Err("hypotheses fail".into());
    }
    let cert = find_isomorphism(&id2, &parts).map_err(|e| e.to_string())?.ok_or("no certificate")?;
    let degenerate: Vec<&OrElement> = parts.iter().map(IdempotentObject::idem).collect();
    if cert.u().iter().collect::<Vec<_>>() != degenerate {
        return Err("certificate is not the degenerate one".into());
    }
    Ok("id_2 = p_2 + e_1/[2], hypotheses exact, certificate valid".into())
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_popswitch");
    let commands: Vec<Vec<&str>> = vec![
        vec!["qnum", "5"],
        vec!["qnum", "6", "--choose", "3"],
        vec!["jw", "--n", "5"],
        vec!["jw", "--n", "5", "--check"],
        vec!["verify", "all"],
        vec!["verify", "qidentities", "--q0", "3/2"],
        vec!["decompose", "1"],
        vec!["decompose", "2"],
        vec!["decompose", "3"],
        vec!["decompose", "4"],
        vec!["decompose", "4", "--mirrored"],
        vec!["verify", "bogus"],
    ];
    for args in &commands {
        let run = || Command::new(bin).args(args).output().map_err(|e| e.to_string());
        let (a, b) = (run()?, run()?);
        if a.stdout != b.stdout || a.stderr != b.stderr || a.status.code() != b.status.code() {
            return Err(format!("output differs for {args:?}"));
        }
    }
    Ok(format!("{} commands run twice, byte-identical", commands.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("quantum identities", quantum_identities),
        ("TL combinatorics", tl_combinatorics),
        ("Jones-Wenzl", jones_wenzl_properties),
        ("quantum dimension", quantum_dimension),
        ("oriented model soundness", oriented_soundness),
        ("lemma suite", lemma_suite),
        ("main theorem", main_theorem),
        ("direct sum instance", dir_sum),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", k + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
