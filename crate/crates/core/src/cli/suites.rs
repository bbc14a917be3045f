use std::time::Instant;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::jw::{check_jw_properties, jones_wenzl, jw_solve_by_uniqueness};
use crate::karoubi::{check_direct_sum_hypotheses, decompose_jw, find_isomorphism, IdempotentObject};
use crate::otl::{
    alpha, beta, enumerate_oriented, iota, lift, scalar, verify_arc_move, verify_ia, verify_oio,
    verify_teleport, ArcMoveStatus, Chirality, OrElement, Signature,
};
use crate::qarith::{delta, lp_eval, quantum_binom, quantum_int, verify_cor_q, verify_lemma_q, LaurentPoly, RatFunc};
use crate::tldiag::{enumerate_basis, Element, Matching};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Qidentities,
    Tl,
    Jw,
    Otl,
    Karoubi,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Qidentities => "qidentities",
            Suite::Tl => "tl",
            Suite::Jw => "jw",
            Suite::Otl => "otl",
            Suite::Karoubi => "karoubi",
            Suite::All => "all",
        }
    }

    /// Default and largest accepted `--max`.
    fn bounds(self) -> (usize, usize) {
        match self {
            Suite::Qidentities => (30, 200),
            Suite::Tl => (8, 9),
            Suite::Jw => (6, 8),
            Suite::Otl => (5, 6),
            Suite::Karoubi | Suite::All => (4, 4),
        }
    }

    pub fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Qidentities, Suite::Tl, Suite::Jw, Suite::Otl, Suite::Karoubi],
            s => vec![s],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub passed: bool,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub max: usize,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn render(&self, timings: bool) -> String {
        let mut s = format!("suite {} (max {})\n", self.suite, self.max);
        for c in &self.checks {
            s += if c.passed { "PASS " } else { "FAIL " };
            s += &c.id;
            if let Some(n) = &c.note {
                s += &format!(" ({n})");
            }
            if let Some(x) = &c.counterexample {
                s += &format!(": counterexample {x}");
            }
            if timings {
                s += &format!(" [{} ms]", c.elapsed_ms);
            }
            s.push('\n');
        }
        let ok = self.checks.iter().filter(|c| c.passed).count();
        s += &format!(
            "{}: {ok}/{} checks\n",
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.len()
        );
        s
    }
}

enum Outcome {
    Pass(Option<String>),
    Fail(String),
}

fn pass() -> Result<Outcome> {
    Ok(Outcome::Pass(None))
}

fn expect(ok: bool, counterexample: impl FnOnce() -> String) -> Result<Outcome> {
    Ok(if ok { Outcome::Pass(None) } else { Outcome::Fail(counterexample()) })
}

#[derive(Default)]
struct Runner {
    checks: Vec<CheckResult>,
}

impl Runner {
    fn check(&mut self, id: impl Into<String>, f: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let out = f();
        let elapsed_ms = start.elapsed().as_millis() as u64;
        let (passed, counterexample, note) = match out {
            Ok(Outcome::Pass(note)) => (true, None, note),
            Ok(Outcome::Fail(c)) => (false, Some(c), None),
            Err(e) => (false, Some(format!("error: {e}")), None),
        };
        self.checks.push(CheckResult {
            id: id.into(),
            passed,
            elapsed_ms,
            counterexample,
            note,
        });
    }
}

pub fn run_suite(suite: Suite, max: Option<usize>, q0: Option<&BigRational>) -> SuiteReport {
    let (default, limit) = suite.bounds();
    let max = max.unwrap_or(default).min(limit);
    let mut r = Runner::default();
    match suite {
        Suite::Qidentities => qidentities(&mut r, max, q0),
        Suite::Tl => tl(&mut r, max),
        Suite::Jw => jw(&mut r, max, q0),
        Suite::Otl => otl(&mut r, max),
        Suite::Karoubi => karoubi(&mut r, max),
        Suite::All => unreachable!("expanded by the caller"),
    }
    let passed = r.checks.iter().all(|c| c.passed);
    SuiteReport {
        suite: suite.name().to_string(),
        max,
        checks: r.checks,
        passed,
    }
}

/// True when the two sides differ at `q0`, which refutes the identity
/// outright. Poles at `q0` give no information.
fn refuted_at(lhs: &LaurentPoly, rhs: &LaurentPoly, q0: Option<&BigRational>) -> bool {
    let Some(q0) = q0 else { return false };
    match (lp_eval(lhs, q0), lp_eval(rhs, q0)) {
        (Ok(a), Ok(b)) => a != b,
        _ => false,
    }
}

fn qidentities(r: &mut Runner, max: usize, q0: Option<&BigRational>) {
    let max = max as u32;
    for k in 1..=max {
        r.check(format!("lemma_q k={k}"), || {
            for l in 0..=max {
                let lhs = quantum_int(k + l);
                let rhs = &(&quantum_int(k) * &quantum_int(l + 1)) - &(&quantum_int(k - 1) * &quantum_int(l));
                if refuted_at(&lhs, &rhs, q0) || !verify_lemma_q(k, l) {
                    return Ok(Outcome::Fail(format!("k={k} l={l}")));
                }
            }
            pass()
        });
    }
    for k in 1..=max {
        r.check(format!("cor_q k={k}"), || {
            let (ki, binom) = (i64::from(k), |n, m| quantum_binom(n, m));
            for l in 1..=max {
                let li = i64::from(l);
                let lhs = binom(ki + li, li)?;
                let rhs = &(&quantum_int(l + 1) * &binom(ki + li - 1, li)?)
                    - &(&quantum_int(k - 1) * &binom(ki + li - 1, li - 1)?);
                if refuted_at(&lhs, &rhs, q0) || !verify_cor_q(k, l) {
                    return Ok(Outcome::Fail(format!("k={k} l={l}")));
                }
            }
            pass()
        });
    }
}

fn catalan(n: usize) -> usize {
    let mut c = vec![1usize; n + 1];
    for m in 1..=n {
        c[m] = (0..m).map(|i| c[i] * c[m - 1 - i]).sum();
    }
    c[n]
}

fn generator(n: usize, k: usize) -> Element {
    Element::from_diagram(Matching::cup_cap(n, k).expect("in range"))
}

fn tl(r: &mut Runner, max: usize) {
    for n in 1..=max {
        r.check(format!("catalan n={n}"), || {
            let found = enumerate_basis(n, n).len();
            expect(found == catalan(n), || format!("n={n} found={found} expected={}", catalan(n)))
        });
    }
    let d = RatFunc::from_poly(delta());
    for n in 2..=max {
        r.check(format!("e_k^2 = delta e_k n={n}"), || {
            for k in 0..n - 1 {
                let e = generator(n, k);
                if !Element::product_equals(&e, &e, &e.scale(&d))? {
                    return Ok(Outcome::Fail(format!("n={n} k={k}")));
                }
            }
            pass()
        });
        r.check(format!("e_k e_k+-1 e_k = e_k n={n}"), || {
            for k in 0..n - 1 {
                for j in [k.wrapping_sub(1), k + 1] {
                    if j >= n - 1 {
                        continue;
                    }
                    let (e, f) = (generator(n, k), generator(n, j));
                    if !Element::product_equals(&e, &f.compose(&e)?, &e)? {
                        return Ok(Outcome::Fail(format!("n={n} k={k} j={j}")));
                    }
                }
            }
            pass()
        });
        r.check(format!("far generators commute n={n}"), || {
            for k in 0..n - 1 {
                for j in k + 2..n - 1 {
                    let (e, f) = (generator(n, k), generator(n, j));
                    if e.compose(&f)? != f.compose(&e)? {
                        return Ok(Outcome::Fail(format!("n={n} k={k} j={j}")));
                    }
                }
            }
            pass()
        });
    }
    for n in 0..=max {
        r.check(format!("closure of identity n={n}"), || {
            let t = Element::identity(n).close_trace()?;
            expect(t == RatFunc::from_poly(delta().pow(n as u32)), || format!("n={n} got {t}"))
        });
    }
}

fn jw(r: &mut Runner, max: usize, q0: Option<&BigRational>) {
    for n in 1..=max {
        r.check(format!("properties n={n}"), || {
            let rep = check_jw_properties(&jones_wenzl(n)?.element)?;
            expect(rep.all_pass(), || format!("n={n} {rep:?}"))
        });
        r.check(format!("closure = [n+1] n={n}"), || {
            let t = jones_wenzl(n)?.element.close_trace()?;
            let want = RatFunc::from_poly(quantum_int(n as u32 + 1));
            expect(t == want, || format!("n={n} got {t}"))
        });
        if n <= 6 {
            r.check(format!("uniqueness oracle n={n}"), || {
                let p = &jones_wenzl(n)?.element;
                let oracle = jw_solve_by_uniqueness(n)?;
                if let Some(q0) = q0 {
                    for (d, c) in p.terms() {
                        if let (Ok(a), Ok(b)) = (c.eval(q0), oracle.coeff(d).eval(q0)) {
                            if a != b {
                                return Ok(Outcome::Fail(format!("n={n} coefficient of {d}")));
                            }
                        }
                    }
                }
                expect(*p == oracle, || format!("n={n}"))
            });
        }
    }
}

/// Random composable pair of basis diagrams with `i + m + j ≤ 8`.
fn random_pair(rng: &mut ChaCha8Rng) -> (Matching, Matching) {
    loop {
        let (i, m, j) = (rng.gen_range(0..=4), rng.gen_range(0..=4), rng.gen_range(0..=4));
        if (i + m) % 2 != 0 || (m + j) % 2 != 0 || i + m + j > 8 {
            continue;
        }
        let f = enumerate_basis(m, j).choose(rng).cloned();
        let g = enumerate_basis(i, m).choose(rng).cloned();
        if let (Some(f), Some(g)) = (f, g) {
            return (f, g);
        }
    }
}

/// Checks `lift(f∘g) = lift(f)∘lift(g)` on seeded random pairs; returns the
/// first failing pair.
pub fn lift_functor_counterexample(samples: usize, seed: u64) -> Result<Option<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (f, g) = random_pair(&mut rng);
        let (f, g) = (Element::from_diagram(f), Element::from_diagram(g));
        for chir in [Chirality::Standard, Chirality::Mirrored] {
            if lift(&f.compose(&g)?) != lift(&f).or_compose(&lift(&g), chir)? {
                return Ok(Some(format!("f={f} g={g} chirality={chir}")));
            }
        }
    }
    Ok(None)
}

/// Checks `Σ_s ι_s = lift(id_n)` and `ι_s∘ι_t = 0` for `s ≠ t`.
pub fn iota_partition_counterexample(n: usize) -> Result<Option<String>> {
    let sigs = Signature::all(n);
    let mut sum = OrElement::zero(n, n);
    for s in &sigs {
        sum = sum.add(&iota(s))?;
    }
    if sum != lift(&Element::identity(n)) {
        return Ok(Some(format!("sum differs for n={n}")));
    }
    for s in &sigs {
        for t in &sigs {
            if s != t && !iota(s).or_compose(&iota(t), Chirality::Standard)?.is_zero() {
                return Ok(Some(format!("s={s} t={t}")));
            }
        }
    }
    Ok(None)
}

fn otl(r: &mut Runner, max: usize) {
    const CHIRALITIES: [Chirality; 2] = [Chirality::Standard, Chirality::Mirrored];
    r.check("loop orientations sum to q + q^-1", || {
        let cap = lift(&Element::from_diagram(Matching::cap(2, 0)?));
        let cup = lift(&Element::from_diagram(Matching::cup(2, 0)?));
        for chir in CHIRALITIES {
            if cap.or_compose(&cup, chir)? != scalar(RatFunc::from_poly(delta())) {
                return Ok(Outcome::Fail(format!("chirality={chir}")));
            }
        }
        pass()
    });
    r.check("lift is a functor samples=64", || {
        Ok(match lift_functor_counterexample(64, 0)? {
            None => Outcome::Pass(None),
            Some(c) => Outcome::Fail(c),
        })
    });
    for n in 0..=max {
        r.check(format!("iota partition n={n}"), || {
            Ok(match iota_partition_counterexample(n)? {
                None => Outcome::Pass(None),
                Some(c) => Outcome::Fail(c),
            })
        });
    }
    for n in 1..=max.min(5) {
        r.check(format!("lift(p_n) idempotent and uncappable by lifted caps n={n}"), || {
            let p = lift(&jones_wenzl(n)?.element);
            for chir in CHIRALITIES {
                if !OrElement::or_product_equals(&p, &p, &p, chir)? {
                    return Ok(Outcome::Fail(format!("n={n} idempotence chirality={chir}")));
                }
                for k in 0..n.saturating_sub(1) {
                    let cap = lift(&Element::from_diagram(Matching::cap(n, k)?));
                    let cup = lift(&Element::from_diagram(Matching::cup(n, k)?));
                    if !cap.or_compose(&p, chir)?.is_zero() || !p.or_compose(&cup, chir)?.is_zero() {
                        return Ok(Outcome::Fail(format!("n={n} k={k} chirality={chir}")));
                    }
                }
            }
            pass()
        });
    }
    r.check("teleport", || {
        let scalars = |c| [beta(1, c), beta(-2, c), alpha(2, c), &beta(1, c) + &beta(-1, c)];
        for len in (0..=max.min(4)).step_by(2) {
            for s in Signature::all(len).into_iter().filter(Signature::is_balanced) {
                for c in CHIRALITIES {
                    for x in scalars(c) {
                        if !verify_teleport(&x, &s)? {
                            return Ok(Outcome::Fail(format!("x={x} s={s}")));
                        }
                    }
                }
            }
        }
        pass()
    });
    r.check(format!("ia k<={}", max + 3), || {
        for k in 0..=max + 3 {
            for n in 0..=k {
                for c in CHIRALITIES {
                    if !verify_ia(k, n, c)? {
                        return Ok(Outcome::Fail(format!("k={k} n={n} chirality={c}")));
                    }
                }
            }
        }
        pass()
    });
    r.check(format!("oio n<={}", max + 3), || {
        for n in 0..=max + 3 {
            for c in CHIRALITIES {
                if !verify_oio(n, c) {
                    return Ok(Outcome::Fail(format!("n={n} chirality={c}")));
                }
            }
        }
        pass()
    });
    for n in 0..=max.min(5) {
        r.check(format!("arc_move n={n}"), || {
            let rep = verify_arc_move(n)?;
            Ok(match rep.status {
                ArcMoveStatus::Validated(cs) => {
                    let names: Vec<String> = cs.iter().map(ToString::to_string).collect();
                    Outcome::Pass(Some(format!("validated: {}", names.join(", "))))
                }
                ArcMoveStatus::EncodingFail => Outcome::Fail(format!("ENCODING-FAIL {rep}")),
            })
        });
    }
    r.check("oriented diagram count", || {
        // Each unoriented diagram has 2^strands orientations.
        for (i, j) in [(2, 2), (3, 1), (0, 4), (4, 4)] {
            let want: usize = enumerate_basis(i, j).iter().map(|d| 1usize << d.num_strands()).sum();
            if enumerate_oriented(i, j).len() != want {
                return Ok(Outcome::Fail(format!("i={i} j={j}")));
            }
        }
        pass()
    });
}

/// `e₁/[2]` on two strands, the complement of `p₂` in `id₂`.
pub fn half_cup_cap() -> Element {
    let two = RatFunc::from_poly(quantum_int(2)).inv().expect("nonzero");
    Element::from_diagram(Matching::cup_cap(2, 0).expect("two strands")).scale(&two)
}

fn karoubi(r: &mut Runner, max: usize) {
    let c = Chirality::Standard;
    let lifted = |x: &Element| IdempotentObject::lifted(x, c);
    let sig = |s: &str| IdempotentObject::signature(&s.parse().expect("signature"), c);
    r.check("hypotheses id_1 = iota(^) + iota(v)", || {
        let ok = check_direct_sum_hypotheses(&lifted(&Element::identity(1))?, &[sig("^"), sig("v")])?;
        expect(ok, || "id_1".into())
    });
    r.check("hypotheses id_2 = p_2 + e_1/[2]", || {
        let parts = [lifted(&jones_wenzl(2)?.element)?, lifted(&half_cup_cap())?];
        expect(check_direct_sum_hypotheses(&lifted(&Element::identity(2))?, &parts)?, || "id_2".into())
    });
    r.check("dirsum id_2 = p_2 + e_1/[2] certified", || {
        let parts = [lifted(&jones_wenzl(2)?.element)?, lifted(&half_cup_cap())?];
        let cert = find_isomorphism(&lifted(&Element::identity(2))?, &parts)?;
        expect(cert.is_some(), || "no certificate".into())
    });
    r.check("no certificate for p_2 = iota(^^)", || {
        let cert = find_isomorphism(&lifted(&jones_wenzl(2)?.element)?, &[sig("^^")])?;
        expect(cert.is_none(), || "unexpected certificate".into())
    });
    for n in 1..=max {
        r.check(format!("decompose n={n}"), || {
            let d = decompose_jw(n, c)?;
            let sigs: Vec<String> = d.signatures().iter().map(ToString::to_string).collect();
            let closure = d
                .certificate()
                .summands()
                .iter()
                .fold(RatFunc::zero(), |acc, q| &acc + &q.closure());
            if sigs.len() != n + 1 {
                return Ok(Outcome::Fail(format!("n={n} signatures={}", sigs.join(" "))));
            }
            if closure != RatFunc::from_poly(quantum_int(n as u32 + 1)) {
                return Ok(Outcome::Fail(format!("n={n} closure sum {closure}")));
            }
            if !d.certificate().validate()? {
                return Ok(Outcome::Fail(format!("n={n} revalidation")));
            }
            Ok(Outcome::Pass(Some(format!("signatures: {}", sigs.join(" ")))))
        });
    }
}
