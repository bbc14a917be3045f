use std::fmt;

use crate::error::{Error, Result};
use crate::jw::jones_wenzl;
use crate::qarith::RatFunc;
use crate::tldiag::Diagram;

use super::element::{alpha, beta, iota, lift, scalar, OrElement};
use super::eval::{evaluate, Evaluation};
use super::oriented::{enumerate_oriented, Chirality, Sign, Signature};

/// `x ⊗ ι_s = ι_s ⊗ x` for a closed scalar `x`; `s` must be balanced.
pub fn verify_teleport(x: &RatFunc, s: &Signature) -> Result<bool> {
    if !s.is_balanced() {
        return Err(Error::Domain(format!("teleport needs a balanced signature, got {s}")));
    }
    let x = scalar(x.clone());
    Ok(x.tensor(&iota(s)) == iota(s).tensor(&x))
}

/// `ι_k ⊗ α_n = ι_k` for `k ≥ n`.
pub fn verify_ia(k: usize, n: usize, chirality: Chirality) -> Result<bool> {
    if n > k {
        return Err(Error::Domain(format!("ia needs k >= n, got k = {k}, n = {n}")));
    }
    let ik = iota(&Signature::all_up(k));
    Ok(ik.tensor(&scalar(alpha(n as i64, chirality))) == ik)
}

/// `ι_n = β_{−n} ⊗ ι_n ⊗ β_n`.
pub fn verify_oio(n: usize, chirality: Chirality) -> bool {
    let i = iota(&Signature::all_up(n));
    let n = n as i64;
    let lhs = scalar(beta(-n, chirality)).tensor(&i).tensor(&scalar(beta(n, chirality)));
    lhs == i
}

/// One comparison inside [`verify_arc_move`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcObservation {
    pub chirality: Chirality,
    /// Orientation of the `n` through strands (`Down` is the
    /// arrows-reversed form of the relation).
    pub strands: Sign,
    /// Top signature of the returning arc on the left-hand side.
    pub arc: Signature,
    /// The scalar the relation predicts: `(−1)^{n+1} β_{±n}`.
    pub expected: RatFunc,
    /// `λ` with `L = λ·R`, when the two sides are proportional.
    pub observed: Option<RatFunc>,
}

impl ArcObservation {
    pub fn holds(&self) -> bool {
        self.observed.as_ref() == Some(&self.expected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArcMoveStatus {
    /// The conventions under which every comparison holds.
    Validated(Vec<Chirality>),
    /// Neither chirality validates the encoding.
    EncodingFail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcMoveReport {
    pub n: usize,
    pub status: ArcMoveStatus,
    pub observations: Vec<ArcObservation>,
}

impl ArcMoveReport {
    pub fn passed(&self) -> bool {
        matches!(self.status, ArcMoveStatus::Validated(_))
    }
}

impl fmt::Display for ArcMoveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            ArcMoveStatus::Validated(cs) => {
                let names: Vec<String> = cs.iter().map(ToString::to_string).collect();
                write!(f, "arcMove n={}: validated ({})", self.n, names.join(", "))?;
            }
            ArcMoveStatus::EncodingFail => write!(f, "arcMove n={}: ENCODING-FAIL", self.n)?,
        }
        for o in &self.observations {
            let seen = o.observed.as_ref().map_or("not proportional".to_string(), ToString::to_string);
            write!(
                f,
                "\n  {} strands={} arc={} expected={} observed={}",
                o.chirality,
                if o.strands == Sign::Up { "^" } else { "v" },
                o.arc,
                o.expected,
                seen
            )?;
        }
        Ok(())
    }
}

/// `λ` with `a = λ·b`, or `None` if no such scalar exists (or `b = 0`).
fn ratio(a: &Evaluation, b: &Evaluation) -> Option<RatFunc> {
    let (i, j) = (b.bottom_count(), b.top_count());
    let mut lambda: Option<RatFunc> = None;
    for t in Signature::all(j) {
        for s in Signature::all(i) {
            let (x, y) = (a.entry(&t, &s), b.entry(&t, &s));
            if y.is_zero() {
                if !x.is_zero() {
                    return None;
                }
                continue;
            }
            let r = x / y;
            match &lambda {
                None => lambda = Some(r),
                Some(l) if *l != r => return None,
                _ => {}
            }
        }
    }
    lambda
}

/// Checks the arc-moving relation for `0 ≤ n ≤ 5`.
///
/// Encoding: with `P = lift(p_{n+2})` and an oriented cup `c` (`0 -> 2`),
/// the left side is `P ∘ (ι ⊗ c)` and the right side `P ∘ (c' ⊗ ι)`, where
/// `c'` is `c` with its arrow reversed and `ι` is `n` upward strands. The
/// relation claims `L = (−1)^{n+1} β_n R`; with all arrows reversed, `ι`
/// points down and `β_n` becomes `β_{−n}`. Both sides are compared after
/// evaluation (which is a functor, so `P` is evaluated once), under each
/// chirality.
pub fn verify_arc_move(n: usize) -> Result<ArcMoveReport> {
    if n > 5 {
        return Err(Error::Domain(format!("arcMove check needs n <= 5, got {n}")));
    }
    let p = lift(&jones_wenzl(n + 2)?.element);
    let cups: Vec<OrElement> = enumerate_oriented(0, 2).into_iter().map(OrElement::from_diagram).collect();
    let reverse = |c: &OrElement| -> OrElement {
        let (d, _) = c.terms().next().expect("single diagram");
        let target = d.top_key() ^ 0b11;
        cups.iter()
            .find(|o| o.terms().next().unwrap().0.top_key() == target)
            .expect("two cup orientations")
            .clone()
    };
    let sign = if n.is_multiple_of(2) { -1 } else { 1 };
    let mut observations = Vec::new();
    let mut validated = Vec::new();
    for chirality in [Chirality::Standard, Chirality::Mirrored] {
        let ep = evaluate(&p, chirality);
        let mut all = true;
        for strands in [Sign::Up, Sign::Down] {
            let (sig, b) = match strands {
                Sign::Up => (Signature::all_up(n), beta(n as i64, chirality)),
                Sign::Down => (Signature::all_down(n), beta(-(n as i64), chirality)),
            };
            let expected = &b * &RatFunc::from_int(sign);
            let i = iota(&sig);
            for cup in &cups {
                let left = ep.compose(&evaluate(&i.tensor(cup), chirality))?;
                let right = ep.compose(&evaluate(&reverse(cup).tensor(&i), chirality))?;
                let observed = ratio(&left, &right);
                let arc = cup.terms().next().unwrap().0.top_signature();
                let obs = ArcObservation {
                    chirality,
                    strands,
                    arc,
                    expected: expected.clone(),
                    observed,
                };
                all &= obs.holds();
                observations.push(obs);
            }
        }
        if all {
            validated.push(chirality);
        }
    }
    let status = if validated.is_empty() {
        ArcMoveStatus::EncodingFail
    } else {
        ArcMoveStatus::Validated(validated)
    };
    Ok(ArcMoveReport {
        n,
        status,
        observations,
    })
}
