//! The idempotent completion of the oriented model.
//!
//! Objects are idempotents, morphisms `p -> r` are elements `r∘x∘p`, and two
//! morphisms are equal when their evaluations agree (see
//! [`crate::otl::evaluate`]). Direct-sum decompositions are certified by
//! explicit `u_k`, `v_k` found with exact linear algebra and re-checked by
//! plain composition.

use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::jw::jones_wenzl;
use crate::otl::{enumerate_oriented, evaluate, iota, lift, Chirality, Evaluation, OrElement, Signature};
use crate::qarith::{quantum_int, rf_solve, LaurentPoly, RatFunc};
use crate::tldiag::{enumerate_basis, Diagram, Element};

/// Extra randomized choices of the `u_k` after the first one fails.
const EXTRA_ATTEMPTS: u64 = 8;

#[derive(Clone, Debug)]
pub struct IdempotentObject {
    idem: OrElement,
    chirality: Chirality,
    eval: Evaluation,
}

impl IdempotentObject {
    /// Fails unless `idem` is an endomorphism with `idem∘idem = idem`
    /// after evaluation.
    pub fn new(idem: OrElement, chirality: Chirality) -> Result<Self> {
        if !idem.is_endomorphism() {
            return Err(Error::arity(
                "an endomorphism",
                format!("{}->{}", idem.bottom_count(), idem.top_count()),
            ));
        }
        let eval = evaluate(&idem, chirality);
        if eval.compose(&eval)? != eval {
            return Err(Error::NotIdempotent(idem.to_string()));
        }
        Ok(IdempotentObject {
            idem,
            chirality,
            eval,
        })
    }

    /// The vertical strands `ι_s`.
    pub fn signature(s: &Signature, chirality: Chirality) -> Self {
        Self::new(iota(s), chirality).expect("vertical strands are idempotent")
    }

    /// The lift of an unoriented idempotent.
    pub fn lifted(x: &Element, chirality: Chirality) -> Result<Self> {
        Self::new(lift(x), chirality)
    }

    pub fn arity(&self) -> usize {
        self.idem.bottom_count()
    }

    pub fn idem(&self) -> &OrElement {
        &self.idem
    }

    pub fn chirality(&self) -> Chirality {
        self.chirality
    }

    pub fn evaluation(&self) -> &Evaluation {
        &self.eval
    }

    /// The closure of the idempotent around the right.
    pub fn closure(&self) -> RatFunc {
        self.eval.trace(self.chirality).expect("endomorphism")
    }
}

/// Which diagrams `x` generate `hom(p, r) = { r∘x∘p }`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Ambient {
    /// Every oriented diagram.
    #[default]
    Oriented,
    /// Lifts of unoriented diagrams only.
    Lifted,
}

fn common_chirality<'a>(objs: impl IntoIterator<Item = &'a IdempotentObject>) -> Result<Chirality> {
    let mut seen: Option<Chirality> = None;
    for o in objs {
        match seen {
            Some(c) if c != o.chirality => {
                return Err(Error::Domain("objects use different chirality conventions".into()));
            }
            _ => seen = Some(o.chirality),
        }
    }
    Ok(seen.unwrap_or_default())
}

fn equal_after_evaluation(a: &OrElement, b: &OrElement, chirality: Chirality) -> Result<bool> {
    Ok(evaluate(&a.sub(b)?, chirality).is_zero())
}

/// Incremental row echelon form, used as an independence test.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<RatFunc>)>,
}

impl Echelon {
    fn insert(&mut self, v: &[RatFunc]) -> bool {
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            if v[*piv].is_zero() {
                continue;
            }
            let f = &v[*piv] / &row[*piv];
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }
}

/// `R · E_{t,b} · P` scaled by `q^e`, without a full matrix product.
fn rank_one(r: &Evaluation, t: &Signature, b: &Signature, e: i64, p: &Evaluation) -> Evaluation {
    let col: Vec<RatFunc> = Signature::all(r.top_count()).iter().map(|i| r.entry(i, t).shift(e)).collect();
    let row: Vec<&RatFunc> = Signature::all(p.bottom_count()).iter().map(|j| p.entry(b, j)).collect();
    let mut entries = Vec::with_capacity(col.len() * row.len());
    for c in &col {
        for x in &row {
            entries.push(if c.is_zero() || x.is_zero() { RatFunc::zero() } else { c * *x });
        }
    }
    Evaluation::from_entries(p.bottom_count(), r.top_count(), entries)
}

/// Basis of `hom(p, r)` together with the evaluation of each element.
fn hom_space(p: &IdempotentObject, r: &IdempotentObject, ambient: Ambient) -> Result<Vec<(OrElement, Evaluation)>> {
    let chir = common_chirality([p, r])?;
    let (a, b) = (p.arity(), r.arity());
    let mut ech = Echelon::default();
    let mut out = Vec::new();
    let mut keep = |x: OrElement, m: Evaluation| -> Result<()> {
        if ech.insert(m.entries()) {
            let elem = r.idem.or_compose(&x.or_compose(&p.idem, chir)?, chir)?;
            out.push((elem, m));
        }
        Ok(())
    };
    match ambient {
        Ambient::Oriented => {
            let mut seen = HashSet::new();
            for x in enumerate_oriented(a, b) {
                // Diagrams with the same boundary have proportional images.
                if !seen.insert((x.top_key(), x.bottom_key())) {
                    continue;
                }
                let e = crate::otl::entry_exponent(&x, chir);
                let m = rank_one(&r.eval, &x.top_signature(), &x.bottom_signature(), e, &p.eval);
                keep(OrElement::from_diagram(x), m)?;
            }
        }
        Ambient::Lifted => {
            for d in enumerate_basis(a, b) {
                let x = lift(&Element::from_diagram(d));
                let m = r.eval.compose(&evaluate(&x, chir))?.compose(&p.eval)?;
                keep(x, m)?;
            }
        }
    }
    Ok(out)
}

/// A basis of the morphisms `p -> r`, by exact row reduction of the
/// evaluations of `r∘x∘p`.
pub fn hom_basis(p: &IdempotentObject, r: &IdempotentObject, ambient: Ambient) -> Result<Vec<OrElement>> {
    Ok(hom_space(p, r, ambient)?.into_iter().map(|(x, _)| x).collect())
}

/// `p = Σ parts` and `parts[i]∘parts[j] = 0` for `i ≠ j`, exactly in the
/// oriented model.
pub fn check_direct_sum_hypotheses(p: &IdempotentObject, parts: &[IdempotentObject]) -> Result<bool> {
    let chir = common_chirality(std::iter::once(p).chain(parts))?;
    if let Some(bad) = parts.iter().find(|q| q.arity() != p.arity()) {
        return Err(Error::arity(p.arity(), bad.arity()));
    }
    let mut sum = OrElement::zero(p.arity(), p.arity());
    for q in parts {
        sum = sum.add(&q.idem)?;
    }
    if sum != p.idem {
        return Ok(false);
    }
    for (i, a) in parts.iter().enumerate() {
        for (j, b) in parts.iter().enumerate() {
            if i != j && !a.idem.or_compose(&b.idem, chir)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Witness that `p ≅ summands[0] ⊕ … ⊕ summands[m-1]`, with
/// `u_k: summand_k -> p` and `v_k: p -> summand_k`.
#[derive(Clone, Debug)]
pub struct SumCertificate {
    p: IdempotentObject,
    summands: Vec<IdempotentObject>,
    u: Vec<OrElement>,
    v: Vec<OrElement>,
}

impl SumCertificate {
    pub fn p(&self) -> &IdempotentObject {
        &self.p
    }

    pub fn summands(&self) -> &[IdempotentObject] {
        &self.summands
    }

    pub fn u(&self) -> &[OrElement] {
        &self.u
    }

    pub fn v(&self) -> &[OrElement] {
        &self.v
    }

    /// Re-checks every defining identity from the stored elements alone,
    /// composing in the oriented model and comparing evaluations.
    pub fn validate(&self) -> Result<bool> {
        let chir = common_chirality(std::iter::once(&self.p).chain(&self.summands))?;
        let m = self.summands.len();
        if self.u.len() != m || self.v.len() != m {
            return Ok(false);
        }
        let p = &self.p.idem;
        let mut total = OrElement::zero(self.p.arity(), self.p.arity());
        for k in 0..m {
            let q = &self.summands[k].idem;
            let (u, v) = (&self.u[k], &self.v[k]);
            if (u.bottom_count(), u.top_count()) != (q.top_count(), p.bottom_count())
                || (v.bottom_count(), v.top_count()) != (p.top_count(), q.bottom_count())
            {
                return Ok(false);
            }
            let u_in = p.or_compose(&u.or_compose(q, chir)?, chir)?;
            let v_in = q.or_compose(&v.or_compose(p, chir)?, chir)?;
            if !equal_after_evaluation(&u_in, u, chir)? || !equal_after_evaluation(&v_in, v, chir)? {
                return Ok(false);
            }
            for j in 0..m {
                let vu = self.v[j].or_compose(u, chir)?;
                let expected = if j == k {
                    q.clone()
                } else {
                    OrElement::zero(q.bottom_count(), self.summands[j].arity())
                };
                if (vu.bottom_count(), vu.top_count()) != (expected.bottom_count(), expected.top_count())
                    || !equal_after_evaluation(&vu, &expected, chir)?
                {
                    return Ok(false);
                }
            }
            total = total.add(&u.or_compose(v, chir)?)?;
        }
        equal_after_evaluation(&total, p, chir)
    }
}

impl fmt::Display for SumCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p = {}", self.p.idem)?;
        for (k, q) in self.summands.iter().enumerate() {
            writeln!(f, "q[{k}] = {}", q.idem)?;
            writeln!(f, "u[{k}] = {}", self.u[k])?;
            writeln!(f, "v[{k}] = {}", self.v[k])?;
        }
        Ok(())
    }
}

fn combine(basis: &[(OrElement, Evaluation)], coeffs: &[i64]) -> Result<(OrElement, Evaluation)> {
    let (x0, m0) = &basis[0];
    let mut x = OrElement::zero(x0.bottom_count(), x0.top_count());
    let mut m = m0.scale(&RatFunc::zero());
    for ((bx, bm), &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            let c = RatFunc::from_int(c);
            x = x.add(&bx.scale(&c))?;
            m = m.add(&bm.scale(&c))?;
        }
    }
    Ok((x, m))
}

/// Given the `u_k`, solves the linear conditions on the `v_k`.
fn solve_v(
    p: &IdempotentObject,
    summands: &[IdempotentObject],
    u: &[Evaluation],
    out_spaces: &[Vec<(OrElement, Evaluation)>],
) -> Result<Option<Vec<OrElement>>> {
    let offsets: Vec<usize> = out_spaces
        .iter()
        .scan(0, |acc, h| {
            let o = *acc;
            *acc += h.len();
            Some(o)
        })
        .collect();
    let unknowns: usize = out_spaces.iter().map(Vec::len).sum();
    let mut rows: Vec<Vec<RatFunc>> = Vec::new();
    let mut rhs: Vec<RatFunc> = Vec::new();
    // Each block is a list of (unknown index, matrix) against a target.
    let mut push_block = |cols: Vec<(usize, Evaluation)>, target: &Evaluation| -> bool {
        for e in 0..target.entries().len() {
            let mut row = vec![RatFunc::zero(); unknowns];
            for (c, m) in &cols {
                row[*c] = m.entries()[e].clone();
            }
            let b = target.entries()[e].clone();
            if row.iter().all(RatFunc::is_zero) {
                if !b.is_zero() {
                    return false;
                }
                continue;
            }
            rows.push(row);
            rhs.push(b);
        }
        true
    };
    for (j, q) in summands.iter().enumerate() {
        for (k, uk) in u.iter().enumerate() {
            let cols = out_spaces[j]
                .iter()
                .enumerate()
                .map(|(m, (_, b))| Ok((offsets[j] + m, b.compose(uk)?)))
                .collect::<Result<Vec<_>>>()?;
            let target = if j == k {
                q.eval.clone()
            } else {
                Evaluation::from_entries(
                    summands[k].arity(),
                    q.arity(),
                    vec![RatFunc::zero(); 1 << (summands[k].arity() + q.arity())],
                )
            };
            if !push_block(cols, &target) {
                return Ok(None);
            }
        }
    }
    let mut cols = Vec::new();
    for (j, uj) in u.iter().enumerate() {
        for (m, (_, b)) in out_spaces[j].iter().enumerate() {
            cols.push((offsets[j] + m, uj.compose(b)?));
        }
    }
    if !push_block(cols, &p.eval) {
        return Ok(None);
    }
    let Some(sol) = rf_solve(&rows, &rhs)?.solution else {
        return Ok(None);
    };
    let mut v = Vec::with_capacity(summands.len());
    for (j, h) in out_spaces.iter().enumerate() {
        let mut x = OrElement::zero(p.arity(), summands[j].arity());
        for (m, (b, _)) in h.iter().enumerate() {
            let c = &sol[offsets[j] + m];
            if !c.is_zero() {
                x = x.add(&b.scale(c))?;
            }
        }
        v.push(x);
    }
    Ok(Some(v))
}

/// Searches for a certificate that `p ≅ ⊕ summands`. `Ok(None)` means no
/// certificate was found; every returned certificate has been validated.
pub fn find_isomorphism(p: &IdempotentObject, summands: &[IdempotentObject]) -> Result<Option<SumCertificate>> {
    common_chirality(std::iter::once(p).chain(summands))?;
    if summands.iter().all(|q| q.arity() == p.arity()) && check_direct_sum_hypotheses(p, summands)? {
        let idems: Vec<OrElement> = summands.iter().map(|q| q.idem.clone()).collect();
        let cert = SumCertificate {
            p: p.clone(),
            summands: summands.to_vec(),
            u: idems.clone(),
            v: idems,
        };
        return Ok(cert.validate()?.then_some(cert));
    }
    let mut closure = RatFunc::zero();
    for q in summands {
        closure = &closure + &q.closure();
    }
    if closure != p.closure() {
        return Ok(None);
    }
    if summands.is_empty() || summands.iter().any(|q| q.eval.is_zero()) {
        return Ok(None);
    }
    let mut in_spaces = Vec::with_capacity(summands.len());
    let mut out_spaces = Vec::with_capacity(summands.len());
    for q in summands {
        let hin = hom_space(q, p, Ambient::Oriented)?;
        let hout = hom_space(p, q, Ambient::Oriented)?;
        if hin.is_empty() || hout.is_empty() {
            return Ok(None);
        }
        in_spaces.push(hin);
        out_spaces.push(hout);
    }
    let single = in_spaces.iter().all(|h| h.len() == 1);
    let attempts = if single { 0 } else { EXTRA_ATTEMPTS };
    for attempt in 0..=attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(attempt);
        let mut u = Vec::with_capacity(summands.len());
        for h in &in_spaces {
            let coeffs: Vec<i64> = if attempt == 0 {
                (0..h.len()).map(|m| i64::from(m == 0)).collect()
            } else {
                (0..h.len()).map(|_| rng.gen_range(-3..=3)).collect()
            };
            u.push(combine(h, &coeffs)?);
        }
        let u_evals: Vec<Evaluation> = u.iter().map(|(_, m)| m.clone()).collect();
        if let Some(v) = solve_v(p, summands, &u_evals, &out_spaces)? {
            let cert = SumCertificate {
                p: p.clone(),
                summands: summands.to_vec(),
                u: u.into_iter().map(|(x, _)| x).collect(),
                v,
            };
            if cert.validate()? {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

/// `lift(p_n)` as a sum of vertical-strand objects.
#[derive(Clone, Debug)]
pub struct Decomposition {
    n: usize,
    signatures: Vec<Signature>,
    certificate: SumCertificate,
}

impl Decomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signatures(&self) -> &[Signature] {
        &self.signatures
    }

    pub fn certificate(&self) -> &SumCertificate {
        &self.certificate
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.certificate;
        writeln!(f, "decomposition of p_{}", self.n)?;
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "chirality = {}", c.p.chirality)?;
        writeln!(f, "signatures = {}", self.signatures.iter().join(" "))?;
        writeln!(f, "closures = {}", c.summands.iter().map(|q| q.closure().to_string()).join(", "))?;
        for (k, s) in self.signatures.iter().enumerate() {
            writeln!(f, "u[{s}] = {}", c.u[k])?;
            writeln!(f, "v[{s}] = {}", c.v[k])?;
        }
        write!(f, "VERIFIED n={} summands={}", self.n, self.signatures.len())
    }
}

/// `Σ_k q^{#up − #down}` over a set of signatures.
fn closure_weight(sigs: &[&Signature]) -> LaurentPoly {
    sigs.iter()
        .fold(LaurentPoly::zero(), |acc, s| &acc + &LaurentPoly::q_pow(s.ups() as i64 - s.downs() as i64))
}

/// Finds the lexicographically first set of `n + 1` signatures whose
/// vertical strands certify as a decomposition of `lift(p_n)`, `1 ≤ n ≤ 4`.
pub fn decompose_jw(n: usize, chirality: Chirality) -> Result<Decomposition> {
    if !(1..=4).contains(&n) {
        return Err(Error::Domain(format!("decomposition is supported for 1 <= n <= 4, got {n}")));
    }
    let p = IdempotentObject::lifted(&jones_wenzl(n)?.element, chirality)?;
    let target = quantum_int(n as u32 + 1);
    let all = Signature::all(n);
    for subset in all.iter().combinations(n + 1) {
        if closure_weight(&subset) != target {
            continue;
        }
        let summands: Vec<IdempotentObject> =
            subset.iter().map(|s| IdempotentObject::signature(s, chirality)).collect();
        if let Some(certificate) = find_isomorphism(&p, &summands)? {
            return Ok(Decomposition {
                n,
                signatures: subset.into_iter().cloned().collect(),
                certificate,
            });
        }
    }
    Err(Error::NotFound(format!("no decomposition of p_{n} into {} vertical objects", n + 1)))
}
