//! Jones-Wenzl idempotents.
//!
//! `p_n` is built with the Wenzl recursion
//! `p_{k+1} = P − ([k]/[k+1]) · P ∘ E_k ∘ P` with `P = p_k ⊗ id₁`, run over a
//! common denominator, and must pass [`check_jw_properties`] before it is
//! handed out. [`jw_solve_by_uniqueness`] is an independent route through
//! the defining linear system.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::qarith::{quantum_int, rf_solve, LaurentPoly, PolyAcc, RatFunc};
use crate::tldiag::{delta_pow, enumerate_basis, Element, Matching, Scaled};

/// A verified Jones-Wenzl idempotent on `n` strands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JonesWenzl {
    pub n: usize,
    pub element: Element,
}

/// The four defining properties, each decided exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JwReport {
    pub nonzero: bool,
    pub idempotent: bool,
    /// Every cap on top kills it.
    pub left_uncappable: bool,
    /// Every cup underneath kills it.
    pub right_uncappable: bool,
}

impl JwReport {
    pub fn all_pass(&self) -> bool {
        self.nonzero && self.idempotent && self.left_uncappable && self.right_uncappable
    }
}

struct Sequence {
    raw: Vec<Scaled<Matching>>,
    verified: HashMap<usize, Element>,
}

static SEQUENCE: Mutex<Option<Sequence>> = Mutex::new(None);

fn wenzl_step(p: &Scaled<Matching>, k: usize) -> Scaled<Matching> {
    let id1 = Matching::identity(1);
    let big = Scaled {
        bottom: k + 1,
        top: k + 1,
        terms: p.terms.iter().map(|(d, c)| (d.tensor(&id1), c.clone())).collect(),
        den: p.den.clone(),
    };
    let e = Scaled {
        bottom: k + 1,
        top: k + 1,
        terms: vec![(Matching::cup_cap(k + 1, k - 1).expect("k >= 1"), LaurentPoly::one())],
        den: LaurentPoly::one(),
    };
    let pep = big.compose(&e, delta_pow).compose(&big, delta_pow);
    // (q_{k+1} d N − q_k N') / (q_{k+1} d²) with d = big.den, N' over d².
    let qk = quantum_int(k as u32);
    let qk1 = quantum_int(k as u32 + 1);
    let lead = &qk1 * &big.den;
    let mut acc: HashMap<Matching, PolyAcc> = HashMap::new();
    for (d, c) in &big.terms {
        acc.entry(d.clone()).or_default().add_product(c, &lead, 0);
    }
    let neg_qk = -&qk;
    for (d, c) in &pep.terms {
        acc.entry(d.clone()).or_default().add_product(c, &neg_qk, 0);
    }
    let mut terms: Vec<(Matching, LaurentPoly)> = acc.into_iter().map(|(d, a)| (d, a.finish())).collect();
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out = Scaled {
        bottom: k + 1,
        top: k + 1,
        terms,
        den: &lead * &big.den,
    };
    out.reduce();
    out
}

/// The Jones-Wenzl idempotent `p_n`, for `n ≥ 1`.
///
/// The sequence `p_1, p_2, …` is memoized process-wide behind a mutex, and
/// each `p_n` is checked against its defining properties once.
pub fn jones_wenzl(n: usize) -> Result<JonesWenzl> {
    if n == 0 {
        return Err(Error::Domain("Jones-Wenzl needs n >= 1".into()));
    }
    let mut guard = SEQUENCE.lock().unwrap_or_else(|e| e.into_inner());
    let seq = guard.get_or_insert_with(|| Sequence {
        raw: vec![Scaled {
            bottom: 1,
            top: 1,
            terms: vec![(Matching::identity(1), LaurentPoly::one())],
            den: LaurentPoly::one(),
        }],
        verified: HashMap::new(),
    });
    while seq.raw.len() < n {
        let k = seq.raw.len();
        let next = wenzl_step(&seq.raw[k - 1], k);
        seq.raw.push(next);
    }
    if let Some(e) = seq.verified.get(&n) {
        return Ok(JonesWenzl { n, element: e.clone() });
    }
    let raw = &seq.raw[n - 1];
    let report = check_scaled(raw);
    if !report.all_pass() {
        return Err(Error::NotIdempotent(format!(
            "Wenzl recursion produced a bad p_{n}: {report:?}"
        )));
    }
    let element = raw.clone().into_comb();
    seq.verified.insert(n, element.clone());
    Ok(JonesWenzl { n, element })
}

fn check_scaled(x: &Scaled<Matching>) -> JwReport {
    let n = x.bottom;
    let nonzero = !x.is_zero();
    let idempotent = x.compose(x, delta_pow).equals(x);
    let single = |m: Matching| Scaled {
        bottom: m.bottom_count(),
        top: m.top_count(),
        terms: vec![(m, LaurentPoly::one())],
        den: LaurentPoly::one(),
    };
    let mut positions = 0..n.saturating_sub(1);
    let left_uncappable = positions
        .clone()
        .all(|k| single(Matching::cap(n, k).unwrap()).compose(x, delta_pow).is_zero());
    let right_uncappable =
        positions.all(|k| x.compose(&single(Matching::cup(n, k).unwrap()), delta_pow).is_zero());
    JwReport {
        nonzero,
        idempotent,
        left_uncappable,
        right_uncappable,
    }
}

/// Decides the four defining properties of a Jones-Wenzl idempotent.
pub fn check_jw_properties(x: &Element) -> Result<JwReport> {
    if !x.is_endomorphism() {
        return Err(Error::arity(
            "an endomorphism",
            format!("{}->{}", x.bottom_count(), x.top_count()),
        ));
    }
    Ok(check_scaled(&Scaled::from_comb(x)))
}

/// Solves "identity coefficient 1 and every cap kills x" over the Catalan
/// basis, insisting on a unique idempotent solution. Desk scale only:
/// `1 ≤ n ≤ 6`.
pub fn jw_solve_by_uniqueness(n: usize) -> Result<Element> {
    if !(1..=6).contains(&n) {
        return Err(Error::Domain(format!("uniqueness oracle needs 1 <= n <= 6, got {n}")));
    }
    let basis = enumerate_basis(n, n);
    let targets = if n >= 2 { enumerate_basis(n, n - 2) } else { Vec::new() };
    let target_index: HashMap<&Matching, usize> =
        targets.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let cols = basis.len();
    let rows = 1 + (n.saturating_sub(1)) * targets.len();
    let mut matrix = vec![vec![RatFunc::zero(); cols]; rows];
    let mut rhs = vec![RatFunc::zero(); rows];
    let id = Matching::identity(n);
    let id_col = basis.iter().position(|d| *d == id).expect("identity in basis");
    matrix[0][id_col] = RatFunc::one();
    rhs[0] = RatFunc::one();
    for k in 0..n.saturating_sub(1) {
        let cap = Matching::cap(n, k)?;
        for (c, d) in basis.iter().enumerate() {
            let mut loops = 0;
            let r = cap.glue(d, |_| loops += 1);
            let row = 1 + k * targets.len() + target_index[&r];
            matrix[row][c] = &matrix[row][c] + &RatFunc::from_poly(delta_pow(loops));
        }
    }
    let sol = rf_solve(&matrix, &rhs)?;
    if !sol.is_unique() {
        return Err(Error::NotUniquelySolvable(format!(
            "uncappability system for n = {n} has rank {} over {cols} unknowns",
            sol.rank
        )));
    }
    let x = Element::from_terms(n, n, basis.into_iter().zip(sol.solution.unwrap()))?;
    if !Element::product_equals(&x, &x, &x)? {
        return Err(Error::NotIdempotent(format!("uniqueness solution for n = {n}")));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    fn diagram(n: usize, k: usize) -> Element {
        Element::from_diagram(Matching::cup_cap(n, k).unwrap())
    }

    #[test]
    fn p1_and_p2() {
        assert_eq!(jones_wenzl(1).unwrap().element, Element::identity(1));
        let q2 = RatFunc::from_poly(quantum_int(2));
        let expect = Element::identity(2).sub(&diagram(2, 0).scale(&q2.inv().unwrap())).unwrap();
        assert_eq!(jones_wenzl(2).unwrap().element, expect);
        assert!(jones_wenzl(0).is_err());
    }

    #[test]
    fn p3_closed_form() {
        let q2 = RatFunc::from_poly(quantum_int(2));
        let q3 = RatFunc::from_poly(quantum_int(3));
        let e1 = diagram(3, 0);
        let e2 = diagram(3, 1);
        let e12 = e1.compose(&e2).unwrap();
        let e21 = e2.compose(&e1).unwrap();
        let expect = Element::identity(3)
            .sub(&e1.add(&e2).unwrap().scale(&(&q2 / &q3)))
            .unwrap()
            .add(&e12.add(&e21).unwrap().scale(&q3.inv().unwrap()))
            .unwrap();
        assert_eq!(jones_wenzl(3).unwrap().element, expect);
        assert_eq!(
            jones_wenzl(3).unwrap().element.coeff(&Matching::cup_cap(3, 0).unwrap()),
            rf("(-q^3 - q)/(q^4 + q^2 + 1)")
        );
    }

    #[test]
    fn report_examples() {
        let r = check_jw_properties(&jones_wenzl(4).unwrap().element).unwrap();
        assert!(r.all_pass());
        let r = check_jw_properties(&Element::identity(2)).unwrap();
        assert!(r.nonzero && r.idempotent && !r.left_uncappable && !r.right_uncappable);
        assert!(!check_jw_properties(&Element::zero(2, 2)).unwrap().nonzero);
        assert!(check_jw_properties(&Element::from_diagram(Matching::cap(2, 0).unwrap())).is_err());
    }

    #[test]
    fn oracle_agrees_small() {
        for n in 1..=4 {
            assert_eq!(jw_solve_by_uniqueness(n).unwrap(), jones_wenzl(n).unwrap().element, "n = {n}");
        }
        assert!(jw_solve_by_uniqueness(7).is_err());
    }
}
