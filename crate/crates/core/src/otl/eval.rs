//! The state-sum evaluation of oriented diagrams.
//!
//! An oriented diagram `D: i -> j` with boundary signatures `(t, b)` maps to
//! the `2^j × 2^i` matrix with the single entry `q^e` at `(t, b)`, where
//!
//! `2e = c · h(D) + G(b) − G(t)`,
//!
//! `h` is the half-turn count of the caps and cups, `c = ±1` the chirality,
//! and `G(s) = Σ_k k·σ_k` with `σ = +1` for up, `−1` for down. The `G`
//! terms cancel across every interface and each deleted loop contributes a
//! full turn, so this is a functor from the oriented model to matrices over
//! `Q(q)`. It is faithful on lifted unoriented diagrams but identifies
//! distinct oriented diagrams, and equality "after evaluation" is the
//! equality used for idempotent decompositions.

use std::fmt;

use crate::error::{Error, Result};
use crate::qarith::{LaurentPoly, PolyAcc, RatFunc};
use crate::tldiag::{Diagram, Scaled};

use super::element::OrElement;
use super::oriented::{Chirality, OrMatching, Sign, Signature};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Evaluation {
    bottom: usize,
    top: usize,
    /// Row-major, rows indexed by top signature key.
    entries: Vec<RatFunc>,
}

fn gauge(s: &Signature) -> i64 {
    s.0.iter()
        .enumerate()
        .map(|(k, sign)| match sign {
            Sign::Up => k as i64,
            Sign::Down => -(k as i64),
        })
        .sum()
}

/// The exponent `e` of the single entry of the evaluation of `d`.
pub(crate) fn entry_exponent(d: &OrMatching, chirality: Chirality) -> i64 {
    let twice = chirality.ccw_exponent() * d.half_turns() + gauge(&d.bottom_signature())
        - gauge(&d.top_signature());
    debug_assert_eq!(twice % 2, 0, "odd exponent for {d}");
    twice / 2
}

/// Evaluates an oriented element to a matrix.
pub fn evaluate(x: &OrElement, chirality: Chirality) -> Evaluation {
    let (i, j) = (x.bottom_count(), x.top_count());
    let s = Scaled::from_comb(x);
    let mut accs: Vec<PolyAcc> = (0..1usize << (i + j)).map(|_| PolyAcc::new()).collect();
    for (d, p) in &s.terms {
        let idx = (d.top_key() as usize) << i | d.bottom_key() as usize;
        accs[idx].add_shifted(p, entry_exponent(d, chirality));
    }
    Evaluation {
        bottom: i,
        top: j,
        entries: accs
            .into_iter()
            .map(|a| RatFunc::new(a.finish(), s.den.clone()).expect("nonzero denominator"))
            .collect(),
    }
}

impl Evaluation {
    pub fn bottom_count(&self) -> usize {
        self.bottom
    }

    pub fn top_count(&self) -> usize {
        self.top
    }

    pub(crate) fn from_entries(bottom: usize, top: usize, entries: Vec<RatFunc>) -> Self {
        debug_assert_eq!(entries.len(), 1 << (bottom + top));
        Evaluation { bottom, top, entries }
    }

    /// Row-major entries, rows indexed by top signature key.
    pub(crate) fn entries(&self) -> &[RatFunc] {
        &self.entries
    }

    fn cols(&self) -> usize {
        1 << self.bottom
    }

    pub fn entry(&self, top: &Signature, bottom: &Signature) -> &RatFunc {
        &self.entries[(top.key() as usize) * self.cols() + bottom.key() as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatFunc::is_zero)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if (self.bottom, self.top) != (other.bottom, other.top) {
            return Err(Error::arity(
                format!("{}->{}", self.bottom, self.top),
                format!("{}->{}", other.bottom, other.top),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Evaluation {
            bottom: self.bottom,
            top: self.top,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Evaluation {
            bottom: self.bottom,
            top: self.top,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Evaluation {
            bottom: self.bottom,
            top: self.top,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// Common denominator and integral numerators.
    fn scaled(&self) -> (Vec<LaurentPoly>, LaurentPoly) {
        let mut den = LaurentPoly::one();
        for r in &self.entries {
            let d = r.denom();
            if d.is_one() || den.div_exact(d).is_some() {
                continue;
            }
            let g = crate::qarith::poly_gcd(&den, d);
            den = &den * &d.div_exact(&g).expect("gcd divides");
        }
        let nums = self
            .entries
            .iter()
            .map(|r| r.numer() * &den.div_exact(r.denom()).expect("common denominator"))
            .collect();
        (nums, den)
    }

    /// Matrix product `self · lower`, i.e. the evaluation of stacking.
    pub fn compose(&self, lower: &Self) -> Result<Self> {
        if self.bottom != lower.top {
            return Err(Error::arity(self.bottom, lower.top));
        }
        let (a, da) = self.scaled();
        let (b, db) = lower.scaled();
        let (rows, mid, cols) = (1usize << self.top, 1usize << self.bottom, lower.cols());
        let den = &da * &db;
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let mut acc = PolyAcc::new();
                for k in 0..mid {
                    let (x, y) = (&a[r * mid + k], &b[k * cols + c]);
                    if !x.is_zero() && !y.is_zero() {
                        acc.add_product(x, y, 0);
                    }
                }
                entries.push(RatFunc::new(acc.finish(), den.clone()).expect("nonzero denominator"));
            }
        }
        Ok(Evaluation {
            bottom: lower.bottom,
            top: self.top,
            entries,
        })
    }

    /// The closure weight: `Σ_s M[s][s] · q^{c·(#down − #up)}`, which is the
    /// evaluation of closing every strand around the right.
    pub fn trace(&self, chirality: Chirality) -> Result<RatFunc> {
        if self.bottom != self.top {
            return Err(Error::arity("an endomorphism", format!("{}->{}", self.bottom, self.top)));
        }
        let n = self.bottom;
        let mut out = RatFunc::zero();
        for s in Signature::all(n) {
            let e = self.entry(&s, &s);
            if !e.is_zero() {
                let w = (s.downs() as i64 - s.ups() as i64) * chirality.ccw_exponent();
                out = &out + &e.shift(w);
            }
        }
        Ok(out)
    }

    /// Rank over `Q(q)`.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<RatFunc>> = self.entries.chunks(self.cols()).map(<[_]>::to_vec).collect();
        let rhs = vec![RatFunc::zero(); rows.len()];
        crate::qarith::rf_solve(&rows, &rhs).map(|s| s.rank).unwrap_or(0)
    }
}

impl fmt::Debug for Evaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Evaluation {}->{}", self.bottom, self.top)?;
        for t in Signature::all(self.top) {
            for b in Signature::all(self.bottom) {
                let e = self.entry(&t, &b);
                if !e.is_zero() {
                    writeln!(f, "  [{t}, {b}] = {e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jw::jones_wenzl;
    use crate::otl::{enumerate_oriented, lift};
    use crate::qarith::quantum_int;
    use crate::tldiag::{enumerate_basis, Element};

    #[test]
    fn functor_on_oriented_pairs() {
        for chir in [Chirality::Standard, Chirality::Mirrored] {
            for (i, m, j) in [(2, 2, 2), (0, 2, 2), (3, 1, 3), (2, 4, 0)] {
                for f in enumerate_oriented(m, j) {
                    for g in enumerate_oriented(i, m) {
                        let (f, g) = (OrElement::from_diagram(f.clone()), OrElement::from_diagram(g));
                        let lhs = evaluate(&f.or_compose(&g, chir).unwrap(), chir);
                        let rhs = evaluate(&f, chir).compose(&evaluate(&g, chir)).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn faithful_on_lifted_basis() {
        for n in 1..=4 {
            let basis = enumerate_basis(n, n);
            let rows: Vec<Vec<RatFunc>> = basis
                .iter()
                .map(|d| evaluate(&lift(&Element::from_diagram(d.clone())), Chirality::Standard).entries)
                .collect();
            // Rank of the transposed system = number of independent images.
            let t: Vec<Vec<RatFunc>> = (0..rows[0].len())
                .map(|c| rows.iter().map(|r| r[c].clone()).collect())
                .collect();
            let rank = crate::qarith::rf_solve(&t, &vec![RatFunc::zero(); t.len()]).unwrap().rank;
            assert_eq!(rank, basis.len(), "n = {n}");
        }
    }

    #[test]
    fn jw_projects_to_rank_n_plus_one() {
        for n in 1..=4 {
            let e = evaluate(&lift(&jones_wenzl(n).unwrap().element), Chirality::Standard);
            assert_eq!(e.rank(), n + 1);
            assert_eq!(e.compose(&e).unwrap(), e);
            assert_eq!(
                e.trace(Chirality::Standard).unwrap(),
                RatFunc::from_poly(quantum_int(n as u32 + 1))
            );
        }
    }

    #[test]
    fn trace_matches_closure() {
        for chir in [Chirality::Standard, Chirality::Mirrored] {
            for n in 0..=3 {
                for d in enumerate_oriented(n, n) {
                    let x = OrElement::from_diagram(d);
                    assert_eq!(
                        x.or_close_trace(chir).unwrap(),
                        evaluate(&x, chir).trace(chir).unwrap(),
                        "{x}"
                    );
                }
            }
        }
    }
}
