use crate::error::{Error, Result};
use crate::qarith::{delta, LaurentPoly, PolyAcc, RatFunc};

use super::comb::{Comb, Diagram, Scaled};
use super::matching::Matching;

impl Diagram for Matching {
    type Loops = u32;

    fn bottom_count(&self) -> usize {
        Matching::bottom_count(self)
    }

    fn top_count(&self) -> usize {
        Matching::top_count(self)
    }

    fn bottom_key(&self) -> u64 {
        0
    }

    fn top_key(&self) -> u64 {
        0
    }

    fn stack(&self, lower: &Self) -> (Self, u32) {
        let mut loops = 0;
        let m = self.glue(lower, |_| loops += 1);
        (m, loops)
    }

    fn tensor(&self, other: &Self) -> Self {
        Matching::tensor(self, other)
    }

    fn vertical_flip(&self) -> Self {
        Matching::vertical_flip(self)
    }
}

/// A morphism `bottom -> top` of the Temperley-Lieb category.
pub type Element = Comb<Matching>;

pub(crate) fn delta_pow(l: u32) -> LaurentPoly {
    delta().pow(l)
}

impl Matching {
    /// Loops formed by joining `t_k` to `b_k` around the right for every
    /// `k`. Only meaningful for endomorphisms.
    pub(crate) fn closure_loops(&self) -> u32 {
        let n = self.bottom_count();
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut p = start;
            loop {
                seen[p] = true;
                let q = self.partner_index(p);
                seen[q] = true;
                // Closure edge: b_k <-> t_k.
                p = if q < n { q + n } else { q - n };
                if seen[p] {
                    break;
                }
            }
        }
        loops
    }
}

impl Comb<Matching> {
    pub fn identity(n: usize) -> Self {
        Self::from_diagram(Matching::identity(n))
    }

    /// Stacks `self` on top of `lower`; every closed loop becomes a factor
    /// of `q + q⁻¹`.
    pub fn compose(&self, lower: &Self) -> Result<Self> {
        self.compose_with(lower, delta_pow)
    }

    /// Exact test of `upper ∘ lower == expected`.
    pub fn product_equals(upper: &Self, lower: &Self, expected: &Self) -> Result<bool> {
        Self::product_equals_with(upper, lower, expected, delta_pow)
    }

    /// Closes every `t_k` to `b_k` around the right and evaluates the loops.
    pub fn close_trace(&self) -> Result<RatFunc> {
        if !self.is_endomorphism() {
            return Err(Error::arity(
                "an endomorphism",
                format!("{}->{}", self.bottom_count(), self.top_count()),
            ));
        }
        let s = Scaled::from_comb(self);
        let mut acc = PolyAcc::new();
        for (d, p) in &s.terms {
            acc.add_product(p, &delta_pow(d.closure_loops()), 0);
        }
        RatFunc::new(acc.finish(), s.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tldiag::enumerate_basis;

    fn e1() -> Element {
        Element::from_diagram(Matching::cup_cap(2, 0).unwrap())
    }

    #[test]
    fn bubble_bursting() {
        let sq = e1().compose(&e1()).unwrap();
        assert_eq!(sq, e1().scale(&RatFunc::from_poly(delta())));
        let cup = Element::from_diagram(Matching::cup(2, 0).unwrap());
        let cap = Element::from_diagram(Matching::cap(2, 0).unwrap());
        assert_eq!(
            cap.compose(&cup).unwrap(),
            Element::from_scaled_diagram(Matching::empty(), RatFunc::from_poly(delta()))
        );
        assert!(cap.compose(&cap).is_err());
    }

    #[test]
    fn identity_law_and_tensor() {
        for d in enumerate_basis(3, 3) {
            let x = Element::from_diagram(d);
            assert_eq!(Element::identity(3).compose(&x).unwrap(), x);
            assert_eq!(x.compose(&Element::identity(3)).unwrap(), x);
            assert_eq!(Element::identity(0).tensor(&x), x);
        }
        assert_eq!(Element::identity(1).tensor(&Element::identity(1)), Element::identity(2));
        assert_eq!(
            e1().tensor(&Element::identity(1)),
            Element::from_diagram(Matching::cup_cap(3, 0).unwrap())
        );
    }

    #[test]
    fn traces() {
        let d = RatFunc::from_poly(delta());
        for n in 0..5u32 {
            let expect = RatFunc::from_poly(delta().pow(n));
            assert_eq!(Element::identity(n as usize).close_trace().unwrap(), expect);
        }
        assert_eq!(e1().close_trace().unwrap(), d);
        assert!(Element::zero(2, 2).close_trace().unwrap().is_zero());
        assert!(Element::from_diagram(Matching::cup(2, 0).unwrap()).close_trace().is_err());
    }

    #[test]
    fn display_sorts_terms() {
        let x = Element::identity(2)
            .sub(&e1().scale(&"(1)/(q^2 + 1)".parse().unwrap()))
            .unwrap();
        assert_eq!(
            x.to_string(),
            "(-1)/(q^2 + 1) * TL(2,2){(b0,b1),(t0,t1)} + 1 * TL(2,2){(b0,t0),(b1,t1)}"
        );
        let y = e1().scale(&RatFunc::from_poly(delta()));
        assert_eq!(y.to_string(), "(q + q^-1) * TL(2,2){(b0,b1),(t0,t1)}");
        assert_eq!(Element::zero(1, 1).to_string(), "0");
    }
}
