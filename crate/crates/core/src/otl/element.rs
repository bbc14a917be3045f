use crate::error::{Error, Result};
use crate::qarith::{LaurentPoly, PolyAcc, RatFunc};
use crate::tldiag::{Comb, Element, Scaled};

use super::oriented::{Chirality, OrMatching, Signature};

/// A formal combination of oriented diagrams `bottom -> top`.
pub type OrElement = Comb<OrMatching>;

fn loop_value(chirality: Chirality) -> impl Fn(i64) -> LaurentPoly {
    move |net| LaurentPoly::q_pow(net * chirality.ccw_exponent())
}

impl Comb<OrMatching> {
    /// Stacks `self` on top of `lower`. Diagram pairs whose orientations
    /// disagree at the interface contribute zero; each closed loop becomes
    /// `q` (counterclockwise) or `q⁻¹` (clockwise) under `Standard`.
    pub fn or_compose(&self, lower: &Self, chirality: Chirality) -> Result<Self> {
        self.compose_with(lower, loop_value(chirality))
    }

    /// Exact test of `upper ∘ lower == expected` in the oriented model.
    pub fn or_product_equals(
        upper: &Self,
        lower: &Self,
        expected: &Self,
        chirality: Chirality,
    ) -> Result<bool> {
        Self::product_equals_with(upper, lower, expected, loop_value(chirality))
    }

    /// Closes `t_k` to `b_k` around the right. Terms whose top and bottom
    /// signatures differ close up inconsistently and contribute zero.
    pub fn or_close_trace(&self, chirality: Chirality) -> Result<RatFunc> {
        if !self.is_endomorphism() {
            return Err(Error::arity(
                "an endomorphism",
                format!("{}->{}", self.bottom_count(), self.top_count()),
            ));
        }
        let s = Scaled::from_comb(self);
        let mut acc = PolyAcc::new();
        for (d, p) in &s.terms {
            if let Some(net) = d.closure_winding() {
                acc.add_shifted(p, net * chirality.ccw_exponent());
            }
        }
        RatFunc::new(acc.finish(), s.den)
    }
}

/// Replaces every unoriented diagram by the sum of all its orientations.
pub fn lift(x: &Element) -> OrElement {
    let mut out = OrElement::zero(x.bottom_count(), x.top_count());
    for (d, c) in x.terms() {
        for o in OrMatching::orientations(d) {
            out.add_term(o, c);
        }
    }
    out
}

/// Vertical strands with orientations `s`.
pub fn iota(s: &Signature) -> OrElement {
    OrElement::from_diagram(OrMatching::vertical(s))
}

/// A closed scalar as a `0 -> 0` element.
pub fn scalar(c: RatFunc) -> OrElement {
    OrElement::from_scaled_diagram(OrMatching::vertical(&Signature::default()), c)
}

/// `n` nested counterclockwise loops (clockwise for negative `n`).
pub fn beta(n: i64, chirality: Chirality) -> RatFunc {
    RatFunc::from_poly(LaurentPoly::q_pow(n * chirality.ccw_exponent()))
}

/// `β_{−n}` nested inside `β_n`.
pub fn alpha(n: i64, chirality: Chirality) -> RatFunc {
    &beta(n, chirality) * &beta(-n, chirality)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::delta;
    use crate::tldiag::Matching;

    const STD: Chirality = Chirality::Standard;

    fn or(s: &str) -> OrElement {
        OrElement::from_diagram(s.parse().unwrap())
    }

    #[test]
    fn mismatch_is_zero() {
        let up = iota(&"^".parse().unwrap());
        let down = iota(&"v".parse().unwrap());
        assert!(up.or_compose(&down, STD).unwrap().is_zero());
        assert!(iota(&"^v".parse().unwrap())
            .or_compose(&iota(&"v^".parse().unwrap()), STD)
            .unwrap()
            .is_zero());
        assert_eq!(up.or_compose(&up, STD).unwrap(), up);
    }

    #[test]
    fn single_loops() {
        let cup = or("OTL(0,2){(t0>t1)}");
        let cap = or("OTL(2,0){(b0<b1)}");
        let q = RatFunc::from_poly(LaurentPoly::q());
        assert_eq!(cap.or_compose(&cup, STD).unwrap(), scalar(q.clone()));
        assert_eq!(cap.or_compose(&cup, Chirality::Mirrored).unwrap(), scalar(q.inv().unwrap()));
        let ucup = lift(&Element::from_diagram(Matching::cup(2, 0).unwrap()));
        let ucap = lift(&Element::from_diagram(Matching::cap(2, 0).unwrap()));
        assert_eq!(ucap.or_compose(&ucup, STD).unwrap(), scalar(RatFunc::from_poly(delta())));
    }

    #[test]
    fn lift_examples() {
        let id1 = lift(&Element::identity(1));
        let expect = iota(&"^".parse().unwrap()).add(&iota(&"v".parse().unwrap())).unwrap();
        assert_eq!(id1, expect);
        assert_eq!(lift(&Element::identity(0)), iota(&Signature::default()));
    }

    #[test]
    fn scalars() {
        assert_eq!(beta(1, STD).to_string(), "q");
        assert_eq!(beta(-1, STD).to_string(), "q^-1");
        assert!(beta(0, STD).is_one());
        for n in [3, 0, -2] {
            assert!(alpha(n, STD).is_one());
            assert!(alpha(n, Chirality::Mirrored).is_one());
        }
    }

    #[test]
    fn closure_of_strands() {
        let q = LaurentPoly::q;
        let up = iota(&"^".parse().unwrap());
        assert_eq!(up.or_close_trace(STD).unwrap(), RatFunc::from_poly(q().bar()));
        assert_eq!(
            iota(&"v".parse().unwrap()).or_close_trace(STD).unwrap(),
            RatFunc::from_poly(q())
        );
        assert_eq!(
            lift(&Element::identity(2)).or_close_trace(STD).unwrap(),
            RatFunc::from_poly(delta().pow(2))
        );
        let mixed = or("OTL(1,1){(b0>t0)}").add(&or("OTL(1,1){(b0<t0)}")).unwrap();
        assert_eq!(mixed.or_close_trace(STD).unwrap(), RatFunc::from_poly(delta()));
    }
}
