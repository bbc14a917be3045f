//! Formal `Q(q)`-linear combinations of diagrams, shared by the
//! unoriented and oriented layers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::qarith::{poly_gcd, LaurentPoly, PolyAcc, RatFunc};

/// A basis diagram that can be stacked, tensored and flipped.
pub trait Diagram: Clone + Ord + Hash + fmt::Display {
    /// What gluing remembers about the closed loops it deletes.
    type Loops: Copy + Eq + Hash;

    fn bottom_count(&self) -> usize;
    fn top_count(&self) -> usize;

    /// Stacking is only nonzero when these keys agree (the oriented layer
    /// puts the boundary signature here).
    fn bottom_key(&self) -> u64;
    fn top_key(&self) -> u64;

    /// `self` on top of `lower`. Callers guarantee matching arity and keys.
    fn stack(&self, lower: &Self) -> (Self, Self::Loops);
    fn tensor(&self, other: &Self) -> Self;
    fn vertical_flip(&self) -> Self;
}

/// A finite linear combination of diagrams `bottom -> top` with no stored
/// zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Comb<D: Diagram> {
    bottom: usize,
    top: usize,
    terms: BTreeMap<D, RatFunc>,
}

impl<D: Diagram> Comb<D> {
    pub fn zero(bottom: usize, top: usize) -> Self {
        Comb {
            bottom,
            top,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: D) -> Self {
        Self::from_scaled_diagram(d, RatFunc::one())
    }

    pub fn from_scaled_diagram(d: D, c: RatFunc) -> Self {
        let mut out = Self::zero(d.bottom_count(), d.top_count());
        if !c.is_zero() {
            out.terms.insert(d, c);
        }
        out
    }

    /// Sums repeated diagrams; every diagram must be `bottom -> top`.
    pub fn from_terms(
        bottom: usize,
        top: usize,
        terms: impl IntoIterator<Item = (D, RatFunc)>,
    ) -> Result<Self> {
        let mut out = Self::zero(bottom, top);
        for (d, c) in terms {
            if d.bottom_count() != bottom || d.top_count() != top {
                return Err(Error::arity(
                    format!("{bottom}->{top}"),
                    format!("{}->{}", d.bottom_count(), d.top_count()),
                ));
            }
            out.add_term(d, &c);
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, d: D, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn bottom_count(&self) -> usize {
        self.bottom
    }

    pub fn top_count(&self) -> usize {
        self.top
    }

    pub fn is_endomorphism(&self) -> bool {
        self.bottom == self.top
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&D, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &D) -> RatFunc {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    fn check_same_arity(&self, other: &Self) -> Result<()> {
        if (self.bottom, self.top) != (other.bottom, other.top) {
            return Err(Error::arity(
                format!("{}->{}", self.bottom, self.top),
                format!("{}->{}", other.bottom, other.top),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_arity(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.bottom, self.top);
        }
        self.map_coeffs(|x| x * c)
    }

    fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        Comb {
            bottom: self.bottom,
            top: self.top,
            terms: self.terms.iter().map(|(d, c)| (d.clone(), f(c))).collect(),
        }
    }

    /// Places `other` to the right of `self`; bilinear.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.bottom + other.bottom, self.top + other.top);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.tensor(b), &(ca * cb));
            }
        }
        out
    }

    pub fn vertical_flip(&self) -> Self {
        Comb {
            bottom: self.top,
            top: self.bottom,
            terms: self.terms.iter().map(|(d, c)| (d.vertical_flip(), c.clone())).collect(),
        }
    }

    /// Stacks `self` on top of `lower`, turning the loops deleted by each
    /// gluing into a scalar with `loop_value`.
    pub(crate) fn compose_with(
        &self,
        lower: &Self,
        loop_value: impl Fn(D::Loops) -> LaurentPoly,
    ) -> Result<Self> {
        if self.bottom != lower.top {
            return Err(Error::arity(
                format!("{} top points on the lower factor", self.bottom),
                lower.top,
            ));
        }
        let a = Scaled::from_comb(self);
        let b = Scaled::from_comb(lower);
        Ok(a.compose(&b, loop_value).into_comb())
    }

    /// Decides `upper ∘ lower == expected` by cross-multiplying numerators,
    /// so no gcd is taken on the product.
    pub(crate) fn product_equals_with(
        upper: &Self,
        lower: &Self,
        expected: &Self,
        loop_value: impl Fn(D::Loops) -> LaurentPoly,
    ) -> Result<bool> {
        if upper.bottom != lower.top {
            return Err(Error::arity(upper.bottom, lower.top));
        }
        if (lower.bottom, upper.top) != (expected.bottom, expected.top) {
            return Err(Error::arity(
                format!("{}->{}", lower.bottom, upper.top),
                format!("{}->{}", expected.bottom, expected.top),
            ));
        }
        let prod = Scaled::from_comb(upper).compose(&Scaled::from_comb(lower), loop_value);
        Ok(prod.equals(&Scaled::from_comb(expected)))
    }
}

impl<D: Diagram> fmt::Display for Comb<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut items: Vec<(String, &RatFunc)> =
            self.terms.iter().map(|(d, c)| (d.to_string(), c)).collect();
        items.sort_by(|a, b| a.0.cmp(&b.0));
        for (n, (d, c)) in items.into_iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            match c.as_poly() {
                Some(p) if p.len() > 1 => write!(f, "({c}) * {d}")?,
                _ => write!(f, "{c} * {d}")?,
            }
        }
        Ok(())
    }
}

impl<D: Diagram> fmt::Debug for Comb<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}->{}] {}", self.bottom, self.top, self)
    }
}

/// A combination over a single common denominator: coefficient of `d` is
/// `num / den`. This is the working form for long products, where it
/// replaces one gcd per term and step with a single reduction.
#[derive(Clone, Debug)]
pub(crate) struct Scaled<D: Diagram> {
    pub bottom: usize,
    pub top: usize,
    pub terms: Vec<(D, LaurentPoly)>,
    pub den: LaurentPoly,
}

impl<D: Diagram> Scaled<D> {
    pub fn from_comb(c: &Comb<D>) -> Self {
        let mut den = LaurentPoly::one();
        for r in c.terms.values() {
            let d = r.denom();
            if d.is_one() || den.div_exact(d).is_some() {
                continue;
            }
            let g = poly_gcd(&den, d);
            den = &den * &d.div_exact(&g).expect("gcd divides");
        }
        let terms = c
            .terms
            .iter()
            .map(|(m, r)| {
                let f = den.div_exact(r.denom()).expect("common denominator");
                (m.clone(), r.numer() * &f)
            })
            .collect();
        Scaled {
            bottom: c.bottom,
            top: c.top,
            terms,
            den,
        }
    }

    pub fn into_comb(self) -> Comb<D> {
        let mut out = Comb::zero(self.bottom, self.top);
        for (d, n) in self.terms {
            if !n.is_zero() {
                let c = RatFunc::new(n, self.den.clone()).expect("nonzero denominator");
                out.terms.insert(d, c);
            }
        }
        out
    }

    /// `self ∘ lower` with denominator `self.den · lower.den`.
    ///
    /// For each lower term, the upper terms landing on the same diagram with
    /// the same loops are summed first (additions only) and multiplied by
    /// the lower coefficient and loop value once per group.
    pub fn compose(&self, lower: &Self, loop_value: impl Fn(D::Loops) -> LaurentPoly) -> Self {
        let mut by_key: HashMap<u64, Vec<usize>> = HashMap::new();
        for (idx, (d, _)) in self.terms.iter().enumerate() {
            by_key.entry(d.bottom_key()).or_default().push(idx);
        }
        let mut loop_cache: HashMap<D::Loops, LaurentPoly> = HashMap::new();
        let mut out: HashMap<D, PolyAcc> = HashMap::new();
        let mut groups: HashMap<(D, D::Loops), PolyAcc> = HashMap::new();
        for (d2, c2) in &lower.terms {
            let Some(uppers) = by_key.get(&d2.top_key()) else {
                continue;
            };
            for &u in uppers {
                let (d1, c1) = &self.terms[u];
                let (e, loops) = d1.stack(d2);
                groups.entry((e, loops)).or_default().add(c1);
            }
            for ((e, loops), acc) in groups.drain() {
                let s = acc.finish();
                if s.is_zero() {
                    continue;
                }
                let lv = loop_cache.entry(loops).or_insert_with(|| loop_value(loops));
                let factor = if lv.is_one() { c2.clone() } else { c2 * &*lv };
                out.entry(e).or_default().add_product(&s, &factor, 0);
            }
        }
        let mut terms: Vec<(D, LaurentPoly)> = out
            .into_iter()
            .map(|(d, acc)| (d, acc.finish()))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Scaled {
            bottom: lower.bottom,
            top: self.top,
            terms,
            den: &self.den * &lower.den,
        }
    }

    /// Coefficientwise `self == other` by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        let a: HashMap<&D, &LaurentPoly> =
            self.terms.iter().filter(|(_, p)| !p.is_zero()).map(|(d, p)| (d, p)).collect();
        let b: HashMap<&D, &LaurentPoly> =
            other.terms.iter().filter(|(_, p)| !p.is_zero()).map(|(d, p)| (d, p)).collect();
        a.len() == b.len()
            && a.iter().all(|(d, pa)| {
                b.get(d)
                    .is_some_and(|pb| *pa * &other.den == *pb * &self.den)
            })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(_, p)| p.is_zero())
    }

    /// Divides numerators and denominator by their common polynomial and
    /// integer factors, then normalizes the denominator's unit.
    pub fn reduce(&mut self) {
        self.terms.retain(|(_, p)| !p.is_zero());
        if self.terms.is_empty() {
            self.den = LaurentPoly::one();
            return;
        }
        let mut g = self.den.clone();
        for (_, p) in &self.terms {
            if g.len() <= 1 {
                break;
            }
            g = poly_gcd(&g, p);
        }
        if g.len() > 1 {
            for (_, p) in &mut self.terms {
                *p = p.div_exact(&g).expect("gcd divides numerator");
            }
            self.den = self.den.div_exact(&g).expect("gcd divides denominator");
        }
        let mut c = self.den.content();
        for (_, p) in &self.terms {
            if num_traits::One::is_one(&c) {
                break;
            }
            c = num_integer::Integer::gcd(&c, &p.content());
        }
        let shift = -self.den.min_exp().expect("nonzero denominator");
        let negate = num_traits::Signed::is_negative(self.den.leading_coeff().unwrap());
        if negate {
            c = -c;
        }
        let fix = |p: &LaurentPoly| {
            let p = if num_traits::One::is_one(&c) { p.clone() } else { p.div_scalar_exact(&c) };
            p.shift(shift)
        };
        self.den = fix(&self.den);
        for (_, p) in &mut self.terms {
            *p = fix(p);
        }
    }
}
