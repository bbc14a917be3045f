use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A boundary point of a rectangular diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Bottom(usize),
    Top(usize),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Bottom(k) => write!(f, "b{k}"),
            Point::Top(k) => write!(f, "t{k}"),
        }
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad boundary point `{s}`"));
        let (side, idx) = s.split_at(s.len().min(1));
        let k: usize = idx.parse().map_err(|_| bad())?;
        match side {
            "b" => Ok(Point::Bottom(k)),
            "t" => Ok(Point::Top(k)),
            _ => Err(bad()),
        }
    }
}

/// A loop-free crossingless perfect matching of `i` bottom and `j` top
/// points: one basis diagram of the Temperley-Lieb category.
///
/// Points are numbered `b0..b(i-1)` as `0..i` and `t0..t(j-1)` as
/// `i..i+j`; `partner[p]` is the point joined to `p`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    bottom: u16,
    top: u16,
    partner: Box<[u16]>,
}

impl Matching {
    /// Builds a matching from explicit pairs, checking that it is a perfect
    /// noncrossing matching.
    pub fn from_pairs(bottom: usize, top: usize, pairs: &[(Point, Point)]) -> Result<Self> {
        let n = bottom + top;
        if n > u16::MAX as usize {
            return Err(Error::InvalidDiagram(format!("{n} boundary points is too many")));
        }
        let idx = |p: Point| -> Result<usize> {
            match p {
                Point::Bottom(k) if k < bottom => Ok(k),
                Point::Top(k) if k < top => Ok(bottom + k),
                _ => Err(Error::InvalidDiagram(format!(
                    "point {p} outside a {bottom}->{top} diagram"
                ))),
            }
        };
        let mut partner = vec![u16::MAX; n];
        for &(a, b) in pairs {
            let (a, b) = (idx(a)?, idx(b)?);
            if a == b || partner[a] != u16::MAX || partner[b] != u16::MAX {
                return Err(Error::InvalidDiagram("point used twice".into()));
            }
            partner[a] = b as u16;
            partner[b] = a as u16;
        }
        if partner.contains(&u16::MAX) {
            return Err(Error::InvalidDiagram("not a perfect matching".into()));
        }
        let m = Matching {
            bottom: bottom as u16,
            top: top as u16,
            partner: partner.into_boxed_slice(),
        };
        if !m.is_planar() {
            return Err(Error::InvalidDiagram(format!("crossing pairs in {m}")));
        }
        Ok(m)
    }

    pub(crate) fn from_partner_unchecked(bottom: usize, top: usize, partner: Box<[u16]>) -> Self {
        debug_assert_eq!(partner.len(), bottom + top);
        Matching {
            bottom: bottom as u16,
            top: top as u16,
            partner,
        }
    }

    pub fn bottom_count(&self) -> usize {
        self.bottom as usize
    }

    pub fn top_count(&self) -> usize {
        self.top as usize
    }

    pub fn num_strands(&self) -> usize {
        self.partner.len() / 2
    }

    pub(crate) fn partner_index(&self, p: usize) -> usize {
        self.partner[p] as usize
    }

    pub fn point(&self, p: usize) -> Point {
        let i = self.bottom_count();
        if p < i {
            Point::Bottom(p)
        } else {
            Point::Top(p - i)
        }
    }

    pub(crate) fn index_of(&self, p: Point) -> usize {
        match p {
            Point::Bottom(k) => k,
            Point::Top(k) => self.bottom_count() + k,
        }
    }

    pub fn partner(&self, p: Point) -> Point {
        self.point(self.partner[self.index_of(p)] as usize)
    }

    /// Pairs with the smaller point first, sorted.
    pub fn pairs(&self) -> Vec<(Point, Point)> {
        let mut out: Vec<(Point, Point)> = (0..self.partner.len())
            .filter(|&p| p < self.partner[p] as usize)
            .map(|p| (self.point(p), self.point(self.partner[p] as usize)))
            .collect();
        out.sort();
        out
    }

    /// Number of strands joining the bottom to the top.
    pub fn through_strands(&self) -> usize {
        let i = self.bottom_count();
        (0..i).filter(|&p| self.partner[p] as usize >= i).count()
    }

    /// Position in the cyclic order `b0, …, b(i-1), t(j-1), …, t0`.
    fn cyclic(&self, p: usize) -> usize {
        let (i, j) = (self.bottom_count(), self.top_count());
        if p < i {
            p
        } else {
            i + (j - 1 - (p - i))
        }
    }

    fn is_planar(&self) -> bool {
        let n = self.partner.len();
        let mut by_pos = vec![0usize; n];
        for p in 0..n {
            by_pos[self.cyclic(p)] = self.cyclic(self.partner[p] as usize);
        }
        // Noncrossing iff the chords nest like brackets in cyclic order.
        let mut stack = Vec::new();
        for (pos, &other) in by_pos.iter().enumerate() {
            if other > pos {
                stack.push(other);
            } else if stack.pop() != Some(pos) {
                return false;
            }
        }
        true
    }

    pub fn identity(n: usize) -> Self {
        let partner: Vec<u16> = (0..n).map(|k| (n + k) as u16).chain((0..n).map(|k| k as u16)).collect();
        Self::from_partner_unchecked(n, n, partner.into_boxed_slice())
    }

    /// The empty `0 -> 0` diagram.
    pub fn empty() -> Self {
        Self::identity(0)
    }

    /// `n -> n - 2`: closes bottom points `k, k+1` with a cap, every other
    /// strand vertical.
    pub fn cap(n: usize, k: usize) -> Result<Self> {
        if n < 2 || k + 1 >= n {
            return Err(Error::Domain(format!("no cap at position {k} on {n} strands")));
        }
        let mut pairs = vec![(Point::Bottom(k), Point::Bottom(k + 1))];
        for s in 0..n - 2 {
            let b = if s < k { s } else { s + 2 };
            pairs.push((Point::Bottom(b), Point::Top(s)));
        }
        Self::from_pairs(n, n - 2, &pairs)
    }

    /// `n - 2 -> n`, the vertical reflection of [`Matching::cap`].
    pub fn cup(n: usize, k: usize) -> Result<Self> {
        Ok(Self::cap(n, k)?.vertical_flip())
    }

    /// The generator `E_k` on `n` strands: a cup-cap joining positions
    /// `k, k+1` on each side.
    pub fn cup_cap(n: usize, k: usize) -> Result<Self> {
        if n < 2 || k + 1 >= n {
            return Err(Error::Domain(format!("no cup-cap at position {k} on {n} strands")));
        }
        let mut pairs = vec![
            (Point::Bottom(k), Point::Bottom(k + 1)),
            (Point::Top(k), Point::Top(k + 1)),
        ];
        for s in (0..n).filter(|&s| s != k && s != k + 1) {
            pairs.push((Point::Bottom(s), Point::Top(s)));
        }
        Self::from_pairs(n, n, &pairs)
    }

    /// Stacks `self` on top of `lower`; returns the glued matching and
    /// calls `on_loop` with the leftmost interface index of each closed
    /// loop, in increasing order.
    pub(crate) fn glue(&self, lower: &Matching, mut on_loop: impl FnMut(usize)) -> Matching {
        let m = self.bottom_count();
        debug_assert_eq!(m, lower.top_count());
        let k = lower.bottom_count();
        let j = self.top_count();
        let lower_top = k;
        let mut seen = vec![false; m];
        let mut partner = vec![0u16; k + j];

        // Result points: 0..k are lower's bottom, k..k+j are self's top.
        // `in_lower` tracks which diagram the walk is currently inside.
        let walk = |start: usize, seen: &mut [bool]| -> usize {
            let (mut in_lower, mut p) = if start < k { (true, start) } else { (false, m + start - k) };
            loop {
                if in_lower {
                    let q = lower.partner[p] as usize;
                    if q < lower_top {
                        return q;
                    }
                    let c = q - lower_top;
                    seen[c] = true;
                    in_lower = false;
                    p = c;
                } else {
                    let q = self.partner[p] as usize;
                    if q >= m {
                        return k + q - m;
                    }
                    seen[q] = true;
                    in_lower = true;
                    p = lower_top + q;
                }
            }
        };
        for (s, slot) in partner.iter_mut().enumerate().take(k + j) {
            *slot = walk(s, &mut seen) as u16;
        }
        // Remaining interface points lie on closed loops.
        for c in 0..m {
            if seen[c] {
                continue;
            }
            on_loop(c);
            let mut x = c;
            loop {
                seen[x] = true;
                let up = self.partner[x] as usize;
                seen[up] = true;
                let down = lower.partner[lower_top + up] as usize - lower_top;
                if down == c {
                    break;
                }
                x = down;
            }
        }
        Matching::from_partner_unchecked(k, j, partner.into_boxed_slice())
    }

    /// Places `other` to the right of `self`.
    pub fn tensor(&self, other: &Matching) -> Matching {
        let (i1, j1) = (self.bottom_count(), self.top_count());
        let (i2, j2) = (other.bottom_count(), other.top_count());
        let (i, j) = (i1 + i2, j1 + j2);
        let map_a = |p: usize| if p < i1 { p } else { i + (p - i1) };
        let map_b = |p: usize| if p < i2 { i1 + p } else { i + j1 + (p - i2) };
        let mut partner = vec![0u16; i + j];
        for p in 0..i1 + j1 {
            partner[map_a(p)] = map_a(self.partner[p] as usize) as u16;
        }
        for p in 0..i2 + j2 {
            partner[map_b(p)] = map_b(other.partner[p] as usize) as u16;
        }
        Matching::from_partner_unchecked(i, j, partner.into_boxed_slice())
    }

    /// Reflection across a horizontal line: `b_k ↔ t_k`.
    pub fn vertical_flip(&self) -> Matching {
        let (i, j) = (self.bottom_count(), self.top_count());
        let map = |p: usize| if p < i { j + p } else { p - i };
        let mut partner = vec![0u16; i + j];
        for p in 0..i + j {
            partner[map(p)] = map(self.partner[p] as usize) as u16;
        }
        Matching::from_partner_unchecked(j, i, partner.into_boxed_slice())
    }
}

/// All basis diagrams `i -> j`, sorted; empty when `i + j` is odd.
pub fn enumerate_basis(i: usize, j: usize) -> Vec<Matching> {
    let n = i + j;
    if n % 2 == 1 {
        return Vec::new();
    }
    // Point index at each cyclic position.
    let at: Vec<usize> = (0..i).chain((0..j).rev().map(|k| i + k)).collect();
    // Noncrossing pairings of the cyclic positions lo..hi.
    fn gen(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if lo >= hi {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for m in (lo + 1..hi).step_by(2) {
            let outer = gen(m + 1, hi);
            for inner in gen(lo + 1, m) {
                for rest in &outer {
                    let mut v = Vec::with_capacity((hi - lo) / 2);
                    v.push((lo, m));
                    v.extend_from_slice(&inner);
                    v.extend_from_slice(rest);
                    out.push(v);
                }
            }
        }
        out
    }
    let mut out: Vec<Matching> = gen(0, n)
        .into_iter()
        .map(|pairs| {
            let mut partner = vec![0u16; n];
            for (a, b) in pairs {
                partner[at[a]] = at[b] as u16;
                partner[at[b]] = at[a] as u16;
            }
            Matching::from_partner_unchecked(i, j, partner.into_boxed_slice())
        })
        .collect();
    out.sort();
    out
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TL({},{}){{", self.bottom, self.top)?;
        for (n, (a, b)) in self.pairs().into_iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "({a},{b})")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Matching {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad diagram `{s}`"));
        let body = s.trim().strip_prefix("TL(").ok_or_else(bad)?;
        let (dims, rest) = body.split_once(")").ok_or_else(bad)?;
        let (i, j) = dims.split_once(',').ok_or_else(bad)?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        let j: usize = j.trim().parse().map_err(|_| bad())?;
        let inner = rest
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(bad)?;
        let mut pairs = Vec::new();
        for chunk in inner.split(')').map(str::trim).filter(|c| !c.is_empty()) {
            let chunk = chunk.trim_start_matches(',').trim().strip_prefix('(').ok_or_else(bad)?;
            let (a, b) = chunk.split_once(',').ok_or_else(bad)?;
            pairs.push((a.parse()?, b.parse()?));
        }
        Matching::from_pairs(i, j, &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_counts() {
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (n, &c) in catalan.iter().enumerate() {
            assert_eq!(enumerate_basis(n, n).len(), c);
        }
        assert_eq!(enumerate_basis(0, 6).len(), 5);
        assert!(enumerate_basis(1, 2).is_empty());
    }

    #[test]
    fn basis_matches_brute_force() {
        // Oracle: every perfect matching of the points, filtered by the
        // pairwise crossing test.
        fn all(points: Vec<usize>) -> Vec<Vec<(usize, usize)>> {
            if points.is_empty() {
                return vec![vec![]];
            }
            let a = points[0];
            let mut out = Vec::new();
            for k in 1..points.len() {
                let rest: Vec<usize> = points.iter().enumerate().filter(|&(x, _)| x != 0 && x != k).map(|(_, &p)| p).collect();
                for mut m in all(rest) {
                    m.push((a, points[k]));
                    out.push(m);
                }
            }
            out
        }
        for (i, j) in [(2, 2), (3, 3), (1, 5), (4, 2), (0, 8)] {
            let pos = |p: usize| if p < i { p } else { i + (j - 1 - (p - i)) };
            let count = all((0..i + j).collect())
                .into_iter()
                .filter(|m| {
                    m.iter().all(|&(a, b)| {
                        m.iter().all(|&(c, d)| {
                            let (a, b) = (pos(a).min(pos(b)), pos(a).max(pos(b)));
                            let (c, d) = (pos(c).min(pos(d)), pos(c).max(pos(d)));
                            !(a < c && c < b && b < d)
                        })
                    })
                })
                .count();
            assert_eq!(enumerate_basis(i, j).len(), count, "({i},{j})");
        }
    }

    #[test]
    fn text_form() {
        let e = Matching::cup_cap(2, 0).unwrap();
        assert_eq!(e.to_string(), "TL(2,2){(b0,b1),(t0,t1)}");
        assert_eq!(Matching::identity(2).to_string(), "TL(2,2){(b0,t0),(b1,t1)}");
        assert_eq!(Matching::empty().to_string(), "TL(0,0){}");
        for d in enumerate_basis(3, 5) {
            assert_eq!(d.to_string().parse::<Matching>().unwrap(), d);
        }
    }

    #[test]
    fn rejects_crossings() {
        let crossing = [(Point::Bottom(0), Point::Top(1)), (Point::Bottom(1), Point::Top(0))];
        assert!(Matching::from_pairs(2, 2, &crossing).is_err());
        assert!(Matching::from_pairs(2, 2, &[(Point::Bottom(0), Point::Top(0))]).is_err());
    }

    #[test]
    fn glue_counts_loops() {
        let cup = Matching::cup(2, 0).unwrap();
        let cap = Matching::cap(2, 0).unwrap();
        let mut loops = 0;
        let r = cap.glue(&cup, |_| loops += 1);
        assert_eq!(r, Matching::empty());
        assert_eq!(loops, 1);
        let e = Matching::cup_cap(2, 0).unwrap();
        let mut loops = 0;
        assert_eq!(e.glue(&e, |_| loops += 1), e);
        assert_eq!(loops, 1);
    }

    #[test]
    fn tensor_and_flip() {
        let e = Matching::cup_cap(2, 0).unwrap();
        assert_eq!(e.tensor(&Matching::identity(1)), Matching::cup_cap(3, 0).unwrap());
        assert_eq!(Matching::identity(1).tensor(&e), Matching::cup_cap(3, 1).unwrap());
        assert_eq!(Matching::cup(2, 0).unwrap().vertical_flip(), Matching::cap(2, 0).unwrap());
        for d in enumerate_basis(2, 4) {
            assert_eq!(d.vertical_flip().vertical_flip(), d);
        }
    }
}
