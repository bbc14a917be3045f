use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tldiag::{enumerate_basis, Diagram, Matching, Point};

/// Orientation of a strand where it meets the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Up,
    Down,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Up => Sign::Down,
            Sign::Down => Sign::Up,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Up => '^',
            Sign::Down => 'v',
        }
    }
}

/// Up/down orientations of a row of vertical strand positions, printed over
/// `^`/`v`. Orders lexicographically with `^` before `v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Signature(pub Vec<Sign>);

impl Signature {
    pub fn all_up(n: usize) -> Self {
        Signature(vec![Sign::Up; n])
    }

    pub fn all_down(n: usize) -> Self {
        Signature(vec![Sign::Down; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ups(&self) -> usize {
        self.0.iter().filter(|s| **s == Sign::Up).count()
    }

    pub fn downs(&self) -> usize {
        self.len() - self.ups()
    }

    pub fn is_balanced(&self) -> bool {
        2 * self.ups() == self.len()
    }

    pub fn reversed_arrows(&self) -> Self {
        Signature(self.0.iter().map(|s| s.flip()).collect())
    }

    /// All `2ⁿ` signatures of length `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Signature> {
        (0..1u64 << n).map(|key| Signature::from_key(n, key)).collect()
    }

    /// Bit `n-1-k` set iff position `k` points down, so numeric order of
    /// keys is lexicographic order of signatures.
    pub(crate) fn key(&self) -> u64 {
        let n = self.len();
        self.0
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Sign::Down)
            .fold(0, |acc, (k, _)| acc | 1 << (n - 1 - k))
    }

    pub(crate) fn from_key(n: usize, key: u64) -> Self {
        Signature(
            (0..n)
                .map(|k| if key >> (n - 1 - k) & 1 == 1 { Sign::Down } else { Sign::Up })
                .collect(),
        )
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for s in &self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" {
            return Ok(Signature::default());
        }
        s.chars()
            .map(|c| match c {
                '^' => Ok(Sign::Up),
                'v' => Ok(Sign::Down),
                _ => Err(Error::Parse(format!("bad signature `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Signature)
    }
}

/// Which loop orientation evaluates to `q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chirality {
    /// Counterclockwise loops are `q`, clockwise loops `q⁻¹`.
    #[default]
    Standard,
    /// Counterclockwise loops are `q⁻¹`, clockwise loops `q`.
    Mirrored,
}

impl Chirality {
    /// Exponent of `q` carried by one counterclockwise loop.
    pub fn ccw_exponent(self) -> i64 {
        match self {
            Chirality::Standard => 1,
            Chirality::Mirrored => -1,
        }
    }
}

impl fmt::Display for Chirality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chirality::Standard => "standard",
            Chirality::Mirrored => "mirrored",
        })
    }
}

/// A crossingless matching with a direction on every strand.
///
/// `enters` has bit `p` set when the strand through point `p` flows into
/// the rectangle there; each strand has exactly one such endpoint. At most
/// 64 boundary points.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrMatching {
    matching: Matching,
    enters: u64,
}

impl OrMatching {
    pub fn new(matching: Matching, enters: u64) -> Result<Self> {
        let n = matching.bottom_count() + matching.top_count();
        if n > 64 {
            return Err(Error::InvalidDiagram(format!("{n} boundary points exceeds 64")));
        }
        for p in 0..n {
            let q = matching.partner_index(p);
            if (enters >> p & 1) == (enters >> q & 1) {
                return Err(Error::InvalidDiagram(format!(
                    "strand {} -- {} needs exactly one entry point",
                    matching.point(p),
                    matching.point(q)
                )));
            }
        }
        if n < 64 && enters >> n != 0 {
            return Err(Error::InvalidDiagram("orientation bits beyond the boundary".into()));
        }
        Ok(OrMatching { matching, enters })
    }

    /// Every orientation of `m`, in increasing mask order.
    pub fn orientations(m: &Matching) -> Vec<OrMatching> {
        let firsts: Vec<usize> = (0..m.bottom_count() + m.top_count())
            .filter(|&p| p < m.partner_index(p))
            .collect();
        (0..1u64 << firsts.len())
            .map(|choice| {
                let mut enters = 0u64;
                for (bit, &p) in firsts.iter().enumerate() {
                    let src = if choice >> bit & 1 == 0 { p } else { m.partner_index(p) };
                    enters |= 1 << src;
                }
                OrMatching {
                    matching: m.clone(),
                    enters,
                }
            })
            .collect()
    }

    /// Vertical strands with the given orientations.
    pub fn vertical(s: &Signature) -> OrMatching {
        let n = s.len();
        let enters = s
            .0
            .iter()
            .enumerate()
            .fold(0u64, |acc, (k, sign)| match sign {
                Sign::Up => acc | 1 << k,
                Sign::Down => acc | 1 << (n + k),
            });
        OrMatching {
            matching: Matching::identity(n),
            enters,
        }
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    fn enters_at(&self, p: usize) -> bool {
        self.enters >> p & 1 == 1
    }

    pub fn bottom_signature(&self) -> Signature {
        Signature(
            (0..self.matching.bottom_count())
                .map(|k| if self.enters_at(k) { Sign::Up } else { Sign::Down })
                .collect(),
        )
    }

    pub fn top_signature(&self) -> Signature {
        let i = self.matching.bottom_count();
        Signature(
            (0..self.matching.top_count())
                .map(|k| if self.enters_at(i + k) { Sign::Down } else { Sign::Up })
                .collect(),
        )
    }

    /// Twice the total turning of the strands, in half turns: an arc between
    /// two bottom points turns clockwise when traversed left to right, an arc
    /// between two top points counterclockwise.
    pub(crate) fn half_turns(&self) -> i64 {
        let i = self.matching.bottom_count();
        let mut total = 0;
        for p in 0..i + self.matching.top_count() {
            if !self.enters_at(p) {
                continue;
            }
            let q = self.matching.partner_index(p);
            let rightward = q > p;
            total += match (p < i, q < i) {
                (true, true) => {
                    if rightward {
                        -1
                    } else {
                        1
                    }
                }
                (false, false) => {
                    if rightward {
                        1
                    } else {
                        -1
                    }
                }
                _ => 0,
            };
        }
        total
    }

    /// Loops made by closing `t_k` to `b_k` around the right, as net
    /// (counterclockwise − clockwise) count; `None` if the top and bottom
    /// signatures differ.
    pub(crate) fn closure_winding(&self) -> Option<i64> {
        let n = self.matching.bottom_count();
        if self.matching.top_count() != n || self.bottom_signature() != self.top_signature() {
            return None;
        }
        let mut seen = vec![false; 2 * n];
        let mut net = 0;
        for k in 0..n {
            if seen[k] {
                continue;
            }
            // Smallest unseen bottom index is the loop's leftmost position;
            // a downward strand there means counterclockwise.
            net += if self.enters_at(k) { -1 } else { 1 };
            let mut p = k;
            loop {
                seen[p] = true;
                let q = self.matching.partner_index(p);
                seen[q] = true;
                p = if q < n { q + n } else { q - n };
                if seen[p] {
                    break;
                }
            }
        }
        Some(net)
    }

    fn remap(&self, matching: Matching, map: impl Fn(usize) -> usize) -> OrMatching {
        let n = self.matching.bottom_count() + self.matching.top_count();
        let enters = (0..n)
            .filter(|&p| self.enters_at(p))
            .fold(0u64, |acc, p| acc | 1 << map(p));
        OrMatching { matching, enters }
    }
}

impl Diagram for OrMatching {
    /// Net count of counterclockwise minus clockwise loops.
    type Loops = i64;

    fn bottom_count(&self) -> usize {
        self.matching.bottom_count()
    }

    fn top_count(&self) -> usize {
        self.matching.top_count()
    }

    fn bottom_key(&self) -> u64 {
        self.bottom_signature().key()
    }

    fn top_key(&self) -> u64 {
        self.top_signature().key()
    }

    fn stack(&self, lower: &Self) -> (Self, i64) {
        let mut net = 0;
        let matching = self.matching.glue(&lower.matching, |c| {
            // Leftmost point of the loop sits at interface position `c`; the
            // flow there runs downward exactly when it leaves the upper
            // diagram through its bottom.
            net += if self.enters_at(c) { -1 } else { 1 };
        });
        let k = lower.matching.bottom_count();
        let m = self.matching.bottom_count();
        let j = self.matching.top_count();
        let low_mask = if k >= 64 { u64::MAX } else { (1u64 << k) - 1 };
        let mut enters = lower.enters & low_mask;
        for t in 0..j {
            if self.enters_at(m + t) {
                enters |= 1 << (k + t);
            }
        }
        (OrMatching { matching, enters }, net)
    }

    fn tensor(&self, other: &Self) -> Self {
        let (i1, j1) = (self.matching.bottom_count(), self.matching.top_count());
        let i2 = other.matching.bottom_count();
        let i = i1 + i2;
        let matching = self.matching.tensor(&other.matching);
        let a = self.remap(matching.clone(), |p| if p < i1 { p } else { i + (p - i1) });
        let b = other.remap(matching.clone(), |p| if p < i2 { i1 + p } else { i + j1 + (p - i2) });
        OrMatching {
            matching,
            enters: a.enters | b.enters,
        }
    }

    fn vertical_flip(&self) -> Self {
        let (i, j) = (self.matching.bottom_count(), self.matching.top_count());
        self.remap(self.matching.vertical_flip(), |p| if p < i { j + p } else { p - i })
    }
}

/// All oriented diagrams `i -> j`, sorted.
pub fn enumerate_oriented(i: usize, j: usize) -> Vec<OrMatching> {
    let mut out: Vec<OrMatching> = enumerate_basis(i, j)
        .iter()
        .flat_map(OrMatching::orientations)
        .collect();
    out.sort();
    out
}

impl fmt::Display for OrMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "OTL({},{}){{",
            self.matching.bottom_count(),
            self.matching.top_count()
        )?;
        for (n, (a, b)) in self.matching.pairs().into_iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            let arrow = if self.enters_at(self.matching_index(a)) { '>' } else { '<' };
            write!(f, "({a}{arrow}{b})")?;
        }
        f.write_str("}")
    }
}

impl OrMatching {
    fn matching_index(&self, p: Point) -> usize {
        match p {
            Point::Bottom(k) => k,
            Point::Top(k) => self.matching.bottom_count() + k,
        }
    }
}

impl fmt::Debug for OrMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for OrMatching {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad oriented diagram `{s}`"));
        let body = s.trim().strip_prefix("OTL(").ok_or_else(bad)?;
        let (dims, rest) = body.split_once(')').ok_or_else(bad)?;
        let (i, j) = dims.split_once(',').ok_or_else(bad)?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        let j: usize = j.trim().parse().map_err(|_| bad())?;
        let inner = rest
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(bad)?;
        let mut pairs = Vec::new();
        let mut sources = Vec::new();
        for chunk in inner.split(')').map(str::trim).filter(|c| !c.is_empty()) {
            let chunk = chunk.trim_start_matches(',').trim().strip_prefix('(').ok_or_else(bad)?;
            let (a, b, forward) = if let Some((a, b)) = chunk.split_once('>') {
                (a, b, true)
            } else {
                let (a, b) = chunk.split_once('<').ok_or_else(bad)?;
                (a, b, false)
            };
            let (a, b): (Point, Point) = (a.parse()?, b.parse()?);
            pairs.push((a, b));
            sources.push(if forward { a } else { b });
        }
        let matching = Matching::from_pairs(i, j, &pairs)?;
        let enters = sources.into_iter().fold(0u64, |acc, p| {
            acc | 1 << match p {
                Point::Bottom(k) => k,
                Point::Top(k) => i + k,
            }
        });
        OrMatching::new(matching, enters)
    }
}
