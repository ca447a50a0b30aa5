//! Combinatorics of the orbifold polygon and of its triple covering polygon.
//!
//! The orbifold polygon has marked points `v_0..v_n` in counterclockwise order
//! and one orbifold point of order 3. Its covering is the regular
//! `(3n+3)`-gon with vertices `u_0..u_{3n+2}`, on which the generator of the
//! deck group acts by `u_i -> u_{i+n+1}`; `u_i` lies over `v_{i mod (n+1)}`.
//!
//! Every arc is the image of a `G`-orbit of three diagonals. Each such orbit
//! has a representative `[u_s, u_{s+L}]` with `0 <= s <= n` and
//! `2 <= L <= n+1` (the "short chord"); `L = n+1` gives the pending arcs, the
//! sides of a `G`-invariant triangle. The region cut off by a short chord does
//! not contain the centre, so the short chord records on which side of the arc
//! the orbifold point lies.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("the orbifold polygon needs n >= 2, got {0}")]
    TooSmall(usize),
    #[error("n = {n} exceeds the configured bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("{0} is not an arc of the polygon with n = {1}")]
    InvalidArc(Arc, usize),
    #[error("cannot parse arc {0:?}")]
    Parse(String),
    #[error("not a triangulation: {0}")]
    NotATriangulation(String),
    #[error("{0} is not in the triangulation")]
    NotInTriangulation(Arc),
    #[error("flip of {arc} has {count} candidates")]
    FlipNotUnique { arc: Arc, count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// An arc of the orbifold polygon.
///
/// `Plain { r, l, sign }` with `r < l` is `[v_r, v_l]^sign`: for `r > 0` the
/// `+` arc is the one that does not cross the pending arc at `v_0`; for
/// `r = 0` the `-` arc is the one whose side without the orbifold point
/// contains `v_1, .., v_{l-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arc {
    Pending(usize),
    Plain { r: usize, l: usize, sign: Sign },
}

impl Arc {
    pub fn plain(r: usize, l: usize, sign: Sign) -> Arc {
        Arc::Plain { r, l, sign }
    }

    pub fn is_pending(&self) -> bool {
        matches!(self, Arc::Pending(_))
    }

    fn sort_key(&self) -> (u8, usize, usize, u8) {
        match *self {
            Arc::Plain { r, l, sign } => (0, r, l, if sign == Sign::Minus { 0 } else { 1 }),
            Arc::Pending(k) => (1, k, 0, 0),
        }
    }
}

/// Canonical order: plain arcs by `(r, l)` with `-` before `+`, then pending arcs.
impl Ord for Arc {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Arc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Arc::Pending(k) => write!(f, "P:{k}"),
            Arc::Plain { r, l, sign } => {
                write!(f, "A:{r}:{l}:{}", if sign == Sign::Plus { '+' } else { '-' })
            }
        }
    }
}

impl FromStr for Arc {
    type Err = SurfaceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SurfaceError::Parse(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["P", k] => Ok(Arc::Pending(k.parse().map_err(|_| err())?)),
            ["A", r, l, sg] => {
                let r: usize = r.parse().map_err(|_| err())?;
                let l: usize = l.parse().map_err(|_| err())?;
                let sign = match *sg {
                    "+" => Sign::Plus,
                    "-" => Sign::Minus,
                    _ => return Err(err()),
                };
                if r >= l {
                    return Err(err());
                }
                Ok(Arc::Plain { r, l, sign })
            }
            _ => Err(err()),
        }
    }
}

impl Serialize for Arc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Arc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A diagonal `[u_a, u_b]` of the covering polygon, normalized to `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diag {
    pub a: usize,
    pub b: usize,
}

impl Diag {
    pub fn new(x: usize, y: usize) -> Diag {
        assert_ne!(x, y);
        Diag { a: x.min(y), b: x.max(y) }
    }

    /// Endpoints strictly interleave around the polygon.
    pub fn crosses(&self, o: &Diag) -> bool {
        let inside = |x: usize| self.a < x && x < self.b;
        let shared = self.a == o.a || self.a == o.b || self.b == o.a || self.b == o.b;
        !shared && inside(o.a) != inside(o.b)
    }
}

impl fmt::Display for Diag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[u{},u{}]", self.a, self.b)
    }
}

/// Number of vertices of the covering polygon.
pub fn covering_size(n: usize) -> usize {
    3 * (n + 1)
}

/// Short-chord representative `(s, L)` of an arc, or `None` if the code is not an arc.
pub fn short_chord(arc: Arc, n: usize) -> Option<(usize, usize)> {
    let m = n + 1;
    match arc {
        Arc::Pending(k) => (k <= n).then_some((k, m)),
        Arc::Plain { r, l, sign } => {
            if r >= l || l > n {
                return None;
            }
            let direct = (r > 0 && sign == Sign::Plus) || (r == 0 && sign == Sign::Minus);
            let (s, len) = if direct { (r, l - r) } else { (l, m - (l - r)) };
            (2..=n).contains(&len).then_some((s, len))
        }
    }
}

/// Inverse of [`short_chord`].
pub fn arc_of_short_chord(s: usize, len: usize, n: usize) -> Arc {
    let m = n + 1;
    assert!(s <= n && (2..=m).contains(&len));
    if len == m {
        return Arc::Pending(s);
    }
    let e = s + len;
    if e <= n {
        let sign = if s > 0 { Sign::Plus } else { Sign::Minus };
        Arc::Plain { r: s, l: e, sign }
    } else {
        let r = e - m;
        let sign = if r > 0 { Sign::Minus } else { Sign::Plus };
        Arc::Plain { r, l: s, sign }
    }
}

pub fn is_arc(arc: Arc, n: usize) -> bool {
    short_chord(arc, n).is_some()
}

fn check_n(n: usize) -> Result<(), SurfaceError> {
    if n < 2 {
        Err(SurfaceError::TooSmall(n))
    } else {
        Ok(())
    }
}

/// Every arc of the polygon, in canonical order. There are `n(n+1)` of them.
pub fn all_arcs(n: usize) -> Result<Vec<Arc>, SurfaceError> {
    check_n(n)?;
    let mut out: Vec<Arc> = (0..=n).flat_map(|s| (2..=n + 1).map(move |len| arc_of_short_chord(s, len, n))).collect();
    out.sort();
    Ok(out)
}

/// The three diagonals over `arc`, indexed by fiber: lift `f` is
/// `[u_{s+f(n+1)}, u_{s+f(n+1)+L}]`.
pub fn lift(arc: Arc, n: usize) -> Result<[Diag; 3], SurfaceError> {
    let (s, len) = short_chord(arc, n).ok_or(SurfaceError::InvalidArc(arc, n))?;
    let (m, big) = (n + 1, covering_size(n));
    Ok([0, 1, 2].map(|f| Diag::new((s + f * m) % big, (s + f * m + len) % big)))
}

/// The arc under a diagonal together with the fiber of the diagonal, or
/// `None` for diagonals that are not lifts of arcs.
pub fn project(d: Diag, n: usize) -> Option<(Arc, usize)> {
    let (m, big) = (n + 1, covering_size(n));
    let g = d.b - d.a;
    let (start, len) = if g <= big - g { (d.a, g) } else { (d.b, big - g) };
    if !(2..=m).contains(&len) {
        return None;
    }
    Some((arc_of_short_chord(start % m, len, n), start / m))
}

/// Interior intersection number of two arcs.
pub fn crossing(i: Arc, j: Arc, n: usize) -> Result<usize, SurfaceError> {
    if i == j {
        return Ok(0);
    }
    let li = lift(i, n)?;
    let lj = lift(j, n)?;
    Ok(li.iter().filter(|d| d.crosses(&lj[0])).count())
}

pub fn compatible(i: Arc, j: Arc, n: usize) -> Result<bool, SurfaceError> {
    Ok(i == j || crossing(i, j, n)? == 0)
}

/// Rotation direction: `Ccw` sends `v_i` to `v_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rotation {
    Ccw,
    Cw,
}

/// Rotation of an arc by one marked point.
pub fn rotate(arc: Arc, n: usize, dir: Rotation) -> Result<Arc, SurfaceError> {
    let (s, len) = short_chord(arc, n).ok_or(SurfaceError::InvalidArc(arc, n))?;
    let m = n + 1;
    let s2 = match dir {
        Rotation::Ccw => (s + 1) % m,
        Rotation::Cw => (s + n) % m,
    };
    Ok(arc_of_short_chord(s2, len, n))
}

/// A side of a triangle of a triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Arc(Arc),
    /// Boundary segment from `v_i` to `v_{i+1 mod (n+1)}`.
    Boundary(usize),
}

/// A triangle of a triangulation of the orbifold polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    /// Sides in clockwise order.
    pub sides: [Side; 3],
    /// The triangle containing the orbifold point (it has the pending arc as a side).
    pub orbifold: bool,
}

impl Triangle {
    /// All three sides are arcs.
    pub fn is_internal(&self) -> bool {
        self.sides.iter().all(|s| matches!(s, Side::Arc(_)))
    }
}

/// A triangulation: `n` pairwise compatible arcs, stored in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    n: usize,
    arcs: Vec<Arc>,
}

impl Triangulation {
    /// Validates pairwise compatibility, size, maximality and the pending count.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self, SurfaceError> {
        check_n(n)?;
        let set: BTreeSet<Arc> = arcs.into_iter().collect();
        for a in &set {
            if !is_arc(*a, n) {
                return Err(SurfaceError::InvalidArc(*a, n));
            }
        }
        let arcs: Vec<Arc> = set.into_iter().collect();
        let bad = |m: String| Err(SurfaceError::NotATriangulation(m));
        if arcs.len() != n {
            return bad(format!("{} arcs, expected {n}", arcs.len()));
        }
        for (x, a) in arcs.iter().enumerate() {
            for b in &arcs[x + 1..] {
                if !compatible(*a, *b, n)? {
                    return bad(format!("{a} crosses {b}"));
                }
            }
        }
        for c in all_arcs(n)? {
            if !arcs.contains(&c) && arcs.iter().all(|a| compatible(*a, c, n).unwrap_or(false)) {
                return bad(format!("{c} can be added"));
            }
        }
        if arcs.iter().filter(|a| a.is_pending()).count() != 1 {
            return bad("pending arc count is not 1".to_string());
        }
        Ok(Triangulation { n, arcs })
    }

    /// The special triangulation: `[v_0, v_{k+1}]^-` for `k = 1..n-1` and the pending arc at `v_0`.
    pub fn special(n: usize) -> Result<Self, SurfaceError> {
        check_n(n)?;
        let mut arcs: Vec<Arc> = (1..n).map(|k| Arc::plain(0, k + 1, Sign::Minus)).collect();
        arcs.push(Arc::Pending(0));
        Self::new(n, arcs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs in canonical order; the position of an arc is its vertex index in the quiver.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn contains(&self, a: Arc) -> bool {
        self.arcs.binary_search(&a).is_ok()
    }

    pub fn index_of(&self, a: Arc) -> Option<usize> {
        self.arcs.binary_search(&a).ok()
    }

    pub fn pending_index(&self) -> usize {
        self.arcs.iter().position(|a| a.is_pending()).expect("one pending arc")
    }

    /// Replaces `j` by the unique other arc compatible with the remaining ones.
    pub fn flip(&self, j: Arc) -> Result<(Triangulation, Arc), SurfaceError> {
        if !self.contains(j) {
            return Err(SurfaceError::NotInTriangulation(j));
        }
        let rest: Vec<Arc> = self.arcs.iter().copied().filter(|a| *a != j).collect();
        let mut cands = Vec::new();
        for c in all_arcs(self.n)? {
            if c != j && !rest.contains(&c) && rest.iter().all(|a| compatible(*a, c, self.n).unwrap_or(false)) {
                cands.push(c);
            }
        }
        if cands.len() != 1 {
            return Err(SurfaceError::FlipNotUnique { arc: j, count: cands.len() });
        }
        let jp = cands[0];
        let mut arcs = rest;
        arcs.push(jp);
        Ok((Triangulation::new(self.n, arcs)?, jp))
    }

    /// The `3n` diagonals over the arcs, at index `3 * (arc index) + fiber`.
    pub fn lifted_diagonals(&self) -> Vec<Diag> {
        self.arcs.iter().flat_map(|a| lift(*a, self.n).expect("valid arc")).collect()
    }

    /// Triangles of the lifted triangulation as vertex triples `a < b < c`.
    pub fn covering_triangles(&self) -> Vec<[usize; 3]> {
        let big = covering_size(self.n);
        let mut edges: BTreeSet<(usize, usize)> =
            (0..big).map(|i| (i.min((i + 1) % big), i.max((i + 1) % big))).collect();
        edges.extend(self.lifted_diagonals().iter().map(|d| (d.a, d.b)));
        let mut out = Vec::new();
        for a in 0..big {
            for b in a + 1..big {
                if !edges.contains(&(a, b)) {
                    continue;
                }
                for c in b + 1..big {
                    if edges.contains(&(b, c)) && edges.contains(&(a, c)) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// Triangles of the triangulation: orbits of the non-invariant triangles of the lift.
    pub fn triangles(&self) -> Vec<Triangle> {
        let (n, m) = (self.n, self.n + 1);
        let big = covering_size(n);
        let side = |x: usize, y: usize| -> Side {
            let d = Diag::new(x, y);
            if d.b - d.a == 1 || (d.a == 0 && d.b == big - 1) {
                Side::Boundary(if d.b - d.a == 1 { d.a % m } else { n })
            } else {
                Side::Arc(project(d, n).expect("lifted diagonal").0)
            }
        };
        let mut out = Vec::new();
        for [a, b, c] in self.covering_triangles() {
            if b - a == m && c - b == m {
                continue;
            }
            // keep one representative per orbit: the lexicographically smallest triple
            let rep = (1..3)
                .map(|g| {
                    let mut t = [a, b, c].map(|x| (x + g * m) % big);
                    t.sort();
                    t
                })
                .min()
                .expect("two shifts");
            if rep < [a, b, c] {
                continue;
            }
            let sides = [side(c, a), side(b, c), side(a, b)];
            let orbifold = sides.iter().any(|s| matches!(s, Side::Arc(Arc::Pending(_))));
            out.push(Triangle { sides, orbifold });
        }
        out
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.arcs.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", s.join(", "))
    }
}

impl Serialize for Triangulation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.arcs.serialize(s)
    }
}

/// Parses a JSON array of arc codes into a triangulation of the `n`-polygon.
pub fn parse_triangulation(n: usize, json: &str) -> Result<Triangulation, SurfaceError> {
    let codes: Vec<String> = serde_json::from_str(json).map_err(|e| SurfaceError::Parse(e.to_string()))?;
    let arcs = codes.iter().map(|c| c.parse()).collect::<Result<Vec<Arc>, _>>()?;
    Triangulation::new(n, arcs)
}

/// All triangulations, by breadth-first search over the flip graph from the
/// special triangulation, in canonical order.
pub fn enumerate_triangulations(n: usize, bound: usize) -> Result<Vec<Triangulation>, SurfaceError> {
    check_n(n)?;
    if n > bound {
        return Err(SurfaceError::BoundExceeded { n, bound });
    }
    let start = Triangulation::special(n)?;
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for &a in t.arcs() {
            let (t2, _) = t.flip(a)?;
            if seen.insert(t2.clone()) {
                queue.push_back(t2);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// All triangulations, by exhaustive search over `n`-subsets of arcs.
pub fn triangulations_by_subsets(n: usize) -> Result<Vec<Triangulation>, SurfaceError> {
    let arcs = all_arcs(n)?;
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(n: usize, arcs: &[Arc], from: usize, chosen: &mut Vec<Arc>, out: &mut Vec<Triangulation>) {
        if chosen.len() == n {
            if let Ok(t) = Triangulation::new(n, chosen.iter().copied()) {
                out.push(t);
            }
            return;
        }
        for x in from..arcs.len() {
            let c = arcs[x];
            if chosen.iter().all(|a| compatible(*a, c, n).unwrap_or(false)) {
                chosen.push(c);
                go(n, arcs, x + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    go(n, &arcs, 0, &mut chosen, &mut out);
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Arc {
        s.parse().unwrap()
    }

    #[test]
    fn arc_counts() {
        assert_eq!(all_arcs(3).unwrap().len(), 12);
        assert_eq!(all_arcs(2).unwrap().len(), 6);
        let five = all_arcs(5).unwrap();
        assert_eq!(five.len(), 30);
        assert!(five.contains(&a("A:2:5:+")));
        assert!(five.contains(&a("A:2:4:-")));
        assert!(matches!(all_arcs(1), Err(SurfaceError::TooSmall(1))));
    }

    #[test]
    fn adjacent_endpoints_have_one_arc() {
        let n = 4;
        for r in 1..n {
            assert!(is_arc(Arc::plain(r, r + 1, Sign::Minus), n));
            assert!(!is_arc(Arc::plain(r, r + 1, Sign::Plus), n));
        }
        assert!(is_arc(Arc::plain(0, n, Sign::Minus), n));
        assert!(!is_arc(Arc::plain(0, n, Sign::Plus), n));
        assert!(is_arc(Arc::plain(0, 1, Sign::Plus), n));
        assert!(!is_arc(Arc::plain(0, 1, Sign::Minus), n));
    }

    #[test]
    fn codes_round_trip() {
        for n in 2..=6 {
            for x in all_arcs(n).unwrap() {
                assert_eq!(a(&x.to_string()), x);
                let (s, len) = short_chord(x, n).unwrap();
                assert_eq!(arc_of_short_chord(s, len, n), x);
            }
        }
        assert!("A:3:2:+".parse::<Arc>().is_err());
        assert!("Q:1".parse::<Arc>().is_err());
    }

    #[test]
    fn pending_lift() {
        let l = lift(Arc::Pending(0), 3).unwrap();
        assert_eq!(l, [Diag::new(0, 4), Diag::new(4, 8), Diag::new(8, 0)]);
    }

    #[test]
    fn lift_projects_back() {
        for n in 2..=6 {
            for x in all_arcs(n).unwrap() {
                for (f, d) in lift(x, n).unwrap().into_iter().enumerate() {
                    assert_eq!(project(d, n), Some((x, f)));
                }
            }
        }
    }

    #[test]
    fn crossing_properties() {
        for n in 2..=5 {
            let arcs = all_arcs(n).unwrap();
            for &i in &arcs {
                assert_eq!(crossing(i, i, n).unwrap(), 0);
                for &j in &arcs {
                    assert_eq!(crossing(i, j, n).unwrap(), crossing(j, i, n).unwrap());
                    if i != j && i.is_pending() && j.is_pending() {
                        assert!(!compatible(i, j, n).unwrap());
                    }
                }
            }
        }
        assert!(compatible(Arc::Pending(0), a("A:0:2:-"), 3).unwrap());
    }

    #[test]
    fn special_triangulation_profile() {
        let t = Triangulation::special(3).unwrap();
        assert_eq!(t.arcs(), &[a("A:0:2:-"), a("A:0:3:-"), a("P:0")]);
        let t5 = Triangulation::special(5).unwrap();
        let prof: Vec<usize> = t5.arcs().iter().map(|i| crossing(*i, a("A:2:4:-"), 5).unwrap()).collect();
        assert_eq!(prof, vec![0, 1, 1, 2, 2]);
        // the "+" arcs with r > 0 avoid the pending arc at v_0, the "-" arcs cross it
        for x in all_arcs(5).unwrap() {
            if let Arc::Plain { r, sign, .. } = x {
                if r > 0 {
                    let c = crossing(Arc::Pending(0), x, 5).unwrap();
                    assert_eq!(c == 0, sign == Sign::Plus, "{x}");
                }
            }
        }
    }

    #[test]
    fn flips() {
        let t0 = Triangulation::special(3).unwrap();
        let (t, new) = t0.flip(a("A:0:3:-")).unwrap();
        assert_eq!(new, a("A:0:2:+"));
        assert_eq!(t.arcs(), &[a("A:0:2:-"), a("A:0:2:+"), a("P:0")]);
        let (back, old) = t.flip(new).unwrap();
        assert_eq!((back, old), (t0.clone(), a("A:0:3:-")));
        let (_, p) = t0.flip(Arc::Pending(0)).unwrap();
        assert!(p.is_pending() && p != Arc::Pending(0));
        assert!(matches!(t0.flip(a("A:1:3:+")), Err(SurfaceError::NotInTriangulation(_))));
    }

    #[test]
    fn enumeration_agrees_with_subset_search() {
        for n in 2..=3 {
            let bfs = enumerate_triangulations(n, 6).unwrap();
            assert_eq!(bfs, triangulations_by_subsets(n).unwrap());
            for t in &bfs {
                assert_eq!(t.arcs().len(), n);
                assert_eq!(t.arcs().iter().filter(|x| x.is_pending()).count(), 1);
                for &x in t.arcs() {
                    let (t2, y) = t.flip(x).unwrap();
                    assert_ne!(x, y);
                    assert_eq!(t2.flip(y).unwrap(), (t.clone(), x));
                }
            }
        }
        assert_eq!(enumerate_triangulations(2, 6).unwrap().len(), 6);
        assert_eq!(enumerate_triangulations(3, 6).unwrap().len(), 20);
        assert!(matches!(enumerate_triangulations(7, 6), Err(SurfaceError::BoundExceeded { .. })));
    }

    #[test]
    fn rotation() {
        for n in 2..=5 {
            let arcs = all_arcs(n).unwrap();
            let big = covering_size(n);
            for &x in &arcs {
                let y = rotate(x, n, Rotation::Ccw).unwrap();
                assert_eq!(rotate(y, n, Rotation::Cw).unwrap(), x);
                let shifted: BTreeSet<Diag> =
                    lift(x, n).unwrap().iter().map(|d| Diag::new((d.a + 1) % big, (d.b + 1) % big)).collect();
                assert_eq!(shifted, lift(y, n).unwrap().into_iter().collect());
            }
            let mut img: Vec<Arc> = arcs.iter().map(|x| rotate(*x, n, Rotation::Ccw).unwrap()).collect();
            img.sort();
            assert_eq!(img, arcs);
        }
    }

    #[test]
    fn triangles_of_triangulations() {
        let t0 = Triangulation::special(3).unwrap();
        let tr = t0.triangles();
        assert_eq!(tr.len(), 3);
        assert_eq!(tr.iter().filter(|t| t.orbifold).count(), 1);
        for n in 2..=4 {
            for t in enumerate_triangulations(n, 6).unwrap() {
                assert_eq!(t.covering_triangles().len(), 3 * n + 1);
                let tr = t.triangles();
                assert_eq!(tr.len(), n);
                assert_eq!(tr.iter().filter(|t| t.orbifold).count(), 1);
            }
        }
        let (t, _) = t0.flip(a("A:0:3:-")).unwrap();
        assert_eq!(t.triangles().iter().filter(|t| t.is_internal()).count(), 1);
    }
}
