//! Strings of gentle algebras, string modules, arc strings read off the
//! covering polygon, and Euler characteristics of quiver Grassmannians of
//! string modules.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::algebra::{is_injective, is_projective, lifted_algebras, DecRep, GentleAlgebra, Lifted, Quiver, Rep};
use crate::linalg::Mat;
use crate::surface::{crossing, lift, rotate, Arc, Rotation, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StringError {
    #[error("invalid string: {0}")]
    Invalid(String),
    #[error("cannot parse string {0:?}")]
    Parse(String),
    #[error("the algebra has a band through {0}")]
    Band(String),
    #[error("arc {0} belongs to the triangulation")]
    ArcInTriangulation(Arc),
    #[error("dimension vector {0:?} exceeds the module dimensions")]
    DimensionOutOfRange(Vec<usize>),
    #[error("M({0}) is {1}")]
    NotTranslatable(Arc, &'static str),
}

/// A direct arrow `a` or a formal inverse `a~`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: usize) -> Letter {
        Letter { arrow, inverse: false }
    }

    pub fn inv(self) -> Letter {
        Letter { arrow: self.arrow, inverse: !self.inverse }
    }

    /// Vertex the walk leaves from.
    pub fn source(self, q: &Quiver) -> usize {
        let a = &q.arrows[self.arrow];
        if self.inverse {
            a.head
        } else {
            a.tail
        }
    }

    /// Vertex the walk arrives at.
    pub fn target(self, q: &Quiver) -> usize {
        let a = &q.arrows[self.arrow];
        if self.inverse {
            a.tail
        } else {
            a.head
        }
    }
}

/// A walk `z_0 - z_1 - ... - z_r` in the quiver; `letters[k]` joins
/// `z_k` and `z_{k+1}`. Written as a composition, so the text form lists
/// the letters from last to first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StringWord {
    pub start: usize,
    pub letters: Vec<Letter>,
}

impl StringWord {
    pub fn trivial(v: usize) -> StringWord {
        StringWord { start: v, letters: Vec::new() }
    }

    pub fn from_letters(q: &Quiver, letters: Vec<Letter>) -> StringWord {
        assert!(!letters.is_empty());
        StringWord { start: letters[0].source(q), letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Vertices `z_0, ..., z_r` visited by the walk.
    pub fn vertices(&self, q: &Quiver) -> Vec<usize> {
        let mut out = vec![self.start];
        out.extend(self.letters.iter().map(|l| l.target(q)));
        out
    }

    pub fn dims(&self, q: &Quiver) -> Vec<usize> {
        let mut d = vec![0; q.num_vertices];
        for v in self.vertices(q) {
            d[v] += 1;
        }
        d
    }

    pub fn inverse(&self, q: &Quiver) -> StringWord {
        if self.letters.is_empty() {
            return self.clone();
        }
        let letters: Vec<Letter> = self.letters.iter().rev().map(|l| l.inv()).collect();
        StringWord { start: letters[0].source(q), letters }
    }

    fn norm_key(&self, q: &Quiver) -> (usize, usize, Vec<Letter>) {
        let inv_loops = self.letters.iter().filter(|l| l.inverse && q.arrows[l.arrow].is_loop()).count();
        let inv = self.letters.iter().filter(|l| l.inverse).count();
        (inv_loops, inv, self.letters.iter().rev().copied().collect())
    }

    /// Representative of `{W, W^-1}`: fewest inverse loops, then fewest
    /// inverse letters, then lexicographic in text order.
    pub fn normalized(&self, q: &Quiver) -> StringWord {
        let w = self.inverse(q);
        if w.norm_key(q) < self.norm_key(q) {
            w
        } else {
            self.clone()
        }
    }

    pub fn same_up_to_inversion(&self, o: &StringWord, q: &Quiver) -> bool {
        self.normalized(q) == o.normalized(q)
    }

    pub fn to_text(&self, q: &Quiver) -> String {
        if self.letters.is_empty() {
            return format!("1@({},+)", self.start + 1);
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .rev()
            .map(|l| format!("{}{}", q.arrows[l.arrow].name, if l.inverse { "~" } else { "" }))
            .collect();
        parts.join(".")
    }

    pub fn parse(q: &Quiver, s: &str) -> Result<StringWord, StringError> {
        let err = || StringError::Parse(s.to_string());
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("1@(") {
            let body = rest.strip_suffix(')').ok_or_else(err)?;
            let (v, sign) = body.split_once(',').ok_or_else(err)?;
            if !matches!(sign.trim(), "+" | "-") {
                return Err(err());
            }
            let v: usize = v.trim().parse().map_err(|_| err())?;
            if v == 0 || v > q.num_vertices {
                return Err(err());
            }
            return Ok(StringWord::trivial(v - 1));
        }
        let mut letters = Vec::new();
        for tok in s.split('.').rev() {
            let (name, inverse) = match tok.strip_suffix('~') {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let arrow = q.arrow_by_name(name).ok_or_else(err)?;
            letters.push(Letter { arrow, inverse });
        }
        Ok(StringWord::from_letters(q, letters))
    }

    /// Checks composability, absence of `l l~` and of relations.
    pub fn validate(&self, alg: &GentleAlgebra) -> Result<(), StringError> {
        let q = alg.quiver();
        let bad = |m: &str| Err(StringError::Invalid(format!("{}: {m}", self.to_text(q))));
        if self.start >= q.num_vertices {
            return bad("vertex out of range");
        }
        if let Some(first) = self.letters.first() {
            if first.source(q) != self.start {
                return bad("start vertex");
            }
        }
        for w in self.letters.windows(2) {
            if let Some(m) = junction_defect(alg, w[0], w[1]) {
                return bad(m);
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, alg: &GentleAlgebra) -> bool {
        self.validate(alg).is_ok()
    }

    /// Edges of the arrow action on the basis: `(k, k')` means some arrow sends `z_k` to `z_k'`.
    fn action_edges(&self) -> Vec<(usize, usize)> {
        self.letters.iter().enumerate().map(|(k, l)| if l.inverse { (k + 1, k) } else { (k, k + 1) }).collect()
    }
}

/// Why `x` followed by `y` cannot occur in a string, if it cannot.
fn junction_defect(alg: &GentleAlgebra, x: Letter, y: Letter) -> Option<&'static str> {
    let q = alg.quiver();
    if x.target(q) != y.source(q) {
        Some("letters are not composable")
    } else if y == x.inv() {
        Some("contains l l~")
    } else if !x.inverse && !y.inverse && alg.is_relation(y.arrow, x.arrow) {
        Some("contains a relation")
    } else if x.inverse && y.inverse && alg.is_relation(x.arrow, y.arrow) {
        Some("contains an inverse relation")
    } else {
        None
    }
}

/// Displays with numeric arrow ids; use [`StringWord::to_text`] for names.
impl fmt::Display for StringWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1@({},+)", self.start + 1);
        }
        let parts: Vec<String> =
            self.letters.iter().rev().map(|l| format!("#{}{}", l.arrow, if l.inverse { "~" } else { "" })).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// Position of each `z_k` inside the space at its vertex.
fn basis_positions(q: &Quiver, w: &StringWord) -> Vec<usize> {
    let mut seen = vec![0; q.num_vertices];
    w.vertices(q)
        .into_iter()
        .map(|v| {
            seen[v] += 1;
            seen[v] - 1
        })
        .collect()
}

/// The string module `N(W)`.
pub fn string_module(alg: &GentleAlgebra, w: &StringWord) -> Result<Rep, StringError> {
    w.validate(alg)?;
    let q = alg.quiver();
    let verts = w.vertices(q);
    let pos = basis_positions(q, w);
    let mut rep = Rep::with_zero_maps(q, w.dims(q));
    for (k, l) in w.letters.iter().enumerate() {
        let (from, to) = if l.inverse { (k + 1, k) } else { (k, k + 1) };
        debug_assert_eq!(q.arrows[l.arrow].tail, verts[from]);
        rep.mats[l.arrow].set(pos[to], pos[from], num_rational::BigRational::one());
    }
    Ok(rep)
}

/// All strings up to inversion, in normal form, sorted by length then text.
/// Fails if a string repeats a letter, which would produce a band.
pub fn all_strings(alg: &GentleAlgebra) -> Result<Vec<StringWord>, StringError> {
    let q = alg.quiver();
    let mut found: BTreeSet<(usize, String, StringWord)> = BTreeSet::new();
    let mut stack: Vec<StringWord> = Vec::new();
    for v in 0..q.num_vertices {
        let t = StringWord::trivial(v);
        found.insert((0, t.to_text(q), t));
        for a in 0..q.arrows.len() {
            for inverse in [false, true] {
                let l = Letter { arrow: a, inverse };
                if l.source(q) == v {
                    stack.push(StringWord::from_letters(q, vec![l]));
                }
            }
        }
    }
    while let Some(w) = stack.pop() {
        let norm = w.normalized(q);
        found.insert((norm.len(), norm.to_text(q), norm));
        let last = *w.letters.last().expect("nonempty");
        let end = last.target(q);
        for a in 0..q.arrows.len() {
            for inverse in [false, true] {
                let l = Letter { arrow: a, inverse };
                if l.source(q) != end || junction_defect(alg, last, l).is_some() {
                    continue;
                }
                let mut next = w.clone();
                next.letters.push(l);
                // a repeated letter l...l makes every power of the walk between them a string
                if w.letters.contains(&l) {
                    return Err(StringError::Band(next.to_text(q)));
                }
                stack.push(next);
            }
        }
    }
    Ok(found.into_iter().map(|(_, _, w)| w).collect())
}

/// Covering vertices crossed by the lift of `j` with the smallest initial
/// endpoint, in order along the arc.
pub fn crossed_lift(tau: &Triangulation, j: Arc) -> Vec<usize> {
    let n = tau.n();
    let size = crate::surface::covering_size(n);
    let d = *lift(j, n).expect("valid arc").iter().min_by_key(|d| d.a).expect("three lifts");
    let (p, qv) = (d.a, d.b);
    let mut crossed: Vec<(usize, usize, usize)> = tau
        .lifted_diagonals()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.crosses(&d))
        .map(|(i, c)| {
            let (x, y) = if p < c.a && c.a < qv { (c.a, c.b) } else { (c.b, c.a) };
            ((x + size - p) % size, (p + size - y) % size, i)
        })
        .collect();
    crossed.sort();
    crossed.into_iter().map(|(_, _, i)| i).collect()
}

/// The string over `Lambda(T)` of a lift of `j`, read off its crossing sequence.
pub fn covering_arc_string(lifted: &Lifted, tau: &Triangulation, j: Arc) -> Result<StringWord, StringError> {
    if tau.contains(j) {
        return Err(StringError::ArcInTriangulation(j));
    }
    let q = lifted.cover.quiver();
    let crossed = crossed_lift(tau, j);
    let letters = crossed
        .windows(2)
        .map(|w| {
            let (u, v) = (w[0], w[1]);
            q.arrows
                .iter()
                .position(|a| a.tail == u && a.head == v)
                .map(Letter::direct)
                .or_else(|| q.arrows.iter().position(|a| a.tail == v && a.head == u).map(|x| Letter::direct(x).inv()))
                .expect("consecutive crossed diagonals share a triangle")
        })
        .collect::<Vec<_>>();
    let w = StringWord { start: crossed[0], letters };
    w.validate(&lifted.cover)?;
    Ok(w)
}

/// Image of a covering string in the orbit algebra.
pub fn project_string(lifted: &Lifted, w: &StringWord) -> StringWord {
    StringWord {
        start: lifted.orbit.vertex_orbit(w.start),
        letters: w
            .letters
            .iter()
            .map(|l| Letter { arrow: lifted.orbit.arrow_orbit(l.arrow), inverse: l.inverse })
            .collect(),
    }
}

/// The lift of a string starting at fiber `fiber` of its initial vertex.
pub fn lift_string(lifted: &Lifted, w: &StringWord, fiber: usize) -> StringWord {
    let q = lifted.cover.quiver();
    let mut cur = 3 * w.start + fiber;
    let start = cur;
    let mut letters = Vec::with_capacity(w.len());
    for l in &w.letters {
        let candidates = (0..3).map(|f| 3 * l.arrow + f);
        let x = if l.inverse {
            candidates.clone().find(|&x| q.arrows[x].head == cur)
        } else {
            candidates.clone().find(|&x| q.arrows[x].tail == cur)
        }
        .expect("every arrow lifts at every fiber");
        cur = if l.inverse { q.arrows[x].tail } else { q.arrows[x].head };
        letters.push(Letter { arrow: x, inverse: l.inverse });
    }
    StringWord { start, letters }
}

/// `W_j(tau)`, normalized up to inversion.
pub fn arc_string(tau: &Triangulation, j: Arc) -> Result<StringWord, StringError> {
    let lifted = lifted_algebras(tau);
    arc_string_in(&lifted, tau, j)
}

pub fn arc_string_in(lifted: &Lifted, tau: &Triangulation, j: Arc) -> Result<StringWord, StringError> {
    let w = covering_arc_string(lifted, tau, j)?;
    let down = project_string(lifted, &w);
    down.validate(&lifted.base)?;
    Ok(down.normalized(lifted.base.quiver()))
}

/// `M(j, tau)`: the negative simple for `j` in `tau`, otherwise `N(W_j(tau))`.
pub fn arc_rep(tau: &Triangulation, j: Arc) -> DecRep {
    arc_rep_in(&lifted_algebras(tau), tau, j)
}

pub fn arc_rep_in(lifted: &Lifted, tau: &Triangulation, j: Arc) -> DecRep {
    let q = lifted.base.quiver();
    if let Some(i) = tau.index_of(j) {
        return DecRep::negative_simple(q, i);
    }
    let w = arc_string_in(lifted, tau, j).expect("arc strings are valid");
    let rep = string_module(&lifted.base, &w).expect("valid string");
    debug_assert!(tau
        .arcs()
        .iter()
        .zip(&rep.dims)
        .all(|(&i, &d)| crossing(i, j, tau.n()).expect("arcs of the same surface") == d));
    DecRep::undecorated(rep)
}

/// Closed form of `g(M(j))` over the special triangulation of the `n`-polygon,
/// for `j` outside it, read off the dimension vector `dims = dim M(j)`.
pub fn special_g_vector(n: usize, j: Arc, dims: &[usize]) -> Vec<i64> {
    let mut g = vec![0i64; n];
    // 1-based positions; position 0 is dropped
    let mut add = |l: usize, v: i64| {
        if l >= 1 {
            g[l - 1] += v;
        }
    };
    let first = |d: usize| dims.iter().position(|&x| x == d).expect("value occurs") + 1;
    if let Arc::Pending(k) = j {
        add(k - 1, 2);
        add(n, -1);
    } else if dims[n - 1] > 0 {
        add(first(1) - 1, 1);
        add(first(2) - 1, 1);
        add(n, -1);
    } else {
        add(first(1) - 1, 1);
        add(dims.iter().rposition(|&x| x != 0).expect("nonzero module") + 1, -1);
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArDirection {
    Tau,
    TauInverse,
}

/// `tau M(j) = M(r+ j)` and `tau^- M(j) = M(r- j)`, where the rotations move
/// both endpoints one step along the boundary.
pub fn ar_translate_arc(lifted: &Lifted, tau: &Triangulation, j: Arc, dir: ArDirection) -> Result<DecRep, StringError> {
    if tau.contains(j) {
        return Err(StringError::ArcInTriangulation(j));
    }
    let m = arc_rep_in(lifted, tau, j);
    let rot = match dir {
        ArDirection::Tau if is_projective(&lifted.base, &m.rep) => {
            return Err(StringError::NotTranslatable(j, "projective"))
        }
        ArDirection::TauInverse if is_injective(&lifted.base, &m.rep) => {
            return Err(StringError::NotTranslatable(j, "injective"))
        }
        ArDirection::Tau => Rotation::Ccw,
        ArDirection::TauInverse => Rotation::Cw,
    };
    let r = rotate(j, tau.n(), rot).expect("valid arc");
    Ok(arc_rep_in(lifted, tau, r))
}

/// Number of arrow-closed subsets of the basis of `N(W)`, by dimension vector.
/// Equals `chi(Grass_e(N(W)))`.
pub fn euler_profile(alg: &GentleAlgebra, w: &StringWord) -> BTreeMap<Vec<usize>, u64> {
    let q = alg.quiver();
    let verts = w.vertices(q);
    let nv = q.num_vertices;
    let mut states: BTreeMap<(bool, Vec<usize>), u64> = BTreeMap::new();
    states.insert((false, vec![0; nv]), 1);
    let mut e1 = vec![0; nv];
    e1[verts[0]] = 1;
    states.insert((true, e1), 1);
    for (k, l) in w.letters.iter().enumerate() {
        let v = verts[k + 1];
        let mut next: BTreeMap<(bool, Vec<usize>), u64> = BTreeMap::new();
        for ((prev_in, e), c) in &states {
            for cur_in in [false, true] {
                // a direct letter maps z_k to z_{k+1}, an inverse one z_{k+1} to z_k
                let ok = if l.inverse { !cur_in || *prev_in } else { !*prev_in || cur_in };
                if !ok {
                    continue;
                }
                let mut e = e.clone();
                if cur_in {
                    e[v] += 1;
                }
                *next.entry((cur_in, e)).or_insert(0) += c;
            }
        }
        states = next;
    }
    let mut out = BTreeMap::new();
    for ((_, e), c) in states {
        *out.entry(e).or_insert(0) += c;
    }
    out
}

/// `chi(Grass_e(N(W)))`.
pub fn grassmannian_euler(alg: &GentleAlgebra, w: &StringWord, e: &[usize]) -> Result<u64, StringError> {
    let dims = w.dims(alg.quiver());
    if e.len() != dims.len() || e.iter().zip(&dims).any(|(a, b)| a > b) {
        return Err(StringError::DimensionOutOfRange(e.to_vec()));
    }
    Ok(euler_profile(alg, w).get(e).copied().unwrap_or(0))
}

/// Closed factors `z_i ... z_j` of `W` (no arrow leaves them), as index ranges.
pub fn closed_segments(w: &StringWord) -> Vec<(usize, usize)> {
    let r = w.len();
    let mut out = Vec::new();
    for i in 0..=r {
        // the letter before z_i must not point out of the segment
        if i > 0 && w.letters[i - 1].inverse {
            continue;
        }
        for j in i..=r {
            if j < r && !w.letters[j].inverse {
                continue;
            }
            out.push((i, j));
        }
    }
    out
}

/// Substrings of `W`: the zero string (`None`) and every closed factor.
pub fn substrings(alg: &GentleAlgebra, w: &StringWord) -> Vec<Option<StringWord>> {
    let q = alg.quiver();
    let verts = w.vertices(q);
    let mut out = vec![None];
    for (i, j) in closed_segments(w) {
        out.push(Some(StringWord { start: verts[i], letters: w.letters[i..j].to_vec() }));
    }
    out
}

/// Count of submodules spanned by families of pairwise separated closed
/// factors, by dimension vector. Independent of [`euler_profile`].
pub fn substring_family_profile(alg: &GentleAlgebra, w: &StringWord) -> BTreeMap<Vec<usize>, u64> {
    let q = alg.quiver();
    let verts = w.vertices(q);
    let segs = closed_segments(w);
    let nv = q.num_vertices;
    fn extend(
        segs: &[(usize, usize)],
        verts: &[usize],
        from: usize,
        e: &mut Vec<usize>,
        out: &mut BTreeMap<Vec<usize>, u64>,
    ) {
        *out.entry(e.clone()).or_insert(0) += 1;
        for &(i, j) in segs {
            if i < from {
                continue;
            }
            for &v in &verts[i..=j] {
                e[v] += 1;
            }
            extend(segs, verts, j + 2, e, out);
            for &v in &verts[i..=j] {
                e[v] -= 1;
            }
        }
    }
    let mut out = BTreeMap::new();
    extend(&segs, &verts, 0, &mut vec![0; nv], &mut out);
    out
}

/// Brute force over coordinate subspaces of a representation whose basis at
/// each vertex is given, testing closure with the matrices themselves.
pub fn coordinate_submodule_profile(q: &Quiver, rep: &Rep) -> BTreeMap<Vec<usize>, u64> {
    let mut coords: Vec<(usize, usize)> = Vec::new();
    for (v, &d) in rep.dims.iter().enumerate() {
        coords.extend((0..d).map(|k| (v, k)));
    }
    assert!(coords.len() < 24, "brute force limited to small modules");
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << coords.len()) {
        let chosen: Vec<Vec<usize>> = (0..q.num_vertices)
            .map(|v| {
                coords.iter().enumerate().filter(|(b, c)| c.0 == v && mask >> b & 1 == 1).map(|(_, c)| c.1).collect()
            })
            .collect();
        let closed = q.arrows.iter().enumerate().all(|(x, a)| {
            let inside: BTreeSet<usize> = chosen[a.head].iter().copied().collect();
            chosen[a.tail].iter().all(|&c| {
                (0..rep.dims[a.head]).all(|r| inside.contains(&r) || num_traits::Zero::is_zero(rep.mats[x].get(r, c)))
            })
        });
        if closed {
            let e: Vec<usize> = chosen.iter().map(|c| c.len()).collect();
            *out.entry(e).or_insert(0) += 1;
        }
    }
    out
}

/// The coordinate subspace of `N(W)` spanned by a subset of `z_0..z_r`, as
/// column bases per vertex.
pub fn coordinate_subspace(q: &Quiver, w: &StringWord, subset: &[usize]) -> Vec<Mat> {
    let dims = w.dims(q);
    let verts = w.vertices(q);
    let pos = basis_positions(q, w);
    (0..q.num_vertices)
        .map(|v| {
            let cols: Vec<Vec<num_rational::BigRational>> = subset
                .iter()
                .filter(|&&k| verts[k] == v)
                .map(|&k| {
                    let mut c = vec![num_rational::BigRational::from_integer(0.into()); dims[v]];
                    c[pos[k]] = num_rational::BigRational::one();
                    c
                })
                .collect();
            Mat::from_columns(dims[v], &cols)
        })
        .collect()
}

/// Edges of the arrow action on the basis of `N(W)`.
pub fn action_edges(w: &StringWord) -> Vec<(usize, usize)> {
    w.action_edges()
}
