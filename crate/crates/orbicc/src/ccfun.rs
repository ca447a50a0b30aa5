//! Caldero-Chapoton functions of decorated representations, tables over all
//! arcs, E-rigidity census and generation identities.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{c_matrix, e_invariant, g_vector, lifted_algebras, DecRep, GentleAlgebra, IntMatrix, Lifted};
use crate::laurent::{LaurentError, LaurentPoly};
use crate::linalg::Mat;
use crate::strings::{all_strings, arc_rep_in, arc_string_in, euler_profile, string_module, StringError, StringWord};
use crate::surface::{all_arcs, Arc, SurfaceError, Triangulation};

#[derive(Debug, Error)]
pub enum CcError {
    #[error(transparent)]
    String(#[from] StringError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("golden data: {0}")]
    Golden(String),
    #[error("no generation identity found for {0}")]
    NoIdentity(String),
}

/// An indecomposable summand of a decorated representation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Summand {
    String(StringWord),
    NegativeSimple(usize),
}

type Profile = BTreeMap<Vec<usize>, u64>;

fn convolve(a: &Profile, b: &Profile) -> Profile {
    let mut out = Profile::new();
    for (e, x) in a {
        for (f, y) in b {
            let s: Vec<usize> = e.iter().zip(f).map(|(p, q)| p + q).collect();
            *out.entry(s).or_insert(0) += x * y;
        }
    }
    out
}

/// `x^g(M) * sum_e chi(Grass_e(M)) x^(C e)` from a g-vector and an Euler profile.
pub fn cc_from_data(c: &IntMatrix, g: &[i64], profile: &Profile) -> LaurentPoly {
    let k = g.len();
    LaurentPoly::from_terms(
        k,
        profile.iter().filter(|(_, &chi)| chi > 0).map(|(e, &chi)| {
            let exps: Vec<i64> = (0..k).map(|i| g[i] + (0..k).map(|j| c[i][j] * e[j] as i64).sum::<i64>()).collect();
            (BigInt::from(chi), exps)
        }),
    )
}

/// The Caldero-Chapoton function of a direct sum of string modules and negative simples.
pub fn cc_function(alg: &GentleAlgebra, c: &IntMatrix, summands: &[Summand]) -> Result<LaurentPoly, CcError> {
    let q = alg.quiver();
    let k = q.num_vertices;
    let mut dec = DecRep::undecorated(crate::algebra::Rep::zero(q));
    let mut profile: Profile = [(vec![0; k], 1)].into_iter().collect();
    for s in summands {
        match s {
            Summand::String(w) => {
                let m = DecRep::undecorated(string_module(alg, w)?);
                dec = dec.direct_sum(&m);
                profile = convolve(&profile, &euler_profile(alg, w));
            }
            Summand::NegativeSimple(i) => dec = dec.direct_sum(&DecRep::negative_simple(q, *i)),
        }
    }
    Ok(cc_from_data(c, &g_vector(alg, &dec), &profile))
}

pub fn cc_of_string(alg: &GentleAlgebra, w: &StringWord) -> Result<LaurentPoly, CcError> {
    cc_function(alg, &c_matrix(alg.quiver()), &[Summand::String(w.clone())])
}

/// The summand describing `M(j, tau)`.
pub fn arc_summand(lifted: &Lifted, tau: &Triangulation, j: Arc) -> Summand {
    match tau.index_of(j) {
        Some(i) => Summand::NegativeSimple(i),
        None => Summand::String(arc_string_in(lifted, tau, j).expect("arc strings are valid")),
    }
}

pub fn cc_of_arc(lifted: &Lifted, tau: &Triangulation, j: Arc) -> LaurentPoly {
    let c = c_matrix(lifted.base.quiver());
    cc_function(&lifted.base, &c, &[arc_summand(lifted, tau, j)]).expect("arc representations are string modules")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CCEntry {
    /// Arc code for arc representations, string text for the other strings.
    pub key: String,
    pub arc: Option<Arc>,
    /// Normalized string text, `None` for negative simples.
    pub string: Option<String>,
    pub poly: LaurentPoly,
}

/// Caldero-Chapoton functions of all arc representations and of all strings
/// that do not come from arcs. Variable `i` is the `i`-th arc of `tau`.
#[derive(Debug, Clone)]
pub struct CCTable {
    pub tau: Triangulation,
    pub entries: Vec<CCEntry>,
}

pub fn cc_table(tau: &Triangulation) -> CCTable {
    let lifted = lifted_algebras(tau);
    let q = lifted.base.quiver();
    let c = c_matrix(q);
    let mut entries = Vec::new();
    let mut arc_strings = BTreeSet::new();
    for j in all_arcs(tau.n()).expect("valid n") {
        let s = arc_summand(&lifted, tau, j);
        let string = match &s {
            Summand::String(w) => {
                arc_strings.insert(w.clone());
                Some(w.to_text(q))
            }
            Summand::NegativeSimple(_) => None,
        };
        let poly = cc_function(&lifted.base, &c, &[s]).expect("string modules");
        entries.push(CCEntry { key: j.to_string(), arc: Some(j), string, poly });
    }
    for w in all_strings(&lifted.base).expect("band-free algebra") {
        if arc_strings.contains(&w) {
            continue;
        }
        let poly = cc_function(&lifted.base, &c, &[Summand::String(w.clone())]).expect("valid string");
        let text = w.to_text(q);
        entries.push(CCEntry { key: text.clone(), arc: None, string: Some(text), poly });
    }
    CCTable { tau: tau.clone(), entries }
}

impl CCTable {
    pub fn arc_entries(&self) -> impl Iterator<Item = &CCEntry> {
        self.entries.iter().filter(|e| e.arc.is_some())
    }

    pub fn arc(&self, j: Arc) -> Option<&LaurentPoly> {
        self.entries.iter().find(|e| e.arc == Some(j)).map(|e| &e.poly)
    }

    /// Looks up `arc:<code>`, `neg:<k>` (1-based) or a string text (up to inversion).
    pub fn lookup(&self, alg: &GentleAlgebra, module: &str) -> Result<Option<&LaurentPoly>, CcError> {
        if let Some(code) = module.strip_prefix("arc:") {
            let j: Arc = code.parse()?;
            return Ok(self.arc(j));
        }
        if let Some(k) = module.strip_prefix("neg:") {
            let k: usize = k.parse().map_err(|_| CcError::Golden(format!("bad vertex in {module}")))?;
            return Ok(k.checked_sub(1).and_then(|i| self.tau.arcs().get(i)).and_then(|&j| self.arc(j)));
        }
        let q = alg.quiver();
        let w = StringWord::parse(q, module)?.normalized(q).to_text(q);
        Ok(self.entries.iter().find(|e| e.string.as_deref() == Some(&w)).map(|e| &e.poly))
    }

    pub fn to_json(&self, var: &str) -> Value {
        let entries: serde_json::Map<String, Value> = self
            .entries
            .iter()
            .map(|e| (e.key.clone(), serde_json::to_value(e.poly.to_json()).expect("serializable")))
            .collect();
        let strings: serde_json::Map<String, Value> =
            self.entries.iter().filter_map(|e| e.string.as_ref().map(|s| (e.key.clone(), json!(s)))).collect();
        let text: serde_json::Map<String, Value> =
            self.entries.iter().map(|e| (e.key.clone(), json!(e.poly.to_text(var)))).collect();
        json!({
            "triangulation": self.tau.arcs().iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "entries": entries,
            "strings": strings,
            "text": text,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoldenEntry {
    pub module: String,
    pub numerator: String,
    pub denominator: String,
}

/// Reference Caldero-Chapoton functions, written as fractions with monomial denominators.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Golden {
    pub n: usize,
    pub triangulation: Vec<String>,
    pub variable: String,
    pub entries: Vec<GoldenEntry>,
}

impl Golden {
    pub fn from_json(s: &str) -> Result<Golden, CcError> {
        serde_json::from_str(s).map_err(|e| CcError::Golden(e.to_string()))
    }

    pub fn tau(&self) -> Result<Triangulation, CcError> {
        let arcs = self.triangulation.iter().map(|c| c.parse()).collect::<Result<Vec<Arc>, _>>()?;
        Ok(Triangulation::new(self.n, arcs)?)
    }

    pub fn entry_poly(&self, e: &GoldenEntry) -> Result<LaurentPoly, CcError> {
        let num = LaurentPoly::parse(self.n, &e.numerator)?;
        let den = LaurentPoly::parse(self.n, &e.denominator)?;
        Ok(num.exact_div(&den)?)
    }

    /// Compares against a table of the same triangulation; returns the mismatches.
    pub fn check(&self, table: &CCTable) -> Result<Vec<String>, CcError> {
        let tau = self.tau()?;
        if tau != table.tau {
            return Err(CcError::Golden("triangulation differs from the table's".into()));
        }
        let alg = crate::algebra::algebra_of_triangulation(&tau);
        let mut bad = Vec::new();
        for e in &self.entries {
            let want = self.entry_poly(e)?;
            match table.lookup(&alg, &e.module)? {
                Some(got) if *got == want => {}
                Some(got) => bad.push(format!(
                    "{}: expected {}, got {}",
                    e.module,
                    want.to_text(&self.variable),
                    got.to_text(&self.variable)
                )),
                None => bad.push(format!("{}: missing from the table", e.module)),
            }
        }
        Ok(bad)
    }
}

/// Indecomposable decorated representations split by `E(M, M) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    /// String texts and `neg:<k>` keys.
    pub rigid: BTreeSet<String>,
    pub nonrigid: BTreeSet<String>,
    /// The rigid ones, computed from the arcs.
    pub arc_modules: BTreeSet<String>,
}

impl Census {
    pub fn matches_arcs(&self) -> bool {
        self.rigid == self.arc_modules
    }
}

pub fn classify_e_rigid(tau: &Triangulation) -> Census {
    let lifted = lifted_algebras(tau);
    let alg = &lifted.base;
    let q = alg.quiver();
    let mut rigid = BTreeSet::new();
    let mut nonrigid = BTreeSet::new();
    for i in 0..q.num_vertices {
        let m = DecRep::negative_simple(q, i);
        let key = format!("neg:{}", i + 1);
        if e_invariant(alg, &m, &m) == 0 {
            rigid.insert(key)
        } else {
            nonrigid.insert(key)
        };
    }
    for w in all_strings(alg).expect("band-free algebra") {
        let m = DecRep::undecorated(string_module(alg, &w).expect("valid"));
        let key = w.to_text(q);
        if e_invariant(alg, &m, &m) == 0 {
            rigid.insert(key)
        } else {
            nonrigid.insert(key)
        };
    }
    let arc_modules = all_arcs(tau.n())
        .expect("valid n")
        .into_iter()
        .map(|j| match arc_summand(&lifted, tau, j) {
            Summand::String(w) => w.to_text(q),
            Summand::NegativeSimple(i) => format!("neg:{}", i + 1),
        })
        .collect();
    Census { rigid, nonrigid, arc_modules }
}

/// `E(M(j1), M(j2))` for two arcs.
pub fn e_of_arcs(lifted: &Lifted, tau: &Triangulation, j1: Arc, j2: Arc) -> i64 {
    let m = arc_rep_in(lifted, tau, j1);
    let n = arc_rep_in(lifted, tau, j2);
    e_invariant(&lifted.base, &m, &n)
}

/// `CC(N(W)) = sum of products of rigid Caldero-Chapoton functions`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationIdentity {
    pub string: String,
    /// Each term is a product of rigid keys; the empty product is 1.
    pub terms: Vec<Vec<String>>,
}

impl std::fmt::Display for GenerationIdentity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                if t.is_empty() {
                    "1".to_string()
                } else {
                    t.iter().map(|k| format!("CC({k})")).collect::<Vec<_>>().join("*")
                }
            })
            .collect();
        write!(f, "CC({}) = {}", self.string, terms.join(" + "))
    }
}

/// For every non-rigid string, finds and checks an identity expressing its
/// Caldero-Chapoton function as a sum of two terms, each 1, a rigid function
/// or a product of two rigid functions.
pub fn verify_generation(tau: &Triangulation) -> Result<Vec<GenerationIdentity>, CcError> {
    let table = cc_table(tau);
    let k = tau.n();
    let rigid: Vec<(String, &LaurentPoly)> = table
        .arc_entries()
        .map(|e| {
            (
                e.string
                    .clone()
                    .unwrap_or_else(|| format!("neg:{}", tau.index_of(e.arc.expect("arc")).expect("in tau") + 1)),
                &e.poly,
            )
        })
        .collect();
    let mut candidates: Vec<(Vec<String>, LaurentPoly)> = vec![(Vec::new(), LaurentPoly::one(k))];
    for (key, p) in &rigid {
        candidates.push((vec![key.clone()], (*p).clone()));
    }
    for (a, (ka, pa)) in rigid.iter().enumerate() {
        for (kb, pb) in &rigid[a..] {
            candidates.push((vec![ka.clone(), kb.clone()], *pa * *pb));
        }
    }
    let index: HashMap<&LaurentPoly, usize> = candidates.iter().enumerate().rev().map(|(i, (_, p))| (p, i)).collect();
    let mut out = Vec::new();
    for e in table.entries.iter().filter(|e| e.arc.is_none()) {
        let found = candidates.iter().enumerate().find_map(|(i, (_, p))| {
            let rest = &e.poly - p;
            index.get(&rest).filter(|&&j| j >= i).map(|&j| (i, j))
        });
        let (i, j) = found.ok_or_else(|| CcError::NoIdentity(e.key.clone()))?;
        let sum = &candidates[i].1 + &candidates[j].1;
        assert_eq!(sum, e.poly);
        let mut terms = vec![candidates[i].0.clone(), candidates[j].0.clone()];
        terms.sort();
        out.push(GenerationIdentity { string: e.key.clone(), terms });
    }
    Ok(out)
}

/// Exact rank of the coefficient matrix of a list of Laurent polynomials.
pub fn coefficient_rank(polys: &[LaurentPoly]) -> usize {
    let monomials: BTreeSet<&Vec<i64>> = polys.iter().flat_map(|p| p.terms().map(|(e, _)| e)).collect();
    let cols: BTreeMap<&Vec<i64>, usize> = monomials.into_iter().enumerate().map(|(i, e)| (e, i)).collect();
    if polys.is_empty() || cols.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<BigRational>> = polys
        .iter()
        .map(|p| {
            let mut row = vec![BigRational::from_integer(0.into()); cols.len()];
            for (e, c) in p.terms() {
                row[cols[e]] = BigRational::from_integer(c.clone());
            }
            row
        })
        .collect();
    Mat::from_rows(&rows).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{enumerate_triangulations, Sign};

    fn tau11() -> Triangulation {
        Triangulation::special(3).unwrap().flip("A:0:3:-".parse().unwrap()).unwrap().0
    }

    fn golden(name: &str) -> Golden {
        let path = format!("{}/golden/{name}", env!("CARGO_MANIFEST_DIR"));
        Golden::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    #[test]
    fn negative_simples_give_variables() {
        let tau = tau11();
        let t = cc_table(&tau);
        for (i, &j) in tau.arcs().iter().enumerate() {
            assert_eq!(t.arc(j), Some(&LaurentPoly::var(3, i)));
        }
    }

    #[test]
    fn flipped_triangulation_matches_golden() {
        let g = golden("flipped_sigma3.json");
        let tau = g.tau().unwrap();
        assert_eq!(tau, tau11());
        let table = cc_table(&tau);
        assert_eq!(table.entries.len(), 12 + 6);
        assert_eq!(g.check(&table).unwrap(), Vec::<String>::new());
    }

    #[test]
    fn long_arc_matches_golden() {
        let g = golden("special_sigma5.json");
        let tau = g.tau().unwrap();
        let lifted = lifted_algebras(&tau);
        let j = Arc::plain(2, 4, Sign::Minus);
        let p = cc_of_arc(&lifted, &tau, j);
        assert_eq!(p, g.entry_poly(&g.entries[0]).unwrap());
        assert_eq!(p.coeff(&[1, 0, 0, -2, 0]), BigInt::from(2));
        assert_eq!(p.len(), 10);
    }

    #[test]
    fn multiplicative_on_sums() {
        let tau = tau11();
        let alg = crate::algebra::algebra_of_triangulation(&tau);
        let c = c_matrix(alg.quiver());
        let strings = all_strings(&alg).unwrap();
        for a in &strings {
            for b in &strings {
                let sa = Summand::String(a.clone());
                let sb = Summand::String(b.clone());
                let both = cc_function(&alg, &c, &[sa.clone(), sb.clone()]).unwrap();
                let prod = cc_function(&alg, &c, &[sa]).unwrap() * cc_function(&alg, &c, &[sb]).unwrap();
                assert_eq!(both, prod);
            }
            let with_neg = cc_function(&alg, &c, &[Summand::String(a.clone()), Summand::NegativeSimple(2)]).unwrap();
            assert_eq!(with_neg, cc_of_string(&alg, a).unwrap() * LaurentPoly::var(3, 2));
        }
    }

    #[test]
    fn census_of_the_flipped_triangulation() {
        let c = classify_e_rigid(&tau11());
        let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
        assert_eq!(
            c.rigid,
            set(&[
                "neg:1",
                "neg:2",
                "neg:3",
                "1@(1,+)",
                "1@(2,+)",
                "eps",
                "a2",
                "eps.a1",
                "a3.eps",
                "a3.eps.a1",
                "a1~.eps.a1",
                "a3.eps.a3~"
            ])
        );
        assert_eq!(c.nonrigid, set(&["1@(3,+)", "a1", "a3", "a1~.eps", "eps.a3~", "a1~.eps.a3~"]));
        assert!(c.matches_arcs());
    }

    #[test]
    fn census_matches_arcs_for_small_surfaces() {
        for n in 2..=3 {
            for tau in enumerate_triangulations(n, 6).unwrap() {
                assert!(classify_e_rigid(&tau).matches_arcs(), "{tau}");
            }
        }
    }

    #[test]
    fn generation_identities() {
        let ids = verify_generation(&tau11()).unwrap();
        assert_eq!(ids.len(), 6);
        let find = |s: &str| ids.iter().find(|i| i.string == s).unwrap().terms.clone();
        let t = |xs: &[&[&str]]| -> Vec<Vec<String>> {
            xs.iter().map(|x| x.iter().map(|s| s.to_string()).collect()).collect()
        };
        assert_eq!(find("1@(3,+)"), t(&[&["neg:1"], &["neg:2"]]));
        assert_eq!(find("a1"), t(&[&[], &["1@(1,+)"]]));
        assert_eq!(find("a1~.eps.a3~"), t(&[&["a2"], &["a3.eps.a1"]]));
        assert_eq!(find("a1~.eps"), t(&[&[], &["eps.a1"]]));
        for n in 2..=3 {
            for tau in enumerate_triangulations(n, 6).unwrap() {
                verify_generation(&tau).unwrap();
            }
        }
    }

    #[test]
    fn arc_functions_are_independent() {
        for n in 2..=4 {
            let tau = Triangulation::special(n).unwrap();
            let table = cc_table(&tau);
            let polys: Vec<LaurentPoly> = table.arc_entries().map(|e| e.poly.clone()).collect();
            assert_eq!(polys.len(), n * (n + 1));
            assert_eq!(coefficient_rank(&polys), polys.len());
        }
    }

    #[test]
    fn table_json_has_every_entry() {
        let table = cc_table(&tau11());
        let j = table.to_json("y");
        assert_eq!(j["entries"].as_object().unwrap().len(), 18);
        assert_eq!(j["text"]["P:0"], "y3");
    }
}
