//! Generalized cluster algebras: seeds with a skew-symmetrizable matrix and
//! weights, exchange polynomials `theta_k` and mutation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{b_matrix, lifted_algebras, IntMatrix};
use crate::ccfun::cc_of_arc;
use crate::laurent::{LaurentError, LaurentJson, LaurentPoly};
use crate::surface::{Arc, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GcaError {
    #[error("mutation index {k} out of range 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("theta_{k} is not divisible by x_{k}: Laurent phenomenon violated")]
    LaurentPhenomenonViolation { k: usize },
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    pub b: IntMatrix,
    pub d: Vec<i64>,
    pub cluster: Vec<LaurentPoly>,
    /// Mutation indices applied so far (0-based).
    pub history: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SeedJson {
    #[serde(rename = "B")]
    b: IntMatrix,
    #[serde(rename = "D")]
    d: Vec<i64>,
    cluster: Vec<LaurentJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    history: Vec<usize>,
}

/// `b'_ij = -b_ij` if `k` is `i` or `j`, else `b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2`.
pub fn mutate_matrix(b: &IntMatrix, k: usize) -> Result<IntMatrix, GcaError> {
    let n = b.len();
    if k >= n {
        return Err(GcaError::IndexOutOfRange { k: k + 1, n });
    }
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == k || j == k {
                        -b[i][j]
                    } else {
                        b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
                    }
                })
                .collect()
        })
        .collect())
}

impl Seed {
    pub fn new(b: IntMatrix, d: Vec<i64>, cluster: Vec<LaurentPoly>) -> Result<Seed, GcaError> {
        let s = Seed { b, d, cluster, history: Vec::new() };
        s.validate()?;
        Ok(s)
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    /// `D B` skew-symmetric, `b_ik / d_k` integral, sizes consistent.
    pub fn validate(&self) -> Result<(), GcaError> {
        let n = self.b.len();
        let bad = |m: &str| Err(GcaError::InvalidSeed(m.to_string()));
        if self.d.len() != n || self.cluster.len() != n || self.b.iter().any(|r| r.len() != n) {
            return bad("inconsistent sizes");
        }
        if self.d.iter().any(|&x| x <= 0) {
            return bad("weights must be positive");
        }
        for i in 0..n {
            for j in 0..n {
                if self.d[i] * self.b[i][j] != -self.d[j] * self.b[j][i] {
                    return bad("D B is not skew-symmetric");
                }
                if self.b[i][j] % self.d[j] != 0 {
                    return bad("b_ik / d_k is not an integer");
                }
            }
        }
        Ok(())
    }

    /// `v_k^+` and `v_k^-` evaluated on the current cluster.
    pub fn exchange_monomials(&self, k: usize) -> (LaurentPoly, LaurentPoly) {
        let nv = self.cluster[0].nvars();
        let mut plus = LaurentPoly::one(nv);
        let mut minus = LaurentPoly::one(nv);
        for l in 0..self.rank() {
            let e = self.b[l][k] / self.d[k];
            if e > 0 {
                plus = &plus * &self.cluster[l].pow(e as u32);
            } else if e < 0 {
                minus = &minus * &self.cluster[l].pow((-e) as u32);
            }
        }
        (plus, minus)
    }

    /// `theta_k(v+, v-) = sum_{l=0}^{d_k} (v+)^l (v-)^(d_k - l)`.
    pub fn theta(&self, k: usize) -> Result<LaurentPoly, GcaError> {
        if k >= self.rank() {
            return Err(GcaError::IndexOutOfRange { k: k + 1, n: self.rank() });
        }
        let (u, v) = self.exchange_monomials(k);
        let dk = self.d[k] as u32;
        let nv = self.cluster[0].nvars();
        Ok((0..=dk).fold(LaurentPoly::zero(nv), |acc, l| &acc + &(&u.pow(l) * &v.pow(dk - l))))
    }

    /// Mutation at `k` (0-based): `x_k x_k' = theta_k`.
    pub fn mutate(&self, k: usize) -> Result<Seed, GcaError> {
        let theta = self.theta(k)?;
        let new_x = theta.exact_div(&self.cluster[k]).map_err(|e| match e {
            LaurentError::NotDivisible | LaurentError::DivisionByZero => {
                GcaError::LaurentPhenomenonViolation { k: k + 1 }
            }
            other => GcaError::Laurent(other),
        })?;
        let mut cluster = self.cluster.clone();
        cluster[k] = new_x;
        let mut history = self.history.clone();
        history.push(k);
        Ok(Seed { b: mutate_matrix(&self.b, k)?, d: self.d.clone(), cluster, history })
    }

    pub fn mutate_sequence(&self, ks: &[usize]) -> Result<Seed, GcaError> {
        ks.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Canonical form up to simultaneous relabelling: indices sorted by cluster variable.
    pub fn canonical_key(&self) -> (Vec<LaurentPoly>, IntMatrix, Vec<i64>) {
        let mut order: Vec<usize> = (0..self.rank()).collect();
        order.sort_by(|&a, &b| self.cluster[a].cmp(&self.cluster[b]));
        (
            order.iter().map(|&i| self.cluster[i].clone()).collect(),
            order.iter().map(|&i| order.iter().map(|&j| self.b[i][j]).collect()).collect(),
            order.iter().map(|&i| self.d[i]).collect(),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SeedJson {
            b: self.b.clone(),
            d: self.d.clone(),
            cluster: self.cluster.iter().map(|p| p.to_json()).collect(),
            history: self.history.iter().map(|k| k + 1).collect(),
        })
        .expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Seed, GcaError> {
        let j: SeedJson = serde_json::from_str(s).map_err(|e| GcaError::InvalidSeed(e.to_string()))?;
        let cluster = j.cluster.iter().map(LaurentPoly::from_json).collect::<Result<Vec<_>, _>>()?;
        let mut seed = Seed::new(j.b, j.d, cluster)?;
        seed.history = j.history.iter().map(|k| k.saturating_sub(1)).collect();
        Ok(seed)
    }
}

/// Seed of a triangulation: `B(tau)`, its weights and the initial variables.
pub fn initial_seed(tau: &Triangulation) -> Seed {
    let alg = crate::algebra::algebra_of_triangulation(tau);
    let (b, d) = b_matrix(&alg);
    let n = tau.n();
    Seed::new(b, d, (0..n).map(|i| LaurentPoly::var(n, i)).collect()).expect("B(tau) is skew-symmetrizable")
}

#[derive(Debug, Clone)]
pub struct Exploration {
    pub variables: BTreeSet<LaurentPoly>,
    pub seeds: usize,
    /// Whether the search closed up before reaching `max_depth`.
    pub closed: bool,
}

/// Breadth-first search over seeds from the seed of the special triangulation.
pub fn all_cluster_variables(n: usize, max_depth: usize) -> Result<Exploration, GcaError> {
    let tau = Triangulation::special(n).map_err(|e| GcaError::InvalidSeed(e.to_string()))?;
    explore(initial_seed(&tau), max_depth)
}

pub fn explore(start: Seed, max_depth: usize) -> Result<Exploration, GcaError> {
    let (seeds, closed) = reachable_seeds(start, max_depth)?;
    let variables = seeds.iter().flat_map(|s| s.cluster.iter().cloned()).collect();
    Ok(Exploration { variables, seeds: seeds.len(), closed })
}

/// All seeds within `max_depth` mutations of `start`, one per relabelling
/// class, in breadth-first order; the flag tells whether the search closed up.
pub fn reachable_seeds(start: Seed, max_depth: usize) -> Result<(Vec<Seed>, bool), GcaError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    let mut closed = true;
    seen.insert(start.canonical_key());
    queue.push_back((start, 0));
    while let Some((seed, depth)) = queue.pop_front() {
        for k in 0..seed.rank() {
            if seed.history.last() == Some(&k) {
                continue;
            }
            let next = seed.mutate(k)?;
            if depth == max_depth {
                closed &= seen.contains(&next.canonical_key());
            } else if seen.insert(next.canonical_key()) {
                queue.push_back((next, depth + 1));
            }
        }
        out.push(seed);
    }
    Ok((out, closed))
}

/// One instance of `CC(M(j)) CC(M(j')) = theta_j` at the seed of `tau`.
#[derive(Debug, Clone)]
pub struct FlipCheck {
    pub arc: Arc,
    pub flipped: Arc,
    pub theta: LaurentPoly,
    pub holds: bool,
    /// For the pending arc: whether `theta` has the form `u^2 + u v + v^2`.
    pub trinomial: Option<bool>,
}

pub fn verify_flip_exchange(tau: &Triangulation) -> Vec<FlipCheck> {
    let lifted = lifted_algebras(tau);
    let seed = initial_seed(tau);
    tau.arcs()
        .iter()
        .enumerate()
        .map(|(k, &j)| {
            let (_, flipped) = tau.flip(j).expect("every arc flips");
            let theta = seed.theta(k).expect("index in range");
            let lhs = &cc_of_arc(&lifted, tau, j) * &cc_of_arc(&lifted, tau, flipped);
            let trinomial = j.is_pending().then(|| {
                let (u, v) = seed.exchange_monomials(k);
                theta == &(&(&u * &u) + &(&u * &v)) + &(&v * &v)
            });
            FlipCheck { arc: j, flipped, holds: lhs == theta, theta, trinomial }
        })
        .collect()
}

/// The permutation `p` with `tau'.arcs()[p[i]]` the image of `tau.arcs()[i]` under the flip at `k`.
pub fn flip_relabelling(tau: &Triangulation, k: usize) -> (Triangulation, Vec<usize>) {
    let (t2, new_arc) = tau.flip(tau.arcs()[k]).expect("every arc flips");
    let idx: BTreeMap<Arc, usize> = t2.arcs().iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let p = tau.arcs().iter().enumerate().map(|(i, a)| if i == k { idx[&new_arc] } else { idx[a] }).collect();
    (t2, p)
}
