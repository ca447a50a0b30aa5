//! The Z/3 covering of the orbifold polygon by the (3n+3)-gon: push-down of
//! representations, projection of Caldero-Chapoton functions, and checks of
//! the identities relating the two sides.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{c_matrix, e_invariant, g_vector, hom_dim, isomorphic, lifted_algebras, DecRep, Lifted, Rep};
use crate::ccfun::cc_of_string;
use crate::linalg::Mat;
use crate::strings::{all_strings, euler_profile, lift_string, string_module, StringWord};
use crate::surface::Triangulation;

/// `(pi_* M)_o = M_{3o} + M_{3o+1} + M_{3o+2}`, arrows acting blockwise.
pub fn push_down(lifted: &Lifted, m: &Rep) -> Rep {
    let base = lifted.base.quiver();
    let cover = lifted.cover.quiver();
    let offsets = |o: usize| -> [usize; 4] {
        let d = |f: usize| m.dims[3 * o + f];
        [0, d(0), d(0) + d(1), d(0) + d(1) + d(2)]
    };
    let dims: Vec<usize> = (0..base.num_vertices).map(|o| offsets(o)[3]).collect();
    let mats = base
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let mut out = Mat::zeros(dims[a.head], dims[a.tail]);
            for f in 0..3 {
                let x = 3 * k + f;
                let ca = &cover.arrows[x];
                let r0 = offsets(a.head)[ca.head % 3];
                let c0 = offsets(a.tail)[ca.tail % 3];
                out.put_block(r0, c0, &m.mats[x]);
            }
            out
        })
        .collect();
    Rep { dims, mats }
}

/// The twist `theta^g . M` of a covering representation.
pub fn act(lifted: &Lifted, g: usize, m: &Rep) -> Rep {
    let (vp, ap) = lifted.orbit.theta(g % 3);
    m.permute(&vp, &ap)
}

/// `pi(f)_i = f_{3i} + f_{3i+1} + f_{3i+2}`.
pub fn project_dims(f: &[usize]) -> Vec<usize> {
    f.chunks(3).map(|c| c.iter().sum()).collect()
}

/// Checks `sum_{pi(f) = e} chi(Grass_f(N(W~))) = chi(Grass_e(N(W)))` for every `e`.
pub fn euler_sum_check(lifted: &Lifted, w: &StringWord) -> bool {
    let up = euler_profile(&lifted.cover, &lift_string(lifted, w, 0));
    let mut summed: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for (f, c) in up {
        *summed.entry(project_dims(&f)).or_insert(0) += c;
    }
    summed == euler_profile(&lifted.base, w)
}

/// Checks `pi(C_{Q(T)} f) = C_{Q(tau)} pi(f)` on every submodule dimension vector of `N(W~)`.
pub fn exponent_compatibility(lifted: &Lifted, w: &StringWord) -> bool {
    let ct = c_matrix(lifted.cover.quiver());
    let cb = c_matrix(lifted.base.quiver());
    let up = euler_profile(&lifted.cover, &lift_string(lifted, w, 0));
    up.keys().all(|f| {
        let cf: Vec<i64> = ct.iter().map(|row| row.iter().zip(f).map(|(c, &x)| c * x as i64).sum()).collect();
        let lhs: Vec<i64> = cf.chunks(3).map(|c| c.iter().sum()).collect();
        let e = project_dims(f);
        let rhs: Vec<i64> = cb.iter().map(|row| row.iter().zip(&e).map(|(c, &x)| c * x as i64).sum()).collect();
        lhs == rhs
    })
}

/// Checks `pi(CC_{Lambda(T)}(N(W~))) = CC_{Lambda(tau)}(N(W))` and the
/// corresponding projection of g-vectors.
pub fn morphip_check(lifted: &Lifted, w: &StringWord) -> bool {
    let up = lift_string(lifted, w, 0);
    let n = lifted.base.num_vertices();
    let cc_up = cc_of_string(&lifted.cover, &up).expect("lifted strings are valid");
    let projected = cc_up.project(&lifted.orbit.var_map(), n).expect("variable map");
    let cc_down = cc_of_string(&lifted.base, w).expect("valid string");
    let g_up = g_vector(&lifted.cover, &DecRep::undecorated(string_module(&lifted.cover, &up).expect("valid")));
    let g_down = g_vector(&lifted.base, &DecRep::undecorated(string_module(&lifted.base, w).expect("valid")));
    let g_proj: Vec<i64> = g_up.chunks(3).map(|c| c.iter().sum()).collect();
    projected == cc_down && g_proj == g_down
}

/// `pi_*(N(W~)) = N(W)`, tested with Hom dimensions against all strings.
pub fn push_down_check(lifted: &Lifted, w: &StringWord, tests: &[Rep]) -> bool {
    let up = string_module(&lifted.cover, &lift_string(lifted, w, 0)).expect("valid");
    let down = push_down(lifted, &up);
    down.validate(&lifted.base).is_ok()
        && isomorphic(lifted.base.quiver(), &down, &string_module(&lifted.base, w).expect("valid"), tests)
}

/// `E(pi_* M, pi_* M) = 0` iff `E(M, g M) = 0` for every deck element `g`.
pub fn e_rigid_transfer_check(lifted: &Lifted, w: &StringWord) -> bool {
    let up = DecRep::undecorated(string_module(&lifted.cover, &lift_string(lifted, w, 0)).expect("valid"));
    let down = DecRep::undecorated(push_down(lifted, &up.rep));
    let rigid_down = e_invariant(&lifted.base, &down, &down) == 0;
    let rigid_orbit = (0..3).all(|g| {
        let twisted = DecRep::undecorated(act(lifted, g, &up.rep));
        e_invariant(&lifted.cover, &up, &twisted) == 0
    });
    rigid_down == rigid_orbit
}

/// `theta . N(W~)` is not isomorphic to `N(W~)`.
pub fn free_action_check(lifted: &Lifted, w: &StringWord) -> bool {
    let q = lifted.cover.quiver();
    let up = string_module(&lifted.cover, &lift_string(lifted, w, 0)).expect("valid");
    let moved = act(lifted, 1, &up);
    let ends = hom_dim(q, &up, &up);
    moved.dims != up.dims || hom_dim(q, &up, &moved) < ends
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringCheck {
    pub string: String,
    pub morphip: bool,
    pub euler_sum: bool,
    pub exponents: bool,
    pub push_down: bool,
    pub e_rigid_transfer: bool,
    pub free_action: bool,
}

impl StringCheck {
    pub fn passed(&self) -> bool {
        self.morphip && self.euler_sum && self.exponents && self.push_down && self.e_rigid_transfer && self.free_action
    }
}

#[derive(Debug, Clone)]
pub struct CoveringReport {
    pub tau: Triangulation,
    pub checks: Vec<StringCheck>,
}

impl CoveringReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(StringCheck::passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tau": self.tau.arcs().iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "checks": self.checks.iter().map(|c| json!({
                "string": c.string,
                "morphip": c.morphip,
                "euler_sum": c.euler_sum,
                "exponents": c.exponents,
                "push_down": c.push_down,
                "e_rigid_transfer": c.e_rigid_transfer,
                "free_action": c.free_action,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Runs every covering check on every string of `Lambda(tau)`.
pub fn verify_covering(tau: &Triangulation) -> CoveringReport {
    let lifted = lifted_algebras(tau);
    let strings = all_strings(&lifted.base).expect("band-free algebra");
    let tests: Vec<Rep> = strings.iter().map(|w| string_module(&lifted.base, w).expect("valid")).collect();
    let checks = strings
        .iter()
        .map(|w| StringCheck {
            string: w.to_text(lifted.base.quiver()),
            morphip: morphip_check(&lifted, w),
            euler_sum: euler_sum_check(&lifted, w),
            exponents: exponent_compatibility(&lifted, w),
            push_down: push_down_check(&lifted, w, &tests),
            e_rigid_transfer: e_rigid_transfer_check(&lifted, w),
            free_action: free_action_check(&lifted, w),
        })
        .collect();
    CoveringReport { tau: tau.clone(), checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::{arc_rep_in, covering_arc_string, project_string};
    use crate::surface::{all_arcs, enumerate_triangulations};

    fn tau11() -> Triangulation {
        Triangulation::special(3).unwrap().flip("A:0:3:-".parse().unwrap()).unwrap().0
    }

    #[test]
    fn simples_push_down_to_simples() {
        let lifted = lifted_algebras(&tau11());
        for v in 0..9 {
            let s = lifted.cover.simple(v);
            assert_eq!(push_down(&lifted, &s), lifted.base.simple(v / 3));
        }
    }

    #[test]
    fn deck_group_has_order_three() {
        let lifted = lifted_algebras(&tau11());
        let m = lifted.cover.projective(4).clone();
        assert_eq!(act(&lifted, 3, &m), m);
        assert_eq!(act(&lifted, 1, &act(&lifted, 2, &m)), m);
        assert_ne!(act(&lifted, 1, &m), m);
        assert_eq!(push_down(&lifted, &act(&lifted, 1, &m)).dims, push_down(&lifted, &m).dims);
    }

    #[test]
    fn push_down_is_additive() {
        let lifted = lifted_algebras(&tau11());
        let a = lifted.cover.projective(0).clone();
        let b = lifted.cover.injective(5).clone();
        let s = push_down(&lifted, &a.direct_sum(&b));
        assert_eq!(s.total_dim(), a.total_dim() + b.total_dim());
        s.validate(&lifted.base).unwrap();
    }

    #[test]
    fn covering_arc_reps_push_down_to_arc_reps() {
        for tau in enumerate_triangulations(3, 6).unwrap() {
            let lifted = lifted_algebras(&tau);
            let tests: Vec<Rep> =
                all_strings(&lifted.base).unwrap().iter().map(|w| string_module(&lifted.base, w).unwrap()).collect();
            for j in all_arcs(3).unwrap().into_iter().filter(|j| !tau.contains(*j)) {
                let up = covering_arc_string(&lifted, &tau, j).unwrap();
                assert_eq!(project_string(&lifted, &up).normalized(lifted.base.quiver()).len(), up.len());
                let m = string_module(&lifted.cover, &up).unwrap();
                let down = push_down(&lifted, &m);
                assert!(isomorphic(lifted.base.quiver(), &down, &arc_rep_in(&lifted, &tau, j).rep, &tests));
            }
        }
    }

    #[test]
    fn flipped_triangulation_report() {
        let r = verify_covering(&tau11());
        assert_eq!(r.checks.len(), 15);
        assert!(r.passed(), "{:?}", r.checks.iter().filter(|c| !c.passed()).collect::<Vec<_>>());
        assert_eq!(r.to_json()["checks"].as_array().unwrap().len(), 15);
    }
}
