//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use orbicc::algebra::{g_vector, g_vector_inj, lifted_algebras, DecRep};
use orbicc::ccfun::{cc_table, classify_e_rigid, coefficient_rank, Golden};
use orbicc::covering::verify_covering;
use orbicc::gca::{all_cluster_variables, initial_seed, reachable_seeds, verify_flip_exchange};
use orbicc::laurent::LaurentPoly;
use orbicc::strings::{all_strings, arc_rep_in, euler_profile, string_module, substring_family_profile};
use orbicc::surface::{all_arcs, enumerate_triangulations, Triangulation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn golden(name: &str) -> Golden {
    let path = format!("{}/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    Golden::from_json(&std::fs::read_to_string(&path).expect("golden file")).expect("golden json")
}

fn triangulations(n: usize) -> Vec<Triangulation> {
    enumerate_triangulations(n, 6).expect("small n")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_flipped() -> Outcome {
    let g = golden("flipped_sigma3.json");
    let table = cc_table(&g.tau().map_err(|e| e.to_string())?);
    let bad = g.check(&table).map_err(|e| e.to_string())?;
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{} polynomials equal", g.entries.len()))
}

fn golden_long_arc() -> Outcome {
    let g = golden("special_sigma5.json");
    let table = cc_table(&g.tau().map_err(|e| e.to_string())?);
    let bad = g.check(&table).map_err(|e| e.to_string())?;
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok("10-term polynomial equal".into())
}

fn main_theorem() -> Outcome {
    let mut sizes = Vec::new();
    for n in 2..=4 {
        let ex = all_cluster_variables(n, 100).map_err(|e| e.to_string())?;
        ensure(ex.closed, || format!("n={n}: search did not close"))?;
        let table = cc_table(&Triangulation::special(n).expect("n >= 2"));
        let arcs: BTreeSet<LaurentPoly> = table.arc_entries().map(|e| e.poly.clone()).collect();
        ensure(ex.variables == arcs, || format!("n={n}: cluster variables differ from arc functions"))?;
        ensure(arcs.len() == n * (n + 1), || format!("n={n}: {} variables", arcs.len()))?;
        sizes.push(arcs.len().to_string());
    }
    Ok(format!("cluster variables {}", sizes.join("/")))
}

fn flip_exchange() -> Outcome {
    let mut count = 0;
    for n in 2..=3 {
        for tau in triangulations(n) {
            for c in verify_flip_exchange(&tau) {
                ensure(c.holds, || format!("{tau}: exchange at {} fails", c.arc))?;
                ensure(c.trinomial != Some(false), || format!("{tau}: pending exchange not u^2+uv+v^2"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} exchange relations"))
}

fn rigidity() -> Outcome {
    let mut taus: Vec<Triangulation> = (2..=3).flat_map(triangulations).collect();
    taus.push(Triangulation::special(4).expect("n >= 2"));
    for tau in &taus {
        let c = classify_e_rigid(tau);
        ensure(c.matches_arcs(), || format!("{tau}: rigid set differs from arc representations"))?;
    }
    let g = golden("flipped_sigma3.json");
    let c = classify_e_rigid(&g.tau().map_err(|e| e.to_string())?);
    ensure(c.rigid.len() == 12 && c.nonrigid.len() == 6, || {
        format!("{} rigid / {} not", c.rigid.len(), c.nonrigid.len())
    })?;
    Ok(format!("{} triangulations, 9+3 rigid vs 6", taus.len()))
}

fn covering() -> Outcome {
    let mut strings = 0;
    for tau in triangulations(3) {
        let r = verify_covering(&tau);
        for c in &r.checks {
            ensure(c.passed(), || format!("{tau}: {c:?}"))?;
        }
        strings += r.checks.len();
    }
    Ok(format!("{strings} strings over 20 triangulations"))
}

fn properties() -> Outcome {
    // g-vectors: definition against injective copresentation
    let mut taus: Vec<Triangulation> = (2..=3).flat_map(triangulations).collect();
    taus.push(Triangulation::special(4).expect("n >= 2"));
    let mut g_checked = 0;
    for tau in &taus {
        let lifted = lifted_algebras(tau);
        let alg = &lifted.base;
        let mut reps: Vec<DecRep> = all_strings(alg)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|w| DecRep::undecorated(string_module(alg, w).expect("valid")))
            .collect();
        reps.extend(all_arcs(tau.n()).expect("n").into_iter().map(|j| arc_rep_in(&lifted, tau, j)));
        for m in &reps {
            ensure(g_vector(alg, m) == g_vector_inj(alg, m), || format!("{tau}: g-vectors differ"))?;
            g_checked += 1;
        }
    }
    // Euler characteristics: closed subsets against substring families
    let mut euler_checked = 0;
    for n in 2..=4 {
        for tau in triangulations(n) {
            let alg = orbicc::algebra::algebra_of_triangulation(&tau);
            for w in all_strings(&alg).map_err(|e| e.to_string())? {
                ensure(euler_profile(&alg, &w) == substring_family_profile(&alg, &w), || {
                    format!("{tau}: Euler engines differ on {}", w.to_text(alg.quiver()))
                })?;
                euler_checked += 1;
            }
        }
    }
    // mutation: involution on every reachable seed, exact division throughout
    let mut seeds_checked = 0;
    for n in 2..=4 {
        let (seeds, closed) =
            reachable_seeds(initial_seed(&Triangulation::special(n).expect("n")), 100).map_err(|e| e.to_string())?;
        ensure(closed, || format!("n={n}: seed search did not close"))?;
        for s in &seeds {
            for k in 0..n {
                let back = s.mutate(k).and_then(|t| t.mutate(k)).map_err(|e| e.to_string())?;
                ensure(back.b == s.b && back.cluster == s.cluster, || {
                    format!("n={n}: mutation at {k} not involutive")
                })?;
            }
        }
        seeds_checked += seeds.len();
    }
    // linear independence of arc functions
    for n in 2..=4 {
        let table = cc_table(&Triangulation::special(n).expect("n"));
        let polys: Vec<LaurentPoly> = table.arc_entries().map(|e| e.poly.clone()).collect();
        ensure(coefficient_rank(&polys) == n * (n + 1), || format!("n={n}: arc functions dependent"))?;
    }
    Ok(format!("{g_checked} g-vectors, {euler_checked} Euler profiles, {seeds_checked} seeds"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("golden flipped triangulation, n=3", golden_flipped),
        ("golden long arc, n=5", golden_long_arc),
        ("cluster variables = arc functions, n=2..4", main_theorem),
        ("flip exchange relations, n=2..3", flip_exchange),
        ("E-rigid = arc representations", rigidity),
        ("covering Euler sums and projections, n=3", covering),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
