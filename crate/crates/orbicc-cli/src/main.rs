use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use orbicc::algebra::{g_vector, g_vector_inj, lifted_algebras, DecRep};
use orbicc::ccfun::{cc_table, classify_e_rigid, Golden};
use orbicc::covering::verify_covering;
use orbicc::gca::{all_cluster_variables, initial_seed, verify_flip_exchange, Seed};
use orbicc::laurent::LaurentPoly;
use orbicc::strings::{all_strings, arc_rep_in, special_g_vector, string_module};
use orbicc::surface::{all_arcs, enumerate_triangulations, parse_triangulation, Triangulation};

#[derive(Parser)]
#[command(
    name = "orbicc",
    version,
    about = "Caldero-Chapoton functions and generalized cluster algebras of an orbifold polygon"
)]
struct Cli {
    /// Largest admissible number of polygon vertices minus one.
    #[arg(long, global = true, env = "ORBIFOLD_MAX_N", default_value_t = 6)]
    max_n: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all arcs, one code per line.
    Arcs { n: usize },
    /// List all triangulations, one JSON array per line.
    Triangulations { n: usize },
    /// Caldero-Chapoton functions of all arc representations and strings.
    CcTable {
        n: usize,
        /// `special`, a JSON array of arc codes, or a file holding one.
        #[arg(long, default_value = "special")]
        tau: String,
        /// Golden file to compare against.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Variable name used in text output.
        #[arg(long, default_value = "x")]
        var: String,
        #[arg(long)]
        json: bool,
    },
    /// Run verification suites; all of them when no suite is selected.
    Verify {
        n: usize,
        #[command(flatten)]
        suites: Suites,
        #[arg(long)]
        json: bool,
    },
    /// Print the seed of a triangulation as JSON.
    Seed {
        n: usize,
        /// `special`, a JSON array of arc codes, or a file holding one.
        #[arg(long, default_value = "special")]
        tau: String,
    },
    /// Apply a mutation sequence (1-based indices) to a seed file.
    Mutate { seed: PathBuf, sequence: Vec<usize> },
}

#[derive(Args, Clone, Copy)]
struct Suites {
    /// Cluster variables reached by mutation equal the arc functions.
    #[arg(long)]
    theorem: bool,
    /// Covering projections and Euler characteristic sums.
    #[arg(long)]
    covering: bool,
    /// E-rigid strings are exactly the arc representations.
    #[arg(long)]
    rigidity: bool,
    /// Exchange relations for every flip of every triangulation.
    #[arg(long)]
    flip_exchange: bool,
    /// Closed-form and injective-copresentation g-vectors.
    #[arg(long)]
    g_vectors: bool,
    #[arg(long)]
    all: bool,
}

type Outcome = Result<Vec<String>, String>;
type Suite<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check_n(n: usize, max_n: usize) -> Result<(), String> {
    if (2..=max_n).contains(&n) {
        Ok(())
    } else {
        Err(format!("n = {n} outside 2..={max_n}"))
    }
}

fn arc_codes(tau: &Triangulation) -> Vec<String> {
    tau.arcs().iter().map(|a| a.to_string()).collect()
}

fn parse_tau(n: usize, arg: &str) -> Result<Triangulation, String> {
    if arg == "special" {
        return Triangulation::special(n).map_err(|e| e.to_string());
    }
    let text = if arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?
    };
    parse_triangulation(n, &text).map_err(|e| e.to_string())
}

fn cmd_cc_table(n: usize, tau: &str, golden: Option<&PathBuf>, var: &str, as_json: bool) -> Result<bool, String> {
    let tau = parse_tau(n, tau)?;
    let table = cc_table(&tau);
    if as_json {
        println!("{}", serde_json::to_string_pretty(&table.to_json(var)).expect("serializable"));
    } else {
        println!("triangulation {}", json!(arc_codes(&tau)));
        for e in &table.entries {
            match &e.string {
                Some(s) if e.arc.is_some() => println!("{}\t{}\t{}", e.key, s, e.poly.to_text(var)),
                Some(_) => println!("{}\t-\t{}", e.key, e.poly.to_text(var)),
                None => println!("{}\tneg\t{}", e.key, e.poly.to_text(var)),
            }
        }
    }
    let Some(path) = golden else { return Ok(true) };
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let g = Golden::from_json(&text).map_err(|e| e.to_string())?;
    if g.tau().map_err(|e| e.to_string())? != tau {
        return Err(format!("golden file is for triangulation {:?}", g.triangulation));
    }
    let bad = g.check(&table).map_err(|e| e.to_string())?;
    for b in &bad {
        eprintln!("golden mismatch: {b}");
    }
    eprintln!("golden: {} ({} entries)", if bad.is_empty() { "PASS" } else { "FAIL" }, g.entries.len());
    Ok(bad.is_empty())
}

fn suite_theorem(n: usize) -> Outcome {
    let ex = all_cluster_variables(n, 4 * n * n).map_err(|e| e.to_string())?;
    if !ex.closed {
        return Err("mutation search did not close".into());
    }
    let table = cc_table(&Triangulation::special(n).map_err(|e| e.to_string())?);
    let arcs: BTreeSet<LaurentPoly> = table.arc_entries().map(|e| e.poly.clone()).collect();
    if let Some(x) = ex.variables.difference(&arcs).next() {
        return Err(format!("cluster variable {x} is not an arc function"));
    }
    if let Some(e) = table.arc_entries().find(|e| !ex.variables.contains(&e.poly)) {
        return Err(format!("arc function of {} is not a cluster variable", e.key));
    }
    Ok(vec![format!(
        "{} cluster variables in {} seeds, equal to the {} arc functions",
        ex.variables.len(),
        ex.seeds,
        arcs.len()
    )])
}

fn suite_flip_exchange(taus: &[Triangulation]) -> Outcome {
    let mut count = 0;
    let mut lines = Vec::new();
    for tau in taus {
        for c in verify_flip_exchange(tau) {
            if !c.holds || c.trinomial == Some(false) {
                return Err(format!("{tau}: flip of {} to {}: CC product differs from {}", c.arc, c.flipped, c.theta));
            }
            if c.trinomial.is_some() {
                let i = tau.index_of(c.arc).expect("arc of tau") + 1;
                lines.push(format!("{tau}: x{i} * x{i}' = {}", c.theta));
            }
            count += 1;
        }
    }
    lines.insert(0, format!("{count} exchange relations over {} triangulations", taus.len()));
    Ok(lines)
}

fn suite_covering(taus: &[Triangulation]) -> Outcome {
    let mut count = 0;
    for tau in taus {
        let r = verify_covering(tau);
        if let Some(c) = r.checks.iter().find(|c| !c.passed()) {
            return Err(format!("{tau}: {c:?}"));
        }
        count += r.checks.len();
    }
    Ok(vec![format!("{count} strings over {} triangulations", taus.len())])
}

fn suite_rigidity(taus: &[Triangulation]) -> Outcome {
    let mut rigid = 0;
    for tau in taus {
        let c = classify_e_rigid(tau);
        if !c.matches_arcs() {
            let extra: Vec<_> = c.rigid.symmetric_difference(&c.arc_modules).collect();
            return Err(format!("{tau}: rigid set and arc representations differ at {extra:?}"));
        }
        rigid += c.rigid.len();
    }
    Ok(vec![format!("{rigid} E-rigid indecomposables over {} triangulations, all from arcs", taus.len())])
}

fn suite_g_vectors(n: usize, taus: &[Triangulation]) -> Outcome {
    let special = Triangulation::special(n).map_err(|e| e.to_string())?;
    let lifted = lifted_algebras(&special);
    let mut closed_form = 0;
    for j in all_arcs(n).map_err(|e| e.to_string())?.into_iter().filter(|j| !special.contains(*j)) {
        let m = arc_rep_in(&lifted, &special, j);
        let g = g_vector(&lifted.base, &m);
        let expected = special_g_vector(n, j, &m.rep.dims);
        if g != expected {
            return Err(format!("g(M({j})) = {g:?}, closed form gives {expected:?}"));
        }
        closed_form += 1;
    }
    let mut agree = 0;
    for tau in taus {
        let lifted = lifted_algebras(tau);
        let alg = &lifted.base;
        let mut reps: Vec<DecRep> = all_strings(alg)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|w| DecRep::undecorated(string_module(alg, w).expect("valid string")))
            .collect();
        reps.extend(all_arcs(n).expect("valid n").into_iter().map(|j| arc_rep_in(&lifted, tau, j)));
        for m in &reps {
            let (a, b) = (g_vector(alg, m), g_vector_inj(alg, m));
            if a != b {
                return Err(format!(
                    "{tau}: dims {:?}: definition gives {a:?}, copresentation gives {b:?}",
                    m.rep.dims
                ));
            }
            agree += 1;
        }
    }
    Ok(vec![
        format!("{closed_form} closed-form g-vectors over the special triangulation"),
        format!("{agree} representations with matching g-vector definitions"),
    ])
}

fn cmd_verify(n: usize, s: Suites, as_json: bool) -> Result<bool, String> {
    let everything = s.all || !(s.theorem || s.covering || s.rigidity || s.flip_exchange || s.g_vectors);
    let start = Instant::now();
    let taus = enumerate_triangulations(n, n).map_err(|e| e.to_string())?;
    eprintln!("enumerated {} triangulations in {:.2}s", taus.len(), start.elapsed().as_secs_f64());
    let mut suites: Vec<Suite> = Vec::new();
    if everything || s.theorem {
        suites.push(("theorem", Box::new(|| suite_theorem(n))));
    }
    if everything || s.flip_exchange {
        suites.push(("flip-exchange", Box::new(|| suite_flip_exchange(&taus))));
    }
    if everything || s.covering {
        suites.push(("covering", Box::new(|| suite_covering(&taus))));
    }
    if everything || s.rigidity {
        suites.push(("rigidity", Box::new(|| suite_rigidity(&taus))));
    }
    if everything || s.g_vectors {
        suites.push(("g-vectors", Box::new(|| suite_g_vectors(n, &taus))));
    }
    let mut ok = true;
    let mut report = Vec::new();
    for (name, run) in &suites {
        let t = Instant::now();
        let outcome = run();
        eprintln!("{name}: {:.2}s", t.elapsed().as_secs_f64());
        ok &= outcome.is_ok();
        report.push(match &outcome {
            Ok(lines) => json!({"suite": name, "passed": true, "details": lines}),
            Err(why) => json!({"suite": name, "passed": false, "counterexample": why}),
        });
        if !as_json {
            match outcome {
                Ok(lines) => {
                    println!("PASS {name}");
                    lines.iter().for_each(|l| println!("  {l}"));
                }
                Err(why) => println!("FAIL {name}: {why}"),
            }
        }
    }
    if as_json {
        let v: Value = json!({"n": n, "triangulations": taus.len(), "passed": ok, "suites": report});
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
    } else {
        println!("{} n={n} ({} triangulations)", if ok { "PASS" } else { "FAIL" }, taus.len());
    }
    Ok(ok)
}

fn cmd_mutate(path: &PathBuf, sequence: &[usize]) -> Result<bool, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let seed = Seed::from_json(&text).map_err(|e| e.to_string())?;
    let ks = sequence
        .iter()
        .map(|&k| {
            if (1..=seed.rank()).contains(&k) {
                Ok(k - 1)
            } else {
                Err(format!("index {k} outside 1..={}", seed.rank()))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = seed.mutate_sequence(&ks).map_err(|e| e.to_string())?;
    out.history.clear();
    println!("{}", serde_json::to_string_pretty(&out.to_json()).expect("serializable"));
    Ok(true)
}

fn run(cli: &Cli) -> Result<bool, String> {
    match &cli.command {
        Command::Arcs { n } => {
            check_n(*n, cli.max_n)?;
            all_arcs(*n).map_err(|e| e.to_string())?.iter().for_each(|a| println!("{a}"));
            Ok(true)
        }
        Command::Triangulations { n } => {
            check_n(*n, cli.max_n)?;
            for t in enumerate_triangulations(*n, cli.max_n).map_err(|e| e.to_string())? {
                println!("{}", json!(arc_codes(&t)));
            }
            Ok(true)
        }
        Command::CcTable { n, tau, golden, var, json } => {
            check_n(*n, cli.max_n)?;
            cmd_cc_table(*n, tau, golden.as_ref(), var, *json)
        }
        Command::Verify { n, suites, json } => {
            check_n(*n, cli.max_n)?;
            cmd_verify(*n, *suites, *json)
        }
        Command::Seed { n, tau } => {
            check_n(*n, cli.max_n)?;
            let seed = initial_seed(&parse_tau(*n, tau)?);
            println!("{}", serde_json::to_string_pretty(&seed.to_json()).expect("serializable"));
            Ok(true)
        }
        Command::Mutate { seed, sequence } => cmd_mutate(seed, sequence),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
