//! Acceptance gate. Runs as a plain binary so every criterion prints one line
//! regardless of output capture; exits nonzero if any criterion fails.

mod common;

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use graphflow::cli::{parse_superpoly, Scope};
use graphflow::complex::{
    differential, disjoint_union, enumerate_graphs, enumerate_graphs_with, CocycleRecord, EnumerationStrategy,
};
use graphflow::graph::{canonical_form, UnorientedGraph};
use graphflow::orient::{abstract_bivector, evaluate, leibniz_ansatz_iterate, orient_flow, FactorizeOptions};
use graphflow::poissonlab::{
    apply_symmetry, euler_field, nambu_bivector, picard_integrate, trivialize, Flow, NambuDatum, PoissonModel,
};
use graphflow::rational::{factorial, q};
use graphflow::superpoly::{jacobiator, poisson_differential, schouten, SuperPoly};
use graphflow::Q;
use rand::Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1_convention() -> Check {
    let mut n_terms = 0;
    for seed in 0..200u64 {
        let mut rng = common::rng(seed);
        let s = common::random_sum(&mut rng, 6, 9);
        n_terms += s.len();
        let dd = differential(&differential(&s));
        ensure(dd.is_empty(), format!("d(d(λ)) != 0 for seed {seed}: {dd}"))?;
    }
    ensure(differential(&CocycleRecord::gamma3().sum).is_empty(), "d(γ3) != 0")?;
    Ok(format!("d∘d = 0 on 200 random sums ({n_terms} terms, n <= 6); d(γ3) = 0"))
}

fn c2_zero_graphs() -> Check {
    ensure(canonical_form(&UnorientedGraph::cycle(3).unwrap()).sign == 0, "triangle is nonzero")?;
    ensure(canonical_form(&UnorientedGraph::path(3).unwrap()).sign == 0, "3-path is nonzero")?;
    let fast = enumerate_graphs(4, 6).map_err(|e| e.to_string())?;
    let oracle = enumerate_graphs_with(4, 6, EnumerationStrategy::Bitmask).map_err(|e| e.to_string())?;
    ensure(fast == oracle, "enumeration disagrees with the bitmask oracle")?;
    ensure(fast == vec![UnorientedGraph::tetrahedron()], format!("enumerate(4,6) = {fast:?}"))?;
    Ok("triangle, 3-path = 0; enumerate(4,6) = {K4}, count 1, matches bitmask oracle".into())
}

fn c3_union() -> Check {
    let g = CocycleRecord::gamma3().sum;
    let u = disjoint_union(&g, &g);
    ensure(u.len() == 1, "γ3⊔γ3 vanished")?;
    ensure(differential(&u).is_empty(), "d(γ3⊔γ3) != 0")?;
    Ok("d(γ3⊔γ3) = 0".into())
}

fn c4_schouten() -> Check {
    let parity = common::parity;
    for seed in 0..100u64 {
        let mut rng = common::rng(1000 + seed);
        let r = rng.gen_range(1..=3);
        let mut pick = || {
            let k = rng.gen_range(0..=r);
            (common::random_multivector(&mut rng, r, k), k + 1)
        };
        let ((a, sa), (b, sb), (c, _)) = (pick(), pick(), pick());
        let kb = sb - 1;
        let br = |x: &SuperPoly, y: &SuperPoly| schouten(x, y).unwrap();
        ensure(br(&a, &b) == br(&b, &a).scale(&-parity(sa * sb)), format!("antisymmetry, seed {seed}"))?;
        let mut leib = br(&a, &b).mul(&c);
        leib.add_scaled(&b.mul(&br(&a, &c)), &parity(sa * kb));
        ensure(br(&a, &b.mul(&c)) == leib, format!("Leibniz, seed {seed}"))?;
        let mut jac = br(&br(&a, &b), &c);
        jac.add_scaled(&br(&b, &br(&a, &c)), &parity(sa * sb));
        ensure(br(&a, &br(&b, &c)) == jac, format!("Jacobi, seed {seed}"))?;
    }
    let scope = Scope::open(3);
    let probes = ["x1^2*x2 + x3", "x1*x2*xi3 + x3^2*xi1", "f"];
    for name in ["so3", "nambu-sphere", "nambu-cubic", "nambu-abstract"] {
        let p = PoissonModel::builtin(name).unwrap().bivector;
        for probe in probes {
            let a = parse_superpoly(probe, &scope).unwrap();
            let d2 = poisson_differential(&p, &poisson_differential(&p, &a).unwrap()).unwrap();
            ensure(d2.is_zero(), format!("∂_P² != 0 for {name} on {probe}"))?;
        }
    }
    Ok("antisymmetry, Leibniz, Jacobi on 100 random triples (r <= 3); ∂_P² = 0 on so3 and Nambu models".into())
}

fn c5_nambu_lemma() -> Check {
    let p = nambu_bivector("n", &NambuDatum::abstract_datum()).map_err(|e| e.to_string())?;
    let j = jacobiator(&p.bivector).unwrap();
    ensure(j.is_zero(), format!("jacobiator has {} terms", j.len()))?;
    Ok(format!("jacobiator(ρ ε ∂a) = 0 exactly ({} bivector terms)", p.bivector.len()))
}

/// Solves `stick(P,P) = c·⟦P,P⟧` for `c` from the first nonzero coefficient and checks it everywhere.
fn stick_constant(r: usize) -> Result<Option<Q>, String> {
    let p = abstract_bivector(r);
    let stick = evaluate(&UnorientedGraph::stick(), &[p.clone(), p.clone()]).map_err(|e| e.to_string())?;
    let pp = schouten(&p, &p).unwrap();
    let Some((t, c)) = pp.terms().next() else {
        ensure(stick.is_zero(), format!("r={r}: ⟦P,P⟧ = 0 but stick != 0"))?;
        return Ok(None);
    };
    let ratio = stick.coefficient(t.xi, &t.mono) / c;
    ensure(stick == pp.scale(&ratio), format!("r={r}: stick is not proportional to ⟦P,P⟧"))?;
    Ok(Some(ratio))
}

fn c6_stick() -> Check {
    let c3 = stick_constant(3)?.ok_or("r=3: ⟦P,P⟧ vanished")?;
    ensure(c3 != q(0), "c = 0")?;
    let c4 = stick_constant(4)?.ok_or("r=4: ⟦P,P⟧ vanished")?;
    ensure(c3 == c4, format!("c differs: r=3 {c3}, r=4 {c4}"))?;
    // In r=2 every trivector vanishes, so any c holds; confirm with c3.
    let p = abstract_bivector(2);
    let stick = evaluate(&UnorientedGraph::stick(), &[p.clone(), p.clone()]).unwrap();
    ensure(stick == schouten(&p, &p).unwrap().scale(&c3), "r=2 identity fails")?;
    let r2 = match stick_constant(2)? {
        Some(c2) => format!("r=2 gives c = {c2}"),
        None => "r=2 both sides vanish, so c holds there trivially".into(),
    };
    Ok(format!("c = {c3} in r=3 and r=4; {r2}"))
}

fn c7_so3() -> Check {
    let q = apply_symmetry(&PoissonModel::builtin("so3").unwrap(), &CocycleRecord::gamma3()).map_err(|e| e.to_string())?;
    ensure(q.is_zero(), format!("Or(γ3)(so3) = {q}"))?;
    Ok("Or(γ3)(so3) = 0".into())
}

fn c8_symmetry() -> Check {
    let g3 = CocycleRecord::gamma3();
    let p2 = abstract_bivector(2);
    let q2 = orient_flow(&g3.sum, &p2).map_err(|e| e.to_string())?;
    ensure(q2.len() == 4, format!("r=2 flow has {} terms", q2.len()))?;
    ensure(schouten(&p2, &q2).unwrap().is_zero(), "r=2: ⟦P, Q⟧ != 0")?;
    let p3 = abstract_bivector(3);
    let target = schouten(&p3, &orient_flow(&g3.sum, &p3).unwrap()).unwrap();
    let f = leibniz_ansatz_iterate(&target, &p3, &FactorizeOptions::default()).map_err(|e| e.to_string())?;
    ensure(f.residual.is_zero(), format!("r=3 residual has {} terms", f.residual.len()))?;
    ensure(!f.diamond.is_empty(), "empty ◊")?;
    ensure(f.diamond.evaluate(&p3).unwrap() == target, "◊ does not reproduce ⟦P, Q⟧")?;
    Ok(format!(
        "r=2 ⟦P,Q⟧ = 0; r=3 residual 0 with |◊| = {} Leibniz graphs ({} rounds, pool {})",
        f.diamond.len(),
        f.rounds.len(),
        f.pool_size
    ))
}

fn c9_picard() -> Check {
    for name in ["so3", "nambu-cubic", "abstract3"] {
        let m = PoissonModel::builtin(name).unwrap();
        let coeffs = picard_integrate(&m, &Flow::Scaling, 5).map_err(|e| e.to_string())?;
        ensure(coeffs.len() == 6, "wrong number of coefficients")?;
        for (k, c) in coeffs.iter().enumerate() {
            ensure(*c == m.bivector.scale(&(q(1) / factorial(k as u32))), format!("{name}: P{k} != P/{k}!"))?;
        }
    }
    Ok("P_m = P_0/m! for m <= 5 on so3, nambu-cubic, abstract3".into())
}

fn c10_trivialize() -> Check {
    let so3 = PoissonModel::builtin("so3").unwrap();
    let t = trivialize(&so3, &so3.bivector, 1)
        .map_err(|e| e.to_string())?
        .ok_or("no X at degree 1")?;
    let e = euler_field(3);
    let (te, ce) = e.terms().next().unwrap();
    let lambda = t.x.coefficient(te.xi, &te.mono) / ce;
    ensure(lambda != q(0) && t.x == e.scale(&lambda), format!("X = {} is not Euler-proportional", t.x))?;
    let mut res = so3.bivector.clone();
    res.add_scaled(&schouten(&so3.bivector, &t.x).unwrap(), &q(-1));
    ensure(res.is_zero(), "Q - ⟦P,X⟧ != 0")?;
    for g in &t.gauge {
        ensure(schouten(&so3.bivector, g).unwrap().is_zero(), format!("⟦P,{g}⟧ != 0"))?;
    }
    Ok(format!("X = {lambda}·Euler, residual 0, gauge dim {} all ∂_P-closed", t.gauge.len()))
}

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(rel).display().to_string()
}

fn c11_determinism() -> Check {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let partial = dir.join("partial.gsum");
    std::fs::write(&partial, "1/1\t4 5 0 1 0 2 0 3 1 2 1 3\n-2/3\t5 6 0 1 1 2 2 3 3 4 0 4 0 2\n").unwrap();
    let partial = partial.display().to_string();
    let family = data("models/nambu-cubic-family.toml");
    let diamond = data("gamma3-r3.diamond");
    let commands: Vec<Vec<&str>> = vec![
        vec!["graph", "canon", "--edges", "0 2;0 1;0 3;1 2;1 3;2 3"],
        vec!["graph", "canon", "--edges", "0 1;1 2;0 2"],
        vec!["graph", "stats", "gamma5"],
        vec!["graph", "enumerate", "--vertices", "6", "--edges", "10"],
        vec!["gc", "d", &partial],
        vec!["gc", "bracket", &partial, "gamma3"],
        vec!["gc", "cocycle-check", "gamma5"],
        vec!["gc", "union", "gamma3", "gamma5"],
        vec!["or", "eval", "--edges", "0 1;1 2;0 2", "--dim", "3", "--content", "x1*x2*xi1*xi3 + x3^2*xi2*xi3"],
        vec!["or", "flow", "--cocycle", "gamma3", "--model", "abstract3"],
        vec!["or", "factorize", "--cocycle", "gamma3", "--dim", "3"],
        vec!["or", "metagraph", &diamond],
        vec!["lab", "nambu", "--a", "x1^3 + x1*x2*x3", "--rho", "1 + x3"],
        vec!["lab", "linear", "--preset", "so3"],
        vec!["lab", "apply", "--model", "nambu-cubic", "--cocycle", "gamma3"],
        vec!["lab", "integrate", "--model", "abstract2", "--cocycle", "gamma3", "--order", "2"],
        vec!["lab", "invariance", "--model", &family, "--cocycle", "gamma3"],
        vec!["lab", "trivialize", "--model", "nambu-cubic", "--cocycle", "gamma3", "--degree", "4"],
        vec!["lab", "lift", "--cocycle", "gamma3", "--max-jet-order", "2"],
    ];
    for (k, args) in commands.iter().enumerate() {
        let mut outs = Vec::new();
        for threads in ["1", "8"] {
            let file = dir.join(format!("out-{k}-{threads}"));
            let o = Command::new(env!("CARGO_BIN_EXE_graphflow"))
                .args(["--threads", threads, "--output", file.to_str().unwrap()])
                .args(args)
                .output()
                .map_err(|e| e.to_string())?;
            let stdout = String::from_utf8_lossy(&o.stdout).replace(file.to_str().unwrap(), "FILE");
            let artifact = std::fs::read(&file).unwrap_or_default();
            let plain = Command::new(env!("CARGO_BIN_EXE_graphflow"))
                .args(["--threads", threads])
                .args(args)
                .output()
                .map_err(|e| e.to_string())?;
            ensure(
                o.status.code().is_some_and(|c| c == 0 || c == 4),
                format!("`{}` failed: {}", args.join(" "), String::from_utf8_lossy(&o.stderr)),
            )?;
            outs.push((o.status.code(), stdout, artifact, plain.stdout, plain.status.code()));
        }
        ensure(outs[0] == outs[1], format!("`{}` differs between 1 and 8 threads", args.join(" ")))?;
    }
    Ok(format!("{} commands byte-identical at 1 and 8 threads (stdout and --output files)", commands.len()))
}

fn main() {
    let criteria: Vec<(&str, u64, fn() -> Check)> = vec![
        ("convention validation", 30, c1_convention),
        ("zero-graph calibration", 5, c2_zero_graphs),
        ("disjoint-union corollary", 60, c3_union),
        ("Schouten suite", 60, c4_schouten),
        ("Nambu lemma", 120, c5_nambu_lemma),
        ("stick calibration", 30, c6_stick),
        ("linear-bracket vanishing", 120, c7_so3),
        ("symmetry property", 600, c8_symmetry),
        ("scaling-flow integration", 5, c9_picard),
        ("trivialization", 30, c10_trivialize),
        ("determinism", 900, c11_determinism),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (k, (name, limit, check)) in criteria.into_iter().enumerate() {
        let id = k + 1;
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = t.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > Duration::from_secs(limit) => Err(format!("{msg}; over time limit")),
            other => other,
        };
        let (tag, msg) = match &outcome {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("[{tag}] {id:>2} {name}: {msg} ({:.2}s, limit {limit}s)", elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("acceptance: {failed} criterion(s) failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
