//! The acceptance suite: one line per criterion, non-zero exit on failure.
//!
//! Run with `cargo test --test acceptance`. Set `BOLFORGE_EXHAUSTIVE=1` to
//! add the exhaustive Bol check on the twisted order-1536 loop (about
//! 3.6·10⁹ triples).

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use bolforge::baseg::{certify_24, certify_star, uniqueness_probe, GroupG};
use bolforge::bigg::{certify_family, family_folder, fiber_map, BigElement, BigGroup, Variant};
use bolforge::cli::{base_loop, build_family, certify_base, run_captured, run_counterexample, Complement};
use bolforge::f2::{hom_space, spin, F2Mat, F2Vec, ModuleAction, Subspace};
use bolforge::loopcore::{
    check_bol, is_simple, mult_groups, normal_closure_block, quotient_induce, table_checks, BolMode, Certificate,
    FolderGroup, LoopTable, MultKind,
};
use bolforge::perm::{ss_order, GroupEnum};
use bolforge::rng::SplitMix64;
use bolforge::s5mod::{build_psi, build_u, certify_modules};
use serde_json::Value;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Every named check exists in `cert` and passed.
fn require(cert: &Certificate, names: &[&str]) -> Result<(), String> {
    for name in names {
        match cert.check(name) {
            None => return Err(format!("{}: no check named `{name}`", cert.artifact)),
            Some(c) if !c.pass => return Err(format!("{}: `{name}` failed: {}", cert.artifact, c.witness)),
            Some(_) => {}
        }
    }
    Ok(())
}

fn require_all(cert: &Certificate) -> Result<(), String> {
    match cert.failures().next() {
        None => Ok(()),
        Some(c) => Err(format!("{}: `{}` failed: {}", cert.artifact, c.name, c.witness)),
    }
}

fn summary_u64(cert: &Certificate, key: &str) -> Option<u64> {
    cert.summary.get(key).and_then(Value::as_u64)
}

fn c1(g: &GroupG) -> Outcome {
    let star = certify_star(g);
    require(
        &star,
        &[
            "defining relations of c, d",
            "u1u2u3u4u5u6 = 1",
            "|G|",
            "J elementary abelian of order 32",
        ],
    )?;
    let s = certify_24(g);
    require(&s, &["|G'|", "|G''| = |G'|"])?;
    ensure(g.j0.order() == 16, format!("|J0| = {}", g.j0.order()))?;
    let gpp = g.gprime.derived().map_err(|e| e.to_string())?;
    ensure(gpp.order() == g.gprime.order(), "G'' != G'")?;
    Ok(format!(
        "|G| = {}, |J| = {}, |J0| = {}, |G'| = {}, G'' = G'",
        g.order(),
        g.j.order(),
        g.j0.order(),
        g.gprime.order()
    ))
}

fn c2(g: &GroupG) -> Outcome {
    let s = certify_24(g);
    require(
        &s,
        &[
            "involutions in G\\J",
            "involutions in G\\J form one class",
            "involutions in G'\\J",
            "|N_G(P)|",
            "order of the second generator of H",
            "P is the unique Sylow 5-subgroup of H",
            "|N_J0(P)|",
        ],
    )?;
    ensure(g.class_c.len() == 80, "|c^G| != 80")?;
    Ok("80 involutions outside J in one class, none in G'\\J, |N_G(P)| = 40 = |C8 ⋉ C5|, N_J0(P) = 1".into())
}

fn c3(g: &GroupG) -> Outcome {
    let cert = certify_base(g);
    require_all(&cert)?;
    require(
        &cert,
        &[
            "folder/x*y not in H for distinct x, y in K",
            "table/x*x = 1 for all x",
            "simple",
        ],
    )?;
    let bol = cert.check("bol/Bol identity").ok_or("no Bol check")?;
    ensure(bol.witness == "884736 triples", bol.witness.clone())?;
    ensure(summary_u64(&cert, "loop_order") == Some(96), "loop order")?;
    ensure(summary_u64(&cert, "full_seeds") == Some(95), "full seeds")?;
    ensure(
        cert.summary.get("right_mult_order") == Some(&Value::from("3840")),
        "right multiplication group",
    )?;
    Ok("order 96, Latin, exponent 2, Bol on 884736 triples, 95/95 seeds full, |Mlt_r| = 3840".into())
}

fn c4(g: &GroupG) -> Outcome {
    let cert = uniqueness_probe(g);
    require(
        &cert,
        &[
            "admissible K* for N_G(P)J0",
            "K = J0 ∪ c^G is the only admissible K* for N_G(P)",
        ],
    )?;
    Ok("one admissible K for N_G(P), none for N_G(P)J0".into())
}

fn c5(g: &GroupG) -> Outcome {
    let cert = certify_modules(g);
    require(
        &cert,
        &[
            "N: (singular, nonsingular) nonzero vectors",
            "M: dim C_M(x) for x of order 3",
            "N: dim C_N(x) for x of order 3",
            "N over S5: (irreducible, endo dim)",
            "M over S5: (irreducible, endo dim)",
            "M over A5: (irreducible, endo dim)",
            "dim Hom_A5(M, N)",
            "Hom_F20(M, N): (dim, invertible)",
            "N over C4 is free",
        ],
    )?;
    Ok("N: 5/10 vectors, C_M(3) = 0, dim C_N(3) = 2, End dims 1/1 (S5) and 2 (M over A5), Hom_A5 = 0, Hom_F20 invertible, N free over C4".into())
}

fn c6(g: &GroupG) -> Outcome {
    let cert = certify_modules(g);
    require(
        &cert,
        &[
            "U: proper nonzero C5-submodules",
            "U: L-submodules are exactly U1, U2, W",
            "U: W is the only D-submodule",
            "U: D1-submodules are W, T1, T2",
            "D1-orbit lengths on T1",
        ],
    )?;
    Ok("17 C5-submodules; L: U1, U2, W; D: W; D1: W, T1, T2; D1-orbits on T1: 1, 5, 10".into())
}

fn c7(g: &GroupG) -> Outcome {
    let cert = certify_modules(g);
    require(
        &cert,
        &[
            "dim C_U(t)",
            "C_U(t) + T1 = U and C_U(t) meets T1 trivially",
            "|S|",
            "S is invariant under the images of c and d",
            "x + y not in T1 for distinct x, y in S",
        ],
    )?;
    Ok("dim C_U(t) = 4 meeting T1 trivially; |S| = 16, invariant, no difference in T1".into())
}

fn c8(g: &GroupG, k: usize) -> Outcome {
    let u = build_u(g, false).map_err(|e| e.to_string())?;
    let bg = BigGroup::new(g, &u, k).map_err(|e| e.to_string())?;
    let scale = 16u64.pow(k as u32);
    let mut parts = Vec::new();
    for v in [Variant::Split, Variant::Twisted] {
        let cert = certify_family(&bg, v, true);
        require_all(&cert)?;
        let n0 = summary_u64(&cert, "n0").ok_or("n0 missing")?;
        let n1 = summary_u64(&cert, "n1").ok_or("n1 missing")?;
        let size = summary_u64(&cert, "k_size").ok_or("k_size missing")?;
        ensure(
            n0 == 2 * n1 && size == 12 * n1 && size == 96 * scale,
            format!("{v}: n0 {n0}, n1 {n1}, |K| {size}"),
        )?;
        parts.push(format!("{v}: |K| = {size} = 12 * {n1}"));
    }
    Ok(format!(
        "k = {k}: |C_U(c)| = {scale}, (a)-(e) hold; {}",
        parts.join(", ")
    ))
}

struct FamilyLoop {
    table: LoopTable,
    fiber: Vec<u32>,
    base: LoopTable,
    build: Certificate,
}

fn family_loop(g: &GroupG, variant: Variant) -> Result<FamilyLoop, String> {
    let built = build_family(g, 1, variant, Complement::T1).map_err(|e| e.to_string())?;
    require_all(&built.cert)?;
    let table = built.table.ok_or("no table at k = 1")?;
    let u = build_u(g, false).map_err(|e| e.to_string())?;
    let bg = BigGroup::new(g, &u, 1).map_err(|e| e.to_string())?;
    let psi = build_psi(g, &u).map_err(|e| e.to_string())?;
    let ff = family_folder(&bg, variant, Some(&psi)).map_err(|e| e.to_string())?;
    let bf = bolforge::baseg::base_folder(g).map_err(|e| e.to_string())?;
    let fiber = fiber_map(&ff, &bf).map_err(|e| e.to_string())?;
    Ok(FamilyLoop {
        table,
        fiber,
        base: base_loop(g).map_err(|e| e.to_string())?,
        build: built.cert,
    })
}

fn loop_basics(t: &LoopTable) -> Result<(), String> {
    ensure(t.order() == 1536, format!("order {}", t.order()))?;
    require_all(&table_checks(t))?;
    require_all(&check_bol(
        t,
        BolMode::Sample {
            count: 1_000_000,
            seed: 1,
        },
    ))
}

fn c9(g: &GroupG) -> Outcome {
    let fl = family_loop(g, Variant::Split)?;
    let t = &fl.table;
    loop_basics(t)?;
    require(
        &fl.build,
        &["U-deletion quotient is well defined and equals the base loop"],
    )?;
    let q = quotient_induce(t, &fl.fiber, Some(&fl.base)).map_err(|e| e.to_string())?;
    ensure(q.well_defined && q.matches_base == Some(true), "quotient")?;
    let s = is_simple(t).map_err(|e| e.to_string())?;
    ensure(!s.simple, "split loop reported simple")?;
    let kernel: Vec<usize> = (0..t.order()).filter(|&x| fl.fiber[x] == fl.fiber[0]).collect();
    for &x in &kernel[1..] {
        let block = normal_closure_block(t, x).map_err(|e| e.to_string())?;
        ensure(
            block == kernel,
            format!("normal closure of kernel element {x} has {} elements", block.len()),
        )?;
    }
    let (x, block) = s.witness.ok_or("no witness")?;
    ensure(block.len() == 16, format!("witness block {}", block.len()))?;
    Ok(format!(
        "order 1536, exponent 2, 10^6 Bol samples, quotient = base loop; not simple: closure of {x} and of every kernel element is the 16-element kernel"
    ))
}

fn c10(g: &GroupG) -> Outcome {
    let fl = family_loop(g, Variant::Twisted)?;
    let t = &fl.table;
    loop_basics(t)?;
    require(&fl.build, &["U-deletion quotient is not well defined"])?;
    let q = quotient_induce(t, &fl.fiber, Some(&fl.base)).map_err(|e| e.to_string())?;
    ensure(
        !q.well_defined && q.witness.is_some(),
        "quotient unexpectedly well defined",
    )?;
    let s = is_simple(t).map_err(|e| e.to_string())?;
    ensure(
        s.simple && s.full_seeds == 1535,
        format!("simple {}, full seeds {}", s.simple, s.full_seeds),
    )?;
    let right = mult_groups(t, MultKind::Right).order;
    ensure(right == 983040u32.into(), format!("|Mlt_r| = {right}"))?;
    let mut extra = String::new();
    if std::env::var("BOLFORGE_EXHAUSTIVE").is_ok_and(|v| v == "1") {
        require_all(&check_bol(t, BolMode::Exhaustive))?;
        extra = ", exhaustive Bol".into();
    }
    Ok(format!(
        "order 1536, exponent 2, 10^6 Bol samples{extra}, quotient ill defined, simple (1535/1535 seeds), |Mlt_r| = 983040"
    ))
}

fn c11(g: &GroupG) -> Outcome {
    let cert = run_counterexample(g);
    require_all(&cert)?;
    let e = cert.check("(e) fails").ok_or("missing (e)")?;
    ensure(!e.witness.is_empty(), "no involution witness")?;
    let p = cert
        .check("J0 ∪ K1 is not a transversal to N_B(P)")
        .ok_or("missing pairwise")?;
    Ok(format!("(e) fails: {}; pairwise: {}", e.witness, p.witness))
}

/// All elements of the matrix group generated by `gens`.
fn matrix_group(gens: &[F2Mat]) -> Vec<F2Mat> {
    let id = F2Mat::identity(gens[0].nrows());
    let mut seen: BTreeSet<F2Mat> = [id.clone()].into();
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for s in gens {
            let y = x.mul(s);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// `Hom` by brute force over all `a × b` matrices.
fn brute_hom_dim(a: &ModuleAction, b: &ModuleAction) -> usize {
    let (m, n) = (a.dim(), b.dim());
    let count = (0u64..1 << (m * n))
        .filter(|&bits| {
            let x = F2Mat::from_fn(m, n, |r| F2Vec::from_bits(n, bits >> (r * n) & ((1 << n) - 1)));
            a.gens().iter().zip(b.gens()).all(|(ga, gb)| ga.mul(&x) == x.mul(gb))
        })
        .count();
    count.trailing_zeros() as usize
}

fn c12(g: &GroupG) -> Outcome {
    // Semidirect-law associativity.
    let u = build_u(g, false).map_err(|e| e.to_string())?;
    let mut triples = 0u64;
    for k in [1usize, 2] {
        let bg = BigGroup::new(g, &u, k).map_err(|e| e.to_string())?;
        let mut rng = SplitMix64::new(12 + k as u64);
        let mask = (1u64 << (8 * k)) - 1;
        let mut draw = || BigElement::new(rng.below(g.order()), rng.next_u64() & mask);
        for _ in 0..500_000 {
            let (x, y, z) = (draw(), draw(), draw());
            ensure(
                bg.mul(bg.mul(x, y), z) == bg.mul(x, bg.mul(y, z)),
                format!("k = {k}: associativity fails at {x:?}, {y:?}, {z:?}"),
            )?;
            triples += 1;
        }
    }

    // Schreier-Sims against enumeration.
    let mut rng = SplitMix64::new(20);
    let mut orders = BTreeSet::new();
    for _ in 0..20 {
        let gens: Vec<_> = (0..2).map(|_| g.element(rng.below(g.order())).clone()).collect();
        let enumerated = GroupEnum::generate(&gens).map_err(|e| e.to_string())?.order();
        let ss = ss_order(&gens);
        ensure(
            ss == enumerated.into(),
            format!("ss_order {ss} vs enumeration {enumerated}"),
        )?;
        orders.insert(enumerated);
    }

    // Spins and homomorphism spaces against their definitions.
    let psi = build_psi(g, &u).map_err(|e| e.to_string())?;
    let acts = [&u.l_act, &u.d_act, &u.d1_act, &u.p_act];
    let mut rng = SplitMix64::new(21);
    for act in acts {
        let elems = matrix_group(act.gens());
        for _ in 0..8 {
            let v = F2Vec::from_bits(8, rng.next_u64() & 0xff);
            let s = spin(&[v], act);
            let by_def = Subspace::span(8, elems.iter().map(|m| m.apply(v)));
            ensure(s == by_def, format!("spin of {v} differs from the span of its orbit"))?;
        }
    }
    let t1 = u.d1_act.restrict(&u.t1).map_err(|e| e.to_string())?;
    let t2 = u.d1_act.restrict(&u.t2).map_err(|e| e.to_string())?;
    let j0 = bolforge::s5mod::j0_f20(g, &u.pairs).map_err(|e| e.to_string())?;
    for (a, b) in [(&t1, &t1), (&t1, &t2), (&j0, &t1), (&j0, &t2)] {
        let basis = hom_space(a, b).map_err(|e| e.to_string())?;
        for h in &basis {
            ensure(
                a.gens().iter().zip(b.gens()).all(|(x, y)| x.mul(h) == h.mul(y)),
                "hom_space output does not intertwine",
            )?;
        }
        ensure(
            basis.len() == brute_hom_dim(a, b),
            "hom_space dimension differs from brute force",
        )?;
    }
    ensure(psi.mat.is_invertible(), "psi is singular")?;

    // Determinism of every command.
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let commands: Vec<Vec<String>> = vec![
        vec!["certify-base".into()],
        vec!["certify-modules".into()],
        vec!["counterexample".into()],
        vec![
            "build".into(),
            "--k".into(),
            "2".into(),
            "--variant".into(),
            "split".into(),
        ],
    ];
    let run = |args: &[String]| run_captured(std::iter::once("bolforge".to_string()).chain(args.iter().cloned()));
    for cmd in &commands {
        ensure(
            run(cmd) == run(cmd),
            format!("`{}` is not deterministic", cmd.join(" ")),
        )?;
    }
    for variant in ["split", "twisted"] {
        let mut outputs = Vec::new();
        for round in 0..2 {
            let (table, meta) = (
                p(&format!("{variant}{round}.ltab")),
                p(&format!("{variant}{round}.json")),
            );
            let args: Vec<String> = [
                "build",
                "--k",
                "1",
                "--variant",
                variant,
                "--out",
                &table,
                "--meta",
                &meta,
            ]
            .map(String::from)
            .to_vec();
            let code = run(&args).0;
            ensure(code == 0, format!("build {variant} exited {code}"))?;
            let verify = run(&["verify", &table, "--bol", "sample=10000", "--seed", "5"].map(String::from));
            let simple = run(&["simplicity", &table].map(String::from));
            let read = |f: &str| std::fs::read(f).map_err(|e| e.to_string());
            outputs.push((read(&table)?, read(&meta)?, verify, simple));
        }
        ensure(
            outputs[0] == outputs[1],
            format!("{variant}: build/verify/simplicity outputs differ"),
        )?;
    }
    Ok(format!(
        "{triples} associativity triples; ss_order = enumeration on 20 subgroups (orders {orders:?}); spins and Homs match their definitions; all commands deterministic"
    ))
}

fn main() {
    let start = Instant::now();
    let g = match GroupG::build() {
        Ok(g) => g,
        Err(e) => {
            println!("FAIL building G: {e}");
            std::process::exit(1);
        }
    };
    let build_time = start.elapsed();
    let secs = Duration::from_secs;
    type Criterion<'a> = (usize, &'a str, Option<Duration>, Box<dyn Fn(&GroupG) -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        (1, "G, J, J0 and the derived series", Some(secs(5)), Box::new(c1)),
        (2, "involutions and the Sylow-5 normalizer", None, Box::new(c2)),
        (3, "the order-96 loop", Some(secs(10)), Box::new(c3)),
        (4, "restricted uniqueness of K", None, Box::new(c4)),
        (5, "the modules N and M", None, Box::new(c5)),
        (6, "submodules of U", None, Box::new(c6)),
        (7, "C_U(t) and S", None, Box::new(c7)),
        (
            8,
            "family censuses and the criterion, k = 1",
            Some(secs(120)),
            Box::new(|g| c8(g, 1)),
        ),
        (
            8,
            "family censuses and the criterion, k = 2",
            Some(secs(600)),
            Box::new(|g| c8(g, 2)),
        ),
        (9, "split k = 1 loop", Some(secs(300)), Box::new(c9)),
        (10, "twisted k = 1 loop", Some(secs(600)), Box::new(c10)),
        (11, "negative control J ⋊ S5", None, Box::new(c11)),
        (12, "property suites and determinism", None, Box::new(c12)),
    ];
    let mut failed = 0;
    for (n, title, budget, f) in criteria {
        let t = Instant::now();
        let result = f(&g);
        // Criterion 1 includes building G.
        let elapsed = t.elapsed() + if n == 1 { build_time } else { Duration::ZERO };
        let result = match (result, budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.1?}, budget {b:?}")),
            (r, _) => r,
        };
        let (mark, detail) = match &result {
            Ok(d) => ("PASS", d.as_str()),
            Err(e) => ("FAIL", e.as_str()),
        };
        if result.is_err() {
            failed += 1;
        }
        println!("criterion {n:>2} {mark} {title} [{elapsed:.2?}]: {detail}");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
