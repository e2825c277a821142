use std::path::Path as FsPath;

use anyhow::{anyhow, bail, Context, Result};
use rand::SeedableRng;
use serde_json::{json, Value};

use graphcocycle::algebra::{check_axioms, check_covariance, check_ep_isometry, check_jy, coeff_string, Algebra};
use graphcocycle::cocycle::{check_path_extension, check_paths_match_words, validate_graph_cocycle, Cocycle};
use graphcocycle::cohomology::{
    brute_force_cohomologous, canonical_cocycle, canonical_form_za, signature, transitive_conjugacy,
    verify_cohomologous, SearchOptions,
};
use graphcocycle::constructions::{epk_decompose, EpkSystem, System};
use graphcocycle::schema::{fingerprint, Loaded, SystemSpec};
use graphcocycle::toeplitz::{
    check_relations, combination_string, dimension_one_scan, fock_check, normalize_expression, parse_expression,
    random_word, word_string, MatrixFamily, Mode, Shown,
};
use graphcocycle::Group;

use crate::report::Report;
use crate::MatrixMode;

/// "name k=v k=v" as a [construct] document.
fn inline_builder(text: &str) -> Result<String> {
    let mut parts = text.split_whitespace();
    let name = parts.next().ok_or_else(|| anyhow!("empty builder"))?;
    let mut doc = format!("schema_version = 1\n[construct]\nbuilder = \"{name}\"\n");
    for p in parts {
        let (k, v) = p.split_once('=').ok_or_else(|| anyhow!("expected key=value, found `{p}`"))?;
        doc.push_str(&format!("{k} = {v}\n"));
    }
    Ok(doc)
}

pub fn load(arg: &str) -> Result<Loaded> {
    let text = if FsPath::new(arg).is_file() {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    } else if arg.ends_with(".toml") {
        bail!("no such file: {arg}");
    } else {
        inline_builder(arg)?
    };
    let spec = SystemSpec::parse(&text).with_context(|| format!("in {arg}"))?;
    Ok(spec.load()?)
}

fn load_system(arg: &str) -> Result<(Loaded, System)> {
    let loaded = load(arg)?;
    let sys = loaded.system().with_context(|| format!("{arg} is not a valid system"))?;
    Ok((loaded, sys))
}

fn names(sys: &System, edges: &[usize]) -> Vec<String> {
    edges.iter().map(|&e| sys.graph().edge_name(e).to_string()).collect()
}

pub fn validate(arg: &str, strong: bool) -> Result<Report> {
    let loaded = load(arg)?;
    let graph = loaded.action.graph();
    let r = validate_graph_cocycle(&loaded.action, &loaded.cocycle, strong)?;
    let identity: Vec<Value> = r
        .identity
        .iter()
        .map(|v| json!({"g": v.g.to_string(), "h": v.h.to_string(), "edge": graph.edge_name(v.x)}))
        .collect();
    let vertex = |list: &[graphcocycle::cocycle::VertexViolation]| -> Vec<Value> {
        list.iter()
            .map(|v| json!({"g": v.g.to_string(), "edge": graph.edge_name(v.e), "vertex": graph.vertex_name(v.vertex)}))
            .collect()
    };
    let mut lines = vec![format!(
        "group {}, {} vertices, {} edges",
        loaded.action.group(),
        graph.num_vertices(),
        graph.num_edges()
    )];
    for v in &r.identity {
        lines.push(format!("cocycle identity fails at g={} h={} edge {}", v.g, v.h, graph.edge_name(v.x)));
    }
    for v in &r.vertex {
        lines.push(format!(
            "vertex condition fails at g={} edge {}: φ(g,e)·s(e) ≠ g·{}",
            v.g,
            graph.edge_name(v.e),
            graph.vertex_name(v.vertex)
        ));
    }
    for v in &r.strong {
        lines.push(format!(
            "strong condition fails at g={} edge {} vertex {}",
            v.g,
            graph.edge_name(v.e),
            graph.vertex_name(v.vertex)
        ));
    }
    let results = json!({
        "identity_violations": identity,
        "vertex_violations": vertex(&r.vertex),
        "strong_violations": vertex(&r.strong),
        "strong_checked": r.strong_checked,
    });
    let fp = loaded.system().ok().map(|s| fingerprint(&s));
    Ok(Report::new("validate", fp, r.is_valid(), results, lines))
}

/// Canonical form of one ℤ-orbit: (c, verified).
fn orbit_canonical(phi: &Cocycle, orbit: &[usize]) -> Result<(String, bool)> {
    let restricted = phi.restrict(orbit)?;
    let (c, psi) = canonical_form_za(&restricted)?;
    let canon = canonical_cocycle(restricted.action().clone(), restricted.target().clone(), c.clone())?;
    Ok((c.to_string(), verify_cohomologous(&restricted, &canon, &psi)))
}

pub fn classify(arg: &str, want_signature: bool) -> Result<Report> {
    let (loaded, sys) = load_system(arg)?;
    let graph = sys.graph();
    let (regular, sources) = graph.classify_vertices();
    let vname = |v: &usize| graph.vertex_name(*v).to_string();
    let orbits = sys.cocycle.action().orbits();
    let mut lines = vec![
        format!("group {}, {} vertices, {} edges", sys.group(), graph.num_vertices(), graph.num_edges()),
        format!("regular vertices: {}", regular.iter().map(vname).collect::<Vec<_>>().join(" ")),
        format!("sources: {}", sources.iter().map(vname).collect::<Vec<_>>().join(" ")),
        format!("edge orbits: {}", orbits.len()),
    ];
    let sig = signature(&sys.cocycle);
    if want_signature {
        if let Err(e) = &sig {
            bail!("signature requested: {e}");
        }
    }
    let mut orbit_rows = Vec::new();
    let mut pass = true;
    for o in &orbits {
        let mut row = json!({"edges": names(&sys, o)});
        if sig.is_ok() {
            let (c, ok) = orbit_canonical(&sys.cocycle, o)?;
            pass &= ok;
            lines.push(format!("orbit {:?}: size {}, canonical ξ_c with c = {c} (verified: {ok})", names(&sys, o), o.len()));
            row["canonical"] = json!(c);
            row["verified"] = json!(ok);
        } else {
            lines.push(format!("orbit {:?}", names(&sys, o)));
        }
        orbit_rows.push(row);
    }
    let mut results = json!({
        "group": sys.group().to_string(),
        "regular": regular.iter().map(vname).collect::<Vec<_>>(),
        "sources": sources.iter().map(vname).collect::<Vec<_>>(),
        "orbits": orbit_rows,
    });
    if let Ok(s) = &sig {
        lines.insert(1, format!("signature: {s}"));
        results["signature"] = json!(s.to_string());
    }
    if let Some((a, b)) = loaded.builder.as_ref().and_then(|b| b.epk()) {
        let e = EpkSystem::new(a, b)?;
        lines.push(format!("epk({a},{b}): d = {}, components ({}, {})", e.d, e.a1, e.b1));
        results["epk"] = json!({"d": e.d, "components": [e.a1, e.b1]});
    }
    Ok(Report::new("classify", Some(fingerprint(&sys)), pass, results, lines))
}

fn restricted(sys: &System, orbit: Option<usize>) -> Result<(Cocycle, Vec<usize>)> {
    match orbit {
        None => Ok((sys.cocycle.clone(), (0..sys.cocycle.size()).collect())),
        Some(i) => {
            let orbits = sys.cocycle.action().orbits();
            let o = orbits.get(i).ok_or_else(|| anyhow!("there are only {} edge orbits", orbits.len()))?;
            Ok((sys.cocycle.restrict(o)?, o.clone()))
        }
    }
}

pub fn compare(a: &str, b: &str, bound: u64, orbit_a: Option<usize>, orbit_b: Option<usize>) -> Result<Report> {
    let (_, sa) = load_system(a)?;
    let (_, sb) = load_system(b)?;
    if sa.group() != sb.group() {
        bail!("incompatible groups {} and {}", sa.group(), sb.group());
    }
    let (pa, ea) = restricted(&sa, orbit_a)?;
    let (pb, eb) = restricted(&sb, orbit_b)?;
    let label_a = |x: usize| sa.graph().edge_name(ea[x]).to_string();
    let label_b = |x: usize| sb.graph().edge_name(eb[x]).to_string();
    let fp = Some(format!("{}:{}", fingerprint(&sa), fingerprint(&sb)));
    let transitive_z =
        *sa.group() == Group::Integers && pa.action().is_transitive() && pb.action().is_transitive();
    if transitive_z {
        return Ok(match transitive_conjugacy(&pa, &pb)? {
            Some(c) => {
                let ok = verify_cohomologous(&c.transported, &pb, &c.witness);
                let theta: Vec<(String, String)> =
                    c.theta.iter().enumerate().map(|(x, &y)| (label_a(x), label_b(y))).collect();
                let psi: Vec<(String, String)> =
                    c.witness.values.iter().enumerate().map(|(y, v)| (label_b(y), v.to_string())).collect();
                let lines = vec![
                    "conjugate".into(),
                    format!("θ: {}", theta.iter().map(|(x, y)| format!("{x}↦{y}")).collect::<Vec<_>>().join(" ")),
                    format!("ψ: {}", psi.iter().map(|(x, v)| format!("{x}:{v}")).collect::<Vec<_>>().join(" ")),
                    format!("witness verified: {ok}"),
                ];
                Report::new(
                    "compare",
                    fp,
                    ok,
                    json!({"status": "conjugate", "theta": theta, "psi": psi, "verified": ok}),
                    lines,
                )
            }
            None => {
                let (s1, s2) = (signature(&pa)?, signature(&pb)?);
                let reason = if pa.size() != pb.size() {
                    format!("orbit sizes differ ({} vs {})", pa.size(), pb.size())
                } else {
                    format!("signatures differ ({s1} vs {s2})")
                };
                Report::new(
                    "compare",
                    fp,
                    false,
                    json!({"status": "not-conjugate", "reason": reason}),
                    vec![format!("not conjugate: {reason}")],
                )
            }
        });
    }
    if pa.size() == pb.size() && **pa.action() == **pb.action() {
        if let Some(psi) = brute_force_cohomologous(&pa, &pb, bound, &SearchOptions::default())? {
            let vals: Vec<(String, String)> =
                psi.values.iter().enumerate().map(|(x, v)| (label_a(x), v.to_string())).collect();
            let lines = vec![
                "cohomologous (θ = identity)".into(),
                format!("ψ: {}", vals.iter().map(|(x, v)| format!("{x}:{v}")).collect::<Vec<_>>().join(" ")),
            ];
            return Ok(Report::new("compare", fp, true, json!({"status": "conjugate", "psi": vals}), lines));
        }
    }
    Ok(Report::new(
        "compare",
        fp,
        false,
        json!({"status": "unknown", "bound": bound}),
        vec![format!("unknown within bound {bound}")],
    ))
}

pub fn decompose(arg: &str) -> Result<Report> {
    let (loaded, sys) = load_system(arg)?;
    if let Some((a, b)) = loaded.builder.as_ref().and_then(|b| b.epk()) {
        let parts = epk_decompose(&EpkSystem::new(a, b)?)?;
        let mut lines = vec![format!("epk({a},{b}) splits into {} orbits", parts.len())];
        let mut rows = Vec::new();
        let mut pass = true;
        for p in &parts {
            pass &= p.verified;
            lines.push(format!(
                "orbit {:?} ≅ epk({},{}) via θ: {} (verified: {})",
                names(&sys, &p.orbit),
                p.target.a,
                p.target.b,
                names(&sys, &p.theta).iter().enumerate().map(|(k, x)| format!("{k}↦{x}")).collect::<Vec<_>>().join(" "),
                p.verified
            ));
            rows.push(json!({
                "orbit": names(&sys, &p.orbit),
                "target": [p.target.a, p.target.b],
                "theta": names(&sys, &p.theta),
                "psi": p.conjugacy.witness.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "verified": p.verified,
            }));
        }
        return Ok(Report::new("decompose", Some(fingerprint(&sys)), pass, json!({"orbits": rows}), lines));
    }
    if *sys.group() != Group::Integers {
        bail!("decomposition into canonical forms needs G = integers, not {}", sys.group());
    }
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    let mut pass = true;
    for o in sys.cocycle.action().orbits() {
        let (c, ok) = orbit_canonical(&sys.cocycle, &o)?;
        pass &= ok;
        lines.push(format!("orbit {:?} ≅ (ℤ_{}, +1, ξ_{c}) (verified: {ok})", names(&sys, &o), o.len()));
        rows.push(json!({"orbit": names(&sys, &o), "size": o.len(), "canonical": c, "verified": ok}));
    }
    Ok(Report::new("decompose", Some(fingerprint(&sys)), pass, json!({"orbits": rows}), lines))
}

pub fn extend(arg: &str, length: usize, radius: u64) -> Result<Report> {
    let (_, sys) = load_system(arg)?;
    let r = check_path_extension(&sys.action, &sys.cocycle, length, radius);
    let mut pass = r.passed();
    let mut lines = vec![format!(
        "paths of length ≤ {length}, |g| ≤ {radius}: {} checks, {} failures",
        r.checked,
        r.failures.len()
    )];
    lines.extend(r.failures.iter().take(10).cloned());
    let mut results = json!({"checked": r.checked, "failures": r.failures});
    if sys.graph().num_vertices() == 1 {
        let w = check_paths_match_words(&sys.action, &sys.cocycle, length, radius)?;
        pass &= w.passed();
        lines.push(format!("paths agree with words: {} checks, {} failures", w.checked, w.failures.len()));
        results["words"] = json!({"checked": w.checked, "failures": w.failures});
    }
    Ok(Report::new("extend", Some(fingerprint(&sys)), pass, results, lines))
}

pub fn normalize(arg: &str, expr: &str) -> Result<Report> {
    let (_, sys) = load_system(arg)?;
    let terms = parse_expression(&sys, expr)?;
    let normal = normalize_expression(&sys, &terms);
    let text = combination_string(&sys, &normal);
    let rows: Vec<Value> = normal
        .terms()
        .map(|(m, c)| json!({"monomial": Shown(m, &sys).to_string(), "coefficient": coeff_string(c)}))
        .collect();
    Ok(Report::new(
        "normalize",
        Some(fingerprint(&sys)),
        true,
        json!({"input": expr, "normal_form": text, "terms": rows}),
        vec![text],
    ))
}

pub fn fock(arg: &str, expr: &str, length: usize, radius: u64) -> Result<Report> {
    let (_, sys) = load_system(arg)?;
    let terms = parse_expression(&sys, expr)?;
    let r = fock_check(&sys, &terms, length, radius);
    let normal = combination_string(&sys, &normalize_expression(&sys, &terms));
    let mut lines = vec![
        format!("normal form: {normal}"),
        format!("basis vectors with |μ| ≤ {length}, |g| ≤ {radius}: {}", r.checked),
    ];
    lines.extend(r.mismatches.iter().take(10).cloned());
    Ok(Report::new(
        "fock",
        Some(fingerprint(&sys)),
        r.passed(),
        json!({"normal_form": normal, "checked": r.checked, "mismatches": r.mismatches}),
        lines,
    ))
}

pub fn checkmatrices(arg: &str, file: Option<&FsPath>, mode: MatrixMode, tol: f64, scan: Option<usize>) -> Result<Report> {
    let (_, sys) = load_system(arg)?;
    let mode = match mode {
        MatrixMode::Toeplitz => Mode::Toeplitz,
        MatrixMode::Ck => Mode::CuntzKrieger,
    };
    let fp = Some(fingerprint(&sys));
    match (file, scan) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let fam = MatrixFamily::from_json(&sys, &text)?;
            let r = check_relations(&fam, &sys, mode, tol)?;
            let mut lines = vec![format!(
                "{:?} relations at tolerance {tol:e}: max deviation {:.3e}",
                mode,
                r.max_deviation()
            )];
            for c in r.violations() {
                lines.push(format!("violated: {} (deviation {:.3e})", c.relation, c.deviation));
            }
            let checks: Vec<Value> =
                r.checks.iter().map(|c| json!({"relation": c.relation, "deviation": c.deviation})).collect();
            Ok(Report::new(
                "checkmatrices",
                fp,
                r.passed(),
                json!({"mode": format!("{mode:?}"), "tolerance": tol, "dimension": fam.dim, "max_deviation": r.max_deviation(), "checks": checks}),
                lines,
            ))
        }
        (None, Some(steps)) => {
            let r = dimension_one_scan(&sys, mode, steps)?;
            let found = r.min_deviation <= tol;
            let lines = vec![format!(
                "1×1 scan ({} families, {steps} steps): least max deviation {:.3e} at tolerance {tol:e}; {}",
                r.evaluated,
                r.min_deviation,
                if found { "a family exists" } else { "no family" }
            )];
            Ok(Report::new(
                "checkmatrices",
                fp,
                found,
                json!({"mode": format!("{mode:?}"), "tolerance": tol, "scan_steps": steps, "evaluated": r.evaluated, "min_deviation": r.min_deviation}),
                lines,
            ))
        }
        _ => bail!("give either a matrix file or --scan"),
    }
}

pub fn selftest(arg: &str, ball: u64, trials: usize, words: usize, seed: u64) -> Result<Report> {
    let (_, sys) = load_system(arg)?;
    let alg = Algebra::from_system(&sys);
    let small = ball.min(3);
    let axioms = check_axioms(&alg, trials, seed, 5, ball);
    let jy = check_jy(&alg, small, small);
    let cov = check_covariance(&alg, ball);
    let ep = check_ep_isometry(&alg, ball);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let group_ball = sys.group().ball(ball);
    let mut fock_failures = Vec::new();
    for _ in 0..words {
        let w = random_word(&sys, &mut rng, 6, &group_ball);
        let r = fock_check(&sys, &[(1, w.clone())], 6, small);
        if !r.passed() {
            fock_failures.push(word_string(&sys, &w));
        }
    }
    let failed_axioms: Vec<&str> = axioms.failures.iter().filter(|(_, &n)| n > 0).map(|(k, _)| *k).collect();
    let lines = vec![
        format!("axioms: {} trials, failing: {:?}", axioms.trials, failed_axioms),
        format!("finite-rank identity: {} checks, {} failures", jy.checked, jy.failures.len()),
        format!("covariance: {} checks, {} failures", cov.checked, cov.failures.len()),
        format!("isometry: {} checks, {} failures", ep.checked, ep.failures.len()),
        format!("fock: {words} random words, {} failures", fock_failures.len()),
    ];
    let pass = axioms.passed() && jy.passed() && cov.passed() && ep.passed() && fock_failures.is_empty();
    let results = json!({
        "seed": seed,
        "axioms": {"trials": axioms.trials, "failures": axioms.failures},
        "jy": {"checked": jy.checked, "failures": jy.failures},
        "covariance": {"checked": cov.checked, "failures": cov.failures},
        "isometry": {"checked": ep.checked, "failures": ep.failures},
        "fock": {"words": words, "failures": fock_failures},
    });
    Ok(Report::new("selftest", Some(fingerprint(&sys)), pass, results, lines))
}

pub fn build(builder: &str, params: &[String], compact: bool) -> Result<Report> {
    let doc = inline_builder(&std::iter::once(builder.to_string()).chain(params.iter().cloned()).collect::<Vec<_>>().join(" "))?;
    let spec = SystemSpec::parse(&doc)?;
    let sys = spec.load()?.system()?;
    let toml = if compact { spec.to_toml() } else { SystemSpec::from_system(&sys).to_toml() };
    let mut r = Report::new("build", Some(fingerprint(&sys)), true, json!({"toml": toml}), Vec::new());
    r.raw = Some(toml);
    Ok(r)
}
