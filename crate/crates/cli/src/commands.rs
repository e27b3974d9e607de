use crate::{AdjointArgs, Cli, Command, ComplexArgs, DegreeArgs, Export, FunctorArgs, HomArgs, Lemma, PolyArgs};
use pcsp_core::adjoint::{check_adjoint, min_odd_k_omega_hom, pair_for, standard_pairs, AdjointReport};
use pcsp_core::circle::{auto_circle_map, circular_clique_map, degree_vectors, compute_bound_n, square_free_map, CircleKind, CircleMap};
use pcsp_core::complex::box_complex;
use pcsp_core::functor::{apply_pipeline, parse_pipeline, FunctorTag};
use pcsp_core::graph::{is_connected, parse_spec, to_text};
use pcsp_core::hom::{chromatic_number, clique_number, find_hom, hom_iter, optimal_coloring, shortest_odd_closed_walk};
use pcsp_core::minion::{enumerate_polymorphisms, essential_coords, random_polymorphisms, z_leq_n_member, Polymorphism};
use pcsp_core::verify::{
    chi_delta_formula_check, clique_sandwich, delta_delta_k4_report, delta_sym_equivalence,
    min_delta_iterations_to_3col, poljak_rodl_certificates, verify_reduction_conditions, InstancePool,
    ReductionSpec, Status, DEFAULT_DELTA_ITER_CAP,
};
use pcsp_core::{Digraph, Error, Exec};
use serde::Deserialize;
use serde_json::{json, Value};
use std::fmt::Write;

pub type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

/// What a command produced: the text form, the JSON payload and the verdict.
pub struct Output {
    pub command: &'static str,
    pub ok: bool,
    pub partial: bool,
    pub text: String,
    pub result: Value,
}

impl Output {
    fn new(command: &'static str, ok: bool, text: String, result: Value) -> Self {
        Output {
            command,
            ok,
            partial: false,
            text,
            result,
        }
    }

    pub fn json(&self) -> Value {
        let status = if self.partial {
            "partial"
        } else if self.ok {
            "pass"
        } else {
            "fail"
        };
        json!({ "command": self.command, "status": status, "result": self.result })
    }
}

fn status_ok(s: Status) -> bool {
    s == Status::Pass
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Partial => "partial",
    }
}

fn list(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn ilist(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    let exec = Exec::default();
    match &cli.command {
        Command::Hom(a) => hom(a),
        Command::Chrom(a) => chrom(&a.graph),
        Command::Poly(a) => poly(a, cli.seed),
        Command::Degrees(a) => degrees(a, cli.seed, exec),
        Command::Complex(a) => complex(a),
        Command::Functor(a) => functor(a),
        Command::AdjointCheck(a) => adjoint(a, cli.seed, exec),
        Command::Verify { lemma } => verify(lemma, cli.seed, exec),
    }
}

fn hom(a: &HomArgs) -> CliResult<Output> {
    let h = parse_spec(&a.from)?;
    let g = parse_spec(&a.to)?;
    if a.all {
        let mut homs: Vec<Vec<u32>> = hom_iter(&h, &g)?.take(a.cap.saturating_add(1)).collect();
        let truncated = homs.len() > a.cap;
        homs.truncate(a.cap);
        let mut text = format!("{} homomorphism(s){}\n", homs.len(), if truncated { " (truncated)" } else { "" });
        for m in &homs {
            writeln!(text, "{}", list(m))?;
        }
        let result = json!({ "exists": !homs.is_empty(), "count": homs.len(), "truncated": truncated, "homs": homs });
        return Ok(Output::new("hom", !homs.is_empty(), text, result));
    }
    let w = find_hom(&h, &g)?;
    let text = match &w {
        Some(m) => format!("yes\n{}\n", list(m)),
        None => "no\n".to_string(),
    };
    let result = json!({ "exists": w.is_some(), "witness": w });
    Ok(Output::new("hom", w.is_some(), text, result))
}

fn chrom(spec: &str) -> CliResult<Output> {
    let g = parse_spec(spec)?;
    match optimal_coloring(&g) {
        Ok(col) => {
            let chi = chromatic_number(&g)?;
            let omega = clique_number(&g);
            let text = format!("{chi}\ncolouring: {}\n", list(&col));
            let result = json!({ "chromatic_number": chi, "clique_number": omega, "coloring": col });
            Ok(Output::new("chrom", true, text, result))
        }
        Err(Error::NoColoring) => Ok(Output::new(
            "chrom",
            false,
            "no proper colouring: the graph has a loop\n".into(),
            json!({ "chromatic_number": null, "clique_number": null, "coloring": null }),
        )),
        Err(e) => Err(e.into()),
    }
}

fn collect_polys<'g>(
    h: &'g Digraph,
    g: &'g Digraph,
    arity: usize,
    random: Option<usize>,
    cap: usize,
    seed: u64,
) -> CliResult<(Vec<Polymorphism<'g>>, bool)> {
    Ok(match random {
        Some(n) => (random_polymorphisms(h, g, arity, n, seed)?, false),
        None => {
            let mut fs: Vec<_> = enumerate_polymorphisms(h, g, arity)?.take(cap.saturating_add(1)).collect();
            let truncated = fs.len() > cap;
            fs.truncate(cap);
            (fs, truncated)
        }
    })
}

fn poly(a: &PolyArgs, seed: u64) -> CliResult<Output> {
    let h = parse_spec(&a.from)?;
    let g = parse_spec(&a.to)?;
    let (fs, truncated) = collect_polys(&h, &g, a.arity, a.random, a.cap, seed)?;
    let mut text = format!(
        "{} polymorphism(s) of arity {}{}\n",
        fs.len(),
        a.arity,
        if truncated { " (truncated)" } else { "" }
    );
    let shown: Vec<&Polymorphism> = if a.all || a.random.is_some() { fs.iter().collect() } else { fs.iter().take(1).collect() };
    let mut rows = Vec::new();
    for f in shown {
        let table = f.table().expect("enumerated tables").to_vec();
        let essential = essential_coords(f)?;
        writeln!(
            text,
            "table: {}\nessential: {}",
            list(&table),
            essential.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
        )?;
        rows.push(json!({ "table": table, "essential": essential }));
    }
    let result = json!({ "arity": a.arity, "count": fs.len(), "truncated": truncated, "sampled": a.random.is_some(), "polymorphisms": rows });
    Ok(Output::new("poly", !fs.is_empty(), text, result))
}

fn circle_map_for(g: &Digraph, how: &str) -> CliResult<CircleMap> {
    Ok(match how {
        "auto" => auto_circle_map(g)?,
        "square-free" => square_free_map(g)?,
        pq => {
            let (p, q) = pq
                .split_once(':')
                .ok_or_else(|| Error::InvalidParameter(format!("unknown map `{pq}`")))?;
            let base = circular_clique_map(p.parse()?, q.parse()?)?;
            let h = find_hom(g, base.graph())?
                .ok_or_else(|| Error::InvalidInput(format!("graph does not map to K{p}:{q}")))?;
            base.pull_back(g, &h)?
        }
    })
}

fn degrees(a: &DegreeArgs, seed: u64, exec: Exec) -> CliResult<Output> {
    let h = parse_spec(&a.from)?;
    let g = parse_spec(&a.to)?;
    let s = circle_map_for(&g, &a.map)?;
    let r0 = shortest_odd_closed_walk(&h)?;
    let bound = compute_bound_n(&h, &g, &s, exec)?;
    let (fs, truncated) = collect_polys(&h, &g, a.arity, a.random, a.cap, seed)?;
    let vs = degree_vectors(exec, &fs, &r0, &s)?;
    let odd = vs.iter().all(|c| c.coefficient_sum().rem_euclid(2) == 1);
    let within = vs.iter().all(|c| z_leq_n_member(c, bound));
    let map = match s.kind() {
        CircleKind::CircularClique { p, q } => format!("K{p}:{q}"),
        CircleKind::SquareFree => "square-free".into(),
    };
    let mut text = format!(
        "map: {map}\nodd walk length: {}\nbound N: {bound}\npolymorphisms: {}{}\nall sums odd: {odd}\nall within N: {within}\n",
        r0.len(),
        fs.len(),
        if truncated { " (truncated)" } else { "" }
    );
    if a.all {
        for c in &vs {
            writeln!(text, "{}", ilist(&c.0))?;
        }
    }
    let rows: Vec<Value> = vs.iter().map(|c| json!({ "c": c.0, "sum": c.coefficient_sum(), "abs_sum": c.abs_sum() })).collect();
    let result = json!({
        "map": map,
        "odd_walk_length": r0.len(),
        "bound_n": bound,
        "count": fs.len(),
        "truncated": truncated,
        "all_odd": odd,
        "all_within_bound": within,
        "vectors": if a.all { Value::Array(rows) } else { Value::Null },
    });
    Ok(Output::new("degrees", odd && within, text, result))
}

fn components(g: &Digraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s as u32];
        seen[s] = true;
        let mut size = 0;
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in g.out_neighbors(v).iter().chain(g.in_neighbors(v)) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    sizes
}

fn complex(a: &ComplexArgs) -> CliResult<Output> {
    let g = parse_spec(&a.graph)?;
    let bx = box_complex(&g)?;
    if let Some(export) = a.export {
        let body = match export {
            Export::Json => serde_json::to_string_pretty(&bx.record())? + "\n",
            Export::Off => bx.to_off(),
        };
        if let Some(path) = &a.out {
            std::fs::write(path, &body)?;
            let text = format!("wrote {path}\n");
            return Ok(Output::new("complex", true, text, json!({ "written": path })));
        }
        return Ok(Output::new("complex", true, body, json!(bx.record())));
    }
    let skeleton = bx.one_skeleton();
    let comps = components(&skeleton);
    let mut text = format!(
        "vertices: {}\nmaximal faces: {}\nfree: {}\n1-skeleton components: {}\n",
        bx.vertices().len(),
        bx.maximal_faces().len(),
        bx.is_free(),
        comps.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
    );
    let show = |face: &[usize]| face.iter().map(|&i| format!("{}>{}", bx.vertices()[i].0, bx.vertices()[i].1)).collect::<Vec<_>>().join(" ");
    for face in bx.maximal_faces() {
        writeln!(text, "  {}", show(face))?;
    }
    let mut result = json!({
        "vertices": bx.vertices().len(),
        "maximal_faces": bx.maximal_faces().len(),
        "free": bx.is_free(),
        "skeleton_components": comps,
        "complex": bx.record(),
    });
    if a.expand {
        let faces = bx.all_faces(a.cap)?;
        writeln!(text, "all faces: {}", faces.len())?;
        for face in &faces {
            writeln!(text, "  {}", show(face))?;
        }
        result["faces"] = json!(faces);
    }
    Ok(Output::new("complex", true, text, result))
}

fn functor(a: &FunctorArgs) -> CliResult<Output> {
    let g = parse_spec(&a.graph)?;
    let steps = parse_pipeline(&a.apply)?;
    let out = apply_pipeline(&g, &steps)?;
    let body = to_text(&out);
    let summary = json!({
        "pipeline": steps.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "vertex_count": out.vertex_count(),
        "arc_count": out.arc_count(),
        "undirected": out.is_undirected(),
        "connected": is_connected(&out),
    });
    match &a.out {
        Some(path) => {
            std::fs::write(path, &body)?;
            let text = format!("{} vertices, {} arcs written to {path}\n", out.vertex_count(), out.arc_count());
            Ok(Output::new("functor", true, text, summary))
        }
        None => {
            let mut result = summary;
            result["graph"] = json!(out.record());
            Ok(Output::new("functor", true, body, result))
        }
    }
}

fn adjoint_text(r: &AdjointReport) -> String {
    let mut t = format!(
        "{}: {} ({} checked, {} skipped, {} with both sides true, {} counterexample(s))\n",
        r.pair,
        if r.passed() { "pass" } else { "fail" },
        r.checked,
        r.skipped,
        r.both_hold,
        r.counterexamples.len()
    );
    for c in r.counterexamples.iter().take(5) {
        let _ = writeln!(t, "  sample {}: {}: {}", c.sample, c.check, c.detail);
    }
    t
}

fn adjoint_reports(left: Option<&str>, samples: usize, max: Option<usize>, seed: u64, exec: Exec) -> CliResult<Vec<AdjointReport>> {
    match left {
        Some(tag) => {
            let step: FunctorTag = tag.parse()?;
            let default_max = if matches!(step, FunctorTag::WalkPower(_)) { 4 } else { 5 };
            let pair = pair_for(&step)?;
            Ok(vec![check_adjoint(pair.as_ref(), samples, max.unwrap_or(default_max), seed, exec)])
        }
        None => Ok(standard_pairs()
            .into_iter()
            .map(|(pair, m)| check_adjoint(pair.as_ref(), samples, max.unwrap_or(m), seed, exec))
            .collect()),
    }
}

fn adjoint(a: &AdjointArgs, seed: u64, exec: Exec) -> CliResult<Output> {
    let reports = adjoint_reports(a.left.as_deref(), a.samples, a.max_vertices, seed, exec)?;
    let ok = reports.iter().all(|r| r.passed());
    let text = reports.iter().map(adjoint_text).collect();
    Ok(Output::new("adjoint-check", ok, text, json!({ "reports": reports })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ReductionFile {
    pipeline: String,
    right: Option<String>,
    h1: String,
    g1: String,
    h2: String,
    g2: String,
}

fn verify(lemma: &Lemma, seed: u64, exec: Exec) -> CliResult<Output> {
    let (ok, text, result, partial) = match lemma {
        Lemma::PoljakRodl { n, exhaustive } => {
            let r = poljak_rodl_certificates(*n, *exhaustive)?;
            let text = format!(
                "poljak-rodl n={} b={}: {}\nclique embedding valid: {}\ncolouring valid: {}\nequivalence: {}\n",
                r.n,
                r.b,
                status_word(r.status),
                r.embedding_valid,
                r.coloring_valid,
                r.equivalence.map_or("not checked".into(), |e| e.to_string())
            );
            (status_ok(r.status), text, json!(r), false)
        }
        Lemma::DeltaDeltaK4 => {
            let r = delta_delta_k4_report()?;
            let text = format!(
                "delta-delta-k4: {}\nvertices: {}\ncolouring valid: {}\nchi(delta K4): {}\nleast iterations to 3 colours: {}\n",
                status_word(r.status),
                r.vertices,
                r.coloring_valid,
                r.chi_delta_k4,
                r.min_iterations.map_or("none".into(), |i| i.to_string())
            );
            (status_ok(r.status), text, json!(r), false)
        }
        Lemma::ChiDelta { graph, n_max } => {
            let r = chi_delta_formula_check(&parse_spec(graph)?, *n_max)?;
            let text = format!(
                "chi-delta: {}\nchi(G) = {}\nchi(delta G) = {}\nformula: {}\n",
                status_word(r.status),
                r.chi,
                r.chi_delta,
                r.formula.map_or("none".into(), |n| n.to_string())
            );
            (status_ok(r.status), text, json!(r), false)
        }
        Lemma::CliqueSandwich { n } => {
            let r = clique_sandwich(*n)?;
            let text = format!(
                "clique-sandwich n={}: {}\nK{} -> deltaR K{}: {}\ndeltaR K{} -> K{}: {}\n",
                r.n,
                status_word(r.status),
                r.b,
                r.n,
                r.lower_valid,
                r.n,
                1u64 << r.n,
                r.upper_valid
            );
            (status_ok(r.status), text, json!(r), false)
        }
        Lemma::MinDeltaIter { graph, cap } => {
            let r = min_delta_iterations_to_3col(&parse_spec(graph)?, *cap, DEFAULT_DELTA_ITER_CAP)?;
            let text = match r.i {
                Some(i) => format!("{i}\n"),
                None => format!("none ({})\n", r.note.clone().unwrap_or_default()),
            };
            (r.i.is_some(), text, json!(r), false)
        }
        Lemma::Adjoint { pair, samples, max_vertices } => {
            let reports = adjoint_reports(Some(pair), *samples, *max_vertices, seed, exec)?;
            let ok = reports.iter().all(|r| r.passed());
            (ok, reports.iter().map(adjoint_text).collect(), json!({ "reports": reports }), false)
        }
        Lemma::Reduction { spec, max_vertices, random } => {
            let path = spec.strip_prefix('@').unwrap_or(spec);
            let file: ReductionFile = toml::from_str(&std::fs::read_to_string(path)?)?;
            let right = file.right.as_deref().map(parse_pipeline).transpose()?;
            let rs = ReductionSpec::new(
                parse_pipeline(&file.pipeline)?,
                parse_spec(&file.h1)?,
                parse_spec(&file.g1)?,
                parse_spec(&file.h2)?,
                parse_spec(&file.g2)?,
            )?;
            let pool = InstancePool {
                max_vertices: *max_vertices,
                random: *random,
                seed,
            };
            let r = verify_reduction_conditions(&rs, right.as_deref(), &pool, exec)?;
            let show = |c: Option<bool>| c.map_or("unknown (cap)".to_string(), |b| b.to_string());
            let text = format!(
                "reduction {} (right adjoint {}): {}\nH1 -> Gamma H2: {}\nGamma G2 -> G1: {}\ninstances: {} checked, {} skipped\ncompleteness violations: {}\nsoundness violations: {}\n",
                r.pipeline,
                r.right_adjoint,
                status_word(r.status),
                show(r.h1_to_gamma_h2),
                show(r.gamma_g2_to_g1),
                r.instances,
                r.skipped,
                r.completeness_violations.len(),
                r.soundness_violations.len()
            );
            (status_ok(r.status), text, json!(r), r.status == Status::Partial)
        }
        Lemma::DeltaSym { max_vertices, n_max } => {
            let r = delta_sym_equivalence(*max_vertices, *n_max, exec)?;
            let text = format!("delta-sym: {} ({} graphs, {} mismatch(es))\n", status_word(r.status), r.graphs, r.mismatches.len());
            (status_ok(r.status), text, json!(r), false)
        }
        Lemma::MinOmega { from, to, cap_k, cap } => {
            let r = min_odd_k_omega_hom(&parse_spec(from)?, &parse_spec(to)?, *cap_k, *cap as u128)?;
            let mut text = match r.k {
                Some(k) => format!("{k}\n"),
                None => format!("none within cap k <= {}\n", r.cap_k),
            };
            for a in &r.attempts {
                let what = a.hom.map_or("over size cap".to_string(), |b| if b { "maps".into() } else { "does not map".into() });
                writeln!(text, "  k={}: {what}", a.k)?;
            }
            (r.k.is_some(), text, json!(r), false)
        }
    };
    let mut out = Output::new("verify", ok, text, result);
    out.partial = partial;
    Ok(out)
}
