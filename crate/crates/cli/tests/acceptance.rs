//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use pcsp_core::adjoint::{check_adjoint, sample_pair, standard_pairs};
use pcsp_core::circle::{
    auto_circle_map, circular_clique_map, compute_bound_n, coordinate_loop, degree_vector, diagonal_degree,
    square_free_map, CircleMap, Turn,
};
use pcsp_core::combinat::central_binomial_b;
use pcsp_core::complex::{box_complex, generator_loop};
use pcsp_core::functor::{arc_digraph, arc_right_adjoint, sub, sym};
use pcsp_core::graph::{circular_clique, clique, connected_graphs, cycle, petersen, tensor_power};
use pcsp_core::hom::{chromatic_number, find_hom, hom_equivalent, is_hom, shortest_odd_closed_walk};
use pcsp_core::minion::{
    enumerate_polymorphisms, essential_coords, linear_minor, minor, ones_switch_function, random_polymorphisms,
    Polymorphism,
};
use pcsp_core::verify::{
    chi_delta_formula_check, clique_sandwich, delta_delta_k4_coloring, delta_delta_k4_report,
    min_delta_iterations_to_3col, poljak_rodl_certificates, Status, DEFAULT_DELTA_ITER_CAP,
};
use pcsp_core::{Digraph, Exec};
use std::process::Command;
use std::time::{Duration, Instant};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn adjunctions() -> Check {
    let mut lines = Vec::new();
    for (pair, max_v) in standard_pairs() {
        let r = check_adjoint(pair.as_ref(), 100, max_v, 0, Exec::default());
        ensure(r.passed(), || format!("{}: {:?}", r.pair, r.counterexamples.first()))?;
        ensure(r.checked == 100 && r.skipped == 0, || format!("{}: {} skipped", r.pair, r.skipped))?;
        lines.push(format!("{} ({} both)", r.pair, r.both_hold));
    }
    Ok(format!("{} pairs x 100 samples: {}", lines.len(), lines.join(", ")))
}

fn poljak_rodl() -> Check {
    let expected = [(2, 2u32), (3, 3), (4, 6), (5, 10)];
    for (n, b) in expected {
        ensure(central_binomial_b(n).unwrap() == b.into(), || format!("b({n}) != {b}"))?;
    }
    for n in 2..=4 {
        let r = ok(poljak_rodl_certificates(n, n <= 3))?;
        let s = sub(&ok(arc_right_adjoint(&ok(clique(n))?))?);
        let kb = ok(clique(r.b))?;
        ensure(is_hom(&kb, &s, &r.clique_embedding), || format!("embedding for n={n}"))?;
        ensure(is_hom(&s, &kb, &r.coloring), || format!("colouring for n={n}"))?;
        if n <= 3 {
            ensure(r.equivalence == Some(true), || format!("equivalence flag for n={n}"))?;
            ensure(ok(hom_equivalent(&s, &kb))?, || format!("equivalence for n={n}"))?;
        }
    }
    Ok("certificates n=2..4, equivalence n=2,3, b = 2,3,6,10".into())
}

fn delta_delta() -> Check {
    let k4 = ok(clique(4))?;
    let dd = ok(arc_digraph(&ok(arc_digraph(&k4))?))?;
    let map = ok(delta_delta_k4_coloring())?;
    ensure(dd.vertex_count() == 36 && is_hom(&dd, &ok(clique(3))?, &map), || "colouring invalid".into())?;
    let chi = ok(chromatic_number(&ok(arc_digraph(&sym(&k4)))?))?;
    ensure(chi == 4, || format!("chi(delta sym K4) = {chi}"))?;
    let it = ok(min_delta_iterations_to_3col(&k4, 3, DEFAULT_DELTA_ITER_CAP))?;
    ensure(it.i == Some(2), || format!("iterations {:?}", it.i))?;
    let r = ok(delta_delta_k4_report())?;
    ensure(r.status == Status::Pass, || "report status".into())?;
    Ok("36-vertex colouring valid, chi(delta K4) = 4, two iterations".into())
}

fn components(g: &Digraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s as u32];
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
    sizes.sort();
    sizes
}

fn is_union_of_cycles(g: &Digraph, sizes: &[usize]) -> bool {
    (0..g.vertex_count() as u32).all(|v| g.out_neighbors(v).len() == 2) && components(g) == sizes
}

fn box_shapes() -> Check {
    let c5 = ok(box_complex(&ok(cycle(5))?))?;
    ensure(c5.vertices().len() == 10 && is_union_of_cycles(&c5.one_skeleton(), &[10]), || "C5".into())?;
    ensure(c5.maximal_faces().iter().all(|f| f.len() == 2), || "C5 faces".into())?;
    let c6 = ok(box_complex(&ok(cycle(6))?))?;
    ensure(is_union_of_cycles(&c6.one_skeleton(), &[6, 6]), || "C6".into())?;
    ensure(c6.maximal_faces().iter().all(|f| f.len() == 2), || "C6 faces".into())?;
    let k4 = ok(box_complex(&ok(clique(4))?))?;
    ensure(k4.vertices().len() == 12 && k4.maximal_faces().len() == 14, || {
        format!("K4: {} vertices, {} faces", k4.vertices().len(), k4.maximal_faces().len())
    })?;
    let mut graphs: Vec<Digraph> = (1..=5).flat_map(|n| connected_graphs(n).unwrap().to_vec()).collect();
    graphs.push(petersen());
    for i in 0..100 {
        let (a, b) = sample_pair(0, i, 8, false);
        graphs.extend([a, b]);
    }
    for g in &graphs {
        let bx = ok(box_complex(g))?;
        let inv = bx.involution();
        let free = (0..inv.len()).all(|i| inv[inv[i]] == i && inv[i] != i)
            && bx.maximal_faces().iter().all(|f| f.iter().all(|i| !f.contains(&inv[*i])));
        ensure(free && bx.is_free(), || format!("not free: {g:?}"))?;
    }
    Ok(format!("C5, C6, K4 shapes exact; {} loopless graphs free", graphs.len()))
}

fn frac(t: Turn) -> Turn {
    t - t.floor()
}

/// Signed crossings of a ray avoiding all angles, moving along shorter arcs.
fn ray_crossings(angles: &[Turn]) -> i64 {
    let mut distinct: Vec<Turn> = angles.iter().map(|&a| frac(a)).collect();
    distinct.sort();
    distinct.dedup();
    if distinct.len() < 2 {
        return 0;
    }
    let ray = (distinct[0] + distinct[1]) / Turn::from_integer(2);
    let half = Turn::new(1, 2);
    let mut count = 0;
    for t in 0..angles.len() {
        let x = frac(angles[t]);
        let up = frac(angles[(t + 1) % angles.len()] - x);
        assert_ne!(up, half);
        if up < half {
            count += (frac(ray - x) < up) as i64;
        } else {
            count -= (frac(x - ray) < Turn::from_integer(1) - up) as i64;
        }
    }
    count
}

struct DegreeSuite<'a> {
    s: CircleMap,
    r0: pcsp_core::hom::OddWalk,
    gen: Vec<(u32, u32)>,
    bound: i64,
    loops: usize,
    _t: &'a Digraph,
}

impl DegreeSuite<'_> {
    /// Degree vector through the library, cross-checked loop by loop against ray crossings.
    fn degree(&mut self, f: &Polymorphism<'_>) -> Result<pcsp_core::minion::LinearFn, String> {
        let c = ok(degree_vector(f, &self.r0, &self.s))?;
        for i in 0..f.arity() {
            let lp = coordinate_loop(f, &self.gen, i);
            let angles: Vec<Turn> = lp.iter().map(|&(u, v)| self.s.angle(u, v).unwrap()).collect();
            ensure(ray_crossings(&angles) == c.0[i], || format!("ray crossings disagree on {f:?}"))?;
            self.loops += 1;
        }
        Ok(c)
    }

    fn check(&mut self, f: &Polymorphism<'_>) -> Result<(), String> {
        let c = self.degree(f)?;
        ensure(c.coefficient_sum().rem_euclid(2) == 1, || format!("even sum {c:?}"))?;
        ensure(c.abs_sum() <= self.bound, || format!("{c:?} exceeds N = {}", self.bound))?;
        ensure(ok(diagonal_degree(f, &self.r0, &self.s))? == c.coefficient_sum(), || "diagonal".into())?;
        let n = f.arity();
        for m in 1..=n {
            for code in 0..m.pow(n as u32) {
                let pi: Vec<usize> = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
                let g = ok(minor(f, &pi, m))?;
                ensure(self.degree(&g)? == ok(linear_minor(&c, &pi, m))?, || format!("minor {pi:?} of {f:?}"))?;
            }
        }
        Ok(())
    }
}

fn degree_vectors() -> Check {
    let c5 = ok(cycle(5))?;
    let mut summary = Vec::new();
    for t in [ok(clique(3))?, ok(cycle(5))?] {
        let s = ok(auto_circle_map(&t))?;
        let bound = ok(compute_bound_n(&c5, &t, &s, Exec::default()))?;
        let mut suite = DegreeSuite {
            r0: ok(shortest_odd_closed_walk(&c5))?,
            gen: ok(generator_loop(&c5))?,
            s,
            bound,
            loops: 0,
            _t: &t,
        };
        let mut count = 0;
        for arity in 1..=2 {
            for f in ok(enumerate_polymorphisms(&c5, &t, arity))? {
                suite.check(&f)?;
                count += 1;
            }
        }
        let samples = ok(random_polymorphisms(&c5, &t, 3, 200, 0))?;
        ensure(samples.len() == 200, || "fewer than 200 samples".into())?;
        for f in &samples {
            suite.check(f)?;
        }
        summary.push(format!(
            "C5->{}: {count} exhaustive + 200 sampled, N = {bound}, {} loops cross-checked",
            if t.vertex_count() == 3 { "K3" } else { "C5" },
            suite.loops
        ));
    }
    Ok(summary.join("; "))
}

/// The angles of every maximal face lie in an open half circle.
fn spans_ok(s: &CircleMap) -> bool {
    let g = s.graph();
    let bx = box_complex(g).unwrap();
    bx.maximal_faces().iter().all(|face| {
        let angles: Vec<Turn> = face.iter().map(|&i| s.angle(bx.vertices()[i].0, bx.vertices()[i].1).unwrap()).collect();
        angles.iter().any(|&a| angles.iter().all(|&b| frac(b - a) < Turn::new(1, 2)))
    })
}

fn antipodal(s: &CircleMap) -> bool {
    s.graph()
        .arcs()
        .iter()
        .all(|&(u, v)| frac(s.angle(u, v).unwrap() + Turn::new(1, 2)) == s.angle(v, u).unwrap())
}

fn circle_maps() -> Check {
    for (p, q) in [(3, 1), (5, 2), (7, 2), (11, 3)] {
        let s = ok(circular_clique_map(p, q))?;
        ensure(spans_ok(&s) && antipodal(&s) && s.is_antipodal(), || format!("K{p}/{q}"))?;
    }
    for g in [ok(cycle(5))?, ok(cycle(7))?, petersen()] {
        let s = ok(square_free_map(&g))?;
        ensure(antipodal(&s) && s.is_antipodal(), || format!("square-free map on {g:?}"))?;
    }
    ensure(square_free_map(&ok(clique(4))?).is_err(), || "K4 accepted".into())?;
    Ok("K3/1, K5/2, K7/2, K11/3 valid; C5, C7, Petersen built; K4 rejected".into())
}

fn sandwich_and_chi() -> Check {
    for n in 1..=4 {
        let r = ok(clique_sandwich(n))?;
        let dr = ok(arc_right_adjoint(&ok(clique(n))?))?;
        ensure(is_hom(&ok(clique(r.b))?, &dr, &r.lower), || format!("lower n={n}"))?;
        ensure(is_hom(&dr, &ok(clique(1 << n))?, &r.upper), || format!("upper n={n}"))?;
    }
    let mut out = Vec::new();
    for (name, g, expect) in [("C5", ok(cycle(5))?, 3), ("K4", ok(clique(4))?, 4), ("K7", ok(clique(7))?, 5)] {
        let r = ok(chi_delta_formula_check(&g, 10))?;
        ensure(r.status == Status::Pass && r.chi_delta == expect, || format!("{name}: {r:?}"))?;
        out.push(format!("chi(delta {name}) = {}", r.chi_delta));
    }
    Ok(format!("sandwich n=1..4; {}", out.join(", ")))
}

fn circular_order() -> Check {
    let fracs: Vec<(usize, usize)> = (2..=8).flat_map(|p| (1..=p / 2).map(move |q| (p, q))).collect();
    let graphs: Vec<Digraph> = fracs.iter().map(|&(p, q)| circular_clique(p, q).unwrap()).collect();
    let mut pairs = 0;
    for (i, &(p, q)) in fracs.iter().enumerate() {
        for (j, &(p2, q2)) in fracs.iter().enumerate() {
            let hom = ok(find_hom(&graphs[i], &graphs[j]))?.is_some();
            ensure(hom == (p * q2 <= p2 * q), || format!("K{p}/{q} -> K{p2}/{q2} is {hom}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} ordered pairs with p <= 8"))
}

fn essential_arity() -> Check {
    let k3 = ok(clique(3))?;
    let mut total = 0;
    for n in 1..=3 {
        for f in ok(enumerate_polymorphisms(&k3, &k3, n))? {
            let e = ok(essential_coords(&f))?;
            ensure(e.len() <= 1, || format!("{f:?} has essential {e:?}"))?;
            total += 1;
        }
    }
    let c5 = ok(cycle(5))?;
    let f = ok(ok(ones_switch_function(&c5, &k3, 4))?.materialize())?;
    ensure(is_hom(&ok(tensor_power(&c5, 4))?, &k3, f.table().unwrap()), || "not a polymorphism".into())?;
    let e = ok(essential_coords(&f))?;
    ensure(e == vec![0, 1, 2, 3], || format!("essential {e:?}"))?;
    Ok(format!("{total} polymorphisms of K3 with at most one essential coordinate; example has 4"))
}

fn determinism() -> Check {
    let runs: &[&[&str]] = &[
        &["adjoint-check", "--all", "--samples", "10", "--seed", "5", "--json"],
        &["poly", "--from", "C5", "--to", "K3", "--arity", "3", "--random", "5", "--seed", "9"],
        &["degrees", "--from", "C5", "--to", "C5", "--arity", "3", "--random", "8", "--seed", "1", "--all", "--json"],
        &["verify", "delta-sym", "--max-vertices", "4", "--json"],
        &["complex", "--graph", "K4", "--export", "off"],
        &["functor", "--apply", "sym,delta,deltaR", "--graph", "C5"],
        &["hom", "--from", "C7", "--to", "K5:2", "--all", "--seed", "3"],
    ];
    for args in runs {
        let outs: Vec<_> = (0..2)
            .map(|_| Command::new(env!("CARGO_BIN_EXE_pcsp")).args(*args).output().expect("binary runs"))
            .collect();
        ensure(outs[0].stdout == outs[1].stdout && outs[0].status == outs[1].status, || format!("{args:?} differs"))?;
        ensure(outs[0].status.code().is_some_and(|c| c < 2), || format!("{args:?} errored"))?;
    }
    Ok(format!("{} invocations byte-identical", runs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("adjunction sweeps", adjunctions, Duration::from_secs(60)),
        ("Poljak-Rodl certificates", poljak_rodl, Duration::from_secs(10)),
        ("delta delta K4", delta_delta, Duration::from_secs(5)),
        ("box complex shapes", box_shapes, Duration::from_secs(5)),
        ("degree vectors", degree_vectors, Duration::from_secs(600)),
        ("circle maps", circle_maps, Duration::from_secs(5)),
        ("clique sandwich and chi(delta G)", sandwich_and_chi, Duration::from_secs(60)),
        ("circular clique order", circular_order, Duration::from_secs(60)),
        ("essential arity", essential_arity, Duration::from_secs(30)),
        ("CLI determinism", determinism, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let (verdict, detail) = match result {
            Ok(d) if took <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took longer than {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        failed += (verdict == "FAIL") as usize;
        println!("{verdict} criterion {:>2} {name} [{:.2?}]: {detail}", i + 1, took);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
