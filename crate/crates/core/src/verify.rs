//! Reduction pipelines, the soundness and completeness conditions for adjoint
//! reductions, and explicit certificates for the concrete lemmas about `delta`.

use crate::adjoint::sample_pair;
use crate::combinat::{central_binomial_u64, symmetric_chains};
use crate::functor::{
    apply_pipeline, arc_digraph, arc_right_adjoint_labeled, omega, parse_pipeline,
    right_adjoint_pipeline, sub, walk_power, FunctorTag, DEFAULT_DELTA_R_CAP,
};
use crate::graph::{clique, connected_graphs, GraphRecord};
use crate::hom::{chromatic_number, find_hom, hom_equivalent, is_hom, VertexMap};
use crate::{Digraph, Error, Exec, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Partial,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// A left-adjoint pipeline together with templates `H1 -> G1` and `H2 -> G2`.
#[derive(Clone, Debug)]
pub struct ReductionSpec {
    pub pipeline: Vec<FunctorTag>,
    pub h1: Digraph,
    pub g1: Digraph,
    pub h2: Digraph,
    pub g2: Digraph,
}

impl ReductionSpec {
    /// Fails unless both template promises `H1 -> G1` and `H2 -> G2` hold.
    pub fn new(pipeline: Vec<FunctorTag>, h1: Digraph, g1: Digraph, h2: Digraph, g2: Digraph) -> Result<Self> {
        if find_hom(&h1, &g1)?.is_none() {
            return Err(Error::input("template promise H1 -> G1 fails"));
        }
        if find_hom(&h2, &g2)?.is_none() {
            return Err(Error::input("template promise H2 -> G2 fails"));
        }
        Ok(ReductionSpec {
            pipeline,
            h1,
            g1,
            h2,
            g2,
        })
    }
}

pub fn reduce_instance(i: &Digraph, pipeline: &[FunctorTag]) -> Result<Digraph> {
    apply_pipeline(i, pipeline)
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceViolation {
    pub instance: GraphRecord,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub status: Status,
    pub pipeline: String,
    pub right_adjoint: String,
    /// `H1 -> Gamma H2`, or `None` when the image exceeded a cap.
    pub h1_to_gamma_h2: Option<bool>,
    /// `Gamma G2 -> G1`, or `None` when the image exceeded a cap.
    pub gamma_g2_to_g1: Option<bool>,
    pub instances: usize,
    pub skipped: usize,
    pub completeness_violations: Vec<InstanceViolation>,
    pub soundness_violations: Vec<InstanceViolation>,
    pub notes: Vec<String>,
}

/// Instance pool: every connected graph up to `max_vertices` vertices (at most 6),
/// then `random` seeded samples.
#[derive(Clone, Copy, Debug)]
pub struct InstancePool {
    pub max_vertices: usize,
    pub random: usize,
    pub seed: u64,
}

impl Default for InstancePool {
    fn default() -> Self {
        InstancePool {
            max_vertices: 5,
            random: 100,
            seed: 0,
        }
    }
}

impl InstancePool {
    pub fn instances(&self, directed: bool) -> Result<Vec<Digraph>> {
        let mut out = Vec::new();
        for n in 1..=self.max_vertices.min(6) {
            out.extend_from_slice(connected_graphs(n)?);
        }
        for idx in 0..self.random {
            out.push(sample_pair(self.seed, idx, self.max_vertices.max(1), directed).0);
        }
        Ok(out)
    }
}

fn join(steps: &[FunctorTag]) -> String {
    steps.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
}

fn capped<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::SizeLimit { .. }) => Ok(None),
        Err(Error::Pipeline { source, .. }) if matches!(*source, Error::SizeLimit { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

enum InstanceOutcome {
    Skipped,
    Checked {
        completeness: Option<String>,
        soundness: Option<String>,
    },
}

/// Evaluates `H1 -> Gamma H2` and `Gamma G2 -> G1` for the right adjoint `right`
/// (derived from the pipeline when `None`), and checks completeness
/// (`I -> H1` implies `Lambda I -> H2`) and soundness (`Lambda I -> G2` implies
/// `I -> G1`) on the instance pool.
pub fn verify_reduction_conditions(
    spec: &ReductionSpec,
    right: Option<&[FunctorTag]>,
    pool: &InstancePool,
    exec: Exec,
) -> Result<ReductionReport> {
    let right = match right {
        Some(r) => r.to_vec(),
        None => right_adjoint_pipeline(&spec.pipeline)?,
    };
    let mut notes = Vec::new();
    let cond = |src: Option<&Digraph>, dst: Option<&Digraph>| -> Result<Option<bool>> {
        match (src, dst) {
            (Some(s), Some(d)) => Ok(Some(find_hom(s, d)?.is_some())),
            _ => Ok(None),
        }
    };
    let gamma_h2 = capped(apply_pipeline(&spec.h2, &right))?;
    let gamma_g2 = capped(apply_pipeline(&spec.g2, &right))?;
    let first = cond(Some(&spec.h1), gamma_h2.as_ref())?;
    let second = cond(gamma_g2.as_ref(), Some(&spec.g1))?;
    if first.is_none() {
        notes.push("Gamma H2 exceeded a size cap".into());
    }
    if second.is_none() {
        notes.push("Gamma G2 exceeded a size cap".into());
    }

    // The subdivision, walk-power and Omega adjunctions are stated for undirected graphs.
    let directed = !matches!(
        spec.pipeline.first(),
        Some(FunctorTag::Subdivide(_) | FunctorTag::WalkPower(_) | FunctorTag::Omega(_))
    );
    let instances = pool.instances(directed)?;
    let outcomes = exec.map(instances.clone(), |i| -> Result<InstanceOutcome> {
        let reduced = match apply_pipeline(&i, &spec.pipeline) {
            Ok(r) => r,
            Err(Error::Pipeline { .. }) => return Ok(InstanceOutcome::Skipped),
            Err(e) => return Err(e),
        };
        let yes = find_hom(&i, &spec.h1)?.is_some();
        let completeness = (yes && find_hom(&reduced, &spec.h2)?.is_none())
            .then(|| "I -> H1 but Lambda I does not map to H2".to_string());
        let soundness = (find_hom(&reduced, &spec.g2)?.is_some() && find_hom(&i, &spec.g1)?.is_none())
            .then(|| "Lambda I -> G2 but I does not map to G1".to_string());
        Ok(InstanceOutcome::Checked {
            completeness,
            soundness,
        })
    });
    let mut report = ReductionReport {
        status: Status::Pass,
        pipeline: join(&spec.pipeline),
        right_adjoint: join(&right),
        h1_to_gamma_h2: first,
        gamma_g2_to_g1: second,
        instances: 0,
        skipped: 0,
        completeness_violations: Vec::new(),
        soundness_violations: Vec::new(),
        notes,
    };
    for (i, outcome) in instances.iter().zip(outcomes) {
        match outcome? {
            InstanceOutcome::Skipped => report.skipped += 1,
            InstanceOutcome::Checked {
                completeness,
                soundness,
            } => {
                report.instances += 1;
                if let Some(detail) = completeness {
                    report.completeness_violations.push(InstanceViolation {
                        instance: i.record(),
                        detail,
                    });
                }
                if let Some(detail) = soundness {
                    report.soundness_violations.push(InstanceViolation {
                        instance: i.record(),
                        detail,
                    });
                }
            }
        }
    }
    let violated = !report.completeness_violations.is_empty() || !report.soundness_violations.is_empty();
    report.status = if violated || first == Some(false) || second == Some(false) {
        Status::Fail
    } else if first.is_none() || second.is_none() {
        Status::Partial
    } else {
        Status::Pass
    };
    Ok(report)
}

/// The reduction `delta sym` from `PCSP(K_{b(k')}, K_{c'})` to `PCSP(K_k, K_c)`.
pub fn lemma_red_spec(k_prime: usize, c_prime: usize, k: usize, c: usize) -> Result<ReductionSpec> {
    let b = central_binomial_u64(k_prime).ok_or_else(|| Error::param("k' too large"))? as usize;
    ReductionSpec::new(
        parse_pipeline("sym,delta")?,
        clique(b)?,
        clique(c_prime)?,
        clique(k)?,
        clique(c)?,
    )
}

fn subsets_of_size(n: usize, size: usize) -> Vec<u64> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == size).collect()
}

fn full_mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

/// `sub delta_R K_n` with the index of every `(S, T)` label.
fn sub_delta_r_clique(n: usize) -> Result<(Digraph, crate::functor::DeltaR)> {
    let dr = arc_right_adjoint_labeled(&clique(n)?, DEFAULT_DELTA_R_CAP)?;
    Ok((sub(&dr.graph), dr))
}

#[derive(Clone, Debug, Serialize)]
pub struct PoljakRodlReport {
    pub status: Status,
    pub n: usize,
    pub b: usize,
    /// `K_{b(n)} -> sub delta_R K_n` via the middle layer `(S, complement of S)`.
    pub clique_embedding: VertexMap,
    /// `sub delta_R K_n -> K_{b(n)}` via the chain containing `S`.
    pub coloring: VertexMap,
    pub embedding_valid: bool,
    pub coloring_valid: bool,
    /// Exhaustive hom-equivalence with `K_{b(n)}`, when requested.
    pub equivalence: Option<bool>,
}

pub const PR_CAP: usize = 5;

pub fn poljak_rodl_certificates(n: usize, exhaustive: bool) -> Result<PoljakRodlReport> {
    Error::check_cap("Poljak-Rodl ground set", n as u128, PR_CAP as u128)?;
    if n == 0 {
        return Err(Error::param("n must be positive"));
    }
    let b = central_binomial_u64(n).expect("small n") as usize;
    let (s, dr) = sub_delta_r_clique(n)?;
    let full = full_mask(n);
    let clique_embedding: VertexMap = subsets_of_size(n, n / 2)
        .into_iter()
        .map(|m| dr.index_of(m, full & !m).expect("middle layer vertex"))
        .collect();
    let chains = symmetric_chains(n)?;
    let mut chain_of = vec![0u32; 1 << n];
    for (c, chain) in chains.iter().enumerate() {
        for &m in chain {
            chain_of[m as usize] = c as u32;
        }
    }
    let coloring: VertexMap = dr.labels.iter().map(|&(m, _)| chain_of[m as usize]).collect();
    let kb = clique(b)?;
    let embedding_valid = is_hom(&kb, &s, &clique_embedding);
    let coloring_valid = is_hom(&s, &kb, &coloring);
    let equivalence = if exhaustive {
        Some(hom_equivalent(&s, &kb)?)
    } else {
        None
    };
    Ok(PoljakRodlReport {
        status: Status::of(embedding_valid && coloring_valid && equivalence != Some(false)),
        n,
        b,
        clique_embedding,
        coloring,
        embedding_valid,
        coloring_valid,
        equivalence,
    })
}

/// Vertices of `delta delta K_4` as triples `(i, j, k)` with `i != j != k`, in vertex order.
pub fn delta_delta_k4_triples() -> Result<Vec<(u32, u32, u32)>> {
    let k4 = clique(4)?;
    let d = arc_digraph(&k4)?;
    Ok(d.arcs()
        .iter()
        .map(|&(e, f)| {
            let (i, j) = k4.arcs()[e as usize];
            let (_, k) = k4.arcs()[f as usize];
            (i, j, k)
        })
        .collect())
}

/// `(i, j, k) -> j` when `j < 3`, otherwise the least colour outside `{i, k}`.
pub fn delta_delta_k4_coloring() -> Result<VertexMap> {
    Ok(delta_delta_k4_triples()?
        .into_iter()
        .map(|(i, j, k)| {
            if j < 3 {
                j
            } else {
                (0..3).find(|&c| c != i && c != k).expect("three colours, two excluded")
            }
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaDeltaReport {
    pub status: Status,
    pub vertices: usize,
    pub coloring_valid: bool,
    pub chi_delta_k4: usize,
    pub min_iterations: Option<usize>,
}

pub fn delta_delta_k4_report() -> Result<DeltaDeltaReport> {
    let k4 = clique(4)?;
    let dd = arc_digraph(&arc_digraph(&k4)?)?;
    let map = delta_delta_k4_coloring()?;
    let coloring_valid = is_hom(&dd, &clique(3)?, &map);
    let chi_delta_k4 = chromatic_number(&arc_digraph(&k4)?)?;
    let min_iterations = min_delta_iterations_to_3col(&k4, 3, DEFAULT_DELTA_ITER_CAP)?.i;
    Ok(DeltaDeltaReport {
        status: Status::of(coloring_valid && chi_delta_k4 == 4 && min_iterations == Some(2)),
        vertices: dd.vertex_count(),
        coloring_valid,
        chi_delta_k4,
        min_iterations,
    })
}

pub const DEFAULT_DELTA_ITER_CAP: u128 = 100_000;

#[derive(Clone, Debug, Serialize)]
pub struct DeltaIterations {
    /// Least `i` with `delta^i D -> K_3`.
    pub i: Option<usize>,
    pub cap: usize,
    /// Sizes of the iterates that were tested.
    pub sizes: Vec<usize>,
    pub note: Option<String>,
}

pub fn min_delta_iterations_to_3col(d: &Digraph, cap: usize, size_cap: u128) -> Result<DeltaIterations> {
    let k3 = clique(3)?;
    let mut cur = d.clone();
    let mut sizes = Vec::new();
    for i in 0..=cap {
        sizes.push(cur.vertex_count());
        if find_hom(&cur, &k3)?.is_some() {
            return Ok(DeltaIterations {
                i: Some(i),
                cap,
                sizes,
                note: None,
            });
        }
        if i == cap {
            break;
        }
        if cur.arc_count() as u128 > size_cap {
            return Ok(DeltaIterations {
                i: None,
                cap,
                sizes,
                note: Some(format!("iterate {} would exceed {size_cap} vertices", i + 1)),
            });
        }
        cur = arc_digraph(&cur)?;
    }
    Ok(DeltaIterations {
        i: None,
        cap,
        sizes,
        note: Some(format!("no iterate up to {cap} maps to K3")),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CliqueSandwich {
    pub status: Status,
    pub n: usize,
    pub b: usize,
    /// `K_{b(n)} -> delta_R K_n`.
    pub lower: VertexMap,
    /// `delta_R K_n -> K_{2^n}`.
    pub upper: VertexMap,
    pub lower_valid: bool,
    pub upper_valid: bool,
}

pub const SANDWICH_CAP: usize = 4;

pub fn clique_sandwich(n: usize) -> Result<CliqueSandwich> {
    Error::check_cap("clique sandwich ground set", n as u128, SANDWICH_CAP as u128)?;
    if n == 0 {
        return Err(Error::param("n must be positive"));
    }
    let b = central_binomial_u64(n).expect("small n") as usize;
    let dr = arc_right_adjoint_labeled(&clique(n)?, DEFAULT_DELTA_R_CAP)?;
    let full = full_mask(n);
    let lower: VertexMap = subsets_of_size(n, n / 2)
        .into_iter()
        .map(|m| dr.index_of(m, full & !m).expect("middle layer vertex"))
        .collect();
    let upper: VertexMap = dr.labels.iter().map(|&(s, _)| s as u32).collect();
    let lower_valid = is_hom(&clique(b)?, &dr.graph, &lower);
    let upper_valid = is_hom(&dr.graph, &clique(1 << n)?, &upper);
    Ok(CliqueSandwich {
        status: Status::of(lower_valid && upper_valid),
        n,
        b,
        lower,
        upper,
        lower_valid,
        upper_valid,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiDeltaCheck {
    pub status: Status,
    pub chi: usize,
    pub chi_delta: usize,
    /// Least `n <= n_max` with `chi(G) <= b(n)`.
    pub formula: Option<usize>,
}

/// Compares `chi(delta G)` with `min { n : chi(G) <= b(n) }`.
pub fn chi_delta_formula_check(g: &Digraph, n_max: usize) -> Result<ChiDeltaCheck> {
    if !g.is_undirected() {
        return Err(Error::input("the formula is stated for undirected graphs"));
    }
    let chi = chromatic_number(g)?;
    let chi_delta = chromatic_number(&arc_digraph(g)?)?;
    let formula = (0..=n_max).find(|&n| central_binomial_u64(n).is_some_and(|b| chi as u64 <= b));
    Ok(ChiDeltaCheck {
        status: Status::of(formula == Some(chi_delta)),
        chi,
        chi_delta,
        formula,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceSweep {
    pub status: Status,
    pub graphs: usize,
    pub mismatches: Vec<(GraphRecord, usize)>,
}

/// `delta sym G -> K_n` exactly when `G -> K_{b(n)}`, over all connected graphs with
/// at most `max_vertices` vertices and `1 <= n <= n_max`.
pub fn delta_sym_equivalence(max_vertices: usize, n_max: usize, exec: Exec) -> Result<EquivalenceSweep> {
    let mut graphs = Vec::new();
    for v in 1..=max_vertices {
        graphs.extend_from_slice(connected_graphs(v)?);
    }
    let rows = exec.map(graphs.clone(), |g| -> Result<Vec<usize>> {
        let d = arc_digraph(&g.underlying())?;
        let mut bad = Vec::new();
        for n in 1..=n_max {
            let b = central_binomial_u64(n).expect("small n") as usize;
            let left = find_hom(&d, &clique(n)?)?.is_some();
            let right = find_hom(&g, &clique(b)?)?.is_some();
            if left != right {
                bad.push(n);
            }
        }
        Ok(bad)
    });
    let mut mismatches = Vec::new();
    for (g, row) in graphs.iter().zip(rows) {
        for n in row? {
            mismatches.push((g.record(), n));
        }
    }
    Ok(EquivalenceSweep {
        status: Status::of(mismatches.is_empty()),
        graphs: graphs.len(),
        mismatches,
    })
}

/// Both directions between `PCSP(Gamma_k H, G)` and `PCSP(H, Omega_k G)`: the walk
/// power reduces the second to the first and the subdivision the first to the second.
pub fn walk_power_equivalence(
    h: &Digraph,
    g: &Digraph,
    k: usize,
    pool: &InstancePool,
    exec: Exec,
) -> Result<[ReductionReport; 2]> {
    let gamma_h = walk_power(h, k)?;
    let omega_g = omega(g, k)?;
    let forward = ReductionSpec::new(
        vec![FunctorTag::WalkPower(k)],
        h.clone(),
        omega_g.clone(),
        gamma_h.clone(),
        g.clone(),
    )?;
    let backward = ReductionSpec::new(vec![FunctorTag::Subdivide(k)], gamma_h, g.clone(), h.clone(), omega_g)?;
    Ok([
        verify_reduction_conditions(&forward, None, pool, exec)?,
        verify_reduction_conditions(&backward, None, pool, exec)?,
    ])
}
