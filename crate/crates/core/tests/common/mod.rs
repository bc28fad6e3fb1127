#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wflineage::model::{up_stream_pairs, Direction, Edge, Topology};
use wflineage::{Annotation, AssertionType, DependencyType, PairKey, WorkflowSpec};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_type(rng: &mut impl Rng) -> DependencyType {
    *DependencyType::ALL.choose(rng).unwrap()
}

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub max_blocks: usize,
    pub max_ports: usize,
    /// Inputs may read data written by any block, not only earlier ones.
    pub cycles: bool,
}

/// Random workflow: every output writes its own data block, every input reads
/// either a fresh source block or some output's block.
pub fn random_workflow(
    rng: &mut impl Rng,
    shape: Shape,
    names: &mut impl FnMut(&mut dyn rand::RngCore, &str, usize) -> String,
) -> WorkflowSpec {
    let blocks = rng.random_range(1..=shape.max_blocks);
    let mut edges = Vec::new();
    let mut programs = Vec::new();
    let mut written: Vec<Vec<String>> = Vec::new();
    let mut label = 0;
    let mut data = 0;
    for b in 0..blocks {
        let program = names(rng, "p", b);
        let outs: Vec<(String, String)> = (0..rng.random_range(1..=shape.max_ports))
            .map(|_| {
                let pair = (names(rng, "x", label), names(rng, "d", data));
                label += 1;
                data += 1;
                pair
            })
            .collect();
        written.push(outs.iter().map(|(_, d)| d.clone()).collect());
        programs.push((program, outs));
    }
    for (b, (program, outs)) in programs.iter().enumerate() {
        for _ in 0..rng.random_range(1..=shape.max_ports) {
            let upstream = if shape.cycles { blocks } else { b };
            let source = if upstream > 0 && rng.random_bool(0.7) {
                written[rng.random_range(0..upstream)].choose(rng).unwrap().clone()
            } else {
                data += 1;
                names(rng, "d", data - 1)
            };
            edges.push(Edge::input(names(rng, "x", label), program.clone(), source));
            label += 1;
        }
        for (l, d) in outs {
            edges.push(Edge::output(l.clone(), program.clone(), d.clone()));
        }
    }
    let data_blocks: Vec<String> = edges.iter().map(|e| e.data.clone()).collect();
    WorkflowSpec::new(
        "random",
        programs.into_iter().map(|(p, _)| p).collect::<Vec<_>>(),
        data_blocks,
        edges,
    )
}

pub fn plain_names(_: &mut dyn rand::RngCore, prefix: &str, n: usize) -> String {
    format!("{prefix}{n}")
}

/// Random workflow with at most `max_pairs` up-stream pairs.
pub fn bounded_workflow(rng: &mut impl Rng, shape: Shape, max_pairs: usize) -> WorkflowSpec {
    loop {
        let spec = random_workflow(rng, shape, &mut plain_names);
        let n = up_stream_pairs(&spec).len();
        if n > 0 && n <= max_pairs {
            return spec;
        }
    }
}

pub fn single_block_pairs(spec: &WorkflowSpec) -> Vec<PairKey> {
    let topo = Topology::new(spec);
    topo.up_stream_indices()
        .into_iter()
        .filter(|(_, (i, o))| topo.same_block(*i, *o))
        .map(|(p, _)| p)
        .collect()
}

/// Annotates each up-stream pair with probability `density`, indirect pairs
/// half as often. Occasionally adds a `NotFlowsFrom` on an unconnected pair.
pub fn random_annotations(rng: &mut impl Rng, spec: &WorkflowSpec, density: f64) -> Vec<Annotation> {
    let direct = single_block_pairs(spec);
    let mut anns = Vec::new();
    for pair in up_stream_pairs(spec) {
        let p = if direct.contains(&pair) { density } else { density / 2.0 };
        if rng.random_bool(p) {
            anns.push(Annotation::user(pair.input, pair.output, random_type(rng)));
        }
    }
    if rng.random_bool(0.2) {
        let ups = up_stream_pairs(spec);
        let inputs: Vec<&Edge> = spec.edges().iter().filter(|e| e.direction == Direction::In).collect();
        let outputs: Vec<&Edge> = spec.edges().iter().filter(|e| e.direction == Direction::Out).collect();
        let (i, o) = (inputs.choose(rng).unwrap(), outputs.choose(rng).unwrap());
        if !ups.contains(&PairKey::new(i.label.clone(), o.label.clone())) {
            anns.push(Annotation::user(
                i.label.clone(),
                o.label.clone(),
                AssertionType::NotFlowsFrom,
            ));
        }
    }
    anns
}

/// A direct type for every single-block pair.
pub fn random_direct(rng: &mut impl Rng, spec: &WorkflowSpec) -> BTreeMap<PairKey, DependencyType> {
    single_block_pairs(spec)
        .into_iter()
        .map(|p| (p, random_type(rng)))
        .collect()
}

/// Max over simple paths of the min hop type, enumerating paths by DFS over
/// the raw edge list.
pub fn exhaustive_max_min(
    spec: &WorkflowSpec,
    input: &str,
    output: &str,
    direct: &BTreeMap<PairKey, DependencyType>,
) -> Option<DependencyType> {
    fn dfs(
        spec: &WorkflowSpec,
        at: &Edge,
        target: &str,
        seen: &mut Vec<String>,
        bottleneck: DependencyType,
        direct: &BTreeMap<PairKey, DependencyType>,
        best: &mut Option<DependencyType>,
    ) {
        for out in spec
            .edges()
            .iter()
            .filter(|e| e.direction == Direction::Out && e.program == at.program)
        {
            if seen.contains(&out.label) {
                continue;
            }
            let hop = direct[&PairKey::new(at.label.clone(), out.label.clone())];
            let width = bottleneck.min(hop);
            if out.label == target {
                *best = (*best).max(Some(width));
                continue;
            }
            seen.push(out.label.clone());
            for next in spec
                .edges()
                .iter()
                .filter(|e| e.direction == Direction::In && e.data == out.data)
            {
                if !seen.contains(&next.label) {
                    seen.push(next.label.clone());
                    dfs(spec, next, target, seen, width, direct, best);
                    seen.pop();
                }
            }
            seen.pop();
        }
    }
    let start = spec.edge(input)?;
    let mut best = None;
    dfs(
        spec,
        start,
        output,
        &mut vec![input.to_string()],
        DependencyType::SameAs,
        direct,
        &mut best,
    );
    best
}

/// Answer sets from an external answer-set solver, or `None` when none is
/// installed. Uses the `clingo` Python module.
pub fn clingo_answer_sets(program: &str) -> Option<Vec<Vec<(String, String, String)>>> {
    use std::io::Write;
    use std::process::{Command, Stdio};
    const SCRIPT: &str = r#"
import json, sys
import clingo
ctl = clingo.Control(["0"])
ctl.add("base", [], sys.stdin.read())
ctl.ground([("base", [])])
models = []
ctl.solve(on_model=lambda m: models.append(sorted([str(a) for a in s.arguments] for s in m.symbols(shown=True))))
print(json.dumps(models))
"#;
    let mut child = Command::new("python3")
        .args(["-c", SCRIPT])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .ok()?;
    child.stdin.take()?.write_all(program.as_bytes()).ok()?;
    let out = child.wait_with_output().ok()?;
    if !out.status.success() {
        return None;
    }
    let models: Vec<Vec<Vec<String>>> = serde_json::from_slice(&out.stdout).ok()?;
    Some(
        models
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .map(|a| (a[0].clone(), a[1].clone(), a[2].clone()))
                    .collect()
            })
            .collect(),
    )
}
