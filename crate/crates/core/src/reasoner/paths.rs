//! Dataflow paths and their types.
//!
//! A path from input edge `i` to output edge `o` alternates in/out edge
//! labels: `i = i0, o0, i1, o1, ..., o`, where each `(ik, ok)` sits on one
//! program block and `ok` writes the data block `i(k+1)` reads. Paths are
//! simple: no label repeats, so cyclic workflows have finitely many.
//!
//! The type of a path is the weakest single-block type along it; the type of
//! a pair is the strongest path type over all its paths (max-min).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

use super::ReasonError;
use crate::model::{compose, DependencyType, Direction, PairKey, Topology, WorkflowSpec};

/// Simple paths as edge indices into the spec, in DFS order (labels sorted).
pub(crate) fn simple_path_indices(topo: &Topology<'_>, input: usize, output: usize) -> Vec<Vec<usize>> {
    fn walk(
        topo: &Topology<'_>,
        at_input: usize,
        target: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        found: &mut Vec<Vec<usize>>,
    ) {
        for &out in topo.outputs_beside(at_input) {
            if on_path[out] {
                continue;
            }
            path.push(out);
            if out == target {
                found.push(path.clone());
            } else {
                on_path[out] = true;
                for &next in topo.successors(out) {
                    if !on_path[next] {
                        on_path[next] = true;
                        path.push(next);
                        walk(topo, next, target, path, on_path, found);
                        path.pop();
                        on_path[next] = false;
                    }
                }
                on_path[out] = false;
            }
            path.pop();
        }
    }

    let mut on_path = vec![false; topo.spec().edges().len()];
    on_path[input] = true;
    let mut found = Vec::new();
    walk(topo, input, output, &mut vec![input], &mut on_path, &mut found);
    found
}

/// Every simple dataflow path from input edge `input` to output edge
/// `output`, as label sequences, sorted.
pub fn simple_paths(input: &str, output: &str, spec: &WorkflowSpec) -> Result<Vec<Vec<String>>, ReasonError> {
    let topo = Topology::new(spec);
    let i = topo.index_with_direction(input, Direction::In)?;
    let o = topo.index_with_direction(output, Direction::Out)?;
    let mut paths: Vec<Vec<String>> = simple_path_indices(&topo, i, o)
        .into_iter()
        .map(|p| p.into_iter().map(|e| topo.edge(e).label.clone()).collect())
        .collect();
    paths.sort();
    Ok(paths)
}

/// Single-block `(input, output)` hops of an alternating label path.
pub fn hops(path: &[String]) -> impl Iterator<Item = PairKey> + '_ {
    path.chunks(2).map(|c| PairKey::new(c[0].clone(), c[1].clone()))
}

/// Weakest type along one path.
pub fn path_min(path: &[String], direct: &BTreeMap<PairKey, DependencyType>) -> Result<DependencyType, ReasonError> {
    hops(path).try_fold(DependencyType::STRONGEST, |acc, hop| {
        let t = direct.get(&hop).ok_or(ReasonError::MissingDirectType(hop))?;
        Ok(compose(acc, *t))
    })
}

/// Max over simple paths of the min direct type along each path; `None` when
/// no path connects the two edges.
pub fn path_type(
    input: &str,
    output: &str,
    direct: &BTreeMap<PairKey, DependencyType>,
    spec: &WorkflowSpec,
) -> Result<Option<DependencyType>, ReasonError> {
    let mut best = None;
    for path in simple_paths(input, output, spec)? {
        let t = path_min(&path, direct)?;
        best = best.max(Some(t));
    }
    Ok(best)
}

/// Bottleneck capacity of a partial route: `None` stands for "unbounded",
/// i.e. no single-block hop taken yet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Width(Option<DependencyType>);

impl Width {
    fn narrow(self, t: DependencyType) -> Width {
        Width(Some(self.0.map_or(t, |w| compose(w, t))))
    }
}

impl Ord for Width {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.0, other.0) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(a), Some(b)) => a.cmp(&b),
        }
    }
}

impl PartialOrd for Width {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The same quantity as [`path_type`], computed as a widest-path search over
/// edge labels (Dijkstra with max-min relaxation) instead of enumerating
/// paths. Needs a direct type for every single-block pair reachable from
/// `input`.
pub fn widest_path_type(
    input: &str,
    output: &str,
    direct: &BTreeMap<PairKey, DependencyType>,
    spec: &WorkflowSpec,
) -> Result<Option<DependencyType>, ReasonError> {
    let topo = Topology::new(spec);
    let start = topo.index_with_direction(input, Direction::In)?;
    let target = topo.index_with_direction(output, Direction::Out)?;

    let mut best: Vec<Option<Width>> = vec![None; spec.edges().len()];
    let mut heap = BinaryHeap::new();
    best[start] = Some(Width(None));
    heap.push((Width(None), start));
    while let Some((width, node)) = heap.pop() {
        if best[node].is_some_and(|b| b > width) {
            continue;
        }
        if node == target {
            return Ok(width.0);
        }
        let edge = topo.edge(node);
        let next: Vec<(usize, Width)> = match edge.direction {
            Direction::In => topo
                .outputs_beside(node)
                .iter()
                .map(|&o| {
                    let hop = PairKey::new(edge.label.clone(), topo.edge(o).label.clone());
                    let t = direct.get(&hop).ok_or(ReasonError::MissingDirectType(hop))?;
                    Ok((o, width.narrow(*t)))
                })
                .collect::<Result<_, ReasonError>>()?,
            Direction::Out => topo.successors(node).iter().map(|&i| (i, width)).collect(),
        };
        for (n, w) in next {
            if best[n].is_none_or(|b| w > b) {
                best[n] = Some(w);
                heap.push((w, n));
            }
        }
    }
    Ok(None)
}
