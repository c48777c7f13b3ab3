//! Exact optimization over directed cycles: minimum/maximum mean cycle by
//! Karp's recurrence, the layered-graph value `psi` of a periodic orbit, and
//! the periodic lower bound for `alpha`.
//!
//! Weights are rationals; internally they are cleared to integers (i128 when
//! the magnitudes allow, arbitrary precision otherwise), so every mean is
//! exact. Witness cycles are canonical: among minimizing cycles the shortest
//! wins, then the lexicographically least node sequence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exec;
use crate::potential::Potential;
use crate::rat::Rat;
use crate::sft::{enumerate_periodic_orbits, PeriodicOrbit, Sft};

/// Finite weighted digraph; parallel edges and self-loops are allowed.
#[derive(Debug, Clone)]
pub struct WeightedDigraph {
    names: Vec<String>,
    edges: Vec<(usize, usize, Rat)>,
}

impl WeightedDigraph {
    pub fn new(names: Vec<String>) -> Self {
        WeightedDigraph {
            names,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, weight: Rat) {
        assert!(from < self.names.len() && to < self.names.len());
        self.edges.push((from, to, weight));
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn edges(&self) -> &[(usize, usize, Rat)] {
        &self.edges
    }
}

/// A mean-optimal cycle: `mean` is exact, `cycle` lists the node sequence
/// once around (the edge back to the first node is implied).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeanCycle {
    pub mean: Rat,
    pub cycle: Vec<usize>,
}

pub fn min_mean_cycle(g: &WeightedDigraph) -> Result<MeanCycle> {
    solve(g, false)
}

pub fn max_mean_cycle(g: &WeightedDigraph) -> Result<MeanCycle> {
    solve(g, true)
}

/// Value of the minimum mean cycle without a witness; linear memory, used on
/// large recoded graphs.
pub fn min_mean_cycle_value(g: &WeightedDigraph) -> Result<Rat> {
    solve_value(g, false)
}

pub fn max_mean_cycle_value(g: &WeightedDigraph) -> Result<Rat> {
    solve_value(g, true)
}

// ---------------------------------------------------------------------------
// scaling

struct ScaledGraph {
    n: usize,
    /// weights cleared to integers: `w_int = w * scale`
    edges: Vec<(usize, usize, BigInt)>,
    scale: BigInt,
}

fn scale_graph(g: &WeightedDigraph, negate: bool) -> ScaledGraph {
    let mut scale = BigInt::one();
    for (_, _, w) in &g.edges {
        scale = scale.lcm(w.denom());
    }
    let edges = g
        .edges
        .iter()
        .map(|(u, v, w)| {
            let mut int = w.numer() * (&scale / w.denom());
            if negate {
                int = -int;
            }
            (*u, *v, int)
        })
        .collect();
    ScaledGraph {
        n: g.node_count(),
        edges,
        scale,
    }
}

impl ScaledGraph {
    /// True when Karp distances and cross-multiplied fraction compares all
    /// fit comfortably in i128.
    fn fits_i128(&self) -> bool {
        let max_w = self
            .edges
            .iter()
            .map(|(_, _, w)| w.abs())
            .max()
            .unwrap_or_else(BigInt::zero);
        let bound = BigInt::from(1u8) << 60;
        self.n <= 1 << 20 && max_w <= bound
    }
}

// ---------------------------------------------------------------------------
// strongly connected components (iterative Tarjan)

fn sccs(n: usize, succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        while let Some(frame) = call.last_mut() {
            let (v, ci) = (frame.0, frame.1);
            if ci == 0 {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if ci < succ[v].len() {
                frame.1 += 1;
                let w = succ[v][ci];
                if index[w] == usize::MAX {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(parent) = call.last() {
                    let p = parent.0;
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out.sort();
    out
}

/// Components that carry at least one cycle (size > 1, or a self-loop).
fn cyclic_components(n: usize, edges: &[(usize, usize, BigInt)]) -> Vec<Vec<usize>> {
    let mut succ = vec![Vec::new(); n];
    for (u, v, _) in edges {
        succ[*u].push(*v);
    }
    let has_self_loop: Vec<bool> = {
        let mut s = vec![false; n];
        for (u, v, _) in edges {
            if u == v {
                s[*u] = true;
            }
        }
        s
    };
    sccs(n, &succ)
        .into_iter()
        .filter(|comp| comp.len() > 1 || has_self_loop[comp[0]])
        .collect()
}

// ---------------------------------------------------------------------------
// Karp value

/// Karp on one strongly connected component, i128 arithmetic. Returns the
/// minimum cycle mean as an unreduced fraction (numerator, denominator) in
/// units of the graph scale.
fn karp_i128(n: usize, edges: &[(usize, usize, i128)]) -> (i128, i128) {
    const INF: i128 = i128::MAX / 4;
    let relax = |cur: &[i128]| {
        let mut next = vec![INF; n];
        for &(u, v, w) in edges {
            if cur[u] < INF {
                let cand = cur[u] + w;
                if cand < next[v] {
                    next[v] = cand;
                }
            }
        }
        next
    };
    // pass 1: distances with exactly n edges
    let mut cur = vec![INF; n];
    cur[0] = 0;
    for _ in 0..n {
        cur = relax(&cur);
    }
    let d_n = cur;
    // pass 2: fold max over k of (d_n - d_k)/(n - k)
    let mut cur = vec![INF; n];
    cur[0] = 0;
    let mut best: Vec<Option<(i128, i128)>> = vec![None; n];
    for k in 0..n {
        for v in 0..n {
            if cur[v] < INF && d_n[v] < INF {
                let num = d_n[v] - cur[v];
                let den = (n - k) as i128;
                let better = match best[v] {
                    None => true,
                    Some((bn, bd)) => num * bd > bn * den,
                };
                if better {
                    best[v] = Some((num, den));
                }
            }
        }
        if k + 1 < n {
            cur = relax(&cur);
        }
    }
    best.into_iter()
        .flatten()
        .min_by(|(an, ad), (bn, bd)| (an * bd).cmp(&(bn * ad)))
        .expect("strongly connected component has a cycle")
}

/// Same recurrence with arbitrary-precision integers; used when weights are
/// too large to clear into i128.
fn karp_big(n: usize, edges: &[(usize, usize, BigInt)]) -> (BigInt, BigInt) {
    let relax = |cur: &[Option<BigInt>]| {
        let mut next: Vec<Option<BigInt>> = vec![None; n];
        for (u, v, w) in edges {
            if let Some(du) = &cur[*u] {
                let cand = du + w;
                if next[*v].as_ref().map_or(true, |c| &cand < c) {
                    next[*v] = Some(cand);
                }
            }
        }
        next
    };
    let mut cur: Vec<Option<BigInt>> = vec![None; n];
    cur[0] = Some(BigInt::zero());
    for _ in 0..n {
        cur = relax(&cur);
    }
    let d_n = cur;
    let mut cur: Vec<Option<BigInt>> = vec![None; n];
    cur[0] = Some(BigInt::zero());
    let mut best: Vec<Option<(BigInt, BigInt)>> = vec![None; n];
    for k in 0..n {
        for v in 0..n {
            if let (Some(dk), Some(dn)) = (&cur[v], &d_n[v]) {
                let num = dn - dk;
                let den = BigInt::from(n - k);
                let better = match &best[v] {
                    None => true,
                    Some((bn, bd)) => &num * bd > bn * &den,
                };
                if better {
                    best[v] = Some((num, den));
                }
            }
        }
        if k + 1 < n {
            cur = relax(&cur);
        }
    }
    best.into_iter()
        .flatten()
        .min_by(|(an, ad), (bn, bd)| (an * bd).cmp(&(bn * ad)))
        .expect("strongly connected component has a cycle")
}

fn component_min_mean(scaled: &ScaledGraph, comp: &[usize]) -> Rat {
    let pos: std::collections::HashMap<usize, usize> =
        comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges_local: Vec<(usize, usize, BigInt)> = scaled
        .edges
        .iter()
        .filter(|(u, v, _)| pos.contains_key(u) && pos.contains_key(v))
        .map(|(u, v, w)| (pos[u], pos[v], w.clone()))
        .collect();
    let n = comp.len();
    let (num, den) = if scaled.fits_i128() {
        let edges_small: Vec<(usize, usize, i128)> = edges_local
            .iter()
            .map(|(u, v, w)| (*u, *v, w.to_i128().unwrap()))
            .collect();
        let (num, den) = karp_i128(n, &edges_small);
        (BigInt::from(num), BigInt::from(den))
    } else {
        karp_big(n, &edges_local)
    };
    Rat::new(num, den * &scaled.scale)
}

fn solve_value(g: &WeightedDigraph, negate: bool) -> Result<Rat> {
    let scaled = scale_graph(g, negate);
    let comps = cyclic_components(scaled.n, &scaled.edges);
    if comps.is_empty() {
        return Err(Error::NoCycle);
    }
    let means = exec::map_vec(&comps, |comp| component_min_mean(&scaled, comp));
    let mu = means.into_iter().min().unwrap();
    Ok(if negate { -mu } else { mu })
}

// ---------------------------------------------------------------------------
// witness extraction

/// Given integer weights on the cyclic part with every closed walk of
/// nonnegative weight and some zero-weight cycle, return the shortest and
/// then lexicographically least zero-weight cycle as a node sequence.
fn zero_cycle_witness(n: usize, edges: &[(usize, usize, BigInt)]) -> Result<Vec<usize>> {
    let mut sorted = edges.to_vec();
    sorted.sort();
    // forward distances from every start simultaneously, layer by layer
    let mut dist: Vec<Vec<Option<BigInt>>> = (0..n)
        .map(|s| {
            let mut row = vec![None; n];
            row[s] = Some(BigInt::zero());
            row
        })
        .collect();
    let mut found: Option<(usize, usize)> = None; // (k, start)
    let mut k = 0usize;
    while found.is_none() {
        k += 1;
        if k > n {
            return Err(Error::Inconsistency(
                "no zero-mean cycle within n steps of a reweighted graph".into(),
            ));
        }
        for row in dist.iter_mut() {
            let mut next: Vec<Option<BigInt>> = vec![None; n];
            for (u, v, w) in &sorted {
                if let Some(du) = &row[*u] {
                    let cand = du + w;
                    if next[*v].as_ref().map_or(true, |c| &cand < c) {
                        next[*v] = Some(cand);
                    }
                }
            }
            *row = next;
        }
        for s in 0..n {
            if dist[s][s].as_ref().is_some_and(|d| d.is_zero()) {
                found = Some((k, s));
                break;
            }
        }
    }
    let (k_star, start) = found.unwrap();

    // backward distances to `start` with exactly r edges
    let mut back: Vec<Vec<Option<BigInt>>> = vec![vec![None; n]; k_star + 1];
    back[0][start] = Some(BigInt::zero());
    for r in 1..=k_star {
        for (u, v, w) in &sorted {
            if let Some(bv) = &back[r - 1][*v] {
                let cand = bv + w;
                if back[r][*u].as_ref().map_or(true, |c| &cand < c) {
                    back[r][*u] = Some(cand);
                }
            }
        }
    }

    // greedy: a step is feasible exactly when it keeps the running total on
    // a zero-weight completion (acc + w + min-completion == 0)
    let mut cycle = vec![start];
    let mut cur = start;
    let mut acc = BigInt::zero();
    for rem in (1..=k_star).rev() {
        let mut chosen: Option<(usize, BigInt)> = None;
        for (u, v, w) in &sorted {
            if *u != cur {
                continue;
            }
            if let Some(bv) = &back[rem - 1][*v] {
                if (&acc + w + bv).is_zero() {
                    chosen = Some((*v, w.clone()));
                    break; // sorted by (u, v, w): first hit is least target
                }
            }
        }
        let (v, w) =
            chosen.ok_or_else(|| Error::Inconsistency("zero-cycle reconstruction stuck".into()))?;
        acc += w;
        if rem > 1 {
            cycle.push(v);
            cur = v;
        }
    }
    Ok(cycle)
}

fn solve(g: &WeightedDigraph, negate: bool) -> Result<MeanCycle> {
    let scaled = scale_graph(g, negate);
    let comps = cyclic_components(scaled.n, &scaled.edges);
    if comps.is_empty() {
        return Err(Error::NoCycle);
    }
    let means = exec::map_vec(&comps, |comp| component_min_mean(&scaled, comp));
    let mu = means.iter().min().unwrap().clone();

    // reweight the whole cyclic part by -mu (in a finer integer scale) and
    // search for the canonical zero-weight cycle; local indices must follow
    // the global order for the lexicographic tie-break
    let mut cyclic: Vec<usize> = comps.into_iter().flatten().collect();
    cyclic.sort_unstable();
    let pos: std::collections::HashMap<usize, usize> = cyclic
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    // mu = p/q in graph units; scaled weights are w*scale, so the reweighted
    // integer weight at scale*q is w*scale*q - p*scale ... careful: mu is in
    // original units, scaled weight w_int = w*scale. Reweight by mu:
    // (w - mu)*scale*q = w_int*q - p*scale*q/q ... use exact rationals once.
    let q = mu.denom().clone();
    let p = mu.numer().clone();
    let sub = &p * &scaled.scale; // mu * scale * q
    let edges_rw: Vec<(usize, usize, BigInt)> = scaled
        .edges
        .iter()
        .filter(|(u, v, _)| pos.contains_key(u) && pos.contains_key(v))
        .map(|(u, v, w)| (pos[u], pos[v], w * &q - &sub))
        .collect();
    let witness_local = zero_cycle_witness(cyclic.len(), &edges_rw)?;
    let cycle: Vec<usize> = witness_local.into_iter().map(|i| cyclic[i]).collect();
    Ok(MeanCycle {
        mean: if negate { -mu } else { mu },
        cycle,
    })
}

// ---------------------------------------------------------------------------
// psi of a periodic orbit via the layered graph

/// Exact value of the adversarial payoff of the closed-orbit measure carried
/// by `orbit`: Bob picks any invariant response on the fiber, which is the
/// same as picking a cycle in the layered graph with nodes (x-letter, phase)
/// and edge weight `F(u, y0(phase))`.
#[derive(Debug, Clone)]
pub struct PsiValue {
    pub orbit: PeriodicOrbit,
    pub value: Rat,
    /// Minimizing cycle in the layered graph as (x-letter, phase) pairs.
    pub witness_cycle: Vec<(usize, usize)>,
}

pub fn psi_periodic(x_sft: &Sft, p: &Potential, orbit: &PeriodicOrbit) -> Result<PsiValue> {
    let nx = x_sft.len();
    let s = orbit.period();
    let names: Vec<String> = (0..s * nx)
        .map(|id| {
            let (j, u) = (id / nx, id % nx);
            format!("{}@{}", x_sft.alphabet().letter(u), j)
        })
        .collect();
    let mut g = WeightedDigraph::new(names);
    for j in 0..s {
        let yj = orbit.letters()[j];
        for u in 0..nx {
            let w = p.value(u, yj).clone();
            for &v in x_sft.successors(u) {
                g.add_edge(j * nx + u, ((j + 1) % s) * nx + v, w.clone());
            }
        }
    }
    let mc = min_mean_cycle(&g).map_err(|_| {
        Error::Inconsistency("layered graph of an essential shift has no cycle".into())
    })?;
    Ok(PsiValue {
        orbit: orbit.clone(),
        value: mc.mean,
        witness_cycle: mc.cycle.into_iter().map(|id| (id % nx, id / nx)).collect(),
    })
}

/// Max of `psi` over all primitive orbits of period at most `max_period`:
/// a certified lower bound for `alpha` when `X` is transitive, and for
/// `delta` when `Y` is transitive as well.
pub fn alpha_per_lower(
    x_sft: &Sft,
    y_sft: &Sft,
    p: &Potential,
    max_period: usize,
) -> Result<(Rat, PsiValue)> {
    let orbits = enumerate_periodic_orbits(y_sft, max_period);
    if orbits.is_empty() {
        return Err(Error::NoCycle);
    }
    let psis = exec::map_vec(&orbits, |o| psi_periodic(x_sft, p, o));
    let mut best: Option<PsiValue> = None;
    for psi in psis {
        let psi = psi?;
        // orbits arrive sorted, so strict improvement keeps the canonical
        // least orbit on ties
        if best.as_ref().map_or(true, |b| psi.value > b.value) {
            best = Some(psi);
        }
    }
    let best = best.unwrap();
    Ok((best.value.clone(), best))
}

/// Classical ergodic optimum of a vertex-weighted shift: the extreme mean
/// cycle of its transition graph with each edge weighing its source letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Min,
    Max,
}

pub fn classical_value(y_sft: &Sft, weights: &[Rat], mode: Mode) -> Result<Rat> {
    assert_eq!(weights.len(), y_sft.len(), "one weight per letter");
    let mut g = WeightedDigraph::new(y_sft.alphabet().letters().to_vec());
    for u in 0..y_sft.len() {
        for &v in y_sft.successors(u) {
            g.add_edge(u, v, weights[u].clone());
        }
    }
    match mode {
        Mode::Min => min_mean_cycle_value(&g),
        Mode::Max => max_mean_cycle_value(&g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    fn graph(n: usize, edges: &[(usize, usize, i64)]) -> WeightedDigraph {
        let names = (0..n).map(|i| i.to_string()).collect();
        let mut g = WeightedDigraph::new(names);
        for &(u, v, w) in edges {
            g.add_edge(u, v, rat_i(w));
        }
        g
    }

    #[test]
    fn single_self_loop() {
        let g = graph(1, &[(0, 0, 7)]);
        let mc = min_mean_cycle(&g).unwrap();
        assert_eq!(mc.mean, rat_i(7));
        assert_eq!(mc.cycle, vec![0]);
    }

    #[test]
    fn forced_two_cycle_average() {
        let g = graph(2, &[(0, 1, 1), (1, 0, 3)]);
        let mc = min_mean_cycle(&g).unwrap();
        assert_eq!(mc.mean, rat_i(2));
        assert_eq!(mc.cycle, vec![0, 1]);
        let mx = max_mean_cycle(&g).unwrap();
        assert_eq!(mx.mean, rat_i(2));
    }

    #[test]
    fn two_cycle_beats_self_loop_under_max() {
        let g = graph(2, &[(0, 1, 1), (1, 0, 3), (0, 0, 0)]);
        assert_eq!(max_mean_cycle(&g).unwrap().mean, rat_i(2));
        assert_eq!(min_mean_cycle(&g).unwrap().mean, rat_i(0));
    }

    #[test]
    fn hruskova_vertex_graph_restricted_and_full() {
        // vertices A,B,C,D; crossing weights -1/-1, -2/-2, -3/-3; loops 0
        let full = graph(
            4,
            &[
                (0, 1, -1),
                (1, 0, -1),
                (0, 2, -1),
                (2, 0, -1),
                (2, 3, -2),
                (3, 2, -2),
                (1, 3, -3),
                (3, 1, -3),
                (0, 0, 0),
                (1, 1, 0),
                (2, 2, 0),
                (3, 3, 0),
            ],
        );
        let mx = max_mean_cycle(&full).unwrap();
        assert_eq!(mx.mean, rat_i(0));
        assert_eq!(mx.cycle, vec![0], "least zero self-loop wins the tie");

        let restricted = graph(2, &[(0, 1, -1), (1, 0, -1), (0, 0, 0), (1, 1, 0)]);
        let mc = min_mean_cycle(&restricted).unwrap();
        assert_eq!(mc.mean, rat_i(-1));
        assert_eq!(mc.cycle, vec![0, 1]);
    }

    #[test]
    fn rational_weights_exact() {
        let names = vec!["a".into(), "b".into()];
        let mut g = WeightedDigraph::new(names);
        g.add_edge(0, 1, rat(1, 3));
        g.add_edge(1, 0, rat(1, 2));
        assert_eq!(min_mean_cycle(&g).unwrap().mean, rat(5, 12));
    }

    #[test]
    fn no_cycle_is_an_error() {
        let g = graph(2, &[(0, 1, 1)]);
        assert!(matches!(min_mean_cycle(&g), Err(Error::NoCycle)));
        assert!(matches!(min_mean_cycle_value(&g), Err(Error::NoCycle)));
    }

    #[test]
    fn witness_prefers_shorter_then_lex() {
        // both self-loops achieve mean 1; node 0 is the canonical witness
        let g = graph(2, &[(1, 1, 1), (0, 0, 1), (0, 1, 0), (1, 0, 2)]);
        let mc = min_mean_cycle(&g).unwrap();
        assert_eq!(mc.mean, rat_i(1));
        assert_eq!(mc.cycle, vec![0]);
    }

    #[test]
    fn unreachable_component_still_found() {
        // cycle lives away from node 0
        let g = graph(4, &[(0, 1, 5), (1, 2, 5), (2, 3, -1), (3, 2, -1)]);
        let mc = min_mean_cycle(&g).unwrap();
        assert_eq!(mc.mean, rat_i(-1));
        assert_eq!(mc.cycle, vec![2, 3]);
    }

    // brute force over simple cycles; non-simple cycle means are convex
    // combinations of simple ones, so simple cycles suffice
    fn brute_min_mean(g: &WeightedDigraph) -> Option<(Rat, Vec<usize>)> {
        let n = g.node_count();
        let mut best: Option<(Rat, Vec<usize>)> = None;
        let mut consider = |cycle: &[usize], sum: Rat| {
            let mean = sum / rat_i(cycle.len() as i64);
            let rotations = (0..cycle.len()).map(|r| {
                let mut rot = cycle[r..].to_vec();
                rot.extend_from_slice(&cycle[..r]);
                rot
            });
            for rot in rotations {
                let cand = (mean.clone(), rot);
                let better = match &best {
                    None => true,
                    Some((bm, bc)) => {
                        (cand.0.clone(), cand.1.len(), cand.1.clone())
                            < (bm.clone(), bc.len(), bc.clone())
                    }
                };
                if better {
                    best = Some(cand);
                }
            }
        };
        fn dfs(
            g: &WeightedDigraph,
            start: usize,
            cur: usize,
            path: &mut Vec<usize>,
            sum: &Rat,
            visited: &mut Vec<bool>,
            consider: &mut dyn FnMut(&[usize], Rat),
        ) {
            for (u, v, w) in g.edges() {
                if *u != cur {
                    continue;
                }
                if *v == start {
                    consider(path, sum + w);
                } else if *v > start && !visited[*v] {
                    visited[*v] = true;
                    path.push(*v);
                    dfs(g, start, *v, path, &(sum + w), visited, consider);
                    path.pop();
                    visited[*v] = false;
                }
            }
        }
        for start in 0..n {
            let mut visited = vec![false; n];
            let mut path = vec![start];
            dfs(
                g,
                start,
                start,
                &mut path,
                &Rat::zero(),
                &mut visited,
                &mut consider,
            );
        }
        best
    }

    #[test]
    fn karp_matches_brute_force_on_fixed_graphs() {
        let cases: Vec<WeightedDigraph> = vec![
            graph(3, &[(0, 1, 2), (1, 2, -1), (2, 0, 0), (1, 0, 1), (2, 2, 1)]),
            graph(4, &[(0, 1, -3), (1, 0, 3), (1, 2, 1), (2, 3, 1), (3, 1, -2), (0, 0, 1)]),
            graph(2, &[(0, 1, 1), (1, 0, 1), (0, 0, 1), (1, 1, 1)]),
        ];
        for g in &cases {
            let (bm, bc) = brute_min_mean(g).unwrap();
            let mc = min_mean_cycle(g).unwrap();
            assert_eq!(mc.mean, bm);
            assert_eq!(mc.cycle, bc);
        }
    }

    proptest::proptest! {
        #[test]
        fn karp_matches_brute_force_on_random_graphs(
            n in 1usize..6,
            edges in proptest::collection::vec((0usize..6, 0usize..6, -3i64..=3), 1..12),
        ) {
            let edges: Vec<(usize, usize, i64)> = edges
                .into_iter()
                .map(|(u, v, w)| (u % n, v % n, w))
                .collect();
            let g = graph(n, &edges);
            match (brute_min_mean(&g), min_mean_cycle(&g)) {
                (None, Err(Error::NoCycle)) => {}
                (Some((bm, bc)), Ok(mc)) => {
                    proptest::prop_assert_eq!(&mc.mean, &bm);
                    proptest::prop_assert_eq!(&mc.cycle, &bc);
                }
                (b, k) => proptest::prop_assert!(false, "brute {:?} vs karp {:?}", b, k.map(|m| m.mean)),
            }
        }
    }

    fn golden_mean() -> Sft {
        Sft::from_edges(&["0", "1"], &[("0", "0"), ("0", "1"), ("1", "0")]).unwrap()
    }

    fn full2() -> Sft {
        Sft::full_shift(&["0", "1"]).unwrap()
    }

    #[test]
    fn psi_constant_potential() {
        let x = golden_mean();
        let y = full2();
        let p = Potential::constant(x.alphabet().clone(), y.alphabet().clone(), rat_i(-2));
        for orbit in enumerate_periodic_orbits(&y, 3) {
            assert_eq!(psi_periodic(&x, &p, &orbit).unwrap().value, rat_i(-2));
        }
    }

    #[test]
    fn psi_golden_mean_against_all_ones() {
        let x = golden_mean();
        let y = full2();
        let p = Potential::hamming(x.alphabet());
        let orbit = PeriodicOrbit::new(&y, &[1]).unwrap();
        let psi = psi_periodic(&x, &p, &orbit).unwrap();
        assert_eq!(psi.value, rat(1, 2), "alternate 0101 against 1111");
        assert_eq!(psi.witness_cycle, vec![(0, 0), (1, 0)]);
    }

    #[test]
    fn psi_full_shift_copies() {
        let x = full2();
        let p = Potential::hamming(x.alphabet());
        for orbit in enumerate_periodic_orbits(&full2(), 3) {
            assert_eq!(psi_periodic(&x, &p, &orbit).unwrap().value, rat_i(0));
        }
    }

    #[test]
    fn psi_is_rotation_invariant() {
        let x = golden_mean();
        let y = full2();
        let p = Potential::hamming(x.alphabet());
        // same orbit entered via different rotations canonicalizes
        let a = PeriodicOrbit::new(&y, &[0, 1, 1]).unwrap();
        let b = PeriodicOrbit::new(&y, &[1, 0, 1]).unwrap();
        assert_eq!(
            psi_periodic(&x, &p, &a).unwrap().value,
            psi_periodic(&x, &p, &b).unwrap().value
        );
    }

    #[test]
    fn psi_dominates_single_word_bound() {
        // psi(nu) >= min over x-words of the s0*n average, n = 1..3
        let x = golden_mean();
        let y = full2();
        let p = Potential::hamming(x.alphabet());
        for orbit in enumerate_periodic_orbits(&y, 3) {
            let psi = psi_periodic(&x, &p, &orbit).unwrap();
            for reps in 1..=3usize {
                let len = orbit.period() * reps;
                let bound = x
                    .legal_words(len)
                    .iter()
                    .map(|w| {
                        let sum: Rat = (0..len)
                            .map(|j| p.value(w[j], orbit.letter_at(j as i64)).clone())
                            .sum();
                        sum / rat_i(len as i64)
                    })
                    .min()
                    .unwrap();
                assert!(psi.value >= bound);
            }
        }
    }

    #[test]
    fn alpha_per_on_flagship_pair() {
        let x = golden_mean();
        let y = full2();
        let p = Potential::hamming(x.alphabet());
        let (value, best) = alpha_per_lower(&x, &y, &p, 2).unwrap();
        assert_eq!(value, rat(1, 2));
        assert_eq!(best.orbit.letters(), &[1]);
    }

    #[test]
    fn alpha_per_identical_shifts_copy() {
        let x = golden_mean();
        let p = Potential::hamming(x.alphabet());
        let (value, _) = alpha_per_lower(&x, &golden_mean(), &p, 3).unwrap();
        assert_eq!(value, rat_i(0));
    }

    #[test]
    fn alpha_per_constant() {
        let x = golden_mean();
        let y = full2();
        let p = Potential::constant(x.alphabet().clone(), y.alphabet().clone(), rat_i(5));
        let (value, best) = alpha_per_lower(&x, &y, &p, 3).unwrap();
        assert_eq!(value, rat_i(5));
        assert_eq!(best.orbit.letters(), &[0], "canonical least orbit on ties");
    }

    #[test]
    fn alpha_per_monotone_in_period() {
        let x = golden_mean();
        let y = full2();
        let p = Potential::hamming(x.alphabet());
        let mut prev = None;
        for pmax in 1..=5 {
            let (value, _) = alpha_per_lower(&x, &y, &p, pmax).unwrap();
            if let Some(prev) = &prev {
                assert!(value >= *prev);
            }
            prev = Some(value);
        }
    }

    #[test]
    fn classical_values() {
        let single = Sft::full_shift(&["a"]).unwrap();
        assert_eq!(
            classical_value(&single, &[rat_i(9)], Mode::Max).unwrap(),
            rat_i(9)
        );
        let gm = golden_mean();
        let w = vec![rat_i(0), rat_i(1)];
        assert_eq!(classical_value(&gm, &w, Mode::Max).unwrap(), rat(1, 2));
        let f2 = full2();
        assert_eq!(classical_value(&f2, &w, Mode::Max).unwrap(), rat_i(1));
    }
}
