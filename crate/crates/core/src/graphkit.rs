//! Directed multigraphs: strongly connected components, reachability,
//! out-degree-one subgraphs realizing a prescribed cycle set, and exact
//! Perron-root comparison.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numberfield::AlgebraicReal;
use crate::poly::{self, SturmChain};

/// Directed multigraph on vertices `0..n`. Parallel edges are merged into
/// one edge with the summed multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    edges: Vec<(usize, usize, u64)>,
}

impl Digraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, u64)>) -> Result<Self> {
        let mut merged: std::collections::BTreeMap<(usize, usize), u64> = Default::default();
        for (a, b, m) in edges {
            if a >= n || b >= n {
                return Err(Error::Precondition(format!("edge {a}->{b} leaves a graph of {n} vertices")));
            }
            if m == 0 {
                return Err(Error::Precondition(format!("edge {a}->{b} has multiplicity 0")));
            }
            *merged.entry((a, b)).or_insert(0) += m;
        }
        Ok(Digraph { n, edges: merged.into_iter().map(|((a, b), m)| (a, b, m)).collect() })
    }

    /// Simple digraph from an edge list, each edge with multiplicity one.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, pairs.iter().map(|&(a, b)| (a, b, 1)))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Edges sorted by `(from, to)`.
    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search_by(|&(x, y, _)| (x, y).cmp(&(a, b))).is_ok()
    }

    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b, _) in &self.edges {
            adj[a].push(b);
        }
        adj
    }

    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b, _) in &self.edges {
            adj[b].push(a);
        }
        adj
    }

    /// Number of distinct out-neighbours of every vertex.
    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, _, _) in &self.edges {
            deg[a] += 1;
        }
        deg
    }

    /// `A[i][j]` = multiplicity of the edge `i → j`.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u64>> {
        let mut m = vec![vec![0u64; self.n]; self.n];
        for &(a, b, k) in &self.edges {
            m[a][b] = k;
        }
        m
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b, _)| index[a] != usize::MAX && index[b] != usize::MAX)
            .map(|&(a, b, m)| (index[a], index[b], m));
        Digraph::new(vertices.len(), edges).expect("induced edges are valid")
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.n > 0 && scc(self).components.len() == 1
    }
}

#[derive(Clone, Debug)]
pub struct Sccs {
    /// Components in reverse topological order (sinks first), each sorted.
    pub components: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
    /// One vertex per component; an edge `A → B` for every edge between
    /// distinct components.
    pub condensation: Digraph,
}

impl Sccs {
    /// Whether the component carries at least one edge (a single vertex
    /// needs a self-loop).
    pub fn is_nontrivial(&self, g: &Digraph, c: usize) -> bool {
        let comp = &self.components[c];
        comp.len() > 1 || g.has_edge(comp[0], comp[0])
    }
}

/// Tarjan's algorithm, iterative.
pub fn scc(g: &Digraph) -> Sccs {
    let n = g.n;
    let adj = g.successors();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut next = 0usize;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // frames of (vertex, next successor position)
        let mut call = vec![(root, 0usize)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("vertex on stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
        }
    }
    let mut component_of = vec![0; n];
    for (c, comp) in components.iter().enumerate() {
        for &v in comp {
            component_of[v] = c;
        }
    }
    let cond_edges = g
        .edges
        .iter()
        .filter(|&&(a, b, _)| component_of[a] != component_of[b])
        .map(|&(a, b, _)| (component_of[a], component_of[b], 1));
    let condensation = Digraph::new(components.len(), cond_edges).expect("condensation edges are valid");
    Sccs { components, component_of, condensation }
}

/// Vertices with a (possibly empty) path into `targets`.
pub fn reachable_to(g: &Digraph, targets: &[usize]) -> BTreeSet<usize> {
    distances_to(g, targets)
        .iter()
        .enumerate()
        .filter_map(|(v, d)| d.map(|_| v))
        .collect()
}

/// Length of a shortest path from each vertex into `targets`.
pub fn distances_to(g: &Digraph, targets: &[usize]) -> Vec<Option<usize>> {
    let pred = g.predecessors();
    let mut dist = vec![None; g.n];
    let mut queue = VecDeque::new();
    for &t in targets {
        if dist[t].is_none() {
            dist[t] = Some(0);
            queue.push_back(t);
        }
    }
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("queued vertices have a distance");
        for &u in &pred[v] {
            if dist[u].is_none() {
                dist[u] = Some(d + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Rotates a cycle so that it starts at its smallest vertex.
pub fn normalize_cycle(cycle: &[usize]) -> Vec<usize> {
    let Some(start) = (0..cycle.len()).min_by_key(|&i| cycle[i]) else {
        return Vec::new();
    };
    cycle[start..].iter().chain(&cycle[..start]).copied().collect()
}

/// Spanning subgraph of the strongly connected graph `g` in which every
/// vertex has out-degree one and whose cycles are exactly `cycles`.
///
/// Starting from the union of the cycles, the smallest vertex outside it
/// that has an edge into it is attached through its smallest such target,
/// until every vertex is attached.
pub fn cycle_extension(g: &Digraph, cycles: &[Vec<usize>]) -> Result<Digraph> {
    if g.n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    if cycles.is_empty() {
        return Err(Error::InvalidCycles("at least one cycle is required".into()));
    }
    let mut next = vec![usize::MAX; g.n];
    for cycle in cycles {
        if cycle.is_empty() {
            return Err(Error::InvalidCycles("empty cycle".into()));
        }
        for (k, &v) in cycle.iter().enumerate() {
            if v >= g.n {
                return Err(Error::InvalidCycles(format!("vertex {v} is not in the graph")));
            }
            if next[v] != usize::MAX {
                return Err(Error::InvalidCycles(format!("vertex {v} occurs twice; cycles must be simple and vertex-disjoint")));
            }
            let w = cycle[(k + 1) % cycle.len()];
            if !g.has_edge(v, w) {
                return Err(Error::InvalidCycles(format!("edge {v}->{w} is not in the graph")));
            }
            next[v] = w;
        }
    }
    let succ = g.successors();
    loop {
        let attach = (0..g.n).find_map(|v| {
            if next[v] != usize::MAX {
                return None;
            }
            succ[v].iter().copied().filter(|&w| next[w] != usize::MAX).min().map(|w| (v, w))
        });
        match attach {
            Some((v, w)) => next[v] = w,
            None => break,
        }
    }
    // strong connectivity guarantees every vertex was attached
    debug_assert!(next.iter().all(|&w| w != usize::MAX));
    Digraph::new(g.n, next.iter().enumerate().map(|(v, &w)| (v, w, 1)))
}

/// Cycles of a functional graph (out-degree exactly one everywhere), each
/// normalized and listed in increasing order.
pub fn functional_cycles(g: &Digraph) -> Result<Vec<Vec<usize>>> {
    let mut next = vec![usize::MAX; g.n];
    for &(a, b, _) in &g.edges {
        if next[a] != usize::MAX {
            return Err(Error::Precondition(format!("vertex {a} has out-degree above 1")));
        }
        next[a] = b;
    }
    if let Some(v) = next.iter().position(|&w| w == usize::MAX) {
        return Err(Error::Precondition(format!("vertex {v} has out-degree 0")));
    }
    // 0 = unvisited, 1 = on the current walk, 2 = done
    let mut state = vec![0u8; g.n];
    let mut cycles = Vec::new();
    for start in 0..g.n {
        let mut walk = Vec::new();
        let mut v = start;
        while state[v] == 0 {
            state[v] = 1;
            walk.push(v);
            v = next[v];
        }
        if state[v] == 1 {
            let at = walk.iter().position(|&w| w == v).expect("v lies on the walk");
            cycles.push(normalize_cycle(&walk[at..]));
        }
        for w in walk {
            state[w] = 2;
        }
    }
    cycles.sort();
    Ok(cycles)
}

/// Whether `target` is the Perron root (the largest real eigenvalue) of the
/// nonnegative integer matrix.
pub fn perron_equals(matrix: &[Vec<u64>], target: &AlgebraicReal) -> bool {
    if matrix.is_empty() {
        return false;
    }
    let big: Vec<Vec<BigInt>> = matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cp = poly::char_poly(&big);
    // Horner evaluation in ℚ(β)
    let mut acc = target.field().zero();
    for c in cp.coeffs().iter().rev() {
        acc = &(&acc * target) + &target.field().from_rational(c.clone());
    }
    if !acc.is_zero() {
        return false;
    }
    let sturm = SturmChain::new(&cp.square_free());
    if target.is_rational() {
        let q = target.coords()[0].clone();
        return sturm.count_above(&q) == 0;
    }
    let mut bits = 32;
    loop {
        let (lo, hi) = target.enclosure(bits);
        let lo = lo - BigRational::new(BigInt::one(), BigInt::one() << bits);
        if sturm.count_in(&lo, &hi) == 1 {
            return sturm.count_above(&hi) == 0;
        }
        bits *= 2;
    }
}

/// Attributes of one vertex in a DOT rendering.
#[derive(Clone, Debug)]
pub struct DotVertex {
    pub label: String,
    pub attrs: Vec<(String, String)>,
}

/// Renders a multigraph in DOT with multiplicities as edge labels. The
/// output depends only on the arguments.
pub fn to_dot(name: &str, vertices: &[DotVertex], g: &Digraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
    for (i, v) in vertices.iter().enumerate() {
        let _ = write!(out, "  v{i} [label=\"{}\"", escape(&v.label));
        for (k, val) in &v.attrs {
            let _ = write!(out, ", {k}=\"{}\"", escape(val));
        }
        out.push_str("];\n");
    }
    for &(a, b, m) in g.edges() {
        let _ = writeln!(out, "  v{a} -> v{b} [label=\"{m}\"];");
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::NumberField;
    use crate::poly::Poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// All simple cycles, normalized, by depth-first search from each
    /// smallest vertex.
    fn brute_force_cycles(g: &Digraph) -> Vec<Vec<usize>> {
        fn dfs(g: &Digraph, start: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let v = *path.last().unwrap();
            for w in 0..g.vertex_count() {
                if !g.has_edge(v, w) {
                    continue;
                }
                if w == start {
                    out.push(path.clone());
                } else if w > start && !path.contains(&w) {
                    path.push(w);
                    dfs(g, start, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        for s in 0..g.vertex_count() {
            dfs(g, s, &mut vec![s], &mut out);
        }
        out.sort();
        out
    }

    fn random_strongly_connected(rng: &mut ChaCha8Rng) -> Digraph {
        let n = rng.gen_range(1..=12);
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
        for _ in 0..rng.gen_range(0..=n + 2) {
            pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
        }
        Digraph::from_pairs(n, &pairs).unwrap()
    }

    fn random_disjoint_cycles(g: &Digraph, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
        let mut all = brute_force_cycles(g);
        for i in (1..all.len()).rev() {
            all.swap(i, rng.gen_range(0..=i));
        }
        let want = rng.gen_range(1..=3);
        let mut used = BTreeSet::new();
        let mut picked = Vec::new();
        for c in all {
            if picked.len() == want {
                break;
            }
            if c.iter().all(|v| !used.contains(v)) {
                used.extend(c.iter().copied());
                picked.push(c);
            }
        }
        picked
    }

    #[test]
    fn scc_examples() {
        let g = Digraph::new(1, []).unwrap();
        assert_eq!(scc(&g).components, vec![vec![0]]);
        let g = Digraph::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(scc(&g).components, vec![vec![0, 1]]);
        let g = Digraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        let s = scc(&g);
        assert_eq!(s.components.len(), 3);
        // sinks first
        assert_eq!(s.components[0], vec![2]);
    }

    #[test]
    fn condensation_is_acyclic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=15);
            let pairs: Vec<_> = (0..rng.gen_range(0..3 * n)).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
            let g = Digraph::from_pairs(n, &pairs).unwrap();
            let s = scc(&g);
            let c = &s.condensation;
            assert!(scc(c).components.iter().all(|comp| comp.len() == 1));
            assert!(c.edges().iter().all(|&(a, b, _)| a != b));
            // mutual reachability inside a component
            for comp in &s.components {
                for &v in comp {
                    let r = reachable_to(&g, &[v]);
                    assert!(comp.iter().all(|w| r.contains(w)));
                }
            }
        }
    }

    #[test]
    fn reachability() {
        let g = Digraph::from_pairs(4, &[(0, 1), (1, 2), (3, 3)]).unwrap();
        assert_eq!(reachable_to(&g, &[2]), BTreeSet::from([0, 1, 2]));
        assert!(reachable_to(&g, &[]).is_empty());
        assert_eq!(reachable_to(&g, &[0, 1, 2, 3]).len(), 4);
        assert_eq!(distances_to(&g, &[2]), vec![Some(2), Some(1), Some(0), None]);
    }

    #[test]
    fn cycle_extension_single_cycle_is_identity() {
        let g = Digraph::from_pairs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let out = cycle_extension(&g, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(out, g);
    }

    #[test]
    fn cycle_extension_complete_graph() {
        let pairs: Vec<_> = (0..3).flat_map(|a| (0..3).filter(move |&b| b != a).map(move |b| (a, b))).collect();
        let g = Digraph::from_pairs(3, &pairs).unwrap();
        let out = cycle_extension(&g, &[vec![0, 1]]).unwrap();
        let valid = [
            Digraph::from_pairs(3, &[(0, 1), (1, 0), (2, 0)]).unwrap(),
            Digraph::from_pairs(3, &[(0, 1), (1, 0), (2, 1)]).unwrap(),
        ];
        assert!(valid.contains(&out));
        assert_eq!(functional_cycles(&out).unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn cycle_extension_rejects_bad_input() {
        let g = Digraph::from_pairs(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert!(matches!(cycle_extension(&g, &[vec![0, 1]]), Err(Error::NotStronglyConnected)));
        let g = Digraph::from_pairs(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 0)]).unwrap();
        assert!(matches!(cycle_extension(&g, &[vec![0, 1], vec![0]]), Err(Error::InvalidCycles(_))));
        assert!(matches!(cycle_extension(&g, &[vec![0, 2]]), Err(Error::InvalidCycles(_))));
        assert!(matches!(cycle_extension(&g, &[]), Err(Error::InvalidCycles(_))));
    }

    #[test]
    fn cycle_extension_random_suite() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..100 {
            let g = random_strongly_connected(&mut rng);
            let cycles = random_disjoint_cycles(&g, &mut rng);
            let out = cycle_extension(&g, &cycles).unwrap();
            assert_eq!(out.vertex_count(), g.vertex_count());
            assert!(out.out_degrees().iter().all(|&d| d == 1));
            assert!(out.edges().iter().all(|&(a, b, _)| g.has_edge(a, b)));
            let mut want: Vec<_> = cycles.iter().map(|c| normalize_cycle(c)).collect();
            want.sort();
            assert_eq!(brute_force_cycles(&out), want);
            assert_eq!(functional_cycles(&out).unwrap(), want);
        }
    }

    #[test]
    fn perron_comparisons() {
        let q = NumberField::from_largest_root(&Poly::from_ints(&[-2, 1])).unwrap();
        assert!(perron_equals(&[vec![2]], &q.generator()));
        assert!(!perron_equals(&[vec![1]], &q.generator()));
        let k = NumberField::from_largest_root(&Poly::from_ints(&[-1, -1, 1])).unwrap();
        let beta = k.generator();
        assert!(perron_equals(&[vec![1, 1], vec![1, 0]], &beta));
        assert!(!perron_equals(&[vec![1]], &beta));
        // 1 - β is a root of x² - x - 1 but not the largest
        assert!(!perron_equals(&[vec![1, 1], vec![1, 0]], &(&k.one() - &beta)));
        // β² = β + 1 is the Perron root of the squared matrix
        assert!(perron_equals(&[vec![2, 1], vec![1, 1]], &beta.pow(2)));
        // block diagonal with a larger block elsewhere
        let m = vec![vec![1, 1, 0], vec![1, 0, 0], vec![0, 0, 2]];
        assert!(!perron_equals(&m, &beta));
    }

    #[test]
    fn dot_is_deterministic() {
        let g = Digraph::new(2, [(0, 1, 2), (1, 0, 1)]).unwrap();
        let v = vec![
            DotVertex { label: "a".into(), attrs: vec![("shape".into(), "doublecircle".into())] },
            DotVertex { label: "b\"".into(), attrs: vec![] },
        ];
        let dot = to_dot("g", &v, &g);
        assert_eq!(dot, to_dot("g", &v, &g));
        assert!(dot.contains("v0 -> v1 [label=\"2\"]"));
        assert!(dot.contains("label=\"b\\\"\""));
    }
}
