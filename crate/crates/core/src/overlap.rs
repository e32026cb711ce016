//! Overlaps of the suspension tiling, the overlap graph with multiplicity,
//! and the overlap-coincidence decision.
//!
//! An overlap `(U, y, V)` is recorded up to translation as the class
//! `(color(U), color(V), pos(V) − y − pos(U))`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graphkit::{self, Digraph, DotVertex};
use crate::numberfield::AlgebraicReal;
use crate::tiling::{Level, Patch, SuspensionTiling};

pub const DEFAULT_CLASS_CAP: usize = 10_000;
/// Radius doublings tried before seeding is declared unstable.
pub const DEFAULT_MAX_DOUBLINGS: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OverlapClass {
    pub u: usize,
    pub v: usize,
    /// `pos(V − y) − pos(U)`.
    pub t: AlgebraicReal,
}

impl OverlapClass {
    pub fn new(u: usize, v: usize, t: AlgebraicReal) -> Self {
        OverlapClass { u, v, t }
    }

    pub fn is_coincidence(&self) -> bool {
        self.u == self.v && self.t.is_zero()
    }

    /// `−ℓ_v < t < ℓ_u`.
    pub fn is_valid(&self, lengths: &[AlgebraicReal]) -> bool {
        -&lengths[self.v] < self.t && self.t < lengths[self.u]
    }

    /// The same overlap seen from `V`.
    pub fn swapped(&self) -> Self {
        OverlapClass { u: self.v, v: self.u, t: -&self.t }
    }
}

impl Ord for OverlapClass {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.u, self.v).cmp(&(other.u, other.v)).then_with(|| self.t.cmp(&other.t))
    }
}

impl PartialOrd for OverlapClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OverlapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.u + 1, self.v + 1, self.t)
    }
}

/// One subtile pair of an inflated overlap: indices into `σ^n(u)` and
/// `σ^n(v)` and the resulting class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InflatedPair {
    pub left: usize,
    pub right: usize,
    pub class: OverlapClass,
}

/// Places `U` at 0 and `V − y` at `t`, inflates both by `Ω^n`, and lists
/// every pair of subtiles with intersecting interiors, left to right.
pub fn inflate_class(tiling: &SuspensionTiling, level: &Level, class: &OverlapClass) -> Vec<InflatedPair> {
    let lengths = tiling.lengths();
    let wu = &level.words[class.u];
    let wv = &level.words[class.v];
    let shift = &level.beta_pow * &class.t;
    let pu = &level.offsets[class.u];
    let pv: Vec<AlgebraicReal> = level.offsets[class.v].iter().map(|x| x + &shift).collect();
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < wu.len() && j < wv.len() {
        let end_u = &pu[i] + &lengths[wu[i]];
        let end_v = &pv[j] + &lengths[wv[j]];
        if pu[i] < end_v && pv[j] < end_u {
            out.push(InflatedPair {
                left: i,
                right: j,
                class: OverlapClass::new(wu[i], wv[j], &pv[j] - &pu[i]),
            });
        }
        match end_u.cmp(&end_v) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Classes of all overlaps `(U, y, V)` with `U, V` in the patch and `y`
/// among `ys`.
pub fn seed_overlaps(tiling: &SuspensionTiling, patch: &Patch, ys: &[AlgebraicReal]) -> BTreeSet<OverlapClass> {
    let lengths = tiling.lengths();
    let tiles = patch.tiles();
    // floating positions only narrow the candidate window; every class is
    // decided exactly
    let pos: Vec<f64> = tiles.iter().map(|t| t.pos.to_f64()).collect();
    let len_f: Vec<f64> = lengths.iter().map(AlgebraicReal::to_f64).collect();
    let lmax = len_f.iter().cloned().fold(0.0, f64::max);
    let mut out = BTreeSet::new();
    let mut seen = std::collections::HashSet::new();
    for y in ys {
        let yf = y.to_f64();
        for (a, u) in tiles.iter().enumerate() {
            let eps = 1e-6 * (1.0 + pos[a].abs() + yf.abs());
            let lo = pos[a] + yf - lmax - eps;
            let hi = pos[a] + yf + len_f[u.color] + eps;
            let start = pos.partition_point(|&p| p <= lo);
            for (b, v) in tiles.iter().enumerate().skip(start) {
                if pos[b] >= hi {
                    break;
                }
                let class = OverlapClass::new(u.color, v.color, &(&v.pos - y) - &u.pos);
                if !seen.insert(class.clone()) {
                    continue;
                }
                if class.is_valid(lengths) {
                    out.insert(class);
                }
            }
        }
    }
    out
}

/// Every overlap class of the tiling, found without a seeding patch.
///
/// Write an overlap `(U, y, V)` with `y = X − W` as the configuration
/// `(u, v, w, w, t)`, `t = (pos V − pos U) − (pos X − pos W)`. Replacing the
/// four tiles by their parents divides `t` by β up to a bounded offset, so
/// `|t|` never exceeds `K = 2·max ℓ + 2·max offset/(β − 1)` along the way up.
/// After enough steps each of the pairs `(U, V)` and `(W, X)` is one tile or
/// two adjacent tiles forming a legal word. Closing those configurations
/// under inflation, pruned at `K`, therefore reaches every class.
pub fn all_overlap_classes(tiling: &SuspensionTiling, cap: usize) -> Result<BTreeSet<OverlapClass>> {
    let m = tiling.alphabet_size();
    let lengths = tiling.lengths();
    let field = tiling.field();
    let beta = tiling.beta();
    let lv = tiling.level(1)?;
    let max_off = lv.offsets.iter().flatten().max().cloned().unwrap_or_else(|| field.zero());
    let bound = &tiling.max_length().scale_int(2) + &(&max_off.scale_int(2) * &(beta - &field.one()).inverse()?);
    let bound_f = bound.to_f64();
    let beta_f = beta.to_f64();

    // pairs (u, v) of one tile or two adjacent tiles, with pos V − pos U
    let mut pairs: Vec<Vec<AlgebraicReal>> = vec![Vec::new(); m * m];
    for a in 0..m {
        pairs[a * m + a].push(field.zero());
    }
    for (a, b) in tiling.substitution().legal_pairs() {
        pairs[a * m + b].push(lengths[a].clone());
        pairs[b * m + a].push(-&lengths[a]);
    }
    // children of a pair type: (u', v', offset of v' − offset of u')
    let mut children: Vec<Vec<(usize, usize, AlgebraicReal, f64)>> = vec![Vec::new(); m * m];
    for a in 0..m {
        for b in 0..m {
            for (i, &x) in lv.words[a].iter().enumerate() {
                for (j, &y) in lv.words[b].iter().enumerate() {
                    let d = &lv.offsets[b][j] - &lv.offsets[a][i];
                    let df = d.to_f64();
                    children[a * m + b].push((x, y, d, df));
                }
            }
        }
    }

    type State = (usize, usize, AlgebraicReal);
    let state_cap = cap.saturating_mul(m * m);
    let mut seen: std::collections::HashSet<State> = std::collections::HashSet::new();
    let mut queue: VecDeque<State> = VecDeque::new();
    for p in 0..m * m {
        for q in 0..m * m {
            for e in &pairs[p] {
                for z in &pairs[q] {
                    let st = (p, q, e - z);
                    if seen.insert(st.clone()) {
                        queue.push_back(st);
                    }
                }
            }
        }
    }
    while let Some((p, q, t)) = queue.pop_front() {
        let bt = beta * &t;
        let bt_f = beta_f * t.to_f64();
        for (a, b, d1, f1) in &children[p] {
            for (c, e, d2, f2) in &children[q] {
                let tf = bt_f + f1 - f2;
                if tf.abs() > bound_f + 1e-6 * (1.0 + bound_f + bt_f.abs()) {
                    continue;
                }
                let nt = &(&bt + d1) - d2;
                if nt.abs() > bound {
                    continue;
                }
                let st = (a * m + b, c * m + e, nt);
                if !seen.contains(&st) {
                    if seen.len() >= state_cap {
                        return Err(Error::ClassCap { cap });
                    }
                    seen.insert(st.clone());
                    queue.push_back(st);
                }
            }
        }
    }
    let out: BTreeSet<OverlapClass> = seen
        .into_iter()
        .filter(|(_, q, _)| q / m == q % m)
        .map(|(p, _, t)| OverlapClass::new(p / m, p % m, t))
        .filter(|c| c.is_valid(lengths))
        .collect();
    if out.len() > cap {
        return Err(Error::ClassCap { cap });
    }
    Ok(out)
}

/// Overlap graph with multiplicity; vertices are sorted.
#[derive(Clone, Debug)]
pub struct OverlapGraph {
    pub vertices: Vec<OverlapClass>,
    pub graph: Digraph,
    pub level: u32,
}

impl OverlapGraph {
    pub fn index_of(&self, c: &OverlapClass) -> Option<usize> {
        self.vertices.binary_search(c).ok()
    }

    pub fn coincidences(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| self.vertices[i].is_coincidence()).collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<OverlapClass> {
        self.vertices.iter().cloned().collect()
    }

    /// DOT rendering: coincidences double-circled, vertices that cannot
    /// reach a coincidence drawn in red.
    pub fn to_dot(&self, name: &str) -> String {
        let reach = graphkit::reachable_to(&self.graph, &self.coincidences());
        let vertices: Vec<DotVertex> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut attrs = Vec::new();
                if c.is_coincidence() {
                    attrs.push(("shape".to_string(), "doublecircle".to_string()));
                }
                if !reach.contains(&i) {
                    attrs.push(("color".to_string(), "red".to_string()));
                    attrs.push(("fontcolor".to_string(), "red".to_string()));
                }
                DotVertex { label: c.to_string(), attrs }
            })
            .collect();
        graphkit::to_dot(name, &vertices, &self.graph)
    }
}

/// Breadth-first closure of `seeds` under `inflate_class` at `level`.
pub fn build_graph(
    tiling: &SuspensionTiling,
    seeds: &BTreeSet<OverlapClass>,
    level: u32,
    cap: usize,
) -> Result<OverlapGraph> {
    if seeds.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if level == 0 {
        return Err(Error::Precondition("inflation level must be at least 1".into()));
    }
    let lv = tiling.level(level)?;
    let mut index: HashMap<OverlapClass, usize> = HashMap::new();
    let mut found: Vec<OverlapClass> = Vec::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        index.insert(s.clone(), found.len());
        found.push(s.clone());
        queue.push_back(found.len() - 1);
    }
    if found.len() > cap {
        return Err(Error::ClassCap { cap });
    }
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    while let Some(a) = queue.pop_front() {
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        for pair in inflate_class(tiling, &lv, &found[a]) {
            let b = match index.get(&pair.class) {
                Some(&b) => b,
                None => {
                    if found.len() == cap {
                        return Err(Error::ClassCap { cap });
                    }
                    index.insert(pair.class.clone(), found.len());
                    found.push(pair.class);
                    queue.push_back(found.len() - 1);
                    found.len() - 1
                }
            };
            *counts.entry(b).or_insert(0) += 1;
        }
        edges.extend(counts.into_iter().map(|(b, m)| (a, b, m)));
    }
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&a, &b| found[a].cmp(&found[b]));
    let mut rank = vec![0; found.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let vertices = order.iter().map(|&i| found[i].clone()).collect();
    let graph = Digraph::new(found.len(), edges.into_iter().map(|(a, b, m)| (rank[a], rank[b], m)))?;
    Ok(OverlapGraph { vertices, graph, level })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Shortest path length from each vertex to a coincidence.
    Distances(Vec<usize>),
    /// Vertices from which no coincidence is reachable.
    Stuck(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapVerdict {
    pub holds: bool,
    pub certificate: Certificate,
}

pub fn overlap_coincidence(g: &OverlapGraph) -> Result<OverlapVerdict> {
    if g.vertices.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let dist = graphkit::distances_to(&g.graph, &g.coincidences());
    let stuck: Vec<usize> = (0..dist.len()).filter(|&i| dist[i].is_none()).collect();
    if stuck.is_empty() {
        Ok(OverlapVerdict {
            holds: true,
            certificate: Certificate::Distances(dist.into_iter().map(|d| d.expect("reachable")).collect()),
        })
    } else {
        Ok(OverlapVerdict { holds: false, certificate: Certificate::Stuck(stuck) })
    }
}

/// A strongly connected component of the overlap graph without
/// coincidences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccReport {
    pub vertices: Vec<usize>,
    /// Whether the Perron root of its multiplicity matrix is `β^level`.
    pub perron_is_beta_power: bool,
}

/// Nontrivial coincidence-free components, in vertex order.
pub fn expansive_sccs(g: &OverlapGraph, beta: &AlgebraicReal) -> Vec<SccReport> {
    let target = beta.pow(g.level);
    let s = graphkit::scc(&g.graph);
    let mut out: Vec<SccReport> = s
        .components
        .iter()
        .enumerate()
        .filter(|&(c, comp)| s.is_nontrivial(&g.graph, c) && comp.iter().all(|&v| !g.vertices[v].is_coincidence()))
        .map(|(_, comp)| {
            let sub = g.graph.induced(comp);
            SccReport {
                vertices: comp.clone(),
                perron_is_beta_power: graphkit::perron_equals(&sub.adjacency_matrix(), &target),
            }
        })
        .collect();
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}

#[derive(Clone, Debug)]
pub struct SeedingOptions {
    /// Initial patch radius; `8 · max ℓ_i` when absent.
    pub radius: Option<AlgebraicReal>,
    pub level: u32,
    pub cap: usize,
    pub max_doublings: u32,
}

impl Default for SeedingOptions {
    fn default() -> Self {
        SeedingOptions { radius: None, level: 1, cap: DEFAULT_CLASS_CAP, max_doublings: DEFAULT_MAX_DOUBLINGS }
    }
}

/// Overlap graph seeded from the return vectors of the central patch of
/// the given radius.
pub fn graph_at_radius(tiling: &SuspensionTiling, radius: &AlgebraicReal, level: u32, cap: usize) -> Result<OverlapGraph> {
    let patch = tiling.central_patch(radius)?;
    let ys = tiling.return_vectors(&patch);
    let seeds = seed_overlaps(tiling, &patch, &ys);
    build_graph(tiling, &seeds, level, cap)
}

#[derive(Clone, Debug)]
pub struct StableGraph {
    pub graph: OverlapGraph,
    /// Radius at which the vertex set first stopped changing.
    pub radius: AlgebraicReal,
    pub doublings: u32,
}

/// Overlap graph seeded from [`all_overlap_classes`] together with the
/// return vectors of central patches; the radius is doubled until the closed
/// vertex set is the same at `r`, `2r` and `4r`. Patch seeds never add a
/// class to a complete enumeration, so this settles at the first radius
/// unless the two disagree.
pub fn stable_overlap_graph(tiling: &SuspensionTiling, opts: &SeedingOptions) -> Result<StableGraph> {
    let mut radius = opts.radius.clone().unwrap_or_else(|| tiling.max_length().scale_int(8));
    let exact = all_overlap_classes(tiling, opts.cap)?;
    let mut history: Vec<(AlgebraicReal, OverlapGraph)> = Vec::new();
    for doubling in 0..=opts.max_doublings + 2 {
        let patch = tiling.central_patch(&radius)?;
        let mut seeds = seed_overlaps(tiling, &patch, &tiling.return_vectors(&patch));
        seeds.extend(exact.iter().cloned());
        let g = build_graph(tiling, &seeds, opts.level, opts.cap)?;
        history.push((radius.clone(), g));
        if let [.., (r0, a), (_, b), (_, c)] = history.as_slice() {
            if a.vertices == b.vertices && b.vertices == c.vertices {
                return Ok(StableGraph { graph: a.clone(), radius: r0.clone(), doublings: doubling - 2 });
            }
        }
        radius = radius.scale_int(2);
    }
    Err(Error::SeedingUnstable { doublings: opts.max_doublings })
}
