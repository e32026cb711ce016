//! Strong coincidence for control-point families generated by tile maps,
//! the group of eventual return vectors, multiple strong coincidence of
//! level `n`, and witness extraction from a coincidence-free component of
//! the overlap graph.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graphkit::{self, Digraph};
use crate::numberfield::AlgebraicReal;
use crate::overlap::{inflate_class, OverlapClass, OverlapGraph};
use crate::tiling::{ControlPoints, Patch, SuspensionTiling, Tile, TileMap};

pub const DEFAULT_KMAX: u32 = 20;
pub const DEFAULT_MAP_CAP: u128 = 100_000;

/// Integer lattice in row echelon form: pivots strictly increasing and
/// positive.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Lattice {
    rows: Vec<Vec<BigInt>>,
}

fn lead(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

impl Lattice {
    /// Adds `v` to the generating set. Returns whether the lattice grew.
    fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        let mut idx = 0;
        let mut changed = false;
        loop {
            let Some(q) = lead(&v) else { return changed };
            if idx == self.rows.len() {
                break;
            }
            let p = lead(&self.rows[idx]).expect("rows are nonzero");
            if q < p {
                break;
            }
            if q == p {
                let a = self.rows[idx][p].clone();
                let b = v[p].clone();
                if (&b % &a).is_zero() {
                    let f = &b / &a;
                    for (x, r) in v.iter_mut().zip(&self.rows[idx]) {
                        *x -= &f * r;
                    }
                } else {
                    let e = a.extended_gcd(&b);
                    let (ag, bg) = (&a / &e.gcd, &b / &e.gcd);
                    let row = &self.rows[idx];
                    let new_row: Vec<BigInt> = row.iter().zip(&v).map(|(r, x)| &e.x * r + &e.y * x).collect();
                    let new_v: Vec<BigInt> = row.iter().zip(&v).map(|(r, x)| &ag * x - &bg * r).collect();
                    self.rows[idx] = new_row;
                    v = new_v;
                    changed = true;
                }
            }
            idx += 1;
        }
        if v[lead(&v).expect("nonzero")].is_negative() {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
        self.rows.insert(idx, v);
        for r in &mut self.rows {
            let p = lead(r).expect("rows are nonzero");
            if r[p].is_negative() {
                r.iter_mut().for_each(|x| *x = -&*x);
            }
        }
        true
    }

    fn contains(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        for r in &self.rows {
            let Some(q) = lead(&v) else { return true };
            let p = lead(r).expect("rows are nonzero");
            if q < p {
                return false;
            }
            if q == p {
                let (f, rem) = v[p].div_rem(&r[p]);
                if !rem.is_zero() {
                    return false;
                }
                for (x, y) in v.iter_mut().zip(r) {
                    *x -= &f * y;
                }
            }
        }
        lead(&v).is_none()
    }
}

/// The module generated by same-color position differences of a patch,
/// saturated under multiplication by β. Membership of `x` means
/// `β^K·x` lies in the module for some `K ≤ k_max`.
#[derive(Clone, Debug)]
pub struct GroupG {
    /// Common denominator of all coordinates.
    denom: BigInt,
    lattice: Lattice,
    beta: AlgebraicReal,
    k_max: u32,
}

impl GroupG {
    pub fn from_patch(tiling: &SuspensionTiling, patch: &Patch, k_max: u32) -> Self {
        Self::from_generators(tiling.beta(), &tiling.return_vectors(patch), k_max)
    }

    pub fn from_generators(beta: &AlgebraicReal, gens: &[AlgebraicReal], k_max: u32) -> Self {
        let denom = gens.iter().fold(BigInt::one(), |acc, g| acc.lcm(g.numerators().1));
        let mut group = GroupG { denom, lattice: Lattice::default(), beta: beta.clone(), k_max };
        let mut pending: Vec<AlgebraicReal> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        while let Some(g) = pending.pop() {
            let v = group.scaled(&g).expect("generator denominators divide the common one");
            if group.lattice.insert(v) {
                // β maps the lattice into itself once every row's image is in it
                for row in group.basis() {
                    let image = &row * beta;
                    if !group.contains_exact(&image) {
                        pending.push(image);
                    }
                }
            }
        }
        group
    }

    /// Coordinates times the common denominator, if integral.
    fn scaled(&self, x: &AlgebraicReal) -> Option<Vec<BigInt>> {
        let (num, den) = x.numerators();
        let (f, rem) = self.denom.div_rem(den);
        if !rem.is_zero() {
            // x has a denominator the module never produces
            return None;
        }
        Some(num.iter().map(|n| n * &f).collect())
    }

    fn contains_exact(&self, x: &AlgebraicReal) -> bool {
        self.scaled(x).is_some_and(|v| self.lattice.contains(&v))
    }

    /// Basis of the module as field elements.
    pub fn basis(&self) -> Vec<AlgebraicReal> {
        let field = self.beta.field();
        self.lattice
            .rows
            .iter()
            .map(|r| {
                let coords: Vec<_> = r
                    .iter()
                    .map(|x| num_rational::BigRational::new(x.clone(), self.denom.clone()))
                    .collect();
                field.from_coords(&coords).expect("coordinates match the degree")
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.lattice.rows.len()
    }

    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    /// The smallest `K ≤ k_max` with `β^K·x` in the module.
    pub fn membership(&self, x: &AlgebraicReal) -> Option<u32> {
        let mut y = x.clone();
        for k in 0..=self.k_max {
            if self.contains_exact(&y) {
                return Some(k);
            }
            y = &y * &self.beta;
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairOutcome {
    /// `Ω^L(T_i − c_i)` and `Ω^L(T_j − c_j)` share `tile`.
    Coincide { level: u32, tile: Tile },
    /// Every class reachable from the pair, none a coincidence.
    Fails { classes: Vec<OverlapClass> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairResult {
    pub i: usize,
    pub j: usize,
    pub outcome: PairOutcome,
}

impl PairResult {
    pub fn succeeded(&self) -> bool {
        matches!(self.outcome, PairOutcome::Coincide { .. })
    }
}

/// Strong coincidence for a pair of colors under fixed control points.
pub fn pair_coincidence(
    tiling: &SuspensionTiling,
    c: &[AlgebraicReal],
    i: usize,
    j: usize,
    cap: usize,
) -> Result<PairResult> {
    let start_pos = -&c[i];
    if i == j {
        let tile = Tile::new(i, start_pos);
        return Ok(PairResult { i, j, outcome: PairOutcome::Coincide { level: 0, tile } });
    }
    let level = tiling.level(1)?;
    let start = OverlapClass::new(i, j, &c[i] - &c[j]);
    if !start.is_valid(tiling.lengths()) {
        return Err(Error::Precondition(format!(
            "tiles {} and {} placed at their control points do not overlap",
            i + 1,
            j + 1
        )));
    }
    // class -> (depth, position of the U-tile)
    let mut seen: HashMap<OverlapClass, (u32, AlgebraicReal)> = HashMap::new();
    let mut order = vec![start.clone()];
    seen.insert(start.clone(), (0, start_pos));
    let mut queue = VecDeque::from([start]);
    while let Some(cls) = queue.pop_front() {
        let (depth, pos) = seen[&cls].clone();
        let base = tiling.beta() * &pos;
        for pair in inflate_class(tiling, &level, &cls) {
            if seen.contains_key(&pair.class) {
                continue;
            }
            let p = &base + &level.offsets[cls.u][pair.left];
            if pair.class.is_coincidence() {
                let tile = Tile::new(pair.class.u, p);
                return Ok(PairResult { i, j, outcome: PairOutcome::Coincide { level: depth + 1, tile } });
            }
            if seen.len() == cap {
                return Err(Error::ClassCap { cap });
            }
            seen.insert(pair.class.clone(), (depth + 1, p));
            order.push(pair.class.clone());
            queue.push_back(pair.class);
        }
    }
    order.sort();
    Ok(PairResult { i, j, outcome: PairOutcome::Fails { classes: order } })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongCoincidenceReport {
    pub control_points: ControlPoints,
    /// All pairs `i ≤ j`.
    pub pairs: Vec<PairResult>,
}

impl StrongCoincidenceReport {
    pub fn holds(&self) -> bool {
        self.pairs.iter().all(PairResult::succeeded)
    }
}

pub fn strong_coincidence(tiling: &SuspensionTiling, cp: &ControlPoints, cap: usize) -> Result<StrongCoincidenceReport> {
    if !cp.admissible {
        return Err(Error::Precondition("control points are not admissible".into()));
    }
    let m = tiling.alphabet_size();
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in i..m {
            pairs.push(pair_coincidence(tiling, &cp.c, i, j, cap)?);
        }
    }
    Ok(StrongCoincidenceReport { control_points: cp.clone(), pairs })
}

/// Number of tile maps of `Ω^n`, or the cap error.
pub fn tile_map_count(tiling: &SuspensionTiling, n: u32, cap: u128) -> Result<u128> {
    // |σ^n(a)| = column sums of M^n
    let m = tiling.substitution().matrix();
    let mut v: Vec<u128> = vec![1; tiling.alphabet_size()];
    for _ in 0..n {
        let mut next = vec![0u128; v.len()];
        for (j, slot) in next.iter_mut().enumerate() {
            for (i, &vi) in v.iter().enumerate() {
                *slot = slot.saturating_add(vi.saturating_mul(m.get(i, j) as u128));
            }
        }
        v = next;
    }
    let count = v.iter().fold(1u128, |acc, &l| acc.saturating_mul(l));
    if count > cap {
        return Err(Error::EnumerationCap { count, cap });
    }
    Ok(count)
}

/// All choice vectors of `Ω^n` in lexicographic order.
pub fn enumerate_tile_maps(tiling: &SuspensionTiling, n: u32, cap: u128) -> Result<Vec<TileMap>> {
    tile_map_count(tiling, n, cap)?;
    let level = tiling.level(n)?;
    let radices: Vec<usize> = level.words.iter().map(Vec::len).collect();
    let mut choice = vec![0usize; radices.len()];
    let mut out = Vec::new();
    loop {
        out.push(tiling.tile_map(&level, choice.clone())?);
        let mut k = radices.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < radices[k] {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// First tile of every color in the patch.
pub fn representatives(tiling: &SuspensionTiling, patch: &Patch) -> Result<Vec<AlgebraicReal>> {
    (0..tiling.alphabet_size())
        .map(|a| {
            patch
                .tiles()
                .iter()
                .find(|t| t.color == a)
                .map(|t| t.pos.clone())
                .ok_or_else(|| Error::Precondition(format!("patch has no tile of color {}", a + 1)))
        })
        .collect()
}

/// Membership of `(p_i + c_i) − (p_j + c_j)` for `i < j`, with the `K`
/// used; same-color differences lie in the group by construction.
pub fn difference_memberships(
    group: &GroupG,
    reps: &[AlgebraicReal],
    c: &[AlgebraicReal],
) -> Vec<((usize, usize), Option<u32>)> {
    let mut out = Vec::new();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            let x = &(&reps[i] + &c[i]) - &(&reps[j] + &c[j]);
            out.push(((i, j), group.membership(&x)));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileMapReport {
    pub control_points: ControlPoints,
    pub memberships: Vec<((usize, usize), Option<u32>)>,
    pub in_group: bool,
    /// Present when the family passed both filters.
    pub strong: Option<StrongCoincidenceReport>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MscReport {
    pub n: u32,
    pub holds: bool,
    /// No tile map passed the filters, so the verdict holds vacuously.
    pub vacuous: bool,
    pub maps: Vec<TileMapReport>,
}

#[derive(Clone, Debug)]
pub struct MscContext<'a> {
    pub tiling: &'a SuspensionTiling,
    pub group: &'a GroupG,
    /// Patch supplying one representative tile per color.
    pub patch: &'a Patch,
    pub class_cap: usize,
    pub map_cap: u128,
}

/// Strong coincidence for every admissible, in-group family generated by a
/// tile map of `Ω^n`.
pub fn multiple_strong_coincidence(ctx: &MscContext<'_>, n: u32) -> Result<MscReport> {
    if n == 0 {
        return Err(Error::Precondition("level must be at least 1".into()));
    }
    let reps = representatives(ctx.tiling, ctx.patch)?;
    let mut maps = Vec::new();
    let mut holds = true;
    let mut tested = 0usize;
    for tm in enumerate_tile_maps(ctx.tiling, n, ctx.map_cap)? {
        let cp = ctx.tiling.solve_control_points(&tm);
        let memberships = difference_memberships(ctx.group, &reps, &cp.c);
        let in_group = memberships.iter().all(|(_, k)| k.is_some());
        let strong = if cp.admissible && in_group {
            tested += 1;
            let r = strong_coincidence(ctx.tiling, &cp, ctx.class_cap)?;
            holds &= r.holds();
            Some(r)
        } else {
            None
        };
        maps.push(TileMapReport { control_points: cp, memberships, in_group, strong });
    }
    Ok(MscReport { n, holds, vacuous: tested == 0, maps })
}

/// Stuck components: nontrivial strongly connected components of vertices
/// from which no coincidence is reachable.
pub fn stuck_sccs(g: &OverlapGraph) -> Vec<Vec<usize>> {
    let reach = graphkit::reachable_to(&g.graph, &g.coincidences());
    let s = graphkit::scc(&g.graph);
    let mut out: Vec<Vec<usize>> = s
        .components
        .iter()
        .enumerate()
        .filter(|&(c, comp)| s.is_nontrivial(&g.graph, c) && !reach.contains(&comp[0]))
        .map(|(_, comp)| comp.clone())
        .collect();
    out.sort();
    out
}

/// Smallest `n₀ ≥ 1` such that every vertex of every stuck component lies on
/// a closed walk of length `n₀`; 1 when there are no stuck components.
pub fn compute_level_n(g: &OverlapGraph) -> u32 {
    let comps = stuck_sccs(g);
    if comps.is_empty() {
        return 1;
    }
    let mats: Vec<Vec<Vec<bool>>> = comps
        .iter()
        .map(|comp| {
            g.graph
                .induced(comp)
                .adjacency_matrix()
                .into_iter()
                .map(|r| r.into_iter().map(|x| x > 0).collect())
                .collect()
        })
        .collect();
    let mut powers = mats.clone();
    let mut n = 1u32;
    loop {
        if powers.iter().all(|p| (0..p.len()).all(|i| p[i][i])) {
            return n;
        }
        for (p, a) in powers.iter_mut().zip(&mats) {
            *p = bool_mul(p, a);
        }
        n += 1;
    }
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let k = a.len();
    (0..k)
        .map(|i| (0..k).map(|j| (0..k).any(|l| a[i][l] && b[l][j])).collect())
        .collect()
}

/// A control-point family that is admissible, in the group, and fails
/// strong coincidence for `failing_pair`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub class: OverlapClass,
    pub tile_map: TileMap,
    pub control_points: ControlPoints,
    pub memberships: Vec<((usize, usize), Option<u32>)>,
    pub in_group: bool,
    pub failing_pair: (usize, usize),
    pub pair: PairResult,
}

/// Builds a failing family from a stuck component: an overlap `(u, v, t)`
/// with `u ≠ v` has a descendant in `Ω^{n₀}` equal to itself; the two
/// subtiles realizing it fix `γ(u)` and `γ(v)`, and the remaining colors
/// are attached along an out-degree-one subgraph of the color graph whose
/// only cycles are the loops at `u` and `v`.
pub fn extract_witness(ctx: &MscContext<'_>, g: &OverlapGraph, scc: &[usize], n0: u32) -> Result<Witness> {
    let tiling = ctx.tiling;
    let class = scc
        .iter()
        .map(|&i| &g.vertices[i])
        .find(|c| c.u != c.v)
        .cloned()
        .ok_or(Error::RodHypothesis)?;
    let level = tiling.level(n0 * g.level)?;
    let pair = inflate_class(tiling, &level, &class)
        .into_iter()
        .find(|p| p.class == class)
        .ok_or_else(|| Error::Precondition(format!("{class} has no self-equivalent descendant at level {n0}")))?;
    let (u, v) = (class.u, class.v);
    let m = tiling.alphabet_size();
    let color_edges = (0..m).flat_map(|i| level.words[i].iter().map(move |&j| (i, j, 1)));
    let color_graph = Digraph::new(m, color_edges)?;
    let functional = graphkit::cycle_extension(&color_graph, &[vec![u], vec![v]])?;
    let mut choice = vec![0usize; m];
    for &(i, j, _) in functional.edges() {
        choice[i] = if i == u {
            pair.left
        } else if i == v {
            pair.right
        } else {
            level.words[i].iter().position(|&x| x == j).expect("edge of the color graph")
        };
    }
    let tile_map = tiling.tile_map(&level, choice)?;
    let cp = tiling.solve_control_points(&tile_map);
    let reps = representatives(tiling, ctx.patch)?;
    let memberships = difference_memberships(ctx.group, &reps, &cp.c);
    let in_group = memberships.iter().all(|(_, k)| k.is_some());
    let (a, b) = (u.min(v), u.max(v));
    let pair_result = pair_coincidence(tiling, &cp.c, a, b, ctx.class_cap)?;
    Ok(Witness {
        class,
        tile_map,
        control_points: cp,
        memberships,
        in_group,
        failing_pair: (a, b),
        pair: pair_result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::overlap::{overlap_coincidence, stable_overlap_graph, SeedingOptions};
    use crate::substitution::Substitution;

    fn tiling(rules: &[&[usize]]) -> SuspensionTiling {
        SuspensionTiling::new(Substitution::from_one_based(rules).unwrap()).unwrap()
    }

    fn patch(t: &SuspensionTiling) -> Patch {
        t.central_patch(&t.max_length().scale_int(8)).unwrap()
    }

    #[test]
    fn lattice_echelon() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let mut l = Lattice::default();
        assert!(l.insert(b(&[4, 6])));
        assert!(l.insert(b(&[6, 9])));
        // ⟨(4,6),(6,9)⟩ = ⟨(2,3)⟩
        assert_eq!(l.rows, vec![b(&[2, 3])]);
        assert!(l.contains(&b(&[-2, -3])));
        assert!(!l.contains(&b(&[1, 1])));
        assert!(l.insert(b(&[0, 5])));
        assert!(l.contains(&b(&[2, 8])));
        assert!(!l.contains(&b(&[1, 0])));
        assert!(!l.insert(b(&[4, 11])));
    }

    #[test]
    fn fibonacci_group() {
        let t = tiling(&[&[1, 2], &[1]]);
        let g = GroupG::from_patch(&t, &patch(&t), DEFAULT_KMAX);
        let k = t.field();
        assert_eq!(g.membership(&k.zero()), Some(0));
        assert_eq!(g.membership(&k.one()), Some(0));
        assert_eq!(g.membership(&k.generator()), Some(0));
        assert_eq!(g.rank(), 2);
        // β is a unit, so halves never enter
        let half = k.one().scale(&num_rational::BigRational::new(1.into(), 2.into()));
        assert_eq!(g.membership(&half), None);
        // closed under β
        for b in g.basis() {
            assert_eq!(g.membership(&(&b * t.beta())), Some(0));
        }
    }

    #[test]
    fn thue_morse_group_contains_dyadics() {
        let t = tiling(&[&[1, 2], &[2, 1]]);
        let g = GroupG::from_patch(&t, &patch(&t), DEFAULT_KMAX);
        let q = |a: i64, b: i64| t.field().from_rational(num_rational::BigRational::new(a.into(), b.into()));
        assert_eq!(g.membership(&q(1, 1)), Some(0));
        assert_eq!(g.membership(&q(3, 8)), Some(3));
        assert_eq!(g.membership(&q(1, 3)), None);
    }

    #[test]
    fn tile_map_counts() {
        let fib = tiling(&[&[1, 2], &[1]]);
        assert_eq!(tile_map_count(&fib, 1, DEFAULT_MAP_CAP).unwrap(), 2);
        assert_eq!(tile_map_count(&fib, 2, DEFAULT_MAP_CAP).unwrap(), 6);
        let tm = tiling(&[&[1, 2], &[2, 1]]);
        let maps = enumerate_tile_maps(&tm, 1, DEFAULT_MAP_CAP).unwrap();
        let choices: Vec<_> = maps.iter().map(|m| m.choice.clone()).collect();
        assert_eq!(choices, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(matches!(
            enumerate_tile_maps(&tm, 10, 1000),
            Err(Error::EnumerationCap { count: 1048576, cap: 1000 })
        ));
    }

    #[test]
    fn pair_examples() {
        let fib = tiling(&[&[1, 2], &[1]]);
        let zero = vec![fib.field().zero(); 2];
        let r = pair_coincidence(&fib, &zero, 0, 1, 100).unwrap();
        assert_eq!(r.outcome, PairOutcome::Coincide { level: 1, tile: Tile::new(0, fib.field().zero()) });
        assert_eq!(pair_coincidence(&fib, &zero, 1, 1, 100).unwrap().outcome, PairOutcome::Coincide {
            level: 0,
            tile: Tile::new(1, fib.field().zero())
        });

        let tm = tiling(&[&[1, 2], &[2, 1]]);
        let zero = vec![tm.field().zero(); 2];
        let r = pair_coincidence(&tm, &zero, 0, 1, 100).unwrap();
        let expected = vec![
            OverlapClass::new(0, 1, tm.field().zero()),
            OverlapClass::new(1, 0, tm.field().zero()),
        ];
        assert_eq!(r.outcome, PairOutcome::Fails { classes: expected });
        // the images of 1 and 2 are complementary words at every level
        for l in 1..=10 {
            let a = tm.substitution().iterate(&[0], l, 1 << 12).unwrap();
            let b = tm.substitution().iterate(&[1], l, 1 << 12).unwrap();
            assert!(a.iter().zip(&b).all(|(x, y)| x != y));
        }
    }

    fn ctx<'a>(t: &'a SuspensionTiling, g: &'a GroupG, p: &'a Patch) -> MscContext<'a> {
        MscContext { tiling: t, group: g, patch: p, class_cap: 10_000, map_cap: DEFAULT_MAP_CAP }
    }

    #[test]
    fn fibonacci_msc() {
        let t = tiling(&[&[1, 2], &[1]]);
        let p = patch(&t);
        let g = GroupG::from_patch(&t, &p, DEFAULT_KMAX);
        let r = multiple_strong_coincidence(&ctx(&t, &g, &p), 1).unwrap();
        assert!(r.holds && !r.vacuous);
        assert_eq!(r.maps.len(), 2);
        assert!(r.maps.iter().all(|m| m.strong.is_some()));
        let og = stable_overlap_graph(&t, &SeedingOptions::default()).unwrap().graph;
        assert_eq!(compute_level_n(&og), 1);
        assert!(stuck_sccs(&og).is_empty());
    }

    #[test]
    fn thue_morse_msc_and_witness() {
        let t = tiling(&[&[1, 2], &[2, 1]]);
        let p = patch(&t);
        let g = GroupG::from_patch(&t, &p, DEFAULT_KMAX);
        let c = ctx(&t, &g, &p);
        let og = stable_overlap_graph(&t, &SeedingOptions::default()).unwrap().graph;
        assert!(!overlap_coincidence(&og).unwrap().holds);
        // the stuck pair (1,2,0), (2,1,0) has self-loops: n₀ = 1
        let n0 = compute_level_n(&og);
        assert_eq!(n0, 1);
        let r = multiple_strong_coincidence(&c, n0).unwrap();
        assert!(!r.holds);
        let first = &r.maps[0];
        assert_eq!(first.control_points.tile_map.choice, vec![0, 0]);
        assert!(first.control_points.admissible && first.in_group);
        assert!(!first.strong.as_ref().unwrap().holds());

        let scc = &stuck_sccs(&og)[0];
        let w = extract_witness(&c, &og, scc, n0).unwrap();
        assert_eq!(w.failing_pair, (0, 1));
        assert!(w.control_points.admissible);
        assert!(w.in_group);
        assert!(!w.pair.succeeded());
        assert_eq!(w.control_points.c, vec![t.field().zero(); 2]);
    }

    #[test]
    fn level_n_on_synthetic_graphs() {
        use crate::overlap::OverlapGraph;
        let t = tiling(&[&[1, 2], &[2, 1]]);
        let cls = |u, v, k: i64| OverlapClass::new(u, v, t.field().from_int(k));
        // vertices sorted: (1,1,0) coincidence, (1,2,0), (2,1,0)
        let vertices = vec![cls(0, 0, 0), cls(0, 1, 0), cls(1, 0, 0)];
        let two_cycle = Digraph::from_pairs(3, &[(0, 0), (1, 2), (2, 1)]).unwrap();
        let g = OverlapGraph { vertices: vertices.clone(), graph: two_cycle, level: 1 };
        assert_eq!(compute_level_n(&g), 2);
        let loops = Digraph::from_pairs(3, &[(0, 0), (1, 1), (2, 2), (1, 2)]).unwrap();
        let g = OverlapGraph { vertices: vertices.clone(), graph: loops, level: 1 };
        assert_eq!(compute_level_n(&g), 1);
        let escape = Digraph::from_pairs(3, &[(0, 0), (1, 2), (2, 1), (2, 0)]).unwrap();
        let g = OverlapGraph { vertices, graph: escape, level: 1 };
        assert_eq!(compute_level_n(&g), 1);
    }
}
