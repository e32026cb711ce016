//! The suspension tiling of a Pisot substitution.
//!
//! Tiles are closed intervals `[pos, pos + ℓ_color]` with exact endpoints
//! in ℚ(β). The fixed tiling is never materialized; callers ask for finite
//! central patches of a given radius.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numberfield::{AlgebraicReal, NumberField};
use crate::substitution::{prefix_offsets, PerronData, Seed, Substitution, DEFAULT_WORD_CAP};

pub const DEFAULT_PATCH_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tile {
    pub color: usize,
    /// Left endpoint of the support.
    pub pos: AlgebraicReal,
}

impl Tile {
    pub fn new(color: usize, pos: AlgebraicReal) -> Self {
        Tile { color, pos }
    }
}

/// Finitely many tiles, kept sorted by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patch {
    tiles: Vec<Tile>,
}

impl Patch {
    pub fn new(mut tiles: Vec<Tile>) -> Self {
        tiles.sort_by(|a, b| a.pos.cmp(&b.pos).then(a.color.cmp(&b.color)));
        Patch { tiles }
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn colors(&self) -> Vec<usize> {
        self.tiles.iter().map(|t| t.color).collect()
    }

    pub fn translate(&self, g: &AlgebraicReal) -> Patch {
        Patch {
            tiles: self
                .tiles
                .iter()
                .map(|t| Tile::new(t.color, &t.pos + g))
                .collect(),
        }
    }

    /// Contiguous run of tiles `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Patch {
        Patch { tiles: self.tiles[range].to_vec() }
    }
}

/// Words and subtile offsets of `Ω^n` applied to each prototile.
#[derive(Clone, Debug)]
pub struct Level {
    pub n: u32,
    pub beta_pow: AlgebraicReal,
    pub words: Vec<Vec<usize>>,
    /// `offsets[i][k]`: left endpoint of the k-th subtile of `Ω^n(T_i)`
    /// relative to the left endpoint of the inflated tile.
    pub offsets: Vec<Vec<AlgebraicReal>>,
}

/// Per-color choice of one subtile of `Ω^n(T_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TileMap {
    pub level: u32,
    /// 0-based index into the word `σ^n(i)`.
    pub choice: Vec<usize>,
    /// Color `j_i` of the chosen subtile.
    pub targets: Vec<usize>,
    /// Offset `u_i` of the chosen subtile.
    pub offsets: Vec<AlgebraicReal>,
}

/// Control-point offsets `c_i`, solving `β^n c_i = c_{j_i} + u_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlPoints {
    pub tile_map: TileMap,
    pub c: Vec<AlgebraicReal>,
    pub admissible: bool,
}

#[derive(Clone, Debug)]
pub struct SuspensionTiling {
    subst: Substitution,
    perron: PerronData,
    seed: Seed,
    word_cap: usize,
    patch_cap: usize,
}

impl SuspensionTiling {
    /// Builds the tiling after the primitivity and Pisot gates.
    pub fn new(subst: Substitution) -> Result<Self> {
        let perron = subst.perron_data()?;
        if !perron.pisot {
            return Err(Error::NotPisot { min_poly: perron.field.min_poly_ref().to_string() });
        }
        let seed = subst.fixed_point_seed()?;
        Ok(SuspensionTiling {
            subst,
            perron,
            seed,
            word_cap: DEFAULT_WORD_CAP,
            patch_cap: DEFAULT_PATCH_CAP,
        })
    }

    pub fn with_caps(mut self, word_cap: usize, patch_cap: usize) -> Self {
        self.word_cap = word_cap;
        self.patch_cap = patch_cap;
        self
    }

    pub fn substitution(&self) -> &Substitution {
        &self.subst
    }

    pub fn perron(&self) -> &PerronData {
        &self.perron
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.perron.field
    }

    pub fn beta(&self) -> &AlgebraicReal {
        &self.perron.beta
    }

    pub fn lengths(&self) -> &[AlgebraicReal] {
        &self.perron.lengths
    }

    pub fn length(&self, color: usize) -> &AlgebraicReal {
        &self.perron.lengths[color]
    }

    pub fn max_length(&self) -> AlgebraicReal {
        self.perron.lengths.iter().max().cloned().expect("nonempty alphabet")
    }

    pub fn seed(&self) -> Seed {
        self.seed
    }

    pub fn alphabet_size(&self) -> usize {
        self.subst.alphabet_size()
    }

    pub fn word_cap(&self) -> usize {
        self.word_cap
    }

    pub fn level(&self, n: u32) -> Result<Level> {
        let zero = self.field().zero();
        let mut words = Vec::with_capacity(self.alphabet_size());
        let mut offsets = Vec::with_capacity(self.alphabet_size());
        for a in 0..self.alphabet_size() {
            let w = self.subst.iterate(&[a], n, self.word_cap)?;
            offsets.push(prefix_offsets(&w, self.lengths(), &zero));
            words.push(w);
        }
        Ok(Level { n, beta_pow: self.beta().pow(n), words, offsets })
    }

    /// `Ω(T)`: subtiles of `σ(color)` laid out from `β·pos`.
    pub fn inflate(&self, t: &Tile) -> Patch {
        let start = self.beta() * &t.pos;
        let mut tiles = Vec::with_capacity(self.subst.rule(t.color).len());
        let mut acc = start;
        for &c in self.subst.rule(t.color) {
            let next = &acc + self.length(c);
            tiles.push(Tile::new(c, acc));
            acc = next;
        }
        Patch { tiles }
    }

    pub fn inflate_patch(&self, p: &Patch, n: u32) -> Result<Patch> {
        let mut cur = p.clone();
        for _ in 0..n {
            let count: usize = cur.tiles.iter().map(|t| self.subst.rule(t.color).len()).sum();
            if count > self.patch_cap {
                return Err(Error::PatchCap { cap: self.patch_cap });
            }
            let mut tiles = Vec::with_capacity(count);
            for t in &cur.tiles {
                tiles.extend(self.inflate(t).tiles);
            }
            cur = Patch { tiles };
        }
        Ok(cur)
    }

    /// Sum of the tile lengths of a patch.
    pub fn measure(&self, p: &Patch) -> AlgebraicReal {
        p.tiles
            .iter()
            .fold(self.field().zero(), |acc, t| &acc + self.length(t.color))
    }

    /// Sorted tiles have pairwise disjoint interiors.
    pub fn is_valid_patch(&self, p: &Patch) -> bool {
        p.tiles
            .windows(2)
            .all(|w| &w[0].pos + self.length(w[0].color) <= w[1].pos)
    }

    /// Patch of the two-sided fixed point of `σ^k` (seed `a|b` at the
    /// origin) whose support covers `[−radius, radius]`, cropped to the
    /// tiles meeting that window.
    pub fn central_patch(&self, radius: &AlgebraicReal) -> Result<Patch> {
        let Seed { k, left, right } = self.seed;
        let bk = self.beta().pow(k);
        let mut n = 0u32;
        let mut scale = self.field().one();
        while &scale * self.length(left) < *radius || &scale * self.length(right) < *radius {
            scale = &scale * &bk;
            n += 1;
        }
        let cap = self.word_cap.min(self.patch_cap);
        let lw = self.subst.iterate(&[left], k * n, cap)?;
        let rw = self.subst.iterate(&[right], k * n, cap)?;
        let neg_r = -radius;
        let mut tiles = Vec::new();
        // left part ends at the origin
        let mut end = self.field().zero();
        for &c in lw.iter().rev() {
            let pos = &end - self.length(c);
            if end < neg_r {
                break;
            }
            tiles.push(Tile::new(c, pos.clone()));
            end = pos;
        }
        let mut pos = self.field().zero();
        for &c in &rw {
            if pos > *radius {
                break;
            }
            let next = &pos + self.length(c);
            tiles.push(Tile::new(c, pos));
            pos = next;
        }
        Ok(Patch::new(tiles))
    }

    pub fn tile_map(&self, level: &Level, choice: Vec<usize>) -> Result<TileMap> {
        if choice.len() != self.alphabet_size() {
            return Err(Error::Precondition(format!(
                "tile map needs {} choices, got {}",
                self.alphabet_size(),
                choice.len()
            )));
        }
        let mut targets = Vec::with_capacity(choice.len());
        let mut offsets = Vec::with_capacity(choice.len());
        for (i, &k) in choice.iter().enumerate() {
            let w = &level.words[i];
            if k >= w.len() {
                return Err(Error::Precondition(format!(
                    "choice {} for letter {} exceeds |σ^{}({})| = {}",
                    k + 1,
                    i + 1,
                    level.n,
                    i + 1,
                    w.len()
                )));
            }
            targets.push(w[k]);
            offsets.push(level.offsets[i][k].clone());
        }
        Ok(TileMap { level: level.n, choice, targets, offsets })
    }

    /// Solves `β^n c_i = c_{j_i} + u_i` around the cycles of `i ↦ j_i`, then
    /// back-substitutes along the trees hanging off them.
    pub fn solve_control_points(&self, tm: &TileMap) -> ControlPoints {
        let m = self.alphabet_size();
        let bn = self.beta().pow(tm.level);
        let inv_bn = bn.inverse().expect("β^n is nonzero");
        let one = self.field().one();
        let mut c: Vec<Option<AlgebraicReal>> = vec![None; m];
        for start in 0..m {
            if c[start].is_some() {
                continue;
            }
            let mut path = Vec::new();
            let mut pos_in_path: HashMap<usize, usize> = HashMap::new();
            let mut v = start;
            while c[v].is_none() && !pos_in_path.contains_key(&v) {
                pos_in_path.insert(v, path.len());
                path.push(v);
                v = tm.targets[v];
            }
            let mut tail_end = path.len();
            if c[v].is_none() {
                // v closes a cycle path[s..]
                let s = pos_in_path[&v];
                let cycle = &path[s..];
                let mut sum = self.field().zero();
                let mut w = inv_bn.clone();
                for &i in cycle {
                    sum = &sum + &(&w * &tm.offsets[i]);
                    w = &w * &inv_bn;
                }
                // w = β^{-n(L+1)}; need 1 − β^{-nL}
                let denom = &one - &(&w * &bn);
                let c0 = &sum * &denom.inverse().expect("β^{nL} ≠ 1");
                c[cycle[0]] = Some(c0);
                for t in 0..cycle.len() - 1 {
                    let i = cycle[t];
                    let prev = c[i].clone().unwrap();
                    c[cycle[t + 1]] = Some(&(&bn * &prev) - &tm.offsets[i]);
                }
                tail_end = s;
            }
            for &i in path[..tail_end].iter().rev() {
                let next = c[tm.targets[i]].clone().expect("successor solved");
                c[i] = Some(&inv_bn * &(&next + &tm.offsets[i]));
            }
        }
        let c: Vec<AlgebraicReal> = c.into_iter().map(|x| x.expect("all solved")).collect();
        let admissible = admissible_offsets(self.lengths(), &c);
        ControlPoints { tile_map: tm.clone(), c, admissible }
    }

    /// `β^n c_i − c_{j_i} − u_i` for every color; all zero for a solution.
    pub fn control_point_residuals(&self, cp: &ControlPoints) -> Vec<AlgebraicReal> {
        let bn = self.beta().pow(cp.tile_map.level);
        (0..cp.c.len())
            .map(|i| &(&bn * &cp.c[i]) - &cp.c[cp.tile_map.targets[i]] - &cp.tile_map.offsets[i])
            .collect()
    }

    /// Every difference `pos(V) − pos(U)` over same-colored tiles of the
    /// patch, sorted.
    pub fn return_vectors(&self, p: &Patch) -> Vec<AlgebraicReal> {
        let mut by_color: Vec<Vec<&AlgebraicReal>> = vec![Vec::new(); self.alphabet_size()];
        for t in &p.tiles {
            by_color[t.color].push(&t.pos);
        }
        let mut set: HashSet<AlgebraicReal> = HashSet::new();
        for ps in &by_color {
            for a in ps {
                for b in ps {
                    set.insert(*b - *a);
                }
            }
        }
        let mut out: Vec<AlgebraicReal> = set.into_iter().collect();
        out.sort();
        out
    }
}

/// `∩_i [−c_i, ℓ_i − c_i]` has nonempty interior.
pub fn admissible_offsets(lengths: &[AlgebraicReal], c: &[AlgebraicReal]) -> bool {
    let lo = c.iter().map(|x| -x).max().expect("nonempty alphabet");
    let hi = lengths
        .iter()
        .zip(c)
        .map(|(l, x)| l - x)
        .min()
        .expect("nonempty alphabet");
    lo < hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn fib() -> SuspensionTiling {
        SuspensionTiling::new(Substitution::from_one_based(&[&[1, 2], &[1]]).unwrap()).unwrap()
    }

    fn thue_morse() -> SuspensionTiling {
        SuspensionTiling::new(Substitution::from_one_based(&[&[1, 2], &[2, 1]]).unwrap()).unwrap()
    }

    #[test]
    fn inflate_fibonacci_tiles() {
        let t = fib();
        let k = t.field().clone();
        let b = t.beta().clone();
        let p = t.inflate(&Tile::new(0, k.zero()));
        assert_eq!(p.tiles(), &[Tile::new(0, k.zero()), Tile::new(1, b.clone())]);
        // β·[0, β] = [0, β + 1]
        assert_eq!(&b * &b, &b + &k.one());
        let p = t.inflate(&Tile::new(1, k.zero()));
        assert_eq!(p.tiles(), &[Tile::new(0, k.zero())]);
    }

    #[test]
    fn inflate_thue_morse_tile() {
        let t = thue_morse();
        let k = t.field().clone();
        let p = t.inflate(&Tile::new(0, k.zero()));
        assert_eq!(p.tiles(), &[Tile::new(0, k.zero()), Tile::new(1, k.one())]);
    }

    #[test]
    fn second_inflation_of_fibonacci_seed() {
        // σ²(1) = 121 with lengths (β, 1): positions 0, β, β + 1
        let t = fib();
        let k = t.field().clone();
        let b = t.beta().clone();
        let p = t.inflate_patch(&Patch::new(vec![Tile::new(0, k.zero())]), 2).unwrap();
        assert_eq!(p.colors(), vec![0, 1, 0]);
        let pos: Vec<_> = p.tiles().iter().map(|t| t.pos.clone()).collect();
        assert_eq!(pos, vec![k.zero(), b.clone(), &b + &k.one()]);
        assert_eq!(t.measure(&p), b.pow(2) * &b);
        assert_eq!(t.inflate_patch(&p, 0).unwrap(), p);
    }

    #[test]
    fn central_patches() {
        let t = fib();
        let k = t.field().clone();
        let p0 = t.central_patch(&k.zero()).unwrap();
        assert_eq!(p0.len(), 2);
        assert_eq!(p0.tiles()[1].pos, k.zero());
        let p3 = t.central_patch(&k.from_int(3)).unwrap();
        let right: Vec<usize> = p3
            .tiles()
            .iter()
            .filter(|t| !t.pos.is_negative())
            .map(|t| t.color)
            .collect();
        // σ²-fixed point starting with 1: 12112…
        assert_eq!(&right[..3], &[0, 1, 0]);
        assert!(t.is_valid_patch(&p3));
        let p6 = t.central_patch(&k.from_int(6)).unwrap();
        assert!(p3.tiles().iter().all(|x| p6.tiles().contains(x)));
    }

    #[test]
    fn control_points_fibonacci() {
        let t = fib();
        let k = t.field().clone();
        let lvl = t.level(1).unwrap();
        let cp = t.solve_control_points(&t.tile_map(&lvl, vec![0, 0]).unwrap());
        assert_eq!(cp.c, vec![k.zero(), k.zero()]);
        assert!(cp.admissible);
        // second subtile of σ(1), first of σ(2): c₁ = β²/(β²−1), c₂ = c₁/β
        let cp = t.solve_control_points(&t.tile_map(&lvl, vec![1, 0]).unwrap());
        let b = t.beta().clone();
        let b2 = &b * &b;
        let c1 = &b2 * &(&b2 - &k.one()).inverse().unwrap();
        assert_eq!(cp.c[0], c1);
        assert_eq!(cp.c[1], &c1 * &b.inverse().unwrap());
        assert!(t.control_point_residuals(&cp).iter().all(AlgebraicReal::is_zero));
    }

    #[test]
    fn admissibility() {
        let t = fib();
        let k = t.field().clone();
        let ls = t.lengths().to_vec();
        assert!(admissible_offsets(&ls, &[k.zero(), k.zero()]));
        // c₁ = ℓ₁ and c₂ = 0: [−β, 0] ∩ [0, 1] is a point
        assert!(!admissible_offsets(&ls, &[ls[0].clone(), k.zero()]));
        assert!(admissible_offsets(&ls[..1], &[ls[0].clone()]));
    }

    #[test]
    fn return_vectors_are_symmetric() {
        let t = fib();
        let k = t.field().clone();
        let p = t.central_patch(&k.from_int(5)).unwrap();
        let ys = t.return_vectors(&p);
        assert!(ys.contains(&k.zero()));
        for y in &ys {
            assert!(ys.contains(&-y));
        }
        // consecutive 1-tiles in 1211 2 1 … are β + 1 and β apart
        let b = t.beta().clone();
        assert!(ys.contains(&b));
        assert!(ys.contains(&(&b + &k.one())));
        let single = Patch::new(vec![Tile::new(0, k.zero()), Tile::new(1, b.clone())]);
        assert_eq!(t.return_vectors(&single), vec![k.zero()]);
    }

    #[test]
    fn shift_covariance() {
        let t = fib();
        let k = t.field().clone();
        let p = t.central_patch(&k.from_int(4)).unwrap();
        let g = k.from_rational(BigRational::new(BigInt::from(3), BigInt::from(7)));
        let a = t.inflate_patch(&p.translate(&g), 1).unwrap();
        let b = t.inflate_patch(&p, 1).unwrap().translate(&(t.beta() * &g));
        assert_eq!(a, b);
    }
}
