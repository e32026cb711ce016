//! Substitutions on a finite alphabet and their matrices.
//!
//! Letters are `0..m` internally; user-facing output is 1-based.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numberfield::{is_pisot, AlgebraicReal, NumberField};
use crate::poly::{self, Poly, RootInterval};

/// Default cap on the length of any word produced by iteration.
pub const DEFAULT_WORD_CAP: usize = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Substitution {
    rules: Vec<Vec<usize>>,
}

/// `M[i][j]` = number of occurrences of letter `i` in the image of `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionMatrix {
    entries: Vec<Vec<u64>>,
}

impl SubstitutionMatrix {
    pub fn new(entries: Vec<Vec<u64>>) -> Self {
        SubstitutionMatrix { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.size();
        let mut out = vec![vec![0u64; n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (k, &a) in self.entries[i].iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, cell) in row.iter_mut().enumerate() {
                    *cell += a * other.entries[k][j];
                }
            }
        }
        SubstitutionMatrix { entries: out }
    }

    pub fn pow(&self, n: u32) -> Self {
        let size = self.size();
        let mut acc = SubstitutionMatrix {
            entries: (0..size)
                .map(|i| (0..size).map(|j| u64::from(i == j)).collect())
                .collect(),
        };
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Some power `M^k` with `k ≤ (m−1)² + 1` is entrywise positive.
    pub fn is_primitive(&self) -> bool {
        let n = self.size();
        if n == 0 {
            return false;
        }
        let base: Vec<Vec<bool>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| x > 0).collect())
            .collect();
        let mut cur = base.clone();
        let bound = (n - 1) * (n - 1) + 1;
        for _ in 0..bound {
            if cur.iter().all(|r| r.iter().all(|&x| x)) {
                return true;
            }
            let mut next = vec![vec![false; n]; n];
            for i in 0..n {
                for k in 0..n {
                    if !cur[i][k] {
                        continue;
                    }
                    for j in 0..n {
                        next[i][j] |= base[k][j];
                    }
                }
            }
            cur = next;
        }
        false
    }

    pub fn to_bigint(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    pub fn char_poly(&self) -> Poly {
        poly::char_poly(&self.to_bigint())
    }
}

/// Perron root β of the substitution matrix, realized in its own minimal
/// field, together with the tile lengths of the suspension tiling.
#[derive(Clone, Debug)]
pub struct PerronData {
    pub field: Arc<NumberField>,
    pub beta: AlgebraicReal,
    /// Left Perron eigenvector, scaled so the shortest length is 1.
    pub lengths: Vec<AlgebraicReal>,
    pub pisot: bool,
}

/// Seed `a|b` of a two-sided fixed point of `σ^k`: `σ^k(a)` ends with `a`,
/// `σ^k(b)` starts with `b`, and `ab` is a legal word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Seed {
    pub k: u32,
    pub left: usize,
    pub right: usize,
}

impl Substitution {
    pub fn new(rules: Vec<Vec<usize>>) -> Result<Self> {
        let m = rules.len();
        if m == 0 {
            return Err(Error::InvalidSubstitution("empty alphabet".into()));
        }
        for (i, r) in rules.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::InvalidSubstitution(format!("empty rule for letter {}", i + 1)));
            }
            if let Some(&bad) = r.iter().find(|&&x| x >= m) {
                return Err(Error::InvalidSubstitution(format!(
                    "rule for letter {} uses letter {} outside the alphabet",
                    i + 1,
                    bad + 1
                )));
            }
        }
        Ok(Substitution { rules })
    }

    /// Rules from 1-based letters, e.g. `&[&[1, 2], &[1]]` for Fibonacci.
    pub fn from_one_based(rules: &[&[usize]]) -> Result<Self> {
        let mut out = Vec::with_capacity(rules.len());
        for (i, r) in rules.iter().enumerate() {
            if r.contains(&0) {
                return Err(Error::InvalidSubstitution(format!(
                    "rule for letter {} uses letter 0; letters are 1-based",
                    i + 1
                )));
            }
            out.push(r.iter().map(|&x| x - 1).collect());
        }
        Self::new(out)
    }

    pub fn alphabet_size(&self) -> usize {
        self.rules.len()
    }

    pub fn rules(&self) -> &[Vec<usize>] {
        &self.rules
    }

    pub fn rule(&self, letter: usize) -> &[usize] {
        &self.rules[letter]
    }

    pub fn matrix(&self) -> SubstitutionMatrix {
        let m = self.alphabet_size();
        let mut entries = vec![vec![0u64; m]; m];
        for (j, r) in self.rules.iter().enumerate() {
            for &i in r {
                entries[i][j] += 1;
            }
        }
        SubstitutionMatrix { entries }
    }

    pub fn is_primitive(&self) -> bool {
        self.matrix().is_primitive()
    }

    /// Irreducibility of the characteristic polynomial over ℚ.
    pub fn is_irreducible(&self) -> bool {
        poly::is_irreducible(&self.matrix().char_poly())
    }

    /// Common rule length, if every rule has the same length.
    pub fn constant_length(&self) -> Option<usize> {
        let q = self.rules[0].len();
        self.rules.iter().all(|r| r.len() == q).then_some(q)
    }

    /// Applies the substitution once to a word.
    pub fn apply(&self, word: &[usize], cap: usize) -> Result<Vec<usize>> {
        let len: usize = word.iter().map(|&a| self.rules[a].len()).sum();
        if len > cap {
            return Err(Error::WordCap { cap });
        }
        let mut out = Vec::with_capacity(len);
        for &a in word {
            out.extend_from_slice(&self.rules[a]);
        }
        Ok(out)
    }

    pub fn iterate(&self, word: &[usize], n: u32, cap: usize) -> Result<Vec<usize>> {
        let mut w = word.to_vec();
        for _ in 0..n {
            w = self.apply(&w, cap)?;
        }
        Ok(w)
    }

    /// `σ^n`, with every rule bounded by `cap` letters.
    pub fn power(&self, n: u32, cap: usize) -> Result<Substitution> {
        if n == 0 {
            return Err(Error::Precondition("power of a substitution needs n ≥ 1".into()));
        }
        let rules = (0..self.alphabet_size())
            .map(|a| self.iterate(&[a], n, cap))
            .collect::<Result<Vec<_>>>()?;
        Ok(Substitution { rules })
    }

    /// Two-letter words occurring in some `σ^j(c)`.
    pub fn legal_pairs(&self) -> BTreeSet<(usize, usize)> {
        let mut legal: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut queue = VecDeque::new();
        let push = |p: (usize, usize), legal: &mut BTreeSet<_>, queue: &mut VecDeque<_>| {
            if legal.insert(p) {
                queue.push_back(p);
            }
        };
        for r in &self.rules {
            for w in r.windows(2) {
                push((w[0], w[1]), &mut legal, &mut queue);
            }
        }
        while let Some((a, b)) = queue.pop_front() {
            let ra = &self.rules[a];
            let rb = &self.rules[b];
            push((*ra.last().unwrap(), rb[0]), &mut legal, &mut queue);
            for w in ra.windows(2).chain(rb.windows(2)) {
                push((w[0], w[1]), &mut legal, &mut queue);
            }
        }
        legal
    }

    /// Smallest `k ≤ m²` admitting a legal seed `a|b` for a two-sided fixed
    /// point of `σ^k`; ties resolve to the lexicographically smallest pair.
    pub fn fixed_point_seed(&self) -> Result<Seed> {
        let m = self.alphabet_size();
        let legal = self.legal_pairs();
        let first: Vec<usize> = self.rules.iter().map(|r| r[0]).collect();
        let last: Vec<usize> = self.rules.iter().map(|r| *r.last().unwrap()).collect();
        let mut first_k: Vec<usize> = (0..m).collect();
        let mut last_k: Vec<usize> = (0..m).collect();
        for k in 1..=(m * m).max(1) as u32 {
            for a in 0..m {
                first_k[a] = first[first_k[a]];
                last_k[a] = last[last_k[a]];
            }
            for &(a, b) in &legal {
                if last_k[a] == a && first_k[b] == b {
                    return Ok(Seed { k, left: a, right: b });
                }
            }
        }
        Err(Error::Precondition(
            "no legal fixed-point seed found; substitution is not primitive".into(),
        ))
    }

    /// Classical column coincidence for constant-length substitutions: some
    /// column of some power `σ^n` holds a single letter.
    pub fn dekking_column_check(&self) -> Result<bool> {
        let q = self.constant_length().ok_or(Error::NotConstantLength)?;
        let m = self.alphabet_size();
        let start: Vec<usize> = (0..m).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(set) = queue.pop_front() {
            for pos in 0..q {
                let image: BTreeSet<usize> = set.iter().map(|&a| self.rules[a][pos]).collect();
                if image.len() == 1 {
                    return Ok(true);
                }
                let image: Vec<usize> = image.into_iter().collect();
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        Ok(false)
    }

    /// Minimal polynomial and isolating interval of the Perron root.
    pub fn perron_root(&self) -> Result<(Poly, RootInterval)> {
        let cp = self.matrix().char_poly();
        let mut best: Option<(Poly, RootInterval)> = None;
        for f in poly::irreducible_factors(&cp) {
            let Some(iv) = poly::isolate_largest_root(&f) else {
                continue;
            };
            let replace = match &best {
                None => true,
                Some((g, jv)) => poly::compare_roots(&f, &iv, g, jv).is_gt(),
            };
            if replace {
                best = Some((f, iv));
            }
        }
        best.ok_or_else(|| Error::Precondition("characteristic polynomial has no real root".into()))
    }

    /// β, its field, the Pisot flag and the normalized left eigenvector.
    pub fn perron_data(&self) -> Result<PerronData> {
        if !self.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        let (min_poly, iv) = self.perron_root()?;
        let pisot = is_pisot(&min_poly, &iv)?;
        let coeffs = min_poly
            .to_integer_coeffs()
            .ok_or_else(|| Error::Precondition("minimal polynomial is not integral".into()))?;
        let field = NumberField::new(coeffs, iv.lo, iv.hi)?;
        let beta = field.generator();
        let lengths = self.left_eigenvector(&field, &beta)?;
        Ok(PerronData { field, beta, lengths, pisot })
    }

    fn left_eigenvector(&self, field: &Arc<NumberField>, beta: &AlgebraicReal) -> Result<Vec<AlgebraicReal>> {
        let m = self.alphabet_size();
        let mat = self.matrix();
        // equation j: Σ_i ℓ_i M[i][j] − β ℓ_j = 0
        let mut a: Vec<Vec<AlgebraicReal>> = (0..m)
            .map(|j| {
                (0..m)
                    .map(|i| {
                        let v = field.from_int(mat.get(i, j) as i64);
                        if i == j {
                            &v - beta
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..m {
            let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            let inv = a[row][col].inverse()?;
            for c in col..m {
                a[row][c] = &a[row][c] * &inv;
            }
            for r in 0..m {
                if r == row || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in col..m {
                    let v = &f * &a[row][c];
                    a[r][c] = &a[r][c] - &v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free = (0..m)
            .find(|c| !pivots.contains(c))
            .ok_or_else(|| Error::Precondition("β is not an eigenvalue of the matrix".into()))?;
        let mut v = vec![field.zero(); m];
        v[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&a[r][free];
        }
        if v.iter().any(|x| x.is_negative()) {
            v = v.iter().map(|x| -x).collect();
        }
        if v.iter().any(|x| !x.is_positive()) {
            return Err(Error::Precondition("Perron eigenvector is not strictly positive".into()));
        }
        let min = v.iter().min().cloned().unwrap();
        let inv = min.inverse()?;
        Ok(v.iter().map(|x| x * &inv).collect())
    }
}

/// Positions of letter boundaries: `offsets[k]` is the total length of the
/// first `k` letters.
pub fn prefix_offsets(word: &[usize], lengths: &[AlgebraicReal], zero: &AlgebraicReal) -> Vec<AlgebraicReal> {
    let mut out = Vec::with_capacity(word.len());
    let mut acc = zero.clone();
    for &a in word {
        out.push(acc.clone());
        acc = &acc + &lengths[a];
    }
    out
}
