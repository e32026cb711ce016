//! Reference procedures that share no code with the library.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

type Word = Vec<usize>;

fn apply(rules: &[Word], w: &[usize]) -> Word {
    w.iter().flat_map(|&a| rules[a].iter().copied()).collect()
}

/// Splits a balanced pair into irreducible balanced pairs.
fn split(m: usize, top: &[usize], bottom: &[usize]) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    let mut count = vec![0i64; m];
    let mut start = 0;
    for k in 0..top.len() {
        count[top[k]] += 1;
        count[bottom[k]] -= 1;
        if count.iter().all(|&c| c == 0) {
            out.push((top[start..=k].to_vec(), bottom[start..=k].to_vec()));
            start = k + 1;
        }
    }
    assert_eq!(start, top.len(), "pair was not balanced");
    out
}

/// Balanced-pair algorithm started from every `(ab, ba)`, `a ≠ b`.
/// `Some(true)` when every irreducible pair met along the way reaches a
/// coincidence `(a, a)`; `None` if more than `cap` pairs appear or a pair
/// grows longer than `cap` letters.
pub fn balanced_pair(rules: &[Word], cap: usize) -> Option<bool> {
    let m = rules.len();
    let mut index: HashMap<(Word, Word), usize> = HashMap::new();
    let mut pairs: Vec<(Word, Word)> = Vec::new();
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    for a in 0..m {
        for b in 0..m {
            if a != b {
                let p = (vec![a, b], vec![b, a]);
                for q in split(m, &p.0, &p.1) {
                    if !index.contains_key(&q) {
                        index.insert(q.clone(), pairs.len());
                        pairs.push(q);
                        succ.push(Vec::new());
                        queue.push_back(pairs.len() - 1);
                    }
                }
            }
        }
    }
    while let Some(i) = queue.pop_front() {
        let (top, bottom) = pairs[i].clone();
        for q in split(m, &apply(rules, &top), &apply(rules, &bottom)) {
            let j = match index.get(&q) {
                Some(&j) => j,
                None => {
                    if pairs.len() >= cap || q.0.len() > cap {
                        return None;
                    }
                    index.insert(q.clone(), pairs.len());
                    pairs.push(q);
                    succ.push(Vec::new());
                    queue.push_back(pairs.len() - 1);
                    pairs.len() - 1
                }
            };
            succ[i].push(j);
        }
    }
    // backward search from coincidences
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); pairs.len()];
    for (i, s) in succ.iter().enumerate() {
        for &j in s {
            pred[j].push(i);
        }
    }
    let mut good: HashSet<usize> = (0..pairs.len()).filter(|&i| pairs[i].0 == pairs[i].1).collect();
    let mut stack: Vec<usize> = good.iter().copied().collect();
    while let Some(j) = stack.pop() {
        for &i in &pred[j] {
            if good.insert(i) {
                stack.push(i);
            }
        }
    }
    Some(good.len() == pairs.len())
}

/// Some column of `σ^n`, `n ≤ max_n`, is constant over all letters.
pub fn dekking_brute(rules: &[Word], max_n: u32) -> bool {
    let mut words: Vec<Word> = (0..rules.len()).map(|a| vec![a]).collect();
    for _ in 0..max_n {
        words = words.iter().map(|w| apply(rules, w)).collect();
        let len = words[0].len();
        assert!(words.iter().all(|w| w.len() == len));
        if (0..len).any(|k| words.iter().map(|w| w[k]).collect::<BTreeSet<_>>().len() == 1) {
            return true;
        }
    }
    false
}

/// `⌊β·10^digits⌋` for the unique root of the integer polynomial `p`
/// (low degree first) in `(lo, hi)`, by integer bisection.
pub fn root_scaled(p: &[i64], lo: i64, hi: i64, digits: u32) -> BigInt {
    let scale = BigInt::from(10).pow(digits);
    let eval = |x: &BigInt| -> BigInt {
        // p(x/S)·S^d
        let d = p.len() - 1;
        let mut acc = BigInt::zero();
        let mut x_pow = BigInt::one();
        let mut s_rest = scale.pow(d as u32);
        for &c in p {
            acc += BigInt::from(c) * &x_pow * &s_rest;
            x_pow *= x;
            s_rest /= &scale;
        }
        acc
    };
    let mut a = BigInt::from(lo) * &scale;
    let mut b = BigInt::from(hi) * &scale;
    let sa = eval(&a).signum();
    assert_ne!(sa, eval(&b).signum(), "no sign change");
    while &b - &a > BigInt::one() {
        let mid: BigInt = (&a + &b) / 2;
        if eval(&mid).signum() == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    a
}

/// Sign of `Σ num_k β^k` from a scaled enclosure `[b, b + 1]/S` of β,
/// `None` when the enclosure is too coarse.
pub fn sign_scaled(num: &[BigInt], beta_lo: &BigInt, scale: &BigInt) -> Option<i32> {
    let beta_hi = beta_lo + BigInt::one();
    let d = num.len();
    // Σ num_k β^k · S^(d−1), bounded coordinatewise
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    let mut p_lo = BigInt::one();
    let mut p_hi = BigInt::one();
    for (k, n) in num.iter().enumerate() {
        let rest = scale.pow((d - 1 - k) as u32);
        let (a, b) = (&p_lo * &rest, &p_hi * &rest);
        if n.is_negative() {
            lo += n * &b;
            hi += n * &a;
        } else {
            lo += n * &a;
            hi += n * &b;
        }
        p_lo *= beta_lo;
        p_hi *= &beta_hi;
    }
    if lo.is_positive() {
        Some(1)
    } else if hi.is_negative() {
        Some(-1)
    } else if lo.is_zero() && hi.is_zero() {
        Some(0)
    } else {
        None
    }
}
