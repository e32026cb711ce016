//! Univariate polynomials over the rationals.
//!
//! Everything here is exact: Sturm sequences for real root counting,
//! bisection isolation, Kronecker factorization of monic integer
//! polynomials, and a Schur–Cohn count of roots inside a disk.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients are stored low degree first with no trailing zeros; the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![BigRational::one()] }
    }

    /// The monomial `c·x^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        self.eval(x).cmp(&BigRational::zero())
    }

    /// Sign of the polynomial as x → +∞.
    fn sign_at_pos_inf(&self) -> Ordering {
        self.lead().cmp(&BigRational::zero())
    }

    /// Sign of the polynomial as x → −∞.
    fn sign_at_neg_inf(&self) -> Ordering {
        let s = self.sign_at_pos_inf();
        if self.degree().unwrap_or(0) % 2 == 1 {
            s.reverse()
        } else {
            s
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.lead();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] -= &q * c;
            }
            quot[k - dd] = q;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.lead().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Returns `(g, s)` with `g = gcd(self, modulus)` monic and
    /// `s·self ≡ g (mod modulus)`.
    pub fn gcd_ext(&self, modulus: &Poly) -> (Poly, Poly) {
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus));
        let (mut s0, mut s1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let inv = r0.lead().recip();
        (r0.scale(&inv), s0.scale(&inv))
    }

    /// The square-free part `p / gcd(p, p')`, made monic.
    pub fn square_free(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// `p(ρ·x)`.
    pub fn compose_scale(&self, rho: &BigRational) -> Poly {
        let mut pow = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow *= rho;
        }
        Poly::new(out)
    }

    /// Integer coefficients, if every coefficient is integral.
    pub fn to_integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Positive rational multiple with coprime integer coefficients.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let g = gcd_all(&nums);
        Poly::from_bigints(&nums.iter().map(|c| c / &g).collect::<Vec<_>>())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// A Sturm chain for counting distinct real roots.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Self {
        let mut chain = Vec::new();
        if p.is_zero() {
            return SturmChain { chain };
        }
        // Positive rescaling keeps signs intact and stops coefficient blow-up.
        let normalize = |q: Poly| {
            let l = q.lead().abs();
            q.scale(&l.recip())
        };
        chain.push(normalize(p.clone()));
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(normalize(d));
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(normalize(r.scale(&rat(-1))));
            }
        }
        SturmChain { chain }
    }

    fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for s in signs {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(Poly::sign_at_pos_inf))
    }

    fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(Poly::sign_at_neg_inf))
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Number of distinct real roots in `(a, ∞)`.
    pub fn count_above(&self, a: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at_pos_inf())
    }

    pub fn count_real(&self) -> usize {
        self.variations_at_neg_inf()
            .saturating_sub(self.variations_at_pos_inf())
    }
}

/// Cauchy bound: every complex root has modulus below the returned value.
pub fn root_bound(p: &Poly) -> BigRational {
    let lead = p.lead().abs();
    let m = p
        .coeffs()
        .iter()
        .take(p.coeffs().len().saturating_sub(1))
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(BigRational::zero);
    let b = m + BigRational::one();
    // round up to an integer so bisection midpoints stay dyadic
    BigRational::from_integer(b.ceil().to_integer())
}

/// An interval `(lo, hi]` isolating exactly one real root of a
/// square-free polynomial, or the exact root when `lo == hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Isolates the largest real root of the square-free polynomial `p`.
/// Returns `None` when `p` has no real roots.
pub fn isolate_largest_root(p: &Poly) -> Option<RootInterval> {
    let deg = p.degree()?;
    if deg == 0 {
        return None;
    }
    if deg == 1 {
        let r = -p.coeff(0) / p.coeff(1);
        return Some(RootInterval { lo: r.clone(), hi: r });
    }
    let sturm = SturmChain::new(p);
    if sturm.count_real() == 0 {
        return None;
    }
    let bound = root_bound(p);
    let mut lo = -bound.clone();
    let mut hi = bound;
    let two = rat(2);
    // invariant: the largest root lies in (lo, hi]
    while sturm.count_in(&lo, &hi) > 1 {
        let mid = (&lo + &hi) / &two;
        if sturm.count_in(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if p.eval(&hi).is_zero() {
        return Some(RootInterval { lo: hi.clone(), hi });
    }
    // lo may itself be a smaller root; move it off so refinement can use
    // the sign at lo
    while p.eval(&lo).is_zero() {
        let mid = (&lo + &hi) / &two;
        if p.eval(&mid).is_zero() {
            return Some(RootInterval { lo: mid.clone(), hi: mid });
        }
        if sturm.count_in(&mid, &hi) == 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(RootInterval { lo, hi })
}

/// Bisects the lower end of an isolating interval: replaces `(lo, hi]` by
/// a subinterval still containing the root, shrinking the width by half.
pub fn bisect_once(p: &Poly, iv: &RootInterval) -> RootInterval {
    if iv.is_exact() {
        return iv.clone();
    }
    let mid = (&iv.lo + &iv.hi) / rat(2);
    let s = p.sign_at(&mid);
    if s == Ordering::Equal {
        return RootInterval { lo: mid.clone(), hi: mid };
    }
    if s == p.sign_at(&iv.lo) {
        RootInterval { lo: mid, hi: iv.hi.clone() }
    } else {
        RootInterval { lo: iv.lo.clone(), hi: mid }
    }
}

/// Bisects until the interval is exact or narrower than `2^-bits`.
pub fn refine_root(p: &Poly, iv: &RootInterval, bits: u32) -> RootInterval {
    let target = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let mut iv = iv.clone();
    while !iv.is_exact() && iv.width() > target {
        iv = bisect_once(p, &iv);
    }
    iv
}

/// Compares the roots isolated by `(p, a)` and `(q, b)`; the two roots must
/// be distinct or both intervals exact.
pub fn compare_roots(p: &Poly, a: &RootInterval, q: &Poly, b: &RootInterval) -> Ordering {
    let mut a = a.clone();
    let mut b = b.clone();
    loop {
        if a.is_exact() && b.is_exact() {
            return a.lo.cmp(&b.lo);
        }
        // roots lie in (lo, hi], or at lo for exact intervals
        if a.hi < b.lo || (a.hi == b.lo && !b.is_exact()) {
            return Ordering::Less;
        }
        if b.hi < a.lo || (b.hi == a.lo && !a.is_exact()) {
            return Ordering::Greater;
        }
        if a.width() >= b.width() {
            a = bisect_once(p, &a);
        } else {
            b = bisect_once(q, &b);
        }
    }
}

fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Monic integer factor of degree `k` of the monic integer polynomial `f`
/// through Kronecker's method, or `None` if there is none.
fn kronecker_factor(f: &Poly, k: usize) -> Option<Poly> {
    let fi = f.to_integer_coeffs()?;
    let n = f.degree()?;
    // pick k evaluation points where |f| is small (fewest divisor choices)
    let span = (k + n + 4) as i64;
    let mut pts: Vec<(BigInt, BigInt)> = (-span..=span)
        .map(BigInt::from)
        .map(|x| {
            let v = eval_int(&fi, &x);
            (x, v)
        })
        .collect();
    if let Some((x, _)) = pts.iter().find(|(_, v)| v.is_zero()) {
        // a rational (integer) root gives a linear factor
        if k == 1 {
            return Some(Poly::new(vec![BigRational::from_integer(-x.clone()), BigRational::one()]));
        }
    }
    pts.retain(|(_, v)| !v.is_zero());
    pts.sort_by(|a, b| a.1.abs().cmp(&b.1.abs()).then_with(|| a.0.abs().cmp(&b.0.abs())));
    pts.truncate(k);
    if pts.len() < k {
        return None;
    }
    let choices: Vec<Vec<BigInt>> = pts
        .iter()
        .map(|(_, v)| {
            positive_divisors(v)
                .into_iter()
                .flat_map(|d| [d.clone(), -d])
                .collect()
        })
        .collect();
    let xs: Vec<BigRational> = pts.iter().map(|(x, _)| BigRational::from_integer(x.clone())).collect();
    let mut idx = vec![0usize; k];
    loop {
        // g = x^k + h with deg h < k and h(x_i) = d_i - x_i^k
        let ys: Vec<BigRational> = (0..k)
            .map(|i| {
                BigRational::from_integer(choices[i][idx[i]].clone()) - xs[i].pow(k as i32)
            })
            .collect();
        let h = interpolate(&xs, &ys);
        let g = h.add(&Poly::monomial(BigRational::one(), k));
        if g.to_integer_coeffs().is_some() && f.rem(&g).is_zero() {
            return Some(g);
        }
        // advance the mixed-radix counter
        let mut i = 0;
        loop {
            if i == k {
                return None;
            }
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn fp_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let inv = fp_inv(b[db], p);
    while r.len() > db {
        let k = r.len() - 1;
        let q = r[k] * inv % p;
        for (i, &c) in b.iter().enumerate() {
            r[k - db + i] = (r[k - db + i] + p - q * c % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_rem(&out, m, p)
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Degrees of the irreducible factors of `f` modulo `p` by distinct-degree
/// factorization, or `None` if `f` is not square-free modulo `p`.
fn fp_factor_degrees(fi: &[BigInt], p: u64) -> Option<Vec<usize>> {
    let pb = BigInt::from(p);
    let mut f: Vec<u64> = fi
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap_or(0))
        .collect();
    fp_trim(&mut f);
    let n = f.len().checked_sub(1)?;
    if f[n] == 0 || n == 0 {
        return None;
    }
    let df: Vec<u64> = f.iter().enumerate().skip(1).map(|(k, &c)| c * (k as u64 % p) % p).collect();
    if fp_gcd(&f, &df, p).len() != 1 {
        return None;
    }
    let mut degrees = Vec::new();
    let mut rest = f;
    let mut h = vec![0, 1]; // x
    let mut i = 0;
    while rest.len() > 2 * (i + 1) {
        i += 1;
        // h = h^p mod rest
        let mut acc = vec![1u64];
        let mut base = fp_rem(&h, &rest, p);
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_mulmod(&acc, &base, &rest, p);
            }
            base = fp_mulmod(&base, &base, &rest, p);
            e >>= 1;
        }
        h = acc;
        let mut hx = h.clone();
        hx.resize(hx.len().max(2), 0);
        hx[1] = (hx[1] + p - 1) % p;
        fp_trim(&mut hx);
        let g = fp_gcd(&rest, &hx, p);
        let dg = g.len() - 1;
        if dg > 0 {
            degrees.extend(std::iter::repeat_n(i, dg / i));
            let mut q = Vec::new();
            // exact division rest / g
            let mut r = rest.clone();
            let inv = fp_inv(g[dg], p);
            q.resize(r.len() - dg, 0);
            while r.len() > dg {
                let k = r.len() - 1;
                let c = r[k] * inv % p;
                q[k - dg] = c;
                for (j, &gc) in g.iter().enumerate() {
                    r[k - dg + j] = (r[k - dg + j] + p - c * gc % p) % p;
                }
                r.pop();
            }
            rest = q;
            fp_trim(&mut rest);
            h = fp_rem(&h, &rest, p);
        }
    }
    if rest.len() > 1 {
        degrees.push(rest.len() - 1);
    }
    Some(degrees)
}

/// Degrees `k` for which a factor of degree `k` over the integers is not
/// excluded by the factorization patterns of `f` modulo small primes.
fn possible_factor_degrees(fi: &[BigInt]) -> Vec<bool> {
    let n = fi.len() - 1;
    let mut allowed = vec![true; n + 1];
    let mut used = 0;
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73] {
        if used == 8 {
            break;
        }
        let Some(degrees) = fp_factor_degrees(fi, p) else { continue };
        used += 1;
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for d in degrees {
            for s in (d..=n).rev() {
                sums[s] |= sums[s - d];
            }
        }
        for (a, s) in allowed.iter_mut().zip(sums) {
            *a &= s;
        }
    }
    allowed
}

/// Lagrange interpolation through distinct nodes.
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Poly {
    let mut out = Poly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::one();
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&Poly::new(vec![-xj.clone(), BigRational::one()]));
            denom *= xi - xj;
        }
        out = out.add(&basis.scale(&(yi / denom)));
    }
    out
}

/// Irreducible factors (monic, without multiplicity) of a monic integer
/// polynomial. Factors are ordered by degree, then by coefficients.
pub fn irreducible_factors(f: &Poly) -> Vec<Poly> {
    let mut todo = vec![f.square_free()];
    let mut out = Vec::new();
    while let Some(p) = todo.pop() {
        let n = match p.degree() {
            None | Some(0) => continue,
            Some(n) => n,
        };
        let allowed = p.to_integer_coeffs().map(|c| possible_factor_degrees(&c));
        let split = (1..=n / 2)
            .filter(|&k| allowed.as_ref().is_none_or(|a| a[k]))
            .find_map(|k| kronecker_factor(&p, k));
        match split {
            Some(g) => {
                let (q, _) = p.div_rem(&g);
                out.push(g);
                todo.push(q);
            }
            None => out.push(p),
        }
    }
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
    });
    out.dedup();
    out
}

pub fn is_irreducible(f: &Poly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(n) => {
            let sf = f.square_free();
            if sf.degree() != Some(n) {
                return false;
            }
            let allowed = sf.to_integer_coeffs().map(|c| possible_factor_degrees(&c));
            (1..=n / 2)
                .filter(|&k| allowed.as_ref().is_none_or(|a| a[k]))
                .all(|k| kronecker_factor(&sf, k).is_none())
        }
    }
}

/// Number of roots (with multiplicity) of `p` in the open unit disk,
/// assuming `p` has no root on the unit circle. Returns `None` when the
/// Schur–Cohn recursion hits a singular step.
pub fn count_in_unit_disk(p: &Poly) -> Option<usize> {
    let n = p.degree()?;
    if n == 0 {
        return Some(0);
    }
    if p.coeff(0).is_zero() {
        let shifted = Poly::new(p.coeffs()[1..].to_vec());
        return count_in_unit_disk(&shifted).map(|c| c + 1);
    }
    let a0 = p.coeff(0);
    let an = p.lead();
    let reversed = Poly::new(p.coeffs().iter().rev().cloned().collect());
    // the z^n terms cancel, so deg T < n
    let t = p.scale(&a0).sub(&reversed.scale(&an)).primitive();
    if t.is_zero() {
        return None;
    }
    match (&a0 * &a0).cmp(&(&an * &an)) {
        Ordering::Greater => count_in_unit_disk(&t),
        Ordering::Less => count_in_unit_disk(&t).map(|c| n - c),
        Ordering::Equal => None,
    }
}

/// Roots of `p` strictly inside the disk of radius `rho`.
pub fn count_in_disk(p: &Poly, rho: &BigRational) -> Option<usize> {
    count_in_unit_disk(&p.compose_scale(rho))
}

/// Characteristic polynomial `det(xI − A)` via Hessenberg reduction over
/// the rationals.
pub fn char_poly(a: &[Vec<BigInt>]) -> Poly {
    let n = a.len();
    let mut h: Vec<Vec<BigRational>> = a
        .iter()
        .map(|row| row.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    for m in 1..n.saturating_sub(1) {
        // pivot in column m-1, rows m..n
        let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let t = h[m][m - 1].clone();
        for i in (m + 1)..n {
            if h[i][m - 1].is_zero() {
                continue;
            }
            let u = &h[i][m - 1] / &t;
            for j in (m - 1)..n {
                let v = &u * &h[m][j];
                h[i][j] -= v;
            }
            for row in h.iter_mut() {
                let v = &u * &row[i];
                row[m] += v;
            }
        }
    }
    // p_k = (x − h_kk) p_{k−1} − Σ_i h_{k−i,k} (Π sub-diagonal) p_{k−i−1}
    let mut ps: Vec<Poly> = vec![Poly::one()];
    for k in 0..n {
        let x_minus = Poly::new(vec![-h[k][k].clone(), BigRational::one()]);
        let mut pk = x_minus.mul(&ps[k]);
        let mut t = BigRational::one();
        for i in 1..=k {
            t *= &h[k - i + 1][k - i];
            let c = &t * &h[k - i][k];
            if !c.is_zero() {
                pk = pk.sub(&ps[k - i].scale(&c));
            }
        }
        ps.push(pk);
    }
    ps.pop().unwrap_or_else(Poly::one)
}

/// `floor(log2(x))`-style helper used to pick bisection budgets.
pub fn bit_length(x: &BigInt) -> u64 {
    x.abs().bits()
}

/// Greatest common divisor of a list of integers (0 for an empty list).
pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn division_and_gcd() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[1, 2, 1])), p(&[1, 1]));
    }

    #[test]
    fn square_free_part() {
        // x^2 (x - 2)
        let f = p(&[0, 0, -2, 1]);
        assert_eq!(f.square_free(), p(&[0, -2, 1]));
    }

    #[test]
    fn sturm_counts() {
        let f = p(&[-1, -1, 1]); // roots ≈ -0.618, 1.618
        let s = SturmChain::new(&f);
        assert_eq!(s.count_real(), 2);
        assert_eq!(s.count_in(&rat(1), &rat(2)), 1);
        assert_eq!(s.count_above(&rat(0)), 1);
        assert_eq!(SturmChain::new(&p(&[1, 0, 1])).count_real(), 0);
    }

    #[test]
    fn largest_root_isolation() {
        let iv = isolate_largest_root(&p(&[-1, -1, 1])).unwrap();
        let iv = refine_root(&p(&[-1, -1, 1]), &iv, 30);
        let mid = ((&iv.lo + &iv.hi) / rat(2)).to_f64().unwrap();
        assert!((mid - 1.618_033_988_749_895).abs() < 1e-8);
        let exact = isolate_largest_root(&p(&[-2, 1])).unwrap();
        assert!(exact.is_exact());
        assert_eq!(exact.lo, rat(2));
    }

    #[test]
    fn factorization() {
        assert_eq!(irreducible_factors(&p(&[0, -2, 1])), vec![p(&[-2, 1]), p(&[0, 1])]);
        assert_eq!(irreducible_factors(&p(&[-1, -1, 1])), vec![p(&[-1, -1, 1])]);
        // x^4 + 1 is irreducible but splits modulo every prime
        assert!(is_irreducible(&p(&[1, 0, 0, 0, 1])));
        // x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2)
        assert_eq!(
            irreducible_factors(&p(&[4, 0, 0, 0, 1])),
            vec![p(&[2, -2, 1]), p(&[2, 2, 1])]
        );
        assert!(is_irreducible(&p(&[-1, -1, -1, 1])));
        assert!(!is_irreducible(&p(&[-2, -1, 1])));
        assert!(is_irreducible(&p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])));
        let a = p(&[-1, -1, 0, 0, 0, 1]);
        let b = p(&[1, -1, 0, 0, 0, 1]);
        assert_eq!(irreducible_factors(&a.mul(&b)).len(), 2);
    }

    #[test]
    fn factor_degrees_mod_p() {
        let big = |c: &[i64]| c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(fp_factor_degrees(&big(&[1, 0, 1]), 3), Some(vec![2]));
        assert_eq!(fp_factor_degrees(&big(&[1, 0, 1]), 5), Some(vec![1, 1]));
        // x^2 - 2x + 1 is a square
        assert_eq!(fp_factor_degrees(&big(&[1, -2, 1]), 7), None);
        assert_eq!(fp_factor_degrees(&big(&[-1, 0, 0, 1]), 7), Some(vec![1, 1, 1]));
    }

    #[test]
    fn unit_disk_counts() {
        assert_eq!(count_in_unit_disk(&p(&[-1, 2])), Some(1)); // 2x - 1
        assert_eq!(count_in_unit_disk(&p(&[-2, 1])), Some(0));
        // (x - 1/2)(x - 3)(x + 1/3)
        let f = p(&[-1, 2]).mul(&p(&[-3, 1])).mul(&p(&[1, 3]));
        assert_eq!(count_in_unit_disk(&f), Some(2));
        // golden polynomial is singular at radius 1 (|a0| = |a2|) but not nearby
        let g = p(&[-1, -1, 1]);
        assert_eq!(count_in_unit_disk(&g), None);
        let rho = BigRational::new(BigInt::from(15), BigInt::from(16));
        assert_eq!(count_in_disk(&g, &rho), Some(1));
    }

    #[test]
    fn hessenberg_char_poly() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
        };
        assert_eq!(char_poly(&m(&[&[1, 1], &[1, 0]])), p(&[-1, -1, 1]));
        assert_eq!(char_poly(&m(&[&[1, 1], &[1, 1]])), p(&[0, -2, 1]));
        assert_eq!(char_poly(&m(&[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0]])), p(&[-1, -1, -1, 1]));
        // zero sub-diagonal pivot forces a row/column swap
        assert_eq!(
            char_poly(&m(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]])),
            p(&[-1, 0, 0, 1])
        );
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p(&[3, -2, 5]);
        let xs: Vec<_> = [-1, 0, 2].iter().map(|&x| rat(x)).collect();
        let ys: Vec<_> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), f);
    }
}
