//! Exact arithmetic in a real number field ℚ(β).
//!
//! An element is stored by its coordinates in the power basis
//! `1, β, …, β^{d−1}` as integer numerators over one positive common
//! denominator. Equality and hashing are structural, which is faithful
//! because the defining polynomial is irreducible. Signs are decided by
//! evaluating the coordinates against a dyadic enclosure of the powers of
//! β, refined until the enclosure of the element excludes zero.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{self, Poly, RootInterval};

/// Working precision (bits) of the enclosure built with every field.
const BASE_BITS: u32 = 96;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Signum {
    Negative,
    Zero,
    Positive,
}

impl Signum {
    pub fn to_ordering(self) -> Ordering {
        match self {
            Signum::Negative => Ordering::Less,
            Signum::Zero => Ordering::Equal,
            Signum::Positive => Ordering::Greater,
        }
    }
}

/// Integer bounds `lower[k] / 2^bits ≤ β^k ≤ upper[k] / 2^bits`.
#[derive(Clone, Debug)]
struct PowerEnclosure {
    bits: u32,
    lower: Vec<BigInt>,
    upper: Vec<BigInt>,
}

/// The field ℚ(β) for a real root β > 1 of a monic irreducible integer
/// polynomial.
#[derive(Debug)]
pub struct NumberField {
    min_poly: Vec<BigInt>,
    poly: Poly,
    root: RootInterval,
    enclosure: PowerEnclosure,
    powers_f64: Vec<f64>,
}

impl NumberField {
    /// `min_poly` is given low degree first and must be monic and
    /// irreducible; `lo < β ≤ hi` must isolate the intended root (or
    /// `lo == hi == β` in degree one).
    pub fn new(min_poly: Vec<BigInt>, lo: BigRational, hi: BigRational) -> Result<Arc<Self>> {
        let poly = Poly::from_bigints(&min_poly);
        let degree = poly.degree().unwrap_or(0);
        if degree == 0 || !poly.lead().is_one() || poly.coeffs().len() != min_poly.len() {
            return Err(Error::Precondition(format!(
                "defining polynomial {poly} must be monic of degree ≥ 1"
            )));
        }
        if !poly::is_irreducible(&poly) {
            return Err(Error::Reducible(poly.to_string()));
        }
        let root = if degree == 1 {
            let r = -poly.coeff(0);
            RootInterval { lo: r.clone(), hi: r }
        } else {
            let sturm = poly::SturmChain::new(&poly);
            if lo >= hi || sturm.count_in(&lo, &hi) != 1 {
                return Err(Error::Precondition(format!(
                    "interval ({lo}, {hi}] does not isolate a single root of {poly}"
                )));
            }
            RootInterval { lo, hi }
        };
        let one = BigRational::one();
        // β > 1 with an enclosure that stays above 1
        let mut root = root;
        loop {
            if root.hi <= one {
                return Err(Error::Precondition(format!("root of {poly} is not greater than 1")));
            }
            if root.lo >= one {
                break;
            }
            if root.is_exact() {
                return Err(Error::Precondition(format!("root of {poly} is not greater than 1")));
            }
            root = poly::bisect_once(&poly, &root);
        }
        let enclosure = Self::power_enclosure(&poly, &root, degree, BASE_BITS);
        let scale = (BASE_BITS as f64).exp2();
        let powers_f64 = enclosure
            .lower
            .iter()
            .zip(&enclosure.upper)
            .map(|(l, u)| ((l + u).to_f64().unwrap_or(f64::NAN) / 2.0) / scale)
            .collect();
        Ok(Arc::new(NumberField { min_poly, poly, root, enclosure, powers_f64 }))
    }

    /// The field generated by the largest real root of an irreducible monic
    /// integer polynomial.
    pub fn from_largest_root(min_poly: &Poly) -> Result<Arc<Self>> {
        let coeffs = min_poly
            .to_integer_coeffs()
            .filter(|_| min_poly.lead().is_one())
            .ok_or_else(|| Error::Precondition(format!("{min_poly} is not monic over ℤ")))?;
        let iv = poly::isolate_largest_root(min_poly)
            .ok_or_else(|| Error::Precondition(format!("{min_poly} has no real root")))?;
        Self::new(coeffs, iv.lo, iv.hi)
    }

    fn power_enclosure(poly: &Poly, root: &RootInterval, degree: usize, bits: u32) -> PowerEnclosure {
        // β^k for k < d; relative error grows with k so ask for extra bits
        let iv = poly::refine_root(poly, root, bits + 8 * degree as u32 + 8);
        let scale = BigRational::from_integer(BigInt::one() << bits);
        let mut lower = Vec::with_capacity(degree);
        let mut upper = Vec::with_capacity(degree);
        let mut lo_pow = BigRational::one();
        let mut hi_pow = BigRational::one();
        for _ in 0..degree {
            lower.push((&lo_pow * &scale).floor().to_integer());
            upper.push((&hi_pow * &scale).ceil().to_integer());
            lo_pow *= &iv.lo;
            hi_pow *= &iv.hi;
        }
        PowerEnclosure { bits, lower, upper }
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    /// Coefficients of the minimal polynomial, low degree first.
    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn min_poly_ref(&self) -> &Poly {
        &self.poly
    }

    /// Current isolating interval of β.
    pub fn beta_interval(&self) -> &RootInterval {
        &self.root
    }

    /// Rational enclosure of β of width at most `2^-bits`.
    pub fn beta_enclosure(&self, bits: u32) -> RootInterval {
        poly::refine_root(&self.poly, &self.root, bits)
    }

    fn same(&self, other: &NumberField) -> bool {
        std::ptr::eq(self, other)
            || (self.min_poly == other.min_poly
                && self.root.lo <= other.root.hi
                && other.root.lo <= self.root.hi)
    }

    pub fn zero(self: &Arc<Self>) -> AlgebraicReal {
        AlgebraicReal::from_parts(self.clone(), vec![BigInt::zero(); self.degree()], BigInt::one())
    }

    pub fn one(self: &Arc<Self>) -> AlgebraicReal {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> AlgebraicReal {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(self: &Arc<Self>, q: BigRational) -> AlgebraicReal {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = q.numer().clone();
        AlgebraicReal::from_parts(self.clone(), num, q.denom().clone())
    }

    /// The generator β itself.
    pub fn generator(self: &Arc<Self>) -> AlgebraicReal {
        let d = self.degree();
        if d == 1 {
            return self.from_rational(-BigRational::from_integer(self.min_poly[0].clone()));
        }
        let mut num = vec![BigInt::zero(); d];
        num[1] = BigInt::one();
        AlgebraicReal::from_parts(self.clone(), num, BigInt::one())
    }

    /// An element from rational coordinates in the power basis.
    pub fn from_coords(self: &Arc<Self>, coords: &[BigRational]) -> Result<AlgebraicReal> {
        if coords.len() != self.degree() {
            return Err(Error::Precondition(format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        let den = coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(AlgebraicReal::from_parts(self.clone(), num, den))
    }

    pub fn from_int_coords(self: &Arc<Self>, coords: &[i64]) -> Result<AlgebraicReal> {
        let c: Vec<BigRational> = coords
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        self.from_coords(&c)
    }
}

/// Whether the real root isolated by `beta` is a Pisot number: β > 1 and
/// every other root of the irreducible `min_poly` lies strictly inside the
/// unit disk.
///
/// Roots in the open disk are counted exactly (Schur–Cohn) on the circles
/// of radius `1 ± 2^-k`; an algebraic integer cannot lie on those circles,
/// so two equal counts certify the count for the unit disk.
pub fn is_pisot(min_poly: &Poly, beta: &RootInterval) -> Result<bool> {
    if !poly::is_irreducible(min_poly) {
        return Err(Error::Reducible(min_poly.to_string()));
    }
    let d = min_poly.degree().unwrap_or(0);
    let one = BigRational::one();
    if beta.hi <= one || (beta.is_exact() && beta.lo <= one) {
        return Ok(false);
    }
    if d == 1 {
        return Ok(true);
    }
    // β itself must exceed 1 strictly
    let mut iv = beta.clone();
    while iv.lo < one {
        if iv.hi <= one {
            return Ok(false);
        }
        iv = poly::bisect_once(min_poly, &iv);
        if iv.is_exact() {
            return Ok(iv.lo > one);
        }
    }
    // an irreducible polynomial with a root on the unit circle is
    // self-reciprocal; in degree > 2 that pairs some conjugate outside the
    // disk with one inside
    let coeffs = min_poly.coeffs();
    if d > 2 && coeffs.iter().eq(coeffs.iter().rev()) {
        return Ok(false);
    }
    for k in 2..=64u32 {
        let eps = BigRational::new(BigInt::one(), BigInt::one() << k);
        let inner = poly::count_in_disk(min_poly, &(&one - &eps));
        let outer = poly::count_in_disk(min_poly, &(&one + &eps));
        if outer.is_some_and(|b| b < d - 1) {
            return Ok(false);
        }
        if let (Some(a), Some(b)) = (inner, outer) {
            if a == b {
                return Ok(a == d - 1);
            }
        }
    }
    // a conjugate sits on (or within 2^-64 of) the unit circle
    Ok(false)
}

/// An element of ℚ(β).
#[derive(Clone)]
pub struct AlgebraicReal {
    field: Arc<NumberField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl AlgebraicReal {
    fn from_parts(field: Arc<NumberField>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        } else {
            let g = num.iter().fold(den.clone(), |g, x| g.gcd(x));
            if !g.is_one() {
                for x in &mut num {
                    *x /= &g;
                }
                den /= &g;
            }
            if den.is_negative() {
                den = -den;
                for x in &mut num {
                    *x = -&*x;
                }
            }
        }
        AlgebraicReal { field, num, den }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Coordinates in the basis `1, β, …, β^{d−1}`.
    pub fn coords(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
            .collect()
    }

    /// Integer numerators and the positive common denominator.
    pub fn numerators(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &other.den + b * &self.den)
            .collect();
        Ok(Self::from_parts(self.field.clone(), num, &self.den * &other.den))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &other.den - b * &self.den)
            .collect();
        Ok(Self::from_parts(self.field.clone(), num, &self.den * &other.den))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.num.len();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        // x^d = −Σ a_k x^k for the monic minimal polynomial
        let m = &self.field.min_poly;
        for k in (d..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (i, a) in m.iter().take(d).enumerate() {
                prod[k - d + i] -= &c * a;
            }
        }
        prod.truncate(d);
        Ok(Self::from_parts(self.field.clone(), prod, &self.den * &other.den))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = Poly::new(self.coords());
        let (g, s) = a.gcd_ext(&self.field.poly);
        debug_assert!(g.degree() == Some(0), "minimal polynomial must be irreducible");
        let mut coords = s.coeffs().to_vec();
        coords.resize(self.field.degree(), BigRational::zero());
        self.field.from_coords(&coords)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|n| n * q.numer()).collect();
        Self::from_parts(self.field.clone(), num, &self.den * q.denom())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        let num = self.num.iter().map(|n| n * &k).collect();
        Self::from_parts(self.field.clone(), num, self.den.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact sign.
    pub fn sign(&self) -> Signum {
        if self.is_zero() {
            return Signum::Zero;
        }
        if self.field.degree() == 1 {
            return if self.num[0].is_positive() { Signum::Positive } else { Signum::Negative };
        }
        if let Some(s) = Self::sign_with(&self.num, &self.field.enclosure) {
            return s;
        }
        let mut bits = self.field.enclosure.bits;
        loop {
            bits *= 2;
            let enc = NumberField::power_enclosure(
                &self.field.poly,
                &self.field.root,
                self.field.degree(),
                bits,
            );
            if let Some(s) = Self::sign_with(&self.num, &enc) {
                return s;
            }
        }
    }

    fn sign_with(num: &[BigInt], enc: &PowerEnclosure) -> Option<Signum> {
        let mut lower = BigInt::zero();
        let mut upper = BigInt::zero();
        for (k, n) in num.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            if n.is_positive() {
                lower += n * &enc.lower[k];
                upper += n * &enc.upper[k];
            } else {
                lower += n * &enc.upper[k];
                upper += n * &enc.lower[k];
            }
        }
        if lower.is_positive() {
            Some(Signum::Positive)
        } else if upper.is_negative() {
            Some(Signum::Negative)
        } else {
            None
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Signum::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Signum::Negative
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn min<'a>(&'a self, other: &'a Self) -> &'a Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max<'a>(&'a self, other: &'a Self) -> &'a Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// A rational interval of width at most about `2^-bits` containing the
    /// value.
    pub fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let d = self.field.degree();
        if d == 1 {
            let q = BigRational::new(self.num[0].clone(), self.den.clone());
            return (q.clone(), q);
        }
        let mag = self.num.iter().map(poly::bit_length).max().unwrap_or(0) as u32;
        let enc = NumberField::power_enclosure(&self.field.poly, &self.field.root, d, bits + mag + 4);
        let mut lower = BigInt::zero();
        let mut upper = BigInt::zero();
        for (k, n) in self.num.iter().enumerate() {
            if n.is_positive() {
                lower += n * &enc.lower[k];
                upper += n * &enc.upper[k];
            } else {
                lower += n * &enc.upper[k];
                upper += n * &enc.lower[k];
            }
        }
        let scale = &self.den << enc.bits;
        (BigRational::new(lower, scale.clone()), BigRational::new(upper, scale))
    }

    /// Floating approximation for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        // cheap evaluation unless cancellation could swamp the result
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut value = 0.0;
        let mut mag = 0.0;
        for (n, p) in self.num.iter().zip(&self.field.powers_f64) {
            let t = n.to_f64().unwrap_or(f64::INFINITY) * p;
            value += t;
            mag += t.abs();
        }
        if mag.is_finite() && den.is_finite() && mag <= value.abs() * 1e6 + f64::MIN_POSITIVE {
            return value / den;
        }
        let (lo, hi) = self.enclosure(60);
        ((lo + hi) / BigRational::from_integer(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.num == other.num && self.den == other.den
    }
}

impl Eq for AlgebraicReal {}

impl Hash for AlgebraicReal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl PartialOrd for AlgebraicReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order. Panics when comparing elements of different fields.
impl Ord for AlgebraicReal {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.num == other.num && self.den == other.den {
            return Ordering::Equal;
        }
        (self - other).sign().to_ordering()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&AlgebraicReal> for &AlgebraicReal {
            type Output = AlgebraicReal;
            fn $method(self, rhs: &AlgebraicReal) -> AlgebraicReal {
                self.$checked(rhs).expect("operands from different number fields")
            }
        }
        impl $trait<AlgebraicReal> for AlgebraicReal {
            type Output = AlgebraicReal;
            fn $method(self, rhs: AlgebraicReal) -> AlgebraicReal {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&AlgebraicReal> for AlgebraicReal {
            type Output = AlgebraicReal;
            fn $method(self, rhs: &AlgebraicReal) -> AlgebraicReal {
                (&self).$method(rhs)
            }
        }
        impl $trait<AlgebraicReal> for &AlgebraicReal {
            type Output = AlgebraicReal;
            fn $method(self, rhs: AlgebraicReal) -> AlgebraicReal {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &AlgebraicReal {
    type Output = AlgebraicReal;
    fn neg(self) -> AlgebraicReal {
        let num = self.num.iter().map(|n| -n).collect();
        AlgebraicReal { field: self.field.clone(), num, den: self.den.clone() }
    }
}

impl Neg for AlgebraicReal {
    type Output = AlgebraicReal;
    fn neg(self) -> AlgebraicReal {
        -&self
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Polynomial in β, highest power first: `2β² - β + 1/3`.
impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coords().iter().enumerate().rev() {
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
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "β")?,
                2 => write!(f, "β²")?,
                3 => write!(f, "β³")?,
                _ => write!(f, "β^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> Arc<NumberField> {
        NumberField::from_largest_root(&Poly::from_ints(&[-1, -1, 1])).unwrap()
    }

    #[test]
    fn golden_identities() {
        let k = golden();
        let b = k.generator();
        assert_eq!(&b * &b, k.from_int_coords(&[1, 1]).unwrap());
        assert!((&b - &b).is_zero());
        let one = k.one();
        let lhs = (&one + &b) * (&one - &b);
        assert_eq!(lhs, k.from_int_coords(&[0, -1]).unwrap());
    }

    #[test]
    fn signs_in_golden_field() {
        let k = golden();
        let b = k.generator();
        assert_eq!(k.zero().sign(), Signum::Zero);
        assert_eq!((&b - &k.one()).sign(), Signum::Positive);
        assert_eq!((k.from_int(2) - &b * &b).sign(), Signum::Negative);
        // β − 1 − 1/β = 0 exactly
        let inv = b.inverse().unwrap();
        assert!((&b - &k.one() - &inv).is_zero());
    }

    #[test]
    fn sign_needs_refinement_for_close_values() {
        let k = golden();
        // F_{n+1} − F_n β is tiny: ±β^{-n}
        let (a, c) = (BigInt::from(165_580_141i64), BigInt::from(102_334_155i64));
        let x = k
            .from_coords(&[BigRational::from_integer(a), BigRational::from_integer(-c)])
            .unwrap();
        // 165580141 − 102334155β = (1−β)^40·… is positive for even index
        let f = x.to_f64();
        assert!(f.abs() < 1e-7);
        let s = x.sign();
        assert_eq!(s, if f > 0.0 { Signum::Positive } else { Signum::Negative });
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = golden().one();
        let t = NumberField::from_largest_root(&Poly::from_ints(&[-1, -1, -1, 1])).unwrap();
        assert!(matches!(a.checked_add(&t.one()), Err(Error::FieldMismatch)));
    }

    #[test]
    fn pisot_examples() {
        let check = |c: &[i64]| {
            let p = Poly::from_ints(c);
            let iv = poly::isolate_largest_root(&p).unwrap();
            is_pisot(&p, &iv).unwrap()
        };
        assert!(check(&[-1, -1, 1]));
        assert!(check(&[-2, 1]));
        assert!(!check(&[-3, -1, 1]));
        assert!(check(&[-1, -1, -1, 1]));
        assert!(check(&[-1, -1, 0, 1])); // plastic number
        assert!(check(&[1, -3, 1])); // φ²
        // Lehmer's polynomial: a Salem number, conjugates on the circle
        assert!(!check(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]));
        let reducible = Poly::from_ints(&[0, -2, 1]);
        let iv = poly::isolate_largest_root(&reducible).unwrap();
        assert!(matches!(is_pisot(&reducible, &iv), Err(Error::Reducible(_))));
    }

    #[test]
    fn rational_field_elements() {
        let q = NumberField::from_largest_root(&Poly::from_ints(&[-2, 1])).unwrap();
        let b = q.generator();
        assert_eq!(b, q.from_int(2));
        assert_eq!(b.inverse().unwrap(), q.from_rational(BigRational::new(1.into(), 2.into())));
        assert_eq!(format!("{}", q.from_rational(BigRational::new((-3).into(), 4.into()))), "-3/4");
    }

    #[test]
    fn display_uses_beta() {
        let k = golden();
        let x = k
            .from_coords(&[BigRational::new(1.into(), 3.into()), BigRational::from_integer((-2).into())])
            .unwrap();
        assert_eq!(x.to_string(), "-2β + 1/3");
    }
}
