//! Exact arithmetic in cyclotomic fields.
//!
//! A value is stored at its smallest conductor `n` as rational coefficients
//! over the power basis `1, ζ_n, ..., ζ_n^(φ(n)-1)`, reduced modulo the
//! cyclotomic polynomial `Φ_n`. Two values are equal exactly when their
//! stored forms are equal.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::CycloError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u32(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

pub fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    let e = a.extended_gcd(&m);
    debug_assert_eq!(e.gcd.abs(), 1);
    e.x.rem_euclid(m)
}

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            poly = exact_divide(&poly, &cyclotomic_polynomial(d));
        }
    }
    let poly = Arc::new(poly);
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Reduce exponent coefficients (index = power of ζ_n) modulo `Φ_n`.
fn reduce_mod_phi(n: u32, mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for i in (deg..coeffs.len()).rev() {
        if coeffs[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut coeffs[i]);
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                coeffs[i - deg + j] -= &c * pj;
            }
        }
    }
    coeffs.truncate(deg);
    coeffs.resize(deg, BigInt::zero());
    coeffs
}

/// Try to rewrite a reduced element of `Q(ζ_n)` inside `Q(ζ_{n/q})`.
fn descend(n: u32, num: &[BigInt], q: u32) -> Option<Vec<BigInt>> {
    let m = n / q;
    if m % q == 0 {
        // Over Q(ζ_m) the basis is ζ_n^(q a + b), b < q.
        if num.iter().enumerate().any(|(i, c)| i as u32 % q != 0 && !c.is_zero()) {
            return None;
        }
        return Some(num.iter().step_by(q as usize).cloned().collect());
    }
    // ζ_n^i = ζ_m^(u i) ζ_q^(v i); group the terms by the ζ_q exponent.
    let u = mod_inverse(q as i64 % m.max(1) as i64, m.max(1) as i64) as u64;
    let v = mod_inverse(m as i64 % q as i64, q as i64) as u64;
    let mut parts: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); m as usize]; q as usize];
    for (i, c) in num.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let a = (u * i as u64 % m as u64) as usize;
        let e = (v * i as u64 % q as u64) as usize;
        parts[e][a] += c;
    }
    let parts: Vec<Vec<BigInt>> = parts.into_iter().map(|p| reduce_mod_phi(m, p)).collect();
    let last = &parts[q as usize - 1];
    if parts[1..q as usize - 1].iter().any(|p| p != last) {
        return None;
    }
    Some(parts[0].iter().zip(last).map(|(a, b)| a - b).collect())
}

impl Cyclotomic {
    /// Build from coefficients of `ζ_n^i` for arbitrary exponents `i`, divided by `den`.
    pub fn from_exponents(n: u32, coeffs: Vec<BigInt>, den: BigInt) -> Self {
        assert!(n >= 1);
        assert!(!den.is_zero(), "zero denominator");
        let mut folded = vec![BigInt::zero(); n as usize];
        for (i, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                folded[i % n as usize] += c;
            }
        }
        Self::normalize(n, reduce_mod_phi(n, folded), den)
    }

    fn normalize(mut n: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        'outer: loop {
            if n == 1 {
                break;
            }
            if num.iter().all(Zero::is_zero) {
                n = 1;
                num = vec![BigInt::zero()];
                break;
            }
            for q in prime_factors(n) {
                if let Some(smaller) = descend(n, &num, q) {
                    n /= q;
                    num = smaller;
                    continue 'outer;
                }
            }
            break;
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c /= &g;
            }
            den /= &g;
        }
        Cyclotomic { conductor: n, num, den }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        Cyclotomic { conductor: 1, num: vec![BigInt::from(k)], den: BigInt::one() }
    }

    pub fn from_bigint(k: BigInt) -> Self {
        Cyclotomic { conductor: 1, num: vec![k], den: BigInt::one() }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::normalize(1, vec![q.numer().clone()], q.denom().clone())
    }

    pub fn from_fraction(num: i64, den: i64) -> Result<Self, CycloError> {
        if den == 0 {
            return Err(CycloError::DivisionByZero);
        }
        Ok(Self::normalize(1, vec![BigInt::from(num)], BigInt::from(den)))
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![BigInt::zero(); n as usize];
        coeffs[e] = BigInt::one();
        Self::from_exponents(n, coeffs, BigInt::one())
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis numerators at the stored conductor.
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.num[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn to_rational_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.den.is_one()).then(|| self.num[0].clone())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_rational_integer().and_then(|k| k.to_i64())
    }

    /// Coefficients over `ζ_big^i` for `i < big`, where `conductor | big`.
    fn spread(&self, big: u32) -> impl Iterator<Item = (usize, &BigInt)> {
        let step = (big / self.conductor) as usize;
        self.num.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (i * step, c))
    }

    /// Integer coefficients over `ζ_big^i`, `i < big`, when the value is an
    /// algebraic integer with machine-sized coefficients and `conductor | big`.
    pub fn exponent_vector(&self, big: u32) -> Option<Vec<i64>> {
        if !self.den.is_one() || big % self.conductor != 0 {
            return None;
        }
        let mut out = vec![0i64; big as usize];
        for (i, c) in self.spread(big) {
            out[i] = c.to_i64()?;
        }
        Some(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let num = self.num.iter().map(|c| c * k).collect();
        Self::normalize(self.conductor, num, self.den.clone())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    pub fn divide_int(&self, k: i64) -> Result<Self, CycloError> {
        if k == 0 {
            return Err(CycloError::DivisionByZero);
        }
        Ok(Self::normalize(self.conductor, self.num.clone(), &self.den * k))
    }

    /// Image under the automorphism `ζ ↦ ζ^s`.
    pub fn galois(&self, s: i64) -> Result<Self, CycloError> {
        let n = self.conductor;
        if gcd_u64(s.unsigned_abs(), n as u64) != 1 && n != 1 {
            return Err(CycloError::NotCoprime { s, conductor: n });
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let mut coeffs = vec![BigInt::zero(); n as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                let j = (s.rem_euclid(n as i64) as usize * i) % n as usize;
                coeffs[j] += c;
            }
        }
        Ok(Self::from_exponents(n, coeffs, self.den.clone()))
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is coprime to every conductor")
    }

    /// Product of all Galois conjugates, a rational number.
    pub fn norm(&self) -> BigRational {
        let n = self.conductor;
        let mut prod = Cyclotomic::one();
        for s in 1..n.max(2) as i64 {
            if gcd_u64(s as u64, n as u64) == 1 {
                prod = &prod * &self.galois(s).unwrap();
            }
        }
        prod.to_rational().expect("norms are rational")
    }

    pub fn inverse(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        let n = self.conductor;
        let mut others = Cyclotomic::one();
        for s in 2..n as i64 {
            if gcd_u64(s as u64, n as u64) == 1 {
                others = &others * &self.galois(s).unwrap();
            }
        }
        let norm = (self * &others).to_rational().expect("norms are rational");
        Ok(&others * &Cyclotomic::from_rational(&norm.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, CycloError> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The order of this value as a root of unity, if it is one.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        let n = self.conductor as u64;
        let bound = if n % 2 == 0 { n } else { 2 * n };
        if self.pow(bound) != Cyclotomic::one() {
            return None;
        }
        (1..=bound).find(|d| bound % d == 0 && self.pow(*d) == Cyclotomic::one())
    }

    /// Floating-point value, for smoke tests only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.num.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN) / den;
            let angle = 2.0 * std::f64::consts::PI * i as f64 / n;
            re += c * angle.cos();
            im += c * angle.sin();
        }
        (re, im)
    }
}

/// `(a - b) / p` is an algebraic integer.
pub fn congruent_mod_p(a: &Cyclotomic, b: &Cyclotomic, p: u64) -> Result<bool, CycloError> {
    if !a.is_algebraic_integer() || !b.is_algebraic_integer() {
        return Err(CycloError::NotAlgebraicInteger);
    }
    let diff = a - b;
    let p = BigInt::from(p);
    Ok(diff.num.iter().all(|c| c.is_multiple_of(&p)))
}

fn add_impl(a: &Cyclotomic, b: &Cyclotomic, negate: bool) -> Cyclotomic {
    if a.conductor == 1 && b.conductor == 1 {
        let (x, y) = (&a.num[0] * &b.den, &b.num[0] * &a.den);
        let top = if negate { x - y } else { x + y };
        return Cyclotomic::normalize(1, vec![top], &a.den * &b.den);
    }
    let l = lcm_u32(a.conductor, b.conductor);
    let mut coeffs = vec![BigInt::zero(); l as usize];
    for (i, c) in a.spread(l) {
        coeffs[i] += c * &b.den;
    }
    for (i, c) in b.spread(l) {
        if negate {
            coeffs[i] -= c * &a.den;
        } else {
            coeffs[i] += c * &a.den;
        }
    }
    Cyclotomic::from_exponents(l, coeffs, &a.den * &b.den)
}

fn mul_impl(a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
    if a.conductor == 1 && b.conductor == 1 {
        return Cyclotomic::normalize(1, vec![&a.num[0] * &b.num[0]], &a.den * &b.den);
    }
    if a.conductor == 1 {
        return Cyclotomic::normalize(b.conductor, b.num.iter().map(|c| c * &a.num[0]).collect(), &a.den * &b.den);
    }
    if b.conductor == 1 {
        return mul_impl(b, a);
    }
    let l = lcm_u32(a.conductor, b.conductor);
    let mut coeffs = vec![BigInt::zero(); l as usize];
    let bs: Vec<(usize, &BigInt)> = b.spread(l).collect();
    for (i, x) in a.spread(l) {
        for &(j, y) in &bs {
            coeffs[(i + j) % l as usize] += x * y;
        }
    }
    Cyclotomic::from_exponents(l, coeffs, &a.den * &b.den)
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        add_impl(self, rhs, false)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        add_impl(self, rhs, true)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        mul_impl(self, rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self + rhs;
    }
}

impl From<i64> for Cyclotomic {
    fn from(k: i64) -> Self {
        Cyclotomic::from_int(k)
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A fixed total order (conductor, then coefficients); not the order of
/// the reals.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor
            .cmp(&other.conductor)
            .then_with(|| self.num.cmp(&other.num))
            .then_with(|| self.den.cmp(&other.den))
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::io::render_cyclo(self))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::io::render_cyclo(self))
    }
}

/// Running sum of products at a fixed conductor, reduced once at the end.
///
/// Integral operands accumulate in `i128` over `ζ_n` exponents; anything
/// else falls back to exact arithmetic.
pub struct CycloSum {
    n: u32,
    acc: Vec<i128>,
    exact: Cyclotomic,
}

impl CycloSum {
    pub fn new(n: u32) -> Self {
        CycloSum { n, acc: vec![0; n as usize], exact: Cyclotomic::zero() }
    }

    /// Adds `k * a * b`.
    pub fn add_product(&mut self, k: i64, a: &Cyclotomic, b: &Cyclotomic) {
        if self.try_add_product(k, a, b).is_none() {
            self.exact += &(&(a * b)).scale_int(k);
        }
    }

    pub fn add_scaled(&mut self, k: i64, a: &Cyclotomic) {
        self.add_product(k, a, &Cyclotomic::one());
    }

    fn try_add_product(&mut self, k: i64, a: &Cyclotomic, b: &Cyclotomic) -> Option<()> {
        if !a.den.is_one() || !b.den.is_one() || self.n % a.conductor != 0 || self.n % b.conductor != 0 {
            return None;
        }
        let n = self.n as usize;
        let mut terms: Vec<(usize, i128)> = Vec::new();
        for (i, x) in a.spread(self.n) {
            let x = x.to_i64()? as i128;
            for (j, y) in b.spread(self.n) {
                let y = y.to_i64()? as i128;
                terms.push(((i + j) % n, x.checked_mul(y)?.checked_mul(k as i128)?));
            }
        }
        let mut next = self.acc.clone();
        for (idx, v) in terms {
            next[idx] = next[idx].checked_add(v)?;
        }
        self.acc = next;
        Some(())
    }

    pub fn finish(self) -> Cyclotomic {
        let coeffs: Vec<BigInt> = self.acc.into_iter().map(BigInt::from).collect();
        &Cyclotomic::from_exponents(self.n, coeffs, BigInt::one()) + &self.exact
    }
}
