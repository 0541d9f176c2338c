//! Elements of cyclotomic fields Q(ζ_n) in the reduced power basis.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;
use super::scalar::Scalar;
use crate::linalg;

/// Cached data for a conductor: Euler phi and the cyclotomic polynomial.
#[derive(Debug)]
pub struct CycloData {
    pub n: u32,
    pub phi: usize,
    /// Φ_n, low-to-high, monic, length phi + 1.
    pub poly: Vec<i64>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd] / lead;
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                r[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

fn compute_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let pd = cyclo_data(d);
            num = poly_div_exact(&num, &pd.poly);
        }
    }
    num
}

/// Shared, lazily built table of cyclotomic polynomials.
pub fn cyclo_data(n: u32) -> Arc<CycloData> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CycloData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(d) = cache.read().unwrap().get(&n) {
        return d.clone();
    }
    let poly = compute_poly(n);
    let data = Arc::new(CycloData { n, phi: poly.len() - 1, poly });
    cache.write().unwrap().entry(n).or_insert(data).clone()
}

pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut r = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if m > 1 {
        r -= r / m;
    }
    r
}

/// Σ c_i ζ_n^i with the vector reduced modulo Φ_n (entries at index ≥ φ(n) are zero).
#[derive(Clone, Debug)]
pub struct Cyclotomic<Q> {
    n: u32,
    c: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("inversion of zero")]
    InverseOfZero,
}

impl<Q: Scalar> Cyclotomic<Q> {
    pub fn zero() -> Self {
        Cyclotomic { n: 1, c: vec![Q::zero()] }
    }

    pub fn one() -> Self {
        Self::from_scalar(Q::one())
    }

    pub fn from_scalar(q: Q) -> Self {
        Cyclotomic { n: 1, c: vec![q] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_scalar(Q::from_i64(k))
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n > 0);
        let mut v = vec![Q::zero(); n as usize];
        v[k.rem_euclid(n as i64) as usize] = Q::one();
        Self::from_cyclic(n, v)
    }

    /// Build from a length-n coefficient vector in the (non-reduced) cyclic basis.
    pub fn from_cyclic(n: u32, mut v: Vec<Q>) -> Self {
        assert_eq!(v.len(), n as usize);
        let d = cyclo_data(n);
        reduce_in_place(&mut v, &d);
        Cyclotomic { n, c: v }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_negligible())
    }

    /// The rational value when the element is rational.
    pub fn as_scalar(&self) -> Option<Q> {
        if self.c.iter().skip(1).all(|x| x.is_negligible()) && self.n <= 2 {
            return Some(self.c[0].clone());
        }
        let m = self.minimal_form();
        if m.n == 1 {
            Some(m.c[0].clone())
        } else {
            None
        }
    }

    /// Embed into conductor m, which must be a multiple of the current one.
    pub fn lift(&self, m: u32) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.n), "conductor {} does not divide {}", self.n, m);
        let step = (m / self.n) as usize;
        let mut v = vec![Q::zero(); m as usize];
        for (i, x) in self.c.iter().enumerate() {
            if !x.is_negligible() {
                v[i * step] = x.clone();
            }
        }
        Self::from_cyclic(m, v)
    }

    fn common(&self, o: &Self) -> (Self, Self) {
        if self.n == o.n {
            return (self.clone(), o.clone());
        }
        if self.n.is_multiple_of(o.n) {
            return (self.clone(), o.lift(self.n));
        }
        if o.n.is_multiple_of(self.n) {
            return (self.lift(o.n), o.clone());
        }
        // neither field contains the other: shrink both before meeting at the lcm
        let (a, b) = (self.minimal_form(), o.minimal_form());
        let m = (a.n as u64).lcm(&(b.n as u64)) as u32;
        (a.lift(m), b.lift(m))
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        if self.n == o.n {
            let c = self.c.iter().zip(&o.c).map(|(a, b)| a.clone() + b.clone()).collect();
            return Cyclotomic { n: self.n, c };
        }
        let (a, b) = self.common(o);
        a.add_ref(&b)
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        Cyclotomic { n: self.n, c: self.c.iter().map(|x| -x.clone()).collect() }
    }

    pub fn scale(&self, q: &Q) -> Self {
        Cyclotomic { n: self.n, c: self.c.iter().map(|x| x.clone() * q.clone()).collect() }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.n == 1 {
            return o.scale(&self.c[0]);
        }
        if o.n == 1 {
            return self.scale(&o.c[0]);
        }
        if self.n != o.n {
            let (a, b) = self.common(o);
            return a.mul_ref(&b);
        }
        let n = self.n as usize;
        let d = cyclo_data(self.n);
        let mut v = vec![Q::zero(); n];
        for (i, a) in self.c.iter().enumerate().take(d.phi) {
            if a.is_negligible() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(d.phi) {
                if b.is_negligible() {
                    continue;
                }
                let k = (i + j) % n;
                v[k] = v[k].clone() + a.clone() * b.clone();
            }
        }
        reduce_in_place(&mut v, &d);
        Cyclotomic { n: self.n, c: v }
    }

    /// In-place `self += k * o` for an integer k.
    pub fn add_scaled_int(&mut self, o: &Self, k: i64) {
        if k == 0 {
            return;
        }
        if self.n != o.n {
            let (a, b) = self.common(o);
            *self = a;
            self.add_scaled_int(&b, k);
            return;
        }
        let kq = Q::from_i64(k);
        for (x, y) in self.c.iter_mut().zip(&o.c) {
            if !y.is_negligible() {
                *x = x.clone() + y.clone() * kq.clone();
            }
        }
    }

    /// The Galois automorphism ζ_n ↦ ζ_n^k (k coprime to n).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.n as i64;
        let mut v = vec![Q::zero(); self.n as usize];
        for (i, x) in self.c.iter().enumerate() {
            if !x.is_negligible() {
                let j = ((i as i64) * k).rem_euclid(n) as usize;
                v[j] = v[j].clone() + x.clone();
            }
        }
        Self::from_cyclic(self.n, v)
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// |x|^2 = x · conj(x).
    pub fn abs2(&self) -> Self {
        self.mul_ref(&self.conj())
    }

    /// Multiplicative inverse via the product of the nontrivial Galois conjugates.
    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::InverseOfZero);
        }
        let m = self.minimal_form();
        if m.n == 1 {
            return Ok(Self::from_scalar(Q::one() / m.c[0].clone()));
        }
        let n = m.n as u64;
        let mut prod = Self::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                prod = prod.mul_ref(&m.galois(k as i64));
            }
        }
        let norm = m.mul_ref(&prod);
        let nq = norm.as_scalar().expect("field norm is rational");
        Ok(prod.scale(&(Q::one() / nq)))
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    /// The same value written at its smallest conductor.
    pub fn minimal_form(&self) -> Self {
        let n = self.n;
        if n == 1 {
            return self.clone();
        }
        if self.c.iter().skip(1).all(|x| x.is_negligible()) {
            return Self::from_scalar(self.c[0].clone());
        }
        for d in 1..n {
            if !n.is_multiple_of(d) || d % 4 == 2 {
                continue;
            }
            if let Some(y) = self.descend(d) {
                return y;
            }
        }
        self.clone()
    }

    /// Try to write the value at conductor d (d | n).
    fn descend(&self, d: u32) -> Option<Self> {
        let dd = cyclo_data(d);
        let dn = cyclo_data(self.n);
        // Columns: images of ζ_d^j at conductor n.
        let mut cols: Vec<Vec<Q>> = Vec::with_capacity(dd.phi);
        for j in 0..dd.phi {
            let e = Cyclotomic::<Q>::root_of_unity(d, j as i64).lift(self.n);
            cols.push(e.c[..dn.phi].to_vec());
        }
        let rows = dn.phi;
        let mut a: Vec<Vec<Q>> = (0..rows)
            .map(|r| {
                let mut row: Vec<Q> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(self.c[r].clone());
                row
            })
            .collect();
        let sol = linalg::solve_augmented(&mut a, dd.phi)?;
        let mut v = vec![Q::zero(); d as usize];
        v[..dd.phi].clone_from_slice(&sol);
        Some(Cyclotomic { n: d, c: v })
    }

    /// Floating rendering via ζ_n ↦ exp(2πi/n); for reports and search hints.
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        let n = self.n as f64;
        for (i, x) in self.c.iter().enumerate() {
            let v = x.to_f64();
            if v != 0.0 {
                let a = std::f64::consts::TAU * i as f64 / n;
                re += v * a.cos();
                im += v * a.sin();
            }
        }
        (re, im)
    }

    /// `(n; c_0, ..., c_{n-1})` at the minimal conductor.
    pub fn serialize(&self) -> String {
        let m = self.minimal_form();
        let parts: Vec<String> = m.c.iter().map(|x| x.render()).collect();
        format!("({}; {})", m.n, parts.join(", "))
    }

    /// Search ζ with self = ζ · other among the roots of unity of the ambient field.
    pub fn root_of_unity_ratio(&self, other: &Self) -> Option<(u32, u32)> {
        if other.is_zero() {
            return if self.is_zero() { Some((1, 0)) } else { None };
        }
        if self.is_zero() {
            return None;
        }
        let (a, b) = (self.minimal_form(), other.minimal_form());
        let m = (a.n as u64).lcm(&(b.n as u64)).lcm(&2) as u32;
        if !a.abs2().sub_ref(&b.abs2()).is_zero() {
            return None;
        }
        let a = a.lift(m);
        let b = b.lift(m);
        let hits = |k: u32| a.sub_ref(&Self::root_of_unity(m, k as i64).mul_ref(&b)).is_zero();
        // the argument of self/other picks the exponent; only exact equality decides
        let (ar, ai) = self.approx();
        let (br, bi) = other.approx();
        if ar.hypot(ai) > 1e-6 {
            let turns = (ai.atan2(ar) - bi.atan2(br)) / std::f64::consts::TAU;
            let k0 = (turns * m as f64).round().rem_euclid(m as f64) as u32;
            return [k0, (k0 + 1) % m, (k0 + m - 1) % m].into_iter().find(|&k| hits(k)).map(|k| (m, k));
        }
        (0..m).find(|&k| hits(k)).map(|k| (m, k))
    }
}

impl Cyclotomic<Rational> {
    /// True when every coefficient in the reduced power basis is an integer,
    /// i.e. the value lies in Z[ζ_n].
    pub fn is_algebraic_integer(&self) -> bool {
        self.c.iter().all(|x| x.is_integer())
    }
}

/// Reduce a length-n cyclic coefficient vector modulo Φ_n.
fn reduce_in_place<Q: Scalar>(v: &mut [Q], d: &CycloData) {
    let n = d.n as usize;
    let phi = d.phi;
    for i in (phi..n).rev() {
        if v[i].is_negligible() {
            v[i] = Q::zero();
            continue;
        }
        let coef = std::mem::replace(&mut v[i], Q::zero());
        let base = i - phi;
        for (j, &pj) in d.poly.iter().enumerate().take(phi) {
            if pj != 0 {
                v[base + j] = v[base + j].clone() - coef.clone() * Q::from_i64(pj);
            }
        }
    }
}

impl<Q: Scalar> PartialEq for Cyclotomic<Q> {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.c.iter().zip(&other.c).all(|(a, b)| (a.clone() - b.clone()).is_negligible());
        }
        self.sub_ref(other).is_zero()
    }
}

impl<Q: Scalar> Zero for Cyclotomic<Q> {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
}

impl<Q: Scalar> One for Cyclotomic<Q> {
    fn one() -> Self {
        Cyclotomic::one()
    }
}

macro_rules! cyclo_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<'a, Q: Scalar> $tr<&'a Cyclotomic<Q>> for &'a Cyclotomic<Q> {
            type Output = Cyclotomic<Q>;
            fn $m(self, o: &Cyclotomic<Q>) -> Cyclotomic<Q> {
                self.$imp(o)
            }
        }
        impl<Q: Scalar> $tr for Cyclotomic<Q> {
            type Output = Cyclotomic<Q>;
            fn $m(self, o: Cyclotomic<Q>) -> Cyclotomic<Q> {
                self.$imp(&o)
            }
        }
    };
}
cyclo_binop!(Add, add, add_ref);
cyclo_binop!(Sub, sub, sub_ref);
cyclo_binop!(Mul, mul, mul_ref);

impl<Q: Scalar> Neg for Cyclotomic<Q> {
    type Output = Cyclotomic<Q>;
    fn neg(self) -> Cyclotomic<Q> {
        self.neg_ref()
    }
}

impl<Q: Scalar> Neg for &Cyclotomic<Q> {
    type Output = Cyclotomic<Q>;
    fn neg(self) -> Cyclotomic<Q> {
        self.neg_ref()
    }
}

impl<Q: Scalar> fmt::Display for Cyclotomic<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

/// Decimal rendering of (real, imaginary) parts with the requested digits.
pub fn approx_complex<Q: Scalar>(x: &Cyclotomic<Q>, digits: usize) -> (String, String) {
    let digits = digits.clamp(1, 50);
    let (re, im) = x.approx();
    let clean = |v: f64| if v.abs() < 10f64.powi(-(digits.min(15) as i32)) { 0.0 } else { v };
    (format!("{:.*}", digits, clean(re)), format!("{:.*}", digits, clean(im)))
}
