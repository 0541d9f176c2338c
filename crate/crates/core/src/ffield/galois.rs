//! A single finite field F_{p^k} with log/exp tables.
//!
//! Elements are `u32` codes `Σ c_i p^i`, where `c_i` is the coefficient of
//! `x^i` in `F_p[x]/(f)` for the lexicographically least irreducible monic `f`.

use super::FieldError;

/// Largest field this module will tabulate.
pub const MAX_FIELD_SIZE: u64 = 1 << 22;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p, low-to-high, trimmed.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn poly_rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            for (j, &fj) in f.iter().enumerate() {
                let idx = top - df + j;
                r[idx] = (r[idx] + p - c * fj % p) % p;
            }
        }
        r.pop();
        r = trim(r);
        if r.len() <= df {
            break;
        }
    }
    trim(r)
}

fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    poly_rem(&trim(r), f, p)
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// x^(p^e) mod f.
fn x_pow_p_pow(f: &[u32], p: u32, e: u32) -> Vec<u32> {
    let mut cur = poly_rem(&[0, 1], f, p);
    for _ in 0..e {
        // raise to the p-th power by repeated squaring
        let mut acc = vec![1u32];
        let mut base = cur.clone();
        let mut k = p;
        while k > 0 {
            if k & 1 == 1 {
                acc = poly_mulmod(&acc, &base, f, p);
            }
            base = poly_mulmod(&base, &base, f, p);
            k >>= 1;
        }
        cur = acc;
    }
    cur
}

/// Rabin's irreducibility test for monic `f` of degree k.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = (f.len() - 1) as u32;
    if k == 1 {
        return true;
    }
    let sub_x = |mut v: Vec<u32>| {
        if v.len() < 2 {
            v.resize(2, 0);
        }
        v[1] = (v[1] + p - 1) % p;
        trim(v)
    };
    if !sub_x(x_pow_p_pow(f, p, k)).is_empty() {
        return false;
    }
    for r in prime_factors(k as u64) {
        let g = poly_gcd(f, &sub_x(x_pow_p_pow(f, p, k / r as u32)), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree k, comparing the
/// coefficient tuple (c_0, c_1, ..., c_{k-1}).
pub fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    let total = (p as u64).pow(k);
    for idx in 0..total {
        // idx enumerates tuples with c_0 most significant
        let mut f = vec![0u32; k as usize + 1];
        let mut t = idx;
        for i in (0..k as usize).rev() {
            f[i] = (t % p as u64) as u32;
            t /= p as u64;
        }
        f[k as usize] = 1;
        if k > 1 && f[0] == 0 {
            continue;
        }
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[derive(Debug)]
pub struct GaloisField {
    pub p: u32,
    pub k: u32,
    pub size: u32,
    /// Monic irreducible modulus, low-to-high.
    pub poly: Vec<u32>,
    /// Least code of multiplicative order size - 1.
    pub generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl GaloisField {
    pub fn new(p: u32, k: u32) -> Result<GaloisField, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let size = (p as u64).checked_pow(k).filter(|&s| s <= MAX_FIELD_SIZE);
        let Some(size) = size else {
            return Err(FieldError::TooLarge { p, k });
        };
        let size = size as u32;
        let poly = least_irreducible(p, k);
        let n = size - 1;
        let mul = |a: u32, b: u32| slow_mul(a, b, p, &poly);
        let factors = prime_factors(n as u64);
        let is_primitive = |g: u32| {
            factors.iter().all(|&r| slow_pow(g, (n as u64) / r, &mul) != 1)
        };
        let generator = (1..size).find(|&g| is_primitive(g)).expect("F_q^* is cyclic");
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![u32::MAX; size as usize];
        let mut cur = 1u32;
        for i in 0..n {
            exp[i as usize] = cur;
            log[cur as usize] = i;
            cur = mul(cur, generator);
        }
        for i in n..2 * n {
            exp[i as usize] = exp[(i - n) as usize];
        }
        Ok(GaloisField { p, k, size, poly, generator, exp, log })
    }

    pub fn order(&self) -> u32 {
        self.size - 1
    }

    pub fn digits(&self, a: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.k as usize);
        let mut t = a;
        for _ in 0..self.k {
            v.push(t % self.p);
            t /= self.p;
        }
        v
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    /// Lexicographic key on (c_0, c_1, ...), the tie-break order for solutions.
    pub fn lex_key(&self, a: u32) -> Vec<u32> {
        self.digits(a)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let (mut r, mut place) = (0u32, 1u32);
        while a > 0 || b > 0 {
            let s = (a % p + b % p) % p;
            r += s * place;
            place *= p;
            a /= p;
            b /= p;
        }
        r
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let (mut a, mut r, mut place) = (a, 0u32, 1u32);
        while a > 0 {
            r += ((p - a % p) % p) * place;
            place *= p;
            a /= p;
        }
        r
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}^{}", self.p, self.k);
        let l = self.log[a as usize];
        self.exp[((self.order() - l) % self.order()) as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = self.order() as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Power with a signed exponent on a nonzero element.
    pub fn pow_i(&self, a: u32, e: i64) -> u32 {
        let n = self.order() as i64;
        self.pow(a, e.rem_euclid(n) as u64)
    }

    pub fn log(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.log[a as usize])
        }
    }

    pub fn exp(&self, e: u64) -> u32 {
        self.exp[(e % self.order() as u64) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: u32) -> u64 {
        let n = self.order() as u64;
        let l = self.log[a as usize] as u64;
        n / num_integer::gcd(n, l)
    }

    /// The image of the prime field element `c`.
    pub fn from_prime(&self, c: u32) -> u32 {
        c % self.p
    }

    /// x ↦ x^{p^j}.
    pub fn frob_p(&self, a: u32, j: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let n = self.order() as u64;
        let e = pow_mod(self.p as u64, j as u64, n);
        self.exp[((self.log[a as usize] as u64 * e) % n) as usize]
    }

    /// Trace down to F_p.
    pub fn trace_to_prime(&self, a: u32) -> u32 {
        let mut s = 0;
        for j in 0..self.k {
            s = self.add(s, self.frob_p(a, j));
        }
        debug_assert!(s < self.p);
        s
    }

    /// Relative trace to the subfield of degree d (as p-degree), d | k.
    pub fn trace_to(&self, a: u32, d: u32) -> u32 {
        let mut s = 0;
        for j in 0..self.k / d {
            s = self.add(s, self.frob_p(a, j * d));
        }
        s
    }

    /// Whether `a` lies in the subfield of p-degree d.
    pub fn in_subfield(&self, a: u32, d: u32) -> bool {
        self.frob_p(a, d) == a
    }
}

fn slow_mul(a: u32, b: u32, p: u32, f: &[u32]) -> u32 {
    let k = f.len() - 1;
    let dig = |mut t: u32| {
        let mut v = vec![0u32; k];
        for c in v.iter_mut() {
            *c = t % p;
            t /= p;
        }
        v
    };
    let r = poly_mulmod(&trim(dig(a)), &trim(dig(b)), f, p);
    r.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn slow_pow(g: u32, mut e: u64, mul: &dyn Fn(u32, u32) -> u32) -> u32 {
    let (mut acc, mut base) = (1u32, g);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_irreducibles() {
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        // (c_0, c_1, c_2) = (1, 0, 1) comes before (1, 1, 0)
        assert_eq!(least_irreducible(2, 3), vec![1, 0, 1, 1]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        // 1 + x^4 = (1 + x)^4
        assert_eq!(least_irreducible(2, 4), vec![1, 0, 0, 1, 1]);
    }

    // no factor of degree ≤ k/2, by trial multiplication of all monic pairs
    fn brute_irreducible(f: &[u32], p: u32) -> bool {
        let k = f.len() - 1;
        let monic = |d: usize| {
            (0..(p as u64).pow(d as u32)).map(move |mut t| {
                let mut g = vec![0u32; d + 1];
                for c in g.iter_mut().take(d) {
                    *c = (t % p as u64) as u32;
                    t /= p as u64;
                }
                g[d] = 1;
                g
            })
        };
        let mul = |a: &[u32], b: &[u32]| {
            let mut r = vec![0u32; a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    r[i + j] = (r[i + j] + x * y) % p;
                }
            }
            r
        };
        (1..=k / 2).all(|d| monic(d).all(|g| monic(k - d).all(|h| mul(&g, &h) != f)))
    }

    #[test]
    fn least_irreducible_agrees_with_brute_force() {
        for (p, k) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2)] {
            let f = least_irreducible(p, k);
            assert!(brute_irreducible(&f, p));
            // every earlier tuple (c_0, ..., c_{k-1}) is reducible
            let key = |g: &[u32]| g[..k as usize].to_vec();
            for t in 0..(p as u64).pow(k) {
                let mut g = vec![0u32; k as usize + 1];
                let mut r = t;
                for i in (0..k as usize).rev() {
                    g[i] = (r % p as u64) as u32;
                    r /= p as u64;
                }
                g[k as usize] = 1;
                if key(&g) < key(&f) {
                    assert!(!brute_irreducible(&g, p), "{g:?}");
                }
            }
        }
    }

    #[test]
    fn f4_generator_squared() {
        let f = GaloisField::new(2, 2).unwrap();
        // x = code 2, x^2 = x + 1 = code 3
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.frob_p(2, 1), 3);
        assert_eq!(f.frob_p(2, 2), 2);
    }

    #[test]
    fn rejects_composite() {
        assert!(matches!(GaloisField::new(4, 1), Err(FieldError::NotPrime(4))));
    }
}
