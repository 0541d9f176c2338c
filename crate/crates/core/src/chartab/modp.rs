//! Linear algebra over a word-sized prime field F_ℓ.

use crate::ffield::{is_prime, pow_mod, prime_factors};

/// Smallest prime ℓ ≡ 1 (mod e) with ℓ > 2√n.
pub fn dixon_prime(e: u64, n: u64) -> Option<u64> {
    let bound = 2.0 * (n as f64).sqrt();
    let mut l = e + 1;
    while (l as f64) <= bound {
        l += e;
    }
    while l < u32::MAX as u64 {
        if is_prime(l as u32) {
            return Some(l);
        }
        l += e;
    }
    None
}

/// Least primitive root modulo the prime ℓ.
pub fn primitive_root(l: u64) -> u64 {
    let fs = prime_factors(l - 1);
    (2..l).find(|&g| fs.iter().all(|&f| pow_mod(g, (l - 1) / f, l) != 1)).unwrap_or(1)
}

#[derive(Clone, Copy, Debug)]
pub struct Fl {
    pub l: u64,
}

impl Fl {
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.l
    }
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.l - b) % self.l
    }
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.l
    }
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.l));
        pow_mod(a, self.l - 2, self.l)
    }
    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.l)
    }
    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.l as i64) as u64
    }

    /// Row-reduce in place; returns pivot columns.
    pub fn rref(&self, a: &mut [Vec<u64>]) -> Vec<usize> {
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, pr);
            let s = self.inv(a[r][c]);
            for x in a[r].iter_mut() {
                *x = self.mul(*x, s);
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &p) in row.iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(f, p));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of {v : A v = 0} for a square or rectangular A given by rows.
    pub fn nullspace(&self, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = a.first().map_or(0, |r| r.len());
        let mut m = a.to_vec();
        let pivots = self.rref(&mut m);
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![0; n];
                v[f] = 1;
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = self.sub(0, m[r][f]);
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial det(xI − A), low-to-high, via reduction to
    /// upper Hessenberg form.
    pub fn charpoly(&self, a: &[Vec<u64>]) -> Vec<u64> {
        let n = a.len();
        let mut h = a.to_vec();
        for c in 0..n.saturating_sub(2) {
            let Some(p) = (c + 1..n).find(|&i| h[i][c] != 0) else { continue };
            if p != c + 1 {
                h.swap(p, c + 1);
                for row in h.iter_mut() {
                    row.swap(p, c + 1);
                }
            }
            let inv = self.inv(h[c + 1][c]);
            for i in c + 2..n {
                let f = self.mul(h[i][c], inv);
                if f == 0 {
                    continue;
                }
                // row_i -= f row_{c+1}; col_{c+1} += f col_i
                for j in 0..n {
                    let t = self.mul(f, h[c + 1][j]);
                    h[i][j] = self.sub(h[i][j], t);
                }
                for row in h.iter_mut() {
                    let t = self.mul(f, row[i]);
                    row[c + 1] = self.add(row[c + 1], t);
                }
            }
        }
        // p_k = charpoly of the leading k×k block
        let mut ps: Vec<Vec<u64>> = vec![vec![1]];
        for k in 1..=n {
            let mut pk = vec![0u64; k + 1];
            // (x − h_kk) p_{k−1}
            let prev = &ps[k - 1];
            for (i, &c) in prev.iter().enumerate() {
                pk[i + 1] = self.add(pk[i + 1], c);
                pk[i] = self.sub(pk[i], self.mul(h[k - 1][k - 1], c));
            }
            let mut prod = 1u64;
            for i in (1..k).rev() {
                prod = self.mul(prod, h[i][i - 1]);
                if prod == 0 {
                    break;
                }
                let coef = self.mul(prod, h[i - 1][k - 1]);
                for (j, &c) in ps[i - 1].iter().enumerate() {
                    pk[j] = self.sub(pk[j], self.mul(coef, c));
                }
            }
            ps.push(pk);
        }
        ps.pop().unwrap()
    }

    pub fn eval(&self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Distinct roots in F_ℓ, ascending.
    pub fn roots(&self, poly: &[u64]) -> Vec<u64> {
        (0..self.l).filter(|&x| self.eval(poly, x) == 0).collect()
    }
}
