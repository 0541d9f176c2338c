//! Solutions of the Lang equations α^q − α = a and α^{q−1} = a.

use num_integer::Integer;

use super::tower::{FieldElement, FieldTower};
use super::FieldError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LangKind {
    Additive,
    Multiplicative,
}

/// How far past the minimal level the solvers will search.
const MAX_LEVEL_FACTOR: u32 = 64;

/// Solve x·M = b over F_p (M given as columns), returning one solution.
fn solve_mod_p(cols: &[Vec<u32>], b: &[u32], p: u32) -> Option<Vec<u32>> {
    let n = cols.len();
    let rows = b.len();
    // augmented rows
    let mut a: Vec<Vec<u32>> = (0..rows)
        .map(|i| {
            let mut r: Vec<u32> = cols.iter().map(|c| c[i]).collect();
            r.push(b[i]);
            r
        })
        .collect();
    let inv = |x: u32| super::galois::pow_mod(x as u64, p as u64 - 2, p as u64) as u32;
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(pr) = (r..rows).find(|&i| a[i][col] != 0) else { continue };
        a.swap(r, pr);
        let s = inv(a[r][col]);
        for x in a[r].iter_mut() {
            *x = *x * s % p;
        }
        for i in 0..rows {
            if i != r && a[i][col] != 0 {
                let f = a[i][col];
                for j in 0..=n {
                    a[i][j] = (a[i][j] + p * p - f * a[r][j] % p) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if a[r..].iter().any(|row| row[n] != 0) {
        return None;
    }
    let mut x = vec![0u32; n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][n];
    }
    Some(x)
}

fn lex_least(tower: &FieldTower, level: u32, cands: impl Iterator<Item = u32>) -> u32 {
    let f = tower.field(level);
    cands.min_by_key(|&c| f.lex_key(c)).expect("nonempty solution set")
}

impl FieldTower {
    /// Solve the Lang equation for `a` with q = p^k. The result lives at the
    /// smallest level (a multiple of the minimal level of `a`) where a
    /// solution exists; among solutions there the lexicographically least
    /// coefficient vector is returned.
    pub fn lang_solve(&mut self, kind: LangKind, a: FieldElement, k: u32) -> Result<FieldElement, FieldError> {
        let sol = match kind {
            LangKind::Additive => self.lang_additive(a, k)?,
            LangKind::Multiplicative => self.lang_multiplicative(a, k)?,
        };
        // re-verify by substitution
        let fq = self.frobenius_power(sol, k, 1);
        let f = self.field(sol.level).clone();
        let a_min = self.reduce(a)?;
        let a_here = self.embed(a_min, sol.level);
        let ok = match kind {
            LangKind::Additive => f.sub(fq.code, sol.code) == a_here.code,
            LangKind::Multiplicative => f.div(fq.code, sol.code) == a_here.code,
        };
        if !ok {
            return Err(FieldError::LangUnsolved(format!("{kind:?} solution failed substitution")));
        }
        Ok(sol)
    }

    fn lang_additive(&mut self, a: FieldElement, k: u32) -> Result<FieldElement, FieldError> {
        let a = self.reduce(a)?;
        let p = self.p();
        // a solution always exists at level lcm(l, k)·p; only its divisors are tried
        let bound = a.level.lcm(&k) * p;
        for level in (a.level..=bound).step_by(a.level as usize).filter(|l| bound.is_multiple_of(*l)) {
            self.ensure_level(level)?;
            let f = self.field(level).clone();
            let target = f.digits(self.embed(a, level).code);
            let q_exp = k % level;
            // column i is φ(p^i) with φ(α) = α^q − α
            let cols: Vec<Vec<u32>> = (0..level)
                .map(|i| {
                    let e = p.pow(i);
                    f.digits(f.sub(f.frob_p(e, q_exp), e))
                })
                .collect();
            let Some(x) = solve_mod_p(&cols, &target, p) else { continue };
            let base = f.from_digits(&x);
            let kernel = self.subfield_codes(level, k.gcd(&level));
            let best = lex_least(self, level, kernel.into_iter().map(|z| f.add(base, z)));
            return Ok(FieldElement::new(level, best));
        }
        Err(FieldError::LangUnsolved(format!("additive equation for code {} at level {}", a.code, a.level)))
    }

    fn lang_multiplicative(&mut self, a: FieldElement, k: u32) -> Result<FieldElement, FieldError> {
        let a = self.reduce(a)?;
        if a.code == 0 {
            return Err(FieldError::LangUnsolved("multiplicative equation for zero".into()));
        }
        let p = self.p() as u128;
        let qm1 = p.pow(k) - 1;
        let ord = self.field(a.level).mult_order(a.code) as u128;
        let mut s = 1u32;
        let level = loop {
            let l = k * s;
            if l > a.level.max(k) * MAX_LEVEL_FACTOR {
                return Err(FieldError::LangUnsolved(format!(
                    "multiplicative equation for code {} at level {}",
                    a.code, a.level
                )));
            }
            let n = p.checked_pow(l).map(|x| x - 1);
            match n {
                Some(n) if n % (qm1 * ord) == 0 => break l,
                None => return Err(FieldError::TooLarge { p: self.p(), k: l }),
                _ => s += 1,
            }
        };
        self.ensure_level(level)?;
        let f = self.field(level).clone();
        let n = f.order() as u64;
        let la = f.log(self.embed(a, level).code).unwrap() as u64;
        let qm1 = qm1 as u64;
        let base = la / qm1;
        let step = n / qm1;
        let best = lex_least(self, level, (0..qm1).map(|j| f.exp(base + j * step)));
        Ok(FieldElement::new(level, best))
    }
}
