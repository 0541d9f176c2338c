//! A compatible system of finite fields F_{p^d} sharing one top field.
//!
//! Every level embeds into the top field by sending its polynomial generator
//! to the least root of its modulus there. The embedding between two levels
//! is `ι_b^{-1} ∘ ι_a`, so any chain of embeddings composes consistently.
//! Growing the top field re-composes every level with the embedding of the
//! old top, which leaves the level-to-level embeddings unchanged.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;

use super::galois::{is_prime, GaloisField, MAX_FIELD_SIZE};
use super::FieldError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    pub level: u32,
    pub code: u32,
}

impl FieldElement {
    pub fn new(level: u32, code: u32) -> Self {
        FieldElement { level, code }
    }
}

#[derive(Debug)]
struct Level {
    field: Arc<GaloisField>,
    /// Image of every code in the top field.
    up: Vec<u32>,
    /// Top-field log of the image of this level's generator.
    gen_top_log: u64,
}

#[derive(Debug)]
pub struct FieldTower {
    p: u32,
    top: u32,
    levels: BTreeMap<u32, Level>,
}

/// Least root of `poly` among elements of `top` lying in its subfield of
/// p-degree `d`.
fn least_root_in(top: &GaloisField, poly: &[u32], d: u32) -> u32 {
    let sub_order = (top.p as u64).pow(d) - 1;
    let step = top.order() as u64 / sub_order;
    let eval = |x: u32| poly.iter().rev().fold(0u32, |acc, &c| top.add(top.mul(acc, x), c));
    let mut best: Option<u32> = if eval(0) == 0 { Some(0) } else { None };
    for i in 0..sub_order {
        let x = top.exp(i * step);
        if eval(x) == 0 && best.is_none_or(|b| x < b) {
            best = Some(x);
        }
    }
    best.expect("modulus splits in an extension of its degree")
}

/// The table code ↦ Σ c_i r^i for a field `src` whose generator maps to `r`.
fn image_table(src: &GaloisField, top: &GaloisField, r: u32) -> Vec<u32> {
    let mut powers = vec![1u32; src.k as usize];
    for i in 1..src.k as usize {
        powers[i] = top.mul(powers[i - 1], r);
    }
    (0..src.size)
        .map(|code| {
            src.digits(code).iter().zip(&powers).fold(0, |acc, (&c, &pw)| {
                let mut t = 0;
                for _ in 0..c {
                    t = top.add(t, pw);
                }
                top.add(acc, t)
            })
        })
        .collect()
}

impl FieldTower {
    /// Tower over F_p containing the given p-degrees.
    pub fn new(p: u32, degrees: &[u32]) -> Result<FieldTower, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let top = degrees.iter().fold(1u32, |a, &d| a.lcm(&d.max(1)));
        let top_field = Arc::new(GaloisField::new(p, top)?);
        let mut levels = BTreeMap::new();
        let gen = top_field.generator;
        levels.insert(
            top,
            Level {
                up: (0..top_field.size).collect(),
                gen_top_log: top_field.log(gen).unwrap() as u64,
                field: top_field,
            },
        );
        let mut t = FieldTower { p, top, levels };
        t.ensure_level(1)?;
        for &d in degrees {
            t.ensure_level(d)?;
        }
        Ok(t)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn top(&self) -> u32 {
        self.top
    }

    pub fn levels(&self) -> Vec<u32> {
        self.levels.keys().copied().collect()
    }

    pub fn has_level(&self, d: u32) -> bool {
        self.levels.contains_key(&d)
    }

    /// The field at p-degree `d`; panics if the level has not been added.
    pub fn field(&self, d: u32) -> &Arc<GaloisField> {
        &self.levels.get(&d).unwrap_or_else(|| panic!("level {d} not in tower")).field
    }

    fn top_field(&self) -> &Arc<GaloisField> {
        self.field(self.top)
    }

    /// Add level `d`, enlarging the top field if `d` does not divide it.
    pub fn ensure_level(&mut self, d: u32) -> Result<(), FieldError> {
        if self.levels.contains_key(&d) {
            return Ok(());
        }
        if !self.top.is_multiple_of(d) {
            self.grow(self.top.lcm(&d))?;
        }
        if self.levels.contains_key(&d) {
            return Ok(());
        }
        let field = Arc::new(GaloisField::new(self.p, d)?);
        let top = self.top_field().clone();
        let r = least_root_in(&top, &field.poly, d);
        let up = image_table(&field, &top, r);
        let gen_top_log = top.log(up[field.generator as usize]).unwrap() as u64;
        self.levels.insert(d, Level { field, up, gen_top_log });
        Ok(())
    }

    fn grow(&mut self, new_top: u32) -> Result<(), FieldError> {
        if (self.p as u64).checked_pow(new_top).is_none_or(|s| s > MAX_FIELD_SIZE) {
            return Err(FieldError::TooLarge { p: self.p, k: new_top });
        }
        let nf = Arc::new(GaloisField::new(self.p, new_top)?);
        let old = self.top_field().clone();
        let r = least_root_in(&nf, &old.poly, self.top);
        let j = image_table(&old, &nf, r);
        for lv in self.levels.values_mut() {
            for x in lv.up.iter_mut() {
                *x = j[*x as usize];
            }
            lv.gen_top_log = nf.log(lv.up[lv.field.generator as usize]).unwrap() as u64;
        }
        let gen = nf.generator;
        self.levels.insert(
            new_top,
            Level { up: (0..nf.size).collect(), gen_top_log: nf.log(gen).unwrap() as u64, field: nf },
        );
        self.top = new_top;
        Ok(())
    }

    /// Preimage at level `d` of a top-field code, if it lies in that subfield.
    fn pull_back(&self, d: u32, y: u32) -> Option<u32> {
        if y == 0 {
            return Some(0);
        }
        let top = self.top_field();
        let lv = &self.levels[&d];
        let n_top = top.order() as u64;
        let n_d = lv.field.order() as u64;
        let c = n_top / n_d;
        let ly = top.log(y)? as u64;
        if !ly.is_multiple_of(c) {
            return None;
        }
        // ι(g_d) = g_top^{gen_top_log}, gen_top_log = c·e with e a unit mod n_d
        let e = lv.gen_top_log / c;
        let e_inv = mod_inverse(e % n_d, n_d)?;
        let j = ((ly / c) as u128 * e_inv as u128 % n_d as u128) as u64;
        Some(lv.field.exp(j))
    }

    /// Embed `x` into level `to`; `x.level` must divide `to`.
    pub fn embed(&self, x: FieldElement, to: u32) -> FieldElement {
        assert!(to.is_multiple_of(x.level), "cannot embed level {} into {}", x.level, to);
        if x.level == to {
            return x;
        }
        let y = self.levels[&x.level].up[x.code as usize];
        FieldElement::new(to, self.pull_back(to, y).expect("subfield image lies in every extension"))
    }

    /// View `x` in the smaller level `to`, if it lies there.
    pub fn restrict(&self, x: FieldElement, to: u32) -> Option<FieldElement> {
        if x.level == to {
            return Some(x);
        }
        if !self.levels.contains_key(&to) || !x.level.is_multiple_of(to) {
            return None;
        }
        let y = self.levels[&x.level].up[x.code as usize];
        self.pull_back(to, y).map(|c| FieldElement::new(to, c))
    }

    /// The same value at the smallest level of the tower that contains it.
    pub fn minimal_level(&self, x: FieldElement) -> FieldElement {
        let f = self.field(x.level);
        for d in 1..=x.level {
            if x.level.is_multiple_of(d) && f.in_subfield(x.code, d) && self.levels.contains_key(&d) {
                return self.restrict(x, d).unwrap();
            }
        }
        x
    }

    /// Like `minimal_level`, adding the smallest containing level if needed.
    pub fn reduce(&mut self, x: FieldElement) -> Result<FieldElement, FieldError> {
        let f = self.field(x.level).clone();
        let d = (1..=x.level).find(|&d| x.level.is_multiple_of(d) && f.in_subfield(x.code, d)).unwrap();
        self.ensure_level(d)?;
        Ok(self.restrict(x, d).unwrap())
    }

    /// x^{q^m} with q = p^k.
    pub fn frobenius_power(&self, x: FieldElement, k: u32, m: u32) -> FieldElement {
        let f = self.field(x.level);
        let j = ((k as u64 * m as u64) % x.level as u64) as u32;
        FieldElement::new(x.level, f.frob_p(x.code, j))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (a, b) = self.common(a, b);
        FieldElement::new(a.level, self.field(a.level).add(a.code, b.code))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (a, b) = self.common(a, b);
        FieldElement::new(a.level, self.field(a.level).mul(a.code, b.code))
    }

    /// Bring two elements to the level lcm(a.level, b.level), which must be present.
    pub fn common(&self, a: FieldElement, b: FieldElement) -> (FieldElement, FieldElement) {
        let l = a.level.lcm(&b.level);
        (self.embed(a, l), self.embed(b, l))
    }

    /// All codes of level `d` lying in its subfield of p-degree `e`.
    pub fn subfield_codes(&self, d: u32, e: u32) -> Vec<u32> {
        let f = self.field(d);
        let sub = (self.p as u64).pow(e) - 1;
        let step = f.order() as u64 / sub;
        std::iter::once(0).chain((0..sub).map(|i| f.exp(i * step))).collect()
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}
