//! Dixon–Schneider: common eigenvectors of the class matrices over F_ℓ,
//! lifted to cyclotomic values through eigenvalue multiplicities.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::modp::{dixon_prime, primitive_root, Fl};
use super::table::CharacterTable;
use super::ChartabError;
use crate::exactnum::Scalar;
use crate::groupkit::FiniteGroup;

/// Class multiplication coefficients c_{jli} = #{x ∈ C_j : x^{-1}·g_i ∈ C_l},
/// stored sparsely per (j, l).
#[derive(Clone, Debug)]
pub struct ClassAlgebra {
    pub k: usize,
    /// Nonzero (i, c_{jli}) for each j·k + l, sorted by i.
    rows: Vec<Vec<(u32, u32)>>,
}

impl ClassAlgebra {
    pub fn new(g: &FiniteGroup) -> ClassAlgebra {
        let k = g.num_classes();
        let n = g.order() as u32;
        let inv: Vec<u32> = (0..n).map(|x| g.inv(x)).collect();
        // one class i at a time, computed independently
        let cols: Vec<Vec<(u32, u32)>> = (0..k)
            .into_par_iter()
            .map(|i| {
                let gi = g.rep(i);
                let mut counts: FxHashMap<u32, u32> = FxHashMap::default();
                for x in 0..n {
                    let y = g.mul(inv[x as usize], gi);
                    *counts.entry(g.class_of(x) * k as u32 + g.class_of(y)).or_insert(0) += 1;
                }
                counts.into_iter().collect()
            })
            .collect();
        let mut rows = vec![Vec::new(); k * k];
        for (i, col) in cols.into_iter().enumerate() {
            for (jl, c) in col {
                rows[jl as usize].push((i as u32, c));
            }
        }
        ClassAlgebra { k, rows }
    }

    /// Nonzero (i, c_{jli}), sorted by i.
    pub fn row(&self, j: usize, l: usize) -> &[(u32, u32)] {
        &self.rows[j * self.k + l]
    }

    pub fn get(&self, j: usize, l: usize, i: usize) -> u32 {
        let r = self.row(j, l);
        r.binary_search_by_key(&(i as u32), |&(x, _)| x).map_or(0, |p| r[p].1)
    }
}

struct Space {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

fn split(f: &Fl, alg: &ClassAlgebra, j: usize, sp: Space) -> Vec<Space> {
    let d = sp.rows.len();
    if d == 1 {
        return vec![sp];
    }
    let k = alg.k;
    // A[r][s]: coordinate r of M_j·b_s in the echelon basis
    let mut a = vec![vec![0u64; d]; d];
    for (s, b) in sp.rows.iter().enumerate() {
        for (r, &l) in sp.pivots.iter().enumerate() {
            let mut acc = 0u64;
            for &(i, c) in alg.row(j, l) {
                let bi = b[i as usize];
                if bi != 0 {
                    acc = (acc + c as u64 % f.l * bi) % f.l;
                }
            }
            a[r][s] = acc;
        }
    }
    let roots = f.roots(&f.charpoly(&a));
    if roots.len() <= 1 {
        return vec![sp];
    }
    roots
        .into_iter()
        .map(|lam| {
            let mut shifted = a.clone();
            for (r, row) in shifted.iter_mut().enumerate() {
                row[r] = f.sub(row[r], lam);
            }
            let mut rows: Vec<Vec<u64>> = f
                .nullspace(&shifted)
                .into_iter()
                .map(|u| {
                    let mut v = vec![0u64; k];
                    for (s, &us) in u.iter().enumerate() {
                        if us != 0 {
                            for (x, &bx) in v.iter_mut().zip(&sp.rows[s]) {
                                *x = f.add(*x, f.mul(us, bx));
                            }
                        }
                    }
                    v
                })
                .collect();
            let pivots = f.rref(&mut rows);
            Space { rows, pivots }
        })
        .collect()
}

/// The full character table of `g`, verified by exact row orthogonality.
pub fn character_table<Q: Scalar>(g: &FiniteGroup) -> Result<CharacterTable<Q>, ChartabError> {
    let alg = ClassAlgebra::new(g);
    character_table_with(g, &alg)
}

pub fn character_table_with<Q: Scalar>(g: &FiniteGroup, alg: &ClassAlgebra) -> Result<CharacterTable<Q>, ChartabError> {
    let k = g.num_classes();
    let n = g.order() as u64;
    let e = g.exponent();
    let ell = dixon_prime(e, n).ok_or(ChartabError::NoPrime { exponent: e })?;
    let f = Fl { l: ell };

    let mut order: Vec<usize> = (1..k).collect();
    order.sort_by_key(|&j| (g.class_sizes()[j], g.rep(j)));
    let mut spaces = vec![Space { rows: (0..k).map(|i| unit(k, i)).collect(), pivots: (0..k).collect() }];
    for &j in &order {
        if spaces.iter().all(|s| s.rows.len() == 1) {
            break;
        }
        spaces = spaces.into_iter().flat_map(|s| split(&f, alg, j, s)).collect();
    }
    if spaces.len() != k {
        return Err(ChartabError::SplitFailed { found: spaces.len(), classes: k });
    }

    let sizes = g.class_sizes();
    let size_inv: Vec<u64> = sizes.iter().map(|&s| f.inv(s % ell)).collect();
    let root = primitive_root(ell);
    let mut chars = Vec::with_capacity(k);
    for sp in spaces {
        let v = &sp.rows[0];
        if v[0] == 0 {
            return Err(ChartabError::SplitFailed { found: 0, classes: k });
        }
        let s0 = f.inv(v[0]);
        let w: Vec<u64> = v.iter().map(|&x| f.mul(x, s0)).collect();
        // χ(1)^2 = |G| / Σ_l ω_l ω_{l*} / |C_l|
        let mut s = 0u64;
        for l in 0..k {
            s = f.add(s, f.mul(f.mul(w[l], w[g.inverse_class(l) as usize]), size_inv[l]));
        }
        let d2 = f.mul(n % ell, f.inv(s));
        let d = (1..=(n as f64).sqrt() as u64 + 1)
            .find(|&d| d * d % ell == d2)
            .ok_or(ChartabError::Lift("degree is not a square root mod ℓ".into()))?;
        let modp: Vec<u64> = (0..k).map(|l| f.mul(f.mul(d, w[l]), size_inv[l])).collect();
        chars.push((d, modp));
    }

    // eigenvalue multiplicities for every character and class
    let mut sparse = vec![vec![Vec::new(); k]; k];
    for l in 0..k {
        let o = g.rep_order(l) as u64;
        let pc = g.power_classes(l);
        let z = f.pow(root, (ell - 1) / o);
        let zi = f.inv(z);
        let o_inv = f.inv(o % ell);
        for (c, (d, modp)) in chars.iter().enumerate() {
            for t in 0..o {
                let zt = f.pow(zi, t);
                let mut acc = 0u64;
                let mut zp = 1u64;
                for &cls in &pc {
                    acc = f.add(acc, f.mul(modp[cls as usize], zp));
                    zp = f.mul(zp, zt);
                }
                let mult = f.mul(acc, o_inv);
                if mult > *d {
                    return Err(ChartabError::Lift(format!("multiplicity {mult} exceeds degree {d}")));
                }
                if mult != 0 {
                    sparse[c][l].push(((t * (e / o)) as u32, mult as i64));
                }
            }
        }
    }

    let mut idx: Vec<usize> = (0..k).collect();
    let trivial = |c: usize| chars[c].1.iter().all(|&x| x == 1);
    idx.sort_by(|&a, &b| (chars[a].0, !trivial(a), &chars[a].1).cmp(&(chars[b].0, !trivial(b), &chars[b].1)));
    let degrees = idx.iter().map(|&c| chars[c].0).collect();
    let modp = idx.iter().map(|&c| chars[c].1.clone()).collect();
    let sparse = idx.iter().map(|&c| std::mem::take(&mut sparse[c])).collect();
    let table = CharacterTable::from_parts(g, e, ell, root, degrees, modp, sparse);
    table.verify_rows()?;
    Ok(table)
}

fn unit(k: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; k];
    v[i] = 1;
    v
}
