//! Character tables with exact cyclotomic values.

use rayon::prelude::*;

use super::ChartabError;
use crate::exactnum::{Cyclotomic, Rational, Scalar};
use crate::groupkit::FiniteGroup;

#[derive(Clone, Debug)]
pub struct CharacterTable<Q: Scalar> {
    pub order: u64,
    pub class_sizes: Vec<u64>,
    pub inverse_class: Vec<u32>,
    pub exponent: u64,
    /// The prime used for the eigenvector computation.
    pub ell: u64,
    /// Primitive root r mod ℓ; ζ_o is sent to r^{(ℓ-1)/o}.
    pub root: u64,
    pub degrees: Vec<u64>,
    /// values[χ][class]
    pub values: Vec<Vec<Cyclotomic<Q>>>,
    /// The same values reduced mod ℓ.
    pub modp: Vec<Vec<u64>>,
    /// Eigenvalue multiplicities: (t, m) means m·ζ_e^t.
    sparse: Vec<Vec<Vec<(u32, i64)>>>,
}

impl<Q: Scalar> CharacterTable<Q> {
    pub(crate) fn from_parts(
        g: &FiniteGroup,
        exponent: u64,
        ell: u64,
        root: u64,
        degrees: Vec<u64>,
        modp: Vec<Vec<u64>>,
        sparse: Vec<Vec<Vec<(u32, i64)>>>,
    ) -> Self {
        let k = g.num_classes();
        let values = sparse
            .iter()
            .map(|row| row.iter().map(|terms| cyclo_from_terms(exponent as u32, terms)).collect())
            .collect();
        CharacterTable {
            order: g.order() as u64,
            class_sizes: g.class_sizes().to_vec(),
            inverse_class: (0..k).map(|c| g.inverse_class(c)).collect(),
            exponent,
            ell,
            root,
            degrees,
            values,
            modp,
            sparse,
        }
    }

    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn num_chars(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, chi: usize) -> &[Cyclotomic<Q>] {
        &self.values[chi]
    }

    /// Index of the trivial character (always 0).
    pub fn trivial(&self) -> usize {
        0
    }

    /// The character χ̄.
    pub fn dual(&self, chi: usize) -> usize {
        let target: Vec<u64> = (0..self.num_classes()).map(|c| self.modp[chi][self.inverse_class[c] as usize]).collect();
        self.modp.iter().position(|r| *r == target).expect("dual character present")
    }

    /// (1/|G|) Σ_c |C_c| f(c)·conj(g(c)).
    pub fn inner(&self, f: &[Cyclotomic<Q>], g: &[Cyclotomic<Q>]) -> Cyclotomic<Q> {
        let mut acc = Cyclotomic::zero();
        for c in 0..self.num_classes() {
            if f[c].is_zero() || g[c].is_zero() {
                continue;
            }
            acc.add_scaled_int(&f[c].mul_ref(&g[c].conj()), self.class_sizes[c] as i64);
        }
        acc.scale(&(Q::one() / Q::from_i64(self.order as i64)))
    }

    /// ⟨f, χ⟩ for every irreducible χ.
    pub fn decompose(&self, f: &[Cyclotomic<Q>]) -> Vec<Cyclotomic<Q>> {
        self.values.iter().map(|chi| self.inner(f, chi)).collect()
    }

    /// The irreducible equal to `f`, if any.
    pub fn find(&self, f: &[Cyclotomic<Q>]) -> Option<usize> {
        self.values.iter().position(|chi| chi == f)
    }

    /// Σ χ(1)^2.
    pub fn sum_of_squares(&self) -> u64 {
        self.degrees.iter().map(|d| d * d).sum()
    }

    /// Σ_c |C_c| χ(c) conj(ψ(c)) as an exact integer cyclotomic.
    fn pair_sum(&self, a: &[Vec<(u32, i64)>], b: &[Vec<(u32, i64)>], weight: impl Fn(usize) -> i64) -> Cyclotomic<Rational> {
        let e = self.exponent as usize;
        let mut acc = vec![0i64; e];
        for (c, (ta, tb)) in a.iter().zip(b).enumerate() {
            let w = weight(c);
            for &(x, mx) in ta {
                for &(y, my) in tb {
                    acc[(x as usize + e - y as usize) % e] += w * mx * my;
                }
            }
        }
        Cyclotomic::from_cyclic(e as u32, acc.into_iter().map(Rational::int).collect())
    }

    /// Exact row orthogonality and Σ χ(1)^2 = |G|.
    pub fn verify_rows(&self) -> Result<(), ChartabError> {
        if self.sum_of_squares() != self.order {
            return Err(ChartabError::Verification(format!(
                "sum of squared degrees {} != |G| = {}",
                self.sum_of_squares(),
                self.order
            )));
        }
        let k = self.num_chars();
        let bad = (0..k).into_par_iter().find_any(|&i| {
            (i..k).any(|j| {
                let s = self.pair_sum(&self.sparse[i], &self.sparse[j], |c| self.class_sizes[c] as i64);
                let expect = if i == j { self.order as i64 } else { 0 };
                s != Cyclotomic::from_int(expect)
            })
        });
        match bad {
            Some(i) => Err(ChartabError::Verification(format!("row {i} fails orthogonality"))),
            None => Ok(()),
        }
    }

    /// Exact column orthogonality Σ_χ χ(a) conj(χ(b)) = δ_{ab}·|C_G(a)|.
    pub fn verify_columns(&self) -> Result<(), ChartabError> {
        let k = self.num_classes();
        let cols: Vec<Vec<Vec<(u32, i64)>>> =
            (0..k).map(|c| self.sparse.iter().map(|row| row[c].clone()).collect()).collect();
        for a in 0..k {
            for b in a..k {
                let s = self.pair_sum(&cols[a], &cols[b], |_| 1);
                let expect = if a == b { (self.order / self.class_sizes[a]) as i64 } else { 0 };
                if s != Cyclotomic::from_int(expect) {
                    return Err(ChartabError::Verification(format!("columns {a}, {b} fail orthogonality")));
                }
            }
        }
        Ok(())
    }

    /// One line per irreducible: degree then exact values.
    pub fn export(&self) -> Vec<String> {
        self.values
            .iter()
            .zip(&self.degrees)
            .map(|(row, d)| {
                let vals: Vec<String> = row.iter().map(|v| v.serialize()).collect();
                format!("{d} | {}", vals.join(" "))
            })
            .collect()
    }
}

fn cyclo_from_terms<Q: Scalar>(e: u32, terms: &[(u32, i64)]) -> Cyclotomic<Q> {
    let mut v = vec![Q::zero(); e as usize];
    for &(t, m) in terms {
        v[t as usize] = v[t as usize].clone() + Q::from_i64(m);
    }
    Cyclotomic::from_cyclic(e, v)
}

/// Values of a class function of G at the classes of a subgroup H (same law).
pub fn restrict<Q: Scalar>(f: &[Cyclotomic<Q>], g: &FiniteGroup, h: &FiniteGroup) -> Vec<Cyclotomic<Q>> {
    (0..h.num_classes()).map(|c| f[g.class_of_elem(&h.elems[h.rep(c) as usize]) as usize].clone()).collect()
}

/// Ind_H^G ψ: value |C_G(g)|·Σ_{D ⊂ g^G ∩ H} ψ(D)/|C_H(D)|.
pub fn induce<Q: Scalar>(psi: &[Cyclotomic<Q>], h: &FiniteGroup, g: &FiniteGroup) -> Vec<Cyclotomic<Q>> {
    let mut out = vec![Cyclotomic::zero(); g.num_classes()];
    for d in 0..h.num_classes() {
        if psi[d].is_zero() {
            continue;
        }
        let c = g.class_of_elem(&h.elems[h.rep(d) as usize]) as usize;
        let w = Q::from_i64(g.centralizer_order(c) as i64) / Q::from_i64(h.centralizer_order(d) as i64);
        out[c] = out[c].add_ref(&psi[d].scale(&w));
    }
    out
}
