//! Extensions of F-stable characters of G^{F^m} to Γ_m = G^{F^m} ⋊ ⟨σ⟩.

use super::table::CharacterTable;
use super::ChartabError;
use crate::exactnum::{Cyclotomic, Scalar};
use crate::groupkit::FiniteGroup;

/// The chosen extension χ̃ of W, read on the coset G^{F^m}·σ.
#[derive(Clone, Debug)]
pub struct Extension {
    /// Index of χ̃ in the table of Γ_m.
    pub gamma_char: usize,
    /// |G^{F^m}|, the offset of the coset of σ in Γ_m's element order.
    pub coset_offset: u32,
}

impl Extension {
    /// χ̃(x·σ) for x given by its index in G^{F^m}.
    pub fn value_at<'a, Q: Scalar>(
        &self,
        gamma: &FiniteGroup,
        table: &'a CharacterTable<Q>,
        x: u32,
    ) -> &'a Cyclotomic<Q> {
        let xs = gamma.mul(x, self.coset_offset);
        &table.values[self.gamma_char][gamma.class_of(xs) as usize]
    }
}

/// Class of F(g) for every class g of `gm`.
pub fn frobenius_on_classes(gm: &FiniteGroup) -> Vec<u32> {
    (0..gm.num_classes()).map(|c| gm.class_of_elem(&gm.amb.frob(&gm.elems[gm.rep(c) as usize], 1))).collect()
}

/// Whether W∘F = W.
pub fn is_f_stable<Q: Scalar>(gm: &FiniteGroup, table: &CharacterTable<Q>, w: usize) -> bool {
    let fc = frobenius_on_classes(gm);
    let row = &table.values[w];
    fc.iter().enumerate().all(|(c, &d)| row[c] == row[d as usize])
}

/// Pick one extension of W to Γ_m: the one that is a positive real at the
/// first σ-coset class where it does not vanish, if any; otherwise the one
/// with least serialized value at σ, ties broken by the whole σ-coset. All
/// m extensions are checked to differ by m-th roots of unity.
pub fn extend_f_stable<Q: Scalar>(
    gm: &FiniteGroup,
    gm_table: &CharacterTable<Q>,
    gamma: &FiniteGroup,
    gamma_table: &CharacterTable<Q>,
    w: usize,
    m: u32,
) -> Result<Extension, ChartabError> {
    if !is_f_stable(gm, gm_table, w) {
        return Err(ChartabError::NotFStable(w));
    }
    let n = gm.order() as u32;
    if gamma.order() != n as usize * m as usize {
        return Err(ChartabError::Mismatch("Γ_m order is not m·|G^{F^m}|".into()));
    }
    // the first |G^{F^m}| elements of Γ_m are the coset i = 0 in the same order
    let base_classes: Vec<usize> = (0..gm.num_classes()).map(|c| gamma.class_of(gm.rep(c)) as usize).collect();
    let target = &gm_table.values[w];
    let cands: Vec<usize> = (0..gamma_table.num_chars())
        .filter(|&chi| base_classes.iter().zip(target).all(|(&gc, v)| gamma_table.values[chi][gc] == *v))
        .collect();
    if cands.len() != m as usize {
        return Err(ChartabError::Verification(format!("{} extensions found, expected {m}", cands.len())));
    }
    choose_extension(gamma, gamma_table, &cands, n)
}

fn choose_extension<Q: Scalar>(
    gamma: &FiniteGroup,
    gamma_table: &CharacterTable<Q>,
    cands: &[usize],
    n: u32,
) -> Result<Extension, ChartabError> {
    let m = cands.len() as u32;
    let sigma = if m == 1 { 0 } else { n };
    // classes of Γ_m meeting the σ-coset, in order of first element
    let mut seen = vec![false; gamma.num_classes()];
    let coset_classes: Vec<usize> = (sigma..sigma + n)
        .map(|x| gamma.class_of(x) as usize)
        .filter(|&c| !std::mem::replace(&mut seen[c], true))
        .collect();

    let sigma_class = gamma.class_of(sigma) as usize;
    let pivot = *coset_classes.iter().find(|&&c| !gamma_table.values[cands[0]][c].is_zero()).ok_or_else(|| {
        ChartabError::Verification("extension vanishes on the σ-coset".into())
    })?;
    // positive real at the pivot class first, then least serialization
    let key = |chi: usize| {
        let row = &gamma_table.values[chi];
        let positive = row[pivot].as_scalar().is_some_and(|x| x.to_f64() > 0.0);
        (!positive, row[sigma_class].serialize(), coset_classes.iter().map(|&c| row[c].serialize()).collect::<Vec<_>>())
    };
    let best = *cands.iter().min_by_key(|&&c| key(c)).unwrap();

    let base = &gamma_table.values[best];
    for &other in cands {
        let row = &gamma_table.values[other];
        let Some((ord, k)) = row[pivot].root_of_unity_ratio(&base[pivot]) else {
            return Err(ChartabError::Verification("extensions differ by a non-root of unity".into()));
        };
        let z = Cyclotomic::<Q>::root_of_unity(ord, k as i64);
        if z.pow(m as u64) != Cyclotomic::one() || coset_classes.iter().any(|&c| row[c] != z.mul_ref(&base[c])) {
            return Err(ChartabError::Verification("extensions do not differ by an m-th root of unity".into()));
        }
    }
    Ok(Extension { gamma_char: best, coset_offset: sigma })
}

/// An F-stable irreducible W of G^{F^m}, known only through Γ_m.
#[derive(Clone, Debug)]
pub struct StableChar<Q: Scalar> {
    /// W on the classes of G^{F^m}.
    pub values: Vec<Cyclotomic<Q>>,
    pub ext: Extension,
}

/// Every F-stable irreducible of G^{F^m} with its chosen extension, read off
/// the table of Γ_m alone: W is the restriction of an irreducible of Γ_m
/// whenever that restriction has norm one, and each W arises from exactly m
/// characters of Γ_m. Ordered by the least index of those characters.
pub fn stable_characters<Q: Scalar>(
    gm: &FiniteGroup,
    gamma: &FiniteGroup,
    gamma_table: &CharacterTable<Q>,
    m: u32,
) -> Result<Vec<StableChar<Q>>, ChartabError> {
    let n = gm.order() as u32;
    if gamma.order() != n as usize * m as usize {
        return Err(ChartabError::Mismatch("Γ_m order is not m·|G^{F^m}|".into()));
    }
    let base_classes: Vec<usize> = (0..gm.num_classes()).map(|c| gamma.class_of(gm.rep(c)) as usize).collect();
    // Γ_m-classes inside G^{F^m}, with their sizes
    let mut inner: Vec<usize> = base_classes.clone();
    inner.sort_unstable();
    inner.dedup();
    let sizes = gamma.class_sizes();
    let order = Q::from_i64(n as i64);

    let mut groups: Vec<(Vec<String>, Vec<usize>)> = Vec::new();
    let mut index: std::collections::HashMap<Vec<String>, usize> = std::collections::HashMap::new();
    for chi in 0..gamma_table.num_chars() {
        let row = &gamma_table.values[chi];
        let norm = inner
            .iter()
            .fold(Cyclotomic::<Q>::zero(), |acc, &c| acc.add_ref(&row[c].abs2().scale(&Q::from_i64(sizes[c] as i64))));
        if norm != Cyclotomic::from_scalar(order.clone()) {
            continue;
        }
        let key: Vec<String> = inner.iter().map(|&c| row[c].serialize()).collect();
        match index.get(&key) {
            Some(&g) => groups[g].1.push(chi),
            None => {
                index.insert(key.clone(), groups.len());
                groups.push((key, vec![chi]));
            }
        }
    }
    groups
        .into_iter()
        .map(|(_, cands)| {
            if cands.len() != m as usize {
                return Err(ChartabError::Verification(format!("{} extensions found, expected {m}", cands.len())));
            }
            let values = base_classes.iter().map(|&gc| gamma_table.values[cands[0]][gc].clone()).collect();
            Ok(StableChar { values, ext: choose_extension(gamma, gamma_table, &cands, n)? })
        })
        .collect()
}
