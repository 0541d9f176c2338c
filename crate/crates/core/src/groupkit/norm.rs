//! The norm map from F-twisted classes of G^{F^m} to classes of G^F, and the
//! cyclic cover Γ_m = G^{F^m} ⋊ Z/m.

use std::sync::Arc;

use num_integer::Integer;

use super::group::{ClassPartition, FiniteGroup};
use super::law::{Ambient, Elem, Family, CYCLIC_SLOT};
use super::{GroupError, GroupSpec};
use crate::ffield::{FieldElement, FieldTower, LangKind};

/// Γ_m: pairs (x, i) with (x, i)(y, j) = (x·F^i(y), i + j). Elements of the
/// coset i = 0 come first, in the order of `gm`.
pub fn frobenius_semidirect(gm: &FiniteGroup, m: u32) -> FiniteGroup {
    let amb = Arc::new(Ambient { cyclic: Some(m), ..Ambient::new(gm.amb.family, gm.amb.field.clone(), gm.amb.k) });
    let mut elems = Vec::with_capacity(gm.order() * m as usize);
    for i in 0..m {
        for x in &gm.elems {
            let mut e = *x;
            e[CYCLIC_SLOT] = i;
            elems.push(e);
        }
    }
    FiniteGroup::from_elements(amb, elems)
}

fn torus_slots(f: Family) -> Vec<usize> {
    match f {
        Family::BorelSl3 => vec![0, 1],
        Family::SplitTorus(r) => (0..r).collect(),
        _ => vec![],
    }
}

/// Slots of (a, b, c) for the unitriangular part.
fn unipotent_slots(f: Family) -> Option<[usize; 3]> {
    match f {
        Family::BorelSl3 => Some([2, 3, 4]),
        Family::HeisenbergU3 => Some([0, 1, 2]),
        _ => None,
    }
}

struct Work<'a> {
    tower: &'a mut FieldTower,
    family: Family,
    k: u32,
}

impl Work<'_> {
    fn ambient(&mut self, level: u32) -> Result<Ambient, GroupError> {
        self.tower.ensure_level(level)?;
        Ok(Ambient::new(self.family, self.tower.field(level).clone(), self.k))
    }

    fn lift(&self, x: &Elem, from: u32, to: u32) -> Elem {
        let mut e = *x;
        for c in e.iter_mut().take(CYCLIC_SLOT) {
            *c = self.tower.embed(FieldElement::new(from, *c), to).code;
        }
        e
    }

    fn lang(&mut self, kind: LangKind, level: u32, code: u32, what: &str) -> Result<FieldElement, GroupError> {
        self.tower
            .lang_solve(kind, FieldElement::new(level, code), self.k)
            .map_err(|e| GroupError::Unsupported(format!("norm map: coordinate {what}: {e}")))
    }
}

/// β = F^m(α)·α^{-1} where α^{-1}·F(α) = x, for x ∈ G^{F^m} given at level
/// k·m. The result is an element of G^F at level k. Only connected families.
pub fn norm_of(spec: &GroupSpec, x: &Elem, m: u32, tower: &mut FieldTower) -> Result<Elem, GroupError> {
    if !spec.family.is_connected() {
        return Err(GroupError::Unsupported(format!("norm map for disconnected family {}", spec.family.name())));
    }
    let k = spec.k;
    let base = k * m;
    let mut w = Work { tower, family: spec.family, k };
    w.tower.ensure_level(base)?;

    // torus part: s_i^{q-1} = x_i
    let tslots = torus_slots(spec.family);
    let mut sols = Vec::new();
    for &i in &tslots {
        sols.push(w.lang(LangKind::Multiplicative, base, x[i], &format!("t{}", i + 1))?);
    }
    let s_level = sols.iter().fold(base, |l, s| l.lcm(&s.level));
    let mut level = s_level;
    let amb = w.ambient(level)?;
    let mut s = amb.identity();
    for (&i, sol) in tslots.iter().zip(&sols) {
        s[i] = w.tower.embed(*sol, level).code;
    }
    let xl = w.lift(x, base, level);
    // y = s·x·F(s)^{-1} is unipotent
    let y = amb.mul(&amb.mul(&s, &xl), &amb.inv(&amb.frob(&s, 1)));

    let mut alpha_level = level;
    let mut gamma: Option<(Elem, u32)> = None;
    if let Some([ia, ib, ic]) = unipotent_slots(spec.family) {
        let ga = w.lang(LangKind::Additive, level, y[ia], "a")?;
        let gb = w.lang(LangKind::Additive, level, y[ib], "b")?;
        let l2 = level.lcm(&ga.level).lcm(&gb.level);
        w.tower.ensure_level(l2)?;
        let f2 = w.tower.field(l2).clone();
        let ea = w.tower.embed(ga, l2).code;
        let yb = w.tower.embed(FieldElement::new(level, y[ib]), l2).code;
        let yc = w.tower.embed(FieldElement::new(level, y[ic]), l2).code;
        let rhs = f2.add(yc, f2.mul(ea, yb));
        let gc = w.lang(LangKind::Additive, l2, rhs, "c")?;
        let l3 = l2.lcm(&gc.level);
        w.tower.ensure_level(l3)?;
        let mut g = [0u32; 6];
        g[ia] = w.tower.embed(ga, l3).code;
        g[ib] = w.tower.embed(gb, l3).code;
        g[ic] = w.tower.embed(gc, l3).code;
        for &i in &tslots {
            g[i] = 1;
        }
        gamma = Some((g, l3));
        alpha_level = l3;
    }
    level = alpha_level;
    let amb = w.ambient(level)?;
    let s = w.lift(&s, s_level, level);
    let alpha = match gamma {
        Some((g, _)) => amb.mul(&g, &s),
        None => s,
    };
    let xl = w.lift(x, base, level);
    if amb.mul(&amb.inv(&alpha), &amb.frob(&alpha, 1)) != xl {
        return Err(GroupError::Unsupported("norm map: α^{-1}·F(α) ≠ x".into()));
    }
    let beta = amb.mul(&amb.frob(&alpha, m), &amb.inv(&alpha));
    let mut out = [0u32; 6];
    for i in 0..spec.family.dim().min(CYCLIC_SLOT as u32) as usize {
        out[i] = w
            .tower
            .restrict(FieldElement::new(level, beta[i]), k)
            .ok_or_else(|| GroupError::Unsupported(format!("norm map: β coordinate {i} not F-rational")))?
            .code;
    }
    Ok(out)
}

/// The induced map on classes.
#[derive(Clone, Debug)]
pub struct NormMap {
    pub m: u32,
    /// F-twisted classes of G^{F^m}.
    pub twisted: ClassPartition,
    /// Class of G^F hit by each twisted class.
    pub image: Vec<u32>,
    /// For each class of G^F, a twisted class mapping to it.
    pub preimage: Vec<Option<u32>>,
    /// Every spot check of independence from the representative passed.
    pub well_defined: bool,
}

impl NormMap {
    pub fn is_bijective(&self) -> bool {
        self.twisted.len() == self.preimage.len() && self.preimage.iter().all(|p| p.is_some())
    }
}

/// The norm map on all F-twisted classes of `gm` = G^{F^m}, landing in `g1` = G^F.
pub fn norm_map(spec: &GroupSpec, gm: &FiniteGroup, g1: &FiniteGroup, m: u32) -> Result<NormMap, GroupError> {
    let mut tower = FieldTower::new(spec.p, &[spec.k, spec.k * m])?;
    let twisted = gm.frobenius_twisted_classes();
    let amb = &gm.amb;
    let g0 = gm.generators().first().map(|&g| gm.elems[g as usize]).unwrap_or(amb.identity());
    let mut image = Vec::with_capacity(twisted.len());
    let mut preimage = vec![None; g1.num_classes()];
    let mut well_defined = true;
    for (t, &r) in twisted.reps.iter().enumerate() {
        let x = gm.elems[r as usize];
        let c = g1.class_of_elem(&norm_of(spec, &x, m, &mut tower)?);
        // another representative of the same twisted class
        let x2 = amb.mul(&amb.mul(&g0, &x), &amb.inv(&amb.frob(&g0, 1)));
        let c2 = g1.class_of_elem(&norm_of(spec, &x2, m, &mut tower)?);
        well_defined &= c == c2;
        image.push(c);
        preimage[c as usize].get_or_insert(t as u32);
    }
    Ok(NormMap { m, twisted, image, preimage, well_defined })
}
