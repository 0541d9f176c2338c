//! Fun([G],F): class functions on every pure inner form at once.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use super::dixon::{character_table_with, ClassAlgebra};
use super::table::CharacterTable;
use super::ChartabError;
use crate::exactnum::{Cyclotomic, Scalar};
use crate::groupkit::{FiniteGroup, PureInnerForm};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// One pure inner form with its table and class algebra.
#[derive(Debug)]
pub struct FormTable<Q: Scalar> {
    pub label: u32,
    pub group: Arc<FiniteGroup>,
    pub table: Arc<CharacterTable<Q>>,
    pub algebra: Arc<ClassAlgebra>,
}

impl<Q: Scalar> FormTable<Q> {
    pub fn new(label: u32, group: Arc<FiniteGroup>) -> Result<Self, ChartabError> {
        let algebra = Arc::new(ClassAlgebra::new(&group));
        let table = Arc::new(character_table_with(&group, &algebra)?);
        Ok(FormTable { label, group, table, algebra })
    }
}

/// The space of class functions on all forms, with its Hermitian product.
#[derive(Debug)]
pub struct FunSpace<Q: Scalar> {
    id: u64,
    pub forms: Vec<FormTable<Q>>,
}

/// An element of a `FunSpace`: one value per class of each form.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFn<Q: Scalar> {
    space: u64,
    pub comps: Vec<Vec<Cyclotomic<Q>>>,
}

impl<Q: Scalar> ClassFn<Q> {
    pub fn values(&self, form: usize) -> &[Cyclotomic<Q>] {
        &self.comps[form]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().flatten().all(|v| v.is_zero())
    }

    /// Values serialized exactly, forms separated by " || ".
    pub fn serialize(&self) -> String {
        self.comps
            .iter()
            .map(|c| c.iter().map(|v| v.serialize()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join(" || ")
    }
}

impl<Q: Scalar> FunSpace<Q> {
    pub fn new(forms: Vec<FormTable<Q>>) -> Self {
        FunSpace { id: NEXT_ID.fetch_add(1, Ordering::Relaxed), forms }
    }

    /// Tables for every pure inner form.
    pub fn from_forms(forms: Vec<PureInnerForm>) -> Result<Self, ChartabError> {
        let tables = forms
            .into_iter()
            .map(|f| FormTable::new(f.label, Arc::new(f.group)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(tables))
    }

    /// A space with the single form G^F.
    pub fn single(g: Arc<FiniteGroup>) -> Result<Self, ChartabError> {
        Ok(Self::new(vec![FormTable::new(0, g)?]))
    }

    pub fn num_forms(&self) -> usize {
        self.forms.len()
    }

    pub fn dim(&self) -> usize {
        self.forms.iter().map(|f| f.table.num_classes()).sum()
    }

    pub fn zero(&self) -> ClassFn<Q> {
        ClassFn {
            space: self.id,
            comps: self.forms.iter().map(|f| vec![Cyclotomic::zero(); f.table.num_classes()]).collect(),
        }
    }

    /// A function supported on form `t` with the given class values.
    pub fn on_form(&self, t: usize, values: Vec<Cyclotomic<Q>>) -> Result<ClassFn<Q>, ChartabError> {
        if values.len() != self.forms[t].table.num_classes() {
            return Err(ChartabError::Mismatch("class count differs from the form".into()));
        }
        let mut f = self.zero();
        f.comps[t] = values;
        Ok(f)
    }

    /// δ at the identity of every form (the unit of convolution).
    pub fn delta_identity(&self) -> ClassFn<Q> {
        let mut f = self.zero();
        for c in f.comps.iter_mut() {
            c[0] = Cyclotomic::one();
        }
        f
    }

    pub fn character(&self, t: usize, chi: usize) -> ClassFn<Q> {
        let mut f = self.zero();
        f.comps[t] = self.forms[t].table.values[chi].clone();
        f
    }

    /// Irrep(G,F): (form, character index, function) over all forms.
    pub fn irreps(&self) -> Vec<(usize, usize, ClassFn<Q>)> {
        let mut out = Vec::new();
        for (t, f) in self.forms.iter().enumerate() {
            for chi in 0..f.table.num_chars() {
                out.push((t, chi, self.character(t, chi)));
            }
        }
        out
    }

    fn check(&self, f: &ClassFn<Q>) -> Result<(), ChartabError> {
        if f.space != self.id || f.comps.len() != self.forms.len() {
            return Err(ChartabError::Mismatch("class function belongs to another space".into()));
        }
        Ok(())
    }

    pub fn inner(&self, f: &ClassFn<Q>, g: &ClassFn<Q>) -> Result<Cyclotomic<Q>, ChartabError> {
        self.check(f)?;
        self.check(g)?;
        let mut acc = Cyclotomic::zero();
        for (t, form) in self.forms.iter().enumerate() {
            acc = acc.add_ref(&form.table.inner(&f.comps[t], &g.comps[t]));
        }
        Ok(acc)
    }

    pub fn norm2(&self, f: &ClassFn<Q>) -> Result<Cyclotomic<Q>, ChartabError> {
        self.inner(f, f)
    }

    pub fn add(&self, f: &ClassFn<Q>, g: &ClassFn<Q>) -> Result<ClassFn<Q>, ChartabError> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.map2(f, g, |a, b| a.add_ref(b)))
    }

    pub fn sub(&self, f: &ClassFn<Q>, g: &ClassFn<Q>) -> Result<ClassFn<Q>, ChartabError> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.map2(f, g, |a, b| a.sub_ref(b)))
    }

    pub fn scale(&self, f: &ClassFn<Q>, s: &Cyclotomic<Q>) -> Result<ClassFn<Q>, ChartabError> {
        self.check(f)?;
        Ok(ClassFn { space: self.id, comps: f.comps.iter().map(|c| c.iter().map(|v| v.mul_ref(s)).collect()).collect() })
    }

    fn map2(&self, f: &ClassFn<Q>, g: &ClassFn<Q>, op: impl Fn(&Cyclotomic<Q>, &Cyclotomic<Q>) -> Cyclotomic<Q>) -> ClassFn<Q> {
        ClassFn {
            space: self.id,
            comps: f.comps.iter().zip(&g.comps).map(|(a, b)| a.iter().zip(b).map(|(x, y)| op(x, y)).collect()).collect(),
        }
    }

    /// (f∗g)(x) = Σ_{ab=x} f(a)·g(b) on each form, through the class algebra.
    pub fn convolve(&self, f: &ClassFn<Q>, g: &ClassFn<Q>) -> Result<ClassFn<Q>, ChartabError> {
        self.check(f)?;
        self.check(g)?;
        let mut out = self.zero();
        for (t, form) in self.forms.iter().enumerate() {
            let k = form.table.num_classes();
            let alg = &form.algebra;
            let (fv, gv) = (&f.comps[t], &g.comps[t]);
            for j in 0..k {
                if fv[j].is_zero() {
                    continue;
                }
                for l in 0..k {
                    if gv[l].is_zero() {
                        continue;
                    }
                    let prod = fv[j].mul_ref(&gv[l]);
                    for &(i, c) in alg.row(j, l) {
                        out.comps[t][i as usize].add_scaled_int(&prod, c as i64);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Coefficients ⟨f, χ⟩ against every irreducible of every form.
    pub fn decompose(&self, f: &ClassFn<Q>) -> Result<Vec<Vec<Cyclotomic<Q>>>, ChartabError> {
        self.check(f)?;
        Ok(self.forms.iter().enumerate().map(|(t, form)| form.table.decompose(&f.comps[t])).collect())
    }
}
