//! Trace functions at the level of class functions: idempotents of
//! admissible pairs, packet idempotents, and normalized trace functions of
//! F-stable character sheaves.

mod pairs;

use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;

pub use pairs::{
    borel_pairs, shipped_pairs, torus_coords, unipotent_coords, AdmissiblePairSpec, CharDatum, ComponentKind, LParam,
    TorusSpec,
};

use crate::chartab::{induce, ChartabError, ClassFn, FunSpace};
use crate::exactnum::{lcm_u64, Rational};
use crate::groupkit::{
    build_group, named_subgroup, pure_inner_forms, subgroup_dims, Elem, Family, FiniteGroup, GroupError, GroupSpec,
};
use crate::metricmod::{
    autoequiv_fixed_points, cyclic_power_map, double_abelian, double_automorphism, FiniteAbelianGroup, MetricError,
    ModularData,
};
use crate::Cyclo;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DictError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Chartab(#[from] ChartabError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("pair {pair}: N is not a homomorphism on {subgroup}")]
    NotHomomorphism { pair: String, subgroup: String },
    #[error("pair {pair}: N is not invariant under {normalizer}")]
    NotInvariant { pair: String, normalizer: String },
    #[error("pair {0}: no pure inner form carries a rational pair in its class")]
    NoForm(String),
    #[error("parameter {0} is not a character of any T'^{{tF}}")]
    NotFStable(String),
    #[error("family not in dictionary: {0}; supported: torus packets, Heisenberg packets with trivial K_N, the mu3-equivariant family, induced singletons")]
    Unsupported(String),
    #[error("{0}")]
    Verification(String),
}

/// G over F_q viewed at degree m: the pure inner forms of G^{F^m} with their
/// tables. Only connected families are available for m > 1.
#[derive(Debug)]
pub struct Setting {
    pub spec: GroupSpec,
    pub m: u32,
    pub space: FunSpace<Rational>,
    subgroups: Mutex<FxHashMap<(usize, String), Arc<FiniteGroup>>>,
}

impl Setting {
    pub fn new(spec: GroupSpec, m: u32, cap: u64) -> Result<Self, DictError> {
        let space = if m == 1 {
            FunSpace::from_forms(pure_inner_forms(&spec, cap)?)?
        } else {
            if !spec.family.is_connected() {
                return Err(DictError::Unsupported(format!("{} at degree {m}", spec.family.name())));
            }
            FunSpace::single(Arc::new(build_group(&spec, m, cap)?))?
        };
        Ok(Self::from_space(spec, m, space))
    }

    /// Wrap an existing space whose forms are the pure inner forms of G^{F^m}.
    pub fn from_space(spec: GroupSpec, m: u32, space: FunSpace<Rational>) -> Self {
        Setting { spec, m, space, subgroups: Mutex::new(FxHashMap::default()) }
    }

    pub fn family(&self) -> Family {
        self.spec.family
    }

    pub fn num_forms(&self) -> usize {
        self.space.num_forms()
    }

    pub fn group(&self, t: usize) -> &Arc<FiniteGroup> {
        &self.space.forms[t].group
    }

    pub fn form_label(&self, t: usize) -> u32 {
        self.space.forms[t].label
    }

    /// q^m, the size of the field of definition at this degree.
    pub fn qm(&self) -> u64 {
        self.spec.q().pow(self.m)
    }

    pub fn subgroup(&self, t: usize, name: &str) -> Result<Arc<FiniteGroup>, DictError> {
        let key = (t, name.to_string());
        if let Some(h) = self.subgroups.lock().unwrap().get(&key) {
            return Ok(h.clone());
        }
        let h = Arc::new(named_subgroup(self.group(t), name)?);
        self.subgroups.lock().unwrap().insert(key, h.clone());
        Ok(h)
    }

    /// Whether the geometric component group μ_3 is nontrivial.
    fn mu3_geometric(&self) -> bool {
        self.spec.p != 3
    }
}

/// A class function with a record of how it was built.
#[derive(Clone, Debug)]
pub struct TraceFunction {
    pub f: ClassFn<Rational>,
    pub tag: String,
    /// ⟨f, f⟩.
    pub norm2: Rational,
}

/// A G^{tF}-orbit of rational pairs in the geometric class of a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub form: usize,
    pub datum: CharDatum,
    /// The class in H^1(F, Π_0') that the piece realizes, as an exponent.
    pub twist: u32,
}

fn scalar(c: &Cyclo) -> Option<Rational> {
    c.as_scalar()
}

/// Values of `phi` at the class representatives of `k`, after checking
/// that it is constant on the classes of `k`.
fn class_values(k: &FiniteGroup, phi: impl Fn(&Elem) -> Cyclo) -> Result<Vec<Cyclo>, DictError> {
    let vals: Vec<Cyclo> = k.elems.iter().map(&phi).collect();
    for (x, v) in vals.iter().enumerate() {
        let c = k.class_of(x as u32) as usize;
        if *v != vals[k.rep(c) as usize] {
            return Err(DictError::Verification("kernel function is not a class function".into()));
        }
    }
    Ok((0..k.num_classes()).map(|c| vals[k.rep(c) as usize].clone()).collect())
}

/// Rational pairs per form, up to conjugacy. Borel pairs form geometric
/// classes by the support of λ (the torus rescales each coordinate
/// independently); the other families have no torus acting on U and their
/// classes are single data.
pub fn rational_pieces(st: &Setting, pair: &AdmissiblePairSpec) -> Result<Vec<Piece>, DictError> {
    let family = st.family();
    let mut out = Vec::new();
    for t in 0..st.num_forms() {
        let g = st.group(t);
        let h = st.subgroup(t, &pair.h)?;
        let f = &*g.amb.field;
        check_homomorphism(st, pair, t, &pair.datum)?;
        let cands: Vec<CharDatum> = if family == Family::BorelSl3 {
            let mut acc = vec![CharDatum { additive: vec![], kummer: pair.datum.kummer.clone() }];
            for &(i, lam) in &pair.datum.additive {
                let range: Vec<u32> = if lam == 0 { vec![0] } else { (1..f.size).collect() };
                acc = acc
                    .into_iter()
                    .flat_map(|d| {
                        range.iter().map(move |&l| {
                            let mut d2 = d.clone();
                            d2.additive.push((i, l));
                            d2
                        })
                    })
                    .collect();
            }
            acc
        } else {
            vec![pair.datum.clone()]
        };
        let key = |d: &CharDatum| -> Vec<(u32, u64)> { h.elems.iter().map(|x| d.exponents(family, f, x)).collect() };
        let keys: Vec<Vec<(u32, u64)>> = cands.iter().map(key).collect();
        let lookup: FxHashMap<&Vec<(u32, u64)>, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut seen = vec![false; cands.len()];
        for start in 0..cands.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for &gen in g.generators() {
                    let ge = &g.elems[gen as usize];
                    let gi = g.amb.inv(ge);
                    // (g·ν)(x) = ν(g^{-1} x g)
                    let conj: Vec<(u32, u64)> = h
                        .elems
                        .iter()
                        .map(|x| keys[i][h.idx(&g.amb.mul(&g.amb.mul(&gi, x), ge)) as usize])
                        .collect();
                    let Some(&j) = lookup.get(&conj) else {
                        return Err(DictError::Verification(format!(
                            "pair {}: the conjugation orbit leaves the geometric class",
                            pair.name
                        )));
                    };
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            let datum = cands[start].clone();
            let twist = piece_twist(st, pair, t, &datum);
            out.push(Piece { form: t, datum, twist });
        }
    }
    Ok(out)
}

fn piece_twist(st: &Setting, pair: &AdmissiblePairSpec, t: usize, d: &CharDatum) -> u32 {
    if !st.family().is_connected() {
        return st.form_label(t);
    }
    if pair.components != ComponentKind::Mu3 || st.family() != Family::BorelSl3 {
        return 0;
    }
    let f = &*st.group(t).amb.field;
    if !f.order().is_multiple_of(3) {
        return 0;
    }
    // h^{-1}F(h) = ω^s scalar makes x²y a cube times g^s
    let coord = |i: usize| d.additive.iter().find(|a| a.0 == i).map(|a| a.1).unwrap_or(0);
    let (x, y) = (coord(0), coord(1));
    let c = f.mul(f.mul(x, x), y);
    f.log(c).map(|l| l % 3).unwrap_or(0)
}

/// N(xy) = N(x)·N(y) on H^{tF}, checked against generators.
fn check_homomorphism(st: &Setting, pair: &AdmissiblePairSpec, t: usize, datum: &CharDatum) -> Result<(), DictError> {
    let g = st.group(t);
    let h = st.subgroup(t, &pair.h)?;
    let f = &*g.amb.field;
    let val = |x: &Elem| datum.value(st.family(), f, x);
    for &a in h.generators() {
        let xa = &h.elems[a as usize];
        let va = val(xa);
        for y in &h.elems {
            if val(&g.amb.mul(xa, y)) != va.mul_ref(&val(y)) {
                return Err(DictError::NotHomomorphism { pair: pair.name.clone(), subgroup: pair.h.clone() });
            }
        }
    }
    Ok(())
}

/// Checks N on H of one form: multiplicativity and invariance under G'.
pub fn check_datum(st: &Setting, pair: &AdmissiblePairSpec, piece: &Piece) -> Result<(), DictError> {
    let t = piece.form;
    check_homomorphism(st, pair, t, &piece.datum)?;
    let g = st.group(t);
    let h = st.subgroup(t, &pair.h)?;
    let gp = st.subgroup(t, &pair.normalizer)?;
    let f = &*g.amb.field;
    let fam = st.family();
    let val = |x: &Elem| piece.datum.value(fam, f, x);
    for &s in gp.generators() {
        let xs = &gp.elems[s as usize];
        for y in &h.elems {
            if val(&g.amb.conj(xs, y)) != val(y) {
                return Err(DictError::NotInvariant { pair: pair.name.clone(), normalizer: pair.normalizer.clone() });
            }
        }
    }
    Ok(())
}

/// The character N of a piece on the class representatives of H^{tF}.
pub fn piece_character(st: &Setting, pair: &AdmissiblePairSpec, piece: &Piece) -> Result<Vec<Cyclo>, DictError> {
    let h = st.subgroup(piece.form, &pair.h)?;
    let f = &*h.amb.field;
    class_values(&h, |x| piece.datum.value(st.family(), f, x))
}

/// T_e: for each rational piece, N·1_H/|H| extended by zero to G' and
/// induced to G, summed over pieces on each form.
pub fn idempotent_function(st: &Setting, pair: &AdmissiblePairSpec) -> Result<TraceFunction, DictError> {
    let pieces = rational_pieces(st, pair)?;
    if pieces.is_empty() {
        return Err(DictError::NoForm(pair.name.clone()));
    }
    let fam = st.family();
    let mut out = st.space.zero();
    for piece in &pieces {
        check_datum(st, pair, piece)?;
        let t = piece.form;
        let g = st.group(t);
        let h = st.subgroup(t, &pair.h)?;
        let gp = st.subgroup(t, &pair.normalizer)?;
        let f = &*g.amb.field;
        let inv_h = Rational::new(1, h.order() as i64);
        let on_gp = class_values(&gp, |x| {
            if h.contains(x) {
                piece.datum.value(fam, f, x).scale(&inv_h)
            } else {
                Cyclo::zero()
            }
        })?;
        let ind = induce(&on_gp, &gp, g);
        for (o, v) in out.comps[t].iter_mut().zip(ind) {
            *o = o.add_ref(&v);
        }
    }
    let sq = st.space.convolve(&out, &out)?;
    if sq != out {
        return Err(DictError::Verification(format!("T_e of {} is not idempotent", pair.name)));
    }
    for t in 0..st.num_forms() {
        let v = &out.comps[t][0];
        if !(v.is_zero() || scalar(v).is_some_and(|r| r.is_positive())) {
            return Err(DictError::Verification(format!("T_e(1) of {} is not a positive rational", pair.name)));
        }
    }
    let norm2 = scalar(&st.space.norm2(&out)?).expect("norms are rational");
    Ok(TraceFunction { f: out, tag: format!("idempotent:{}", pair.name), norm2 })
}

/// Exponent of the coordinate group read by each slot of T'^{tF}, i.e. the
/// n with T'-coordinates in μ_n.
fn torus_exponent(st: &Setting, t: usize, ts: &TorusSpec) -> Result<u64, DictError> {
    let tor = st.subgroup(t, &ts.label)?;
    let f = &*tor.amb.field;
    let mut n = 1u64;
    for x in &tor.elems {
        for &s in &ts.slots {
            n = lcm_u64(n, f.mult_order(torus_coords(st.family(), x)[s]));
        }
    }
    Ok(n)
}

/// χ_x at an element of T'^{tF}: Π ζ_{Q-1}^{x_i·n·log t_i}; None when x is
/// not a character of this form's torus.
fn param_value(st: &Setting, ts: &TorusSpec, n: u64, x: &LParam, g: &FiniteGroup, e: &Elem) -> Option<Cyclo> {
    let f = &*g.amb.field;
    let tc = torus_coords(st.family(), e);
    let mut out = Cyclo::one();
    for (xi, &slot) in x.0.iter().zip(&ts.slots) {
        let j = (xi.clone() * Rational::int(n as i64)).as_i64()?;
        let l = f.log(tc[slot]).expect("torus coordinates are units") as i64;
        out = out.mul_ref(&Cyclo::root_of_unity(f.order(), j * l));
    }
    Some(out)
}

fn param_defined(x: &LParam, n: u64) -> bool {
    x.0.iter().all(|xi| (xi.clone() * Rational::int(n as i64)).is_integer())
}

/// Characters of T'^{tF} over all forms, their Π_0-orbits and which orbits
/// are stable under the Frobenius x ↦ q·x.
#[derive(Clone, Debug)]
pub struct TorusCharacterData {
    /// (form, character) for every form.
    pub chars: Vec<(usize, LParam)>,
    /// Orbit representatives, sorted.
    pub orbits: Vec<LParam>,
    pub f_stable: Vec<bool>,
}

pub fn torus_character_data(
    st: &Setting,
    torus: Option<&TorusSpec>,
    action: ComponentKind,
) -> Result<TorusCharacterData, DictError> {
    let Some(ts) = torus else {
        return Ok(TorusCharacterData {
            chars: (0..st.num_forms()).map(|t| (t, LParam::trivial(0))).collect(),
            orbits: vec![LParam::trivial(0)],
            f_stable: vec![true],
        });
    };
    let d = ts.slots.len();
    let mut chars = Vec::new();
    for t in 0..st.num_forms() {
        let n = torus_exponent(st, t, ts)?;
        let total = (n as usize).pow(d as u32);
        for idx in 0..total {
            let mut r = idx;
            let mut v = vec![Rational::int(0); d];
            for c in (0..d).rev() {
                v[c] = Rational::new((r % n as usize) as i64, n as i64);
                r /= n as usize;
            }
            chars.push((t, LParam(v)));
        }
    }
    let canon = |x: &LParam| match action {
        ComponentKind::Z2 => x.clone().min(x.negate()),
        _ => x.clone(),
    };
    let mut orbits: Vec<LParam> = chars.iter().map(|(_, x)| canon(x)).collect();
    orbits.sort();
    orbits.dedup();
    let q = st.spec.q() as i64;
    let f_stable = orbits.iter().map(|x| canon(&x.times(q)) == *x).collect();
    Ok(TorusCharacterData { chars, orbits, f_stable })
}

/// The packet parameters of a pair at this degree, sorted.
pub fn packet_parameters(st: &Setting, pair: &AdmissiblePairSpec) -> Result<Vec<LParam>, DictError> {
    Ok(torus_character_data(st, pair.torus.as_ref(), pair.components)?.orbits)
}

/// Whether the packet's component stabilizer Π_0' is nontrivial.
fn has_components(st: &Setting, pair: &AdmissiblePairSpec, x: &LParam) -> bool {
    match pair.components {
        ComponentKind::Trivial => false,
        ComponentKind::Mu3 => st.mu3_geometric(),
        ComponentKind::Z2 => x.is_two_torsion(),
    }
}

/// The geometric stabilizer Π_0' of the packet and the action of the
/// Frobenius of this degree on it.
fn component_group(st: &Setting, pair: &AdmissiblePairSpec, x: &LParam) -> (FiniteAbelianGroup, Vec<usize>) {
    if !has_components(st, pair, x) {
        return (FiniteAbelianGroup::trivial(), vec![0]);
    }
    match pair.components {
        ComponentKind::Mu3 => (FiniteAbelianGroup::cyclic(3), cyclic_power_map(3, (st.qm() % 3) as i64)),
        _ => (FiniteAbelianGroup::cyclic(2), vec![0, 1]),
    }
}

/// Split y ∈ Π_0'·(T'H') as (component index, identity-component part).
fn component_of(st: &Setting, g: &FiniteGroup, y: &Elem) -> (u32, Elem) {
    let amb = &g.amb;
    let f = &*amb.field;
    match st.family() {
        Family::BorelSl3 => {
            let t1 = y[0];
            if t1 == 1 || y[1] != t1 || f.pow(t1, 3) != 1 {
                return (0, *y);
            }
            let i = f.log(t1).unwrap() / (f.order() / 3);
            let w = f.inv(t1);
            (i, amb.mul(&[w, w, 0, 0, 0, 0], y))
        }
        Family::Mu3U3 => (y[0], [0, y[1], y[2], y[3], 0, 0]),
        Family::TorusZ2 => {
            if y[1] == 0 {
                (0, *y)
            } else {
                (1, amb.mul(y, &amb.inv(&[1, 1, 0, 0, 0, 0])))
            }
        }
        _ => (0, *y),
    }
}

/// The modular datum of a packet: the double of Π_0' (K_N is trivial for
/// every shipped pair), the Frobenius permutation of its labels, and the
/// fixed labels.
#[derive(Clone, Debug)]
pub struct PacketDatum {
    pub components: FiniteAbelianGroup,
    pub modular: ModularData<Rational>,
    pub frobenius: Vec<usize>,
    pub fixed: Vec<usize>,
}

pub fn packet_datum(st: &Setting, pair: &AdmissiblePairSpec, x: &LParam) -> Result<PacketDatum, DictError> {
    let (a, phi) = component_group(st, pair, x);
    let modular = double_abelian::<Rational>(&a);
    let frobenius = double_automorphism(&a, &phi);
    let fixed = autoequiv_fixed_points(&modular, &frobenius)?;
    Ok(PacketDatum { components: a, modular, frobenius, fixed })
}

/// The subgroup K ⊂ G' on which a packet's kernel function lives, with the
/// size of its identity-component part T'H'.
fn packet_kernel(
    st: &Setting,
    pair: &AdmissiblePairSpec,
    x: &LParam,
    t: usize,
) -> Result<(Arc<FiniteGroup>, Arc<FiniteGroup>), DictError> {
    let kernel = st.subgroup(t, &pair.kernel)?;
    if !has_components(st, pair, x) {
        return Ok((kernel.clone(), kernel));
    }
    let g = st.group(t);
    let gp = st.subgroup(t, &pair.normalizer)?;
    let k = gp.subgroup(|y| kernel.contains(&component_of(st, g, y).1));
    Ok((Arc::new(k), kernel))
}

/// Sum over rational pieces of ind_K^G of `phi(piece, form, n, K-element)`.
fn induced_sum(
    st: &Setting,
    pair: &AdmissiblePairSpec,
    x: &LParam,
    pieces: &[Piece],
    phi: impl Fn(&Piece, &FiniteGroup, u64, &Elem) -> Option<Cyclo>,
) -> Result<(ClassFn<Rational>, bool), DictError> {
    let mut out = st.space.zero();
    let mut any = false;
    for piece in pieces {
        let t = piece.form;
        let n = match &pair.torus {
            Some(ts) => torus_exponent(st, t, ts)?,
            None => 1,
        };
        if !param_defined(x, n) {
            continue;
        }
        any = true;
        let g = st.group(t);
        let (k, _) = packet_kernel(st, pair, x, t)?;
        let vals = class_values(&k, |y| phi(piece, g, n, y).unwrap_or_else(Cyclo::zero))?;
        let ind = induce(&vals, &k, g);
        for (o, v) in out.comps[t].iter_mut().zip(ind) {
            *o = o.add_ref(&v);
        }
    }
    Ok((out, any))
}

fn nu_chi(st: &Setting, pair: &AdmissiblePairSpec, x: &LParam, piece: &Piece, g: &FiniteGroup, n: u64, y0: &Elem) -> Cyclo {
    let f = &*g.amb.field;
    let mut v = piece.datum.value(st.family(), f, y0);
    if let Some(ts) = &pair.torus {
        v = v.mul_ref(&param_value(st, ts, n, x, g, y0).expect("parameter checked on this form"));
    }
    v
}

/// t̃T_f = Σ_pieces ind_K^G([comp = 0]·N·χ_x/|T'H'|).
pub fn packet_idempotent(st: &Setting, pair: &AdmissiblePairSpec, x: &LParam) -> Result<TraceFunction, DictError> {
    let pieces = rational_pieces(st, pair)?;
    let mut sizes = FxHashMap::default();
    for p in &pieces {
        let (_, kern) = packet_kernel(st, pair, x, p.form)?;
        sizes.insert(p.form, Rational::new(1, kern.order() as i64));
    }
    let comps = has_components(st, pair, x);
    let (out, any) = induced_sum(st, pair, x, &pieces, |piece, g, n, y| {
        let (i, y0) = if comps { component_of(st, g, y) } else { (0, *y) };
        if i != 0 {
            return None;
        }
        Some(nu_chi(st, pair, x, piece, g, n, &y0).scale(&sizes[&piece.form]))
    })?;
    if !any {
        return Err(DictError::NotFStable(x.describe()));
    }
    let norm2 = scalar(&st.space.norm2(&out)?).expect("norms are rational");
    Ok(TraceFunction { f: out, tag: format!("packet:{}:{}", pair.name, x.describe()), norm2 })
}

/// Normalized trace functions of CS_f(G)^F, one per Frobenius-fixed label
/// (i, j) of the double of Π_0': the translate of the packet's kernel
/// function to component i with equivariance character j, twisted on each
/// piece by j evaluated at the piece's class in H^1(F, Π_0').
pub fn packet_trace_functions(
    st: &Setting,
    pair: &AdmissiblePairSpec,
    x: &LParam,
) -> Result<Vec<TraceFunction>, DictError> {
    if st.family() == Family::BorelSl3 && pair.components == ComponentKind::Mu3 && pair.torus.is_some() {
        return Err(DictError::Unsupported("mu3 components with a nontrivial torus".into()));
    }
    let datum = packet_datum(st, pair, x)?;
    let na = datum.components.order();
    let pieces = rational_pieces(st, pair)?;
    let comps = has_components(st, pair, x);
    let mut out = Vec::new();
    for &label in &datum.fixed {
        let (ci, cj) = ((label / na) as u32, (label % na) as u32);
        let (f, any) = induced_sum(st, pair, x, &pieces, |piece, g, n, y| {
            let (i, y0) = if comps { component_of(st, g, y) } else { (0, *y) };
            if i != ci {
                return None;
            }
            let mut v = nu_chi(st, pair, x, piece, g, n, &y0);
            if comps {
                v = v.mul_ref(&Cyclo::root_of_unity(na as u32, (cj * piece.twist) as i64));
            }
            Some(v)
        })?;
        if !any {
            return Err(DictError::NotFStable(x.describe()));
        }
        let n2 = scalar(&st.space.norm2(&f)?).expect("norms are rational");
        let Some(r) = n2.sqrt() else {
            return Err(DictError::Verification(format!("norm² {n2} of a trace function is not a rational square")));
        };
        let f = st.space.scale(&f, &Cyclo::from_scalar(r.recip().expect("trace functions are nonzero")))?;
        let f = canonical_phase(&st.space, f)?;
        out.push(TraceFunction {
            f,
            tag: format!("trace:{}:{}:{}", pair.name, x.describe(), datum.modular.labels[label]),
            norm2: Rational::int(1),
        });
    }
    Ok(out)
}

/// Rotate by a root of unity so the first nonzero value is a positive real,
/// when such a rotation exists.
pub fn canonical_phase(space: &FunSpace<Rational>, f: ClassFn<Rational>) -> Result<ClassFn<Rational>, DictError> {
    let Some(v) = f.comps.iter().flatten().find(|v| !v.is_zero()).cloned() else {
        return Ok(f);
    };
    let n = v.conductor().max(1) * 2;
    for k in 0..n {
        let z = Cyclo::root_of_unity(n, -(k as i64));
        if v.mul_ref(&z).as_scalar().is_some_and(|r| r.is_positive()) {
            return Ok(space.scale(&f, &z)?);
        }
    }
    Ok(f)
}

/// Dimensions (n_e, τ_e, 2·d_e) from the pair's subgroup dimensions.
pub fn pair_dims(family: Family, pair: &AdmissiblePairSpec) -> Result<(i64, i64, i64), DictError> {
    let unknown = |s: &str| DictError::Group(GroupError::UnknownSubgroup { name: s.into(), family: family.name() });
    let (dh, _) = subgroup_dims(family, &pair.h).ok_or_else(|| unknown(&pair.h))?;
    let (dgp, tgp) = subgroup_dims(family, &pair.normalizer).ok_or_else(|| unknown(&pair.normalizer))?;
    let dg = family.dim() as i64;
    let n_e = dh as i64 - (dg - dgp as i64);
    let tau = tgp as i64;
    Ok((n_e, tau, dg - n_e - tau))
}
