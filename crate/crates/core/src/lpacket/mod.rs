//! Blocks and L-packets of irreducible characters of the pure inner forms,
//! their counting and dimension checks, and the transition matrix between
//! trace functions and irreducible characters.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Roots;
use rayon::prelude::*;

use crate::chartab::{induce, ChartabError, ClassFn};
use crate::exactnum::Rational;
use crate::groupkit::Family;
use crate::report::{Check, Report};
use crate::sheafdict::{
    idempotent_function, packet_datum, packet_idempotent, packet_parameters, packet_trace_functions, pair_dims,
    piece_character, rational_pieces, AdmissiblePairSpec, DictError, LParam, PacketDatum, Setting, TraceFunction,
};
use crate::Cyclo;

/// Above this many classes, whether an idempotent acts as the identity on W
/// is read off |G|·⟨T, χ_W⟩ instead of a full convolution.
pub const CONVOLUTION_CLASS_LIMIT: usize = 40;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LPacketError {
    #[error(transparent)]
    Dict(#[from] DictError),
    #[error(transparent)]
    Chartab(#[from] ChartabError),
    #[error("irreducible {0} lies in no block; the pair list is incomplete")]
    Unassigned(String),
    #[error("irreducible {irrep} lies in both {first} and {second}")]
    DoublyAssigned { irrep: String, first: String, second: String },
    #[error("{tag} acts on {irrep} by neither 0 nor 1")]
    PartialAction { tag: String, irrep: String },
    #[error("block {0}: the packets do not partition the block")]
    NotPartition(String),
    #[error("dim M = {0} is not a perfect square")]
    NotSquare(u64),
    #[error("q^{{1/2}} is needed for q = {0}; rerun over a field of even degree")]
    NeedsSqrtQ(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockInvariants {
    /// dim H − dim(G/G').
    pub n_e: i64,
    /// Dimension of a maximal torus of G'.
    pub tau_e: i64,
    /// 2·d_e = dim G − n_e − τ_e.
    pub two_d_e: i64,
    pub dim_g: u32,
    pub dim_t: u32,
}

impl BlockInvariants {
    pub fn d_e(&self) -> Rational {
        Rational::new(self.two_d_e, 2)
    }
}

pub fn invariants_of_block(family: Family, pair: &AdmissiblePairSpec) -> Result<BlockInvariants, LPacketError> {
    let (n_e, tau_e, two_d_e) = pair_dims(family, pair)?;
    Ok(BlockInvariants { n_e, tau_e, two_d_e, dim_g: family.dim(), dim_t: family.torus_dim() })
}

/// An irreducible character of the pure inner form `form`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrrepId {
    pub form: usize,
    pub chi: usize,
}

impl fmt::Display for IrrepId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{}.{}", self.form, self.chi)
    }
}

pub fn all_irreps(st: &Setting) -> Vec<IrrepId> {
    (0..st.num_forms())
        .flat_map(|form| (0..st.space.forms[form].table.num_chars()).map(move |chi| IrrepId { form, chi }))
        .collect()
}

pub fn degree(st: &Setting, w: IrrepId) -> u64 {
    st.space.forms[w.form].table.degrees[w.chi]
}

/// q^{e/2}, exactly; None when e is odd and q is not a square.
pub fn half_power(q: u64, twice: i64) -> Option<Rational> {
    let base = if twice % 2 == 0 {
        q
    } else {
        let s = q.sqrt();
        if s * s != q {
            return None;
        }
        s
    };
    let e = if twice % 2 == 0 { twice / 2 } else { twice };
    let v = Rational::int(base as i64).pow(e.unsigned_abs() as u32);
    if e < 0 {
        v.recip()
    } else {
        Some(v)
    }
}

/// Whether the central idempotent `e` acts on W as the identity, exactly.
pub fn acts_as_identity(st: &Setting, e: &ClassFn<Rational>, tag: &str, w: IrrepId) -> Result<bool, LPacketError> {
    let form = &st.space.forms[w.form];
    let chi = st.space.character(w.form, w.chi);
    if form.table.num_classes() <= CONVOLUTION_CLASS_LIMIT {
        let c = st.space.convolve(e, &chi)?;
        if c == chi {
            return Ok(true);
        }
        if c.is_zero() {
            return Ok(false);
        }
    } else {
        // (e∗χ_W)(1) = |G|·⟨e, χ_W⟩ and e acts on W by a scalar
        let v = form.table.inner(&e.comps[w.form], form.table.row(w.chi)).scale(&Rational::int(form.table.order as i64));
        if v.is_zero() {
            return Ok(false);
        }
        if v == Cyclo::from_int(degree(st, w) as i64) {
            return Ok(true);
        }
    }
    Err(LPacketError::PartialAction { tag: tag.into(), irrep: w.to_string() })
}

fn members_of(st: &Setting, t: &TraceFunction, among: &[IrrepId]) -> Result<Vec<IrrepId>, LPacketError> {
    let mut out = Vec::new();
    for &w in among {
        if acts_as_identity(st, &t.f, &t.tag, w)? {
            out.push(w);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Block {
    pub pair: AdmissiblePairSpec,
    pub idempotent: TraceFunction,
    pub members: Vec<IrrepId>,
}

#[derive(Clone, Debug)]
pub struct BlockPartition {
    pub blocks: Vec<Block>,
    /// Members found by the induced-character oracle, per pair.
    pub induced: Vec<Vec<IrrepId>>,
    pub checks: Vec<Check>,
}

/// Every irreducible in exactly one of the listed member sets.
fn check_partition<'a>(
    universe: &[IrrepId],
    parts: impl IntoIterator<Item = (&'a str, &'a [IrrepId])>,
) -> Result<(), LPacketError> {
    let mut owner: Vec<Option<&str>> = vec![None; universe.len()];
    for (name, members) in parts {
        for w in members {
            let i = universe.binary_search(w).map_err(|_| LPacketError::Unassigned(w.to_string()))?;
            if let Some(first) = owner[i] {
                return Err(LPacketError::DoublyAssigned {
                    irrep: w.to_string(),
                    first: first.into(),
                    second: name.into(),
                });
            }
            owner[i] = Some(name);
        }
    }
    match owner.iter().position(|o| o.is_none()) {
        Some(i) => Err(LPacketError::Unassigned(universe[i].to_string())),
        None => Ok(()),
    }
}

/// Irrep_e for each pair by the action of T_e, cross-checked against the
/// irreducibles occurring in ind_H^G N over the rational pieces.
pub fn partition_blocks(st: &Setting, pairs: &[AdmissiblePairSpec]) -> Result<BlockPartition, LPacketError> {
    let universe = all_irreps(st);
    let blocks = pairs
        .par_iter()
        .map(|pair| {
            let idempotent = idempotent_function(st, pair)?;
            let members = members_of(st, &idempotent, &universe)?;
            Ok(Block { pair: pair.clone(), idempotent, members })
        })
        .collect::<Result<Vec<_>, LPacketError>>()?;
    check_partition(&universe, blocks.iter().map(|b| (b.pair.name.as_str(), b.members.as_slice())))?;
    let induced = induced_blocks(st, pairs)?;
    let bad: Vec<&str> =
        blocks.iter().zip(&induced).filter(|(b, a)| b.members != **a).map(|(b, _)| b.pair.name.as_str()).collect();
    let checks = vec![
        Check::pass("blocks.partition"),
        Check::new("blocks.oracles_agree", bad.is_empty(), format!("disagreement on {}", bad.join(", "))),
    ];
    Ok(BlockPartition { blocks, induced, checks })
}

/// For each pair, the irreducibles W with ⟨ind_H^G N, χ_W⟩ ≠ 0 for some
/// rational piece (H, N).
pub fn induced_blocks(st: &Setting, pairs: &[AdmissiblePairSpec]) -> Result<Vec<Vec<IrrepId>>, LPacketError> {
    pairs
        .par_iter()
        .map(|pair| {
            let mut found = BTreeSet::new();
            for piece in rational_pieces(st, pair)? {
                let h = st.subgroup(piece.form, &pair.h)?;
                let ind = induce(&piece_character(st, pair, &piece)?, &h, st.group(piece.form));
                let coeffs = st.space.forms[piece.form].table.decompose(&ind);
                for (chi, c) in coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        found.insert(IrrepId { form: piece.form, chi });
                    }
                }
            }
            Ok(found.into_iter().collect())
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Packet {
    pub param: LParam,
    pub idempotent: TraceFunction,
    pub members: Vec<IrrepId>,
}

/// Irrep_{e,f} for each packet parameter f of the block.
pub fn partition_packets(st: &Setting, block: &Block) -> Result<Vec<Packet>, LPacketError> {
    let params = packet_parameters(st, &block.pair)?;
    let packets = params
        .par_iter()
        .map(|x| {
            let idempotent = packet_idempotent(st, &block.pair, x)?;
            let members = members_of(st, &idempotent, &block.members)?;
            Ok(Packet { param: x.clone(), idempotent, members })
        })
        .collect::<Result<Vec<_>, LPacketError>>()?;
    let labels: Vec<String> = packets.iter().map(|p| p.param.describe()).collect();
    check_partition(&block.members, labels.iter().zip(&packets).map(|(l, p)| (l.as_str(), p.members.as_slice())))
        .map_err(|_| LPacketError::NotPartition(block.pair.name.clone()))?;
    Ok(packets)
}

fn maximal_torus(family: Family) -> Option<&'static str> {
    match family {
        Family::BorelSl3 | Family::SplitTorus(_) | Family::TorusZ2 => Some("T"),
        Family::HeisenbergU3 | Family::Mu3U3 => None,
    }
}

fn identity_component(family: Family) -> Option<&'static str> {
    match family {
        Family::Mu3U3 => Some("U"),
        Family::TorusZ2 => Some("T"),
        _ => None,
    }
}

fn order_of(st: &Setting, t: usize, label: Option<&str>) -> Result<u64, LPacketError> {
    Ok(match label {
        Some(l) => st.subgroup(t, l)?.order() as u64,
        None => 1,
    })
}

/// |Π_0^{tF}| = |G^{tF}| / |G°^{tF}|.
fn components_fixed(st: &Setting, t: usize) -> Result<u64, LPacketError> {
    let g = st.group(t).order() as u64;
    Ok(match identity_component(st.family()) {
        Some(l) => g / st.subgroup(t, l)?.order() as u64,
        None => 1,
    })
}

/// Dimension formula solved for dim⁺(M_W) for each member:
/// dim W = dim⁺·(|T^{tF}|/|T'^{tF}|)·|Π_0^{tF}|·q^{d_e+τ_e−dim T} / √dim M.
pub fn dim_plus(
    st: &Setting,
    inv: &BlockInvariants,
    pair: &AdmissiblePairSpec,
    members: &[IrrepId],
    sqrt_dim_m: u64,
) -> Result<Vec<Rational>, LPacketError> {
    let qm = st.qm();
    let twice = inv.two_d_e + 2 * inv.tau_e - 2 * inv.dim_t as i64;
    let qpow = half_power(qm, twice).ok_or(LPacketError::NeedsSqrtQ(qm))?;
    members
        .iter()
        .map(|&w| {
            let t = w.form;
            let ratio = Rational::new(
                order_of(st, t, maximal_torus(st.family()))? as i64,
                order_of(st, t, pair.torus.as_ref().map(|s| s.label.as_str()))? as i64,
            );
            let denom = &(&ratio * &Rational::int(components_fixed(st, t)? as i64)) * &qpow;
            Ok(&Rational::int((degree(st, w) * sqrt_dim_m) as i64) / &denom)
        })
        .collect()
}

fn sqrt_exact(n: u64) -> Result<u64, LPacketError> {
    let s = n.sqrt();
    if s * s == n {
        Ok(s)
    } else {
        Err(LPacketError::NotSquare(n))
    }
}

/// Block-level verdicts: the Heisenberg sum of squares and the packet count
/// for tori.
pub fn structural_checks(
    st: &Setting,
    inv: &BlockInvariants,
    block: &Block,
    packets: &[Packet],
) -> Result<Vec<Check>, LPacketError> {
    let path = format!("block.{}", block.pair.name);
    let mut out = Vec::new();
    let family = st.family();
    if family == Family::HeisenbergU3 {
        let lhs: u64 = block.members.iter().map(|&w| degree(st, w).pow(2)).sum();
        let rhs = half_power(st.qm(), 2 * inv.two_d_e).ok_or(LPacketError::NeedsSqrtQ(st.qm()))?;
        out.push(Check::new(
            format!("{path}.sum_squares"),
            Rational::int(lhs as i64) == rhs,
            format!("Σ dim² = {lhs}, q^(2d_e) = {rhs}"),
        ));
    }
    if matches!(family, Family::SplitTorus(_) | Family::TorusZ2) && block.pair.h == "1" {
        let mut sum = 0;
        for t in 0..st.num_forms() {
            sum += order_of(st, t, Some("T"))?;
        }
        let pi0 = if family == Family::TorusZ2 { 2 } else { 1 };
        let want = Rational::new(sum as i64, pi0);
        out.push(Check::new(
            format!("{path}.packet_count"),
            Rational::int(packets.len() as i64) == want,
            format!("{} packets, (1/|Π_0|)·Σ|T^(tF)| = {want}", packets.len()),
        ));
    }
    out.push(Check::new(
        format!("{path}.nonempty_packets"),
        packets.iter().all(|p| !p.members.is_empty()),
        "a packet parameter has no members",
    ));
    Ok(out)
}

/// One packet with its trace functions, transition matrix and verdicts.
#[derive(Clone, Debug)]
pub struct LPacketReport {
    pub pair: String,
    pub param: LParam,
    pub path: String,
    pub members: Vec<IrrepId>,
    pub degrees: Vec<u64>,
    pub trace: Vec<TraceFunction>,
    /// Labels of the double of Π_0' carried by the trace functions.
    pub labels: Vec<String>,
    pub dim_m: u64,
    pub dim_plus: Vec<Rational>,
    /// ⟨T_C, χ_W⟩ with unit-norm T_C; rows C, columns W.
    pub s_tilde: Vec<Vec<Cyclo>>,
    pub s_plus: Vec<Vec<Cyclo>>,
    pub checks: Vec<Check>,
}

pub fn packet_path(pair: &str, x: &LParam) -> String {
    if x.0.is_empty() {
        format!("packet.{pair}")
    } else {
        format!("packet.{pair}{}", x.describe())
    }
}

fn mat_mul_adjoint(a: &[Vec<Cyclo>]) -> Vec<Vec<Cyclo>> {
    a.iter()
        .map(|r| {
            a.iter()
                .map(|s| r.iter().zip(s).fold(Cyclo::zero(), |acc, (x, y)| acc.add_ref(&x.mul_ref(&y.conj()))))
                .collect()
        })
        .collect()
}

fn is_scalar_identity(m: &[Vec<Cyclo>], c: u64) -> bool {
    m.iter().enumerate().all(|(i, r)| {
        r.iter().enumerate().all(|(j, v)| if i == j { *v == Cyclo::from_int(c as i64) } else { v.is_zero() })
    })
}

/// Column permutation π with a[i][π(j)] = r_i·c_j·b[i][j] for roots of unity
/// r_i, c_j, when one exists.
pub fn match_up_to_phases(a: &[Vec<Cyclo>], b: &[Vec<Cyclo>]) -> Option<Vec<usize>> {
    let n = b.len();
    if a.len() != n || a.iter().chain(b).any(|r| r.len() != n) {
        return None;
    }
    if n == 0 {
        return Some(vec![]);
    }
    let ratio = |x: &Cyclo, y: &Cyclo| x.root_of_unity_ratio(y).map(|(m, k)| Cyclo::root_of_unity(m, k as i64));
    'start: for w0 in 0..n {
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            match ratio(&a[i][w0], &b[i][0]) {
                Some(r) => rows.push(r),
                None => continue 'start,
            }
        }
        let mut perm = vec![w0];
        let mut used = vec![false; n];
        used[w0] = true;
        for j in 1..n {
            let found = (0..n).find(|&w| {
                if used[w] {
                    return false;
                }
                let scaled: Vec<Cyclo> = (0..n).map(|i| rows[i].mul_ref(&b[i][j])).collect();
                match ratio(&a[0][w], &scaled[0]) {
                    Some(c) => (0..n).all(|i| a[i][w] == c.mul_ref(&scaled[i])),
                    None => false,
                }
            });
            match found {
                Some(w) => {
                    used[w] = true;
                    perm.push(w);
                }
                None => continue 'start,
            }
        }
        return Some(perm);
    }
    None
}

/// S̃ = ⟨T_C, χ_W⟩ and S⁺ = q^{dim G − d_e}·√dim M·⟨q^{d_e − dim G}·T_C, χ_W⟩,
/// the second inner product taken against trace functions rescaled to the
/// norm q^{d_e − dim G} of the sheaf-theoretic normalization.
pub fn transition_and_crossed_s(
    st: &Setting,
    inv: &BlockInvariants,
    pair: &AdmissiblePairSpec,
    packet: &Packet,
) -> Result<LPacketReport, LPacketError> {
    let path = packet_path(&pair.name, &packet.param);
    let datum: PacketDatum = packet_datum(st, pair, &packet.param)?;
    let trace = packet_trace_functions(st, pair, &packet.param)?;
    let dim_m = datum.modular.global_dim();
    let root = sqrt_exact(dim_m)?;
    let qm = st.qm();
    let mut checks = Vec::new();

    let members = &packet.members;
    let (fixed, nt, nw) = (datum.fixed.len(), trace.len(), members.len());
    checks.push(Check::new(
        format!("{path}.count"),
        fixed == nt && nt == nw,
        format!("{nw} members, {nt} trace functions, {fixed} fixed labels"),
    ));

    let mut s_tilde = Vec::with_capacity(nt);
    let mut off_packet = true;
    for tc in &trace {
        let coeffs = st.space.decompose(&tc.f)?;
        for (form, row) in coeffs.iter().enumerate() {
            for (chi, v) in row.iter().enumerate() {
                if !v.is_zero() && !members.contains(&IrrepId { form, chi }) {
                    off_packet = false;
                }
            }
        }
        s_tilde.push(members.iter().map(|w| coeffs[w.form][w.chi].clone()).collect::<Vec<_>>());
    }
    checks.push(Check::new(
        format!("{path}.block_diagonal"),
        off_packet,
        "a trace function pairs with an irreducible outside the packet",
    ));
    checks.push(Check::new(
        format!("{path}.smatrix.unitary"),
        nt == nw && is_scalar_identity(&mat_mul_adjoint(&s_tilde), 1),
        "S̃·S̃* ≠ I",
    ));

    let scale_down = half_power(qm, inv.two_d_e - 2 * inv.dim_g as i64).ok_or(LPacketError::NeedsSqrtQ(qm))?;
    let scale_up = half_power(qm, 2 * inv.dim_g as i64 - inv.two_d_e).ok_or(LPacketError::NeedsSqrtQ(qm))?;
    let factor = &scale_up * &Rational::int(root as i64);
    let s_plus: Vec<Vec<Cyclo>> =
        s_tilde.iter().map(|r| r.iter().map(|v| v.scale(&scale_down).scale(&factor)).collect()).collect();
    checks.push(Check::new(
        format!("{path}.smatrix.crossed_norm"),
        nt == nw && is_scalar_identity(&mat_mul_adjoint(&s_plus), dim_m),
        format!("S⁺·S̄⁺ᵀ ≠ {dim_m}·I"),
    ));
    checks.push(Check::new(
        format!("{path}.smatrix.integral"),
        s_plus.iter().flatten().all(|v| v.is_algebraic_integer()),
        "an entry of S⁺ is not an algebraic integer",
    ));
    let unit = datum.fixed.iter().position(|&l| l == 0);
    checks.push(Check::new(
        format!("{path}.smatrix.unit_row"),
        unit.is_some_and(|u| s_plus[u].iter().all(|v| !v.is_zero())),
        "the unit row of S⁺ has a zero entry",
    ));
    if datum.frobenius.iter().enumerate().all(|(i, &j)| i == j) {
        let s = &datum.modular.s;
        let restricted: Vec<Vec<Cyclo>> =
            datum.fixed.iter().map(|&i| datum.fixed.iter().map(|&j| s[i][j].clone()).collect()).collect();
        checks.push(Check::new(
            format!("{path}.smatrix.modular_match"),
            match_up_to_phases(&s_plus, &restricted).is_some(),
            "S⁺ differs from the S-matrix of the double by more than row and column phases",
        ));
    }

    let dims = dim_plus(st, inv, pair, members, root)?;
    checks.push(Check::new(
        format!("{path}.dim.positive_integer"),
        dims.iter().all(|d| d.is_integer() && d.is_positive()),
        format!("dim⁺ = [{}]", dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")),
    ));
    let sum = dims.iter().fold(Rational::int(0), |acc, d| &acc + &(d * d));
    checks.push(Check::new(
        format!("{path}.dim.sum_squares"),
        sum == Rational::int(dim_m as i64),
        format!("Σ (dim⁺)² = {sum}, dim M = {dim_m}"),
    ));

    Ok(LPacketReport {
        pair: pair.name.clone(),
        param: packet.param.clone(),
        path,
        degrees: members.iter().map(|&w| degree(st, w)).collect(),
        members: members.clone(),
        labels: datum.fixed.iter().map(|&l| datum.modular.labels[l].clone()).collect(),
        trace,
        dim_m,
        dim_plus: dims,
        s_tilde,
        s_plus,
        checks,
    })
}

fn join<T: ToString>(xs: &[T]) -> String {
    format!("[{}]", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

impl LPacketReport {
    /// Human lines, values and checks; matrices only when `matrices`.
    pub fn report(&self, matrices: bool) -> Report {
        let mut r = Report::new();
        r.line(format!(
            "{}: {} member(s) of degree {}, labels {}",
            self.path,
            self.members.len(),
            join(&self.degrees),
            join(&self.labels)
        ));
        r.value(format!("{}.members", self.path), join(&self.members));
        r.value(format!("{}.degrees", self.path), join(&self.degrees));
        r.value(format!("{}.dim_m", self.path), self.dim_m.to_string());
        r.value(format!("{}.dim_plus", self.path), join(&self.dim_plus));
        if matrices {
            for (name, m) in [("St", &self.s_tilde), ("S", &self.s_plus)] {
                for (i, row) in m.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        r.value(format!("{}.{name}[{i}][{j}]", self.path), v.serialize());
                    }
                }
            }
        }
        r.checks(self.checks.iter().cloned());
        r
    }
}

/// Everything about one block: its invariants, packets and packet reports.
#[derive(Clone, Debug)]
pub struct BlockAnalysis {
    pub invariants: BlockInvariants,
    pub packets: Vec<Packet>,
    pub reports: Vec<LPacketReport>,
    pub checks: Vec<Check>,
}

pub fn analyze_block(st: &Setting, block: &Block) -> Result<BlockAnalysis, LPacketError> {
    let invariants = invariants_of_block(st.family(), &block.pair)?;
    let packets = partition_packets(st, block)?;
    let checks = structural_checks(st, &invariants, block, &packets)?;
    let reports = packets
        .par_iter()
        .map(|p| transition_and_crossed_s(st, &invariants, &block.pair, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BlockAnalysis { invariants, packets, reports, checks })
}

/// Block values and checks, in pair order.
pub fn block_report(st: &Setting, part: &BlockPartition) -> Report {
    let mut r = Report::new();
    for b in &part.blocks {
        let degrees: Vec<u64> = b.members.iter().map(|&w| degree(st, w)).collect();
        r.line(format!("block {}: {} irreducible(s), degrees {}", b.pair.name, b.members.len(), join(&degrees)));
        r.value(format!("block.{}.size", b.pair.name), b.members.len().to_string());
        r.value(format!("block.{}.degrees", b.pair.name), join(&degrees));
    }
    r.checks(part.checks.iter().cloned());
    r
}

/// Blocks, packets, dimension and S-matrix checks for a pair list.
pub fn analyze(st: &Setting, pairs: &[AdmissiblePairSpec], matrices: bool) -> Result<Report, LPacketError> {
    let part = partition_blocks(st, pairs)?;
    let mut r = block_report(st, &part);
    let analyses = part.blocks.par_iter().map(|b| analyze_block(st, b)).collect::<Result<Vec<_>, _>>()?;
    for (b, a) in part.blocks.iter().zip(analyses) {
        let inv = a.invariants;
        r.value(format!("block.{}.invariants", b.pair.name), format!("n_e={} tau_e={} d_e={}", inv.n_e, inv.tau_e, inv.d_e()));
        r.value(format!("block.{}.packets", b.pair.name), a.packets.len().to_string());
        r.checks(a.checks);
        for p in &a.reports {
            r.merge(p.report(matrices));
        }
    }
    Ok(r)
}
