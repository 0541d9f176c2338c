//! Shintani descent from F-stable characters of G^{F^m} to class functions
//! on G^F, Shintani matrices per packet, periods, and the comparison of
//! stabilized Shintani bases with trace functions.

use rayon::prelude::*;

use crate::chartab::{character_table, stable_characters, CharacterTable, ChartabError, ClassFn, StableChar};
use crate::exactnum::{compare_up_to_root_of_unity, Rational};
use crate::groupkit::{
    build_group, frobenius_semidirect, named_subgroup, norm_map, Family, FiniteGroup, GroupError, GroupSpec, NormMap,
};
use crate::lpacket::{analyze_block, packet_path, partition_blocks, BlockInvariants, IrrepId, LPacketError, Packet};
use crate::report::{Check, Report};
use crate::sheafdict::{packet_trace_functions, AdmissiblePairSpec, DictError, Setting, TraceFunction};
use crate::Cyclo;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ShintaniError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Chartab(#[from] ChartabError),
    #[error(transparent)]
    Dict(#[from] DictError),
    #[error(transparent)]
    LPacket(#[from] LPacketError),
    #[error("degree {m}: no twisted class of G^(F^m) has norm in class {class} of G^F")]
    NoPreimage { m: u32, class: usize },
    #[error("the base setting must be a single connected group at degree 1")]
    BaseSetting,
}

/// Everything at one degree m: G^{F^m}, Γ_m, the norm map and the images
/// Sh_m(W) of the F-stable irreducibles W. The table of G^{F^m} itself is
/// never built; W and its extension come from the table of Γ_m.
#[derive(Debug)]
pub struct Descent {
    pub m: u32,
    pub gm: FiniteGroup,
    pub gamma: FiniteGroup,
    pub gamma_table: CharacterTable<Rational>,
    pub norm: NormMap,
    /// F-stable irreducibles of G^{F^m}.
    pub stable: Vec<StableChar<Rational>>,
    pub images: Vec<ClassFn<Rational>>,
    pub checks: Vec<Check>,
}

/// Sh_m(W)(β) = χ̃_W(x·σ) for any x whose norm is conjugate to β, where χ̃_W
/// is the chosen extension of W to Γ_m.
pub fn shintani_descent(
    base: &Setting,
    gamma: &FiniteGroup,
    gamma_table: &CharacterTable<Rational>,
    norm: &NormMap,
    w: &StableChar<Rational>,
) -> Result<ClassFn<Rational>, ShintaniError> {
    let m = norm.m;
    let g1 = base.group(0);
    let mut vals = Vec::with_capacity(g1.num_classes());
    for c in 0..g1.num_classes() {
        let t = norm.preimage[c].ok_or(ShintaniError::NoPreimage { m, class: c })?;
        let x = norm.twisted.reps[t as usize];
        vals.push(w.ext.value_at(gamma, gamma_table, x).clone());
    }
    Ok(base.space.on_form(0, vals)?)
}

fn gram_is_identity(space: &Setting, fs: &[ClassFn<Rational>]) -> Result<bool, ShintaniError> {
    for (i, a) in fs.iter().enumerate() {
        for (j, b) in fs.iter().enumerate().skip(i) {
            let v = space.space.inner(a, b)?;
            if v != if i == j { Cyclo::one() } else { Cyclo::zero() } {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_base(base: &Setting) -> Result<(), ShintaniError> {
    if base.m != 1 || base.num_forms() != 1 || !base.family().is_connected() {
        return Err(ShintaniError::BaseSetting);
    }
    Ok(())
}

/// Build degree m and descend every F-stable irreducible.
pub fn descend(base: &Setting, m: u32, cap: u64) -> Result<Descent, ShintaniError> {
    check_base(base)?;
    let gm = build_group(&base.spec, m, cap)?;
    let gamma = frobenius_semidirect(&gm, m);
    let gamma_table = character_table::<Rational>(&gamma)?;
    let norm = norm_map(&base.spec, &gm, base.group(0), m)?;
    let stable = stable_characters(&gm, &gamma, &gamma_table, m)?;
    let images = stable
        .par_iter()
        .map(|w| shintani_descent(base, &gamma, &gamma_table, &norm, w))
        .collect::<Result<Vec<_>, _>>()?;
    let checks = vec![
        Check::new(format!("shintani.m{m}.norm_bijective"), norm.is_bijective(), "norm map is not a bijection"),
        Check::new(format!("shintani.m{m}.norm_well_defined"), norm.well_defined, "norm depends on the representative"),
        Check::new(
            format!("shintani.m{m}.stable_count"),
            stable.len() == base.group(0).num_classes(),
            format!("{} F-stable irreducibles, {} classes of G^F", stable.len(), base.group(0).num_classes()),
        ),
        Check::new(format!("shintani.m{m}.orthonormal"), gram_is_identity(base, &images)?, "Sh_m images are not orthonormal"),
    ];
    Ok(Descent { m, gm, gamma, gamma_table, norm, stable, images, checks })
}

/// A packet of G^F together with the data of its block.
#[derive(Clone, Debug)]
pub struct BasePacket {
    pub pair: AdmissiblePairSpec,
    pub invariants: BlockInvariants,
    pub packet: Packet,
    pub path: String,
}

/// Blocks and packets of G^F for a pair list, flattened in pair order.
pub fn base_packets(base: &Setting, pairs: &[AdmissiblePairSpec]) -> Result<Vec<BasePacket>, ShintaniError> {
    let part = partition_blocks(base, pairs)?;
    let mut out = Vec::new();
    for b in &part.blocks {
        let a = analyze_block(base, b)?;
        for p in a.packets {
            out.push(BasePacket {
                pair: b.pair.clone(),
                invariants: a.invariants,
                path: packet_path(&b.pair.name, &p.param),
                packet: p,
            });
        }
    }
    Ok(out)
}

/// ⟨Sh_m(W), χ_V⟩ for W ∈ Irrep_f(G, F^m)^F and V ∈ Irrep_f(G, F).
#[derive(Clone, Debug)]
pub struct ShintaniMatrix {
    pub m: u32,
    pub path: String,
    /// Positions in `Descent::stable`.
    pub rows: Vec<usize>,
    pub cols: Vec<IrrepId>,
    pub entries: Vec<Vec<Cyclo>>,
    pub checks: Vec<Check>,
}

/// The base packet containing the support of each image, or None when the
/// support meets several packets.
fn image_packets(base: &Setting, packets: &[BasePacket], d: &Descent) -> Result<Vec<Option<usize>>, ShintaniError> {
    d.images
        .par_iter()
        .map(|f| {
            let coeffs = base.space.decompose(f)?;
            let support: Vec<IrrepId> = coeffs
                .iter()
                .enumerate()
                .flat_map(|(form, row)| {
                    row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(chi, _)| IrrepId { form, chi })
                })
                .collect();
            Ok(packets.iter().position(|p| support.iter().all(|w| p.packet.members.contains(w))))
        })
        .collect()
}

/// Shintani matrices of every base packet at degree m, after checking that
/// each image pairs only with irreducibles of a single packet of G^F.
pub fn shintani_matrices(
    base: &Setting,
    packets: &[BasePacket],
    d: &Descent,
) -> Result<(Vec<ShintaniMatrix>, Vec<Check>), ShintaniError> {
    let m = d.m;
    let owner = image_packets(base, packets, d)?;
    let mut checks = vec![Check::new(
        format!("shintani.m{m}.packet_compatible"),
        owner.iter().all(|o| o.is_some()),
        "an Sh_m image pairs with irreducibles of several packets",
    )];

    let mut out = Vec::new();
    for (pi, bp) in packets.iter().enumerate() {
        let rows: Vec<usize> = (0..d.images.len()).filter(|&i| owner[i] == Some(pi)).collect();
        let cols = bp.packet.members.clone();
        let mut entries = Vec::with_capacity(rows.len());
        for &i in &rows {
            let coeffs = base.space.decompose(&d.images[i])?;
            entries.push(cols.iter().map(|w| coeffs[w.form][w.chi].clone()).collect::<Vec<_>>());
        }
        let path = format!("shintani.m{m}.{}", bp.path);
        let square = rows.len() == cols.len();
        let unitary = square
            && entries.iter().enumerate().all(|(i, r)| {
                entries.iter().enumerate().all(|(j, s)| {
                    let v = r.iter().zip(s).fold(Cyclo::zero(), |acc, (x, y)| acc.add_ref(&x.mul_ref(&y.conj())));
                    v == if i == j { Cyclo::one() } else { Cyclo::zero() }
                })
            });
        let mc = vec![
            Check::new(format!("{path}.square"), square, format!("{} rows, {} columns", rows.len(), cols.len())),
            Check::new(format!("{path}.unitary"), unitary, "Shintani matrix is not unitary"),
        ];
        checks.extend(mc.iter().cloned());
        out.push(ShintaniMatrix { m, path, rows, cols, entries, checks: mc });
    }
    Ok((out, checks))
}

/// ζ with a = ζ·b for a root of unity ζ.
pub fn classfn_ratio(a: &ClassFn<Rational>, b: &ClassFn<Rational>) -> Option<Cyclo> {
    let pos = b.comps.iter().flatten().position(|v| !v.is_zero())?;
    let av = a.comps.iter().flatten().nth(pos)?;
    let bv = b.comps.iter().flatten().nth(pos)?;
    let z = compare_up_to_root_of_unity(av, bv)?;
    let ok = a.comps.iter().flatten().zip(b.comps.iter().flatten()).all(|(x, y)| *x == z.mul_ref(y));
    ok.then_some(z)
}

/// Whether two families agree up to a bijection and per-element roots of unity.
pub fn bases_match(a: &[ClassFn<Rational>], b: &[ClassFn<Rational>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|f| match (0..b.len()).find(|&j| !used[j] && classfn_ratio(f, &b[j]).is_some()) {
        Some(j) => {
            used[j] = true;
            true
        }
        None => false,
    })
}

#[derive(Clone, Debug)]
pub struct AlmostCharacters {
    pub path: String,
    /// Smallest d such that bases at degrees m ≡ m' (mod d) agree, among the
    /// d for which at least one such pair was compared.
    pub m0: Option<u32>,
    /// (m, Shintani basis at m matches the trace functions), for m0 | m.
    pub matches: Vec<(u32, bool)>,
    pub checks: Vec<Check>,
}

/// Period detection over `bases` (indexed by m = 1, 2, ...) and comparison
/// with the unit-norm trace functions, which equal (q^{dim G}/q^{d_e})·T_C in
/// the sheaf-theoretic normalization.
pub fn find_period_and_almost_characters(
    path: &str,
    bases: &[Vec<ClassFn<Rational>>],
    trace: &[TraceFunction],
) -> AlmostCharacters {
    let m_max = bases.len() as u32;
    let agree = |m: u32, n: u32| bases_match(&bases[m as usize - 1], &bases[n as usize - 1]);
    let m0 = (1..m_max).find(|&d| {
        (1..=m_max).all(|m| (m + d..=m_max).step_by(d as usize).all(|n| agree(m, n)))
    });
    let tf: Vec<ClassFn<Rational>> = trace.iter().map(|t| t.f.clone()).collect();
    let mut matches = Vec::new();
    let mut checks = Vec::new();
    if let Some(d) = m0 {
        checks.push(Check::pass(format!("almost.{path}.period")));
        for m in (d..=m_max).step_by(d as usize) {
            let ok = bases_match(&bases[m as usize - 1], &tf);
            matches.push((m, ok));
            checks.push(Check::new(
                format!("almost.{path}.m{m}"),
                ok,
                "Shintani basis differs from the trace functions beyond roots of unity",
            ));
        }
    }
    AlmostCharacters { path: path.into(), m0, matches, checks }
}

/// |T^{F^m}|, |T^F| and |ker N| for the norm t ↦ t·F(t)···F^{m-1}(t) on
/// the maximal torus.
pub fn torus_norm_counts(spec: &GroupSpec, m: u32, cap: u64) -> Result<(u64, u64, u64), ShintaniError> {
    let torus = |deg: u32| -> Result<FiniteGroup, ShintaniError> {
        let g = crate::groupkit::build_group(spec, deg, cap)?;
        Ok(match spec.family {
            Family::SplitTorus(_) => g,
            _ => named_subgroup(&g, "T")?,
        })
    };
    let tm = torus(m)?;
    let t1 = torus(1)?;
    let amb = &tm.amb;
    let one = amb.identity();
    let mut ker = 0;
    let mut image_ok = true;
    for x in &tm.elems {
        let mut n = one;
        for i in 0..m {
            n = amb.mul(&n, &amb.frob(x, i));
        }
        if n == one {
            ker += 1;
        }
        image_ok &= amb.frob(&n, 1) == n;
    }
    if !image_ok {
        return Err(ShintaniError::Group(GroupError::Unsupported("torus norm leaves T^F".into())));
    }
    Ok((tm.order() as u64, t1.order() as u64, ker))
}

/// The full pipeline for degrees 1..=m_max: descent, Shintani matrices,
/// periods and almost characters, as one report.
pub fn shintani_report(
    base: &Setting,
    pairs: &[AdmissiblePairSpec],
    m_max: u32,
    cap: u64,
) -> Result<Report, ShintaniError> {
    check_base(base)?;
    let packets = base_packets(base, pairs)?;
    let descents = (1..=m_max).into_par_iter().map(|m| descend(base, m, cap)).collect::<Result<Vec<_>, _>>()?;
    let mut r = Report::new();
    let mut per_packet: Vec<Vec<Vec<ClassFn<Rational>>>> = vec![Vec::new(); packets.len()];
    for d in &descents {
        r.checks(d.checks.iter().cloned());
        let (mats, checks) = shintani_matrices(base, &packets, d)?;
        r.checks(checks);
        for (pi, mat) in mats.iter().enumerate() {
            r.value(format!("{}.size", mat.path), mat.rows.len().to_string());
            per_packet[pi].push(mat.rows.iter().map(|&i| d.images[i].clone()).collect());
        }
        if base.family() != Family::HeisenbergU3 && d.m > 1 {
            let (tm, t1, ker) = torus_norm_counts(&base.spec, d.m, cap)?;
            r.check(Check::new(
                format!("shintani.m{}.torus_kernel", d.m),
                tm == t1 * ker,
                format!("|T^(F^m)| = {tm}, |T^F| = {t1}, |ker| = {ker}"),
            ));
        }
    }
    for (bp, bases) in packets.iter().zip(&per_packet) {
        let trace = packet_trace_functions(base, &bp.pair, &bp.packet.param)?;
        let ac = find_period_and_almost_characters(&bp.path, bases, &trace);
        let m0 = ac.m0.map_or("inconclusive".to_string(), |d| d.to_string());
        r.line(format!("{}: period candidate {m0}", bp.path));
        r.value(format!("almost.{}.m0", bp.path), m0);
        r.checks(ac.checks);
    }
    Ok(r)
}
