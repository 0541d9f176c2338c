//! Command execution: each command delegates to one module pipeline and
//! returns a report; errors carry the module name.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::{Command, RunConfig};
use crate::chartab::ChartabError;
use crate::ffield::FieldError;
use crate::groupkit::{Family, GroupError};
use crate::lpacket::{analyze, block_report, packet_path, partition_blocks, partition_packets, LPacketError};
use crate::metricmod::{double_abelian, modular_checks, pointed_modular, random_metric_group, FiniteAbelianGroup, ModularData};
use crate::report::{Check, Report};
use crate::sheafdict::{packet_datum, DictError, Setting};
use crate::shintani::{shintani_report, ShintaniError};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunError {
    pub module: &'static str,
    pub msg: String,
    /// Enumeration caps, field limits and unsupported requests, as opposed
    /// to a pipeline that ran and found a violation.
    pub limit: bool,
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.module, self.msg)
    }
}

impl std::error::Error for RunError {}

fn group_limit(e: &GroupError) -> bool {
    matches!(e, GroupError::TooLarge { .. } | GroupError::Field(FieldError::TooLarge { .. }) | GroupError::Unsupported(_))
}

fn dict_limit(e: &DictError) -> bool {
    match e {
        DictError::Group(g) => group_limit(g),
        DictError::Unsupported(_) => true,
        _ => false,
    }
}

fn lpacket_limit(e: &LPacketError) -> bool {
    match e {
        LPacketError::Dict(d) => dict_limit(d),
        LPacketError::NeedsSqrtQ(_) => true,
        _ => false,
    }
}

impl From<DictError> for RunError {
    fn from(e: DictError) -> Self {
        RunError { module: "sheafdict", limit: dict_limit(&e), msg: e.to_string() }
    }
}

impl From<LPacketError> for RunError {
    fn from(e: LPacketError) -> Self {
        RunError { module: "lpacket", limit: lpacket_limit(&e), msg: e.to_string() }
    }
}

impl From<ChartabError> for RunError {
    fn from(e: ChartabError) -> Self {
        RunError { module: "chartab", limit: false, msg: e.to_string() }
    }
}

impl From<ShintaniError> for RunError {
    fn from(e: ShintaniError) -> Self {
        let limit = match &e {
            ShintaniError::Group(g) => group_limit(g),
            ShintaniError::Dict(d) => dict_limit(d),
            ShintaniError::LPacket(l) => lpacket_limit(l),
            ShintaniError::BaseSetting => true,
            _ => false,
        };
        RunError { module: "shintani", limit, msg: e.to_string() }
    }
}

fn usage(module: &'static str, msg: impl Into<String>) -> RunError {
    RunError { module, msg: msg.into(), limit: true }
}

/// Pad each column to its widest cell.
fn aligned(rows: &[Vec<String>]) -> Vec<String> {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let width: Vec<usize> =
        (0..cols).map(|j| rows.iter().filter_map(|r| r.get(j)).map(|c| c.chars().count()).max().unwrap_or(0)).collect();
    rows.iter()
        .map(|r| {
            let cells: Vec<String> =
                r.iter().enumerate().map(|(j, c)| format!("{c}{}", " ".repeat(width[j] - c.chars().count()))).collect();
            cells.join("  ").trim_end().to_string()
        })
        .collect()
}

fn base_setting(cfg: &RunConfig) -> Result<Setting, RunError> {
    Ok(Setting::new(cfg.spec, 1, cfg.cap)?)
}

fn chartable(cfg: &RunConfig) -> Result<Report, RunError> {
    let mut r = Report::new();
    for m in cfg.degrees.0..=cfg.degrees.1 {
        let st = Setting::new(cfg.spec, m, cfg.cap)?;
        for (t, form) in st.space.forms.iter().enumerate() {
            let tag = format!("chartable.m{m}.form{}", form.label);
            let (g, table) = (&form.group, &form.table);
            r.line(format!(
                "{} over F_{}, degree {m}, form {}: order {}, {} classes",
                cfg.spec.family.name(),
                cfg.spec.q(),
                st.form_label(t),
                g.order(),
                table.num_classes()
            ));
            let mut rows = vec![std::iter::once("deg".to_string())
                .chain((0..table.num_classes()).map(|c| format!("c{c}")))
                .collect::<Vec<_>>()];
            rows.push(std::iter::once("size".to_string()).chain(g.class_sizes().iter().map(u64::to_string)).collect());
            for (chi, d) in table.degrees.iter().enumerate() {
                rows.push(std::iter::once(d.to_string()).chain(table.row(chi).iter().map(|v| v.serialize())).collect());
            }
            r.text.extend(aligned(&rows));
            let degrees: Vec<String> = table.degrees.iter().map(u64::to_string).collect();
            r.value(format!("{tag}.order"), g.order().to_string());
            r.value(format!("{tag}.classes"), table.num_classes().to_string());
            r.value(format!("{tag}.degrees"), degrees.join(","));
            for (chi, row) in table.export().into_iter().enumerate() {
                r.value(format!("{tag}.row[{chi}]"), row);
            }
            let orth = table.verify_rows().and_then(|_| table.verify_columns());
            r.check(Check::new(
                format!("{tag}.orthogonality"),
                orth.is_ok(),
                orth.err().map(|e| e.to_string()).unwrap_or_default(),
            ));
            r.check(Check::new(
                format!("{tag}.sum_squares"),
                table.sum_of_squares() == g.order() as u64,
                format!("Σ deg² = {}, |G| = {}", table.sum_of_squares(), g.order()),
            ));
        }
    }
    Ok(r)
}

fn blocks(cfg: &RunConfig) -> Result<Report, RunError> {
    let st = base_setting(cfg)?;
    let part = partition_blocks(&st, &cfg.pairs)?;
    Ok(block_report(&st, &part))
}

fn packets(cfg: &RunConfig, matrices: bool) -> Result<Report, RunError> {
    let st = base_setting(cfg)?;
    Ok(analyze(&st, &cfg.pairs, matrices)?)
}

fn shintani_m_max(cfg: &RunConfig) -> Option<u32> {
    cfg.m_max.or(match cfg.spec.family {
        Family::SplitTorus(_) => Some(6),
        Family::BorelSl3 if cfg.spec.q() == 2 => Some(3),
        _ => None,
    })
}

fn shintani(cfg: &RunConfig) -> Result<Report, RunError> {
    let Some(m_max) = shintani_m_max(cfg) else {
        return Err(usage("shintani", "no default degree bound for this group; set m_max in [commands]"));
    };
    let st = base_setting(cfg)?;
    Ok(shintani_report(&st, &cfg.pairs, m_max, cfg.cap)?)
}

fn modular_block(r: &mut Report, tag: &str, d: &ModularData<Rational>) {
    r.value(format!("{tag}.rank"), d.rank().to_string());
    r.value(format!("{tag}.dim"), d.global_dim().to_string());
    r.checks(modular_checks(d).into_iter().map(|c| Check {
        name: format!("{tag}.{}", c.name.strip_prefix("modular.").unwrap_or(&c.name)),
        ..c
    }));
}

fn group_tag(orders: &[u32]) -> String {
    if orders.is_empty() {
        return "1".into();
    }
    orders.iter().map(|n| format!("Z{n}")).collect::<Vec<_>>().join("x")
}

fn modular(cfg: &RunConfig) -> Result<Report, RunError> {
    let mut r = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..cfg.samples {
        let m = random_metric_group::<Rational>(&mut rng, cfg.max_order);
        let d = pointed_modular(&m).map_err(|e| RunError { module: "metricmod", msg: e.to_string(), limit: false })?;
        r.line(format!("pointed sample {i}: |K| = {}", d.rank()));
        modular_block(&mut r, &format!("modular.pointed{i}"), &d);
    }
    for orders in [vec![], vec![2], vec![3], vec![4], vec![2, 2]] {
        let d = double_abelian::<Rational>(&FiniteAbelianGroup::new(orders.clone()));
        modular_block(&mut r, &format!("modular.double.{}", group_tag(&orders)), &d);
    }
    // Frobenius on the packet data of every packet of the configured group
    let st = base_setting(cfg)?;
    let part = partition_blocks(&st, &cfg.pairs)?;
    for b in &part.blocks {
        for p in partition_packets(&st, b)? {
            let path = packet_path(&b.pair.name, &p.param);
            let datum = packet_datum(&st, &b.pair, &p.param)?;
            let tag = format!("modular.{path}");
            modular_block(&mut r, &tag, &datum.modular);
            r.value(format!("{tag}.fixed"), datum.fixed.len().to_string());
            r.check(Check::new(
                format!("{tag}.fixed_points"),
                datum.fixed.len() == p.members.len(),
                format!("{} Frobenius-fixed labels, {} irreducibles", datum.fixed.len(), p.members.len()),
            ));
        }
    }
    Ok(r)
}

/// Run one command. `verify-all` runs every pipeline that applies to the
/// configured group and skips Shintani descent when no degree bound is known.
pub fn run_command(cfg: &RunConfig, cmd: Command) -> Result<Report, RunError> {
    match cmd {
        Command::Chartable => chartable(cfg),
        Command::Blocks => blocks(cfg),
        Command::Packets => packets(cfg, false),
        Command::Smatrix => packets(cfg, true),
        Command::Shintani => shintani(cfg),
        Command::Modular => modular(cfg),
        Command::VerifyAll => {
            let mut r = chartable(cfg)?;
            r.merge(packets(cfg, true)?);
            r.merge(modular(cfg)?);
            if cfg.spec.family.is_connected() && shintani_m_max(cfg).is_some() {
                r.merge(shintani(cfg)?);
            } else {
                r.line("shintani: skipped (no degree bound for this group)");
            }
            Ok(r)
        }
    }
}
