//! Line-oriented run configuration: `[section]` headers, `key = value`
//! entries, lists by key repetition, `#` comments.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::ffield::is_prime;
use crate::groupkit::{Family, GroupSpec, DEFAULT_CAP};
use crate::sheafdict::{shipped_pairs, AdmissiblePairSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    /// 1-based; 0 when the problem is not tied to one line.
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "config: {}", self.msg)
        } else {
            write!(f, "config line {}: {}", self.line, self.msg)
        }
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError { line, msg: msg.into() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    Chartable,
    Blocks,
    Packets,
    Smatrix,
    Shintani,
    Modular,
    VerifyAll,
}

impl Command {
    pub const NAMES: [&'static str; 7] = ["chartable", "blocks", "packets", "smatrix", "shintani", "modular", "verify-all"];

    pub fn name(&self) -> &'static str {
        Self::NAMES[*self as usize]
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        use Command::*;
        let all = [Chartable, Blocks, Packets, Smatrix, Shintani, Modular, VerifyAll];
        all.into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command '{s}'; expected one of: {}", Self::NAMES.join(", ")))
    }
}

/// The Frobenius of the split form: q-th power on coordinates, ω ↦ ω^q on μ_3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twist {
    Standard,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub spec: GroupSpec,
    pub twist: Twist,
    /// Pair names as written; empty means the shipped list.
    pub pair_names: Vec<String>,
    pub pairs: Vec<AdmissiblePairSpec>,
    pub commands: Vec<Command>,
    /// Degrees m whose tables `chartable` prints.
    pub degrees: (u32, u32),
    pub m_max: Option<u32>,
    pub cap: u64,
    /// Random metric groups checked by `modular`.
    pub samples: u32,
    pub max_order: u32,
    pub report: Option<PathBuf>,
    pub machine: Option<PathBuf>,
    pub seed: u64,
    pub threads: Option<usize>,
}

const SECTIONS: [(&str, &[&str]); 6] = [
    ("run", &["seed", "threads"]),
    ("group", &["family", "p", "k", "rank"]),
    ("frobenius", &["twist"]),
    ("pairs", &["pair"]),
    ("commands", &["run", "m", "m_max", "cap", "samples", "max_order"]),
    ("output", &["report", "machine"]),
];

const LIST_KEYS: [&str; 2] = ["pair", "run"];

fn parse_num<T: FromStr>(line: usize, key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().or_else(|_| err(line, format!("{key}: expected a non-negative integer, got '{v}'")))
}

/// `a..b` (inclusive) or a single degree.
fn parse_range(line: usize, v: &str) -> Result<(u32, u32), ConfigError> {
    let (a, b) = match v.split_once("..") {
        Some((a, b)) => (parse_num(line, "m", a.trim())?, parse_num(line, "m", b.trim())?),
        None => {
            let a = parse_num(line, "m", v)?;
            (a, a)
        }
    };
    if a == 0 || b < a {
        return err(line, format!("m: '{v}' is not a range a..b with 1 ≤ a ≤ b"));
    }
    Ok((a, b))
}

fn parse_family(line: usize, v: &str, rank: usize) -> Result<Family, ConfigError> {
    Ok(match v {
        "borel-sl3" => Family::BorelSl3,
        "split-torus" => Family::SplitTorus(rank),
        "heisenberg-u3" => Family::HeisenbergU3,
        "mu3-ltimes-u3" => Family::Mu3U3,
        "torus-rtimes-z2" => Family::TorusZ2,
        _ => return err(line, format!("unknown family '{v}'; expected one of: {}", Family::NAMES.join(", "))),
    })
}

/// Parse and validate a configuration.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut section = "run";
    // (key, value, line) per section, in order
    let mut entries: Vec<(&str, &str, &str, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return err(ln, format!("malformed section header '{line}'"));
            };
            let name = name.trim();
            let Some((s, _)) = SECTIONS.iter().find(|(s, _)| *s == name) else {
                let names: Vec<&str> = SECTIONS.iter().map(|(s, _)| *s).collect();
                return err(ln, format!("unknown section '{name}'; expected one of: {}", names.join(", ")));
            };
            section = s;
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return err(ln, format!("expected 'key = value', got '{line}'"));
        };
        let (k, v) = (k.trim(), v.trim());
        let allowed = SECTIONS.iter().find(|(s, _)| *s == section).map(|(_, ks)| *ks).unwrap_or(&[]);
        if !allowed.contains(&k) {
            return err(ln, format!("unknown key '{k}' in [{section}]; expected one of: {}", allowed.join(", ")));
        }
        if v.is_empty() {
            return err(ln, format!("{k}: empty value"));
        }
        if !LIST_KEYS.contains(&k) {
            if let Some(&(_, _, _, first)) = entries.iter().find(|e| e.0 == section && e.1 == k) {
                return err(ln, format!("{k} repeated in [{section}] (first on line {first})"));
            }
        }
        entries.push((section, k, v, ln));
    }
    let get = |s: &str, k: &str| entries.iter().find(|e| e.0 == s && e.1 == k).map(|e| (e.2, e.3));
    let all = |s: &str, k: &str| entries.iter().filter(|e| e.0 == s && e.1 == k).map(|e| (e.2, e.3)).collect::<Vec<_>>();

    let rank = match get("group", "rank") {
        Some((v, ln)) => {
            let r: usize = parse_num(ln, "rank", v)?;
            if !(1..=3).contains(&r) {
                return err(ln, "rank: expected 1, 2 or 3");
            }
            r
        }
        None => 1,
    };
    let Some((fam, fam_ln)) = get("group", "family") else {
        return err(0, "[group] needs a family");
    };
    let family = parse_family(fam_ln, fam, rank)?;
    if let Some((_, ln)) = get("group", "rank") {
        if !matches!(family, Family::SplitTorus(_)) {
            return err(ln, "rank applies to split-torus only");
        }
    }
    let Some((p, p_ln)) = get("group", "p") else {
        return err(0, "[group] needs a characteristic p");
    };
    let p: u32 = parse_num(p_ln, "p", p)?;
    if !is_prime(p) {
        return err(p_ln, format!("p: {p} is not prime"));
    }
    let k = match get("group", "k") {
        Some((v, ln)) => {
            let k: u32 = parse_num(ln, "k", v)?;
            if k == 0 {
                return err(ln, "k: must be at least 1");
            }
            k
        }
        None => 1,
    };
    let spec = GroupSpec::new(family, p, k);

    let twist = match get("frobenius", "twist") {
        None | Some(("standard", _)) => Twist::Standard,
        Some((v, ln)) => return err(ln, format!("twist: unsupported Frobenius '{v}'; expected: standard")),
    };

    let catalog = shipped_pairs(family, spec.q());
    let mut pair_names = Vec::new();
    let mut pairs = Vec::new();
    for (v, ln) in all("pairs", "pair") {
        if v == "shipped" {
            pairs.extend(catalog.iter().cloned());
        } else {
            let Some(pr) = catalog.iter().find(|c| c.name == v) else {
                let names: Vec<&str> = catalog.iter().map(|c| c.name.as_str()).take(12).collect();
                let more = if catalog.len() > 12 { ", ..." } else { "" };
                return err(ln, format!("unknown pair '{v}' for {}; expected 'shipped' or one of: {}{more}", family.name(), names.join(", ")));
            };
            if pairs.iter().any(|q: &AdmissiblePairSpec| q.name == v) {
                return err(ln, format!("pair '{v}' listed twice"));
            }
            pairs.push(pr.clone());
        }
        pair_names.push(v.to_string());
    }
    if pairs.is_empty() {
        pairs = catalog;
    }

    let mut commands = Vec::new();
    for (v, ln) in all("commands", "run") {
        commands.push(v.parse::<Command>().or_else(|e| err(ln, e))?);
    }
    let degrees = match get("commands", "m") {
        Some((v, ln)) => parse_range(ln, v)?,
        None => (1, 1),
    };
    let m_max = match get("commands", "m_max") {
        Some((v, ln)) => {
            let m: u32 = parse_num(ln, "m_max", v)?;
            if m < 2 {
                return err(ln, "m_max: must be at least 2");
            }
            Some(m)
        }
        None => None,
    };
    let cap = match get("commands", "cap") {
        Some((v, ln)) => parse_num(ln, "cap", v)?,
        None => DEFAULT_CAP,
    };
    let samples = match get("commands", "samples") {
        Some((v, ln)) => parse_num(ln, "samples", v)?,
        None => 20,
    };
    let max_order = match get("commands", "max_order") {
        Some((v, ln)) => {
            let n: u32 = parse_num(ln, "max_order", v)?;
            if n == 0 {
                return err(ln, "max_order: must be at least 1");
            }
            n
        }
        None => 16,
    };
    let path = |k: &str| get("output", k).map(|(v, _)| PathBuf::from(v));
    let seed = match get("run", "seed") {
        Some((v, ln)) => parse_num(ln, "seed", v)?,
        None => 0,
    };
    let threads = match get("run", "threads") {
        Some((v, ln)) => {
            let t: usize = parse_num(ln, "threads", v)?;
            if t == 0 {
                return err(ln, "threads: must be at least 1");
            }
            Some(t)
        }
        None => None,
    };
    Ok(RunConfig {
        spec,
        twist,
        pair_names,
        pairs,
        commands,
        degrees,
        m_max,
        cap,
        samples,
        max_order,
        report: path("report"),
        machine: path("machine"),
        seed,
        threads,
    })
}
