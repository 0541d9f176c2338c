//! Metric groups, pointed modular data and Drinfeld doubles of finite
//! abelian groups.

use rand::Rng;
use thiserror::Error;

use crate::exactnum::{gcd_u64, Cyclotomic, Rational, Scalar};
use crate::report::Check;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("bilinear form is degenerate: b({0}, -) is trivial")]
    Degenerate(String),
    #[error("θ is not a quadratic form: {0}")]
    NotQuadratic(String),
    #[error("modular identity violated: {identity} ({detail})")]
    Violated { identity: String, detail: String },
    #[error("map is not an automorphism of the fusion rules: {0}")]
    NotAutomorphism(String),
    #[error("automorphism does not preserve θ at label {0}")]
    ThetaNotPreserved(String),
}

/// Z/d_1 × … × Z/d_r with elements as tuples, indexed lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    pub orders: Vec<u32>,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u32>) -> Self {
        assert!(orders.iter().all(|&d| d >= 1), "cyclic factors must have positive order");
        FiniteAbelianGroup { orders }
    }

    pub fn trivial() -> Self {
        Self::new(Vec::new())
    }

    pub fn cyclic(n: u32) -> Self {
        Self::new(vec![n])
    }

    pub fn order(&self) -> usize {
        self.orders.iter().map(|&d| d as usize).product()
    }

    pub fn element(&self, mut i: usize) -> Vec<u32> {
        let mut v = vec![0; self.orders.len()];
        for (slot, &d) in v.iter_mut().zip(&self.orders).rev() {
            *slot = (i % d as usize) as u32;
            i /= d as usize;
        }
        v
    }

    pub fn index(&self, v: &[u32]) -> usize {
        v.iter().zip(&self.orders).fold(0, |acc, (&x, &d)| acc * d as usize + (x % d) as usize)
    }

    pub fn elements(&self) -> Vec<Vec<u32>> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn add(&self, a: usize, c: usize) -> usize {
        let (x, y) = (self.element(a), self.element(c));
        let s: Vec<u32> = x.iter().zip(&y).zip(&self.orders).map(|((a, c), d)| (a + c) % d).collect();
        self.index(&s)
    }

    pub fn neg(&self, a: usize) -> usize {
        let x = self.element(a);
        let s: Vec<u32> = x.iter().zip(&self.orders).map(|(a, d)| (d - a) % d).collect();
        self.index(&s)
    }

    pub fn product(&self, other: &Self) -> Self {
        Self::new(self.orders.iter().chain(&other.orders).copied().collect())
    }

    pub fn label(&self, a: usize) -> String {
        let v: Vec<String> = self.element(a).iter().map(|x| x.to_string()).collect();
        format!("({})", v.join(","))
    }
}

/// A finite abelian group with a quadratic form θ valued in roots of unity.
#[derive(Clone, Debug)]
pub struct MetricGroup<Q: Scalar = Rational> {
    pub group: FiniteAbelianGroup,
    pub theta: Vec<Cyclotomic<Q>>,
    pub nondegenerate: bool,
}

impl<Q: Scalar> MetricGroup<Q> {
    /// Checks θ(−a) = θ(a), root-of-unity values and biadditivity of b.
    pub fn new(group: FiniteAbelianGroup, theta: Vec<Cyclotomic<Q>>) -> Result<Self, MetricError> {
        let n = group.order();
        if theta.len() != n {
            return Err(MetricError::NotQuadratic(format!("{} values for a group of order {n}", theta.len())));
        }
        if theta[0] != Cyclotomic::one() {
            return Err(MetricError::NotQuadratic("θ(0) ≠ 1".into()));
        }
        for a in 0..n {
            if theta[a].root_of_unity_ratio(&Cyclotomic::one()).is_none() {
                return Err(MetricError::NotQuadratic(format!("θ{} is not a root of unity", group.label(a))));
            }
            if theta[group.neg(a)] != theta[a] {
                return Err(MetricError::NotQuadratic(format!("θ(−a) ≠ θ(a) at {}", group.label(a))));
            }
        }
        let mut m = MetricGroup { group, theta, nondegenerate: false };
        let b = m.bilinear_table();
        for a in 0..n {
            for a2 in 0..n {
                let s = m.group.add(a, a2);
                for c in 0..n {
                    if b[s][c] != b[a][c].mul_ref(&b[a2][c]) {
                        return Err(MetricError::NotQuadratic(format!(
                            "b is not additive at {}, {}, {}",
                            m.group.label(a),
                            m.group.label(a2),
                            m.group.label(c)
                        )));
                    }
                }
            }
        }
        m.nondegenerate = (1..n).all(|a| b[a].iter().any(|v| *v != Cyclotomic::one()));
        Ok(m)
    }

    /// b(a,c) = θ(a+c)·θ(a)^{-1}·θ(c)^{-1}; θ values are unimodular, so
    /// inverses are conjugates.
    pub fn bilinear(&self, a: usize, c: usize) -> Cyclotomic<Q> {
        let s = self.group.add(a, c);
        self.theta[s].mul_ref(&self.theta[a].conj()).mul_ref(&self.theta[c].conj())
    }

    pub fn bilinear_table(&self) -> Vec<Vec<Cyclotomic<Q>>> {
        let n = self.group.order();
        (0..n).map(|a| (0..n).map(|c| self.bilinear(a, c)).collect()).collect()
    }

    /// First element whose pairing with everything is trivial, if any.
    pub fn radical_witness(&self) -> Option<usize> {
        let n = self.group.order();
        (1..n).find(|&a| (0..n).all(|c| self.bilinear(a, c) == Cyclotomic::one()))
    }
}

/// Cyclic forms θ(a) = ζ_{2n}^{u·a²}, which are well defined on Z/n when
/// u·n is even; nondegenerate when gcd(u, n) = 1 (n even) or gcd(u/2, n) = 1.
pub fn cyclic_metric<Q: Scalar>(n: u32, u: u32) -> Result<MetricGroup<Q>, MetricError> {
    if n % 2 == 1 && u % 2 == 1 {
        return Err(MetricError::NotQuadratic(format!("ζ_{}^(u a²) with odd u is not defined on Z/{n}", 2 * n)));
    }
    let theta = (0..n as u64).map(|a| Cyclotomic::root_of_unity(2 * n, (u as u64 * a * a % (2 * n as u64)) as i64)).collect();
    MetricGroup::new(FiniteAbelianGroup::cyclic(n), theta)
}

/// Orthogonal sum of metric groups.
pub fn orthogonal_sum<Q: Scalar>(a: &MetricGroup<Q>, b: &MetricGroup<Q>) -> Result<MetricGroup<Q>, MetricError> {
    let group = a.group.product(&b.group);
    let nb = b.group.order();
    let theta = (0..group.order()).map(|i| a.theta[i / nb].mul_ref(&b.theta[i % nb])).collect();
    MetricGroup::new(group, theta)
}

/// A random orthogonal sum of nondegenerate cyclic forms with |K| ≤ max_order.
pub fn random_metric_group<Q: Scalar>(rng: &mut impl Rng, max_order: u32) -> MetricGroup<Q> {
    let mut m = MetricGroup::new(FiniteAbelianGroup::trivial(), vec![Cyclotomic::one()]).expect("trivial form");
    loop {
        let room = max_order / m.group.order() as u32;
        if room < 2 || (m.group.order() > 1 && rng.gen_bool(0.4)) {
            return m;
        }
        let n = rng.gen_range(2..=room);
        let units: Vec<u32> = if n % 2 == 0 {
            (1..2 * n).filter(|&u| u % 2 == 1 && gcd(u, n) == 1).collect()
        } else {
            (1..n).filter(|&v| gcd(v, n) == 1).map(|v| 2 * v).collect()
        };
        let u = units[rng.gen_range(0..units.len())];
        let c = cyclic_metric(n, u).expect("well-defined cyclic form");
        m = orthogonal_sum(&m, &c).expect("orthogonal sum of quadratic forms");
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    gcd_u64(a as u64, b as u64) as u32
}

/// Modular data with unnormalized S (S_{0a} = FPdim a).
#[derive(Clone, Debug)]
pub struct ModularData<Q: Scalar = Rational> {
    pub labels: Vec<String>,
    /// fusion[a][b][c] = N_{ab}^c
    pub fusion: Vec<Vec<Vec<u32>>>,
    pub s: Vec<Vec<Cyclotomic<Q>>>,
    pub t: Vec<Cyclotomic<Q>>,
    pub fp_dims: Vec<u64>,
    /// Whether the global dimension must be a perfect square (packet data).
    pub square_dim: bool,
}

impl<Q: Scalar> ModularData<Q> {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn global_dim(&self) -> u64 {
        self.fp_dims.iter().map(|d| d * d).sum()
    }

    /// Labeled exact matrices.
    pub fn export(&self) -> Vec<String> {
        let mut out = vec![format!("labels {}", self.labels.join(" "))];
        for (i, row) in self.s.iter().enumerate() {
            let r: Vec<String> = row.iter().map(|v| v.serialize()).collect();
            out.push(format!("S {} | {}", self.labels[i], r.join(" ")));
        }
        for (i, v) in self.t.iter().enumerate() {
            out.push(format!("T {} | {}", self.labels[i], v.serialize()));
        }
        out
    }
}

pub fn pointed_modular<Q: Scalar>(m: &MetricGroup<Q>) -> Result<ModularData<Q>, MetricError> {
    if let Some(a) = m.radical_witness() {
        return Err(MetricError::Degenerate(m.group.label(a)));
    }
    let n = m.group.order();
    let fusion = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let s = m.group.add(a, b);
                    (0..n).map(|c| u32::from(c == s)).collect()
                })
                .collect()
        })
        .collect();
    Ok(ModularData {
        labels: (0..n).map(|a| m.group.label(a)).collect(),
        fusion,
        s: m.bilinear_table(),
        t: m.theta.clone(),
        fp_dims: vec![1; n],
        square_dim: false,
    })
}

/// K = A × Â with θ(a, χ) = χ(a); characters of A are exponent tuples,
/// χ_e(a) = Π ζ_{d_i}^{e_i·a_i}.
pub fn double_metric<Q: Scalar>(a: &FiniteAbelianGroup) -> MetricGroup<Q> {
    let k = a.product(a);
    let na = a.order();
    let theta = (0..k.order()).map(|i| pairing(a, i / na, i % na)).collect();
    MetricGroup::new(k, theta).expect("the canonical form on A × Â is quadratic")
}

/// χ_e(x) for x, e given by their indices in A.
pub fn pairing<Q: Scalar>(a: &FiniteAbelianGroup, x: usize, e: usize) -> Cyclotomic<Q> {
    let (xv, ev) = (a.element(x), a.element(e));
    let mut z = Cyclotomic::one();
    for ((xi, ei), &d) in xv.iter().zip(&ev).zip(&a.orders) {
        z = z.mul_ref(&Cyclotomic::root_of_unity(d, (xi * ei % d) as i64));
    }
    z
}

pub fn double_abelian<Q: Scalar>(a: &FiniteAbelianGroup) -> ModularData<Q> {
    let m = double_metric(a);
    let mut d = pointed_modular(&m).expect("the double of an abelian group is nondegenerate");
    let na = a.order();
    d.labels = (0..na * na).map(|i| format!("{};{}", a.label(i / na), a.label(i % na))).collect();
    d.square_dim = true;
    d
}

/// Every modular identity, one verdict each.
pub fn modular_checks<Q: Scalar>(d: &ModularData<Q>) -> Vec<Check> {
    let n = d.rank();
    let dim = d.global_dim();
    let dim_c = Cyclotomic::<Q>::from_int(dim as i64);
    let mut out = Vec::new();

    let sym = (0..n).all(|a| (0..n).all(|b| d.s[a][b] == d.s[b][a]));
    out.push(Check::new("modular.s_symmetric", sym, "S ≠ Sᵀ"));

    let bad_t = (0..n).find(|&a| d.t[a].root_of_unity_ratio(&Cyclotomic::one()).is_none());
    out.push(Check::new(
        "modular.t_roots_of_unity",
        bad_t.is_none(),
        bad_t.map(|a| format!("T at {} is not a root of unity", d.labels[a])).unwrap_or_default(),
    ));

    let mut unitary = None;
    'outer: for a in 0..n {
        for b in 0..n {
            let mut acc = Cyclotomic::zero();
            for x in 0..n {
                acc = acc.add_ref(&d.s[a][x].mul_ref(&d.s[b][x].conj()));
            }
            let expect = if a == b { dim_c.clone() } else { Cyclotomic::zero() };
            if acc != expect {
                unitary = Some(format!("(S S̄ᵀ)[{a}][{b}] = {}", acc.serialize()));
                break 'outer;
            }
        }
    }
    out.push(Check::new("modular.s_unitary", unitary.is_none(), unitary.unwrap_or_default()));

    // S² = D·C with C_{ab} = N_{ab}^0
    let mut sq = None;
    'outer2: for a in 0..n {
        for b in 0..n {
            let mut acc = Cyclotomic::zero();
            for x in 0..n {
                acc = acc.add_ref(&d.s[a][x].mul_ref(&d.s[x][b]));
            }
            let expect = dim_c.scale(&Q::from_i64(d.fusion[a][b][0] as i64));
            if acc != expect {
                sq = Some(format!("(S²)[{a}][{b}] = {}", acc.serialize()));
                break 'outer2;
            }
        }
    }
    out.push(Check::new("modular.s_squared_conjugation", sq.is_none(), sq.unwrap_or_default()));

    out.push(verlinde_check(d, &dim_c));

    let fp_ok = d.fp_dims.iter().enumerate().all(|(a, &f)| f > 0 && d.s[0][a] == Cyclotomic::from_int(f as i64))
        && d.s[0][0] == Cyclotomic::one();
    out.push(Check::new("modular.fp_dims_positive_integers", fp_ok, "S_{0a} ≠ FPdim a"));

    if d.square_dim {
        let r = (dim as f64).sqrt().round() as u64;
        out.push(Check::new("modular.dim_perfect_square", r * r == dim, format!("dim = {dim}")));
    }
    out
}

fn verlinde_check<Q: Scalar>(d: &ModularData<Q>, dim_c: &Cyclotomic<Q>) -> Check {
    let n = d.rank();
    let Ok(dim_inv) = dim_c.inv() else {
        return Check::new("modular.verlinde", false, "zero global dimension");
    };
    let s0_inv: Vec<Cyclotomic<Q>> = match (0..n).map(|x| d.s[0][x].inv()).collect() {
        Ok(v) => v,
        Err(_) => return Check::new("modular.verlinde", false, "vanishing entry in the unit row"),
    };
    for a in 0..n {
        for b in 0..n {
            let ab: Vec<Cyclotomic<Q>> = (0..n).map(|x| d.s[a][x].mul_ref(&d.s[b][x]).mul_ref(&s0_inv[x])).collect();
            for c in 0..n {
                let mut acc = Cyclotomic::zero();
                for x in 0..n {
                    acc = acc.add_ref(&ab[x].mul_ref(&d.s[c][x].conj()));
                }
                let v = acc.mul_ref(&dim_inv);
                if v != Cyclotomic::from_int(d.fusion[a][b][c] as i64) {
                    return Check::new(
                        "modular.verlinde",
                        false,
                        format!("N_({},{})^{} = {} by Verlinde", d.labels[a], d.labels[b], d.labels[c], v.serialize()),
                    );
                }
            }
        }
    }
    Check::pass("modular.verlinde")
}

/// All checks, or the first violated identity.
pub fn verify_modular<Q: Scalar>(d: &ModularData<Q>) -> Result<Vec<Check>, MetricError> {
    let checks = modular_checks(d);
    if let Some(c) = checks.iter().find(|c| !c.pass) {
        return Err(MetricError::Violated { identity: c.name.clone(), detail: c.detail.clone() });
    }
    Ok(checks)
}

/// Labels fixed by the permutation `phi`, after checking that it preserves
/// fusion and T.
pub fn autoequiv_fixed_points<Q: Scalar>(d: &ModularData<Q>, phi: &[usize]) -> Result<Vec<usize>, MetricError> {
    let n = d.rank();
    let mut seen = vec![false; n];
    if phi.len() != n || phi.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
        return Err(MetricError::NotAutomorphism("not a permutation of the labels".into()));
    }
    for a in 0..n {
        if d.t[phi[a]] != d.t[a] {
            return Err(MetricError::ThetaNotPreserved(d.labels[a].clone()));
        }
        for b in 0..n {
            for c in 0..n {
                if d.fusion[phi[a]][phi[b]][phi[c]] != d.fusion[a][b][c] {
                    return Err(MetricError::NotAutomorphism(format!(
                        "N_({},{})^{} changes",
                        d.labels[a], d.labels[b], d.labels[c]
                    )));
                }
            }
        }
    }
    Ok((0..n).filter(|&a| phi[a] == a).collect())
}

/// The action of an automorphism φ of A on the labels of its double:
/// (a, χ) ↦ (φ(a), χ∘φ^{-1}). `phi` lists φ on the indices of A.
pub fn double_automorphism(a: &FiniteAbelianGroup, phi: &[usize]) -> Vec<usize> {
    let na = a.order();
    // χ∘φ^{-1} is the unique e' with χ_{e'}(φ x) = χ_e(x) for all x
    let chi_perm: Vec<usize> = (0..na)
        .map(|e| {
            (0..na)
                .find(|&e2| (0..na).all(|x| pairing::<Rational>(a, phi[x], e2) == pairing::<Rational>(a, x, e)))
                .unwrap_or(e)
        })
        .collect();
    (0..na * na).map(|i| phi[i / na] * na + chi_perm[i % na]).collect()
}

/// x ↦ u·x on a cyclic group Z/n (an automorphism when gcd(u, n) = 1).
pub fn cyclic_power_map(n: u32, u: i64) -> Vec<usize> {
    (0..n as i64).map(|x| (x * u).rem_euclid(n as i64) as usize).collect()
}
