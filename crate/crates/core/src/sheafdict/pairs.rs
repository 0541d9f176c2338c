//! Admissible pair specifications, their character data, and the shipped
//! pair lists.

use crate::exactnum::Rational;
use crate::ffield::GaloisField;
use crate::groupkit::{Elem, Family};
use crate::Cyclo;

/// Multiplicative character datum N on H: an Artin–Schreier part
/// x ↦ ψ(Tr(Σ λ_i·u_i)) on the unipotent coordinates u = (a, b, c) and a
/// Kummer part t ↦ ζ^{j·log t} on the torus coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharDatum {
    /// (unipotent coordinate 0..3, λ as a field code).
    pub additive: Vec<(usize, u32)>,
    /// (torus coordinate, j), read as ζ_{Q-1}^{j·log t} over F_Q.
    pub kummer: Vec<(usize, i64)>,
}

impl CharDatum {
    pub fn trivial() -> Self {
        CharDatum { additive: vec![], kummer: vec![] }
    }

    pub fn additive(terms: &[(usize, u32)]) -> Self {
        CharDatum { additive: terms.to_vec(), kummer: vec![] }
    }

    /// (ψ exponent in Z/p, Kummer exponent in Z/(Q-1)) at x.
    pub fn exponents(&self, family: Family, f: &GaloisField, x: &Elem) -> (u32, u64) {
        let u = unipotent_coords(family, f, x);
        let mut s = 0;
        for &(i, lam) in &self.additive {
            s = f.add(s, f.mul(lam, u[i]));
        }
        let t = torus_coords(family, x);
        let n = f.order() as i64;
        let mut e = 0i64;
        for &(i, j) in &self.kummer {
            e += j * f.log(t[i]).expect("torus coordinates are units") as i64;
        }
        (f.trace_to_prime(s), e.rem_euclid(n) as u64)
    }

    pub fn value(&self, family: Family, f: &GaloisField, x: &Elem) -> Cyclo {
        let (a, k) = self.exponents(family, f, x);
        let mut v = Cyclo::root_of_unity(f.p, a as i64);
        if k != 0 {
            v = v.mul_ref(&Cyclo::root_of_unity(f.order(), k as i64));
        }
        v
    }

    pub fn describe(&self) -> String {
        if self.additive.is_empty() && self.kummer.is_empty() {
            return "trivial".into();
        }
        let names = ["a", "b", "c"];
        let mut parts: Vec<String> = self.additive.iter().map(|&(i, l)| format!("{l}*{}", names[i])).collect();
        parts.extend(self.kummer.iter().map(|&(i, j)| format!("kummer(t{}^{j})", i + 1)));
        parts.join("+")
    }
}

/// Coordinates (a, b, c) of the unipotent part u of x = t·u.
pub fn unipotent_coords(family: Family, f: &GaloisField, x: &Elem) -> [u32; 3] {
    match family {
        Family::BorelSl3 => {
            let (i1, i2) = (f.inv(x[0]), f.inv(x[1]));
            [f.mul(x[2], i1), f.mul(x[3], i2), f.mul(x[4], i1)]
        }
        Family::HeisenbergU3 => [x[0], x[1], x[2]],
        Family::Mu3U3 => [x[1], x[2], x[3]],
        Family::SplitTorus(_) | Family::TorusZ2 => [0; 3],
    }
}

/// Diagonal coordinates of x.
pub fn torus_coords(family: Family, x: &Elem) -> Vec<u32> {
    match family {
        Family::BorelSl3 => vec![x[0], x[1]],
        Family::SplitTorus(r) => x[..r].to_vec(),
        Family::TorusZ2 => vec![x[0]],
        Family::HeisenbergU3 | Family::Mu3U3 => vec![],
    }
}

/// The component group of G' relevant to a packet, as a geometric group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Trivial,
    /// μ_3 by scalar matrices (or the μ_3 factor); trivial in characteristic 3.
    Mu3,
    /// Z/2 acting on the torus by inversion.
    Z2,
}

/// The torus T' of G' and which torus coordinate each factor reads.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusSpec {
    pub label: String,
    pub slots: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissiblePairSpec {
    pub name: String,
    /// Subgroup H.
    pub h: String,
    pub datum: CharDatum,
    /// Normalizer G' of the pair.
    pub normalizer: String,
    /// The connected subgroup T'·H' of G' carrying packet characters, where
    /// H' ⊇ H is a G'-stable polarization on which N extends.
    pub kernel: String,
    pub torus: Option<TorusSpec>,
    pub components: ComponentKind,
}

impl AdmissiblePairSpec {
    /// The pair (1, trivial) with the given normalizer.
    pub fn trivial(family: Family) -> Self {
        let (norm, kernel, torus, comp) = match family {
            Family::TorusZ2 => ("G", "T", Some(torus("T", &[0])), ComponentKind::Z2),
            Family::SplitTorus(r) => ("T", "T", Some(torus("T", &(0..r).collect::<Vec<_>>())), ComponentKind::Trivial),
            Family::BorelSl3 => ("B", "B", Some(torus("T", &[0, 1])), ComponentKind::Trivial),
            Family::HeisenbergU3 => ("U", "U", None, ComponentKind::Trivial),
            Family::Mu3U3 => ("G", "U", None, ComponentKind::Mu3),
        };
        AdmissiblePairSpec {
            name: "trivial".into(),
            h: "1".into(),
            datum: CharDatum::trivial(),
            normalizer: norm.into(),
            kernel: kernel.into(),
            torus,
            components: comp,
        }
    }
}

fn torus(label: &str, slots: &[usize]) -> TorusSpec {
    TorusSpec { label: label.into(), slots: slots.to_vec() }
}

fn pair(
    name: &str,
    h: &str,
    datum: CharDatum,
    normalizer: &str,
    kernel: &str,
    t: Option<TorusSpec>,
    components: ComponentKind,
) -> AdmissiblePairSpec {
    AdmissiblePairSpec {
        name: name.into(),
        h: h.into(),
        datum,
        normalizer: normalizer.into(),
        kernel: kernel.into(),
        torus: t,
        components,
    }
}

/// The five Borel cases, by the shape of the generic U-character.
pub fn borel_pairs() -> Vec<AdmissiblePairSpec> {
    use ComponentKind::*;
    vec![
        pair("case1", "U", CharDatum::trivial(), "B", "B", Some(torus("T", &[0, 1])), Trivial),
        pair("case2", "U", CharDatum::additive(&[(0, 1)]), "T12U", "T12U", Some(torus("T12", &[0])), Trivial),
        pair("case3", "U", CharDatum::additive(&[(1, 1)]), "T23U", "T23U", Some(torus("T23", &[1])), Trivial),
        pair("case4", "U", CharDatum::additive(&[(0, 1), (1, 1)]), "mu3U", "U", None, Mu3),
        pair("case5", "Z", CharDatum::additive(&[(2, 1)]), "T13U", "T13H", Some(torus("T13", &[0])), Trivial),
    ]
}

/// Every linear character of U/Z and every central character of U_3, with
/// λ ranging over the field codes 0..q of F_q.
fn heisenberg_like(q: u32, normalizer: &str, comp: ComponentKind) -> Vec<AdmissiblePairSpec> {
    let mut out = Vec::new();
    for x in 0..q {
        for y in 0..q {
            out.push(pair(
                &format!("lin({x},{y})"),
                "U",
                CharDatum::additive(&[(0, x), (1, y)]),
                normalizer,
                "U",
                None,
                comp,
            ));
        }
    }
    for l in 1..q {
        out.push(pair(&format!("central({l})"), "Z", CharDatum::additive(&[(2, l)]), normalizer, "H", None, comp));
    }
    out
}

/// A complete list of pairs for the family over F_q, q = p^k: every
/// irreducible of every pure inner form lies in exactly one of their blocks.
pub fn shipped_pairs(family: Family, q: u64) -> Vec<AdmissiblePairSpec> {
    match family {
        Family::BorelSl3 => borel_pairs(),
        Family::SplitTorus(_) | Family::TorusZ2 => vec![AdmissiblePairSpec::trivial(family)],
        Family::HeisenbergU3 => heisenberg_like(q as u32, "U", ComponentKind::Trivial),
        Family::Mu3U3 => heisenberg_like(q as u32, "G", ComponentKind::Mu3),
    }
}

/// An L-parameter: a character of T'^{tF} as a point of (Q/Z)^{dim T'},
/// each coordinate in [0, 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LParam(pub Vec<Rational>);

impl LParam {
    pub fn trivial(dim: usize) -> Self {
        LParam(vec![Rational::int(0); dim])
    }

    pub fn describe(&self) -> String {
        if self.0.is_empty() {
            return "()".into();
        }
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }

    /// Reduce into [0, 1).
    pub fn reduce(x: &Rational) -> Rational {
        x.fract()
    }

    pub fn negate(&self) -> Self {
        LParam(self.0.iter().map(|x| Self::reduce(&(Rational::int(1) - x.clone()))).collect())
    }

    pub fn times(&self, k: i64) -> Self {
        LParam(self.0.iter().map(|x| Self::reduce(&(x.clone() * Rational::int(k)))).collect())
    }

    pub fn is_two_torsion(&self) -> bool {
        self.times(2).0.iter().all(|x| *x == Rational::int(0))
    }
}
