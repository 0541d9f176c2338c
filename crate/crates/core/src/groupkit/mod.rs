//! Finite groups of F_q-points of the supported solvable families, their
//! conjugacy structure, pure inner forms, and the Shintani norm map.

mod group;
mod law;
mod norm;

use std::sync::Arc;

pub use group::{ClassPartition, FiniteGroup};
pub use law::{Ambient, Elem, Family, CYCLIC_SLOT};
pub use norm::{frobenius_semidirect, norm_map, norm_of, NormMap};

use crate::ffield::{FieldError, GaloisField};

/// Default enumeration cap on |G(F_{q^m})|.
pub const DEFAULT_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    TooLarge { order: u64, cap: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("unknown subgroup '{name}' for {family}")]
    UnknownSubgroup { name: String, family: &'static str },
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub family: Family,
    pub p: u32,
    pub k: u32,
}

impl GroupSpec {
    pub fn new(family: Family, p: u32, k: u32) -> Self {
        GroupSpec { family, p, k }
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }

    /// Closed-form |G(F_{q^m})|.
    pub fn order_formula(&self, m: u32) -> u64 {
        let qm = self.q().pow(m);
        match self.family {
            Family::BorelSl3 => (qm - 1).pow(2) * qm.pow(3),
            Family::SplitTorus(r) => (qm - 1).pow(r as u32),
            Family::HeisenbergU3 => qm.pow(3),
            Family::Mu3U3 => {
                let mu = if qm % 3 == 1 { 3 } else { 1 };
                mu * qm.pow(3)
            }
            Family::TorusZ2 => 2 * (qm - 1),
        }
    }

    pub fn ambient(&self, m: u32) -> Result<Arc<Ambient>, GroupError> {
        let field = Arc::new(GaloisField::new(self.p, self.k * m)?);
        Ok(Arc::new(Ambient::new(self.family, field, self.k)))
    }
}

/// G(F_{q^m}) = G^{F^m}, with F acting through `amb.frob`.
pub fn build_group(spec: &GroupSpec, m: u32, cap: u64) -> Result<FiniteGroup, GroupError> {
    let order = spec.order_formula(m);
    if order > cap {
        return Err(GroupError::TooLarge { order, cap });
    }
    let amb = spec.ambient(m)?;
    let elems: Vec<Elem> = amb.enumerate_all().into_iter().filter(|x| amb.frob(x, m) == *x).collect();
    Ok(FiniteGroup::from_elements(amb, elems))
}

/// Subgroup names available for a family.
pub fn subgroup_names(family: Family) -> &'static [&'static str] {
    match family {
        Family::BorelSl3 => &[
            "B", "T", "U", "Z", "H", "T12", "T23", "T13", "mu3", "T12U", "T23U", "T13U", "mu3U", "T13H", "1",
        ],
        Family::SplitTorus(_) => &["T", "1"],
        Family::HeisenbergU3 => &["U", "Z", "H", "1"],
        Family::Mu3U3 => &["G", "U", "Z", "H", "mu3", "1"],
        Family::TorusZ2 => &["G", "T", "1"],
    }
}

/// The named subgroup of `g`, cut out by its coordinate predicate.
pub fn named_subgroup(g: &FiniteGroup, name: &str) -> Result<FiniteGroup, GroupError> {
    let f = g.amb.field.clone();
    let family = g.amb.family;
    let err = || GroupError::UnknownSubgroup { name: name.to_string(), family: family.name() };
    if name == "1" {
        let id = g.amb.identity();
        return Ok(g.subgroup(move |e| *e == id));
    }
    let pred: Box<dyn Fn(&Elem) -> bool> = match family {
        Family::BorelSl3 => {
            let unip = |e: &Elem| e[0] == 1 && e[1] == 1;
            let diag = |e: &Elem| e[2] == 0 && e[3] == 0 && e[4] == 0;
            let f1 = f.clone();
            let t13 = move |e: &Elem| f1.mul(f1.mul(e[0], e[0]), e[1]) == 1;
            let f2 = f.clone();
            let t23 = move |e: &Elem| f2.mul(e[0], f2.mul(e[1], e[1])) == 1;
            let f3 = f.clone();
            let mu3 = move |e: &Elem| e[0] == e[1] && f3.pow(e[0], 3) == 1;
            match name {
                "B" => Box::new(|_| true),
                "T" => Box::new(diag),
                "U" => Box::new(unip),
                "Z" => Box::new(move |e| unip(e) && e[2] == 0 && e[3] == 0),
                "H" => Box::new(move |e| unip(e) && e[3] == 0),
                "T12" => Box::new(move |e| diag(e) && e[0] == e[1]),
                "T23" => Box::new(move |e| diag(e) && t23(e)),
                "T13" => Box::new(move |e| diag(e) && t13(e)),
                "mu3" => Box::new(move |e| diag(e) && mu3(e)),
                "T12U" => Box::new(|e| e[0] == e[1]),
                "T23U" => Box::new(t23),
                "T13U" => Box::new(t13),
                "mu3U" => Box::new(mu3),
                "T13H" => Box::new(move |e| t13(e) && e[3] == 0),
                _ => return Err(err()),
            }
        }
        Family::SplitTorus(_) => match name {
            "T" => Box::new(|_| true),
            _ => return Err(err()),
        },
        Family::HeisenbergU3 => match name {
            "U" => Box::new(|_| true),
            "Z" => Box::new(|e| e[0] == 0 && e[1] == 0),
            "H" => Box::new(|e| e[1] == 0),
            _ => return Err(err()),
        },
        Family::Mu3U3 => match name {
            "G" => Box::new(|_| true),
            "U" => Box::new(|e| e[0] == 0),
            "Z" => Box::new(|e| e[0] == 0 && e[1] == 0 && e[2] == 0),
            "H" => Box::new(|e| e[0] == 0 && e[2] == 0),
            "mu3" => Box::new(|e| e[1] == 0 && e[2] == 0 && e[3] == 0),
            _ => return Err(err()),
        },
        Family::TorusZ2 => match name {
            "G" => Box::new(|_| true),
            "T" => Box::new(|e| e[1] == 0),
            _ => return Err(err()),
        },
    };
    Ok(g.subgroup(pred))
}

/// Dimensions (dim, dim of a maximal torus) of a named subgroup as an
/// algebraic group.
pub fn subgroup_dims(family: Family, name: &str) -> Option<(u32, u32)> {
    if name == "1" {
        return Some((0, 0));
    }
    let d = match (family, name) {
        (Family::BorelSl3, _) => match name {
            "B" => (5, 2),
            "T" => (2, 2),
            "U" => (3, 0),
            "Z" => (1, 0),
            "H" => (2, 0),
            "T12" | "T23" | "T13" => (1, 1),
            "mu3" => (0, 0),
            "T12U" | "T23U" | "T13U" => (4, 1),
            "mu3U" => (3, 0),
            "T13H" => (3, 1),
            _ => return None,
        },
        (Family::SplitTorus(r), "T") => (r as u32, r as u32),
        (Family::HeisenbergU3, "U") => (3, 0),
        (Family::HeisenbergU3 | Family::Mu3U3, "Z") => (1, 0),
        (Family::HeisenbergU3 | Family::Mu3U3, "H") => (2, 0),
        (Family::Mu3U3, "G" | "U") => (3, 0),
        (Family::Mu3U3, "mu3") => (0, 0),
        (Family::TorusZ2, "G" | "T") => (1, 1),
        _ => return None,
    };
    Some(d)
}

/// One pure inner form G^{tF}.
#[derive(Debug)]
pub struct PureInnerForm {
    /// Representative of the class in H^1(F, Π_0), as an element of Π_0.
    pub label: u32,
    /// A lift t of the label to G.
    pub t: Elem,
    pub group: FiniteGroup,
}

impl PureInnerForm {
    /// The twisted Frobenius x ↦ t·F(x)·t^{-1}.
    pub fn frob(&self, x: &Elem) -> Elem {
        let a = &self.group.amb;
        a.conj(&self.t, &a.frob(x, 1))
    }
}

/// Twisted classes of the component group Π_0 under F, as representatives.
pub fn component_h1(spec: &GroupSpec) -> Vec<u32> {
    match spec.family {
        Family::Mu3U3 => {
            // i ~ i + j(1 - q) in Z/3
            let shift = ((1 + 3 * spec.q() - spec.q()) % 3) as u32;
            if shift == 0 {
                vec![0, 1, 2]
            } else {
                vec![0]
            }
        }
        // Z/2 with trivial F-action
        Family::TorusZ2 => vec![0, 1],
        _ => vec![0],
    }
}

/// F-twisted classes of G(F_{q^m}) together with the pure inner forms of G^F.
pub fn twisted_classes_and_forms(
    spec: &GroupSpec,
    g: &FiniteGroup,
    cap: u64,
) -> Result<(ClassPartition, Vec<PureInnerForm>), GroupError> {
    let twisted = g.frobenius_twisted_classes();
    Ok((twisted, pure_inner_forms(spec, cap)?))
}

/// The groups G^{tF} for t over H^1(F, Π_0).
pub fn pure_inner_forms(spec: &GroupSpec, cap: u64) -> Result<Vec<PureInnerForm>, GroupError> {
    let mut out = Vec::new();
    for label in component_h1(spec) {
        let (t, m) = match spec.family {
            Family::Mu3U3 => ([label, 0, 0, 0, 0, 0], 1),
            // G^{sF} has T-part μ_{q+1}, which lives in F_{q^2}
            Family::TorusZ2 if label == 1 => ([1, 1, 0, 0, 0, 0], 2),
            _ => (spec.ambient(1)?.identity(), 1),
        };
        let bound = spec.order_formula(m);
        if bound > cap {
            return Err(GroupError::TooLarge { order: bound, cap });
        }
        let amb = spec.ambient(m)?;
        let elems: Vec<Elem> = amb
            .enumerate_all()
            .into_iter()
            .filter(|x| amb.conj(&t, &amb.frob(x, 1)) == *x)
            .collect();
        let group = FiniteGroup::from_elements(amb, elems);
        out.push(PureInnerForm { label, t, group });
    }
    Ok(out)
}
