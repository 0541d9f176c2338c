//! Coordinate group laws for the supported families.
//!
//! Field coordinates are codes of a single `GaloisField`. The μ_3 component
//! is stored as an exponent i (for ω^i), and the Z/2 component as 0 or 1, so
//! both are defined independently of which field contains the roots of unity.

use std::sync::Arc;

use crate::ffield::GaloisField;

/// Group element coordinates; unused slots are zero.
pub type Elem = [u32; 6];

/// Slot holding the Z/m index in a Frobenius semidirect product.
pub const CYCLIC_SLOT: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Upper triangular matrices of determinant one: (t1, t2, a, b, c).
    BorelSl3,
    /// Diagonal torus G_m^r: (t_1, ..., t_r).
    SplitTorus(usize),
    /// Upper unitriangular 3×3: (a, b, c).
    HeisenbergU3,
    /// μ_3 × U_3: (i, a, b, c).
    Mu3U3,
    /// G_m ⋊ Z/2 with Z/2 acting by inversion: (y, e).
    TorusZ2,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::BorelSl3 => "borel-sl3",
            Family::SplitTorus(_) => "split-torus",
            Family::HeisenbergU3 => "heisenberg-u3",
            Family::Mu3U3 => "mu3-ltimes-u3",
            Family::TorusZ2 => "torus-rtimes-z2",
        }
    }

    pub const NAMES: [&'static str; 5] =
        ["borel-sl3", "split-torus", "heisenberg-u3", "mu3-ltimes-u3", "torus-rtimes-z2"];

    pub fn dim(&self) -> u32 {
        match self {
            Family::BorelSl3 => 5,
            Family::SplitTorus(r) => *r as u32,
            Family::HeisenbergU3 | Family::Mu3U3 => 3,
            Family::TorusZ2 => 1,
        }
    }

    /// Dimension of a maximal torus.
    pub fn torus_dim(&self) -> u32 {
        match self {
            Family::BorelSl3 => 2,
            Family::SplitTorus(r) => *r as u32,
            Family::HeisenbergU3 | Family::Mu3U3 => 0,
            Family::TorusZ2 => 1,
        }
    }

    pub fn is_connected(&self) -> bool {
        !matches!(self, Family::Mu3U3 | Family::TorusZ2)
    }
}

/// A family's law over one field, optionally extended by a cyclic group
/// generated by the Frobenius.
#[derive(Debug)]
pub struct Ambient {
    pub family: Family,
    pub field: Arc<GaloisField>,
    /// q = p^k.
    pub k: u32,
    /// When set, elements carry a Z/m index and σ acts by F.
    pub cyclic: Option<u32>,
}

impl Ambient {
    pub fn new(family: Family, field: Arc<GaloisField>, k: u32) -> Self {
        Ambient { family, field, k, cyclic: None }
    }

    pub fn level(&self) -> u32 {
        self.field.k
    }

    pub fn q(&self) -> u64 {
        (self.field.p as u64).pow(self.k)
    }

    pub fn identity(&self) -> Elem {
        match self.family {
            Family::BorelSl3 => [1, 1, 0, 0, 0, 0],
            Family::SplitTorus(r) => {
                let mut e = [0; 6];
                e[..r].fill(1);
                e
            }
            Family::HeisenbergU3 | Family::Mu3U3 => [0; 6],
            Family::TorusZ2 => [1, 0, 0, 0, 0, 0],
        }
    }

    /// Product in the base family (ignores the cyclic slot).
    fn base_mul(&self, x: &Elem, y: &Elem) -> Elem {
        let f = &*self.field;
        match self.family {
            Family::BorelSl3 => {
                let (t1, t2, a, b, c) = (x[0], x[1], x[2], x[3], x[4]);
                let (s1, s2, a2, b2, c2) = (y[0], y[1], y[2], y[3], y[4]);
                let s3 = f.inv(f.mul(s1, s2));
                [
                    f.mul(t1, s1),
                    f.mul(t2, s2),
                    f.add(f.mul(t1, a2), f.mul(a, s2)),
                    f.add(f.mul(t2, b2), f.mul(b, s3)),
                    f.add(f.add(f.mul(t1, c2), f.mul(a, b2)), f.mul(c, s3)),
                    0,
                ]
            }
            Family::SplitTorus(r) => {
                let mut e = [0; 6];
                for i in 0..r {
                    e[i] = f.mul(x[i], y[i]);
                }
                e
            }
            Family::HeisenbergU3 => {
                [f.add(x[0], y[0]), f.add(x[1], y[1]), f.add(f.add(x[2], y[2]), f.mul(x[0], y[1])), 0, 0, 0]
            }
            Family::Mu3U3 => [
                (x[0] + y[0]) % 3,
                f.add(x[1], y[1]),
                f.add(x[2], y[2]),
                f.add(f.add(x[3], y[3]), f.mul(x[1], y[2])),
                0,
                0,
            ],
            Family::TorusZ2 => {
                let y0 = if x[1] == 1 { f.inv(y[0]) } else { y[0] };
                [f.mul(x[0], y0), (x[1] + y[1]) % 2, 0, 0, 0, 0]
            }
        }
    }

    fn base_inv(&self, x: &Elem) -> Elem {
        let f = &*self.field;
        match self.family {
            Family::BorelSl3 => {
                // inverse of [[t1,a,c],[0,t2,b],[0,0,t3]]
                let (t1, t2, a, b, c) = (x[0], x[1], x[2], x[3], x[4]);
                let t3 = f.inv(f.mul(t1, t2));
                let (i1, i2, i3) = (f.inv(t1), f.inv(t2), f.inv(t3));
                let ia = f.neg(f.mul(f.mul(a, i1), i2));
                let ib = f.neg(f.mul(f.mul(b, i2), i3));
                // c' = (a b - c t2) / (t1 t2 t3) = a b - c t2
                let ic = f.sub(f.mul(a, b), f.mul(c, t2));
                [i1, i2, ia, ib, ic, 0]
            }
            Family::SplitTorus(r) => {
                let mut e = [0; 6];
                for i in 0..r {
                    e[i] = f.inv(x[i]);
                }
                e
            }
            Family::HeisenbergU3 => {
                [f.neg(x[0]), f.neg(x[1]), f.sub(f.mul(x[0], x[1]), x[2]), 0, 0, 0]
            }
            Family::Mu3U3 => {
                [(3 - x[0]) % 3, f.neg(x[1]), f.neg(x[2]), f.sub(f.mul(x[1], x[2]), x[3]), 0, 0]
            }
            Family::TorusZ2 => {
                if x[1] == 1 {
                    *x
                } else {
                    [f.inv(x[0]), 0, 0, 0, 0, 0]
                }
            }
        }
    }

    /// F^j on the base family: field coordinates to the q^j-th power, the μ_3
    /// exponent multiplied by q^j, Z/2 fixed.
    pub fn frob(&self, x: &Elem, j: u32) -> Elem {
        let f = &*self.field;
        let pj = ((self.k as u64 * j as u64) % f.k as u64) as u32;
        let fr = |c: u32| f.frob_p(c, pj);
        let mut e = *x;
        match self.family {
            Family::BorelSl3 => {
                for c in e.iter_mut().take(5) {
                    *c = fr(*c);
                }
            }
            Family::SplitTorus(r) => {
                for c in e.iter_mut().take(r) {
                    *c = fr(*c);
                }
            }
            Family::HeisenbergU3 => {
                for c in e.iter_mut().take(3) {
                    *c = fr(*c);
                }
            }
            Family::Mu3U3 => {
                let qj = crate::ffield::pow_mod(self.q(), j as u64, 3) as u32;
                e[0] = e[0] * qj % 3;
                for c in e.iter_mut().skip(1).take(3) {
                    *c = fr(*c);
                }
            }
            Family::TorusZ2 => e[0] = fr(e[0]),
        }
        e
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        match self.cyclic {
            None => self.base_mul(x, y),
            Some(m) => {
                let i = x[CYCLIC_SLOT];
                let mut r = self.base_mul(x, &self.frob(y, i));
                r[CYCLIC_SLOT] = (i + y[CYCLIC_SLOT]) % m;
                r
            }
        }
    }

    pub fn inv(&self, x: &Elem) -> Elem {
        match self.cyclic {
            None => self.base_inv(x),
            Some(m) => {
                // (x, i)^{-1} = (F^{-i}(x^{-1}), -i)
                let i = x[CYCLIC_SLOT];
                let back = (m - i) % m;
                let mut r = self.frob(&self.base_inv(x), back);
                r[CYCLIC_SLOT] = back;
                r
            }
        }
    }

    pub fn conj(&self, g: &Elem, x: &Elem) -> Elem {
        self.mul(&self.mul(g, x), &self.inv(g))
    }

    /// Every element of the base family with field coordinates in this
    /// field, in coordinate order.
    pub fn enumerate_all(&self) -> Vec<Elem> {
        let f = &*self.field;
        let units: Vec<u32> = (1..f.size).collect();
        let all: Vec<u32> = (0..f.size).collect();
        let mut slots: Vec<&[u32]> = Vec::new();
        let mu3 = [0u32, 1, 2];
        let z2 = [0u32, 1];
        match self.family {
            Family::BorelSl3 => slots.extend([&units[..], &units, &all, &all, &all]),
            Family::SplitTorus(r) => slots.extend(std::iter::repeat_n(&units[..], r)),
            Family::HeisenbergU3 => slots.extend([&all[..], &all, &all]),
            Family::Mu3U3 => slots.extend([&mu3[..], &all, &all, &all]),
            Family::TorusZ2 => slots.extend([&units[..], &z2]),
        }
        let total: usize = slots.iter().map(|s| s.len()).product();
        let mut out = Vec::with_capacity(total);
        let mut idx = vec![0usize; slots.len()];
        for _ in 0..total {
            let mut e = [0u32; 6];
            for (s, &i) in idx.iter().enumerate() {
                e[s] = slots[s][i];
            }
            out.push(e);
            for s in (0..slots.len()).rev() {
                idx[s] += 1;
                if idx[s] < slots[s].len() {
                    break;
                }
                idx[s] = 0;
            }
        }
        out
    }

    /// Number of elements `enumerate_all` would produce.
    pub fn ambient_size(&self) -> u64 {
        let n = self.field.size as u64;
        match self.family {
            Family::BorelSl3 => (n - 1).pow(2) * n.pow(3),
            Family::SplitTorus(r) => (n - 1).pow(r as u32),
            Family::HeisenbergU3 => n.pow(3),
            Family::Mu3U3 => 3 * n.pow(3),
            Family::TorusZ2 => 2 * (n - 1),
        }
    }
}
