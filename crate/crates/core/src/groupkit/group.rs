//! Enumerated finite groups, conjugacy classes and twisted classes.

use std::collections::VecDeque;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::law::{Ambient, Elem};

/// A partition of the elements into orbits, ordered by least element index.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    /// Class index of each element.
    pub of: Vec<u32>,
    /// Least element index in each class.
    pub reps: Vec<u32>,
    pub sizes: Vec<u64>,
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Element indices of each class.
    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut m = vec![Vec::new(); self.len()];
        for (x, &c) in self.of.iter().enumerate() {
            m[c as usize].push(x as u32);
        }
        m
    }
}

#[derive(Debug)]
pub struct FiniteGroup {
    pub amb: Arc<Ambient>,
    pub elems: Vec<Elem>,
    index: FxHashMap<Elem, u32>,
    gens: Vec<u32>,
    classes: ClassPartition,
    /// Class of the inverse of each class.
    inverse_class: Vec<u32>,
    /// Element order of each class representative.
    rep_orders: Vec<u32>,
}

impl FiniteGroup {
    /// Build from a closed set of elements. The identity is moved to index 0
    /// and the rest kept in the given order.
    pub fn from_elements(amb: Arc<Ambient>, mut elems: Vec<Elem>) -> FiniteGroup {
        let id = amb.identity();
        if let Some(pos) = elems.iter().position(|e| *e == id) {
            let e = elems.remove(pos);
            elems.insert(0, e);
        }
        let index: FxHashMap<Elem, u32> = elems.iter().enumerate().map(|(i, e)| (*e, i as u32)).collect();
        let mut g = FiniteGroup {
            amb,
            elems,
            index,
            gens: Vec::new(),
            classes: ClassPartition { of: vec![], reps: vec![], sizes: vec![] },
            inverse_class: vec![],
            rep_orders: vec![],
        };
        g.gens = g.find_generators();
        g.classes = g.orbits(|h, x| {
            let a = &g.amb;
            a.conj(h, x)
        });
        g.inverse_class = g
            .classes
            .reps
            .iter()
            .map(|&r| g.classes.of[g.idx(&g.amb.inv(&g.elems[r as usize])) as usize])
            .collect();
        g.rep_orders = g.classes.reps.iter().map(|&r| g.element_order(r)).collect();
        g
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn idx(&self, e: &Elem) -> u32 {
        *self.index.get(e).unwrap_or_else(|| panic!("element {e:?} not in group"))
    }

    pub fn try_idx(&self, e: &Elem) -> Option<u32> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &Elem) -> bool {
        self.index.contains_key(e)
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.idx(&self.amb.mul(&self.elems[x as usize], &self.elems[y as usize]))
    }

    pub fn inv(&self, x: u32) -> u32 {
        self.idx(&self.amb.inv(&self.elems[x as usize]))
    }

    pub fn pow(&self, x: u32, e: u64) -> u32 {
        let mut acc = 0u32;
        for _ in 0..e {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: u32) -> u32 {
        let mut acc = x;
        let mut n = 1;
        while acc != 0 {
            acc = self.mul(acc, x);
            n += 1;
        }
        n
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn classes(&self) -> &ClassPartition {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: u32) -> u32 {
        self.classes.of[x as usize]
    }

    pub fn class_of_elem(&self, e: &Elem) -> u32 {
        self.class_of(self.idx(e))
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.classes.sizes
    }

    pub fn centralizer_order(&self, c: usize) -> u64 {
        self.order() as u64 / self.classes.sizes[c]
    }

    pub fn inverse_class(&self, c: usize) -> u32 {
        self.inverse_class[c]
    }

    pub fn rep_order(&self, c: usize) -> u32 {
        self.rep_orders[c]
    }

    pub fn rep(&self, c: usize) -> u32 {
        self.classes.reps[c]
    }

    /// Exponent of the group.
    pub fn exponent(&self) -> u64 {
        self.rep_orders.iter().fold(1u64, |a, &o| num_integer::lcm(a, o as u64))
    }

    /// Greedy generating set: scan elements in order, keeping each one not
    /// already in the subgroup generated so far.
    fn find_generators(&self) -> Vec<u32> {
        let n = self.order();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut members = vec![0u32];
        let mut gens = Vec::new();
        for x in 1..n as u32 {
            if members.len() == n {
                break;
            }
            if inside[x as usize] {
                continue;
            }
            gens.push(x);
            // closure: right-multiply by all generators until stable
            let mut queue: VecDeque<u32> = members.iter().copied().collect();
            while let Some(y) = queue.pop_front() {
                for &g in &gens {
                    let z = self.mul(y, g);
                    if !inside[z as usize] {
                        inside[z as usize] = true;
                        members.push(z);
                        queue.push_back(z);
                    }
                }
            }
        }
        gens
    }

    /// Orbits of the action generated by `act(g, x)` for generators g.
    pub fn orbits(&self, act: impl Fn(&Elem, &Elem) -> Elem) -> ClassPartition {
        let n = self.order();
        let mut of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for start in 0..n {
            if of[start] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(start as u32);
            of[start] = c;
            let mut size = 1u64;
            let mut queue = VecDeque::from([start as u32]);
            while let Some(y) = queue.pop_front() {
                for &g in &self.gens {
                    let z = self.idx(&act(&self.elems[g as usize], &self.elems[y as usize]));
                    if of[z as usize] == u32::MAX {
                        of[z as usize] = c;
                        size += 1;
                        queue.push_back(z);
                    }
                }
            }
            sizes.push(size);
        }
        ClassPartition { of, reps, sizes }
    }

    /// Classes under x ~ g·x·φ(g)^{-1} for an automorphism φ.
    pub fn twisted_classes(&self, phi: impl Fn(&Elem) -> Elem) -> ClassPartition {
        let amb = self.amb.clone();
        self.orbits(move |g, x| amb.mul(&amb.mul(g, x), &amb.inv(&phi(g))))
    }

    /// F-twisted classes for the plain Frobenius of the ambient law.
    pub fn frobenius_twisted_classes(&self) -> ClassPartition {
        let amb = self.amb.clone();
        self.twisted_classes(move |g| amb.frob(g, 1))
    }

    /// The subgroup of elements satisfying `pred`, sharing this group's law.
    pub fn subgroup(&self, pred: impl Fn(&Elem) -> bool) -> FiniteGroup {
        let elems: Vec<Elem> = self.elems.iter().filter(|e| pred(e)).copied().collect();
        FiniteGroup::from_elements(self.amb.clone(), elems)
    }

    /// Indices in this group of the elements of `h` (same law).
    pub fn embed_indices(&self, h: &FiniteGroup) -> Vec<u32> {
        h.elems.iter().map(|e| self.idx(e)).collect()
    }

    /// Class of g^j for every class and 0 ≤ j < order.
    pub fn power_classes(&self, c: usize) -> Vec<u32> {
        let g = self.rep(c);
        let o = self.rep_order(c);
        let mut out = Vec::with_capacity(o as usize);
        let mut acc = 0u32;
        for _ in 0..o {
            out.push(self.class_of(acc));
            acc = self.mul(acc, g);
        }
        out
    }
}
