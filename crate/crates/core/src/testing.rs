//! Brute-force oracles for tests.
//!
//! Everything here works on plain `Vec<bool>` membership vectors and the raw
//! Cayley tables, and enumerates candidate subsets by scanning the whole
//! powerset. None of it calls into the predicate or enumeration code it is
//! used to check.

use crate::{FiniteNearring, StructureKind, Subset};

/// Powerset scans are limited to this order.
pub const MAX_POWERSET_ORDER: usize = 20;

/// Raw table view with membership-vector predicates.
pub struct Oracle<'a> {
    n: usize,
    add: &'a [usize],
    mul: &'a [usize],
}

impl<'a> Oracle<'a> {
    pub fn new(nr: &'a FiniteNearring) -> Self {
        Oracle {
            n: nr.order(),
            add: nr.raw_add(),
            mul: nr.raw_mul(),
        }
    }

    fn a(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y]
    }

    fn m(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y]
    }

    fn inv(&self, x: usize) -> usize {
        (0..self.n).find(|&y| self.a(x, y) == 0).expect("group")
    }

    fn members(s: &[bool]) -> impl Iterator<Item = usize> + '_ {
        s.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    fn product(&self, a: &[bool], b: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.n];
        for x in Self::members(a) {
            for y in Self::members(b) {
                out[self.m(x, y)] = true;
            }
        }
        out
    }

    fn within(a: &[bool], b: &[bool]) -> bool {
        a.iter().zip(b).all(|(&x, &y)| !x || y)
    }

    pub fn subgroup(&self, s: &[bool]) -> bool {
        s[0] && Self::members(s).all(|x| s[self.inv(x)] && Self::members(s).all(|y| s[self.a(x, y)]))
    }

    pub fn normal(&self, s: &[bool]) -> bool {
        self.subgroup(s) && (0..self.n).all(|g| Self::members(s).all(|x| s[self.a(self.a(self.inv(g), x), g)]))
    }

    fn ns(&self, s: &[bool]) -> bool {
        Self::within(&self.product(&vec![true; self.n], s), s)
    }

    fn sn(&self, s: &[bool]) -> bool {
        Self::within(&self.product(s, &vec![true; self.n]), s)
    }

    fn clause4(&self, s: &[bool]) -> bool {
        (0..self.n).all(|p| {
            (0..self.n).all(|q| Self::members(s).all(|x| s[self.a(self.m(p, self.a(q, x)), self.inv(self.m(p, q)))]))
        })
    }

    pub fn holds(&self, kind: StructureKind, s: &[bool]) -> bool {
        let full = vec![true; self.n];
        match kind {
            StructureKind::Subgroup => self.subgroup(s),
            StructureKind::NormalSubgroup => self.normal(s),
            StructureKind::LeftNSubgroup => self.subgroup(s) && self.ns(s),
            StructureKind::RightNSubgroup => self.subgroup(s) && self.sn(s),
            StructureKind::LeftIdeal => self.normal(s) && self.ns(s) && self.clause4(s),
            StructureKind::RightIdeal => self.normal(s) && self.sn(s),
            StructureKind::Ideal => self.normal(s) && self.sn(s) && self.ns(s) && self.clause4(s),
            StructureKind::QuasiIdeal => {
                let qn = self.product(s, &full);
                let nq = self.product(&full, s);
                let meet: Vec<bool> = qn.iter().zip(&nq).map(|(a, b)| *a && *b).collect();
                self.subgroup(s) && Self::within(&meet, s)
            }
            StructureKind::BiIdeal => self.subgroup(s) && Self::within(&self.product(&self.product(s, &full), s), s),
        }
    }

    /// Every nonempty subset of the given kind, as sorted element lists in
    /// increasing bit-mask order.
    pub fn powerset_filter(&self, kind: StructureKind) -> Vec<Vec<usize>> {
        assert!(
            self.n <= MAX_POWERSET_ORDER,
            "powerset oracle limited to order {MAX_POWERSET_ORDER}"
        );
        (1u64..1 << self.n)
            .map(|mask| (0..self.n).map(|i| mask >> i & 1 == 1).collect::<Vec<bool>>())
            .filter(|s| self.holds(kind, s))
            .map(|s| Self::members(&s).collect())
            .collect()
    }

    /// Smallest `x` admitting no `y` with `xyx - x ∈ P`, if any.
    pub fn p_regular_obstruction(&self, p: &[bool]) -> Option<usize> {
        (0..self.n).find(|&x| !(0..self.n).any(|y| p[self.a(self.m(self.m(x, y), x), self.inv(x))]))
    }
}

pub fn to_mask(s: &Subset) -> Vec<bool> {
    (0..s.order()).map(|i| s.contains(i)).collect()
}
