//! Independent re-evaluation of certificates and decomposition witnesses.
//!
//! These functions read the raw Cayley tables directly and recompute
//! inverses by scanning the addition table, so they share no arithmetic
//! helpers with the search and construction code they audit.

use crate::substructures::{is_ideal, IdealSide};
use crate::theorems::DecompositionWitness;
use crate::{FiniteNearring, RegularityCertificate, Subset};

struct Tables<'a> {
    n: usize,
    add: &'a [usize],
    mul: &'a [usize],
}

impl Tables<'_> {
    fn of(nr: &FiniteNearring) -> Tables<'_> {
        Tables {
            n: nr.order(),
            add: nr.raw_add(),
            mul: nr.raw_mul(),
        }
    }

    fn plus(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    fn times(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    fn minus_of(&self, a: usize) -> Option<usize> {
        (0..self.n).find(|&b| self.add[a * self.n + b] == 0)
    }
}

/// Checks that every witness `(y, p)` satisfies `(xy)x + (-x) = p ∈ P` and
/// that `P` is a two-sided ideal.
pub fn certificate(nr: &FiniteNearring, cert: &RegularityCertificate) -> Result<(), String> {
    let t = Tables::of(nr);
    let p = cert.ideal();
    if p.order() != t.n {
        return Err(format!("ideal has order {}, nearring has {}", p.order(), t.n));
    }
    if !is_ideal(nr, p, IdealSide::TwoSided) {
        return Err(format!("{p} is not a two-sided ideal"));
    }
    if cert.witnesses().len() != t.n {
        return Err(format!("{} witnesses for {} elements", cert.witnesses().len(), t.n));
    }
    for (x, w) in cert.witnesses().iter().enumerate() {
        if w.y >= t.n {
            return Err(format!("witness y = {} for {x} out of range", w.y));
        }
        let minus_x = t.minus_of(x).ok_or_else(|| format!("{x} has no inverse"))?;
        let value = t.plus(t.times(t.times(x, w.y), x), minus_x);
        if value != w.p {
            return Err(format!("x = {x}, y = {}: xyx - x = {value}, recorded {}", w.y, w.p));
        }
        if !p.contains(value) {
            return Err(format!("x = {x}: xyx - x = {value} is not in {p}"));
        }
    }
    Ok(())
}

/// Checks `target = p + b1 x1 … bn` with `p ∈ P` and `bi ∈ Bi`, and, when a
/// parameter is attached, rescans `(chain)·x·q ∈ P` for every `q ∈ P`.
pub fn decomposition(
    nr: &FiniteNearring,
    p: &Subset,
    blocks: &[Subset],
    w: &DecompositionWitness,
) -> Result<(), String> {
    let t = Tables::of(nr);
    if blocks.is_empty() || w.chain.len() != 2 * blocks.len() - 1 {
        return Err(format!("chain of length {} for {} blocks", w.chain.len(), blocks.len()));
    }
    if w.chain.iter().chain([&w.p, &w.target]).any(|&e| e >= t.n) {
        return Err("witness element out of range".into());
    }
    if !p.contains(w.p) {
        return Err(format!("p = {} is not in P", w.p));
    }
    for (i, (block, e)) in blocks.iter().zip(w.chain.iter().step_by(2)).enumerate() {
        if !block.contains(*e) {
            return Err(format!("b{} = {e} is not in {block}", i + 1));
        }
        if !block.contains(w.target) {
            return Err(format!("target {} is not in {block}", w.target));
        }
    }
    let mut product = w.chain[0];
    for &e in &w.chain[1..] {
        product = t.times(product, e);
    }
    if t.plus(w.p, product) != w.target {
        return Err(format!(
            "p + chain = {} + {product} = {}, expected {}",
            w.p,
            t.plus(w.p, product),
            w.target
        ));
    }
    if let Some(x) = w.parameter {
        let head = t.times(product, x);
        let holds = (0..t.n)
            .filter(|&q| p.contains(q))
            .all(|q| p.contains(t.times(head, q)));
        if Some(holds) != w.containment_verified {
            return Err(format!(
                "containment scan gives {holds}, witness records {:?}",
                w.containment_verified
            ));
        }
        if !holds {
            return Err(format!("(chain)·{x}·P is not inside P"));
        }
    }
    Ok(())
}
