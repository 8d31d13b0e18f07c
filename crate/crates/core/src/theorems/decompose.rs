use serde::Serialize;

use super::UnmetHypothesis;
use crate::substructures::is_bi_ideal;
use crate::{Error, FiniteNearring, RegularityCertificate, Result, Subset};

/// An explicit decomposition `target = p + b1 x1 b2 x2 … x(n-1) bn`.
///
/// `chain` alternates block elements and multipliers: `[b1, x1, b2, …, bn]`.
/// When a free parameter `x` is attached, `containment_verified` records
/// whether `(b1 x1 … bn) · x · q ∈ P` held for every `q ∈ P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionWitness {
    pub target: usize,
    pub p: usize,
    pub chain: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub containment_verified: Option<bool>,
}

impl DecompositionWitness {
    /// The elements `b1, …, bn`.
    pub fn block_elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.chain.iter().step_by(2).copied()
    }

    /// The elements `x1, …, x(n-1)`.
    pub fn multipliers(&self) -> impl Iterator<Item = usize> + '_ {
        self.chain.iter().skip(1).step_by(2).copied()
    }

    pub fn block_count(&self) -> usize {
        self.chain.len().div_ceil(2)
    }

    pub fn chain_product(&self, n: &FiniteNearring) -> usize {
        n.product_of(self.chain.iter().copied()).expect("chains are nonempty")
    }

    /// Attaches the free parameter `x` and scans `(chain)·x·P ⊆ P`.
    pub fn with_parameter(mut self, n: &FiniteNearring, p: &Subset, x: usize) -> Self {
        let head = n.mul(self.chain_product(n), x);
        let ok = p.iter().all(|q| p.contains(n.mul(head, q)));
        self.parameter = Some(x);
        self.containment_verified = Some(ok);
        self
    }
}

fn unmet(h: UnmetHypothesis) -> Error {
    Error::HypothesisViolation(h)
}

fn require_block(n: &FiniteNearring, block: &Subset, b: usize) -> Result<()> {
    if block.order() != n.order() {
        return Err(unmet(UnmetHypothesis::WrongOrder { found: block.order() }));
    }
    if !is_bi_ideal(n, block) {
        return Err(unmet(UnmetHypothesis::NotBiIdeal(block.clone())));
    }
    if !block.contains(b) {
        return Err(unmet(UnmetHypothesis::NotAMember {
            element: b,
            set: block.clone(),
        }));
    }
    Ok(())
}

fn require_element(n: &FiniteNearring, e: usize) -> Result<()> {
    if e >= n.order() {
        return Err(unmet(UnmetHypothesis::ElementOutOfRange { element: e }));
    }
    Ok(())
}

/// `x = p' + b'` with `p' = -p`, `b' = xyx`, where `xyx - x = p` is the
/// certificate's witness for `x`.
pub(crate) fn single(
    n: &FiniteNearring,
    cert: &RegularityCertificate,
    block: &Subset,
    x: usize,
) -> Result<DecompositionWitness> {
    require_element(n, x)?;
    require_block(n, block, x)?;
    let w = cert.witness(x);
    let p_prime = n.neg(w.p);
    let b_prime = n.mul(n.mul(x, w.y), x);
    if !cert.ideal().contains(p_prime) {
        return Err(Error::InternalCheckFailed(format!("-p = {p_prime} left P")));
    }
    if !block.contains(b_prime) {
        return Err(Error::InternalCheckFailed(format!(
            "xyx = {b_prime} left the bi-ideal {block}"
        )));
    }
    if n.add(p_prime, b_prime) != x {
        return Err(Error::InternalCheckFailed(format!("-p + xyx does not reconstruct {x}")));
    }
    Ok(DecompositionWitness {
        target: x,
        p: p_prime,
        chain: vec![b_prime],
        parameter: None,
        containment_verified: None,
    })
}

/// Two-block decomposition by expanding `b x1 b = (p1 + b1) x1 (p2 + b2)`.
pub(crate) fn pair(
    n: &FiniteNearring,
    cert: &RegularityCertificate,
    first: &Subset,
    second: &Subset,
    b: usize,
    x: usize,
) -> Result<DecompositionWitness> {
    if !n.is_distributive() {
        return Err(unmet(UnmetHypothesis::NotDistributive));
    }
    require_element(n, x)?;
    let head = single(n, cert, first, b)?;
    let tail = single(n, cert, second, b)?;
    let w = cert.witness(b);
    let (x1, p3) = (w.y, w.p);
    let (p1, b1) = (head.p, head.chain[0]);
    let (p2, b2) = (tail.p, tail.chain[0]);

    let p4 = n.sum_of([
        n.neg(p3),
        n.mul(n.mul(p1, x1), p2),
        n.mul(n.mul(p1, x1), b2),
        n.mul(n.mul(b1, x1), p2),
    ]);
    finish(n, cert, b, p4, vec![b1, x1, b2], x)
}

/// n-block decomposition, recursing on the first `n - 1` blocks.
pub(crate) fn chain(
    n: &FiniteNearring,
    cert: &RegularityCertificate,
    blocks: &[Subset],
    b: usize,
    x: usize,
) -> Result<DecompositionWitness> {
    if blocks.is_empty() {
        return Err(Error::EmptyFamily { min: 1 });
    }
    if !n.is_distributive() {
        return Err(unmet(UnmetHypothesis::NotDistributive));
    }
    require_element(n, x)?;
    for block in blocks {
        require_block(n, block, b)?;
    }
    let w = chain_unchecked(n, cert, blocks, b)?;
    Ok(w.with_parameter(n, cert.ideal(), x))
}

fn chain_unchecked(
    n: &FiniteNearring,
    cert: &RegularityCertificate,
    blocks: &[Subset],
    b: usize,
) -> Result<DecompositionWitness> {
    let (last, rest) = blocks.split_last().expect("nonempty");
    if rest.is_empty() {
        return single(n, cert, last, b);
    }
    let prev = chain_unchecked(n, cert, rest, b)?;
    let tail = single(n, cert, last, b)?;
    let w = cert.witness(b);
    let (xm, p3) = (w.y, w.p);
    let (p1, head) = (prev.p, prev.chain_product(n));
    let (p2, bn) = (tail.p, tail.chain[0]);

    let p4 = n.sum_of([
        n.neg(p3),
        n.mul(n.mul(p1, xm), p2),
        n.mul(n.mul(p1, xm), bn),
        n.mul(n.mul(head, xm), p2),
    ]);
    let mut links = prev.chain;
    links.extend([xm, bn]);
    let w = finish_unparameterised(n, cert, b, p4, links)?;
    Ok(w)
}

fn finish_unparameterised(
    n: &FiniteNearring,
    cert: &RegularityCertificate,
    b: usize,
    p4: usize,
    chain: Vec<usize>,
) -> Result<DecompositionWitness> {
    if !cert.ideal().contains(p4) {
        return Err(Error::InternalCheckFailed(format!(
            "folded P-terms give {p4}, outside P = {}",
            cert.ideal()
        )));
    }
    let w = DecompositionWitness {
        target: b,
        p: p4,
        chain,
        parameter: None,
        containment_verified: None,
    };
    if n.add(p4, w.chain_product(n)) != b {
        return Err(Error::InternalCheckFailed(format!(
            "p + chain product does not reconstruct {b}"
        )));
    }
    Ok(w)
}

fn finish(
    n: &FiniteNearring,
    cert: &RegularityCertificate,
    b: usize,
    p4: usize,
    chain: Vec<usize>,
    x: usize,
) -> Result<DecompositionWitness> {
    Ok(finish_unparameterised(n, cert, b, p4, chain)?.with_parameter(n, cert.ideal(), x))
}
