use std::fmt;

use serde::Serialize;

use crate::{Error, Result, Subset};

/// A validated finite nearring.
///
/// Tables are stored row-major: `add[a * n + b] = a + b`. Index 0 is the
/// additive identity. Construct through [`validate_nearring`]; once built the
/// value is immutable.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteNearring {
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    unity: Option<usize>,
    distributive: bool,
}

/// One of the checked nearring axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    /// `(a+b)+c = a+(b+c)`; witness `(a, b, c)`.
    AdditiveAssociativity,
    /// `0+a = a+0 = a`; witness `(a)`.
    AdditiveIdentity,
    /// some `b` with `a+b = b+a = 0`; witness `(a)`.
    AdditiveInverse,
    /// `(ab)c = a(bc)`; witness `(a, b, c)`.
    MultiplicativeAssociativity,
    /// `(a+b)c = ac+bc`; witness `(a, b, c)`.
    RightDistributivity,
    /// `0a = 0`, implied by right distributivity; witness `(a)`.
    ZeroAbsorption,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::AdditiveAssociativity,
        Axiom::AdditiveIdentity,
        Axiom::AdditiveInverse,
        Axiom::MultiplicativeAssociativity,
        Axiom::RightDistributivity,
        Axiom::ZeroAbsorption,
    ];

    pub fn is_group_axiom(self) -> bool {
        matches!(
            self,
            Axiom::AdditiveAssociativity | Axiom::AdditiveIdentity | Axiom::AdditiveInverse
        )
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::AdditiveAssociativity => "additive associativity",
            Axiom::AdditiveIdentity => "additive identity at 0",
            Axiom::AdditiveInverse => "additive inverses",
            Axiom::MultiplicativeAssociativity => "multiplicative associativity",
            Axiom::RightDistributivity => "right distributivity",
            Axiom::ZeroAbsorption => "zero absorption 0a = 0",
        })
    }
}

/// Every element tuple violating one axiom, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witnesses: Vec<Vec<usize>>,
}

impl Violation {
    /// The lexicographically smallest witness.
    pub fn witness(&self) -> &[usize] {
        &self.witnesses[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn get(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} fails at {:?}", v.axiom, v.witness())?;
            if v.witnesses.len() > 1 {
                write!(f, " (+{} more)", v.witnesses.len() - 1)?;
            }
        }
        Ok(())
    }
}

fn flatten(name: &str, table: &[Vec<usize>], order: usize) -> Result<Vec<usize>> {
    if table.len() != order {
        return Err(Error::MalformedTable(format!(
            "{name} table has {} rows, expected {order}",
            table.len()
        )));
    }
    let mut flat = Vec::with_capacity(order * order);
    for (r, row) in table.iter().enumerate() {
        if row.len() != order {
            return Err(Error::MalformedTable(format!(
                "{name} table row {r} has {} entries, expected {order}",
                row.len()
            )));
        }
        if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= order) {
            return Err(Error::MalformedTable(format!(
                "{name} table entry ({r},{c}) = {v} is outside 0..{order}"
            )));
        }
        flat.extend_from_slice(row);
    }
    Ok(flat)
}

/// Checks the group axioms of an additive table (identity required at 0).
/// Returns the inverse table on success.
pub(crate) fn check_group(add: &[usize], n: usize) -> std::result::Result<Vec<usize>, Vec<Violation>> {
    let op = |a: usize, b: usize| add[a * n + b];
    let mut violations = Vec::new();

    let assoc: Vec<Vec<usize>> = triples(n)
        .filter(|&(a, b, c)| op(op(a, b), c) != op(a, op(b, c)))
        .map(|(a, b, c)| vec![a, b, c])
        .collect();
    push(&mut violations, Axiom::AdditiveAssociativity, assoc);

    let identity: Vec<Vec<usize>> = (0..n)
        .filter(|&a| op(0, a) != a || op(a, 0) != a)
        .map(|a| vec![a])
        .collect();
    let identity_ok = identity.is_empty();
    push(&mut violations, Axiom::AdditiveIdentity, identity);

    let mut neg = vec![0; n];
    let mut missing = Vec::new();
    for (a, slot) in neg.iter_mut().enumerate() {
        match (0..n).find(|&b| op(a, b) == 0 && op(b, a) == 0) {
            Some(b) => *slot = b,
            None => missing.push(vec![a]),
        }
    }
    // Without an identity at 0 the inverse scan is meaningless.
    if identity_ok {
        push(&mut violations, Axiom::AdditiveInverse, missing);
    }

    if violations.is_empty() {
        Ok(neg)
    } else {
        Err(violations)
    }
}

fn push(out: &mut Vec<Violation>, axiom: Axiom, witnesses: Vec<Vec<usize>>) {
    if !witnesses.is_empty() {
        out.push(Violation { axiom, witnesses });
    }
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
}

/// Validates a pair of Cayley tables against the nearring axioms.
///
/// Tables must be square of the same order with entries in `0..n`, and
/// element 0 must be the additive identity. On success the inverse table,
/// the unity (if any) and the left-distributivity flag are derived. On
/// failure every violated axiom is reported with all of its witnesses.
pub fn validate_nearring(add_table: &[Vec<usize>], mul_table: &[Vec<usize>]) -> Result<FiniteNearring> {
    let order = add_table.len();
    if order == 0 {
        return Err(Error::MalformedTable("a nearring needs at least one element".into()));
    }
    let add = flatten("add", add_table, order)?;
    let mul = flatten("mul", mul_table, order)?;
    let n = order;

    let (neg, mut violations) = match check_group(&add, n) {
        Ok(neg) => (Some(neg), Vec::new()),
        Err(v) => (None, v),
    };

    let a_ = |a: usize, b: usize| add[a * n + b];
    let m_ = |a: usize, b: usize| mul[a * n + b];

    let assoc: Vec<Vec<usize>> = triples(n)
        .filter(|&(a, b, c)| m_(m_(a, b), c) != m_(a, m_(b, c)))
        .map(|(a, b, c)| vec![a, b, c])
        .collect();
    push(&mut violations, Axiom::MultiplicativeAssociativity, assoc);

    let right: Vec<Vec<usize>> = triples(n)
        .filter(|&(a, b, c)| m_(a_(a, b), c) != a_(m_(a, c), m_(b, c)))
        .map(|(a, b, c)| vec![a, b, c])
        .collect();
    push(&mut violations, Axiom::RightDistributivity, right);

    let absorb: Vec<Vec<usize>> = (0..n).filter(|&a| m_(0, a) != 0).map(|a| vec![a]).collect();
    push(&mut violations, Axiom::ZeroAbsorption, absorb);

    if !violations.is_empty() {
        violations.sort_by_key(|v| v.axiom);
        return Err(Error::AxiomViolation(ViolationReport { violations }));
    }
    let neg = neg.expect("group axioms hold");

    let unity = (0..n).find(|&e| (0..n).all(|a| m_(e, a) == a && m_(a, e) == a));
    let distributive = triples(n).all(|(a, b, c)| m_(a, a_(b, c)) == a_(m_(a, b), m_(a, c)));

    Ok(FiniteNearring {
        order,
        add,
        mul,
        neg,
        unity,
        distributive,
    })
}

impl FiniteNearring {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// `a - b`, i.e. `a + (-b)`.
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Left-to-right sum of a sequence of elements.
    pub fn sum_of<I: IntoIterator<Item = usize>>(&self, terms: I) -> usize {
        terms.into_iter().fold(0, |acc, t| self.add(acc, t))
    }

    /// Left-to-right product of a nonempty sequence of elements.
    pub fn product_of<I: IntoIterator<Item = usize>>(&self, factors: I) -> Option<usize> {
        factors.into_iter().reduce(|acc, f| self.mul(acc, f))
    }

    pub fn unity(&self) -> Option<usize> {
        self.unity
    }

    /// Whether `a(b+c) = ab + ac` holds for all triples.
    pub fn is_distributive(&self) -> bool {
        self.distributive
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// Row-major addition table.
    pub fn raw_add(&self) -> &[usize] {
        &self.add
    }

    /// Row-major multiplication table.
    pub fn raw_mul(&self) -> &[usize] {
        &self.mul
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.order)
    }

    pub fn zero_set(&self) -> Subset {
        Subset::zero(self.order)
    }

    pub fn subset<I: IntoIterator<Item = usize>>(&self, elements: I) -> Result<Subset> {
        let mut s = Subset::empty(self.order);
        for e in elements {
            self.check_element(e)?;
            s.insert(e);
        }
        Ok(s)
    }

    pub fn check_element(&self, element: usize) -> Result<()> {
        if element < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element,
                order: self.order,
            })
        }
    }

    pub fn check_subset(&self, s: &Subset) -> Result<()> {
        if s.order() == self.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                expected: self.order,
                found: s.order(),
            })
        }
    }

    /// `A + B = {a + b}` as a raw elementwise set.
    pub fn subset_sum(&self, a: &Subset, b: &Subset) -> Subset {
        let mut out = Subset::empty(self.order);
        for x in a {
            for y in b {
                out.insert(self.add(x, y));
            }
        }
        out
    }

    /// `AB = {ab}` as a raw elementwise set.
    pub fn subset_product(&self, a: &Subset, b: &Subset) -> Subset {
        let mut out = Subset::empty(self.order);
        for x in a {
            for y in b {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    /// `ANB`, the elementwise set `{a n b}`.
    pub fn sandwich(&self, a: &Subset, b: &Subset) -> Subset {
        let an = self.subset_product(a, &self.full());
        self.subset_product(&an, b)
    }

    pub fn subset_negate(&self, a: &Subset) -> Subset {
        Subset::from_elements(self.order, a.iter().map(|x| self.neg(x)))
    }

    /// The additive subgroup generated by `a`.
    pub fn additive_closure(&self, a: &Subset) -> Subset {
        self.generated_subgroup(&a.to_vec())
    }

    /// Subgroup generated by a list of elements: the orbit of 0 under right
    /// addition of the generators, which is closed under inverses because
    /// the group is finite.
    pub(crate) fn generated_subgroup(&self, generators: &[usize]) -> Subset {
        let mut out = Subset::zero(self.order);
        let mut frontier = vec![0];
        while let Some(s) = frontier.pop() {
            for &g in generators {
                let t = self.add(s, g);
                if out.insert(t) {
                    frontier.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Debug for FiniteNearring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteNearring")
            .field("order", &self.order)
            .field("unity", &self.unity)
            .field("distributive", &self.distributive)
            .finish_non_exhaustive()
    }
}
