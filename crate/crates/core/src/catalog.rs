//! Concrete finite nearrings: rings `Z_m`, zero-multiplication nearrings on
//! arbitrary groups, transformation nearrings `M(G)` and direct products.

use crate::nearring::{check_group, ViolationReport};
use crate::{validate_nearring, Error, FiniteNearring, OrderCap, Result};

/// Additive group tables with the identity at index 0.
pub mod groups {
    pub type Table = Vec<Vec<usize>>;

    pub fn cyclic(m: usize) -> Table {
        (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect()
    }

    /// `Z2 × Z2` with `(a, b) ↦ 2a + b`, i.e. XOR on `0..4`.
    pub fn klein() -> Table {
        (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect()
    }

    /// The symmetric group on three points, elements being the permutations
    /// of `[0, 1, 2]` in lexicographic order (identity first) and the
    /// operation composition `(p + q)(i) = p(q(i))`.
    pub fn symmetric3() -> Table {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        perms
            .iter()
            .map(|p| perms.iter().map(|q| index([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect()
    }

    pub fn trivial() -> Table {
        vec![vec![0]]
    }
}

/// Facts recorded for shipped entries and rechecked by the tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpectedFlags {
    pub distributive: bool,
    pub has_unity: bool,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub nearring: FiniteNearring,
    /// Constructor call that produced the entry, e.g. `transformation(Z2)`.
    pub provenance: String,
    pub expected: Option<ExpectedFlags>,
}

impl CatalogEntry {
    fn new(name: impl Into<String>, nearring: FiniteNearring, provenance: impl Into<String>) -> Self {
        CatalogEntry {
            name: name.into(),
            nearring,
            provenance: provenance.into(),
            expected: None,
        }
    }

    fn expect(mut self, distributive: bool, has_unity: bool) -> Self {
        self.expected = Some(ExpectedFlags {
            distributive,
            has_unity,
        });
        self
    }

    pub fn order(&self) -> usize {
        self.nearring.order()
    }

    /// File-system friendly form of the name: `M(Z2)` becomes `m-z2`.
    pub fn slug(&self) -> String {
        let mut out = String::new();
        for c in self.name.chars() {
            if c.is_ascii_alphanumeric() {
                out.push(c.to_ascii_lowercase());
            } else if !out.is_empty() && !out.ends_with('-') {
                out.push('-');
            }
        }
        out.trim_end_matches('-').to_string()
    }

    /// Whether the recorded flags agree with the nearring.
    pub fn flags_match(&self) -> bool {
        self.expected.is_none_or(|e| {
            e.distributive == self.nearring.is_distributive() && e.has_unity == self.nearring.unity().is_some()
        })
    }
}

fn table(m: usize, f: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
    (0..m).map(|a| (0..m).map(|b| f(a, b)).collect()).collect()
}

/// The ring `Z_m` viewed as a nearring.
pub fn ring_as_nearring(modulus: usize, cap: OrderCap) -> Result<CatalogEntry> {
    if modulus == 0 {
        return Err(Error::MalformedTable("modulus must be at least 1".into()));
    }
    cap.check(modulus)?;
    let n = validate_nearring(&groups::cyclic(modulus), &table(modulus, |a, b| (a * b) % modulus))?;
    Ok(CatalogEntry::new(format!("Z{modulus}"), n, format!("ring({modulus})")))
}

fn validated_group(group: &[Vec<usize>]) -> Result<()> {
    let m = group.len();
    if m == 0 || group.iter().any(|row| row.len() != m || row.iter().any(|&v| v >= m)) {
        return Err(Error::MalformedTable(
            "group table must be square with entries in range".into(),
        ));
    }
    let flat: Vec<usize> = group.concat();
    check_group(&flat, m)
        .map(|_| ())
        .map_err(|violations| Error::NotAGroup(ViolationReport { violations }))
}

/// Any group with `ab = 0` for all `a, b`.
pub fn zero_mul_nearring(name: &str, group: &[Vec<usize>]) -> Result<CatalogEntry> {
    validated_group(group)?;
    let m = group.len();
    let n = validate_nearring(group, &table(m, |_, _| 0))?;
    Ok(CatalogEntry::new(name, n, format!("zero_mul({name})")))
}

/// All self-maps of a group under pointwise addition and composition.
///
/// A map `f` is encoded as the base-`m` number whose digit `t` is `f(t)`
/// (digit 0 least significant), so index 0 is the zero map.
pub fn transformation_nearring(name: &str, group: &[Vec<usize>], cap: OrderCap) -> Result<CatalogEntry> {
    validated_group(group)?;
    let m = group.len();
    let order = u32::try_from(m)
        .ok()
        .and_then(|e| m.checked_pow(e))
        .ok_or(Error::OrderCapExceeded {
            order: usize::MAX,
            cap: cap.0,
        })?;
    cap.check(order)?;

    let digits = |f: usize| -> Vec<usize> {
        (0..m)
            .scan(f, |rest, _| {
                let d = *rest % m;
                *rest /= m;
                Some(d)
            })
            .collect()
    };
    let encode = |ds: &[usize]| ds.iter().rev().fold(0, |acc, &d| acc * m + d);
    let maps: Vec<Vec<usize>> = (0..order).map(digits).collect();

    let add = table(order, |f, g| {
        let sum: Vec<usize> = (0..m).map(|t| group[maps[f][t]][maps[g][t]]).collect();
        encode(&sum)
    });
    let mul = table(order, |f, g| {
        let comp: Vec<usize> = (0..m).map(|t| maps[f][maps[g][t]]).collect();
        encode(&comp)
    });
    let n = validate_nearring(&add, &mul)?;
    Ok(CatalogEntry::new(
        format!("M({name})"),
        n,
        format!("transformation({name})"),
    ))
}

/// Componentwise product; the pair `(a, b)` has index `a·|B| + b`.
pub fn direct_product(
    left: &FiniteNearring,
    right: &FiniteNearring,
    name: &str,
    cap: OrderCap,
) -> Result<CatalogEntry> {
    let (p, q) = (left.order(), right.order());
    let order = p.checked_mul(q).ok_or(Error::OrderCapExceeded {
        order: usize::MAX,
        cap: cap.0,
    })?;
    cap.check(order)?;
    let pair = |i: usize| (i / q, i % q);
    let add = table(order, |i, j| {
        let ((a, b), (c, d)) = (pair(i), pair(j));
        left.add(a, c) * q + right.add(b, d)
    });
    let mul = table(order, |i, j| {
        let ((a, b), (c, d)) = (pair(i), pair(j));
        left.mul(a, c) * q + right.mul(b, d)
    });
    let n = validate_nearring(&add, &mul)?;
    Ok(CatalogEntry::new(name, n, format!("product({name})")))
}

/// The shipped instance list, restricted to orders `≤ max_order`.
///
/// Together these cover distributive regular rings (`Z6`), distributive
/// non-regular rings (`Z4`), a non-distributive nearring with unity
/// (`M(Z2)`), nearrings without unity (zero multiplication) and a
/// non-abelian additive group (zero multiplication on `S3`).
pub fn standard_catalog(max_order: usize) -> Vec<CatalogEntry> {
    let cap = OrderCap(usize::MAX);
    let ring = |m| ring_as_nearring(m, cap).expect("shipped ring");
    let mut entries = Vec::new();
    for m in 1..=8 {
        entries.push(ring(m).expect(true, true));
    }
    let zero = |name: &str, g: groups::Table| zero_mul_nearring(name, &g).expect("shipped group");
    entries.push(zero("zero(Z2)", groups::cyclic(2)).expect(true, false));
    entries.push(zero("zero(Z4)", groups::cyclic(4)).expect(true, false));
    entries.push(zero("zero(V4)", groups::klein()).expect(true, false));
    entries.push(zero("zero(S3)", groups::symmetric3()).expect(true, false));

    let m_z2 = transformation_nearring("Z2", &groups::cyclic(2), cap).expect("shipped M(Z2)");
    let m_z3 = transformation_nearring("Z3", &groups::cyclic(3), cap).expect("shipped M(Z3)");
    let z2 = ring(2).nearring;
    let z3 = ring(3).nearring;
    let z2xz2 = direct_product(&z2, &z2, "Z2xZ2", cap).expect("shipped product");
    let z2xz3 = direct_product(&z2, &z3, "Z2xZ3", cap).expect("shipped product");
    let z2xm = direct_product(&z2, &m_z2.nearring, "Z2xM(Z2)", cap).expect("shipped product");
    entries.push(m_z2.expect(false, true));
    entries.push(m_z3.expect(false, true));
    entries.push(z2xz2.expect(true, true));
    entries.push(z2xz3.expect(true, true));
    entries.push(z2xm.expect(false, true));

    entries.retain(|e| e.order() <= max_order);
    entries
}
