use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

const WORD: usize = 64;

/// A set of element indices of a nearring of fixed order, stored as a
/// bit-vector with element 0 in the least significant bit.
///
/// Two subsets may only be combined when their ambient orders agree;
/// mixing orders is a programming error and panics.
///
/// The total order on subsets compares them as unsigned integers (highest
/// element first), which is the canonical order of every structure list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    order: usize,
    words: SmallVec<[u64; 1]>,
}

impl Subset {
    pub fn empty(order: usize) -> Self {
        let len = order.div_ceil(WORD).max(1);
        Subset {
            order,
            words: SmallVec::from_elem(0, len),
        }
    }

    pub fn full(order: usize) -> Self {
        let mut s = Self::empty(order);
        for i in 0..order {
            s.insert(i);
        }
        s
    }

    pub fn singleton(order: usize, element: usize) -> Self {
        let mut s = Self::empty(order);
        s.insert(element);
        s
    }

    /// The set `{0}`.
    pub fn zero(order: usize) -> Self {
        Self::singleton(order, 0)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(order: usize, elements: I) -> Self {
        let mut s = Self::empty(order);
        for e in elements {
            s.insert(e);
        }
        s
    }

    /// Builds a subset from the low `order` bits of `bits`.
    pub fn from_bits(order: usize, bits: u64) -> Self {
        assert!(order <= WORD, "from_bits supports orders up to 64");
        let mut s = Self::empty(order);
        let mask = if order == WORD { u64::MAX } else { (1u64 << order) - 1 };
        s.words[0] = bits & mask;
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn contains(&self, element: usize) -> bool {
        element < self.order && self.words[element / WORD] >> (element % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, element: usize) -> bool {
        assert!(
            element < self.order,
            "element {element} out of range for order {}",
            self.order
        );
        let (w, b) = (element / WORD, element % WORD);
        let fresh = self.words[w] >> b & 1 == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, element: usize) -> bool {
        if element >= self.order {
            return false;
        }
        let (w, b) = (element / WORD, element % WORD);
        let present = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.order
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words[0],
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_order(&self, other: &Subset) {
        assert_eq!(
            self.order, other.order,
            "subset operation across ambient orders {} and {}",
            self.order, other.order
        );
    }

    pub fn union(&self, other: &Subset) -> Subset {
        self.check_order(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        self.check_order(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        self.check_order(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out
    }

    pub fn symmetric_difference(&self, other: &Subset) -> Subset {
        self.check_order(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        out
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.check_order(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Intersection of a family; `None` for an empty family.
    pub fn intersect_all<'a, I>(family: I) -> Option<Subset>
    where
        I: IntoIterator<Item = &'a Subset>,
    {
        let mut iter = family.into_iter();
        let first = iter.next()?.clone();
        Some(iter.fold(first, |acc, s| acc.intersection(s)))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitAnd for &Subset {
    type Output = Subset;
    fn bitand(self, rhs: &Subset) -> Subset {
        self.intersection(rhs)
    }
}

impl BitOr for &Subset {
    type Output = Subset;
    fn bitor(self, rhs: &Subset) -> Subset {
        self.union(rhs)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset[{}]{self}", self.order)
    }
}

/// Serialized as the sorted array of element indices.
impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Element arrays carry no ambient order; deserialized subsets take the
/// smallest order that holds their largest element. Use
/// [`Subset::from_elements`] when the order is known.
impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let elements = Vec::<usize>::deserialize(deserializer)?;
        let order = elements.iter().max().map_or(0, |m| m + 1);
        Ok(Subset::from_elements(order, elements))
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a Subset {
    type Item = usize;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_integer_order() {
        let a = Subset::from_elements(6, [0, 3]); // 0b1001
        let b = Subset::from_elements(6, [0, 2, 4]); // 0b10101
        let c = Subset::from_elements(6, [0, 1]); // 0b11
        let mut v = vec![b.clone(), a.clone(), c.clone()];
        v.sort();
        assert_eq!(v, vec![c, a, b]);
    }

    #[test]
    fn multiword_order_compares_high_words_first() {
        let low = Subset::from_elements(100, [0, 1, 2, 3]);
        let high = Subset::from_elements(100, [70]);
        assert!(low < high);
        assert_eq!(high.to_vec(), vec![70]);
        assert_eq!(Subset::full(100).len(), 100);
    }

    #[test]
    fn set_operations() {
        let a = Subset::from_elements(8, [0, 1, 5]);
        let b = Subset::from_elements(8, [1, 5, 7]);
        assert_eq!((&a & &b).to_vec(), vec![1, 5]);
        assert_eq!((&a | &b).to_vec(), vec![0, 1, 5, 7]);
        assert_eq!(a.difference(&b).to_vec(), vec![0]);
        assert_eq!(a.symmetric_difference(&b).to_vec(), vec![0, 7]);
        assert!(Subset::zero(8).is_subset_of(&a));
        assert!(!a.is_subset_of(&b));
        assert_eq!(format!("{a}"), "{0,1,5}");
    }

    #[test]
    fn empty_subset_of_order_zero_is_usable() {
        let e = Subset::empty(0);
        assert!(e.is_empty());
        assert_eq!(e.iter().count(), 0);
    }

    #[test]
    #[should_panic(expected = "across ambient orders")]
    fn mixed_orders_panic() {
        let _ = Subset::zero(4).union(&Subset::zero(6));
    }
}
