use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::symbols::Generator;
use crate::scalar::factorial;

/// A vector of `r` nonnegative exponents, one per complex direction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn zero(rank: usize) -> Self {
        MultiIndex(vec![0; rank])
    }

    pub fn from_vec(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    /// `e_i` with a 0-based slot.
    pub fn unit(rank: usize, slot: usize) -> Self {
        let mut v = vec![0; rank];
        v[slot] = 1;
        MultiIndex(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, slot: usize) -> u32 {
        self.0[slot]
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn factorial(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &e| acc * factorial(e))
    }

    pub fn plus_unit(&self, slot: usize) -> Self {
        let mut v = self.0.clone();
        v[slot] += 1;
        MultiIndex(v)
    }

    /// Panics if the slot is already zero.
    pub fn minus_unit(&self, slot: usize) -> Self {
        let mut v = self.0.clone();
        v[slot] -= 1;
        MultiIndex(v)
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; `None` unless `other <= self`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// All multi-indices of the given rank with total order `<= max_order`, in lexicographic order.
    pub fn all_up_to(rank: usize, max_order: u32) -> Vec<MultiIndex> {
        fn rec(rank: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if cur.len() == rank {
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for e in 0..=budget {
                cur.push(e);
                rec(rank, budget - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(rank, max_order, &mut Vec::with_capacity(rank), &mut out);
        out
    }

    /// All `β` with `0 <= β <= self` componentwise.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex(Vec::with_capacity(self.rank()))];
        for &e in &self.0 {
            out = out
                .into_iter()
                .flat_map(|m| {
                    (0..=e).map(move |k| {
                        let mut v = m.0.clone();
                        v.push(k);
                        MultiIndex(v)
                    })
                })
                .collect();
        }
        out
    }

    fn fmt_power(&self, f: &mut fmt::Formatter<'_>, name: &str, first: &mut bool) -> fmt::Result {
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !*first {
                write!(f, " ")?;
            }
            *first = false;
            write!(f, "{name}{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Identifier of a cutoff function symbol: `Psi`, `Psi1`, `Psi2`, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Base(pub u16);

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "Psi"),
            k => write!(f, "Psi{k}"),
        }
    }
}

/// The function `L^a L̄^b T^m Ψ`, stored in this canonical derivative order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetIndex {
    pub base: Base,
    pub a: MultiIndex,
    pub b: MultiIndex,
    pub m: u32,
}

impl JetIndex {
    pub fn new(base: Base, a: MultiIndex, b: MultiIndex, m: u32) -> Self {
        debug_assert_eq!(a.rank(), b.rank());
        JetIndex { base, a, b, m }
    }

    /// The undifferentiated base function.
    pub fn plain(base: Base, rank: usize) -> Self {
        JetIndex::new(base, MultiIndex::zero(rank), MultiIndex::zero(rank), 0)
    }

    pub fn rank(&self) -> usize {
        self.a.rank()
    }

    pub fn weight(&self) -> u32 {
        self.a.order() + self.b.order() + 2 * self.m
    }
}

impl fmt::Display for JetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        self.a.fmt_power(f, "L", &mut first)?;
        self.b.fmt_power(f, "Lb", &mut first)?;
        if self.m > 0 {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "T")?;
            if self.m > 1 {
                write!(f, "^{}", self.m)?;
            }
        }
        if !first {
            write!(f, " ")?;
        }
        write!(f, "{})", self.base)
    }
}

/// Commutative product of jets, kept as a sorted multiset. Empty means 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct JetMonomial(Vec<JetIndex>);

impl JetMonomial {
    pub fn one() -> Self {
        JetMonomial(Vec::new())
    }

    pub fn from_jets(mut jets: Vec<JetIndex>) -> Self {
        jets.sort();
        JetMonomial(jets)
    }

    pub fn single(jet: JetIndex) -> Self {
        JetMonomial(vec![jet])
    }

    pub fn factors(&self) -> &[JetIndex] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(JetIndex::weight).sum()
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        JetMonomial::from_jets(v)
    }

    /// Replace factor `i` by `jet`, re-sorting.
    pub fn with_factor(&self, i: usize, jet: JetIndex) -> Self {
        let mut v = self.0.clone();
        v[i] = jet;
        JetMonomial::from_jets(v)
    }

    /// Product over factors of `a! b!`.
    pub fn factorial_weight(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, j| acc * j.a.factorial() * j.b.factorial())
    }
}

impl fmt::Display for JetMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{j}")?;
        }
        Ok(())
    }
}

/// Normal-ordered word `L^β L̄^α T^m`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalWord {
    pub l: MultiIndex,
    pub lbar: MultiIndex,
    pub t: u32,
}

impl NormalWord {
    pub fn identity(rank: usize) -> Self {
        NormalWord { l: MultiIndex::zero(rank), lbar: MultiIndex::zero(rank), t: 0 }
    }

    pub fn new(l: MultiIndex, lbar: MultiIndex, t: u32) -> Self {
        debug_assert_eq!(l.rank(), lbar.rank());
        NormalWord { l, lbar, t }
    }

    pub fn generator(g: Generator, rank: usize) -> Self {
        let mut w = Self::identity(rank);
        match g.kind {
            super::GenKind::L => w.l = w.l.plus_unit(g.slot()),
            super::GenKind::Lbar => w.lbar = w.lbar.plus_unit(g.slot()),
            super::GenKind::T => w.t = 1,
        }
        w
    }

    pub fn rank(&self) -> usize {
        self.l.rank()
    }

    pub fn is_identity(&self) -> bool {
        self.t == 0 && self.l.is_zero() && self.lbar.is_zero()
    }

    pub fn weight(&self) -> u32 {
        self.l.order() + self.lbar.order() + 2 * self.t
    }

    /// The word spelled out left to right.
    pub fn letters(&self) -> Vec<Generator> {
        let mut out = Vec::with_capacity(self.weight() as usize);
        for (i, &e) in self.l.entries().iter().enumerate() {
            out.extend(std::iter::repeat_n(Generator::l(i + 1), e as usize));
        }
        for (i, &e) in self.lbar.entries().iter().enumerate() {
            out.extend(std::iter::repeat_n(Generator::lbar(i + 1), e as usize));
        }
        out.extend(std::iter::repeat_n(Generator::t(), self.t as usize));
        out
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut first = true;
        self.l.fmt_power(f, "L", &mut first)?;
        self.lbar.fmt_power(f, "Lb", &mut first)?;
        if self.t > 0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "T")?;
            if self.t > 1 {
                write!(f, "^{}", self.t)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        // C(p + r, r) multi-indices of rank r with order <= p.
        assert_eq!(MultiIndex::all_up_to(1, 4).len(), 5);
        assert_eq!(MultiIndex::all_up_to(2, 3).len(), 10);
        assert_eq!(MultiIndex::all_up_to(4, 2).len(), 15);
        assert_eq!(MultiIndex::from_vec(vec![2, 1]).sub_indices().len(), 6);
    }

    #[test]
    fn rendering() {
        let j = JetIndex::new(Base(0), MultiIndex::from_vec(vec![2, 0]), MultiIndex::from_vec(vec![0, 1]), 1);
        assert_eq!(j.to_string(), "(L1^2 Lb2 T Psi)");
        assert_eq!(JetIndex::plain(Base(2), 1).to_string(), "(Psi2)");
        let w = NormalWord::new(MultiIndex::from_vec(vec![1]), MultiIndex::from_vec(vec![2]), 3);
        assert_eq!(w.to_string(), "L1 Lb1^2 T^3");
        assert_eq!(w.weight(), 9);
        assert_eq!(w.letters().len(), 6);
    }
}
