use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::index::{Base, JetIndex, JetMonomial, MultiIndex, NormalWord};
use super::symbols::{GenKind, Generator, SignConvention};
use super::jet_apply;
use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};

/// `coeff · jets · word`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Scalar,
    pub jets: JetMonomial,
    pub word: NormalWord,
}

impl Term {
    pub fn new(coeff: Scalar, jets: JetMonomial, word: NormalWord) -> Self {
        Term { coeff, jets, word }
    }

    pub fn jet_weight(&self) -> u32 {
        self.jets.weight()
    }

    pub fn word_weight(&self) -> u32 {
        self.word.weight()
    }

    pub fn total_weight(&self) -> u32 {
        self.jet_weight() + self.word_weight()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.coeff.is_negative() { "-" } else { "+" };
        write!(f, "{sign} {}", self.coeff.abs())?;
        if !self.jets.is_one() {
            write!(f, " {}", self.jets)?;
        }
        if !self.word.is_identity() || self.jets.is_one() {
            write!(f, " {}", self.word)?;
        }
        Ok(())
    }
}

type Key = (NormalWord, JetMonomial);

fn accumulate<K: std::hash::Hash + Eq>(map: &mut HashMap<K, Scalar>, key: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::hash_map::Entry;
    match map.entry(key) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// Canonical sum of terms: a finite map `(word, jets) -> coefficient` with no zero entries.
///
/// Ordering of the map (word first, then jets) is the rendering order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorExpr {
    rank: usize,
    terms: BTreeMap<Key, Scalar>,
}

impl OperatorExpr {
    pub fn zero(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(OperatorExpr { rank, terms: BTreeMap::new() })
    }

    pub fn one(rank: usize) -> Result<Self> {
        let mut e = Self::zero(rank)?;
        e.terms.insert((NormalWord::identity(rank), JetMonomial::one()), Scalar::one());
        Ok(e)
    }

    pub fn generator(g: Generator, rank: usize) -> Result<Self> {
        g.validate(rank)?;
        Self::from_term(rank, Term::new(Scalar::one(), JetMonomial::one(), NormalWord::generator(g, rank)))
    }

    /// Product of generators in the given left-to-right order, normal ordered.
    pub fn word(letters: &[Generator], rank: usize, conv: SignConvention) -> Result<Self> {
        let mut acc = Self::one(rank)?;
        for &g in letters {
            acc = acc.mul(&Self::generator(g, rank)?, conv)?;
        }
        Ok(acc)
    }

    /// Multiplication by the function `jet`.
    pub fn jet(jet: JetIndex) -> Result<Self> {
        let rank = jet.rank();
        Self::from_term(rank, Term::new(Scalar::one(), JetMonomial::single(jet), NormalWord::identity(rank)))
    }

    /// Multiplication by the undifferentiated cutoff `base`.
    pub fn cutoff(base: Base, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Self::jet(JetIndex::plain(base, rank))
    }

    pub fn from_term(rank: usize, t: Term) -> Result<Self> {
        let mut e = Self::zero(rank)?;
        e.add_term(t)?;
        Ok(e)
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        let mut e = Self::zero(rank)?;
        for t in terms {
            e.add_term(t)?;
        }
        Ok(e)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|((w, j), c)| Term::new(c.clone(), j.clone(), w.clone()))
    }

    pub fn coefficient(&self, jets: &JetMonomial, word: &NormalWord) -> Scalar {
        self.terms.get(&(word.clone(), jets.clone())).cloned().unwrap_or_else(Scalar::zero)
    }

    fn check_term(&self, t: &Term) -> Result<()> {
        let bad = t.word.rank() != self.rank || t.jets.factors().iter().any(|j| j.rank() != self.rank);
        if bad {
            let other = if t.word.rank() != self.rank {
                t.word.rank()
            } else {
                t.jets.factors().iter().map(JetIndex::rank).find(|&r| r != self.rank).unwrap_or(0)
            };
            return Err(Error::RankMismatch { left: self.rank, right: other });
        }
        Ok(())
    }

    pub fn add_term(&mut self, t: Term) -> Result<()> {
        self.check_term(&t)?;
        self.add_raw(t.word, t.jets, t.coeff);
        Ok(())
    }

    fn add_raw(&mut self, word: NormalWord, jets: JetMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((word, jets)) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn same_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_rank(other)?;
        let mut out = self.clone();
        for ((w, j), c) in &other.terms {
            out.add_raw(w.clone(), j.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return OperatorExpr { rank: self.rank, terms: BTreeMap::new() };
        }
        OperatorExpr {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect(),
        }
    }

    /// Normal-ordered composition `self ∘ other`.
    pub fn mul(&self, other: &Self, conv: SignConvention) -> Result<Self> {
        self.same_rank(other)?;
        let mut acc: HashMap<Key, Scalar> = HashMap::new();
        for ((w1, j1), c1) in &self.terms {
            for ((w2, j2), c2) in &other.terms {
                let c = c1 * c2;
                for ((w, j), c3) in product_raw(j1, w1, j2, w2, conv) {
                    accumulate(&mut acc, (w, j), &c * c3);
                }
            }
        }
        let mut out = OperatorExpr::zero(self.rank)?;
        out.terms = acc.into_iter().collect();
        Ok(out)
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self, conv: SignConvention) -> Result<Self> {
        self.mul(other, conv)?.sub(&other.mul(self, conv)?)
    }

    /// Formal `L²` adjoint: `L_j* = -L̄_j`, `L̄_j* = -L_j`, `T* = T`, coefficients conjugated.
    ///
    /// Conjugation sends the jet `L^a L̄^b T^m Ψ` to `(-1)^m L̄^a L^b T^m Ψ` (real `Ψ`,
    /// `T` purely imaginary), which is then brought back into canonical order.
    pub fn adjoint(&self, conv: SignConvention) -> Result<Self> {
        let rank = self.rank;
        let mut acc: HashMap<Key, Scalar> = HashMap::new();
        for ((w, j), c) in &self.terms {
            let sign = if (w.l.order() + w.lbar.order()) % 2 == 0 { int(1) } else { int(-1) };
            let w_adj = NormalWord::new(w.lbar.clone(), w.l.clone(), w.t);
            let mut conj_terms: Vec<(Scalar, JetMonomial)> = vec![(Scalar::one(), JetMonomial::one())];
            for jet in j.factors() {
                let cj = conjugate_jet(jet, conv);
                conj_terms = conj_terms
                    .iter()
                    .flat_map(|(c0, m0)| {
                        cj.iter().map(move |(c1, j1)| (c0 * c1, m0.times(&JetMonomial::single(j1.clone()))))
                    })
                    .collect();
            }
            for (cc, mono) in conj_terms {
                let id = NormalWord::identity(rank);
                for ((w2, j2), c2) in product_raw(&JetMonomial::one(), &w_adj, &mono, &id, conv) {
                    accumulate(&mut acc, (w2, j2), c * &sign * &cc * c2);
                }
            }
        }
        let mut out = OperatorExpr::zero(rank)?;
        out.terms = acc.into_iter().collect();
        Ok(out)
    }

    /// Each term's total weight, for grading checks.
    pub fn total_weights(&self) -> Vec<u32> {
        self.terms.keys().map(|(w, j)| w.weight() + j.weight()).collect()
    }

    /// Deterministic one-line rendering, terms ordered by word then jets.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Conjugate of `L^a L̄^b T^m Ψ` in canonical form.
fn conjugate_jet(jet: &JetIndex, conv: SignConvention) -> Vec<(Scalar, JetIndex)> {
    let rank = jet.rank();
    let start = JetIndex::new(jet.base, jet.b.clone(), MultiIndex::zero(rank), jet.m);
    let sign = if jet.m.is_multiple_of(2) { int(1) } else { int(-1) };
    let mut cur: Vec<(Scalar, JetIndex)> = vec![(sign, start)];
    for (slot, &e) in jet.a.entries().iter().enumerate() {
        for _ in 0..e {
            let g = Generator::lbar(slot + 1);
            let mut next: HashMap<JetIndex, Scalar> = HashMap::new();
            for (c, j) in &cur {
                for (c2, j2) in jet_apply(g, j, conv) {
                    accumulate(&mut next, j2, c * c2);
                }
            }
            cur = next.into_iter().map(|(j, c)| (c, j)).collect();
        }
    }
    cur.sort_by(|x, y| x.1.cmp(&y.1));
    cur
}

/// `g · (L^β L̄^α T^m)` in normal order.
fn word_left_mul(g: Generator, w: &NormalWord, conv: SignConvention) -> Vec<(i64, NormalWord)> {
    let i = g.slot();
    match g.kind {
        GenKind::L => vec![(1, NormalWord::new(w.l.plus_unit(i), w.lbar.clone(), w.t))],
        GenKind::T => vec![(1, NormalWord::new(w.l.clone(), w.lbar.clone(), w.t + 1))],
        GenKind::Lbar => {
            let mut out = vec![(1, NormalWord::new(w.l.clone(), w.lbar.plus_unit(i), w.t))];
            let bk = w.l.get(i);
            if bk > 0 {
                out.push((
                    conv.sigma.value() * bk as i64,
                    NormalWord::new(w.l.minus_unit(i), w.lbar.clone(), w.t + 1),
                ));
            }
            out
        }
    }
}

/// `(L^β L̄^α T^m) · g` in normal order.
fn word_right_mul(w: &NormalWord, g: Generator, conv: SignConvention) -> Vec<(i64, NormalWord)> {
    let i = g.slot();
    match g.kind {
        GenKind::Lbar => vec![(1, NormalWord::new(w.l.clone(), w.lbar.plus_unit(i), w.t))],
        GenKind::T => vec![(1, NormalWord::new(w.l.clone(), w.lbar.clone(), w.t + 1))],
        GenKind::L => {
            let mut out = vec![(1, NormalWord::new(w.l.plus_unit(i), w.lbar.clone(), w.t))];
            let ak = w.lbar.get(i);
            if ak > 0 {
                out.push((
                    conv.sigma.value() * ak as i64,
                    NormalWord::new(w.l.clone(), w.lbar.minus_unit(i), w.t + 1),
                ));
            }
            out
        }
    }
}

/// Composition of `(j1 w1) ∘ (j2 w2)` with unit coefficients.
///
/// The letters of `w1` are pushed through `j2` right to left (Leibniz rule plus
/// left multiplication of the word), then `w2` is appended letter by letter.
fn product_raw(
    j1: &JetMonomial,
    w1: &NormalWord,
    j2: &JetMonomial,
    w2: &NormalWord,
    conv: SignConvention,
) -> HashMap<Key, Scalar> {
    let rank = w1.rank();
    let mut state: HashMap<(JetMonomial, NormalWord), Scalar> = HashMap::new();
    state.insert((j2.clone(), NormalWord::identity(rank)), Scalar::one());

    for g in w1.letters().into_iter().rev() {
        let mut next = HashMap::with_capacity(state.len() * 2);
        for ((jets, word), c) in &state {
            for (i, jet) in jets.factors().iter().enumerate() {
                for (cj, dj) in jet_apply(g, jet, conv) {
                    accumulate(&mut next, (jets.with_factor(i, dj), word.clone()), c * cj);
                }
            }
            for (cw, nw) in word_left_mul(g, word, conv) {
                accumulate(&mut next, (jets.clone(), nw), c * int(cw));
            }
        }
        state = next;
    }

    for g in w2.letters() {
        let mut next = HashMap::with_capacity(state.len() * 2);
        for ((jets, word), c) in &state {
            for (cw, nw) in word_right_mul(word, g, conv) {
                accumulate(&mut next, (jets.clone(), nw), c * int(cw));
            }
        }
        state = next;
    }

    state.into_iter().map(|((j, w), c)| ((w, j1.times(&j)), c)).collect()
}
