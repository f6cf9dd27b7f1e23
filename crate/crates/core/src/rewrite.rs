//! Brute-force reduction of free words by single adjacent rewrites.
//!
//! This is deliberately naive: an operator is a list of letters, each either a
//! generator or a multiplication by a free derivative word applied to a base
//! cutoff. One rule is applied at the first reducible position and the result is
//! pushed back onto a worklist until nothing applies. It shares the index types
//! with [`crate::algebra`] but none of the closed-form ordering code, so it
//! serves as an oracle for [`OperatorExpr::mul`](crate::algebra::OperatorExpr::mul).

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::algebra::{
    Base, GenKind, Generator, JetIndex, JetMonomial, MultiIndex, NormalWord, OperatorExpr, SignConvention, Term,
};
use crate::error::Result;
use crate::scalar::{int, Scalar};

/// A multiplication operator by `d_1 d_2 ... d_k base`, with `d_1` applied last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeJet {
    pub base: Base,
    pub derivs: Vec<Generator>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Gen(Generator),
    Fun(FreeJet),
}

pub type FreeWord = Vec<Letter>;

/// True when `x y` must be rewritten for generators `x`, `y` in the order L-block, L̄-block, T.
fn out_of_order(x: Generator, y: Generator) -> bool {
    let rank_of = |g: Generator| match g.kind {
        GenKind::L => 0,
        GenKind::Lbar => 1,
        GenKind::T => 2,
    };
    (rank_of(x), x.index) > (rank_of(y), y.index)
}

/// Rewrite one adjacent pair of generators `x y` (assumed out of order).
fn swap_rule(x: Generator, y: Generator, conv: SignConvention) -> Vec<(Scalar, Vec<Generator>)> {
    let mut out = vec![(Scalar::one(), vec![y, x])];
    if x.kind == GenKind::Lbar && y.kind == GenKind::L && x.index == y.index {
        out.push((int(conv.sigma.value()), vec![Generator::t()]));
    }
    out
}

/// Reduce a derivative word on a base function to canonical jets.
fn reduce_jet(f: &FreeJet, rank: usize, conv: SignConvention) -> Vec<(Scalar, JetIndex)> {
    let mut done: HashMap<Vec<Generator>, Scalar> = HashMap::new();
    let mut work: Vec<(Scalar, Vec<Generator>)> = vec![(Scalar::one(), f.derivs.clone())];
    while let Some((c, w)) = work.pop() {
        match (0..w.len().saturating_sub(1)).find(|&i| out_of_order(w[i], w[i + 1])) {
            None => {
                let e = done.entry(w).or_insert_with(Scalar::zero);
                *e += c;
            }
            Some(i) => {
                for (c2, mid) in swap_rule(w[i], w[i + 1], conv) {
                    let mut nw = w[..i].to_vec();
                    nw.extend(mid);
                    nw.extend_from_slice(&w[i + 2..]);
                    work.push((&c * c2, nw));
                }
            }
        }
    }
    done.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(w, c)| {
            let (mut a, mut b, mut m) = (MultiIndex::zero(rank), MultiIndex::zero(rank), 0);
            for g in w {
                match g.kind {
                    GenKind::L => a = a.plus_unit(g.index - 1),
                    GenKind::Lbar => b = b.plus_unit(g.index - 1),
                    GenKind::T => m += 1,
                }
            }
            (c, JetIndex::new(f.base, a, b, m))
        })
        .collect()
}

/// Reduce a linear combination of free words to a canonical [`OperatorExpr`].
pub fn reduce(words: Vec<(Scalar, FreeWord)>, rank: usize, conv: SignConvention) -> Result<OperatorExpr> {
    // Phase 1: move every function to the left and sort generator letters.
    let mut finished: HashMap<FreeWord, Scalar> = HashMap::new();
    let mut work = words;
    while let Some((c, w)) = work.pop() {
        if c.is_zero() {
            continue;
        }
        let mut rewrite = None;
        for i in 0..w.len().saturating_sub(1) {
            match (&w[i], &w[i + 1]) {
                (Letter::Gen(x), Letter::Fun(f)) => {
                    let mut d = f.clone();
                    d.derivs.insert(0, *x);
                    rewrite = Some((i, vec![(Scalar::one(), vec![Letter::Fun(d)]), (Scalar::one(), vec![Letter::Fun(f.clone()), Letter::Gen(*x)])]));
                    break;
                }
                (Letter::Gen(x), Letter::Gen(y)) if out_of_order(*x, *y) => {
                    let rules = swap_rule(*x, *y, conv)
                        .into_iter()
                        .map(|(c, gs)| (c, gs.into_iter().map(Letter::Gen).collect()))
                        .collect();
                    rewrite = Some((i, rules));
                    break;
                }
                _ => {}
            }
        }
        match rewrite {
            None => {
                *finished.entry(w).or_insert_with(Scalar::zero) += c;
            }
            Some((i, rules)) => {
                for (c2, mid) in rules {
                    let mut nw = w[..i].to_vec();
                    nw.extend(mid);
                    nw.extend_from_slice(&w[i + 2..]);
                    work.push((&c * c2, nw));
                }
            }
        }
    }

    // Phase 2: canonicalize each function's derivative word and collect.
    let mut out = OperatorExpr::zero(rank)?;
    for (w, c) in finished {
        if c.is_zero() {
            continue;
        }
        let mut jet_sums: Vec<(Scalar, Vec<JetIndex>)> = vec![(Scalar::one(), Vec::new())];
        let mut word = NormalWord::identity(rank);
        for letter in &w {
            match letter {
                Letter::Fun(f) => {
                    let red = reduce_jet(f, rank, conv);
                    jet_sums = jet_sums
                        .iter()
                        .flat_map(|(c0, js)| {
                            red.iter().map(move |(c1, j)| {
                                let mut v = js.clone();
                                v.push(j.clone());
                                (c0 * c1, v)
                            })
                        })
                        .collect();
                }
                Letter::Gen(g) => match g.kind {
                    GenKind::L => word.l = word.l.plus_unit(g.index - 1),
                    GenKind::Lbar => word.lbar = word.lbar.plus_unit(g.index - 1),
                    GenKind::T => word.t += 1,
                },
            }
        }
        for (cj, js) in jet_sums {
            out.add_term(Term::new(&c * cj, JetMonomial::from_jets(js), word.clone()))?;
        }
    }
    Ok(out)
}

/// Spell a canonical term as a free word.
pub fn term_to_free(t: &Term) -> FreeWord {
    let mut w: FreeWord = t
        .jets
        .factors()
        .iter()
        .map(|j| {
            let mut derivs = Vec::new();
            for (i, &e) in j.a.entries().iter().enumerate() {
                derivs.extend(std::iter::repeat_n(Generator::l(i + 1), e as usize));
            }
            for (i, &e) in j.b.entries().iter().enumerate() {
                derivs.extend(std::iter::repeat_n(Generator::lbar(i + 1), e as usize));
            }
            derivs.extend(std::iter::repeat_n(Generator::t(), j.m as usize));
            Letter::Fun(FreeJet { base: j.base, derivs })
        })
        .collect();
    w.extend(t.word.letters().into_iter().map(Letter::Gen));
    w
}

/// Product of operators computed by concatenating free words and reducing.
pub fn product(factors: &[&OperatorExpr], conv: SignConvention) -> Result<OperatorExpr> {
    let rank = factors.first().map_or(1, |f| f.rank());
    let mut words: Vec<(Scalar, FreeWord)> = vec![(Scalar::one(), Vec::new())];
    for f in factors {
        let terms: Vec<Term> = f.terms().collect();
        words = words
            .iter()
            .flat_map(|(c, w)| {
                terms.iter().map(move |t| {
                    let mut nw = w.clone();
                    nw.extend(term_to_free(t));
                    (c * &t.coeff, nw)
                })
            })
            .collect();
    }
    reduce(words, rank, conv)
}

/// `[A, B]` through the free-word route.
pub fn commutator(a: &OperatorExpr, b: &OperatorExpr, conv: SignConvention) -> Result<OperatorExpr> {
    product(&[a, b], conv)?.sub(&product(&[b, a], conv)?)
}

/// Reduce a plain generator word.
pub fn reduce_generators(letters: &[Generator], rank: usize, conv: SignConvention) -> Result<OperatorExpr> {
    reduce(vec![(Scalar::one(), letters.iter().copied().map(Letter::Gen).collect())], rank, conv)
}
