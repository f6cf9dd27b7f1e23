//! Polynomial model of the algebra used as an independent oracle.
//!
//! On polynomials in `x_1..x_r, y_1..y_r, t` the fields
//! `L_j = ∂/∂x_j`, `L̄_j = ∂/∂y_j - σ x_j ∂/∂t`, `T = ∂/∂t`
//! satisfy `[L̄_j, L_k] = σ δ_jk T` with `T` central, so any identity of the
//! algebra must hold when both sides act on concrete polynomials.

#![allow(dead_code)]

use std::collections::BTreeMap;

use heisloc_core::algebra::{GenKind, Generator, JetIndex, OperatorExpr, SignConvention};
use heisloc_core::scalar::int;
use heisloc_core::Scalar;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub rank: usize,
    pub terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    pub fn zero(rank: usize) -> Self {
        MPoly { rank, terms: BTreeMap::new() }
    }

    pub fn monomial(rank: usize, exps: Vec<u32>, c: Scalar) -> Self {
        let mut p = MPoly::zero(rank);
        p.add_monomial(exps, c);
        p
    }

    fn nvars(&self) -> usize {
        2 * self.rank + 1
    }

    fn t_slot(&self) -> usize {
        2 * self.rank
    }

    fn add_monomial(&mut self, exps: Vec<u32>, c: Scalar) {
        let e = self.terms.entry(exps).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_monomial(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> MPoly {
        let mut out = MPoly::zero(self.rank);
        if s.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_monomial(e, c1 * c2);
            }
        }
        out
    }

    pub fn partial(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(self.rank);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut ne = e.clone();
                ne[var] -= 1;
                out.add_monomial(ne, c * int(i64::from(e[var])));
            }
        }
        out
    }

    pub fn times_var(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(self.rank);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[var] += 1;
            out.terms.insert(ne, c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

pub fn apply_generator(g: Generator, f: &MPoly, conv: SignConvention) -> MPoly {
    let r = f.rank;
    match g.kind {
        GenKind::L => f.partial(g.index - 1),
        GenKind::T => f.partial(f.t_slot()),
        GenKind::Lbar => {
            let j = g.index - 1;
            let dt = f.partial(f.t_slot()).times_var(j);
            f.partial(r + j).add(&dt.scale(&int(-conv.sigma.value())))
        }
    }
}

/// `L^a L̄^b T^m Ψ`.
pub fn eval_jet(jet: &JetIndex, bases: &[MPoly], conv: SignConvention) -> MPoly {
    let mut f = bases[jet.base.0 as usize].clone();
    for _ in 0..jet.m {
        f = apply_generator(Generator::t(), &f, conv);
    }
    for (i, &e) in jet.b.entries().iter().enumerate() {
        for _ in 0..e {
            f = apply_generator(Generator::lbar(i + 1), &f, conv);
        }
    }
    for (i, &e) in jet.a.entries().iter().enumerate() {
        for _ in 0..e {
            f = apply_generator(Generator::l(i + 1), &f, conv);
        }
    }
    f
}

/// The operator `expr` applied to `f`, with jet bases realized by `bases`.
pub fn apply_expr(expr: &OperatorExpr, f: &MPoly, bases: &[MPoly], conv: SignConvention) -> MPoly {
    let mut out = MPoly::zero(f.rank);
    for t in expr.terms() {
        let mut g = f.clone();
        for letter in t.word.letters().into_iter().rev() {
            g = apply_generator(letter, &g, conv);
        }
        for jet in t.jets.factors() {
            g = eval_jet(jet, bases, conv).mul(&g);
        }
        out = out.add(&g.scale(&t.coeff));
    }
    out
}

pub fn random_poly(rng: &mut ChaCha8Rng, rank: usize, monomials: usize, max_deg: u32) -> MPoly {
    let mut p = MPoly::zero(rank);
    let n = 2 * rank + 1;
    for _ in 0..monomials {
        let mut e = vec![0u32; n];
        let mut budget = rng.gen_range(0..=max_deg);
        while budget > 0 {
            e[rng.gen_range(0..n)] += 1;
            budget -= 1;
        }
        let c = int(rng.gen_range(-4..=4i64));
        p.add_monomial(e, c);
    }
    p
}
