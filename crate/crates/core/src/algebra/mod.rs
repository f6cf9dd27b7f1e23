//! The algebra generated by `L_1..L_r`, `L̄_1..L̄_r` and `T` over coefficients
//! that are commutative polynomials in cutoff jets.
//!
//! Words are kept in the normal order `L^β L̄^α T^m`. The only non-trivial
//! relation is `L̄_k L_j = L_j L̄_k + σ δ_jk T`, with `T` central and the sign
//! `σ` carried as data by [`SignConvention`].

mod expr;
mod index;
mod symbols;

pub use expr::{OperatorExpr, Term};
pub use index::{Base, JetIndex, JetMonomial, MultiIndex, NormalWord};
pub use symbols::{GenKind, Generator, LocSign, Sigma, SignConvention};

use crate::scalar::Scalar;

/// Action of a generator on a single jet `L^a L̄^b T^m Ψ`, returned in canonical form.
///
/// `L_j` and `T` only bump an exponent. `L̄_k` has to be moved past `L^a`,
/// which produces `σ a_k (a - e_k, b, m + 1)`.
pub fn jet_apply(g: Generator, jet: &JetIndex, conv: SignConvention) -> Vec<(Scalar, JetIndex)> {
    let i = g.slot();
    match g.kind {
        GenKind::L => {
            let mut out = jet.clone();
            out.a = out.a.plus_unit(i);
            vec![(crate::scalar::int(1), out)]
        }
        GenKind::T => {
            let mut out = jet.clone();
            out.m += 1;
            vec![(crate::scalar::int(1), out)]
        }
        GenKind::Lbar => {
            let mut main = jet.clone();
            main.b = main.b.plus_unit(i);
            let mut res = vec![(crate::scalar::int(1), main)];
            let ak = jet.a.get(i);
            if ak > 0 {
                let mut corr = jet.clone();
                corr.a = corr.a.minus_unit(i);
                corr.m += 1;
                res.push((crate::scalar::int(conv.sigma.value() * ak as i64), corr));
            }
            res
        }
    }
}
