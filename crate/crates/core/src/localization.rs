//! Localized powers `(T^p)_Ψ` and the structure of their brackets with `L_k`, `L̄_k`.
//!
//! `(T^p)_Ψ = Σ_{|α+β| <= p} ± (L^α L̄^β Ψ) / (α! β!) · L^β L̄^α T^{p-|α+β|}`, where the sign is
//! `(-1)^{|α|}` or `(-1)^{|β|}` according to [`LocSign`].
//!
//! The bracket `[L̄_k, (T^p)_Ψ]` is split into the principal part
//! `(T^{p-1})_{TΨ} ∘ L̄_k` (jets of the same base with one extra `T`) plus a residual;
//! `[L_k, (T^p)_Ψ]` is all residual. Residuals are checked structurally: every term
//! must carry exactly `p + 1` weight on the cutoff, a word of weight `p`, and no `T`
//! in the word.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{
    jet_apply, Base, GenKind, Generator, JetIndex, JetMonomial, LocSign, MultiIndex, NormalWord, OperatorExpr,
    Sigma, SignConvention, Term,
};
use crate::error::{Error, Result};
use crate::report::{Status, VerificationReport};
use crate::rewrite;
use crate::scalar::{binomial, int, to_f64, Scalar};

/// `checkId` of the per-convention rows emitted by [`convention_search`].
pub const CONVENTION_ROW_ID: &str = "localization.convention_search";

#[derive(Debug, Clone, PartialEq)]
pub struct LocalizedPower {
    pub p: u32,
    pub base: Base,
    pub conv: SignConvention,
    pub expr: OperatorExpr,
}

impl LocalizedPower {
    pub fn rank(&self) -> usize {
        self.expr.rank()
    }
}

/// Defining sum of `(T^p)` localized by the jets `L^α L̄^β T^shift Ψ`.
///
/// `shift = 1` realizes `(T^p)_{TΨ}`.
pub fn localized_power_expr(p: u32, base: Base, shift: u32, rank: usize, conv: SignConvention) -> Result<OperatorExpr> {
    let mut out = OperatorExpr::zero(rank)?;
    let pairs = MultiIndex::all_up_to(2 * rank, p);
    for ab in pairs {
        let (alpha, beta) = ab.entries().split_at(rank);
        let alpha = MultiIndex::from_vec(alpha.to_vec());
        let beta = MultiIndex::from_vec(beta.to_vec());
        let order = alpha.order() + beta.order();
        let sign_exp = match conv.loc_sign {
            LocSign::Alpha => alpha.order(),
            LocSign::Beta => beta.order(),
        };
        let sign = if sign_exp % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let coeff = Scalar::new(sign, alpha.factorial() * beta.factorial());
        let jet = JetIndex::new(base, alpha.clone(), beta.clone(), shift);
        let word = NormalWord::new(beta, alpha, p - order);
        out.add_term(Term::new(coeff, JetMonomial::single(jet), word))?;
    }
    Ok(out)
}

pub fn build_localized_t_power(p: u32, base: Base, rank: usize, conv: SignConvention) -> Result<LocalizedPower> {
    let expr = localized_power_expr(p, base, 0, rank, conv)?;
    Ok(LocalizedPower { p, base, conv, expr })
}

/// Number of pairs `(α, β)` of rank-`r` multi-indices with `|α + β| <= p`, i.e. `C(p + 2r, 2r)`.
pub fn expected_term_count(p: u32, rank: usize) -> usize {
    binomial(p + 2 * rank as u32, 2 * rank as u32).to_usize().unwrap_or(usize::MAX)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualProfile {
    pub term_count: usize,
    pub min_jet_weight: Option<u32>,
    pub max_jet_weight: Option<u32>,
    pub min_word_weight: Option<u32>,
    pub max_word_weight: Option<u32>,
    pub t_word_power_present: bool,
    /// `Σ |coeff| · Π a! b!` over the residual terms.
    pub l1_weighted_coeff: Scalar,
}

impl ResidualProfile {
    pub fn of(expr: &OperatorExpr) -> Self {
        let mut p = ResidualProfile {
            term_count: expr.len(),
            min_jet_weight: None,
            max_jet_weight: None,
            min_word_weight: None,
            max_word_weight: None,
            t_word_power_present: false,
            l1_weighted_coeff: Scalar::zero(),
        };
        for t in expr.terms() {
            let (jw, ww) = (t.jet_weight(), t.word_weight());
            p.min_jet_weight = Some(p.min_jet_weight.map_or(jw, |x| x.min(jw)));
            p.max_jet_weight = Some(p.max_jet_weight.map_or(jw, |x| x.max(jw)));
            p.min_word_weight = Some(p.min_word_weight.map_or(ww, |x| x.min(ww)));
            p.max_word_weight = Some(p.max_word_weight.map_or(ww, |x| x.max(ww)));
            p.t_word_power_present |= t.word.t > 0;
            p.l1_weighted_coeff += t.coeff.abs() * Scalar::from_integer(t.jets.factorial_weight());
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    pub commutator: OperatorExpr,
    pub principal: OperatorExpr,
    pub residual: OperatorExpr,
    pub profile: ResidualProfile,
}

/// `[g, (T^p)_Ψ] = principal + residual` for `g = L_k` (principal 0) or `g = L̄_k`
/// (principal `(T^{p-1})_{TΨ} ∘ L̄_k`, zero at `p = 0`).
pub fn principal_residual_split(g: Generator, lp: &LocalizedPower) -> Result<Split> {
    let rank = lp.rank();
    g.validate(rank)?;
    let conv = lp.conv;
    let ge = OperatorExpr::generator(g, rank)?;
    let commutator = ge.commutator(&lp.expr, conv)?;
    let principal = match g.kind {
        GenKind::T => {
            return Err(Error::InvalidArgument(
                "bracket with T is not split; use OperatorExpr::commutator directly".into(),
            ))
        }
        GenKind::L => OperatorExpr::zero(rank)?,
        GenKind::Lbar if lp.p == 0 => OperatorExpr::zero(rank)?,
        GenKind::Lbar => localized_power_expr(lp.p - 1, lp.base, 1, rank, conv)?.mul(&ge, conv)?,
    };
    let residual = commutator.sub(&principal)?;
    let profile = ResidualProfile::of(&residual);
    Ok(Split { commutator, principal, residual, profile })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructureCheck {
    pub pass: bool,
    /// `(l1WeightedCoeff)^{1/(p+1)}`; 0 for an empty residual.
    pub k_p: f64,
    pub expected_jet_weight: u32,
    pub expected_word_weight: u32,
    /// Renderings of terms that violate the expected shape.
    pub offending: Vec<String>,
}

/// Residual shape at level `p`: jet weight `p + 1`, word weight `p`, no `T` in words.
pub fn residual_structure_check(residual: &OperatorExpr, p: u32) -> StructureCheck {
    residual_structure_check_with(residual, p, p + 1, p)
}

pub fn residual_structure_check_with(residual: &OperatorExpr, p: u32, jet_w: u32, word_w: u32) -> StructureCheck {
    let offending: Vec<String> = residual
        .terms()
        .filter(|t| t.jet_weight() != jet_w || t.word_weight() != word_w || t.word.t > 0)
        .map(|t| t.to_string())
        .collect();
    let profile = ResidualProfile::of(residual);
    let k_p = if residual.is_zero() {
        0.0
    } else {
        to_f64(&profile.l1_weighted_coeff).powf(1.0 / f64::from(p + 1))
    };
    StructureCheck { pass: offending.is_empty(), k_p, expected_jet_weight: jet_w, expected_word_weight: word_w, offending }
}

/// Profile-only form of the shape test (no diagnostics).
pub fn profile_passes(profile: &ResidualProfile, p: u32) -> bool {
    if profile.term_count == 0 {
        return true;
    }
    profile.min_jet_weight == Some(p + 1)
        && profile.max_jet_weight == Some(p + 1)
        && profile.min_word_weight == Some(p)
        && profile.max_word_weight == Some(p)
        && !profile.t_word_power_present
}

/// Report for one `(g, p)` split under `conv`.
pub fn split_report(g: Generator, p: u32, rank: usize, conv: SignConvention) -> Result<VerificationReport> {
    let lp = build_localized_t_power(p, Base(0), rank, conv)?;
    let split = principal_residual_split(g, &lp)?;
    let chk = residual_structure_check(&split.residual, p);
    Ok(VerificationReport::from_bool("localization.residual_structure", chk.pass)
        .param("generator", g.to_string())
        .param("p", p)
        .param("nMinus1", rank)
        .with_convention(conv)
        .metric("K_p", chk.k_p)
        .metric("residualTerms", split.residual.len() as f64)
        .metric("literallyZero", if split.residual.is_zero() { 1.0 } else { 0.0 })
        .with_counterexample(if chk.pass { None } else { Some(chk.offending.join(" ")) }))
}

/// Outcome of [`box_bracket_check`] for one `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxBracketOutcome {
    pub k: usize,
    pub leibniz_holds: bool,
    /// `[L_k L̄_k, P] - (T^{p-1})_{TΨ} ∘ L_k L̄_k`.
    pub residual: OperatorExpr,
    /// Exact profile: jet weight `p+1`, word weight `p+1`, no `T`.
    pub exact: StructureCheck,
    /// Order profile, see [`box_residual_order_check`].
    pub order: StructureCheck,
}

/// Order profile of a second-order bracket residual at level `p`: every term is `T`-free,
/// has total weight `2p+2`, and either (jet `p+1`, word `p+1`) or (jet `p+2`, word `p`).
pub fn box_residual_order_check(residual: &OperatorExpr, p: u32) -> StructureCheck {
    let offending: Vec<String> = residual
        .terms()
        .filter(|t| {
            let (j, w) = (t.jet_weight(), t.word_weight());
            t.word.t > 0 || !((j == p + 1 && w == p + 1) || (j == p + 2 && w == p))
        })
        .map(|t| t.to_string())
        .collect();
    let base = residual_structure_check_with(residual, p, p + 1, p + 1);
    StructureCheck { pass: offending.is_empty(), offending, ..base }
}

/// Checks for the second-order bracket `[L_k L̄_k, (T^p)_Ψ]`, one outcome per `k`, plus
/// whether the sum over `k` equals `-[□_b, (T^p)_Ψ]` with `□_b = Σ L̄_k* L̄_k`.
pub fn box_bracket_check(p: u32, rank: usize, conv: SignConvention) -> Result<(Vec<BoxBracketOutcome>, bool)> {
    if p == 0 {
        return Err(Error::InvalidArgument("box bracket check needs p >= 1".into()));
    }
    let lp = build_localized_t_power(p, Base(0), rank, conv)?;
    let prev = localized_power_expr(p - 1, Base(0), 1, rank, conv)?;
    let mut outcomes = Vec::with_capacity(rank);
    let mut summed = OperatorExpr::zero(rank)?;
    let mut box_b = OperatorExpr::zero(rank)?;
    for k in 1..=rank {
        let lk = OperatorExpr::generator(Generator::l(k), rank)?;
        let lbk = OperatorExpr::generator(Generator::lbar(k), rank)?;
        let lkl = lk.mul(&lbk, conv)?;
        let full = lkl.commutator(&lp.expr, conv)?;
        let split = lk.mul(&lbk.commutator(&lp.expr, conv)?, conv)?.add(&lk.commutator(&lp.expr, conv)?.mul(&lbk, conv)?)?;
        let leibniz_holds = full == split;
        let residual = full.sub(&prev.mul(&lkl, conv)?)?;
        let exact = residual_structure_check_with(&residual, p, p + 1, p + 1);
        let order = box_residual_order_check(&residual, p);
        summed = summed.add(&full)?;
        box_b = box_b.add(&lbk.adjoint(conv)?.mul(&lbk, conv)?)?;
        outcomes.push(BoxBracketOutcome { k, leibniz_holds, residual, exact, order });
    }
    let box_bracket = box_b.commutator(&lp.expr, conv)?;
    let sums_to_box = summed == box_bracket.neg();
    Ok((outcomes, sums_to_box))
}

/// One report per `k` (Leibniz split and order profile; the exact `(p+1, p+1)` profile is
/// recorded as a metric) and one for the sum over `k`.
pub fn box_bracket_reports(p: u32, rank: usize, conv: SignConvention) -> Result<Vec<VerificationReport>> {
    let (outs, sums) = box_bracket_check(p, rank, conv)?;
    let mut v = Vec::new();
    for o in outs {
        let pass = o.leibniz_holds && o.order.pass;
        let cex = if pass {
            None
        } else if !o.leibniz_holds {
            Some("Leibniz split of [L_k Lb_k, P] does not hold".to_string())
        } else {
            Some(o.order.offending.join(" "))
        };
        v.push(
            VerificationReport::from_bool("localization.box_bracket", pass)
                .param("k", o.k)
                .param("p", p)
                .param("nMinus1", rank)
                .with_convention(conv)
                .metric("leibniz", f64::from(u8::from(o.leibniz_holds)))
                .metric("residualTerms", o.residual.len() as f64)
                .metric("exactProfileViolations", o.exact.offending.len() as f64)
                .metric("K_p", o.order.k_p)
                .with_counterexample(cex),
        );
    }
    v.push(
        VerificationReport::from_bool("localization.box_bracket_sum", sums)
            .param("p", p)
            .param("nMinus1", rank)
            .with_convention(conv),
    );
    Ok(v)
}

/// Right side of `[L̄^α, L^α] = Σ_{0≠α'≤α} C(α,α')² α'! T^{|α'|} L^{α-α'} L̄^{α-α'}`.
pub fn alpha_commutator_formula(alpha: &MultiIndex) -> Result<OperatorExpr> {
    let rank = alpha.rank();
    let mut out = OperatorExpr::zero(rank)?;
    for sub in alpha.sub_indices() {
        if sub.is_zero() {
            continue;
        }
        let rest = alpha.checked_sub(&sub).expect("sub index");
        let mut c = sub.factorial();
        for (&n, &k) in alpha.entries().iter().zip(sub.entries()) {
            let b = binomial(n, k);
            c *= &b * &b;
        }
        out.add_term(Term::new(Scalar::from_integer(c), JetMonomial::one(), NormalWord::new(rest.clone(), rest, sub.order())))?;
    }
    Ok(out)
}

fn power_letters(alpha: &MultiIndex, kind: GenKind) -> Vec<Generator> {
    let mut v = Vec::new();
    for (i, &e) in alpha.entries().iter().enumerate() {
        let g = if kind == GenKind::L { Generator::l(i + 1) } else { Generator::lbar(i + 1) };
        v.extend(std::iter::repeat_n(g, e as usize));
    }
    v
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlphaOutcome {
    pub left: OperatorExpr,
    pub right: OperatorExpr,
    pub equal: bool,
    /// The free-word oracle agrees with the normal-ordered left side.
    pub oracle_agrees: bool,
    pub first_difference: Option<String>,
}

pub fn alpha_commutator_check(alpha: &MultiIndex, conv: SignConvention) -> Result<AlphaOutcome> {
    if alpha.order() == 0 {
        return Err(Error::InvalidArgument("alpha must have |alpha| >= 1".into()));
    }
    let rank = alpha.rank();
    let lb = OperatorExpr::word(&power_letters(alpha, GenKind::Lbar), rank, conv)?;
    let l = OperatorExpr::word(&power_letters(alpha, GenKind::L), rank, conv)?;
    let left = lb.commutator(&l, conv)?;
    let right = alpha_commutator_formula(alpha)?;
    let diff = left.sub(&right)?;

    let mut w1 = power_letters(alpha, GenKind::Lbar);
    w1.extend(power_letters(alpha, GenKind::L));
    let mut w2 = power_letters(alpha, GenKind::L);
    w2.extend(power_letters(alpha, GenKind::Lbar));
    let oracle = rewrite::reduce_generators(&w1, rank, conv)?.sub(&rewrite::reduce_generators(&w2, rank, conv)?)?;

    let first_difference = diff.terms().next().map(|t| t.to_string());
    Ok(AlphaOutcome {
        equal: diff.is_zero(),
        oracle_agrees: oracle == left,
        first_difference,
        left,
        right,
    })
}

pub fn alpha_report(alpha: &MultiIndex, conv: SignConvention) -> Result<VerificationReport> {
    let o = alpha_commutator_check(alpha, conv)?;
    Ok(VerificationReport::from_bool("localization.alpha_commutator", o.equal && o.oracle_agrees)
        .param("alpha", alpha.entries().to_vec())
        .with_convention(conv)
        .metric("formulaHolds", f64::from(u8::from(o.equal)))
        .metric("oracleAgrees", f64::from(u8::from(o.oracle_agrees)))
        .with_counterexample(o.first_difference))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section5Outcome {
    pub bracket: OperatorExpr,
    /// Coefficient of `Ψ · L̄^s T`.
    pub coefficient: Scalar,
    /// All other terms differentiate `Ψ` at least once.
    pub others_differentiate: bool,
}

/// `[L L̄, Ψ L̄^s]` in one complex direction.
pub fn section5_coefficient_check(s: u32, conv: SignConvention) -> Result<Section5Outcome> {
    if s == 0 {
        return Err(Error::InvalidArgument("s must be >= 1".into()));
    }
    let rank = 1;
    let l = OperatorExpr::generator(Generator::l(1), rank)?;
    let lb = OperatorExpr::generator(Generator::lbar(1), rank)?;
    let psi_word = Term::new(
        Scalar::one(),
        JetMonomial::single(JetIndex::plain(Base(0), rank)),
        NormalWord::new(MultiIndex::zero(1), MultiIndex::from_vec(vec![s]), 0),
    );
    let op = OperatorExpr::from_term(rank, psi_word)?;
    let bracket = l.mul(&lb, conv)?.commutator(&op, conv)?;
    let target_jets = JetMonomial::single(JetIndex::plain(Base(0), rank));
    let target_word = NormalWord::new(MultiIndex::zero(1), MultiIndex::from_vec(vec![s]), 1);
    let coefficient = bracket.coefficient(&target_jets, &target_word);
    let others_differentiate = bracket
        .terms()
        .filter(|t| !(t.jets == target_jets && t.word == target_word))
        .all(|t| t.jet_weight() >= 1);
    Ok(Section5Outcome { bracket, coefficient, others_differentiate })
}

pub fn section5_report(s: u32, conv: SignConvention) -> Result<VerificationReport> {
    let o = section5_coefficient_check(s, conv)?;
    let magnitude_ok = o.coefficient.abs() == int(i64::from(s));
    Ok(VerificationReport::from_bool("localization.section5_coefficient", magnitude_ok && o.others_differentiate)
        .param("s", s)
        .with_convention(conv)
        .metric("coefficient", to_f64(&o.coefficient))
        .metric("sign", if o.coefficient.is_negative() { -1.0 } else { 1.0 }))
}

/// The printed first-order identities for `T_Ψ = ΨT + Σ(L̄_jΨ)L_j − Σ(L_jΨ)L̄_j`:
/// `[L_k, T_Ψ] = Σ_j (L_k L̄_j Ψ) L_j − Σ_j (L_k L_j Ψ) L̄_j` and the same with `L̄_k`
/// in place of the outer `L_k`. Jets are read as free derivative words and reduced.
pub fn printed_first_order_rhs(g: Generator, rank: usize, conv: SignConvention) -> Result<OperatorExpr> {
    let mut out = OperatorExpr::zero(rank)?;
    for j in 1..=rank {
        let inner = [
            (JetIndex::new(Base(0), MultiIndex::zero(rank), MultiIndex::unit(rank, j - 1), 0), Generator::l(j), 1),
            (JetIndex::new(Base(0), MultiIndex::unit(rank, j - 1), MultiIndex::zero(rank), 0), Generator::lbar(j), -1),
        ];
        for (jet, word_gen, sign) in inner {
            for (c, dj) in jet_apply(g, &jet, conv) {
                out.add_term(Term::new(c * int(sign), JetMonomial::single(dj), NormalWord::generator(word_gen, rank)))?;
            }
        }
    }
    Ok(out)
}

/// `T_Ψ` exactly as printed (signs independent of the convention).
pub fn printed_t_psi(rank: usize) -> Result<OperatorExpr> {
    localized_power_expr(1, Base(0), 0, rank, SignConvention::new(Sigma::Plus, LocSign::Alpha))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrintedBracketOutcome {
    /// `[g, printed T_Ψ]` equals the printed right side.
    pub literal: bool,
    /// `[g, (T^1)_Ψ]` equals `ε ×` printed right side, `ε = +1` for `alpha`, `-1` for `beta`.
    pub transported: bool,
}

pub fn printed_bracket_check(g: Generator, rank: usize, conv: SignConvention) -> Result<PrintedBracketOutcome> {
    let ge = OperatorExpr::generator(g, rank)?;
    let rhs = printed_first_order_rhs(g, rank, conv)?;
    let literal = ge.commutator(&printed_t_psi(rank)?, conv)? == rhs;
    let own = build_localized_t_power(1, Base(0), rank, conv)?.expr;
    let eps = match conv.loc_sign {
        LocSign::Alpha => int(1),
        LocSign::Beta => int(-1),
    };
    let transported = ge.commutator(&own, conv)? == rhs.scale(&eps);
    Ok(PrintedBracketOutcome { literal, transported })
}

/// One row of the convention grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ConventionRow {
    pub conv: SignConvention,
    /// `(check label, passed)` in a fixed order.
    pub checks: Vec<(String, bool)>,
}

impl ConventionRow {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConventionSearch {
    pub p_max: u32,
    pub rank: usize,
    pub rows: Vec<ConventionRow>,
}

impl ConventionSearch {
    pub fn passing(&self) -> Vec<SignConvention> {
        self.rows.iter().filter(|r| r.all_pass()).map(|r| r.conv).collect()
    }

    /// One report per convention (metrics hold 1/0 per check) plus a summary.
    pub fn reports(&self) -> Vec<VerificationReport> {
        let mut v: Vec<VerificationReport> = self
            .rows
            .iter()
            .map(|r| {
                let mut rep = VerificationReport::new(
                    CONVENTION_ROW_ID,
                    if r.all_pass() { Status::Pass } else { Status::Degenerate },
                )
                .param("pMax", self.p_max)
                .param("nMinus1", self.rank)
                .with_convention(r.conv);
                for (label, ok) in &r.checks {
                    rep = rep.metric(label, f64::from(u8::from(*ok)));
                }
                rep
            })
            .collect();
        let passing: Vec<String> = self.passing().iter().map(|c| c.to_string()).collect();
        v.push(
            VerificationReport::from_bool("localization.convention_passing_set", !passing.is_empty())
                .param("pMax", self.p_max)
                .param("nMinus1", self.rank)
                .param("passing", passing)
                .metric("passingCount", self.passing().len() as f64),
        );
        v
    }
}

/// Runs the residual-shape checks for `g ∈ {L_k, L̄_k}`, `p = 1..=p_max` and the
/// `[L̄^α, L^α]` expansion for `|α| <= 3` under all four conventions.
pub fn convention_search(p_max: u32, rank: usize) -> Result<ConventionSearch> {
    if p_max == 0 {
        return Err(Error::InvalidArgument("pMax must be >= 1".into()));
    }
    if rank == 0 {
        return Err(Error::ZeroRank);
    }
    let alphas: Vec<MultiIndex> =
        MultiIndex::all_up_to(rank, 3).into_iter().filter(|a| a.order() >= 1).collect();
    let mut rows = Vec::with_capacity(4);
    for conv in SignConvention::all() {
        let mut checks = Vec::new();
        for p in 1..=p_max {
            let lp = build_localized_t_power(p, Base(0), rank, conv)?;
            for k in 1..=rank {
                for g in [Generator::l(k), Generator::lbar(k)] {
                    let split = principal_residual_split(g, &lp)?;
                    let ok = residual_structure_check(&split.residual, p).pass;
                    checks.push((format!("{g}@p={p}"), ok));
                }
            }
        }
        let alpha_ok = alphas
            .iter()
            .map(|a| alpha_commutator_check(a, conv).map(|o| o.equal))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
        checks.push(("alpha<=3".to_string(), alpha_ok));
        rows.push(ConventionRow { conv, checks });
    }
    Ok(ConventionSearch { p_max, rank, rows })
}

/// Map from `p` to the largest `K_p` over the split checks, for the growth record.
pub fn k_p_table(p_max: u32, rank: usize, conv: SignConvention) -> Result<BTreeMap<u32, f64>> {
    let mut out = BTreeMap::new();
    for p in 1..=p_max {
        let lp = build_localized_t_power(p, Base(0), rank, conv)?;
        let mut best: f64 = 0.0;
        for k in 1..=rank {
            for g in [Generator::l(k), Generator::lbar(k)] {
                let split = principal_residual_split(g, &lp)?;
                best = best.max(residual_structure_check(&split.residual, p).k_p);
            }
        }
        out.insert(p, best);
    }
    Ok(out)
}
