//! Seeded randomized checks of the algebra laws: associativity, Jacobi, grading.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Base, GenKind, Generator, JetIndex, JetMonomial, MultiIndex, NormalWord, OperatorExpr, SignConvention, Term};
use crate::error::Result;
use crate::scalar::ratio;

/// Total-weight cap for the random operands of [`run_properties`].
pub const MAX_WEIGHT: u32 = 5;

fn random_multi(rng: &mut ChaCha8Rng, rank: usize, budget: &mut u32) -> MultiIndex {
    let mut v = vec![0u32; rank];
    for e in v.iter_mut() {
        let k = rng.gen_range(0..=(*budget).min(2));
        *e = k;
        *budget -= k;
    }
    MultiIndex::from_vec(v)
}

/// A random term of total weight at most `max_weight`.
pub fn random_term(rng: &mut ChaCha8Rng, rank: usize, max_weight: u32, with_jets: bool) -> Term {
    let mut budget = rng.gen_range(0..=max_weight);
    let mut jets = Vec::new();
    if with_jets {
        for _ in 0..rng.gen_range(0..=2) {
            let a = random_multi(rng, rank, &mut budget);
            let b = random_multi(rng, rank, &mut budget);
            let m = if budget >= 2 && rng.gen_bool(0.3) {
                budget -= 2;
                1
            } else {
                0
            };
            jets.push(JetIndex::new(Base(rng.gen_range(0..2)), a, b, m));
        }
    }
    let l = random_multi(rng, rank, &mut budget);
    let lbar = random_multi(rng, rank, &mut budget);
    let t = if budget >= 2 && rng.gen_bool(0.4) { 1 } else { 0 };
    let num = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den = rng.gen_range(1..=3);
    Term::new(ratio(num, den), JetMonomial::from_jets(jets), NormalWord::new(l, lbar, t))
}

pub fn random_expr(rng: &mut ChaCha8Rng, rank: usize, max_terms: usize, max_weight: u32, with_jets: bool) -> Result<OperatorExpr> {
    let n = rng.gen_range(1..=max_terms);
    OperatorExpr::from_terms(rank, (0..n).map(|_| random_term(rng, rank, max_weight, with_jets)))
}

fn random_generator(rng: &mut ChaCha8Rng, rank: usize) -> Generator {
    let kind = match rng.gen_range(0..3) {
        0 => GenKind::L,
        1 => GenKind::Lbar,
        _ => GenKind::T,
    };
    match kind {
        GenKind::T => Generator::t(),
        GenKind::L => Generator::l(rng.gen_range(1..=rank)),
        GenKind::Lbar => Generator::lbar(rng.gen_range(1..=rank)),
    }
}

/// A sum of up to two products of up to three generators (no jets).
pub fn random_generator_expr(rng: &mut ChaCha8Rng, rank: usize, conv: SignConvention) -> Result<OperatorExpr> {
    let mut acc = OperatorExpr::zero(rank)?;
    for _ in 0..rng.gen_range(1..=2) {
        let letters: Vec<Generator> = (0..rng.gen_range(1..=3)).map(|_| random_generator(rng, rank)).collect();
        let c = ratio(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }, 1);
        acc = acc.add(&OperatorExpr::word(&letters, rank, conv)?.scale(&c))?;
    }
    Ok(acc)
}

/// Every output term of `a * b` has total weight equal to the sum of the inputs'.
/// Only meaningful for single-term operands.
pub fn grading_holds(a: &Term, b: &Term, rank: usize, conv: SignConvention) -> Result<bool> {
    let ea = OperatorExpr::from_term(rank, a.clone())?;
    let eb = OperatorExpr::from_term(rank, b.clone())?;
    let want = a.total_weight() + b.total_weight();
    Ok(ea.mul(&eb, conv)?.total_weights().into_iter().all(|w| w == want))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PropertyRun {
    pub seed: u64,
    pub instances: usize,
    pub associativity_failures: usize,
    pub jacobi_failures: usize,
    pub grading_failures: usize,
    pub grading_products: usize,
    pub first_failure: Option<String>,
}

impl PropertyRun {
    pub fn passed(&self) -> bool {
        self.associativity_failures == 0 && self.jacobi_failures == 0 && self.grading_failures == 0
    }
}

/// `instances` associativity triples and `instances` Jacobi triples, ranks cycling over 1..=max_rank.
pub fn run_properties(seed: u64, instances: usize, max_rank: usize, conv: SignConvention) -> Result<PropertyRun> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut run = PropertyRun { seed, instances, ..Default::default() };
    for i in 0..instances {
        let rank = 1 + i % max_rank.max(1);

        let a = random_expr(&mut rng, rank, 3, MAX_WEIGHT, true)?;
        let b = random_expr(&mut rng, rank, 3, MAX_WEIGHT, true)?;
        let c = random_expr(&mut rng, rank, 3, MAX_WEIGHT, true)?;
        let lhs = a.mul(&b, conv)?.mul(&c, conv)?;
        let rhs = a.mul(&b.mul(&c, conv)?, conv)?;
        if lhs != rhs {
            run.associativity_failures += 1;
            run.first_failure.get_or_insert_with(|| format!("associativity: A={a} B={b} C={c}"));
        }

        for (x, y) in [(&a, &b), (&b, &c)] {
            for tx in x.terms() {
                for ty in y.terms() {
                    run.grading_products += 1;
                    if !grading_holds(&tx, &ty, rank, conv)? {
                        run.grading_failures += 1;
                        run.first_failure.get_or_insert_with(|| format!("grading: {tx} * {ty}"));
                    }
                }
            }
        }

        let x = random_generator_expr(&mut rng, rank, conv)?;
        let y = random_generator_expr(&mut rng, rank, conv)?;
        let z = random_generator_expr(&mut rng, rank, conv)?;
        let j = x
            .commutator(&y.commutator(&z, conv)?, conv)?
            .add(&y.commutator(&z.commutator(&x, conv)?, conv)?)?
            .add(&z.commutator(&x.commutator(&y, conv)?, conv)?)?;
        if !j.is_zero() {
            run.jacobi_failures += 1;
            run.first_failure.get_or_insert_with(|| format!("jacobi: X={x} Y={y} Z={z}"));
        }
    }
    Ok(run)
}
