//! Suite orchestration: runs every check family for a [`SuiteConfig`] and returns
//! the reports in a fixed order.

use std::str::FromStr;
use std::thread;

use num_complex::Complex64;
use num_rational::Ratio;

use crate::algebra::{Base, Generator, LocSign, MultiIndex, Sigma, SignConvention};
use crate::error::{Error, Result};
use crate::estimate::coercivity::{coercivity_constant, sampled_coercivity, CoercivityStatus};
use crate::estimate::cutoff::{cutoff_build, cutoff_bound_check, BoundConfig, CutoffParams};
use crate::estimate::nesting::{growth_audit, nesting_schedule};
use crate::estimate::poly::SupMethod;
use crate::localization::{
    alpha_report, box_bracket_reports, build_localized_t_power, convention_search, expected_term_count,
    k_p_table, printed_bracket_check, section5_report, split_report,
};
use crate::props::run_properties;
use crate::report::{Status, VerificationReport};
use crate::scalar::{int, ratio, to_f64, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Subset {
    Algebra,
    Localization,
    Constants,
    Cutoff,
    Nesting,
    All,
}

impl Subset {
    fn includes(self, other: Subset) -> bool {
        self == Subset::All || self == other
    }
}

impl FromStr for Subset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "algebra" => Subset::Algebra,
            "localization" => Subset::Localization,
            "constants" => Subset::Constants,
            "cutoff" => Subset::Cutoff,
            "nesting" => Subset::Nesting,
            "all" => Subset::All,
            other => return Err(Error::InvalidArgument(format!("unknown subset `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub p_max: u32,
    pub n_minus1: usize,
    pub cutoff_n_max: u32,
    pub d: Scalar,
    pub r: Scalar,
    pub c_budget: f64,
    pub c_list: Vec<Complex64>,
    pub seed: u64,
    pub property_instances: usize,
    /// The `3` in `3N` boxcar factors.
    pub cutoff_factor: u32,
    pub sup_method: SupMethod,
    /// Coercivity cross-check sample count.
    pub coercivity_samples: usize,
    /// Sweep bound for the nesting schedule.
    pub nesting_p_max: u64,
    /// Largest `s` for the one-direction coefficient check.
    pub s_max: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            p_max: 4,
            n_minus1: 2,
            cutoff_n_max: 6,
            d: ratio(1, 2),
            r: int(1),
            c_budget: 12.0,
            c_list: vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(-1.0, 1.0),
                Complex64::new(0.5, -2.0),
                Complex64::new(-1.0, 0.0),
            ],
            seed: 20_240_601,
            property_instances: 1000,
            cutoff_factor: 3,
            sup_method: SupMethod::RootIsolation,
            coercivity_samples: 1_000_000,
            nesting_p_max: 1 << 20,
            s_max: 6,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let caps = [
            ("pMax", u64::from(self.p_max)),
            ("nMinus1", self.n_minus1 as u64),
            ("cutoffNMax", u64::from(self.cutoff_n_max)),
            ("propertyInstances", self.property_instances as u64),
            ("cutoffFactor", u64::from(self.cutoff_factor)),
            ("coercivitySamples", self.coercivity_samples as u64),
            ("nestingPMax", self.nesting_p_max),
            ("sMax", u64::from(self.s_max)),
        ];
        for (name, v) in caps {
            if v < 1 {
                return Err(Error::InvalidArgument(format!("{name} must be >= 1")));
            }
        }
        if self.d <= int(0) || self.r <= int(0) {
            return Err(Error::InvalidArgument("d and r must be positive".into()));
        }
        if !(self.c_budget.is_finite() && self.c_budget > 0.0) {
            return Err(Error::InvalidArgument("cBudget must be positive".into()));
        }
        if let Some(c) = self.c_list.iter().find(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite c in cList: {c}")));
        }
        if self.nesting_p_max > 1 << 40 {
            return Err(Error::InvalidArgument("nestingPMax must be <= 2^40".into()));
        }
        Ok(())
    }
}

/// Runs the checks selected by `subset` and returns the reports in suite order.
pub fn run_suite(config: &SuiteConfig, subset: Subset) -> Result<Vec<VerificationReport>> {
    config.validate()?;
    let mut out = Vec::new();
    if subset.includes(Subset::Algebra) {
        out.extend(algebra_reports(config)?);
    }
    if subset.includes(Subset::Localization) {
        out.extend(localization_reports(config)?);
    }
    if subset.includes(Subset::Constants) {
        out.extend(coercivity_reports(config)?);
    }
    if subset.includes(Subset::Cutoff) {
        out.extend(cutoff_reports(config)?);
    }
    if subset.includes(Subset::Nesting) {
        out.extend(nesting_reports(config)?);
    }
    Ok(out)
}

pub fn all_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(VerificationReport::passed)
}

pub fn algebra_reports(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let runs: Vec<Result<_>> = thread::scope(|s| {
        let handles: Vec<_> = [Sigma::Plus, Sigma::Minus]
            .into_iter()
            .map(|sigma| {
                s.spawn(move || {
                    let conv = SignConvention::new(sigma, LocSign::Alpha);
                    run_properties(config.seed, config.property_instances, config.n_minus1, conv).map(|r| (sigma, r))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("property thread panicked")).collect()
    });
    let mut out = Vec::new();
    for run in runs {
        let (sigma, r) = run?;
        out.push(
            VerificationReport::from_bool("algebra.properties", r.passed())
                .param("sigma", sigma.value())
                .param("seed", r.seed)
                .param("instances", r.instances)
                .param("nMinus1", config.n_minus1)
                .metric("associativityFailures", r.associativity_failures as f64)
                .metric("jacobiFailures", r.jacobi_failures as f64)
                .metric("gradingFailures", r.grading_failures as f64)
                .metric("gradingProducts", r.grading_products as f64)
                .with_counterexample(r.first_failure),
        );
    }
    Ok(out)
}

pub fn localization_reports(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let rank = config.n_minus1;
    let mut out = Vec::new();
    let search = convention_search(config.p_max, rank)?;
    out.extend(search.reports());
    for conv in search.passing() {
        for p in 1..=config.p_max {
            let lp = build_localized_t_power(p, Base(0), rank, conv)?;
            let want = expected_term_count(p, rank);
            out.push(
                VerificationReport::from_bool("localization.term_count", lp.expr.len() == want)
                    .param("p", p)
                    .param("nMinus1", rank)
                    .with_convention(conv)
                    .metric("terms", lp.expr.len() as f64)
                    .metric("expected", want as f64),
            );
            for k in 1..=rank {
                for g in [Generator::l(k), Generator::lbar(k)] {
                    out.push(split_report(g, p, rank, conv)?);
                }
            }
            out.extend(box_bracket_reports(p, rank, conv)?);
        }
        for k in 1..=rank {
            for g in [Generator::l(k), Generator::lbar(k)] {
                let o = printed_bracket_check(g, rank, conv)?;
                out.push(
                    VerificationReport::from_bool("localization.printed_bracket", o.transported)
                        .param("generator", g.to_string())
                        .param("nMinus1", rank)
                        .with_convention(conv)
                        .metric("literal", f64::from(u8::from(o.literal)))
                        .metric("transported", f64::from(u8::from(o.transported))),
                );
            }
        }
        let table = k_p_table(config.p_max, rank, conv)?;
        let mut rep = VerificationReport::from_bool("localization.k_p", table.values().all(|v| v.is_finite()))
            .param("pMax", config.p_max)
            .param("nMinus1", rank)
            .with_convention(conv);
        for (p, v) in &table {
            rep = rep.metric(&format!("K_{p}"), *v);
        }
        out.push(rep.metric("max", table.values().copied().fold(0.0, f64::max)));

        let mut alphas = MultiIndex::all_up_to(1, 4);
        alphas.extend(
            MultiIndex::all_up_to(2, 4)
                .into_iter()
                .filter(|a| a.entries().iter().all(|&e| e <= 2)),
        );
        for alpha in alphas.into_iter().filter(|a| a.order() >= 1) {
            out.push(alpha_report(&alpha, conv)?);
        }
        for s in 1..=config.s_max {
            out.push(section5_report(s, conv)?);
        }
    }
    Ok(out)
}

pub fn coercivity_reports(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for &c in &config.c_list {
        let res = coercivity_constant(c)?;
        let rep = VerificationReport::new("constants.coercivity", Status::Pass)
            .param("re", c.re)
            .param("im", c.im)
            .param("samples", config.coercivity_samples)
            .metric("constant", res.constant)
            .metric("foot", res.foot);
        let rep = match res.status {
            CoercivityStatus::Degenerate => VerificationReport { status: Status::Degenerate, ..rep },
            CoercivityStatus::Ok => {
                let sampled = sampled_coercivity(c, config.coercivity_samples);
                let rel = (sampled - res.constant).abs() / res.constant;
                let pass = res.constant > 0.0 && rel <= 1e-6;
                VerificationReport { status: if pass { Status::Pass } else { Status::Fail }, ..rep }
                    .metric("sampled", sampled)
                    .metric("relativeError", rel)
            }
        };
        out.push(rep);
    }
    Ok(out)
}

pub fn cutoff_reports(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let bound = BoundConfig { c_budget: config.c_budget, method: config.sup_method };
    let results: Vec<Result<VerificationReport>> = thread::scope(|s| {
        let handles: Vec<_> = (1..=config.cutoff_n_max)
            .map(|n| s.spawn(move || cutoff_report(config, n, &bound)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("cutoff thread panicked")).collect()
    });
    results.into_iter().collect()
}

fn cutoff_report(config: &SuiteConfig, n: u32, bound: &BoundConfig) -> Result<VerificationReport> {
    let params = CutoffParams { n, d: config.d.clone(), r: config.r.clone(), factor: config.cutoff_factor };
    let k_max = params.max_classical_order();
    let cutoff = cutoff_build(params)?;
    let rep = cutoff_bound_check(&cutoff, k_max, bound)?;

    // Structural guarantees: Ψ = 1 on [-r, r], support inside (-r-d, r+d), 0 <= Ψ <= 1.
    let (lo, hi) = cutoff.psi.support();
    let d = &config.d;
    let r = &config.r;
    let inside = lo > -(r + d) && hi < r + d;
    let one_on_core = [-r.clone(), int(0), r.clone()].iter().all(|x| cutoff.psi.eval(x) == int(1));
    let in_unit_range = rep.sups[0].upper <= 1.0 + 1e-12;

    let mut out = VerificationReport::from_bool("cutoff.bounds", rep.pass && inside && one_on_core && in_unit_range)
        .param("N", n)
        .param("d", config.d.to_string())
        .param("r", config.r.to_string())
        .param("factor", config.cutoff_factor)
        .param("kMax", k_max)
        .param("method", format!("{:?}", config.sup_method))
        .metric("C_emp", rep.c_emp)
        .metric("C_budget", rep.c_budget)
        .metric("integral", to_f64(&cutoff.psi.integral()));
    for s in &rep.sups {
        out = out.metric(&format!("sup_D{}", s.k), s.upper);
    }
    Ok(out)
}

pub fn nesting_reports(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let limit = 2f64.powi(4);
    let mut monotone = true;
    let mut sum_below_one = true;
    let mut max_c: f64 = 0.0;
    let mut prev = 0.0;
    for p in 1..=config.nesting_p_max {
        let s = nesting_schedule(p)?;
        monotone &= s.minimal_c >= prev;
        sum_below_one &= s.sum_d < Ratio::from_integer(1);
        prev = s.minimal_c;
        max_c = max_c.max(s.minimal_c);
    }
    out.push(
        VerificationReport::from_bool("nesting.schedule", monotone && sum_below_one && max_c <= limit)
            .param("pMax", config.nesting_p_max)
            .metric("maxMinimalC", max_c)
            .metric("monotone", f64::from(u8::from(monotone)))
            .metric("sumDBelowOne", f64::from(u8::from(sum_below_one))),
    );

    let mut ps: Vec<u64> = (1..=64).collect();
    ps.extend((7..=40).map(|k| 1u64 << k).take_while(|&p| p <= config.nesting_p_max.max(64)));
    let mut worst: f64 = 0.0;
    let mut all_pass = true;
    for &p in &ps {
        let s = nesting_schedule(p)?;
        let g = growth_audit(p, 1.0, &s)?;
        worst = worst.max(g.rate);
        all_pass &= g.pass;
    }
    out.push(
        VerificationReport::from_bool("nesting.growth_audit", all_pass)
            .param("C0", 1.0)
            .param("p", ps)
            .metric("maxRate", worst)
            .metric("bound", 32.0),
    );
    Ok(out)
}
