//! TOML config file and flag merging. Flags override file values.

use std::path::Path;

use heisloc_core::estimate::coercivity::parse_complex;
use heisloc_core::suite::SuiteConfig;
use heisloc_core::{scalar, Scalar};
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FileConfig {
    pub p_max: Option<u32>,
    pub n_minus1: Option<usize>,
    pub cutoff_n_max: Option<u32>,
    pub d: Option<String>,
    pub r: Option<String>,
    pub c_budget: Option<f64>,
    pub c_list: Option<Vec<String>>,
    pub seed: Option<u64>,
    pub property_instances: Option<usize>,
    pub cutoff_factor: Option<u32>,
    pub sup_method: Option<String>,
    pub coercivity_samples: Option<usize>,
    pub nesting_p_max: Option<u64>,
    pub s_max: Option<u32>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }

    /// Overlay `other` (flags) on top of `self` (file).
    pub fn overlay(self, other: FileConfig) -> FileConfig {
        FileConfig {
            p_max: other.p_max.or(self.p_max),
            n_minus1: other.n_minus1.or(self.n_minus1),
            cutoff_n_max: other.cutoff_n_max.or(self.cutoff_n_max),
            d: other.d.or(self.d),
            r: other.r.or(self.r),
            c_budget: other.c_budget.or(self.c_budget),
            c_list: other.c_list.or(self.c_list),
            seed: other.seed.or(self.seed),
            property_instances: other.property_instances.or(self.property_instances),
            cutoff_factor: other.cutoff_factor.or(self.cutoff_factor),
            sup_method: other.sup_method.or(self.sup_method),
            coercivity_samples: other.coercivity_samples.or(self.coercivity_samples),
            nesting_p_max: other.nesting_p_max.or(self.nesting_p_max),
            s_max: other.s_max.or(self.s_max),
        }
    }

    pub fn resolve(self) -> Result<SuiteConfig, String> {
        let mut cfg = SuiteConfig::default();
        let rational = |name: &str, s: &str| -> Result<Scalar, String> {
            scalar::parse(s).ok_or_else(|| format!("{name}: cannot parse rational `{s}`"))
        };
        if let Some(v) = self.p_max {
            cfg.p_max = v;
        }
        if let Some(v) = self.n_minus1 {
            cfg.n_minus1 = v;
        }
        if let Some(v) = self.cutoff_n_max {
            cfg.cutoff_n_max = v;
        }
        if let Some(v) = &self.d {
            cfg.d = rational("d", v)?;
        }
        if let Some(v) = &self.r {
            cfg.r = rational("r", v)?;
        }
        if let Some(v) = self.c_budget {
            cfg.c_budget = v;
        }
        if let Some(list) = &self.c_list {
            cfg.c_list = list.iter().map(|s| parse_complex(s).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.property_instances {
            cfg.property_instances = v;
        }
        if let Some(v) = self.cutoff_factor {
            cfg.cutoff_factor = v;
        }
        if let Some(v) = &self.sup_method {
            cfg.sup_method = v.parse().map_err(|e: heisloc_core::Error| e.to_string())?;
        }
        if let Some(v) = self.coercivity_samples {
            cfg.coercivity_samples = v;
        }
        if let Some(v) = self.nesting_p_max {
            cfg.nesting_p_max = v;
        }
        if let Some(v) = self.s_max {
            cfg.s_max = v;
        }
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}
