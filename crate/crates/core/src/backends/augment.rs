//! Graver-best augmentation on the standard form of a model.

use super::nfold::initial_point;
use super::SolveOutcome;
use crate::error::{Error, Result};
use crate::graver::{augment_with_basis, graver_basis_with, GraverLimits};
use crate::ip::{IpModel, Sense};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AugmentConfig {
    pub graver: GraverLimits,
    pub max_steps: usize,
    pub feasibility_nodes: u64,
}

impl Default for AugmentConfig {
    fn default() -> Self {
        AugmentConfig {
            graver: GraverLimits::default(),
            max_steps: 100_000,
            feasibility_nodes: 20_000_000,
        }
    }
}

pub fn solve_augment(model: &IpModel) -> Result<SolveOutcome> {
    solve_augment_with(model, AugmentConfig::default())
}

pub fn solve_augment_with(model: &IpModel, config: AugmentConfig) -> Result<SolveOutcome> {
    if model.sense != Sense::Minimize {
        return Err(Error::InvalidModel("augmentation minimises".into()));
    }
    let sf = model.standard_form()?;
    let Some(x0) = initial_point(model, config.feasibility_nodes)? else {
        return Ok(SolveOutcome::Infeasible { nodes: 0 });
    };
    let basis = graver_basis_with(&sf.a, None, config.graver)?;
    let out = augment_with_basis(&sf, &basis, &sf.lift(model, &x0), config.max_steps)?;
    let point = out.point[..sf.original_vars].to_vec();
    let value = model.eval(&point);
    Ok(SolveOutcome::Optimal {
        point,
        value,
        nodes: out.steps as u64,
    })
}
