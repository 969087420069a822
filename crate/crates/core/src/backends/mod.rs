//! Exact solvers for [`IpModel`](crate::ip::IpModel)s.

pub mod augment;
pub mod boxed;
pub mod nfold;

/// Result of an exact solve. `nodes` counts search nodes (boxed) or
/// augmentation steps (n-fold, Graver).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Optimal {
        point: Vec<i64>,
        value: i64,
        nodes: u64,
    },
    Infeasible {
        nodes: u64,
    },
}

impl SolveOutcome {
    pub fn value(&self) -> Option<i64> {
        match self {
            SolveOutcome::Optimal { value, .. } => Some(*value),
            SolveOutcome::Infeasible { .. } => None,
        }
    }

    pub fn point(&self) -> Option<&[i64]> {
        match self {
            SolveOutcome::Optimal { point, .. } => Some(point),
            SolveOutcome::Infeasible { .. } => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            SolveOutcome::Optimal { nodes, .. } | SolveOutcome::Infeasible { nodes } => *nodes,
        }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self, SolveOutcome::Optimal { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Boxed,
    NFold,
    Augment,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Boxed => "boxed",
            Backend::NFold => "nfold",
            Backend::Augment => "augment",
        }
    }
}

/// Solves `model` with the chosen backend and default configuration.
pub fn solve(model: &crate::ip::IpModel, backend: Backend) -> crate::Result<SolveOutcome> {
    match backend {
        Backend::Boxed => boxed::solve_boxed(model),
        Backend::NFold => nfold::solve_nfold(model),
        Backend::Augment => augment::solve_augment(model),
    }
}
