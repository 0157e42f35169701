//! Normalizer towers `N_0 = G`, `N_{k+1} = N_H(N_k)` inside a finite
//! ambient group, and the comparison with the automorphism tower of a
//! centerless group embedded in its terminal stage.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::tower::{run_tower, Budget, TowerStatus};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizerTower {
    pub ambient: FiniteGroup,
    pub stages: Vec<Subgroup>,
    /// Least `k` with `N_{k+1} = N_k`.
    pub height: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizerTowerReport {
    pub ambient_order: usize,
    pub stage_orders: Vec<usize>,
    pub height: usize,
    pub stages: Vec<Vec<usize>>,
}

pub fn normalizer_tower(ambient: &FiniteGroup, start: &Subgroup) -> Result<NormalizerTower> {
    ambient.check_subgroup(start)?;
    let mut stages = vec![start.clone()];
    loop {
        let top = stages.last().expect("non-empty");
        let next = ambient.normalizer_in(top)?;
        if next.order() == top.order() {
            break;
        }
        stages.push(next);
    }
    let height = stages.len() - 1;
    Ok(NormalizerTower {
        ambient: ambient.clone(),
        stages,
        height,
    })
}

impl NormalizerTower {
    pub fn report(&self) -> NormalizerTowerReport {
        NormalizerTowerReport {
            ambient_order: self.ambient.order(),
            stage_orders: self.stages.iter().map(Subgroup::order).collect(),
            height: self.height,
            stages: self.stages.iter().map(|s| s.members().to_vec()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactReport {
    pub terminal_order: usize,
    /// Orders of the automorphism-tower stages embedded in the terminal group.
    pub aut_stage_orders: Vec<usize>,
    pub normalizer_stage_orders: Vec<usize>,
    pub aut_height: usize,
    pub normalizer_height: usize,
    pub passed: bool,
    /// First stage at which the two towers differ as subgroups.
    pub first_discrepancy: Option<usize>,
}

/// Embeds each automorphism-tower stage of the centerless group `g` into
/// the terminal stage and compares with the normalizer tower of `g`'s
/// image there.
pub fn aut_equals_normalizer_check(g: &FiniteGroup, budget: Budget) -> Result<FactReport> {
    let z = g.center().order();
    if z != 1 {
        return Err(Error::NotCenterless(z));
    }
    let run = run_tower(g, budget);
    let at = match (run.status.clone(), run.termination) {
        (TowerStatus::Terminated, Some(t)) if t.limit_part == 0 => t,
        _ => {
            return Err(Error::NoFiniteTermination(
                run.error.clone().unwrap_or_else(|| format!("{:?}", run.status)),
            ))
        }
    };
    let block = &run.blocks[0];
    let gamma = at.finite_part;
    let terminal = &block.stages[gamma];
    let embedded: Vec<Subgroup> = (0..=gamma)
        .map(|a| {
            let map = block.compose(a, gamma);
            debug_assert!(map.is_injective());
            terminal.subgroup(map.image_set())
        })
        .collect::<Result<_>>()?;
    let norm = normalizer_tower(terminal, &embedded[0])?;
    let first_discrepancy = (0..embedded.len().max(norm.stages.len()))
        .find(|&k| embedded.get(k) != norm.stages.get(k));
    Ok(FactReport {
        terminal_order: terminal.order(),
        aut_stage_orders: embedded.iter().map(Subgroup::order).collect(),
        normalizer_stage_orders: norm.stages.iter().map(Subgroup::order).collect(),
        aut_height: gamma,
        normalizer_height: norm.height,
        passed: first_discrepancy.is_none(),
        first_discrepancy,
    })
}
