//! Automorphism towers through finite stages and periodic limits.
//!
//! A run is a sequence of blocks. Block `j` holds the stages at ordinals
//! `ω·j + n`. A block grows by `G -> Aut(G)` until one of:
//! - the natural map at some stage is bijective (the tower terminates there);
//! - two stages are isomorphic, in which case the direct limit of the
//!   periodic tail is computed and becomes stage 0 of the next block;
//! - the per-block stage budget runs out.
//!
//! The limit of a period `(n, m, θ)` is anchored in stage `n`: with
//! `φ = θ⁻¹ ∘ π_{n,m}`, the image chain `φ(G_n) ⊇ φ²(G_n) ⊇ …` settles at a
//! subgroup `E` on which `φ` is bijective, and the projection from stage
//! `n` is `(φ|_E)^{-k} ∘ φ^k` for any `k` past the settling point.

use serde::{Deserialize, Serialize};

use crate::automorphism::{automorphism_group_with_cap, inner_homomorphism};
use crate::error::{Error, Result};
use crate::group::{Fingerprint, FiniteGroup, Homomorphism};
use crate::iso::find_isomorphism;
use crate::limits;
use crate::ordinal::Ordinal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Successor steps allowed per block.
    pub max_stages: usize,
    /// Blocks allowed in total; block `j` covers ordinals `ω·j + n`.
    pub max_limits: usize,
    pub aut_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_stages: 16,
            max_limits: 4,
            aut_cap: limits::MAX_AUT_BASE_ORDER,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Period {
    pub start: usize,
    pub end: usize,
    /// Isomorphism from stage `start` onto stage `end`.
    pub witness: Homomorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colimit {
    pub group: FiniteGroup,
    /// Members of the limit group as elements of stage `period.start`,
    /// ascending; index `i` of `group` is `members[i]`.
    pub members: Vec<usize>,
    /// Settling exponent `k` of the image chain.
    pub exponent: usize,
    /// `projections[i]` maps stage `i` of the block onto `group`.
    pub projections: Vec<Homomorphism>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TowerBlock {
    pub stages: Vec<FiniteGroup>,
    /// `succ_maps[i]` is the natural map from stage `i` to stage `i + 1`.
    pub succ_maps: Vec<Homomorphism>,
    pub period: Option<Period>,
    pub colimit: Option<Colimit>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TowerStatus {
    Terminated,
    BudgetExhausted,
    NoPeriodFound,
    CapExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerRun {
    pub blocks: Vec<TowerBlock>,
    pub termination: Option<Ordinal>,
    pub status: TowerStatus,
    /// Message of the error that stopped the run, if any.
    pub error: Option<String>,
}

/// Outcome of a plain finite ascent.
#[derive(Clone, Debug)]
pub struct Ascent {
    pub block: TowerBlock,
    /// Stage whose natural map is bijective, if one was reached.
    pub terminal: Option<usize>,
    pub error: Option<Error>,
}

impl TowerBlock {
    fn starting_at(g: FiniteGroup) -> Self {
        TowerBlock {
            stages: vec![g],
            ..Default::default()
        }
    }

    /// Computes the next stage. Returns whether the new natural map is
    /// bijective.
    fn step(&mut self, cap: usize) -> Result<bool> {
        let top = self.stages.last().expect("block has a stage");
        let aut = automorphism_group_with_cap(top, cap)?;
        let pi = inner_homomorphism(&aut);
        let bijective = pi.is_bijective();
        self.succ_maps.push(pi);
        self.stages.push(aut.group);
        Ok(bijective)
    }

    /// `π_{from,to}` inside this block.
    pub fn compose(&self, from: usize, to: usize) -> Homomorphism {
        assert!(from <= to && to < self.stages.len());
        let mut map = Homomorphism::identity(&self.stages[from]);
        for i in from..to {
            map = map.then(&self.succ_maps[i]);
        }
        map
    }
}

pub fn ascend_finite(g: &FiniteGroup, max_stages: usize) -> Ascent {
    ascend_finite_with_cap(g, max_stages, limits::MAX_AUT_BASE_ORDER)
}

pub fn ascend_finite_with_cap(g: &FiniteGroup, max_stages: usize, cap: usize) -> Ascent {
    let mut block = TowerBlock::starting_at(g.clone());
    let mut terminal = None;
    let mut error = None;
    while block.succ_maps.len() < max_stages {
        match block.step(cap) {
            Ok(true) => {
                terminal = Some(block.succ_maps.len() - 1);
                break;
            }
            Ok(false) => {}
            Err(e) => {
                error = Some(e);
                break;
            }
        }
    }
    Ascent { block, terminal, error }
}

/// Least pair `n < m` (least `m` first) of isomorphic stages, with witness.
pub fn detect_period(block: &TowerBlock) -> Option<Period> {
    let fps: Vec<Fingerprint> = block.stages.iter().map(FiniteGroup::fingerprint).collect();
    (1..block.stages.len()).find_map(|m| repeat_of(&block.stages, &fps, m))
}

fn repeat_of(stages: &[FiniteGroup], fps: &[Fingerprint], m: usize) -> Option<Period> {
    (0..m).find_map(|n| {
        if fps[n] != fps[m] {
            return None;
        }
        find_isomorphism(&stages[n], &stages[m]).map(|witness| Period { start: n, end: m, witness })
    })
}

/// Direct limit of the periodic tail starting at `period.start`.
pub fn limit_colimit(block: &TowerBlock, period: &Period) -> Colimit {
    let (n, m) = (period.start, period.end);
    assert!(n < m && m < block.stages.len(), "period outside block");
    let base = &block.stages[n];
    let theta_inv = period.witness.inverse();
    let phi = block.compose(n, m).then(&theta_inv);

    // image chain G_n ⊇ φ(G_n) ⊇ φ²(G_n) ⊇ …
    let mut current: Vec<usize> = (0..base.order()).collect();
    let mut exponent = 0;
    loop {
        let mut next: Vec<usize> = current.iter().map(|&x| phi.apply(x)).collect();
        next.sort_unstable();
        next.dedup();
        if next.len() == current.len() {
            break;
        }
        current = next;
        exponent += 1;
    }
    let members = current;
    let mut local = vec![usize::MAX; base.order()];
    for (i, &x) in members.iter().enumerate() {
        local[x] = i;
    }
    // (φ|_E)^{-1} in stage-n coordinates
    let mut phi_inv_on_e = vec![usize::MAX; base.order()];
    for &x in &members {
        phi_inv_on_e[phi.apply(x)] = x;
    }
    let psi = |x: usize, k: usize| -> usize {
        let mut y = x;
        for _ in 0..k {
            y = phi.apply(y);
        }
        for _ in 0..k {
            y = phi_inv_on_e[y];
        }
        y
    };
    let e_size = members.len();
    let group = FiniteGroup::from_fn(e_size, base.names().map(|nm| members.iter().map(|&x| nm[x].clone()).collect()), |a, b| {
        local[base.mul(members[a], members[b])]
    });
    let anchor = Homomorphism {
        source_order: base.order(),
        target_order: e_size,
        image: (0..base.order()).map(|x| local[psi(x, exponent)]).collect(),
    };
    // projection from stage m: (φ|_E)^{-1} ∘ ψ ∘ θ⁻¹
    let from_end = Homomorphism {
        source_order: block.stages[m].order(),
        target_order: e_size,
        image: (0..block.stages[m].order())
            .map(|x| {
                let y = members[anchor.apply(theta_inv.apply(x))];
                local[phi_inv_on_e[y]]
            })
            .collect(),
    };
    let projections = (0..=m)
        .map(|i| {
            if i <= n {
                block.compose(i, n).then(&anchor)
            } else {
                block.compose(i, m).then(&from_end)
            }
        })
        .collect();
    Colimit {
        group,
        members,
        exponent,
        projections,
    }
}

pub fn run_tower(g: &FiniteGroup, budget: Budget) -> TowerRun {
    let mut blocks = Vec::new();
    let mut start = g.clone();
    for j in 0..budget.max_limits.max(1) {
        let mut block = TowerBlock::starting_at(start.clone());
        let mut fps = vec![start.fingerprint()];
        loop {
            if block.succ_maps.len() >= budget.max_stages.max(1) {
                blocks.push(block);
                return finish(blocks, None, TowerStatus::NoPeriodFound, None);
            }
            match block.step(budget.aut_cap) {
                Err(e) => {
                    blocks.push(block);
                    return finish(blocks, None, TowerStatus::CapExceeded, Some(e.to_string()));
                }
                Ok(true) => {
                    let at = Ordinal::new(j, block.succ_maps.len() - 1);
                    blocks.push(block);
                    return finish(blocks, Some(at), TowerStatus::Terminated, None);
                }
                Ok(false) => {}
            }
            let m = block.stages.len() - 1;
            fps.push(block.stages[m].fingerprint());
            if let Some(period) = repeat_of(&block.stages, &fps, m) {
                let colimit = limit_colimit(&block, &period);
                start = colimit.group.clone();
                block.period = Some(period);
                block.colimit = Some(colimit);
                break;
            }
        }
        blocks.push(block);
    }
    finish(blocks, None, TowerStatus::BudgetExhausted, None)
}

fn finish(blocks: Vec<TowerBlock>, termination: Option<Ordinal>, status: TowerStatus, error: Option<String>) -> TowerRun {
    TowerRun {
        blocks,
        termination,
        status,
        error,
    }
}

impl TowerRun {
    pub fn stage(&self, at: Ordinal) -> Option<&FiniteGroup> {
        self.blocks.get(at.limit_part)?.stages.get(at.finite_part)
    }

    /// Every computed ordinal, ascending.
    pub fn positions(&self) -> Vec<Ordinal> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(j, b)| (0..b.stages.len()).map(move |n| Ordinal::new(j, n)))
            .collect()
    }

    /// The map from one computed position to the next.
    fn step_map(&self, at: Ordinal) -> &Homomorphism {
        let block = &self.blocks[at.limit_part];
        if at.finite_part < block.succ_maps.len() {
            &block.succ_maps[at.finite_part]
        } else {
            &block.colimit.as_ref().expect("next block follows a limit").projections[at.finite_part]
        }
    }

    /// `π_{from,to}` along the run, through limit projections as needed.
    pub fn compose_maps(&self, from: Ordinal, to: Ordinal) -> Result<Homomorphism> {
        let from_group = self
            .stage(from)
            .ok_or_else(|| Error::OrdinalOutOfRange(from.to_string()))?;
        if self.stage(to).is_none() {
            return Err(Error::OrdinalOutOfRange(to.to_string()));
        }
        if from >= to {
            return Err(Error::OrdinalOutOfRange(format!("{from} is not below {to}")));
        }
        let mut map = Homomorphism::identity(from_group);
        let mut at = from;
        while at < to {
            map = map.then(self.step_map(at));
            let block = &self.blocks[at.limit_part];
            at = if at.finite_part + 1 < block.stages.len() {
                at.succ()
            } else {
                Ordinal::new(at.limit_part + 1, 0)
            };
        }
        Ok(map)
    }

    /// Least computed ordinal whose stage is centerless.
    pub fn centerless_onset(&self) -> Option<Ordinal> {
        self.positions()
            .into_iter()
            .find(|&p| self.stage(p).is_some_and(|g| g.center().is_trivial()))
    }

    pub fn report(&self) -> TowerReport {
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(j, b)| BlockReport {
                start: Ordinal::new(j, 0),
                stage_orders: b.stages.iter().map(FiniteGroup::order).collect(),
                center_orders: b.stages.iter().map(|g| g.center().order()).collect(),
                fingerprints: b.stages.iter().map(FiniteGroup::fingerprint).collect(),
                period: b.period.as_ref().map(|p| PeriodReport {
                    start: p.start,
                    end: p.end,
                }),
                colimit_order: b.colimit.as_ref().map(|c| c.group.order()),
            })
            .collect();
        let (status, error) = match self.status {
            TowerStatus::Terminated => (None, None),
            _ => (Some(self.status.clone()), self.error.clone()),
        };
        TowerReport {
            blocks,
            termination: self.termination,
            status,
            error,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodReport {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub start: Ordinal,
    pub stage_orders: Vec<usize>,
    pub center_orders: Vec<usize>,
    pub fingerprints: Vec<Fingerprint>,
    pub period: Option<PeriodReport>,
    pub colimit_order: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerReport {
    pub blocks: Vec<BlockReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub termination: Option<Ordinal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<TowerStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingStage {
    pub stage: Ordinal,
    pub order: usize,
    /// Elements sent to the identity at some later position inside the horizon.
    pub vanishing: Vec<usize>,
    /// Latest first-death ordinal over the vanishing elements.
    pub latest_death: Option<Ordinal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingReport {
    pub horizon: usize,
    pub stages: Vec<VanishingStage>,
}

/// For each of the first `horizon` computed positions, which elements die
/// within the horizon and how late the last of them dies. Death times are
/// measured over computed positions only.
pub fn vanishing_spectrum(run: &TowerRun, horizon: usize) -> Result<VanishingReport> {
    let positions = run.positions();
    if horizon > positions.len() {
        return Err(Error::HorizonTooLong {
            horizon,
            available: positions.len(),
        });
    }
    let mut stages = Vec::with_capacity(horizon);
    for p in 0..horizon {
        let group = run.stage(positions[p]).expect("position is computed");
        let mut death: Vec<Option<usize>> = vec![None; group.order()];
        let mut map = Homomorphism::identity(group);
        for q in p + 1..horizon {
            map = map.then(run.step_map(positions[q - 1]));
            for (x, d) in death.iter_mut().enumerate() {
                if d.is_none() && map.image[x] == 0 {
                    *d = Some(q);
                }
            }
        }
        let vanishing = (0..group.order()).filter(|&x| death[x].is_some()).collect();
        let latest_death = death.iter().flatten().max().map(|&q| positions[q]);
        stages.push(VanishingStage {
            stage: positions[p],
            order: group.order(),
            vanishing,
            latest_death,
        });
    }
    Ok(VanishingReport { horizon, stages })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::construct_named;

    fn run(spec: &str) -> TowerRun {
        run_tower(&construct_named(spec).unwrap(), Budget::default())
    }

    #[test]
    fn trivial_group_terminates_at_zero() {
        let r = run("T");
        assert_eq!(r.status, TowerStatus::Terminated);
        assert_eq!(r.termination, Some(Ordinal::ZERO));
        let a = ascend_finite(&FiniteGroup::trivial(), 5);
        assert_eq!(a.terminal, Some(0));
        assert_eq!(a.block.succ_maps.len(), 1);
    }

    #[test]
    fn s3_is_complete() {
        let r = run("S3");
        assert_eq!(r.termination, Some(Ordinal::ZERO));
        let a = ascend_finite(&construct_named("S3").unwrap(), 5);
        assert_eq!(a.terminal, Some(0));
    }

    #[test]
    fn d8_ascent_stays_at_order_eight() {
        let a = ascend_finite(&construct_named("D8").unwrap(), 5);
        assert!(a.terminal.is_none());
        assert!(a.error.is_none());
        assert_eq!(a.block.succ_maps.len(), 5);
        assert!(a.block.stages.iter().all(|g| g.order() == 8));
        let p = detect_period(&a.block).unwrap();
        assert_eq!((p.start, p.end), (0, 1));
        assert!(p.witness.verify(&a.block.stages[0], &a.block.stages[1]));
    }

    #[test]
    fn d8_tower_reaches_omega_plus_one() {
        let r = run("D8");
        assert_eq!(r.status, TowerStatus::Terminated);
        assert_eq!(r.termination, Some(Ordinal::new(1, 1)));
        assert_eq!(r.stage(Ordinal::OMEGA).unwrap().order(), 2);
        assert_eq!(r.stage(Ordinal::new(1, 1)).unwrap().order(), 1);
        let pi02 = r.compose_maps(Ordinal::finite(0), Ordinal::finite(1)).unwrap();
        assert_eq!(pi02.kernel().len(), 2);
    }

    #[test]
    fn q8_terminates_at_one() {
        let r = run("Q8");
        assert_eq!(r.termination, Some(Ordinal::finite(1)));
        assert_eq!(r.stage(Ordinal::finite(1)).unwrap().order(), 24);
    }

    #[test]
    fn strictly_growing_block_has_no_period() {
        // A4 -> S4: orders 12, 24
        let a = ascend_finite(&construct_named("A4").unwrap(), 1);
        assert_eq!(a.block.stages.len(), 2);
        assert!(detect_period(&a.block).is_none());
    }

    #[test]
    fn bijective_period_gives_whole_stage() {
        let s3 = construct_named("S3").unwrap();
        let a = ascend_finite(&s3, 1);
        let p = detect_period(&a.block).unwrap();
        let c = limit_colimit(&a.block, &p);
        assert_eq!(c.group.order(), 6);
        assert_eq!(c.exponent, 0);
        assert!(c.projections[0].is_bijective());
    }

    #[test]
    fn trivial_endomorphism_collapses() {
        // stage 0 ≅ stage 1 through the identity, while the natural map is trivial
        let c2 = construct_named("C2").unwrap();
        let block = TowerBlock {
            stages: vec![c2.clone(), c2.clone()],
            succ_maps: vec![Homomorphism::new(&c2, &c2, vec![0, 0])],
            period: None,
            colimit: None,
        };
        let p = Period {
            start: 0,
            end: 1,
            witness: Homomorphism::identity(&c2),
        };
        let c = limit_colimit(&block, &p);
        assert_eq!(c.group.order(), 1);
    }

    #[test]
    fn compose_rejects_bad_ranges() {
        let r = run("D8");
        assert!(r.compose_maps(Ordinal::finite(1), Ordinal::finite(0)).is_err());
        assert!(r.compose_maps(Ordinal::finite(0), Ordinal::finite(9)).is_err());
        assert!(r.compose_maps(Ordinal::new(3, 0), Ordinal::new(3, 1)).is_err());
        let direct = r.compose_maps(Ordinal::finite(0), Ordinal::finite(1)).unwrap();
        assert_eq!(direct, r.blocks[0].succ_maps[0]);
    }

    #[test]
    fn vanishing_examples() {
        let s3 = vanishing_spectrum(&run("S3"), 2).unwrap();
        assert_eq!(s3.stages[0].vanishing, vec![0]);
        assert_eq!(s3.stages[0].latest_death, Some(Ordinal::finite(1)));

        let d8 = vanishing_spectrum(&run("D8"), 4).unwrap();
        assert!(d8.stages[0].vanishing.len() >= 2);
        assert!(vanishing_spectrum(&run("D8"), 99).is_err());
    }

    #[test]
    fn cap_errors_keep_partial_results() {
        let budget = Budget {
            aut_cap: 4,
            ..Budget::default()
        };
        let r = run_tower(&construct_named("C3").unwrap(), budget);
        // C3 -> C2 -> 1 stays under the cap
        assert_eq!(r.status, TowerStatus::Terminated);
        let r = run_tower(&construct_named("S3").unwrap(), budget);
        assert_eq!(r.status, TowerStatus::CapExceeded);
        assert_eq!(r.blocks[0].stages.len(), 1);
        assert!(r.error.is_some());
    }

    #[test]
    fn report_shape() {
        let rep = run("D8").report();
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains(r#""termination":{"limit_part":1,"finite_part":1}"#));
        assert!(!json.contains("status"));
        assert_eq!(rep.blocks[0].colimit_order, Some(2));
    }
}
