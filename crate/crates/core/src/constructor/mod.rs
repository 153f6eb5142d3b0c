//! Deciding feasibility and building labelings.

mod feasibility;
pub mod patterns;
mod plan;
mod small_p;

pub use feasibility::{feasibility, ExceptionTag, FeasibilityVerdict};
pub use patterns::{
    realize_regular_general, realize_regular_skew, realize_regular_symmetric,
    realize_spine_general, realize_spine_skew, realize_spine_symmetric, CyclePattern,
    GeneralVariant,
};
pub use plan::{candidate_plans, materialize, plan_components, ComponentPlan, MixedComponent, PatternId};
pub use small_p::small_p_patterns;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, GroupParams};
use crate::labeling::{verify, Labeling, Role, Shape};
use crate::oracle::{canonical_models, complete, Outcome, SearchBudget};

/// Node limit for one completion attempt on a region of a few components.
const REGION_NODES: u64 = 200_000;
/// Node limit per model when the completion runs over the whole group.
const FULL_NODES: u64 = 20_000_000;

/// How a labeling was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Method {
    Plan(ComponentPlan),
    BlockPatterns,
    Completion {
        model: (Element, Element),
        region_components: usize,
        nodes: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub labeling: Labeling,
    pub method: Method,
}

/// Builds a rainbow labeling of a feasible shape.
pub fn construct(params: &GroupParams, shape: &Shape) -> Result<Labeling> {
    Ok(construct_traced(params, shape)?.labeling)
}

/// As [`construct`], also reporting which construction produced the result.
pub fn construct_traced(params: &GroupParams, shape: &Shape) -> Result<Construction> {
    let verdict = feasibility(params, shape)?;
    if !verdict.feasible {
        return Err(Error::Infeasible(verdict));
    }
    let valid = |lab: &Labeling| -> Result<bool> { Ok(verify(params, shape, lab)?.valid) };
    if params.p() >= 5 {
        for plan in candidate_plans(params, shape)? {
            let lab = materialize(params, shape, &plan)?;
            if valid(&lab)? {
                return Ok(Construction {
                    labeling: lab,
                    method: Method::Plan(plan),
                });
            }
        }
    } else if let Some(lab) = small_p_patterns(params, shape)? {
        if valid(&lab)? {
            return Ok(Construction {
                labeling: lab,
                method: Method::BlockPatterns,
            });
        }
    }
    completion(params, shape)
}

/// Splits `counts` into a region part and `outside` whole components of
/// size `c`, listing the `(u_x, u_y, u_z)` uniform component counts.
/// Splits that keep more Y inside the region come first.
fn outside_splits(h: [u64; 3], c: u64, outside: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for uy in 0..=outside {
        for ux in 0..=outside - uy {
            let uz = outside - uy - ux;
            let u = [ux, uy, uz];
            if (0..3).all(|i| u[i] * c <= h[i]) {
                out.push(u);
            }
        }
    }
    out
}

/// Search over a region made of the spine component and a few regular
/// components, the rest of the group pre-filled with uniform components.
fn completion(params: &GroupParams, shape: &Shape) -> Result<Construction> {
    for model in canonical_models(params) {
        let (a, b) = &model;
        let gens = if params.in_span(b, a)? {
            vec![a.clone()]
        } else {
            vec![a.clone(), b.clone()]
        };
        let comps = params.cosets_with_generators(&gens)?;
        let c = comps[0].len() as u64;
        let max_region = comps.len().min(3);
        let mut sizes: Vec<usize> = (1..=max_region).collect();
        if !sizes.contains(&comps.len()) {
            sizes.push(comps.len());
        }
        for region in sizes {
            let outside = (comps.len() - region) as u64;
            let limit = if region == comps.len() { FULL_NODES } else { REGION_NODES };
            for u in outside_splits(shape.h, c, outside) {
                let mut seed: Vec<Option<Role>> = vec![None; params.size()];
                let mut next = region;
                for (i, role) in [Role::X, Role::Y, Role::Z].into_iter().enumerate() {
                    for _ in 0..u[i] {
                        for e in &comps[next].elements {
                            seed[params.index_of(e)] = Some(role);
                        }
                        next += 1;
                    }
                }
                let v = complete(params, shape, &model, &seed, &SearchBudget::nodes(limit))?;
                if let Outcome::Found(lab) = v.outcome {
                    return Ok(Construction {
                        labeling: lab,
                        method: Method::Completion {
                            model: model.clone(),
                            region_components: region,
                            nodes: v.nodes_explored,
                        },
                    });
                }
            }
        }
    }
    Err(Error::ConstructionFailed(format!(
        "completion search found nothing for {shape} within its node limits"
    )))
}
