//! Exhaustive search for rainbow labelings, used as ground truth and as the
//! constructor's completion fallback.

mod engine;
mod table;

pub use engine::{OracleVerdict, Outcome, SearchBudget};
pub use table::{enumerate_table, TableRow};

use crate::error::{Error, Result};
use crate::group::{Element, GroupParams};
use crate::labeling::{residues, Role, Shape};

/// Spine models `(a, b)` (spine `[a, 0, b]`) that cover every labeling up to
/// translation and automorphism: `(e1, m·e1)` for `m = 2..p−1`, and
/// `(e1, e2)` when `k ≥ 2`.
pub fn canonical_models(params: &GroupParams) -> Vec<(Element, Element)> {
    let e1 = params.basis(0);
    let mut out: Vec<_> = (2..params.p())
        .map(|m| (e1.clone(), params.scale_unchecked(i64::from(m), &e1)))
        .collect();
    if params.k() >= 2 {
        out.push((e1, params.basis(1)));
    }
    out
}

fn spine_of(params: &GroupParams, (a, b): &(Element, Element)) -> [Element; 3] {
    [a.clone(), params.zero(), b.clone()]
}

fn residue_guard(params: &GroupParams, shape: &Shape) -> Result<bool> {
    let r = residues(params, shape)?;
    Ok(r.sum() % params.p() == (params.p() * 3 - 3) % params.p())
}

fn exhausted() -> OracleVerdict {
    OracleVerdict {
        outcome: Outcome::ExhaustedInfeasible,
        nodes_explored: 0,
        models_tried: Vec::new(),
    }
}

/// Searches every canonical model in turn under one shared budget.
pub fn search(params: &GroupParams, shape: &Shape, budget: &SearchBudget) -> Result<OracleVerdict> {
    if !residue_guard(params, shape)? {
        return Ok(exhausted());
    }
    let spines: Vec<_> = canonical_models(params)
        .iter()
        .map(|m| spine_of(params, m))
        .collect();
    engine::search_spines(params, shape, &spines, None, budget)
}

/// Searches every ordered triple of distinct spine labels, without any
/// symmetry reduction.
pub fn search_naive(params: &GroupParams, shape: &Shape, budget: &SearchBudget) -> Result<OracleVerdict> {
    if !residue_guard(params, shape)? {
        return Ok(exhausted());
    }
    let n = params.size();
    let mut spines = Vec::with_capacity(n * n.saturating_sub(1) * n.saturating_sub(2));
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if i != j && j != l && i != l {
                    spines.push([params.element_at(i), params.element_at(j), params.element_at(l)]);
                }
            }
        }
    }
    engine::search_spines(params, shape, &spines, None, budget)
}

/// Searches a single model `[a, 0, b]`.
pub fn search_model(
    params: &GroupParams,
    shape: &Shape,
    model: &(Element, Element),
    budget: &SearchBudget,
) -> Result<OracleVerdict> {
    params.check(&model.0)?;
    params.check(&model.1)?;
    engine::search_spines(params, shape, [&spine_of(params, model)], None, budget)
}

/// Extends a partial role assignment (indexed by element index) in the
/// model `[a, 0, b]`. Unset spine positions are filled from the model.
pub fn complete(
    params: &GroupParams,
    shape: &Shape,
    model: &(Element, Element),
    partial: &[Option<Role>],
    budget: &SearchBudget,
) -> Result<OracleVerdict> {
    params.check(&model.0)?;
    params.check(&model.1)?;
    let spine = spine_of(params, model);
    if spine[0] == spine[1] || spine[1] == spine[2] || spine[0] == spine[2] {
        return Err(Error::InconsistentSeed("model labels must be distinct".into()));
    }
    engine::search_spines(params, shape, [&spine], Some(partial), budget)
}
