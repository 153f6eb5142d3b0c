//! Splitting a shape over the cycles of `Cay(A, {i})` for `p ≥ 5`.

use serde::Serialize;

use super::patterns::{
    realize_regular_general, realize_regular_skew, realize_regular_symmetric,
    realize_spine_general, realize_spine_skew, realize_spine_symmetric, CyclePattern,
    GeneralVariant,
};
use crate::error::{Error, Result};
use crate::group::{Element, GroupParams};
use crate::labeling::{partition_to_labeling, reflect, residues, Labeling, Partition, Role, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PatternId {
    SpineSymmetric { alpha: u32, beta: u32 },
    RegularSymmetric,
    SpineSkew { alpha: u32, gamma: u32, r: u32 },
    RegularSkew { j: u32 },
    SpineGeneral { a_prime: u32, b_prime: u32, variant: GeneralVariant },
    RegularGeneral { a_prime: u32, b_prime: u32 },
}

impl PatternId {
    pub fn realize(&self, p: u32) -> Result<CyclePattern> {
        match *self {
            PatternId::SpineSymmetric { alpha, beta } => realize_spine_symmetric(p, alpha, beta),
            PatternId::RegularSymmetric => realize_regular_symmetric(p),
            PatternId::SpineSkew { alpha, gamma, r } => realize_spine_skew(p, alpha, gamma, r),
            PatternId::RegularSkew { j } => realize_regular_skew(p, j),
            PatternId::SpineGeneral { a_prime, b_prime, variant } => {
                realize_spine_general(p, a_prime, b_prime, variant)
            }
            PatternId::RegularGeneral { a_prime, b_prime } => {
                realize_regular_general(p, a_prime, b_prime)
            }
        }
    }

    /// The multipliers `(a′, b′)` with `a = a′i`, `b = b′i`.
    fn model_scalars(&self, p: u32) -> (u32, u32) {
        match *self {
            PatternId::SpineSymmetric { .. } | PatternId::RegularSymmetric => (1, p - 1),
            PatternId::SpineSkew { .. } | PatternId::RegularSkew { .. } => (1, 2),
            PatternId::SpineGeneral { a_prime, b_prime, .. }
            | PatternId::RegularGeneral { a_prime, b_prime } => (a_prime, b_prime),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedComponent {
    pub index: usize,
    pub triple: [u32; 3],
    pub pattern: PatternId,
}

/// Per-component decomposition of a shape. When `reflected` is set the plan
/// realizes the mirrored shape `(h3, h2, h1)` and [`materialize`] mirrors the
/// result back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentPlan {
    pub model: (Element, Element),
    pub reflected: bool,
    pub spine_triple: [u32; 3],
    pub spine_pattern: PatternId,
    pub mixed: Vec<MixedComponent>,
    pub uniform: [u64; 3],
}

impl ComponentPlan {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan serializes")
    }

    /// Hair totals of the (possibly mirrored) shape the plan realizes.
    pub fn totals(&self, p: u32) -> [u64; 3] {
        let mut t = self.spine_triple.map(u64::from);
        for m in &self.mixed {
            for c in 0..3 {
                t[c] += u64::from(m.triple[c]);
            }
        }
        for c in 0..3 {
            t[c] += self.uniform[c] * u64::from(p);
        }
        t
    }
}

type Recipe = (PatternId, Vec<PatternId>);

/// The general-model spine pattern for `base`, optionally paired with the
/// matching regular pattern.
fn general_base(p: u32, base: [i64; 3], variant: GeneralVariant, regular: bool) -> Option<Recipe> {
    let [alpha, beta, gamma] = base;
    if alpha < 0 || beta < 0 || gamma < 0 {
        return None;
    }
    debug_assert_eq!(alpha + beta + gamma + 3, i64::from(p));
    let a_prime = (gamma + 1) as u32;
    let b_prime = (gamma + beta + 2) as u32;
    let spine = PatternId::SpineGeneral { a_prime, b_prime, variant };
    let mixed = if regular {
        vec![PatternId::RegularGeneral { a_prime, b_prime }]
    } else {
        Vec::new()
    };
    Some((spine, mixed))
}

/// Candidate decompositions for residues `(α, β, γ)`, most specific first.
fn recipes(p: u32, res: [u32; 3], h: [u64; 3]) -> Vec<Recipe> {
    let [alpha, beta, gamma] = res;
    let half = (p - 1) / 2;
    let s = alpha + beta + gamma;
    let mut out = Vec::new();

    if s + 3 == p {
        out.extend(general_base(
            p,
            [alpha, beta, gamma].map(i64::from),
            GeneralVariant::Base,
            false,
        ));
        return out;
    }

    if s == 3 * p - 3 {
        out.push((
            PatternId::SpineSymmetric { alpha: 0, beta: p - 3 },
            vec![PatternId::RegularSymmetric; 2],
        ));
        return out;
    }

    debug_assert_eq!(s, 2 * p - 3);
    if alpha == gamma && beta >= 1 {
        out.push((
            PatternId::SpineSymmetric {
                alpha: (p - 2 - beta) / 2,
                beta: beta - 1,
            },
            vec![PatternId::RegularSymmetric],
        ));
    }
    if beta >= gamma {
        let r = beta - gamma;
        if gamma <= half && r + 3 <= p {
            out.push((
                PatternId::SpineSkew { alpha: p - 3 - r, gamma: 0, r },
                vec![PatternId::RegularSkew { j: gamma }],
            ));
        }
        if gamma > half && alpha > 0 {
            out.push((
                PatternId::SpineSkew { alpha: alpha - 1, gamma: gamma - half, r },
                vec![PatternId::RegularSkew { j: half }],
            ));
        }
        if alpha == 0 && beta == p - 1 && gamma == p - 2 && h[0] >= u64::from(p) {
            out.push((
                PatternId::SpineSkew { alpha: p - 4, gamma: 0, r: 1 },
                vec![
                    PatternId::RegularSkew { j: half },
                    PatternId::RegularSkew { j: half - 1 },
                ],
            ));
        }
    }
    if beta < alpha.min(gamma) {
        let (a, b, g) = (i64::from(alpha), i64::from(beta), i64::from(gamma));
        let recipe = match (alpha % 2, beta % 2, gamma % 2) {
            (1, 1, 1) => general_base(p, [(a - 1) / 2, (b - 1) / 2, (g - 1) / 2], GeneralVariant::Base, true),
            (0, 0, 1) => general_base(p, [a / 2, (b - 2) / 2, (g - 1) / 2], GeneralVariant::PlusY, true),
            (1, 0, 0) => general_base(p, [(a + 1) / 2, (b - 2) / 2, (g - 2) / 2], GeneralVariant::SwapZ, true),
            (0, 1, 0) => general_base(p, [a / 2, (b - 3) / 2, g / 2], GeneralVariant::DoubleY, true),
            _ => None,
        };
        out.extend(recipe);
    }
    out
}

fn try_recipe(
    params: &GroupParams,
    h: [u64; 3],
    reflected: bool,
    (spine_id, mixed_ids): Recipe,
) -> Option<ComponentPlan> {
    let p = params.p();
    let spine = spine_id.realize(p).ok()?;
    let mut used = spine.triple().map(u64::from);
    let mut mixed = Vec::new();
    for (n, id) in mixed_ids.into_iter().enumerate() {
        let pat = id.realize(p).ok()?;
        let t = pat.triple();
        for c in 0..3 {
            used[c] += u64::from(t[c]);
        }
        mixed.push(MixedComponent {
            index: n + 1,
            triple: t,
            pattern: id,
        });
    }
    let pp = u64::from(p);
    let mut uniform = [0u64; 3];
    for c in 0..3 {
        if used[c] > h[c] || !(h[c] - used[c]).is_multiple_of(pp) {
            return None;
        }
        uniform[c] = (h[c] - used[c]) / pp;
    }
    let (a_s, b_s) = spine_id.model_scalars(p);
    let i = params.basis(0);
    Some(ComponentPlan {
        model: (
            params.scale_unchecked(i64::from(a_s), &i),
            params.scale_unchecked(i64::from(b_s), &i),
        ),
        reflected,
        spine_triple: spine.triple(),
        spine_pattern: spine_id,
        mixed,
        uniform,
    })
}

/// Every explicit decomposition of the shape, original orientation first.
pub fn candidate_plans(params: &GroupParams, shape: &Shape) -> Result<Vec<ComponentPlan>> {
    let p = params.p();
    if p < 5 {
        return Err(Error::UnsupportedInstance(format!(
            "cycle decompositions need p >= 5, got {p}"
        )));
    }
    let mut out = Vec::new();
    for (reflected, s) in [(false, *shape), (true, shape.reflected())] {
        let res = residues(params, &s)?.as_array();
        for recipe in recipes(p, res, s.h) {
            if let Some(plan) = try_recipe(params, s.h, reflected, recipe) {
                out.push(plan);
            }
        }
    }
    Ok(out)
}

/// The first explicit decomposition of the shape, if any.
pub fn plan_components(params: &GroupParams, shape: &Shape) -> Result<ComponentPlan> {
    candidate_plans(params, shape)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::ConstructionFailed(format!("no explicit recipe for {shape}")))
}

/// Lays the plan out on the cosets of `⟨e1⟩`.
pub fn materialize(params: &GroupParams, shape: &Shape, plan: &ComponentPlan) -> Result<Labeling> {
    let p = params.p();
    let i = params.basis(0);
    let comps = params.cosets_with_generators(std::slice::from_ref(&i))?;
    let mut roles = vec![Role::Y; params.size()];
    let mut place = |comp: usize, pat: &CyclePattern| {
        for (t, e) in comps[comp].elements.iter().enumerate() {
            roles[params.index_of(e)] = pat.roles[t];
        }
    };
    place(0, &plan.spine_pattern.realize(p)?);
    for m in &plan.mixed {
        place(m.index, &m.pattern.realize(p)?);
    }
    let mut next = plan.mixed.len() + 1;
    for (c, role) in [Role::X, Role::Y, Role::Z].into_iter().enumerate() {
        for _ in 0..plan.uniform[c] {
            if next >= comps.len() {
                return Err(Error::ConstructionFailed("plan needs more components".into()));
            }
            place(next, &CyclePattern::uniform(p, role));
            next += 1;
        }
    }
    if next != comps.len() {
        return Err(Error::ConstructionFailed("plan leaves components empty".into()));
    }
    let part = Partition::new(params, roles)?;
    let target = if plan.reflected { shape.reflected() } else { *shape };
    let lab = partition_to_labeling(params, &target, &part)?;
    Ok(if plan.reflected { reflect(&lab) } else { lab })
}
