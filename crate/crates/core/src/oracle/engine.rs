//! Backtracking over role assignments with a fixed spine.
//!
//! With the spine fixed, the uncovered edge label is determined in advance
//! (see [`zeta_closed_form`]), so the hairs must cover the remaining labels
//! exactly once. The search treats both "every element gets one role" and
//! "every free label gets one source" as exact-cover columns and branches on
//! whichever column has the fewest options.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, GroupParams};
use crate::labeling::{partition_to_labeling, zeta_closed_form, Labeling, Partition, Role, Shape};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub timeout_ms: Option<u64>,
    pub node_limit: Option<u64>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }

    pub fn nodes(limit: u64) -> Self {
        SearchBudget {
            timeout_ms: None,
            node_limit: Some(limit),
        }
    }

    pub fn timeout_ms(ms: u64) -> Self {
        SearchBudget {
            timeout_ms: Some(ms),
            node_limit: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found(Labeling),
    ExhaustedInfeasible,
    Budgeted,
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Found(_) => "found",
            Outcome::ExhaustedInfeasible => "infeasible",
            Outcome::Budgeted => "budgeted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub outcome: Outcome,
    pub nodes_explored: u64,
    pub models_tried: Vec<[Element; 3]>,
}

/// Node and wall-clock accounting shared by every spine a call tries.
pub(crate) struct Meter {
    pub nodes: u64,
    limit: Option<u64>,
    deadline: Option<Instant>,
    tripped: bool,
}

impl Meter {
    pub fn new(budget: &SearchBudget) -> Self {
        Meter {
            nodes: 0,
            limit: budget.node_limit,
            deadline: budget
                .timeout_ms
                .map(|ms| Instant::now() + Duration::from_millis(ms)),
            tripped: false,
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.limit.is_some_and(|l| self.nodes > l) {
            self.tripped = true;
        }
        if self.nodes.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.tripped = true;
        }
        !self.tripped
    }

    fn expired(&mut self) -> bool {
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.tripped = true;
        }
        self.tripped
    }
}

const FREE: u8 = u8::MAX;
const SPINE: u8 = 3;

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

pub(crate) struct Engine {
    n: usize,
    /// `lab[r][v]`: edge label index produced by hair role `r` at element `v`.
    lab: [Vec<u32>; 3],
    /// `src[r][l]`: the element that would produce label `l` under role `r`.
    src: [Vec<u32>; 3],
    role: Vec<u8>,
    spine_slot: [usize; 3],
    used: Vec<bool>,
    quota: [u64; 3],
    free: usize,
}

impl Engine {
    /// Sets up the search for one spine. `Ok(None)` means the spine is
    /// immediately impossible (the forced missing label is a spine edge
    /// label, or the seed already covers it).
    pub fn new(
        params: &GroupParams,
        shape: &Shape,
        spine: &[Element; 3],
        seed: &[Option<Role>],
    ) -> Result<Option<Engine>> {
        let n = params.size();
        if seed.len() != n {
            return Err(Error::InconsistentSeed(format!(
                "seed has {} entries, group has {n}",
                seed.len()
            )));
        }
        let spine_slot = spine.clone().map(|e| params.index_of(&e));
        if spine_slot[0] == spine_slot[1] || spine_slot[1] == spine_slot[2] || spine_slot[0] == spine_slot[2] {
            return Err(Error::InconsistentSeed("spine labels must be distinct".into()));
        }
        let elements: Vec<Element> = params.elements().collect();
        let lab = [0, 1, 2].map(|r| {
            elements
                .iter()
                .map(|v| params.index_of(&params.add_unchecked(&spine[r], v)) as u32)
                .collect::<Vec<_>>()
        });
        let src = [0, 1, 2].map(|r| {
            elements
                .iter()
                .map(|l| params.index_of(&params.sub_unchecked(l, &spine[r])) as u32)
                .collect::<Vec<_>>()
        });

        let mut role = vec![FREE; n];
        for (s, &slot) in spine_slot.iter().enumerate() {
            role[slot] = SPINE + s as u8;
        }
        let mut used = vec![false; n];
        let e12 = lab[0][spine_slot[1]] as usize;
        let e23 = lab[2][spine_slot[1]] as usize;
        used[e12] = true;
        used[e23] = true;
        let zeta = params.index_of(&zeta_closed_form(params, shape.h, spine));
        if used[zeta] {
            return Ok(None);
        }
        used[zeta] = true;

        let mut quota = shape.h;
        let mut free = n - 3;
        for (v, r) in seed.iter().enumerate() {
            let Some(r) = r else { continue };
            if let Some(s) = r.spine_index() {
                if spine_slot[s] != v {
                    return Err(Error::InconsistentSeed(format!(
                        "spine role {} seeded at {}, spine has it at {}",
                        s + 1,
                        params.element_at(v),
                        spine[s]
                    )));
                }
                continue;
            }
            let h = r.hair().expect("hair role").index();
            if role[v] != FREE {
                return Err(Error::InconsistentSeed(format!(
                    "{} is a spine label",
                    params.element_at(v)
                )));
            }
            if quota[h] == 0 {
                return Err(Error::InconsistentSeed(format!("too many {r:?} roles")));
            }
            let l = lab[h][v] as usize;
            if used[l] {
                if l == zeta {
                    return Ok(None);
                }
                return Err(Error::InconsistentSeed(format!(
                    "edge label {} used twice",
                    params.element_at(l)
                )));
            }
            used[l] = true;
            role[v] = h as u8;
            quota[h] -= 1;
            free -= 1;
        }
        Ok(Some(Engine {
            n,
            lab,
            src,
            role,
            spine_slot,
            used,
            quota,
            free,
        }))
    }

    fn assign(&mut self, v: usize, r: usize) {
        self.role[v] = r as u8;
        self.used[self.lab[r][v] as usize] = true;
        self.quota[r] -= 1;
        self.free -= 1;
    }

    fn unassign(&mut self, v: usize, r: usize) {
        self.role[v] = FREE;
        self.used[self.lab[r][v] as usize] = false;
        self.quota[r] += 1;
        self.free += 1;
    }

    fn domain(&self, v: usize) -> u8 {
        let mut d = 0;
        for r in 0..3 {
            if self.quota[r] > 0 && !self.used[self.lab[r][v] as usize] {
                d |= 1 << r;
            }
        }
        d
    }

    fn sources(&self, l: usize) -> u8 {
        let mut d = 0;
        for r in 0..3 {
            if self.quota[r] > 0 && self.role[self.src[r][l] as usize] == FREE {
                d |= 1 << r;
            }
        }
        d
    }

    pub fn run(&mut self, meter: &mut Meter) -> Step {
        if self.free == 0 {
            return Step::Found;
        }
        // Most constrained element.
        let mut best_v = usize::MAX;
        let mut best_v_dom = 0u8;
        let mut best_v_size = u32::MAX;
        let mut avail = [0u64; 3];
        for v in 0..self.n {
            if self.role[v] != FREE {
                continue;
            }
            let d = self.domain(v);
            let size = d.count_ones();
            if size == 0 {
                return Step::Exhausted;
            }
            for (r, a) in avail.iter_mut().enumerate() {
                *a += u64::from(d >> r & 1);
            }
            if size < best_v_size {
                best_v = v;
                best_v_dom = d;
                best_v_size = size;
            }
        }
        if (0..3).any(|r| avail[r] < self.quota[r]) {
            return Step::Exhausted;
        }
        // Most constrained free label.
        let mut best_l = usize::MAX;
        let mut best_l_src = 0u8;
        let mut best_l_size = u32::MAX;
        for l in 0..self.n {
            if self.used[l] {
                continue;
            }
            let s = self.sources(l);
            let size = s.count_ones();
            if size == 0 {
                return Step::Exhausted;
            }
            if size < best_l_size {
                best_l = l;
                best_l_src = s;
                best_l_size = size;
            }
        }

        let choices: Vec<(usize, usize)> = if best_l_size < best_v_size {
            (0..3)
                .filter(|r| best_l_src >> r & 1 == 1)
                .map(|r| (self.src[r][best_l] as usize, r))
                .collect()
        } else {
            (0..3)
                .filter(|r| best_v_dom >> r & 1 == 1)
                .map(|r| (best_v, r))
                .collect()
        };
        for (v, r) in choices {
            if !meter.tick() {
                return Step::OutOfBudget;
            }
            self.assign(v, r);
            let step = self.run(meter);
            if step == Step::Found {
                return step;
            }
            self.unassign(v, r);
            if step == Step::OutOfBudget {
                return step;
            }
        }
        Step::Exhausted
    }

    pub fn labeling(&self, params: &GroupParams, shape: &Shape) -> Result<Labeling> {
        let roles = self
            .role
            .iter()
            .map(|&r| match r {
                0 => Role::X,
                1 => Role::Y,
                2 => Role::Z,
                s if (SPINE..SPINE + 3).contains(&s) => Role::spine((s - SPINE) as usize),
                _ => unreachable!("labeling requested before the search finished"),
            })
            .collect();
        debug_assert!(self.spine_slot.iter().all(|&s| self.role[s] >= SPINE));
        let part = Partition::new(params, roles)?;
        partition_to_labeling(params, shape, &part)
    }
}

/// Runs the engine over each spine in turn, sharing one budget.
pub(crate) fn search_spines<'a>(
    params: &GroupParams,
    shape: &Shape,
    spines: impl IntoIterator<Item = &'a [Element; 3]>,
    seed: Option<&[Option<Role>]>,
    budget: &SearchBudget,
) -> Result<OracleVerdict> {
    Shape::new(params, shape.h)?;
    let empty = vec![None; params.size()];
    let seed = seed.unwrap_or(&empty);
    let mut meter = Meter::new(budget);
    let mut tried = Vec::new();
    let mut budgeted = false;
    for spine in spines {
        if meter.expired() {
            budgeted = true;
            break;
        }
        tried.push(spine.clone());
        let Some(mut engine) = Engine::new(params, shape, spine, seed)? else {
            continue;
        };
        match engine.run(&mut meter) {
            Step::Found => {
                return Ok(OracleVerdict {
                    outcome: Outcome::Found(engine.labeling(params, shape)?),
                    nodes_explored: meter.nodes,
                    models_tried: tried,
                })
            }
            Step::Exhausted => {}
            Step::OutOfBudget => {
                budgeted = true;
                break;
            }
        }
    }
    Ok(OracleVerdict {
        outcome: if budgeted {
            Outcome::Budgeted
        } else {
            Outcome::ExhaustedInfeasible
        },
        nodes_explored: meter.nodes,
        models_tried: tried,
    })
}
