use std::collections::BTreeMap;
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{search, Outcome, SearchBudget};
use crate::constructor::feasibility;
use crate::error::Result;
use crate::group::GroupParams;
use crate::labeling::Shape;

/// One line of the feasibility table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub h: [u64; 3],
    pub predicate: String,
    pub oracle: String,
    pub agree: Option<bool>,
    pub nodes: u64,
    pub ms: u64,
}

impl TableRow {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("row serializes")
    }
}

fn row(params: &GroupParams, shape: &Shape, budget: &SearchBudget) -> Result<TableRow> {
    let verdict = feasibility(params, shape)?;
    let start = Instant::now();
    let oracle = search(params, shape, budget)?;
    let ms = start.elapsed().as_millis() as u64;
    let agree = match oracle.outcome {
        Outcome::Found(_) => Some(verdict.feasible),
        Outcome::ExhaustedInfeasible => Some(!verdict.feasible),
        Outcome::Budgeted => None,
    };
    Ok(TableRow {
        h: shape.h,
        predicate: verdict.summary(),
        oracle: oracle.outcome.name().to_string(),
        agree,
        nodes: oracle.nodes_explored,
        ms,
    })
}

/// Evaluates every shape of the group on `jobs` worker threads. Rows are
/// handed to `emit` in lexicographic shape order as soon as all earlier rows
/// are done, and also returned.
pub fn enumerate_table(
    params: &GroupParams,
    budget: &SearchBudget,
    jobs: usize,
    emit: impl FnMut(&TableRow) + Send,
) -> Result<Vec<TableRow>> {
    let shapes = Shape::all(params);
    if let Some(first) = shapes.first() {
        // Surface unsupported groups before spinning up workers.
        feasibility(params, first)?;
    }
    struct Sink<F> {
        next: usize,
        pending: BTreeMap<usize, TableRow>,
        emit: F,
    }
    let sink = Mutex::new(Sink {
        next: 0,
        pending: BTreeMap::new(),
        emit,
    });
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let rows: Vec<Result<TableRow>> = pool.install(|| {
        shapes
            .par_iter()
            .enumerate()
            .map(|(i, shape)| {
                let r = row(params, shape, budget)?;
                let mut s = sink.lock().expect("sink lock");
                s.pending.insert(i, r.clone());
                loop {
                    let next = s.next;
                    let Some(ready) = s.pending.remove(&next) else { break };
                    (s.emit)(&ready);
                    s.next += 1;
                }
                Ok(r)
            })
            .collect()
    });
    rows.into_iter().collect()
}
