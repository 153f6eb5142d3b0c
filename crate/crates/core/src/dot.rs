//! Graphviz export of a labeled caterpillar.

use std::fmt::Write;

use crate::group::GroupParams;
use crate::labeling::{Hair, Labeling};

fn spine_id(i: usize) -> String {
    format!("s{}", i + 1)
}

fn hair_id(h: Hair, i: usize) -> String {
    format!("{h}{i}")
}

/// An undirected DOT graph: one node per vertex labeled with its group
/// element, one edge per tree edge labeled with the edge sum.
pub fn to_dot(params: &GroupParams, lab: &Labeling) -> String {
    let mut s = String::from("graph caterpillar {\n");
    for (i, e) in lab.spine.iter().enumerate() {
        let _ = writeln!(s, "  {} [label=\"{e}\"];", spine_id(i));
    }
    for h in Hair::ALL {
        for (i, e) in lab.hairs.get(h).iter().enumerate() {
            let _ = writeln!(s, "  {} [label=\"{e}\"];", hair_id(h, i));
        }
    }
    for i in 0..2 {
        let sum = params.add_unchecked(&lab.spine[i], &lab.spine[i + 1]);
        let _ = writeln!(
            s,
            "  {} -- {} [label=\"{sum}\"];",
            spine_id(i),
            spine_id(i + 1)
        );
    }
    for h in Hair::ALL {
        let anchor = h.index();
        for (i, e) in lab.hairs.get(h).iter().enumerate() {
            let sum = params.add_unchecked(&lab.spine[anchor], e);
            let _ = writeln!(
                s,
                "  {} -- {} [label=\"{sum}\"];",
                spine_id(anchor),
                hair_id(h, i)
            );
        }
    }
    s.push_str("}\n");
    s
}
