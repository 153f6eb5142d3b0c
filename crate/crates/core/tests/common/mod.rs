//! Test-side reference implementations that share no code with the library.
#![allow(dead_code)]

use std::time::{Duration, Instant};

pub type Vector = Vec<u32>;

pub fn all_vectors(p: u32, k: u32) -> Vec<Vector> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for v in &out {
            for c in 0..p {
                let mut w = v.clone();
                w.push(c);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

pub fn vadd(p: u32, a: &[u32], b: &[u32]) -> Vector {
    a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
}

/// Direct check of the definition: labels are a bijection onto the group and
/// the edge sums are pairwise distinct.
pub fn is_rainbow(p: u32, k: u32, spine: &[Vector; 3], hairs: &[Vec<Vector>; 3]) -> bool {
    let mut vertices: Vec<Vector> = spine.to_vec();
    for h in hairs {
        vertices.extend(h.iter().cloned());
    }
    let mut all = all_vectors(p, k);
    let mut sorted = vertices.clone();
    sorted.sort();
    all.sort();
    if sorted != all {
        return false;
    }
    let mut edges = vec![vadd(p, &spine[0], &spine[1]), vadd(p, &spine[1], &spine[2])];
    for (i, h) in hairs.iter().enumerate() {
        for v in h {
            edges.push(vadd(p, &spine[i], v));
        }
    }
    let n = edges.len();
    edges.sort();
    edges.dedup();
    edges.len() == n
}

/// The group elements not appearing as an edge sum.
pub fn uncovered(p: u32, k: u32, spine: &[Vector; 3], hairs: &[Vec<Vector>; 3]) -> Vec<Vector> {
    let mut edges = vec![vadd(p, &spine[0], &spine[1]), vadd(p, &spine[1], &spine[2])];
    for (i, h) in hairs.iter().enumerate() {
        for v in h {
            edges.push(vadd(p, &spine[i], v));
        }
    }
    all_vectors(p, k).into_iter().filter(|v| !edges.contains(v)).collect()
}

#[derive(Debug, PartialEq, Eq, Clone, Copy)]
pub enum Brute {
    Found,
    Infeasible,
    OutOfTime,
}

struct Dfs<'a> {
    p: u32,
    elems: &'a [Vector],
    index: &'a dyn Fn(&[u32]) -> usize,
    spine: [usize; 3],
    free: Vec<usize>,
    quota: [u64; 3],
    used: Vec<bool>,
    deadline: Option<Instant>,
    steps: u64,
}

impl Dfs<'_> {
    fn go(&mut self, i: usize) -> Option<bool> {
        self.steps += 1;
        if self.steps.is_multiple_of(65536) && self.deadline.is_some_and(|d| Instant::now() > d) {
            return None;
        }
        if i == self.free.len() {
            return Some(true);
        }
        let v = self.free[i];
        for r in 0..3 {
            if self.quota[r] == 0 {
                continue;
            }
            let l = (self.index)(&vadd(self.p, &self.elems[self.spine[r]], &self.elems[v]));
            if self.used[l] {
                continue;
            }
            self.used[l] = true;
            self.quota[r] -= 1;
            let res = self.go(i + 1);
            self.used[l] = false;
            self.quota[r] += 1;
            match res {
                Some(false) => {}
                other => return other,
            }
        }
        Some(false)
    }
}

/// Plain backtracking in element order over the given spine triples (as
/// element indices), with only the duplicate-label check for pruning.
pub fn brute_force(
    p: u32,
    k: u32,
    h: [u64; 3],
    spines: &[[usize; 3]],
    limit: Option<Duration>,
) -> Brute {
    let elems = all_vectors(p, k);
    let n = elems.len();
    let index = move |v: &[u32]| v.iter().fold(0usize, |acc, &c| acc * p as usize + c as usize);
    let deadline = limit.map(|d| Instant::now() + d);
    for spine in spines {
        let mut used = vec![false; n];
        let e12 = index(&vadd(p, &elems[spine[0]], &elems[spine[1]]));
        let e23 = index(&vadd(p, &elems[spine[1]], &elems[spine[2]]));
        if e12 == e23 {
            continue;
        }
        used[e12] = true;
        used[e23] = true;
        let free: Vec<usize> = (0..n).filter(|v| !spine.contains(v)).collect();
        let mut dfs = Dfs {
            p,
            elems: &elems,
            index: &index,
            spine: *spine,
            free,
            quota: h,
            used,
            deadline,
            steps: 0,
        };
        match dfs.go(0) {
            Some(true) => return Brute::Found,
            Some(false) => {}
            None => return Brute::OutOfTime,
        }
    }
    Brute::Infeasible
}

/// Every ordered triple of distinct element indices.
pub fn all_spines(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a != b && b != c && a != c {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Triples with the middle label at 0.
pub fn translated_spines(n: usize) -> Vec<[usize; 3]> {
    all_spines(n).into_iter().filter(|s| s[1] == 0).collect()
}

/// Every shape with `h1 + h2 + h3 = n − 3`, lexicographic.
pub fn shapes(n: u64) -> Vec<[u64; 3]> {
    let m = n - 3;
    let mut out = Vec::new();
    for a in 0..=m {
        for b in 0..=m - a {
            out.push([a, b, m - a - b]);
        }
    }
    out
}
