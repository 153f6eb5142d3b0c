//! Block patterns for `p = 2` and `p = 3`.

use crate::error::{Error, Result};
use crate::group::{Component, GroupParams};
use crate::labeling::{partition_to_labeling, reflect, residues, Labeling, Partition, Role, Shape};

use Role::{Spine1 as S1, Spine2 as S2, Spine3 as S3, X, Y, Z};

/// Four-element blocks `u, u+a, u+b, u+a+b` for `p = 2`.
const P2_SPINE: [Role; 4] = [S2, S1, S3, Y];
const P2_XY: [Role; 4] = [X, X, Y, Y];
const P2_YZ: [Role; 4] = [Y, Z, Y, Z];
const P2_XZ: [Role; 4] = [X, Z, Z, X];

/// Nine-element blocks, position `s + 3t` holding `u + s·a + t·b`, for `p = 3`.
/// The first regular block realizes `(3,3,3)`; the others `(6,3,0)`,
/// `(0,6,3)` and `(3,0,6)`.
pub(crate) const P3_SPINE_120: [Role; 9] = [S2, S1, Z, S3, Y, Z, Z, Y, X];
pub(crate) const P3_SPINE_102: [Role; 9] = [S2, S1, X, S3, Y, Z, Y, Y, Z];
pub(crate) const P3_BLOCKS: [[Role; 9]; 4] = [
    [X, X, Z, Y, Y, Z, Z, Y, X],
    [X, X, X, X, X, X, Y, Y, Y],
    [Y, Y, Z, Y, Y, Z, Y, Y, Z],
    [Z, Z, X, Z, X, Z, X, Z, Z],
];

fn count(block: &[Role]) -> [u64; 3] {
    let mut c = [0; 3];
    for r in block {
        if let Some(h) = r.hair() {
            c[h.index()] += 1;
        }
    }
    c
}

fn uniform_role(c: usize) -> Role {
    [X, Y, Z][c]
}

fn fill(params: &GroupParams, comps: &[Component], blocks: &[Vec<Role>]) -> Result<Partition> {
    let mut roles = vec![Y; params.size()];
    for (comp, block) in comps.iter().zip(blocks) {
        for (e, &r) in comp.elements.iter().zip(block) {
            roles[params.index_of(e)] = r;
        }
    }
    Partition::new(params, roles)
}

fn finish(params: &GroupParams, shape: &Shape, part: &Partition, reflected: bool) -> Result<Labeling> {
    let target = if reflected { shape.reflected() } else { *shape };
    let lab = partition_to_labeling(params, &target, part)?;
    Ok(if reflected { reflect(&lab) } else { lab })
}

fn p2(params: &GroupParams, shape: &Shape) -> Result<Option<Labeling>> {
    let [h1, h2, h3] = shape.h;
    if h1 % 2 != 0 || h3 % 2 != 0 || h2 % 2 != 1 {
        return Ok(None);
    }
    let comps = params.cosets_with_generators(&[params.basis(0), params.basis(1)])?;
    let regular = comps.len() - 1;
    // Halves of the remaining counts, paired off across the sorted list.
    let mut items = Vec::new();
    for (c, n) in [h1 / 2, (h2 - 1) / 2, h3 / 2].into_iter().enumerate() {
        items.extend(std::iter::repeat_n(c, n as usize));
    }
    debug_assert_eq!(items.len(), 2 * regular);
    let mut mixed = Vec::new();
    let mut uniform = [0usize; 3];
    for i in 0..regular {
        match (items[i], items[i + regular]) {
            (a, b) if a == b => uniform[a] += 1,
            (0, 1) => mixed.push(P2_XY),
            (1, 2) => mixed.push(P2_YZ),
            (0, 2) => mixed.push(P2_XZ),
            _ => unreachable!("items are sorted"),
        }
    }
    let mut blocks = vec![P2_SPINE.to_vec()];
    blocks.extend(mixed.into_iter().map(|b| b.to_vec()));
    for (c, &n) in uniform.iter().enumerate() {
        blocks.extend(std::iter::repeat_n(vec![uniform_role(c); 4], n));
    }
    let part = fill(params, &comps, &blocks)?;
    Ok(Some(finish(params, shape, &part, false)?))
}

fn p3_cycles(params: &GroupParams, shape: &Shape, r: u64) -> Result<Option<Labeling>> {
    let e1 = params.basis(0);
    let comps = params.cosets_with_generators(std::slice::from_ref(&e1))?;
    let mut rest = shape.h.map(|h| h - r);
    if rest.iter().any(|x| x % 3 != 0) || r as usize > comps.len() - 1 {
        return Ok(None);
    }
    let mut blocks = vec![vec![S2, S1, S3]];
    blocks.extend(std::iter::repeat_n(vec![Y, X, Z], r as usize));
    for (c, n) in rest.iter_mut().enumerate() {
        blocks.extend(std::iter::repeat_n(vec![uniform_role(c); 3], (*n / 3) as usize));
    }
    let part = fill(params, &comps, &blocks)?;
    Ok(Some(finish(params, shape, &part, false)?))
}

fn p3_blocks(params: &GroupParams, shape: &Shape, reflected: bool) -> Result<Option<Labeling>> {
    let h = if reflected { shape.reflected().h } else { shape.h };
    let r = h.map(|x| x % 3);
    let spine = match r {
        [1, 2, 0] => P3_SPINE_120,
        [1, 0, 2] if h[1] >= 3 => P3_SPINE_102,
        _ => return Ok(None),
    };
    let comps = params.cosets_with_generators(&[params.basis(0), params.basis(1)])?;
    let regular = comps.len() - 1;
    let used = count(&spine);
    let rest: Vec<u64> = (0..3).map(|c| h[c].saturating_sub(used[c])).collect();
    if (0..3).any(|c| h[c] < used[c] || !rest[c].is_multiple_of(3)) {
        return Ok(None);
    }
    let units = [rest[0] / 3, rest[1] / 3, rest[2] / 3];
    let block_units: Vec<[u64; 3]> = P3_BLOCKS.iter().map(|b| count(b).map(|x| x / 3)).collect();
    // Three copies of a mixed block equal three uniform blocks, so 0..=2
    // copies of each suffices.
    for n in 0..81u32 {
        let copies = [n / 27, n / 9 % 3, n / 3 % 3, n % 3].map(u64::from);
        let mut left = units;
        let mut ok = copies.iter().sum::<u64>() <= regular as u64;
        for (b, &m) in block_units.iter().zip(&copies) {
            for c in 0..3 {
                match left[c].checked_sub(b[c] * m) {
                    Some(v) => left[c] = v,
                    None => ok = false,
                }
            }
        }
        if !ok || left.iter().any(|x| x % 3 != 0) {
            continue;
        }
        let mut blocks = vec![spine.to_vec()];
        for (b, &m) in P3_BLOCKS.iter().zip(&copies) {
            blocks.extend(std::iter::repeat_n(b.to_vec(), m as usize));
        }
        for (c, &x) in left.iter().enumerate() {
            blocks.extend(std::iter::repeat_n(vec![uniform_role(c); 9], (x / 3) as usize));
        }
        let part = fill(params, &comps, &blocks)?;
        return Ok(Some(finish(params, shape, &part, reflected)?));
    }
    Ok(None)
}

/// The explicit block constructions for `p ∈ {2, 3}`. `Ok(None)` means the
/// shape has no block decomposition and needs the completion search.
pub fn small_p_patterns(params: &GroupParams, shape: &Shape) -> Result<Option<Labeling>> {
    if params.k() < 2 {
        return Err(Error::UnsupportedInstance(format!(
            "Z_{} has fewer than 4 elements",
            params.p()
        )));
    }
    match params.p() {
        2 => p2(params, shape),
        3 => {
            let r = residues(params, shape)?;
            if r.alpha == r.gamma {
                if r.beta != r.alpha {
                    return Ok(None);
                }
                return p3_cycles(params, shape, u64::from(r.alpha));
            }
            match p3_blocks(params, shape, false)? {
                Some(l) => Ok(Some(l)),
                None => p3_blocks(params, shape, true),
            }
        }
        p => Err(Error::UnsupportedInstance(format!(
            "block patterns exist only for p = 2, 3, got {p}"
        ))),
    }
}
