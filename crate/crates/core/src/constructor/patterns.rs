//! Role patterns on a single cycle of `Cay(A, {i})`.
//!
//! A [`CyclePattern`] lists the role of `start + t·i` for `t = 0..p`. Spine
//! patterns are laid on the component of `0` (so position 0 is the middle
//! spine vertex); regular patterns on any other coset of `⟨i⟩`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labeling::Role;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePattern {
    pub roles: Vec<Role>,
}

impl CyclePattern {
    /// Hair counts `(x, y, z)` on the cycle.
    pub fn triple(&self) -> [u32; 3] {
        let mut t = [0; 3];
        for r in &self.roles {
            if let Some(h) = r.hair() {
                t[h.index()] += 1;
            }
        }
        t
    }

    pub fn uniform(p: u32, role: Role) -> CyclePattern {
        CyclePattern {
            roles: vec![role; p as usize],
        }
    }
}

/// Modifications of the basic three-arc spine pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneralVariant {
    Base,
    /// `a + b` becomes Y.
    PlusY,
    /// `a + b` becomes Y and `2a` becomes Z.
    SwapZ,
    /// `a + b` and `b + 2a` become Y.
    DoubleY,
}

fn hypothesis(msg: String) -> Error {
    Error::PatternHypothesis(msg)
}

fn require_odd(p: u32) -> Result<()> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(Error::UnsupportedInstance(format!(
            "cycle patterns need an odd prime, got {p}"
        )));
    }
    Ok(())
}

/// Model `[a, 0, −a]` with `a = i`: `β` Y's after `a`, then `α` (X, Z) pairs.
pub fn realize_spine_symmetric(p: u32, alpha: u32, beta: u32) -> Result<CyclePattern> {
    require_odd(p)?;
    if 2 * alpha + beta + 3 != p {
        return Err(hypothesis(format!(
            "2*alpha + beta must be p-3, got alpha={alpha} beta={beta} p={p}"
        )));
    }
    let mut roles = vec![Role::Spine2, Role::Spine1];
    roles.extend(std::iter::repeat_n(Role::Y, beta as usize));
    for _ in 0..alpha {
        roles.extend([Role::X, Role::Z]);
    }
    roles.push(Role::Spine3);
    Ok(CyclePattern { roles })
}

/// One Y followed by `(p−1)/2` (X, Z) pairs; realizes `((p−1)/2, 1, (p−1)/2)`.
pub fn realize_regular_symmetric(p: u32) -> Result<CyclePattern> {
    require_odd(p)?;
    let mut roles = vec![Role::Y];
    for _ in 0..(p - 1) / 2 {
        roles.extend([Role::X, Role::Z]);
    }
    Ok(CyclePattern { roles })
}

/// Model `[a, 0, 2a]` with `a = i`: `r` Y's after `2a`, `α` X's, then `γ`
/// (Z, Y) pairs. Realizes `(α, γ + r, γ)`.
pub fn realize_spine_skew(p: u32, alpha: u32, gamma: u32, r: u32) -> Result<CyclePattern> {
    require_odd(p)?;
    if alpha + 2 * gamma + r + 3 != p {
        return Err(hypothesis(format!(
            "alpha + 2*gamma + r must be p-3, got ({alpha},{gamma},{r}) p={p}"
        )));
    }
    let mut roles = vec![Role::Spine2, Role::Spine1, Role::Spine3];
    roles.extend(std::iter::repeat_n(Role::Y, r as usize));
    roles.extend(std::iter::repeat_n(Role::X, alpha as usize));
    for _ in 0..gamma {
        roles.extend([Role::Z, Role::Y]);
    }
    Ok(CyclePattern { roles })
}

/// `j` (Z, Y) pairs then `p − 2j` X's; realizes `(p − 2j, j, j)`.
pub fn realize_regular_skew(p: u32, j: u32) -> Result<CyclePattern> {
    require_odd(p)?;
    if 2 * j > p - 1 {
        return Err(hypothesis(format!("j must be at most (p-1)/2, got {j}")));
    }
    let mut roles = Vec::with_capacity(p as usize);
    for _ in 0..j {
        roles.extend([Role::Z, Role::Y]);
    }
    roles.extend(std::iter::repeat_n(Role::X, (p - 2 * j) as usize));
    Ok(CyclePattern { roles })
}

fn check_general(p: u32, a: u32, b: u32) -> Result<()> {
    require_odd(p)?;
    if !(1 <= a && a < b && b < p) {
        return Err(hypothesis(format!(
            "need 1 <= a' < b' <= p-1, got a'={a} b'={b} p={p}"
        )));
    }
    Ok(())
}

fn base_general(p: u32, a: u32, b: u32) -> Vec<Role> {
    (0..p)
        .map(|t| {
            if t == 0 {
                Role::Spine2
            } else if t < a {
                Role::Z
            } else if t == a {
                Role::Spine1
            } else if t < b {
                Role::Y
            } else if t == b {
                Role::Spine3
            } else {
                Role::X
            }
        })
        .collect()
}

/// Model `[a′i, 0, b′i]`: Z on `i..(a′−1)i`, Y strictly between `a` and `b`,
/// X strictly between `b` and `0`. The base realizes
/// `(p − b′ − 1, b′ − a′ − 1, a′ − 1)`; the variants shift it by
/// `(−1, +1, 0)`, `(−2, +1, +1)` and `(−1, +2, −1)`.
pub fn realize_spine_general(
    p: u32,
    a_prime: u32,
    b_prime: u32,
    variant: GeneralVariant,
) -> Result<CyclePattern> {
    check_general(p, a_prime, b_prime)?;
    let (a, b) = (a_prime, b_prime);
    let mut roles = base_general(p, a, b);
    if variant == GeneralVariant::Base {
        return Ok(CyclePattern { roles });
    }
    if a + b >= p {
        return Err(hypothesis(format!(
            "a+b must fall between b and 0, got a'+b'={} p={p}",
            a + b
        )));
    }
    roles[(a + b) as usize] = Role::Y;
    match variant {
        GeneralVariant::Base | GeneralVariant::PlusY => {}
        GeneralVariant::SwapZ => {
            let (alpha, beta, gamma) = (p - b - 1, b - a - 1, a - 1);
            if !(beta < gamma && gamma < alpha) {
                return Err(hypothesis(format!(
                    "needs beta < gamma < alpha, got ({alpha},{beta},{gamma})"
                )));
            }
            let t = 2 * a;
            if t <= b || t >= p || t == a + b {
                return Err(hypothesis(format!("2a' = {t} must be an X position")));
            }
            roles[t as usize] = Role::Z;
        }
        GeneralVariant::DoubleY => {
            if b + 2 * a < p + 1 {
                return Err(hypothesis(format!(
                    "needs b' + 2a' >= p + 1, got {}",
                    b + 2 * a
                )));
            }
            // a' + b' < p puts b + 2a strictly inside the Z arc.
            roles[(b + 2 * a - p) as usize] = Role::Y;
        }
    }
    Ok(CyclePattern { roles })
}

/// The base spine pattern moved to a regular cycle, with the former spine
/// positions `0, a, b` taking X, Z, Y. Realizes `(α + 1, β + 1, γ + 1)`.
pub fn realize_regular_general(p: u32, a_prime: u32, b_prime: u32) -> Result<CyclePattern> {
    check_general(p, a_prime, b_prime)?;
    let mut roles = base_general(p, a_prime, b_prime);
    roles[0] = Role::X;
    roles[a_prime as usize] = Role::Z;
    roles[b_prime as usize] = Role::Y;
    Ok(CyclePattern { roles })
}
