use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupParams;
use crate::labeling::{residues, Shape};

/// Which infeasible family a shape belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExceptionTag {
    #[serde(rename = "E1_beta_pm2")]
    E1BetaPm2,
    #[serde(rename = "E2_Y0")]
    E2Y0,
    #[serde(rename = "E3_Y1")]
    E3Y1,
    #[serde(rename = "P3_E1")]
    P3E1,
    #[serde(rename = "P3_E2")]
    P3E2,
    #[serde(rename = "P2_parity")]
    P2Parity,
}

impl ExceptionTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ExceptionTag::E1BetaPm2 => "E1_beta_pm2",
            ExceptionTag::E2Y0 => "E2_Y0",
            ExceptionTag::E3Y1 => "E3_Y1",
            ExceptionTag::P3E1 => "P3_E1",
            ExceptionTag::P3E2 => "P3_E2",
            ExceptionTag::P2Parity => "P2_parity",
        }
    }
}

impl fmt::Display for ExceptionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityVerdict {
    pub feasible: bool,
    pub exception: Option<ExceptionTag>,
    pub detail: String,
}

impl FeasibilityVerdict {
    fn feasible(detail: String) -> Self {
        FeasibilityVerdict {
            feasible: true,
            exception: None,
            detail,
        }
    }

    fn infeasible(tag: ExceptionTag, detail: String) -> Self {
        FeasibilityVerdict {
            feasible: false,
            exception: Some(tag),
            detail,
        }
    }

    /// `feasible` or `infeasible:<tag>`.
    pub fn summary(&self) -> String {
        match self.exception {
            None => "feasible".to_string(),
            Some(t) => format!("infeasible:{t}"),
        }
    }
}

/// Decides whether `C(h1,h2,h3)` has a rainbow labeling over `Z_p^k`.
pub fn feasibility(params: &GroupParams, shape: &Shape) -> Result<FeasibilityVerdict> {
    if params.order() < 4 {
        return Err(Error::UnsupportedInstance(format!(
            "Z_{}^{} has fewer than 4 elements",
            params.p(),
            params.k()
        )));
    }
    let r = residues(params, shape)?;
    let p = params.p();
    let (alpha, beta, gamma) = (r.alpha, r.beta, r.gamma);
    let h2 = shape.h[1];
    let either = |x: u32, y: u32| (alpha, gamma) == (x, y) || (alpha, gamma) == (y, x);

    let verdict = match p {
        2 => {
            let [h1, h2, h3] = shape.h;
            if h1 % 2 == 0 && h3 % 2 == 0 && h2 % 2 == 1 {
                FeasibilityVerdict::feasible("|X|, |Z| even and |Y| odd".into())
            } else {
                FeasibilityVerdict::infeasible(
                    ExceptionTag::P2Parity,
                    format!("p = 2 needs |X|, |Z| even and |Y| odd, got {shape}"),
                )
            }
        }
        3 => {
            if either(0, 2) {
                FeasibilityVerdict::infeasible(
                    ExceptionTag::P3E1,
                    format!("residues {r}: one of |X|, |Z| is 0 and the other 2 mod 3"),
                )
            } else if h2 == 0 && either(1, 2) {
                FeasibilityVerdict::infeasible(
                    ExceptionTag::P3E2,
                    format!("|Y| = 0 with residues {r}"),
                )
            } else {
                FeasibilityVerdict::feasible(format!("residues {r}"))
            }
        }
        _ => {
            if beta == p - 2 && either(0, p - 1) {
                FeasibilityVerdict::infeasible(
                    ExceptionTag::E1BetaPm2,
                    format!("residues {r}: beta = p-2 and {{alpha, gamma}} = {{0, p-1}}"),
                )
            } else if h2 == 0 && either(p - 1, p - 2) {
                FeasibilityVerdict::infeasible(
                    ExceptionTag::E2Y0,
                    format!("|Y| = 0 and {{alpha, gamma}} = {{p-1, p-2}}, residues {r}"),
                )
            } else if h2 == 1 && either(p - 1, p - 3) {
                FeasibilityVerdict::infeasible(
                    ExceptionTag::E3Y1,
                    format!("|Y| = 1 and {{alpha, gamma}} = {{p-1, p-3}}, residues {r}"),
                )
            } else {
                FeasibilityVerdict::feasible(format!("residues {r}"))
            }
        }
    };
    Ok(verdict)
}
