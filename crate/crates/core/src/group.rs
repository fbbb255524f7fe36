//! The two structure groups and the data computed from their invariant forms.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::calibration::catalog;
use crate::exterior::{AlternatingForm, Labels};
use crate::linalg::Matrix;
use crate::stabilizer::{restricted_stabilizer, MatrixSubspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    G2,
    Spin7,
}

/// Stabilizer and flag subalgebras, computed once per group.
#[derive(Debug)]
pub struct GroupData {
    /// h_0, …, h_n; h_n is the Lie algebra itself.
    pub flag: Vec<MatrixSubspace>,
}

impl Group {
    pub const ALL: [Group; 2] = [Group::G2, Group::Spin7];

    pub fn tag(self) -> &'static str {
        match self {
            Group::G2 => "g2",
            Group::Spin7 => "spin7",
        }
    }

    pub fn n(self) -> usize {
        match self {
            Group::G2 => 7,
            Group::Spin7 => 8,
        }
    }

    pub fn labels(self) -> Labels {
        match self {
            Group::G2 => Labels::G2,
            Group::Spin7 => Labels::SPIN7,
        }
    }

    /// The invariant forms whose derivatives generate the ideal.
    pub fn forms(self) -> Vec<AlternatingForm> {
        let cat = catalog();
        match self {
            Group::G2 => vec![cat.phi0.clone(), cat.star_phi0.clone()],
            Group::Spin7 => vec![cat.psi0.clone()],
        }
    }

    /// The involution R used by the thickening construction.
    pub fn involution(self) -> Matrix {
        match self {
            Group::G2 => Matrix::diagonal(&[1, 1, 1, -1, -1, -1, -1]),
            Group::Spin7 => Matrix::diagonal(&[-1, -1, -1, -1, 1, 1, 1, 1]),
        }
    }

    pub fn data(self) -> &'static GroupData {
        static G2: OnceLock<GroupData> = OnceLock::new();
        static SPIN7: OnceLock<GroupData> = OnceLock::new();
        let cell = match self {
            Group::G2 => &G2,
            Group::Spin7 => &SPIN7,
        };
        cell.get_or_init(|| {
            let n = self.n();
            let forms = self.forms();
            let flag = (0..=n)
                .map(|k| restricted_stabilizer(&forms, n, k).expect("forms live on ℝⁿ"))
                .collect();
            GroupData { flag }
        })
    }

    /// The stabilizer Lie algebra (g₂ or spin(7)).
    pub fn algebra(self) -> &'static MatrixSubspace {
        &self.data().flag[self.n()]
    }

    /// h_k = {x : i_k*(x.α) = 0 for every invariant form α}.
    pub fn hk(self, k: usize) -> &'static MatrixSubspace {
        &self.data().flag[k]
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Group {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "g2" => Ok(Group::G2),
            "spin7" => Ok(Group::Spin7),
            other => Err(format!("unknown group {other:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::membership;

    #[test]
    fn involutions_lie_in_the_group() {
        for g in Group::ALL {
            assert!(membership(&g.involution(), &g.forms()).unwrap(), "{g}");
        }
    }

    #[test]
    fn tags_round_trip() {
        for g in Group::ALL {
            assert_eq!(g.tag().parse::<Group>().unwrap(), g);
        }
        assert!("su3".parse::<Group>().is_err());
    }
}
