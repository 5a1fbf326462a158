use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Which matrix generates the walk `U(t) = exp(itM)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HamiltonianModel {
    #[serde(rename = "A")]
    Adjacency,
    #[serde(rename = "L")]
    Laplacian,
    #[serde(rename = "Q")]
    SignlessLaplacian,
}

impl HamiltonianModel {
    pub const ALL: [HamiltonianModel; 3] = [
        HamiltonianModel::Adjacency,
        HamiltonianModel::Laplacian,
        HamiltonianModel::SignlessLaplacian,
    ];

    /// Sign of the off-diagonal cluster coupling: -1 for `L`, +1 for `A` and `Q`.
    pub fn zeta(self) -> i32 {
        match self {
            HamiltonianModel::Laplacian => -1,
            _ => 1,
        }
    }

    /// 1 when the degree matrix enters the Hamiltonian, 0 for `A`.
    pub fn delta(self) -> i32 {
        match self {
            HamiltonianModel::Adjacency => 0,
            _ => 1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            HamiltonianModel::Adjacency => "A",
            HamiltonianModel::Laplacian => "L",
            HamiltonianModel::SignlessLaplacian => "Q",
        }
    }
}

impl fmt::Display for HamiltonianModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for HamiltonianModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" | "adjacency" => Ok(HamiltonianModel::Adjacency),
            "L" | "l" | "laplacian" => Ok(HamiltonianModel::Laplacian),
            "Q" | "q" | "signless" | "signless-laplacian" => Ok(HamiltonianModel::SignlessLaplacian),
            other => Err(Error::InvalidParameter(format!("unknown model {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_delta_table() {
        let triples: Vec<_> = HamiltonianModel::ALL
            .iter()
            .map(|m| (m.symbol(), m.zeta(), m.delta()))
            .collect();
        assert_eq!(triples, vec![("A", 1, 0), ("L", -1, 1), ("Q", 1, 1)]);
    }

    #[test]
    fn parse() {
        assert_eq!("L".parse::<HamiltonianModel>().unwrap(), HamiltonianModel::Laplacian);
        assert!("X".parse::<HamiltonianModel>().is_err());
    }
}
