use std::fmt;
use std::str::FromStr;

use crate::linalg::Subspace;

/// Which radical a [`RadicalReport`] describes.
///
/// On finite-dimensional algebras the Baer, locally nilpotent, nil and
/// Jacobson radicals all coincide with the largest nilpotent ideal, so
/// `Jacobson` and `Baer` are produced by the same computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RadicalKind {
    Jacobson,
    Baer,
    VnRegular,
    HJacobson,
    JH,
    HBaer,
    HVnRegular,
}

impl RadicalKind {
    pub const ALL: [RadicalKind; 7] = [
        RadicalKind::Jacobson,
        RadicalKind::Baer,
        RadicalKind::VnRegular,
        RadicalKind::HJacobson,
        RadicalKind::JH,
        RadicalKind::HBaer,
        RadicalKind::HVnRegular,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            RadicalKind::Jacobson => "jacobson",
            RadicalKind::Baer => "baer",
            RadicalKind::VnRegular => "vnregular",
            RadicalKind::HJacobson => "h-jacobson",
            RadicalKind::JH => "jH",
            RadicalKind::HBaer => "h-baer",
            RadicalKind::HVnRegular => "h-vnregular",
        }
    }

    /// Where the radical is defined, for help output.
    pub fn anchor(&self) -> &'static str {
        match self {
            RadicalKind::Jacobson => {
                "Section 0: r_j, the Jacobson radical (largest nilpotent ideal)"
            }
            RadicalKind::Baer => {
                "Section 0: r_b, the Baer radical (equals r_j in finite dimension)"
            }
            RadicalKind::VnRegular => {
                "Section 0: r_n, von Neumann regular radical (Definition 3.4 with trivial H)"
            }
            RadicalKind::HJacobson => "Relation (1) / Definition 2.1: r_Hj(R) = r_j(R # H) ∩ R",
            RadicalKind::JH => "Definition 2.1: r_jH(R) = (r_j(R) : H)",
            RadicalKind::HBaer => {
                "Proposition 1.3: r_Hb(R) = W_H(R), the largest H-m-nilpotent H-ideal"
            }
            RadicalKind::HVnRegular => {
                "Definition 3.4: r_Hn(R) = {a : the H-ideal (a) is H-regular}"
            }
        }
    }
}

impl fmt::Display for RadicalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RadicalKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RadicalKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown radical kind `{s}`"))
    }
}

/// A computed radical with provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalReport {
    pub kind: RadicalKind,
    pub space: Subspace,
    pub method: String,
    /// `false` only when the answer rests on sampling.
    pub exhaustive: bool,
    pub seed: Option<u64>,
}

impl RadicalReport {
    pub fn new(kind: RadicalKind, space: Subspace, method: impl Into<String>) -> Self {
        RadicalReport {
            kind,
            space,
            method: method.into(),
            exhaustive: true,
            seed: None,
        }
    }

    pub fn with_kind(mut self, kind: RadicalKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}
