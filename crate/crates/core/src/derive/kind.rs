use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Names of the spectra an operator profile may carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpectrumKind {
    Sigma,
    Ap,
    Su,
    P,
    Cp,
    PhiPlus,
    PhiMinus,
    Phi,
    WPlus,
    WMinus,
    W,
    BPlus,
    BMinus,
    B,
    Ld,
    Rd,
    D,
    Lde,
    Rde,
    Dsc,
    Dsce,
    BPhiPlus,
    BPhiMinus,
    BPhi,
    BwPlus,
    BwMinus,
    Bw,
    Tud,
    QPhi,
    Kt,
}

use SpectrumKind::*;

impl SpectrumKind {
    pub const ALL: [SpectrumKind; 30] = [
        Sigma, Ap, Su, P, Cp, PhiPlus, PhiMinus, Phi, WPlus, WMinus, W, BPlus, BMinus, B, Ld, Rd,
        D, Lde, Rde, Dsc, Dsce, BPhiPlus, BPhiMinus, BPhi, BwPlus, BwMinus, Bw, Tud, QPhi, Kt,
    ];

    /// The fourteen spectra sharing one connected hull.
    pub const ETA: [SpectrumKind; 14] =
        [Tud, QPhi, Kt, BPhi, Bw, D, Lde, BwPlus, Ld, Rde, BwMinus, Rd, Dsce, Dsc];

    /// Spectra that equal `D` as soon as their complement is connected, and
    /// that `D` fills up to holes.
    pub const HOLE_FILLED: [SpectrumKind; 13] =
        [Tud, QPhi, Kt, BPhi, Bw, Lde, BwPlus, Ld, Rde, BwMinus, Rd, Dsce, Dsc];

    /// Spectra for which `σ = ∂σ = acc σ` forces `σ_TUD = σ`.
    pub const PERFECT_BOUNDARY: [SpectrumKind; 15] =
        [WPlus, WMinus, W, BwMinus, PhiPlus, PhiMinus, Phi, Rde, Ap, Su, BPlus, BMinus, B, Rd, Sigma];

    pub fn name(self) -> &'static str {
        match self {
            Sigma => "sigma",
            Ap => "ap",
            Su => "su",
            P => "p",
            Cp => "cp",
            PhiPlus => "Phi+",
            PhiMinus => "Phi-",
            Phi => "Phi",
            WPlus => "W+",
            WMinus => "W-",
            W => "W",
            BPlus => "B+",
            BMinus => "B-",
            B => "B",
            Ld => "LD",
            Rd => "RD",
            D => "D",
            Lde => "LDe",
            Rde => "RDe",
            Dsc => "dsc",
            Dsce => "dsce",
            BPhiPlus => "BPhi+",
            BPhiMinus => "BPhi-",
            BPhi => "BPhi",
            BwPlus => "BW+",
            BwMinus => "BW-",
            Bw => "BW",
            Tud => "TUD",
            QPhi => "qPhi",
            Kt => "Kt",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for SpectrumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpectrumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        SpectrumKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown spectrum kind {s:?}")))
    }
}

impl Serialize for SpectrumKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for SpectrumKind {
    fn deserialize<D2: Deserializer<'de>>(d: D2) -> Result<Self, D2::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Where an inclusion comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InclusionSource {
    /// The lattice of the B-Fredholm family.
    Lattice,
    /// Classical containments between the base spectra.
    Standard,
}

/// Direct inclusions `sub ⊆ sup`.
pub const INCLUSIONS: &[(SpectrumKind, SpectrumKind, InclusionSource)] = {
    use InclusionSource::*;
    &[
        (Tud, QPhi, Lattice),
        (QPhi, Kt, Lattice),
        (Kt, BPhi, Lattice),
        (BPhi, Bw, Lattice),
        (Bw, D, Lattice),
        (QPhi, Lde, Lattice),
        (Lde, BwPlus, Lattice),
        (BwPlus, Ld, Lattice),
        (Lde, BPhi, Lattice),
        (BwPlus, Bw, Lattice),
        (Ld, D, Lattice),
        (QPhi, Rde, Lattice),
        (Rde, BwMinus, Lattice),
        (BwMinus, Rd, Lattice),
        (Rde, BPhi, Lattice),
        (BwMinus, Bw, Lattice),
        (Rd, D, Lattice),
        (Tud, Dsce, Lattice),
        (Dsce, Rde, Lattice),
        (Dsce, Dsc, Lattice),
        (Dsc, Rd, Lattice),
        (P, Ap, Standard),
        (Cp, Su, Standard),
        (Ap, Sigma, Standard),
        (Su, Sigma, Standard),
        (PhiPlus, Phi, Standard),
        (PhiMinus, Phi, Standard),
        (PhiPlus, WPlus, Standard),
        (PhiMinus, WMinus, Standard),
        (Phi, W, Standard),
        (WPlus, W, Standard),
        (WMinus, W, Standard),
        (WPlus, BPlus, Standard),
        (WMinus, BMinus, Standard),
        (W, B, Standard),
        (BPlus, B, Standard),
        (BMinus, B, Standard),
        (BPlus, Ap, Standard),
        (BMinus, Su, Standard),
        (B, Sigma, Standard),
        (BwPlus, WPlus, Standard),
        (BwMinus, WMinus, Standard),
        (Bw, W, Standard),
        (BPhi, Phi, Standard),
        (Lde, PhiPlus, Standard),
        (Rde, PhiMinus, Standard),
        (Ld, BPlus, Standard),
        (Rd, BMinus, Standard),
        (D, B, Standard),
        (Dsc, Su, Standard),
        (Dsce, PhiMinus, Standard),
        (BPhiPlus, Lde, Standard),
        (Lde, BPhiPlus, Standard),
        (BPhiMinus, Rde, Standard),
        (Rde, BPhiMinus, Standard),
    ]
};

/// Reflexive-transitive closure of [`INCLUSIONS`], indexed by kind.
pub struct InclusionClosure {
    below: [[bool; 30]; 30],
}

impl InclusionClosure {
    pub fn new() -> Self {
        let mut below = [[false; 30]; 30];
        for (i, row) in below.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b, _) in INCLUSIONS {
            below[a.index()][b.index()] = true;
        }
        for k in 0..30 {
            for i in 0..30 {
                if below[i][k] {
                    for j in 0..30 {
                        if below[k][j] {
                            below[i][j] = true;
                        }
                    }
                }
            }
        }
        InclusionClosure { below }
    }

    /// `a ⊆ b` follows from the inclusion list.
    pub fn included(&self, a: SpectrumKind, b: SpectrumKind) -> bool {
        self.below[a.index()][b.index()]
    }

    pub fn below(&self, x: SpectrumKind) -> impl Iterator<Item = SpectrumKind> + '_ {
        SpectrumKind::ALL.into_iter().filter(move |&y| y != x && self.included(y, x))
    }

    pub fn above(&self, x: SpectrumKind) -> impl Iterator<Item = SpectrumKind> + '_ {
        SpectrumKind::ALL.into_iter().filter(move |&y| y != x && self.included(x, y))
    }
}

impl Default for InclusionClosure {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for k in SpectrumKind::ALL {
            assert_eq!(k.name().parse::<SpectrumKind>().unwrap(), k);
        }
        assert!("sigma_x".parse::<SpectrumKind>().is_err());
        let mut names: Vec<_> = SpectrumKind::ALL.iter().map(|k| k.name()).collect();
        names.dedup();
        assert_eq!(names.len(), 30);
    }

    #[test]
    fn lattice_closure() {
        let c = InclusionClosure::new();
        assert!(c.included(Tud, D));
        assert!(c.included(Tud, Dsc));
        assert!(c.included(QPhi, Rd));
        assert!(!c.included(D, Tud));
        assert!(!c.included(Ld, Rd));
        for k in SpectrumKind::ETA {
            assert!(c.included(Tud, k) && c.included(k, D), "{k}");
            assert!(c.included(k, Sigma), "{k}");
        }
        for k in SpectrumKind::ALL {
            assert!(c.included(k, Sigma), "{k} below sigma");
        }
    }
}
