//! Stock surfaces of Picard number one and the exact values recorded for them.

use std::fmt;
use std::str::FromStr;

use crate::bounds::{nagata_plane_value, PlaneValue, SurfaceFlags};
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    ProjectivePlane,
    GeneralK3,
    HypersurfaceInP3,
    AbelianType1d,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub kind: SurfaceKind,
    /// `L^2` for the ample generator `L`.
    pub k: u64,
    pub very_ample: bool,
    /// Degree for hypersurfaces, `d` for type `(1, d)` abelian surfaces.
    pub parameter: Option<u64>,
    pub notes: String,
}

impl SurfaceSpec {
    pub fn flags(&self) -> SurfaceFlags {
        SurfaceFlags {
            very_ample: self.very_ample,
            picard_verified: self.kind != SurfaceKind::Custom,
        }
    }
}

/// Builds a validated descriptor. `parameter` is `k` for K3 and custom
/// surfaces, the degree for hypersurfaces and `d` for abelian surfaces; the
/// plane takes none.
pub fn make_surface(kind: SurfaceKind, parameter: Option<u64>) -> Result<SurfaceSpec> {
    let need = |p: Option<u64>| p.ok_or_else(|| Error::Domain(format!("{kind:?} needs a parameter")));
    Ok(match kind {
        SurfaceKind::ProjectivePlane => SurfaceSpec {
            kind,
            k: 1,
            very_ample: true,
            parameter: None,
            notes: "P2 with L = O(1)".into(),
        },
        SurfaceKind::GeneralK3 => {
            let k = need(parameter)?;
            if k < 2 || k % 2 == 1 {
                return domain(format!("K3 polarization has even self-intersection >= 2, got {k}"));
            }
            SurfaceSpec {
                kind,
                k,
                // not asserted: k = 2 is a double plane, and we do not track the
                // finer very-ampleness classification
                very_ample: false,
                parameter: Some(k),
                notes: format!("general K3 surface with L^2 = {k}"),
            }
        }
        SurfaceKind::HypersurfaceInP3 => {
            let t = need(parameter)?;
            if t < 4 {
                return domain(format!("Noether-Lefschetz requires degree ≥ 4, got {t}"));
            }
            SurfaceSpec {
                kind,
                k: t,
                very_ample: true,
                parameter: Some(t),
                notes: format!("general surface of degree {t} in P3, L = O(1), L^2 = {t}"),
            }
        }
        SurfaceKind::AbelianType1d => {
            let d = need(parameter)?;
            if d == 0 {
                return domain("abelian surface type (1, d) needs d >= 1");
            }
            SurfaceSpec {
                kind,
                k: 2 * d,
                very_ample: false,
                parameter: Some(d),
                notes: format!("abelian surface of type (1,{d}), L^2 = {}", 2 * d),
            }
        }
        SurfaceKind::Custom => make_custom(need(parameter)?, false)?,
    })
}

pub fn make_custom(k: u64, very_ample: bool) -> Result<SurfaceSpec> {
    if k == 0 {
        return domain("k = L^2 must be positive");
    }
    Ok(SurfaceSpec {
        kind: SurfaceKind::Custom,
        k,
        very_ample,
        parameter: Some(k),
        notes: format!("custom surface with L^2 = {k}"),
    })
}

/// The exact multi-point value when one is recorded: only the plane has any.
pub fn known_value(spec: &SurfaceSpec, r: u64) -> Result<Option<PlaneValue>> {
    match spec.kind {
        SurfaceKind::ProjectivePlane => nagata_plane_value(r).map(Some),
        _ => Ok(None),
    }
}

/// `p2 | k3:<k> | hyp:<deg> | ab:<d> | custom:<k>[,va]`
impl FromStr for SurfaceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        let s_trim = s.trim();
        if s_trim == "p2" {
            return make_surface(SurfaceKind::ProjectivePlane, None);
        }
        let (tag, rest) = s_trim.split_once(':').ok_or_else(bad)?;
        match tag {
            "k3" => make_surface(SurfaceKind::GeneralK3, Some(num(rest)?)),
            "hyp" => make_surface(SurfaceKind::HypersurfaceInP3, Some(num(rest)?)),
            "ab" => make_surface(SurfaceKind::AbelianType1d, Some(num(rest)?)),
            "custom" => match rest.split_once(',') {
                Some((k, "va")) => make_custom(num(k)?, true),
                Some(_) => Err(bad()),
                None => make_custom(num(rest)?, false),
            },
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.parameter) {
            (SurfaceKind::ProjectivePlane, _) => f.write_str("p2"),
            (SurfaceKind::GeneralK3, _) => write!(f, "k3:{}", self.k),
            (SurfaceKind::HypersurfaceInP3, Some(t)) => write!(f, "hyp:{t}"),
            (SurfaceKind::AbelianType1d, Some(d)) => write!(f, "ab:{d}"),
            (SurfaceKind::Custom, _) if self.very_ample => write!(f, "custom:{},va", self.k),
            _ => write!(f, "custom:{}", self.k),
        }
    }
}
