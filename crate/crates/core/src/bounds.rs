//! Named bounds for `eps(X, L, r)` with `k = L^2`, and their exact comparison.
//!
//! Lower bounds: the main `sqrt((r+2)/(r+3)) * sqrt(k/r)` bound with its
//! finite list of exceptional reduced curves, the floor bound
//! `floor(sqrt(k/r))`, Harbourne's `eps_{r,k}`, and the product bound
//! `eps(X,L,1) * eps(P^2, O(1), r)`. Upper bound: `sqrt(k/r)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exact::{ceil_sqrt, is_perfect_square, isqrt, isqrt_u64, Rational, Surd};
use crate::pell::{fsst_applicable, szemberg_single_point_bound};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    pub value: Surd,
    /// False when only `value - delta` is guaranteed for every `delta > 0`,
    /// or when the value is an upper bound reached only in optimal cases.
    pub attained: bool,
    /// True when the bound holds only outside an attached list of exceptions.
    pub conditional: bool,
}

impl BoundValue {
    fn proven(value: Surd) -> Self {
        BoundValue { value, attained: true, conditional: false }
    }
}

/// A reduced curve in `|dL|` through `s` very general points with
/// multiplicity one, whose ratio `d k / s` undercuts the generic main bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubmaximalCandidate {
    pub d: u64,
    pub s: u64,
    #[serde(serialize_with = "ser_display")]
    pub value: Rational,
}

fn ser_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainBound {
    pub bound: BoundValue,
    pub candidates: Vec<SubmaximalCandidate>,
    pub annotation: Option<String>,
}

impl MainBound {
    /// The unconditional guarantee: the smaller of the generic value and the
    /// smallest exceptional candidate.
    pub fn guaranteed(&self) -> Surd {
        match self.candidates.first() {
            Some(c) => self.bound.value.clone().min(Surd::from(c.value.clone())),
            None => self.bound.value.clone(),
        }
    }
}

pub const TWO_SIX_ANNOTATION: &str =
    "if equality holds, eps(L,2) is computed by a curve C in |L| with multiplicity two at each of two very general points";

fn rat(n: u64, d: u64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `sqrt(k/r)`.
pub fn upper_bound(k: u64, r: u64) -> Result<BoundValue> {
    if k == 0 || r == 0 {
        return domain("upper bound needs k >= 1 and r >= 1");
    }
    Ok(BoundValue {
        value: Surd::sqrt_of(&rat(k, r))?,
        attained: false,
        conditional: false,
    })
}

/// `sqrt((r+2) k / ((r+3) r))`.
pub fn generic_main_value(k: u64, r: u64) -> Surd {
    Surd::sqrt_of(&Rational::new(
        BigInt::from(r + 2) * k,
        BigInt::from(r + 3) * r,
    ))
    .expect("positive radicand")
}

pub fn main_lower_bound(k: u64, r: u64) -> Result<MainBound> {
    if r < 2 {
        return domain(format!(
            "the multi-point main bound needs r >= 2, got r = {r}; single-point bounds come from the Pell module"
        ));
    }
    if k == 0 {
        return domain("k = L^2 must be positive");
    }
    if (r, k) == (2, 6) {
        return Ok(MainBound {
            bound: BoundValue::proven(Surd::from(rat(3, 2))),
            candidates: Vec::new(),
            annotation: Some(TWO_SIX_ANNOTATION.to_string()),
        });
    }
    Ok(MainBound {
        bound: BoundValue {
            value: generic_main_value(k, r),
            attained: true,
            conditional: true,
        },
        candidates: enumerate_exceptional_candidates(k, r),
        annotation: None,
    })
}

/// All `(d, s)` with `s <= r`, `s - 1 <= d^2 k` and `d k / s` strictly below
/// the generic main value, sorted by value then `(d, s)`.
///
/// `d k / s < sqrt((r+2)k/((r+3)r))` squares to `d^2 k r (r+3) < (r+2) s^2`,
/// which with `s <= r` forces `d^2 k < r`.
pub fn enumerate_exceptional_candidates(k: u64, r: u64) -> Vec<SubmaximalCandidate> {
    let (k, r) = (k as u128, r as u128);
    let mut out = Vec::new();
    let mut d: u128 = 1;
    while d * d * k < r {
        for s in 1..=r {
            if s - 1 <= d * d * k && d * d * k * r * (r + 3) < (r + 2) * s * s {
                out.push(SubmaximalCandidate {
                    d: d as u64,
                    s: s as u64,
                    value: rat((d * k) as u64, s as u64),
                });
            }
        }
        d += 1;
    }
    out.sort_by(|a, b| a.value.cmp(&b.value).then((a.d, a.s).cmp(&(b.d, b.s))));
    out
}

/// Largest `j` with `j^2 r <= k`, i.e. `floor(sqrt(k/r))`.
pub fn szemberg_floor_bound(k: u64, r: u64) -> u64 {
    assert!(r >= 1, "r must be positive");
    isqrt_u64(k / r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HarbourneFamily {
    /// `floor(d sqrt(rk)) / (d r)` for `1 <= d <= sqrt(r/k)`
    FloorFamily,
    /// `1 / ceil(sqrt(r/k))`
    CeilingReciprocal,
    /// `d k / ceil(d sqrt(rk))` for `1 <= d <= sqrt(r/k)`
    CeilingFamily,
}

impl fmt::Display for HarbourneFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HarbourneFamily::FloorFamily => "floor(d*sqrt(rk))/(dr)",
            HarbourneFamily::CeilingReciprocal => "1/ceil(sqrt(r/k))",
            HarbourneFamily::CeilingFamily => "dk/ceil(d*sqrt(rk))",
        })
    }
}

/// One member of the finite set whose maximum is `eps_{r,k}`, kept with its
/// unreduced numerator and denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarbourneElement {
    pub family: HarbourneFamily,
    pub d: Option<u64>,
    pub numerator: BigInt,
    pub denominator: BigInt,
    pub value: Rational,
}

impl HarbourneElement {
    fn new(family: HarbourneFamily, d: Option<u64>, numerator: BigInt, denominator: BigInt) -> Self {
        let value = Rational::new(numerator.clone(), denominator.clone());
        HarbourneElement { family, d, numerator, denominator, value }
    }
}

impl HarbourneElement {
    /// `35/60 = 7/12 (0.5833)`, or `1/2 (0.5000)` when already reduced.
    pub fn describe(&self) -> String {
        let decimal = Surd::from(self.value.clone()).render(4, crate::exact::RenderMode::Truncate);
        let raw = self.to_string();
        let reduced = self.value.to_string();
        if raw == reduced || format!("{reduced}/1") == raw {
            format!("{raw} ({decimal})")
        } else {
            format!("{raw} = {reduced} ({decimal})")
        }
    }
}

impl fmt::Display for HarbourneElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarbourneBound {
    pub bound: BoundValue,
    /// The very-ampleness hypothesis was not supplied.
    pub advisory: bool,
    /// `k <= r` and `rk` a perfect square: only `sqrt(k/r) - delta` holds.
    pub exceptional: bool,
    pub winner: HarbourneElement,
    pub elements: Vec<HarbourneElement>,
}

impl HarbourneBound {
    /// Best element of each family that has one.
    pub fn family_maxima(&self) -> Vec<&HarbourneElement> {
        let mut best: Vec<&HarbourneElement> = Vec::new();
        for e in &self.elements {
            match best.iter_mut().find(|b| b.family == e.family) {
                Some(b) if e.value > b.value => *b = e,
                Some(_) => {}
                None => best.push(e),
            }
        }
        best
    }
}

/// Harbourne's `eps_{r,k}` for a very ample `L` with `L^2 = k`.
pub fn harbourne_bound(k: u64, r: u64, very_ample: bool) -> Result<HarbourneBound> {
    if k == 0 || r == 0 {
        return domain("Harbourne's bound needs k >= 1 and r >= 1");
    }
    let rk = BigInt::from(r) * k;
    let mut elements = Vec::new();
    // d <= sqrt(r/k)  <=>  d^2 k <= r
    let ds: Vec<u64> = (1..).take_while(|&d: &u64| (d as u128).pow(2) * (k as u128) <= r as u128).collect();
    for &d in &ds {
        let under = BigInt::from(d) * BigInt::from(d) * &rk;
        elements.push(HarbourneElement::new(
            HarbourneFamily::FloorFamily,
            Some(d),
            isqrt(&under)?,
            BigInt::from(d) * r,
        ));
    }
    // ceil(sqrt(r/k)) is the least c with c^2 k >= r
    let mut c = isqrt_u64(r / k).max(1);
    while (c as u128).pow(2) * (k as u128) < r as u128 {
        c += 1;
    }
    while c > 1 && ((c - 1) as u128).pow(2) * (k as u128) >= r as u128 {
        c -= 1;
    }
    elements.push(HarbourneElement::new(
        HarbourneFamily::CeilingReciprocal,
        None,
        BigInt::from(1u32),
        BigInt::from(c),
    ));
    for &d in &ds {
        let under = BigInt::from(d) * BigInt::from(d) * &rk;
        elements.push(HarbourneElement::new(
            HarbourneFamily::CeilingFamily,
            Some(d),
            BigInt::from(d) * k,
            ceil_sqrt(&under)?,
        ));
    }
    let winner = elements
        .iter()
        .fold(None::<&HarbourneElement>, |best, e| match best {
            Some(b) if b.value >= e.value => Some(b),
            _ => Some(e),
        })
        .expect("the reciprocal family is never empty")
        .clone();
    let exceptional = k <= r && is_perfect_square(&rk);
    let bound = if exceptional {
        BoundValue {
            value: Surd::sqrt_of(&rat(k, r))?,
            attained: false,
            conditional: false,
        }
    } else {
        BoundValue::proven(Surd::from(winner.value.clone()))
    };
    Ok(HarbourneBound {
        bound,
        advisory: !very_ample,
        exceptional,
        winner,
        elements,
    })
}

/// `eps(X,L,r) >= eps(X,L,1) * eps(P^2, O(1), r)`.
pub fn biran_product_bound(eps_single: &Surd, eps_plane_r: &Surd) -> Surd {
    eps_single * eps_plane_r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneStatus {
    Known,
    ProvedSquare,
    Conjectural,
}

impl fmt::Display for PlaneStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlaneStatus::Known => "known",
            PlaneStatus::ProvedSquare => "proved_square",
            PlaneStatus::Conjectural => "conjectural",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneValue {
    pub value: BoundValue,
    pub status: PlaneStatus,
}

/// `eps(P^2, O(1), r)`: the classical values for `r <= 9`, `1/sqrt(r)` for
/// squares, and the Nagata value `1/sqrt(r)` (conjectural) otherwise.
pub fn nagata_plane_value(r: u64) -> Result<PlaneValue> {
    let known = |n, d| PlaneValue {
        value: BoundValue::proven(Surd::from(rat(n, d))),
        status: PlaneStatus::Known,
    };
    Ok(match r {
        0 => return domain("r must be positive"),
        1 => known(1, 1),
        2..=4 => known(1, 2),
        5 | 6 => known(2, 5),
        7 => known(3, 8),
        8 => known(6, 17),
        _ => {
            let root = isqrt_u64(r);
            if root * root == r {
                PlaneValue {
                    value: BoundValue::proven(Surd::from(rat(1, root))),
                    status: PlaneStatus::ProvedSquare,
                }
            } else {
                PlaneValue {
                    value: BoundValue {
                        value: Surd::sqrt_of(&rat(1, r))?,
                        attained: true,
                        conditional: true,
                    },
                    status: PlaneStatus::Conjectural,
                }
            }
        }
    })
}

pub const NINE_POINT_NOTE: &str =
    "r=9: eps = 1/3 = 1/sqrt(9); a tabulated value of 3 is a typo (it exceeds the upper bound sqrt(1/9))";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    Main,
    MainUnconditional,
    SzembergFloor,
    Harbourne,
    Biran,
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundName::Main => "main",
            BoundName::MainUnconditional => "main_unconditional",
            BoundName::SzembergFloor => "szemberg_floor",
            BoundName::Harbourne => "harbourne",
            BoundName::Biran => "biran",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub name: BoundName,
    pub value: BoundValue,
    /// Depends on an unproved conjecture.
    pub conjectural: bool,
    /// A hypothesis of the bound was not confirmed by the caller.
    pub advisory: bool,
    /// Exactly equal to the entry before it in the sorted report.
    pub ties_previous: bool,
    pub applicability: String,
    pub attribution: String,
}

impl BoundEntry {
    pub fn is_unconditional(&self) -> bool {
        !self.value.conditional && !self.conjectural && !self.advisory
    }
}

/// What the caller knows about the surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SurfaceFlags {
    pub very_ample: bool,
    /// False for user-described surfaces whose Picard number is assumed.
    pub picard_verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub k: u64,
    pub r: u64,
    pub upper: BoundValue,
    /// Lower bounds, descending by exact value.
    pub entries: Vec<BoundEntry>,
    pub main: MainBound,
    pub harbourne: HarbourneBound,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn entry(&self, name: BoundName) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

fn single_point_factor(k: u64) -> Result<(Surd, bool, String)> {
    let root = isqrt_u64(k);
    if root * root == k {
        return Ok((
            Surd::integer(root),
            false,
            format!("eps(X,L,1) = {root} (floor bound at r=1 is optimal)"),
        ));
    }
    let single = Surd::from(szemberg_single_point_bound(k)?);
    Ok(match fsst_applicable(k) {
        Some(w) => (single.clone(), false, format!("eps(X,L,1) >= {single} (Pell bound, proved since k = {} with n = {})", w.formula(), w.n)),
        None => (
            single.clone(),
            true,
            format!("eps(X,L,1) >= {single} (Pell bound, conjectural: k is not n²±1)"),
        ),
    })
}

/// Every applicable bound for `(k, r)`, sorted and annotated.
pub fn compare_bounds(k: u64, r: u64, flags: SurfaceFlags) -> Result<BoundReport> {
    let upper = upper_bound(k, r)?;
    let main = main_lower_bound(k, r)?;
    let harbourne = harbourne_bound(k, r, flags.very_ample)?;
    let mut notes = Vec::new();
    let mut entries = Vec::new();

    let main_applicability = if let Some(a) = &main.annotation {
        notes.push(format!("main: {a}"));
        "(r, k) = (2, 6)".to_string()
    } else if main.candidates.is_empty() {
        "no exceptional reduced curves exist".to_string()
    } else {
        let list: Vec<String> = main
            .candidates
            .iter()
            .map(|c| format!("(d={}, s={}, {})", c.d, c.s, c.value))
            .collect();
        notes.push(format!("main: exceptional candidates {}", list.join(" ")));
        format!("unless eps = dk/s for one of {} exceptional candidates", main.candidates.len())
    };
    entries.push(BoundEntry {
        name: BoundName::Main,
        value: main.bound.clone(),
        conjectural: false,
        advisory: false,
        ties_previous: false,
        applicability: main_applicability,
        attribution: "main theorem, cases (1)/(2a)".into(),
    });
    entries.push(BoundEntry {
        name: BoundName::MainUnconditional,
        value: BoundValue::proven(main.guaranteed()),
        conjectural: false,
        advisory: false,
        ties_previous: false,
        applicability: "min of the main value and all exceptional candidates".into(),
        attribution: "main theorem, all cases".into(),
    });

    let floor = szemberg_floor_bound(k, r);
    entries.push(BoundEntry {
        name: BoundName::SzembergFloor,
        value: BoundValue::proven(Surd::integer(floor)),
        conjectural: false,
        advisory: false,
        ties_previous: false,
        applicability: "Picard number one, L the ample generator".into(),
        attribution: "Szemberg floor bound floor(sqrt(k/r))".into(),
    });

    let mut harbourne_applicability = if flags.very_ample {
        "L very ample".to_string()
    } else {
        "advisory: very ampleness not confirmed".to_string()
    };
    if harbourne.exceptional {
        harbourne_applicability.push_str("; k <= r and rk square: only sqrt(k/r) - delta for every delta > 0");
    }
    entries.push(BoundEntry {
        name: BoundName::Harbourne,
        value: harbourne.bound.clone(),
        conjectural: false,
        advisory: harbourne.advisory,
        ties_previous: false,
        applicability: harbourne_applicability,
        attribution: "Harbourne eps_{r,k}".into(),
    });
    notes.push(format!(
        "harbourne: set maximum {} from {}",
        harbourne.winner.describe(),
        harbourne.winner.family
    ));
    for best in harbourne.family_maxima() {
        if best.family != harbourne.winner.family && best.value != harbourne.winner.value {
            notes.push(format!(
                "harbourne: {} peaks at {}, which differs from the set maximum {}",
                best.family,
                best.describe(),
                harbourne.winner.describe(),
            ));
        }
    }

    match single_point_factor(k) {
        Ok((single, single_conj, single_note)) => {
            let plane = nagata_plane_value(r)?;
            let plane_conj = plane.status == PlaneStatus::Conjectural;
            let value = biran_product_bound(&single, &plane.value.value);
            notes.push(format!("biran: {single_note}"));
            notes.push(format!("biran: eps(P2,O(1),{r}) = {} ({})", plane.value.value, plane.status));
            entries.push(BoundEntry {
                name: BoundName::Biran,
                value: BoundValue::proven(value),
                conjectural: single_conj || plane_conj,
                advisory: false,
                ties_previous: false,
                applicability: match (single_conj, plane_conj) {
                    (false, false) => "single-point and plane factors proved".into(),
                    (true, false) => "conjectural single-point factor".into(),
                    (false, true) => "conjectural plane factor (Nagata)".into(),
                    (true, true) => "conjectural single-point and plane factors".into(),
                },
                attribution: "product bound eps(X,L,1) * eps(P2,O(1),r)".into(),
            });
        }
        Err(e) => notes.push(format!("biran: unavailable ({e})")),
    }

    if !flags.picard_verified {
        notes.push("surface: Picard number one is assumed, not verified".into());
    }

    entries.sort_by(|a, b| b.value.value.cmp(&a.value.value).then(a.name.cmp(&b.name)));
    for i in 1..entries.len() {
        entries[i].ties_previous = entries[i].value.value.cmp(&entries[i - 1].value.value) == Ordering::Equal;
    }

    Ok(BoundReport { k, r, upper, entries, main, harbourne, notes })
}

/// `floor(sqrt(k/r)) >= sqrt((r+2)k/((r+3)r))`, decided as
/// `j^2 r (r+3) >= (r+2) k`.
pub fn floor_dominates(k: u64, r: u64) -> bool {
    let j = szemberg_floor_bound(k, r) as u128;
    j * j * (r as u128) * (r as u128 + 3) >= (r as u128 + 2) * k as u128
}

/// The last `k` at which the floor bound loses to the main bound.
///
/// With `j = floor(sqrt(k/r))`, `k` ranges over `[j^2 r, (j+1)^2 r)` and a
/// loss needs `(r+2) k > j^2 r (r+3)`; the band's top element loses only while
/// `j < (r+2) + sqrt((r+2)^2 + (r+2))`, so finitely many bands matter.
pub fn szemberg_last_failure(r: u64) -> u64 {
    assert!(r >= 2);
    let r = r as u128;
    let mut last = 0;
    for j in 0..=(2 * r + 6) {
        let top = (j + 1) * (j + 1) * r - 1;
        if (r + 2) * top > j * j * r * (r + 3) {
            last = last.max(top);
        }
    }
    last as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DominanceThreshold {
    pub n: u64,
    /// The floor bound keeps winning for every `k > k_cap` too.
    pub stable_beyond_cap: bool,
}

/// Least `N <= k_cap` with the floor bound at least the main bound for all
/// `N <= k <= k_cap`; ties count for the floor bound.
pub fn szemberg_dominance_threshold(r: u64, k_cap: u64) -> Result<Option<DominanceThreshold>> {
    if r < 2 {
        return domain(format!("dominance threshold needs r >= 2, got {r}"));
    }
    if k_cap == 0 {
        return Ok(None);
    }
    let last_fail = (1..=k_cap).rev().find(|&k| !floor_dominates(k, r)).unwrap_or(0);
    if last_fail == k_cap {
        return Ok(None);
    }
    let n = last_fail + 1;
    Ok(Some(DominanceThreshold {
        n,
        stable_beyond_cap: szemberg_last_failure(r) < n,
    }))
}
