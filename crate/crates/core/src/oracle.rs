//! Brute-force verification engine.
//!
//! A candidate curve is modelled by its degree `d` (it lies in `|dL|`) and its
//! multiplicities `m_1 >= ... >= m_s >= 1` at very general points. The only
//! geometric input is the Ein-Lazarsfeld-Xu inequality
//! `d^2 k >= m_1^2 + ... + m_s^2 - m_s`; everything the search reports is a
//! statement about such configurations, never about actual curves, so its
//! minima are candidate-level quantities and not Seshadri constants.
//!
//! The search space is split into `(d, m_1)` work units that run through
//! [`crate::par::map`]; results are merged in a fixed order so parallel and
//! sequential runs agree bit for bit.

use std::cmp::Ordering;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exact::Rational;
use crate::par::{self, Execution};

/// Nonincreasing positive multiplicities; trailing zeros are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct MultiplicityVector(Vec<u32>);

impl MultiplicityVector {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return domain("a multiplicity vector needs at least one entry");
        }
        if entries.contains(&0) {
            return domain("multiplicities must be positive (zeros are implicit)");
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("multiplicities must be nonincreasing: {entries:?}"));
        }
        Ok(MultiplicityVector(entries))
    }

    /// `s` copies of multiplicity one.
    pub fn ones(s: usize) -> Self {
        MultiplicityVector(vec![1; s.max(1)])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// The number of points `s` with positive multiplicity.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> u32 {
        self.0[0]
    }

    pub fn last(&self) -> u32 {
        self.0[self.0.len() - 1]
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&m| m as u64).sum()
    }

    pub fn sum_squares(&self) -> u64 {
        self.0.iter().map(|&m| (m as u64).pow(2)).sum()
    }

    /// `sum m_i^2 - m_s`, the right-hand side of the EL-Xu inequality.
    pub fn el_xu_weight(&self) -> u64 {
        self.sum_squares() - self.last() as u64
    }
}

impl fmt::Display for MultiplicityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseLabel {
    Generic2a,
    ReducedCurve2b,
    TwoSix3,
    Infeasible,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseLabel::Generic2a => "Generic2a",
            CaseLabel::ReducedCurve2b => "ReducedCurve2b",
            CaseLabel::TwoSix3 => "TwoSix3",
            CaseLabel::Infeasible => "Infeasible",
        })
    }
}

/// `d^2 k >= sum m_i^2 - m_s`.
pub fn check_el_xu(d: u64, k: u64, m: &MultiplicityVector) -> bool {
    (d as u128).pow(2) * k as u128 >= m.el_xu_weight() as u128
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HanCheck {
    pub applicable: bool,
    pub holds: bool,
    /// Both sides are equal; only meaningful when applicable.
    pub equality: bool,
}

/// `(s+3)s/(s+2) * (sum m_i^2 - m_s) >= (sum m_i)^2`, evaluated as
/// `(s+3) s (sum m_i^2 - m_s) >= (s+2) (sum m_i)^2` in integers.
///
/// Applicable when `m_1 >= 2` and either `s >= 3` or `s = 2` with
/// `(m_1, m_2) != (2, 2)`.
pub fn check_han_inequality(m: &MultiplicityVector) -> HanCheck {
    let s = m.len();
    let e = m.entries();
    let applicable = e[0] >= 2 && (s >= 3 || (s == 2 && (e[0], e[1]) != (2, 2)));
    if !applicable {
        return HanCheck { applicable, holds: false, equality: false };
    }
    let s = s as u128;
    let lhs = (s + 3) * s * m.el_xu_weight() as u128;
    let rhs = (s + 2) * (m.sum() as u128).pow(2);
    HanCheck {
        applicable,
        holds: lhs >= rhs,
        equality: lhs == rhs,
    }
}

/// Whether `d k / sum m_i` is strictly below `sqrt((r+2)k/((r+3)r))`,
/// i.e. `d^2 k r (r+3) < (r+2) (sum m_i)^2`.
pub fn is_sub_generic(d: u64, k: u64, r: u64, m: &MultiplicityVector) -> bool {
    let (d, k, r) = (d as u128, k as u128, r as u128);
    d * d * k * r * (r + 3) < (r + 2) * (m.sum() as u128).pow(2)
}

/// Which branch of the main theorem's case analysis a configuration takes.
pub fn classify_case(d: u64, k: u64, r: u64, m: &MultiplicityVector) -> Result<CaseLabel> {
    if r < 2 {
        return domain(format!("classification needs r >= 2, got {r}"));
    }
    if m.len() as u64 > r {
        return domain(format!("{m} has more than r = {r} points"));
    }
    if !check_el_xu(d, k, m) {
        return Ok(CaseLabel::Infeasible);
    }
    if m.first() == 1 {
        return Ok(CaseLabel::ReducedCurve2b);
    }
    if (d, k) == (1, 6) && m.entries() == [2, 2] {
        return Ok(CaseLabel::TwoSix3);
    }
    if is_sub_generic(d, k, r, m) {
        return Err(Error::TheoremViolation(format!(
            "d={d} k={k} r={r} m={m}: m_1 >= 2 yet d^2 k < (r+2)/(r(r+3)) (sum m_i)^2"
        )));
    }
    Ok(CaseLabel::Generic2a)
}

/// Depth-first walk over nonincreasing vectors with first entry `first`,
/// at most `max_len` entries, each satisfying `sum m_i^2 - m_s <= budget`.
///
/// Extending a vector by `x <= m_s` raises the weight by `x^2 - x + m_s > 0`,
/// so an infeasible node has no feasible descendants; and `x^2 - x` grows
/// with `x`, so once `x` fits every smaller entry fits as well.
fn walk_feasible(first: u32, max_len: usize, budget: u64, visit: &mut dyn FnMut(&[u32])) {
    fn go(buf: &mut Vec<u32>, sum_sq: u64, max_len: usize, budget: u64, visit: &mut dyn FnMut(&[u32])) {
        visit(buf);
        if buf.len() == max_len {
            return;
        }
        let prev = *buf.last().expect("nonempty");
        for x in (1..=prev).rev() {
            let x64 = x as u64;
            let sq = sum_sq + x64 * x64;
            if sq - x64 > budget {
                continue;
            }
            buf.push(x);
            go(buf, sq, max_len, budget, visit);
            buf.pop();
        }
    }
    let f = first as u64;
    if max_len == 0 || f * f - f > budget {
        return;
    }
    let mut buf = Vec::with_capacity(max_len);
    buf.push(first);
    go(&mut buf, f * f, max_len, budget, visit);
}

/// Every nonincreasing vector with first entry `first` and at most `max_len`
/// entries, with no feasibility filter.
fn walk_all(first: u32, max_len: usize, visit: &mut dyn FnMut(&[u32])) {
    walk_feasible(first, max_len, u64::MAX, visit)
}

/// Work units `(d, m_1)` whose first entry alone is EL-Xu feasible.
fn units(k: u64, d_max: u64, m_max: u32) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for d in 1..=d_max {
        let budget = d * d * k;
        for m1 in 1..=m_max {
            let m = m1 as u64;
            if m * m - m <= budget {
                out.push((d, m1));
            }
        }
    }
    out
}

/// Largest `m` with `m^2 - m <= d_max^2 k`: no feasible vector has a bigger
/// entry, so it is the natural per-point cap for an exhaustive search.
pub fn natural_m_max(k: u64, d_max: u64) -> u32 {
    let budget = d_max.saturating_mul(d_max).saturating_mul(k);
    let mut m = crate::exact::isqrt_u64(budget) + 1;
    while m * m - m > budget {
        m -= 1;
    }
    m.min(u32::MAX as u64) as u32
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub minimum: Rational,
    /// All `(d, m)` attaining the minimum, ordered by `(d, s, entries)`.
    pub witnesses: Vec<(u64, MultiplicityVector)>,
}

fn witness_order(a: &(u64, MultiplicityVector), b: &(u64, MultiplicityVector)) -> Ordering {
    (a.0, a.1.len(), a.1.entries()).cmp(&(b.0, b.1.len(), b.1.entries()))
}

/// `(num, den)` pairs compared as fractions.
fn cmp_frac(a: (u64, u64), b: (u64, u64)) -> Ordering {
    (a.0 as u128 * b.1 as u128).cmp(&(b.0 as u128 * a.1 as u128))
}

/// Minimum of `d k / sum m_i` over EL-Xu feasible `(d, m)` with `d <= d_max`,
/// `s <= r` and entries at most `m_max`.
pub fn min_ratio_search(k: u64, r: u64, d_max: u64, m_max: u32) -> Result<SearchResult> {
    min_ratio_search_with(k, r, d_max, m_max, Execution::Parallel)
}

pub fn min_ratio_search_with(k: u64, r: u64, d_max: u64, m_max: u32, exec: Execution) -> Result<SearchResult> {
    if k == 0 {
        return domain("k = L^2 must be positive");
    }
    if d_max == 0 || m_max == 0 || r == 0 {
        return Err(Error::EmptySearch(format!(
            "d_max = {d_max}, m_max = {m_max}, r = {r} leaves nothing to search"
        )));
    }
    let max_len = r.min(usize::MAX as u64) as usize;
    let work = units(k, d_max, m_max);
    let partial = par::map(&work, exec, |&(d, m1)| {
        let mut best: Option<(u64, u64)> = None;
        let mut found: Vec<(u64, MultiplicityVector)> = Vec::new();
        walk_feasible(m1, max_len, d * d * k, &mut |m| {
            let sum: u64 = m.iter().map(|&x| x as u64).sum();
            let here = (d * k, sum);
            let ord = best.map_or(Ordering::Less, |b| cmp_frac(here, b));
            if ord == Ordering::Less {
                best = Some(here);
                found.clear();
            }
            if ord != Ordering::Greater {
                found.push((d, MultiplicityVector(m.to_vec())));
            }
        });
        (best, found)
    });
    let mut best: Option<(u64, u64)> = None;
    let mut witnesses = Vec::new();
    for (b, found) in partial {
        let Some(b) = b else { continue };
        let ord = best.map_or(Ordering::Less, |cur| cmp_frac(b, cur));
        if ord == Ordering::Less {
            best = Some(b);
            witnesses.clear();
        }
        if ord != Ordering::Greater {
            witnesses.extend(found);
        }
    }
    let (num, den) = best.ok_or_else(|| Error::EmptySearch("no feasible configuration".into()))?;
    witnesses.sort_by(witness_order);
    Ok(SearchResult {
        minimum: Rational::new(BigInt::from(num), BigInt::from(den)),
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub d: u64,
    pub k: u64,
    pub r: u64,
    pub m: MultiplicityVector,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    /// Feasible configurations examined.
    pub configurations: u64,
    /// Feasible configurations whose ratio undercuts the generic bound.
    pub sub_generic: u64,
    pub sub_generic_reduced: u64,
    pub sub_generic_two_six: u64,
    pub violations: Vec<Violation>,
}

impl TheoremReport {
    fn absorb(&mut self, other: TheoremReport) {
        self.configurations += other.configurations;
        self.sub_generic += other.sub_generic;
        self.sub_generic_reduced += other.sub_generic_reduced;
        self.sub_generic_two_six += other.sub_generic_two_six;
        self.violations.extend(other.violations);
    }
}

/// Classifies every EL-Xu feasible configuration in the box and checks that
/// each one below the generic bound is a reduced curve or the `(2, 6)` case.
pub fn verify_theorem(
    k_range: RangeInclusive<u64>,
    r_range: RangeInclusive<u64>,
    d_max: u64,
    m_max: u32,
) -> Result<TheoremReport> {
    verify_theorem_with(k_range, r_range, d_max, m_max, Execution::Parallel)
}

pub fn verify_theorem_with(
    k_range: RangeInclusive<u64>,
    r_range: RangeInclusive<u64>,
    d_max: u64,
    m_max: u32,
    exec: Execution,
) -> Result<TheoremReport> {
    if *k_range.start() == 0 || *r_range.start() < 2 {
        return domain("theorem verification needs k >= 1 and r >= 2");
    }
    let mut work = Vec::new();
    for k in k_range {
        for r in r_range.clone() {
            for (d, m1) in units(k, d_max, m_max) {
                work.push((k, r, d, m1));
            }
        }
    }
    let partial = par::map(&work, exec, |&(k, r, d, m1)| {
        let mut rep = TheoremReport::default();
        walk_feasible(m1, r as usize, d * d * k, &mut |m| {
            let m = MultiplicityVector(m.to_vec());
            rep.configurations += 1;
            let sub = is_sub_generic(d, k, r, &m);
            match classify_case(d, k, r, &m) {
                Err(e) => rep.violations.push(Violation { d, k, r, m, reason: e.to_string() }),
                Ok(label) if sub => {
                    rep.sub_generic += 1;
                    match label {
                        CaseLabel::ReducedCurve2b => rep.sub_generic_reduced += 1,
                        CaseLabel::TwoSix3 if r == 2 => rep.sub_generic_two_six += 1,
                        other => rep.violations.push(Violation {
                            d,
                            k,
                            r,
                            m,
                            reason: format!("sub-generic configuration labelled {other}"),
                        }),
                    }
                }
                Ok(CaseLabel::Infeasible) => rep.violations.push(Violation {
                    d,
                    k,
                    r,
                    m,
                    reason: "enumerated configuration failed EL-Xu".into(),
                }),
                Ok(_) => {}
            }
        });
        rep
    });
    let mut total = TheoremReport::default();
    for rep in partial {
        total.absorb(rep);
    }
    Ok(total)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct HanReport {
    pub checked: u64,
    pub applicable: u64,
    pub counterexamples: Vec<MultiplicityVector>,
    pub equality_witnesses: Vec<MultiplicityVector>,
}

/// Checks the multiplicity inequality on every applicable vector with at
/// most `s_max` entries and `m_1 <= m_max`.
pub fn verify_han_exhaustive(s_max: usize, m_max: u32) -> Result<HanReport> {
    verify_han_exhaustive_with(s_max, m_max, Execution::Parallel)
}

pub fn verify_han_exhaustive_with(s_max: usize, m_max: u32, exec: Execution) -> Result<HanReport> {
    if s_max < 2 || m_max < 2 {
        return domain(format!("need s_max >= 2 and m_max >= 2, got {s_max} and {m_max}"));
    }
    let firsts: Vec<u32> = (1..=m_max).collect();
    let partial = par::map(&firsts, exec, |&m1| {
        let mut rep = HanReport::default();
        walk_all(m1, s_max, &mut |m| {
            let m = MultiplicityVector(m.to_vec());
            rep.checked += 1;
            let c = check_han_inequality(&m);
            if !c.applicable {
                return;
            }
            rep.applicable += 1;
            if !c.holds {
                rep.counterexamples.push(m);
            } else if c.equality {
                rep.equality_witnesses.push(m);
            }
        });
        rep
    });
    let mut total = HanReport::default();
    for rep in partial {
        total.checked += rep.checked;
        total.applicable += rep.applicable;
        total.counterexamples.extend(rep.counterexamples);
        total.equality_witnesses.extend(rep.equality_witnesses);
    }
    total.counterexamples.sort_by(|a, b| (a.len(), a.entries()).cmp(&(b.len(), b.entries())));
    total.equality_witnesses.sort_by(|a, b| (a.len(), a.entries()).cmp(&(b.len(), b.entries())));
    Ok(total)
}

/// `h^0(dL) = d^2 k / 2 + 2` on a K3 surface.
pub fn k3_h0(d: u64, k: u64) -> Result<u64> {
    if k % 2 == 1 || k == 0 {
        return domain(format!("K3 polarization has even self-intersection, got k = {k}"));
    }
    if d == 0 {
        return domain("d must be positive");
    }
    Ok(d * d * k / 2 + 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum K3Closing {
    /// `d^2 k >= s`, so `dk/s >= sqrt(k/r)` and the curve is not submaximal.
    SelfIntersection,
    /// `h^0(dL) - 1 < s`: no member of `|dL|` passes through `s` general points.
    TooFewSections { h0: u64 },
    /// `h^0(dL) - 1 > s`: a member through `s + 1` points forces `d^2 k >= s`.
    ExtraPoint { h0: u64 },
    /// `h^0(dL) = s + 1` forces `d^2 k = 2s - 2`, which is `>= s` for `s >= 2`.
    Tight { h0: u64 },
    /// The argument did not close.
    Open { h0: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct K3Step {
    pub d: u64,
    pub s: u64,
    pub closing: K3Closing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K3Exclusion {
    pub excluded: bool,
    pub trace: Vec<K3Step>,
}

/// Replays the K3 argument ruling out reduced submaximal curves for every
/// `d <= d_max`, `s <= r`.
pub fn k3_case2_excluded(k: u64, r: u64, d_max: u64) -> Result<K3Exclusion> {
    if r < 3 {
        return domain(format!("the K3 exclusion argument assumes r >= 3, got {r}"));
    }
    k3_h0(1, k)?;
    let mut trace = Vec::new();
    for d in 1..=d_max {
        let self_int = d * d * k;
        for s in 1..=r {
            let closing = if self_int >= s {
                K3Closing::SelfIntersection
            } else {
                let h0 = k3_h0(d, k)?;
                let dim = h0 - 1;
                match dim.cmp(&s) {
                    Ordering::Less => K3Closing::TooFewSections { h0 },
                    // the member through s + 1 points fails EL-Xu since d^2 k < s
                    Ordering::Greater if !check_el_xu(d, k, &MultiplicityVector::ones(s as usize + 1)) => {
                        K3Closing::ExtraPoint { h0 }
                    }
                    Ordering::Greater => K3Closing::Open { h0 },
                    Ordering::Equal => {
                        let closes = self_int == 2 * s - 2 && if s >= 2 { self_int >= s } else { self_int >= 1 };
                        if closes {
                            K3Closing::Tight { h0 }
                        } else {
                            K3Closing::Open { h0 }
                        }
                    }
                }
            };
            trace.push(K3Step { d, s, closing });
        }
    }
    let excluded = trace.iter().all(|t| !matches!(t.closing, K3Closing::Open { .. }));
    Ok(K3Exclusion { excluded, trace })
}

/// How `h^0(dL)` is modelled when bounding the number of points a reduced
/// curve in `|dL|` can pass through.
pub enum H0Model<'a> {
    /// `s <= d^2 k / 2`.
    Asymptotic,
    /// `s < h0(d)` for a caller-supplied `h0`.
    Exact(&'a dyn Fn(u64) -> u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AsymptoticStep {
    pub d: u64,
    pub s: u64,
    /// `d^2 k r <= s^2`, i.e. `dk/s <= sqrt(k/r)`.
    pub below_optimal: bool,
    /// Enough sections for a curve through `s` points.
    pub enough_sections: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AsymptoticReport {
    pub infeasible: bool,
    pub trace: Vec<AsymptoticStep>,
    pub closing: String,
}

/// Searches for a reduced submaximal curve: some `(d, s)`, `s <= r`, with
/// `d^2 k r <= s^2` and enough sections. Since `d^2 k r <= s^2 <= r^2`, only
/// `d^2 k <= r` needs checking.
pub fn case2_asymptotic_infeasible(k: u64, r: u64, model: H0Model<'_>) -> Result<AsymptoticReport> {
    if r < 2 {
        return domain(format!("needs r >= 2, got {r}"));
    }
    if k == 0 {
        return domain("k = L^2 must be positive");
    }
    let mut trace = Vec::new();
    let mut d = 1u64;
    while d * d * k <= r {
        for s in 1..=r {
            let below_optimal = (d * d * k) as u128 * r as u128 <= (s as u128).pow(2);
            if !below_optimal {
                continue;
            }
            let enough_sections = match &model {
                H0Model::Asymptotic => 2 * s <= d * d * k,
                H0Model::Exact(h0) => s < h0(d),
            };
            trace.push(AsymptoticStep { d, s, below_optimal, enough_sections });
        }
        d += 1;
    }
    let infeasible = trace.iter().all(|t| !t.enough_sections);
    let closing = match model {
        H0Model::Asymptotic => format!(
            "s <= d^2 k/2 <= s^2/(2r) forces 2r <= s, i.e. {} <= s <= {r}: impossible",
            2 * r
        ),
        H0Model::Exact(_) if infeasible => "every candidate (d, s) has s >= h0(dL)".to_string(),
        H0Model::Exact(_) => "some candidate (d, s) has s < h0(dL)".to_string(),
    };
    Ok(AsymptoticReport { infeasible, trace, closing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn mv(e: &[u32]) -> MultiplicityVector {
        MultiplicityVector::new(e.to_vec()).unwrap()
    }

    #[test]
    fn vector_invariants() {
        assert!(MultiplicityVector::new(vec![]).is_err());
        assert!(MultiplicityVector::new(vec![1, 2]).is_err());
        assert!(MultiplicityVector::new(vec![2, 0]).is_err());
        assert_eq!(mv(&[3, 2, 2]).to_string(), "(3,2,2)");
    }

    #[test]
    fn el_xu_examples() {
        assert!(check_el_xu(1, 6, &mv(&[2, 2])));
        assert_eq!(mv(&[2, 2]).el_xu_weight(), 6);
        assert!(check_el_xu(1, 1, &mv(&[1, 1])));
        assert!(!check_el_xu(1, 1, &mv(&[2, 1])));
    }

    #[test]
    fn han_examples() {
        assert!(!check_han_inequality(&mv(&[2, 2])).applicable);
        assert!(!check_han_inequality(&mv(&[1, 1, 1])).applicable);
        assert!(!check_han_inequality(&mv(&[5])).applicable);
        let c = check_han_inequality(&mv(&[3, 2]));
        assert!(c.applicable && c.holds && !c.equality);
        // (5*2/4)(9+4-2) = 55/2 against 25, done in rationals
        assert!(ratio(10, 4) * ratio(11, 1) >= ratio(25, 1));
        let c = check_han_inequality(&mv(&[2, 2, 2]));
        assert!(c.applicable && c.holds && c.equality);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_case(1, 6, 2, &mv(&[2, 2])).unwrap(), CaseLabel::TwoSix3);
        assert_eq!(classify_case(1, 1, 2, &mv(&[1, 1])).unwrap(), CaseLabel::ReducedCurve2b);
        assert_eq!(classify_case(1, 10, 4, &mv(&[2, 1, 1, 1])).unwrap(), CaseLabel::Generic2a);
        // 10 >= (6/28) * 25 = 75/14
        assert!(ratio(10, 1) >= ratio(6, 28) * ratio(25, 1));
        assert_eq!(classify_case(1, 1, 2, &mv(&[2, 1])).unwrap(), CaseLabel::Infeasible);
        assert!(classify_case(1, 1, 2, &mv(&[1, 1, 1])).is_err());
        assert!(classify_case(1, 1, 1, &mv(&[1])).is_err());
    }

    #[test]
    fn search_examples() {
        let res = min_ratio_search(1, 5, 3, 5).unwrap();
        assert_eq!(res.minimum, ratio(2, 5));
        assert_eq!(res.witnesses, vec![(2, mv(&[1, 1, 1, 1, 1]))]);

        let res = min_ratio_search(1, 2, 2, 5).unwrap();
        assert_eq!(res.minimum, ratio(1, 2));
        assert_eq!(res.witnesses, vec![(1, mv(&[1, 1]))]);

        let res = min_ratio_search(6, 2, 2, 6).unwrap();
        assert_eq!(res.minimum, ratio(3, 2));
        assert_eq!(res.witnesses, vec![(1, mv(&[2, 2]))]);

        assert!(matches!(min_ratio_search(1, 5, 0, 5), Err(Error::EmptySearch(_))));
        assert!(matches!(min_ratio_search(1, 5, 3, 0), Err(Error::EmptySearch(_))));
    }

    /// Independent re-enumeration: all vectors by a plain odometer over
    /// descending first entries, longest vectors first.
    fn reversed_search(k: u64, r: u64, d_max: u64, m_max: u32) -> (Rational, Vec<(u64, MultiplicityVector)>) {
        fn all_vectors(len: usize, cap: u32, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            let top = cur.last().copied().unwrap_or(cap);
            for x in 1..=top {
                cur.push(x);
                all_vectors(len, cap, out, cur);
                cur.pop();
            }
        }
        let mut best: Option<Rational> = None;
        let mut wit = Vec::new();
        for d in (1..=d_max).rev() {
            for s in (1..=r as usize).rev() {
                let mut vs = Vec::new();
                all_vectors(s, m_max, &mut vs, &mut Vec::new());
                for v in vs {
                    let sum_sq: u64 = v.iter().map(|&x| (x as u64).pow(2)).sum();
                    if d * d * k + (*v.last().unwrap() as u64) < sum_sq {
                        continue;
                    }
                    let sum: u64 = v.iter().map(|&x| x as u64).sum();
                    let q = ratio((d * k) as i64, sum as i64);
                    match &best {
                        Some(b) if q > *b => {}
                        Some(b) if q == *b => wit.push((d, MultiplicityVector(v))),
                        _ => {
                            best = Some(q);
                            wit = vec![(d, MultiplicityVector(v))];
                        }
                    }
                }
            }
        }
        wit.sort_by(witness_order);
        (best.unwrap(), wit)
    }

    #[test]
    fn search_matches_reversed_enumeration() {
        for k in 1..=7 {
            for r in 1..=5 {
                for d_max in 1..=3 {
                    for m_max in 1..=4 {
                        let res = min_ratio_search(k, r, d_max, m_max).unwrap();
                        let (min, wit) = reversed_search(k, r, d_max, m_max);
                        assert_eq!(res.minimum, min, "k={k} r={r} d={d_max} m={m_max}");
                        assert_eq!(res.witnesses, wit, "k={k} r={r} d={d_max} m={m_max}");
                    }
                }
            }
        }
    }

    #[test]
    fn search_is_monotone_in_the_box() {
        for k in [1, 2, 5, 6] {
            for r in 2..=6 {
                let mut prev: Option<Rational> = None;
                for d_max in 1..=4 {
                    let cur = min_ratio_search(k, r, d_max, 6).unwrap().minimum;
                    assert!(prev.as_ref().is_none_or(|p| cur <= *p));
                    prev = Some(cur);
                }
                let mut prev: Option<Rational> = None;
                for m_max in 1..=6 {
                    let cur = min_ratio_search(k, r, 3, m_max).unwrap().minimum;
                    assert!(prev.as_ref().is_none_or(|p| cur <= *p));
                    prev = Some(cur);
                }
            }
        }
    }

    #[test]
    fn natural_cap_covers_every_feasible_entry() {
        for k in 1..30 {
            for d in 1..6 {
                let m = natural_m_max(k, d) as u64;
                assert!(m * m - m <= d * d * k);
                assert!((m + 1) * m > d * d * k);
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = verify_theorem_with(1..=8, 2..=6, 3, 6, Execution::Parallel).unwrap();
        let b = verify_theorem_with(1..=8, 2..=6, 3, 6, Execution::Sequential).unwrap();
        assert_eq!(a, b);
        let a = min_ratio_search_with(3, 7, 4, 7, Execution::Parallel).unwrap();
        let b = min_ratio_search_with(3, 7, 4, 7, Execution::Sequential).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn theorem_small_boxes() {
        let rep = verify_theorem(6..=6, 2..=2, 2, 6).unwrap();
        assert!(rep.violations.is_empty());
        assert_eq!(rep.sub_generic, 1);
        assert_eq!(rep.sub_generic_two_six, 1);

        let rep = verify_theorem(1..=1, 5..=5, 3, 5).unwrap();
        assert!(rep.violations.is_empty());
        assert!(rep.sub_generic > 0);
        assert_eq!(rep.sub_generic, rep.sub_generic_reduced);
    }

    #[test]
    fn han_small_runs() {
        let rep = verify_han_exhaustive(2, 2).unwrap();
        assert!(rep.counterexamples.is_empty());
        let rep = verify_han_exhaustive(3, 2).unwrap();
        assert!(rep.counterexamples.is_empty());
        assert!(rep.equality_witnesses.contains(&mv(&[2, 2, 2])));
        assert!(verify_han_exhaustive(1, 5).is_err());
    }

    #[test]
    fn k3_formula() {
        assert_eq!(k3_h0(1, 2).unwrap(), 3);
        assert_eq!(k3_h0(1, 4).unwrap(), 4);
        assert_eq!(k3_h0(3, 2).unwrap(), 11);
        assert!(k3_h0(1, 3).is_err());
    }

    #[test]
    fn k3_exclusion_examples() {
        assert!(k3_case2_excluded(4, 3, 5).unwrap().excluded);
        let ex = k3_case2_excluded(2, 10, 5).unwrap();
        assert!(ex.excluded);
        assert_eq!(ex.trace.len(), 50);
        assert!(ex.trace.iter().any(|t| matches!(t.closing, K3Closing::TooFewSections { .. })));
        assert!(k3_case2_excluded(2, 2, 5).is_err());
        assert!(k3_case2_excluded(3, 5, 5).is_err());
    }

    #[test]
    fn asymptotic_model_always_closes() {
        let rep = case2_asymptotic_infeasible(4, 100, H0Model::Asymptotic).unwrap();
        assert!(rep.infeasible);
        assert!(rep.closing.contains("200 <= s"));
        for k in 1..15 {
            for r in 2..40 {
                assert!(case2_asymptotic_infeasible(k, r, H0Model::Asymptotic).unwrap().infeasible);
            }
        }
    }

    #[test]
    fn exact_model() {
        let h0 = |d: u64| k3_h0(d, 2).unwrap();
        let rep = case2_asymptotic_infeasible(2, 5, H0Model::Exact(&h0)).unwrap();
        assert!(rep.infeasible);
        assert_eq!(rep.trace.iter().map(|t| (t.d, t.s)).collect::<Vec<_>>(), vec![(1, 4), (1, 5)]);

        // P^2: h0(O(d)) = (d+1)(d+2)/2 admits the line through two points
        let plane = |d: u64| (d + 1) * (d + 2) / 2;
        let rep = case2_asymptotic_infeasible(1, 2, H0Model::Exact(&plane)).unwrap();
        assert!(!rep.infeasible);
    }
}
