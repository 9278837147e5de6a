//! Combinatorial portraits of admissible maps and the rank bounds they imply.
//!
//! A portrait of `g: (S², A) -> (S², B)` records, for every `b` in `B`, the
//! local degrees of the points of `g⁻¹(b)` and which of them belong to `A`.
//! Unmarked points of the same local degree are indistinguishable, so a
//! fiber is a multiset of [`FiberSlot`]s.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::citation::Citation;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq, Hash)]
#[serde(deny_unknown_fields)]
pub struct FiberSlot {
    pub mult: u32,
    pub label: Option<String>,
}

impl FiberSlot {
    pub fn new(mult: u32, label: Option<&str>) -> FiberSlot {
        FiberSlot { mult, label: label.map(str::to_string) }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Portrait {
    pub degree: u32,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(default)]
    pub dynamical: bool,
    pub fibers: BTreeMap<String, Vec<FiberSlot>>,
}

#[derive(Debug, thiserror::Error)]
pub enum PortraitError {
    #[error("malformed portrait JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid portrait: {}", .0.failures().join("; "))]
    Invalid(ValidationReport),
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks.iter().filter(|c| !c.ok).map(|c| format!("{}: {}", c.name, c.detail)).collect()
    }
}

/// Why rank zero is impossible, or that nothing rules it out.
#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Admissibility {
    Possible,
    Blocked { reasons: Vec<Blocker> },
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct Blocker {
    pub citation: Citation,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComposeError {
    #[error("target markings of the first map differ from source markings of the second")]
    MarkingMismatch,
    #[error("no fiber over `{0}` in the first map")]
    CompositionIncomplete(String),
}

impl Portrait {
    pub fn from_json(text: &str) -> Result<Portrait, PortraitError> {
        let p: Portrait = serde_json::from_str(text)?;
        let report = p.validate();
        if !report.valid() {
            return Err(PortraitError::Invalid(report));
        }
        Ok(p.canonical())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("portrait serializes")
    }

    /// Slots sorted by multiplicity (descending) then label, unlabeled last.
    pub fn canonical(&self) -> Portrait {
        let mut p = self.clone();
        for slots in p.fibers.values_mut() {
            slots.sort_by(|x, y| {
                y.mult.cmp(&x.mult).then_with(|| match (&x.label, &y.label) {
                    (Some(a), Some(b)) => a.cmp(b),
                    (Some(_), None) => std::cmp::Ordering::Less,
                    (None, Some(_)) => std::cmp::Ordering::Greater,
                    (None, None) => std::cmp::Ordering::Equal,
                })
            });
        }
        p
    }

    pub fn fiber(&self, b: &str) -> &[FiberSlot] {
        self.fibers.get(b).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Points of `B` with a critical point above them, in `B` order.
    pub fn critical_values(&self) -> Vec<String> {
        self.b.iter().filter(|b| self.fiber(b).iter().any(|s| s.mult >= 2)).cloned().collect()
    }

    /// The point of `B` whose fiber contains the slot labeled `a`.
    pub fn image_of(&self, a: &str) -> Option<&str> {
        self.fibers
            .iter()
            .find(|(_, slots)| slots.iter().any(|s| s.label.as_deref() == Some(a)))
            .map(|(b, _)| b.as_str())
    }

    /// The labeled slot `a`, if any.
    pub fn slot_of(&self, a: &str) -> Option<&FiberSlot> {
        self.fibers.values().flatten().find(|s| s.label.as_deref() == Some(a))
    }

    pub fn labeled_count(&self, b: &str) -> usize {
        self.fiber(b).iter().filter(|s| s.label.is_some()).count()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let d = self.degree;
        let mut push = |name, ok, detail: String| checks.push(Check { name, ok, detail });
        push("degree", d >= 1, format!("degree {d}"));
        push("source-size", self.a.len() >= 3, format!("|A| = {}", self.a.len()));
        push("target-size", self.b.len() >= 3, format!("|B| = {}", self.b.len()));
        let aset: BTreeSet<&String> = self.a.iter().collect();
        let bset: BTreeSet<&String> = self.b.iter().collect();
        push(
            "distinct-symbols",
            aset.len() == self.a.len() && bset.len() == self.b.len(),
            "A and B list each symbol once".into(),
        );
        let keys: BTreeSet<&String> = self.fibers.keys().collect();
        push("fiber-keys", keys == bset, format!("fibers given over {:?}", keys));
        let bad_sums: Vec<String> = self
            .fibers
            .iter()
            .filter(|(_, s)| s.iter().map(|x| x.mult).sum::<u32>() != d || s.iter().any(|x| x.mult == 0))
            .map(|(b, _)| b.clone())
            .collect();
        push("fiber-sums", bad_sums.is_empty(), format!("fibers not summing to {d}: {:?}", bad_sums));
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        for s in self.fibers.values().flatten() {
            if let Some(l) = &s.label {
                *seen.entry(l.as_str()).or_default() += 1;
            }
        }
        let stray: Vec<&str> = seen.keys().filter(|l| !aset.contains(&l.to_string())).copied().collect();
        let wrong: Vec<&String> = self.a.iter().filter(|a| seen.get(a.as_str()) != Some(&1)).collect();
        push(
            "labels",
            stray.is_empty() && wrong.is_empty(),
            format!("labels outside A: {:?}; points of A not labeled exactly once: {:?}", stray, wrong),
        );
        let rh: i64 = self.fibers.values().flatten().map(|s| s.mult as i64 - 1).sum();
        push(
            "riemann-hurwitz",
            rh == 2 * d as i64 - 2,
            format!("sum of (mult - 1) is {rh}, expected {}", 2 * d as i64 - 2),
        );
        if self.dynamical {
            push("dynamical-symbols", aset == bset, "A and B coincide".into());
            let missing = self.unreached_points();
            push(
                "postcritical-closure",
                missing.is_empty(),
                format!("points not in the forward orbit of a critical value: {:?}", missing),
            );
        }
        ValidationReport { checks }
    }

    /// Points of `A` outside the forward orbits of the critical values.
    pub(crate) fn unreached_points(&self) -> Vec<String> {
        let mut reached: BTreeSet<String> = BTreeSet::new();
        let mut stack = self.critical_values();
        while let Some(v) = stack.pop() {
            if !reached.insert(v.clone()) {
                continue;
            }
            if let Some(w) = self.image_of(&v) {
                stack.push(w.to_string());
            }
        }
        self.a.iter().filter(|a| !reached.contains(*a)).cloned().collect()
    }

    /// Points `b` with no critical point above them and exactly one marked preimage.
    pub fn ell1(&self) -> usize {
        self.b
            .iter()
            .filter(|b| {
                let f = self.fiber(b);
                f.iter().all(|s| s.mult == 1) && f.iter().filter(|s| s.label.is_some()).count() == 1
            })
            .count()
    }

    /// Unmarked simple critical points that are the only critical point over
    /// a value with no marked preimage.
    pub fn ell2(&self) -> usize {
        self.fibers
            .values()
            .filter(|f| f.iter().all(|s| s.label.is_none()))
            .map(|f| {
                let crit: Vec<&FiberSlot> = f.iter().filter(|s| s.mult >= 2).collect();
                usize::from(crit.len() == 1 && crit[0].mult == 2)
            })
            .sum()
    }

    pub fn rank_lower_bound(&self) -> usize {
        (self.ell1() + self.ell2()).min(self.a.len().saturating_sub(3))
    }

    pub fn rank_zero_admissible(&self) -> Admissibility {
        let mut reasons = Vec::new();
        let bound = self.rank_lower_bound();
        if bound > 0 {
            reasons.push(Blocker {
                citation: Citation::RankBound,
                detail: format!(
                    "ell1 = {}, ell2 = {}, |A| - 3 = {}, so rank >= {bound}",
                    self.ell1(),
                    self.ell2(),
                    self.a.len().saturating_sub(3)
                ),
            });
        }
        let d = self.degree as usize;
        if self.a.len() > d + 2 {
            reasons.push(Blocker {
                citation: Citation::DegreeBound,
                detail: format!("|A| = {} > d + 2 = {}", self.a.len(), d + 2),
            });
        }
        for v in self.critical_values() {
            let f = self.fiber(&v);
            if f.iter().any(|s| s.label.is_some()) {
                continue;
            }
            let crit: Vec<&FiberSlot> = f.iter().filter(|s| s.mult >= 2).collect();
            if crit.iter().all(|s| s.mult == 2) && self.a.len() > crit.len() + 2 {
                reasons.push(Blocker {
                    citation: Citation::CriticalFiberBound,
                    detail: format!(
                        "no marked point over {v}, {} simple critical points there, |A| = {} > {}",
                        crit.len(),
                        self.a.len(),
                        crit.len() + 2
                    ),
                });
            }
        }
        if reasons.is_empty() {
            Admissibility::Possible
        } else {
            Admissibility::Blocked { reasons }
        }
    }
}

/// Portrait of `g ∘ f` from portraits of `f: (A, C) -> ` and `g: (C, B)`.
pub fn compose_portraits(f: &Portrait, g: &Portrait) -> Result<Portrait, ComposeError> {
    let fb: BTreeSet<&String> = f.b.iter().collect();
    let ga: BTreeSet<&String> = g.a.iter().collect();
    if fb != ga {
        return Err(ComposeError::MarkingMismatch);
    }
    let mut fibers = BTreeMap::new();
    for b in &g.b {
        let mut slots = Vec::new();
        for s in g.fiber(b) {
            match &s.label {
                Some(c) => {
                    let over = f.fibers.get(c).ok_or_else(|| ComposeError::CompositionIncomplete(c.clone()))?;
                    for r in over {
                        slots.push(FiberSlot { mult: s.mult * r.mult, label: r.label.clone() });
                    }
                }
                None => {
                    for _ in 0..f.degree {
                        slots.push(FiberSlot { mult: s.mult, label: None });
                    }
                }
            }
        }
        fibers.insert(b.clone(), slots);
    }
    Ok(Portrait { degree: f.degree * g.degree, a: f.a.clone(), b: g.b.clone(), dynamical: false, fibers }
        .canonical())
}

#[cfg(test)]
pub(crate) mod samples {
    use super::*;

    pub fn slot(mult: u32, label: Option<&str>) -> FiberSlot {
        FiberSlot::new(mult, label)
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    /// Degree-4 map with three critical values each carrying a triple point,
    /// all of which map to a fixed point `p`.
    pub fn quartic_lattes() -> Portrait {
        let mut fibers = BTreeMap::new();
        fibers.insert("p".into(), vec![slot(1, Some("v1")), slot(1, Some("v2")), slot(1, Some("v3")), slot(1, Some("p"))]);
        for v in ["v1", "v2", "v3"] {
            fibers.insert(v.into(), vec![slot(3, None), slot(1, None)]);
        }
        let pts = names(&["v1", "v2", "v3", "p"]);
        Portrait { degree: 4, a: pts.clone(), b: pts, dynamical: true, fibers }
    }

    /// `z^2 + i` on its postcritical set `{i, i-1, -i, inf}`.
    pub fn z2_plus_i() -> Portrait {
        let mut fibers = BTreeMap::new();
        fibers.insert("i".into(), vec![slot(2, None)]);
        fibers.insert("i-1".into(), vec![slot(1, Some("i")), slot(1, Some("-i"))]);
        fibers.insert("-i".into(), vec![slot(1, Some("i-1")), slot(1, None)]);
        fibers.insert("inf".into(), vec![slot(2, Some("inf"))]);
        let pts = names(&["i", "i-1", "-i", "inf"]);
        Portrait { degree: 2, a: pts.clone(), b: pts, dynamical: true, fibers }
    }

    /// Unicritical polynomial whose critical value has period `n`, plus the fixed point at infinity.
    pub fn unicritical_cycle(d: u32, n: usize) -> Portrait {
        let pts: Vec<String> = (0..n).map(|k| format!("p{k}")).collect();
        let mut fibers = BTreeMap::new();
        for k in 0..n {
            let pre = pts[(k + n - 1) % n].clone();
            let slots = if k == 0 {
                vec![FiberSlot { mult: d, label: Some(pre) }]
            } else {
                let mut s = vec![FiberSlot { mult: 1, label: Some(pre) }];
                s.extend((1..d).map(|_| slot(1, None)));
                s
            };
            fibers.insert(pts[k].clone(), slots);
        }
        fibers.insert("inf".into(), vec![slot(d, Some("inf"))]);
        let mut all = pts.clone();
        all.push("inf".into());
        Portrait { degree: d, a: all.clone(), b: all, dynamical: true, fibers }
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;

    #[test]
    fn quartic_admits_rank_zero() {
        let p = quartic_lattes();
        assert!(p.validate().valid(), "{:?}", p.validate().failures());
        assert_eq!((p.ell1(), p.ell2(), p.rank_lower_bound()), (0, 0, 0));
        assert_eq!(p.rank_zero_admissible(), Admissibility::Possible);
    }

    #[test]
    fn quadratic_with_period_two_critical_orbit() {
        let p = z2_plus_i();
        assert!(p.validate().valid(), "{:?}", p.validate().failures());
        assert_eq!((p.ell1(), p.ell2(), p.rank_lower_bound()), (1, 1, 1));
        assert!(matches!(p.rank_zero_admissible(), Admissibility::Blocked { .. }));
    }

    #[test]
    fn unicritical_period_three() {
        let p = unicritical_cycle(2, 3);
        assert!(p.validate().valid(), "{:?}", p.validate().failures());
        assert_eq!(p.ell1(), 2);
        assert_eq!(p.rank_lower_bound(), 1);
    }

    #[test]
    fn degree_bound_blocks() {
        let p = unicritical_cycle(2, 4);
        match p.rank_zero_admissible() {
            Admissibility::Blocked { reasons } => {
                assert!(reasons.iter().any(|r| r.citation == Citation::DegreeBound))
            }
            _ => panic!("expected a block"),
        }
    }

    #[test]
    fn critical_fiber_bound_blocks() {
        // Degree 6, three simple critical points over v and nothing marked there.
        let mut fibers = BTreeMap::new();
        fibers.insert("v".into(), vec![slot(2, None), slot(2, None), slot(2, None)]);
        fibers.insert("u".into(), vec![slot(2, None), slot(2, None), slot(2, None)]);
        fibers.insert("x".into(), vec![slot(2, None), slot(2, None), slot(1, Some("a1")), slot(1, Some("a2"))]);
        fibers.insert("y".into(), vec![slot(2, None), slot(2, None), slot(1, Some("a3")), slot(1, Some("a4"))]);
        fibers.insert(
            "w".into(),
            vec![slot(1, Some("a5")), slot(1, Some("a6")), slot(1, None), slot(1, None), slot(1, None), slot(1, None)],
        );
        let a: Vec<String> = (1..=6).map(|k| format!("a{k}")).collect();
        let p = Portrait {
            degree: 6,
            a,
            b: vec!["v".into(), "u".into(), "x".into(), "y".into(), "w".into()],
            dynamical: false,
            fibers,
        };
        assert!(p.validate().valid(), "{:?}", p.validate().failures());
        assert_eq!(p.rank_lower_bound(), 0);
        match p.rank_zero_admissible() {
            Admissibility::Blocked { reasons } => {
                assert!(reasons.iter().any(|r| r.citation == Citation::CriticalFiberBound));
                assert!(!reasons.iter().any(|r| r.citation == Citation::DegreeBound));
            }
            _ => panic!("expected a block"),
        }
    }

    #[test]
    fn validation_catches_errors() {
        let mut p = quartic_lattes();
        p.fibers.get_mut("v1").unwrap()[1].mult = 2;
        let r = p.validate();
        assert!(!r.valid());
        assert!(r.failures().iter().any(|f| f.starts_with("fiber-sums")));
        assert!(r.failures().iter().any(|f| f.starts_with("riemann-hurwitz")));
    }

    #[test]
    fn json_round_trip_and_unknown_fields() {
        let p = quartic_lattes().canonical();
        let back = Portrait::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
        let bad = p.to_json().replacen("\"degree\"", "\"extra\": 1, \"degree\"", 1);
        assert!(matches!(Portrait::from_json(&bad), Err(PortraitError::Json(_))));
    }

    #[test]
    fn composition_multiplies_degrees() {
        // z -> z^2 twice, with A = {0, 1, -1, inf}, C = {0, 1, inf}, B = {0, 1, inf}.
        let mut f_fib = BTreeMap::new();
        f_fib.insert("0".into(), vec![slot(2, Some("0"))]);
        f_fib.insert("1".into(), vec![slot(1, Some("1")), slot(1, Some("-1"))]);
        f_fib.insert("inf".into(), vec![slot(2, Some("inf"))]);
        let f = Portrait {
            degree: 2,
            a: vec!["0".into(), "1".into(), "-1".into(), "inf".into()],
            b: vec!["0".into(), "1".into(), "inf".into()],
            dynamical: false,
            fibers: f_fib,
        };
        let mut g_fib = BTreeMap::new();
        g_fib.insert("0".into(), vec![slot(2, Some("0"))]);
        g_fib.insert("1".into(), vec![slot(1, Some("1")), slot(1, None)]);
        g_fib.insert("inf".into(), vec![slot(2, Some("inf"))]);
        let g = Portrait { degree: 2, a: f.b.clone(), b: f.b.clone(), dynamical: false, fibers: g_fib };
        let h = compose_portraits(&f, &g).unwrap();
        assert_eq!(h.degree, 4);
        assert!(h.validate().valid(), "{:?}", h.validate().failures());
        assert_eq!(h.fiber("1").len(), 4);
        assert_eq!(h.fiber("0"), &[slot(4, Some("0"))]);
        assert_eq!(compose_portraits(&g, &f).unwrap_err(), ComposeError::MarkingMismatch);
    }
}
