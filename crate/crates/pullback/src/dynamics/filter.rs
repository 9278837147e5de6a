use serde::Serialize;

use super::graph::{build_graph, DynamicsError, FunctionalGraph};
use crate::citation::Citation;
use crate::portrait::Portrait;

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum FilterVerdict {
    /// The criterion proves the pullback map is not constant.
    NotConstant,
    /// The criterion applies and does not obstruct constancy.
    Pass,
    /// The hypotheses of the criterion do not hold.
    NotApplicable,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct FilterResult {
    pub filter: &'static str,
    pub citation: Citation,
    pub verdict: FilterVerdict,
    pub detail: String,
}

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    NotConstant,
    Unobstructed,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct FilterReport {
    pub verdict: Verdict,
    pub results: Vec<FilterResult>,
}

impl FilterReport {
    pub fn blocking(&self) -> Vec<&FilterResult> {
        self.results.iter().filter(|r| r.verdict == FilterVerdict::NotConstant).collect()
    }
}

/// Switches for the two criteria that are cited without proof.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FilterOptions {
    pub v_plus_one_bound: bool,
    pub polynomial_bound: bool,
}

fn result(filter: &'static str, citation: Citation, verdict: FilterVerdict, detail: String) -> FilterResult {
    FilterResult { filter, citation, verdict, detail }
}

fn verdict_if(blocked: bool) -> FilterVerdict {
    if blocked {
        FilterVerdict::NotConstant
    } else {
        FilterVerdict::Pass
    }
}

/// A critical value whose fiber is a single point of local degree `d`
/// labeled by itself: the point at infinity of a topological polynomial.
fn polynomial_infinity(p: &Portrait) -> Option<String> {
    p.b.iter()
        .find(|b| {
            let f = p.fiber(b);
            f.len() == 1 && f[0].mult == p.degree && f[0].label.as_deref() == Some(b.as_str())
        })
        .cloned()
}

/// Runs every combinatorial criterion that can show `σ_f` is not constant.
pub fn constant_pullback_filter(p: &Portrait, opts: FilterOptions) -> Result<FilterReport, DynamicsError> {
    let g = build_graph(p)?;
    if g.len() < 4 {
        return Err(DynamicsError::TooFewMarked);
    }
    Ok(run_filters(p, &g, opts))
}

pub(crate) fn run_filters(p: &Portrait, g: &FunctionalGraph, opts: FilterOptions) -> FilterReport {
    let n = g.len();
    let d = p.degree as usize;
    let v = g.marked_count();
    let indeg = g.indegrees();
    let on = g.on_cycle();
    let mut results = Vec::new();

    let shared: Vec<&str> = (0..n)
        .filter(|&i| {
            let b = &g.names()[g.succ()[i]];
            !g.marked()[g.succ()[i]] && p.labeled_count(b) == 1
        })
        .map(|i| g.names()[i].as_str())
        .collect();
    results.push(result(
        "shared-image",
        Citation::SharedImage,
        verdict_if(!shared.is_empty()),
        if shared.is_empty() {
            "every point shares its image or maps to a critical value".into()
        } else {
            format!("unique marked preimage of a regular value: {:?}", shared)
        },
    ));

    let simple: Vec<&str> = (0..n)
        .filter(|&i| {
            if !g.marked()[i] || on[i] || indeg[i] != 0 {
                return false;
            }
            let crit: Vec<_> = p.fiber(&g.names()[i]).iter().filter(|s| s.mult >= 2).collect();
            crit.len() == 1 && crit[0].mult == 2
        })
        .map(|i| g.names()[i].as_str())
        .collect();
    results.push(result(
        "simple-critical-value",
        Citation::SimpleCriticalValue,
        verdict_if(!simple.is_empty()),
        format!("critical values outside f(P) over one simple critical point: {:?}", simple),
    ));

    let bound = p.rank_lower_bound();
    results.push(result(
        "rank-bound",
        Citation::RankBound,
        verdict_if(bound > 0),
        format!("ell1 = {}, ell2 = {}, rank >= {bound}", p.ell1(), p.ell2()),
    ));

    results.push(result(
        "degree-bound",
        Citation::DegreeBound,
        verdict_if(n > d + 2),
        format!("|P| = {n}, d + 2 = {}", d + 2),
    ));

    let mut fiber_block = Vec::new();
    for i in (0..n).filter(|&i| g.marked()[i] && indeg[i] == 0) {
        let crit: Vec<_> = p.fiber(&g.names()[i]).iter().filter(|s| s.mult >= 2).collect();
        if crit.iter().all(|s| s.mult == 2) && n > crit.len() + 2 {
            fiber_block.push(g.names()[i].as_str());
        }
    }
    results.push(result(
        "critical-fiber-bound",
        Citation::CriticalFiberBound,
        verdict_if(!fiber_block.is_empty()),
        format!("critical values forcing |P| <= #critical points + 2 to fail: {:?}", fiber_block),
    ));

    let low: Vec<&str> =
        (0..n).filter(|&i| !g.marked()[i] && indeg[i] < 2).map(|i| g.names()[i].as_str()).collect();
    let cap = (2 * v).min(d + 2);
    results.push(result(
        "postcritical-bound",
        Citation::PostcriticalBound,
        verdict_if(!low.is_empty() || n > cap),
        format!("indegree below two off V: {:?}; |P| = {n}, min(2|V|, d + 2) = {cap}", low),
    ));

    let all_periodic = (0..n).filter(|&i| g.marked()[i]).all(|i| on[i]);
    results.push(if v >= 3 && all_periodic {
        result(
            "periodic-critical-values",
            Citation::PeriodicCriticalValues,
            verdict_if(n > v),
            format!("all {v} critical values periodic, rank >= |P| - |V| = {}", n - v),
        )
    } else {
        result(
            "periodic-critical-values",
            Citation::PeriodicCriticalValues,
            FilterVerdict::NotApplicable,
            "needs at least three critical values, all periodic".into(),
        )
    });

    let inf = polynomial_infinity(p);
    let unicritical = inf.is_some() && {
        let crit: Vec<_> = p.fibers.values().flatten().filter(|s| s.mult >= 2).collect();
        crit.len() == 2 && crit.iter().all(|s| s.mult == p.degree)
    };
    results.push(if unicritical {
        result(
            "unicritical-polynomial",
            Citation::UnicriticalPolynomial,
            verdict_if(n >= 4),
            format!("rank = |P| - 3 = {}", n - 3),
        )
    } else {
        result(
            "unicritical-polynomial",
            Citation::UnicriticalPolynomial,
            FilterVerdict::NotApplicable,
            "not a unicritical topological polynomial".into(),
        )
    });

    if opts.v_plus_one_bound {
        results.push(result(
            "v-plus-one-bound",
            Citation::VPlusOneBound,
            verdict_if(n > v + 1),
            format!("|P| = {n}, |V| + 1 = {}", v + 1),
        ));
    }
    if opts.polynomial_bound {
        results.push(match inf {
            Some(_) => result(
                "polynomial-bound",
                Citation::PolynomialBound,
                verdict_if(n + 1 > 2 * v),
                format!("|P| = {n}, 2|V| - 1 = {}", (2 * v).saturating_sub(1)),
            ),
            None => result(
                "polynomial-bound",
                Citation::PolynomialBound,
                FilterVerdict::NotApplicable,
                "not a topological polynomial".into(),
            ),
        });
    }

    let verdict = if results.iter().any(|r| r.verdict == FilterVerdict::NotConstant) {
        Verdict::NotConstant
    } else {
        Verdict::Unobstructed
    };
    FilterReport { verdict, results }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::portrait::samples::*;

    #[test]
    fn quartic_is_unobstructed() {
        let r = constant_pullback_filter(&quartic_lattes(), FilterOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Unobstructed, "{:#?}", r);
        let all = FilterOptions { v_plus_one_bound: true, polynomial_bound: true };
        let r = constant_pullback_filter(&quartic_lattes(), all).unwrap();
        assert_eq!(r.verdict, Verdict::Unobstructed, "{:#?}", r);
    }

    #[test]
    fn unicritical_is_blocked() {
        let r = constant_pullback_filter(&unicritical_cycle(3, 4), FilterOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NotConstant);
        assert!(r.blocking().iter().any(|b| b.citation == Citation::UnicriticalPolynomial));
    }

    #[test]
    fn too_few_points() {
        let r = constant_pullback_filter(&unicritical_cycle(2, 2), FilterOptions::default());
        assert_eq!(r.unwrap_err(), DynamicsError::TooFewMarked);
    }
}
