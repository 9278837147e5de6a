use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::filter::{run_filters, FilterOptions, Verdict};
use super::graph::{build_graph, FunctionalGraph};
use crate::portrait::{FiberSlot, Portrait};

/// Constraints for enumerating dynamical portraits.
///
/// Critical values are named `v1..vk` in profile order and the remaining
/// postcritical points `t1..`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct EnumSpec {
    pub degree: u32,
    /// Local degrees of the critical points over each critical value.
    pub critical_profile: Vec<Vec<u32>>,
    pub num_postcritical: usize,
    /// Groups of critical values that may be permuted when deduplicating.
    #[serde(default)]
    pub swap_classes: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("search space too large: {0}")]
    BudgetExceeded(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
}

pub const MAX_DEGREE: u32 = 6;
pub const MAX_POINTS: usize = 6;
const BUDGET: u64 = 20_000_000;

struct Setup {
    names: Vec<String>,
    k: usize,
    /// Multiset of slot multiplicities over each point.
    slots: Vec<Vec<u32>>,
    group: Vec<Vec<usize>>,
}

fn setup(spec: &EnumSpec) -> Result<Option<Setup>, EnumError> {
    if spec.degree > MAX_DEGREE || spec.num_postcritical > MAX_POINTS {
        return Err(EnumError::BudgetExceeded(format!(
            "degree {} and {} points exceed the limits {MAX_DEGREE} and {MAX_POINTS}",
            spec.degree, spec.num_postcritical
        )));
    }
    let d = spec.degree;
    let k = spec.critical_profile.len();
    let n = spec.num_postcritical;
    for prof in &spec.critical_profile {
        if prof.is_empty() || prof.iter().any(|&m| m < 2) || prof.iter().sum::<u32>() > d {
            return Err(EnumError::InvalidSpec(format!("profile entry {:?} for degree {d}", prof)));
        }
    }
    let rh: u32 = spec.critical_profile.iter().flatten().map(|m| m - 1).sum();
    if rh != 2 * d - 2 || n < k {
        return Ok(None);
    }
    let names: Vec<String> =
        (1..=k).map(|i| format!("v{i}")).chain((1..=n - k).map(|i| format!("t{i}"))).collect();
    let slots: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut s = if i < k { spec.critical_profile[i].clone() } else { Vec::new() };
            let used: u32 = s.iter().sum();
            s.extend(std::iter::repeat(1).take((d - used) as usize));
            s.sort_unstable_by(|a, b| b.cmp(a));
            s
        })
        .collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for class in &spec.swap_classes {
        let idx = class
            .iter()
            .map(|c| {
                names[..k]
                    .iter()
                    .position(|n| n == c)
                    .ok_or_else(|| EnumError::InvalidSpec(format!("swap class member `{c}` is not a critical value")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if idx.iter().any(|&i| slots[i] != slots[idx[0]]) {
            return Err(EnumError::InvalidSpec(format!("swap class {:?} mixes critical profiles", class)));
        }
        classes.push(idx);
    }
    classes.push((k..n).collect());
    let group = relabelings(n, &classes);
    Ok(Some(Setup { names, k, slots, group }))
}

/// All permutations of `0..n` that permute each class within itself and fix the rest.
fn relabelings(n: usize, classes: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![(0..n).collect::<Vec<_>>()];
    for class in classes {
        let mut next = Vec::new();
        for base in &out {
            for perm in permutations(class.len()) {
                let mut p = base.clone();
                for (i, &j) in perm.iter().enumerate() {
                    p[class[i]] = class[j];
                }
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest `(image, local degree)` table over the relabeling group.
fn canonical_key(succ: &[usize], mult: &[u32], group: &[Vec<usize>]) -> Vec<(usize, u32)> {
    let n = succ.len();
    let mut best: Option<Vec<(usize, u32)>> = None;
    let mut key = vec![(0, 0); n];
    for p in group {
        for x in 0..n {
            key[p[x]] = (p[succ[x]], mult[x]);
        }
        if best.as_ref().map(|b| key < *b).unwrap_or(true) {
            best = Some(key.clone());
        }
    }
    best.unwrap_or_default()
}

fn graph_key(succ: &[usize], group: &[Vec<usize>]) -> Vec<usize> {
    let n = succ.len();
    let mut best: Option<Vec<usize>> = None;
    let mut key = vec![0; n];
    for p in group {
        for x in 0..n {
            key[p[x]] = p[succ[x]];
        }
        if best.as_ref().map(|b| key < *b).unwrap_or(true) {
            best = Some(key.clone());
        }
    }
    best.unwrap_or_default()
}

/// Ways to place the labels `pre` into slots of the given multiplicities,
/// counting slots of equal multiplicity as interchangeable.
fn placements(pre: &[usize], slots: &[u32]) -> Vec<Vec<u32>> {
    let mut caps: BTreeMap<u32, usize> = BTreeMap::new();
    for &m in slots {
        *caps.entry(m).or_default() += 1;
    }
    let mults: Vec<u32> = caps.keys().copied().collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(i: usize, n: usize, mults: &[u32], caps: &mut BTreeMap<u32, usize>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for &m in mults {
            if caps[&m] > 0 {
                *caps.get_mut(&m).unwrap() -= 1;
                cur.push(m);
                rec(i + 1, n, mults, caps, cur, out);
                cur.pop();
                *caps.get_mut(&m).unwrap() += 1;
            }
        }
    }
    rec(0, pre.len(), &mults, &mut caps, &mut cur, &mut out);
    out
}

fn closed(succ: &[usize], k: usize) -> bool {
    let mut seen = vec![false; succ.len()];
    let mut stack: Vec<usize> = (0..k).collect();
    while let Some(v) = stack.pop() {
        if !seen[v] {
            seen[v] = true;
            stack.push(succ[v]);
        }
    }
    seen.iter().all(|&s| s)
}

/// Every dynamical portrait meeting `spec`, one per relabeling class.
pub fn enumerate_portraits(spec: &EnumSpec) -> Result<Vec<Portrait>, EnumError> {
    let Some(s) = setup(spec)? else { return Ok(Vec::new()) };
    let n = s.names.len();
    let total = (n as u64).pow(n as u32);
    if total > BUDGET {
        return Err(EnumError::BudgetExceeded(format!("{total} maps")));
    }
    let mut found: BTreeMap<Vec<(usize, u32)>, Portrait> = BTreeMap::new();
    let mut visited: u64 = 0;
    let mut succ = vec![0usize; n];
    loop {
        if closed(&succ, s.k) {
            let mut options: Vec<(Vec<usize>, Vec<Vec<u32>>)> = Vec::new();
            let mut feasible = true;
            for b in 0..n {
                let pre: Vec<usize> = (0..n).filter(|&a| succ[a] == b).collect();
                let opts = placements(&pre, &s.slots[b]);
                if opts.is_empty() {
                    feasible = false;
                    break;
                }
                options.push((pre, opts));
            }
            if feasible {
                let mut choice = vec![0usize; n];
                loop {
                    visited += 1;
                    if visited > BUDGET {
                        return Err(EnumError::BudgetExceeded(format!("more than {BUDGET} labeled portraits")));
                    }
                    let mut mult = vec![0u32; n];
                    for b in 0..n {
                        let (pre, opts) = &options[b];
                        for (a, m) in pre.iter().zip(&opts[choice[b]]) {
                            mult[*a] = *m;
                        }
                    }
                    let key = canonical_key(&succ, &mult, &s.group);
                    found.entry(key).or_insert_with(|| build_portrait(spec.degree, &s, &succ, &mult));
                    let mut i = 0;
                    while i < n {
                        choice[i] += 1;
                        if choice[i] < options[i].1.len() {
                            break;
                        }
                        choice[i] = 0;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                }
            }
        }
        let mut i = 0;
        while i < n {
            succ[i] += 1;
            if succ[i] < n {
                break;
            }
            succ[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    Ok(found.into_values().collect())
}

fn build_portrait(degree: u32, s: &Setup, succ: &[usize], mult: &[u32]) -> Portrait {
    let n = s.names.len();
    let mut fibers = BTreeMap::new();
    for b in 0..n {
        let mut free = s.slots[b].clone();
        let mut slots = Vec::new();
        for a in (0..n).filter(|&a| succ[a] == b) {
            let pos = free.iter().position(|&m| m == mult[a]).unwrap();
            free.remove(pos);
            slots.push(FiberSlot { mult: mult[a], label: Some(s.names[a].clone()) });
        }
        slots.extend(free.into_iter().map(|m| FiberSlot { mult: m, label: None }));
        fibers.insert(s.names[b].clone(), slots);
    }
    Portrait { degree, a: s.names.clone(), b: s.names.clone(), dynamical: true, fibers }.canonical()
}

/// Functional graphs of the portraits in `spec` that survive every filter,
/// deduplicated under the same relabelings.
pub fn surviving_graphs(spec: &EnumSpec, opts: FilterOptions) -> Result<Vec<FunctionalGraph>, EnumError> {
    let Some(s) = setup(spec)? else { return Ok(Vec::new()) };
    let mut out: BTreeMap<Vec<usize>, FunctionalGraph> = BTreeMap::new();
    for p in enumerate_portraits(spec)? {
        let g = build_graph(&p).expect("enumerated portraits are dynamical and closed");
        if run_filters(&p, &g, opts).verdict == Verdict::Unobstructed {
            let succ = index_succ(&g, &s.names);
            out.entry(graph_key(&succ, &s.group)).or_insert(g);
        }
    }
    Ok(out.into_values().collect())
}

fn index_succ(g: &FunctionalGraph, names: &[String]) -> Vec<usize> {
    names
        .iter()
        .map(|n| {
            let i = g.names().iter().position(|m| m == n).unwrap();
            let t = &g.names()[g.succ()[i]];
            names.iter().position(|m| m == t).unwrap()
        })
        .collect()
}

/// Compares two graph lists up to the relabelings allowed by `spec`.
/// Returns the graphs only in `found` and only in `expected`.
pub fn diff_graphs(
    spec: &EnumSpec,
    found: &[FunctionalGraph],
    expected: &[FunctionalGraph],
) -> Result<(Vec<FunctionalGraph>, Vec<FunctionalGraph>), EnumError> {
    let Some(s) = setup(spec)? else { return Ok((found.to_vec(), expected.to_vec())) };
    let keyed = |gs: &[FunctionalGraph]| -> BTreeMap<Vec<usize>, FunctionalGraph> {
        gs.iter().map(|g| (graph_key(&index_succ(g, &s.names), &s.group), g.clone())).collect()
    };
    let f = keyed(found);
    let e = keyed(expected);
    let fk: BTreeSet<_> = f.keys().collect();
    let ek: BTreeSet<_> = e.keys().collect();
    Ok((
        fk.difference(&ek).map(|k| f[*k].clone()).collect(),
        ek.difference(&fk).map(|k| e[*k].clone()).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn placements_respect_capacity() {
        assert_eq!(placements(&[0, 1], &[2, 1]).len(), 2);
        assert_eq!(placements(&[0, 1], &[1, 1, 1]).len(), 1);
        assert!(placements(&[0, 1, 2], &[3]).is_empty());
    }

    #[test]
    fn degree_seven_exceeds_budget() {
        let spec = EnumSpec { degree: 7, critical_profile: vec![vec![7], vec![7]], num_postcritical: 4, swap_classes: vec![] };
        assert!(matches!(enumerate_portraits(&spec), Err(EnumError::BudgetExceeded(_))));
    }

    #[test]
    fn enumerated_portraits_validate() {
        let spec = EnumSpec {
            degree: 3,
            critical_profile: vec![vec![2], vec![2], vec![3]],
            num_postcritical: 4,
            swap_classes: vec![vec!["v1".into(), "v2".into()]],
        };
        let ps = enumerate_portraits(&spec).unwrap();
        assert!(!ps.is_empty());
        for p in &ps {
            assert!(p.validate().valid(), "{:?}", p.validate().failures());
        }
    }
}
