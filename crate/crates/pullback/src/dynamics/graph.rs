use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::portrait::Portrait;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DynamicsError {
    #[error("portrait is not dynamical (A and B must coincide)")]
    NotDynamical,
    #[error("points outside the forward orbits of the critical values: {0:?}")]
    NotPostcriticallyClosed(Vec<String>),
    #[error("unmarked vertex `{0}` has indegree below two")]
    HypothesisViolated(String),
    #[error("fewer than four marked points")]
    TooFewMarked,
}

/// The map `f` restricted to a finite forward-invariant set, with the
/// critical values marked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalGraph {
    names: Vec<String>,
    succ: Vec<usize>,
    marked: Vec<bool>,
}

/// JSON form: `{"map": {"a": "b", ...}, "marked": [...]}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub map: BTreeMap<String, String>,
    pub marked: Vec<String>,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    pub root: String,
    /// Vertices of the tree other than the root.
    pub vertices: Vec<String>,
    pub leaves: Vec<String>,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub cycle: Vec<String>,
    pub trees: Vec<Tree>,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub components: Vec<Component>,
}

impl FunctionalGraph {
    pub fn new(names: Vec<String>, succ: Vec<usize>, marked: Vec<bool>) -> FunctionalGraph {
        assert_eq!(names.len(), succ.len());
        assert_eq!(names.len(), marked.len());
        assert!(succ.iter().all(|&s| s < names.len()));
        FunctionalGraph { names, succ, marked }
    }

    pub fn from_json(g: &GraphJson) -> Result<FunctionalGraph, String> {
        let names: Vec<String> = g.map.keys().cloned().collect();
        let idx = |s: &str| names.iter().position(|n| n == s).ok_or_else(|| format!("unknown vertex `{s}`"));
        let succ = g.map.values().map(|v| idx(v)).collect::<Result<Vec<_>, _>>()?;
        let mut marked = vec![false; names.len()];
        for m in &g.marked {
            marked[idx(m)?] = true;
        }
        Ok(FunctionalGraph { names, succ, marked })
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            map: (0..self.len()).map(|i| (self.names[i].clone(), self.names[self.succ[i]].clone())).collect(),
            marked: (0..self.len()).filter(|&i| self.marked[i]).map(|i| self.names[i].clone()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn succ(&self) -> &[usize] {
        &self.succ
    }

    pub fn marked(&self) -> &[bool] {
        &self.marked
    }

    pub fn marked_count(&self) -> usize {
        self.marked.iter().filter(|&&m| m).count()
    }

    pub fn indegrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.len()];
        for &s in &self.succ {
            d[s] += 1;
        }
        d
    }

    pub fn indegree_of(&self, name: &str) -> Option<usize> {
        let i = self.names.iter().position(|n| n == name)?;
        Some(self.indegrees()[i])
    }

    pub fn on_cycle(&self) -> Vec<bool> {
        let n = self.len();
        let mut on = vec![false; n];
        for start in 0..n {
            let mut x = start;
            for _ in 0..n {
                x = self.succ[x];
            }
            let y = x;
            loop {
                on[x] = true;
                x = self.succ[x];
                if x == y {
                    break;
                }
            }
        }
        on
    }

    /// Every vertex lies in the forward orbit of a marked vertex.
    pub fn is_closed(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<usize> = (0..self.len()).filter(|&i| self.marked[i]).collect();
        while let Some(v) = stack.pop() {
            if !seen[v] {
                seen[v] = true;
                stack.push(self.succ[v]);
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn decompose(&self) -> Decomposition {
        let n = self.len();
        let on = self.on_cycle();
        let mut done = vec![false; n];
        let mut components = Vec::new();
        // root[v] is the first cycle vertex reached from v.
        let root: Vec<usize> = (0..n)
            .map(|v| {
                let mut x = v;
                while !on[x] {
                    x = self.succ[x];
                }
                x
            })
            .collect();
        for c in 0..n {
            if !on[c] || done[c] {
                continue;
            }
            let mut cycle = vec![c];
            done[c] = true;
            let mut x = self.succ[c];
            while x != c {
                cycle.push(x);
                done[x] = true;
                x = self.succ[x];
            }
            let mut trees = Vec::new();
            for &r in &cycle {
                let members: Vec<usize> = (0..n).filter(|&v| !on[v] && root[v] == r).collect();
                if members.is_empty() {
                    continue;
                }
                let leaves: Vec<String> = members
                    .iter()
                    .filter(|&&v| !self.succ.iter().enumerate().any(|(u, &s)| s == v && !on[u]))
                    .map(|&v| self.names[v].clone())
                    .collect();
                trees.push(Tree {
                    root: self.names[r].clone(),
                    vertices: members.iter().map(|&v| self.names[v].clone()).collect(),
                    leaves,
                });
            }
            components.push(Component { cycle: cycle.iter().map(|&v| self.names[v].clone()).collect(), trees });
        }
        Decomposition { components }
    }
}

/// Graph of `f` on the marked set of a dynamical portrait; marks are the critical values.
pub fn build_graph(p: &Portrait) -> Result<FunctionalGraph, DynamicsError> {
    let aset: BTreeSet<&String> = p.a.iter().collect();
    let bset: BTreeSet<&String> = p.b.iter().collect();
    if !p.dynamical || aset != bset {
        return Err(DynamicsError::NotDynamical);
    }
    let missing = p.unreached_points();
    if !missing.is_empty() {
        return Err(DynamicsError::NotPostcriticallyClosed(missing));
    }
    let names = p.a.clone();
    let crit: BTreeSet<String> = p.critical_values().into_iter().collect();
    let succ = names
        .iter()
        .map(|a| {
            let b = p.image_of(a).ok_or_else(|| DynamicsError::NotPostcriticallyClosed(vec![a.clone()]))?;
            Ok(names.iter().position(|n| n == b).unwrap())
        })
        .collect::<Result<Vec<_>, DynamicsError>>()?;
    let marked = names.iter().map(|n| crit.contains(n)).collect();
    Ok(FunctionalGraph { names, succ, marked })
}

/// Outcome of the `|P| <= 2|V|` check with three independent readings of equality.
#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct IndegreeWitness {
    pub postcritical: usize,
    pub critical_values: usize,
    pub bound_holds: bool,
    /// `|P| = 2|V|` by counting.
    pub equality_by_count: bool,
    /// Equality read off the cycle-and-tree shape.
    pub equality_by_shape: bool,
    /// Equality read off the forward orbits of the critical values.
    pub equality_by_orbits: bool,
}

impl IndegreeWitness {
    pub fn consistent(&self) -> bool {
        self.equality_by_count == self.equality_by_shape && self.equality_by_count == self.equality_by_orbits
    }
}

/// Requires every unmarked vertex to have indegree at least two.
pub fn check_indegree_bound(g: &FunctionalGraph) -> Result<IndegreeWitness, DynamicsError> {
    let indeg = g.indegrees();
    for v in 0..g.len() {
        if !g.marked[v] && indeg[v] < 2 {
            return Err(DynamicsError::HypothesisViolated(g.names[v].clone()));
        }
    }
    let p = g.len();
    let v = g.marked_count();
    Ok(IndegreeWitness {
        postcritical: p,
        critical_values: v,
        bound_holds: p <= 2 * v,
        equality_by_count: p == 2 * v,
        equality_by_shape: shape_equality(g),
        equality_by_orbits: orbit_equality(g),
    })
}

/// No marked vertex on a cycle, each cycle vertex carries one tree through a
/// single edge, and each tree minus its root is a full binary tree whose
/// leaves are exactly its marked vertices.
fn shape_equality(g: &FunctionalGraph) -> bool {
    let n = g.len();
    let on = g.on_cycle();
    if (0..n).any(|v| on[v] && g.marked[v]) {
        return false;
    }
    let tree_children = |v: usize| (0..n).filter(|&u| !on[u] && g.succ[u] == v).count();
    for v in 0..n {
        let k = tree_children(v);
        if on[v] {
            if k != 1 {
                return false;
            }
        } else {
            let leaf = k == 0;
            if !(k == 0 || k == 2) || leaf != g.marked[v] {
                return false;
            }
        }
    }
    true
}

/// No critical value is a forward image of a critical value, and every
/// forward image of a critical value has exactly two preimages in `P`.
fn orbit_equality(g: &FunctionalGraph) -> bool {
    let indeg = g.indegrees();
    for v in (0..g.len()).filter(|&v| g.marked[v]) {
        let mut x = v;
        for _ in 0..g.len() {
            x = g.succ[x];
            if g.marked[x] || indeg[x] != 2 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::portrait::samples::*;

    #[test]
    fn quartic_graph() {
        let g = build_graph(&quartic_lattes()).unwrap();
        let d = g.decompose();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].cycle, vec!["p".to_string()]);
        assert_eq!(d.components[0].trees.len(), 1);
        let mut leaves = d.components[0].trees[0].leaves.clone();
        leaves.sort();
        assert_eq!(leaves, vec!["v1", "v2", "v3"]);
    }

    #[test]
    fn z2_plus_i_graph() {
        let g = build_graph(&z2_plus_i()).unwrap();
        assert_eq!(g.marked_count(), 2);
        let d = g.decompose();
        assert_eq!(d.components.len(), 2);
        assert!(matches!(check_indegree_bound(&g), Err(DynamicsError::HypothesisViolated(_))));
    }

    #[test]
    fn not_dynamical() {
        let mut p = quartic_lattes();
        p.dynamical = false;
        assert_eq!(build_graph(&p).unwrap_err(), DynamicsError::NotDynamical);
    }

    #[test]
    fn equality_case() {
        // v1 -> a -> a, v2 -> b -> b
        let names = ["v1", "v2", "a", "b"].map(String::from).to_vec();
        let g = FunctionalGraph::new(names, vec![2, 3, 2, 3], vec![true, true, false, false]);
        let w = check_indegree_bound(&g).unwrap();
        assert!(w.bound_holds && w.equality_by_count && w.consistent());
    }

    #[test]
    fn json_form() {
        let g = build_graph(&quartic_lattes()).unwrap();
        let j = g.to_json();
        let back = FunctionalGraph::from_json(&j).unwrap();
        assert_eq!(back.to_json(), j);
    }
}
