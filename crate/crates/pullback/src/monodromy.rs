//! Monodromy of covers of the sphere branched over three points.
//!
//! Permutations act on `{1, ..., d}` and compose right to left:
//! `(s0 s1 sinf)(x) = s0(s1(sinf(x)))`. A triple describes a cover when
//! `s0 s1 sinf = id`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::citation::Citation;
use crate::dynamics::Verdict;
use crate::portrait::Portrait;

pub const MAX_DECK_DEGREE: usize = 8;
pub const MAX_ENUM_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonodromyError {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("the monodromy group is not transitive")]
    NotTransitive,
    #[error("degree {0} is above the supported limit")]
    DegreeTooLarge(usize),
    #[error("hypotheses unmet: {0}")]
    HypothesesUnmet(String),
}

/// A permutation of `{0, ..., n-1}` stored as its image vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    pub fn from_images(img: Vec<usize>) -> Result<Perm, MonodromyError> {
        let mut seen = vec![false; img.len()];
        for &i in &img {
            if i >= img.len() || seen[i] {
                return Err(MonodromyError::InvalidPermutation(format!("{img:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Perm(img))
    }

    /// From 1-based cycles; points not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Perm, MonodromyError> {
        let mut img: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x == 0 || x > n || used[x - 1] {
                    return Err(MonodromyError::InvalidPermutation(format!("bad cycle {c:?} in degree {n}")));
                }
                used[x - 1] = true;
                img[x - 1] = c[(k + 1) % c.len()] - 1;
            }
        }
        Ok(Perm(img))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `h self h^-1`.
    pub fn conjugate(&self, h: &Perm) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[h.0[i]] = h.0[x];
        }
        Perm(out)
    }

    /// All cycles, 1-based, each starting at its least element, fixed points included.
    pub fn all_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x + 1);
                x = self.0[x];
            }
            out.push(c);
        }
        out
    }

    /// Cycles of length at least two, 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.all_cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    /// Cycle lengths, descending, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.all_cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn num_cycles(&self) -> usize {
        self.all_cycles().len()
    }
}

impl std::fmt::Display for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return f.write_str("()");
        }
        for c in cs {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// All permutations of `{0, ..., n-1}` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![Perm(cur.clone())];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Perm(cur.clone()));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PermutationTriple {
    pub sigma0: Perm,
    pub sigma1: Perm,
    pub sigma_inf: Perm,
}

/// JSON form with 1-based cycles; fixed points omitted.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TripleJson {
    pub degree: usize,
    pub sigma0: Vec<Vec<usize>>,
    pub sigma1: Vec<Vec<usize>>,
    pub sigma_inf: Vec<Vec<usize>>,
}

impl PermutationTriple {
    pub fn new(sigma0: Perm, sigma1: Perm, sigma_inf: Perm) -> Result<PermutationTriple, MonodromyError> {
        let d = sigma0.degree();
        if sigma1.degree() != d || sigma_inf.degree() != d {
            return Err(MonodromyError::InvalidTriple("permutations of different degrees".into()));
        }
        Ok(PermutationTriple { sigma0, sigma1, sigma_inf })
    }

    pub fn from_cycles(d: usize, s0: &[Vec<usize>], s1: &[Vec<usize>], sinf: &[Vec<usize>]) -> Result<PermutationTriple, MonodromyError> {
        PermutationTriple::new(Perm::from_cycles(d, s0)?, Perm::from_cycles(d, s1)?, Perm::from_cycles(d, sinf)?)
    }

    pub fn from_json(j: &TripleJson) -> Result<PermutationTriple, MonodromyError> {
        PermutationTriple::from_cycles(j.degree, &j.sigma0, &j.sigma1, &j.sigma_inf)
    }

    pub fn to_json(&self) -> TripleJson {
        TripleJson {
            degree: self.degree(),
            sigma0: self.sigma0.cycles(),
            sigma1: self.sigma1.cycles(),
            sigma_inf: self.sigma_inf.cycles(),
        }
    }

    pub fn degree(&self) -> usize {
        self.sigma0.degree()
    }

    pub fn perms(&self) -> [&Perm; 3] {
        [&self.sigma0, &self.sigma1, &self.sigma_inf]
    }

    pub fn product_is_identity(&self) -> bool {
        self.sigma0.compose(&self.sigma1).compose(&self.sigma_inf).is_identity()
    }

    pub fn is_transitive(&self) -> bool {
        let d = self.degree();
        if d == 0 {
            return true;
        }
        let mut seen = vec![false; d];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for p in self.perms() {
                let y = p.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Genus from Riemann–Hurwitz; `None` when the count is odd or negative.
    pub fn genus(&self) -> Option<usize> {
        genus_of_passport(self.degree(), &self.passport())
    }

    pub fn passport(&self) -> Vec<Vec<usize>> {
        self.perms().iter().map(|p| p.cycle_type()).collect()
    }

    pub fn conjugate(&self, h: &Perm) -> PermutationTriple {
        PermutationTriple {
            sigma0: self.sigma0.conjugate(h),
            sigma1: self.sigma1.conjugate(h),
            sigma_inf: self.sigma_inf.conjugate(h),
        }
    }

    /// Lexicographically least triple under simultaneous conjugation.
    pub fn canonical(&self) -> PermutationTriple {
        all_perms(self.degree()).iter().map(|h| self.conjugate(h)).min().unwrap()
    }
}

impl std::fmt::Display for PermutationTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "s0 = {}, s1 = {}, sinf = {}", self.sigma0, self.sigma1, self.sigma_inf)
    }
}

/// `2 - 2g = 2d - sum (d - #cycles)`.
pub fn genus_of_passport(d: usize, passport: &[Vec<usize>]) -> Option<usize> {
    let ram: usize = passport.iter().map(|t| d - t.len()).sum();
    let twice = ram as i64 - 2 * d as i64 + 2;
    (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as usize)
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct TripleReport {
    pub product_identity: bool,
    pub transitive: bool,
    pub genus: Option<usize>,
    pub passport: Vec<Vec<usize>>,
}

pub fn validate_triple(t: &PermutationTriple) -> TripleReport {
    TripleReport {
        product_identity: t.product_is_identity(),
        transitive: t.is_transitive(),
        genus: t.genus(),
        passport: t.passport(),
    }
}

fn require_cover(t: &PermutationTriple) -> Result<(), MonodromyError> {
    if !t.product_is_identity() {
        return Err(MonodromyError::InvalidTriple("s0 s1 sinf is not the identity".into()));
    }
    if !t.is_transitive() {
        return Err(MonodromyError::NotTransitive);
    }
    Ok(())
}

/// Deck transformations: the centralizer of the monodromy group in `S_d`.
pub fn deck_group(t: &PermutationTriple) -> Result<Vec<Perm>, MonodromyError> {
    if t.degree() > MAX_DECK_DEGREE {
        return Err(MonodromyError::DegreeTooLarge(t.degree()));
    }
    require_cover(t)?;
    Ok(all_perms(t.degree())
        .into_iter()
        .filter(|h| {
            h.compose(&t.sigma0) == t.sigma0.compose(h) && h.compose(&t.sigma1) == t.sigma1.compose(h)
        })
        .collect())
}

fn normalize_type(t: &[usize]) -> Vec<usize> {
    let mut t: Vec<usize> = t.iter().copied().filter(|&x| x > 0).collect();
    t.sort_unstable_by(|a, b| b.cmp(a));
    t
}

/// The permutation `(1 .. k1)(k1+1 .. k1+k2)...` of the given cycle type.
fn representative(d: usize, cycle_type: &[usize]) -> Perm {
    let mut img = vec![0; d];
    let mut start = 0;
    for &k in cycle_type {
        for i in 0..k {
            img[start + i] = start + (i + 1) % k;
        }
        start += k;
    }
    Perm(img)
}

/// Transitive triples with the given passport, one per simultaneous-conjugacy
/// class, in canonical form and sorted.
pub fn enumerate_triples(d: usize, passport: &[Vec<usize>]) -> Result<Vec<PermutationTriple>, MonodromyError> {
    if d > MAX_ENUM_DEGREE {
        return Err(MonodromyError::DegreeTooLarge(d));
    }
    if passport.len() != 3 {
        return Err(MonodromyError::InvalidTriple("a passport has three cycle types".into()));
    }
    let pp: Vec<Vec<usize>> = passport.iter().map(|t| normalize_type(t)).collect();
    if pp.iter().any(|t| t.iter().sum::<usize>() != d) || genus_of_passport(d, &pp).is_none() {
        return Ok(Vec::new());
    }
    let s0 = representative(d, &pp[0]);
    let mut found = BTreeSet::new();
    for s1 in all_perms(d).into_iter().filter(|p| p.cycle_type() == pp[1]) {
        let sinf = s0.compose(&s1).inverse();
        if sinf.cycle_type() != pp[2] {
            continue;
        }
        let t = PermutationTriple { sigma0: s0.clone(), sigma1: s1, sigma_inf: sinf };
        if t.is_transitive() {
            found.insert(t.canonical());
        }
    }
    Ok(found.into_iter().collect())
}

/// True iff each of the three permutations has a cycle holding at least
/// three of the four given labels (1-based).
pub fn prop45_check(t: &PermutationTriple, pts: [usize; 4]) -> Result<bool, MonodromyError> {
    require_cover(t)?;
    if t.genus() != Some(0) {
        return Err(MonodromyError::InvalidTriple("the cover is not of genus zero".into()));
    }
    let set: BTreeSet<usize> = pts.iter().copied().collect();
    if set.len() != 4 || pts.iter().any(|&p| p == 0 || p > t.degree()) {
        return Err(MonodromyError::InvalidTriple(format!("need four distinct labels in 1..={}", t.degree())));
    }
    Ok(t.perms().iter().all(|p| p.cycles().iter().any(|c| c.iter().filter(|x| set.contains(x)).count() >= 3)))
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct BelyiReport {
    pub verdict: Verdict,
    pub citation: Citation,
    /// Labeled slots over the critical values.
    pub marked_over_critical: usize,
    /// Whether every supplied triple has trivial deck group.
    pub all_deck_trivial: bool,
    pub triples_checked: usize,
    pub detail: String,
}

/// The three cycle types of a portrait with three critical values, in the order of `B`.
pub fn portrait_passport(p: &Portrait) -> Result<Vec<Vec<usize>>, MonodromyError> {
    let crit = p.critical_values();
    if crit.len() != 3 {
        return Err(MonodromyError::HypothesesUnmet(format!("{} critical values, need three", crit.len())));
    }
    Ok(p.b
        .iter()
        .filter(|b| crit.contains(b))
        .map(|b| normalize_type(&p.fiber(b).iter().map(|s| s.mult as usize).collect::<Vec<_>>()))
        .collect())
}

/// Constancy obstruction for covers with three critical values.
///
/// Constant pullback forces fewer than three marked points over the critical
/// values, and with exactly two it forces a nontrivial deck transformation.
pub fn belyi_obstruction(p: &Portrait, triples: &[PermutationTriple]) -> Result<BelyiReport, MonodromyError> {
    let crit = p.critical_values();
    if crit.len() != 3 {
        return Err(MonodromyError::HypothesesUnmet(format!("{} critical values, need three", crit.len())));
    }
    if p.a.len() < 4 {
        return Err(MonodromyError::HypothesesUnmet("fewer than four marked points".into()));
    }
    if p.a.iter().all(|a| p.image_of(a).is_some_and(|b| crit.iter().any(|c| c == b))) {
        return Err(MonodromyError::HypothesesUnmet("every marked point maps to a critical value".into()));
    }
    let count: usize = crit.iter().map(|c| p.labeled_count(c)).sum();
    let mut trivial = true;
    for t in triples {
        if deck_group(t)?.len() > 1 {
            trivial = false;
        }
    }
    let (verdict, detail) = if count >= 3 {
        (Verdict::NotConstant, format!("{count} marked points over the critical values"))
    } else if count == 2 && trivial {
        let note = if triples.is_empty() { " (no monodromy triples supplied)" } else { "" };
        (Verdict::NotConstant, format!("two marked points over the critical values and no deck transformation{note}"))
    } else {
        (Verdict::Unobstructed, format!("{count} marked points over the critical values"))
    };
    Ok(BelyiReport {
        verdict,
        citation: Citation::ThreeCriticalValues,
        marked_over_critical: count,
        all_deck_trivial: trivial,
        triples_checked: triples.len(),
        detail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::portrait::samples::quartic_lattes;

    fn dessin() -> PermutationTriple {
        PermutationTriple::from_cycles(4, &[vec![1, 2, 3]], &[vec![1, 3, 4]], &[vec![2, 4, 3]]).unwrap()
    }

    #[test]
    fn printed_dessin() {
        let r = validate_triple(&dessin());
        assert!(r.product_identity && r.transitive);
        assert_eq!(r.genus, Some(0));
        assert_eq!(r.passport, vec![vec![3, 1]; 3]);
        assert!(prop45_check(&dessin(), [1, 2, 3, 4]).unwrap());
        assert_eq!(deck_group(&dessin()).unwrap().len(), 1);
    }

    #[test]
    fn left_to_right_reading_fails() {
        let t = dessin();
        assert!(!t.sigma_inf.compose(&t.sigma1).compose(&t.sigma0).is_identity());
    }

    #[test]
    fn torus_cover() {
        let c = vec![vec![1, 2, 3]];
        let t = PermutationTriple::from_cycles(3, &c, &c, &c).unwrap();
        let r = validate_triple(&t);
        assert!(r.product_identity && r.transitive);
        assert_eq!(r.genus, Some(1));
        assert_eq!(deck_group(&t).unwrap().len(), 3);
    }

    #[test]
    fn degree_two() {
        let t = PermutationTriple::from_cycles(2, &[vec![1, 2]], &[vec![1, 2]], &[]).unwrap();
        assert_eq!(deck_group(&t).unwrap().len(), 2);
        assert_eq!(enumerate_triples(2, &[vec![2], vec![2], vec![1, 1]]).unwrap().len(), 1);
    }

    #[test]
    fn bad_products() {
        let t = PermutationTriple::from_cycles(3, &[vec![1, 2]], &[vec![1, 2]], &[vec![1, 2]]).unwrap();
        assert!(!validate_triple(&t).product_identity);
        assert!(deck_group(&t).is_err());
        assert!(enumerate_triples(3, &[vec![2, 1], vec![1, 1, 1], vec![1, 1, 1]]).unwrap().is_empty());
    }

    fn closed(d: usize, s0: &[Vec<usize>], s1: &[Vec<usize>]) -> PermutationTriple {
        let a = Perm::from_cycles(d, s0).unwrap();
        let b = Perm::from_cycles(d, s1).unwrap();
        let c = a.compose(&b).inverse();
        PermutationTriple::new(a, b, c).unwrap()
    }

    #[test]
    fn prop45_negative() {
        let t = closed(5, &[vec![1, 2, 3]], &[vec![3, 4, 5]]);
        assert_eq!(t.genus(), Some(0));
        assert!(!prop45_check(&t, [1, 2, 4, 5]).unwrap());
        let t = closed(4, &[vec![1, 2], vec![3, 4]], &[vec![1, 3]]);
        assert_eq!(t.genus(), Some(0));
        assert!(!prop45_check(&t, [1, 2, 3, 4]).unwrap());
    }

    #[test]
    fn cubic_triples_are_rigid() {
        let ts = enumerate_triples(3, &[vec![3], vec![2, 1], vec![2, 1]]).unwrap();
        assert!(!ts.is_empty());
        assert!(ts.iter().all(|t| deck_group(t).unwrap().len() == 1));
    }

    #[test]
    fn quartic_unobstructed() {
        let ts = enumerate_triples(4, &portrait_passport(&quartic_lattes()).unwrap()).unwrap();
        let r = belyi_obstruction(&quartic_lattes(), &ts).unwrap();
        assert_eq!(r.verdict, Verdict::Unobstructed);
        assert_eq!(r.marked_over_critical, 0);
    }

    #[test]
    fn json_round_trip() {
        let j = dessin().to_json();
        assert_eq!(PermutationTriple::from_json(&j).unwrap(), dessin());
    }
}
