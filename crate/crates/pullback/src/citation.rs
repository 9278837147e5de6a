//! Named results that can certify a verdict. Every report that blocks or
//! admits rank zero points at one of these.

use serde::Serialize;

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[serde(rename_all = "kebab-case")]
pub enum Citation {
    /// rank >= min(ell1 + ell2, |A| - 3)
    RankBound,
    /// rank zero forces |A| <= d + 2
    DegreeBound,
    /// rank zero forces |A| <= (#simple critical points over v) + 2 for an unmarked-fiber critical value v
    CriticalFiberBound,
    /// rank zero forces every marked point to share its image or map to a critical value
    SharedImage,
    /// constant pullback forces indegree >= 2 off V and |P| <= min(2|V|, d + 2)
    PostcriticalBound,
    /// a strictly preperiodic critical value outside f(P) over a single simple critical point
    SimpleCriticalValue,
    /// all critical values periodic, at least three of them: rank >= |P| - |V|
    PeriodicCriticalValues,
    /// unicritical topological polynomials have rank |P| - 3
    UnicriticalPolynomial,
    /// |P| <= 2|V| with the equality characterization
    IndegreeCount,
    /// three critical values and a deck-trivial cover
    ThreeCriticalValues,
    /// |P| <= |V| + 1, cited without proof
    VPlusOneBound,
    /// |P| <= 2|V_finite| - 1 for topological polynomials, cited without proof
    PolynomialBound,
    /// a McMullen-type factorization through fewer marked points
    Factorization,
}

impl Citation {
    pub fn tag(self) -> &'static str {
        match self {
            Citation::RankBound => "rank-bound",
            Citation::DegreeBound => "degree-bound",
            Citation::CriticalFiberBound => "critical-fiber-bound",
            Citation::SharedImage => "shared-image",
            Citation::PostcriticalBound => "postcritical-bound",
            Citation::SimpleCriticalValue => "simple-critical-value",
            Citation::PeriodicCriticalValues => "periodic-critical-values",
            Citation::UnicriticalPolynomial => "unicritical-polynomial",
            Citation::IndegreeCount => "indegree-count",
            Citation::ThreeCriticalValues => "three-critical-values",
            Citation::VPlusOneBound => "v-plus-one-bound",
            Citation::PolynomialBound => "polynomial-bound",
            Citation::Factorization => "factorization",
        }
    }

    /// Results taken on citation without proof. Filters built on them are
    /// off by default.
    pub fn unproved(self) -> bool {
        matches!(self, Citation::VPlusOneBound | Citation::PolynomialBound)
    }
}

impl std::fmt::Display for Citation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}
