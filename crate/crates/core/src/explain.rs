//! Overlays of credulous solutions and their critical attack sets.
//!
//! A critical attack set for a stable labelling `S` is a ⊆-minimal set of
//! attacks whose suspension turns the grounded labelling into `S` itself
//! (total, and equal to `S` on every argument). Candidate attacks are drawn
//! from the UNDEC part of the grounded labelling; the search walks subsets
//! by increasing cardinality and skips supersets of sets already found, so
//! every reported set is minimal.

use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use serde_json::Value;

use crate::classify::{classify_edges_masked, EdgeClassification};
use crate::error::Error;
use crate::framework::{ArgIdx, Attack, EdgeIdx, Framework};
use crate::grounded::{
    check_complete, grounded, grounded_masked, suspension_mask, GroundedResult, Label, Labelling,
};
use crate::semantics::{enumerate, Semantics};

/// A credulous solution drawn on top of the grounded labelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlay {
    pub base: GroundedResult,
    pub target: Labelling,
    /// UNDEC arguments of the base that the target decides.
    pub resolved: Vec<ArgIdx>,
    pub effective: Labelling,
}

impl Overlay {
    pub fn is_resolved(&self, x: ArgIdx) -> bool {
        self.resolved.binary_search(&x).is_ok()
    }
}

pub fn build_overlay(
    framework: &Framework,
    base: &GroundedResult,
    target: &Labelling,
) -> Result<Overlay, Error> {
    if target.len() != base.labelling.len() {
        return Err(Error::LabellingSize {
            expected: base.labelling.len(),
            got: target.len(),
        });
    }
    if let Some(x) = target.undec_set().first() {
        return Err(Error::TargetNotStable(framework.id(*x).clone()));
    }
    if let Some(x) =
        (0..target.len()).find(|&x| base.label(x) != Label::Undec && base.label(x) != target.get(x))
    {
        return Err(Error::TargetDisagrees(framework.id(x).clone()));
    }
    let resolved = base
        .undec
        .iter()
        .copied()
        .filter(|&x| target.get(x) != Label::Undec)
        .collect();
    Ok(Overlay {
        base: base.clone(),
        target: target.clone(),
        resolved,
        effective: target.clone(),
    })
}

/// Overlay for an arbitrary suspension: the recomputed labels are shown on
/// top of the base, and base-UNDEC arguments they decide are marked resolved.
pub fn what_if_overlay(base: &GroundedResult, result: &GroundedResult) -> Overlay {
    let resolved = base
        .undec
        .iter()
        .copied()
        .filter(|&x| result.label(x) != Label::Undec)
        .collect();
    Overlay {
        base: base.clone(),
        target: result.labelling.clone(),
        resolved,
        effective: result.labelling.clone(),
    }
}

/// Which attacks the critical-set search may suspend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CandidateMode {
    /// Attacks inside the UNDEC part whose attacker is OUT and target IN in
    /// the solution.
    #[default]
    Failing,
    /// Every attack with both endpoints UNDEC in the grounded labelling.
    AllUndec,
}

impl CandidateMode {
    pub fn name(self) -> &'static str {
        match self {
            CandidateMode::Failing => "failing",
            CandidateMode::AllUndec => "all-undec",
        }
    }
}

impl FromStr for CandidateMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "failing" => Ok(CandidateMode::Failing),
            "all-undec" => Ok(CandidateMode::AllUndec),
            other => Err(format!("unknown candidate mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SearchBounds {
    pub max_cardinality: usize,
    pub max_tests: usize,
    pub max_results: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_cardinality: 4,
            max_tests: 50_000,
            max_results: 100,
        }
    }
}

/// Cooperative cancellation flag, checked between subset tests.
#[derive(Debug, Clone, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalAttackSet {
    /// Suspended attack indices, ascending.
    pub edges: Vec<EdgeIdx>,
    pub resolution: GroundedResult,
}

impl CriticalAttackSet {
    pub fn attacks(&self, framework: &Framework) -> Vec<Attack> {
        self.edges.iter().map(|&e| framework.attack(e)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalSearch {
    pub sets: Vec<CriticalAttackSet>,
    /// The bounds stopped the search before the candidate space was exhausted.
    pub truncated: bool,
    /// Number of suspensions evaluated.
    pub tests: usize,
}

/// Candidate attacks for `target`, ascending.
pub fn candidate_space(
    framework: &Framework,
    base: &GroundedResult,
    target: &Labelling,
    mode: CandidateMode,
) -> Vec<EdgeIdx> {
    let undec = |x: ArgIdx| base.label(x) == Label::Undec;
    framework
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, &(s, t))| undec(s) && undec(t))
        .filter(|(_, &(s, t))| match mode {
            CandidateMode::Failing => target.get(s) == Label::Out && target.get(t) == Label::In,
            CandidateMode::AllUndec => true,
        })
        .map(|(e, _)| e)
        .collect()
}

/// Grounded result of suspending `edges` when it reproduces `target`
/// exactly, `None` otherwise.
pub fn resolves_to(
    framework: &Framework,
    edges: &[EdgeIdx],
    target: &Labelling,
) -> Option<GroundedResult> {
    let g = grounded_masked(framework, &suspension_mask(framework, edges));
    (g.is_total() && g.labelling == *target).then_some(g)
}

/// All minimal critical attack sets for a stable `target`, ordered by
/// (cardinality, lexicographic attack order).
pub fn critical_attack_sets(
    framework: &Framework,
    base: &GroundedResult,
    target: &Labelling,
    mode: CandidateMode,
    bounds: SearchBounds,
    cancel: &CancelToken,
) -> Result<CriticalSearch, Error> {
    check_stable(framework, target)?;
    build_overlay(framework, base, target)?;

    let candidates = candidate_space(framework, base, target, mode);
    let mut found: Vec<CriticalAttackSet> = Vec::new();
    let mut tests = 0usize;
    let mut truncated = false;

    let top = bounds.max_cardinality.min(candidates.len());
    'levels: for k in 0..=top {
        let mut combo = Combinations::new(candidates.len(), k);
        while let Some(positions) = combo.next() {
            let subset: Vec<EdgeIdx> = positions.iter().map(|&i| candidates[i]).collect();
            if found.iter().any(|f| is_subset(&f.edges, &subset)) {
                continue;
            }
            if cancel.is_cancelled() {
                return Err(Error::Cancelled);
            }
            if tests == bounds.max_tests {
                truncated = true;
                break 'levels;
            }
            tests += 1;
            if let Some(resolution) = resolves_to(framework, &subset, target) {
                if found.len() == bounds.max_results {
                    truncated = true;
                    break 'levels;
                }
                found.push(CriticalAttackSet {
                    edges: subset,
                    resolution,
                });
            }
        }
    }

    if !truncated && top < candidates.len() {
        // Larger subsets were not explored; report truncation only when one
        // of them is not already covered by a found set.
        let mut combo = Combinations::new(candidates.len(), top + 1);
        while let Some(positions) = combo.next() {
            let subset: Vec<EdgeIdx> = positions.iter().map(|&i| candidates[i]).collect();
            if !found.iter().any(|f| is_subset(&f.edges, &subset)) {
                truncated = true;
                break;
            }
        }
    }

    Ok(CriticalSearch {
        sets: found,
        truncated,
        tests,
    })
}

fn check_stable(framework: &Framework, target: &Labelling) -> Result<(), Error> {
    if target.len() != framework.len() {
        return Err(Error::LabellingSize {
            expected: framework.len(),
            got: target.len(),
        });
    }
    if let Some(x) = target.undec_set().first() {
        return Err(Error::TargetNotStable(framework.id(*x).clone()));
    }
    check_complete(framework, target).map_err(|e| match e {
        Error::IllegalLabelling(id) => Error::TargetNotStable(id),
        other => other,
    })
}

/// Both slices ascending.
fn is_subset(small: &[EdgeIdx], big: &[EdgeIdx]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// k-combinations of `0..n` in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    first: bool,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            first: true,
            done: k > n,
        }
    }

    fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if self.first {
            self.first = false;
            return Some(&self.idx);
        }
        let k = self.idx.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx);
            }
        }
        self.done = true;
        None
    }
}

/// Result of a what-if suspension: recomputed grounded semantics and the
/// classification of the surviving attacks.
pub fn what_if(
    framework: &Framework,
    suspended: &[Attack],
) -> Result<(GroundedResult, EdgeClassification), Error> {
    let edges = framework.resolve_attacks(suspended)?;
    Ok(what_if_edges(framework, &edges))
}

pub fn what_if_edges(
    framework: &Framework,
    edges: &[EdgeIdx],
) -> (GroundedResult, EdgeClassification) {
    let mask = suspension_mask(framework, edges);
    let g = grounded_masked(framework, &mask);
    let c = classify_edges_masked(framework, &mask, &g.labelling, &g.lengths)
        .expect("grounded results are always classifiable");
    (g, c)
}

/// One credulous solution with its overlay and critical attack sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Explanation {
    pub solution_index: usize,
    pub overlay: Overlay,
    pub critical: CriticalSearch,
}

impl Explanation {
    pub fn to_json(&self, framework: &Framework) -> Value {
        serde_json::json!({
            "solution": self.solution_index,
            "overlay": {
                "resolved": self.overlay.resolved.iter().map(|&x| framework.id(x).as_str()).collect::<Vec<_>>(),
                "labels": self.overlay.effective.to_json(framework),
            },
            "critical_sets": self.critical.sets.iter().map(|c| serde_json::json!({
                "edges": c.edges.iter().map(|&e| {
                    let a = framework.attack(e);
                    serde_json::json!([a.source.as_str(), a.target.as_str()])
                }).collect::<Vec<_>>(),
                "resolution_labels": c.resolution.labelling.to_json(framework),
            })).collect::<Vec<_>>(),
            "truncated": self.critical.truncated,
        })
    }
}

/// Explains the `index`-th solution of `semantics`. The selected solution
/// must be stable (total); preferred solutions with UNDEC arguments are
/// rejected.
pub fn explain(
    framework: &Framework,
    semantics: Semantics,
    index: usize,
    mode: CandidateMode,
    bounds: SearchBounds,
    cancel: &CancelToken,
) -> Result<Explanation, Error> {
    let solutions = enumerate(framework, semantics);
    let target = solutions.get(index)?;
    let base = grounded(framework);
    explain_target(framework, &base, target, index, mode, bounds, cancel)
}

pub fn explain_target(
    framework: &Framework,
    base: &GroundedResult,
    target: &Labelling,
    index: usize,
    mode: CandidateMode,
    bounds: SearchBounds,
    cancel: &CancelToken,
) -> Result<Explanation, Error> {
    let critical = critical_attack_sets(framework, base, target, mode, bounds, cancel)?;
    let overlay = build_overlay(framework, base, target)?;
    Ok(Explanation {
        solution_index: index,
        overlay,
        critical,
    })
}
