//! Enumeration of complete, stable and preferred labellings.
//!
//! Every complete labelling extends the grounded one, so the search fixes
//! the grounded IN/OUT part and backtracks only over its UNDEC remainder,
//! checking legality locally as labels are assigned.

use std::fmt;
use std::str::FromStr;

use serde_json::Value;

use crate::error::Error;
use crate::framework::{ArgIdx, Framework};
use crate::grounded::{grounded, Label, Labelling};

/// Default cap on the number of labellings produced by one enumeration.
pub const DEFAULT_SOLUTION_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    Grounded,
    Complete,
    Stable,
    Preferred,
}

impl Semantics {
    pub const ALL: [Semantics; 4] = [
        Semantics::Grounded,
        Semantics::Complete,
        Semantics::Stable,
        Semantics::Preferred,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Semantics::Grounded => "grounded",
            Semantics::Complete => "complete",
            Semantics::Stable => "stable",
            Semantics::Preferred => "preferred",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Semantics::ALL
            .into_iter()
            .find(|sem| sem.name() == s)
            .ok_or_else(|| format!("unknown semantics `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    pub semantics: Semantics,
    pub solutions: Vec<Labelling>,
    /// Set when the solution cap stopped the enumeration early.
    pub truncated: bool,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn get(&self, index: usize) -> Result<&Labelling, Error> {
        self.solutions.get(index).ok_or(Error::IndexOutOfRange {
            index,
            count: self.solutions.len(),
        })
    }

    pub fn to_json(&self, framework: &Framework) -> Value {
        serde_json::json!({
            "semantics": self.semantics.name(),
            "count": self.solutions.len(),
            "truncated": self.truncated,
            "solutions": self.solutions.iter().map(|s| s.to_json(framework)).collect::<Vec<_>>(),
        })
    }
}

pub fn enumerate(framework: &Framework, semantics: Semantics) -> SolutionSet {
    enumerate_with_cap(framework, semantics, DEFAULT_SOLUTION_CAP)
}

pub fn enumerate_with_cap(framework: &Framework, semantics: Semantics, cap: usize) -> SolutionSet {
    let base = grounded(framework).labelling;
    let (mut solutions, truncated) = match semantics {
        Semantics::Grounded => (vec![base], false),
        Semantics::Complete => search(framework, base, true, cap),
        Semantics::Stable => search(framework, base, false, cap),
        Semantics::Preferred => {
            let (complete, truncated) = search(framework, base, true, cap);
            (maximal_in_sets(complete), truncated)
        }
    };
    solutions.sort_by_cached_key(|l| l.in_set());
    SolutionSet {
        semantics,
        solutions,
        truncated,
    }
}

/// The `index`-th solution in the deterministic order.
pub fn solution(
    framework: &Framework,
    semantics: Semantics,
    index: usize,
) -> Result<Labelling, Error> {
    let mut set = enumerate(framework, semantics);
    if index >= set.solutions.len() {
        return Err(Error::IndexOutOfRange {
            index,
            count: set.solutions.len(),
        });
    }
    Ok(set.solutions.swap_remove(index))
}

struct Search<'a> {
    framework: &'a Framework,
    labels: Vec<Label>,
    assigned: Vec<bool>,
    open: Vec<ArgIdx>,
    choices: &'static [Label],
    cap: usize,
    found: Vec<Labelling>,
    truncated: bool,
}

fn search(
    framework: &Framework,
    base: Labelling,
    allow_undec: bool,
    cap: usize,
) -> (Vec<Labelling>, bool) {
    let open = base.undec_set();
    let mut assigned = vec![true; framework.len()];
    for &x in &open {
        assigned[x] = false;
    }
    let mut s = Search {
        framework,
        labels: base.labels().to_vec(),
        assigned,
        open,
        choices: if allow_undec {
            &[Label::In, Label::Out, Label::Undec]
        } else {
            &[Label::In, Label::Out]
        },
        cap,
        found: Vec::new(),
        truncated: false,
    };
    if cap == 0 {
        return (Vec::new(), true);
    }
    s.descend(0);
    (s.found, s.truncated)
}

impl Search<'_> {
    fn descend(&mut self, depth: usize) {
        if self.truncated {
            return;
        }
        if depth == self.open.len() {
            if self.found.len() == self.cap {
                self.truncated = true;
                return;
            }
            self.found.push(Labelling::new(self.labels.clone()));
            return;
        }
        let x = self.open[depth];
        self.assigned[x] = true;
        for &label in self.choices {
            self.labels[x] = label;
            if self.consistent_around(x) {
                self.descend(depth + 1);
            }
        }
        self.assigned[x] = false;
        self.labels[x] = Label::Undec;
    }

    /// Partial legality of `x` and of every argument `x` attacks.
    fn consistent_around(&self, x: ArgIdx) -> bool {
        self.locally_consistent(x)
            && self
                .framework
                .targets(x)
                .all(|z| self.locally_consistent(z))
    }

    fn locally_consistent(&self, z: ArgIdx) -> bool {
        if !self.assigned[z] {
            return true;
        }
        let mut complete = true;
        let mut some_in = false;
        let mut all_out = true;
        for y in self.framework.attackers(z) {
            if !self.assigned[y] {
                complete = false;
                continue;
            }
            match self.labels[y] {
                Label::In => some_in = true,
                Label::Out => {}
                Label::Undec => all_out = false,
            }
        }
        let all_out = all_out && !some_in;
        match self.labels[z] {
            // every assigned attacker must be OUT
            Label::In => all_out,
            Label::Out => some_in || !complete,
            Label::Undec => !some_in && !(complete && all_out),
        }
    }
}

/// Keeps the labellings whose IN-set is not strictly contained in another's.
fn maximal_in_sets(labellings: Vec<Labelling>) -> Vec<Labelling> {
    let sets: Vec<Vec<u64>> = labellings.iter().map(in_bits).collect();
    let strictly_below = |a: &[u64], b: &[u64]| a != b && a.iter().zip(b).all(|(x, y)| x & !y == 0);
    labellings
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !sets.iter().any(|other| strictly_below(&sets[*i], other)))
        .map(|(_, l)| l)
        .collect()
}

fn in_bits(l: &Labelling) -> Vec<u64> {
    let mut bits = vec![0u64; l.len().div_ceil(64)];
    for x in l.with_label(Label::In) {
        bits[x / 64] |= 1 << (x % 64);
    }
    bits
}
