//! Grounded labelling and game-theoretic lengths.
//!
//! The grounded labelling is the least fixpoint of the operator that labels
//! IN every argument whose attackers are all OUT and OUT every argument with
//! an IN attacker. Everything left over is UNDEC.
//!
//! Lengths are computed afterwards by round-based relaxation:
//!
//! * unattacked IN arguments have length 0,
//! * an OUT argument has length `1 + min` over its IN attackers,
//! * an attacked IN argument has length `1 + max` over its (OUT) attackers,
//! * UNDEC arguments have infinite length.
//!
//! Every operation here accepts an optional edge mask so that suspended
//! attacks can be ignored without rebuilding the framework.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, FrameworkError};
use crate::framework::{ArgIdx, Attack, EdgeIdx, Framework};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    In,
    Out,
    Undec,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::In => "in",
            Label::Out => "out",
            Label::Undec => "undec",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Total assignment of labels, indexed by argument position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labelling(Vec<Label>);

impl Labelling {
    pub fn new(labels: Vec<Label>) -> Self {
        Labelling(labels)
    }

    pub fn uniform(n: usize, label: Label) -> Self {
        Labelling(vec![label; n])
    }

    /// Builds a labelling from `(name, label)` pairs; unlisted arguments are UNDEC.
    pub fn from_names<'a>(
        framework: &Framework,
        pairs: impl IntoIterator<Item = (&'a str, Label)>,
    ) -> Result<Self, FrameworkError> {
        let mut labels = vec![Label::Undec; framework.len()];
        for (name, label) in pairs {
            let id = crate::ArgumentId::new(name)?;
            let idx = framework
                .index_of(&id)
                .ok_or(FrameworkError::UndeclaredArgument(id))?;
            labels[idx] = label;
        }
        Ok(Labelling(labels))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, idx: ArgIdx) -> Label {
        self.0[idx]
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn with_label(&self, label: Label) -> impl Iterator<Item = ArgIdx> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(move |(_, l)| **l == label)
            .map(|(i, _)| i)
    }

    pub fn in_set(&self) -> Vec<ArgIdx> {
        self.with_label(Label::In).collect()
    }

    pub fn undec_set(&self) -> Vec<ArgIdx> {
        self.with_label(Label::Undec).collect()
    }

    /// No UNDEC arguments.
    pub fn is_total(&self) -> bool {
        !self.0.contains(&Label::Undec)
    }

    /// `{"<id>": "in|out|undec"}` in declaration order.
    pub fn to_json(&self, framework: &Framework) -> Value {
        let map: Map<String, Value> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, l)| (framework.id(i).to_string(), Value::from(l.as_str())))
            .collect();
        Value::Object(map)
    }
}

/// Length of an argument: a round count, or infinite for UNDEC arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Length {
    Finite(u32),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u32> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Length::Finite(_))
    }

    pub fn to_json(self) -> Value {
        match self {
            Length::Finite(n) => Value::from(n),
            Length::Infinite => Value::from("inf"),
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Length::Finite(n) => s.serialize_u32(*n),
            Length::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthMap(Vec<Length>);

impl LengthMap {
    pub fn new(lengths: Vec<Length>) -> Self {
        LengthMap(lengths)
    }

    pub fn get(&self, idx: ArgIdx) -> Length {
        self.0[idx]
    }

    pub fn lengths(&self) -> &[Length] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_json(&self, framework: &Framework) -> Value {
        let map: Map<String, Value> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, l)| (framework.id(i).to_string(), l.to_json()))
            .collect();
        Value::Object(map)
    }
}

/// The grounded labelling of a framework together with its lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundedResult {
    pub labelling: Labelling,
    pub lengths: LengthMap,
    pub undec: Vec<ArgIdx>,
}

impl GroundedResult {
    pub fn label(&self, idx: ArgIdx) -> Label {
        self.labelling.get(idx)
    }

    pub fn length(&self, idx: ArgIdx) -> Length {
        self.lengths.get(idx)
    }

    pub fn is_total(&self) -> bool {
        self.undec.is_empty()
    }

    /// `{"labels":{..},"lengths":{..}}`
    pub fn to_json(&self, framework: &Framework) -> Value {
        serde_json::json!({
            "labels": self.labelling.to_json(framework),
            "lengths": self.lengths.to_json(framework),
        })
    }
}

/// Mask with every attack active.
pub fn full_mask(framework: &Framework) -> Vec<bool> {
    vec![true; framework.attack_count()]
}

/// Mask with the given attacks switched off.
pub fn suspension_mask(framework: &Framework, suspended: &[EdgeIdx]) -> Vec<bool> {
    let mut mask = full_mask(framework);
    for &e in suspended {
        mask[e] = false;
    }
    mask
}

fn active_attackers<'a>(
    framework: &'a Framework,
    active: &'a [bool],
    x: ArgIdx,
) -> impl Iterator<Item = ArgIdx> + 'a {
    framework
        .incoming(x)
        .iter()
        .filter(move |&&e| active[e])
        .map(move |&e| framework.edge(e).0)
}

pub fn grounded(framework: &Framework) -> GroundedResult {
    grounded_masked(framework, &full_mask(framework))
}

/// Grounded semantics of the framework restricted to attacks with `active[e]`.
pub fn grounded_masked(framework: &Framework, active: &[bool]) -> GroundedResult {
    let (labelling, _) = grounded_labelling_masked(framework, active);
    let lengths = lengths_masked(framework, active, &labelling)
        .expect("the grounded labelling always admits lengths");
    let undec = labelling.undec_set();
    GroundedResult {
        labelling,
        lengths,
        undec,
    }
}

/// Least-fixpoint iteration. Returns the labelling and the number of rounds
/// (one round = an IN step followed by an OUT step) that changed something.
pub(crate) fn grounded_labelling_masked(
    framework: &Framework,
    active: &[bool],
) -> (Labelling, usize) {
    let n = framework.len();
    let mut labels = vec![Label::Undec; n];
    let mut rounds = 0;
    loop {
        let mut changed = false;
        // IN step only reads OUT labels, OUT step only reads IN labels, so
        // updating in place is equivalent to a synchronous step.
        for x in 0..n {
            if labels[x] == Label::Undec
                && active_attackers(framework, active, x).all(|y| labels[y] == Label::Out)
            {
                labels[x] = Label::In;
                changed = true;
            }
        }
        for x in 0..n {
            if labels[x] == Label::Undec
                && active_attackers(framework, active, x).any(|y| labels[y] == Label::In)
            {
                labels[x] = Label::Out;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        rounds += 1;
    }
    (Labelling(labels), rounds)
}

/// Checks both legality conditions for every argument that is IN or OUT,
/// and the UNDEC condition (neither forced IN nor forced OUT) for the rest.
pub fn check_complete(framework: &Framework, labelling: &Labelling) -> Result<(), Error> {
    check_complete_masked(framework, &full_mask(framework), labelling)
}

pub fn check_complete_masked(
    framework: &Framework,
    active: &[bool],
    labelling: &Labelling,
) -> Result<(), Error> {
    if labelling.len() != framework.len() {
        return Err(Error::LabellingSize {
            expected: framework.len(),
            got: labelling.len(),
        });
    }
    for x in 0..framework.len() {
        let some_in = active_attackers(framework, active, x).any(|y| labelling.get(y) == Label::In);
        let all_out =
            active_attackers(framework, active, x).all(|y| labelling.get(y) == Label::Out);
        let ok = match labelling.get(x) {
            Label::In => all_out,
            Label::Out => some_in,
            Label::Undec => !all_out && !some_in,
        };
        if !ok {
            return Err(Error::IllegalLabelling(framework.id(x).clone()));
        }
    }
    Ok(())
}

/// Lengths of a grounded labelling.
///
/// Fails if the labelling is not legal, or is legal but not grounded (some
/// IN/OUT argument has no well-founded derivation, e.g. a stable labelling
/// of an odd-free cycle).
pub fn lengths(framework: &Framework, labelling: &Labelling) -> Result<LengthMap, Error> {
    lengths_masked(framework, &full_mask(framework), labelling)
}

pub fn lengths_masked(
    framework: &Framework,
    active: &[bool],
    labelling: &Labelling,
) -> Result<LengthMap, Error> {
    check_complete_masked(framework, active, labelling)?;
    let n = framework.len();
    let mut len = vec![Length::Infinite; n];
    let mut round: u32 = 0;
    let mut idle = 0;
    while idle < 2 {
        let want = if round.is_multiple_of(2) {
            Label::In
        } else {
            Label::Out
        };
        let mut assigned = false;
        for x in 0..n {
            if labelling.get(x) != want || len[x].is_finite() {
                continue;
            }
            let ready = if want == Label::In {
                active_attackers(framework, active, x).all(|y| len[y].is_finite())
            } else {
                active_attackers(framework, active, x)
                    .any(|y| labelling.get(y) == Label::In && len[y].is_finite())
            };
            if ready {
                len[x] = Length::Finite(round);
                assigned = true;
            }
        }
        idle = if assigned { 0 } else { idle + 1 };
        round += 1;
    }
    if let Some(x) = (0..n).find(|&x| labelling.get(x) != Label::Undec && !len[x].is_finite()) {
        return Err(Error::NotGrounded(framework.id(x).clone()));
    }
    Ok(LengthMap(len))
}

/// Grounded semantics after temporarily removing the given attacks.
pub fn grounded_after_suspension(
    framework: &Framework,
    suspended: &[Attack],
) -> Result<GroundedResult, Error> {
    let edges = framework.resolve_attacks(suspended)?;
    Ok(grounded_masked(
        framework,
        &suspension_mask(framework, &edges),
    ))
}
