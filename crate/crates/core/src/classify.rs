//! Attack classification by semantic role.
//!
//! | attacker | target | lengths                      | class     |
//! |----------|--------|------------------------------|-----------|
//! | IN       | OUT    | `len(target) = len(src) + 1` | primary   |
//! | IN       | OUT    | `len(target) < len(src) + 1` | secondary |
//! | OUT      | IN     |                              | refuted   |
//! | OUT      | OUT    |                              | blunder   |
//! | OUT      | UNDEC  |                              | blunder   |
//! | UNDEC    | UNDEC  |                              | contested |
//! | UNDEC    | OUT    |                              | moot      |
//!
//! IN->IN, IN->UNDEC and UNDEC->IN cannot occur in a legal labelling.
//!
//! A refuted attack fails, but the defeat of its attacker is part of the
//! target's justification: the target's length depends on it. Blunders and
//! secondary attacks can be deleted without changing any decided label or
//! length.

use std::fmt;

use serde_json::Value;

use crate::error::Error;
use crate::framework::{EdgeIdx, Framework};
use crate::grounded::{check_complete_masked, full_mask, Label, Labelling, Length, LengthMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    Primary,
    Secondary,
    Refuted,
    Blunder,
    Contested,
    Moot,
}

impl EdgeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeClass::Primary => "primary",
            EdgeClass::Secondary => "secondary",
            EdgeClass::Refuted => "refuted",
            EdgeClass::Blunder => "blunder",
            EdgeClass::Contested => "contested",
            EdgeClass::Moot => "moot",
        }
    }
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Class of every attack, indexed by attack position. Suspended attacks
/// have no class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClassification {
    classes: Vec<Option<EdgeClass>>,
}

impl EdgeClassification {
    pub fn class(&self, e: EdgeIdx) -> Option<EdgeClass> {
        self.classes[e]
    }

    pub fn is_suspended(&self, e: EdgeIdx) -> bool {
        self.classes[e].is_none()
    }

    pub fn classes(&self) -> &[Option<EdgeClass>] {
        &self.classes
    }

    pub fn suspended(&self) -> impl Iterator<Item = EdgeIdx> + '_ {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(|(e, _)| e)
    }

    pub fn with_class(&self, class: EdgeClass) -> impl Iterator<Item = EdgeIdx> + '_ {
        self.classes
            .iter()
            .enumerate()
            .filter(move |(_, c)| **c == Some(class))
            .map(|(e, _)| e)
    }

    /// `{"edges":[{"source","target","class"}],"suspended":[[s,t]]}`
    pub fn to_json(&self, framework: &Framework) -> Value {
        let mut edges = Vec::new();
        let mut suspended = Vec::new();
        for (e, class) in self.classes.iter().enumerate() {
            let att = framework.attack(e);
            match class {
                Some(c) => edges.push(serde_json::json!({
                    "source": att.source.as_str(),
                    "target": att.target.as_str(),
                    "class": c.as_str(),
                })),
                None => suspended.push(serde_json::json!([
                    att.source.as_str(),
                    att.target.as_str()
                ])),
            }
        }
        serde_json::json!({ "edges": edges, "suspended": suspended })
    }
}

pub fn classify_edges(
    framework: &Framework,
    labelling: &Labelling,
    lengths: &LengthMap,
) -> Result<EdgeClassification, Error> {
    classify_edges_masked(framework, &full_mask(framework), labelling, lengths)
}

/// Classifies active attacks; inactive ones are reported as suspended.
pub fn classify_edges_masked(
    framework: &Framework,
    active: &[bool],
    labelling: &Labelling,
    lengths: &LengthMap,
) -> Result<EdgeClassification, Error> {
    check_complete_masked(framework, active, labelling)?;
    if lengths.len() != framework.len() {
        return Err(Error::LabellingSize {
            expected: framework.len(),
            got: lengths.len(),
        });
    }
    for x in 0..framework.len() {
        let ok = match (labelling.get(x), lengths.get(x)) {
            (Label::Undec, Length::Infinite) => true,
            (Label::In, Length::Finite(n)) => n % 2 == 0,
            (Label::Out, Length::Finite(n)) => n % 2 == 1,
            _ => false,
        };
        if !ok {
            return Err(Error::InconsistentLengths(framework.id(x).clone()));
        }
    }
    let mut classes = Vec::with_capacity(framework.attack_count());
    for (e, &(s, t)) in framework.edges().iter().enumerate() {
        if !active[e] {
            classes.push(None);
            continue;
        }
        let class = match (labelling.get(s), labelling.get(t)) {
            (Label::In, Label::Out) => {
                let (Length::Finite(ls), Length::Finite(lt)) = (lengths.get(s), lengths.get(t))
                else {
                    unreachable!("parity check guarantees finite lengths");
                };
                if lt == ls + 1 {
                    EdgeClass::Primary
                } else if lt < ls + 1 {
                    EdgeClass::Secondary
                } else {
                    // target defeated later than its earliest IN attacker allows
                    return Err(Error::InconsistentLengths(framework.id(t).clone()));
                }
            }
            (Label::Out, Label::In) => EdgeClass::Refuted,
            (Label::Out, _) => EdgeClass::Blunder,
            (Label::Undec, Label::Undec) => EdgeClass::Contested,
            (Label::Undec, Label::Out) => EdgeClass::Moot,
            _ => unreachable!("excluded by the legality check"),
        };
        classes.push(Some(class));
    }
    Ok(EdgeClassification { classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grounded::{grounded, grounded_masked, suspension_mask};
    use EdgeClass::*;

    fn fw(args: &[&'static str], atts: &[(&'static str, &'static str)]) -> Framework {
        Framework::from_names(args.iter().copied(), atts.iter().copied()).unwrap()
    }

    fn classes(f: &Framework) -> Vec<Option<EdgeClass>> {
        let g = grounded(f);
        classify_edges(f, &g.labelling, &g.lengths)
            .unwrap()
            .classes()
            .to_vec()
    }

    #[test]
    fn chain() {
        let f = fw(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert_eq!(classes(&f), vec![Some(Primary), Some(Refuted)]);
    }

    #[test]
    fn back_edge_is_secondary() {
        let f = fw(
            &["v", "b", "c", "d", "f"],
            &[("v", "b"), ("b", "c"), ("c", "d"), ("d", "f"), ("f", "b")],
        );
        assert_eq!(
            classes(&f),
            vec![
                Some(Primary),
                Some(Refuted),
                Some(Primary),
                Some(Refuted),
                Some(Secondary)
            ]
        );
    }

    #[test]
    fn mutual_attack_contested() {
        let f = fw(&["m", "o"], &[("m", "o"), ("o", "m")]);
        assert_eq!(classes(&f), vec![Some(Contested), Some(Contested)]);
    }

    #[test]
    fn undec_attacker_of_out_target_is_moot() {
        let f = fw(&["a", "b", "c"], &[("a", "a"), ("a", "c"), ("b", "c")]);
        assert_eq!(
            classes(&f),
            vec![Some(Contested), Some(Moot), Some(Primary)]
        );
    }

    #[test]
    fn mutual_attack_after_suspension() {
        let f = fw(&["m", "o"], &[("m", "o"), ("o", "m")]);
        let mask = suspension_mask(&f, &[1]);
        let g = grounded_masked(&f, &mask);
        let c = classify_edges_masked(&f, &mask, &g.labelling, &g.lengths).unwrap();
        assert_eq!(c.classes(), &[Some(Primary), None]);
        assert_eq!(c.suspended().collect::<Vec<_>>(), vec![1]);
        // the stable labelling classified with its suspension-derived lengths,
        // keeping the suspended edge: attacker o is OUT, target m IN
        let c = classify_edges(&f, &g.labelling, &g.lengths).unwrap();
        assert_eq!(c.classes(), &[Some(Primary), Some(Refuted)]);
    }

    #[test]
    fn attacks_from_out_arguments() {
        // a -> b, b -> c (refuted), b -> d (blunder onto OUT), e -> d, b -> u, u <-> w
        let f = fw(
            &["a", "b", "c", "d", "e", "u", "w"],
            &[
                ("a", "b"),
                ("b", "c"),
                ("b", "d"),
                ("e", "d"),
                ("b", "u"),
                ("u", "w"),
                ("w", "u"),
            ],
        );
        assert_eq!(
            classes(&f),
            vec![
                Some(Primary),
                Some(Refuted),
                Some(Blunder),
                Some(Primary),
                Some(Blunder),
                Some(Contested),
                Some(Contested)
            ]
        );
    }

    #[test]
    fn inconsistent_inputs_rejected() {
        let f = fw(&["a", "b"], &[("a", "b")]);
        let g = grounded(&f);
        let bad = LengthMap::new(vec![Length::Finite(0), Length::Finite(2)]);
        assert!(classify_edges(&f, &g.labelling, &bad).is_err());
        let late = LengthMap::new(vec![Length::Finite(0), Length::Finite(3)]);
        assert!(matches!(
            classify_edges(&f, &g.labelling, &late),
            Err(Error::InconsistentLengths(_))
        ));
        let illegal = Labelling::new(vec![Label::In, Label::In]);
        assert!(classify_edges(&f, &illegal, &g.lengths).is_err());
    }
}
