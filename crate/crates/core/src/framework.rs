//! Framework data model: arguments, attacks and optional legal annotations.
//!
//! A [`Framework`] is immutable once built. Arguments and attacks are kept in
//! declaration order, and every downstream computation refers to them by
//! their position (argument index, attack index) in that order.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::FrameworkError;

/// Upper bound on the number of arguments accepted in one framework.
pub const MAX_ARGUMENTS: usize = 10_000;
/// Upper bound on the number of attacks accepted in one framework.
pub const MAX_ATTACKS: usize = 100_000;

/// Characters that may not appear in an argument name.
///
/// `(`, `)`, `,` and `.` delimit APX statements; `%` starts an APX comment.
const RESERVED: &[char] = &['(', ')', ',', '.', '%'];

/// Name of an argument. Non-empty, no whitespace, no reserved punctuation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ArgumentId(String);

impl ArgumentId {
    pub fn new(name: impl Into<String>) -> Result<Self, FrameworkError> {
        let name = name.into();
        if name.is_empty()
            || name == "#"
            || name
                .chars()
                .any(|c| c.is_whitespace() || RESERVED.contains(&c))
        {
            return Err(FrameworkError::InvalidId(name));
        }
        Ok(ArgumentId(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for ArgumentId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ArgumentId::new(s).map_err(serde::de::Error::custom)
    }
}

/// Human-readable gloss attached to an argument, with an optional link to
/// a page with details.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub url: Option<String>,
}

impl Annotation {
    pub fn new(text: impl Into<String>, url: Option<String>) -> Result<Self, FrameworkError> {
        let annotation = Annotation {
            text: text.into(),
            url,
        };
        annotation.validate()?;
        Ok(annotation)
    }

    pub fn text(text: impl Into<String>) -> Result<Self, FrameworkError> {
        Self::new(text, None)
    }

    pub(crate) fn validate(&self) -> Result<(), FrameworkError> {
        match &self.url {
            None if self.text.is_empty() => Err(FrameworkError::EmptyAnnotation),
            Some(u) => match url::Url::parse(u) {
                Ok(_) => Ok(()),
                Err(_) => Err(FrameworkError::InvalidUrl(u.clone())),
            },
            None => Ok(()),
        }
    }
}

/// A declared argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Argument {
    pub id: ArgumentId,
    pub annotation: Option<Annotation>,
}

/// A directed attack `source -> target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Attack {
    pub source: ArgumentId,
    pub target: ArgumentId,
}

impl Attack {
    pub fn new(source: ArgumentId, target: ArgumentId) -> Self {
        Attack { source, target }
    }

    /// Convenience constructor from raw names.
    pub fn parse(source: &str, target: &str) -> Result<Self, FrameworkError> {
        Ok(Attack {
            source: ArgumentId::new(source)?,
            target: ArgumentId::new(target)?,
        })
    }
}

impl fmt::Display for Attack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.source, self.target)
    }
}

/// Index of an argument in declaration order.
pub type ArgIdx = usize;
/// Index of an attack in declaration order.
pub type EdgeIdx = usize;

/// An abstract argumentation framework `(V, E)`.
#[derive(Debug, Clone)]
pub struct Framework {
    arguments: Vec<Argument>,
    index: HashMap<ArgumentId, ArgIdx>,
    edges: Vec<(ArgIdx, ArgIdx)>,
    edge_index: HashMap<(ArgIdx, ArgIdx), EdgeIdx>,
    /// Incoming attack indices per argument.
    incoming: Vec<Vec<EdgeIdx>>,
    /// Outgoing attack indices per argument.
    outgoing: Vec<Vec<EdgeIdx>>,
}

impl PartialEq for Framework {
    fn eq(&self, other: &Self) -> bool {
        self.arguments == other.arguments && self.edges == other.edges
    }
}

impl Eq for Framework {}

impl Default for Framework {
    fn default() -> Self {
        FrameworkBuilder::new().build()
    }
}

impl Framework {
    pub fn builder() -> FrameworkBuilder {
        FrameworkBuilder::new()
    }

    /// Builds a framework from bare names. Mostly useful in tests.
    pub fn from_names<'a>(
        arguments: impl IntoIterator<Item = &'a str>,
        attacks: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, FrameworkError> {
        let mut b = FrameworkBuilder::new();
        for a in arguments {
            b.add_argument(ArgumentId::new(a)?, None)?;
        }
        for (s, t) in attacks {
            b.add_attack(&ArgumentId::new(s)?, &ArgumentId::new(t)?)?;
        }
        Ok(b.build())
    }

    pub fn len(&self) -> usize {
        self.arguments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arguments.is_empty()
    }

    pub fn attack_count(&self) -> usize {
        self.edges.len()
    }

    pub fn arguments(&self) -> &[Argument] {
        &self.arguments
    }

    pub fn argument(&self, idx: ArgIdx) -> &Argument {
        &self.arguments[idx]
    }

    pub fn id(&self, idx: ArgIdx) -> &ArgumentId {
        &self.arguments[idx].id
    }

    pub fn index_of(&self, id: &ArgumentId) -> Option<ArgIdx> {
        self.index.get(id).copied()
    }

    pub fn index_of_name(&self, name: &str) -> Option<ArgIdx> {
        ArgumentId::new(name).ok().and_then(|id| self.index_of(&id))
    }

    /// Attacks as `(source, target)` index pairs, in declaration order.
    pub fn edges(&self) -> &[(ArgIdx, ArgIdx)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeIdx) -> (ArgIdx, ArgIdx) {
        self.edges[e]
    }

    pub fn attack(&self, e: EdgeIdx) -> Attack {
        let (s, t) = self.edges[e];
        Attack::new(self.id(s).clone(), self.id(t).clone())
    }

    pub fn attacks(&self) -> impl Iterator<Item = Attack> + '_ {
        (0..self.edges.len()).map(|e| self.attack(e))
    }

    pub fn edge_index(&self, source: ArgIdx, target: ArgIdx) -> Option<EdgeIdx> {
        self.edge_index.get(&(source, target)).copied()
    }

    /// Resolves an attack given by names to its index.
    pub fn find_attack(&self, attack: &Attack) -> Option<EdgeIdx> {
        let s = self.index_of(&attack.source)?;
        let t = self.index_of(&attack.target)?;
        self.edge_index(s, t)
    }

    /// Resolves a set of attacks to sorted, deduplicated edge indices.
    pub fn resolve_attacks<'a>(
        &self,
        attacks: impl IntoIterator<Item = &'a Attack>,
    ) -> Result<Vec<EdgeIdx>, FrameworkError> {
        let mut out = attacks
            .into_iter()
            .map(|a| {
                self.find_attack(a)
                    .ok_or_else(|| FrameworkError::UnknownAttack(a.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Attack indices whose target is `idx`.
    pub fn incoming(&self, idx: ArgIdx) -> &[EdgeIdx] {
        &self.incoming[idx]
    }

    /// Attack indices whose source is `idx`.
    pub fn outgoing(&self, idx: ArgIdx) -> &[EdgeIdx] {
        &self.outgoing[idx]
    }

    pub fn attackers(&self, idx: ArgIdx) -> impl Iterator<Item = ArgIdx> + '_ {
        self.incoming[idx].iter().map(move |&e| self.edges[e].0)
    }

    pub fn targets(&self, idx: ArgIdx) -> impl Iterator<Item = ArgIdx> + '_ {
        self.outgoing[idx].iter().map(move |&e| self.edges[e].1)
    }

    /// Copy of this framework without the given attacks.
    pub fn without_attacks(&self, suspended: &[EdgeIdx]) -> Framework {
        let skip: HashSet<EdgeIdx> = suspended.iter().copied().collect();
        let mut b = FrameworkBuilder::new();
        for a in &self.arguments {
            b.push_argument(a.clone());
        }
        for (e, &(s, t)) in self.edges.iter().enumerate() {
            if !skip.contains(&e) {
                b.push_edge(s, t);
            }
        }
        b.build()
    }
}

/// Incremental, validating constructor for [`Framework`].
#[derive(Debug, Default)]
pub struct FrameworkBuilder {
    arguments: Vec<Argument>,
    index: HashMap<ArgumentId, ArgIdx>,
    edges: Vec<(ArgIdx, ArgIdx)>,
    edge_index: HashMap<(ArgIdx, ArgIdx), EdgeIdx>,
}

impl FrameworkBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_argument(
        &mut self,
        id: ArgumentId,
        annotation: Option<Annotation>,
    ) -> Result<ArgIdx, FrameworkError> {
        if self.index.contains_key(&id) {
            return Err(FrameworkError::DuplicateArgument(id));
        }
        if self.arguments.len() >= MAX_ARGUMENTS {
            return Err(FrameworkError::TooManyArguments(MAX_ARGUMENTS));
        }
        if let Some(a) = &annotation {
            a.validate()?;
        }
        Ok(self.push_argument(Argument { id, annotation }))
    }

    pub fn add_attack(
        &mut self,
        source: &ArgumentId,
        target: &ArgumentId,
    ) -> Result<EdgeIdx, FrameworkError> {
        let s = *self
            .index
            .get(source)
            .ok_or_else(|| FrameworkError::UndeclaredArgument(source.clone()))?;
        let t = *self
            .index
            .get(target)
            .ok_or_else(|| FrameworkError::UndeclaredArgument(target.clone()))?;
        if self.edge_index.contains_key(&(s, t)) {
            return Err(FrameworkError::DuplicateAttack(Attack::new(
                source.clone(),
                target.clone(),
            )));
        }
        if self.edges.len() >= MAX_ATTACKS {
            return Err(FrameworkError::TooManyAttacks(MAX_ATTACKS));
        }
        Ok(self.push_edge(s, t))
    }

    fn push_argument(&mut self, argument: Argument) -> ArgIdx {
        let idx = self.arguments.len();
        self.index.insert(argument.id.clone(), idx);
        self.arguments.push(argument);
        idx
    }

    fn push_edge(&mut self, s: ArgIdx, t: ArgIdx) -> EdgeIdx {
        let e = self.edges.len();
        self.edge_index.insert((s, t), e);
        self.edges.push((s, t));
        e
    }

    pub fn build(self) -> Framework {
        let n = self.arguments.len();
        let mut incoming = vec![Vec::new(); n];
        let mut outgoing = vec![Vec::new(); n];
        for (e, &(s, t)) in self.edges.iter().enumerate() {
            outgoing[s].push(e);
            incoming[t].push(e);
        }
        Framework {
            arguments: self.arguments,
            index: self.index,
            edges: self.edges,
            edge_index: self.edge_index,
            incoming,
            outgoing,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_reject_reserved_characters() {
        for bad in ["", "a b", "a(", "a)", "a,b", "F.4", "x%", "#", "\t"] {
            assert!(ArgumentId::new(bad).is_err(), "{bad:?} accepted");
        }
        for good in ["a", "M", "arg_1", "Ω", "#x", "a-b"] {
            assert!(ArgumentId::new(good).is_ok(), "{good:?} rejected");
        }
    }

    #[test]
    fn ids_are_case_sensitive() {
        let f = Framework::from_names(["m", "M"], [("m", "M")]).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.index_of_name("M"), Some(1));
    }

    #[test]
    fn duplicates_rejected() {
        assert!(matches!(
            Framework::from_names(["a", "a"], []),
            Err(FrameworkError::DuplicateArgument(_))
        ));
        assert!(matches!(
            Framework::from_names(["a", "b"], [("a", "b"), ("a", "b")]),
            Err(FrameworkError::DuplicateAttack(_))
        ));
    }

    #[test]
    fn self_attacks_allowed() {
        let f = Framework::from_names(["a"], [("a", "a")]).unwrap();
        assert_eq!(f.attackers(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn annotation_rules() {
        assert!(Annotation::text("").is_err());
        assert!(Annotation::new("", Some("https://example.org/m".into())).is_ok());
        assert!(Annotation::new("x", Some("not a url".into())).is_err());
    }

    #[test]
    fn without_attacks_keeps_original() {
        let f = Framework::from_names(["m", "o"], [("m", "o"), ("o", "m")]).unwrap();
        let g = f.without_attacks(&[1]);
        assert_eq!(f.attack_count(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
    }
}
