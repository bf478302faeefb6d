//! Engine for exploring abstract argumentation frameworks.
//!
//! * [`grounded`]: the grounded (skeptical) labelling and per-argument
//!   lengths that drive the layered drawing.
//! * [`semantics`]: complete, stable and preferred labellings.
//! * [`classify`]: attack classes (primary, secondary, blunder, contested, moot).
//! * [`explain`]: overlays of credulous solutions and the minimal critical
//!   attack sets whose suspension yields them as grounded labellings.
//! * [`layout`]: layered layout, DOT and layout-JSON export.
//!
//! ```
//! use arglayer_core::{formats, grounded, Label};
//!
//! let af = formats::parse_apx("arg(m). arg(o). att(m,o). att(o,m).").unwrap();
//! let s0 = grounded::grounded(&af);
//! assert_eq!(s0.labelling.labels(), &[Label::Undec, Label::Undec]);
//! ```

pub mod classify;
pub mod error;
pub mod explain;
pub mod formats;
pub mod framework;
pub mod grounded;
pub mod layout;
pub mod semantics;

pub use classify::{classify_edges, EdgeClass, EdgeClassification};
pub use error::{Error, FrameworkError, ParseError, ParseErrorKind};
pub use explain::{
    build_overlay, critical_attack_sets, explain, what_if, CancelToken, CandidateMode,
    CriticalAttackSet, CriticalSearch, Explanation, Overlay, SearchBounds,
};
pub use formats::Format;
pub use framework::{
    Annotation, ArgIdx, Argument, ArgumentId, Attack, EdgeIdx, Framework, FrameworkBuilder,
};
pub use grounded::{GroundedResult, Label, Labelling, Length, LengthMap};
pub use layout::{export_dot, export_layout_json, layered_layout, layout_json, Layout, View};
pub use semantics::{enumerate, solution, Semantics, SolutionSet};
