//! Layered drawing of a labelled framework.
//!
//! Arguments with a finite length sit on the layer equal to their length;
//! UNDEC arguments go into a separate band. Within a layer, arguments are
//! ordered by one bottom-up barycenter sweep over their already placed
//! neighbours, ties broken by declaration order.

use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::classify::{classify_edges, EdgeClass, EdgeClassification};
use crate::error::Error;
use crate::explain::{build_overlay, what_if_edges, what_if_overlay, CriticalAttackSet, Overlay};
use crate::framework::{ArgIdx, EdgeIdx, Framework};
use crate::grounded::{grounded, GroundedResult, Label};

pub const COLOR_IN: &str = "#4C8BF5";
pub const COLOR_OUT: &str = "#F5A94C";
pub const COLOR_UNDEC: &str = "#F5E64C";
/// 40% alpha suffix for resolved (overlay) fills.
pub const LIGHT_ALPHA: &str = "66";
pub const COLOR_CRITICAL: &str = "#D62828";
const COLOR_GRAY: &str = "#9E9E9E";
const COLOR_CONTESTED: &str = "#B8A82A";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    /// Layer of every finite-length argument.
    pub layer: Vec<Option<u32>>,
    /// UNDEC arguments, in declaration order.
    pub band: Vec<ArgIdx>,
    /// Arguments of each layer, left to right.
    pub order: Vec<Vec<ArgIdx>>,
    pub display_names: Vec<String>,
}

pub fn layered_layout(framework: &Framework, grounded: &GroundedResult) -> Layout {
    let n = framework.len();
    let layer: Vec<Option<u32>> = (0..n).map(|x| grounded.length(x).finite()).collect();
    let band: Vec<ArgIdx> = (0..n).filter(|&x| layer[x].is_none()).collect();
    let depth = layer.iter().flatten().max().map_or(0, |&m| m as usize + 1);

    let mut order: Vec<Vec<ArgIdx>> = vec![Vec::new(); depth];
    for (x, l) in layer.iter().enumerate() {
        if let Some(l) = l {
            order[*l as usize].push(x);
        }
    }
    // normalized horizontal position of placed arguments
    let mut position: Vec<Option<f64>> = vec![None; n];
    #[allow(clippy::needless_range_loop)]
    for k in 0..depth {
        if k > 0 {
            let mut keyed: Vec<(Option<f64>, ArgIdx)> = order[k]
                .iter()
                .map(|&x| {
                    let placed: Vec<f64> = framework
                        .attackers(x)
                        .chain(framework.targets(x))
                        .filter(|&y| layer[y].is_some_and(|l| (l as usize) < k))
                        .filter_map(|y| position[y])
                        .collect();
                    let bary = (!placed.is_empty())
                        .then(|| placed.iter().sum::<f64>() / placed.len() as f64);
                    (bary, x)
                })
                .collect();
            keyed.sort_by(|(a, x), (b, y)| match (a, b) {
                (Some(a), Some(b)) => a.total_cmp(b).then(x.cmp(y)),
                (Some(_), None) => std::cmp::Ordering::Less,
                (None, Some(_)) => std::cmp::Ordering::Greater,
                (None, None) => x.cmp(y),
            });
            order[k] = keyed.into_iter().map(|(_, x)| x).collect();
        }
        let width = order[k].len() as f64;
        for (i, &x) in order[k].iter().enumerate() {
            position[x] = Some((i as f64 + 0.5) / width);
        }
    }

    let display_names = (0..n)
        .map(|x| match layer[x] {
            Some(l) => format!("{}.{}", framework.id(x), l),
            None => framework.id(x).to_string(),
        })
        .collect();
    Layout {
        layer,
        band,
        order,
        display_names,
    }
}

/// Everything needed to draw one state of the explorer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct View {
    /// Labels and lengths that drive the layering.
    pub grounded: GroundedResult,
    pub classification: EdgeClassification,
    pub overlay: Option<Overlay>,
}

impl View {
    /// The grounded labelling of the framework.
    pub fn base(framework: &Framework) -> View {
        View::from_grounded(framework, grounded(framework))
    }

    /// Base view from an already computed grounded result of `framework`.
    pub fn from_grounded(framework: &Framework, g: GroundedResult) -> View {
        let classification = classify_edges(framework, &g.labelling, &g.lengths)
            .expect("grounded results are always classifiable");
        View {
            grounded: g,
            classification,
            overlay: None,
        }
    }

    /// A stable solution drawn over the grounded layout.
    pub fn solution(
        framework: &Framework,
        base: &GroundedResult,
        target: &crate::Labelling,
    ) -> Result<View, Error> {
        let overlay = build_overlay(framework, base, target)?;
        let classification = classify_edges(framework, &base.labelling, &base.lengths)?;
        Ok(View {
            grounded: base.clone(),
            classification,
            overlay: Some(overlay),
        })
    }

    /// A stable solution together with one of its critical attack sets: the
    /// layering follows the resolution obtained by suspending the set.
    pub fn resolution(
        framework: &Framework,
        base: &GroundedResult,
        target: &crate::Labelling,
        critical: &CriticalAttackSet,
    ) -> Result<View, Error> {
        let overlay = build_overlay(framework, base, target)?;
        let (g, classification) = what_if_edges(framework, &critical.edges);
        Ok(View {
            grounded: g,
            classification,
            overlay: Some(overlay),
        })
    }

    /// Grounded semantics after an arbitrary suspension.
    pub fn what_if(framework: &Framework, base: &GroundedResult, suspended: &[EdgeIdx]) -> View {
        let (g, classification) = what_if_edges(framework, suspended);
        let overlay = what_if_overlay(base, &g);
        View {
            grounded: g,
            classification,
            overlay: Some(overlay),
        }
    }

    pub fn label(&self, x: ArgIdx) -> Label {
        match &self.overlay {
            Some(o) => o.effective.get(x),
            None => self.grounded.label(x),
        }
    }

    pub fn is_resolved(&self, x: ArgIdx) -> bool {
        self.overlay.as_ref().is_some_and(|o| o.is_resolved(x))
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn fill(label: Label) -> &'static str {
    match label {
        Label::In => COLOR_IN,
        Label::Out => COLOR_OUT,
        Label::Undec => COLOR_UNDEC,
    }
}

fn edge_style(class: Option<EdgeClass>) -> (&'static str, &'static str) {
    match class {
        Some(EdgeClass::Primary) => (COLOR_IN, "solid"),
        Some(EdgeClass::Secondary) => (COLOR_IN, "dashed"),
        Some(EdgeClass::Refuted) => (COLOR_OUT, "solid"),
        Some(EdgeClass::Blunder) => (COLOR_GRAY, "dotted"),
        Some(EdgeClass::Contested) => (COLOR_CONTESTED, "solid"),
        Some(EdgeClass::Moot) => (COLOR_GRAY, "solid"),
        None => (COLOR_CRITICAL, "bold"),
    }
}

/// Graphviz rendering of a view. Layer 0 is drawn at the bottom and the
/// UNDEC band above the topmost layer.
pub fn export_dot(framework: &Framework, view: &View) -> String {
    let layout = layered_layout(framework, &view.grounded);
    let mut out = String::new();
    out.push_str("digraph af {\n");
    out.push_str("  rankdir=BT;\n  newrank=true;\n");
    out.push_str("  node [shape=ellipse, style=filled, fontname=\"Helvetica\"];\n");
    out.push_str("  edge [constraint=false];\n");

    let mut ranks: Vec<(String, &[ArgIdx])> = layout
        .order
        .iter()
        .enumerate()
        .map(|(k, xs)| (format!("layer{k}"), xs.as_slice()))
        .collect();
    if !layout.band.is_empty() {
        ranks.push(("band".to_string(), layout.band.as_slice()));
    }
    for (name, xs) in &ranks {
        let _ = write!(
            out,
            "  {{ rank=same; \"__{name}\" [shape=point, style=invis];"
        );
        for &x in *xs {
            let _ = write!(out, " {};", quote(framework.id(x).as_str()));
        }
        out.push_str(" }\n");
    }
    for pair in ranks.windows(2) {
        let _ = writeln!(
            out,
            "  \"__{}\" -> \"__{}\" [style=invis, constraint=true];",
            pair[0].0, pair[1].0
        );
    }

    for x in 0..framework.len() {
        let label = view.label(x);
        let mut attrs = vec![format!("label={}", quote(&layout.display_names[x]))];
        if view.is_resolved(x) {
            attrs.push(format!("fillcolor=\"{}{}\"", fill(label), LIGHT_ALPHA));
            attrs.push("style=\"filled,dashed\"".to_string());
        } else {
            attrs.push(format!("fillcolor=\"{}\"", fill(label)));
        }
        if let Some(ann) = &framework.argument(x).annotation {
            if !ann.text.is_empty() {
                attrs.push(format!("tooltip={}", quote(&ann.text)));
            }
            if let Some(url) = &ann.url {
                attrs.push(format!("URL={}", quote(url)));
            }
        }
        let _ = writeln!(
            out,
            "  {} [{}];",
            quote(framework.id(x).as_str()),
            attrs.join(", ")
        );
    }

    for (e, &(s, t)) in framework.edges().iter().enumerate() {
        let (color, style) = edge_style(view.classification.class(e));
        let _ = writeln!(
            out,
            "  {} -> {} [color=\"{color}\", style={style}];",
            quote(framework.id(s).as_str()),
            quote(framework.id(t).as_str())
        );
    }
    out.push_str("}\n");
    out
}

/// Layout, labels, lengths, edge classes and overlay flags of a view.
pub fn layout_json(framework: &Framework, view: &View) -> Value {
    let layout = layered_layout(framework, &view.grounded);
    let id = |x: ArgIdx| framework.id(x).to_string();
    let ids = |xs: &[ArgIdx]| xs.iter().map(|&x| Value::from(id(x))).collect::<Vec<_>>();

    let layers: Map<String, Value> = (0..framework.len())
        .filter_map(|x| layout.layer[x].map(|l| (id(x), Value::from(l))))
        .collect();
    let display_names: Map<String, Value> = (0..framework.len())
        .map(|x| (id(x), Value::from(layout.display_names[x].clone())))
        .collect();
    let labels: Map<String, Value> = (0..framework.len())
        .map(|x| (id(x), Value::from(view.label(x).as_str())))
        .collect();
    let lengths: Map<String, Value> = (0..framework.len())
        .map(|x| (id(x), view.grounded.length(x).to_json()))
        .collect();
    let edges: Vec<Value> = framework
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(s, t))| {
            let class = view.classification.class(e);
            serde_json::json!({
                "source": id(s),
                "target": id(t),
                "class": class.map_or("suspended", EdgeClass::as_str),
                "suspended": class.is_none(),
            })
        })
        .collect();
    let resolved = view
        .overlay
        .as_ref()
        .map(|o| ids(&o.resolved))
        .unwrap_or_default();
    let annotations: Map<String, Value> = framework
        .arguments()
        .iter()
        .filter_map(|a| {
            a.annotation.as_ref().map(|ann| {
                (
                    a.id.to_string(),
                    serde_json::to_value(ann).expect("annotation"),
                )
            })
        })
        .collect();

    serde_json::json!({
        "layers": layers,
        "band": ids(&layout.band),
        "order": layout.order.iter().map(|xs| ids(xs)).collect::<Vec<_>>(),
        "display_names": display_names,
        "labels": labels,
        "lengths": lengths,
        "edges": edges,
        "resolved": resolved,
        "annotations": annotations,
    })
}

pub fn export_layout_json(framework: &Framework, view: &View) -> String {
    let mut s = serde_json::to_string_pretty(&layout_json(framework, view)).expect("layout json");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explain::{critical_attack_sets, CancelToken, CandidateMode, SearchBounds};
    use crate::Labelling;

    fn fw(args: &[&'static str], atts: &[(&'static str, &'static str)]) -> Framework {
        Framework::from_names(args.iter().copied(), atts.iter().copied()).unwrap()
    }

    #[test]
    fn chain_layers() {
        let f = fw(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let l = layered_layout(&f, &grounded(&f));
        assert_eq!(l.layer, vec![Some(0), Some(1), Some(2)]);
        assert!(l.band.is_empty());
        assert_eq!(l.order, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(l.display_names, vec!["a.0", "b.1", "c.2"]);
    }

    #[test]
    fn mutual_goes_to_band() {
        let f = fw(&["m", "o"], &[("m", "o"), ("o", "m")]);
        let l = layered_layout(&f, &grounded(&f));
        assert_eq!(l.layer, vec![None, None]);
        assert_eq!(l.band, vec![0, 1]);
        assert!(l.order.is_empty());
        assert_eq!(l.display_names, vec!["m", "o"]);
    }

    #[test]
    fn barycenter_orders_by_lower_neighbours() {
        // layer 0: p, q ; layer 1: x attacked by q, y attacked by p
        let f = fw(&["p", "q", "x", "y"], &[("q", "x"), ("p", "y")]);
        let l = layered_layout(&f, &grounded(&f));
        assert_eq!(l.order, vec![vec![0, 1], vec![3, 2]]);
    }

    #[test]
    fn single_argument_dot() {
        let f = fw(&["a"], &[]);
        let dot = export_dot(&f, &View::base(&f));
        assert!(dot.contains("{ rank=same; \"__layer0\" [shape=point, style=invis]; \"a\"; }"));
        assert!(dot.contains("\"a\" [label=\"a.0\", fillcolor=\"#4C8BF5\"];"));
    }

    #[test]
    fn chain_dot_edge_styles() {
        let f = fw(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let dot = export_dot(&f, &View::base(&f));
        assert!(dot.contains("\"a\" -> \"b\" [color=\"#4C8BF5\", style=solid];"));
        assert!(dot.contains("\"b\" -> \"c\" [color=\"#F5A94C\", style=solid];"));
        assert_eq!(dot.matches("rank=same").count(), 3);
    }

    #[test]
    fn overlay_dot_marks_critical_edge() {
        let f = fw(&["m", "o"], &[("m", "o"), ("o", "m")]);
        let base = grounded(&f);
        let target = Labelling::new(vec![Label::In, Label::Out]);
        let search = critical_attack_sets(
            &f,
            &base,
            &target,
            CandidateMode::Failing,
            SearchBounds::default(),
            &CancelToken::new(),
        )
        .unwrap();
        let view = View::resolution(&f, &base, &target, &search.sets[0]).unwrap();
        let dot = export_dot(&f, &view);
        assert!(dot
            .contains("\"m\" [label=\"m.0\", fillcolor=\"#4C8BF566\", style=\"filled,dashed\"];"));
        assert!(dot
            .contains("\"o\" [label=\"o.1\", fillcolor=\"#F5A94C66\", style=\"filled,dashed\"];"));
        assert!(dot.contains("\"o\" -> \"m\" [color=\"#D62828\", style=bold];"));

        // suspending the same edge by hand yields the same drawing
        let manual = View::what_if(&f, &base, &[1]);
        assert_eq!(export_dot(&f, &manual), dot);
        assert_eq!(layout_json(&f, &manual), layout_json(&f, &view));
    }

    #[test]
    fn layout_json_single() {
        let f = fw(&["a"], &[]);
        let v = layout_json(&f, &View::base(&f));
        assert_eq!(
            v.to_string(),
            r#"{"layers":{"a":0},"band":[],"order":[["a"]],"display_names":{"a":"a.0"},"labels":{"a":"in"},"lengths":{"a":0},"edges":[],"resolved":[],"annotations":{}}"#
        );
    }

    #[test]
    fn layout_json_overlay_without_delta() {
        let f = fw(&["m", "o"], &[("m", "o"), ("o", "m")]);
        let base = grounded(&f);
        let view = View::solution(&f, &base, &Labelling::new(vec![Label::Out, Label::In])).unwrap();
        let v = layout_json(&f, &view);
        assert_eq!(v["band"], serde_json::json!(["m", "o"]));
        assert_eq!(v["resolved"], serde_json::json!(["m", "o"]));
        assert_eq!(v["labels"], serde_json::json!({"m": "out", "o": "in"}));
        assert_eq!(v["edges"][0]["class"], "contested");
    }

    #[test]
    fn dot_quotes_ids() {
        let f = fw(&["a\"b"], &[]);
        let dot = export_dot(&f, &View::base(&f));
        assert!(dot.contains("\"a\\\"b\""));
    }
}
