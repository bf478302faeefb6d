//! Browser bindings for the demo page in `www/`.
//!
//! An [`Explorer`] holds one parsed framework and answers three questions,
//! each as layout JSON ready for drawing: the grounded layout, a stable
//! solution with one of its critical attack sets, and the grounded layout
//! after suspending arbitrary attacks.

use arglayer_core::explain::explain_target;
use arglayer_core::formats::{self, Format};
use arglayer_core::grounded::grounded;
use arglayer_core::layout::{export_dot, layout_json, View};
use arglayer_core::semantics::enumerate;
use arglayer_core::{
    Attack, CancelToken, CandidateMode, Explanation, Framework, GroundedResult, SearchBounds,
    Semantics, SolutionSet,
};
use serde::Deserialize;
use wasm_bindgen::prelude::*;

/// Engine state behind the JavaScript class; usable natively for tests.
#[derive(Debug)]
pub struct Demo {
    framework: Framework,
    base: GroundedResult,
    stable: SolutionSet,
    explanations: Vec<Option<Explanation>>,
}

#[derive(Deserialize)]
struct Suspend {
    suspend: Vec<(String, String)>,
}

fn to_string(v: &serde_json::Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

impl Demo {
    /// `format` is `apx`, `tgf`, `json` or empty for sniffing.
    pub fn load(text: &str, format: &str) -> Result<Demo, String> {
        let format = if format.is_empty() {
            Format::sniff(text)
        } else {
            format.parse()?
        };
        let framework = formats::parse(text, format).map_err(|e| e.to_string())?;
        let base = grounded(&framework);
        let stable = enumerate(&framework, Semantics::Stable);
        let explanations = vec![None; stable.len()];
        Ok(Demo {
            framework,
            base,
            stable,
            explanations,
        })
    }

    pub fn framework(&self) -> &Framework {
        &self.framework
    }

    pub fn grounded_layout(&self) -> String {
        to_string(&layout_json(
            &self.framework,
            &View::from_grounded(&self.framework, self.base.clone()),
        ))
    }

    pub fn solutions(&self) -> String {
        to_string(&self.stable.to_json(&self.framework))
    }

    fn explanation(&mut self, index: usize) -> Result<&Explanation, String> {
        let target = self.stable.get(index).map_err(|e| e.to_string())?;
        if self.explanations[index].is_none() {
            let e = explain_target(
                &self.framework,
                &self.base,
                target,
                index,
                CandidateMode::Failing,
                SearchBounds::default(),
                &CancelToken::new(),
            )
            .map_err(|e| e.to_string())?;
            self.explanations[index] = Some(e);
        }
        Ok(self.explanations[index].as_ref().unwrap())
    }

    pub fn explain(&mut self, index: usize) -> Result<String, String> {
        let e = self.explanation(index)?.clone();
        Ok(to_string(&e.to_json(&self.framework)))
    }

    fn solution_view(&mut self, index: usize, delta: Option<usize>) -> Result<View, String> {
        let e = self.explanation(index)?.clone();
        let view = match delta {
            None => View::solution(&self.framework, &self.base, &e.overlay.target),
            Some(j) => {
                let critical = e
                    .critical
                    .sets
                    .get(j)
                    .ok_or_else(|| format!("critical set {j} out of range"))?;
                View::resolution(&self.framework, &self.base, &e.overlay.target, critical)
            }
        };
        view.map_err(|e| e.to_string())
    }

    /// Overlay of stable solution `index`, with critical set `delta` marked
    /// when given.
    pub fn solution_layout(
        &mut self,
        index: usize,
        delta: Option<usize>,
    ) -> Result<String, String> {
        let view = self.solution_view(index, delta)?;
        Ok(to_string(&layout_json(&self.framework, &view)))
    }

    /// `request` is `{"suspend":[["x","y"],...]}`.
    pub fn what_if(&self, request: &str) -> Result<String, String> {
        let Suspend { suspend } = serde_json::from_str(request).map_err(|e| e.to_string())?;
        let attacks = suspend
            .iter()
            .map(|(x, y)| Attack::parse(x, y))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let edges = self
            .framework
            .resolve_attacks(&attacks)
            .map_err(|e| e.to_string())?;
        let view = View::what_if(&self.framework, &self.base, &edges);
        Ok(to_string(&layout_json(&self.framework, &view)))
    }

    pub fn dot(&mut self, index: Option<usize>, delta: Option<usize>) -> Result<String, String> {
        let view = match index {
            None => View::from_grounded(&self.framework, self.base.clone()),
            Some(i) => self.solution_view(i, delta)?,
        };
        Ok(export_dot(&self.framework, &view))
    }
}

#[wasm_bindgen]
pub struct Explorer(Demo);

#[wasm_bindgen]
impl Explorer {
    #[wasm_bindgen(constructor)]
    pub fn new(text: &str, format: &str) -> Result<Explorer, JsError> {
        Demo::load(text, format)
            .map(Explorer)
            .map_err(|e| JsError::new(&e))
    }

    #[wasm_bindgen(js_name = argumentCount)]
    pub fn argument_count(&self) -> usize {
        self.0.framework().len()
    }

    #[wasm_bindgen(js_name = attackCount)]
    pub fn attack_count(&self) -> usize {
        self.0.framework().attack_count()
    }

    #[wasm_bindgen(js_name = groundedLayout)]
    pub fn grounded_layout(&self) -> String {
        self.0.grounded_layout()
    }

    pub fn solutions(&self) -> String {
        self.0.solutions()
    }

    pub fn explain(&mut self, index: usize) -> Result<String, JsError> {
        self.0.explain(index).map_err(|e| JsError::new(&e))
    }

    #[wasm_bindgen(js_name = solutionLayout)]
    pub fn solution_layout(
        &mut self,
        index: usize,
        delta: Option<usize>,
    ) -> Result<String, JsError> {
        self.0
            .solution_layout(index, delta)
            .map_err(|e| JsError::new(&e))
    }

    #[wasm_bindgen(js_name = whatIf)]
    pub fn what_if(&self, request: &str) -> Result<String, JsError> {
        self.0.what_if(request).map_err(|e| JsError::new(&e))
    }

    pub fn dot(&mut self, index: Option<usize>, delta: Option<usize>) -> Result<String, JsError> {
        self.0.dot(index, delta).map_err(|e| JsError::new(&e))
    }
}
