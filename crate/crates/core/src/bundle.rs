//! Versioned, serializable onboarding bundle shared with viewers and editors.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::BundleError;
use crate::features::FeatureKey;
use crate::model::{ChartType, Grammar};
use crate::onboarding::{placeholders, NavConfig, OnboardingMessage, OnboardingStage, OnboardingState};

pub const SCHEMA_VERSION: &str = "visahoi-bundle/1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChartInfo {
    pub grammar: Grammar,
    pub chart_type: ChartType,
    pub width: f64,
    pub height: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OnboardingBundle {
    pub schema_version: String,
    pub context_key: String,
    pub chart: ChartInfo,
    pub stages: Vec<OnboardingStage>,
    pub messages: Vec<OnboardingMessage>,
    pub nav: NavConfig,
    pub marker_numbers: bool,
}

impl OnboardingBundle {
    pub fn from_state(state: &OnboardingState, chart: ChartInfo) -> Self {
        OnboardingBundle {
            schema_version: SCHEMA_VERSION.to_string(),
            context_key: state.context_key.clone(),
            chart,
            stages: state.stages.clone(),
            messages: state.messages.clone(),
            nav: state.nav,
            marker_numbers: state.marker_numbers,
        }
    }

    pub fn to_state(&self) -> OnboardingState {
        let next_index = self
            .messages
            .iter()
            .filter_map(|m| m.id.rsplit('-').next()?.parse::<usize>().ok())
            .max()
            .map_or(0, |i| i + 1);
        OnboardingState {
            context_key: self.context_key.clone(),
            stages: self.stages.clone(),
            messages: self.messages.clone(),
            nav: self.nav,
            marker_numbers: self.marker_numbers,
            next_index,
        }
    }

    pub fn stage(&self, id: &str) -> Option<&OnboardingStage> {
        self.stages.iter().find(|s| s.id == id)
    }
}

/// Canonical JSON: sorted keys, two-space indent, trailing newline.
pub fn serialize_bundle(bundle: &OnboardingBundle) -> String {
    let value = serde_json::to_value(bundle).expect("bundle is always representable as JSON");
    let mut out = serde_json::to_string_pretty(&value).expect("JSON value serializes");
    out.push('\n');
    out
}

/// Parses a bundle, checking the schema version first and stage references last.
pub fn parse_bundle(text: &str) -> Result<OnboardingBundle, BundleError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| BundleError::Json(e.to_string()))?;
    let found = value.get("schemaVersion").and_then(|v| v.as_str());
    if found != Some(SCHEMA_VERSION) {
        return Err(BundleError::SchemaVersionMismatch {
            expected: SCHEMA_VERSION.to_string(),
            found: found.map_or_else(|| "<missing>".to_string(), str::to_string),
        });
    }
    let bundle: OnboardingBundle = serde_json::from_value(value).map_err(|e| BundleError::Json(e.to_string()))?;
    if let Some(m) = bundle.messages.iter().find(|m| bundle.stage(&m.stage_id).is_none()) {
        return Err(BundleError::DanglingStageRef { message_id: m.id.clone(), stage_id: m.stage_id.clone() });
    }
    Ok(bundle)
}

/// All invariant violations in `bundle`; empty when valid.
pub fn validate_bundle(bundle: &OnboardingBundle) -> Vec<String> {
    let mut out = Vec::new();
    if bundle.schema_version != SCHEMA_VERSION {
        out.push(format!("schemaVersion is `{}`, expected `{SCHEMA_VERSION}`", bundle.schema_version));
    }
    let (w, h) = (bundle.chart.width, bundle.chart.height);
    if !(w.is_finite() && h.is_finite() && w > 0.0 && h > 0.0) {
        out.push(format!("chart dimensions must be positive, got {w}x{h}"));
    }
    let mut stage_ids = HashSet::new();
    let mut stage_orders = HashSet::new();
    for s in &bundle.stages {
        if !stage_ids.insert(s.id.as_str()) {
            out.push(format!("duplicate stage id `{}`", s.id));
        }
        if !stage_orders.insert(s.order) {
            out.push(format!("duplicate stage order {}", s.order));
        }
    }
    let mut message_ids = HashSet::new();
    let mut marker_ids = HashSet::new();
    for m in &bundle.messages {
        if !message_ids.insert(m.id.as_str()) {
            out.push(format!("duplicate message id `{}`", m.id));
        }
        if !marker_ids.insert(m.marker_id.as_str()) {
            out.push(format!("duplicate marker id `{}`", m.marker_id));
        }
        if !stage_ids.contains(m.stage_id.as_str()) {
            out.push(format!("message `{}` references missing stage `{}`", m.id, m.stage_id));
        }
        let suffix = |id: &str, prefix: &str| id.strip_prefix(prefix).map(str::to_string);
        if suffix(&m.id, "visahoi-message-") != suffix(&m.marker_id, "visahoi-marker-") {
            out.push(format!("message `{}` and marker `{}` do not pair", m.id, m.marker_id));
        }
        if m.text.trim().is_empty() {
            out.push(format!("message `{}` has empty text", m.id));
        }
        for name in placeholders(&m.text).into_iter().chain(placeholders(&m.title)) {
            if name.parse::<FeatureKey>().is_ok() {
                out.push(format!("message `{}` has unexpanded placeholder `{{{name}}}`", m.id));
            }
        }
        if let Err(e) = m.anchor.validate() {
            out.push(format!("message `{}` has an invalid anchor: {e}", m.id));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::onboarding::create_basic_message;
    use crate::svg::AnchorDirective;

    fn bundle() -> OnboardingBundle {
        let mut s = OnboardingState::new("k");
        create_basic_message(&mut s, "Hello <b>there</b>", "Reading", "reading", AnchorDirective::Coords { x: 1.5, y: 2.0 }, 1).unwrap();
        let chart = ChartInfo { grammar: Grammar::Plotly, chart_type: ChartType::BarChart, width: 700.0, height: 450.0 };
        OnboardingBundle::from_state(&s, chart)
    }

    #[test]
    fn round_trip() {
        let b = bundle();
        let text = serialize_bundle(&b);
        assert!(text.ends_with("}\n"));
        let back = parse_bundle(&text).unwrap();
        assert_eq!(back, b);
        assert_eq!(serialize_bundle(&back), text);
        assert!(validate_bundle(&b).is_empty());
    }

    #[test]
    fn keys_are_sorted() {
        let text = serialize_bundle(&bundle());
        let chart = text.find("\"chart\"").unwrap();
        let context = text.find("\"contextKey\"").unwrap();
        let schema = text.find("\"schemaVersion\"").unwrap();
        assert!(chart < context && context < schema);
    }

    #[test]
    fn schema_mismatch() {
        let text = serialize_bundle(&bundle()).replace("visahoi-bundle/1", "visahoi-bundle/2");
        assert_eq!(
            parse_bundle(&text),
            Err(BundleError::SchemaVersionMismatch { expected: SCHEMA_VERSION.into(), found: "visahoi-bundle/2".into() })
        );
        assert!(matches!(parse_bundle("{}"), Err(BundleError::SchemaVersionMismatch { .. })));
        assert!(matches!(parse_bundle("{"), Err(BundleError::Json(_))));
    }

    #[test]
    fn dangling_stage() {
        let mut b = bundle();
        b.messages[0].stage_id = "gone".into();
        assert!(matches!(parse_bundle(&serialize_bundle(&b)), Err(BundleError::DanglingStageRef { .. })));
        assert!(!validate_bundle(&b).is_empty());
    }

    #[test]
    fn violations() {
        let mut b = bundle();
        b.messages.push(b.messages[0].clone());
        b.messages[0].text = "Value {maxValue}".into();
        b.chart.width = 0.0;
        let v = validate_bundle(&b);
        assert!(v.iter().any(|s| s.contains("duplicate message id")));
        assert!(v.iter().any(|s| s.contains("unexpanded")));
        assert!(v.iter().any(|s| s.contains("dimensions")));
    }

    #[test]
    fn state_round_trip_keeps_next_index() {
        let b = bundle();
        assert_eq!(b.to_state().next_index, 1);
    }
}
