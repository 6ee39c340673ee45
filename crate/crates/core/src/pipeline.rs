//! End-to-end generation: spec (+ optional SVG and patch) to bundle.

use thiserror::Error;

use crate::adapters::{detect_chart_type, parse_spec};
use crate::bundle::{ChartInfo, OnboardingBundle};
use crate::error::{AdapterError, OnboardingError, SvgError};
use crate::features::extract_features;
use crate::model::{ChartType, Grammar};
use crate::onboarding::{
    apply_customization, generate_messages, ContextRegistry, CustomizationPatch, TemplateCatalog,
};
use crate::svg::{parse_svg, resolve_anchor, AnchorResolution};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Adapter(#[from] AdapterError),
    #[error(transparent)]
    Svg(#[from] SvgError),
    #[error(transparent)]
    Onboarding(#[from] OnboardingError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub code: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct GenerateOptions<'a> {
    pub chart_type: Option<ChartType>,
    pub svg: Option<&'a str>,
    pub context_key: Option<&'a str>,
    pub patch: Option<&'a CustomizationPatch>,
    /// Overrides the built-in catalog for the chart types it lists.
    pub templates: Option<&'a TemplateCatalog>,
}

#[derive(Debug, Clone)]
pub struct GenerateOutput {
    pub bundle: OnboardingBundle,
    pub warnings: Vec<Warning>,
    /// Messages dropped because their anchor could not be placed in the SVG.
    pub unresolved: usize,
}

pub fn generate(grammar: Grammar, spec: &str, opts: &GenerateOptions) -> Result<GenerateOutput, PipelineError> {
    let mut model = parse_spec(grammar, spec)?;
    let doc = opts.svg.map(parse_svg).transpose()?;
    if let Some(doc) = &doc {
        model.width = Some(doc.width());
        model.height = Some(doc.height());
    }
    let chart_type = detect_chart_type(&model, opts.chart_type);
    let extraction = extract_features(&model, chart_type);

    let mut warnings = Vec::new();
    let templates = opts
        .templates
        .and_then(|c| c.templates(chart_type))
        .or_else(|| TemplateCatalog::builtin().templates(chart_type))
        .unwrap_or_default();
    if templates.is_empty() {
        warnings.push(Warning { code: "no-templates", message: format!("no message templates for chart type `{chart_type}`") });
    }

    let mut registry = ContextRegistry::new();
    let key = registry.register_context(opts.context_key);
    let mut state = registry.state(&key).cloned().expect("just registered");
    state.messages = generate_messages(&extraction, templates, &state.stages, &key)?;
    state.next_index = templates.len();

    if let Some(patch) = opts.patch {
        let (next, report) = apply_customization(&state, patch);
        for issue in report.issues {
            warnings.push(Warning { code: "patch-op-skipped", message: format!("op {} ({}): {}", issue.index, issue.op, issue.reason) });
        }
        state = next;
    }

    let mut unresolved = 0;
    if let Some(doc) = &doc {
        let mut kept = Vec::with_capacity(state.messages.len());
        for mut m in std::mem::take(&mut state.messages) {
            let reason = match resolve_anchor(doc, &m.anchor) {
                Ok(AnchorResolution::Resolved(a)) => {
                    m.resolved_anchor = Some(a);
                    kept.push(m);
                    continue;
                }
                Ok(AnchorResolution::Unresolved(why)) => why.to_string(),
                Err(e) => e.to_string(),
            };
            unresolved += 1;
            warnings.push(Warning { code: "unresolved-anchor", message: format!("dropped message `{}`: {reason}", m.id) });
        }
        state.messages = kept;
    }

    let chart = ChartInfo { grammar, chart_type, width: extraction.chart_width, height: extraction.chart_height };
    Ok(GenerateOutput { bundle: OnboardingBundle::from_state(&state, chart), warnings, unresolved })
}
