use std::fmt;
use std::path::Path;

use ahoi_core::onboarding::TemplateCatalog;
use ahoi_core::pipeline::{generate, GenerateOptions};
use ahoi_core::{
    annotate_svg, apply_customization, emit_preview_html, parse_bundle, serialize_bundle, validate_bundle,
    CustomizationPatch, OnboardingBundle,
};

use crate::output::{write_atomic, Log};
use crate::Command;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Strict(usize),
    Invalid(usize),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Invalid(_) => 1,
            CliError::Strict(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Strict(_) => "strict",
            CliError::Invalid(_) => "invalid-bundle",
            CliError::Internal(_) => "internal",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Internal(m) => f.write_str(m),
            CliError::Strict(n) => write!(f, "{n} message(s) dropped for unresolved anchors"),
            CliError::Invalid(n) => write!(f, "{n} violation(s)"),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn input<E: fmt::Display>(path: &Path) -> impl Fn(E) -> CliError + '_ {
    move |e| CliError::Input(format!("{}: {e}", path.display()))
}

fn load_bundle(path: &Path) -> Result<OnboardingBundle, CliError> {
    parse_bundle(&read(path)?).map_err(input(path))
}

fn load_patch(path: &Path) -> Result<CustomizationPatch, CliError> {
    CustomizationPatch::from_json(&read(path)?).map_err(input(path))
}

pub fn run(command: Command, log: &Log) -> Result<(), CliError> {
    match command {
        Command::Generate { grammar, spec, chart_type, svg, context_key, patch, templates, strict, output } => {
            let spec_text = read(&spec)?;
            let svg_text = svg.as_deref().map(read).transpose()?;
            let patch = patch.as_deref().map(load_patch).transpose()?;
            let catalog = match &templates {
                Some(p) => Some(TemplateCatalog::from_json(&read(p)?).map_err(input(p))?),
                None => None,
            };
            let opts = GenerateOptions {
                chart_type,
                svg: svg_text.as_deref(),
                context_key: context_key.as_deref(),
                patch: patch.as_ref(),
                templates: catalog.as_ref(),
            };
            let out = generate(grammar, &spec_text, &opts).map_err(|e| CliError::Input(e.to_string()))?;
            for w in &out.warnings {
                log.warn(w.code, &w.message);
            }
            if strict && out.unresolved > 0 {
                return Err(CliError::Strict(out.unresolved));
            }
            write_atomic(&output, &serialize_bundle(&out.bundle))
        }
        Command::Annotate { bundle, svg, output } => {
            let bundle = load_bundle(&bundle)?;
            let (annotated, warnings) = annotate_svg(&read(&svg)?, &bundle).map_err(input(&svg))?;
            for w in &warnings {
                log.warn("unresolved-anchor", w);
            }
            write_atomic(&output, &annotated)
        }
        Command::Patch { bundle, patch, output } => {
            let original = load_bundle(&bundle)?;
            let patch = load_patch(&patch)?;
            let (state, report) = apply_customization(&original.to_state(), &patch);
            for issue in &report.issues {
                log.warn("patch-op-skipped", &format!("op {} ({}): {}", issue.index, issue.op, issue.reason));
            }
            let patched = OnboardingBundle::from_state(&state, original.chart);
            write_atomic(&output, &serialize_bundle(&patched))
        }
        Command::Validate { bundle } => {
            let violations = match parse_bundle(&read(&bundle)?) {
                Ok(b) => validate_bundle(&b),
                Err(e) => vec![e.to_string()],
            };
            for v in &violations {
                println!("{v}");
            }
            if violations.is_empty() {
                println!("ok");
                Ok(())
            } else {
                Err(CliError::Invalid(violations.len()))
            }
        }
        Command::Preview { bundle, svg, output } => {
            let bundle = load_bundle(&bundle)?;
            let svg_text = read(&svg)?;
            ahoi_core::parse_svg(&svg_text).map_err(input(&svg))?;
            write_atomic(&output, &emit_preview_html(&svg_text, &bundle))
        }
    }
}
