//! Onboarding compiler for declarative charts.
//!
//! The pipeline reads a chart specification (Vega-Lite, ECharts or Plotly),
//! extracts named facts about the chart, resolves where each fact lives in the
//! rendered SVG, and fills a message catalog organized into onboarding stages.
//! The result is a versioned [`OnboardingBundle`] that can be annotated onto
//! the SVG, previewed as HTML, or customized with a patch file.

pub mod adapters;
pub mod annotate;
pub mod bundle;
pub mod color;
pub mod error;
pub mod features;
pub mod model;
pub mod onboarding;
pub mod pipeline;
pub mod svg;

pub use adapters::{detect_chart_type, parse_echarts, parse_plotly, parse_spec, parse_vega_lite};
pub use annotate::{annotate_svg, emit_preview_html, MarkerStyle, OVERLAY_ID};
pub use bundle::{parse_bundle, serialize_bundle, validate_bundle, ChartInfo, OnboardingBundle, SCHEMA_VERSION};
pub use color::Rgb;
pub use error::{AdapterError, BundleError, ExtremaError, OnboardingError, SvgError};
pub use features::{compute_extrema, extract_features, format_value, interpolate_color, ExtractionResult, Feature, FeatureKey};
pub use model::{AxisInfo, AxisKind, ChartModel, ChartType, ColorScale, DataTable, Grammar};
pub use onboarding::{
    apply_customization, create_basic_message, default_stages, default_templates, generate_messages, ContextRegistry,
    CustomizationPatch, MessageTemplate, NavAlignment, NavConfig, OnboardingMessage, OnboardingStage, OnboardingState,
    PatchOp, PatchReport, TooltipPlacement,
};
pub use svg::{parse_svg, query_selector, resolve_anchor, AnchorDirective, ResolvedAnchor, SvgDoc};
