//! Grammar adapters: Vega-Lite, ECharts and Plotly inputs to a [`ChartModel`].
//!
//! Each adapter understands a bounded subset of its grammar: inline data only,
//! the first series/trace/layer defines the chart, and unrecognized properties
//! are ignored. Chart types are inferred from marks/series/traces:
//!
//! | grammar   | input                                 | chart type      |
//! |-----------|---------------------------------------|-----------------|
//! | Vega-Lite | `bar`                                 | BarChart        |
//! | Vega-Lite | `point`, `circle`                     | Scatterplot     |
//! | Vega-Lite | `rect` with quantitative color        | ChangeMatrix    |
//! | Vega-Lite | `area` inside a `layer`               | HorizonGraph    |
//! | ECharts   | `bar` / `scatter` / `heatmap` / `treemap` / `custom` | Bar / Scatter / ChangeMatrix / Treemap / Horizon |
//! | Plotly    | `bar` / `scatter` (mode `markers`) / `heatmap` / `treemap` | Bar / Scatter / ChangeMatrix / Treemap |
//!
//! Recognized inputs that miss their qualifier (a `rect` without quantitative
//! color, a Plotly `scatter` drawn as lines) become [`ChartType::Generic`].

mod echarts;
mod plotly;
mod vega_lite;

use serde_json::Value;

pub use echarts::parse_echarts;
pub use plotly::parse_plotly;
pub use vega_lite::parse_vega_lite;

use crate::color::Rgb;
use crate::error::AdapterError;
use crate::model::{Cell, ChartModel, ChartType, Grammar};

/// Dispatches to the adapter for `grammar`.
pub fn parse_spec(grammar: Grammar, text: &str) -> Result<ChartModel, AdapterError> {
    match grammar {
        Grammar::VegaLite => parse_vega_lite(text),
        Grammar::ECharts => parse_echarts(text),
        Grammar::Plotly => parse_plotly(text),
    }
}

/// An explicitly requested chart type wins over the adapter's inference.
pub fn detect_chart_type(model: &ChartModel, explicit: Option<ChartType>) -> ChartType {
    explicit.unwrap_or(model.chart_type)
}

pub(crate) fn parse_json(text: &str) -> Result<Value, AdapterError> {
    let v: Value = serde_json::from_str(text).map_err(|e| AdapterError::MalformedSpec(e.to_string()))?;
    if !v.is_object() {
        return Err(malformed("top-level value must be an object"));
    }
    Ok(v)
}

pub(crate) fn malformed(msg: impl Into<String>) -> AdapterError {
    AdapterError::MalformedSpec(msg.into())
}

pub(crate) fn parse_color(v: &Value) -> Result<Rgb, AdapterError> {
    let s = v.as_str().ok_or_else(|| malformed(format!("color must be a string, got {v}")))?;
    s.parse::<Rgb>().map_err(|e| malformed(e.to_string()))
}

/// Text of a title that may be a bare string or an object with a `text` member.
pub(crate) fn title_text(v: Option<&Value>) -> Option<String> {
    let s = match v? {
        Value::String(s) => s.as_str(),
        Value::Object(o) => o.get("text")?.as_str()?,
        _ => return None,
    };
    let s = s.trim();
    (!s.is_empty()).then(|| s.to_string())
}

pub(crate) fn cell_of(v: &Value) -> Cell {
    match v {
        Value::Number(n) => n.as_f64().map(Cell::Number).unwrap_or(Cell::Null),
        Value::String(s) => Cell::Text(s.clone()),
        Value::Bool(b) => Cell::Text(b.to_string()),
        Value::Null => Cell::Null,
        other => Cell::Text(other.to_string()),
    }
}

pub(crate) fn number(v: Option<&Value>) -> Option<f64> {
    v.and_then(Value::as_f64).filter(|n| n.is_finite())
}

/// Min and max over the finite numbers in `values`, if any.
pub(crate) fn min_max(values: impl IntoIterator<Item = f64>) -> Option<(f64, f64)> {
    values.into_iter().filter(|v| v.is_finite()).fold(None, |acc, v| match acc {
        None => Some((v, v)),
        Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
    })
}

/// First element when `v` is an array, otherwise `v` itself.
pub(crate) fn first_of(v: Option<&Value>) -> Option<&Value> {
    match v? {
        Value::Array(a) => a.first(),
        other => Some(other),
    }
}
