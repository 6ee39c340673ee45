//! Feature extraction: the named facts (display value + anchor directive)
//! that message templates draw on.

mod dom;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use dom::DomConventions;

use crate::color::Rgb;
use crate::error::ExtremaError;
use crate::model::{Cell, ChartModel, ChartType, ColorScale, Grammar};
use crate::svg::{AnchorDirective, Direction, Measure, Offset};

/// Offset applied to title anchors, relative to the title's top-left corner.
pub const TITLE_OFFSET: Offset = Offset { left: -20.0, top: 10.0 };

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FeatureKey {
    ChartTitle,
    XAxisTitle,
    YAxisTitle,
    MinValue,
    MaxValue,
    MinColor,
    MaxColor,
    LegendTitle,
    DataPointCount,
    SeriesCount,
    LargestNodeLabel,
    LargestNodeValue,
    HierarchyDepth,
    PositiveBandColor,
    NegativeBandColor,
    InteractionHint,
    /// User-defined key; the stored name excludes the `custom.` prefix.
    Custom(String),
}

impl FeatureKey {
    pub const CANONICAL: [FeatureKey; 16] = [
        FeatureKey::ChartTitle,
        FeatureKey::XAxisTitle,
        FeatureKey::YAxisTitle,
        FeatureKey::MinValue,
        FeatureKey::MaxValue,
        FeatureKey::MinColor,
        FeatureKey::MaxColor,
        FeatureKey::LegendTitle,
        FeatureKey::DataPointCount,
        FeatureKey::SeriesCount,
        FeatureKey::LargestNodeLabel,
        FeatureKey::LargestNodeValue,
        FeatureKey::HierarchyDepth,
        FeatureKey::PositiveBandColor,
        FeatureKey::NegativeBandColor,
        FeatureKey::InteractionHint,
    ];

    pub fn as_str(&self) -> std::borrow::Cow<'_, str> {
        let s = match self {
            FeatureKey::ChartTitle => "chartTitle",
            FeatureKey::XAxisTitle => "xAxisTitle",
            FeatureKey::YAxisTitle => "yAxisTitle",
            FeatureKey::MinValue => "minValue",
            FeatureKey::MaxValue => "maxValue",
            FeatureKey::MinColor => "minColor",
            FeatureKey::MaxColor => "maxColor",
            FeatureKey::LegendTitle => "legendTitle",
            FeatureKey::DataPointCount => "dataPointCount",
            FeatureKey::SeriesCount => "seriesCount",
            FeatureKey::LargestNodeLabel => "largestNodeLabel",
            FeatureKey::LargestNodeValue => "largestNodeValue",
            FeatureKey::HierarchyDepth => "hierarchyDepth",
            FeatureKey::PositiveBandColor => "positiveBandColor",
            FeatureKey::NegativeBandColor => "negativeBandColor",
            FeatureKey::InteractionHint => "interactionHint",
            FeatureKey::Custom(name) => return format!("custom.{name}").into(),
        };
        s.into()
    }
}

impl FromStr for FeatureKey {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(name) = s.strip_prefix("custom.") {
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '.' || c == '_') {
                return Err(format!("invalid custom feature key `{s}`"));
            }
            return Ok(FeatureKey::Custom(name.to_string()));
        }
        FeatureKey::CANONICAL
            .iter()
            .find(|k| k.as_str() == s)
            .cloned()
            .ok_or_else(|| format!("unknown feature key `{s}`"))
    }
}

impl fmt::Display for FeatureKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_str())
    }
}

impl Serialize for FeatureKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.as_str())
    }
}

impl<'de> Deserialize<'de> for FeatureKey {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Feature {
    pub key: FeatureKey,
    pub value: String,
    pub anchor: AnchorDirective,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtractionResult {
    pub features: BTreeMap<FeatureKey, Feature>,
    pub chart_type: ChartType,
    pub chart_width: f64,
    pub chart_height: f64,
}

impl ExtractionResult {
    pub fn get(&self, key: &FeatureKey) -> Option<&Feature> {
        self.features.get(key)
    }

    pub fn contains(&self, key: &FeatureKey) -> bool {
        self.features.contains_key(key)
    }

    /// Adds a feature; empty values are dropped so that absent facts stay absent.
    pub fn insert(&mut self, key: FeatureKey, value: impl Into<String>, anchor: AnchorDirective) {
        let value = value.into();
        if value.trim().is_empty() {
            return;
        }
        self.features.insert(key.clone(), Feature { key, value, anchor });
    }

    pub fn remove(&mut self, key: &FeatureKey) -> Option<Feature> {
        self.features.remove(key)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub min: f64,
    pub max: f64,
    pub min_index: usize,
    pub max_index: usize,
}

/// Minimum and maximum with first-occurrence indices.
pub fn compute_extrema(values: &[f64]) -> Result<Extremum, ExtremaError> {
    let (&first, rest) = values.split_first().ok_or(ExtremaError::EmptySeries)?;
    let mut e = Extremum { min: first, max: first, min_index: 0, max_index: 0 };
    for (i, &v) in rest.iter().enumerate() {
        if v < e.min {
            e.min = v;
            e.min_index = i + 1;
        }
        if v > e.max {
            e.max = v;
            e.max_index = i + 1;
        }
    }
    Ok(e)
}

/// Linear sRGB interpolation between the scale's end colors; out-of-domain values clamp.
pub fn interpolate_color(scale: &ColorScale, value: f64) -> Rgb {
    let span = scale.domain_max - scale.domain_min;
    let t = if span > 0.0 { ((value - scale.domain_min) / span).clamp(0.0, 1.0) } else { 0.0 };
    let t = if t.is_finite() { t } else { 0.0 };
    // snap to 12 decimals
    let t = (t * 1e12).round() / 1e12;
    let lerp = |a: u8, b: u8| {
        let (a, b) = (f64::from(a), f64::from(b));
        // f64::round is half away from zero
        (a + (b - a) * t).round().clamp(0.0, 255.0) as u8
    };
    let (lo, hi) = (scale.min_color, scale.max_color);
    Rgb::new(lerp(lo.r, hi.r), lerp(lo.g, hi.g), lerp(lo.b, hi.b))
}

/// Two fractional digits, rounding half away from zero on the shortest decimal
/// representation of `x` (so `2.675` gives `2.68`).
pub fn format_value(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let repr = format!("{}", x.abs());
    let (int_part, frac_part) = repr.split_once('.').unwrap_or((repr.as_str(), ""));
    let mut digits: Vec<u8> = int_part.bytes().map(|b| b - b'0').collect();
    let frac: Vec<u8> = frac_part.bytes().map(|b| b - b'0').chain(std::iter::repeat(0)).take(3).collect();
    digits.extend_from_slice(&frac[..2]);
    if frac[2] >= 5 {
        let mut i = digits.len();
        loop {
            if i == 0 {
                digits.insert(0, 1);
                break;
            }
            i -= 1;
            if digits[i] == 9 {
                digits[i] = 0;
            } else {
                digits[i] += 1;
                break;
            }
        }
    }
    let split = digits.len() - 2;
    let text: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
    let negative = x < 0.0 && digits.iter().any(|d| *d != 0);
    format!("{}{}.{}", if negative { "-" } else { "" }, &text[..split], &text[split..])
}

fn default_size(grammar: Grammar) -> (f64, f64) {
    match grammar {
        Grammar::Plotly => (700.0, 450.0),
        Grammar::VegaLite => (400.0, 300.0),
        Grammar::ECharts => (600.0, 400.0),
    }
}

fn interaction_phrase(grammar: Grammar) -> &'static str {
    match grammar {
        Grammar::Plotly => "hover over marks for details, drag to zoom, double-click to reset",
        Grammar::VegaLite => "hover over marks for details",
        Grammar::ECharts => "hover over marks for details",
    }
}

/// Builds the feature map for `model` rendered as `chart_type`. Facts whose
/// sources are missing are omitted; extraction never fails.
pub fn extract_features(model: &ChartModel, chart_type: ChartType) -> ExtractionResult {
    let (dw, dh) = default_size(model.grammar);
    let mut out = ExtractionResult {
        features: BTreeMap::new(),
        chart_type,
        chart_width: model.width.unwrap_or(dw),
        chart_height: model.height.unwrap_or(dh),
    };
    let dom = DomConventions::for_chart(model.grammar, chart_type);
    let marks = dom.marks();
    let group = || AnchorDirective::Selector { sel: dom.mark_group.to_string() };

    if let Some(title) = &model.title {
        out.insert(FeatureKey::ChartTitle, title, AnchorDirective::FindByValue { value: title.clone(), offset: TITLE_OFFSET });
    }
    if let Some(t) = model.x_axis.as_ref().and_then(|a| a.title.as_ref()) {
        out.insert(FeatureKey::XAxisTitle, t, AnchorDirective::Selector { sel: dom.x_title.into() });
    }
    if let Some(t) = model.y_axis.as_ref().and_then(|a| a.title.as_ref()) {
        out.insert(FeatureKey::YAxisTitle, t, AnchorDirective::Selector { sel: dom.y_title.into() });
    }
    if let Some(t) = &model.legend_title {
        out.insert(FeatureKey::LegendTitle, t, AnchorDirective::FindByValue { value: t.clone(), offset: TITLE_OFFSET });
    }

    let measured = model.value_field.as_deref().map(|f| model.data.numbers(f)).unwrap_or_default();
    let values: Vec<f64> = measured.iter().map(|(_, v)| *v).collect();
    let extrema = compute_extrema(&values).ok();
    if let Some(e) = extrema {
        let (min_anchor, max_anchor) = match dom::extremum_measure(chart_type) {
            Some((measure, inverted)) => {
                let (dmin, dmax) = if inverted { (Direction::Max, Direction::Min) } else { (Direction::Min, Direction::Max) };
                (
                    AnchorDirective::MarkExtremum { sel: marks.clone(), measure, direction: dmin },
                    AnchorDirective::MarkExtremum { sel: marks.clone(), measure, direction: dmax },
                )
            }
            None if chart_type == ChartType::HorizonGraph => {
                let at = |i: usize| AnchorDirective::Coords {
                    x: out.chart_width * (i as f64 + 0.5) / values.len() as f64,
                    y: out.chart_height / 2.0,
                };
                (at(e.min_index), at(e.max_index))
            }
            None => (AnchorDirective::Selector { sel: dom.legend.into() }, AnchorDirective::Selector { sel: dom.legend.into() }),
        };
        out.insert(FeatureKey::MinValue, format_value(e.min), min_anchor);
        out.insert(FeatureKey::MaxValue, format_value(e.max), max_anchor);
    }

    if let Some(scale) = &model.color_scale {
        let legend = AnchorDirective::Selector { sel: dom.legend.into() };
        out.insert(FeatureKey::MinColor, interpolate_color(scale, scale.domain_min).to_string(), legend.clone());
        out.insert(FeatureKey::MaxColor, interpolate_color(scale, scale.domain_max).to_string(), legend);

        if chart_type == ChartType::HorizonGraph {
            let band_anchor = |key: &FeatureKey| out.get(key).map(|f| f.anchor.clone()).unwrap_or_else(group);
            let (positive_anchor, negative_anchor) = (band_anchor(&FeatureKey::MaxValue), band_anchor(&FeatureKey::MinValue));
            if scale.domain_max > 0.0 {
                out.insert(FeatureKey::PositiveBandColor, interpolate_color(scale, scale.domain_max).to_string(), positive_anchor);
            }
            if scale.domain_min < 0.0 {
                out.insert(FeatureKey::NegativeBandColor, interpolate_color(scale, scale.domain_min).to_string(), negative_anchor);
            }
        }
    }

    if model.data.row_count() > 0 {
        out.insert(FeatureKey::DataPointCount, model.data.row_count().to_string(), AnchorDirective::Selector { sel: marks.clone() });
        let hint_anchor = if chart_type == ChartType::HorizonGraph {
            group()
        } else {
            AnchorDirective::MarkExtremum { sel: marks.clone(), measure: Measure::Cx, direction: Direction::Max }
        };
        out.insert(FeatureKey::InteractionHint, interaction_phrase(model.grammar), hint_anchor);
    }
    out.insert(FeatureKey::SeriesCount, model.series_count.to_string(), group());

    if chart_type == ChartType::Treemap {
        extract_hierarchy(model, &marks, &mut out, group());
    }
    out
}

fn extract_hierarchy(model: &ChartModel, marks: &str, out: &mut ExtractionResult, group: AnchorDirective) {
    let data = &model.data;
    let label_field = model.label_field.as_deref().unwrap_or("name");
    let value_field = model.value_field.as_deref().unwrap_or("value");
    let parents: HashSet<&str> =
        (0..data.row_count()).filter_map(|i| data.cell(i, "parent").and_then(Cell::as_text)).collect();
    let leaves: Vec<(usize, f64)> = data
        .numbers(value_field)
        .into_iter()
        .filter(|(i, _)| data.cell(*i, label_field).and_then(Cell::as_text).is_none_or(|l| !parents.contains(l)))
        .collect();
    let leaf_values: Vec<f64> = leaves.iter().map(|(_, v)| *v).collect();
    if let Ok(e) = compute_extrema(&leaf_values) {
        let row = leaves[e.max_index].0;
        let anchor = AnchorDirective::MarkExtremum { sel: marks.to_string(), measure: Measure::RectArea, direction: Direction::Max };
        if let Some(label) = data.cell(row, label_field).and_then(Cell::as_text) {
            out.insert(FeatureKey::LargestNodeLabel, label, anchor.clone());
        }
        out.insert(FeatureKey::LargestNodeValue, format_value(e.max), anchor);
    }
    let depths: Vec<f64> = data.numbers("depth").into_iter().map(|(_, d)| d).collect();
    if let Ok(e) = compute_extrema(&depths) {
        out.insert(FeatureKey::HierarchyDepth, format!("{}", e.max as u64), group);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adapters::{parse_echarts, parse_plotly};

    #[test]
    fn extrema_examples() {
        assert_eq!(compute_extrema(&[3.0, 1.0, 4.0]).unwrap(), Extremum { min: 1.0, max: 4.0, min_index: 1, max_index: 2 });
        assert_eq!(compute_extrema(&[2.0, 2.0, 2.0]).unwrap(), Extremum { min: 2.0, max: 2.0, min_index: 0, max_index: 0 });
        assert_eq!(compute_extrema(&[]), Err(ExtremaError::EmptySeries));
    }

    fn scale(lo: &str, hi: &str) -> ColorScale {
        ColorScale { domain_min: 0.0, domain_max: 10.0, min_color: lo.parse().unwrap(), max_color: hi.parse().unwrap() }
    }

    #[test]
    fn color_examples() {
        let bw = scale("#ffffff", "#000000");
        assert_eq!(interpolate_color(&bw, 0.0).to_string(), "#ffffff");
        assert_eq!(interpolate_color(&bw, 5.0).to_string(), "#808080");
        assert_eq!(interpolate_color(&bw, 10.0).to_string(), "#000000");
        assert_eq!(interpolate_color(&bw, -3.0).to_string(), "#ffffff");
        assert_eq!(interpolate_color(&bw, 99.0).to_string(), "#000000");
        assert_eq!(interpolate_color(&scale("#000000", "#0000ff"), 2.5).to_string(), "#000040");
    }

    #[test]
    fn degenerate_domain_uses_min_color() {
        let s = ColorScale { domain_min: 3.0, domain_max: 3.0, min_color: Rgb::new(1, 2, 3), max_color: Rgb::new(9, 9, 9) };
        assert_eq!(interpolate_color(&s, 3.0), Rgb::new(1, 2, 3));
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_value(1.0), "1.00");
        assert_eq!(format_value(2.5), "2.50");
        assert_eq!(format_value(-0.005), "-0.01");
        assert_eq!(format_value(2.675), "2.68");
        assert_eq!(format_value(9.995), "10.00");
        assert_eq!(format_value(-0.001), "0.00");
        assert_eq!(format_value(1234567.0), "1234567.00");
        assert_eq!(format_value(1e-7), "0.00");
    }

    #[test]
    fn feature_key_names() {
        for k in FeatureKey::CANONICAL {
            assert_eq!(k.as_str().parse::<FeatureKey>().unwrap(), k);
        }
        assert_eq!("custom.clusters".parse::<FeatureKey>().unwrap(), FeatureKey::Custom("clusters".into()));
        assert!("yMin".parse::<FeatureKey>().is_err());
        assert!("custom.".parse::<FeatureKey>().is_err());
    }

    #[test]
    fn plotly_scatter_title_and_min() {
        let m = parse_plotly(
            r#"{"data":[{"type":"scatter","mode":"markers","x":[1,2,3],"y":[3,1,4]}],"layout":{"title":{"text":"T"}}}"#,
        )
        .unwrap();
        let r = extract_features(&m, ChartType::Scatterplot);
        let title = r.get(&FeatureKey::ChartTitle).unwrap();
        assert_eq!(title.value, "T");
        assert_eq!(title.anchor, AnchorDirective::FindByValue { value: "T".into(), offset: Offset { left: -20.0, top: 10.0 } });
        let min = r.get(&FeatureKey::MinValue).unwrap();
        assert_eq!(min.value, "1.00");
        assert!(matches!(&min.anchor, AnchorDirective::MarkExtremum { sel, measure: Measure::Cy, direction: Direction::Max } if sel == ".scatterlayer .points circle"));
        assert_eq!(r.get(&FeatureKey::MaxValue).unwrap().value, "4.00");
    }

    #[test]
    fn absent_sources_are_omitted() {
        let m = parse_plotly(r#"{"data":[{"type":"bar","y":[1]}]}"#).unwrap();
        let r = extract_features(&m, ChartType::BarChart);
        for k in [FeatureKey::ChartTitle, FeatureKey::MinColor, FeatureKey::MaxColor, FeatureKey::XAxisTitle] {
            assert!(!r.contains(&k), "{k}");
        }
        assert!(r.features.values().all(|f| !f.value.is_empty()));
    }

    #[test]
    fn heatmap_endpoint_colors() {
        let m = parse_echarts(
            r##"{"series":[{"type":"heatmap","data":[[0,0,1]]}],"visualMap":{"min":0,"max":10,"inRange":{"color":["#fff","#000"]}}}"##,
        )
        .unwrap();
        let r = extract_features(&m, ChartType::ChangeMatrix);
        assert_eq!(r.get(&FeatureKey::MinColor).unwrap().value, "#ffffff");
        assert_eq!(r.get(&FeatureKey::MaxColor).unwrap().value, "#000000");
    }

    #[test]
    fn treemap_largest_leaf() {
        let m = parse_plotly(
            r#"{"data":[{"type":"treemap","labels":["all","a","b","c"],"parents":["","all","all","b"],"values":[20,7,9,9]}]}"#,
        )
        .unwrap();
        let r = extract_features(&m, ChartType::Treemap);
        // "b" is a parent, so the leaves are a (7) and c (9).
        assert_eq!(r.get(&FeatureKey::LargestNodeLabel).unwrap().value, "c");
        assert_eq!(r.get(&FeatureKey::LargestNodeValue).unwrap().value, "9.00");
        assert_eq!(r.get(&FeatureKey::HierarchyDepth).unwrap().value, "3");
    }
}
