use serde_json::{Map, Value};

use super::{cell_of, malformed, min_max, number, parse_color, parse_json, title_text};
use crate::error::AdapterError;
use crate::model::{AxisInfo, AxisKind, Cell, ChartModel, ChartType, ColorScale, ColumnKind, DataTable, Grammar};

/// Parses a Vega-Lite specification with inline `data.values`.
pub fn parse_vega_lite(spec_text: &str) -> Result<ChartModel, AdapterError> {
    let spec = parse_json(spec_text)?;
    let mut model = ChartModel::empty(Grammar::VegaLite);

    let layers = spec.get("layer").and_then(Value::as_array);
    let (unit, layered) = match layers {
        Some(l) => (l.first().ok_or_else(|| malformed("empty `layer` array"))?, true),
        None => (&spec, false),
    };
    model.series_count = layers.map_or(1, Vec::len);

    let mark = mark_type(unit.get("mark")).ok_or_else(|| malformed("missing `mark`"))?;

    let data = unit.get("data").or_else(|| spec.get("data"));
    model.data = inline_values(data)?;

    let mut encoding = spec.get("encoding").and_then(Value::as_object).cloned().unwrap_or_default();
    if layered {
        if let Some(enc) = unit.get("encoding").and_then(Value::as_object) {
            encoding.extend(enc.iter().map(|(k, v)| (k.clone(), v.clone())));
        }
    }

    model.title = title_text(spec.get("title"));
    model.width = number(spec.get("width")).filter(|w| *w > 0.0);
    model.height = number(spec.get("height")).filter(|h| *h > 0.0);
    model.x_axis = axis(&encoding, "x", &model.data);
    model.y_axis = axis(&encoding, "y", &model.data);

    let color = encoding.get("color");
    let color_field = color.and_then(|c| c.get("field")).and_then(Value::as_str);
    let color_quantitative =
        color_field.is_some() && color.and_then(|c| c.get("type")).and_then(Value::as_str) == Some("quantitative");
    if color_quantitative {
        let color = color.expect("checked above");
        model.color_scale = color_scale(color, color_field.unwrap_or_default(), &model.data)?;
        model.legend_title = color
            .get("legend")
            .and_then(|l| l.get("title"))
            .and_then(Value::as_str)
            .or_else(|| color.get("title").and_then(Value::as_str))
            .or(color_field)
            .map(str::to_string);
    }

    model.chart_type = match mark.as_str() {
        "bar" => ChartType::BarChart,
        "point" | "circle" => ChartType::Scatterplot,
        "rect" if color_quantitative => ChartType::ChangeMatrix,
        "area" if layered => ChartType::HorizonGraph,
        "rect" | "area" => ChartType::Generic,
        other => return Err(AdapterError::UnsupportedMark(other.to_string())),
    };

    model.value_field = match model.chart_type {
        ChartType::ChangeMatrix => color_field.map(str::to_string),
        _ => quantitative_field(&model),
    };
    Ok(model)
}

fn mark_type(mark: Option<&Value>) -> Option<String> {
    match mark? {
        Value::String(s) => Some(s.clone()),
        Value::Object(o) => o.get("type")?.as_str().map(str::to_string),
        _ => None,
    }
}

fn inline_values(data: Option<&Value>) -> Result<DataTable, AdapterError> {
    let values = data
        .and_then(|d| d.get("values"))
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("only inline `data.values` is supported"))?;
    let mut names: Vec<String> = Vec::new();
    for row in values {
        let obj = row.as_object().ok_or_else(|| malformed("`data.values` entries must be objects"))?;
        for k in obj.keys() {
            if !names.contains(k) {
                names.push(k.clone());
            }
        }
    }
    let columns = names
        .into_iter()
        .map(|name| {
            let cells = values.iter().map(|r| r.get(&name).map(cell_of).unwrap_or(Cell::Null)).collect();
            (name, cells)
        })
        .collect();
    Ok(DataTable::from_columns(columns))
}

fn axis(encoding: &Map<String, Value>, channel: &str, data: &DataTable) -> Option<AxisInfo> {
    let enc = encoding.get(channel)?.as_object()?;
    let field = enc.get("field").and_then(Value::as_str).map(str::to_string);
    let kind = match enc.get("type").and_then(Value::as_str) {
        Some("quantitative") => AxisKind::Quantitative,
        Some("temporal") => AxisKind::Temporal,
        Some(_) => AxisKind::Categorical,
        None => match field.as_deref().and_then(|f| data.column_index(f)) {
            Some(i) if data.columns()[i].kind == ColumnKind::Number => AxisKind::Quantitative,
            _ => AxisKind::Categorical,
        },
    };
    let title = match enc.get("axis") {
        Some(Value::Null) => None,
        axis => match axis.and_then(|a| a.get("title")) {
            Some(Value::Null) => None,
            Some(t) => t.as_str().map(str::to_string),
            None => enc.get("title").and_then(Value::as_str).map(str::to_string).or_else(|| field.clone()),
        },
    };
    Some(AxisInfo { title, kind, field })
}

fn color_scale(color: &Value, field: &str, data: &DataTable) -> Result<Option<ColorScale>, AdapterError> {
    let scale = color.get("scale");
    let Some(range) = scale.and_then(|s| s.get("range")).and_then(Value::as_array) else {
        return Ok(None);
    };
    let (Some(first), Some(last)) = (range.first(), range.last()) else {
        return Ok(None);
    };
    if range.len() < 2 {
        return Ok(None);
    }
    let (lo_color, hi_color) = (parse_color(first)?, parse_color(last)?);
    let explicit = scale.and_then(|s| s.get("domain")).and_then(Value::as_array).and_then(|d| {
        let (a, b) = (number(d.first())?, number(d.last())?);
        Some((a, b))
    });
    let domain = explicit.or_else(|| min_max(data.numbers(field).into_iter().map(|(_, v)| v)));
    Ok(domain.map(|(a, b)| ColorScale::new(a, b, lo_color, hi_color)))
}

fn quantitative_field(model: &ChartModel) -> Option<String> {
    [&model.y_axis, &model.x_axis]
        .into_iter()
        .flatten()
        .find(|a| a.kind == AxisKind::Quantitative && a.field.is_some())
        .and_then(|a| a.field.clone())
}
