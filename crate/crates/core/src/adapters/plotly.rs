use std::collections::HashMap;

use serde_json::Value;

use super::{cell_of, malformed, min_max, number, parse_color, parse_json, title_text};
use crate::error::AdapterError;
use crate::model::{AxisInfo, AxisKind, Cell, ChartModel, ChartType, ColorScale, ColumnKind, DataTable, Grammar};

/// Parses a Plotly figure (`{"data": [traces], "layout": {...}}`); the first trace defines the chart.
pub fn parse_plotly(figure_text: &str) -> Result<ChartModel, AdapterError> {
    let figure = parse_json(figure_text)?;
    let mut model = ChartModel::empty(Grammar::Plotly);

    let traces = figure.get("data").and_then(Value::as_array).ok_or_else(|| malformed("missing `data` trace array"))?;
    let trace = traces.first().ok_or_else(|| malformed("figure has no trace"))?;
    if !trace.is_object() {
        return Err(malformed("traces must be objects"));
    }
    model.series_count = traces.len();
    let layout = figure.get("layout").filter(|l| l.is_object());

    let trace_type = trace.get("type").and_then(Value::as_str).unwrap_or("scatter");
    model.chart_type = match trace_type {
        "bar" => ChartType::BarChart,
        "scatter" | "scattergl" => {
            if trace.get("mode").and_then(Value::as_str) == Some("markers") {
                ChartType::Scatterplot
            } else {
                ChartType::Generic
            }
        }
        "heatmap" => ChartType::ChangeMatrix,
        "treemap" => ChartType::Treemap,
        other => return Err(AdapterError::UnsupportedTraceType(other.to_string())),
    };

    model.title = title_text(layout.and_then(|l| l.get("title")));
    model.width = number(layout.and_then(|l| l.get("width"))).filter(|w| *w > 0.0);
    model.height = number(layout.and_then(|l| l.get("height"))).filter(|h| *h > 0.0);

    match model.chart_type {
        ChartType::Treemap => {
            model.data = treemap_table(trace)?;
            model.value_field = Some("value".into());
            model.label_field = Some("name".into());
        }
        ChartType::ChangeMatrix => {
            model.data = heatmap_table(trace)?;
            model.value_field = Some("z".into());
            model.x_axis = Some(axis(layout, "xaxis", &model.data, "x"));
            model.y_axis = Some(axis(layout, "yaxis", &model.data, "y"));
            model.color_scale = color_scale(trace, &model.data, "z", "zmin", "zmax")?;
            model.legend_title = title_text(trace.get("colorbar").and_then(|c| c.get("title")));
        }
        _ => {
            let ys = array(trace, "y");
            let xs = match trace.get("x").and_then(Value::as_array) {
                Some(x) => x.iter().map(cell_of).collect(),
                None => (0..ys.len()).map(|i| Cell::Number(i as f64)).collect(),
            };
            model.data = DataTable::from_columns(vec![("x".into(), xs), ("y".into(), ys)]);
            model.x_axis = Some(axis(layout, "xaxis", &model.data, "x"));
            model.y_axis = Some(axis(layout, "yaxis", &model.data, "y"));
            let horizontal = trace.get("orientation").and_then(Value::as_str) == Some("h");
            model.value_field = Some(if horizontal { "x" } else { "y" }.into());
            if let Some(marker) = trace.get("marker") {
                let colors: Vec<f64> = marker
                    .get("color")
                    .and_then(Value::as_array)
                    .map(|a| a.iter().filter_map(Value::as_f64).collect())
                    .unwrap_or_default();
                model.color_scale = marker_color_scale(marker, &colors)?;
                model.legend_title = title_text(marker.get("colorbar").and_then(|c| c.get("title")));
            }
        }
    }
    Ok(model)
}

fn array(trace: &Value, key: &str) -> Vec<Cell> {
    trace.get(key).and_then(Value::as_array).map(|a| a.iter().map(cell_of).collect()).unwrap_or_default()
}

fn axis(layout: Option<&Value>, key: &str, data: &DataTable, field: &str) -> AxisInfo {
    let a = layout.and_then(|l| l.get(key));
    let kind = match a.and_then(|a| a.get("type")).and_then(Value::as_str) {
        Some("category") | Some("multicategory") => AxisKind::Categorical,
        Some("date") => AxisKind::Temporal,
        Some("linear") | Some("log") => AxisKind::Quantitative,
        _ => match data.column_index(field) {
            Some(i) if data.columns()[i].kind == ColumnKind::Number => AxisKind::Quantitative,
            _ => AxisKind::Categorical,
        },
    };
    AxisInfo { title: title_text(a.and_then(|a| a.get("title"))), kind, field: Some(field.to_string()) }
}

fn heatmap_table(trace: &Value) -> Result<DataTable, AdapterError> {
    let z = trace.get("z").and_then(Value::as_array).ok_or_else(|| malformed("heatmap trace without `z`"))?;
    let xs = trace.get("x").and_then(Value::as_array);
    let ys = trace.get("y").and_then(Value::as_array);
    let label = |labels: Option<&Vec<Value>>, i: usize| labels.and_then(|l| l.get(i)).map(cell_of).unwrap_or(Cell::Number(i as f64));
    let (mut cx, mut cy, mut cz) = (Vec::new(), Vec::new(), Vec::new());
    for (row, cells) in z.iter().enumerate() {
        let cells = cells.as_array().ok_or_else(|| malformed("heatmap `z` must be a 2-d array"))?;
        for (col, v) in cells.iter().enumerate() {
            cx.push(label(xs, col));
            cy.push(label(ys, row));
            cz.push(cell_of(v));
        }
    }
    Ok(DataTable::from_columns(vec![("x".into(), cx), ("y".into(), cy), ("z".into(), cz)]))
}

fn treemap_table(trace: &Value) -> Result<DataTable, AdapterError> {
    let labels: Vec<String> = trace
        .get("labels")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("treemap trace without `labels`"))?
        .iter()
        .map(|v| v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string()))
        .collect();
    let parents: Vec<String> = trace
        .get("parents")
        .and_then(Value::as_array)
        .map(|a| a.iter().map(|v| v.as_str().unwrap_or_default().to_string()).collect())
        .unwrap_or_else(|| vec![String::new(); labels.len()]);
    let values = array(trace, "values");

    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let depth_of = |mut i: usize| {
        let mut depth = 1;
        // bounded walk: a cyclic parent chain stops after visiting every label once
        while let Some(&p) = parents.get(i).and_then(|p| index.get(p.as_str())) {
            depth += 1;
            i = p;
            if depth > labels.len() {
                break;
            }
        }
        depth
    };
    let names = labels.iter().map(|l| Cell::Text(l.clone())).collect();
    let depths = (0..labels.len()).map(|i| Cell::Number(depth_of(i) as f64)).collect();
    let parent_cells =
        (0..labels.len()).map(|i| parents.get(i).filter(|p| !p.is_empty()).map_or(Cell::Null, |p| Cell::Text(p.clone()))).collect();
    let mut value_cells: Vec<Cell> = values;
    value_cells.truncate(labels.len());
    Ok(DataTable::from_columns(vec![
        ("name".into(), names),
        ("value".into(), value_cells),
        ("depth".into(), depths),
        ("parent".into(), parent_cells),
    ]))
}

/// Endpoint colors of a `colorscale` array such as `[[0, "#fff"], [1, "#000"]]`. Named scales yield `None`.
fn colorscale_ends(v: Option<&Value>) -> Result<Option<(crate::color::Rgb, crate::color::Rgb)>, AdapterError> {
    let Some(stops) = v.and_then(Value::as_array) else {
        return Ok(None);
    };
    if stops.len() < 2 {
        return Ok(None);
    }
    fn color_at(stop: &Value) -> Result<&Value, AdapterError> {
        stop.as_array().and_then(|s| s.get(1)).ok_or_else(|| malformed("colorscale stops must be [position, color]"))
    }
    Ok(Some((parse_color(color_at(&stops[0])?)?, parse_color(color_at(&stops[stops.len() - 1])?)?)))
}

fn color_scale(trace: &Value, data: &DataTable, field: &str, min_key: &str, max_key: &str) -> Result<Option<ColorScale>, AdapterError> {
    let Some((lo, hi)) = colorscale_ends(trace.get("colorscale"))? else {
        return Ok(None);
    };
    let domain = match (number(trace.get(min_key)), number(trace.get(max_key))) {
        (Some(a), Some(b)) => Some((a, b)),
        _ => min_max(data.numbers(field).into_iter().map(|(_, v)| v)),
    };
    Ok(domain.map(|(a, b)| ColorScale::new(a, b, lo, hi)))
}

fn marker_color_scale(marker: &Value, colors: &[f64]) -> Result<Option<ColorScale>, AdapterError> {
    let Some((lo, hi)) = colorscale_ends(marker.get("colorscale"))? else {
        return Ok(None);
    };
    let domain = match (number(marker.get("cmin")), number(marker.get("cmax"))) {
        (Some(a), Some(b)) => Some((a, b)),
        _ => min_max(colors.iter().copied()),
    };
    Ok(domain.map(|(a, b)| ColorScale::new(a, b, lo, hi)))
}
