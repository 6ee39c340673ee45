use serde_json::Value;

use super::{cell_of, first_of, malformed, min_max, number, parse_color, parse_json, title_text};
use crate::error::AdapterError;
use crate::model::{AxisInfo, AxisKind, Cell, ChartModel, ChartType, ColorScale, DataTable, Grammar};

/// Parses an ECharts option object with inline series data.
pub fn parse_echarts(option_text: &str) -> Result<ChartModel, AdapterError> {
    let option = parse_json(option_text)?;
    let mut model = ChartModel::empty(Grammar::ECharts);

    let series = option
        .get("series")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("missing `series` array"))?;
    let first = series.first().ok_or_else(|| malformed("empty `series` array"))?;
    model.series_count = series.len();

    let series_type = first.get("type").and_then(Value::as_str).ok_or_else(|| malformed("series without `type`"))?;
    model.chart_type = match series_type {
        "bar" => ChartType::BarChart,
        "scatter" => ChartType::Scatterplot,
        "heatmap" => ChartType::ChangeMatrix,
        "treemap" => ChartType::Treemap,
        "custom" => ChartType::HorizonGraph,
        other => return Err(AdapterError::UnsupportedSeriesType(other.to_string())),
    };

    model.title = title_text(first_of(option.get("title")));
    let x_axis = first_of(option.get("xAxis"));
    let y_axis = first_of(option.get("yAxis"));

    let data = first.get("data").and_then(Value::as_array).ok_or_else(|| malformed("series without inline `data`"))?;

    if model.chart_type == ChartType::Treemap {
        let mut rows = TreeRows::default();
        rows.walk(data, 1, None)?;
        model.data = rows.into_table();
        model.value_field = Some("value".into());
        model.label_field = Some("name".into());
    } else {
        model.x_axis = x_axis.map(|a| axis(a, AxisKind::Categorical, "x"));
        model.y_axis = y_axis.map(|a| axis(a, AxisKind::Quantitative, "y"));
        let x_categories = x_axis.and_then(|a| a.get("data")).and_then(Value::as_array);
        let y_categories = y_axis.and_then(|a| a.get("data")).and_then(Value::as_array);
        let horizontal = model.y_axis.as_ref().is_some_and(|a| a.kind == AxisKind::Categorical)
            && model.x_axis.as_ref().is_some_and(|a| a.kind == AxisKind::Quantitative);

        let mut xs = Vec::with_capacity(data.len());
        let mut ys = Vec::with_capacity(data.len());
        let mut vs = Vec::with_capacity(data.len());
        for (i, item) in data.iter().enumerate() {
            let v = item.get("value").unwrap_or(item);
            match v {
                Value::Array(tuple) => {
                    xs.push(category(tuple.first(), x_categories));
                    ys.push(category(tuple.get(1), y_categories));
                    vs.push(tuple.get(2).map(cell_of).unwrap_or(Cell::Null));
                }
                scalar => {
                    let cat = x_categories.or(y_categories).and_then(|c| c.get(i)).map(cell_of).unwrap_or(Cell::Number(i as f64));
                    if horizontal {
                        xs.push(cell_of(scalar));
                        ys.push(cat);
                    } else {
                        xs.push(cat);
                        ys.push(cell_of(scalar));
                    }
                    vs.push(Cell::Null);
                }
            }
        }
        let mut columns = vec![("x".to_string(), xs), ("y".to_string(), ys)];
        if model.chart_type == ChartType::ChangeMatrix {
            columns.push(("value".to_string(), vs));
            model.value_field = Some("value".into());
        } else {
            model.value_field = Some(if horizontal { "x" } else { "y" }.into());
        }
        model.data = DataTable::from_columns(columns);
    }

    if let Some(vm) = first_of(option.get("visualMap")) {
        model.color_scale = visual_map(vm, &model)?;
    }
    Ok(model)
}

fn axis(a: &Value, default_kind: AxisKind, field: &str) -> AxisInfo {
    let kind = match a.get("type").and_then(Value::as_str) {
        Some("category") => AxisKind::Categorical,
        Some("value") | Some("log") => AxisKind::Quantitative,
        Some("time") => AxisKind::Temporal,
        _ => default_kind,
    };
    let title = a.get("name").and_then(Value::as_str).filter(|s| !s.trim().is_empty()).map(|s| s.trim().to_string());
    AxisInfo { title, kind, field: Some(field.to_string()) }
}

/// Heatmap/category tuples may carry an index into the axis `data` list.
fn category(v: Option<&Value>, categories: Option<&Vec<Value>>) -> Cell {
    match (v, categories) {
        (Some(Value::Number(n)), Some(cats)) => n
            .as_u64()
            .and_then(|i| cats.get(i as usize))
            .map(cell_of)
            .unwrap_or_else(|| cell_of(v.expect("matched Some"))),
        (Some(v), _) => cell_of(v),
        (None, _) => Cell::Null,
    }
}

fn visual_map(vm: &Value, model: &ChartModel) -> Result<Option<ColorScale>, AdapterError> {
    let Some(colors) = vm.get("inRange").and_then(|r| r.get("color")).and_then(Value::as_array) else {
        return Ok(None);
    };
    if colors.len() < 2 {
        return Ok(None);
    }
    let lo_color = parse_color(&colors[0])?;
    let hi_color = parse_color(&colors[colors.len() - 1])?;
    let data_range = || {
        model
            .value_field
            .as_deref()
            .and_then(|f| min_max(model.data.numbers(f).into_iter().map(|(_, v)| v)))
    };
    let domain = match (number(vm.get("min")), number(vm.get("max"))) {
        (Some(a), Some(b)) => Some((a, b)),
        _ => data_range(),
    };
    Ok(domain.map(|(a, b)| ColorScale::new(a, b, lo_color, hi_color)))
}

#[derive(Default)]
struct TreeRows {
    names: Vec<Cell>,
    values: Vec<Cell>,
    depths: Vec<Cell>,
    parents: Vec<Cell>,
}

impl TreeRows {
    /// Pre-order flattening; returns the summed value of `nodes`.
    fn walk(&mut self, nodes: &[Value], depth: usize, parent: Option<&str>) -> Result<f64, AdapterError> {
        let mut total = 0.0;
        for node in nodes {
            let obj = node.as_object().ok_or_else(|| malformed("treemap nodes must be objects"))?;
            let name = obj.get("name").and_then(Value::as_str).unwrap_or_default().to_string();
            let slot = self.names.len();
            self.names.push(Cell::Text(name.clone()));
            self.values.push(Cell::Null);
            self.depths.push(Cell::Number(depth as f64));
            self.parents.push(parent.map_or(Cell::Null, |p| Cell::Text(p.to_string())));
            let children = obj.get("children").and_then(Value::as_array);
            let child_sum = match children {
                Some(c) if !c.is_empty() => Some(self.walk(c, depth + 1, Some(&name))?),
                _ => None,
            };
            let own = match obj.get("value") {
                Some(Value::Array(a)) => number(a.first()),
                v => number(v),
            };
            let value = own.or(child_sum);
            if let Some(v) = value {
                self.values[slot] = Cell::Number(v);
                total += v;
            }
        }
        Ok(total)
    }

    fn into_table(self) -> DataTable {
        DataTable::from_columns(vec![
            ("name".into(), self.names),
            ("value".into(), self.values),
            ("depth".into(), self.depths),
            ("parent".into(), self.parents),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::Rgb;

    #[test]
    fn scatter_title() {
        let m = parse_echarts(r#"{"title":{"text":"T"},"series":[{"type":"scatter","data":[[1,2]]}]}"#).unwrap();
        assert_eq!(m.chart_type, ChartType::Scatterplot);
        assert_eq!(m.title.as_deref(), Some("T"));
        assert_eq!(m.data.numbers("y"), vec![(0, 2.0)]);
    }

    #[test]
    fn treemap_hierarchy_is_flattened() {
        let m = parse_echarts(r#"{"series":[{"type":"treemap","data":[{"name":"a","value":3}]}]}"#).unwrap();
        assert_eq!(m.chart_type, ChartType::Treemap);
        assert_eq!(m.title, None);
        assert_eq!(m.data.row_count(), 1);
        assert_eq!(m.data.cell(0, "name"), Some(&Cell::Text("a".into())));
        assert_eq!(m.data.numbers("value"), vec![(0, 3.0)]);
        assert_eq!(m.data.numbers("depth"), vec![(0, 1.0)]);

        let nested = parse_echarts(
            r#"{"series":[{"type":"treemap","data":[{"name":"p","children":[{"name":"c1","value":2},{"name":"c2","value":5}]}]}]}"#,
        )
        .unwrap();
        assert_eq!(nested.data.numbers("value"), vec![(0, 7.0), (1, 2.0), (2, 5.0)]);
        assert_eq!(nested.data.numbers("depth"), vec![(0, 1.0), (1, 2.0), (2, 2.0)]);
        assert_eq!(nested.data.cell(2, "parent"), Some(&Cell::Text("p".into())));
    }

    #[test]
    fn visual_map_short_hex() {
        let m = parse_echarts(
            r##"{"series":[{"type":"heatmap","data":[[0,0,1]]}],"visualMap":{"min":0,"max":10,"inRange":{"color":["#fff","#000"]}}}"##,
        )
        .unwrap();
        assert_eq!(
            m.color_scale,
            Some(ColorScale { domain_min: 0.0, domain_max: 10.0, min_color: Rgb::new(255, 255, 255), max_color: Rgb::new(0, 0, 0) })
        );
    }

    #[test]
    fn bar_categories_and_axes() {
        let m = parse_echarts(
            r#"{"xAxis":{"type":"category","name":"Fruit","data":["a","b"]},"yAxis":{"type":"value","name":"Count"},"series":[{"type":"bar","data":[4,{"value":6}]}]}"#,
        )
        .unwrap();
        assert_eq!(m.x_axis.as_ref().unwrap().title.as_deref(), Some("Fruit"));
        assert_eq!(m.y_axis.as_ref().unwrap().kind, AxisKind::Quantitative);
        assert_eq!(m.data.cell(1, "x"), Some(&Cell::Text("b".into())));
        assert_eq!(m.data.numbers("y"), vec![(0, 4.0), (1, 6.0)]);
    }

    #[test]
    fn heatmap_indices_map_to_categories() {
        let m = parse_echarts(
            r#"{"xAxis":{"type":"category","data":["p","q"]},"yAxis":{"type":"category","data":["r"]},"series":[{"type":"heatmap","data":[[1,0,9]]}]}"#,
        )
        .unwrap();
        assert_eq!(m.data.cell(0, "x"), Some(&Cell::Text("q".into())));
        assert_eq!(m.data.cell(0, "y"), Some(&Cell::Text("r".into())));
        assert_eq!(m.value_field.as_deref(), Some("value"));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_echarts(r#"{"title":{}}"#), Err(AdapterError::MalformedSpec(_))));
        assert!(matches!(parse_echarts(r#"{"series":[]}"#), Err(AdapterError::MalformedSpec(_))));
        assert_eq!(
            parse_echarts(r#"{"series":[{"type":"pie","data":[]}]}"#),
            Err(AdapterError::UnsupportedSeriesType("pie".into()))
        );
        assert!(matches!(parse_echarts(r#"{"series":[{"type":"bar"}]}"#), Err(AdapterError::MalformedSpec(_))));
    }
}
