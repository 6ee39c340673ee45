//! Grammar-neutral description of a single chart.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::color::Rgb;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChartType {
    Scatterplot,
    BarChart,
    ChangeMatrix,
    Treemap,
    HorizonGraph,
    /// No built-in templates; messages are supplied by the caller.
    Generic,
}

impl ChartType {
    pub const ALL: [ChartType; 6] = [
        ChartType::Scatterplot,
        ChartType::BarChart,
        ChartType::ChangeMatrix,
        ChartType::Treemap,
        ChartType::HorizonGraph,
        ChartType::Generic,
    ];

    /// Canonical lowercase name, also used as the key in template catalog files.
    pub fn name(self) -> &'static str {
        match self {
            ChartType::Scatterplot => "scatterplot",
            ChartType::BarChart => "bar-chart",
            ChartType::ChangeMatrix => "change-matrix",
            ChartType::Treemap => "treemap",
            ChartType::HorizonGraph => "horizon-graph",
            ChartType::Generic => "generic",
        }
    }
}

impl fmt::Display for ChartType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChartType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "scatterplot" | "scatter" => ChartType::Scatterplot,
            "bar-chart" | "barchart" | "bar" => ChartType::BarChart,
            "change-matrix" | "changematrix" | "heatmap" => ChartType::ChangeMatrix,
            "treemap" => ChartType::Treemap,
            "horizon-graph" | "horizongraph" | "horizon" => ChartType::HorizonGraph,
            "generic" => ChartType::Generic,
            other => return Err(format!("unknown chart type `{other}`")),
        };
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grammar {
    VegaLite,
    #[serde(rename = "echarts")]
    ECharts,
    Plotly,
}

impl Grammar {
    pub fn name(self) -> &'static str {
        match self {
            Grammar::VegaLite => "vega-lite",
            Grammar::ECharts => "echarts",
            Grammar::Plotly => "plotly",
        }
    }
}

impl FromStr for Grammar {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "vega-lite" | "vegalite" | "vl" => Ok(Grammar::VegaLite),
            "echarts" => Ok(Grammar::ECharts),
            "plotly" => Ok(Grammar::Plotly),
            other => Err(format!("unknown grammar `{other}`")),
        }
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxisKind {
    Quantitative,
    Categorical,
    Temporal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisInfo {
    pub title: Option<String>,
    pub kind: AxisKind,
    /// Column in the [`DataTable`] backing this axis.
    pub field: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColorScale {
    pub domain_min: f64,
    pub domain_max: f64,
    pub min_color: Rgb,
    pub max_color: Rgb,
}

impl ColorScale {
    /// Builds a scale, swapping the domain ends (and colors) when given in descending order.
    pub fn new(a: f64, b: f64, min_color: Rgb, max_color: Rgb) -> Self {
        if a <= b {
            ColorScale { domain_min: a, domain_max: b, min_color, max_color }
        } else {
            ColorScale { domain_min: b, domain_max: a, min_color: max_color, max_color: min_color }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColumnKind {
    Number,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub kind: ColumnKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Cell {
    Number(f64),
    Text(String),
    Null,
}

impl Cell {
    pub fn as_number(&self) -> Option<f64> {
        match self {
            Cell::Number(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Cell::Text(s) => Some(s),
            _ => None,
        }
    }
}

/// Column-typed table; every row has exactly one cell per column.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DataTable {
    columns: Vec<Column>,
    rows: Vec<Vec<Cell>>,
}

impl DataTable {
    /// Builds a table from named columns of cells, inferring each column's kind.
    ///
    /// A column is `Number` when all its non-null cells are finite numbers. Non-finite
    /// numbers are stored as `Null`. Shorter columns are padded with `Null`.
    pub fn from_columns(cols: Vec<(String, Vec<Cell>)>) -> Self {
        let height = cols.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
        let mut columns = Vec::with_capacity(cols.len());
        let mut data: Vec<Vec<Cell>> = Vec::with_capacity(cols.len());
        for (name, mut cells) in cols {
            cells.resize(height, Cell::Null);
            for c in cells.iter_mut() {
                if matches!(c, Cell::Number(n) if !n.is_finite()) {
                    *c = Cell::Null;
                }
            }
            let numeric = cells.iter().all(|c| !matches!(c, Cell::Text(_)))
                && cells.iter().any(|c| matches!(c, Cell::Number(_)));
            columns.push(Column { name, kind: if numeric { ColumnKind::Number } else { ColumnKind::Text } });
            data.push(cells);
        }
        let mut rows = vec![Vec::with_capacity(columns.len()); height];
        for col in data {
            for (row, cell) in rows.iter_mut().zip(col) {
                row.push(cell);
            }
        }
        DataTable { columns, rows }
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    /// Finite numeric values of a column, in row order, with their row indices.
    pub fn numbers(&self, name: &str) -> Vec<(usize, f64)> {
        let Some(idx) = self.column_index(name) else {
            return Vec::new();
        };
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r[idx].as_number().map(|n| (i, n)))
            .collect()
    }

    pub fn cell(&self, row: usize, name: &str) -> Option<&Cell> {
        let idx = self.column_index(name)?;
        self.rows.get(row).map(|r| &r[idx])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartModel {
    pub grammar: Grammar,
    pub chart_type: ChartType,
    pub title: Option<String>,
    pub x_axis: Option<AxisInfo>,
    pub y_axis: Option<AxisInfo>,
    pub color_scale: Option<ColorScale>,
    pub legend_title: Option<String>,
    pub data: DataTable,
    pub width: Option<f64>,
    pub height: Option<f64>,
    /// Column holding the measured quantity (y for scatter/bar/horizon, color for matrices, size for treemaps).
    pub value_field: Option<String>,
    /// Label column for hierarchical data.
    pub label_field: Option<String>,
    /// Number of series/traces/layers in the input; only the first is modeled.
    pub series_count: usize,
}

impl ChartModel {
    pub(crate) fn empty(grammar: Grammar) -> Self {
        ChartModel {
            grammar,
            chart_type: ChartType::Generic,
            title: None,
            x_axis: None,
            y_axis: None,
            color_scale: None,
            legend_title: None,
            data: DataTable::default(),
            width: None,
            height: None,
            value_field: None,
            label_field: None,
            series_count: 1,
        }
    }
}
