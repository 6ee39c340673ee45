//! Where each grammar's rendered SVG puts titles, legends and marks.
//!
//! These are the class conventions the anchor directives target. Plotly's axis
//! titles follow its real DOM (`.infolayer .ytitle`); the remaining entries are
//! conventions the rendered SVG is expected to follow.

use crate::model::{ChartType, Grammar};
use crate::svg::Measure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DomConventions {
    pub x_title: &'static str,
    pub y_title: &'static str,
    pub legend: &'static str,
    /// Group holding the data marks.
    pub mark_group: &'static str,
    /// Element type of a single mark inside `mark_group`.
    pub mark_tag: &'static str,
}

impl DomConventions {
    pub fn for_chart(grammar: Grammar, chart_type: ChartType) -> Self {
        let mark_tag = match chart_type {
            ChartType::Scatterplot | ChartType::Generic => "circle",
            ChartType::BarChart | ChartType::ChangeMatrix | ChartType::Treemap | ChartType::HorizonGraph => "rect",
        };
        match grammar {
            Grammar::Plotly => DomConventions {
                x_title: ".infolayer .xtitle",
                y_title: ".infolayer .ytitle",
                legend: ".infolayer .colorbar",
                mark_group: match chart_type {
                    ChartType::BarChart => ".barlayer .bars",
                    ChartType::ChangeMatrix => ".heatmaplayer .cells",
                    ChartType::Treemap => ".treemaplayer .slices",
                    ChartType::HorizonGraph => ".scatterlayer .trace",
                    ChartType::Scatterplot | ChartType::Generic => ".scatterlayer .points",
                },
                mark_tag,
            },
            Grammar::VegaLite => DomConventions {
                x_title: ".x-axis .role-axis-title",
                y_title: ".y-axis .role-axis-title",
                legend: ".role-legend",
                mark_group: match chart_type {
                    ChartType::BarChart | ChartType::ChangeMatrix | ChartType::Treemap => ".mark-rect",
                    ChartType::HorizonGraph => ".mark-area",
                    ChartType::Scatterplot | ChartType::Generic => ".mark-symbol",
                },
                mark_tag,
            },
            Grammar::ECharts => DomConventions {
                x_title: ".ec-x-axis .ec-axis-name",
                y_title: ".ec-y-axis .ec-axis-name",
                legend: ".ec-visual-map",
                mark_group: ".ec-series",
                mark_tag,
            },
        }
    }

    pub fn marks(&self) -> String {
        format!("{} {}", self.mark_group, self.mark_tag)
    }
}

/// Measure whose extremes locate the data minimum/maximum among marks, and
/// whether the minimum is found at the measure's *largest* value (y grows downwards).
pub(crate) fn extremum_measure(chart_type: ChartType) -> Option<(Measure, bool)> {
    match chart_type {
        ChartType::Scatterplot | ChartType::Generic => Some((Measure::Cy, true)),
        ChartType::BarChart => Some((Measure::RectHeight, false)),
        ChartType::Treemap => Some((Measure::RectArea, false)),
        ChartType::ChangeMatrix | ChartType::HorizonGraph => None,
    }
}
