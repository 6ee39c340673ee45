#![allow(dead_code)]

use std::path::PathBuf;

use ahoi_core::{ChartType, Grammar};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn read(name: &str) -> String {
    std::fs::read_to_string(fixture_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub stem: &'static str,
    pub grammar: Grammar,
    pub chart_type: ChartType,
}

impl Fixture {
    pub fn suffix(&self) -> &'static str {
        match self.grammar {
            Grammar::Plotly => "plotly",
            Grammar::VegaLite => "vl",
            Grammar::ECharts => "echarts",
        }
    }

    pub fn spec_name(&self) -> String {
        format!("{}.{}.json", self.stem, self.suffix())
    }

    pub fn svg_name(&self) -> String {
        format!("{}.{}.svg", self.stem, self.suffix())
    }

    pub fn spec(&self) -> String {
        read(&self.spec_name())
    }

    pub fn svg(&self) -> String {
        read(&self.svg_name())
    }
}

const fn fx(stem: &'static str, grammar: Grammar, chart_type: ChartType) -> Fixture {
    Fixture { stem, grammar, chart_type }
}

pub const FIXTURES: [Fixture; 13] = [
    fx("scatter", Grammar::Plotly, ChartType::Scatterplot),
    fx("scatter", Grammar::VegaLite, ChartType::Scatterplot),
    fx("scatter", Grammar::ECharts, ChartType::Scatterplot),
    fx("bar", Grammar::Plotly, ChartType::BarChart),
    fx("bar", Grammar::VegaLite, ChartType::BarChart),
    fx("bar", Grammar::ECharts, ChartType::BarChart),
    fx("heatmap", Grammar::VegaLite, ChartType::ChangeMatrix),
    fx("heatmap", Grammar::ECharts, ChartType::ChangeMatrix),
    fx("treemap", Grammar::Plotly, ChartType::Treemap),
    fx("treemap", Grammar::ECharts, ChartType::Treemap),
    fx("horizon", Grammar::Plotly, ChartType::HorizonGraph),
    fx("horizon", Grammar::VegaLite, ChartType::HorizonGraph),
    fx("horizon", Grammar::ECharts, ChartType::HorizonGraph),
];
