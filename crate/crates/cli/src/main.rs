mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use ahoi_core::{ChartType, Grammar};
use clap::{Parser, Subcommand};

use output::{Log, LogFormat};

#[derive(Debug, Parser)]
#[command(name = "visahoi", version, about = "Compile onboarding messages for declarative charts")]
struct Cli {
    /// Format of warnings and errors on stderr.
    #[arg(long, value_enum, default_value_t = LogFormat::Text, global = true)]
    log_format: LogFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub(crate) enum Command {
    /// Build an onboarding bundle from a chart spec.
    Generate {
        /// vega-lite (vl), echarts or plotly.
        #[arg(long, value_parser = parse_grammar)]
        grammar: Grammar,
        #[arg(long)]
        spec: PathBuf,
        /// Chart type; detected from the spec when omitted.
        #[arg(long = "type", value_parser = parse_chart_type)]
        chart_type: Option<ChartType>,
        /// Rendered chart to resolve anchors against.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        context_key: Option<String>,
        #[arg(long)]
        patch: Option<PathBuf>,
        /// Template catalog overriding the built-in one per chart type.
        #[arg(long, env = "VISAHOI_TEMPLATES")]
        templates: Option<PathBuf>,
        /// Exit with code 2 when any message was dropped for an unresolved anchor.
        #[arg(long)]
        strict: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Draw bundle markers into an SVG.
    Annotate {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Apply a customization patch to a bundle.
    Patch {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        patch: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check bundle invariants.
    Validate {
        #[arg(long)]
        bundle: PathBuf,
    },
    /// Render an offline HTML preview.
    Preview {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn parse_grammar(s: &str) -> Result<Grammar, String> {
    s.parse()
}

fn parse_chart_type(s: &str) -> Result<ChartType, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let log = Log::new(cli.log_format);
    let result = std::panic::catch_unwind(|| commands::run(cli.command, &log));
    match result {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            log.error(&e);
            ExitCode::from(e.code())
        }
        Err(_) => {
            log.error(&commands::CliError::Internal("unexpected panic".into()));
            ExitCode::from(3)
        }
    }
}
