use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sforest::graph::Graph;
use sforest::relation::Relation;
use sforest::sterm::{parse_sterm, render_sterm};
use sforest::var::VarName;
use sforest::{
    collapse, destruction_film, linear_extensions, t_forests, ExportFormat, VerifyConfig,
};

#[derive(Parser)]
#[command(
    name = "sforest",
    about = "Destruction histories of finite graphs and their polytope skeletons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the destruction forests of a graph
    Forests { graph_path: PathBuf },
    /// Collapse the permutohedron skeleton along the graph's history classes
    Collapse {
        graph_path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the relation of an S-term
    Kappa { sterm: String },
    /// Print the S-term of a trifunctional partial order
    StermOf { relation_path: PathBuf },
    /// List the linear extensions of a partial order
    Extensions { relation_path: PathBuf },
    /// Replay a destruction history of a graph as film frames
    Film { graph_path: PathBuf, sterm: String },
    /// Run the verification harness
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        random_count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("{message}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Forests { graph_path } => {
            let g = load_graph(&graph_path)?;
            let mut rendered: Vec<String> =
                t_forests(&g).forests.iter().map(render_sterm).collect();
            rendered.sort();
            println!("{}", serde_json::to_string_pretty(&rendered).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Collapse { graph_path, format } => {
            let g = load_graph(&graph_path)?;
            let skeleton = collapse(&g).map_err(|e| e.to_string())?;
            let format = match format {
                Format::Dot => ExportFormat::Dot,
                Format::Json => ExportFormat::Json,
            };
            let text = skeleton.export(format);
            if text.ends_with('\n') {
                print!("{text}");
            } else {
                println!("{text}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Kappa { sterm } => {
            let t = parse_sterm(&sterm).map_err(|e| e.to_string())?;
            let r = t.kappa().map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string_pretty(&r).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::StermOf { relation_path } => {
            let r = load_relation(&relation_path)?;
            let t = sforest::sterm_of_ftp(&r).map_err(|e| e.to_string())?;
            println!("{}", render_sterm(&t));
            Ok(ExitCode::SUCCESS)
        }
        Command::Extensions { relation_path } => {
            let r = load_relation(&relation_path)?;
            let sequences: Vec<String> = linear_extensions(&r)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|p| p.to_string())
                .collect();
            println!("{}", serde_json::to_string_pretty(&sequences).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Film { graph_path, sterm } => {
            let g = load_graph(&graph_path)?;
            let t = parse_sterm(&sterm).map_err(|e| e.to_string())?;
            let frames = destruction_film(&g, &t).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string_pretty(&frames).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { max_n, random_count, seed } => {
            let config = VerifyConfig { max_n, random_count, seed };
            let reports = sforest::run_all(&config);
            println!("{}", serde_json::to_string_pretty(&reports).unwrap());
            if reports.iter().all(|r| r.is_pass()) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph, String> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    } else {
        parse_plain_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// Plain-text graph format: a `vertices: x y z` header line, then one `x y`
/// line per edge.
fn parse_plain_graph(text: &str) -> Result<Graph, String> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or("empty graph file")?;
    let names = header.strip_prefix("vertices:").ok_or("expected a vertices: header line")?;
    let vertices = names
        .split_whitespace()
        .map(|name| VarName::new(name).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut edges = Vec::new();
    for line in lines {
        let mut ends = line.split_whitespace();
        match (ends.next(), ends.next(), ends.next()) {
            (Some(a), Some(b), None) => {
                let a = VarName::new(a).map_err(|e| e.to_string())?;
                let b = VarName::new(b).map_err(|e| e.to_string())?;
                edges.push((a, b));
            }
            _ => return Err(format!("bad edge line: {line:?}")),
        }
    }
    Graph::new(vertices, edges).map_err(|e| e.to_string())
}

fn load_relation(path: &Path) -> Result<Relation, String> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}
