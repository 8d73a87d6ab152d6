//! Single-input commands. Each takes the input file contents and returns the
//! rendered output.

use std::fmt::Write as _;

use epicox::construction::{build_c, verify_l4_is_s5};
use epicox::graphs::{f_reduce, FiniteGraph, GraphDocument};
use epicox::homomorphisms::presentation_of;
use epicox::parabolics::classify_s5_classes;
use serde_json::json;

use crate::config::{OutputFormat, RunConfig};
use crate::outcome::{CliError, CliResult};

fn to_json_line<T: serde::Serialize>(value: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Reads an unpointed graph.
pub fn read_graph(input: &str) -> CliResult<FiniteGraph> {
    let doc = GraphDocument::parse(input)?;
    if doc.base.is_some() {
        return Err(CliError::input("expected a graph without a base vertex"));
    }
    Ok(doc.graph)
}

pub fn reduce_f(input: &str, format: OutputFormat) -> CliResult<String> {
    let pointed = f_reduce(&read_graph(input)?)?;
    let doc = GraphDocument::pointed(&pointed);
    match format {
        OutputFormat::Text => Ok(doc.to_text()),
        OutputFormat::Json => to_json_line(&doc.to_json()),
    }
}

pub fn emit_presentation(input: &str, format: OutputFormat) -> CliResult<String> {
    let sys = build_c(&read_graph(input)?);
    let presentation = presentation_of(sys.matrix());
    match format {
        OutputFormat::Text => Ok(presentation.to_text()),
        OutputFormat::Json => {
            let text = presentation.to_text();
            let relators: Vec<&str> = text.lines().skip(1).collect();
            to_json_line(&json!({ "generators": presentation.names(), "relators": relators }))
        }
    }
}

pub fn build_coxeter(input: &str, format: OutputFormat) -> CliResult<String> {
    let sys = build_c(&read_graph(input)?);
    let matrix = sys.matrix();
    match format {
        OutputFormat::Json => to_json_line(&matrix.to_json()),
        OutputFormat::Text => {
            let mut out = format!("rank {}\nnames {}\n", matrix.rank(), matrix.names().join(" "));
            for i in 0..matrix.rank() {
                let row: Vec<String> = (0..matrix.rank()).map(|j| matrix.label(i, j).to_string()).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
            Ok(out)
        }
    }
}

pub fn ks_classes(input: &str, config: &RunConfig) -> CliResult<String> {
    let sys = build_c(&read_graph(input)?);
    let classes = classify_s5_classes(&sys, config.enum_cap)?;
    let named: Vec<Vec<Vec<String>>> =
        classes.iter().map(|c| c.members().iter().map(|m| m.names(sys.matrix())).collect()).collect();
    match config.format {
        OutputFormat::Json => to_json_line(&named),
        OutputFormat::Text => {
            let mut out = String::new();
            for (i, class) in named.iter().enumerate() {
                let members: Vec<String> = class.iter().map(|m| format!("{{{}}}", m.join(", "))).collect();
                let _ = writeln!(out, "class {i}: {}", members.join(" "));
            }
            Ok(out)
        }
    }
}

pub fn k_graph(input: &str, config: &RunConfig) -> CliResult<String> {
    let graph = read_graph(input)?;
    let (sys, kg) = config.reconstructor().k_graph(&graph)?;
    match config.format {
        OutputFormat::Json => to_json_line(&kg.to_json(&sys)),
        OutputFormat::Text => {
            let mut out = GraphDocument::plain(kg.adjacency().clone()).to_text();
            for (&(i, j), (a, b)) in kg.witnesses() {
                let _ =
                    writeln!(out, "# witness {i} {j}: [{}, {}] = e", a.display(sys.matrix()), b.display(sys.matrix()));
            }
            Ok(out)
        }
    }
}

pub fn verify_l4(config: &RunConfig) -> CliResult<String> {
    let report = verify_l4_is_s5(config.enum_cap)?;
    match config.format {
        OutputFormat::Json => to_json_line(&report),
        OutputFormat::Text => Ok(format!(
            "order {}\nnonabelian {}\neven order {}\neven subgroup {}\neven simple {}\nlongest length {}\n",
            report.order,
            report.nonabelian,
            report.even_order,
            report.even_is_subgroup,
            report.even_is_simple,
            report.longest_length
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ExitStatus;

    const K2: &str = "n 2\ne 0 1\n";

    #[test]
    fn reduce_f_outputs() {
        let out = reduce_f(K2, OutputFormat::Text).unwrap();
        assert_eq!(out, "n 3 reflexive base 2\ne 0 2\ne 1 2\n");
        let out = reduce_f("n 3\ne 0 1\ne 1 2\n", OutputFormat::Text).unwrap();
        assert!(out.starts_with("n 4 reflexive base 3\n"));
        let err = reduce_f("n 2\n", OutputFormat::Text).unwrap_err();
        assert_eq!(err.status, ExitStatus::Input);
    }

    #[test]
    fn presentation_line_counts() {
        let count = |g: &str| emit_presentation(g, OutputFormat::Text).unwrap().lines().count() - 1;
        assert_eq!(count(K2), 25);
        assert_eq!(count("n 1\n"), 10);
        assert_eq!(count("n 0\n"), 0);
        let json: serde_json::Value =
            serde_json::from_str(&emit_presentation(K2, OutputFormat::Json).unwrap()).unwrap();
        assert_eq!(json["relators"].as_array().unwrap().len(), 25);
    }

    #[test]
    fn coxeter_matrix_round_trips_through_json() {
        let out = build_coxeter(K2, OutputFormat::Json).unwrap();
        let json: epicox::coxeter::CoxeterMatrixJson = serde_json::from_str(&out).unwrap();
        let matrix = epicox::coxeter::CoxeterMatrix::from_json(&json).unwrap();
        assert_eq!(&matrix, build_c(&read_graph(K2).unwrap()).matrix());
        let text = build_coxeter("n 1\n", OutputFormat::Text).unwrap();
        assert_eq!(text.lines().nth(2), Some("1 3 2 2"));
    }

    #[test]
    fn classes_and_k_graph() {
        let config = RunConfig { format: OutputFormat::Json, ..RunConfig::default() };
        let classes: Vec<Vec<Vec<String>>> = serde_json::from_str(&ks_classes(K2, &config).unwrap()).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0], vec![vec!["v0_1", "v0_2", "v0_3", "v0_4"]]);
        let text = k_graph(K2, &RunConfig::default()).unwrap();
        assert!(text.starts_with("n 2 reflexive\ne 0 1\n# witness 0 1"));
        assert_eq!(GraphDocument::parse(&text).unwrap().graph.edges(), vec![(0, 1)]);
    }

    #[test]
    fn pointed_input_is_rejected_where_unpointed_is_expected() {
        let err = build_coxeter("n 2 reflexive base 1\ne 0 1\n", OutputFormat::Text).unwrap_err();
        assert_eq!(err.status, ExitStatus::Input);
    }

    #[test]
    fn l4_report_text() {
        let out = verify_l4(&RunConfig::default()).unwrap();
        assert!(out.starts_with("order 120\nnonabelian true\neven order 60\n"));
    }
}
