//! Reading graphs from files, graph6 strings and named families.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use trailtrap::graph::{complete, complete_bipartite, cycle, grid, path, prism};
use trailtrap::io::{parse_edge_list, parse_graph6};
use trailtrap::Graph;

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct GraphInput {
    /// Edge-list file: a line `n m`, then `m` lines `u v`.
    #[arg(long, value_name = "FILE")]
    pub edges: Option<PathBuf>,
    /// A graph6 string.
    #[arg(long, value_name = "STR")]
    pub graph6: Option<String>,
    /// k_n:N, k_pq:P,Q, grid:M,N, prism:N, path:N, cycle:N or diamond.
    #[arg(long, value_name = "FAMILY")]
    pub family: Option<String>,
}

impl GraphInput {
    pub fn load(&self) -> Result<Graph> {
        if let Some(p) = &self.edges {
            return read_edge_list(p);
        }
        if let Some(s) = &self.graph6 {
            return parse_graph6(s.trim()).with_context(|| format!("bad graph6 string {s:?}"));
        }
        family(self.family.as_deref().expect("clap enforces one input"))
    }
}

pub fn read_edge_list(p: &Path) -> Result<Graph> {
    let text = fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
    parse_edge_list(&text).with_context(|| format!("bad edge list in {}", p.display()))
}

fn numbers(args: &str, want: usize, desc: &str) -> Result<Vec<usize>> {
    let v: Vec<usize> = args
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("bad parameters in family {desc:?}"))?;
    if v.len() != want {
        bail!("family {desc:?} needs {want} parameter(s)");
    }
    Ok(v)
}

pub fn family(desc: &str) -> Result<Graph> {
    if desc == "diamond" {
        return Ok(Graph::new(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])?);
    }
    let (name, args) = desc.split_once(':').with_context(|| format!("family {desc:?} needs NAME:PARAMS"))?;
    let g = match name {
        "k_n" => complete(numbers(args, 1, desc)?[0]),
        "k_pq" => {
            let v = numbers(args, 2, desc)?;
            complete_bipartite(v[0], v[1])
        }
        "grid" => {
            let v = numbers(args, 2, desc)?;
            grid(v[0], v[1])
        }
        "prism" => prism(numbers(args, 1, desc)?[0]),
        "path" => path(numbers(args, 1, desc)?[0]),
        "cycle" => cycle(numbers(args, 1, desc)?[0]),
        _ => bail!("unknown family {name:?}"),
    };
    g.with_context(|| format!("cannot build family {desc:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        assert_eq!(family("k_n:4").unwrap().m(), 6);
        assert_eq!(family("k_pq:3,5").unwrap().m(), 15);
        assert_eq!(family("grid:2,7").unwrap().n(), 14);
        assert_eq!(family("diamond").unwrap().m(), 5);
        assert!(family("k_pq:3").is_err());
        assert!(family("wheel:5").is_err());
        assert!(family("k_n").is_err());
    }
}
