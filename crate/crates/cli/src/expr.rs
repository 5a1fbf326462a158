//! Graph arguments: named tokens, JSON files, and parenthesized constructions.
//!
//! ```text
//! expr  := "(" kind arg* ")" | token | path
//! token := Kn | Pn | Cn | En | Km,n
//! ```
//!
//! Construction arguments are either graph expressions or plain words
//! (integers, comma-separated vertex lists).

use std::path::Path;

use pairwalk_core::construct::{
    attach, blow_up, cartesian, complement, complete_minus_cycle, complete_minus_matching, edge_corona,
    neighborhood_corona, sequential_join, vertex_corona, AttachmentPlan,
};
use pairwalk_core::{Cluster, WeightedGraph};

use crate::Failure;

pub const KINDS: [&str; 10] = [
    "attach",
    "complement",
    "seqjoin",
    "cartesian",
    "vcorona",
    "ecorona",
    "ncorona",
    "blowup",
    "kn-minus-matching",
    "kn-minus-cycle",
];

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Word(String),
    List(Vec<Node>),
}

fn tokenize(src: &str) -> Vec<String> {
    let spaced = src.replace('(', " ( ").replace(')', " ) ");
    spaced.split_whitespace().map(str::to_string).collect()
}

fn parse_nodes(tokens: &[String]) -> Result<Vec<Node>, Failure> {
    let mut stack: Vec<Vec<Node>> = vec![Vec::new()];
    for tok in tokens {
        match tok.as_str() {
            "(" => stack.push(Vec::new()),
            ")" => {
                let done = stack.pop().expect("stack starts non-empty");
                let parent = stack
                    .last_mut()
                    .ok_or_else(|| Failure::usage("unbalanced ')' in graph expression"))?;
                parent.push(Node::List(done));
            }
            _ => stack.last_mut().expect("stack starts non-empty").push(Node::Word(tok.clone())),
        }
    }
    if stack.len() != 1 {
        return Err(Failure::usage("unbalanced '(' in graph expression"));
    }
    Ok(stack.pop().unwrap())
}

fn parse_size(s: &str, what: &str) -> Result<usize, Failure> {
    s.parse()
        .map_err(|_| Failure::usage(format!("expected a non-negative integer for {what}, got '{s}'")))
}

/// Named graph token, if `s` is one.
pub fn named_graph(s: &str) -> Option<Result<WeightedGraph, Failure>> {
    let mut chars = s.chars();
    let head = chars.next()?;
    let rest = chars.as_str();
    if rest.is_empty() || !rest.chars().next().unwrap().is_ascii_digit() {
        return None;
    }
    let body = || -> Result<WeightedGraph, Failure> {
        match head {
            'K' => match rest.split_once(',') {
                Some((m, n)) => Ok(WeightedGraph::complete_bipartite(parse_size(m, s)?, parse_size(n, s)?)),
                None => Ok(WeightedGraph::complete(parse_size(rest, s)?)),
            },
            'P' => Ok(WeightedGraph::path(parse_size(rest, s)?)),
            'C' => {
                let n = parse_size(rest, s)?;
                if n < 3 {
                    return Err(Failure::usage(format!("cycle needs at least 3 vertices, got {s}")));
                }
                Ok(WeightedGraph::cycle(n))
            }
            'E' => Ok(WeightedGraph::empty(parse_size(rest, s)?)),
            _ => Err(Failure::usage(format!("unknown graph token '{s}'"))),
        }
    };
    matches!(head, 'K' | 'P' | 'C' | 'E').then(body)
}

fn word_graph(s: &str) -> Result<WeightedGraph, Failure> {
    if let Some(g) = named_graph(s) {
        let g = g?;
        if g.order() == 0 {
            return Err(Failure::usage(format!("graph '{s}' has no vertices")));
        }
        return Ok(g);
    }
    if Path::new(s).is_file() {
        return WeightedGraph::read_json(s).map_err(Failure::Core);
    }
    Err(Failure::usage(format!("'{s}' is neither a graph token (Kn, Pn, Cn, En, Km,n) nor a readable file")))
}

fn node_graph(node: &Node) -> Result<WeightedGraph, Failure> {
    match node {
        Node::Word(w) => word_graph(w),
        Node::List(items) => {
            let (kind, args) = items
                .split_first()
                .ok_or_else(|| Failure::usage("empty '()' in graph expression"))?;
            let Node::Word(kind) = kind else {
                return Err(Failure::usage("construction kind must be a word"));
            };
            construct(kind, args)
        }
    }
}

fn word(node: &Node) -> Result<&str, Failure> {
    match node {
        Node::Word(w) => Ok(w),
        Node::List(_) => Err(Failure::usage("expected a number or vertex list, got a graph expression")),
    }
}

fn arity(kind: &str, args: &[Node], n: usize) -> Result<(), Failure> {
    if args.len() != n {
        return Err(Failure::usage(format!("{kind} takes {n} arguments, got {}", args.len())));
    }
    Ok(())
}

fn construct(kind: &str, args: &[Node]) -> Result<WeightedGraph, Failure> {
    let graphs = |nodes: &[Node]| nodes.iter().map(node_graph).collect::<Result<Vec<_>, _>>();
    let g = match kind {
        "attach" => {
            arity(kind, args, 3)?;
            let base = node_graph(&args[0])?;
            let inner = node_graph(&args[1])?;
            let members = word(&args[2])?
                .split(',')
                .map(|v| parse_size(v.trim(), "cluster member"))
                .collect::<Result<Vec<_>, _>>()?;
            let cluster = Cluster::from_members(&base, &members)?;
            attach(&AttachmentPlan::in_member_order(base, cluster, inner)?)?
        }
        "complement" => {
            arity(kind, args, 1)?;
            complement(&node_graph(&args[0])?)?
        }
        "seqjoin" => sequential_join(&graphs(args)?)?,
        "cartesian" | "vcorona" | "ecorona" | "ncorona" => {
            arity(kind, args, 2)?;
            let (g, h) = (node_graph(&args[0])?, node_graph(&args[1])?);
            match kind {
                "cartesian" => cartesian(&g, &h),
                "vcorona" => vertex_corona(&g, &h),
                "ecorona" => edge_corona(&g, &h),
                _ => neighborhood_corona(&g, &h),
            }
        }
        "blowup" => {
            if args.len() < 2 {
                return Err(Failure::usage("blowup takes G, c and one inner graph per vertex of G"));
            }
            let g = node_graph(&args[0])?;
            let c = parse_size(word(&args[1])?, "blow-up size")?;
            blow_up(&g, c, &graphs(&args[2..])?)?
        }
        "kn-minus-matching" | "kn-minus-cycle" => {
            arity(kind, args, 2)?;
            let n = parse_size(word(&args[0])?, "n")?;
            let m = parse_size(word(&args[1])?, "second parameter")?;
            if kind == "kn-minus-matching" {
                complete_minus_matching(n, m)?
            } else {
                let k = u32::try_from(m).map_err(|_| Failure::usage("cycle exponent too large"))?;
                complete_minus_cycle(n, k)?
            }
        }
        _ => {
            return Err(Failure::usage(format!(
                "unknown construction '{kind}' (expected one of {})",
                KINDS.join(", ")
            )))
        }
    };
    Ok(g)
}

/// Evaluates a single graph argument.
pub fn parse_graph(src: &str) -> Result<WeightedGraph, Failure> {
    let nodes = parse_nodes(&tokenize(src))?;
    match nodes.as_slice() {
        [node] => node_graph(node),
        // a bare construction without the outer parentheses
        [Node::Word(kind), args @ ..] if KINDS.contains(&kind.as_str()) => construct(kind, args),
        _ => Err(Failure::usage(format!("could not read a graph from '{src}'"))),
    }
}

/// Evaluates `kind` applied to the (already split) command-line parameters.
pub fn run_construct(kind: &str, params: &[String]) -> Result<WeightedGraph, Failure> {
    let args = parse_nodes(&tokenize(&params.join(" ")))?;
    construct(kind, &args)
}
