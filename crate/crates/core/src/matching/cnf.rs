use crate::graph::Multigraph;
use std::fmt::Write;

/// DIMACS CNF satisfiable iff `g` has `m` pairwise disjoint perfect
/// matchings.
///
/// Variable `i * |E| + e + 1` says edge `e` is in matching `i`. For every
/// matching and vertex: at least one incident edge, and pairwise at most
/// one. For every edge: pairwise at most one matching.
pub fn cnf_export(g: &Multigraph, m: usize) -> String {
    let edges = g.edge_count();
    let var = |e: usize, i: usize| i * edges + e + 1;
    let mut clauses: Vec<Vec<isize>> = Vec::new();
    for i in 0..m {
        for v in g.vertices() {
            let inc: Vec<usize> = g.incident(v).iter().map(|e| e.0).collect();
            clauses.push(inc.iter().map(|&e| var(e, i) as isize).collect());
            for (x, &a) in inc.iter().enumerate() {
                for &b in &inc[x + 1..] {
                    clauses.push(vec![-(var(a, i) as isize), -(var(b, i) as isize)]);
                }
            }
        }
    }
    for e in 0..edges {
        for i in 0..m {
            for j in i + 1..m {
                clauses.push(vec![-(var(e, i) as isize), -(var(e, j) as isize)]);
            }
        }
    }
    let mut out = String::new();
    writeln!(out, "c {m} disjoint perfect matchings, {} vertices, {edges} edges", g.vertex_count()).unwrap();
    writeln!(out, "p cnf {} {}", m * edges, clauses.len()).unwrap();
    for clause in &clauses {
        for lit in clause {
            write!(out, "{lit} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}
