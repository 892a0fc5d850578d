use std::fmt::Write;

use super::FinitePoset;

/// Graphviz digraph of the covering relation, drawn bottom to top.
pub fn to_dot(poset: &FinitePoset) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for (i, label) in poset.labels().iter().enumerate() {
        let text = label.to_string().replace('\\', "\\\\").replace('"', "\\\"");
        writeln!(out, "  n{i} [label=\"{text}\"];").unwrap();
    }
    for (i, j) in poset.covers() {
        writeln!(out, "  n{i} -> n{j};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_has_two_covers() {
        let dot = to_dot(&FinitePoset::chain(3));
        assert!(dot.starts_with("digraph hasse {"));
        assert!(dot.contains("n0 -> n1;") && dot.contains("n1 -> n2;"));
        assert!(!dot.contains("n0 -> n2;"));
        assert!(dot.contains("n2 [label=\"2\"];"));
    }
}
