use std::fmt::Write;

use fglattice::fundamental::FundamentalLattice;

/// Hasse diagram as a DOT digraph named `lattice`, edges pointing from the
/// smaller subgroup to the larger.
pub fn render(fl: &FundamentalLattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for e in &fl.elements {
        writeln!(
            out,
            "  n{} [label=\"{} | {}\"];",
            e.id, e.matrix, e.subgroup_order
        )
        .unwrap();
    }
    for &(lo, hi) in fl.lattice.hasse_edges() {
        writeln!(out, "  n{lo} -> n{hi};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use fglattice::fundamental::build_lattice;
    use fglattice::GroupSignature;

    #[test]
    fn chain_of_four() {
        let fl = build_lattice(&GroupSignature::new(vec![4]).unwrap()).unwrap();
        let dot = render(&fl);
        assert!(dot.starts_with("digraph lattice {"));
        assert!(dot.contains("n0 [label=\"1 | 4\"];"));
        assert!(dot.contains("n2 [label=\"4 | 1\"];"));
        assert!(dot.contains("n2 -> n1;"));
        assert_eq!(dot.matches("->").count(), 2);
    }
}
