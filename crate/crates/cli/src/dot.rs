use std::fmt::Write;

use concept_core::ConceptLattice;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n")
}

/// Hasse diagram with edges from each concept to its upper covers. A type is
/// written on its type concept and an instance on its instance concept.
pub fn emit_dot(l: &ConceptLattice) -> String {
    let k = l.classification();
    let n = l.len();
    let mut types = vec![Vec::new(); n];
    let mut instances = vec![Vec::new(); n];
    for (t, &c) in l.tau().as_slice().iter().enumerate() {
        types[c].push(k.types()[t].as_str());
    }
    for (a, &c) in l.iota().as_slice().iter().enumerate() {
        instances[c].push(k.instances()[a].as_str());
    }
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for c in 0..n {
        let label = format!("{}\n{}", types[c].join(", "), instances[c].join(", "));
        writeln!(out, "  c{c} [label=\"{}\"];", escape(&label)).unwrap();
    }
    let covers = l.lattice().covers();
    for (lower, upper) in covers.pairs() {
        writeln!(out, "  c{lower} -> c{upper};").unwrap();
    }
    out.push_str("}\n");
    out
}
