//! Output formats for covers: a structured-text record, JSON, and DOT for
//! visual inspection.

use crate::cover::{Node, TropicalCover};
use crate::rational::format_rational;
use serde::Serialize;

fn node_str(n: Node) -> String {
    match n {
        Node::LeftEnd => "-inf".into(),
        Node::RightEnd => "+inf".into(),
        Node::Inner(i) => format!("v{i}"),
    }
}

/// One structured-text record per cover.
pub fn cover_to_text(c: &TropicalCover) -> String {
    let mut out = String::new();
    out.push_str(&format!("cover genus={}\n", c.genus));
    let vertices: Vec<String> = (0..c.num_vertices).map(|i| format!("v{i}")).collect();
    out.push_str(&format!("  vertices: {}\n", vertices.join(" ")));
    for e in &c.edges {
        out.push_str(&format!(
            "  edge: weight={} source={} target={}\n",
            e.weight,
            node_str(e.source),
            node_str(e.target)
        ));
    }
    out.push_str(&format!("  aut: {}\n", c.automorphism_count()));
    out.push_str(&format!(
        "  mult_complex: {}\n",
        format_rational(&c.mult_complex())
    ));
    out
}

#[derive(Serialize)]
struct EdgeRecord {
    weight: u64,
    source: String,
    target: String,
}

#[derive(Serialize)]
struct CoverRecord {
    genus: u64,
    vertices: Vec<String>,
    edges: Vec<EdgeRecord>,
    aut: u64,
    mult_complex: String,
}

pub fn cover_to_json(c: &TropicalCover) -> serde_json::Value {
    let record = CoverRecord {
        genus: c.genus,
        vertices: (0..c.num_vertices).map(|i| format!("v{i}")).collect(),
        edges: c
            .edges
            .iter()
            .map(|e| EdgeRecord {
                weight: e.weight,
                source: node_str(e.source),
                target: node_str(e.target),
            })
            .collect(),
        aut: c.automorphism_count(),
        mult_complex: format_rational(&c.mult_complex()),
    };
    serde_json::to_value(record).expect("cover record serializes")
}

/// DOT digraph; ends get unique node names so parallel leaves stay apart.
pub fn cover_to_dot(c: &TropicalCover) -> String {
    let mut out = String::from("digraph cover {\n  rankdir=LR;\n");
    let mut end_id = 0usize;
    let mut lines = Vec::new();
    for e in &c.edges {
        let src = match e.source {
            Node::LeftEnd => {
                end_id += 1;
                let name = format!("l{end_id}");
                lines.push(format!("  {name} [label=\"-inf\", shape=none];"));
                name
            }
            Node::Inner(i) => format!("v{i}"),
            Node::RightEnd => unreachable!("right end cannot be a source"),
        };
        let tgt = match e.target {
            Node::RightEnd => {
                end_id += 1;
                let name = format!("r{end_id}");
                lines.push(format!("  {name} [label=\"+inf\", shape=none];"));
                name
            }
            Node::Inner(i) => format!("v{i}"),
            Node::LeftEnd => unreachable!("left end cannot be a target"),
        };
        lines.push(format!("  {src} -> {tgt} [label=\"{}\"];", e.weight));
    }
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_covers;
    use crate::partitions::Partition;
    use crate::Caps;

    #[test]
    fn text_record_has_all_fields() {
        let covers = enumerate_covers(
            0,
            &Partition::new(vec![3]),
            &Partition::new(vec![1, 1, 1]),
            Caps::ENUMERATION,
        )
        .unwrap();
        let text = cover_to_text(&covers[0]);
        assert!(text.contains("genus=0"));
        assert!(text.contains("source=-inf"));
        assert!(text.contains("target=+inf"));
        assert!(text.contains("aut: 2"));
        assert!(text.contains("mult_complex: 1"));
    }

    #[test]
    fn json_and_dot_render() {
        let covers = enumerate_covers(
            0,
            &Partition::new(vec![2, 1]),
            &Partition::new(vec![2, 1]),
            Caps::ENUMERATION,
        )
        .unwrap();
        for c in &covers {
            let v = cover_to_json(c);
            assert_eq!(v["genus"], 0);
            let dot = cover_to_dot(c);
            assert!(dot.starts_with("digraph"));
        }
    }
}
