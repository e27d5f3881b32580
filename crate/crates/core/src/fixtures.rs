//! Named example graphs used throughout the tests, docs and CLI fixtures.

use crate::graph::{EdgeSpec, Graph, GraphSpec};

/// Simple cycle `v1 -e1-> v2 -e2-> ... -en-> v1`.
pub fn cycle(n: usize) -> Graph {
    Graph::from_spec(&cycle_spec(n, "v", "e")).expect("cycle fixture is valid")
}

fn cycle_spec(n: usize, vertex_prefix: &str, edge_prefix: &str) -> GraphSpec {
    assert!(n >= 1, "a cycle needs at least one vertex");
    GraphSpec {
        vertices: (1..=n).map(|i| format!("{vertex_prefix}{i}")).collect(),
        edges: (1..=n)
            .map(|i| {
                EdgeSpec::new(
                    format!("{edge_prefix}{i}"),
                    format!("{vertex_prefix}{i}"),
                    format!("{vertex_prefix}{}", i % n + 1),
                )
            })
            .collect(),
    }
}

/// Loop `a` at `u`, `b: u -> w`, loop `c` at `w`, `d: w -> u`.
pub fn exit_graph() -> Graph {
    Graph::build(
        &["u", "w"],
        &[
            ("a", "u", "u"),
            ("b", "u", "w"),
            ("c", "w", "w"),
            ("d", "w", "u"),
        ],
    )
    .expect("fixture is valid")
}

/// Loop `a` at `u`, `b: u -> w`, loop `c` at `w`.
pub fn two_loops() -> Graph {
    Graph::build(
        &["u", "w"],
        &[("a", "u", "u"), ("b", "u", "w"), ("c", "w", "w")],
    )
    .expect("fixture is valid")
}

/// `b: u -> w` and loop `c` at `w`.
pub fn source_loop() -> Graph {
    Graph::build(&["u", "w"], &[("b", "u", "w"), ("c", "w", "w")]).expect("fixture is valid")
}

/// Disjoint union of simple cycles of lengths 2, 3 and 4.
pub fn lcm() -> Graph {
    let parts = [
        cycle_spec(2, "v", "e"),
        cycle_spec(3, "w", "f"),
        cycle_spec(4, "x", "g"),
    ];
    let mut spec = GraphSpec::default();
    for p in parts {
        spec.vertices.extend(p.vertices);
        spec.edges.extend(p.edges);
    }
    Graph::from_spec(&spec).expect("fixture is valid")
}

pub fn isolated_vertex() -> Graph {
    Graph::build(&["v"], &[]).expect("fixture is valid")
}

/// One vertex carrying two loops.
pub fn rose(petals: usize) -> Graph {
    let names: Vec<String> = (1..=petals).map(|i| format!("e{i}")).collect();
    let edges: Vec<(&str, &str, &str)> = names.iter().map(|n| (n.as_str(), "v", "v")).collect();
    Graph::build(&["v"], &edges).expect("fixture is valid")
}

/// Two vertices joined by a pair of parallel edges each way.
pub fn doubled_two_cycle() -> Graph {
    Graph::build(
        &["u", "w"],
        &[
            ("p", "u", "w"),
            ("q", "u", "w"),
            ("r", "w", "u"),
            ("s", "w", "u"),
        ],
    )
    .expect("fixture is valid")
}

/// Three-cycle `x -> y -> z -> x` with a chord `y -> x`.
pub fn chorded_triangle() -> Graph {
    Graph::build(
        &["x", "y", "z"],
        &[
            ("a", "x", "y"),
            ("b", "y", "z"),
            ("c", "z", "x"),
            ("d", "y", "x"),
        ],
    )
    .expect("fixture is valid")
}

/// Every named fixture with its canonical name.
pub fn all() -> Vec<(&'static str, Graph)> {
    vec![
        ("cycle1", cycle(1)),
        ("cycle2", cycle(2)),
        ("cycle3", cycle(3)),
        ("cycle5", cycle(5)),
        ("exit", exit_graph()),
        ("two_loops", two_loops()),
        ("source_loop", source_loop()),
        ("lcm", lcm()),
        ("isolated", isolated_vertex()),
        ("rose2", rose(2)),
        ("rose3", rose(3)),
        ("doubled_two_cycle", doubled_two_cycle()),
        ("chorded_triangle", chorded_triangle()),
    ]
}
