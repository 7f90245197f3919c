//! Seeded synthetic tables for the benchmarks in `benches/`.

use std::fmt::Write;

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use threeway_core::{parse_table, IncompleteTable};

/// Shape of a generated table.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub objects: usize,
    pub attributes: usize,
    pub domain: usize,
    /// Per-mille chance that a cell is `*` rather than a known value.
    pub unknown: u32,
    /// Per-mille chance that a cell is a two-value disjunction.
    pub disjunctive: u32,
}

impl Shape {
    pub fn complete(objects: usize, attributes: usize, domain: usize) -> Self {
        Shape { objects, attributes, domain, unknown: 0, disjunctive: 0 }
    }
}

pub fn generate(shape: Shape, seed: u64) -> IncompleteTable {
    parse_table(&render(shape, seed)).expect("generated tables are well formed")
}

pub fn render(shape: Shape, seed: u64) -> String {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = String::from("@attributes");
    for a in 0..shape.attributes {
        let _ = write!(out, " a{a}");
    }
    out.push('\n');
    for a in 0..shape.attributes {
        let _ = write!(out, "@domain a{a}");
        for v in 0..shape.domain {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out.push_str("@objects\n");
    for x in 0..shape.objects {
        let _ = write!(out, "x{x}");
        for _ in 0..shape.attributes {
            let roll = rng.random_range(0..1000);
            let v = rng.random_range(0..shape.domain);
            if roll < shape.unknown {
                out.push_str(" *");
            } else if roll < shape.unknown + shape.disjunctive && shape.domain > 1 {
                let _ = write!(out, " {{{v}|{}}}", (v + 1) % shape.domain);
            } else {
                let _ = write!(out, " {v}");
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_table() {
        let shape = Shape { objects: 20, attributes: 4, domain: 3, unknown: 100, disjunctive: 100 };
        assert_eq!(render(shape, 7), render(shape, 7));
        let st = generate(shape, 7).to_set_valued().unwrap();
        assert_eq!(st.universe().len(), 20);
    }

    #[test]
    fn complete_shape_converts() {
        assert!(generate(Shape::complete(30, 3, 4), 1).to_set_valued().unwrap().to_complete().is_ok());
    }
}
