//! Random table generators for unit tests.

use std::collections::BTreeSet;

use proptest::prelude::*;

use crate::table::{
    AttrId, AttributeSchema, Cell, CompleteTable, IncompleteTable, Schema, SetValuedTable, Token,
    TokenSet, Universe, ValueId,
};

pub const TABLE4: &str = include_str!("../tests/fixtures/table4.itab");
pub const TABLE1: &str = include_str!("../tests/fixtures/table1.itab");

fn schema(domains: &[usize]) -> Schema {
    Schema::new(
        domains
            .iter()
            .enumerate()
            .map(|(i, d)| {
                AttributeSchema::new(format!("a{}", i + 1), (0..*d).map(|v| v.to_string()).collect())
                    .unwrap()
            })
            .collect(),
    )
    .unwrap()
}

fn universe(n: usize) -> Universe {
    Universe::new((0..n).map(|i| format!("x{}", i + 1)).collect()).unwrap()
}

/// Complete tables with 1..=`objects` rows, 1..=`attrs` attributes and
/// domains of size 1..=`domain`.
pub fn arb_complete(objects: usize, attrs: usize, domain: usize) -> impl Strategy<Value = CompleteTable> {
    (proptest::collection::vec(1..=domain, 1..=attrs), 1..=objects)
        .prop_flat_map(|(domains, n)| {
            let row: Vec<_> = domains.iter().map(|d| 0..*d).collect();
            (Just(domains), proptest::collection::vec(row, n))
        })
        .prop_map(|(domains, rows)| {
            let n = rows.len();
            let rows = rows
                .into_iter()
                .map(|r| r.into_iter().map(ValueId).collect())
                .collect();
            CompleteTable::new(schema(&domains), universe(n), rows).unwrap()
        })
}

/// Nonempty cell sets: `{NA}` with some probability, otherwise a nonempty
/// subset of the domain.
fn arb_cell(domain: usize) -> impl Strategy<Value = TokenSet> {
    prop_oneof![
        1 => Just([Token::Na].into_iter().collect::<TokenSet>()),
        6 => proptest::collection::btree_set(0..domain, 1..=domain)
            .prop_map(|s| s.into_iter().map(|v| Token::Value(ValueId(v))).collect::<TokenSet>()),
    ]
}

/// Set-valued tables with shapes bounded like [`arb_complete`].
pub fn arb_set_valued(objects: usize, attrs: usize, domain: usize) -> impl Strategy<Value = SetValuedTable> {
    (proptest::collection::vec(1..=domain, 1..=attrs), 1..=objects)
        .prop_flat_map(|(domains, n)| {
            let row: Vec<_> = domains.iter().map(|d| arb_cell(*d)).collect();
            (Just(domains), proptest::collection::vec(row, n))
        })
        .prop_map(|(domains, cells)| {
            SetValuedTable::new(schema(&domains), universe(cells.len()), cells).unwrap()
        })
}

/// Incomplete tables over all five cell kinds (class-specific cells may fail
/// to resolve).
pub fn arb_incomplete(objects: usize, attrs: usize, domain: usize) -> impl Strategy<Value = IncompleteTable> {
    (proptest::collection::vec(1..=domain, 2..=attrs.max(2)), 1..=objects)
        .prop_flat_map(|(domains, n)| {
            let width = domains.len();
            let row: Vec<_> = domains
                .iter()
                .enumerate()
                .map(|(a, d)| {
                    let d = *d;
                    let partial = if d >= 2 {
                        proptest::sample::subsequence((0..d).collect::<Vec<_>>(), 2..=d)
                            .prop_map(|s| Cell::Partial(s.into_iter().map(ValueId).collect::<BTreeSet<_>>()))
                            .boxed()
                    } else {
                        Just(Cell::DoNotCare).boxed()
                    };
                    prop_oneof![
                        4 => (0..d).prop_map(|v| Cell::Known(ValueId(v))).boxed(),
                        1 => Just(Cell::DoNotCare).boxed(),
                        1 => Just(Cell::NotApplicable).boxed(),
                        1 => partial,
                        1 => (0..width - 1)
                            .prop_map(move |b| Cell::ClassSpecific(AttrId(if b >= a { b + 1 } else { b })))
                            .boxed(),
                    ]
                })
                .collect();
            (Just(domains), proptest::collection::vec(row, n))
        })
        .prop_map(|(domains, cells)| {
            IncompleteTable::new(schema(&domains), universe(cells.len()), cells).unwrap()
        })
}
