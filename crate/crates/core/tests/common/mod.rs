//! Fixtures, worked-example data and random generators shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

use threeway_core::table::TokenSet;
use threeway_core::{
    enumerate_cdl, parse_table, AttributeSchema, CompleteTable, Degree, Formula, Mode, ObjectId,
    ObjectSet, Schema, SetValuedTable, Token, Universe, ValueId,
};

pub const TABLE1_SRC: &str = include_str!("../fixtures/table1.itab");
pub const TABLE4_SRC: &str = include_str!("../fixtures/table4.itab");

pub fn table1() -> CompleteTable {
    parse_table(TABLE1_SRC)
        .unwrap()
        .to_set_valued()
        .unwrap()
        .to_complete()
        .unwrap()
}

pub fn table4() -> SetValuedTable {
    parse_table(TABLE4_SRC).unwrap().to_set_valued().unwrap()
}

/// `{x_i | i in idx}` by 1-based object number.
pub fn objs(u: &Universe, idx: &[usize]) -> ObjectSet {
    idx.iter().map(|i| u.id(&format!("x{i}")).unwrap()).collect()
}

pub fn obj(u: &Universe, i: usize) -> ObjectId {
    u.id(&format!("x{i}")).unwrap()
}

pub fn family(u: &Universe, groups: &[&[usize]]) -> BTreeSet<ObjectSet> {
    groups.iter().map(|g| objs(u, g)).collect()
}

pub fn formula(schema: &Schema, text: &str) -> Formula {
    Formula::parse(schema, text, Mode::Extended).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn formulas(schema: &Schema, texts: &[&str]) -> BTreeSet<Formula> {
    texts.iter().map(|t| formula(schema, t)).collect()
}

/// The strict formulas over every attribute in enumeration order; index
/// `i - 1` is the formula labelled `p_i` in the worked examples on the
/// eight-object table.
pub fn labelled(schema: &Schema) -> Vec<Formula> {
    enumerate_cdl(schema, &schema.all(), Mode::Strict, 1_000).unwrap()
}

pub fn by_label(labels: &[Formula], idx: &[usize]) -> BTreeSet<Formula> {
    idx.iter().map(|i| labels[i - 1].clone()).collect()
}

/// The simplest fraction that rounds to `text` at its printed precision.
///
/// Published tables print degrees to at most three decimals; every value
/// they contain has a small denominator, so the smallest denominator whose
/// rounding interval contains the printed value recovers it exactly.
pub fn printed(text: &str) -> Degree {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let scale = 10i64.pow(frac.len() as u32);
    let n: i64 = format!("{int}{frac}").parse().unwrap();
    if frac.is_empty() {
        return Degree::ratio(n, 1);
    }
    // |k/d - n/scale| <= 1/(2 scale)  <=>  |2 k scale - 2 n d| <= d
    for d in 1..=1000i64 {
        let k = (n * d + scale / 2) / scale;
        if (2 * k * scale - 2 * n * d).abs() <= d {
            return Degree::ratio(k, d);
        }
    }
    panic!("no small fraction rounds to {text}");
}

pub fn exact(d: &Degree) -> BigRational {
    d.as_rational().clone()
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Runs `test` against `cases` inputs from a fixed seed; panics with the
/// minimal failing input.
pub fn check<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>)
where
    S::Value: std::fmt::Debug,
{
    let config = Config {
        cases,
        failure_persistence: None,
        max_global_rejects: cases * 4,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    match runner.run(&strategy, test) {
        Ok(()) => {}
        Err(TestError::Fail(reason, value)) => panic!("{reason} for {value:?}"),
        Err(e) => panic!("{e}"),
    }
}

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

fn arb_cell(domain: usize) -> impl Strategy<Value = TokenSet> {
    prop_oneof![
        1 => Just([Token::Na].into_iter().collect::<TokenSet>()),
        6 => proptest::collection::btree_set(0..domain, 1..=domain)
            .prop_map(|s| s.into_iter().map(|v| Token::Value(ValueId(v))).collect::<TokenSet>()),
    ]
}

/// Set-valued tables bounded like [`arb_complete`].
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

/// A table together with a target class given as a bit mask over objects.
pub fn with_class<T: std::fmt::Debug + Clone>(
    tables: impl Strategy<Value = T>,
) -> impl Strategy<Value = (T, u32)> {
    (tables, any::<u32>())
}

pub fn class_from_mask(u: &Universe, mask: u32) -> ObjectSet {
    u.ids().filter(|x| mask & (1 << x.0) != 0).collect()
}

pub struct Table2Row {
    pub formula: &'static str,
    pub meaning: &'static [usize],
}

/// Formulas over the six-object table with their meaning sets.
pub const TABLE2: &[Table2Row] = &[
    Table2Row { formula: "a1=0", meaning: &[3, 4, 5] },
    Table2Row { formula: "a1=1", meaning: &[1, 2, 6] },
    Table2Row { formula: "a2=1", meaning: &[3, 6] },
    Table2Row { formula: "a2=2", meaning: &[1, 2, 4, 5] },
    Table2Row { formula: "a3=3", meaning: &[1, 2] },
    Table2Row { formula: "a3=1", meaning: &[3, 4, 5, 6] },
    Table2Row { formula: "a1=0 & a2=1", meaning: &[3] },
    Table2Row { formula: "a1=0 & a2=2", meaning: &[4, 5] },
    Table2Row { formula: "a1=0 & a3=3", meaning: &[] },
    Table2Row { formula: "a1=0 & a3=1", meaning: &[3, 4, 5] },
    Table2Row { formula: "a1=1 & a2=1", meaning: &[6] },
    Table2Row { formula: "a1=1 & a2=2", meaning: &[1, 2] },
    Table2Row { formula: "a1=1 & a3=3", meaning: &[1, 2] },
    Table2Row { formula: "a1=1 & a3=1", meaning: &[6] },
    Table2Row { formula: "a2=1 & a3=3", meaning: &[] },
    Table2Row { formula: "a2=1 & a3=1", meaning: &[3, 6] },
    Table2Row { formula: "a2=2 & a3=3", meaning: &[1, 2] },
    Table2Row { formula: "a2=2 & a3=1", meaning: &[4, 5] },
    Table2Row { formula: "a1=0 & a2=1 & a3=3", meaning: &[] },
    Table2Row { formula: "a1=0 & a2=1 & a3=1", meaning: &[3] },
    Table2Row { formula: "a1=0 & a2=2 & a3=3", meaning: &[] },
    Table2Row { formula: "a1=0 & a2=2 & a3=1", meaning: &[4, 5] },
    Table2Row { formula: "a1=1 & a2=1 & a3=3", meaning: &[] },
    Table2Row { formula: "a1=1 & a2=1 & a3=1", meaning: &[6] },
    Table2Row { formula: "a1=1 & a2=2 & a3=3", meaning: &[1, 2] },
    Table2Row { formula: "a1=1 & a2=2 & a3=1", meaning: &[] },
];

/// Nonzero satisfiability degrees on the eight-object table: label, min
/// entries, and product entries where they differ from min.
pub struct Table6Row {
    pub label: usize,
    pub min: &'static [(usize, &'static str)],
    pub prod: Option<&'static [(usize, &'static str)]>,
}

pub const TABLE6: &[Table6Row] = &[
    Table6Row { label: 1, min: &[(4, "1"), (5, "0.5"), (6, "0.5")], prod: None },
    Table6Row { label: 2, min: &[(1, "1"), (2, "1"), (3, "1"), (5, "0.5"), (6, "0.5")], prod: None },
    Table6Row { label: 3, min: &[(2, "0.5"), (3, "1"), (7, "1"), (8, "0.333")], prod: None },
    Table6Row { label: 4, min: &[(1, "1"), (2, "0.5"), (8, "0.333")], prod: None },
    Table6Row { label: 5, min: &[(4, "1"), (5, "1"), (6, "1"), (8, "0.333")], prod: None },
    Table6Row { label: 6, min: &[(4, "0.333"), (7, "1"), (8, "1")], prod: None },
    Table6Row { label: 7, min: &[(4, "0.333"), (5, "1"), (6, "0.5")], prod: None },
    Table6Row { label: 8, min: &[(1, "1"), (2, "1"), (3, "1"), (4, "0.333"), (6, "0.5")], prod: None },
    Table6Row { label: 11, min: &[(4, "1"), (5, "0.5"), (6, "0.5")], prod: None },
    Table6Row { label: 12, min: &[(4, "0.333")], prod: None },
    Table6Row {
        label: 13,
        min: &[(4, "0.333"), (5, "0.5"), (6, "0.5")],
        prod: Some(&[(4, "0.333"), (5, "0.5"), (6, "0.25")]),
    },
    Table6Row { label: 14, min: &[(4, "0.333"), (6, "0.5")], prod: Some(&[(4, "0.333"), (6, "0.25")]) },
    Table6Row { label: 15, min: &[(2, "0.5"), (3, "1")], prod: None },
    Table6Row { label: 16, min: &[(1, "1"), (2, "0.5")], prod: None },
    Table6Row { label: 17, min: &[(5, "0.5"), (6, "0.5")], prod: None },
    Table6Row { label: 19, min: &[(5, "0.5"), (6, "0.5")], prod: Some(&[(5, "0.5"), (6, "0.25")]) },
    Table6Row {
        label: 20,
        min: &[(1, "1"), (2, "1"), (3, "1"), (6, "0.5")],
        prod: Some(&[(1, "1"), (2, "1"), (3, "1"), (6, "0.25")]),
    },
    Table6Row { label: 21, min: &[(7, "1"), (8, "0.333")], prod: None },
    Table6Row { label: 23, min: &[(2, "0.5"), (3, "1")], prod: None },
    Table6Row { label: 24, min: &[(8, "0.333")], prod: None },
    Table6Row { label: 26, min: &[(1, "1"), (2, "0.5")], prod: None },
    Table6Row { label: 27, min: &[(4, "0.333"), (8, "0.333")], prod: None },
    Table6Row { label: 28, min: &[(4, "0.333"), (5, "1"), (6, "0.5")], prod: None },
    Table6Row { label: 29, min: &[(4, "0.333"), (6, "0.5")], prod: None },
    Table6Row { label: 36, min: &[(4, "0.333")], prod: None },
    Table6Row {
        label: 37,
        min: &[(4, "0.333"), (5, "0.5"), (6, "0.5")],
        prod: Some(&[(4, "0.333"), (5, "0.5"), (6, "0.25")]),
    },
    Table6Row { label: 38, min: &[(4, "0.333"), (6, "0.5")], prod: Some(&[(4, "0.333"), (6, "0.25")]) },
    Table6Row { label: 41, min: &[(2, "0.5"), (3, "1")], prod: None },
    Table6Row { label: 44, min: &[(1, "1"), (2, "0.5")], prod: None },
    Table6Row { label: 46, min: &[(5, "0.5"), (6, "0.5")], prod: Some(&[(5, "0.5"), (6, "0.25")]) },
    Table6Row { label: 47, min: &[(6, "0.5")], prod: Some(&[(6, "0.25")]) },
];

/// Nonempty 0.5-meaning sets: label, min, and product where it differs.
pub type MeaningRow = (usize, &'static [usize], Option<&'static [usize]>);

pub const TABLE7: &[MeaningRow] = &[
    (1, &[4, 5, 6], None),
    (2, &[1, 2, 3, 5, 6], None),
    (3, &[2, 3, 7], None),
    (4, &[1, 2], None),
    (5, &[4, 5, 6], None),
    (6, &[7, 8], None),
    (7, &[5, 6], None),
    (8, &[1, 2, 3, 6], None),
    (11, &[4, 5, 6], None),
    (13, &[5, 6], Some(&[5])),
    (14, &[6], Some(&[])),
    (15, &[2, 3], None),
    (16, &[1, 2], None),
    (17, &[5, 6], None),
    (19, &[5, 6], Some(&[5])),
    (20, &[1, 2, 3, 6], Some(&[1, 2, 3])),
    (21, &[7], None),
    (23, &[2, 3], None),
    (26, &[1, 2], None),
    (28, &[5, 6], None),
    (29, &[6], None),
    (37, &[5, 6], Some(&[5])),
    (38, &[6], Some(&[])),
    (41, &[2, 3], None),
    (44, &[1, 2], None),
    (46, &[5, 6], Some(&[5])),
    (47, &[6], Some(&[])),
];

/// Acceptance and rejection confidence for every label: AC min, RC min,
/// AC product, RC product.
pub const TABLE8: [[&str; 4]; 47] = [
    ["0.5", "0", "0.25", "0"],
    ["0.5", "0", "0.25", "0"],
    ["0", "0", "0", "0"],
    ["0.667", "0", "0.667", "0"],
    ["0", "0", "0", "0"],
    ["0", "0.667", "0", "0.667"],
    ["0", "0.667", "0", "0.667"],
    ["0.5", "0", "0.5", "0"],
    ["0", "0", "0", "0"],
    ["0", "0", "0", "0"],
    ["0.5", "0", "0.25", "0"],
    ["0.333", "0", "0.333", "0"],
    ["0.333", "0.5", "0.125", "0.417"],
    ["0.333", "0.5", "0.250", "0.167"],
    ["1", "0", "1", "0"],
    ["1", "0", "1", "0"],
    ["0", "0.5", "0", "0.75"],
    ["0", "0", "0", "0"],
    ["0", "0.5", "0", "0.625"],
    ["0.5", "0", "0.75", "0"],
    ["0", "1", "0", "1"],
    ["0", "0", "0", "0"],
    ["1", "0", "1", "0"],
    ["0", "0.333", "0", "0.333"],
    ["0", "0", "0", "0"],
    ["1", "0", "1", "0"],
    ["0.333", "0.333", "0.222", "0.222"],
    ["0", "0.667", "0", "0.667"],
    ["0.333", "0.5", "0.167", "0.333"],
    ["0", "0", "0", "0"],
    ["0", "0", "0", "0"],
    ["0", "0", "0", "0"],
    ["0", "0", "0", "0"],
    ["0", "0", "0", "0"],
    ["0", "0", "0", "0"],
    ["0.333", "0", "0.333", "0"],
    ["0.333", "0.5", "0.125", "0.417"],
    ["0.333", "0.5", "0.250", "0.167"],
    ["0", "0", "0", "0"],
    ["0", "0", "0", "0"],
    ["1", "0", "1", "0"],
    ["0", "0", "0", "0"],
    ["0", "0", "0", "0"],
    ["1", "0", "1", "0"],
    ["0", "0", "0", "0"],
    ["0", "0.5", "0", "0.625"],
    ["0", "0.5", "0", "0.25"],
];

/// Approximability per object: papr min, napr min, papr product, napr
/// product.
pub const TABLE5: [[&str; 4]; 8] = [
    ["1", "0", "1", "0"],
    ["1", "0", "1", "0"],
    ["1", "0", "1", "0"],
    ["0.667", "0", "0.694", "0"],
    ["0", "0.667", "0", "0.833"],
    ["0", "0.667", "0", "0.833"],
    ["0", "1", "0", "1"],
    ["0", "1", "0", "1"],
];

pub const MATRIX_MIN: [[&str; 8]; 8] = [
    ["1", "0.5", "0", "0", "0", "0", "0", "0"],
    ["0.5", "1", "0.5", "0", "0", "0", "0", "0"],
    ["0", "0.5", "1", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "1", "0.333", "0.333", "0", "0"],
    ["0", "0", "0", "0.333", "1", "0.5", "0", "0"],
    ["0", "0", "0", "0.333", "0.5", "1", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "1", "0.333"],
    ["0", "0", "0", "0", "0", "0", "0.333", "1"],
];

pub const MATRIX_PROD: [[&str; 8]; 8] = [
    ["1", "0.5", "0", "0", "0", "0", "0", "0"],
    ["0.5", "1", "0.5", "0", "0", "0", "0", "0"],
    ["0", "0.5", "1", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "1", "0.167", "0.167", "0", "0"],
    ["0", "0", "0", "0.167", "1", "0.25", "0", "0"],
    ["0", "0", "0", "0.167", "0.25", "1", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "1", "0.333"],
    ["0", "0", "0", "0", "0", "0", "0.333", "1"],
];

/// Renders a printed matrix entry the way the text matrix does, so
/// `"0.5"` and `"0.500"` compare equal.
pub fn three_places(text: &str) -> String {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    format!("{int}.{frac:0<3}")
}
