//! Brute-force cross-checks that share no code with the degree computations.
//!
//! Product-kind degrees have a probabilistic reading: similarity is the
//! chance that independent completions of two rows agree, and satisfiability
//! is the chance that a completion of a row satisfies a formula. The oracles
//! here count possible worlds directly. Min-kind degrees have no such reading
//! and are verified only through axioms and closed forms.
//!
//! Complete tables get two further checks: the union closures of the
//! partition blocks and of the meaning sets coincide, and crisp similarity
//! reduces to the equivalence-class construction.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzy::{Degree, TNormKind};
use crate::language::{enumerate_cdl, Formula, Mode};
use crate::similarity::description_regions_alpha_sim;
use crate::table::{AttrSet, CompleteTable, ObjectId, ObjectSet, SetValuedTable, Token};
use crate::Limits;

/// Signature of a similarity implementation under test.
pub type SimilarityFn = fn(&SetValuedTable, &AttrSet, TNormKind, ObjectId, ObjectId) -> Degree;
/// Signature of a satisfiability implementation under test.
pub type SatFn = fn(&SetValuedTable, ObjectId, &Formula, TNormKind) -> Degree;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Outcome {
    Degree(Degree),
    Bool(bool),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Degree(d) => write!(f, "{d}"),
            Outcome::Bool(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub check: String,
    pub inputs: String,
    pub expected: Outcome,
    pub actual: Outcome,
    pub pass: bool,
}

impl OracleReport {
    fn new(check: &str, inputs: String, expected: Outcome, actual: Outcome) -> Self {
        let pass = expected == actual;
        OracleReport {
            check: check.to_string(),
            inputs,
            expected,
            actual,
            pass,
        }
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{}] expected {} actual {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.check,
            self.inputs,
            self.expected,
            self.actual
        )
    }
}

/// Calls `visit` once per combination of one token from each choice list.
fn for_each_choice(choices: &[Vec<Token>], max_worlds: u64, mut visit: impl FnMut(&[Token])) -> Result<u64> {
    let mut total: u64 = 1;
    for c in choices {
        total = match total.checked_mul(c.len() as u64) {
            Some(n) if n <= max_worlds => n,
            _ => {
                return Err(Error::TooLarge {
                    what: "oracle worlds",
                    count: "more than the limit".into(),
                    limit: max_worlds,
                })
            }
        };
    }
    let mut picked = Vec::with_capacity(choices.len());
    fn go(choices: &[Vec<Token>], picked: &mut Vec<Token>, visit: &mut dyn FnMut(&[Token])) {
        match choices.split_first() {
            None => visit(picked),
            Some((first, rest)) => {
                for t in first {
                    picked.push(*t);
                    go(rest, picked, visit);
                    picked.pop();
                }
            }
        }
    }
    go(choices, &mut picked, &mut visit);
    Ok(total)
}

fn fraction(hits: u64, total: u64) -> Degree {
    Degree::new(hits as i64, total as i64).expect("hits never exceed total")
}

/// Share of joint completions of rows `x` and `y` on `attrs` that agree on
/// every attribute. Meaningful for `x != y`.
pub fn oracle_similarity(
    st: &SetValuedTable,
    attrs: &AttrSet,
    x: ObjectId,
    y: ObjectId,
    max_worlds: u64,
) -> Result<Degree> {
    let n = attrs.len();
    let choices: Vec<Vec<Token>> = [x, y]
        .iter()
        .flat_map(|o| attrs.ids().iter().map(move |a| st.cell(*o, *a).iter().copied().collect()))
        .collect();
    let mut hits = 0u64;
    let total = for_each_choice(&choices, max_worlds, |w| {
        if w[..n] == w[n..] {
            hits += 1;
        }
    })?;
    Ok(fraction(hits, total))
}

/// Share of completions of row `x` that satisfy `p`.
pub fn oracle_sat_degree(st: &SetValuedTable, x: ObjectId, p: &Formula, max_worlds: u64) -> Result<Degree> {
    let choices: Vec<Vec<Token>> = st.row(x).iter().map(|s| s.iter().copied().collect()).collect();
    let mut hits = 0u64;
    let total = for_each_choice(&choices, max_worlds, |row| {
        let mut ok = true;
        for atom in p.atoms() {
            if row[atom.attr.0] != atom.value {
                ok = false;
            }
        }
        if ok {
            hits += 1;
        }
    })?;
    Ok(fraction(hits, total))
}

/// Product-kind similarity against [`oracle_similarity`] for every pair of
/// distinct objects.
pub fn check_similarity(
    st: &SetValuedTable,
    attrs: &AttrSet,
    implementation: SimilarityFn,
    max_worlds: u64,
) -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();
    for x in st.universe().ids() {
        for y in st.universe().ids().filter(|y| *y != x) {
            let expected = oracle_similarity(st, attrs, x, y, max_worlds)?;
            let actual = implementation(st, attrs, TNormKind::Product, x, y);
            out.push(OracleReport::new(
                "similarity",
                format!("{},{}", st.universe().name(x), st.universe().name(y)),
                Outcome::Degree(expected),
                Outcome::Degree(actual),
            ));
        }
    }
    Ok(out)
}

/// Product-kind satisfiability against [`oracle_sat_degree`] for every
/// object and every formula over `attrs`.
pub fn check_sat_degrees(
    st: &SetValuedTable,
    attrs: &AttrSet,
    implementation: SatFn,
    limits: &Limits,
) -> Result<Vec<OracleReport>> {
    let formulas = enumerate_cdl(st.schema(), attrs, Mode::Strict, limits.max_formulas)?;
    let mut out = Vec::new();
    for p in &formulas {
        for x in st.universe().ids() {
            let expected = oracle_sat_degree(st, x, p, limits.max_worlds)?;
            let actual = implementation(st, x, p, TNormKind::Product);
            out.push(OracleReport::new(
                "satisfiability",
                format!("{} |= {}", st.universe().name(x), p.display(st.schema())),
                Outcome::Degree(expected),
                Outcome::Degree(actual),
            ));
        }
    }
    Ok(out)
}

type Mask = u64;

fn object_mask(t: &CompleteTable, keep: impl Fn(ObjectId) -> bool) -> Mask {
    t.universe().ids().filter(|x| keep(*x)).fold(0, |m, x| m | (1 << x.0))
}

fn blocks_by_hash(t: &CompleteTable, attrs: &AttrSet) -> Vec<Mask> {
    let mut groups: HashMap<Vec<usize>, Mask> = HashMap::new();
    for x in t.universe().ids() {
        let key = attrs.ids().iter().map(|a| t.row(x)[a.0].0).collect();
        *groups.entry(key).or_default() |= 1 << x.0;
    }
    groups.into_values().collect()
}

/// Sets `Y` equal to the union of the generators inside `Y`.
fn union_closure(generators: &[Mask], objects: usize) -> BTreeSet<Mask> {
    (0..(1u64 << objects))
        .filter(|y| {
            let covered = generators.iter().filter(|g| *g & !y == 0).fold(0, |acc, g| acc | g);
            covered == *y
        })
        .collect()
}

/// Union closures of the partition blocks and of the conjunctively
/// definable sets on `attrs` coincide.
pub fn oracle_theorem2(t: &CompleteTable, attrs: &AttrSet, limits: &Limits) -> Result<OracleReport> {
    let n = t.universe().len();
    if n >= 63 || (1u64 << n) > limits.max_closure_subsets {
        return Err(Error::TooLarge {
            what: "closure subsets",
            count: format!("2^{n}"),
            limit: limits.max_closure_subsets,
        });
    }
    let blocks = blocks_by_hash(t, attrs);
    let meanings: Vec<Mask> = enumerate_cdl(t.schema(), attrs, Mode::Strict, limits.max_formulas)?
        .iter()
        .map(|p| {
            object_mask(t, |x| {
                p.atoms().iter().all(|atom| Token::Value(t.row(x)[atom.attr.0]) == atom.value)
            })
        })
        .collect();
    let from_blocks = union_closure(&blocks, n);
    let from_meanings = union_closure(&meanings, n);
    let names: Vec<&str> = attrs.ids().iter().map(|a| t.schema().attribute(*a).name()).collect();
    Ok(OracleReport::new(
        "union-closure",
        format!("attrs {{{}}}, {} definable sets", names.join(","), from_blocks.len()),
        Outcome::Bool(true),
        Outcome::Bool(from_blocks == from_meanings),
    ))
}

/// On a complete table, α-similarity classes equal equivalence classes for
/// any positive threshold, and the similarity-based description regions equal
/// the descriptions of the positive and negative equivalence classes.
pub fn oracle_classical_reduction(
    t: &CompleteTable,
    attrs: &AttrSet,
    class: &ObjectSet,
    alpha: &Degree,
    implementation: SimilarityFn,
    limits: &Limits,
) -> Result<OracleReport> {
    if alpha.is_zero() {
        return Err(Error::DegreeOutOfRange("threshold must be positive".into()));
    }
    let st = t.to_set_valued();
    let blocks = blocks_by_hash(t, attrs);
    let block_of = |x: ObjectId| *blocks.iter().find(|b| *b & (1 << x.0) != 0).expect("blocks cover");
    let class_mask = object_mask(t, |x| class.contains(&x));

    let mut classes_agree = true;
    for kind in TNormKind::ALL {
        for x in t.universe().ids() {
            let sim = object_mask(t, |y| implementation(&st, attrs, kind, x, y).meets(alpha));
            classes_agree &= sim == block_of(x);
        }
    }

    let describe = |b: Mask| -> Formula {
        let x = b.trailing_zeros() as usize;
        let atoms = attrs
            .ids()
            .iter()
            .map(|a| crate::language::Atom {
                attr: *a,
                value: Token::Value(t.row(ObjectId(x))[a.0]),
            })
            .collect();
        Formula::new(atoms).expect("distinct attributes")
    };
    let expected_pos: BTreeSet<Formula> = blocks.iter().filter(|b| *b & !class_mask == 0).map(|b| describe(*b)).collect();
    let expected_neg: BTreeSet<Formula> = blocks.iter().filter(|b| *b & class_mask == 0).map(|b| describe(*b)).collect();
    let mut regions_agree = true;
    for kind in TNormKind::ALL {
        let r = description_regions_alpha_sim(&st, attrs, alpha, class, kind, limits.max_formulas)?;
        regions_agree &= r.dpos == expected_pos && r.dneg == expected_neg;
    }

    Ok(OracleReport::new(
        "classical-reduction",
        format!("class {}, alpha {}", t.universe().render_set(class), alpha),
        Outcome::Bool(true),
        Outcome::Bool(classes_agree && regions_agree),
    ))
}
