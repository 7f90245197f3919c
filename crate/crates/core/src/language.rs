//! Conjunctive description language over an attribute subset.
//!
//! A [`Formula`] is a nonempty conjunction of atoms `attr = value` with
//! pairwise-distinct attributes, stored sorted by attribute. Formulas order by
//! atom count first and then lexicographically by `(attribute, value)`, which
//! is also the order [`enumerate_cdl`] produces.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{AttrId, AttrSet, CompleteTable, ObjectSet, Schema, Token};

pub const DEFAULT_MAX_FORMULAS: u64 = 1_000_000;

/// Which atom values are admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Domain values only.
    Strict,
    /// Domain values and `NA`.
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub attr: AttrId,
    pub value: Token,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula {
    atoms: Vec<Atom>,
}

impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        self.atoms
            .len()
            .cmp(&other.atoms.len())
            .then_with(|| self.atoms.cmp(&other.atoms))
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// JSON shape of one atom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomDoc {
    pub attr: String,
    pub value: String,
}

impl Formula {
    /// Canonicalizes `atoms`; rejects an empty list and repeated attributes.
    pub fn new(mut atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidFormula("a formula needs at least one atom".into()));
        }
        atoms.sort();
        if atoms.windows(2).any(|w| w[0].attr == w[1].attr) {
            return Err(Error::InvalidFormula("attributes must be pairwise distinct".into()));
        }
        Ok(Formula { atoms })
    }

    pub fn atom(attr: AttrId, value: Token) -> Self {
        Formula {
            atoms: vec![Atom { attr, value }],
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn attrs(&self) -> AttrSet {
        AttrSet::new(self.atoms.iter().map(|a| a.attr).collect()).expect("formulas are nonempty")
    }

    /// `p ∧ q`; the operands must not share an attribute.
    pub fn and(&self, other: &Formula) -> Result<Formula> {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        Formula::new(atoms)
    }

    pub fn has_na(&self) -> bool {
        self.atoms.iter().any(|a| a.value == Token::Na)
    }

    /// The formula without its `NA` atoms on `attrs`, or `None` if nothing
    /// remains.
    pub fn without_na_on(&self, attrs: &AttrSet) -> Option<Formula> {
        let atoms: Vec<Atom> = self
            .atoms
            .iter()
            .filter(|a| !(a.value == Token::Na && attrs.contains(a.attr)))
            .copied()
            .collect();
        (!atoms.is_empty()).then_some(Formula { atoms })
    }

    /// Checks attribute and value ranges against `schema` under `mode`.
    pub fn check(&self, schema: &Schema, mode: Mode) -> Result<()> {
        for a in &self.atoms {
            if a.attr.0 >= schema.len() {
                return Err(Error::InvalidFormula(format!("attribute #{} out of range", a.attr.0)));
            }
            let ok = match a.value {
                Token::Value(v) => v.0 < schema.attribute(a.attr).domain_size(),
                Token::Na => mode == Mode::Extended,
            };
            if !ok {
                return Err(Error::InvalidFormula(format!(
                    "value not admissible for `{}`",
                    schema.attribute(a.attr).name()
                )));
            }
        }
        Ok(())
    }

    pub fn display<'a>(&'a self, schema: &'a Schema) -> FormulaDisplay<'a> {
        FormulaDisplay {
            formula: self,
            schema,
        }
    }

    /// Parses `(a1=1)&(a2=2)`. Parentheses are optional.
    pub fn parse(schema: &Schema, text: &str, mode: Mode) -> Result<Formula> {
        let mut atoms = Vec::new();
        for part in text.split('&') {
            let part = part.trim();
            let inner = part
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .unwrap_or(part);
            let (attr, value) = inner
                .split_once('=')
                .ok_or_else(|| Error::InvalidFormula(format!("`{part}` is not an atom")))?;
            let attr = schema.attr_id(attr.trim())?;
            let value = value.trim();
            let token = schema.parse_token(attr, value).ok_or_else(|| {
                Error::InvalidFormula(format!(
                    "`{value}` is not a value of `{}`",
                    schema.attribute(attr).name()
                ))
            })?;
            atoms.push(Atom { attr, value: token });
        }
        let f = Formula::new(atoms)?;
        f.check(schema, mode)?;
        Ok(f)
    }

    pub fn to_doc(&self, schema: &Schema) -> Vec<AtomDoc> {
        self.atoms
            .iter()
            .map(|a| AtomDoc {
                attr: schema.attribute(a.attr).name().to_string(),
                value: schema.token_name(a.attr, a.value).to_string(),
            })
            .collect()
    }

    pub fn from_doc(schema: &Schema, doc: &[AtomDoc], mode: Mode) -> Result<Formula> {
        let atoms = doc
            .iter()
            .map(|d| {
                let attr = schema.attr_id(&d.attr)?;
                let value = schema.parse_token(attr, &d.value).ok_or_else(|| {
                    Error::InvalidFormula(format!("`{}` is not a value of `{}`", d.value, d.attr))
                })?;
                Ok(Atom { attr, value })
            })
            .collect::<Result<Vec<_>>>()?;
        let f = Formula::new(atoms)?;
        f.check(schema, mode)?;
        Ok(f)
    }
}

pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    schema: &'a Schema,
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.formula.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str("&")?;
            }
            write!(
                f,
                "({}={})",
                self.schema.attribute(a.attr).name(),
                self.schema.token_name(a.attr, a.value)
            )?;
        }
        Ok(())
    }
}

/// Number of formulas [`enumerate_cdl`] would produce.
pub fn cdl_size(schema: &Schema, attrs: &AttrSet, mode: Mode) -> BigUint {
    let extra = usize::from(mode == Mode::Extended);
    attrs
        .ids()
        .iter()
        .fold(BigUint::one(), |acc, a| {
            acc * BigUint::from(schema.attribute(*a).domain_size() + extra + 1)
        })
        - BigUint::one()
}

/// Every formula over `attrs`, in formula order.
pub fn enumerate_cdl(schema: &Schema, attrs: &AttrSet, mode: Mode, max_formulas: u64) -> Result<Vec<Formula>> {
    let total = cdl_size(schema, attrs, mode);
    let count = match total.to_u64() {
        Some(n) if n <= max_formulas => n,
        _ => {
            return Err(Error::TooLarge {
                what: "formulas",
                count: total.to_string(),
                limit: max_formulas,
            })
        }
    };
    let tokens: Vec<Vec<Token>> = attrs
        .ids()
        .iter()
        .map(|a| {
            let mut ts: Vec<Token> = schema.attribute(*a).values().map(Token::Value).collect();
            if mode == Mode::Extended {
                ts.push(Token::Na);
            }
            ts
        })
        .collect();

    fn extend(
        ids: &[AttrId],
        tokens: &[Vec<Token>],
        from: usize,
        remaining: usize,
        prefix: &mut Vec<Atom>,
        out: &mut Vec<Formula>,
    ) {
        if remaining == 0 {
            out.push(Formula { atoms: prefix.clone() });
            return;
        }
        for i in from..=ids.len() - remaining {
            for t in &tokens[i] {
                prefix.push(Atom { attr: ids[i], value: *t });
                extend(ids, tokens, i + 1, remaining - 1, prefix, out);
                prefix.pop();
            }
        }
    }

    let mut out = Vec::with_capacity(count as usize);
    for size in 1..=attrs.len() {
        extend(attrs.ids(), &tokens, 0, size, &mut Vec::new(), &mut out);
    }
    Ok(out)
}

/// `row ⊨ p` for a row holding one token per attribute of the schema.
pub fn satisfies(row: &[Token], p: &Formula) -> Result<bool> {
    p.atoms.iter().try_fold(true, |acc, a| {
        let v = row
            .get(a.attr.0)
            .ok_or_else(|| Error::InvalidFormula(format!("row has no attribute #{}", a.attr.0)))?;
        Ok(acc && *v == a.value)
    })
}

/// Objects of `t` satisfying `p`.
pub fn meaning_set(t: &CompleteTable, p: &Formula) -> ObjectSet {
    t.universe()
        .ids()
        .filter(|x| {
            p.atoms
                .iter()
                .all(|a| Token::Value(t.value(*x, a.attr)) == a.value)
        })
        .collect()
}

/// The formula using every attribute of `attrs` with the row's values.
pub fn object_description(row: &[Token], attrs: &AttrSet) -> Formula {
    Formula {
        atoms: attrs
            .ids()
            .iter()
            .map(|a| Atom {
                attr: *a,
                value: row[a.0],
            })
            .collect(),
    }
}
