//! Information tables: incomplete (five cell kinds), set-valued, and complete.
//!
//! An [`IncompleteTable`] is what gets parsed from an `.itab` document. It is
//! converted into a [`SetValuedTable`], the canonical form every other module
//! works on. A set-valued table whose cells are all singleton domain values
//! can be narrowed further into a [`CompleteTable`].
//!
//! Objects, attributes and domain values are addressed by index newtypes;
//! their order is the declaration order in the source and governs every
//! enumeration downstream.

mod parse;
mod worlds;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

pub use parse::parse_table;
pub use worlds::{possible_worlds, PossibleWorlds, World, DEFAULT_MAX_WORLDS};

use crate::error::{Error, Result};

/// Reserved token for a non-applicable value.
pub const NA: &str = "NA";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ObjectId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AttrId(pub usize);

/// Index into an attribute's declared domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ValueId(pub usize);

/// A cell token of a set-valued table: a domain value or `NA`.
///
/// Domain values order before `NA`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    Value(ValueId),
    Na,
}

impl Token {
    pub fn value(self) -> Option<ValueId> {
        match self {
            Token::Value(v) => Some(v),
            Token::Na => None,
        }
    }
}

pub type ObjectSet = BTreeSet<ObjectId>;
pub type TokenSet = BTreeSet<Token>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeSchema {
    name: String,
    domain: Vec<String>,
}

impl AttributeSchema {
    pub fn new(name: impl Into<String>, domain: Vec<String>) -> Result<Self> {
        let name = name.into();
        if !is_plain_token(&name) {
            return Err(Error::UnknownAttribute(name));
        }
        if domain.is_empty() {
            return Err(Error::InvalidTable(format!(
                "attribute `{name}` has an empty domain"
            )));
        }
        let mut seen = BTreeSet::new();
        for v in &domain {
            if !is_plain_token(v) || v == NA || !seen.insert(v.as_str()) {
                return Err(Error::InvalidTable(format!(
                    "attribute `{name}` has an invalid or duplicate domain value `{v}`"
                )));
            }
        }
        Ok(AttributeSchema { name, domain })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn domain_size(&self) -> usize {
        self.domain.len()
    }

    pub fn value_id(&self, token: &str) -> Option<ValueId> {
        self.domain.iter().position(|v| v == token).map(ValueId)
    }

    pub fn values(&self) -> impl Iterator<Item = ValueId> {
        (0..self.domain.len()).map(ValueId)
    }
}

/// Ordered attribute list `AT`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    attributes: Vec<AttributeSchema>,
    by_name: HashMap<String, AttrId>,
}

impl Schema {
    pub fn new(attributes: Vec<AttributeSchema>) -> Result<Self> {
        if attributes.is_empty() {
            return Err(Error::EmptyAttributeSet);
        }
        let mut by_name = HashMap::new();
        for (i, a) in attributes.iter().enumerate() {
            if by_name.insert(a.name.clone(), AttrId(i)).is_some() {
                return Err(Error::InvalidTable(format!(
                    "duplicate attribute `{}`",
                    a.name
                )));
            }
        }
        Ok(Schema {
            attributes,
            by_name,
        })
    }

    pub fn len(&self) -> usize {
        self.attributes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attributes.is_empty()
    }

    pub fn attribute(&self, id: AttrId) -> &AttributeSchema {
        &self.attributes[id.0]
    }

    pub fn attributes(&self) -> &[AttributeSchema] {
        &self.attributes
    }

    pub fn attr_ids(&self) -> impl Iterator<Item = AttrId> {
        (0..self.attributes.len()).map(AttrId)
    }

    pub fn attr_id(&self, name: &str) -> Result<AttrId> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
    }

    /// All of `AT`.
    pub fn all(&self) -> AttrSet {
        AttrSet(self.attr_ids().collect())
    }

    /// Attribute subset from names; must be nonempty.
    pub fn attr_set<S: AsRef<str>>(&self, names: &[S]) -> Result<AttrSet> {
        let ids = names
            .iter()
            .map(|n| self.attr_id(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        AttrSet::new(ids)
    }

    /// Renders a token of attribute `attr`.
    pub fn token_name(&self, attr: AttrId, token: Token) -> &str {
        match token {
            Token::Value(v) => &self.attribute(attr).domain[v.0],
            Token::Na => NA,
        }
    }

    /// Parses a token of attribute `attr`: a domain value or `NA`.
    pub fn parse_token(&self, attr: AttrId, text: &str) -> Option<Token> {
        if text == NA {
            Some(Token::Na)
        } else {
            self.attribute(attr).value_id(text).map(Token::Value)
        }
    }
}

/// Nonempty attribute subset `A ⊆ AT`, kept sorted by declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AttrSet(Vec<AttrId>);

impl AttrSet {
    pub fn new(mut ids: Vec<AttrId>) -> Result<Self> {
        ids.sort();
        ids.dedup();
        if ids.is_empty() {
            return Err(Error::EmptyAttributeSet);
        }
        Ok(AttrSet(ids))
    }

    pub fn ids(&self) -> &[AttrId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: AttrId) -> bool {
        self.0.binary_search(&a).is_ok()
    }

    pub fn is_subset(&self, other: &AttrSet) -> bool {
        self.0.iter().all(|a| other.contains(*a))
    }

    /// Every nonempty subset of `self`, smallest first.
    pub fn nonempty_subsets(&self) -> Vec<AttrSet> {
        let n = self.0.len();
        let mut out: Vec<AttrSet> = (1u64..(1u64 << n))
            .map(|mask| {
                AttrSet(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.0.cmp(&b.0)));
        out
    }
}

/// Ordered object identifiers `OB`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    names: Vec<String>,
    by_name: HashMap<String, ObjectId>,
}

impl Universe {
    pub fn new(names: Vec<String>) -> Result<Self> {
        let mut by_name = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if by_name.insert(n.clone(), ObjectId(i)).is_some() {
                return Err(Error::InvalidTable(format!("duplicate object id `{n}`")));
            }
        }
        Ok(Universe { names, by_name })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, id: ObjectId) -> &str {
        &self.names[id.0]
    }

    pub fn ids(&self) -> impl Iterator<Item = ObjectId> {
        (0..self.names.len()).map(ObjectId)
    }

    pub fn id(&self, name: &str) -> Result<ObjectId> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn all(&self) -> ObjectSet {
        self.ids().collect()
    }

    pub fn set<S: AsRef<str>>(&self, names: &[S]) -> Result<ObjectSet> {
        names.iter().map(|n| self.id(n.as_ref())).collect()
    }

    /// `OB - set`.
    pub fn complement(&self, set: &ObjectSet) -> ObjectSet {
        self.ids().filter(|x| !set.contains(x)).collect()
    }

    /// Rejects sets mentioning objects outside this universe.
    pub fn check(&self, set: &ObjectSet) -> Result<()> {
        match set.iter().find(|x| x.0 >= self.names.len()) {
            Some(x) => Err(Error::UnknownObject(format!("#{}", x.0))),
            None => Ok(()),
        }
    }

    /// `{x1,x2}` style rendering.
    pub fn render_set(&self, set: &ObjectSet) -> String {
        let names: Vec<&str> = set.iter().map(|x| self.name(*x)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// One cell of an incomplete table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Known(ValueId),
    /// `*`: any domain value.
    DoNotCare,
    /// `{v1|v2|...}`: one of at least two domain values.
    Partial(BTreeSet<ValueId>),
    /// `^(b)`: one of the known values taken by peers agreeing on `b`.
    ClassSpecific(AttrId),
    /// `NA`: the attribute does not apply.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncompleteTable {
    schema: Schema,
    universe: Universe,
    cells: Vec<Vec<Cell>>,
}

impl IncompleteTable {
    pub fn new(schema: Schema, universe: Universe, cells: Vec<Vec<Cell>>) -> Result<Self> {
        if cells.len() != universe.len() {
            return Err(Error::InvalidTable("row count does not match object count".into()));
        }
        for (x, row) in cells.iter().enumerate() {
            if row.len() != schema.len() {
                return Err(Error::InvalidTable(format!(
                    "row of `{}` has {} cells, expected {}",
                    universe.names[x],
                    row.len(),
                    schema.len()
                )));
            }
            for (a, cell) in row.iter().enumerate() {
                let attr = &schema.attributes[a];
                let ok = match cell {
                    Cell::Known(v) => v.0 < attr.domain_size(),
                    Cell::Partial(vs) => vs.len() >= 2 && vs.iter().all(|v| v.0 < attr.domain_size()),
                    Cell::ClassSpecific(b) => b.0 != a && b.0 < schema.len(),
                    Cell::DoNotCare | Cell::NotApplicable => true,
                };
                if !ok {
                    return Err(Error::InvalidTable(format!(
                        "invalid cell for object `{}` on `{}`",
                        universe.names[x], attr.name
                    )));
                }
            }
        }
        Ok(IncompleteTable {
            schema,
            universe,
            cells,
        })
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn cell(&self, x: ObjectId, a: AttrId) -> &Cell {
        &self.cells[x.0][a.0]
    }

    /// Value set of a class-specific cell: the known `a`-values of every
    /// other object whose known `b`-value equals that of `x`.
    pub fn resolve_class_specific(&self, x: ObjectId, a: AttrId) -> Result<BTreeSet<ValueId>> {
        let b = match self.cell(x, a) {
            Cell::ClassSpecific(b) => *b,
            _ => {
                return Err(Error::InvalidTable(format!(
                    "cell of `{}` on `{}` is not class-specific",
                    self.universe.name(x),
                    self.schema.attribute(a).name()
                )))
            }
        };
        let err_ctx = |reference: AttrId| {
            (
                self.universe.name(x).to_string(),
                self.schema.attribute(a).name().to_string(),
                self.schema.attribute(reference).name().to_string(),
            )
        };
        let key = match self.cell(x, b) {
            Cell::Known(v) => *v,
            _ => {
                let (object, attr, reference) = err_ctx(b);
                return Err(Error::UnresolvedReference {
                    object,
                    attr,
                    reference,
                });
            }
        };
        let values: BTreeSet<ValueId> = self
            .universe
            .ids()
            .filter(|&y| y != x && self.cell(y, b) == &Cell::Known(key))
            .filter_map(|y| match self.cell(y, a) {
                Cell::Known(v) => Some(*v),
                _ => None,
            })
            .collect();
        if values.is_empty() {
            let (object, attr, reference) = err_ctx(b);
            return Err(Error::EmptyResolution {
                object,
                attr,
                reference,
            });
        }
        Ok(values)
    }

    /// Replaces every cell by the set of values it may actually take.
    pub fn to_set_valued(&self) -> Result<SetValuedTable> {
        let mut rows = Vec::with_capacity(self.universe.len());
        for x in self.universe.ids() {
            let mut row = Vec::with_capacity(self.schema.len());
            for a in self.schema.attr_ids() {
                let set: TokenSet = match self.cell(x, a) {
                    Cell::Known(v) => [Token::Value(*v)].into(),
                    Cell::DoNotCare => self.schema.attribute(a).values().map(Token::Value).collect(),
                    Cell::Partial(vs) => vs.iter().map(|v| Token::Value(*v)).collect(),
                    Cell::ClassSpecific(_) => self
                        .resolve_class_specific(x, a)?
                        .into_iter()
                        .map(Token::Value)
                        .collect(),
                    Cell::NotApplicable => [Token::Na].into(),
                };
                row.push(set);
            }
            rows.push(row);
        }
        SetValuedTable::new(self.schema.clone(), self.universe.clone(), rows)
    }

    /// Serializes back to `.itab` text with explicit domains.
    pub fn to_itab(&self) -> String {
        let mut out = String::new();
        let names: Vec<&str> = self.schema.attributes.iter().map(|a| a.name.as_str()).collect();
        out.push_str(&format!("@attributes {}\n", names.join(" ")));
        for a in &self.schema.attributes {
            out.push_str(&format!("@domain {} {}\n", a.name, a.domain.join(" ")));
        }
        out.push_str("@objects\n");
        for x in self.universe.ids() {
            let mut line = self.universe.name(x).to_string();
            for a in self.schema.attr_ids() {
                let dom = self.schema.attribute(a).domain();
                line.push(' ');
                match self.cell(x, a) {
                    Cell::Known(v) => line.push_str(&dom[v.0]),
                    Cell::DoNotCare => line.push('*'),
                    Cell::Partial(vs) => {
                        let parts: Vec<&str> = vs.iter().map(|v| dom[v.0].as_str()).collect();
                        line.push_str(&format!("{{{}}}", parts.join("|")));
                    }
                    Cell::ClassSpecific(b) => {
                        line.push_str(&format!("^({})", self.schema.attribute(*b).name()))
                    }
                    Cell::NotApplicable => line.push_str(NA),
                }
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// Canonical table form: every cell is a nonempty set of domain values, or
/// exactly `{NA}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetValuedTable {
    schema: Schema,
    universe: Universe,
    cells: Vec<Vec<TokenSet>>,
}

impl SetValuedTable {
    pub fn new(schema: Schema, universe: Universe, cells: Vec<Vec<TokenSet>>) -> Result<Self> {
        if cells.len() != universe.len() {
            return Err(Error::InvalidTable("row count does not match object count".into()));
        }
        for (x, row) in cells.iter().enumerate() {
            if row.len() != schema.len() {
                return Err(Error::InvalidTable(format!(
                    "row of `{}` has {} cells, expected {}",
                    universe.names[x],
                    row.len(),
                    schema.len()
                )));
            }
            for (a, set) in row.iter().enumerate() {
                let size = schema.attributes[a].domain_size();
                let in_domain = set.iter().all(|t| match t {
                    Token::Value(v) => v.0 < size,
                    Token::Na => true,
                });
                let na_ok = !set.contains(&Token::Na) || set.len() == 1;
                if set.is_empty() || !in_domain || !na_ok {
                    return Err(Error::InvalidTable(format!(
                        "invalid value set for object `{}` on `{}`",
                        universe.names[x], schema.attributes[a].name
                    )));
                }
            }
        }
        Ok(SetValuedTable {
            schema,
            universe,
            cells,
        })
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn cell(&self, x: ObjectId, a: AttrId) -> &TokenSet {
        &self.cells[x.0][a.0]
    }

    pub fn row(&self, x: ObjectId) -> &[TokenSet] {
        &self.cells[x.0]
    }

    /// True iff every cell is a single domain value.
    pub fn is_complete(&self) -> bool {
        self.cells
            .iter()
            .flatten()
            .all(|s| s.len() == 1 && !s.contains(&Token::Na))
    }

    pub fn to_complete(&self) -> Result<CompleteTable> {
        if !self.is_complete() {
            return Err(Error::IncompleteTable);
        }
        let rows = self
            .cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| s.iter().next().and_then(|t| t.value()).expect("checked complete"))
                    .collect()
            })
            .collect();
        Ok(CompleteTable {
            schema: self.schema.clone(),
            universe: self.universe.clone(),
            rows,
        })
    }

    /// A single token per attribute, if every cell of `x` is a singleton
    /// (`{NA}` included).
    pub fn definite_row(&self, x: ObjectId) -> Result<Vec<Token>> {
        self.row(x)
            .iter()
            .map(|s| {
                if s.len() == 1 {
                    Ok(*s.iter().next().expect("nonempty"))
                } else {
                    Err(Error::IncompleteRow(self.universe.name(x).to_string()))
                }
            })
            .collect()
    }

    /// `{1,2}` style rendering of a cell; singletons print bare.
    pub fn render_cell(&self, x: ObjectId, a: AttrId) -> String {
        let set = self.cell(x, a);
        let parts: Vec<&str> = set.iter().map(|t| self.schema.token_name(a, *t)).collect();
        if parts.len() == 1 {
            parts[0].to_string()
        } else {
            format!("{{{}}}", parts.join(","))
        }
    }
}

impl fmt::Display for SetValuedTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let header: Vec<&str> = self.schema.attributes.iter().map(|a| a.name()).collect();
        writeln!(f, "\t{}", header.join("\t"))?;
        for x in self.universe.ids() {
            let cells: Vec<String> = self.schema.attr_ids().map(|a| self.render_cell(x, a)).collect();
            writeln!(f, "{}\t{}", self.universe.name(x), cells.join("\t"))?;
        }
        Ok(())
    }
}

/// A table with exactly one domain value per cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteTable {
    schema: Schema,
    universe: Universe,
    rows: Vec<Vec<ValueId>>,
}

impl CompleteTable {
    pub fn new(schema: Schema, universe: Universe, rows: Vec<Vec<ValueId>>) -> Result<Self> {
        let cells = rows
            .iter()
            .map(|r| r.iter().map(|v| [Token::Value(*v)].into()).collect())
            .collect();
        // reuse the set-valued checks
        SetValuedTable::new(schema.clone(), universe.clone(), cells)?;
        Ok(CompleteTable {
            schema,
            universe,
            rows,
        })
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn row(&self, x: ObjectId) -> &[ValueId] {
        &self.rows[x.0]
    }

    pub fn value(&self, x: ObjectId, a: AttrId) -> ValueId {
        self.rows[x.0][a.0]
    }

    pub fn to_set_valued(&self) -> SetValuedTable {
        let cells = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| [Token::Value(*v)].into()).collect())
            .collect();
        SetValuedTable {
            schema: self.schema.clone(),
            universe: self.universe.clone(),
            cells,
        }
    }

    /// Row of `x` as tokens, for rule application.
    pub fn token_row(&self, x: ObjectId) -> Vec<Token> {
        self.rows[x.0].iter().map(|v| Token::Value(*v)).collect()
    }

    /// Groups objects by their values on `attrs`, first-seen order.
    pub(crate) fn group_by(&self, attrs: &[AttrId]) -> Vec<ObjectSet> {
        let mut index: BTreeMap<Vec<ValueId>, usize> = BTreeMap::new();
        let mut blocks: Vec<ObjectSet> = Vec::new();
        for x in self.universe.ids() {
            let key: Vec<ValueId> = attrs.iter().map(|a| self.value(x, *a)).collect();
            let slot = *index.entry(key).or_insert_with(|| {
                blocks.push(ObjectSet::new());
                blocks.len() - 1
            });
            blocks[slot].insert(x);
        }
        blocks
    }
}

fn is_plain_token(s: &str) -> bool {
    !s.is_empty()
        && s != "*"
        && !s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '{' | '}' | '|' | '^' | '(' | ')' | '#' | '@' | '&' | '=' | ','))
}
