//! Three-way decision rules derived from description regions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{Degree, TNormKind};
use crate::language::{satisfies, AtomDoc, Formula, Mode};
use crate::table::{AttrSet, ObjectId, Schema, SetValuedTable, Token};

/// Positive and negative description regions. The two sets may overlap.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DescriptionRegions {
    pub dpos: BTreeSet<Formula>,
    pub dneg: BTreeSet<Formula>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DescriptionRegionsDoc {
    pub dpos: Vec<Vec<AtomDoc>>,
    pub dneg: Vec<Vec<AtomDoc>>,
}

impl DescriptionRegions {
    pub fn overlap(&self) -> BTreeSet<Formula> {
        self.dpos.intersection(&self.dneg).cloned().collect()
    }

    pub fn to_doc(&self, schema: &Schema) -> DescriptionRegionsDoc {
        DescriptionRegionsDoc {
            dpos: self.dpos.iter().map(|p| p.to_doc(schema)).collect(),
            dneg: self.dneg.iter().map(|p| p.to_doc(schema)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    Accept,
    Reject,
    NonCommit,
}

impl Decision {
    pub fn name(self) -> &'static str {
        match self {
            Decision::Accept => "accept",
            Decision::Reject => "reject",
            Decision::NonCommit => "non-commit",
        }
    }

    fn tag(self) -> char {
        match self {
            Decision::Accept => 'A',
            Decision::Reject => 'R',
            Decision::NonCommit => 'N',
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The region construction a rule set came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Descriptions of equivalence classes (complete tables).
    EqComplete,
    /// Formulas with nonempty meaning sets (complete tables).
    CdlComplete,
    /// Descriptions of α-similarity classes.
    AlphaSim,
    /// Descriptions of objects with sufficient approximability.
    Approx,
    /// Formulas with nonempty α-meaning sets.
    AlphaMeaning,
    /// Formulas with sufficient acceptance or rejection confidence.
    Confidence,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::EqComplete,
        Method::CdlComplete,
        Method::AlphaSim,
        Method::Approx,
        Method::AlphaMeaning,
        Method::Confidence,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Method::EqComplete => "eq-complete",
            Method::CdlComplete => "cdl-complete",
            Method::AlphaSim => "alpha-sim",
            Method::Approx => "approx",
            Method::AlphaMeaning => "alpha-meaning",
            Method::Confidence => "confidence",
        }
    }

    /// Methods that need a complete table and ignore t-norm and threshold.
    pub fn is_complete_only(self) -> bool {
        matches!(self, Method::EqComplete | Method::CdlComplete)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.id() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub method: Method,
    pub tnorm: Option<TNormKind>,
    pub alpha: Option<Degree>,
    /// Human-readable label of the target class.
    pub class: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Formula,
    pub decision: Decision,
    pub provenance: Provenance,
}

/// Rules with distinct left-hand sides in formula order; anything no rule
/// decides is non-commit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    provenance: Provenance,
    rules: Vec<Rule>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleDoc {
    pub lhs: Vec<AtomDoc>,
    pub decision: Decision,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSetDoc {
    pub method: Method,
    pub tnorm: Option<TNormKind>,
    pub alpha: Option<Degree>,
    pub class: String,
    pub rules: Vec<RuleDoc>,
    pub default: Decision,
}

/// Accept from `dpos - dneg`, reject from `dneg - dpos`, explicit non-commit
/// from the overlap.
pub fn derive_rules(regions: &DescriptionRegions, provenance: Provenance) -> RuleSet {
    let rules = regions
        .dpos
        .union(&regions.dneg)
        .map(|p| {
            let decision = match (regions.dpos.contains(p), regions.dneg.contains(p)) {
                (true, false) => Decision::Accept,
                (false, true) => Decision::Reject,
                _ => Decision::NonCommit,
            };
            Rule {
                lhs: p.clone(),
                decision,
                provenance: provenance.clone(),
            }
        })
        .collect();
    RuleSet { provenance, rules }
}

/// Decision for a row holding one token per attribute.
///
/// Accept needs a matching accept rule and no matching reject rule; reject is
/// symmetric. Everything else, conflicts included, is non-commit.
pub fn apply_rules(rs: &RuleSet, row: &[Token]) -> Result<Decision> {
    let mut accept = false;
    let mut reject = false;
    for r in &rs.rules {
        if satisfies(row, &r.lhs)? {
            match r.decision {
                Decision::Accept => accept = true,
                Decision::Reject => reject = true,
                Decision::NonCommit => {}
            }
        }
    }
    Ok(match (accept, reject) {
        (true, false) => Decision::Accept,
        (false, true) => Decision::Reject,
        _ => Decision::NonCommit,
    })
}

/// Applies `rs` to object `x`; rows with any multi-valued cell are refused.
pub fn classify(rs: &RuleSet, st: &SetValuedTable, x: ObjectId) -> Result<Decision> {
    apply_rules(rs, &st.definite_row(x)?)
}

impl RuleSet {
    pub fn empty(provenance: Provenance) -> Self {
        RuleSet {
            provenance,
            rules: Vec::new(),
        }
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn with(&self, decision: Decision) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(move |r| r.decision == decision)
    }

    /// Combines rules; a left-hand side carrying different decisions
    /// becomes non-commit.
    pub fn merge(&self, other: &RuleSet) -> RuleSet {
        RuleSet {
            provenance: self.provenance.clone(),
            rules: combine(self.rules.iter().chain(&other.rules).cloned()),
        }
    }

    /// Drops `NA` atoms on `attrs` from every left-hand side. Rules left
    /// without atoms disappear; colliding left-hand sides with different
    /// decisions become non-commit.
    pub fn strip_na_atoms(&self, attrs: &AttrSet) -> RuleSet {
        let stripped = self.rules.iter().filter_map(|r| {
            r.lhs.without_na_on(attrs).map(|lhs| Rule {
                lhs,
                decision: r.decision,
                provenance: r.provenance.clone(),
            })
        });
        RuleSet {
            provenance: self.provenance.clone(),
            rules: combine(stripped),
        }
    }

    /// Paper-style listing: accept lines, reject lines, explicit non-commit
    /// lines, then the default.
    pub fn render_text(&self, schema: &Schema) -> String {
        let mut out = String::new();
        for decision in [Decision::Accept, Decision::Reject, Decision::NonCommit] {
            for r in self.with(decision) {
                out.push_str(&format!(
                    "({}) {} -> {} {}\n",
                    decision.tag(),
                    r.lhs.display(schema),
                    decision,
                    self.provenance.class
                ));
            }
        }
        out.push_str("(N) otherwise -> non-commit\n");
        out
    }

    pub fn to_doc(&self, schema: &Schema) -> RuleSetDoc {
        RuleSetDoc {
            method: self.provenance.method,
            tnorm: self.provenance.tnorm,
            alpha: self.provenance.alpha.clone(),
            class: self.provenance.class.clone(),
            rules: self
                .rules
                .iter()
                .map(|r| RuleDoc {
                    lhs: r.lhs.to_doc(schema),
                    decision: r.decision,
                })
                .collect(),
            default: Decision::NonCommit,
        }
    }

    pub fn from_doc(schema: &Schema, doc: &RuleSetDoc) -> Result<RuleSet> {
        if doc.default != Decision::NonCommit {
            return Err(Error::InvalidFormula("the default decision must be non-commit".into()));
        }
        let provenance = Provenance {
            method: doc.method,
            tnorm: doc.tnorm,
            alpha: doc.alpha.clone(),
            class: doc.class.clone(),
        };
        let mut seen = BTreeSet::new();
        let mut rules = Vec::with_capacity(doc.rules.len());
        for r in &doc.rules {
            let lhs = Formula::from_doc(schema, &r.lhs, Mode::Extended)?;
            if !seen.insert(lhs.clone()) {
                return Err(Error::InvalidFormula(format!(
                    "duplicate rule for {}",
                    lhs.display(schema)
                )));
            }
            rules.push(Rule {
                lhs,
                decision: r.decision,
                provenance: provenance.clone(),
            });
        }
        rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        Ok(RuleSet { provenance, rules })
    }
}

fn combine(rules: impl Iterator<Item = Rule>) -> Vec<Rule> {
    let mut by_lhs: BTreeMap<Formula, Rule> = BTreeMap::new();
    for r in rules {
        match by_lhs.get_mut(&r.lhs) {
            Some(existing) if existing.decision != r.decision => existing.decision = Decision::NonCommit,
            Some(_) => {}
            None => {
                by_lhs.insert(r.lhs.clone(), r);
            }
        }
    }
    by_lhs.into_values().collect()
}
