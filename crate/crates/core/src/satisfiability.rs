//! Satisfiability-based three-way decisions on set-valued tables.
//!
//! An object satisfies an atom `a = v` to the degree `|s_a(x) ∩ {v}| / |s_a(x)|`;
//! conjunctions combine with a t-norm. `NA` cells never satisfy a domain value.

use serde::Serialize;

use crate::error::Result;
use crate::fuzzy::{negate, tnorm_iter, Degree, TNormKind};
use crate::language::{enumerate_cdl, Formula, Mode};
use crate::rules::DescriptionRegions;
use crate::table::{AttrSet, ObjectId, ObjectSet, SetValuedTable, Universe};

/// Degree to which `x` satisfies `p`.
pub fn sat_degree(st: &SetValuedTable, x: ObjectId, p: &Formula, kind: TNormKind) -> Degree {
    tnorm_iter(
        kind,
        p.atoms().iter().map(|atom| {
            let cell = st.cell(x, atom.attr);
            Degree::from_counts(usize::from(cell.contains(&atom.value)), cell.len())
        }),
    )
}

/// Degrees of one formula for every object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatProfile {
    pub formula: Formula,
    pub tnorm: TNormKind,
    pub degrees: Vec<Degree>,
}

impl SatProfile {
    pub fn new(st: &SetValuedTable, p: &Formula, kind: TNormKind) -> Self {
        SatProfile {
            formula: p.clone(),
            tnorm: kind,
            degrees: st.universe().ids().map(|x| sat_degree(st, x, p, kind)).collect(),
        }
    }

    pub fn degree(&self, x: ObjectId) -> &Degree {
        &self.degrees[x.0]
    }

    /// `{x | D(x ⊨ p) >= alpha}`.
    pub fn alpha_meaning_set(&self, alpha: &Degree) -> ObjectSet {
        self.degrees
            .iter()
            .enumerate()
            .filter(|(_, d)| d.meets(alpha))
            .map(|(i, _)| ObjectId(i))
            .collect()
    }
}

pub fn alpha_meaning_set(st: &SetValuedTable, p: &Formula, alpha: &Degree, kind: TNormKind) -> ObjectSet {
    SatProfile::new(st, p, kind).alpha_meaning_set(alpha)
}

/// Formulas over `attrs` whose nonempty α-meaning set lies inside `X`
/// (positive) or inside its complement (negative).
pub fn description_regions_alpha_meaning(
    st: &SetValuedTable,
    attrs: &AttrSet,
    alpha: &Degree,
    class: &ObjectSet,
    kind: TNormKind,
    max_formulas: u64,
) -> Result<DescriptionRegions> {
    st.universe().check(class)?;
    let mut out = DescriptionRegions::default();
    for p in enumerate_cdl(st.schema(), attrs, Mode::Strict, max_formulas)? {
        let m = alpha_meaning_set(st, &p, alpha, kind);
        if m.is_empty() {
            continue;
        }
        if m.is_subset(class) {
            out.dpos.insert(p.clone());
        }
        if m.is_disjoint(class) {
            out.dneg.insert(p);
        }
    }
    Ok(out)
}

/// Acceptance and rejection confidence of a formula for a class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Confidence {
    pub ac: Degree,
    pub rc: Degree,
}

fn implied_by(profile: &SatProfile, universe: &Universe, set: &ObjectSet) -> Degree {
    let imp = profile.tnorm.implication();
    tnorm_iter(
        profile.tnorm,
        universe.ids().map(|x| {
            let target = if set.contains(&x) { Degree::one() } else { Degree::zero() };
            imp.apply(profile.degree(x), &target)
        }),
    )
}

/// Confidence evaluated from the definition:
/// `AC = T(T_x I(D, 1_X), N(T_x I(D, 1_Xc)))`, and `RC` with `X` and `Xc`
/// exchanged.
pub fn confidence(profile: &SatProfile, universe: &Universe, class: &ObjectSet) -> Confidence {
    let complement = universe.complement(class);
    let into_class = implied_by(profile, universe, class);
    let into_complement = implied_by(profile, universe, &complement);
    let kind = profile.tnorm;
    Confidence {
        ac: kind.apply(&into_class, &negate(&into_complement)),
        rc: kind.apply(&into_complement, &negate(&into_class)),
    }
}

/// Confidence from the closed forms.
///
/// Min: `AC = min(1 - max_Xc D, max_X D)`.
/// Product: `AC = prod_Xc (1 - D) * (1 - prod_X (1 - D))`.
pub fn confidence_closed(profile: &SatProfile, universe: &Universe, class: &ObjectSet) -> Confidence {
    let inside: Vec<&Degree> = universe.ids().filter(|x| class.contains(x)).map(|x| profile.degree(x)).collect();
    let outside: Vec<&Degree> = universe.ids().filter(|x| !class.contains(x)).map(|x| profile.degree(x)).collect();
    let one_sided = |support: &[&Degree], against: &[&Degree]| -> Degree {
        match profile.tnorm {
            TNormKind::Min => {
                let max = |ds: &[&Degree]| ds.iter().map(|d| (*d).clone()).fold(Degree::zero(), Degree::max);
                max(against).complement().min(max(support))
            }
            TNormKind::Product => {
                let miss = |ds: &[&Degree]| {
                    ds.iter().fold(Degree::one(), |acc, d| acc.product(&d.complement()))
                };
                miss(against).product(&miss(support).complement())
            }
        }
    };
    Confidence {
        ac: one_sided(&inside, &outside),
        rc: one_sided(&outside, &inside),
    }
}

/// Formulas over `attrs` with `AC >= alpha` (positive) and `RC >= alpha`
/// (negative).
pub fn description_regions_confidence(
    st: &SetValuedTable,
    attrs: &AttrSet,
    alpha: &Degree,
    class: &ObjectSet,
    kind: TNormKind,
    max_formulas: u64,
) -> Result<DescriptionRegions> {
    st.universe().check(class)?;
    let mut out = DescriptionRegions::default();
    for p in enumerate_cdl(st.schema(), attrs, Mode::Strict, max_formulas)? {
        let c = confidence(&SatProfile::new(st, &p, kind), st.universe(), class);
        if c.ac.meets(alpha) {
            out.dpos.insert(p.clone());
        }
        if c.rc.meets(alpha) {
            out.dneg.insert(p);
        }
    }
    Ok(out)
}
