//! Similarity-based three-way decisions on set-valued tables.
//!
//! Two objects are similar on an attribute to the degree that a random
//! completion of both cells agrees: `|s ∩ s'| / (|s| |s'|)`. Degrees over an
//! attribute subset combine with a t-norm. Thresholding the similarity
//! matrix gives α-similarity classes, whose object descriptions feed the
//! description regions.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzy::{tnorm_iter, Degree, TNormKind};
use crate::language::{Atom, Formula};
use crate::rules::DescriptionRegions;
use crate::table::{AttrId, AttrSet, ObjectId, ObjectSet, SetValuedTable, Token, Universe};

/// Similarity of `x` and `y` on one attribute.
pub fn similarity_single(st: &SetValuedTable, a: AttrId, x: ObjectId, y: ObjectId) -> Degree {
    if x == y {
        return Degree::one();
    }
    let (s, t) = (st.cell(x, a), st.cell(y, a));
    Degree::from_counts(s.intersection(t).count(), s.len() * t.len())
}

/// Similarity of `x` and `y` on every attribute of `attrs`, combined by `kind`.
pub fn similarity(st: &SetValuedTable, attrs: &AttrSet, kind: TNormKind, x: ObjectId, y: ObjectId) -> Degree {
    if x == y {
        return Degree::one();
    }
    tnorm_iter(kind, attrs.ids().iter().map(|a| similarity_single(st, *a, x, y)))
}

/// Symmetric matrix of pairwise similarities with a unit diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityMatrix {
    universe: Universe,
    tnorm: TNormKind,
    attrs: AttrSet,
    entries: Vec<Vec<Degree>>,
}

#[derive(Debug, Serialize)]
pub struct SimilarityMatrixDoc {
    pub tnorm: TNormKind,
    pub attrs: Vec<String>,
    pub objects: Vec<String>,
    pub entries: Vec<Vec<Degree>>,
}

pub fn similarity_matrix(st: &SetValuedTable, attrs: &AttrSet, kind: TNormKind) -> SimilarityMatrix {
    let n = st.universe().len();
    // Each unordered pair is computed once; the lower triangle mirrors it.
    let mut entries: Vec<Vec<Degree>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match j.cmp(&i) {
                    Ordering::Greater => similarity(st, attrs, kind, ObjectId(i), ObjectId(j)),
                    Ordering::Equal => Degree::one(),
                    Ordering::Less => Degree::zero(),
                })
                .collect()
        })
        .collect();
    for i in 1..n {
        let (upper, lower) = entries.split_at_mut(i);
        for (j, row) in upper.iter().enumerate() {
            lower[0][j] = row[i].clone();
        }
    }
    SimilarityMatrix {
        universe: st.universe().clone(),
        tnorm: kind,
        attrs: attrs.clone(),
        entries,
    }
}

impl SimilarityMatrix {
    pub fn get(&self, x: ObjectId, y: ObjectId) -> &Degree {
        &self.entries[x.0][y.0]
    }

    pub fn tnorm(&self) -> TNormKind {
        self.tnorm
    }

    pub fn attrs(&self) -> &AttrSet {
        &self.attrs
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    /// Aligned grid of three-decimal entries.
    pub fn render_text(&self) -> String {
        let names = self.universe.names();
        let width = names.iter().map(|n| n.len()).max().unwrap_or(0).max(5);
        let mut out = format!("{:width$}", "");
        for n in names {
            let _ = write!(out, " {n:>width$}");
        }
        out.push('\n');
        for (i, row) in self.entries.iter().enumerate() {
            let _ = write!(out, "{:width$}", names[i]);
            for d in row {
                let _ = write!(out, " {:>width$}", d.to_decimal3());
            }
            out.push('\n');
        }
        out
    }

    pub fn to_doc(&self, st: &SetValuedTable) -> SimilarityMatrixDoc {
        SimilarityMatrixDoc {
            tnorm: self.tnorm,
            attrs: self
                .attrs
                .ids()
                .iter()
                .map(|a| st.schema().attribute(*a).name().to_string())
                .collect(),
            objects: self.universe.names().to_vec(),
            entries: self.entries.clone(),
        }
    }
}

/// `{y | G(x, y) >= alpha}`.
pub fn alpha_similarity_class(m: &SimilarityMatrix, x: ObjectId, alpha: &Degree) -> ObjectSet {
    m.universe
        .ids()
        .filter(|y| m.get(x, *y).meets(alpha))
        .collect()
}

/// Every formula over `attrs` choosing one token from each cell of `x`
/// (`NA` included).
pub fn cdes(st: &SetValuedTable, attrs: &AttrSet, x: ObjectId, max_formulas: u64) -> Result<BTreeSet<Formula>> {
    let cells: Vec<(AttrId, Vec<Token>)> = attrs
        .ids()
        .iter()
        .map(|a| (*a, st.cell(x, *a).iter().copied().collect()))
        .collect();
    let count = cells
        .iter()
        .try_fold(1u64, |acc, (_, ts)| acc.checked_mul(ts.len() as u64));
    match count {
        Some(n) if n <= max_formulas => {}
        _ => {
            return Err(Error::TooLarge {
                what: "object descriptions",
                count: count.map_or_else(|| "more than 2^64".to_string(), |n| n.to_string()),
                limit: max_formulas,
            })
        }
    }
    let mut out: Vec<Vec<Atom>> = vec![Vec::new()];
    for (attr, tokens) in &cells {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                tokens.iter().map(move |t| {
                    let mut next = prefix.clone();
                    next.push(Atom {
                        attr: *attr,
                        value: *t,
                    });
                    next
                })
            })
            .collect();
    }
    Ok(out
        .into_iter()
        .map(|atoms| Formula::new(atoms).expect("one atom per distinct attribute"))
        .collect())
}

fn union_of_cdes<'a>(
    st: &SetValuedTable,
    attrs: &AttrSet,
    objects: impl Iterator<Item = &'a ObjectId>,
    max_formulas: u64,
) -> Result<BTreeSet<Formula>> {
    let mut out = BTreeSet::new();
    for x in objects {
        out.extend(cdes(st, attrs, *x, max_formulas)?);
        if out.len() as u64 > max_formulas {
            return Err(Error::TooLarge {
                what: "object descriptions",
                count: out.len().to_string(),
                limit: max_formulas,
            });
        }
    }
    Ok(out)
}

/// Descriptions of the objects whose α-similarity class lies inside `X`
/// (positive) or inside its complement (negative).
pub fn description_regions_alpha_sim(
    st: &SetValuedTable,
    attrs: &AttrSet,
    alpha: &Degree,
    class: &ObjectSet,
    kind: TNormKind,
    max_formulas: u64,
) -> Result<DescriptionRegions> {
    st.universe().check(class)?;
    let m = similarity_matrix(st, attrs, kind);
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for x in st.universe().ids() {
        let c = alpha_similarity_class(&m, x, alpha);
        if c.is_subset(class) {
            pos.push(x);
        }
        if c.is_disjoint(class) {
            neg.push(x);
        }
    }
    Ok(DescriptionRegions {
        dpos: union_of_cdes(st, attrs, pos.iter(), max_formulas)?,
        dneg: union_of_cdes(st, attrs, neg.iter(), max_formulas)?,
    })
}

/// Positive and negative approximability of one object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Approximability {
    pub object: ObjectId,
    pub papr: Degree,
    pub napr: Degree,
}

fn indicator(set: &ObjectSet, y: ObjectId) -> Degree {
    if set.contains(&y) {
        Degree::one()
    } else {
        Degree::zero()
    }
}

/// Approximability evaluated from the definition:
/// `papr(x) = T_y I(G(x, y), 1_X(y))` and `napr` with `X` complemented.
pub fn approximability(m: &SimilarityMatrix, class: &ObjectSet, x: ObjectId) -> Approximability {
    let kind = m.tnorm;
    let imp = kind.implication();
    let complement = m.universe.complement(class);
    let over = |set: &ObjectSet| {
        tnorm_iter(
            kind,
            m.universe.ids().map(|y| imp.apply(m.get(x, y), &indicator(set, y))),
        )
    };
    Approximability {
        object: x,
        papr: over(class),
        napr: over(&complement),
    }
}

/// Approximability from the closed forms: the t-norm of `1 - G(x, y)` over
/// the objects outside `X` (papr) or inside `X` (napr).
pub fn approximability_closed(m: &SimilarityMatrix, class: &ObjectSet, x: ObjectId) -> Approximability {
    let over = |ys: &mut dyn Iterator<Item = ObjectId>| -> Degree {
        let mut acc = Degree::one();
        for y in ys {
            let c = m.get(x, y).complement();
            acc = match m.tnorm {
                TNormKind::Min => acc.min(c),
                TNormKind::Product => acc.product(&c),
            };
        }
        acc
    };
    Approximability {
        object: x,
        papr: over(&mut m.universe.ids().filter(|y| !class.contains(y))),
        napr: over(&mut class.iter().copied()),
    }
}

/// Descriptions of objects with `papr >= alpha` (positive) and
/// `napr >= alpha` (negative).
pub fn description_regions_approx(
    st: &SetValuedTable,
    attrs: &AttrSet,
    alpha: &Degree,
    class: &ObjectSet,
    kind: TNormKind,
    max_formulas: u64,
) -> Result<DescriptionRegions> {
    st.universe().check(class)?;
    let m = similarity_matrix(st, attrs, kind);
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for x in st.universe().ids() {
        let a = approximability(&m, class, x);
        if a.papr.meets(alpha) {
            pos.push(x);
        }
        if a.napr.meets(alpha) {
            neg.push(x);
        }
    }
    Ok(DescriptionRegions {
        dpos: union_of_cdes(st, attrs, pos.iter(), max_formulas)?,
        dneg: union_of_cdes(st, attrs, neg.iter(), max_formulas)?,
    })
}
