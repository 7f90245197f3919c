//! Three-way decisions on complete tables.
//!
//! Two families of object sets are available for approximating a class `X`:
//! the blocks of the indiscernibility partition, and the meaning sets of
//! conjunctive formulas. Both generate the same family of definable sets
//! under union, which [`boolean_algebra`] materializes for small inputs.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::language::{enumerate_cdl, meaning_set, object_description, Formula, Mode};
use crate::rules::DescriptionRegions;
use crate::table::{AttrId, AttrSet, CompleteTable, ObjectId, ObjectSet, Universe};

pub const DEFAULT_MAX_CLOSURE_SUBSETS: u64 = 1 << 16;

/// Blocks of the indiscernibility relation on an attribute subset, in order
/// of their first object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<ObjectSet>,
    index: Vec<usize>,
}

impl Partition {
    pub fn blocks(&self) -> &[ObjectSet] {
        &self.blocks
    }

    pub fn block_of(&self, x: ObjectId) -> &ObjectSet {
        &self.blocks[self.index[x.0]]
    }

    pub fn family(&self) -> BTreeSet<ObjectSet> {
        self.blocks.iter().cloned().collect()
    }

    /// True iff every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks.iter().all(|b| {
            let x = *b.iter().next().expect("blocks are nonempty");
            b.is_subset(coarser.block_of(x))
        })
    }
}

pub fn partition(t: &CompleteTable, attrs: &AttrSet) -> Partition {
    partition_by(t, attrs.ids())
}

/// Like [`partition`], but also accepts the empty attribute list, whose
/// partition is the single block `OB`.
pub fn partition_by(t: &CompleteTable, attrs: &[AttrId]) -> Partition {
    let blocks = t.group_by(attrs);
    let mut index = vec![0; t.universe().len()];
    for (i, b) in blocks.iter().enumerate() {
        for x in b {
            index[x.0] = i;
        }
    }
    Partition { blocks, index }
}

/// A family of object sets split by inclusion in `X` and in its complement.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StructuredRegions {
    pub pos: BTreeSet<ObjectSet>,
    pub neg: BTreeSet<ObjectSet>,
    pub bnd: BTreeSet<ObjectSet>,
}

#[derive(Debug, Serialize)]
pub struct StructuredRegionsDoc {
    pub pos: Vec<Vec<String>>,
    pub neg: Vec<Vec<String>>,
    pub bnd: Vec<Vec<String>>,
}

impl StructuredRegions {
    /// Splits the nonempty members of `family`; empty sets are dropped.
    pub fn split<'a>(family: impl IntoIterator<Item = &'a ObjectSet>, class: &ObjectSet) -> Self {
        let mut out = StructuredRegions::default();
        for set in family {
            if set.is_empty() {
                continue;
            }
            if set.is_subset(class) {
                out.pos.insert(set.clone());
            } else if set.is_disjoint(class) {
                out.neg.insert(set.clone());
            } else {
                out.bnd.insert(set.clone());
            }
        }
        out
    }

    pub fn to_doc(&self, universe: &Universe) -> StructuredRegionsDoc {
        let part = |f: &BTreeSet<ObjectSet>| {
            f.iter()
                .map(|s| s.iter().map(|x| universe.name(*x).to_string()).collect())
                .collect()
        };
        StructuredRegionsDoc {
            pos: part(&self.pos),
            neg: part(&self.neg),
            bnd: part(&self.bnd),
        }
    }
}

/// Structured regions of `class` from the equivalence classes on `attrs`.
pub fn regions_computational(t: &CompleteTable, attrs: &AttrSet, class: &ObjectSet) -> Result<StructuredRegions> {
    t.universe().check(class)?;
    Ok(StructuredRegions::split(partition(t, attrs).blocks(), class))
}

/// A conjunctively definable set with every formula defining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescribedSet {
    pub members: ObjectSet,
    pub descriptions: BTreeSet<Formula>,
}

/// One entry per distinct meaning set over the formulas on `attrs`, ordered
/// by member set.
pub fn cdef_family(t: &CompleteTable, attrs: &AttrSet, max_formulas: u64) -> Result<Vec<DescribedSet>> {
    let mut by_set: BTreeMap<ObjectSet, BTreeSet<Formula>> = BTreeMap::new();
    for p in enumerate_cdl(t.schema(), attrs, Mode::Strict, max_formulas)? {
        by_set.entry(meaning_set(t, &p)).or_default().insert(p);
    }
    Ok(by_set
        .into_iter()
        .map(|(members, descriptions)| DescribedSet { members, descriptions })
        .collect())
}

/// Described sets split by inclusion in `X` and in its complement; the empty
/// set is dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DescribedRegions {
    pub pos: Vec<DescribedSet>,
    pub neg: Vec<DescribedSet>,
    pub bnd: Vec<DescribedSet>,
}

impl DescribedRegions {
    pub fn structured(&self) -> StructuredRegions {
        let sets = |v: &[DescribedSet]| v.iter().map(|d| d.members.clone()).collect();
        StructuredRegions {
            pos: sets(&self.pos),
            neg: sets(&self.neg),
            bnd: sets(&self.bnd),
        }
    }
}

pub fn regions_conceptual(
    t: &CompleteTable,
    attrs: &AttrSet,
    class: &ObjectSet,
    max_formulas: u64,
) -> Result<DescribedRegions> {
    t.universe().check(class)?;
    let mut out = DescribedRegions::default();
    for d in cdef_family(t, attrs, max_formulas)? {
        if d.members.is_empty() {
            continue;
        }
        if d.members.is_subset(class) {
            out.pos.push(d);
        } else if d.members.is_disjoint(class) {
            out.neg.push(d);
        } else {
            out.bnd.push(d);
        }
    }
    Ok(out)
}

/// Closure of `family` under arbitrary unions, including the empty union.
///
/// Fails once the closure would exceed `max_sets` members.
pub fn boolean_algebra<'a>(
    family: impl IntoIterator<Item = &'a ObjectSet>,
    max_sets: u64,
) -> Result<BTreeSet<ObjectSet>> {
    let generators: BTreeSet<&ObjectSet> = family.into_iter().collect();
    let mut closure: BTreeSet<ObjectSet> = BTreeSet::new();
    closure.insert(ObjectSet::new());
    for g in generators {
        let grown: Vec<ObjectSet> = closure
            .iter()
            .map(|y| y.union(g).copied().collect())
            .filter(|u| !closure.contains(u))
            .collect();
        closure.extend(grown);
        if closure.len() as u64 > max_sets {
            return Err(Error::TooLarge {
                what: "definable sets",
                count: format!("more than {}", closure.len() - 1),
                limit: max_sets,
            });
        }
    }
    Ok(closure)
}

/// Structured regions over the definable sets on `attrs`.
pub fn regions_general(
    t: &CompleteTable,
    attrs: &AttrSet,
    class: &ObjectSet,
    max_sets: u64,
) -> Result<StructuredRegions> {
    t.universe().check(class)?;
    let def = boolean_algebra(partition(t, attrs).blocks(), max_sets)?;
    Ok(StructuredRegions::split(&def, class))
}

/// Formulas over `attrs` whose nonempty meaning set lies in `X` (positive)
/// or in its complement (negative).
pub fn description_regions_complete(
    t: &CompleteTable,
    attrs: &AttrSet,
    class: &ObjectSet,
    max_formulas: u64,
) -> Result<DescriptionRegions> {
    t.universe().check(class)?;
    let mut out = DescriptionRegions::default();
    for p in enumerate_cdl(t.schema(), attrs, Mode::Strict, max_formulas)? {
        let m = meaning_set(t, &p);
        if m.is_empty() {
            continue;
        }
        if m.is_subset(class) {
            out.dpos.insert(p);
        } else if m.is_disjoint(class) {
            out.dneg.insert(p);
        }
    }
    Ok(out)
}

/// Descriptions of the positive and negative equivalence classes on exactly
/// the attributes `attrs`.
pub fn description_regions_equivalence(
    t: &CompleteTable,
    attrs: &AttrSet,
    class: &ObjectSet,
) -> Result<DescriptionRegions> {
    let regions = regions_computational(t, attrs, class)?;
    let describe = |blocks: &BTreeSet<ObjectSet>| -> BTreeSet<Formula> {
        blocks
            .iter()
            .map(|b| {
                let x = *b.iter().next().expect("blocks are nonempty");
                object_description(&t.token_row(x), attrs)
            })
            .collect()
    };
    Ok(DescriptionRegions {
        dpos: describe(&regions.pos),
        dneg: describe(&regions.neg),
    })
}

/// [`description_regions_equivalence`] merged over every nonempty subset of
/// `attrs`.
pub fn description_regions_equivalence_all(
    t: &CompleteTable,
    attrs: &AttrSet,
    class: &ObjectSet,
) -> Result<DescriptionRegions> {
    let mut out = DescriptionRegions::default();
    for sub in attrs.nonempty_subsets() {
        let r = description_regions_equivalence(t, &sub, class)?;
        out.dpos.extend(r.dpos);
        out.dneg.extend(r.dneg);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::parse_table;
    use crate::testing::arb_complete;
    use proptest::prelude::*;

    use crate::testing::TABLE1;

    fn table1() -> CompleteTable {
        parse_table(TABLE1).unwrap().to_set_valued().unwrap().to_complete().unwrap()
    }

    fn sets(t: &CompleteTable, groups: &[&[&str]]) -> BTreeSet<ObjectSet> {
        groups.iter().map(|g| t.universe().set(g).unwrap()).collect()
    }

    #[test]
    fn partition_on_all_attributes() {
        let t = table1();
        let p = partition(&t, &t.schema().all());
        assert_eq!(p.family(), sets(&t, &[&["x1", "x2"], &["x3"], &["x4", "x5"], &["x6"]]));
        let x5 = t.universe().id("x5").unwrap();
        assert_eq!(p.block_of(x5), &t.universe().set(&["x4", "x5"]).unwrap());
    }

    #[test]
    fn computational_regions() {
        let t = table1();
        let x = t.universe().set(&["x1", "x2", "x3", "x4"]).unwrap();
        let r = regions_computational(&t, &t.schema().all(), &x).unwrap();
        assert_eq!(r.pos, sets(&t, &[&["x1", "x2"], &["x3"]]));
        assert_eq!(r.neg, sets(&t, &[&["x6"]]));
        assert_eq!(r.bnd, sets(&t, &[&["x4", "x5"]]));

        let all = regions_computational(&t, &t.schema().all(), &t.universe().all()).unwrap();
        assert_eq!(all.pos.len(), 4);
        assert!(all.neg.is_empty() && all.bnd.is_empty());
        let none = regions_computational(&t, &t.schema().all(), &ObjectSet::new()).unwrap();
        assert_eq!(none.neg.len(), 4);
        assert!(regions_computational(&t, &t.schema().all(), &[ObjectId(99)].into()).is_err());
    }

    #[test]
    fn cdef_and_descriptions() {
        let t = table1();
        let fam = cdef_family(&t, &t.schema().all(), 1000).unwrap();
        assert_eq!(fam.len(), 10);
        let x12 = t.universe().set(&["x1", "x2"]).unwrap();
        let d = fam.iter().find(|d| d.members == x12).unwrap();
        assert_eq!(d.descriptions.len(), 5);
        assert!(fam.iter().all(|d| d.descriptions.iter().all(|p| meaning_set(&t, p) == d.members)));
    }

    #[test]
    fn boolean_algebra_small_cases() {
        let t = table1();
        let p = partition(&t, &t.schema().all());
        let b = boolean_algebra(p.blocks(), 1 << 16).unwrap();
        assert_eq!(b.len(), 16);
        assert!(b.contains(&t.universe().set(&["x1", "x2", "x3"]).unwrap()));
        let single = t.universe().set(&["x1"]).unwrap();
        assert_eq!(boolean_algebra([&single], 10).unwrap(), [ObjectSet::new(), single.clone()].into());
        assert!(matches!(boolean_algebra(p.blocks(), 8), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn general_regions() {
        let t = table1();
        let x = t.universe().set(&["x1", "x2", "x3", "x4"]).unwrap();
        let r = regions_general(&t, &t.schema().all(), &x, 1 << 16).unwrap();
        assert_eq!(r.pos, sets(&t, &[&["x1", "x2"], &["x3"], &["x1", "x2", "x3"]]));
        assert_eq!(r.neg, sets(&t, &[&["x6"]]));
        let c = regions_conceptual(&t, &t.schema().all(), &x, 1000).unwrap().structured();
        assert!(c.pos.is_subset(&r.pos));
    }

    #[test]
    fn equivalence_descriptions_match_formula_route() {
        let t = table1();
        let x = t.universe().set(&["x1", "x2", "x3", "x4"]).unwrap();
        let a = description_regions_equivalence_all(&t, &t.schema().all(), &x).unwrap();
        let b = description_regions_complete(&t, &t.schema().all(), &x, 1000).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.dpos.len(), 7);
        assert_eq!(b.dneg.len(), 3);
    }

    proptest! {
        #[test]
        fn blocks_are_conjunctively_definable(t in arb_complete(6, 3, 3)) {
            for a in t.schema().all().nonempty_subsets() {
                let cdef: BTreeSet<ObjectSet> = cdef_family(&t, &a, 10_000).unwrap().into_iter().map(|d| d.members).collect();
                prop_assert!(partition(&t, &a).family().is_subset(&cdef));
            }
        }

        #[test]
        fn finer_attribute_sets_refine(t in arb_complete(6, 3, 3)) {
            let subsets = t.schema().all().nonempty_subsets();
            for small in &subsets {
                for big in &subsets {
                    if small.is_subset(big) {
                        prop_assert!(partition(&t, big).refines(&partition(&t, small)));
                    }
                }
            }
        }

        #[test]
        fn complete_description_regions_are_disjoint(t in arb_complete(6, 3, 3), mask in 0u32..64) {
            let x: ObjectSet = t.universe().ids().filter(|x| mask & (1 << x.0) != 0).collect();
            let r = description_regions_complete(&t, &t.schema().all(), &x, 10_000).unwrap();
            prop_assert!(r.dpos.is_disjoint(&r.dneg));
            let e = description_regions_equivalence_all(&t, &t.schema().all(), &x).unwrap();
            prop_assert_eq!(e, r);
        }
    }
}
