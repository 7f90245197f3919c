use std::fmt::Write;

use serde::Serialize;
use threeway_core::complete::{
    description_regions_complete, description_regions_equivalence, regions_computational, regions_conceptual,
    StructuredRegionsDoc,
};
use threeway_core::language::AtomDoc;
use threeway_core::oracle::{
    check_sat_degrees, check_similarity, oracle_classical_reduction, oracle_theorem2, OracleReport,
};
use threeway_core::rules::{derive_rules, DescriptionRegionsDoc, RuleSetDoc};
use threeway_core::satisfiability::{
    confidence, description_regions_alpha_meaning, description_regions_confidence, sat_degree, SatProfile,
};
use threeway_core::similarity::{
    description_regions_alpha_sim, description_regions_approx, similarity as similarity_degree,
    similarity_matrix,
};
use threeway_core::{
    enumerate_cdl, AttrSet, Degree, DescriptionRegions, Error, Limits, Method, Mode, ObjectId, Provenance,
    RuleSet, SetValuedTable, StructuredRegions, TNormKind,
};

use crate::config::{load, Failure, Loaded};
use crate::{Format, OracleArgs, RunArgs, SatisfiabilityArgs, SimilarityArgs};

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

/// Everything one `regions` or `rules` invocation computes.
struct Derived {
    loaded: Loaded,
    provenance: Provenance,
    structured: Option<StructuredRegions>,
    regions: DescriptionRegions,
    rules: RuleSet,
}

fn derive(args: &RunArgs) -> Result<Derived, Failure> {
    let loaded = load(&args.table, &args.class)?;
    let target = loaded.require_class()?;
    let (st, attrs, x) = (&loaded.table, &loaded.attrs, &target.members);
    let max = args.guards.max_formulas;
    let method = args.method;

    let (tnorm, alpha) = if method.is_complete_only() {
        if args.tnorm.is_some() {
            log::warn!("--tnorm is ignored by method {method}");
        }
        if args.alpha.is_some() {
            log::warn!("--alpha is ignored by method {method}");
        }
        (None, None)
    } else {
        let alpha = args
            .alpha
            .clone()
            .ok_or_else(|| Failure::Config(format!("method {method} needs --alpha")))?;
        (Some(args.tnorm.unwrap_or(TNormKind::Min)), Some(alpha))
    };

    let mut structured = None;
    let regions = match method {
        Method::EqComplete | Method::CdlComplete => {
            let t = st.to_complete().map_err(|_| {
                Failure::Config(format!("method {method} needs a complete table; use an incomplete-table method"))
            })?;
            if method == Method::EqComplete {
                structured = Some(regions_computational(&t, attrs, x)?);
                description_regions_equivalence(&t, attrs, x)?
            } else {
                structured = Some(regions_conceptual(&t, attrs, x, max)?.structured());
                description_regions_complete(&t, attrs, x, max)?
            }
        }
        _ => {
            let (kind, alpha) = (tnorm.expect("set above"), alpha.as_ref().expect("set above"));
            match method {
                Method::AlphaSim => description_regions_alpha_sim(st, attrs, alpha, x, kind, max)?,
                Method::Approx => description_regions_approx(st, attrs, alpha, x, kind, max)?,
                Method::AlphaMeaning => description_regions_alpha_meaning(st, attrs, alpha, x, kind, max)?,
                _ => description_regions_confidence(st, attrs, alpha, x, kind, max)?,
            }
        }
    };

    let provenance = Provenance {
        method,
        tnorm,
        alpha,
        class: target.label.clone(),
    };
    let mut rules = derive_rules(&regions, provenance.clone());
    if let Some(names) = &args.strip_na_atoms {
        let on = if names.iter().all(|n| n.is_empty()) {
            st.schema().all()
        } else {
            st.schema().attr_set(names)?
        };
        rules = rules.strip_na_atoms(&on);
    }
    Ok(Derived {
        loaded,
        provenance,
        structured,
        regions,
        rules,
    })
}

fn header(p: &Provenance, attrs: &AttrSet, st: &SetValuedTable) -> String {
    let names: Vec<&str> = attrs.ids().iter().map(|a| st.schema().attribute(*a).name()).collect();
    let mut out = format!("method {}", p.method);
    if let Some(k) = p.tnorm {
        let _ = write!(out, ", t-norm {}", k.name());
    }
    if let Some(a) = &p.alpha {
        let _ = write!(out, ", alpha {a}");
    }
    let _ = writeln!(out, ", attributes {}, class {}", names.join(","), p.class);
    out
}

#[derive(Serialize)]
struct RegionsDoc {
    attrs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    object_regions: Option<StructuredRegionsDoc>,
    description_regions: DescriptionRegionsDoc,
    overlap: Vec<Vec<AtomDoc>>,
    rules: RuleSetDoc,
}

pub fn regions(args: &RunArgs) -> Result<String, Failure> {
    let d = derive(args)?;
    let st = &d.loaded.table;
    let schema = st.schema();
    let overlap = d.regions.overlap();
    if args.table.format == Format::Json {
        return Ok(to_json(&RegionsDoc {
            attrs: d.loaded.attrs.ids().iter().map(|a| schema.attribute(*a).name().to_string()).collect(),
            object_regions: d.structured.as_ref().map(|s| s.to_doc(st.universe())),
            description_regions: d.regions.to_doc(schema),
            overlap: overlap.iter().map(|p| p.to_doc(schema)).collect(),
            rules: d.rules.to_doc(schema),
        }));
    }

    let mut out = header(&d.provenance, &d.loaded.attrs, st);
    if let Some(s) = &d.structured {
        for (name, family) in [("POS", &s.pos), ("NEG", &s.neg), ("BND", &s.bnd)] {
            let sets: Vec<String> = family.iter().map(|set| st.universe().render_set(set)).collect();
            let _ = writeln!(out, "{name} {}", sets.join(" "));
        }
    }
    for (name, set) in [("DPOS", &d.regions.dpos), ("DNEG", &d.regions.dneg), ("overlap", &overlap)] {
        let _ = writeln!(out, "{name} ({})", set.len());
        for p in set {
            let _ = writeln!(out, "  {}", p.display(schema));
        }
    }
    out.push('\n');
    out.push_str(&d.rules.render_text(schema));
    Ok(out)
}

pub fn rules(args: &RunArgs) -> Result<String, Failure> {
    let d = derive(args)?;
    let schema = d.loaded.table.schema();
    Ok(match args.table.format {
        Format::Json => to_json(&d.rules.to_doc(schema)),
        Format::Text => d.rules.render_text(schema),
    })
}

pub fn similarity(args: &SimilarityArgs) -> Result<String, Failure> {
    let loaded = load(&args.table, &args.class)?;
    let m = similarity_matrix(&loaded.table, &loaded.attrs, args.tnorm);
    Ok(match args.table.format {
        Format::Json => to_json(&m.to_doc(&loaded.table)),
        Format::Text => m.render_text(),
    })
}

#[derive(Serialize)]
struct ObjectDegree {
    object: String,
    degree: Degree,
}

#[derive(Serialize)]
struct FormulaRow {
    label: String,
    formula: Vec<AtomDoc>,
    degrees: Vec<ObjectDegree>,
    #[serde(skip_serializing_if = "Option::is_none")]
    acceptance_confidence: Option<Degree>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rejection_confidence: Option<Degree>,
}

pub fn satisfiability(args: &SatisfiabilityArgs) -> Result<String, Failure> {
    let loaded = load(&args.table, &args.class)?;
    let st = &loaded.table;
    let schema = st.schema();
    let formulas = enumerate_cdl(schema, &loaded.attrs, Mode::Strict, args.guards.max_formulas)?;
    let rows: Vec<FormulaRow> = formulas
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let profile = SatProfile::new(st, p, args.tnorm);
            let c = loaded.class.as_ref().map(|t| confidence(&profile, st.universe(), &t.members));
            FormulaRow {
                label: format!("p{}", i + 1),
                formula: p.to_doc(schema),
                degrees: st
                    .universe()
                    .ids()
                    .map(|x| ObjectDegree {
                        object: st.universe().name(x).to_string(),
                        degree: profile.degree(x).clone(),
                    })
                    .collect(),
                acceptance_confidence: c.as_ref().map(|c| c.ac.clone()),
                rejection_confidence: c.map(|c| c.rc),
            }
        })
        .collect();
    if args.table.format == Format::Json {
        return Ok(to_json(&rows));
    }

    let shown: Vec<String> = formulas.iter().map(|p| p.display(schema).to_string()).collect();
    let label_w = rows.last().map_or(2, |r| r.label.len());
    let formula_w = shown.iter().map(String::len).max().unwrap_or(0);
    let cells: Vec<String> = rows
        .iter()
        .map(|r| {
            r.degrees
                .iter()
                .filter(|d| !d.degree.is_zero())
                .map(|d| format!("{}:{}", d.object, d.degree.to_short_decimal()))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    let cells_w = cells.iter().map(String::len).max().unwrap_or(0);

    let mut out = format!("t-norm {}", args.tnorm.name());
    if let Some(t) = &loaded.class {
        let _ = write!(out, ", class {}", t.label);
    }
    out.push('\n');
    for ((r, f), c) in rows.iter().zip(&shown).zip(&cells) {
        let mut line = format!("{:label_w$}  {f:formula_w$}  {c:cells_w$}", r.label);
        if let (Some(ac), Some(rc)) = (&r.acceptance_confidence, &r.rejection_confidence) {
            let _ = write!(line, "  AC {:5}  RC {:5}", ac.to_short_decimal(), rc.to_short_decimal());
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    Ok(out)
}

/// Product-kind similarity computed with the wrong t-norm.
fn faulty_similarity(st: &SetValuedTable, attrs: &AttrSet, _: TNormKind, x: ObjectId, y: ObjectId) -> Degree {
    similarity_degree(st, attrs, TNormKind::Min, x, y)
}

pub fn oracle_check(args: &OracleArgs) -> Result<(String, usize), Failure> {
    let loaded = load(&args.table, &args.class)?;
    let (st, attrs) = (&loaded.table, &loaded.attrs);
    let limits = Limits {
        max_worlds: args.guards.max_worlds,
        max_formulas: args.guards.max_formulas,
        ..Limits::default()
    };
    let sim = if args.inject_fault { faulty_similarity } else { similarity_degree };

    let mut reports: Vec<OracleReport> = check_similarity(st, attrs, sim, limits.max_worlds)?;
    reports.extend(check_sat_degrees(st, attrs, sat_degree, &limits)?);
    if let Ok(t) = st.to_complete() {
        for sub in attrs.nonempty_subsets() {
            match oracle_theorem2(&t, &sub, &limits) {
                Ok(r) => reports.push(r),
                Err(Error::TooLarge { .. }) => {
                    log::warn!("union-closure check skipped: table has too many objects to enumerate every subset");
                    break;
                }
                Err(e) => return Err(e.into()),
            }
        }
        if let Some(target) = &loaded.class {
            let alphas = match &args.alpha {
                Some(a) => vec![a.clone()],
                None => vec![Degree::ratio(1, 2), Degree::one()],
            };
            for alpha in alphas {
                reports.push(oracle_classical_reduction(&t, attrs, &target.members, &alpha, sim, &limits)?);
            }
        }
    } else {
        log::info!("table is incomplete; union-closure and classical-reduction checks do not apply");
    }

    let failed = reports.iter().filter(|r| !r.pass).count();
    let text = match args.table.format {
        Format::Json => to_json(&reports),
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                let _ = writeln!(out, "{r}");
            }
            let _ = writeln!(out, "{} checks, {} failed", reports.len(), failed);
            out
        }
    };
    Ok((text, failed))
}
