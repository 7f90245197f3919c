//! Turning command-line arguments into a loaded table, attribute subset and
//! target class.

use std::path::PathBuf;

use threeway_core::{parse_table, AttrId, AttrSet, Error, ObjectSet, SetValuedTable};

use crate::{ClassArgs, TableArgs};

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Core(#[from] Error),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{0}")]
    Config(String),

    #[error("{0} oracle check(s) failed")]
    OracleFailed(usize),
}

impl Failure {
    /// 1 for bad configuration or I/O, 2 for malformed tables, 3 for exceeded
    /// guards, 4 for oracle disagreement.
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::Parse(_))
            | Failure::Core(Error::UnresolvedReference { .. })
            | Failure::Core(Error::EmptyResolution { .. })
            | Failure::Core(Error::InvalidTable(_)) => 2,
            Failure::Core(Error::TooLarge { .. }) => 3,
            Failure::OracleFailed(_) => 4,
            Failure::Core(_) | Failure::Io { .. } | Failure::Config(_) => 1,
        }
    }
}

pub struct Target {
    pub members: ObjectSet,
    /// How the class is shown in rules, e.g. `{x1,x2}` or `d=yes`.
    pub label: String,
}

pub struct Loaded {
    pub table: SetValuedTable,
    pub attrs: AttrSet,
    pub class: Option<Target>,
}

pub fn load(table: &TableArgs, class: &ClassArgs) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(&table.table).map_err(|e| Failure::Io { path: table.table.clone(), source: e })?;
    let st = parse_table(&text)?.to_set_valued()?;
    let schema = st.schema();

    let decision = class.class_column.as_deref().map(|c| schema.attr_id(c)).transpose()?;
    let attrs = match &table.attrs {
        Some(names) => {
            let set = schema.attr_set(names)?;
            if let Some(d) = decision.filter(|d| set.contains(*d)) {
                return Err(Failure::Config(format!(
                    "decision column `{}` cannot also be a condition attribute",
                    schema.attribute(d).name()
                )));
            }
            set
        }
        None => {
            let ids: Vec<AttrId> = schema.attr_ids().filter(|a| Some(*a) != decision).collect();
            AttrSet::new(ids).map_err(|_| Failure::Config("no condition attributes left".into()))?
        }
    };

    let class = match (&class.class, decision, &class.class_value) {
        (Some(ids), _, _) => {
            let members = st.universe().set(ids)?;
            Some(Target {
                label: st.universe().render_set(&members),
                members,
            })
        }
        (None, Some(d), Some(value)) => Some(decision_class(&st, d, value)?),
        _ => None,
    };
    Ok(Loaded { table: st, attrs, class })
}

fn decision_class(st: &SetValuedTable, d: AttrId, value: &str) -> Result<Target, Failure> {
    let name = st.schema().attribute(d).name();
    let token = st
        .schema()
        .parse_token(d, value)
        .ok_or_else(|| Failure::Config(format!("`{value}` is not a value of `{name}`")))?;
    let mut members = ObjectSet::new();
    for x in st.universe().ids() {
        let cell = st.cell(x, d);
        if cell.len() != 1 {
            return Err(Failure::Config(format!(
                "decision column `{name}` is not known for object `{}`",
                st.universe().name(x)
            )));
        }
        if cell.contains(&token) {
            members.insert(x);
        }
    }
    Ok(Target {
        members,
        label: format!("{name}={value}"),
    })
}

impl Loaded {
    pub fn require_class(&self) -> Result<&Target, Failure> {
        self.class
            .as_ref()
            .ok_or_else(|| Failure::Config("a class is required: pass --class or --class-column with --class-value".into()))
    }
}
