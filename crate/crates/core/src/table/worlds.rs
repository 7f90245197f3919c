use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::{ObjectId, ObjectSet, SetValuedTable, Token};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_WORLDS: u64 = 1 << 20;

/// One completion of the selected rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct World {
    pub rows: Vec<(ObjectId, Vec<Token>)>,
}

impl World {
    pub fn row(&self, x: ObjectId) -> Option<&[Token]> {
        self.rows.iter().find(|(y, _)| *y == x).map(|(_, r)| r.as_slice())
    }
}

/// Lexicographic enumeration of completions; the last cell varies fastest.
#[derive(Debug, Clone)]
pub struct PossibleWorlds {
    objects: Vec<ObjectId>,
    width: usize,
    choices: Vec<Vec<Token>>,
    cursor: Option<Vec<usize>>,
    count: u64,
}

impl PossibleWorlds {
    /// Total number of worlds, fixed up front.
    pub fn total(&self) -> u64 {
        self.count
    }
}

impl Iterator for PossibleWorlds {
    type Item = World;

    fn next(&mut self) -> Option<World> {
        let cursor = self.cursor.as_mut()?;
        let mut rows = Vec::with_capacity(self.objects.len());
        for (i, x) in self.objects.iter().enumerate() {
            let row = (0..self.width)
                .map(|a| {
                    let k = i * self.width + a;
                    self.choices[k][cursor[k]]
                })
                .collect();
            rows.push((*x, row));
        }
        // advance the odometer
        let mut k = cursor.len();
        loop {
            if k == 0 {
                self.cursor = None;
                break;
            }
            k -= 1;
            cursor[k] += 1;
            if cursor[k] < self.choices[k].len() {
                break;
            }
            cursor[k] = 0;
        }
        Some(World { rows })
    }
}

/// Enumerates every complete assignment of the rows in `rows` (all rows when
/// `None`), refusing when more than `max_worlds` would be produced.
pub fn possible_worlds(
    st: &SetValuedTable,
    rows: Option<&ObjectSet>,
    max_worlds: u64,
) -> Result<PossibleWorlds> {
    let objects: Vec<ObjectId> = match rows {
        Some(set) => {
            st.universe().check(set)?;
            set.iter().copied().collect()
        }
        None => st.universe().ids().collect(),
    };
    let width = st.schema().len();
    let choices: Vec<Vec<Token>> = objects
        .iter()
        .flat_map(|x| st.row(*x).iter().map(|s| s.iter().copied().collect()))
        .collect();
    let total = choices
        .iter()
        .fold(BigUint::one(), |acc, c| acc * BigUint::from(c.len()));
    let count = match total.to_u64() {
        Some(n) if n <= max_worlds => n,
        _ => {
            return Err(Error::TooLarge {
                what: "possible worlds",
                count: total.to_string(),
                limit: max_worlds,
            })
        }
    };
    Ok(PossibleWorlds {
        cursor: Some(vec![0; choices.len()]),
        objects,
        width,
        choices,
        count,
    })
}
