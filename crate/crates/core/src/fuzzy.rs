//! Exact-rational fuzzy connectives.
//!
//! Every degree in this crate is a [`Degree`]: a rational number in `[0, 1]`
//! carried exactly, so that threshold tests such as `1/3 >= 0.3` never depend
//! on floating-point rounding. Two t-norms are supported, each tied to the
//! S-implication built from its dual conorm and the standard negator:
//!
//! | t-norm  | implication   | `I(u, v)`            |
//! |---------|---------------|----------------------|
//! | min     | Kleene-Dienes | `max(1 - u, v)`      |
//! | product | Reichenbach   | `1 - u + u * v`      |

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rational truth degree in `[0, 1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(BigRational);

impl Degree {
    pub fn zero() -> Self {
        Degree(BigRational::zero())
    }

    pub fn one() -> Self {
        Degree(BigRational::one())
    }

    /// `numer / denom`, rejected unless it lies in `[0, 1]`.
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidDegree(format!("{numer}/{denom}")));
        }
        Self::from_rational(BigRational::new(numer.into(), denom.into()))
    }

    /// Like [`Degree::new`] for arguments known to be valid.
    ///
    /// Panics if the fraction is not a valid degree.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("fraction outside [0, 1]")
    }

    pub fn from_rational(r: BigRational) -> Result<Self> {
        if r.is_negative() || r > BigRational::one() {
            return Err(Error::DegreeOutOfRange(r.to_string()));
        }
        Ok(Degree(r))
    }

    /// Ratio of two counts, `part / whole`, with `part <= whole`.
    pub(crate) fn from_counts(part: usize, whole: usize) -> Self {
        debug_assert!(whole > 0 && part <= whole);
        Degree(BigRational::new(BigInt::from(part), BigInt::from(whole)))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `self >= threshold`, compared exactly.
    pub fn meets(&self, threshold: &Degree) -> bool {
        self.cmp(threshold) != Ordering::Less
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn product(&self, other: &Self) -> Self {
        Degree(&self.0 * &other.0)
    }

    /// `1 - self`.
    pub fn complement(&self) -> Self {
        Degree(BigRational::one() - &self.0)
    }

    /// Decimal rendering with `places` digits, rounding halves up.
    pub fn to_decimal(&self, places: u32) -> String {
        let scale = BigInt::from(10u32).pow(places);
        let scaled = &self.0 * BigRational::from_integer(scale.clone());
        // non-negative, so floor(x + 1/2) rounds half up
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let rounded = (scaled + half).floor().to_integer();
        let int_part = &rounded / &scale;
        let frac_part = &rounded % &scale;
        if places == 0 {
            return int_part.to_string();
        }
        format!(
            "{}.{:0>width$}",
            int_part,
            frac_part.to_string(),
            width = places as usize
        )
    }

    /// Three-decimal display form used in tables, e.g. `0.694`.
    pub fn to_decimal3(&self) -> String {
        self.to_decimal(3)
    }

    /// Compact display that drops trailing zeros: `1`, `0.5`, `0.333`.
    pub fn to_short_decimal(&self) -> String {
        let s = self.to_decimal3();
        let s = s.trim_end_matches('0');
        s.trim_end_matches('.').to_string()
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Degree {
    /// Exact fraction form: `0`, `1`, `25/36`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Degree({self})")
    }
}

impl FromStr for Degree {
    type Err = Error;

    /// Accepts `1/3`, `0.3`, `.25`, `1`, `0`. Decimals are read exactly,
    /// so `0.3` is `3/10`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidDegree(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(bad());
        }
        let r = if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            BigRational::new(n, d)
        } else if let Some((int, frac)) = t.split_once('.') {
            if !int.chars().all(|c| c.is_ascii_digit())
                || !frac.chars().all(|c| c.is_ascii_digit())
                || (int.is_empty() && frac.is_empty())
            {
                return Err(bad());
            }
            let digits = format!("{int}{frac}");
            let n: BigInt = digits.parse().map_err(|_| bad())?;
            let d = BigInt::from(10u32).pow(frac.len() as u32);
            BigRational::new(n, d)
        } else {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            BigRational::from_integer(n)
        };
        Degree::from_rational(r)
    }
}

impl Serialize for Degree {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The two supported t-norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TNormKind {
    Min,
    #[serde(rename = "prod")]
    Product,
}

impl TNormKind {
    pub const ALL: [TNormKind; 2] = [TNormKind::Min, TNormKind::Product];

    pub fn name(self) -> &'static str {
        match self {
            TNormKind::Min => "min",
            TNormKind::Product => "prod",
        }
    }

    /// The implication paired with this t-norm.
    pub fn implication(self) -> ImplicationKind {
        match self {
            TNormKind::Min => ImplicationKind::KleeneDienes,
            TNormKind::Product => ImplicationKind::Reichenbach,
        }
    }

    /// Binary t-norm.
    pub fn apply(self, u: &Degree, v: &Degree) -> Degree {
        match self {
            TNormKind::Min => u.clone().min(v.clone()),
            TNormKind::Product => u.product(v),
        }
    }
}

impl fmt::Display for TNormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TNormKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "min" => Ok(TNormKind::Min),
            "prod" | "product" => Ok(TNormKind::Product),
            other => Err(format!("unknown t-norm `{other}` (expected `min` or `prod`)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ImplicationKind {
    KleeneDienes,
    Reichenbach,
}

impl ImplicationKind {
    pub fn name(self) -> &'static str {
        match self {
            ImplicationKind::KleeneDienes => "Kleene-Dienes",
            ImplicationKind::Reichenbach => "Reichenbach",
        }
    }

    pub fn apply(self, u1: &Degree, u2: &Degree) -> Degree {
        match self {
            ImplicationKind::KleeneDienes => u1.complement().max(u2.clone()),
            ImplicationKind::Reichenbach => {
                // 1 - u1 + u1*u2 = 1 - u1*(1 - u2)
                u1.product(&u2.complement()).complement()
            }
        }
    }
}

/// A validated t-norm / implication pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Connectives {
    tnorm: TNormKind,
}

impl Connectives {
    pub fn new(tnorm: TNormKind, implication: ImplicationKind) -> Result<Self> {
        if tnorm.implication() != implication {
            return Err(Error::MixedPairing {
                tnorm: tnorm.name(),
                implication: implication.name(),
            });
        }
        Ok(Connectives { tnorm })
    }

    pub fn tnorm(self) -> TNormKind {
        self.tnorm
    }

    pub fn implication(self) -> ImplicationKind {
        self.tnorm.implication()
    }
}

impl From<TNormKind> for Connectives {
    fn from(tnorm: TNormKind) -> Self {
        Connectives { tnorm }
    }
}

/// n-ary t-norm, folded from the right: `T(u1, T(u2, ... T(un-1, un)))`.
pub fn tnorm(kind: TNormKind, values: &[Degree]) -> Result<Degree> {
    let (last, rest) = values.split_last().ok_or(Error::EmptyTNorm)?;
    Ok(rest
        .iter()
        .rev()
        .fold(last.clone(), |acc, u| kind.apply(u, &acc)))
}

/// n-ary t-norm over an iterator; `1` (the t-norm identity) when empty.
///
/// Used where the operand family may legitimately be empty, e.g. a product
/// over the complement of `X = OB`.
pub fn tnorm_iter<I>(kind: TNormKind, values: I) -> Degree
where
    I: IntoIterator<Item = Degree>,
{
    values
        .into_iter()
        .fold(Degree::one(), |acc, u| kind.apply(&acc, &u))
}

/// The S-implication paired with `kind`.
pub fn implication(kind: TNormKind, u1: &Degree, u2: &Degree) -> Degree {
    kind.implication().apply(u1, u2)
}

/// Standard negator `1 - u`.
pub fn negate(u: &Degree) -> Degree {
    u.complement()
}
