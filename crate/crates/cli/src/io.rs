//! Versioned JSON schemas for arrangements, measures, points and filtered
//! systems, with strict validation on load.

use serde::{Deserialize, Serialize};
use std::path::Path;
use tubular::arr::{Arrangement, Flavor};
use tubular::limits::FilteredSystem;
use tubular::measures::Measure;
use tubular::proj::{canonicalize_ints, AlgebraicHyperplane, Hyperplane, ProjPoint};
use tubular::ring::Zpn;

pub const ARRANGEMENT_SCHEMA: &str = "arrangement/v1";
pub const MEASURE_SCHEMA: &str = "measure/v1";
pub const FILTERED_SCHEMA: &str = "filtered-system/v1";

#[derive(Debug)]
pub enum IoError {
    Parse(String),
    Invariant(String),
}

impl std::fmt::Display for IoError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IoError::Parse(m) => write!(f, "parse error: {m}"),
            IoError::Invariant(m) => write!(f, "invariant violation: {m}"),
        }
    }
}

impl std::error::Error for IoError {}

#[derive(Debug, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub schema: String,
    pub flavor: Flavor,
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    pub members: Vec<Vec<i64>>,
}

pub fn arrangement_from_file(file: &ArrangementFile) -> Result<Arrangement, IoError> {
    if file.schema != ARRANGEMENT_SCHEMA {
        return Err(IoError::Parse(format!(
            "unsupported schema {:?}, expected {ARRANGEMENT_SCHEMA:?}",
            file.schema
        )));
    }
    if file.members.is_empty() {
        return Err(IoError::Invariant("arrangement must be nonempty".into()));
    }
    let width = file.members[0].len();
    if file.members.iter().any(|m| m.len() != width) {
        return Err(IoError::Invariant("members have mixed lengths".into()));
    }
    let arrangement = match file.flavor {
        Flavor::Algebraic => {
            let members: Result<Vec<AlgebraicHyperplane>, _> = file
                .members
                .iter()
                .map(|c| AlgebraicHyperplane::from_ints(file.p, c))
                .collect();
            let members = members.map_err(|e| IoError::Invariant(e.to_string()))?;
            let mut sorted = members.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != members.len() {
                return Err(IoError::Invariant("duplicate members".into()));
            }
            Arrangement::algebraic(file.p, members)
        }
        flavor => {
            let order = file
                .order
                .ok_or_else(|| IoError::Parse("tubular arrangements need an order".into()))?;
            let level = Arrangement::member_level(flavor, order);
            let ring = Zpn::new(file.p, level).map_err(|e| IoError::Parse(e.to_string()))?;
            let members: Result<Vec<Hyperplane>, _> = file
                .members
                .iter()
                .map(|c| Hyperplane::from_ints(&ring, c))
                .collect();
            let members = members.map_err(|e| IoError::Invariant(e.to_string()))?;
            let mut sorted = members.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != members.len() {
                return Err(IoError::Invariant(
                    "duplicate members at the defining level".into(),
                ));
            }
            Arrangement::tubular(flavor, order, members)
        }
    };
    arrangement.map_err(|e| IoError::Invariant(e.to_string()))
}

pub fn arrangement_to_file(a: &Arrangement) -> ArrangementFile {
    let members = if let Some(ms) = a.tubular_members() {
        ms.iter()
            .map(|h| {
                h.dual()
                    .coords()
                    .iter()
                    .map(|c| i64::try_from(c).expect("desk-scale residues fit in i64"))
                    .collect()
            })
            .collect()
    } else {
        a.algebraic_members()
            .expect("tubular or algebraic")
            .iter()
            .map(|h| {
                h.coords()
                    .iter()
                    .map(|c| i64::try_from(c).expect("desk-scale coordinates fit in i64"))
                    .collect()
            })
            .collect()
    };
    ArrangementFile {
        schema: ARRANGEMENT_SCHEMA.to_string(),
        flavor: a.flavor(),
        p: a.p(),
        order: a.order(),
        members,
    }
}

pub fn load_arrangement(path: &Path) -> Result<Arrangement, IoError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| IoError::Parse(format!("{}: {e}", path.display())))?;
    let file: ArrangementFile =
        serde_json::from_str(&text).map_err(|e| IoError::Parse(e.to_string()))?;
    arrangement_from_file(&file)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MeasureFile {
    pub schema: String,
    pub arrangement: ArrangementFile,
    /// aligned with the arrangement's sorted member order
    pub weights: Vec<i64>,
}

pub fn load_measure(path: &Path) -> Result<Measure, IoError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| IoError::Parse(format!("{}: {e}", path.display())))?;
    let file: MeasureFile =
        serde_json::from_str(&text).map_err(|e| IoError::Parse(e.to_string()))?;
    if file.schema != MEASURE_SCHEMA {
        return Err(IoError::Parse(format!(
            "unsupported schema {:?}, expected {MEASURE_SCHEMA:?}",
            file.schema
        )));
    }
    let arrangement = arrangement_from_file(&file.arrangement)?;
    Measure::from_ints(arrangement, &file.weights).map_err(|e| IoError::Invariant(e.to_string()))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FilteredFile {
    pub schema: String,
    pub shift: u32,
    #[serde(flatten)]
    pub system: FilteredSystem,
}

pub fn load_filtered(path: &Path) -> Result<(FilteredSystem, u32), IoError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| IoError::Parse(format!("{}: {e}", path.display())))?;
    let file: FilteredFile =
        serde_json::from_str(&text).map_err(|e| IoError::Parse(e.to_string()))?;
    if file.schema != FILTERED_SCHEMA {
        return Err(IoError::Parse(format!(
            "unsupported schema {:?}, expected {FILTERED_SCHEMA:?}",
            file.schema
        )));
    }
    Ok((file.system, file.shift))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PointJson {
    pub p: u64,
    pub n: u32,
    pub coords: Vec<i64>,
}

pub fn parse_point(text: &str) -> Result<ProjPoint, IoError> {
    let pt: PointJson = serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string()))?;
    let ring = Zpn::new(pt.p, pt.n).map_err(|e| IoError::Parse(e.to_string()))?;
    canonicalize_ints(&ring, &pt.coords).map_err(|e| IoError::Invariant(e.to_string()))
}
