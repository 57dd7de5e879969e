//! Inertial types as finitely supported maps from basic types to partitions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::check_degree;
use crate::partitions::{assert_dominance_compatible, partitions_of, Partition};

/// Label of the trivial one-dimensional basic type (unipotent types live here).
pub const TRIVIAL_LABEL: &str = "1";

/// An opaque basic type with a dimension and a dual partner.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasicType {
    pub label: String,
    pub dim: u32,
    /// Label of the dual basic type; equal to `label` for self-dual types.
    pub dual_label: String,
}

impl BasicType {
    /// A self-dual basic type.
    pub fn new(label: impl Into<String>, dim: u32) -> Result<Self> {
        let label = label.into();
        Self::with_dual(label.clone(), dim, label)
    }

    pub fn with_dual(
        label: impl Into<String>,
        dim: u32,
        dual_label: impl Into<String>,
    ) -> Result<Self> {
        let label = label.into();
        if label.is_empty() || label.contains([':', ';', '@', '~', ',']) {
            return Err(Error::arg(format!("bad basic type label {label:?}")));
        }
        if dim == 0 {
            return Err(Error::arg(format!("basic type {label} has dimension 0")));
        }
        Ok(BasicType {
            label,
            dim,
            dual_label: dual_label.into(),
        })
    }

    pub fn trivial() -> Self {
        BasicType::new(TRIVIAL_LABEL, 1).expect("valid label")
    }

    pub fn is_self_dual(&self) -> bool {
        self.label == self.dual_label
    }

    /// The dual basic type. Dual of dual is `self`.
    pub fn dual(&self) -> BasicType {
        BasicType {
            label: self.dual_label.clone(),
            dim: self.dim,
            dual_label: self.label.clone(),
        }
    }
}

/// Supercuspidal support: basic type ↦ degree of its partition.
pub type Scs = BTreeMap<BasicType, usize>;

/// Finitely supported map from basic types to nonempty partitions.
///
/// Ordered by support and then, within a common support, by the product of
/// the canonical partition orders (first basic type varying slowest). This
/// is a linear extension of [`InertialType::dominates`] on each fibre of
/// [`InertialType::scs`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct InertialType {
    assignment: BTreeMap<BasicType, Partition>,
}

impl InertialType {
    pub fn new(entries: impl IntoIterator<Item = (BasicType, Partition)>) -> Result<Self> {
        let mut assignment = BTreeMap::new();
        let mut labels = BTreeMap::new();
        for (b, p) in entries {
            if p.is_empty() {
                continue;
            }
            if let Some(prev) = labels.insert(b.label.clone(), b.clone()) {
                return Err(Error::arg(format!(
                    "basic type {} given twice ({prev:?} and {b:?})",
                    b.label
                )));
            }
            assignment.insert(b, p);
        }
        Ok(InertialType { assignment })
    }

    /// The unipotent type `τ_P`: the trivial basic type carries `P`.
    pub fn unipotent(p: Partition) -> Self {
        InertialType::new([(BasicType::trivial(), p)]).expect("single entry")
    }

    pub fn assignment(&self) -> &BTreeMap<BasicType, Partition> {
        &self.assignment
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// `Σ dim(τ₀) · deg P(τ₀)`.
    pub fn degree(&self) -> usize {
        self.assignment
            .iter()
            .map(|(b, p)| b.dim as usize * p.degree())
            .sum()
    }

    pub fn scs(&self) -> Scs {
        self.assignment
            .iter()
            .map(|(b, p)| (b.clone(), p.degree()))
            .collect()
    }

    /// Equal supercuspidal support and componentwise dominance.
    pub fn dominates(&self, other: &InertialType) -> bool {
        self.scs() == other.scs()
            && self
                .assignment
                .iter()
                .all(|(b, p)| p.dominates(&other.assignment[b]))
    }

    /// Relabels every basic type by its dual.
    pub fn dual(&self) -> InertialType {
        InertialType {
            assignment: self
                .assignment
                .iter()
                .map(|(b, p)| (b.dual(), p.clone()))
                .collect(),
        }
    }

    /// The partition at `b`, empty off the support.
    pub fn partition_at(&self, b: &BasicType) -> Partition {
        self.assignment.get(b).cloned().unwrap_or_default()
    }

    /// `true` when the type is supported only on the trivial basic type.
    pub fn is_unipotent(&self) -> bool {
        self.assignment.keys().all(|b| *b == BasicType::trivial())
    }
}

/// `τ[2,1]` for unipotent types; `τ[a:2,1;b@2:1]` otherwise (dimension
/// shown when it is not 1, dual shown when it is not the label itself).
impl fmt::Display for InertialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unipotent() {
            let p = self.partition_at(&BasicType::trivial());
            return write!(f, "τ[{}]", p.comma_list());
        }
        let body = self
            .assignment
            .iter()
            .map(|(b, p)| format!("{}:{}", basic_spec(b), p.comma_list()))
            .collect::<Vec<_>>()
            .join(";");
        write!(f, "τ[{body}]")
    }
}

impl fmt::Debug for InertialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn basic_spec(b: &BasicType) -> String {
    let mut s = b.label.clone();
    if b.dim != 1 {
        s += &format!("@{}", b.dim);
    }
    if !b.is_self_dual() {
        s += &format!("~{}", b.dual_label);
    }
    s
}

/// Parses `2,1` (unipotent) or `label[@dim][~dual]:parts;...`.
impl FromStr for InertialType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut s = s.trim();
        if let Some(rest) = s.strip_prefix('τ') {
            s = rest
                .trim()
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| Error::arg(format!("expected τ[...], got {s:?}")))?;
        }
        if !s.contains(':') {
            return Ok(InertialType::unipotent(s.parse()?));
        }
        let entries = s
            .split(';')
            .filter(|seg| !seg.trim().is_empty())
            .map(|seg| {
                let (head, parts) = seg
                    .split_once(':')
                    .ok_or_else(|| Error::arg(format!("expected label:parts, got {seg:?}")))?;
                let (head, dual) = match head.split_once('~') {
                    Some((h, d)) => (h, Some(d.trim())),
                    None => (head, None),
                };
                let (label, dim) = match head.split_once('@') {
                    Some((l, d)) => (
                        l.trim(),
                        d.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::arg(format!("bad dimension in {seg:?}")))?,
                    ),
                    None => (head.trim(), 1),
                };
                let basic = BasicType::with_dual(label, dim, dual.unwrap_or(label))?;
                Ok((basic, parts.parse::<Partition>()?))
            })
            .collect::<Result<Vec<_>>>()?;
        InertialType::new(entries)
    }
}

#[derive(Serialize, Deserialize)]
struct AssignmentEntry {
    label: String,
    dim: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dual: Option<String>,
    partition: Partition,
}

#[derive(Serialize, Deserialize)]
struct TypeJson {
    assignment: Vec<AssignmentEntry>,
}

impl Serialize for InertialType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TypeJson {
            assignment: self
                .assignment
                .iter()
                .map(|(b, p)| AssignmentEntry {
                    label: b.label.clone(),
                    dim: b.dim,
                    dual: (!b.is_self_dual()).then(|| b.dual_label.clone()),
                    partition: p.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for InertialType {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = TypeJson::deserialize(deserializer)?;
        let entries = json
            .assignment
            .into_iter()
            .map(|e| {
                let dual = e.dual.unwrap_or_else(|| e.label.clone());
                BasicType::with_dual(e.label, e.dim, dual).map(|b| (b, e.partition))
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        InertialType::new(entries).map_err(serde::de::Error::custom)
    }
}

/// Every inertial type with supercuspidal support `scs`, in canonical order.
pub fn types_with_scs(scs: &Scs) -> Result<Vec<InertialType>> {
    let total: usize = scs.iter().map(|(b, &d)| b.dim as usize * d).sum();
    check_degree(total, "types_with_scs")?;
    let mut out = vec![BTreeMap::new()];
    for (basic, &d) in scs {
        if d == 0 {
            continue;
        }
        let choices = partitions_of(d)?;
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |p| {
                    let mut next = prefix.clone();
                    next.insert(basic.clone(), p.clone());
                    next
                })
            })
            .collect();
    }
    let types: Vec<InertialType> = out
        .into_iter()
        .map(|assignment| InertialType { assignment })
        .collect();
    assert!(types.windows(2).all(|w| w[0] < w[1]));
    assert_dominance_compatible(&types, |a, b| a != b && a.dominates(b));
    Ok(types)
}
