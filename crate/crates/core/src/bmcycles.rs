//! Virtual representations, formal cycles and the maps between them.
//!
//! Both sides of the cycle map are free abelian groups on opaque labels; the
//! only arithmetic content is the multiplicity matrix `m(σ(τ), τ')`, a
//! product of Kostka numbers over basic types, and its exact inverse.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::symrep::{invert_unitriangular, json_int, kostka};
use crate::types::{types_with_scs, InertialType, Scs};

/// Basis labels of the Grothendieck group side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepLabel {
    /// The formal class of the K-type `σ(τ)`.
    KType(InertialType),
    /// The formal class of `red(σ¹_P)`.
    ResidualUnipotent(Partition),
}

/// Basis labels of the cycle side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentLabel {
    /// `Z(R□(ρ̄, τ))`.
    TypeComponent(InertialType),
    /// The class `[𝔭]` of the unique minimal prime of the special fibre.
    SpecialFibrePoint,
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepLabel::KType(t) => write!(f, "σ({t})"),
            RepLabel::ResidualUnipotent(p) => write!(f, "red(σ¹[{}])", p.comma_list()),
        }
    }
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentLabel::TypeComponent(t) => write!(f, "Z({t})"),
            ComponentLabel::SpecialFibrePoint => write!(f, "[𝔭]"),
        }
    }
}

/// Finitely supported integer combination of labels. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalSum<L: Ord> {
    coeffs: BTreeMap<L, BigInt>,
}

pub type VirtualRep = FormalSum<RepLabel>;
pub type Cycle = FormalSum<ComponentLabel>;

impl<L: Ord> Default for FormalSum<L> {
    fn default() -> Self {
        FormalSum {
            coeffs: BTreeMap::new(),
        }
    }
}

impl<L: Ord + Clone> FormalSum<L> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(label: L) -> Self {
        Self::term(label, BigInt::one())
    }

    pub fn term(label: L, coeff: impl Into<BigInt>) -> Self {
        let mut s = Self::zero();
        s.add_term(label, coeff);
        s
    }

    pub fn add_term(&mut self, label: L, coeff: impl Into<BigInt>) {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .coeffs
            .entry(label.clone())
            .or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&label);
        }
    }

    pub fn coeff(&self, label: &L) -> BigInt {
        self.coeffs.get(label).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&L, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero();
        for (l, c) in &self.coeffs {
            out.add_term(l.clone(), c * k);
        }
        out
    }
}

impl<L: Ord + Clone> FromIterator<(L, BigInt)> for FormalSum<L> {
    fn from_iter<I: IntoIterator<Item = (L, BigInt)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (l, c) in iter {
            s.add_term(l, c);
        }
        s
    }
}

impl<L: Ord + Clone> Add for FormalSum<L> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (l, c) in rhs.coeffs {
            self.add_term(l, c);
        }
        self
    }
}

impl<L: Ord + Clone> Neg for FormalSum<L> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(&BigInt::from(-1))
    }
}

impl<L: Ord + Clone> Sub for FormalSum<L> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<L: Ord + Clone> Mul<&BigInt> for FormalSum<L> {
    type Output = Self;
    fn mul(self, k: &BigInt) -> Self {
        self.scale(k)
    }
}

impl<L: Ord> FormalSum<L> {
    /// Signed symbolic sum in label order with caller-chosen label names.
    /// Uses U+2212 for minus; the zero element renders as `0`.
    pub fn render_with(&self, name: impl Fn(&L) -> String) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (label, c)) in self.coeffs.iter().enumerate() {
            out += match (i, c.is_negative()) {
                (0, false) => "",
                (0, true) => "−",
                (_, false) => " + ",
                (_, true) => " − ",
            };
            let mag = c.abs();
            if !mag.is_one() {
                out += &mag.to_string();
            }
            out += &name(label);
        }
        out
    }
}

/// Signed symbolic sum in label order, e.g. `σ(τ[2,1]) − 2σ(τ[1,1,1])`.
impl<L: Ord + fmt::Display> fmt::Display for FormalSum<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(ToString::to_string))
    }
}

/// Names a unipotent K-type by the rank of its monodromy operator,
/// `σ(τ_k)` with k = n − ℓ(P) written as a subscript; other labels render as usual.
pub fn monodromy_rank_name(label: &RepLabel) -> String {
    match label {
        RepLabel::KType(t) if t.is_unipotent() => {
            let p = t.partition_at(&crate::types::BasicType::trivial());
            let rank = p.degree() - p.len();
            let sub: String = rank
                .to_string()
                .chars()
                .map(|d| {
                    char::from_u32(0x2080 + d.to_digit(10).expect("decimal digit"))
                        .expect("subscript digit")
                })
                .collect();
            format!("σ(τ{sub})")
        }
        other => other.to_string(),
    }
}

/// JSON: an array of `{"label": ..., "coefficient": ...}` in label order.
impl<L: Ord + fmt::Display> Serialize for FormalSum<L> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(l, c)| serde_json::json!({"label": l.to_string(), "coefficient": json_int(c)}))
            .collect();
        terms.serialize(serializer)
    }
}

/// `m(σ(τ), τ') = Π_{τ₀} kostka(P(τ₀), P'(τ₀))` over the union of supports.
pub fn mult(tau: &InertialType, tau_prime: &InertialType) -> BigInt {
    let mut product = BigInt::one();
    let keys = tau.assignment().keys().chain(
        tau_prime
            .assignment()
            .keys()
            .filter(|b| !tau.assignment().contains_key(*b)),
    );
    for b in keys {
        let k = kostka(&tau.partition_at(b), &tau_prime.partition_at(b));
        if k.is_zero() {
            return BigInt::zero();
        }
        product *= BigInt::from(k);
    }
    product
}

/// Multiplicity matrix on one supercuspidal-support block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeMatrix {
    pub order: Vec<InertialType>,
    pub entries: Vec<Vec<BigInt>>,
}

impl TypeMatrix {
    pub fn position(&self, tau: &InertialType) -> Option<usize> {
        self.order.binary_search(tau).ok()
    }
}

impl Serialize for TypeMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let order: Vec<String> = self.order.iter().map(ToString::to_string).collect();
        let entries: Vec<Vec<serde_json::Value>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(json_int).collect())
            .collect();
        serde_json::json!({"order": order, "entries": entries}).serialize(serializer)
    }
}

/// `(mult(τ, τ'))` over [`types_with_scs`]`(scs)`, checked unitriangular.
pub fn mult_matrix(scs: &Scs) -> Result<TypeMatrix> {
    let order = types_with_scs(scs)?;
    let entries: Vec<Vec<BigInt>> = order
        .iter()
        .map(|t| order.iter().map(|u| mult(t, u)).collect())
        .collect();
    for (i, row) in entries.iter().enumerate() {
        assert!(
            row[i].is_one() && row[..i].iter().all(Zero::is_zero),
            "multiplicity matrix is not unitriangular"
        );
    }
    Ok(TypeMatrix { order, entries })
}

/// The exact inverse of [`mult_matrix`] on the same index list.
pub fn inverse_mult_matrix(scs: &Scs) -> Result<TypeMatrix> {
    let forward = mult_matrix(scs)?;
    Ok(TypeMatrix {
        entries: invert_unitriangular(&forward.entries),
        order: forward.order,
    })
}

/// `cyc(σ(τ)) = Σ_{τ'} m(σ(τ)^∨, τ') Z(τ')`, extended linearly. The dual is
/// taken through each basic type's own dual label.
pub fn cyc(theta: &VirtualRep) -> Result<Cycle> {
    let mut out = Cycle::zero();
    let mut blocks: BTreeMap<Scs, Vec<InertialType>> = BTreeMap::new();
    for (label, c) in theta.terms() {
        let RepLabel::KType(tau) = label else {
            return Err(Error::arg(format!(
                "cyc is defined on K-types only, got {label}"
            )));
        };
        let dual = tau.dual();
        let scs = dual.scs();
        if !blocks.contains_key(&scs) {
            blocks.insert(scs.clone(), types_with_scs(&scs)?);
        }
        for tp in &blocks[&scs] {
            let m = mult(&dual, tp);
            if !m.is_zero() {
                out.add_term(ComponentLabel::TypeComponent(tp.clone()), m * c);
            }
        }
    }
    Ok(out)
}

/// `r(τ)`: the unique combination of the `σ(τ')` in the block of `τ` with
/// `cyc(r(τ)) = Z(τ)`.
pub fn r_tau(tau: &InertialType) -> Result<VirtualRep> {
    let inverse = inverse_mult_matrix(&tau.scs())?;
    let i = inverse.position(tau).expect("τ lies in its own block");
    Ok(inverse
        .order
        .iter()
        .zip(&inverse.entries[i])
        .map(|(u, c)| (RepLabel::KType(u.dual()), c.clone()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::BasicType;

    fn t(s: &str) -> InertialType {
        s.parse().unwrap()
    }

    fn sigma(s: &str) -> VirtualRep {
        VirtualRep::basis(RepLabel::KType(t(s)))
    }

    fn z(s: &str) -> Cycle {
        Cycle::basis(ComponentLabel::TypeComponent(t(s)))
    }

    #[test]
    fn multiplicities_n2() {
        assert_eq!(mult(&t("2"), &t("1,1")), BigInt::one());
        assert_eq!(mult(&t("1,1"), &t("2")), BigInt::zero());
        assert_eq!(mult(&t("2,1"), &t("2,1")), BigInt::one());
        assert_eq!(mult(&t("a:2;b@2:1"), &t("a:1,1;b@2:1")), BigInt::one());
        // different supports never meet
        assert_eq!(mult(&t("a:1"), &t("b:1")), BigInt::zero());
    }

    #[test]
    fn cyc_n2() {
        assert_eq!(cyc(&sigma("1,1")).unwrap(), z("1,1"));
        assert_eq!(cyc(&sigma("2")).unwrap(), z("2") + z("1,1"));
        assert_eq!(cyc(&VirtualRep::zero()).unwrap(), Cycle::zero());
        let red = VirtualRep::basis(RepLabel::ResidualUnipotent("2".parse().unwrap()));
        assert!(cyc(&red).is_err());
    }

    #[test]
    fn r_tau_examples() {
        assert_eq!(r_tau(&t("2")).unwrap(), sigma("2") - sigma("1,1"));
        assert_eq!(
            r_tau(&t("2,1")).unwrap().to_string(),
            "σ(τ[2,1]) − 2σ(τ[1,1,1])"
        );
        assert_eq!(
            r_tau(&t("3")).unwrap().to_string(),
            "σ(τ[3]) − σ(τ[2,1]) + σ(τ[1,1,1])"
        );
        // semisimple types are their own r(τ)
        assert_eq!(r_tau(&t("1,1,1")).unwrap(), sigma("1,1,1"));
        assert_eq!(r_tau(&t("a:1,1;b@2:1")).unwrap(), sigma("a:1,1;b@2:1"));
    }

    #[test]
    fn dual_relabels_the_cycle() {
        let tau = t("x~y:2");
        let c = cyc(&VirtualRep::basis(RepLabel::KType(tau.clone()))).unwrap();
        assert_eq!(c, z("y~x:2") + z("y~x:1,1"));
        let r = r_tau(&tau).unwrap();
        assert_eq!(
            cyc(&r).unwrap(),
            Cycle::basis(ComponentLabel::TypeComponent(tau))
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(VirtualRep::zero().to_string(), "0");
        assert_eq!((-sigma("2")).to_string(), "−σ(τ[2])");
        let c = Cycle::term(ComponentLabel::SpecialFibrePoint, 3);
        assert_eq!(c.to_string(), "3[𝔭]");
        let json = serde_json::to_value(sigma("2") - sigma("1,1")).unwrap();
        assert_eq!(
            json,
            serde_json::json!([
                {"label": "σ(τ[2])", "coefficient": 1},
                {"label": "σ(τ[1,1])", "coefficient": -1}
            ])
        );
    }

    #[test]
    fn block_matrix_is_unitriangular() {
        let scs = Scs::from([
            (BasicType::new("a", 1).unwrap(), 2),
            (BasicType::new("b", 2).unwrap(), 2),
        ]);
        let m = mult_matrix(&scs).unwrap();
        assert_eq!(m.order.len(), 4);
        for (i, a) in m.order.iter().enumerate() {
            for (j, b) in m.order.iter().enumerate() {
                assert_eq!(m.entries[i][j].is_positive(), a.dominates(b));
            }
        }
    }
}
