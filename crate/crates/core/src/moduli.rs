//! Irreducible components of the moduli of matrix pairs `(Σ, Φ)` with
//! `Φ Σ Φ⁻¹ = Σ^q`.
//!
//! Components correspond to conjugacy classes of `Σ` stable under `x ↦ x^q`.
//! Eigenvalues are `m`-th roots of unity, written additively as residues in
//! `ℤ/m` (so the `q`-th power map is multiplication by `q`), with
//! `m = q^{n!} − 1`. A stable class is a choice of Jordan partition for each
//! Frobenius orbit of eigenvalues, constant along the orbit.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{factorial, partitions_of, Partition};
use crate::quasibanal::is_prime;

/// Default largest `n` for [`enumerate_components`].
pub const DEFAULT_MAX_MODULI_DEGREE: usize = 4;

/// Largest number of residues the enumerators will touch.
pub const MAX_RESIDUES: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrobeniusOrbit {
    pub modulus: BigUint,
    /// Smallest residue in the orbit.
    pub min_rep: BigUint,
    pub size: usize,
}

impl FrobeniusOrbit {
    /// All residues of the orbit, starting at `min_rep`.
    pub fn elements(&self, q: &BigUint) -> Vec<BigUint> {
        let mut out = Vec::with_capacity(self.size);
        let mut x = self.min_rep.clone();
        for _ in 0..self.size {
            out.push(x.clone());
            x = (x * q) % &self.modulus;
        }
        out
    }
}

/// A stable conjugacy class: Frobenius orbits (sorted by `min_rep`) each
/// carrying a nonempty Jordan partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentDatum {
    pub assignment: Vec<(FrobeniusOrbit, Partition)>,
}

impl ComponentDatum {
    /// `Σ size(orbit) · deg(partition)`.
    pub fn degree(&self) -> usize {
        self.assignment
            .iter()
            .map(|(o, p)| o.size * p.degree())
            .sum()
    }
}

impl Serialize for ComponentDatum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let orbits: Vec<serde_json::Value> = self
            .assignment
            .iter()
            .map(|(o, p)| {
                serde_json::json!({
                    "min_rep": o.min_rep.to_string(),
                    "size": o.size,
                    "partition": p,
                })
            })
            .collect();
        let mut s = serializer.serialize_struct("ComponentDatum", 1)?;
        s.serialize_field("orbits", &orbits)?;
        s.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentList {
    pub n: usize,
    pub q: u64,
    pub residue_char: Option<u64>,
    pub modulus: BigUint,
    pub components: Vec<ComponentDatum>,
}

impl Serialize for ComponentList {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ComponentList", 6)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("q", &self.q)?;
        if let Some(l) = self.residue_char {
            s.serialize_field("l", &l)?;
        }
        s.serialize_field("modulus", &self.modulus.to_string())?;
        s.serialize_field("components", &self.components)?;
        s.serialize_field("count", &self.components.len())?;
        s.end()
    }
}

/// `q^{n!} − 1`.
pub fn root_modulus(n: usize, q: u64) -> BigUint {
    let exponent = factorial(n)
        .to_u32()
        .expect("n! exponent fits in u32 for n ≤ 12");
    BigUint::from(q).pow(exponent) - 1u32
}

/// `m` with every factor of `l` removed.
pub fn prime_to_part(m: &BigUint, l: u64) -> BigUint {
    let l = BigUint::from(l);
    let mut m = m.clone();
    while !m.is_zero() && (&m % &l).is_zero() {
        m /= &l;
    }
    m
}

fn check_coprime(q: &BigUint, m: &BigUint) -> Result<()> {
    if m.is_zero() {
        return Err(Error::arg("modulus must be positive"));
    }
    if !q.gcd(m).is_one() {
        return Err(Error::arg(format!("gcd(q = {q}, m = {m}) ≠ 1")));
    }
    Ok(())
}

/// Orbit of `x` under multiplication by `q` modulo `m`.
fn orbit_of(x: &BigUint, q: &BigUint, m: &BigUint) -> (BigUint, usize, Vec<BigUint>) {
    let mut elements = vec![x.clone()];
    let mut y = (x * q) % m;
    while &y != x {
        elements.push(y.clone());
        y = (y * q) % m;
    }
    let min = elements.iter().min().expect("nonempty").clone();
    (min, elements.len(), elements)
}

fn collect_orbits(
    candidates: impl IntoIterator<Item = BigUint>,
    q: &BigUint,
    m: &BigUint,
) -> Vec<FrobeniusOrbit> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in candidates {
        if seen.contains(&x) {
            continue;
        }
        let (min_rep, size, elements) = orbit_of(&x, q, m);
        seen.extend(elements);
        out.push(FrobeniusOrbit {
            modulus: m.clone(),
            min_rep,
            size,
        });
    }
    out.sort();
    out
}

/// All orbits of `x ↦ q·x` on `ℤ/m`, ordered by `min_rep`.
pub fn frobenius_orbits(q: u64, m: &BigUint) -> Result<Vec<FrobeniusOrbit>> {
    let qb = BigUint::from(q);
    check_coprime(&qb, m)?;
    if m > &BigUint::from(MAX_RESIDUES) {
        return Err(Error::bound(format!(
            "modulus {m} exceeds {MAX_RESIDUES} residues"
        )));
    }
    let limit = m.to_u64().expect("bounded above");
    Ok(collect_orbits((0..limit).map(BigUint::from), &qb, m))
}

/// Orbits of size at most `max_size`, found inside the subgroups
/// `{x : (q^d − 1) x ≡ 0 mod m}` of order `gcd(m, q^d − 1)`.
pub fn small_orbits(q: u64, m: &BigUint, max_size: usize) -> Result<Vec<FrobeniusOrbit>> {
    let qb = BigUint::from(q);
    check_coprime(&qb, m)?;
    let mut candidates = BTreeSet::new();
    for d in 1..=max_size {
        let g = m.gcd(&(qb.pow(d as u32) - 1u32));
        if g > BigUint::from(MAX_RESIDUES) {
            return Err(Error::bound(format!(
                "{g} residues are fixed by the {d}-th Frobenius power"
            )));
        }
        let step = m / &g;
        let count = g.to_u64().expect("bounded above");
        candidates.extend((0..count).map(|k| &step * k));
    }
    Ok(collect_orbits(candidates, &qb, m))
}

/// Components of `M(n, q)` (or of its reduction in characteristic `l`, where
/// the modulus loses its `l`-part), with `n` at most
/// [`DEFAULT_MAX_MODULI_DEGREE`].
pub fn enumerate_components(n: usize, q: u64, residue_char: Option<u64>) -> Result<ComponentList> {
    enumerate_components_bounded(n, q, residue_char, DEFAULT_MAX_MODULI_DEGREE)
}

/// As [`enumerate_components`], with an explicit ceiling on `n`.
pub fn enumerate_components_bounded(
    n: usize,
    q: u64,
    residue_char: Option<u64>,
    max_n: usize,
) -> Result<ComponentList> {
    if n > max_n {
        return Err(Error::bound(format!(
            "n = {n} exceeds the moduli bound {max_n} (the modulus q^(n!) − 1 grows too fast)"
        )));
    }
    if n > 12 {
        return Err(Error::bound("n! exponent too large"));
    }
    if q < 2 {
        return Err(Error::arg(format!("q = {q} must be at least 2")));
    }
    let mut modulus = root_modulus(n, q);
    if let Some(l) = residue_char {
        if !is_prime(l) {
            return Err(Error::arg(format!(
                "residue characteristic {l} is not prime"
            )));
        }
        if q.is_multiple_of(l) {
            return Err(Error::arg(format!(
                "residue characteristic {l} divides q = {q}"
            )));
        }
        modulus = prime_to_part(&modulus, l);
    }
    let orbits = small_orbits(q, &modulus, n.max(1))?;
    let mut components = Vec::new();
    let mut current = Vec::new();
    assign(&orbits, 0, n, &mut current, &mut components)?;
    Ok(ComponentList {
        n,
        q,
        residue_char,
        modulus,
        components,
    })
}

fn assign(
    orbits: &[FrobeniusOrbit],
    start: usize,
    left: usize,
    current: &mut Vec<(FrobeniusOrbit, Partition)>,
    out: &mut Vec<ComponentDatum>,
) -> Result<()> {
    if left == 0 {
        out.push(ComponentDatum {
            assignment: current.clone(),
        });
        return Ok(());
    }
    for (i, orbit) in orbits.iter().enumerate().skip(start) {
        for k in 1..=left / orbit.size {
            for p in partitions_of(k)? {
                current.push((orbit.clone(), p));
                assign(orbits, i + 1, left - orbit.size * k, current, out)?;
                current.pop();
            }
        }
    }
    Ok(())
}

/// Independent count of `q`-stable conjugacy classes of `GL_n` with
/// eigenvalues in `μ_m`, `m = q^{n!} − 1`, by brute force: scan `ℤ/m` for
/// residues returning to themselves within `n` Frobenius steps, list every
/// multiset of Jordan blocks `(eigenvalue, size)` of total size `n`, keep
/// those invariant under `x ↦ q·x`.
pub fn count_components_oracle(n: usize, q: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::arg(format!("q = {q} must be at least 2")));
    }
    let m = root_modulus(n, q)
        .to_u64()
        .filter(|&m| m <= MAX_RESIDUES)
        .ok_or_else(|| {
            Error::bound(format!(
                "oracle scans ℤ/m and m = q^(n!) − 1 is too large for n = {n}, q = {q}"
            ))
        })?;
    let mul = |x: u64| ((x as u128 * q as u128) % m as u128) as u64;
    let roots: Vec<u64> = (0..m)
        .filter(|&x| {
            let mut y = x;
            (0..n).any(|_| {
                y = mul(y);
                y == x
            })
        })
        .collect();
    let blocks: Vec<(u64, usize)> = roots
        .iter()
        .flat_map(|&x| (1..=n).map(move |k| (x, k)))
        .collect();
    let mut count = 0u64;
    let mut chosen = Vec::new();
    multisets(&blocks, 0, n, &mut chosen, &mut |class| {
        let mut image: Vec<(u64, usize)> = class.iter().map(|&(x, k)| (mul(x), k)).collect();
        image.sort_unstable();
        let mut original = class.to_vec();
        original.sort_unstable();
        if image == original {
            count += 1;
        }
    });
    Ok(count)
}

type Visitor<'a> = dyn FnMut(&[(u64, usize)]) + 'a;

fn multisets(
    blocks: &[(u64, usize)],
    start: usize,
    left: usize,
    chosen: &mut Vec<(u64, usize)>,
    visit: &mut Visitor<'_>,
) {
    if left == 0 {
        visit(chosen);
        return;
    }
    for i in start..blocks.len() {
        let (_, k) = blocks[i];
        if k > left {
            continue;
        }
        chosen.push(blocks[i]);
        multisets(blocks, i, left - k, chosen, visit);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn orbit_examples() {
        let o = frobenius_orbits(2, &big(3)).unwrap();
        let shape: Vec<_> = o
            .iter()
            .map(|o| (o.min_rep.to_u64().unwrap(), o.size))
            .collect();
        assert_eq!(shape, vec![(0, 1), (1, 2)]);
        assert_eq!(frobenius_orbits(7, &big(1)).unwrap().len(), 1);
        let o = frobenius_orbits(3, &big(2)).unwrap();
        assert!(o.iter().all(|o| o.size == 1) && o.len() == 2);
        assert!(frobenius_orbits(2, &big(4)).is_err());
    }

    #[test]
    fn orbit_sizes_cover_modulus() {
        for (q, m) in [(2u64, 15u64), (3, 80), (5, 24), (4, 63)] {
            let orbits = frobenius_orbits(q, &big(m)).unwrap();
            assert_eq!(orbits.iter().map(|o| o.size as u64).sum::<u64>(), m);
            let order = (1..).find(|&d| (q.pow(d) - 1) % m == 0).unwrap() as usize;
            assert!(orbits.iter().all(|o| order.is_multiple_of(o.size)));
        }
    }

    #[test]
    fn small_orbits_agree_with_full_scan() {
        let m = root_modulus(3, 2); // 63
        let full: Vec<_> = frobenius_orbits(2, &m)
            .unwrap()
            .into_iter()
            .filter(|o| o.size <= 3)
            .collect();
        assert_eq!(small_orbits(2, &m, 3).unwrap(), full);
    }

    #[test]
    fn component_examples() {
        assert_eq!(
            enumerate_components(1, 2, None).unwrap().components.len(),
            1
        );
        assert_eq!(
            enumerate_components(1, 3, None).unwrap().components.len(),
            2
        );
        let c = enumerate_components(2, 2, None).unwrap();
        assert_eq!(c.modulus, big(3));
        let described: Vec<Vec<(u64, usize, String)>> = c
            .components
            .iter()
            .map(|d| {
                d.assignment
                    .iter()
                    .map(|(o, p)| (o.min_rep.to_u64().unwrap(), o.size, p.comma_list()))
                    .collect()
            })
            .collect();
        assert_eq!(
            described,
            vec![
                vec![(0, 1, "2".to_string())],
                vec![(0, 1, "1,1".to_string())],
                vec![(1, 2, "1".to_string())],
            ]
        );
        assert!(c.components.iter().all(|d| d.degree() == 2));
    }

    #[test]
    fn guards() {
        assert!(matches!(
            enumerate_components(5, 2, None),
            Err(Error::ResourceBound(_))
        ));
        assert!(matches!(
            enumerate_components(2, 9, Some(3)),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            count_components_oracle(4, 5),
            Err(Error::ResourceBound(_))
        ));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(count_components_oracle(1, 2).unwrap(), 1);
        assert_eq!(count_components_oracle(2, 2).unwrap(), 3);
        for q in 2..=5 {
            assert_eq!(count_components_oracle(1, q).unwrap(), q - 1);
        }
    }

    #[test]
    fn residue_modulus_drops_l_part() {
        // 7^2 − 1 = 48 = 2^4 · 3
        let c = enumerate_components(2, 7, Some(3)).unwrap();
        assert_eq!(c.modulus, big(16));
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["l"], 3);
        assert_eq!(json["modulus"], "16");
        assert_eq!(json["count"], c.components.len());
    }
}
