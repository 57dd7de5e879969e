//! Symmetric-group combinatorics.
//!
//! Two independent engines live here:
//!
//! * the tableau engine: [`kostka`] counts semistandard tableaux by adding
//!   one horizontal strip per content value;
//! * the character engine: [`character`] evaluates irreducible characters by
//!   the Murnaghan-Nakayama rule, and [`kostka_oracle`] / [`lr_mult`] are
//!   exact inner products of characters against characters induced from
//!   Young subgroups.
//!
//! `σ°_P` is realised as the irreducible with character `χ^P · sgn`, so the
//! Kostka number `m(P, Q)` is the multiplicity of `σ°_P` in
//! `Ind_{S_Q}^{S_n} sgn`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::check_degree;
use crate::partitions::{assert_dominance_compatible, factorial, partitions_of, Partition};

/// Character table of `S_n`, rows and columns in canonical partition order.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// `values[i][j] = χ^{partitions[i]}(partitions[j])`.
    values: Vec<Vec<BigInt>>,
    /// `n! / z_μ` for each cycle type.
    class_sizes: Vec<BigUint>,
}

impl CharacterTable {
    fn build(n: usize) -> Result<Self> {
        let partitions = partitions_of(n)?;
        let index = partitions
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut memo = HashMap::new();
        let values = partitions
            .iter()
            .map(|shape| {
                partitions
                    .iter()
                    .map(|mu| mn_value(shape, mu.parts(), &mut memo))
                    .collect()
            })
            .collect();
        let n_fact = factorial(n);
        let class_sizes = partitions
            .iter()
            .map(|mu| &n_fact / mu.centralizer_order())
            .collect();
        Ok(CharacterTable {
            n,
            partitions,
            index,
            values,
            class_sizes,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Partitions of `n` in canonical order; they index both shapes and classes.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn value(&self, shape: &Partition, cycle_type: &Partition) -> Option<&BigInt> {
        Some(&self.values[self.position(shape)?][self.position(cycle_type)?])
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.values[i]
    }

    pub fn class_sizes(&self) -> &[BigUint] {
        &self.class_sizes
    }

    /// `(1/n!) Σ_μ |C_μ| f(μ) g(μ)` for class functions given as rows.
    /// Errors if the sum is not divisible by `n!`.
    pub fn inner_product(&self, f: &[BigInt], g: &[BigInt]) -> Result<BigInt> {
        let total: BigInt = self
            .class_sizes
            .iter()
            .zip(f.iter().zip(g))
            .map(|(c, (a, b))| BigInt::from(c.clone()) * a * b)
            .sum();
        let (q, r) = total.div_rem(&BigInt::from(factorial(self.n)));
        if !r.is_zero() {
            return Err(Error::arg("class functions are not a virtual character"));
        }
        Ok(q)
    }
}

type TableSlot = Arc<OnceLock<Arc<CharacterTable>>>;

fn table_cache() -> &'static Mutex<HashMap<usize, TableSlot>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, TableSlot>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized character table of `S_n`. Each degree is built exactly once.
pub fn character_table(n: usize) -> Result<Arc<CharacterTable>> {
    check_degree(n, "character_table")?;
    let slot = table_cache()
        .lock()
        .expect("character table cache poisoned")
        .entry(n)
        .or_default()
        .clone();
    if let Some(t) = slot.get() {
        return Ok(t.clone());
    }
    let built = Arc::new(CharacterTable::build(n)?);
    Ok(slot.get_or_init(|| built).clone())
}

// Murnaghan-Nakayama on beta-sets: a border strip of length k is a bead
// moved from position b to an empty position b - k; its height is the number
// of beads strictly between.
fn mn_value(
    shape: &Partition,
    mu: &[u32],
    memo: &mut HashMap<(Partition, Vec<u32>), BigInt>,
) -> BigInt {
    let Some((&k, rest)) = mu.split_first() else {
        return if shape.is_empty() {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    };
    let key = (shape.clone(), mu.to_vec());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let len = shape.len();
    let beads: Vec<i64> = (0..len)
        .map(|i| shape.part(i) as i64 + (len - 1 - i) as i64)
        .collect();
    let k = k as i64;
    let mut total = BigInt::zero();
    for (i, &b) in beads.iter().enumerate() {
        let target = b - k;
        if target < 0 || beads.contains(&target) {
            continue;
        }
        let height = beads.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beads.clone();
        moved[i] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let m = moved.len();
        let smaller = Partition::from_multiset(
            moved
                .iter()
                .enumerate()
                .map(|(j, &x)| (x - (m - 1 - j) as i64) as u32),
        );
        let v = mn_value(&smaller, rest, memo);
        if height % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    memo.insert(key, total.clone());
    total
}

/// `χ^shape(cycle_type)` by the Murnaghan-Nakayama rule.
pub fn character(shape: &Partition, cycle_type: &Partition) -> Result<BigInt> {
    if shape.degree() != cycle_type.degree() {
        return Err(Error::arg(format!(
            "character: shape {shape} and cycle type {cycle_type} have different degrees"
        )));
    }
    check_degree(shape.degree(), "character")?;
    Ok(mn_value(shape, cycle_type.parts(), &mut HashMap::new()))
}

/// Number of semistandard Young tableaux of shape `shape` and content
/// `content`. Zero when the degrees differ; one when both are empty.
pub fn kostka(shape: &Partition, content: &Partition) -> BigUint {
    if shape.degree() != content.degree() {
        return BigUint::zero();
    }
    let mut filled = vec![0u32; shape.len()];
    let mut memo = HashMap::new();
    count_fillings(shape.parts(), content.parts(), 0, &mut filled, &mut memo)
}

// Cells holding the value `step + 1` form a horizontal strip added to the
// shape filled so far.
fn count_fillings(
    shape: &[u32],
    content: &[u32],
    step: usize,
    filled: &mut Vec<u32>,
    memo: &mut HashMap<(usize, Vec<u32>), BigUint>,
) -> BigUint {
    if step == content.len() {
        return if filled.as_slice() == shape {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    if let Some(v) = memo.get(&(step, filled.clone())) {
        return v.clone();
    }
    let before = filled.clone();
    let mut total = BigUint::zero();
    add_strip(
        shape,
        content,
        step,
        0,
        content[step],
        &before,
        filled,
        memo,
        &mut total,
    );
    memo.insert((step, before), total.clone());
    total
}

#[allow(clippy::too_many_arguments)]
fn add_strip(
    shape: &[u32],
    content: &[u32],
    step: usize,
    row: usize,
    left: u32,
    before: &[u32],
    filled: &mut Vec<u32>,
    memo: &mut HashMap<(usize, Vec<u32>), BigUint>,
    total: &mut BigUint,
) {
    if left == 0 {
        *total += count_fillings(shape, content, step + 1, filled, memo);
        return;
    }
    if row == shape.len() {
        return;
    }
    // column strictness: new cells in this row sit below cells filled at an earlier step
    let cap = if row == 0 {
        shape[0]
    } else {
        shape[row].min(before[row - 1])
    };
    let room = cap.saturating_sub(before[row]);
    for extra in (0..=room.min(left)).rev() {
        filled[row] = before[row] + extra;
        add_strip(
            shape,
            content,
            step,
            row + 1,
            left - extra,
            before,
            filled,
            memo,
            total,
        );
    }
    filled[row] = before[row];
}

/// Number of standard Young tableaux of shape `shape`, by the hook-length formula.
pub fn hook_length_count(shape: &Partition) -> BigUint {
    let conj = shape.conjugate();
    let hooks = (0..shape.len())
        .flat_map(|i| (0..shape.part(i)).map(move |j| (i, j as usize)))
        .fold(BigUint::one(), |acc, (i, j)| {
            let arm = shape.part(i) as usize - j - 1;
            let leg = conj.part(j) as usize - i - 1;
            acc * BigUint::from(arm + leg + 1)
        });
    factorial(shape.degree()) / hooks
}

/// A class function on one factor of a Young subgroup, given on cycle types.
pub type ClassFunction<'a> = &'a dyn Fn(&Partition) -> BigInt;

type BoxedClassFunction = Box<dyn Fn(&Partition) -> BigInt>;

/// Values of `Ind_{S_B}^{S_n}(⊗_i ψ_i)` on every class of `S_n`, where
/// `S_B = Π S_{b_i}` for the block sizes `b_i` and `ψ_i` is a class function
/// of `S_{b_i}` given by a closure on cycle types.
///
/// Uses `Ind ψ(μ) = Σ_{μ = ⊔ρ_i} (z_μ / Π z_{ρ_i}) Π ψ_i(ρ_i)`, where the ratio
/// of centraliser orders is `Π_k m_k(μ)! / Π_i m_k(ρ_i)!`.
pub fn induced_from_young(
    table: &CharacterTable,
    blocks: &[(usize, ClassFunction<'_>)],
) -> Result<Vec<BigInt>> {
    let total: usize = blocks.iter().map(|b| b.0).sum();
    if total != table.degree() {
        return Err(Error::arg(format!(
            "block sizes sum to {total}, expected {}",
            table.degree()
        )));
    }
    Ok(table
        .partitions()
        .iter()
        .map(|mu| {
            let mult = mu.multiplicities();
            let mut acc = BigInt::zero();
            split_cycles(&mult, blocks, 0, BigInt::one(), &mut acc);
            acc
        })
        .collect())
}

fn split_cycles(
    remaining: &[usize],
    blocks: &[(usize, ClassFunction<'_>)],
    block: usize,
    weight: BigInt,
    acc: &mut BigInt,
) {
    if block == blocks.len() {
        if remaining.iter().all(|&m| m == 0) {
            *acc += weight;
        }
        return;
    }
    let (size, psi) = blocks[block];
    let mut chosen = vec![0usize; remaining.len()];
    choose_sub(
        remaining,
        size,
        remaining.len().saturating_sub(1),
        &mut chosen,
        &mut |chosen| {
            let rho = Partition::from_multiset(
                chosen
                    .iter()
                    .enumerate()
                    .flat_map(|(k, &c)| std::iter::repeat_n(k as u32, c)),
            );
            let value = psi(&rho);
            if value.is_zero() {
                return;
            }
            let ways = remaining
                .iter()
                .zip(chosen)
                .fold(BigUint::one(), |acc, (&m, &c)| acc * binomial(m, c));
            let rest: Vec<usize> = remaining.iter().zip(chosen).map(|(m, c)| m - c).collect();
            split_cycles(
                &rest,
                blocks,
                block + 1,
                &weight * value * BigInt::from(ways),
                acc,
            );
        },
    );
}

// Enumerates sub-multisets `chosen ≤ remaining` (as multiplicity vectors over
// cycle lengths `1..=k`) whose total length is `left`.
fn choose_sub(
    remaining: &[usize],
    left: usize,
    k: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if left == 0 {
        visit(chosen);
        return;
    }
    if k == 0 {
        return;
    }
    let max = remaining[k].min(left / k);
    for c in (0..=max).rev() {
        chosen[k] = c;
        choose_sub(remaining, left - c * k, k - 1, chosen, visit);
    }
    chosen[k] = 0;
}

fn binomial(n: usize, k: usize) -> BigUint {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn signed_row(table: &CharacterTable, shape: &Partition) -> Vec<BigInt> {
    let i = table.position(shape).expect("shape of matching degree");
    table
        .row(i)
        .iter()
        .zip(table.partitions())
        .map(|(v, mu)| v * mu.sign())
        .collect()
}

fn to_biguint(x: BigInt) -> BigUint {
    assert!(
        x.sign() != Sign::Minus,
        "multiplicity came out negative: {x}"
    );
    x.magnitude().clone()
}

/// `⟨χ^shape ⊗ sgn, Ind_{S_content} sgn⟩`, computed from characters only.
pub fn kostka_oracle(shape: &Partition, content: &Partition) -> Result<BigUint> {
    let n = shape.degree();
    if n != content.degree() {
        return Err(Error::arg(format!(
            "kostka_oracle: {shape} and {content} have different degrees"
        )));
    }
    let table = character_table(n)?;
    let sgn = |rho: &Partition| BigInt::from(rho.sign());
    let blocks: Vec<(usize, ClassFunction<'_>)> = content
        .parts()
        .iter()
        .map(|&b| (b as usize, &sgn as &dyn Fn(&Partition) -> BigInt))
        .collect();
    let induced = induced_from_young(&table, &blocks)?;
    let sigma = signed_row(&table, shape);
    Ok(to_biguint(table.inner_product(&sigma, &induced)?))
}

/// Multiplicity of `σ°_target` in `Ind_{S_P}^{S_n}(⊗_i σ°_{factor_i})`, where
/// `P` is the sequence of factor degrees. Equals the iterated
/// Littlewood-Richardson coefficient `c^target_{factors}`.
pub fn lr_mult(target: &Partition, factors: &[Partition]) -> Result<BigUint> {
    let n = target.degree();
    let total: usize = factors.iter().map(Partition::degree).sum();
    if n != total {
        return Err(Error::arg(format!(
            "lr_mult: target degree {n} differs from total factor degree {total}"
        )));
    }
    let table = character_table(n)?;
    let factor_tables = factors
        .iter()
        .map(|f| character_table(f.degree()))
        .collect::<Result<Vec<_>>>()?;
    let closures: Vec<BoxedClassFunction> = factors
        .iter()
        .zip(&factor_tables)
        .map(|(f, t)| {
            let (f, t) = (f.clone(), t.clone());
            Box::new(move |rho: &Partition| t.value(&f, rho).expect("degrees match") * rho.sign())
                as BoxedClassFunction
        })
        .collect();
    let blocks: Vec<(usize, ClassFunction<'_>)> = factors
        .iter()
        .zip(&closures)
        .map(|(f, c)| (f.degree(), c.as_ref()))
        .collect();
    let induced = induced_from_young(&table, &blocks)?;
    let sigma = signed_row(&table, target);
    Ok(to_biguint(table.inner_product(&sigma, &induced)?))
}

/// Square integer matrix indexed on both sides by an explicit list of partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionMatrix {
    pub order: Vec<Partition>,
    pub entries: Vec<Vec<BigInt>>,
}

impl PartitionMatrix {
    pub fn size(&self) -> usize {
        self.order.len()
    }

    pub fn get(&self, row: &Partition, col: &Partition) -> Option<&BigInt> {
        let i = self.order.iter().position(|p| p == row)?;
        let j = self.order.iter().position(|p| p == col)?;
        Some(&self.entries[i][j])
    }

    pub fn multiply(&self, other: &PartitionMatrix) -> PartitionMatrix {
        assert_eq!(self.order, other.order, "matrices indexed differently");
        let n = self.size();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| &self.entries[i][k] * &other.entries[k][j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        PartitionMatrix {
            order: self.order.clone(),
            entries,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
        })
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, row)| row[i].is_one() && row[..i].iter().all(Zero::is_zero))
    }
}

/// Exact integer inverse of an upper unitriangular matrix, by back substitution.
#[allow(clippy::needless_range_loop)]
pub fn invert_unitriangular(entries: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = entries.len();
    let mut inv = vec![vec![BigInt::zero(); n]; n];
    for i in (0..n).rev() {
        inv[i][i] = BigInt::one();
        for j in i + 1..n {
            // (M · M⁻¹)[i][j] = 0  ⇒  inv[i][j] = -Σ_{k>i} M[i][k] inv[k][j]
            let s: BigInt = (i + 1..=j).map(|k| &entries[i][k] * &inv[k][j]).sum();
            inv[i][j] = -s;
        }
    }
    inv
}

/// Renders as a JSON number when it is exactly representable as an IEEE
/// double (|x| ≤ 2^53), otherwise as a decimal string.
pub fn json_int(x: &BigInt) -> serde_json::Value {
    const LIMIT: i64 = 1 << 53;
    match x.to_i64() {
        Some(v) if v.abs() <= LIMIT => serde_json::Value::from(v),
        _ => serde_json::Value::String(x.to_string()),
    }
}

impl Serialize for PartitionMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<Vec<serde_json::Value>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(json_int).collect())
            .collect();
        let mut s = serializer.serialize_struct("PartitionMatrix", 2)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("entries", &entries)?;
        s.end()
    }
}

/// The matrix `(kostka(P, Q))_{P,Q ⊢ n}` in canonical order.
pub fn kostka_matrix(n: usize) -> Result<PartitionMatrix> {
    let order = partitions_of(n)?;
    assert_dominance_compatible(&order, |a, b| a != b && a.dominates(b));
    let entries = order
        .iter()
        .map(|p| order.iter().map(|q| BigInt::from(kostka(p, q))).collect())
        .collect();
    let m = PartitionMatrix { order, entries };
    assert!(
        m.is_upper_unitriangular(),
        "Kostka matrix of degree {n} is not unitriangular"
    );
    Ok(m)
}

/// Exact inverse of [`kostka_matrix`], checked against the forward matrix.
pub fn inverse_kostka_matrix(n: usize) -> Result<PartitionMatrix> {
    let forward = kostka_matrix(n)?;
    let inverse = PartitionMatrix {
        order: forward.order.clone(),
        entries: invert_unitriangular(&forward.entries),
    };
    assert!(
        forward.multiply(&inverse).is_identity(),
        "inverse Kostka check failed at n = {n}"
    );
    Ok(inverse)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn int(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&p("2"), &p("1,1")), BigUint::from(1u32));
        assert_eq!(kostka(&p("3,1"), &p("3,1")), BigUint::from(1u32));
        assert_eq!(kostka(&p("2,1"), &p("3")), BigUint::zero());
        assert_eq!(kostka(&p("2,1"), &p("1,1,1")), BigUint::from(2u32));
        assert_eq!(kostka(&p(""), &p("")), BigUint::one());
        assert_eq!(kostka(&p("2"), &p("1")), BigUint::zero());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(kostka_oracle(&p("1,1"), &p("1,1")).unwrap(), BigUint::one());
        assert_eq!(kostka_oracle(&p("3"), &p("1,1,1")).unwrap(), BigUint::one());
        assert_eq!(kostka_oracle(&p("2,1"), &p("2,1")).unwrap(), BigUint::one());
        assert!(matches!(
            kostka_oracle(&p("2"), &p("1")),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn character_examples() {
        for mu in partitions_of(5).unwrap() {
            assert_eq!(character(&p("5"), &mu).unwrap(), BigInt::one());
        }
        assert_eq!(character(&p("1,1"), &p("2")).unwrap(), BigInt::from(-1));
        assert_eq!(character(&p("2,1"), &p("1,1,1")).unwrap(), BigInt::from(2));
        assert_eq!(character(&p("2,1"), &p("3")).unwrap(), BigInt::from(-1));
        assert!(character(&p("2,1"), &p("2")).is_err());
    }

    #[test]
    fn kostka_matrices() {
        assert_eq!(kostka_matrix(1).unwrap().entries, int(&[&[1]]));
        assert_eq!(kostka_matrix(2).unwrap().entries, int(&[&[1, 1], &[0, 1]]));
        assert_eq!(
            kostka_matrix(3).unwrap().entries,
            int(&[&[1, 1, 1], &[0, 1, 2], &[0, 0, 1]])
        );
    }

    #[test]
    fn inverse_kostka_matrices() {
        assert_eq!(inverse_kostka_matrix(1).unwrap().entries, int(&[&[1]]));
        assert_eq!(
            inverse_kostka_matrix(2).unwrap().entries,
            int(&[&[1, -1], &[0, 1]])
        );
        assert_eq!(
            inverse_kostka_matrix(3).unwrap().entries,
            int(&[&[1, -1, 1], &[0, 1, -2], &[0, 0, 1]])
        );
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_mult(&p("3,1"), &[p("3,1")]).unwrap(), BigUint::one());
        assert_eq!(lr_mult(&p("2"), &[p("1"), p("1")]).unwrap(), BigUint::one());
        assert_eq!(
            lr_mult(&p("2,1"), &[p("1"), p("1"), p("1")]).unwrap(),
            BigUint::from(2u32)
        );
        // c^{(2,1)}_{(1),(1,1)} = 1, c^{(3)}_{(1),(1,1)} = 0
        assert_eq!(
            lr_mult(&p("2,1"), &[p("1"), p("1,1")]).unwrap(),
            BigUint::one()
        );
        assert_eq!(
            lr_mult(&p("3"), &[p("1"), p("1,1")]).unwrap(),
            BigUint::zero()
        );
        assert!(lr_mult(&p("2"), &[p("1")]).is_err());
        assert_eq!(lr_mult(&p(""), &[]).unwrap(), BigUint::one());
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(hook_length_count(&p("2,1")), BigUint::from(2u32));
        assert_eq!(hook_length_count(&p("3,2")), BigUint::from(5u32));
        assert_eq!(hook_length_count(&p("")), BigUint::one());
    }

    #[test]
    fn table_is_shared() {
        let a = character_table(4).unwrap();
        let b = character_table(4).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }

    #[test]
    fn big_entries_serialize_as_strings() {
        assert_eq!(json_int(&BigInt::from(-3)), serde_json::json!(-3));
        let big = BigInt::from(1u64 << 60);
        assert_eq!(json_int(&big), serde_json::json!(big.to_string()));
    }
}
