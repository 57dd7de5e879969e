//! Quasi-banal local verification: bipartition counts, the Mackey
//! decomposition of `Res_{S_P} Ind_{S_Q} sgn`, cycles at distinguished
//! points, and both sides of the local Breuil-Mézard identity.
//!
//! The two sides of [`verify_local_bm`] are computed by disjoint engines:
//! the left side uses only characters ([`kostka_oracle`], [`lr_mult`]), the
//! right side only tableau counting ([`kostka`]) and margin enumeration
//! ([`bip_count`]).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bmcycles::{ComponentLabel, Cycle, RepLabel, VirtualRep};
use crate::error::{Error, Result};
use crate::limits::check_degree;
use crate::partitions::{partitions_of, Partition};
use crate::symrep::{hook_length_count, json_int, kostka, kostka_oracle, lr_mult};

/// Parameters `(ℓ, q, n)` with `ℓ > n` an odd prime, `q ≡ 1 (mod ℓ)` a prime
/// power, and `a = v_ℓ(q − 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuasiBanalParams {
    pub l: u64,
    pub q: u64,
    pub n: usize,
    pub a: u32,
}

impl QuasiBanalParams {
    pub fn new(l: u64, q: u64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::arg("n must be positive"));
        }
        if l < 3 || !is_prime(l) {
            return Err(Error::arg(format!("ℓ = {l} is not an odd prime")));
        }
        if prime_power_base(q).is_none() {
            return Err(Error::arg(format!("q = {q} is not a prime power")));
        }
        if q.is_multiple_of(l) {
            return Err(Error::arg(format!("ℓ = {l} divides q = {q}")));
        }
        if (l as u128) <= n as u128 {
            return Err(Error::arg(format!("not quasi-banal: ℓ = {l} ≤ n = {n}")));
        }
        if q % l != 1 {
            return Err(Error::arg(format!(
                "not quasi-banal: q = {q} ≢ 1 mod ℓ = {l}"
            )));
        }
        let mut a = 0;
        let mut m = q - 1;
        while m.is_multiple_of(l) {
            m /= l;
            a += 1;
        }
        Ok(QuasiBanalParams { l, q, n, a })
    }

    /// Smallest odd prime `ℓ > n` and smallest prime `q ≡ 1 (mod ℓ)`.
    pub fn smallest_for(n: usize) -> Result<Self> {
        let l = (n as u64 + 1..)
            .find(|&l| l >= 3 && is_prime(l))
            .expect("primes are unbounded");
        let q = (1..)
            .map(|k| k * l + 1)
            .find(|&q| is_prime(q))
            .expect("Dirichlet");
        Self::new(l, q, n)
    }

    /// `ℓ^a`, the number of characters of `μ_{ℓ^a}`.
    pub fn index_bound(&self) -> u64 {
        self.l.pow(self.a)
    }

    /// Character indices usable by a type of degree `n`: at most `n`, since
    /// a type of degree `n` has at most `n` nonempty entries.
    pub fn usable_indices(&self) -> u64 {
        self.index_bound().min(self.n as u64)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some(p)` when `q = p^k` for a prime `p` and `k ≥ 1`.
pub fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

/// A sequence `(P_1, …, P_{ℓ^a})` of partitions indexed by characters of
/// `μ_{ℓ^a}` (index 1 is the trivial character). Only nonempty entries are stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TypeSequence {
    parts: BTreeMap<u64, Partition>,
}

impl TypeSequence {
    pub fn new(entries: impl IntoIterator<Item = (u64, Partition)>) -> Result<Self> {
        let mut parts = BTreeMap::new();
        for (i, p) in entries {
            if i == 0 {
                return Err(Error::arg("character indices start at 1"));
            }
            if p.is_empty() {
                continue;
            }
            if parts.insert(i, p).is_some() {
                return Err(Error::arg(format!("index {i} given twice")));
            }
        }
        Ok(TypeSequence { parts })
    }

    /// All mass on the trivial character: the unipotent type `τ_P`.
    pub fn unipotent(p: Partition) -> Self {
        TypeSequence::new([(1, p)]).expect("index 1")
    }

    /// `τ_ps`: `n` distinct characters, each carrying `(1)`.
    pub fn principal_series(n: usize) -> Self {
        TypeSequence::new((1..=n as u64).map(|i| (i, Partition::row(1)))).expect("distinct indices")
    }

    pub fn entries(&self) -> &BTreeMap<u64, Partition> {
        &self.parts
    }

    /// The nonempty partitions in index order.
    pub fn weights(&self) -> Vec<Partition> {
        self.parts.values().cloned().collect()
    }

    pub fn degree(&self) -> usize {
        self.parts.values().map(Partition::degree).sum()
    }

    fn check_against(&self, params: &QuasiBanalParams) -> Result<()> {
        match self.parts.keys().next_back() {
            Some(&i) if i > params.index_bound() => Err(Error::arg(format!(
                "character index {i} exceeds ℓ^a = {}",
                params.index_bound()
            ))),
            _ => Ok(()),
        }
    }
}

/// `1:2,1;2:1`.
impl fmt::Display for TypeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .parts
            .iter()
            .map(|(i, p)| format!("{i}:{}", p.comma_list()))
            .collect::<Vec<_>>()
            .join(";");
        write!(f, "{body}")
    }
}

impl fmt::Debug for TypeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TypeSequence({self})")
    }
}

/// Parses `1:2,1;2:1`. A bare partition `2,1` means the unipotent sequence.
impl FromStr for TypeSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if !s.contains(':') {
            return Ok(TypeSequence::unipotent(s.parse()?));
        }
        let entries = s
            .split(';')
            .filter(|seg| !seg.trim().is_empty())
            .map(|seg| {
                let (i, p) = seg
                    .split_once(':')
                    .ok_or_else(|| Error::arg(format!("expected index:parts, got {seg:?}")))?;
                let i = i
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::arg(format!("bad character index in {seg:?}")))?;
                Ok((i, p.parse::<Partition>()?))
            })
            .collect::<Result<Vec<_>>>()?;
        TypeSequence::new(entries)
    }
}

/// JSON: `[{"index": 1, "partition": [2,1]}, …]`.
impl Serialize for TypeSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let v: Vec<serde_json::Value> = self
            .parts
            .iter()
            .map(|(i, p)| serde_json::json!({"index": i, "partition": p}))
            .collect();
        v.serialize(serializer)
    }
}

/// Generalised Frobenius-eigenspace dimensions `Q` of a distinguished point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DistinguishedPoint {
    pub q: Partition,
}

impl DistinguishedPoint {
    pub fn new(q: Partition) -> Self {
        DistinguishedPoint { q }
    }

    pub fn degree(&self) -> usize {
        self.q.degree()
    }
}

/// A non-negative integer matrix, rows then columns.
pub type Bipartition = Vec<Vec<u32>>;

fn same_degree(p: &Partition, q: &Partition, what: &str) -> Result<()> {
    if p.degree() != q.degree() {
        return Err(Error::arg(format!(
            "{what}: {p} and {q} have different degrees"
        )));
    }
    check_degree(p.degree(), what)
}

/// Every non-negative integer matrix with row sums `P(i)` and column sums
/// `Q(j)`. Deterministic order: rows filled top to bottom, larger entries
/// towards the left first.
pub fn bipartitions(p: &Partition, q: &Partition) -> Result<Vec<Bipartition>> {
    same_degree(p, q, "bipartitions")?;
    let mut out = Vec::new();
    let mut cols: Vec<u32> = q.parts().to_vec();
    let mut current = Vec::with_capacity(p.len());
    fill_rows(p.parts(), &mut cols, &mut current, &mut out);
    Ok(out)
}

fn fill_rows(
    rows: &[u32],
    cols: &mut Vec<u32>,
    current: &mut Bipartition,
    out: &mut Vec<Bipartition>,
) {
    let Some((&r, rest)) = rows.split_first() else {
        if cols.iter().all(|&c| c == 0) {
            out.push(current.clone());
        }
        return;
    };
    let mut row = vec![0u32; cols.len()];
    fill_row(r, 0, &mut row, rest, cols, current, out);
}

fn fill_row(
    left: u32,
    j: usize,
    row: &mut Vec<u32>,
    rest: &[u32],
    cols: &mut Vec<u32>,
    current: &mut Bipartition,
    out: &mut Vec<Bipartition>,
) {
    if j == cols.len() {
        if left == 0 {
            current.push(row.clone());
            fill_rows(rest, cols, current, out);
            current.pop();
        }
        return;
    }
    // the remaining columns must be able to absorb what is left of this row
    let capacity_after: u32 = cols[j + 1..].iter().sum();
    let lo = left.saturating_sub(capacity_after);
    for x in (lo..=left.min(cols[j])).rev() {
        row[j] = x;
        cols[j] -= x;
        fill_row(left - x, j + 1, row, rest, cols, current, out);
        cols[j] += x;
    }
    row[j] = 0;
}

/// The weight of a bipartition: each row sorted decreasingly, zeros dropped.
pub fn weight(a: &Bipartition) -> Vec<Partition> {
    a.iter()
        .map(|row| Partition::from_multiset(row.iter().copied()))
        .collect()
}

/// `Bip((P_i)_i, Q)`: the number of `(P, Q)`-bipartitions whose `i`-th row,
/// sorted, is `P_i`. Counted directly by placing each row's parts into the
/// columns of `Q`; empty weights are ignored.
pub fn bip_count(weights: &[Partition], q: &Partition) -> Result<BigUint> {
    let total: usize = weights.iter().map(Partition::degree).sum();
    if total != q.degree() {
        return Err(Error::arg(format!(
            "bip_count: weights have total degree {total}, Q = {q} has degree {}",
            q.degree()
        )));
    }
    check_degree(total, "bip_count")?;
    let rows: Vec<&Partition> = weights.iter().filter(|w| !w.is_empty()).collect();
    let mut cols = q.parts().to_vec();
    Ok(count_rows(&rows, &mut cols))
}

fn count_rows(rows: &[&Partition], cols: &mut Vec<u32>) -> BigUint {
    let Some((row, rest)) = rows.split_first() else {
        return if cols.iter().all(|&c| c == 0) {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    };
    if row.len() > cols.len() {
        return BigUint::zero();
    }
    // multiplicities of the values still to be placed in this row, zeros included
    let mut pool: BTreeMap<u32, usize> = BTreeMap::new();
    for &x in row.parts() {
        *pool.entry(x).or_default() += 1;
    }
    *pool.entry(0).or_default() += cols.len() - row.len();
    let mut total = BigUint::zero();
    place(0, &mut pool, cols, rest, &mut total);
    total
}

fn place(
    j: usize,
    pool: &mut BTreeMap<u32, usize>,
    cols: &mut Vec<u32>,
    rest: &[&Partition],
    total: &mut BigUint,
) {
    if j == cols.len() {
        *total += count_rows(rest, cols);
        return;
    }
    let values: Vec<u32> = pool
        .iter()
        .filter(|(_, &c)| c > 0)
        .map(|(&v, _)| v)
        .collect();
    for v in values {
        if v > cols[j] {
            continue;
        }
        *pool.get_mut(&v).expect("present") -= 1;
        cols[j] -= v;
        place(j + 1, pool, cols, rest, total);
        cols[j] += v;
        *pool.get_mut(&v).expect("present") += 1;
    }
}

/// `Res_{S_P} Ind_{S_Q} sgn ≅ ⊕ Bip((P_i), Q) · ⊗ π°_{P_i}`: the map from
/// weight sequences (in the row order of `P`) to their nonzero counts.
pub fn mackey_decomposition(
    p: &Partition,
    q: &Partition,
) -> Result<BTreeMap<Vec<Partition>, BigUint>> {
    let mut out: BTreeMap<Vec<Partition>, BigUint> = BTreeMap::new();
    for a in bipartitions(p, q)? {
        *out.entry(weight(&a)).or_default() += 1u32;
    }
    Ok(out)
}

fn check_point(
    tau: &TypeSequence,
    point: &DistinguishedPoint,
    params: &QuasiBanalParams,
) -> Result<()> {
    tau.check_against(params)?;
    if tau.degree() != point.degree() || point.degree() != params.n {
        return Err(Error::arg(format!(
            "degree mismatch: type has degree {}, Q = {} has degree {}, n = {}",
            tau.degree(),
            point.q,
            point.degree(),
            params.n
        )));
    }
    Ok(())
}

/// `Z(R□(ρ̄, τ) ⊗ 𝔽) = Bip((P_i)_i, Q) · [𝔭]` at a distinguished point.
pub fn cycle_at_distinguished(
    tau: &TypeSequence,
    point: &DistinguishedPoint,
    params: &QuasiBanalParams,
) -> Result<Cycle> {
    check_point(tau, point, params)?;
    let count = bip_count(&tau.weights(), &point.q)?;
    Ok(Cycle::term(
        ComponentLabel::SpecialFibrePoint,
        BigInt::from(count),
    ))
}

/// `red(σ_τ) = Σ_{P' ⊢ n} lr_mult(P', weights) · red(σ¹_{P'})`.
pub fn red_rep(tau: &TypeSequence) -> Result<VirtualRep> {
    let weights = tau.weights();
    partitions_of(tau.degree())?
        .into_iter()
        .map(|p| {
            Ok((
                RepLabel::ResidualUnipotent(p.clone()),
                BigInt::from(lr_mult(&p, &weights)?),
            ))
        })
        .collect()
}

/// `red(σ¹_P) ↦ m(P, Q) · [𝔭]`, extended linearly.
pub fn bar_cyc_at(v: &VirtualRep, point: &DistinguishedPoint) -> Result<Cycle> {
    let mut out = Cycle::zero();
    for (label, c) in v.terms() {
        let RepLabel::ResidualUnipotent(p) = label else {
            return Err(Error::arg(format!(
                "bar_cyc_at needs residual unipotent labels, got {label}"
            )));
        };
        if p.degree() != point.degree() {
            return Err(Error::arg(format!(
                "{label} does not have degree {}",
                point.degree()
            )));
        }
        out.add_term(
            ComponentLabel::SpecialFibrePoint,
            c * BigInt::from(kostka(p, &point.q)),
        );
    }
    Ok(out)
}

/// Both sides of the local identity for one `(τ, Q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalBmReport {
    pub n: usize,
    pub q: Partition,
    pub tau: TypeSequence,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub ok: bool,
}

impl Serialize for LocalBmReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serde_json::json!({
            "n": self.n,
            "Q": self.q,
            "tau": self.tau,
            "lhs": json_int(&self.lhs),
            "rhs": json_int(&self.rhs),
            "ok": self.ok,
        })
        .serialize(serializer)
    }
}

/// Left side through characters:
/// `Σ_{P' ⊢ n} m(P', Q) · lr_mult(P', (P_i)_i)`.
pub fn local_bm_lhs(tau: &TypeSequence, q: &Partition) -> Result<BigInt> {
    let weights = tau.weights();
    let mut total = BigInt::zero();
    for p in partitions_of(q.degree())? {
        let k = kostka_oracle(&p, q)?;
        if k.is_zero() {
            continue;
        }
        total += BigInt::from(k * lr_mult(&p, &weights)?);
    }
    Ok(total)
}

/// Right side through tableaux and margins:
/// `Σ_{(P'_i)} Π_i m(P_i, P'_i) · Bip((P'_i)_i, Q)` over sequences with
/// `deg P'_i = deg P_i`.
pub fn local_bm_rhs(tau: &TypeSequence, q: &Partition) -> Result<BigInt> {
    let weights = tau.weights();
    // for each i, the P'_i with nonzero Kostka number, paired with it
    let options = weights
        .iter()
        .map(|w| {
            Ok(partitions_of(w.degree())?
                .into_iter()
                .filter_map(|p| {
                    let k = kostka(w, &p);
                    (!k.is_zero()).then_some((p, k))
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = BigUint::zero();
    let mut chosen = Vec::with_capacity(weights.len());
    sum_sequences(&options, &mut chosen, BigUint::one(), q, &mut total)?;
    Ok(BigInt::from(total))
}

fn sum_sequences(
    options: &[Vec<(Partition, BigUint)>],
    chosen: &mut Vec<Partition>,
    weight: BigUint,
    q: &Partition,
    total: &mut BigUint,
) -> Result<()> {
    let Some((first, rest)) = options.split_first() else {
        *total += weight * bip_count(chosen, q)?;
        return Ok(());
    };
    for (p, k) in first {
        chosen.push(p.clone());
        sum_sequences(rest, chosen, &weight * k, q, total)?;
        chosen.pop();
    }
    Ok(())
}

/// Evaluates both sides of the local Breuil-Mézard identity at `(τ, Q)`.
pub fn verify_local_bm(
    tau: &TypeSequence,
    point: &DistinguishedPoint,
    params: &QuasiBanalParams,
) -> Result<LocalBmReport> {
    check_point(tau, point, params)?;
    let lhs = local_bm_lhs(tau, &point.q)?;
    let rhs = local_bm_rhs(tau, &point.q)?;
    Ok(LocalBmReport {
        n: params.n,
        q: point.q.clone(),
        tau: tau.clone(),
        ok: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Every type sequence of degree `n` supported on indices `1..=indices`, in
/// a fixed order (lexicographic in the per-index degrees, then in the
/// canonical partition order).
pub fn type_sequences(n: usize, indices: usize) -> Result<Vec<TypeSequence>> {
    check_degree(n, "type_sequences")?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    compose(n, indices, &mut current, &mut out)?;
    Ok(out)
}

fn compose(
    left: usize,
    slots: usize,
    current: &mut Vec<Partition>,
    out: &mut Vec<TypeSequence>,
) -> Result<()> {
    if current.len() == slots {
        if left == 0 {
            out.push(TypeSequence::new(
                current
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (i as u64 + 1, p.clone())),
            )?);
        }
        return Ok(());
    }
    for d in (0..=left).rev() {
        for p in partitions_of(d)? {
            current.push(p);
            compose(left - d, slots, current, out)?;
            current.pop();
        }
    }
    Ok(())
}

/// Runs [`verify_local_bm`] over every `(τ, Q)` with `τ` supported on the
/// usable character indices and `Q ⊢ n`. The grid is evaluated in parallel
/// on the current rayon pool; the result order is fixed (τ major, Q minor).
pub fn sweep_local_bm(params: &QuasiBanalParams) -> Result<Vec<LocalBmReport>> {
    let n = params.n;
    let taus = type_sequences(n, params.usable_indices() as usize)?;
    let qs = partitions_of(n)?;
    let grid: Vec<(&TypeSequence, &Partition)> = taus
        .iter()
        .flat_map(|t| qs.iter().map(move |q| (t, q)))
        .collect();
    grid.par_iter()
        .map(|(t, q)| verify_local_bm(t, &DistinguishedPoint::new((*q).clone()), params))
        .collect()
}

/// One line of the `red(σ(τ_ps))` expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IharaCoefficient {
    pub partition: Partition,
    pub coefficient: BigInt,
    pub kostka: BigUint,
    pub hook_length: BigUint,
    pub ok: bool,
}

/// One distinguished-point check `Z(τ_ps) = Σ_P binom(n, P) Z(τ_P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IharaCycleCheck {
    pub q: Partition,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub multinomial: BigUint,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IharaReport {
    pub n: usize,
    pub coefficients: Vec<IharaCoefficient>,
    pub cycle_checks: Vec<IharaCycleCheck>,
    pub ok: bool,
}

impl Serialize for IharaReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coefficients: Vec<_> = self
            .coefficients
            .iter()
            .map(|c| {
                serde_json::json!({
                    "partition": c.partition,
                    "coefficient": json_int(&c.coefficient),
                    "kostka": json_int(&BigInt::from(c.kostka.clone())),
                    "hook_length": json_int(&BigInt::from(c.hook_length.clone())),
                    "ok": c.ok,
                })
            })
            .collect();
        let checks: Vec<_> = self
            .cycle_checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "Q": c.q,
                    "lhs": json_int(&c.lhs),
                    "rhs": json_int(&c.rhs),
                    "multinomial": json_int(&BigInt::from(c.multinomial.clone())),
                    "ok": c.ok,
                })
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "red_ps": coefficients,
            "cycle_checks": checks,
            "ok": self.ok,
        })
        .serialize(serializer)
    }
}

/// The level-raising identities for the principal-series type `τ_ps`:
/// `red(σ(τ_ps)) = Σ_P m(P, (1^n)) red(σ(τ_P))`, and at each distinguished
/// point `Q`, `Z(τ_ps) = Σ_P binom(n, P) Z(τ_P) = binom(n, Q) [𝔭]`.
pub fn ihara_report(params: &QuasiBanalParams) -> Result<IharaReport> {
    let n = params.n;
    if params.index_bound() < n as u64 {
        return Err(Error::arg(format!(
            "ℓ^a = {} < n = {n}: τ_ps needs n distinct characters",
            params.index_bound()
        )));
    }
    let ps = TypeSequence::principal_series(n);
    let red = red_rep(&ps)?;
    let column = Partition::column(n as u32);
    let shapes = partitions_of(n)?;
    let coefficients: Vec<IharaCoefficient> = shapes
        .iter()
        .map(|p| {
            let coefficient = red.coeff(&RepLabel::ResidualUnipotent(p.clone()));
            let kostka = kostka(p, &column);
            let hook_length = hook_length_count(p);
            let ok = coefficient == BigInt::from(kostka.clone()) && kostka == hook_length;
            IharaCoefficient {
                partition: p.clone(),
                coefficient,
                kostka,
                hook_length,
                ok,
            }
        })
        .collect();
    let cycle_checks = shapes
        .iter()
        .map(|q| {
            let point = DistinguishedPoint::new(q.clone());
            let lhs = cycle_at_distinguished(&ps, &point, params)?
                .coeff(&ComponentLabel::SpecialFibrePoint);
            let mut rhs = BigInt::zero();
            for p in &shapes {
                let z =
                    cycle_at_distinguished(&TypeSequence::unipotent(p.clone()), &point, params)?;
                rhs += BigInt::from(p.multinomial()) * z.coeff(&ComponentLabel::SpecialFibrePoint);
            }
            let multinomial = q.multinomial();
            let ok = lhs == rhs && rhs == BigInt::from(multinomial.clone());
            Ok(IharaCycleCheck {
                q: q.clone(),
                lhs,
                rhs,
                multinomial,
                ok,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ok = coefficients.iter().all(|c| c.ok) && cycle_checks.iter().all(|c| c.ok);
    Ok(IharaReport {
        n,
        coefficients,
        cycle_checks,
        ok,
    })
}

/// `Σ_{(P_i)} Bip · Π_i [P(i)! / Π_j P_i(j)!]` and `n! / Π_j Q(j)!`: the
/// dimensions of the two sides of the Mackey decomposition.
pub fn mackey_dimensions(p: &Partition, q: &Partition) -> Result<(BigUint, BigUint)> {
    let decomposition = mackey_decomposition(p, q)?;
    let lhs = decomposition
        .iter()
        .map(|(weights, count)| {
            weights
                .iter()
                .fold(count.clone(), |acc, w| acc * w.multinomial())
        })
        .sum();
    Ok((lhs, q.multinomial()))
}
