//! Generic linear-code analytics over explicit finite fields.
//!
//! Weight distributions come from full codeword enumeration (recursive span
//! walk, one row-addition per visited codeword, per-thread partial histograms
//! merged associatively so results are independent of thread count). Dual
//! minimum distances come from dependent-column searches on the primal
//! generator matrix: zero-column scan, projective normalization hashing for
//! pairs, pair-combination hashing against the column table for triples, and
//! pair-sum meet-in-the-middle for quadruples. The Pless power moments provide
//! an algebraically independent route to the dual's low-weight counts.

use crate::gf::{Felt, FieldCtx};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};
use thiserror::Error;

/// Projective-normalized column → indices where it occurs.
type ColumnTable = HashMap<Vec<Felt>, Vec<usize>>;
/// Normalized two-column combination → the pairs producing it.
type PairTable = HashMap<Vec<Felt>, Vec<(usize, usize)>>;

/// Default cap on the number of codewords enumerated.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 26;

static MAX_THREADS: AtomicUsize = AtomicUsize::new(0);

/// Cap worker threads used by internal enumeration (0 = auto).
/// Thread count never affects results, only wall time.
pub fn set_max_threads(n: usize) {
    MAX_THREADS.store(n, Ordering::Relaxed);
}

fn worker_count() -> usize {
    let cap = MAX_THREADS.load(Ordering::Relaxed);
    let auto = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(8);
    if cap == 0 {
        auto
    } else {
        cap.min(auto.max(1))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodesError {
    #[error("enumeration size {size} exceeds cap {cap}")]
    TooLarge { size: u128, cap: u64 },
    #[error("the zero code has no nonzero codeword")]
    ZeroCode,
    #[error("weight distribution is inconsistent: {0}")]
    InconsistentDistribution(String),
    #[error("generator rows are not linearly independent")]
    RankDeficient,
}

/// Exact weight distribution of a linear code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    pub n: usize,
    pub k: u32,
    pub q: u64,
    /// weight ↦ number of codewords of that weight (zero-count weights omitted).
    pub counts: BTreeMap<usize, u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u128 {
        self.counts.values().map(|&c| c as u128).sum()
    }

    /// Smallest positive weight with a positive count.
    pub fn min_distance(&self) -> Option<usize> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    /// gcd of all nonzero weights that occur.
    pub fn divisor(&self) -> Option<u64> {
        let mut g = 0u64;
        for (&w, _) in self.counts.iter().filter(|&(&w, _)| w > 0) {
            g = num_integer::gcd(g, w as u64);
        }
        if g == 0 {
            None
        } else {
            Some(g)
        }
    }
}

/// Result of a dependent-column search for the dual minimum distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DualDistance {
    Exact(usize),
    /// No dependent set of size ≤ the search limit; d⊥ ≥ limit + 1.
    AtLeast(usize),
}

impl DualDistance {
    pub fn exact(self) -> Option<usize> {
        match self {
            DualDistance::Exact(d) => Some(d),
            DualDistance::AtLeast(_) => None,
        }
    }
}

/// Locality search outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Locality {
    Exact(u32),
    GreaterThan(u32),
}

/// A t-subset together with its coverage count; two of these witness a
/// failed design check.
pub type CoverageWitness = ((Vec<u32>, u64), (Vec<u32>, u64));

/// Verdict of a t-design check over a block collection.
#[derive(Debug, Clone, Serialize)]
pub struct DesignVerdict {
    pub t: u32,
    pub n: usize,
    pub kappa: usize,
    pub lambda: Option<u64>,
    pub is_design: bool,
    /// On failure: two t-subsets with different coverage counts.
    pub witness: Option<CoverageWitness>,
}

/// A linear code presented by a spanning set of rows over GF(q).
pub struct LinearCode {
    field: Arc<FieldCtx>,
    gen: Vec<Vec<Felt>>,
    basis: Vec<Vec<Felt>>,
    n: usize,
    enum_cap: u64,
    wd_cache: OnceLock<WeightDistribution>,
}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LinearCode[n={}, k={}, q={}]", self.n, self.k(), self.q())
    }
}

impl LinearCode {
    /// Build from a nonempty spanning set; the stored dimension is the rank.
    pub fn new(field: Arc<FieldCtx>, gen: Vec<Vec<Felt>>) -> LinearCode {
        assert!(!gen.is_empty(), "use LinearCode::zero for the zero code");
        let n = gen[0].len();
        assert!(n >= 1);
        assert!(gen.iter().all(|r| r.len() == n), "ragged generator matrix");
        let basis = row_reduce(&field, &gen);
        LinearCode {
            field,
            gen,
            basis,
            n,
            enum_cap: DEFAULT_ENUM_CAP,
            wd_cache: OnceLock::new(),
        }
    }

    /// The zero code of length n.
    pub fn zero(field: Arc<FieldCtx>, n: usize) -> LinearCode {
        assert!(n >= 1);
        LinearCode {
            field,
            gen: Vec::new(),
            basis: Vec::new(),
            n,
            enum_cap: DEFAULT_ENUM_CAP,
            wd_cache: OnceLock::new(),
        }
    }

    pub fn with_enum_cap(mut self, cap: u64) -> LinearCode {
        self.enum_cap = cap;
        self
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension = rank of the spanning set.
    pub fn k(&self) -> usize {
        self.basis.len()
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    /// The generator rows as given at construction.
    pub fn gen_rows(&self) -> &[Vec<Felt>] {
        &self.gen
    }

    /// A row-reduced basis of the row space.
    pub fn basis_rows(&self) -> &[Vec<Felt>] {
        &self.basis
    }

    fn codeword_count(&self) -> u128 {
        (self.q() as u128).pow(self.k() as u32)
    }

    /// True iff the all-ones vector lies in the code.
    pub fn contains_all_ones(&self) -> bool {
        self.contains(&vec![Felt::ONE; self.n])
    }

    /// Membership test by reduction against the basis.
    pub fn contains(&self, word: &[Felt]) -> bool {
        assert_eq!(word.len(), self.n);
        let f = &self.field;
        let mut w = word.to_vec();
        for row in &self.basis {
            let pivot = row.iter().position(|c| !c.is_zero()).unwrap();
            if !w[pivot].is_zero() {
                let c = self.field.div(w[pivot], row[pivot]).unwrap();
                for j in 0..self.n {
                    w[j] = f.sub(w[j], f.mul(c, row[j]));
                }
            }
        }
        w.iter().all(|c| c.is_zero())
    }

    /// Exact weight distribution by full enumeration of all q^k codewords.
    pub fn weight_distribution(&self) -> Result<&WeightDistribution, CodesError> {
        let size = self.codeword_count();
        if size > self.enum_cap as u128 {
            return Err(CodesError::TooLarge {
                size,
                cap: self.enum_cap,
            });
        }
        Ok(self.wd_cache.get_or_init(|| {
            let hist = enumerate_weights(&self.field, &self.basis, self.n);
            let mut counts = BTreeMap::new();
            for (w, &c) in hist.iter().enumerate() {
                if c > 0 {
                    counts.insert(w, c);
                }
            }
            WeightDistribution {
                n: self.n,
                k: self.k() as u32,
                q: self.q(),
                counts,
            }
        }))
    }

    pub fn min_distance(&self) -> Result<usize, CodesError> {
        if self.k() == 0 {
            return Err(CodesError::ZeroCode);
        }
        Ok(self
            .weight_distribution()?
            .min_distance()
            .expect("nonzero code has a nonzero weight"))
    }

    /// gcd of the nonzero weights.
    pub fn divisor(&self) -> Result<u64, CodesError> {
        if self.k() == 0 {
            return Err(CodesError::ZeroCode);
        }
        Ok(self
            .weight_distribution()?
            .divisor()
            .expect("nonzero code has a nonzero weight"))
    }

    /// G·Gᵀ = 0 for the stored spanning set (equivalently any generator).
    pub fn is_self_orthogonal(&self) -> bool {
        let f = &self.field;
        for (i, a) in self.gen.iter().enumerate() {
            for b in &self.gen[i..] {
                let mut s = Felt::ZERO;
                for j in 0..self.n {
                    s = f.add(s, f.mul(a[j], b[j]));
                }
                if !s.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest s ≤ `search_limit` such that some s columns of the generator
    /// matrix are linearly dependent; this equals d(C⊥).
    pub fn dual_min_distance(&self, search_limit: usize) -> DualDistance {
        assert!(search_limit >= 1);
        let cols = self.columns();
        let f = &self.field;
        // s = 1: zero column
        if cols.iter().any(|c| c.iter().all(|x| x.is_zero())) {
            return DualDistance::Exact(1);
        }
        if search_limit < 2 {
            return DualDistance::AtLeast(2);
        }
        // s = 2: projective normalization collisions
        let mut table: ColumnTable = HashMap::new();
        for (i, c) in cols.iter().enumerate() {
            let nc = normalize(f, c).expect("zero columns handled above");
            let entry = table.entry(nc).or_default();
            if !entry.is_empty() {
                return DualDistance::Exact(2);
            }
            entry.push(i);
        }
        if search_limit < 3 {
            return DualDistance::AtLeast(3);
        }
        // s = 3: normalized pair combinations against the column table
        let q = self.q();
        for i in 0..cols.len() {
            for j in (i + 1)..cols.len() {
                for a in 1..q {
                    let v = add_scaled(f, &cols[i], &cols[j], f.felt(a));
                    if let Some(nv) = normalize(f, &v) {
                        if let Some(hits) = table.get(&nv) {
                            if hits.iter().any(|&k| k != i && k != j) {
                                return DualDistance::Exact(3);
                            }
                        }
                    }
                }
            }
        }
        if search_limit < 4 {
            return DualDistance::AtLeast(4);
        }
        // s = 4: pair-sum meet-in-the-middle
        let mut pairs: PairTable = HashMap::new();
        for i in 0..cols.len() {
            for j in (i + 1)..cols.len() {
                for a in 1..q {
                    let v = add_scaled(f, &cols[i], &cols[j], f.felt(a));
                    if let Some(nv) = normalize(f, &v) {
                        let hits = pairs.entry(nv).or_default();
                        if hits.iter().any(|&(u, w)| u != i && u != j && w != i && w != j) {
                            return DualDistance::Exact(4);
                        }
                        hits.push((i, j));
                    }
                }
            }
        }
        DualDistance::AtLeast(search_limit.min(4) + 1)
    }

    /// Supports of dual codewords of weight exactly `s` (s ≤ 4), as sorted
    /// column-index sets, via the dependent-column searches.
    pub fn dual_support_sets(&self, s: usize) -> Vec<Vec<u32>> {
        assert!((1..=4).contains(&s));
        let cols = self.columns();
        let f = &self.field;
        let q = self.q();
        let mut out: BTreeSet<Vec<u32>> = BTreeSet::new();
        match s {
            1 => {
                for (i, c) in cols.iter().enumerate() {
                    if c.iter().all(|x| x.is_zero()) {
                        out.insert(vec![i as u32]);
                    }
                }
            }
            2 => {
                let mut table: ColumnTable = HashMap::new();
                for (i, c) in cols.iter().enumerate() {
                    if let Some(nc) = normalize(f, c) {
                        table.entry(nc).or_default().push(i);
                    }
                }
                for hits in table.values() {
                    for a in 0..hits.len() {
                        for b in (a + 1)..hits.len() {
                            out.insert(vec![hits[a] as u32, hits[b] as u32]);
                        }
                    }
                }
            }
            3 => {
                let mut table: ColumnTable = HashMap::new();
                for (i, c) in cols.iter().enumerate() {
                    if let Some(nc) = normalize(f, c) {
                        table.entry(nc).or_default().push(i);
                    }
                }
                for i in 0..cols.len() {
                    for j in (i + 1)..cols.len() {
                        for a in 1..q {
                            let v = add_scaled(f, &cols[i], &cols[j], f.felt(a));
                            if let Some(nv) = normalize(f, &v) {
                                if let Some(hits) = table.get(&nv) {
                                    for &k in hits {
                                        if k != i && k != j {
                                            let mut set = vec![i as u32, j as u32, k as u32];
                                            set.sort_unstable();
                                            out.insert(set);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            4 => {
                let mut pairs: PairTable = HashMap::new();
                for i in 0..cols.len() {
                    for j in (i + 1)..cols.len() {
                        for a in 1..q {
                            let v = add_scaled(f, &cols[i], &cols[j], f.felt(a));
                            if let Some(nv) = normalize(f, &v) {
                                pairs.entry(nv).or_default().push((i, j));
                            }
                        }
                    }
                }
                for hits in pairs.values() {
                    for x in 0..hits.len() {
                        let (i, j) = hits[x];
                        for &(u, w) in &hits[x + 1..] {
                            if u != i && u != j && w != i && w != j {
                                let mut set = vec![i as u32, j as u32, u as u32, w as u32];
                                set.sort_unstable();
                                out.insert(set);
                            }
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
        out.into_iter().collect()
    }

    /// Number of dual codewords of weight exactly `s` (s ≤ 4), by counting the
    /// all-nonzero kernel vectors of each dependent column set.
    pub fn dual_word_count(&self, s: usize) -> u64 {
        let cols = self.columns();
        let f = &self.field;
        let mut total = 0u64;
        for set in self.dual_support_sets(s) {
            let sub: Vec<Vec<Felt>> = set.iter().map(|&i| cols[i as usize].clone()).collect();
            total += count_full_support_kernel(f, &sub);
        }
        total
    }

    /// Columns of the generator matrix.
    pub fn columns(&self) -> Vec<Vec<Felt>> {
        let rows = if self.gen.is_empty() {
            &self.basis
        } else {
            &self.gen
        };
        (0..self.n)
            .map(|j| rows.iter().map(|r| r[j]).collect())
            .collect()
    }

    /// Deduplicated supports of codewords of weight `w`, as sorted index sets.
    pub fn supports_of_weight(&self, w: usize) -> Result<Vec<Vec<u32>>, CodesError> {
        let size = self.codeword_count();
        if size > self.enum_cap as u128 {
            return Err(CodesError::TooLarge {
                size,
                cap: self.enum_cap,
            });
        }
        let mut out: BTreeSet<Vec<u32>> = BTreeSet::new();
        enumerate_codewords(&self.field, &self.basis, self.n, &mut |word| {
            let support: Vec<u32> = word
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, _)| i as u32)
                .collect();
            if support.len() == w {
                out.insert(support);
            }
        });
        Ok(out.into_iter().collect())
    }

    /// Smallest r ≤ r_max such that every column lies in the span of some ≤ r
    /// other columns; exhaustive by level (scalar hash, hash-assisted pairs and
    /// triples, small-n subset solve for r = 4).
    #[allow(clippy::needless_range_loop)]
    pub fn locality(&self, r_max: u32) -> Locality {
        let cols = self.columns();
        let f = &self.field;
        let q = self.q();
        let n = cols.len();
        let mut table: ColumnTable = HashMap::new();
        for (i, c) in cols.iter().enumerate() {
            if let Some(nc) = normalize(f, c) {
                table.entry(nc).or_default().push(i);
            }
        }
        let mut best = vec![u32::MAX; n];
        for (i, c) in cols.iter().enumerate() {
            if c.iter().all(|x| x.is_zero()) {
                best[i] = 0; // zero column repairs from the empty set
                continue;
            }
            let nc = normalize(f, c).unwrap();
            if table.get(&nc).is_some_and(|hits| hits.iter().any(|&j| j != i)) {
                best[i] = 1;
            }
        }
        if r_max >= 2 {
            for i in 0..n {
                if best[i] <= 2 {
                    continue;
                }
                'found2: for j in 0..n {
                    if j == i {
                        continue;
                    }
                    for a in 1..q {
                        let v = sub_scaled(f, &cols[i], &cols[j], f.felt(a));
                        if let Some(nv) = normalize(f, &v) {
                            if let Some(hits) = table.get(&nv) {
                                if hits.iter().any(|&k2| k2 != i && k2 != j) {
                                    best[i] = 2;
                                    break 'found2;
                                }
                            }
                        }
                    }
                }
            }
        }
        if r_max >= 3 {
            for i in 0..n {
                if best[i] <= 3 {
                    continue;
                }
                'found3: for j in 0..n {
                    if j == i {
                        continue;
                    }
                    for a in 1..q {
                        let v1 = sub_scaled(f, &cols[i], &cols[j], f.felt(a));
                        if v1.iter().all(|x| x.is_zero()) {
                            continue;
                        }
                        for k2 in 0..n {
                            if k2 == i || k2 == j {
                                continue;
                            }
                            for b in 1..q {
                                let v2 = sub_scaled(f, &v1, &cols[k2], f.felt(b));
                                if let Some(nv) = normalize(f, &v2) {
                                    if let Some(hits) = table.get(&nv) {
                                        if hits.iter().any(|&l| l != i && l != j && l != k2) {
                                            best[i] = 3;
                                            break 'found3;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        for level in 4..=r_max {
            // subset brute force; only viable for small n
            let feasible = binomial_u128(n as u64 - 1, level as u64) <= 2_000_000;
            if !feasible {
                break;
            }
            for i in 0..n {
                if best[i] <= level {
                    continue;
                }
                let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
                let mut subset = vec![0usize; level as usize];
                if in_span_of_some_subset(f, &cols, i, &others, &mut subset, 0, 0) {
                    best[i] = level;
                }
            }
        }
        let worst = best.iter().copied().max().unwrap_or(0);
        if worst <= r_max {
            Locality::Exact(worst)
        } else {
            Locality::GreaterThan(r_max)
        }
    }

    /// A generator basis of the dual code (null space of the generator matrix).
    pub fn dual_code(&self) -> LinearCode {
        let f = &self.field;
        let n = self.n;
        let rref = &self.basis;
        let mut pivots = Vec::new();
        for row in rref {
            pivots.push(row.iter().position(|c| !c.is_zero()).unwrap());
        }
        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        let mut rows = Vec::new();
        for free in (0..n).filter(|j| !pivot_set.contains(j)) {
            let mut v = vec![Felt::ZERO; n];
            v[free] = Felt::ONE;
            for (r, &pj) in pivots.iter().enumerate() {
                // basis is fully reduced, so coefficient at pivot is 1
                let c = self.field.div(rref[r][free], rref[r][pj]).unwrap();
                v[pj] = f.neg(c);
            }
            rows.push(v);
        }
        if rows.is_empty() {
            LinearCode::zero(self.field.clone(), n)
        } else {
            LinearCode::new(self.field.clone(), rows).with_enum_cap(self.enum_cap)
        }
    }
}

/// The code generated by [I_k : G] for a full-rank k×n matrix G.
pub fn extend_identity(
    field: &Arc<FieldCtx>,
    gen: &[Vec<Felt>],
) -> Result<LinearCode, CodesError> {
    let k = gen.len();
    assert!(k >= 1);
    if row_reduce(field, gen).len() != k {
        return Err(CodesError::RankDeficient);
    }
    let mut rows = Vec::with_capacity(k);
    for (i, r) in gen.iter().enumerate() {
        let mut row = vec![Felt::ZERO; k];
        row[i] = Felt::ONE;
        row.extend_from_slice(r);
        rows.push(row);
    }
    Ok(LinearCode::new(field.clone(), rows))
}

/// Solve the first `upto` Pless power-moment identities for the dual's
/// low-weight counts A_1⊥..A_upto⊥, in exact rational arithmetic.
#[allow(clippy::needless_range_loop)]
pub fn pless_dual_counts(
    wd: &WeightDistribution,
    upto: usize,
) -> Result<Vec<BigInt>, CodesError> {
    assert!((1..=5).contains(&upto));
    assert!(upto <= wd.n);
    let qk = BigInt::from(wd.q).pow(wd.k);
    if BigInt::from(wd.total()) != qk {
        return Err(CodesError::InconsistentDistribution(format!(
            "Σ A_w = {} but q^k = {}",
            wd.total(),
            qk
        )));
    }
    let n = wd.n as u64;
    let q = BigInt::from(wd.q);
    let stirling = stirling2_table(upto);
    let mut duals: Vec<BigInt> = vec![BigInt::one()]; // A_0⊥ = 1
    for nu in 1..=upto {
        let moment: BigInt = wd
            .counts
            .iter()
            .map(|(&w, &c)| BigInt::from(w as u64).pow(nu as u32) * BigInt::from(c))
            .sum();
        // T(ν, j) = Σ_{t=j}^{ν} t! S(ν,t) q^{k−t} (q−1)^{t−j} C(n−j, n−t)
        let t_coeff = |j: usize| -> BigRational {
            let mut acc = BigRational::zero();
            for t in j..=nu {
                let s = &stirling[nu][t];
                if s.is_zero() {
                    continue;
                }
                let fact: BigInt = (1..=t as u64).map(BigInt::from).product();
                let qpow = rational_pow(&q, wd.k as i64 - t as i64);
                let qm1 = (&q - BigInt::one()).pow((t - j) as u32);
                let binom = binomial(n - j as u64, (t - j) as u64);
                acc += BigRational::from(fact * s * qm1 * binom) * qpow;
            }
            acc
        };
        let mut rhs_known = BigRational::zero();
        for (j, aj) in duals.iter().enumerate() {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            rhs_known += BigRational::from(aj * BigInt::from(sign)) * t_coeff(j);
        }
        let lead = t_coeff(nu) * BigRational::from(BigInt::from(if nu % 2 == 0 { 1 } else { -1 }));
        let a_nu = (BigRational::from(moment) - rhs_known) / lead;
        if !a_nu.is_integer() || a_nu.is_negative() {
            return Err(CodesError::InconsistentDistribution(format!(
                "solved A_{nu}⊥ = {a_nu} is not a nonnegative integer"
            )));
        }
        duals.push(a_nu.to_integer());
    }
    Ok(duals[1..].to_vec())
}

/// Check whether the given blocks form a t-(n, κ, λ) design.
pub fn design_check(n: usize, t: u32, kappa: usize, blocks: &[Vec<u32>]) -> DesignVerdict {
    for b in blocks {
        assert_eq!(b.len(), kappa, "block size mismatch");
        assert!(b.iter().all(|&i| (i as usize) < n));
    }
    if t == 0 {
        return DesignVerdict {
            t,
            n,
            kappa,
            lambda: Some(blocks.len() as u64),
            is_design: true,
            witness: None,
        };
    }
    let mut coverage: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    let mut subset = vec![0u32; t as usize];
    for b in blocks {
        count_subsets(b, &mut subset, 0, 0, &mut coverage);
    }
    let expected = binomial_u128(n as u64, t as u64);
    if coverage.is_empty() {
        // no blocks at all: vacuous only if there are also no t-subsets
        return DesignVerdict {
            t,
            n,
            kappa,
            lambda: None,
            is_design: false,
            witness: None,
        };
    }
    let lambda = *coverage.values().next().unwrap();
    let uniform = coverage.values().all(|&c| c == lambda);
    let covers_all = coverage.len() as u128 == expected;
    if uniform && covers_all {
        DesignVerdict {
            t,
            n,
            kappa,
            lambda: Some(lambda),
            is_design: true,
            witness: None,
        }
    } else {
        let witness = if !uniform {
            let (s1, &c1) = coverage.iter().next().unwrap();
            let (s2, &c2) = coverage.iter().find(|&(_, &c)| c != c1).unwrap();
            Some(((s1.clone(), c1), (s2.clone(), c2)))
        } else {
            // some t-subset uncovered
            let mut missing = None;
            let mut idx = vec![0u32; t as usize];
            find_missing_subset(n as u32, &mut idx, 0, 0, &coverage, &mut missing);
            missing.map(|s| {
                let (s1, &c1) = coverage.iter().next().unwrap();
                ((s1.clone(), c1), (s, 0))
            })
        };
        DesignVerdict {
            t,
            n,
            kappa,
            lambda: None,
            is_design: false,
            witness,
        }
    }
}

fn count_subsets(
    block: &[u32],
    subset: &mut [u32],
    depth: usize,
    start: usize,
    coverage: &mut BTreeMap<Vec<u32>, u64>,
) {
    if depth == subset.len() {
        *coverage.entry(subset.to_vec()).or_default() += 1;
        return;
    }
    for i in start..block.len() {
        subset[depth] = block[i];
        count_subsets(block, subset, depth + 1, i + 1, coverage);
    }
}

fn find_missing_subset(
    n: u32,
    idx: &mut [u32],
    depth: usize,
    start: u32,
    covered: &BTreeMap<Vec<u32>, u64>,
    out: &mut Option<Vec<u32>>,
) {
    if out.is_some() {
        return;
    }
    if depth == idx.len() {
        if !covered.contains_key(idx) {
            *out = Some(idx.to_vec());
        }
        return;
    }
    for i in start..n {
        idx[depth] = i;
        find_missing_subset(n, idx, depth + 1, i + 1, covered, out);
    }
}

// ---------------------------------------------------------------------------
// enumeration internals
// ---------------------------------------------------------------------------

#[allow(clippy::needless_range_loop)]
fn row_reduce(field: &FieldCtx, rows: &[Vec<Felt>]) -> Vec<Vec<Felt>> {
    let mut m: Vec<Vec<Felt>> = rows.to_vec();
    if m.is_empty() {
        return m;
    }
    let n = m[0].len();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = field.inv(m[rank][col]).unwrap();
        for j in 0..n {
            m[rank][j] = field.mul(inv, m[rank][j]);
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let c = m[r][col];
                for j in 0..n {
                    let t = field.mul(c, m[rank][j]);
                    m[r][j] = field.sub(m[r][j], t);
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    m.retain(|r| r.iter().any(|c| !c.is_zero()));
    m
}

fn normalize(field: &FieldCtx, col: &[Felt]) -> Option<Vec<Felt>> {
    let first = col.iter().find(|c| !c.is_zero())?;
    let inv = field.inv(*first).unwrap();
    Some(col.iter().map(|&c| field.mul(inv, c)).collect())
}

fn add_scaled(field: &FieldCtx, a: &[Felt], b: &[Felt], s: Felt) -> Vec<Felt> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| field.add(x, field.mul(s, y)))
        .collect()
}

fn sub_scaled(field: &FieldCtx, a: &[Felt], b: &[Felt], s: Felt) -> Vec<Felt> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| field.sub(x, field.mul(s, y)))
        .collect()
}

fn count_full_support_kernel(field: &FieldCtx, cols: &[Vec<Felt>]) -> u64 {
    // kernel of the k×s matrix with the given columns; count vectors with all
    // coordinates nonzero
    let s = cols.len();
    let k = cols[0].len();
    let rows: Vec<Vec<Felt>> = (0..k).map(|r| (0..s).map(|c| cols[c][r]).collect()).collect();
    let rref = row_reduce_raw(field, &rows, s);
    let rank = rref.len();
    let dim = s - rank;
    if dim == 0 {
        return 0;
    }
    let basis = kernel_basis(field, &rref, s);
    let q = field.q();
    let mut count = 0u64;
    let total = q.pow(dim as u32);
    for idx in 1..total {
        let mut v = vec![Felt::ZERO; s];
        let mut rem = idx;
        for b in &basis {
            let c = field.felt(rem % q);
            rem /= q;
            if !c.is_zero() {
                for j in 0..s {
                    v[j] = field.add(v[j], field.mul(c, b[j]));
                }
            }
        }
        if v.iter().all(|c| !c.is_zero()) {
            count += 1;
        }
    }
    count
}

#[allow(clippy::needless_range_loop)]
fn row_reduce_raw(field: &FieldCtx, rows: &[Vec<Felt>], n: usize) -> Vec<Vec<Felt>> {
    let mut m: Vec<Vec<Felt>> = rows.to_vec();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = field.inv(m[rank][col]).unwrap();
        for j in 0..n {
            m[rank][j] = field.mul(inv, m[rank][j]);
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let c = m[r][col];
                for j in 0..n {
                    let t = field.mul(c, m[rank][j]);
                    m[r][j] = field.sub(m[r][j], t);
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    m.retain(|r| r.iter().any(|c| !c.is_zero()));
    m
}

fn kernel_basis(field: &FieldCtx, rref: &[Vec<Felt>], n: usize) -> Vec<Vec<Felt>> {
    let pivots: Vec<usize> = rref
        .iter()
        .map(|row| row.iter().position(|c| !c.is_zero()).unwrap())
        .collect();
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..n).filter(|j| !pivot_set.contains(j)) {
        let mut v = vec![Felt::ZERO; n];
        v[free] = Felt::ONE;
        for (r, &pj) in pivots.iter().enumerate() {
            v[pj] = field.neg(rref[r][free]);
        }
        basis.push(v);
    }
    basis
}

fn in_span_of_some_subset(
    field: &FieldCtx,
    cols: &[Vec<Felt>],
    target: usize,
    others: &[usize],
    subset: &mut [usize],
    depth: usize,
    start: usize,
) -> bool {
    if depth == subset.len() {
        let chosen: Vec<Vec<Felt>> = subset.iter().map(|&j| cols[j].clone()).collect();
        return in_span(field, &cols[target], &chosen);
    }
    for i in start..others.len() {
        subset[depth] = others[i];
        if in_span_of_some_subset(field, cols, target, others, subset, depth + 1, i + 1) {
            return true;
        }
    }
    false
}

fn in_span(field: &FieldCtx, target: &[Felt], cols: &[Vec<Felt>]) -> bool {
    let k = target.len();
    let rows: Vec<Vec<Felt>> = cols.to_vec();
    let rank_without = row_reduce_raw(field, &rows, k).len();
    let mut with = rows;
    with.push(target.to_vec());
    let rank_with = row_reduce_raw(field, &with, k).len();
    rank_without == rank_with
}

/// Per-level row increments for the span walk: stepping the level coefficient
/// from c to c+1 (in encoding order) adds `(felt(c+1) − felt(c))·row`, and the
/// final entry restores the parent state by cancelling `felt(q−1)·row`.
fn delta_rows(field: &FieldCtx, row: &[Felt]) -> Vec<Vec<u32>> {
    let q = field.q();
    let mut deltas = Vec::with_capacity(q as usize);
    for c in 0..q - 1 {
        let d = field.sub(field.felt(c + 1), field.felt(c));
        deltas.push(row.iter().map(|&x| field.mul(d, x).enc() as u32).collect());
    }
    let back = field.neg(field.felt(q - 1));
    deltas.push(row.iter().map(|&x| field.mul(back, x).enc() as u32).collect());
    deltas
}

/// Walk every codeword of the span of `basis`, invoking `visit` with the raw
/// encoding buffer. Single-threaded; used where the visitor needs every word.
fn enumerate_codewords<F: FnMut(&[u32])>(
    field: &FieldCtx,
    basis: &[Vec<Felt>],
    n: usize,
    visit: &mut F,
) {
    let deltas: Vec<Vec<Vec<u32>>> = basis.iter().map(|r| delta_rows(field, r)).collect();
    let mut buf = vec![0u32; n];
    walk(field, &deltas, 0, &mut buf, visit);
}

fn walk<F: FnMut(&[u32])>(
    field: &FieldCtx,
    deltas: &[Vec<Vec<u32>>],
    level: usize,
    buf: &mut [u32],
    visit: &mut F,
) {
    if level == deltas.len() {
        visit(buf);
        return;
    }
    let q = field.q() as usize;
    for c in 0..q {
        walk(field, deltas, level + 1, buf, visit);
        for (b, &r) in buf.iter_mut().zip(&deltas[level][c]) {
            *b = field
                .add(field.felt(*b as u64), field.felt(r as u64))
                .enc() as u32;
        }
    }
    // the last delta cancels felt(q−1)·row, restoring buf for the parent
}

fn enumerate_weights(field: &Arc<FieldCtx>, basis: &[Vec<Felt>], n: usize) -> Vec<u64> {
    let k = basis.len();
    let q = field.q();
    let size = (q as u128).pow(k as u32);
    let workers = worker_count();
    if size < (1 << 16) || workers <= 1 || k == 0 {
        let mut hist = vec![0u64; n + 1];
        enumerate_codewords(field, basis, n, &mut |word| {
            let w = word.iter().filter(|&&c| c != 0).count();
            hist[w] += 1;
        });
        return hist;
    }
    // split the first ℓ message digits into jobs; each job owns a sub-span walk
    let mut levels = 1usize;
    while levels < k && q.pow(levels as u32) < (4 * workers) as u64 {
        levels += 1;
    }
    let jobs = q.pow(levels as u32);
    let deltas: Vec<Vec<Vec<u32>>> = basis.iter().map(|r| delta_rows(field, r)).collect();
    let hist_parts: Vec<Vec<u64>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for worker in 0..workers {
            let deltas = &deltas;
            let rows = basis;
            let field = field.clone();
            handles.push(scope.spawn(move || {
                let mut hist = vec![0u64; n + 1];
                let mut job = worker as u64;
                while job < jobs {
                    // fixed prefix coefficients from the job index
                    let mut buf = vec![0u32; n];
                    let mut rem = job;
                    for row in rows.iter().take(levels) {
                        let c = field.felt(rem % q);
                        rem /= q;
                        if !c.is_zero() {
                            for (b, &r) in buf.iter_mut().zip(row) {
                                *b = field.add(field.felt(*b as u64), field.mul(c, r)).enc() as u32;
                            }
                        }
                    }
                    walk(&field, &deltas[levels..], 0, &mut buf, &mut |word: &[u32]| {
                        let w = word.iter().filter(|&&c| c != 0).count();
                        hist[w] += 1;
                    });
                    job += workers as u64;
                }
                hist
            }));
        }
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut hist = vec![0u64; n + 1];
    for part in hist_parts {
        for (h, p) in hist.iter_mut().zip(part) {
            *h += p;
        }
    }
    hist
}

fn rational_pow(base: &BigInt, e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from(base.pow(e as u32))
    } else {
        BigRational::new(BigInt::one(), base.pow((-e) as u32))
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

fn binomial_u128(n: u64, k: u64) -> u128 {
    binomial(n, k).to_u128().unwrap_or(u128::MAX)
}

fn stirling2_table(max: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); max + 1]; max + 1];
    s[0][0] = BigInt::one();
    for n in 1..=max {
        for k in 1..=n {
            let a = &s[n - 1][k] * BigInt::from(k as u64);
            let b = &s[n - 1][k - 1];
            s[n][k] = a + b;
        }
    }
    s
}
