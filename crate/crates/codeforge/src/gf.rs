//! Explicit finite fields GF(p^deg) and two-level towers GF(p) ⊆ GF(q) ⊆ GF(q^m).
//!
//! Fields are represented by a fixed monic irreducible modulus over GF(p) and a
//! dense discrete-log table. Elements are encoded in the power basis: the element
//! with coefficients `c_0..c_{deg-1}` (coefficient of x^i is `c_i`) has encoding
//! `Σ c_i p^i`, so element enumeration order is the numeric order of encodings.
//!
//! The modulus of a degree ≥ 2 field is the Conway polynomial C_{p,deg}, computed
//! by the standard minimal-word search with subfield norm-compatibility, and the
//! multiplicative generator is the class of x. This pins every construction in the
//! crate bit-for-bit across runs and machines, and agrees with the representation
//! used by the major computer algebra systems. Degree-1 fields keep modulus `x`
//! and take the smallest primitive root as generator.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

/// Default cap on field size for table construction.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 24;

/// Add-table is materialized only for alphabets this small.
const ADD_TABLE_CAP: u64 = 512;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {q} exceeds the table cap {cap}")]
    TooLarge { q: u64, cap: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("quadratic character requires odd characteristic")]
    EvenCharacteristic,
    #[error("operation requires characteristic 2")]
    OddCharacteristic,
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
}

/// A field element, valid only against the `FieldCtx` that produced it.
///
/// The wrapped value is the coefficient encoding `Σ c_i p^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Felt(u64);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    #[inline]
    pub fn enc(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// An explicit finite field GF(p^deg) with modulus, generator and dlog tables.
pub struct FieldCtx {
    p: u64,
    deg: usize,
    q: u64,
    modulus: Vec<u64>,
    generator: Felt,
    /// dlog[enc] for enc ≥ 1; dlog[0] is a sentinel.
    dlog: Vec<u32>,
    /// antilog[k] = generator^k for 0 ≤ k < q-1.
    antilog: Vec<u64>,
    add_table: Option<Vec<u32>>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("deg", &self.deg)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// Polynomial arithmetic over GF(p), used only during field construction.
// Polynomials are coefficient vectors, lowest degree first.
// ---------------------------------------------------------------------------

fn poly_trim(f: &mut Vec<u64>) {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let mut res = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            res[i + j] = (res[i + j] + ai * bj) % p;
        }
    }
    let dm = modulus.len() - 1;
    while res.len() > dm {
        let lead = *res.last().unwrap();
        if lead != 0 {
            let off = res.len() - 1 - dm;
            for i in 0..=dm {
                res[off + i] = (res[off + i] + (p - lead % p) * modulus[i]) % p;
            }
        }
        res.pop();
    }
    poly_trim(&mut res);
    res
}

fn poly_pow_x_mod(mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1];
    let mut base = vec![0, 1];
    while e > 0 {
        if e & 1 == 1 {
            r = poly_mul_mod(&r, &base, modulus, p);
        }
        base = poly_mul_mod(&base, &base, modulus, p);
        e >>= 1;
    }
    r
}

fn poly_pow_mod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            r = poly_mul_mod(&r, &b, modulus, p);
        }
        b = poly_mul_mod(&b, &b, modulus, p);
        e >>= 1;
    }
    r
}

fn poly_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p;
    }
    poly_trim(&mut out);
    out
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let ai = a.get(i).copied().unwrap_or(0);
        let bi = b.get(i).copied().unwrap_or(0);
        *o = (ai + p - bi) % p;
    }
    poly_trim(&mut out);
    out
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    poly_trim(&mut a);
    let db = b.len() - 1;
    if db == 0 {
        return vec![0];
    }
    let lead_inv = mod_inv(b[db], p);
    while a.len() > db {
        let lead = *a.last().unwrap();
        if lead != 0 {
            let c = lead * lead_inv % p;
            let off = a.len() - 1 - db;
            for i in 0..=db {
                a[off + i] = (a[off + i] + (p - c * b[i] % p)) % p;
            }
        }
        a.pop();
        poly_trim(&mut a);
    }
    a
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Monic `f` of degree ≥ 1 is irreducible over GF(p) iff gcd(x^{p^i} − x, f) = 1
/// for 1 ≤ i < deg f and x^{p^deg} ≡ x (mod f).
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let mut xp = vec![0, 1];
    for _ in 1..d {
        xp = poly_pow_mod(&xp, p, f, p);
        let g = poly_gcd(&poly_sub(&xp, &[0, 1], p), f, p);
        if !(g.len() == 1 && g[0] != 0) {
            return false;
        }
    }
    let xq = poly_pow_mod(&xp, p, f, p);
    poly_sub(&xq, &[0, 1], p) == vec![0]
}

fn x_is_primitive(f: &[u64], p: u64) -> bool {
    let n = (f.len() - 1) as u32;
    let qn = p.pow(n);
    for l in prime_factors(qn - 1) {
        if poly_pow_x_mod((qn - 1) / l, f, p) == vec![1] {
            return false;
        }
    }
    true
}

/// Conway polynomial C_{p,n}: the minimal monic primitive polynomial of degree n
/// over GF(p) under the word order on (c_{n-1},…,c_0) with a_i = (−1)^{n−i} c_i,
/// compatible with C_{p,d} for every proper divisor d of n.
pub fn conway_polynomial(p: u64, n: usize) -> Vec<u64> {
    if n == 1 {
        let r = smallest_primitive_root(p);
        return vec![(p - r) % p, 1];
    }
    let sub: Vec<(usize, Vec<u64>)> = (1..n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| (d, conway_polynomial(p, d)))
        .collect();
    let qn = p.pow(n as u32);
    let mut word = vec![0u64; n]; // (c_{n-1}, ..., c_0)
    loop {
        let mut f = vec![0u64; n + 1];
        f[n] = 1;
        for (idx, &c) in word.iter().enumerate() {
            let i = n - 1 - idx;
            f[i] = if (n - i).is_multiple_of(2) { c } else { (p - c) % p };
        }
        if is_irreducible(&f, p) && x_is_primitive(&f, p) {
            let compatible = sub.iter().all(|(d, cd)| {
                let y = poly_pow_x_mod((qn - 1) / (p.pow(*d as u32) - 1), &f, p);
                let mut acc = vec![0u64];
                for &co in cd.iter().rev() {
                    acc = poly_mul_mod(&acc, &y, &f, p);
                    acc = poly_add(&acc, &[co], p);
                }
                acc == vec![0]
            });
            if compatible {
                return f;
            }
        }
        let mut i = n;
        loop {
            assert!(i > 0, "no Conway polynomial found for ({p},{n})");
            i -= 1;
            word[i] += 1;
            if word[i] < p {
                break;
            }
            word[i] = 0;
        }
    }
}

fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let fac = prime_factors(p - 1);
    (2..p)
        .find(|&r| fac.iter().all(|&l| mod_pow(r, (p - 1) / l, p) != 1))
        .expect("prime field has a primitive root")
}

/// Construct GF(p^deg) with the default size cap.
pub fn make_field(p: u64, deg: usize) -> Result<Arc<FieldCtx>, GfError> {
    make_field_with_cap(p, deg, DEFAULT_FIELD_CAP)
}

/// Construct GF(p^deg), rejecting sizes beyond `cap`.
///
/// Contexts are immutable and fully determined by (p, deg), so they are
/// memoized process-wide.
pub fn make_field_with_cap(p: u64, deg: usize, cap: u64) -> Result<Arc<FieldCtx>, GfError> {
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    assert!(deg >= 1, "extension degree must be positive");
    let q128 = (p as u128).pow(deg as u32);
    if q128 > cap as u128 {
        return Err(GfError::TooLarge {
            q: q128.min(u64::MAX as u128) as u64,
            cap,
        });
    }
    type Cache = Mutex<HashMap<(u64, usize), Arc<FieldCtx>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(ctx) = cache.lock().unwrap().get(&(p, deg)) {
        return Ok(ctx.clone());
    }
    let built = build_field(p, deg, q128 as u64);
    cache
        .lock()
        .unwrap()
        .entry((p, deg))
        .or_insert_with(|| built.clone());
    Ok(built)
}

fn build_field(p: u64, deg: usize, q: u64) -> Arc<FieldCtx> {
    let (modulus, generator) = if deg == 1 {
        (vec![0, 1], Felt(smallest_primitive_root(p)))
    } else {
        (conway_polynomial(p, deg), Felt(p))
    };
    let mut ctx = FieldCtx {
        p,
        deg,
        q,
        modulus,
        generator,
        dlog: vec![u32::MAX; q as usize],
        antilog: vec![0; (q - 1) as usize],
        add_table: None,
    };
    let gen_poly = ctx.enc_to_poly_fixed(generator.0);
    let mut cur = vec![1u64];
    for k in 0..(q - 1) as usize {
        let enc = ctx.poly_to_enc(&cur);
        ctx.antilog[k] = enc;
        ctx.dlog[enc as usize] = k as u32;
        cur = poly_mul_mod(&cur, &gen_poly, &ctx.modulus, p);
    }
    assert_eq!(ctx.poly_to_enc(&cur), 1, "generator order mismatch");
    if q <= ADD_TABLE_CAP {
        let mut t = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                t[(a * q + b) as usize] = ctx.add_digitwise(a, b) as u32;
            }
        }
        ctx.add_table = Some(t);
    }
    Arc::new(ctx)
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    /// Field size p^deg.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, lowest degree first (monic).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> Felt {
        self.generator
    }

    /// The element with encoding `enc` (coefficient-lex order).
    pub fn felt(&self, enc: u64) -> Felt {
        assert!(enc < self.q, "encoding {enc} out of range for GF({})", self.q);
        Felt(enc)
    }

    /// All field elements in the deterministic enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Felt> + '_ {
        (0..self.q).map(Felt)
    }

    /// Power-basis coordinates c_0..c_{deg-1} of an element.
    pub fn coeffs(&self, x: Felt) -> Vec<u64> {
        self.enc_to_poly_fixed(x.0)
    }

    fn enc_to_poly_fixed(&self, mut e: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.deg);
        for _ in 0..self.deg {
            out.push(e % self.p);
            e /= self.p;
        }
        out
    }

    fn poly_to_enc(&self, f: &[u64]) -> u64 {
        let mut e = 0u64;
        for &c in f.iter().rev() {
            e = e * self.p + c;
        }
        e
    }

    fn add_digitwise(&self, mut a: u64, mut b: u64) -> u64 {
        let p = self.p;
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.deg {
            out += ((a % p + b % p) % p) * mult;
            a /= p;
            b /= p;
            mult *= p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        match &self.add_table {
            Some(t) => Felt(t[(a.0 * self.q + b.0) as usize] as u64),
            None => Felt(self.add_digitwise(a.0, b.0)),
        }
    }

    pub fn neg(&self, a: Felt) -> Felt {
        let p = self.p;
        let mut e = a.0;
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.deg {
            out += ((p - e % p) % p) * mult;
            e /= p;
            mult *= p;
        }
        Felt(out)
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if a.0 == 0 || b.0 == 0 {
            return Felt(0);
        }
        let k = self.dlog[a.0 as usize] as u64 + self.dlog[b.0 as usize] as u64;
        Felt(self.antilog[(k % (self.q - 1)) as usize])
    }

    pub fn inv(&self, a: Felt) -> Result<Felt, GfError> {
        if a.0 == 0 {
            return Err(GfError::DivisionByZero);
        }
        let k = self.dlog[a.0 as usize] as u64;
        Ok(Felt(self.antilog[((self.q - 1 - k) % (self.q - 1)) as usize]))
    }

    /// a / b for nonzero b.
    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Felt, e: u64) -> Felt {
        if a.0 == 0 {
            return if e == 0 { Felt(1) } else { Felt(0) };
        }
        let k = self.dlog[a.0 as usize] as u128 * e as u128;
        Felt(self.antilog[(k % (self.q - 1) as u128) as usize])
    }

    /// Discrete log of a nonzero element w.r.t. the generator.
    pub fn dlog(&self, a: Felt) -> Option<u64> {
        if a.0 == 0 {
            None
        } else {
            Some(self.dlog[a.0 as usize] as u64)
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Felt) -> Result<u64, GfError> {
        let k = self.dlog(a).ok_or(GfError::DivisionByZero)?;
        Ok((self.q - 1) / num_integer::gcd(self.q - 1, k))
    }

    /// Absolute trace Σ x^{p^i} down to GF(p), returned as a residue < p.
    pub fn trace_to_prime(&self, x: Felt) -> u64 {
        let mut s = Felt(0);
        let mut cur = x;
        for _ in 0..self.deg {
            s = self.add(s, cur);
            cur = self.pow(cur, self.p);
        }
        debug_assert!(s.0 < self.p);
        s.0
    }

    /// Quadratic character η(x) ∈ {−1, 0, 1}; requires odd characteristic.
    pub fn quadratic_character(&self, x: Felt) -> Result<i32, GfError> {
        if self.p == 2 {
            return Err(GfError::EvenCharacteristic);
        }
        if x.0 == 0 {
            return Ok(0);
        }
        let s = self.pow(x, (self.q - 1) / 2);
        Ok(if s.0 == 1 { 1 } else { -1 })
    }

    /// Number of roots of ax² + bx + c over a field of characteristic 2:
    /// 1 iff b = 0; else 2 iff tr(ac/b²) = 0 and 0 iff tr(ac/b²) = 1.
    pub fn quad_root_count_char2(&self, a: Felt, b: Felt, c: Felt) -> Result<u32, GfError> {
        if self.p != 2 {
            return Err(GfError::OddCharacteristic);
        }
        if a.0 == 0 {
            return Err(GfError::ZeroLeadingCoefficient);
        }
        if b.0 == 0 {
            return Ok(1);
        }
        let b2 = self.mul(b, b);
        let v = self.div(self.mul(a, c), b2)?;
        Ok(if self.trace_to_prime(v) == 0 { 2 } else { 0 })
    }
}

/// A two-level tower GF(p) ⊆ GF(q = p^e) ⊆ GF(q^m), with the intermediate field
/// realized both standalone and embedded in the top field.
pub struct TowerCtx {
    top: Arc<FieldCtx>,
    base: Arc<FieldCtx>,
    m: usize,
    embed: Vec<Felt>,
    project: HashMap<u64, Felt>,
}

impl std::fmt::Debug for TowerCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TowerCtx(GF({})^{})", self.base.q(), self.m)
    }
}

impl TowerCtx {
    pub fn new(p: u64, e: usize, m: usize) -> Result<TowerCtx, GfError> {
        Self::with_cap(p, e, m, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(p: u64, e: usize, m: usize, cap: u64) -> Result<TowerCtx, GfError> {
        assert!(m >= 1);
        let top = make_field_with_cap(p, e * m, cap)?;
        let base = make_field_with_cap(p, e, cap)?;
        // Norm-compatible embedding: base generator ↦ α^{(Q-1)/(q-1)}. With Conway
        // moduli on both levels the image is a root of the base modulus, so the
        // map extends to a field isomorphism onto the fixed field of x ↦ x^q.
        let q = base.q();
        let ghat = top.pow(top.generator(), (top.q() - 1) / (q - 1));
        let mut embed = vec![Felt::ZERO; q as usize];
        let mut cb = Felt::ONE;
        let mut ct = Felt::ONE;
        for _ in 0..(q - 1) {
            embed[cb.enc() as usize] = ct;
            cb = base.mul(cb, base.generator());
            ct = top.mul(ct, ghat);
        }
        let mut project = HashMap::with_capacity(q as usize);
        for (i, &v) in embed.iter().enumerate() {
            project.insert(v.enc(), base.felt(i as u64));
        }
        debug_assert_eq!(project.len(), q as usize);
        Ok(TowerCtx {
            top,
            base,
            m,
            embed,
            project,
        })
    }

    pub fn top(&self) -> &Arc<FieldCtx> {
        &self.top
    }

    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    /// Intermediate field size q.
    pub fn q(&self) -> u64 {
        self.base.q()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Embed a base-field element into the top field.
    pub fn embed(&self, b: Felt) -> Felt {
        self.embed[b.enc() as usize]
    }

    /// Map a top-field element lying in the embedded GF(q) back to the base field.
    pub fn project(&self, x: Felt) -> Option<Felt> {
        self.project.get(&x.enc()).copied()
    }

    /// Relative trace tr_{q^m/q}(x) = Σ_{i<m} x^{q^i}, as a base-field element.
    pub fn trace_to_base(&self, x: Felt) -> Felt {
        let y = self.trace_partial(x, self.m);
        self.project(y)
            .expect("relative trace lies in the embedded subfield")
    }

    /// Partial trace Σ_{j<t} x^{q^j} inside the top field (no projection).
    /// For x in the embedded GF(q^t) this is the relative trace to GF(q).
    pub fn trace_partial(&self, x: Felt, t: usize) -> Felt {
        let q = self.q();
        let mut s = Felt::ZERO;
        let mut cur = x;
        for _ in 0..t {
            s = self.top.add(s, cur);
            cur = self.top.pow(cur, q);
        }
        s
    }

    /// Relative norm x^{(q^m−1)/(q−1)} to GF(q), as a base-field element.
    pub fn norm_to_base(&self, x: Felt) -> Felt {
        if x.is_zero() {
            return Felt::ZERO;
        }
        let y = self.top.pow(x, (self.top.q() - 1) / (self.q() - 1));
        self.project(y).expect("norm lies in the embedded subfield")
    }
}
