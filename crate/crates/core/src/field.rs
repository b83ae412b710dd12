//! Finite fields `F_{p^k}` with canonical moduli, generators and embeddings.
//!
//! Elements are residue polynomials over `F_p` of degree `< k`, coefficients
//! reduced into `[0, p-1]`. The canonical field for a given `(p, k)` uses the
//! lexicographically smallest monic irreducible modulus (coefficient vector
//! `(c_0, ..., c_{k-1})` compared left to right), so printed elements are
//! reproducible across runs.

use num_bigint::BigUint;
use once_cell::sync::{Lazy, OnceCell};
use smallvec::{smallvec, SmallVec};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::Error;

pub type Coeffs = SmallVec<[u64; 3]>;

/// A finite field `F_{p^k}`, `p >= 5` prime.
#[derive(Debug)]
pub struct FieldSpec {
    p: u64,
    k: usize,
    /// Monic modulus of degree `k`, length `k+1`, trailing coefficient 1.
    /// For `k = 1` this is `x` itself (`[0, 1]`) and plays no role.
    modulus: Vec<u64>,
    /// Designated multiplicative generator (lexicographically smallest);
    /// computed on first use, and only available when the group order fits
    /// in a machine word.
    generator: OnceCell<Coeffs>,
    /// Designated quadratic non-residue (lexicographically smallest).
    non_residue: OnceCell<Coeffs>,
}

/// An element of some `FieldSpec`: residue coefficients `(c_0, ..., c_{k-1})`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem(pub Coeffs);

pub type Field = Arc<FieldSpec>;

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

// ---------------------------------------------------------------------------
// prime-field helpers
// ---------------------------------------------------------------------------

#[inline]
pub fn addp(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn subp(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mulp(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powp(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulp(r, a, p);
        }
        a = mulp(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invp(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powp(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = 11u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut m = 0;
            while n % d == 0 {
                n /= d;
                m += 1;
            }
            out.push((d, m));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

// ---------------------------------------------------------------------------
// dense polynomials over F_p (used for modulus bookkeeping only)
// ---------------------------------------------------------------------------

fn fp_poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    fp_poly_trim(&mut r);
    let db = b.len() - 1;
    let lb_inv = invp(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = mulp(r[dr], lb_inv, p);
        if c != 0 {
            for i in 0..db {
                r[dr - db + i] = subp(r[dr - db + i], mulp(c, b[i], p), p);
            }
        }
        r.pop();
        fp_poly_trim(&mut r);
    }
    r
}

fn fp_poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r: Vec<u64> = a.to_vec();
    fp_poly_trim(&mut r);
    let db = b.len() - 1;
    let lb_inv = invp(b[db], p);
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = mulp(r[dr], lb_inv, p);
        if c != 0 {
            q[dr - db] = c;
            for i in 0..db {
                r[dr - db + i] = subp(r[dr - db + i], mulp(c, b[i], p), p);
            }
        }
        r.pop();
        fp_poly_trim(&mut r);
    }
    (q, r)
}

fn fp_poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = subp(x, y, p);
    }
    fp_poly_trim(&mut out);
    out
}

fn fp_poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = addp(prod[i + j], mulp(x, y, p), p);
        }
    }
    fp_poly_trim(&mut prod);
    prod
}

fn fp_poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fp_poly_trim(&mut a);
    fp_poly_trim(&mut b);
    while !b.is_empty() {
        let r = fp_poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lc) = a.last() {
        let inv = invp(lc, p);
        for c in a.iter_mut() {
            *c = mulp(*c, inv, p);
        }
    }
    a
}

fn fp_poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = addp(prod[i + j], mulp(x, y, p), p);
        }
    }
    fp_poly_rem(&prod, m, p)
}

fn fp_poly_powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut base = fp_poly_rem(a, m, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_poly_mulmod(&acc, &base, m, p);
        }
        base = fp_poly_mulmod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

/// `x^(p^e) mod m` by repeated `p`-th powering.
fn fp_frob_powmod(e: usize, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![0u64, 1];
    for _ in 0..e {
        acc = fp_poly_powmod(&acc, p, m, p);
    }
    acc
}

/// Irreducibility over `F_p` via the Rabin test.
pub fn fp_poly_irreducible(f: &[u64], p: u64) -> bool {
    let mut f = f.to_vec();
    fp_poly_trim(&mut f);
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    // x^(p^k) == x mod f
    let xpk = fp_frob_powmod(k, &f, p);
    let mut x = vec![0u64, 1];
    x = fp_poly_rem(&x, &f, p);
    let mut diff: Vec<u64> = (0..xpk.len().max(x.len()))
        .map(|i| {
            subp(
                xpk.get(i).copied().unwrap_or(0),
                x.get(i).copied().unwrap_or(0),
                p,
            )
        })
        .collect();
    fp_poly_trim(&mut diff);
    if !diff.is_empty() {
        return false;
    }
    for (q, _) in factor_u64(k as u64) {
        let e = k / q as usize;
        let xpe = fp_frob_powmod(e, &f, p);
        let mut diff: Vec<u64> = (0..xpe.len().max(2))
            .map(|i| {
                let xi = if i == 1 { 1 } else { 0 };
                subp(xpe.get(i).copied().unwrap_or(0), xi, p)
            })
            .collect();
        fp_poly_trim(&mut diff);
        let g = fp_poly_gcd(&diff, &f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// FieldSpec
// ---------------------------------------------------------------------------

static FIELD_REGISTRY: Lazy<RwLock<HashMap<(u64, usize), Field>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// The canonical `F_{p^k}`: smallest modulus, designated generator. Cached.
pub fn ext_field_make(p: u64, k: usize) -> Result<Field, Error> {
    if !is_prime(p) {
        return Err(Error::BadField(format!("{p} is not prime")));
    }
    if p < 5 {
        return Err(Error::BadField(format!("characteristic {p} < 5")));
    }
    if k < 1 {
        return Err(Error::BadField("extension degree must be >= 1".into()));
    }
    if let Some(f) = FIELD_REGISTRY.read().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let modulus = if k == 1 {
        vec![0, 1]
    } else {
        smallest_irreducible(p, k)
    };
    let f = Arc::new(FieldSpec::with_modulus_unchecked(p, k, modulus));
    FIELD_REGISTRY
        .write()
        .unwrap()
        .insert((p, k), f.clone());
    Ok(f)
}

/// Smallest monic irreducible of degree `k` in lexicographic coefficient
/// order `(c_0, ..., c_{k-1})`.
fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    // c_0 = 0 would make the polynomial divisible by x, so start past it
    let mut coeffs = vec![0u64; k];
    coeffs[0] = 1;
    loop {
        let mut f = coeffs.clone();
        f.push(1);
        if fp_poly_irreducible(&f, p) {
            return f;
        }
        // increment (c_{k-1}, ..., c_0) as little-endian counter on the
        // lexicographic order of (c_0, ..., c_{k-1})
        let mut i = k;
        loop {
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            assert!(i > 0, "no irreducible found");
        }
    }
}

impl FieldSpec {
    fn with_modulus_unchecked(p: u64, k: usize, modulus: Vec<u64>) -> FieldSpec {
        FieldSpec {
            p,
            k,
            modulus,
            generator: OnceCell::new(),
            non_residue: OnceCell::new(),
        }
    }

    /// A field with an explicit modulus; checks irreducibility.
    pub fn with_modulus(p: u64, k: usize, modulus: Vec<u64>) -> Result<Field, Error> {
        if !is_prime(p) || p < 5 {
            return Err(Error::BadField(format!("bad characteristic {p}")));
        }
        if modulus.len() != k + 1 || modulus[k] != 1 {
            return Err(Error::BadField("modulus must be monic of degree k".into()));
        }
        if k > 1 && !fp_poly_irreducible(&modulus, p) {
            return Err(Error::BadField("modulus is reducible".into()));
        }
        Ok(Arc::new(FieldSpec::with_modulus_unchecked(p, k, modulus)))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Field order as a machine word; panics on overflow (use `order_big`
    /// for arbitrarily large extensions).
    pub fn order(&self) -> u64 {
        self.checked_order().expect("field order overflows u64")
    }

    pub fn checked_order(&self) -> Option<u64> {
        self.p.checked_pow(self.k as u32)
    }

    pub fn order_big(&self) -> BigUint {
        BigUint::from(self.p).pow(self.k as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> FqElem {
        FqElem(self.generator.get_or_init(|| self.find_generator()).clone())
    }

    fn find_generator(&self) -> Coeffs {
        let q = self
            .checked_order()
            .expect("generator only available when the field order fits u64");
        let prime_factors: Vec<u64> = factor_u64(q - 1).into_iter().map(|(f, _)| f).collect();
        let mut cand: Coeffs = smallvec![0; self.k];
        loop {
            // increment in lex order on (c_0, ..., c_{k-1})
            let mut i = self.k;
            loop {
                i -= 1;
                cand[i] += 1;
                if cand[i] < self.p {
                    break;
                }
                cand[i] = 0;
                assert!(i > 0, "no generator found");
            }
            let e = FqElem(cand.clone());
            if self.is_zero(&e) {
                continue;
            }
            if prime_factors
                .iter()
                .all(|&l| !self.is_one(&self.pow(&e, (q - 1) / l)))
            {
                return cand;
            }
        }
    }

    // -- element constructors ------------------------------------------------

    pub fn zero(&self) -> FqElem {
        FqElem(smallvec![0; self.k])
    }

    pub fn one(&self) -> FqElem {
        let mut c: Coeffs = smallvec![0; self.k];
        c[0] = 1;
        FqElem(c)
    }

    pub fn from_u64(&self, n: u64) -> FqElem {
        let mut c: Coeffs = smallvec![0; self.k];
        c[0] = n % self.p;
        FqElem(c)
    }

    pub fn from_i64(&self, n: i64) -> FqElem {
        let m = n.rem_euclid(self.p as i64) as u64;
        self.from_u64(m)
    }

    /// Element from residue coefficients `(c_0, ..., c_{k-1})` (shorter is padded).
    pub fn from_coeffs(&self, cs: &[u64]) -> FqElem {
        assert!(cs.len() <= self.k, "residue degree too high");
        let mut c: Coeffs = smallvec![0; self.k];
        for (i, &x) in cs.iter().enumerate() {
            c[i] = x % self.p;
        }
        FqElem(c)
    }

    // -- predicates ----------------------------------------------------------

    pub fn is_zero(&self, a: &FqElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &FqElem) -> bool {
        a.0[0] == 1 && a.0[1..].iter().all(|&c| c == 0)
    }

    // -- arithmetic ----------------------------------------------------------

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(
            a.0.iter()
                .zip(b.0.iter())
                .map(|(&x, &y)| addp(x, y, self.p))
                .collect(),
        )
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(
            a.0.iter()
                .zip(b.0.iter())
                .map(|(&x, &y)| subp(x, y, self.p))
                .collect(),
        )
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        FqElem(a.0.iter().map(|&x| if x == 0 { 0 } else { self.p - x }).collect())
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        if self.k == 1 {
            let mut c: Coeffs = smallvec![mulp(a.0[0], b.0[0], self.p)];
            c.truncate(1);
            return FqElem(c);
        }
        let p = self.p;
        let mut prod = vec![0u64; 2 * self.k - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = addp(prod[i + j], mulp(x, y, p), p);
            }
        }
        // reduce by the monic modulus
        for d in (self.k..prod.len()).rev() {
            let c = prod[d];
            if c != 0 {
                prod[d] = 0;
                for i in 0..self.k {
                    prod[d - self.k + i] = subp(prod[d - self.k + i], mulp(c, self.modulus[i], p), p);
                }
            }
        }
        prod.truncate(self.k);
        FqElem(prod.into_iter().collect())
    }

    pub fn mul_scalar(&self, a: &FqElem, s: u64) -> FqElem {
        FqElem(a.0.iter().map(|&x| mulp(x, s, self.p)).collect())
    }

    pub fn pow(&self, a: &FqElem, mut e: u64) -> FqElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: &FqElem, e: &BigUint) -> FqElem {
        let mut base = a.clone();
        let mut acc = self.one();
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
        }
        acc
    }

    pub fn inv(&self, a: &FqElem) -> FqElem {
        assert!(!self.is_zero(a), "inverse of zero");
        if self.k == 1 {
            return self.from_u64(invp(a.0[0], self.p));
        }
        // extended Euclid on the residue polynomial and the modulus
        let p = self.p;
        let mut r0: Vec<u64> = self.modulus.clone();
        let mut r1: Vec<u64> = a.0.to_vec();
        fp_poly_trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = fp_poly_divrem(&r0, &r1, p);
            let s = fp_poly_sub(&s0, &fp_poly_mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is the gcd: a nonzero constant since the modulus is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = invp(r0[0], p);
        let mut out: Coeffs = smallvec![0; self.k];
        for (i, &x) in s0.iter().enumerate() {
            out[i] = mulp(x, c, p);
        }
        FqElem(out)
    }

    pub fn div(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.mul(a, &self.inv(b))
    }

    /// Frobenius `x -> x^p` applied `e` times.
    pub fn frobenius(&self, a: &FqElem, e: usize) -> FqElem {
        let mut r = a.clone();
        for _ in 0..e {
            r = self.pow(&r, self.p);
        }
        r
    }

    /// Smallest `d | k` such that `a` lies in `F_{p^d}` (as a subfield of this field).
    pub fn min_subfield_degree(&self, a: &FqElem) -> usize {
        for d in 1..=self.k {
            if self.k % d != 0 {
                continue;
            }
            let mut x = a.clone();
            for _ in 0..d {
                x = self.pow(&x, self.p);
            }
            if &x == a {
                return d;
            }
        }
        self.k
    }

    /// Is `a` a square in this field? (odd characteristic)
    pub fn is_square(&self, a: &FqElem) -> bool {
        if self.is_zero(a) {
            return true;
        }
        match self.checked_order() {
            Some(q) => self.is_one(&self.pow(a, (q - 1) / 2)),
            None => {
                let e = (self.order_big() - 1u32) >> 1;
                self.is_one(&self.pow_big(a, &e))
            }
        }
    }

    /// Square root if it exists, the one with lexicographically smaller
    /// coefficient vector.
    pub fn sqrt(&self, a: &FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if !self.is_square(a) {
            return None;
        }
        // q mod 4 from p mod 4 and the parity of k
        let q_mod4 = if self.p % 4 == 3 && self.k % 2 == 1 { 3 } else { 1 };
        let r = if q_mod4 == 3 {
            let e = (self.order_big() + 1u32) >> 2;
            self.pow_big(a, &e)
        } else {
            self.tonelli_shanks(a)
        };
        let nr = self.neg(&r);
        Some(if r.0 <= nr.0 { r } else { nr })
    }

    fn tonelli_shanks(&self, a: &FqElem) -> FqElem {
        let qm1 = self.order_big() - 1u32;
        let s = qm1.trailing_zeros().unwrap() as u32;
        let t = &qm1 >> s;
        let mut c = self.pow_big(&self.non_residue(), &t);
        let mut r = self.pow_big(a, &((&t + 1u32) >> 1));
        let mut x = self.pow_big(a, &t);
        let mut m = s;
        while !self.is_one(&x) {
            let mut i = 0;
            let mut e = x.clone();
            while !self.is_one(&e) {
                e = self.mul(&e, &e);
                i += 1;
            }
            let b = self.pow(&c, 1 << (m - i - 1));
            r = self.mul(&r, &b);
            c = self.mul(&b, &b);
            x = self.mul(&x, &c);
            m = i;
        }
        r
    }

    /// The designated quadratic non-residue: the lexicographically smallest
    /// coefficient vector that is not a square.
    pub fn non_residue(&self) -> FqElem {
        FqElem(
            self.non_residue
                .get_or_init(|| {
                    let mut cand: Coeffs = smallvec![0; self.k];
                    loop {
                        let mut i = self.k;
                        loop {
                            i -= 1;
                            cand[i] += 1;
                            if cand[i] < self.p {
                                break;
                            }
                            cand[i] = 0;
                            assert!(i > 0, "no non-residue found");
                        }
                        let e = FqElem(cand.clone());
                        if !self.is_zero(&e) && !self.is_square(&e) {
                            return cand;
                        }
                    }
                })
                .clone(),
        )
    }

    pub fn fmt_elem(&self, a: &FqElem) -> String {
        if self.k == 1 {
            format!("{}", a.0[0])
        } else {
            let parts: Vec<String> = a.0.iter().map(|c| c.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

// ---------------------------------------------------------------------------
// embeddings between canonical fields
// ---------------------------------------------------------------------------

static EMBEDDING_REGISTRY: Lazy<RwLock<HashMap<(u64, usize, usize), FqElem>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Image of the residue-class generator of `F_{p^a}` inside the canonical
/// `F_{p^b}` (requires `a | b`). Deterministic: smallest root of the small
/// modulus in coefficient-lex order.
pub fn embedding_root(p: u64, a: usize, b: usize) -> Result<FqElem, Error> {
    assert!(b % a == 0, "no embedding F_p^{a} -> F_p^{b}");
    if let Some(r) = EMBEDDING_REGISTRY.read().unwrap().get(&(p, a, b)) {
        return Ok(r.clone());
    }
    let small = ext_field_make(p, a)?;
    let big = ext_field_make(p, b)?;
    // roots of the small modulus inside the big field
    let coeffs: Vec<FqElem> = small.modulus().iter().map(|&c| big.from_u64(c)).collect();
    let mut roots = crate::unipoly::UniPoly::from_coeffs(&big, coeffs).roots_in_field();
    roots.sort_by(|x, y| x.0.cmp(&y.0));
    let root = roots.into_iter().next().ok_or_else(|| {
        Error::Internal("modulus has no root in the extension".into())
    })?;
    EMBEDDING_REGISTRY
        .write()
        .unwrap()
        .insert((p, a, b), root.clone());
    Ok(root)
}

/// Embed an element of canonical `F_{p^a}` into canonical `F_{p^b}`.
pub fn embed(src: &FieldSpec, dst: &Field, e: &FqElem) -> FqElem {
    assert_eq!(src.p(), dst.p());
    assert_eq!(e.0.len(), src.k(), "element does not belong to the source field");
    if src.k() == dst.k() {
        return e.clone();
    }
    let root = embedding_root(src.p(), src.k(), dst.k()).expect("embedding");
    // Horner on the residue polynomial
    let mut acc = dst.zero();
    for &c in e.0.iter().rev() {
        acc = dst.mul(&acc, &root);
        acc = dst.add(&acc, &dst.from_u64(c));
    }
    acc
}

/// Restrict an element of canonical `F_{p^b}` to canonical `F_{p^a}` if it
/// actually lies in the subfield image; returns None otherwise.
pub fn restrict(src: &Field, dst: &Field, e: &FqElem) -> Option<FqElem> {
    if src.k() == dst.k() {
        return Some(e.clone());
    }
    assert!(src.k() % dst.k() == 0);
    // brute-force-free: solve linear system over F_p expressing e in the
    // basis root^i of the embedded subfield
    let root = embedding_root(src.p(), dst.k(), src.k()).ok()?;
    let mut pows = Vec::with_capacity(dst.k());
    let mut acc = src.one();
    for _ in 0..dst.k() {
        pows.push(acc.clone());
        acc = src.mul(&acc, &root);
    }
    // k x dst.k system over F_p
    let p = src.p();
    let rows = src.k();
    let cols = dst.k();
    let mut m = vec![vec![0u64; cols + 1]; rows];
    for (j, pw) in pows.iter().enumerate() {
        for i in 0..rows {
            m[i][j] = pw.0[i];
        }
    }
    for i in 0..rows {
        m[i][cols] = e.0[i];
    }
    // gaussian elimination
    let mut piv_rows = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) {
            m.swap(r, pr);
            let inv = invp(m[r][c], p);
            for x in m[r].iter_mut() {
                *x = mulp(*x, inv, p);
            }
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..=cols {
                        let s = mulp(f, m[r][j], p);
                        m[i][j] = subp(m[i][j], s, p);
                    }
                }
            }
            piv_rows.push((r, c));
            r += 1;
        }
    }
    // consistency
    for i in r..rows {
        if m[i][cols] != 0 {
            return None;
        }
    }
    let mut sol = vec![0u64; cols];
    for &(rr, cc) in &piv_rows {
        sol[cc] = m[rr][cols];
    }
    Some(dst.from_coeffs(&sol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = ext_field_make(97, 1).unwrap();
        let a = f.from_u64(50);
        let b = f.from_u64(60);
        assert_eq!(f.add(&a, &b), f.from_u64(13));
        assert_eq!(f.mul(&a, &b), f.from_u64(3000 % 97));
        assert!(f.is_one(&f.mul(&a, &f.inv(&a))));
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(ext_field_make(96, 1).is_err());
        assert!(ext_field_make(3, 1).is_err());
        assert!(ext_field_make(2, 4).is_err());
    }

    #[test]
    fn f49_generator_order() {
        let f = ext_field_make(7, 2).unwrap();
        assert_eq!(f.order(), 49);
        let g = f.generator();
        // exhaustive order check
        let mut x = f.one();
        let mut order = 0;
        for i in 1..=48 {
            x = f.mul(&x, &g);
            if f.is_one(&x) {
                order = i;
                break;
            }
        }
        assert_eq!(order, 48);
    }

    #[test]
    fn f97_cubed_field_axioms_random() {
        use rand::{Rng, SeedableRng};
        let f = ext_field_make(97, 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let a = f.from_coeffs(&[rng.gen_range(0..97), rng.gen_range(0..97), rng.gen_range(0..97)]);
            let b = f.from_coeffs(&[rng.gen_range(0..97), rng.gen_range(0..97), rng.gen_range(0..97)]);
            let c = f.from_coeffs(&[rng.gen_range(0..97), rng.gen_range(0..97), rng.gen_range(0..97)]);
            assert_eq!(f.mul(&a, &f.mul(&b, &c)), f.mul(&f.mul(&a, &b), &c));
            assert_eq!(
                f.mul(&a, &f.add(&b, &c)),
                f.add(&f.mul(&a, &b), &f.mul(&a, &c))
            );
            assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
            if !f.is_zero(&a) {
                assert!(f.is_one(&f.mul(&a, &f.inv(&a))));
            }
        }
    }

    #[test]
    fn frobenius_fixes_prime_subfield_only() {
        let f = ext_field_make(7, 2).unwrap();
        let mut fixed = 0;
        for a in 0..7u64 {
            for b in 0..7u64 {
                let e = f.from_coeffs(&[a, b]);
                if f.frobenius(&e, 1) == e {
                    fixed += 1;
                }
            }
        }
        assert_eq!(fixed, 7);
    }

    #[test]
    fn sqrt_roundtrip() {
        let f = ext_field_make(97, 1).unwrap();
        for n in 0..97u64 {
            let a = f.from_u64(n);
            if let Some(r) = f.sqrt(&a) {
                assert_eq!(f.mul(&r, &r), a);
            } else {
                assert!(!f.is_square(&a));
            }
        }
    }
}
