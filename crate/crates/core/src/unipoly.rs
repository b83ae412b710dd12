//! Univariate polynomials over `F_q`: arithmetic, factorization, and root
//! extraction over extension fields.
//!
//! Factorization is squarefree decomposition + distinct-degree + equal-degree
//! splitting. The equal-degree split draws from a fixed seeded generator so
//! runs are bit-reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{embed, ext_field_make, Field, FqElem};

const EDF_SEED: u64 = 0x5e71c;

/// Coefficients ascending: `c[0] + c[1] x + ...`. Always trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub field: Field,
    pub coeffs: Vec<FqElem>,
}

impl std::fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{}*x^{}", self.field.fmt_elem(c), i))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl UniPoly {
    pub fn zero(field: &Field) -> UniPoly {
        UniPoly {
            field: field.clone(),
            coeffs: vec![],
        }
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<FqElem>) -> UniPoly {
        let mut p = UniPoly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn from_u64s(field: &Field, cs: &[u64]) -> UniPoly {
        UniPoly::from_coeffs(field, cs.iter().map(|&c| field.from_u64(c)).collect())
    }

    pub fn constant(field: &Field, c: FqElem) -> UniPoly {
        UniPoly::from_coeffs(field, vec![c])
    }

    pub fn x(field: &Field) -> UniPoly {
        UniPoly::from_coeffs(field, vec![field.zero(), field.one()])
    }

    /// `x - a`
    pub fn linear_root(field: &Field, a: &FqElem) -> UniPoly {
        UniPoly::from_coeffs(field, vec![field.neg(a), field.one()])
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if self.field.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lc(&self) -> FqElem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect();
        UniPoly::from_coeffs(f, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect();
        UniPoly::from_coeffs(f, coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        let f = &self.field;
        UniPoly::from_coeffs(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        UniPoly::from_coeffs(f, out)
    }

    pub fn scale(&self, s: &FqElem) -> UniPoly {
        let f = &self.field;
        UniPoly::from_coeffs(f, self.coeffs.iter().map(|c| f.mul(c, s)).collect())
    }

    pub fn divrem(&self, other: &UniPoly) -> (UniPoly, UniPoly) {
        let f = &self.field;
        assert!(!other.is_zero(), "division by zero polynomial");
        let db = other.degree();
        let lb_inv = f.inv(&other.lc());
        let mut rem = self.clone();
        let mut quo = vec![f.zero(); (self.degree() - db + 1).max(0) as usize];
        while rem.degree() >= db && !rem.is_zero() {
            let dr = rem.degree() as usize;
            let c = f.mul(&rem.lc(), &lb_inv);
            let shift = dr - db as usize;
            quo[shift] = c.clone();
            for i in 0..=db as usize {
                let t = f.mul(&c, &other.coeff(i));
                rem.coeffs[shift + i] = f.sub(&rem.coeffs[shift + i], &t);
            }
            rem.trim();
        }
        (UniPoly::from_coeffs(f, quo), rem)
    }

    pub fn rem(&self, other: &UniPoly) -> UniPoly {
        self.divrem(other).1
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.field.inv(&self.lc()))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        let f = &self.field;
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(f);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| f.mul_scalar(c, (i + 1) as u64))
            .collect();
        UniPoly::from_coeffs(f, coeffs)
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.mul(&acc, x);
            acc = f.add(&acc, c);
        }
        acc
    }

    pub fn pow_mod(&self, mut e: u64, m: &UniPoly) -> UniPoly {
        let mut base = self.rem(m);
        let mut acc = UniPoly::constant(&self.field, self.field.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Map coefficients into a larger canonical field over the same prime.
    pub fn embed_into(&self, big: &Field) -> UniPoly {
        UniPoly::from_coeffs(
            big,
            self.coeffs.iter().map(|c| embed(&self.field, big, c)).collect(),
        )
    }

    // -- factorization -------------------------------------------------------

    /// Squarefree decomposition: list of (squarefree factor, multiplicity).
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let f = self.monic();
        let mut out = Vec::new();
        sff_rec(&f, 1, &mut out);
        out
    }

    /// Full factorization into monic irreducibles with multiplicities.
    pub fn factor(&self) -> Vec<(UniPoly, usize)> {
        assert!(!self.is_zero());
        let mut out = Vec::new();
        for (sf, mult) in self.squarefree_decomposition() {
            if sf.degree() < 1 {
                continue;
            }
            for (d, prod) in distinct_degree(&sf) {
                for irr in equal_degree(&prod, d) {
                    out.push((irr, mult));
                }
            }
        }
        out.sort_by(|a, b| {
            a.0.degree()
                .cmp(&b.0.degree())
                .then_with(|| cmp_poly(&a.0, &b.0))
        });
        out
    }

    /// All roots lying in the coefficient field itself, with multiplicity
    /// ignored (distinct roots).
    pub fn roots_in_field(&self) -> Vec<FqElem> {
        let mut roots: Vec<FqElem> = self
            .factor()
            .into_iter()
            .filter(|(g, _)| g.degree() == 1)
            .map(|(g, _)| g.field.neg(&g.coeff(0)))
            .collect();
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        roots.dedup();
        roots
    }
}

fn cmp_poly(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    let ca: Vec<_> = a.coeffs.iter().map(|c| c.0.clone()).collect();
    let cb: Vec<_> = b.coeffs.iter().map(|c| c.0.clone()).collect();
    ca.cmp(&cb)
}

fn sff_rec(f: &UniPoly, base_mult: usize, out: &mut Vec<(UniPoly, usize)>) {
    let field = &f.field;
    if f.degree() < 1 {
        return;
    }
    let df = f.derivative();
    if df.is_zero() {
        // f = g(x^p): take p-th root coefficientwise (x^(p i) -> x^i, c -> c^(1/p))
        let p = field.p();
        let k = field.k() as u32;
        // c^(p^(k-1)) is the p-th root in F_{p^k}
        let root_exp = p.pow(k - 1);
        let mut g_coeffs = Vec::new();
        for (i, c) in f.coeffs.iter().enumerate() {
            if i % p as usize == 0 {
                g_coeffs.push(field.pow(c, root_exp));
            } else {
                assert!(field.is_zero(c));
            }
        }
        let g = UniPoly::from_coeffs(field, g_coeffs);
        sff_rec(&g, base_mult * p as usize, out);
        return;
    }
    let mut c = f.gcd(&df);
    let mut w = f.divrem(&c).0;
    let mut i = 1;
    while w.degree() >= 1 {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0;
        if fac.degree() >= 1 {
            out.push((fac.monic(), base_mult * i));
        }
        w = y.clone();
        c = c.divrem(&y).0;
        i += 1;
    }
    if c.degree() >= 1 {
        sff_rec(&c, base_mult, out); // c is a p-th power at this point
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// returns (d, product of irreducibles of degree d).
fn distinct_degree(f: &UniPoly) -> Vec<(usize, UniPoly)> {
    let field = &f.field;
    let mut out = Vec::new();
    let mut f = f.monic();
    let mut h = UniPoly::x(field).rem(&f);
    let q = field.order_big();
    let mut d = 0usize;
    while f.degree() >= 1 && (d + 1) * 2 <= f.degree() as usize {
        d += 1;
        h = pow_mod_big(&h, &q, &f);
        let diff = h.sub(&UniPoly::x(field).rem(&f));
        let g = diff.gcd(&f);
        if g.degree() >= 1 {
            out.push((d, g.clone()));
            f = f.divrem(&g).0;
            h = h.rem(&f);
        }
    }
    if f.degree() >= 1 {
        out.push((f.degree() as usize, f));
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting (odd q).
fn equal_degree(f: &UniPoly, d: usize) -> Vec<UniPoly> {
    let field = &f.field;
    if f.degree() as usize == d {
        return vec![f.monic()];
    }
    let q = field.order_big();
    let half = (q.pow(d as u32) - 1u32) >> 1;
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED ^ f.degree() as u64);
    loop {
        let a = random_poly(field, f.degree() as usize - 1, &mut rng);
        if a.degree() < 1 {
            continue;
        }
        let b = pow_mod_big(&a, &half, f);
        let b1 = b.sub(&UniPoly::constant(field, field.one()));
        let g = b1.gcd(f);
        if g.degree() >= 1 && g.degree() < f.degree() {
            let rest = f.divrem(&g).0;
            let mut out = equal_degree(&g, d);
            out.extend(equal_degree(&rest, d));
            return out;
        }
    }
}

fn pow_mod_big(a: &UniPoly, e: &num_bigint::BigUint, m: &UniPoly) -> UniPoly {
    let mut base = a.rem(m);
    let mut acc = UniPoly::constant(&a.field, a.field.one());
    for i in 0..e.bits() {
        if e.bit(i) {
            acc = acc.mul(&base).rem(m);
        }
        base = base.mul(&base).rem(m);
    }
    acc
}

fn random_poly(field: &Field, deg: usize, rng: &mut ChaCha8Rng) -> UniPoly {
    let p = field.p();
    let k = field.k();
    let coeffs = (0..=deg)
        .map(|_| {
            let cs: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            field.from_coeffs(&cs)
        })
        .collect();
    UniPoly::from_coeffs(field, coeffs)
}

// ---------------------------------------------------------------------------
// roots over the splitting field
// ---------------------------------------------------------------------------

/// A root of a univariate polynomial, living in a canonical extension.
#[derive(Clone, Debug)]
pub struct ExtRoot {
    /// Canonical field `F_{p^m}` containing the root.
    pub field: Field,
    pub value: FqElem,
    pub multiplicity: usize,
    /// Minimal extension degree over the base field of the input polynomial.
    pub rel_degree: usize,
}

/// Full root multiset over the splitting field. The product of
/// `(x - root)^mult` times the leading coefficient reproduces the input.
pub fn uni_roots(f: &UniPoly) -> Vec<ExtRoot> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    let base = &f.field;
    let mut out = Vec::new();
    for (irr, mult) in f.factor() {
        let d = irr.degree() as usize;
        let m = base.k() * d;
        let big = ext_field_make(base.p(), m).expect("extension field");
        let lifted = irr.embed_into(&big);
        let mut roots = lifted.roots_in_field();
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(roots.len(), d, "irreducible factor must split");
        for r in roots {
            out.push(ExtRoot {
                field: big.clone(),
                value: r,
                multiplicity: mult,
                rel_degree: d,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ext_field_make;

    #[test]
    fn divrem_roundtrip() {
        let f = ext_field_make(97, 1).unwrap();
        let a = UniPoly::from_u64s(&f, &[3, 1, 4, 1, 5, 9]);
        let b = UniPoly::from_u64s(&f, &[2, 7, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn roots_simple() {
        let f = ext_field_make(97, 1).unwrap();
        // x^2 - 1 over F_97 -> {1, 96}
        let p = UniPoly::from_u64s(&f, &[96, 0, 1]);
        let rs = uni_roots(&p);
        let vals: Vec<u64> = rs.iter().map(|r| r.value.0[0]).collect();
        assert_eq!(vals.len(), 2);
        assert!(vals.contains(&1) && vals.contains(&96));
        assert!(rs.iter().all(|r| r.rel_degree == 1 && r.multiplicity == 1));
    }

    #[test]
    fn roots_double() {
        let f = ext_field_make(97, 1).unwrap();
        // (x - 3)^2
        let p = UniPoly::from_u64s(&f, &[9, 97 - 6, 1]);
        let rs = uni_roots(&p);
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].value.0[0], 3);
        assert_eq!(rs[0].multiplicity, 2);
    }

    #[test]
    fn roots_in_extension() {
        let f = ext_field_make(7, 1).unwrap();
        // x^2 + 1 over F_7: irreducible, roots conjugate in F_49
        let p = UniPoly::from_u64s(&f, &[1, 0, 1]);
        let rs = uni_roots(&p);
        assert_eq!(rs.len(), 2);
        for r in &rs {
            assert_eq!(r.rel_degree, 2);
            assert_eq!(r.field.order(), 49);
            let sq = r.field.mul(&r.value, &r.value);
            assert_eq!(sq, r.field.from_i64(-1));
        }
        // brute force over all 49 elements
        let f49 = ext_field_make(7, 2).unwrap();
        let mut count = 0;
        for a in 0..7u64 {
            for b in 0..7u64 {
                let e = f49.from_coeffs(&[a, b]);
                if f49.mul(&e, &e) == f49.from_i64(-1) {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 2);
    }

    #[test]
    fn factor_product_reconstructs() {
        use rand::{Rng, SeedableRng};
        let field = ext_field_make(97, 1).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let deg = rng.gen_range(1..9);
            let cs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..97)).collect();
            let p = UniPoly::from_u64s(&field, &cs);
            if p.degree() < 1 {
                continue;
            }
            let mut prod = UniPoly::constant(&field, p.lc());
            for (irr, m) in p.factor() {
                for _ in 0..m {
                    prod = prod.mul(&irr);
                }
            }
            assert_eq!(prod, p);
        }
    }
}
