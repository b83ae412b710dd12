//! Homogeneous binary forms in `(t0, t1)` and the square-root of a binary
//! sextic via its triangular coefficient system.

use crate::field::{Field, FqElem};
use crate::unipoly::{uni_roots, ExtRoot, UniPoly};

/// Homogeneous of degree `degree`; coefficient `c[i]` multiplies
/// `t0^(degree-i) t1^i`, so there are exactly `degree + 1` slots.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm {
    pub field: Field,
    pub degree: usize,
    pub coeffs: Vec<FqElem>,
}

impl std::fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                format!(
                    "{}*t0^{}t1^{}",
                    self.field.fmt_elem(c),
                    self.degree - i,
                    i
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl BinaryForm {
    pub fn new(field: &Field, degree: usize, coeffs: Vec<FqElem>) -> BinaryForm {
        assert_eq!(coeffs.len(), degree + 1, "binary form slot count");
        BinaryForm {
            field: field.clone(),
            degree,
            coeffs,
        }
    }

    pub fn zero(field: &Field, degree: usize) -> BinaryForm {
        BinaryForm::new(field, degree, vec![field.zero(); degree + 1])
    }

    pub fn from_u64s(field: &Field, cs: &[u64]) -> BinaryForm {
        BinaryForm::new(
            field,
            cs.len() - 1,
            cs.iter().map(|&c| field.from_u64(c)).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let f = &self.field;
        let deg = self.degree + other.degree;
        let mut out = vec![f.zero(); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        BinaryForm::new(f, deg, out)
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree, other.degree);
        let f = &self.field;
        BinaryForm::new(
            f,
            self.degree,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree, other.degree);
        let f = &self.field;
        BinaryForm::new(
            f,
            self.degree,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f.sub(a, b))
                .collect(),
        )
    }

    pub fn scale(&self, s: &FqElem) -> BinaryForm {
        let f = &self.field;
        BinaryForm::new(
            f,
            self.degree,
            self.coeffs.iter().map(|c| f.mul(c, s)).collect(),
        )
    }

    pub fn eval(&self, t0: &FqElem, t1: &FqElem) -> FqElem {
        let f = &self.field;
        let mut acc = f.zero();
        let mut pow1 = f.one();
        // sum c_i t0^(d-i) t1^i, computed as two Horner sweeps
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            terms.push(f.mul(c, &pow1));
            pow1 = f.mul(&pow1, t1);
        }
        for t in terms.iter().rev() {
            acc = f.mul(&acc, t0);
            acc = f.add(&acc, t);
        }
        // the loop above multiplied by t0 once per slot past the first,
        // giving sum c_i t0^(d-i) t1^i as required
        acc
    }

    /// Dehomogenization in `x = t1/t0`: `f = t0^degree * u(x)`.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::from_coeffs(&self.field, self.coeffs.clone())
    }

    pub fn from_unipoly(u: &UniPoly, degree: usize) -> BinaryForm {
        assert!(u.degree() <= degree as isize);
        let mut coeffs = u.coeffs.clone();
        coeffs.resize(degree + 1, u.field.zero());
        BinaryForm::new(&u.field, degree, coeffs)
    }

    /// GCD as binary forms (monic in the sense of first nonzero coefficient 1).
    pub fn gcd(&self, other: &BinaryForm) -> BinaryForm {
        let f = &self.field;
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let ua = self.dehomogenize();
        let ub = other.dehomogenize();
        // extra t0 power: t0-valuation is degree - deg(u)
        let v0 = (self.degree as isize - ua.degree()).min(other.degree as isize - ub.degree());
        let g = ua.gcd(&ub);
        let deg = g.degree() as usize + v0 as usize;
        let mut coeffs = g.coeffs.clone();
        coeffs.resize(deg + 1, f.zero());
        BinaryForm::new(f, deg, coeffs).normalized()
    }

    /// Normalize so the first nonzero coefficient is 1. Returns self for zero.
    pub fn normalized(&self) -> BinaryForm {
        let f = &self.field;
        match self.coeffs.iter().find(|c| !f.is_zero(c)) {
            Some(c) => self.scale(&f.inv(c)),
            None => self.clone(),
        }
    }

    /// Projective roots `(t0 : t1)` with multiplicity, over extensions.
    /// The point `(0 : 1)` accounts for the drop in dehomogenized degree.
    pub fn projective_roots(&self) -> Vec<(ExtRoot, ExtRoot)> {
        assert!(!self.is_zero());
        let f = &self.field;
        let u = self.dehomogenize();
        let mut out = Vec::new();
        let inf_mult = self.degree as isize - u.degree();
        if inf_mult > 0 {
            out.push((
                ExtRoot {
                    field: f.clone(),
                    value: f.zero(),
                    multiplicity: inf_mult as usize,
                    rel_degree: 1,
                },
                ExtRoot {
                    field: f.clone(),
                    value: f.one(),
                    multiplicity: inf_mult as usize,
                    rel_degree: 1,
                },
            ));
        }
        if u.degree() >= 1 {
            for r in uni_roots(&u) {
                // root x = t1/t0 -> point (1 : x)
                out.push((
                    ExtRoot {
                        field: r.field.clone(),
                        value: r.field.one(),
                        multiplicity: r.multiplicity,
                        rel_degree: r.rel_degree,
                    },
                    r,
                ));
            }
        }
        out
    }
}

/// Result of [`binary_sqrt`]: `scalar * root^2 == input`, with `root`
/// normalized so its first nonzero coefficient is 1.
pub struct SqrtResult {
    pub root: BinaryForm,
    pub scalar: FqElem,
}

/// Square root of a degree-6 binary form up to the forced scalar, by the
/// triangular system on the coefficients of `(b0 t0^3 + ... + b3 t1^3)^2`.
///
/// Succeeds iff the sextic is a square of a cubic up to scale (i.e.
/// geometrically a perfect square); the scalar is the leading coefficient
/// and need not itself be a field square.
pub fn binary_sqrt(f: &BinaryForm) -> Option<SqrtResult> {
    assert_eq!(f.degree, 6, "binary_sqrt expects a sextic");
    let field = &f.field;
    if f.is_zero() {
        return None;
    }
    let lead = f.coeffs.iter().position(|c| !field.is_zero(c)).unwrap();
    if lead % 2 != 0 {
        return None;
    }
    let m = lead / 2;
    let scalar = f.coeffs[lead].clone();
    let scalar_inv = field.inv(&scalar);
    let mut b = vec![field.zero(); 4];
    b[m] = field.one();
    let half = field.inv(&field.from_u64(2));
    for j in 1..=(3 - m) {
        // slot 2m+j of scalar * g^2:
        // f[2m+j]/scalar = 2 b_m b_{m+j} + sum_{r+s = 2m+j, m < r,s < m+j} b_r b_s
        let mut known = field.zero();
        for r in (m + 1)..(m + j) {
            let s = 2 * m + j - r;
            if s > m && s < m + j && s < 4 {
                known = field.add(&known, &field.mul(&b[r], &b[s]));
            }
        }
        let rhs = field.sub(&field.mul(&f.coeffs[2 * m + j], &scalar_inv), &known);
        b[m + j] = field.mul(&rhs, &half);
    }
    let g = BinaryForm::new(field, 3, b);
    let check = g.mul(&g).scale(&scalar);
    if &check == f {
        Some(SqrtResult { root: g, scalar })
    } else {
        None
    }
}

/// Literal square root: `h` with `h * h == f`, or `None` if the sextic is
/// not a square over the coefficient field itself.
pub fn literal_binary_sqrt(f: &BinaryForm) -> Option<BinaryForm> {
    let r = binary_sqrt(f)?;
    let s = f.field.sqrt(&r.scalar)?;
    Some(r.root.scale(&s))
}
