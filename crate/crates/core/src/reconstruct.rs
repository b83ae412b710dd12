//! Recovery of eight plane points from a cone space sextic and its 120
//! tritangent planes: quadratic twist, the 240 exceptional curves of the
//! associated sextic surface, their intersection lattice, an orthogonal
//! octet, and the genus-1 divisor map that blows the octet down to the
//! plane.

use crate::binform::{literal_binary_sqrt, BinaryForm};
use crate::construct::{general_position, Config8, SpaceSextic};
use crate::error::Error;
use crate::field::{embed, ext_field_make, restrict, Field, FqElem};
use crate::linalg::Mat;
use crate::multipoly::{
    monomials_of_wdeg, resultant, ring, ring_weighted, MonomialOrder, MultiPoly, Ring,
};
use crate::tritangent::standard_cone_scalar;
use crate::unipoly::UniPoly;

/// The sextic-surface model underlying a cone space sextic: the weighted
/// ring k[s,t,w] (weights 1,1,2), the chosen twist, the twisted branch
/// sextic, and the 120 normalized tritangent pullbacks.
pub struct TwistedSurface {
    pub ring: Ring,
    pub lambda: FqElem,
    /// `lambda * F`, the right-hand side of the surface `r^2 = lambda F`.
    pub lf: MultiPoly,
    /// `h_i = w + c_i(s,t)`, monic in `w`.
    pub hs: Vec<MultiPoly>,
}

/// One of the 240 exceptional curves `Z(w + c, r - rho)` of the surface,
/// graphed over the `(s : t)` line.
#[derive(Clone)]
pub struct ExcCurve {
    /// Index of the tritangent this curve lies over.
    pub tritangent: usize,
    pub sign: bool,
    /// Quadratic part: the curve satisfies `w = -c(s, t)`.
    pub c: BinaryForm,
    /// Cubic part, already signed: the curve satisfies `r = rho(s, t)`.
    pub rho: BinaryForm,
}

fn stw_ring(f: &Field) -> Ring {
    ring_weighted(f, &["s", "t", "w"], &[1, 1, 2], MonomialOrder::GrevLex)
}

/// Pull back the cubic and the 120 planes through the cone parametrization
/// `(x0, x1, x2, x3) = (s^2, s t, t^2, w)` and normalize everything monic
/// in `w`.
pub fn pullback_bundle(
    c: &SpaceSextic,
    ls: &[MultiPoly],
) -> Result<(Ring, MultiPoly, Vec<MultiPoly>), Error> {
    let f = &c.ring.field;
    if standard_cone_scalar(&c.q).is_none() {
        return Err(Error::Validation(
            "quadric cone not in the standard form x1^2 - x0 x2".into(),
        ));
    }
    let stw = stw_ring(f);
    let s2 = MultiPoly::monomial(&stw, vec![2, 0, 0], f.one());
    let st = MultiPoly::monomial(&stw, vec![1, 1, 0], f.one());
    let t2 = MultiPoly::monomial(&stw, vec![0, 2, 0], f.one());
    let w = MultiPoly::var(&stw, 2);
    let imgs = [s2, st, t2, w];
    let fw = c.f.substitute(&stw, &imgs);
    let lead = fw
        .terms
        .iter()
        .find(|(e, _)| e[2] == 3 && e[0] == 0 && e[1] == 0)
        .map(|(_, cc)| cc.clone())
        .filter(|cc| !f.is_zero(cc))
        .ok_or_else(|| {
            Error::Validation("sextic passes through the cone vertex".into())
        })?;
    let big_f = fw.scale(&f.inv(&lead));
    let mut hs = Vec::with_capacity(ls.len());
    for l in ls {
        let h = l.substitute(&stw, &imgs);
        let a = h
            .terms
            .iter()
            .find(|(e, _)| e[2] == 1 && e[0] == 0 && e[1] == 0)
            .map(|(_, cc)| cc.clone())
            .filter(|cc| !f.is_zero(cc))
            .ok_or_else(|| {
                Error::Validation("tritangent plane passes through the cone vertex".into())
            })?;
        hs.push(h.scale(&f.inv(&a)));
    }
    Ok((stw, big_f, hs))
}

/// Resultant of a `w`-monic linear form `h = w + c` and a `w`-cubic `g`
/// with respect to `w`: the evaluation of `g` at `w = -c`, collected as a
/// binary sextic in `(s, t)`.
fn eliminate_w(stw: &Ring, g: &MultiPoly, h: &MultiPoly) -> BinaryForm {
    let f = &stw.field;
    let neg_c = h.sub(&MultiPoly::var(stw, 2)).neg();
    let s = MultiPoly::var(stw, 0);
    let t = MultiPoly::var(stw, 1);
    let evd = g.substitute(stw, &[s, t, neg_c]);
    let mut coeffs = vec![f.zero(); 7];
    for (e, cc) in &evd.terms {
        debug_assert_eq!(e[2], 0);
        debug_assert_eq!(e[0] + e[1], 6);
        coeffs[e[1] as usize] = f.add(&coeffs[e[1] as usize], cc);
    }
    BinaryForm::new(f, 6, coeffs)
}

/// The twist factor: `lambda` in `{1, n}` (n the designated non-residue)
/// such that `Res(h_1, lambda F, w)` is a literal square over the base
/// field. Exactly one of the two classes works when all tritangents are
/// rational.
pub fn twist_lambda(stw: &Ring, big_f: &MultiPoly, h1: &MultiPoly) -> Result<FqElem, Error> {
    let f = &stw.field;
    let res = eliminate_w(stw, big_f, h1);
    for lam in [f.one(), f.non_residue()] {
        if literal_binary_sqrt(&res.scale(&lam)).is_some() {
            return Ok(lam);
        }
    }
    Err(Error::Validation(
        "no quadratic twist splits the first tritangent pair (tritangents not all rational)"
            .into(),
    ))
}

/// The full twisted-surface bundle for a curve and its 120 tritangents.
pub fn twisted_surface(c: &SpaceSextic, ls: &[MultiPoly]) -> Result<TwistedSurface, Error> {
    let (stw, big_f, hs) = pullback_bundle(c, ls)?;
    let lambda = twist_lambda(&stw, &big_f, &hs[0])?;
    let lf = big_f.scale(&lambda);
    Ok(TwistedSurface {
        ring: stw,
        lambda,
        lf,
        hs,
    })
}

/// The 240 exceptional curves: for tritangent `i`, the two components of
/// the surface over `Z(h_i)`, `r = ±rho_i` with `rho_i` the literal square
/// root of the eliminated sextic. Curves `2i` and `2i+1` are the Bertini
/// conjugates over tritangent `i`.
pub fn exceptional_curves(surf: &TwistedSurface) -> Result<Vec<ExcCurve>, Error> {
    let f = &surf.ring.field;
    let mut out = Vec::with_capacity(2 * surf.hs.len());
    for (i, h) in surf.hs.iter().enumerate() {
        let res = eliminate_w(&surf.ring, &surf.lf, h);
        let rho = literal_binary_sqrt(&res).ok_or_else(|| {
            Error::Validation(format!(
                "tritangent pair {} does not split over the base field",
                i
            ))
        })?;
        let neg_c = {
            let c2 = h.sub(&MultiPoly::var(&surf.ring, 2));
            // c(s, t) with h = w + c
            let mut coeffs = vec![f.zero(); 3];
            for (e, cc) in &c2.terms {
                coeffs[e[1] as usize] = f.add(&coeffs[e[1] as usize], cc);
            }
            BinaryForm::new(f, 2, coeffs)
        };
        out.push(ExcCurve {
            tritangent: i,
            sign: true,
            c: neg_c.clone(),
            rho: rho.clone(),
        });
        out.push(ExcCurve {
            tritangent: i,
            sign: false,
            c: neg_c,
            rho: rho.scale(&f.neg(&f.one())),
        });
    }
    Ok(out)
}

/// Intersection degree of two distinct exceptional curves: both are graphs
/// over the `(s : t)` line, so the intersection is the subscheme of the
/// line where both the quadratic and the (signed) cubic parts agree — the
/// degree of the gcd of the two difference forms.
pub fn intersection_degree(a: &ExcCurve, b: &ExcCurve) -> usize {
    let dc = a.c.sub(&b.c);
    let dr = a.rho.sub(&b.rho);
    dc.gcd(&dr).degree
}

/// Gram matrix of the 240 exceptional curves: intersection degrees off the
/// diagonal, -1 on the diagonal.
pub fn gram(es: &[ExcCurve]) -> Vec<Vec<i64>> {
    use rayon::prelude::*;
    let n = es.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        -1
                    } else {
                        intersection_degree(&es[i], &es[j]) as i64
                    }
                })
                .collect()
        })
        .collect()
}

/// The lexicographically least set of eight pairwise-orthogonal curves
/// (pairwise Gram entry 0), by depth-first search in index order.
pub fn orthogonal_octet(m: &[Vec<i64>]) -> Result<[usize; 8], Error> {
    let n = m.len();
    let mut chosen: Vec<usize> = Vec::with_capacity(8);
    fn dfs(m: &[Vec<i64>], n: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == 8 {
            return true;
        }
        for cand in start..n {
            if chosen.iter().all(|&c| m[c][cand] == 0) {
                chosen.push(cand);
                if dfs(m, n, cand + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if !dfs(m, n, 0, &mut chosen) {
        return Err(Error::MathAssertion(
            "no orthogonal octet of exceptional curves found".into(),
        ));
    }
    let mut out = [0usize; 8];
    out.copy_from_slice(&chosen);
    Ok(out)
}

// ---------------------------------------------------------------------------
// the genus-1 curve at t = 0 and its group law
// ---------------------------------------------------------------------------

/// A smooth plane cubic `y^2 z = x^3 + a x^2 z + b x z^2 + c z^3`.
#[derive(Clone, Debug)]
pub struct WeierstrassCurve {
    pub field: Field,
    pub a: FqElem,
    pub b: FqElem,
    pub c: FqElem,
}

/// A point of the cubic: affine `(x, y)` or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EPoint {
    Affine(FqElem, FqElem),
    Infinity,
}

impl WeierstrassCurve {
    pub fn discriminant(&self) -> FqElem {
        // discriminant of x^3 + a x^2 + b x + c:
        // 18abc - 4a^3 c + a^2 b^2 - 4b^3 - 27c^2
        let f = &self.field;
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let t1 = f.mul_scalar(&f.mul(&f.mul(a, b), c), 18);
        let t2 = f.mul_scalar(&f.mul(&f.mul(&f.mul(a, a), a), c), 4);
        let t3 = f.mul(&f.mul(a, a), &f.mul(b, b));
        let t4 = f.mul_scalar(&f.mul(&f.mul(b, b), b), 4);
        let t5 = f.mul_scalar(&f.mul(c, c), 27);
        f.sub(&f.sub(&f.add(&t1, &t3), &t2), &f.add(&t4, &t5))
    }

    /// Defining polynomial in a ring `k[x, y, z]`.
    pub fn cubic(&self, r: &Ring) -> MultiPoly {
        let f = &self.field;
        let mono = |e: [u32; 3], c: FqElem| MultiPoly::monomial(r, e.to_vec(), c);
        mono([0, 2, 1], f.one())
            .sub(&mono([3, 0, 0], f.one()))
            .sub(&mono([2, 0, 1], self.a.clone()))
            .sub(&mono([1, 0, 2], self.b.clone()))
            .sub(&mono([0, 0, 3], self.c.clone()))
    }

    pub fn contains(&self, p: &EPoint) -> bool {
        let f = &self.field;
        match p {
            EPoint::Infinity => true,
            EPoint::Affine(x, y) => {
                let rhs = f.add(
                    &f.add(
                        &f.mul(&f.mul(x, x), x),
                        &f.mul(&self.a, &f.mul(x, x)),
                    ),
                    &f.add(&f.mul(&self.b, x), &self.c),
                );
                f.mul(y, y) == rhs
            }
        }
    }

    pub fn neg(&self, p: &EPoint) -> EPoint {
        match p {
            EPoint::Infinity => EPoint::Infinity,
            EPoint::Affine(x, y) => EPoint::Affine(x.clone(), self.field.neg(y)),
        }
    }

    /// Chord-tangent addition.
    pub fn add(&self, p: &EPoint, q: &EPoint) -> EPoint {
        let f = &self.field;
        let (x1, y1, x2, y2) = match (p, q) {
            (EPoint::Infinity, _) => return q.clone(),
            (_, EPoint::Infinity) => return p.clone(),
            (EPoint::Affine(x1, y1), EPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let slope = if x1 == x2 {
            if f.is_zero(&f.add(y1, y2)) {
                return EPoint::Infinity;
            }
            // tangent: (3 x^2 + 2 a x + b) / (2 y)
            let num = f.add(
                &f.add(
                    &f.mul_scalar(&f.mul(x1, x1), 3),
                    &f.mul_scalar(&f.mul(&self.a, x1), 2),
                ),
                &self.b,
            );
            f.div(&num, &f.mul_scalar(y1, 2))
        } else {
            f.div(&f.sub(y2, y1), &f.sub(x2, x1))
        };
        let x3 = f.sub(
            &f.sub(&f.sub(&f.mul(&slope, &slope), &self.a), x1),
            x2,
        );
        let y3 = f.sub(&f.mul(&slope, &f.sub(x1, &x3)), y1);
        EPoint::Affine(x3, y3)
    }

    /// All rational points (for small fields), by x-sweep.
    pub fn points(&self) -> Vec<EPoint> {
        let f = &self.field;
        let mut out = vec![EPoint::Infinity];
        assert_eq!(f.k(), 1, "point sweep supported over prime fields");
        for xv in 0..f.p() {
            let x = f.from_u64(xv);
            let rhs = f.add(
                &f.add(&f.mul(&f.mul(&x, &x), &x), &f.mul(&self.a, &f.mul(&x, &x))),
                &f.add(&f.mul(&self.b, &x), &self.c),
            );
            if let Some(y) = f.sqrt(&rhs) {
                out.push(EPoint::Affine(x.clone(), y.clone()));
                if !f.is_zero(&y) {
                    out.push(EPoint::Affine(x, f.neg(&y)));
                }
            }
        }
        out
    }

    /// Projective coordinates of a point, infinity at `(0 : 1 : 0)`.
    pub fn proj(&self, p: &EPoint) -> [FqElem; 3] {
        let f = &self.field;
        match p {
            EPoint::Infinity => [f.zero(), f.one(), f.zero()],
            EPoint::Affine(x, y) => [x.clone(), y.clone(), f.one()],
        }
    }
}

/// The genus-1 curve of the surface at `t = 0`, as a Weierstrass cubic:
/// with `lambda F = w^3 + f2 w^2 + f4 w + f6`, the substitution
/// `(x, y, z) = (lambda w s, lambda r, s^3)` turns `r^2 = lambda F` at
/// `t = 0` into `y^2 z = x^3 + lambda f2(1,0) x^2 z + lambda^2 f4(1,0) x z^2
/// + lambda^3 f6(1,0) z^3`.
pub fn restrict_elliptic(surf: &TwistedSurface) -> Result<WeierstrassCurve, Error> {
    let f = &surf.ring.field;
    let lam = &surf.lambda;
    let lam_inv = f.inv(lam);
    // lambda F = lambda w^3 + ...; coefficient of w^d s^(6-2d) t^0
    let coeff = |d: u32| -> FqElem {
        surf.lf
            .terms
            .iter()
            .find(|(e, _)| e[2] == d && e[1] == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| f.zero())
    };
    // plain f2, f4, f6 of the monic F
    let f2 = f.mul(&coeff(2), &lam_inv);
    let f4 = f.mul(&coeff(1), &lam_inv);
    let f6 = f.mul(&coeff(0), &lam_inv);
    let lam2 = f.mul(lam, lam);
    let lam3 = f.mul(&lam2, lam);
    let e = WeierstrassCurve {
        field: f.clone(),
        a: f.mul(lam, &f2),
        b: f.mul(&lam2, &f4),
        c: f.mul(&lam3, &f6),
    };
    if f.is_zero(&e.discriminant()) {
        return Err(Error::Validation(
            "genus-1 curve at t = 0 is singular".into(),
        ));
    }
    Ok(e)
}

/// The single point where an exceptional curve meets `t = 0`, in the
/// Weierstrass coordinates of `restrict_elliptic`.
pub fn point_on_e(surf: &TwistedSurface, ec: &ExcCurve) -> EPoint {
    let f = &surf.ring.field;
    let one = f.one();
    let zero = f.zero();
    // on the curve: w = -c(1, 0), r = rho(1, 0) at (s : t) = (1 : 0)
    let w = f.neg(&ec.c.eval(&one, &zero));
    let r = ec.rho.eval(&one, &zero);
    EPoint::Affine(f.mul(&surf.lambda, &w), f.mul(&surf.lambda, &r))
}

// ---------------------------------------------------------------------------
// divisor map on a plane cubic
// ---------------------------------------------------------------------------

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    let gcd = |mut a: usize, mut b: usize| {
        while b != 0 {
            let r = a % b;
            a = b;
            b = r;
        }
        a
    };
    a / gcd(a, b) * b
}

/// A point of the plane with multiplicity, over an extension field.
#[derive(Clone, Debug)]
pub struct CyclePoint {
    pub field: Field,
    /// Projective coordinates, first nonzero coordinate 1.
    pub point: Vec<FqElem>,
    pub multiplicity: usize,
}

pub(crate) fn normalize_proj(f: &Field, mut v: Vec<FqElem>) -> Vec<FqElem> {
    let lead = v.iter().find(|x| !f.is_zero(x)).cloned().expect("zero vector");
    let inv = f.inv(&lead);
    for x in v.iter_mut() {
        *x = f.mul(x, &inv);
    }
    v
}

/// Conditions matrix: conics (6 monomials of degree 2 in x, y, z) vanishing
/// on the cycle, with multiplicity-2 points imposing tangency along the
/// cubic. Returns the rational kernel as RREF rows over the base field.
fn conics_through(
    base: &Field,
    e3: &MultiPoly,
    cycle: &[CyclePoint],
) -> Result<Mat, Error> {
    let mut deg = base.k();
    for p in cycle {
        deg = lcm(deg, p.field.k());
    }
    let big = ext_field_make(base.p(), deg)?;
    let xyz_big = ring(&big, &["x", "y", "z"], MonomialOrder::GrevLex);
    let monos = monomials_of_wdeg(&xyz_big, 2);
    debug_assert_eq!(monos.len(), 6);
    let lift = |p: &MultiPoly| -> MultiPoly {
        MultiPoly::from_terms(
            &xyz_big,
            p.terms
                .iter()
                .map(|(e, cc)| (e.clone(), embed(base, &big, cc)))
                .collect(),
        )
    };
    let e_big = lift(e3);
    let mut rows: Vec<Vec<FqElem>> = Vec::new();
    for p in cycle {
        let pt: Vec<FqElem> = p.point.iter().map(|x| embed(&p.field, &big, x)).collect();
        rows.push(
            monos
                .iter()
                .map(|e| {
                    let mut acc = big.one();
                    for (i, &x) in e.iter().enumerate() {
                        for _ in 0..x {
                            acc = big.mul(&acc, &pt[i]);
                        }
                    }
                    acc
                })
                .collect(),
        );
        if p.multiplicity >= 3 {
            return Err(Error::Validation(
                "unresolvable multiplicity in a divisor cycle".into(),
            ));
        }
        if p.multiplicity == 2 {
            // tangency along the cubic: derivative in the curve-tangent
            // direction (the kernel of the gradient, away from the point)
            let grad: Vec<FqElem> = (0..3).map(|i| e_big.derivative(i).eval(&pt)).collect();
            let ker = Mat::from_rows(&big, vec![grad]).kernel();
            let mut v: Option<Vec<FqElem>> = None;
            for r in 0..ker.dim() {
                let cand = ker.basis.row(r).to_vec();
                if Mat::from_rows(&big, vec![pt.clone(), cand.clone()]).rank() == 2 {
                    v = Some(cand);
                    break;
                }
            }
            let v = v.ok_or_else(|| {
                Error::Validation("unresolvable multiplicity in a divisor cycle".into())
            })?;
            rows.push(
                monos
                    .iter()
                    .map(|e| {
                        let mono =
                            MultiPoly::monomial(&xyz_big, e.clone(), big.one());
                        let mut acc = big.zero();
                        for i in 0..3 {
                            acc = big.add(
                                &acc,
                                &big.mul(&mono.derivative(i).eval(&pt), &v[i]),
                            );
                        }
                        acc
                    })
                    .collect(),
            );
        }
    }
    rational_kernel(base, &big, rows, 6)
}

/// Kernel of a matrix over an extension, descended to the base field: the
/// solution space is Galois-stable, so trace projections of an extension
/// basis span the rational solutions.
pub(crate) fn rational_kernel(
    base: &Field,
    big: &Field,
    rows: Vec<Vec<FqElem>>,
    cols: usize,
) -> Result<Mat, Error> {
    let ker = Mat::from_rows(big, rows).kernel();
    if big.k() == base.k() {
        let mut rws = Vec::new();
        for r in 0..ker.dim() {
            rws.push(
                ker.basis
                    .row(r)
                    .iter()
                    .map(|x| restrict(big, base, x).unwrap())
                    .collect(),
            );
        }
        let mut m = Mat::from_rows(base, rws);
        m.rref();
        return Ok(m);
    }
    let m_rel = big.k() / base.k();
    let theta = big.generator();
    let mut rational_rows: Vec<Vec<FqElem>> = Vec::new();
    for r in 0..ker.dim() {
        let v: Vec<FqElem> = ker.basis.row(r).to_vec();
        for i in 0..m_rel {
            // trace of theta^i * v over the base field
            let scaled: Vec<FqElem> = v
                .iter()
                .map(|x| big.mul(x, &big.pow(&theta, i as u64)))
                .collect();
            let mut tr = vec![big.zero(); cols];
            let mut cur = scaled;
            for _ in 0..m_rel {
                for (t, c) in tr.iter_mut().zip(cur.iter()) {
                    *t = big.add(t, c);
                }
                cur = cur
                    .iter()
                    .map(|x| big.frobenius(x, base.k()))
                    .collect();
            }
            if let Some(down) = tr
                .iter()
                .map(|x| restrict(big, base, x))
                .collect::<Option<Vec<FqElem>>>()
            {
                if down.iter().any(|x| !base.is_zero(x)) {
                    rational_rows.push(down);
                }
            } else {
                return Err(Error::Internal("trace projection not rational".into()));
            }
        }
    }
    if rational_rows.is_empty() {
        return Ok(Mat::zero(base, 0, cols));
    }
    let mut m = Mat::from_rows(base, rational_rows);
    let pivots = m.rref();
    let rank = pivots.len();
    let rows: Vec<Vec<FqElem>> = (0..rank).map(|r| m.row(r).to_vec()).collect();
    Ok(Mat::from_rows(base, rows))
}

/// Intersection cycle of a conic and the cubic (degree 6 with
/// multiplicity), via the `y`-resultant with deterministic shear retries
/// when fibers collide.
fn conic_cubic_cycle(
    base: &Field,
    g: &MultiPoly,
    e3: &MultiPoly,
) -> Result<Vec<CyclePoint>, Error> {
    let xyz = &g.ring;
    'shear: for tau in 0..base.p().min(30) {
        let tau_e = base.from_u64(tau);
        // x -> x + tau y
        let imgs = vec![
            MultiPoly::var(xyz, 0).add(&MultiPoly::var(xyz, 1).scale(&tau_e)),
            MultiPoly::var(xyz, 1),
            MultiPoly::var(xyz, 2),
        ];
        let gs = g.substitute(xyz, &imgs);
        let es = e3.substitute(xyz, &imgs);
        // (0 : 1 : 0) must avoid both curves so the y-resultant is faithful
        let at_inf = |p: &MultiPoly| -> FqElem {
            let d = p.terms.iter().map(|(e, _)| e[1]).max().unwrap();
            p.terms
                .iter()
                .find(|(e, _)| e[1] == d && e[0] == 0 && e[2] == 0)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(|| base.zero())
        };
        if base.is_zero(&at_inf(&gs)) || base.is_zero(&at_inf(&es)) {
            continue 'shear;
        }
        let res = resultant(&gs, &es, 1);
        // binary form in (x, z)
        let mut coeffs = vec![base.zero(); 7];
        for (e, cc) in &res.terms {
            debug_assert_eq!(e[1], 0);
            coeffs[e[2] as usize] = base.add(&coeffs[e[2] as usize], cc);
        }
        let bf = BinaryForm::new(base, 6, coeffs);
        if bf.is_zero() {
            continue 'shear;
        }
        let mut cycle = Vec::new();
        for (x0, z0) in bf.projective_roots() {
            let pf = x0.field.clone();
            let xb = embed(&x0.field, &pf, &x0.value);
            let zb = embed(&z0.field, &pf, &z0.value);
            // lift y through the gcd of the two slices
            let xyz_big = ring(&pf, &["x", "y", "z"], MonomialOrder::GrevLex);
            let lift = |p: &MultiPoly| -> UniPoly {
                let mut acc: Vec<FqElem> = vec![pf.zero(); 4];
                for (e, cc) in &p.terms {
                    let c_big = embed(base, &pf, cc);
                    let mut v = c_big;
                    for _ in 0..e[0] {
                        v = pf.mul(&v, &xb);
                    }
                    for _ in 0..e[2] {
                        v = pf.mul(&v, &zb);
                    }
                    acc[e[1] as usize] = pf.add(&acc[e[1] as usize], &v);
                }
                let _ = &xyz_big;
                UniPoly::from_coeffs(&pf, acc)
            };
            let gy = lift(&gs);
            let ey = lift(&es);
            let gcd = gy.gcd(&ey);
            if gcd.degree() != 1 {
                continue 'shear;
            }
            let y0 = pf.neg(&pf.div(&gcd.coeff(0), &gcd.coeff(1)));
            // un-shear: original x = x' + tau y
            let tau_big = embed(base, &pf, &tau_e);
            let x_orig = pf.add(&xb, &pf.mul(&tau_big, &y0));
            cycle.push(CyclePoint {
                field: pf.clone(),
                point: normalize_proj(&pf, vec![x_orig, y0, zb]),
                multiplicity: x0.multiplicity,
            });
        }
        // conjugate roots are enumerated individually, so multiplicities
        // must total six
        let sum: usize = cycle.iter().map(|p| p.multiplicity).sum();
        if sum != 6 {
            continue 'shear;
        }
        return Ok(cycle);
    }
    Err(Error::MathAssertion(
        "conic-cubic intersection cycle not computable in any shear".into(),
    ))
}

fn same_point(a: &CyclePoint, b: &CyclePoint, base: &Field) -> bool {
    if a.field.k() != b.field.k() {
        return false;
    }
    if a.field.k() == base.k() {
        return a.point == b.point;
    }
    a.point == b.point
}

/// Basis of `H^0(E, O(D))` for an effective degree-3 divisor `D` on the
/// smooth plane cubic `E`, by the residual-conic construction: pick a conic
/// `G` through `D`, compute the residual cycle `D' = (G . E) - D`, and
/// return the three conics through `D'` (divided by `G`, implicitly). The
/// induced map `P -> (F1 : F2 : F3)` realizes the complete linear system.
pub fn divisor_map(
    base: &Field,
    e3: &MultiPoly,
    d: &[CyclePoint],
) -> Result<[MultiPoly; 3], Error> {
    let ddeg: usize = d.iter().map(|p| p.multiplicity).sum();
    if ddeg != 3 {
        return Err(Error::Validation("divisor must have degree three".into()));
    }
    let gspace = conics_through(base, e3, d)?;
    if gspace.rows != 3 {
        return Err(Error::MathAssertion(format!(
            "conics through the divisor span dimension {}, expected 3",
            gspace.rows
        )));
    }
    let xyz = &e3.ring;
    let monos = monomials_of_wdeg(xyz, 2);
    'gchoice: for gi in 0..gspace.rows {
        let g = MultiPoly::from_terms(
            xyz,
            monos
                .iter()
                .zip(gspace.row(gi).iter())
                .filter(|(_, c)| !base.is_zero(c))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        );
        let cycle = match conic_cubic_cycle(base, &g, e3) {
            Ok(c) => c,
            Err(_) => continue 'gchoice,
        };
        // subtract D
        let mut residual: Vec<CyclePoint> = cycle;
        for p in d {
            let mut need = p.multiplicity;
            for q in residual.iter_mut() {
                if same_point(q, p, base) {
                    let take = need.min(q.multiplicity);
                    q.multiplicity -= take;
                    need -= take;
                }
            }
            if need != 0 {
                continue 'gchoice;
            }
        }
        residual.retain(|p| p.multiplicity > 0);
        let fspace = match conics_through(base, e3, &residual) {
            Ok(m) => m,
            Err(_) => continue 'gchoice,
        };
        if fspace.rows != 3 {
            continue 'gchoice;
        }
        let mk = |r: usize| -> MultiPoly {
            MultiPoly::from_terms(
                xyz,
                monos
                    .iter()
                    .zip(fspace.row(r).iter())
                    .filter(|(_, c)| !base.is_zero(c))
                    .map(|(e, c)| (e.clone(), c.clone()))
                    .collect(),
            )
        };
        return Ok([mk(0), mk(1), mk(2)]);
    }
    Err(Error::MathAssertion(
        "no auxiliary conic yields an independent residual system".into(),
    ))
}

// ---------------------------------------------------------------------------
// the full reconstruction
// ---------------------------------------------------------------------------

/// Outcome of the reconstruction, with the intermediate artifacts exposed
/// for inspection and testing.
pub struct Reconstruction {
    pub surface: TwistedSurface,
    pub curves: Vec<ExcCurve>,
    pub octet: [usize; 8],
    pub e: WeierstrassCurve,
    pub octet_points: Vec<EPoint>,
    pub line_curve: usize,
    pub points: Config8,
}

/// Recover eight plane points from a cone space sextic and its 120
/// tritangent planes: twist, exceptional curves, intersection lattice,
/// orthogonal octet, and the blow-down via the genus-1 divisor map.
pub fn recover_points(c: &SpaceSextic, ls: &[MultiPoly]) -> Result<Reconstruction, Error> {
    let base = &c.ring.field;
    if ls.len() != 120 {
        return Err(Error::Validation(format!(
            "expected 120 tritangent planes, got {}",
            ls.len()
        )));
    }
    let surf = twisted_surface(c, ls)?;
    let es = exceptional_curves(&surf)?;
    let m = gram(&es);
    let octet = orthogonal_octet(&m)?;
    let e = restrict_elliptic(&surf)?;
    let octet_points: Vec<EPoint> = octet
        .iter()
        .map(|&i| point_on_e(&surf, &es[i]))
        .collect();
    for p in &octet_points {
        if !e.contains(p) {
            return Err(Error::MathAssertion(
                "octet point does not lie on the genus-1 curve".into(),
            ));
        }
    }
    // the unique curve meeting exactly the first two octet members once
    let mut line_curve = None;
    for (i, _) in es.iter().enumerate() {
        if octet.contains(&i) {
            continue;
        }
        let ok = octet.iter().enumerate().all(|(j, &oj)| {
            let want = if j < 2 { 1 } else { 0 };
            m[i][oj] == want
        });
        if ok {
            if line_curve.is_some() {
                return Err(Error::MathAssertion(
                    "line class representative not unique".into(),
                ));
            }
            line_curve = Some(i);
        }
    }
    let line_curve = line_curve.ok_or_else(|| {
        Error::MathAssertion("no exceptional curve completes the line class".into())
    })?;
    let pe = point_on_e(&surf, &es[line_curve]);
    if !e.contains(&pe) {
        return Err(Error::MathAssertion(
            "line-class point does not lie on the genus-1 curve".into(),
        ));
    }
    // D = (e ∩ E) + p1 + p2
    let xyz = ring(base, &["x", "y", "z"], MonomialOrder::GrevLex);
    let e3 = e.cubic(&xyz);
    let mut d: Vec<CyclePoint> = Vec::new();
    for p in [&pe, &octet_points[0], &octet_points[1]] {
        let pp = normalize_proj(base, e.proj(p).to_vec());
        match d.iter_mut().find(|q| q.point == pp) {
            Some(q) => q.multiplicity += 1,
            None => d.push(CyclePoint {
                field: base.clone(),
                point: pp,
                multiplicity: 1,
            }),
        }
    }
    let fs = divisor_map(base, &e3, &d)?;
    let mut pts: Vec<[FqElem; 3]> = Vec::with_capacity(8);
    for p in &octet_points {
        let pp = e.proj(p);
        let img: Vec<FqElem> = fs.iter().map(|fi| fi.eval(&pp)).collect();
        if img.iter().all(|x| base.is_zero(x)) {
            return Err(Error::MathAssertion(
                "divisor map undefined at an octet point".into(),
            ));
        }
        let img = normalize_proj(base, img);
        pts.push([img[0].clone(), img[1].clone(), img[2].clone()]);
    }
    let cfg = Config8::new(base, pts)?;
    let rep = general_position(&cfg);
    if !rep.ok {
        return Err(Error::Validation(
            "recovered points are not in general position".into(),
        ));
    }
    Ok(Reconstruction {
        surface: surf,
        curves: es,
        octet,
        e,
        octet_points,
        line_curve,
        points: cfg,
    })
}

/// The projective transformation carrying one 8-point configuration to
/// another, searched over index matchings; `None` when no matching works.
pub fn projective_match(a: &Config8, b: &Config8) -> Option<Mat> {
    let field = &a.field;
    // try the identity indexing first, then all permutations
    let ids: Vec<usize> = (0..8).collect();
    if let Some(m) = match_with(field, a, b, &ids) {
        return Some(m);
    }
    let mut perm = ids;
    permutations(&mut perm, 0, &mut |p| match_with(field, a, b, p))
}

fn permutations(
    perm: &mut Vec<usize>,
    k: usize,
    f: &mut impl FnMut(&[usize]) -> Option<Mat>,
) -> Option<Mat> {
    if k == perm.len() {
        return f(perm);
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        if let Some(m) = permutations(perm, k + 1, f) {
            return Some(m);
        }
        perm.swap(k, i);
    }
    None
}

fn match_with(field: &Field, a: &Config8, b: &Config8, perm: &[usize]) -> Option<Mat> {
    // frame through the first four points of a and of b∘perm
    let pa: Vec<Vec<FqElem>> = (0..4).map(|i| a.points[i].to_vec()).collect();
    let pb: Vec<Vec<FqElem>> = (0..4).map(|i| b.points[perm[i]].to_vec()).collect();
    let fa = frame(field, &pa)?;
    let fb = frame(field, &pb)?;
    let m = mat_mul(field, &fb, &invert(field, &fa)?);
    for i in 4..8 {
        let img = m.mul_vec(&a.points[i].to_vec());
        if !proportional(field, &img, &b.points[perm[i]]) {
            return None;
        }
    }
    Some(m)
}

fn proportional(f: &Field, a: &[FqElem], b: &[FqElem]) -> bool {
    let mut ratio: Option<FqElem> = None;
    for (x, y) in a.iter().zip(b.iter()) {
        match (f.is_zero(x), f.is_zero(y)) {
            (true, true) => {}
            (true, false) | (false, true) => return false,
            (false, false) => {
                let r = f.div(x, y);
                match &ratio {
                    Some(r0) if *r0 != r => return false,
                    Some(_) => {}
                    None => ratio = Some(r),
                }
            }
        }
    }
    ratio.is_some()
}

/// Matrix with columns `mu_i p_i` such that the fourth point is the sum of
/// the scaled first three (the standard projective frame).
fn frame(f: &Field, pts: &[Vec<FqElem>]) -> Option<Mat> {
    let cols = Mat::from_rows(
        f,
        vec![pts[0].clone(), pts[1].clone(), pts[2].clone()],
    )
    .transpose();
    let mu = cols.solve(&pts[3])?;
    if mu.iter().any(|x| f.is_zero(x)) {
        return None;
    }
    let mut m = Mat::zero(f, 3, 3);
    for j in 0..3 {
        for i in 0..3 {
            *m.at_mut(i, j) = f.mul(&pts[j][i], &mu[j]);
        }
    }
    Some(m)
}

fn mat_mul(f: &Field, a: &Mat, b: &Mat) -> Mat {
    let n = a.rows;
    let mut out = Mat::zero(f, n, b.cols);
    for i in 0..n {
        for j in 0..b.cols {
            let mut acc = f.zero();
            for k in 0..b.rows {
                acc = f.add(&acc, &f.mul(a.at(i, k), b.at(k, j)));
            }
            *out.at_mut(i, j) = acc;
        }
    }
    out
}

fn invert(f: &Field, m: &Mat) -> Option<Mat> {
    let n = m.rows;
    let mut cols = Vec::new();
    for j in 0..n {
        let mut e = vec![f.zero(); n];
        e[j] = f.one();
        cols.push(m.solve(&e)?);
    }
    let mut out = Mat::zero(f, n, n);
    for j in 0..n {
        for i in 0..n {
            *out.at_mut(i, j) = cols[j][i].clone();
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct_surface, space_sextic_from_relation};
    use crate::groebner::Budget;
    use crate::solve::scheme_degree;
    use crate::tritangent::tritangents_special;

    fn f97() -> Field {
        ext_field_make(97, 1).unwrap()
    }

    fn paper_setup() -> (SpaceSextic, Vec<MultiPoly>) {
        let f = f97();
        let cfg = Config8::from_ints(
            &f,
            &[
                [1, 0, 0],
                [0, 1, 0],
                [0, 0, 1],
                [1, 1, 1],
                [10, 11, 1],
                [19, -11, 12],
                [15, 19, -20],
                [27, 2, 17],
            ],
        )
        .unwrap();
        let cons = construct_surface(&cfg).unwrap();
        let curve = space_sextic_from_relation(&cons).unwrap();
        let ts = tritangents_special(&cons).unwrap();
        (curve, ts.into_iter().map(|t| t.l).collect())
    }

    #[test]
    fn twist_and_split() {
        let (curve, ls) = paper_setup();
        let surf = twisted_surface(&curve, &ls).unwrap();
        let es = exceptional_curves(&surf).unwrap();
        assert_eq!(es.len(), 240);
        // defining identity: rho^2 == Res(h, lambda F, w) for every curve
        for ec in &es {
            let res = eliminate_w(&surf.ring, &surf.lf, &surf.hs[ec.tritangent]);
            assert_eq!(ec.rho.mul(&ec.rho), res);
        }
    }

    #[test]
    fn printed_octet_curves_present() {
        let (curve, ls) = paper_setup();
        let surf = twisted_surface(&curve, &ls).unwrap();
        let es = exceptional_curves(&surf).unwrap();
        let f = f97();
        // Reference octet: (w-conic, r-cubic) pairs. The source dataset
        // prints these in a different coordinate frame of the surface; the
        // frame change (s, t) -> (11 s + 65 t, s), w -> 95 w (recovered by
        // matching the w-discriminant covariants of the two models)
        // carries them onto our model, with the cubic parts picking up one
        // global unit.
        let printed: [([u64; 3], [u64; 4]); 8] = [
            ([61, 19, 83], [82, 44, 23, 75]),
            ([41, 9, 81], [23, 13, 14, 37]),
            ([45, 36, 90], [0, 54, 18, 13]),
            ([4, 8, 93], [43, 5, 22, 58]),
            ([26, 57, 77], [68, 55, 30, 95]),
            ([96, 22, 66], [81, 41, 20, 5]),
            ([96, 69, 27], [16, 41, 16, 13]),
            ([0, 1, 67], [32, 40, 66, 24]),
        ];
        let st2 = ring(&f, &["s", "t"], MonomialOrder::GrevLex);
        let sub_s = MultiPoly::var(&st2, 0)
            .scale(&f.from_u64(11))
            .add(&MultiPoly::var(&st2, 1).scale(&f.from_u64(65)));
        let sub_t = MultiPoly::var(&st2, 0);
        let compose = |coeffs: &[u64], deg: usize| -> BinaryForm {
            let mut acc = MultiPoly::zero(&st2);
            for (i, &c) in coeffs.iter().enumerate() {
                let term = MultiPoly::monomial(
                    &st2,
                    vec![(deg - i) as u32, i as u32],
                    f.from_u64(c),
                );
                acc = acc.add(&term);
            }
            let sb = acc.substitute(&st2, &[sub_s.clone(), sub_t.clone()]);
            let mut out = vec![f.zero(); deg + 1];
            for (e, cc) in &sb.terms {
                out[e[1] as usize] = f.add(&out[e[1] as usize], cc);
            }
            BinaryForm::new(&f, deg, out)
        };
        let mut mu: Option<FqElem> = None;
        for (wc, rc) in printed {
            // our curves satisfy w = -c, the transformed ones w = 95 * we
            let c_want = compose(&wc, 2).scale(&f.from_u64(2)); // -95 = 2
            let rho_want = compose(&rc, 3);
            let matches: Vec<&ExcCurve> = es.iter().filter(|ec| ec.c == c_want).collect();
            assert_eq!(matches.len(), 2, "conic part not found");
            let lead = rho_want.coeffs.iter().position(|x| !f.is_zero(x)).unwrap();
            let found = matches.iter().find_map(|ec| {
                let ratio = f.div(&ec.rho.coeffs[lead], &rho_want.coeffs[lead]);
                if ec.rho == rho_want.scale(&ratio) {
                    Some(ratio)
                } else {
                    None
                }
            });
            let ratio = found.expect("cubic part not proportional");
            match &mu {
                None => mu = Some(ratio),
                Some(m) => {
                    let neg = f.neg(m);
                    assert!(ratio == *m || ratio == neg, "scaling unit not global");
                }
            }
        }
        // the global unit squares to the ratio of the two twists
        let m = mu.unwrap();
        let m2 = f.mul(&m, &m);
        assert_eq!(f.mul(&m2, &f.from_u64(36)), f.one());
    }

    #[test]
    fn gram_lattice_invariants() {
        let (curve, ls) = paper_setup();
        let surf = twisted_surface(&curve, &ls).unwrap();
        let es = exceptional_curves(&surf).unwrap();
        let m = gram(&es);
        for i in 0..240 {
            assert_eq!(m[i][i], -1);
            for j in 0..240 {
                assert_eq!(m[i][j], m[j][i]);
            }
            // each curve orthogonal to exactly 56 others
            let zeros = (0..240).filter(|&j| j != i && m[i][j] == 0).count();
            assert_eq!(zeros, 56, "row {}", i);
        }
        // Bertini pairs meet with degree 3
        for i in 0..120 {
            assert_eq!(m[2 * i][2 * i + 1], 3);
        }
    }

    #[test]
    fn gram_entries_match_scheme_degree() {
        // independent oracle: affine scheme degree of the two-curve ideal
        // in the chart s = 1 (no sampled pair meets at (s : t) = (0 : 1))
        let (curve, ls) = paper_setup();
        let surf = twisted_surface(&curve, &ls).unwrap();
        let es = exceptional_curves(&surf).unwrap();
        let f = f97();
        let twr = ring(&f, &["t", "w", "r"], MonomialOrder::GrevLex);
        let affine = |ec: &ExcCurve| -> (MultiPoly, MultiPoly) {
            let _t = MultiPoly::var(&twr, 0);
            let w = MultiPoly::var(&twr, 1);
            let r = MultiPoly::var(&twr, 2);
            let bf_poly = |bf: &BinaryForm| -> MultiPoly {
                let mut acc = MultiPoly::zero(&twr);
                for (i, c) in bf.coeffs.iter().enumerate() {
                    acc = acc.add(
                        &MultiPoly::monomial(&twr, vec![i as u32, 0, 0], c.clone()),
                    );
                }
                acc
            };
            (w.add(&bf_poly(&ec.c)), r.sub(&bf_poly(&ec.rho)))
        };
        let budget = Budget::default();
        for (i, j) in [(0usize, 1usize), (0, 2), (0, 7), (3, 10), (5, 200), (100, 233)] {
            let (h1, r1) = affine(&es[i]);
            let (h2, r2) = affine(&es[j]);
            let deg = scheme_degree(&[h1, r1, h2, r2], &budget).unwrap();
            // add any intersection at t = 0 infinity? none: the gcd degree
            // already counts it, so compare through the binary forms
            let dc = es[i].c.sub(&es[j].c);
            let dr = es[i].rho.sub(&es[j].rho);
            let g = dc.gcd(&dr);
            let inf = g.degree - g.dehomogenize().degree() as usize;
            assert_eq!(deg + inf, intersection_degree(&es[i], &es[j]), "({}, {})", i, j);
        }
    }

    #[test]
    fn octet_search_synthetic() {
        // planted octet among noise
        let n = 20;
        let mut m = vec![vec![1i64; n]; n];
        let planted = [2usize, 3, 5, 7, 11, 13, 17, 19];
        for i in 0..n {
            m[i][i] = -1;
        }
        for &a in &planted {
            for &b in &planted {
                if a != b {
                    m[a][b] = 0;
                }
            }
        }
        assert_eq!(orthogonal_octet(&m).unwrap(), planted);
    }

    #[test]
    fn reconstruction_round_trip() {
        let (curve, ls) = paper_setup();
        let rec = recover_points(&curve, &ls).unwrap();
        // -B is the identity on the octet
        let m = gram(&rec.curves);
        for (a, &i) in rec.octet.iter().enumerate() {
            for (b, &j) in rec.octet.iter().enumerate() {
                let want = if a == b { -1 } else { 0 };
                assert_eq!(m[i][j], want);
            }
        }
        // recovered points are in general position and reconstruct a curve
        // with 120 rational tritangents
        let cons2 = construct_surface(&rec.points).unwrap();
        let ts2 = tritangents_special(&cons2).unwrap();
        assert_eq!(ts2.len(), 120);
        let sys = crate::steiner::steiner_from_labels(&ts2).unwrap();
        sys.check(120).unwrap();
    }

    #[test]
    fn printed_points_match_via_printed_matrix() {
        let f = f97();
        let p_prime = Config8::from_ints(
            &f,
            &[
                [35, 48, 1],
                [41, 1, 0],
                [41, 91, 1],
                [61, 1, 0],
                [11, 14, 1],
                [27, 95, 1],
                [52, 80, 1],
                [88, 68, 1],
            ],
        )
        .unwrap();
        let p = Config8::from_ints(
            &f,
            &[
                [1, 0, 0],
                [0, 1, 0],
                [0, 0, 1],
                [1, 1, 1],
                [10, 11, 1],
                [19, -11, 12],
                [15, 19, -20],
                [27, 2, 17],
            ],
        )
        .unwrap();
        let m = projective_match(&p_prime, &p).expect("no match");
        // reference matrix, up to scalar
        let want: [[u64; 3]; 3] = [[34, 61, 39], [27, 3, 75], [34, 61, 53]];
        let ratio = f.div(&f.from_u64(want[0][0]), m.at(0, 0));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(
                    f.mul(m.at(i, j), &ratio),
                    f.from_u64(want[i][j]),
                    "entry ({}, {})",
                    i,
                    j
                );
            }
        }
        // identity configuration matches itself
        let selfm = projective_match(&p, &p).unwrap();
        let r0 = selfm.at(0, 0).clone();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { r0.clone() } else { f.zero() };
                assert_eq!(*selfm.at(i, j), want);
            }
        }
    }

    #[test]
    fn divisor_map_collinearity_matches_group_law() {
        use rand::{Rng, SeedableRng};
        let (curve, ls) = paper_setup();
        let rec = recover_points(&curve, &ls).unwrap();
        let e = &rec.e;
        let f = f97();
        let xyz = ring(&f, &["x", "y", "z"], MonomialOrder::GrevLex);
        let e3 = e.cubic(&xyz);
        // rebuild the divisor map for the reconstruction's divisor D
        let pe = point_on_e(&rec.surface, &rec.curves[rec.line_curve]);
        let mut d: Vec<CyclePoint> = Vec::new();
        for p in [&pe, &rec.octet_points[0], &rec.octet_points[1]] {
            let pp = normalize_proj(&f, e.proj(p).to_vec());
            match d.iter_mut().find(|q| q.point == pp) {
                Some(q) => q.multiplicity += 1,
                None => d.push(CyclePoint {
                    field: f.clone(),
                    point: pp,
                    multiplicity: 1,
                }),
            }
        }
        let fs = divisor_map(&f, &e3, &d).unwrap();
        // group-law oracle: p + q + r ~ D iff the group sums agree
        let target = e.add(&e.add(&pe, &rec.octet_points[0]), &rec.octet_points[1]);
        let all = e.points();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let mut seen_equiv = 0;
        for _ in 0..300 {
            let p = all[rng.gen_range(0..all.len())].clone();
            let q = all[rng.gen_range(0..all.len())].clone();
            let r = all[rng.gen_range(0..all.len())].clone();
            // repeated points need tangency data, not a rank test
            if p == q || q == r || p == r {
                continue;
            }
            // skip triples through a base point of the map
            let imgs: Vec<Vec<FqElem>> = [&p, &q, &r]
                .iter()
                .map(|pt| {
                    let pp = e.proj(pt);
                    fs.iter().map(|fi| fi.eval(&pp)).collect()
                })
                .collect();
            if imgs.iter().any(|im| im.iter().all(|x| f.is_zero(x))) {
                continue;
            }
            let collinear = Mat::from_rows(&f, imgs).rank() < 3;
            let equiv = e.add(&e.add(&p, &q), &r) == target;
            assert_eq!(collinear, equiv, "{:?} {:?} {:?}", p, q, r);
            if equiv {
                seen_equiv += 1;
            }
        }
        // force positives: r := target - p - q
        for _ in 0..30 {
            let p = all[rng.gen_range(0..all.len())].clone();
            let q = all[rng.gen_range(0..all.len())].clone();
            let r = e.add(&target, &e.neg(&e.add(&p, &q)));
            let imgs: Vec<Vec<FqElem>> = [&p, &q, &r]
                .iter()
                .map(|pt| {
                    let pp = e.proj(pt);
                    fs.iter().map(|fi| fi.eval(&pp)).collect()
                })
                .collect();
            if imgs.iter().any(|im| im.iter().all(|x| f.is_zero(x))) {
                continue;
            }
            // distinct points only: a repeated point needs tangency data
            if p == q || q == r || p == r {
                continue;
            }
            let rk = Mat::from_rows(&f, imgs).rank();
            assert!(rk < 3, "equivalent triple not collinear");
            seen_equiv += 1;
        }
        assert!(seen_equiv >= 10);
    }
}
