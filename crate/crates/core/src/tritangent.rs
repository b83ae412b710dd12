//! The 120 tritangent planes of a space sextic: the specialized method for
//! curves built from eight plane points, the generic plane-parameter method,
//! and tangency verification.

use std::collections::HashMap;
use std::sync::Mutex;

use once_cell::sync::Lazy;

use crate::binform::{binary_sqrt, BinaryForm};
use crate::construct::{
    cone_quadric, space_ring, space_sextic_from_relation, vanishing_space, row_to_poly,
    poly_to_row, Construction, SpaceSextic,
};
use crate::error::Error;
use crate::field::{embed, Field, FqElem};
use crate::groebner::Budget;
use crate::linalg::Mat;
use crate::multipoly::{ring, MonomialOrder, MultiPoly, Ring};
use crate::solve::variety_points;

/// Type of a tritangent of a curve built from eight plane points, named by
/// the degrees of the two plane curves whose product is the double sextic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TriType {
    T06,
    T15,
    T24,
    T33,
}

impl TriType {
    pub fn degrees(self) -> (u32, u32) {
        match self {
            TriType::T06 => (0, 6),
            TriType::T15 => (1, 5),
            TriType::T24 => (2, 4),
            TriType::T33 => (3, 3),
        }
    }
}

/// A contact point of a tritangent with the curve, over the canonical
/// extension where it lives.
#[derive(Clone, Debug)]
pub struct ContactPoint {
    pub field: Field,
    /// Projective coordinates, first nonzero coordinate 1.
    pub point: Vec<FqElem>,
    pub multiplicity: usize,
    /// Extension degree over the base field of the curve.
    pub rel_degree: usize,
}

/// A tritangent plane with its provenance data.
#[derive(Clone, Debug)]
pub struct Tritangent {
    /// Field the coefficients of `l` live in (base field or an extension).
    pub field: Field,
    /// The linear form, first nonzero coefficient 1, over `field`.
    pub l: MultiPoly,
    pub ttype: Option<TriType>,
    /// Defining subset of point indices (0-based), empty for generic output.
    pub index_data: Vec<usize>,
    /// Pullback `a w + g0 s^2 + g1 st + g2 t^2` in the weighted plane, when
    /// produced by the specialized pipeline.
    pub h: Option<MultiPoly>,
    pub contact: Vec<ContactPoint>,
}

// ---------------------------------------------------------------------------
// the threefold of perfect-square binary sextics
// ---------------------------------------------------------------------------

/// Coordinate ring `k[a0..a6]` for coefficient vectors of binary sextics.
pub fn square_ring(field: &Field) -> Ring {
    ring(
        field,
        &["a0", "a1", "a2", "a3", "a4", "a5", "a6"],
        MonomialOrder::GrevLex,
    )
}

/// Coefficients of `(b0 t0^3 + b1 t0^2 t1 + b2 t0 t1^2 + b3 t1^3)^2` as
/// quadratics in `k[b0..b3]`.
fn square_coefficients(bring: &Ring) -> Vec<MultiPoly> {
    let b: Vec<MultiPoly> = (0..4).map(|i| MultiPoly::var(bring, i)).collect();
    let mut out = Vec::with_capacity(7);
    for mu in 0..7usize {
        let mut acc = MultiPoly::zero(bring);
        for i in 0..4usize {
            for j in 0..4usize {
                if i + j == mu {
                    acc = acc.add(&b[i].mul(&b[j]));
                }
            }
        }
        out.push(acc);
    }
    out
}

static SQUARE_IDEAL_CACHE: Lazy<Mutex<HashMap<(u64, usize), Vec<MultiPoly>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The 45 minimal quartic generators of the ideal of perfect-square binary
/// sextics in `k[a0..a6]`: the kernel of evaluation of degree-4 monomials on
/// the square parametrization. A binary sextic is a square of a cubic iff
/// its coefficient vector zeroes all 45 quartics.
pub fn perfect_square_ideal(field: &Field) -> Result<Vec<MultiPoly>, Error> {
    let key = (field.p(), field.k());
    if let Some(cached) = SQUARE_IDEAL_CACHE.lock().unwrap().get(&key) {
        return Ok(cached.clone());
    }
    let aring = square_ring(field);
    let bring = ring(field, &["b0", "b1", "b2", "b3"], MonomialOrder::GrevLex);
    let sigma = square_coefficients(&bring);
    // no relation exists in degree < 4; the degree-4 relations form the
    // minimal generating set
    for d in 1..=3u64 {
        if vanishing_combinations(&aring, &bring, &sigma, d)?.len() != 0 {
            return Err(Error::MathAssertion(format!(
                "unexpected degree-{} relation among square coefficients",
                d
            )));
        }
    }
    let quartics = vanishing_combinations(&aring, &bring, &sigma, 4)?;
    if quartics.len() != 45 {
        return Err(Error::MathAssertion(format!(
            "perfect-square ideal has {} minimal quartics, expected 45",
            quartics.len()
        )));
    }
    SQUARE_IDEAL_CACHE
        .lock()
        .unwrap()
        .insert(key, quartics.clone());
    Ok(quartics)
}

/// Degree-`d` forms in `a0..a6` vanishing identically under the substitution
/// `a_mu -> sigma_mu(b)`, via the kernel of the substitution matrix.
fn vanishing_combinations(
    aring: &Ring,
    bring: &Ring,
    sigma: &[MultiPoly],
    d: u64,
) -> Result<Vec<MultiPoly>, Error> {
    let f = &aring.field;
    let amonos = crate::multipoly::monomials_of_wdeg(aring, d);
    let bmonos = crate::multipoly::monomials_of_wdeg(bring, 2 * d);
    let bindex: HashMap<&[u32], usize> = bmonos
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_slice(), i))
        .collect();
    let mut m = Mat::zero(f, bmonos.len(), amonos.len());
    for (col, e) in amonos.iter().enumerate() {
        let mut prod = MultiPoly::one(bring);
        for (mu, &exp) in e.iter().enumerate() {
            if exp > 0 {
                prod = prod.mul(&sigma[mu].pow(exp));
            }
        }
        for (be, c) in &prod.terms {
            let rix = *bindex
                .get(be.as_slice())
                .ok_or_else(|| Error::Internal("substitution degree mismatch".into()))?;
            *m.at_mut(rix, col) = c.clone();
        }
    }
    let ker = m.kernel();
    let mut out = Vec::with_capacity(ker.dim());
    for r in 0..ker.basis.rows {
        let terms: Vec<_> = amonos
            .iter()
            .cloned()
            .zip(ker.basis.row(r).iter().cloned())
            .collect();
        out.push(MultiPoly::from_terms(aring, terms));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// quadric shape
// ---------------------------------------------------------------------------

/// Rank of the symmetric matrix of a quadric (characteristic >= 5) and the
/// singular point when the rank is 3.
pub fn quadric_rank(q: &MultiPoly) -> (usize, Option<Vec<FqElem>>) {
    let f = &q.ring.field;
    let inv2 = f.inv(&f.from_u64(2));
    let n = q.ring.nvars();
    let mut g = Mat::zero(f, n, n);
    for (e, c) in &q.terms {
        let vars: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
        match vars.len() {
            1 => {
                let i = vars[0];
                if e[i] == 2 {
                    *g.at_mut(i, i) = c.clone();
                }
            }
            2 => {
                let (i, j) = (vars[0], vars[1]);
                let half = f.mul(c, &inv2);
                *g.at_mut(i, j) = half.clone();
                *g.at_mut(j, i) = half;
            }
            _ => {}
        }
    }
    let rank = g.rank();
    if rank == n - 1 {
        let ker = g.kernel();
        if ker.dim() == 1 {
            return (rank, Some(ker.basis.row(0).to_vec()));
        }
    }
    (rank, None)
}

/// Scalar `c` such that `q = c (x1^2 - x0 x2)`, when it exists.
pub fn standard_cone_scalar(q: &MultiPoly) -> Option<FqElem> {
    let f = &q.ring.field;
    let cone = cone_quadric(&q.ring);
    let (e, lead) = q.leading_term()?;
    let cone_lead = cone
        .terms
        .iter()
        .find(|(ce, _)| ce == e)
        .map(|(_, c)| c.clone())?;
    let scalar = f.mul(lead, &f.inv(&cone_lead));
    if q == &cone.scale(&scalar) {
        Some(scalar)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// tangency verification
// ---------------------------------------------------------------------------

fn linear_coeffs(l: &MultiPoly) -> Result<Vec<FqElem>, Error> {
    let f = &l.ring.field;
    let n = l.ring.nvars();
    let mut out = vec![f.zero(); n];
    for (e, c) in &l.terms {
        let vars: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
        if vars.len() != 1 || e[vars[0]] != 1 {
            return Err(Error::Validation("not a linear form".into()));
        }
        out[vars[0]] = c.clone();
    }
    if out.iter().all(|c| f.is_zero(c)) {
        return Err(Error::Validation("zero linear form".into()));
    }
    Ok(out)
}

/// Homogeneous 2-variable polynomial to a binary form (coefficient `i` on
/// `v0^(d-i) v1^i`).
fn binary_from_poly2(p: &MultiPoly, d: usize) -> BinaryForm {
    let f = &p.ring.field;
    let mut out = BinaryForm::zero(f, d);
    for (e, c) in &p.terms {
        debug_assert_eq!((e[0] + e[1]) as usize, d);
        out.coeffs[e[1] as usize] = c.clone();
    }
    out
}

/// The binary sextic cut by the plane `l` (with nonzero `x3`-coefficient) on
/// a curve lying on the standard cone, via `(s:t:w) -> (s^2:st:t^2:w)`.
fn cone_section(c: &SpaceSextic, lc: &[FqElem]) -> BinaryForm {
    let f = &c.ring.field;
    let st = ring(&c.ring.field, &["s", "t"], MonomialOrder::GrevLex);
    let s2 = MultiPoly::monomial(&st, vec![2, 0], f.one());
    let stm = MultiPoly::monomial(&st, vec![1, 1], f.one());
    let t2 = MultiPoly::monomial(&st, vec![0, 2], f.one());
    let inv_a = f.inv(&lc[3]);
    let w_img = s2
        .scale(&lc[0])
        .add(&stm.scale(&lc[1]))
        .add(&t2.scale(&lc[2]))
        .scale(&f.neg(&inv_a));
    let sec = c.f.substitute(&st, &[s2, stm, t2, w_img]);
    binary_from_poly2(&sec, 6)
}

fn normalize_coords(f: &Field, mut v: Vec<FqElem>) -> Vec<FqElem> {
    if let Some(c) = v.iter().find(|c| !f.is_zero(c)).cloned() {
        let inv = f.inv(&c);
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
    }
    v
}

/// Check that `l` cuts the curve in three double points and return them.
/// Fails with "not a tritangent" otherwise, and with "plane through vertex"
/// for cone curves when `l` vanishes at the singular point of the quadric.
pub fn verify_tritangent(c: &SpaceSextic, l: &MultiPoly) -> Result<Vec<ContactPoint>, Error> {
    let f = &c.ring.field;
    let lc = linear_coeffs(l)?;
    let (rank, vertex) = quadric_rank(&c.q);
    match rank {
        3 => {
            let v = vertex.ok_or_else(|| Error::Internal("rank-3 quadric without vertex".into()))?;
            let lv = (0..4).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&lc[i], &v[i])));
            if f.is_zero(&lv) {
                return Err(Error::Validation("plane through vertex".into()));
            }
            if standard_cone_scalar(&c.q).is_none() {
                return Err(Error::Validation(
                    "quadric cone not in the standard form x1^2 - x0 x2".into(),
                ));
            }
            let sec = cone_section(c, &lc);
            let sq = binary_sqrt(&sec)
                .ok_or_else(|| Error::Validation("not a tritangent".into()))?;
            let mut contact = Vec::new();
            for (r0, r1) in sq.root.projective_roots() {
                let big = r0.field.clone();
                let lcb: Vec<FqElem> = lc.iter().map(|x| embed(f, &big, x)).collect();
                let s = &r0.value;
                let t = &r1.value;
                let x0 = big.mul(s, s);
                let x1 = big.mul(s, t);
                let x2 = big.mul(t, t);
                let num = big.add(
                    &big.add(&big.mul(&lcb[0], &x0), &big.mul(&lcb[1], &x1)),
                    &big.mul(&lcb[2], &x2),
                );
                let x3 = big.neg(&big.mul(&num, &big.inv(&lcb[3])));
                contact.push(ContactPoint {
                    field: big.clone(),
                    point: normalize_coords(&big, vec![x0, x1, x2, x3]),
                    multiplicity: r0.multiplicity,
                    rel_degree: r0.rel_degree,
                });
            }
            let total: usize = contact.iter().map(|p| p.multiplicity).sum();
            if total != 3 {
                return Err(Error::Internal("contact cycle degree is not 3".into()));
            }
            Ok(contact)
        }
        4 => smooth_quadric_contact(c, &lc),
        _ => Err(Error::Validation("quadric singular beyond cone".into())),
    }
}

/// Contact cycle of a plane with a curve on a smooth quadric: eliminate one
/// variable with the plane, project to a coordinate line via the resultant
/// of the conic and cubic, take the binary square root, and lift its roots.
fn smooth_quadric_contact(c: &SpaceSextic, lc: &[FqElem]) -> Result<Vec<ContactPoint>, Error> {
    let f = &c.ring.field;
    // eliminate the last variable with a nonzero coefficient
    let m = (0..4).rev().find(|&i| !f.is_zero(&lc[i])).unwrap();
    let yring = ring(f, &["y0", "y1", "y2"], MonomialOrder::GrevLex);
    let inv_m = f.inv(&lc[m]);
    let mut images = Vec::new();
    let mut others = Vec::new();
    for v in 0..4 {
        if v != m {
            images.push(MultiPoly::var(&yring, others.len()));
            others.push(v);
        } else {
            images.push(MultiPoly::zero(&yring));
        }
    }
    let mut xm = MultiPoly::zero(&yring);
    for (yi, &v) in others.iter().enumerate() {
        xm = xm.add(&MultiPoly::var(&yring, yi).scale(&lc[v]));
    }
    xm = xm.scale(&f.neg(&inv_m));
    images[m] = xm;
    let qbar = c.q.substitute(&yring, &images);
    let fbar = c.f.substitute(&yring, &images);

    'proj: for j in 0..3usize {
        let others2: Vec<usize> = (0..3).filter(|&v| v != j).collect();
        let res = crate::multipoly::resultant(&qbar, &fbar, j);
        if res.is_zero() {
            continue;
        }
        // res lives in the two remaining variables
        let mut bcoeffs = BinaryForm::zero(f, 6);
        for (e, cc) in &res.terms {
            if e[j] != 0 {
                continue 'proj;
            }
            let d1 = e[others2[1]] as usize;
            if (e[others2[0]] as usize) + d1 != 6 {
                continue 'proj;
            }
            bcoeffs.coeffs[d1] = f.add(&bcoeffs.coeffs[d1], cc);
        }
        if bcoeffs.is_zero() {
            continue;
        }
        let Some(sq) = binary_sqrt(&bcoeffs) else {
            return Err(Error::Validation("not a tritangent".into()));
        };
        let mut contact = Vec::new();
        for (r0, r1) in sq.root.projective_roots() {
            let big = r0.field.clone();
            // univariate slices of qbar, fbar at the projected root
            let slice = |p: &MultiPoly| -> crate::unipoly::UniPoly {
                let maxd = p.deg_in(j).unwrap_or(0) as usize;
                let mut cs = vec![big.zero(); maxd + 1];
                for (e, cc) in &p.terms {
                    let a = e[others2[0]];
                    let b = e[others2[1]];
                    let v = big.mul(
                        &embed(f, &big, cc),
                        &big.mul(&big.pow(&r0.value, a as u64), &big.pow(&r1.value, b as u64)),
                    );
                    let d = e[j] as usize;
                    cs[d] = big.add(&cs[d], &v);
                }
                crate::unipoly::UniPoly::from_coeffs(&big, cs)
            };
            let qs = slice(&qbar);
            let fs = slice(&fbar);
            if qs.is_zero() || fs.is_zero() {
                continue 'proj;
            }
            let g = qs.gcd(&fs);
            if g.degree() != 1 {
                continue 'proj; // projection collision; try another axis
            }
            let yj = big.neg(&big.mul(&g.coeff(0), &big.inv(&g.lc())));
            let mut y = vec![big.zero(); 3];
            y[j] = yj;
            y[others2[0]] = r0.value.clone();
            y[others2[1]] = r1.value.clone();
            // reconstruct the 4-coordinate point
            let mut x = vec![big.zero(); 4];
            for (yi, &v) in others.iter().enumerate() {
                x[v] = y[yi].clone();
            }
            let lcb: Vec<FqElem> = lc.iter().map(|xx| embed(f, &big, xx)).collect();
            let mut num = big.zero();
            for &v in &others {
                num = big.add(&num, &big.mul(&lcb[v], &x[v]));
            }
            x[m] = big.neg(&big.mul(&num, &big.inv(&lcb[m])));
            contact.push(ContactPoint {
                field: big.clone(),
                point: normalize_coords(&big, x),
                multiplicity: r0.multiplicity,
                rel_degree: r0.rel_degree,
            });
        }
        let total: usize = contact.iter().map(|p| p.multiplicity).sum();
        if total != 3 {
            continue;
        }
        return Ok(contact);
    }
    Err(Error::Internal("all coordinate projections degenerate".into()))
}

// ---------------------------------------------------------------------------
// specialized pipeline for curves from eight points
// ---------------------------------------------------------------------------

/// Result of lifting a double plane sextic to a plane in 3-space.
pub struct Lift {
    /// `g0 x0 + g1 x1 + g2 x2 + a x3`, first nonzero coefficient 1.
    pub l: MultiPoly,
    /// `a w + g0 s^2 + g1 s t + g2 t^2` in the weighted plane ring.
    pub h: MultiPoly,
    /// Scalar with `h(s(x), t(x), w(x)) = factor * sextic`.
    pub factor: FqElem,
}

/// Solve `a w + g0 s^2 + g1 st + g2 t^2 = c * sextic` for the plane whose
/// pullback is the given double sextic.
pub fn lift_to_plane(cons: &Construction, sextic: &MultiPoly) -> Result<Lift, Error> {
    let f = &cons.plane.field;
    let plane = &cons.plane;
    let cols = [
        cons.w.clone(),
        cons.s.mul(&cons.s),
        cons.s.mul(&cons.t),
        cons.t.mul(&cons.t),
        sextic.clone(),
    ];
    let col_rows: Vec<Vec<FqElem>> = cols.iter().map(|p| poly_to_row(plane, 6, p)).collect();
    let n = col_rows[0].len();
    let mut m = Mat::zero(f, n, 5);
    for (j, col) in col_rows.iter().enumerate() {
        for i in 0..n {
            *m.at_mut(i, j) = col[i].clone();
        }
    }
    let ker = m.kernel();
    if ker.dim() != 1 {
        return Err(Error::Internal(format!(
            "lift system has kernel dimension {}, expected 1",
            ker.dim()
        )));
    }
    let v = ker.basis.row(0);
    if f.is_zero(&v[4]) {
        return Err(Error::Internal("inconsistent lift".into()));
    }
    // a w + g0 s^2 + g1 st + g2 t^2 - c * sextic = 0 with v = (a,g0,g1,g2,-c)
    let (a, g0, g1, g2) = (v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone());
    let c = f.neg(&v[4]);
    // normalize so l's first nonzero coefficient (x0, x1, x2, x3 order) is 1
    let lead = [&g0, &g1, &g2, &a]
        .into_iter()
        .find(|x| !f.is_zero(x))
        .cloned()
        .unwrap();
    let inv = f.inv(&lead);
    let space = space_ring(f);
    let l = MultiPoly::from_terms(
        &space,
        vec![
            (vec![1, 0, 0, 0], f.mul(&g0, &inv)),
            (vec![0, 1, 0, 0], f.mul(&g1, &inv)),
            (vec![0, 0, 1, 0], f.mul(&g2, &inv)),
            (vec![0, 0, 0, 1], f.mul(&a, &inv)),
        ],
    );
    let h = MultiPoly::from_terms(
        &cons.rel,
        vec![
            (vec![0, 0, 1], f.mul(&a, &inv)),
            (vec![2, 0, 0], f.mul(&g0, &inv)),
            (vec![1, 1, 0], f.mul(&g1, &inv)),
            (vec![0, 2, 0], f.mul(&g2, &inv)),
        ],
    );
    Ok(Lift {
        l,
        h,
        factor: f.mul(&c, &inv),
    })
}

fn unique_form(
    plane: &Ring,
    d: u64,
    conds: &[([FqElem; 3], usize)],
) -> Result<MultiPoly, Error> {
    let space = vanishing_space(plane, d, conds);
    if space.dim() != 1 {
        return Err(Error::MathAssertion(format!(
            "vanishing space not 1-dimensional (degree {}, dim {})",
            d,
            space.dim()
        )));
    }
    Ok(row_to_poly(plane, d, space.basis.row(0)))
}

/// The 120 tritangents of a constructed curve, by type:
/// (0,6) the sextic triple at one point; (1,5) line times quintic;
/// (2,4) conic times quartic; (3,3) two cubics. Each is lifted to a plane
/// and certified by tangency verification.
pub fn tritangents_special(cons: &Construction) -> Result<Vec<Tritangent>, Error> {
    let curve = space_sextic_from_relation(cons)?;
    let f = &cons.plane.field;
    let plane = &cons.plane;
    let pts = &cons.config.points;
    let mut out: Vec<Tritangent> = Vec::with_capacity(120);

    let mut push = |sextic: MultiPoly, ttype: TriType, idx: Vec<usize>| -> Result<(), Error> {
        let lift = lift_to_plane(cons, &sextic)?;
        let contact = verify_tritangent(&curve, &lift.l)?;
        out.push(Tritangent {
            field: f.clone(),
            l: lift.l,
            ttype: Some(ttype),
            index_data: idx,
            h: Some(lift.h),
            contact,
        });
        Ok(())
    };

    // (0,6): sextic vanishing triply at P_i, doubly at the rest
    for i in 0..8 {
        let conds: Vec<([FqElem; 3], usize)> = (0..8)
            .map(|m| (pts[m].clone(), if m == i { 3 } else { 2 }))
            .collect();
        let e6 = unique_form(plane, 6, &conds)?;
        push(e6, TriType::T06, vec![i])?;
    }
    // (1,5): line through P_i, P_j times the quintic double on the rest
    for i in 0..8 {
        for j in (i + 1)..8 {
            let line = unique_form(
                plane,
                1,
                &[(pts[i].clone(), 1), (pts[j].clone(), 1)],
            )?;
            let conds: Vec<([FqElem; 3], usize)> = (0..8)
                .map(|m| (pts[m].clone(), if m == i || m == j { 1 } else { 2 }))
                .collect();
            let quintic = unique_form(plane, 5, &conds)?;
            push(line.mul(&quintic), TriType::T15, vec![i, j])?;
        }
    }
    // (2,4): conic through the complementary five times the quartic double
    // at P_i, P_j, P_k
    for i in 0..8 {
        for j in (i + 1)..8 {
            for k in (j + 1)..8 {
                let five: Vec<([FqElem; 3], usize)> = (0..8)
                    .filter(|&m| m != i && m != j && m != k)
                    .map(|m| (pts[m].clone(), 1))
                    .collect();
                let conic = unique_form(plane, 2, &five)?;
                let conds: Vec<([FqElem; 3], usize)> = (0..8)
                    .map(|m| {
                        (
                            pts[m].clone(),
                            if m == i || m == j || m == k { 2 } else { 1 },
                        )
                    })
                    .collect();
                let quartic = unique_form(plane, 4, &conds)?;
                push(conic.mul(&quartic), TriType::T24, vec![i, j, k])?;
            }
        }
    }
    // (3,3): cubic double at P_i simple away from P_j, and its mirror
    for i in 0..8 {
        for j in (i + 1)..8 {
            let cubic_at = |dbl: usize, skip: usize| -> Result<MultiPoly, Error> {
                let conds: Vec<([FqElem; 3], usize)> = (0..8)
                    .filter(|&m| m != skip)
                    .map(|m| (pts[m].clone(), if m == dbl { 2 } else { 1 }))
                    .collect();
                let cubic = unique_form(plane, 3, &conds)?;
                let val = cubic.eval(&[pts[skip][0].clone(), pts[skip][1].clone(), pts[skip][2].clone()]);
                if f.is_zero(&val) {
                    return Err(Error::MathAssertion(
                        "nonvanishing condition failed for a (3,3) cubic".into(),
                    ));
                }
                Ok(cubic)
            };
            let ci = cubic_at(i, j)?;
            let cj = cubic_at(j, i)?;
            push(ci.mul(&cj), TriType::T33, vec![i, j])?;
        }
    }

    if out.len() != 120 {
        return Err(Error::Internal(format!(
            "specialized pipeline produced {} tritangents",
            out.len()
        )));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// generic pipeline
// ---------------------------------------------------------------------------

/// Push the seven section coefficients through the 45 perfect-square
/// quartics, with memoized pairwise products.
fn quartics_at_sections(
    quartics: &[MultiPoly],
    c: &[MultiPoly],
    uring: &Ring,
) -> Vec<MultiPoly> {
    let mut pair: HashMap<(usize, usize), MultiPoly> = HashMap::new();
    let mut pair_of = |i: usize, j: usize, c: &[MultiPoly]| -> MultiPoly {
        pair.entry((i, j)).or_insert_with(|| c[i].mul(&c[j])).clone()
    };
    let mut out = Vec::with_capacity(quartics.len());
    for q in quartics {
        let mut acc = MultiPoly::zero(uring);
        for (e, coef) in &q.terms {
            let mut idx = Vec::with_capacity(4);
            for (mu, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    idx.push(mu);
                }
            }
            debug_assert_eq!(idx.len(), 4);
            let p1 = pair_of(idx[0], idx[1], c);
            let p2 = pair_of(idx[2], idx[3], c);
            acc = acc.add(&p1.mul(&p2).scale(coef));
        }
        out.push(acc);
    }
    out
}

/// The 120 tritangents of a space sextic by the plane-parameter method:
/// impose that every coordinate projection of the plane section is a perfect
/// square, and solve the resulting system for the plane coefficients.
/// For cone curves, planes through the vertex carry no odd contact cycle,
/// so the chart with unit `x3`-coefficient captures all 120 planes and
/// discards the excess family of cone-tangent planes.
pub fn tritangents_generic(
    c: &SpaceSextic,
    budget: &Budget,
) -> Result<Vec<Tritangent>, Error> {
    let (rank, _) = quadric_rank(&c.q);
    match rank {
        3 => {
            if standard_cone_scalar(&c.q).is_none() {
                return Err(Error::Validation(
                    "quadric cone not in the standard form x1^2 - x0 x2".into(),
                ));
            }
            generic_on_cone(c, budget)
        }
        4 => generic_on_smooth(c, budget),
        _ => Err(Error::Validation("quadric singular beyond cone".into())),
    }
}

fn generic_on_cone(c: &SpaceSextic, budget: &Budget) -> Result<Vec<Tritangent>, Error> {
    let gens = cone_candidate_ideal(c)?;
    let pts = variety_points(&gens, budget)?;
    if pts.len() != 120 {
        return Err(Error::MathAssertion(format!(
            "did not find 120 points (found {})",
            pts.len()
        )));
    }
    let mut out = Vec::with_capacity(120);
    for p in pts {
        let big = p.field.clone();
        let space_big = space_ring(&big);
        let mut coords: Vec<FqElem> = p.coords.clone();
        coords.push(big.one());
        let lead = coords.iter().find(|x| !big.is_zero(x)).cloned().unwrap();
        let inv = big.inv(&lead);
        let l = MultiPoly::from_terms(
            &space_big,
            (0..4)
                .map(|i| {
                    let mut e = vec![0u32; 4];
                    e[i] = 1;
                    (e, big.mul(&coords[i], &inv))
                })
                .collect(),
        );
        let cb = embed_sextic(c, &big);
        let contact = verify_tritangent(&cb, &l)?;
        out.push(Tritangent {
            field: big,
            l,
            ttype: None,
            index_data: Vec::new(),
            h: None,
            contact,
        });
    }
    Ok(out)
}

/// Candidate ideal for planes `u0 x0 + u1 x1 + u2 x2 + x3` tangent at every
/// intersection with a cone curve: the perfect-square quartics applied to
/// the coefficients of the pulled-back section.
pub fn cone_candidate_ideal(c: &SpaceSextic) -> Result<Vec<MultiPoly>, Error> {
    let f = &c.ring.field;
    let mixed = ring(
        f,
        &["u0", "u1", "u2", "s", "t"],
        MonomialOrder::GrevLex,
    );
    let uring = ring(f, &["u0", "u1", "u2"], MonomialOrder::GrevLex);
    let s2 = MultiPoly::monomial(&mixed, vec![0, 0, 0, 2, 0], f.one());
    let stm = MultiPoly::monomial(&mixed, vec![0, 0, 0, 1, 1], f.one());
    let t2 = MultiPoly::monomial(&mixed, vec![0, 0, 0, 0, 2], f.one());
    let u: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::var(&mixed, i)).collect();
    let w_img = u[0]
        .mul(&s2)
        .add(&u[1].mul(&stm))
        .add(&u[2].mul(&t2))
        .neg();
    let section = c.f.substitute(&mixed, &[s2, stm, t2, w_img]);
    // collect coefficients of s^(6-mu) t^mu as polynomials in u
    let mut cs = vec![MultiPoly::zero(&uring); 7];
    for (e, coef) in &section.terms {
        let (es, et) = (e[3], e[4]);
        if es + et != 6 {
            return Err(Error::Internal("section is not a binary sextic".into()));
        }
        let mu = et as usize;
        cs[mu] = cs[mu].add(&MultiPoly::monomial(
            &uring,
            vec![e[0], e[1], e[2]],
            coef.clone(),
        ));
    }
    let quartics = perfect_square_ideal(f)?;
    Ok(quartics_at_sections(&quartics, &cs, &uring))
}

/// Embed a curve's defining forms into an extension field's ring.
pub fn embed_sextic(c: &SpaceSextic, big: &Field) -> SpaceSextic {
    let f = &c.ring.field;
    let space_big = space_ring(big);
    let lift = |p: &MultiPoly| -> MultiPoly {
        MultiPoly::from_terms(
            &space_big,
            p.terms
                .iter()
                .map(|(e, cc)| (e.clone(), embed(f, big, cc)))
                .collect(),
        )
    };
    let (q, fc) = (lift(&c.q), lift(&c.f));
    let _ = lift;
    SpaceSextic {
        ring: space_big,
        q,
        f: fc,
    }
}

// (rank-4 generic pipeline lives in the second half of this module)
fn generic_on_smooth(c: &SpaceSextic, budget: &Budget) -> Result<Vec<Tritangent>, Error> {
    smooth::tritangents(c, budget)
}

mod smooth {
    use super::*;

    /// Transform a rank-4 quadric to `y0 y3 - y1 y2` over the base field:
    /// returns the matrix `S` with `x = S y`. Requires the quadric to be
    /// split (hyperbolic) over the base field.
    pub fn split_transform(q: &MultiPoly) -> Result<Mat, Error> {
        let (rank, _) = quadric_rank(q);
        if rank != 4 {
            return Err(Error::Validation("quadric is not of rank 4".into()));
        }
        let g = gram(q);
        // first hyperbolic pair
        let v1 = isotropic_vector(&g).ok_or_else(|| {
            Error::Validation("quadric has no rational point (not split)".into())
        })?;
        let v4 = hyperbolic_partner(&g, &v1)?;
        // orthogonal complement of span(v1, v4): solve G-orthogonality
        let f2 = &g.field;
        let rows = vec![g.mul_vec(&v1), g.mul_vec(&v4)];
        let comp = Mat::from_rows(f2, rows).kernel();
        if comp.dim() != 2 {
            return Err(Error::Internal("complement dimension".into()));
        }
        let b1 = comp.basis.row(0).to_vec();
        let b2 = comp.basis.row(1).to_vec();
        // restricted 2x2 form
        let q11 = dot(&g, &b1, &b1);
        let q12 = dot(&g, &b1, &b2);
        let q22 = dot(&g, &b2, &b2);
        // find (x, y) with q11 x^2 + 2 q12 x y + q22 y^2 = 0, (x,y) != 0
        let (x, y) = binary_isotropic(f2, &q11, &q12, &q22).ok_or_else(|| {
            Error::Validation("quadric is not split over the base field".into())
        })?;
        let v2: Vec<FqElem> = (0..4)
            .map(|i| f2.add(&f2.mul(&x, &b1[i]), &f2.mul(&y, &b2[i])))
            .collect();
        let v3 = hyperbolic_partner_in(&g, &v2, &b1, &b2)?;
        // scale: want y0 y3 - y1 y2; Gram of target: G(v1,v4)=1/2, G(v2,v3)=-1/2
        let inv2 = f2.inv(&f2.from_u64(2));
        let c14 = dot(&g, &v1, &v4);
        let v4s: Vec<FqElem> = v4.iter().map(|e| f2.mul(e, &f2.mul(&inv2, &f2.inv(&c14)))).collect();
        let c23 = dot(&g, &v2, &v3);
        let neg_half = f2.neg(&inv2);
        let v3s: Vec<FqElem> = v3
            .iter()
            .map(|e| f2.mul(e, &f2.mul(&neg_half, &f2.inv(&c23))))
            .collect();
        // S columns are v1, v2, v3, v4s... target ordering: x = S y with
        // q(x) = y0 y3 - y1 y2: columns (v1, v2, v3s, v4s)
        let mut s = Mat::zero(f2, 4, 4);
        for r in 0..4 {
            *s.at_mut(r, 0) = v1[r].clone();
            *s.at_mut(r, 1) = v2[r].clone();
            *s.at_mut(r, 2) = v3s[r].clone();
            *s.at_mut(r, 3) = v4s[r].clone();
        }
        Ok(s)
    }

    fn gram(q: &MultiPoly) -> Mat {
        let f = &q.ring.field;
        let inv2 = f.inv(&f.from_u64(2));
        let mut g = Mat::zero(f, 4, 4);
        for (e, c) in &q.terms {
            let vars: Vec<usize> = (0..4).filter(|&i| e[i] > 0).collect();
            match vars.len() {
                1 => {
                    let i = vars[0];
                    *g.at_mut(i, i) = c.clone();
                }
                2 => {
                    let (i, j) = (vars[0], vars[1]);
                    let half = f.mul(c, &inv2);
                    *g.at_mut(i, j) = half.clone();
                    *g.at_mut(j, i) = half;
                }
                _ => {}
            }
        }
        g
    }

    fn dot(g: &Mat, a: &[FqElem], b: &[FqElem]) -> FqElem {
        let f = &g.field;
        let gb = g.mul_vec(b);
        (0..a.len()).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&a[i], &gb[i])))
    }

    /// A nonzero isotropic vector of a rank-4 form over F_q, by sweeping the
    /// projective plane sections (every rank-4 quadric over a finite field
    /// has rational points).
    fn isotropic_vector(g: &Mat) -> Option<Vec<FqElem>> {
        let f = &g.field;
        // enumerate projective points (1, a, b, c), (0, 1, b, c), ...
        let elems: Vec<FqElem> = field_elements(f);
        for lead in 0..4usize {
            let mut v = vec![f.zero(); 4];
            v[lead] = f.one();
            let free: Vec<usize> = (lead + 1..4).collect();
            let mut idx = vec![0usize; free.len()];
            loop {
                for (t, &pos) in free.iter().enumerate() {
                    v[pos] = elems[idx[t]].clone();
                }
                if f.is_zero(&dot(g, &v, &v)) {
                    return Some(v);
                }
                // increment the odometer
                let mut t = 0;
                loop {
                    if t == idx.len() {
                        break;
                    }
                    idx[t] += 1;
                    if idx[t] < elems.len() {
                        break;
                    }
                    idx[t] = 0;
                    t += 1;
                }
                if t == idx.len() {
                    break;
                }
            }
        }
        None
    }

    fn field_elements(f: &Field) -> Vec<FqElem> {
        let mut out = vec![f.zero()];
        if f.k() == 1 {
            for a in 1..f.p() {
                out.push(f.from_u64(a));
            }
        } else {
            let gen = f.generator();
            let mut acc = f.one();
            for _ in 0..(f.order() - 1) {
                out.push(acc.clone());
                acc = f.mul(&acc, &gen);
            }
        }
        out
    }

    fn hyperbolic_partner(g: &Mat, v1: &[FqElem]) -> Result<Vec<FqElem>, Error> {
        let f = &g.field;
        // any vector not orthogonal to v1, made isotropic
        let gv = g.mul_vec(v1);
        let j = (0..4)
            .find(|&i| !f.is_zero(&gv[i]))
            .ok_or_else(|| Error::Internal("degenerate form".into()))?;
        let mut w = vec![f.zero(); 4];
        w[j] = f.one();
        make_isotropic(g, v1, w)
    }

    fn hyperbolic_partner_in(
        g: &Mat,
        v2: &[FqElem],
        b1: &[FqElem],
        b2: &[FqElem],
    ) -> Result<Vec<FqElem>, Error> {
        let f = &g.field;
        // within span(b1, b2), find w with G(v2, w) != 0, then make isotropic
        for cand in [b1, b2] {
            if !f.is_zero(&dot(g, v2, cand)) {
                return make_isotropic(g, v2, cand.to_vec());
            }
        }
        Err(Error::Internal("restricted form degenerate".into()))
    }

    fn make_isotropic(g: &Mat, v: &[FqElem], mut w: Vec<FqElem>) -> Result<Vec<FqElem>, Error> {
        let f = &g.field;
        // replace w by w - (G(w,w) / (2 G(v,w))) v
        let gvw = dot(g, v, &w);
        let gww = dot(g, &w, &w);
        let coef = f.neg(&f.mul(&gww, &f.inv(&f.mul(&f.from_u64(2), &gvw))));
        for i in 0..4 {
            w[i] = f.add(&w[i], &f.mul(&coef, &v[i]));
        }
        debug_assert!(f.is_zero(&dot(g, &w, &w)));
        Ok(w)
    }

    fn binary_isotropic(
        f: &Field,
        q11: &FqElem,
        q12: &FqElem,
        q22: &FqElem,
    ) -> Option<(FqElem, FqElem)> {
        if f.is_zero(q11) {
            return Some((f.one(), f.zero()));
        }
        // q11 x^2 + 2 q12 x + q22 = 0 for y = 1
        let disc = f.sub(&f.mul(q12, q12), &f.mul(q11, q22));
        if !f.is_square(&disc) {
            return None;
        }
        let r = f.sqrt(&disc)?;
        let x = f.mul(&f.sub(&r, q12), &f.inv(q11));
        Some((x, f.one()))
    }

    /// Generic tritangents on a split smooth quadric: transform to the Segre
    /// form, project the section along each ruling, impose perfect squares,
    /// and solve for the plane homogeneously chart by chart.
    pub fn tritangents(c: &SpaceSextic, budget: &Budget) -> Result<Vec<Tritangent>, Error> {
        let f = &c.ring.field;
        let s = split_transform(&c.q)?;
        let sinv = invert(&s)?;
        // transformed cubic: g_y(y) = f(S y)
        let space = space_ring(f);
        let yimgs: Vec<MultiPoly> = (0..4)
            .map(|i| {
                let mut acc = MultiPoly::zero(&space);
                for j in 0..4 {
                    acc = acc.add(&MultiPoly::var(&space, j).scale(s.at(i, j)));
                }
                acc
            })
            .collect();
        let fy = c.f.substitute(&space, &yimgs);
        // bidegree (3,3) model B(p, q) via y = (p0 q0, p0 q1, p1 q0, p1 q1)
        let pq = ring(f, &["p0", "p1", "q0", "q1"], MonomialOrder::GrevLex);
        let seg = |a: usize, b: usize| -> MultiPoly {
            let mut e = vec![0u32; 4];
            e[a] += 1;
            e[2 + b] += 1;
            MultiPoly::monomial(&pq, e, f.one())
        };
        let b33 = fy.substitute(&pq, &[seg(0, 0), seg(0, 1), seg(1, 0), seg(1, 1)]);
        // plane u . x = sum_i u_i x_i = lambda(p, q), bilinear (1,1)
        // lambda = q0 (u0 p0 + u2 p1) + q1 (u1 p0 + u3 p1)
        let quartics = perfect_square_ideal(f)?;
        let u4 = ring(f, &["u0", "u1", "u2", "u3"], MonomialOrder::GrevLex);
        let mut all_gens: Vec<Vec<MultiPoly>> = Vec::new();
        for ruling in 0..2 {
            all_gens.push(ruling_quartics(&b33, &quartics, &u4, ruling)?);
        }
        // homogeneous solve chart by chart in u-space
        let mut found: Vec<Vec<(Field, Vec<FqElem>)>> = Vec::new();
        let mut points: Vec<(Field, Vec<FqElem>, usize)> = Vec::new();
        let _ = &mut found;
        for chart in 0..4usize {
            let nfree = 3 - chart;
            let cring_vars: Vec<String> =
                (0..nfree).map(|i| format!("v{}", i)).collect();
            let cvars: Vec<&str> = cring_vars.iter().map(|s| s.as_str()).collect();
            if nfree == 0 {
                // single point u = (0,0,0,1)
                let vals = [f.zero(), f.zero(), f.zero(), f.one()];
                let on_all = all_gens.iter().flatten().all(|g| {
                    f.is_zero(&g.eval(&vals))
                });
                if on_all {
                    points.push((f.clone(), vals.to_vec(), 1));
                }
                continue;
            }
            let cring = ring(f, &cvars, MonomialOrder::GrevLex);
            let mut images = Vec::new();
            for i in 0..4 {
                if i < chart {
                    images.push(MultiPoly::zero(&cring));
                } else if i == chart {
                    images.push(MultiPoly::one(&cring));
                } else {
                    images.push(MultiPoly::var(&cring, i - chart - 1));
                }
            }
            let gens: Vec<MultiPoly> = all_gens
                .iter()
                .flatten()
                .map(|g| g.substitute(&cring, &images))
                .filter(|g| !g.is_zero())
                .collect();
            if gens.is_empty() {
                return Err(Error::MathAssertion(
                    "plane system vanished identically on a chart".into(),
                ));
            }
            let pts = variety_points(&gens, budget)?;
            for p in pts {
                let big = p.field.clone();
                let mut u = vec![big.zero(); 4];
                u[chart] = big.one();
                for (t, x) in p.coords.iter().enumerate() {
                    u[chart + 1 + t] = x.clone();
                }
                points.push((big, u, p.rel_degree));
            }
        }
        if points.len() != 120 {
            return Err(Error::MathAssertion(format!(
                "did not find 120 points (found {})",
                points.len()
            )));
        }
        let mut out = Vec::with_capacity(120);
        for (big, u, _deg) in points {
            // translate back to x-coordinates: l_x(x) = u . y = u . (S^{-1} x)
            let coeffs: Vec<FqElem> = (0..4)
                .map(|j| {
                    let mut acc = big.zero();
                    for i in 0..4 {
                        acc = big.add(
                            &acc,
                            &big.mul(&u[i], &embed(f, &big, sinv.at(i, j))),
                        );
                    }
                    acc
                })
                .collect();
            let space_big = space_ring(&big);
            let lead = coeffs.iter().find(|x| !big.is_zero(x)).cloned().unwrap();
            let inv = big.inv(&lead);
            let l = MultiPoly::from_terms(
                &space_big,
                (0..4)
                    .map(|i| {
                        let mut e = vec![0u32; 4];
                        e[i] = 1;
                        (e, big.mul(&coeffs[i], &inv))
                    })
                    .collect(),
            );
            let cb = embed_sextic(c, &big);
            let contact = verify_tritangent(&cb, &l)?;
            out.push(Tritangent {
                field: big,
                l,
                ttype: None,
                index_data: Vec::new(),
                h: None,
                contact,
            });
        }
        Ok(out)
    }

    /// The 45 perfect-square conditions for the section projected along one
    /// ruling of the Segre quadric.
    fn ruling_quartics(
        b33: &MultiPoly,
        quartics: &[MultiPoly],
        u4: &Ring,
        ruling: usize,
    ) -> Result<Vec<MultiPoly>, Error> {
        let f = &b33.ring.field;
        // mixed ring: u0..u3 and the parameter pair of the ruling kept
        let mixed = ring(
            f,
            &["u0", "u1", "u2", "u3", "z0", "z1"],
            MonomialOrder::GrevLex,
        );
        let u: Vec<MultiPoly> = (0..4).map(|i| MultiPoly::var(&mixed, i)).collect();
        let z0 = MultiPoly::var(&mixed, 4);
        let z1 = MultiPoly::var(&mixed, 5);
        // lambda = q0 A(p) + q1 B(p) with A = u0 p0 + u2 p1, B = u1 p0 + u3 p1.
        // Projecting along q: substitute (q0, q1) = (B, -A) into B33 keeps p;
        // projecting along p: substitute (p0, p1) = (D, -C) with
        // lambda = p0 C(q) + p1 D(q), C = u0 q0 + u1 q1, D = u2 q0 + u3 q1.
        let images: Vec<MultiPoly> = if ruling == 0 {
            let a = u[0].mul(&z0).add(&u[2].mul(&z1));
            let b = u[1].mul(&z0).add(&u[3].mul(&z1));
            vec![z0.clone(), z1.clone(), b, a.neg()]
        } else {
            let c = u[0].mul(&z0).add(&u[1].mul(&z1));
            let d = u[2].mul(&z0).add(&u[3].mul(&z1));
            vec![d, c.neg(), z0.clone(), z1.clone()]
        };
        let section = b33.substitute(&mixed, &images);
        let mut cs = vec![MultiPoly::zero(u4); 7];
        for (e, coef) in &section.terms {
            let (e0, e1) = (e[4], e[5]);
            if e0 + e1 != 6 {
                return Err(Error::Internal("ruling section is not a sextic".into()));
            }
            cs[e1 as usize] = cs[e1 as usize].add(&MultiPoly::monomial(
                u4,
                e[..4].to_vec(),
                coef.clone(),
            ));
        }
        Ok(quartics_at_sections(quartics, &cs, u4))
    }

    fn invert(m: &Mat) -> Result<Mat, Error> {
        let f = &m.field;
        let n = m.rows;
        let mut cols = Vec::new();
        for j in 0..n {
            let mut e = vec![f.zero(); n];
            e[j] = f.one();
            let x = m
                .solve(&e)
                .ok_or_else(|| Error::Internal("singular transform".into()))?;
            cols.push(x);
        }
        let mut out = Mat::zero(f, n, n);
        for j in 0..n {
            for i in 0..n {
                *out.at_mut(i, j) = cols[j][i].clone();
            }
        }
        Ok(out)
    }
}
