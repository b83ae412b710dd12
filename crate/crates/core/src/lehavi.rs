//! Recovery of the defining equations of a space sextic from its Steiner
//! system alone: the unique quadric through intersections of the block
//! subspaces, and a cubic through the node structure of Cayley cubics.

use crate::construct::{poly_to_row, row_to_poly, space_ring};
use crate::error::Error;
use crate::field::{embed, ext_field_make, restrict, Field, FqElem};
use crate::groebner::Budget;
use crate::linalg::{Mat, Subspace};
use crate::multipoly::{monomials_of_wdeg, ring, MonomialOrder, MultiPoly, Ring};
use crate::reconstruct::{lcm, normalize_proj, rational_kernel};
use crate::solve::variety_points;
use crate::steiner::SteinerSystem;
use crate::tritangent::Tritangent;

/// Galois descent of a base-rational row space: the rows live over an
/// extension, but their span is stable under Frobenius; the returned
/// subspace over the base field extends back to the same span.
fn rational_row_space(
    base: &Field,
    big: &Field,
    rows: &[Vec<FqElem>],
    out: &mut Vec<Vec<FqElem>>,
) {
    if big.k() == base.k() {
        for v in rows {
            out.push(v.iter().map(|x| restrict(big, base, x).unwrap()).collect());
        }
        return;
    }
    let m_rel = big.k() / base.k();
    let theta = big.generator();
    for v in rows {
        for i in 0..m_rel {
            let scaled: Vec<FqElem> = v
                .iter()
                .map(|x| big.mul(x, &big.pow(&theta, i as u64)))
                .collect();
            let mut tr = vec![big.zero(); v.len()];
            let mut cur = scaled;
            for _ in 0..m_rel {
                for (t, c) in tr.iter_mut().zip(cur.iter()) {
                    *t = big.add(t, c);
                }
                cur = cur.iter().map(|x| big.frobenius(x, base.k())).collect();
            }
            let down: Option<Vec<FqElem>> =
                tr.iter().map(|x| restrict(big, base, x)).collect();
            out.push(down.expect("trace lies in the base field"));
        }
    }
}

/// The span of the 28 quadric products of one Steiner block, as a subspace
/// of the 10-dimensional space of quadrics over the base field. Each pair
/// is multiplied out in the compositum of its two fields of definition and
/// the Galois-stable span is traced down to the base field.
pub fn steiner_subspace(
    base: &Field,
    ts: &[Tritangent],
    block: &[(usize, usize)],
) -> Result<Subspace, Error> {
    let mut rows: Vec<Vec<FqElem>> = Vec::new();
    for &(i, j) in block {
        let deg = lcm(
            base.k(),
            lcm(ts[i].field.k(), ts[j].field.k()),
        );
        let big = ext_field_make(base.p(), deg)?;
        let space = space_ring(&big);
        let lift = |t: &Tritangent| {
            MultiPoly::from_terms(
                &space,
                t.l.terms
                    .iter()
                    .map(|(e, c)| (e.clone(), embed(&t.field, &big, c)))
                    .collect(),
            )
        };
        let prod = lift(&ts[i]).mul(&lift(&ts[j]));
        let row = poly_to_row(&space, 2, &prod);
        rational_row_space(base, &big, &[row], &mut rows);
    }
    Ok(Subspace::span(base, rows))
}

/// Result of the quadric recovery: the normalized quadric and how many
/// block subspaces the intersection needed before stabilizing.
pub struct QuadricRecovery {
    pub q: MultiPoly,
    pub blocks_used: usize,
}

/// Recover the unique quadric through the curve by intersecting all block
/// subspaces of its Steiner system. With `verify_all` the intersection is
/// continued over every block even after it reaches dimension one.
pub fn quadric_recover(
    base: &Field,
    ts: &[Tritangent],
    sys: &SteinerSystem,
    verify_all: bool,
) -> Result<QuadricRecovery, Error> {
    let mut acc: Option<Subspace> = None;
    let mut used = 0usize;
    for block in &sys.blocks {
        let v = steiner_subspace(base, ts, block)?;
        let next = match &acc {
            None => v,
            Some(a) => a.intersect(&v)?,
        };
        let stable = acc.as_ref().map(|a| a.dim()).unwrap_or(usize::MAX) == next.dim();
        acc = Some(next);
        if !stable || used == 0 {
            used += 1;
        }
        if acc.as_ref().unwrap().dim() <= 1 && !verify_all {
            break;
        }
    }
    let acc = acc.ok_or_else(|| Error::Validation("empty Steiner system".into()))?;
    if acc.dim() != 1 {
        return Err(Error::MathAssertion(format!(
            "block subspace intersection has dimension {}, expected 1",
            acc.dim()
        )));
    }
    let base_space = space_ring(base);
    Ok(QuadricRecovery {
        q: row_to_poly(&base_space, 2, acc.basis.row(0)),
        blocks_used: used,
    })
}

/// A projective point over the smallest field containing its coordinates,
/// first nonzero coordinate one.
#[derive(Clone, Debug)]
pub struct AlgPoint {
    pub field: Field,
    pub coords: Vec<FqElem>,
}

fn reduce_point(f: &Field, v: Vec<FqElem>) -> AlgPoint {
    let v = normalize_proj(f, v);
    let mut d = 1;
    for x in &v {
        d = lcm(d, f.min_subfield_degree(x));
    }
    if d == f.k() {
        return AlgPoint {
            field: f.clone(),
            coords: v,
        };
    }
    let sub = ext_field_make(f.p(), d).expect("subfield");
    let coords = v
        .iter()
        .map(|x| restrict(f, &sub, x).expect("coordinate in subfield"))
        .collect();
    AlgPoint { field: sub, coords }
}

/// The rank-one locus equations for one block: with `{v}` a basis of the
/// annihilator of the block subspace and `M(a)[v][k] = v · (a · x_k)`, the
/// 2x2 minors of `M(a)` as quadrics in the plane coordinates `a`.
fn minor_equations(space: &Ring, vca: &Subspace) -> Vec<MultiPoly> {
    let f = &space.field;
    let ann = vca.basis.kernel();
    let aring = ring(f, &["a0", "a1", "a2", "a3"], MonomialOrder::GrevLex);
    // entries of M(a): linear forms in a
    let mut entries: Vec<Vec<MultiPoly>> = Vec::new();
    for r in 0..ann.dim() {
        let v = ann.basis.row(r);
        let mut row = Vec::new();
        for k in 0..4 {
            let mut lin = MultiPoly::zero(&aring);
            for m in 0..4 {
                let prod = MultiPoly::var(space, m).mul(&MultiPoly::var(space, k));
                let coords = poly_to_row(space, 2, &prod);
                let mut dot = f.zero();
                for (x, y) in v.iter().zip(coords.iter()) {
                    dot = f.add(&dot, &f.mul(x, y));
                }
                let mut e = vec![0u32; 4];
                e[m] = 1;
                lin = lin.add(&MultiPoly::monomial(&aring, e, dot));
            }
            row.push(lin);
        }
        entries.push(row);
    }
    let mut minors = Vec::new();
    for r1 in 0..entries.len() {
        for r2 in (r1 + 1)..entries.len() {
            for k in 0..4 {
                for l in (k + 1)..4 {
                    let m = entries[r1][k]
                        .mul(&entries[r2][l])
                        .sub(&entries[r1][l].mul(&entries[r2][k]));
                    if !m.is_zero() {
                        minors.push(m);
                    }
                }
            }
        }
    }
    minors
}

/// The four plane classes whose triple intersections are the nodes of the
/// Cayley cubic of a block: solutions of the rank-one locus, chart by
/// chart.
pub fn cayley_planes(
    space: &Ring,
    vca: &Subspace,
    budget: &Budget,
) -> Result<Vec<AlgPoint>, Error> {
    if vca.dim() != 7 {
        return Err(Error::MathAssertion(format!(
            "block subspace has dimension {}, expected 7",
            vca.dim()
        )));
    }
    let f = &space.field;
    let minors = minor_equations(space, vca);
    let mut out: Vec<AlgPoint> = Vec::new();
    // charts: a_v = 1, a_j = 0 for j > v
    for v in (0..4).rev() {
        let names: Vec<&str> = ["a0", "a1", "a2", "a3"][..v].to_vec();
        let chart = if v == 0 {
            None
        } else {
            Some(ring(f, &names, MonomialOrder::GrevLex))
        };
        let imgs: Vec<MultiPoly> = (0..4)
            .map(|j| {
                let r = chart.as_ref();
                match j.cmp(&v) {
                    std::cmp::Ordering::Less => MultiPoly::var(r.unwrap(), j),
                    std::cmp::Ordering::Equal => match r {
                        Some(rr) => MultiPoly::one(rr),
                        None => MultiPoly::zero(&ring(f, &["u"], MonomialOrder::GrevLex)),
                    },
                    std::cmp::Ordering::Greater => match r {
                        Some(rr) => MultiPoly::zero(rr),
                        None => MultiPoly::zero(&ring(f, &["u"], MonomialOrder::GrevLex)),
                    },
                }
            })
            .collect();
        if v == 0 {
            // single candidate point (1 : 0 : 0 : 0)
            let pt = [f.one(), f.zero(), f.zero(), f.zero()];
            let all_zero = minors.iter().all(|m| {
                let row = poly_to_row(&m.ring, 2, m);
                let _ = &row;
                m.eval(&pt) == f.zero()
            });
            if all_zero {
                out.push(reduce_point(f, pt.to_vec()));
            }
            continue;
        }
        let chart = chart.unwrap();
        let gens: Vec<MultiPoly> = minors
            .iter()
            .map(|m| m.substitute(&chart, &imgs))
            .filter(|m| !m.is_zero())
            .collect();
        if gens.iter().any(|g| g.wdeg() == Some(0)) {
            continue; // chart inconsistent
        }
        let pts = variety_points(&gens, budget)?;
        for p in pts {
            let pf = p.field.clone();
            let mut coords: Vec<FqElem> = p.coords.clone();
            coords.push(pf.one());
            for _ in (v + 1)..4 {
                coords.push(pf.zero());
            }
            out.push(reduce_point(&pf, coords));
        }
    }
    if out.len() != 4 {
        return Err(Error::MathAssertion(format!(
            "rank-one locus has {} points, expected 4",
            out.len()
        )));
    }
    Ok(out)
}

/// The four triple-intersection points of four planes in general position.
pub fn cayley_nodes(base: &Field, planes: &[AlgPoint]) -> Result<Vec<AlgPoint>, Error> {
    if planes.len() != 4 {
        return Err(Error::Validation("expected four planes".into()));
    }
    let mut deg = base.k();
    for p in planes {
        deg = lcm(deg, p.field.k());
    }
    let big = ext_field_make(base.p(), deg)?;
    let lifted: Vec<Vec<FqElem>> = planes
        .iter()
        .map(|p| p.coords.iter().map(|c| embed(&p.field, &big, c)).collect())
        .collect();
    let mut nodes = Vec::new();
    for skip in 0..4 {
        let rows: Vec<Vec<FqElem>> = (0..4).filter(|&i| i != skip).map(|i| lifted[i].clone()).collect();
        let ker = Mat::from_rows(&big, rows).kernel();
        if ker.dim() != 1 {
            return Err(Error::MathAssertion(
                "three of the four planes do not meet in a single point".into(),
            ));
        }
        let node = ker.basis.row(0).to_vec();
        // the omitted plane must miss the node
        let mut dot = big.zero();
        for (a, x) in lifted[skip].iter().zip(node.iter()) {
            dot = big.add(&dot, &big.mul(a, x));
        }
        if big.is_zero(&dot) {
            return Err(Error::MathAssertion(
                "four planes share a common point".into(),
            ));
        }
        nodes.push(reduce_point(&big, node));
    }
    Ok(nodes)
}

/// The Cayley subspace of a block: cubics vanishing doubly at the four
/// nodes, plus the multiples of the quadric. Returned over the base field.
pub fn cayley_subspace(
    base: &Field,
    nodes: &[AlgPoint],
    qc: &MultiPoly,
) -> Result<Subspace, Error> {
    let mut deg = base.k();
    for n in nodes {
        deg = lcm(deg, n.field.k());
    }
    let big = ext_field_make(base.p(), deg)?;
    let space_big = space_ring(&big);
    let monos = monomials_of_wdeg(&space_big, 3);
    debug_assert_eq!(monos.len(), 20);
    let mut rows: Vec<Vec<FqElem>> = Vec::new();
    for n in nodes {
        let pt: Vec<FqElem> = n.coords.iter().map(|c| embed(&n.field, &big, c)).collect();
        // a node is a double point: all four partials vanish (the value
        // follows by the Euler relation)
        for var in 0..4 {
            rows.push(
                monos
                    .iter()
                    .map(|e| {
                        MultiPoly::monomial(&space_big, e.clone(), big.one())
                            .derivative(var)
                            .eval(&pt)
                    })
                    .collect(),
            );
        }
    }
    let nodal = rational_kernel(base, &big, rows, 20)?;
    let nodal_rows: Vec<Vec<FqElem>> = (0..nodal.rows).map(|r| nodal.row(r).to_vec()).collect();
    let base_space = space_ring(base);
    let mut all = nodal_rows;
    for i in 0..4 {
        let hq = MultiPoly::var(&base_space, i).mul(qc);
        all.push(poly_to_row(&base_space, 3, &hq));
    }
    Ok(Subspace::span(base, all))
}

/// Result of the cubic recovery: the extra cubic, the per-block Cayley
/// subspace dimensions, and the dimension of the final intersection.
pub struct CubicRecovery {
    pub p: MultiPoly,
    pub dims: Vec<usize>,
    pub intersection_dim: usize,
}

/// Recover a cubic `p` with `ideal(q, p)` the full ideal of the curve, by
/// intersecting the Cayley subspaces of all blocks of expected dimension 8.
pub fn cubic_recover(
    base: &Field,
    ts: &[Tritangent],
    sys: &SteinerSystem,
    qc: &MultiPoly,
    budget: &Budget,
) -> Result<CubicRecovery, Error> {
    use rayon::prelude::*;
    let space = space_ring(base);
    let per_block: Vec<Result<Subspace, Error>> = sys
        .blocks
        .par_iter()
        .map(|block| {
            let vca = steiner_subspace(base, ts, block)?;
            let planes = cayley_planes(&space, &vca, budget)?;
            let nodes = cayley_nodes(base, &planes)?;
            cayley_subspace(base, &nodes, qc)
        })
        .collect();
    let mut dims = Vec::with_capacity(per_block.len());
    let mut acc: Option<Subspace> = None;
    for w in per_block {
        let w = w?;
        dims.push(w.dim());
        if w.dim() == 8 {
            acc = Some(match acc {
                None => w,
                Some(a) => a.intersect(&w)?,
            });
        }
    }
    let acc = acc.ok_or_else(|| {
        Error::MathAssertion("no block has an 8-dimensional Cayley subspace".into())
    })?;
    if acc.dim() != 5 {
        return Err(Error::MathAssertion(format!(
            "Cayley subspace intersection has dimension {}, expected 5",
            acc.dim()
        )));
    }
    // pick the first basis cubic outside the multiples of the quadric
    let base_space = space_ring(base);
    let hq_rows: Vec<Vec<FqElem>> = (0..4)
        .map(|i| poly_to_row(&base_space, 3, &MultiPoly::var(&base_space, i).mul(qc)))
        .collect();
    let hq = Subspace::span(base, hq_rows);
    for r in 0..acc.dim() {
        let row = acc.basis.row(r);
        if !hq.contains(row) {
            return Ok(CubicRecovery {
                p: row_to_poly(&base_space, 3, row),
                dims,
                intersection_dim: 5,
            });
        }
    }
    Err(Error::MathAssertion(
        "intersection contains only multiples of the quadric".into(),
    ))
}
