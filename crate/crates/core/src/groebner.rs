//! Buchberger's algorithm with the sugar selection strategy and the
//! coprime/chain criteria, reduced bases, ideal membership, and saturation
//! by the extra-variable trick.

use crate::error::Error;
use crate::field::FqElem;
use crate::multipoly::{ring_weighted, Expo, MonomialOrder, MultiPoly};
#[cfg(test)]
use crate::multipoly::Ring;

fn expo_lcm(a: &[u32], b: &[u32]) -> Expo {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

fn expo_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x <= y)
}

fn expo_coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

fn expo_sub(a: &[u32], b: &[u32]) -> Expo {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

/// Remainder of `p` on division by `basis`; deterministic: always reduce the
/// leading term by the first (lowest-index) divisor found.
pub fn normal_form(p: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let ring = &p.ring;
    let f = &ring.field;
    let mut rem_terms: Vec<(Expo, FqElem)> = Vec::new();
    let mut work = p.clone();
    'outer: while let Some((le, lc)) = work.leading_term().cloned() {
        for g in basis {
            let (ge, gc) = g.leading_term().expect("basis polys nonzero");
            if expo_divides(ge, &le) {
                let q = expo_sub(&le, ge);
                let c = f.div(&lc, gc);
                work = work.sub(&g.mul_term(&q, &c));
                continue 'outer;
            }
        }
        rem_terms.push((le.clone(), lc));
        // move the irreducible leading term out of the working polynomial
        work.terms.remove(0);
    }
    MultiPoly {
        ring: ring.clone(),
        terms: rem_terms,
    }
}

/// Resource limit for basis computations, counted in S-pair reductions.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_pair_reductions: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_pair_reductions: 2_000_000,
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Expo,
    sugar: u64,
}

/// Reduced Groebner basis of the ideal generated by `gens` in the ring's
/// monomial order. Pair selection: minimal sugar, ties by smaller lcm in
/// the monomial order, then by (i, j).
pub fn groebner_basis(gens: &[MultiPoly], budget: &Budget) -> Result<Vec<MultiPoly>, Error> {
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else {
        return Ok(Vec::new());
    };
    let ring = first.ring.clone();
    let mut basis: Vec<MultiPoly> = Vec::new();
    let mut sugars: Vec<u64> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let add_poly = |g: MultiPoly,
                        sugar: u64,
                        basis: &mut Vec<MultiPoly>,
                        sugars: &mut Vec<u64>,
                        pairs: &mut Vec<Pair>| {
        let t = basis.len();
        for i in 0..t {
            let li = &basis[i].leading_term().unwrap().0;
            let lt = &g.leading_term().unwrap().0;
            let lcm = expo_lcm(li, lt);
            let deg_lcm = ring.wdeg(&lcm);
            let si = sugars[i] + deg_lcm - ring.wdeg(li);
            let st = sugar + deg_lcm - ring.wdeg(lt);
            pairs.push(Pair {
                i,
                j: t,
                lcm,
                sugar: si.max(st),
            });
        }
        basis.push(g);
        sugars.push(sugar);
    };

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let sugar = g.wdeg().unwrap();
        add_poly(g.monic(), sugar, &mut basis, &mut sugars, &mut pairs);
    }

    let mut reductions = 0u64;
    while !pairs.is_empty() {
        // sugar strategy selection
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| ring.mono_cmp(&b.lcm, &a.lcm)) // smaller lcm first
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(idx, _)| idx)
            .unwrap();
        let pair = pairs.swap_remove(best);
        let (i, j) = (pair.i, pair.j);
        let li = &basis[i].leading_term().unwrap().0.clone();
        let lj = &basis[j].leading_term().unwrap().0.clone();

        // coprime criterion
        if expo_coprime(li, lj) {
            continue;
        }
        // chain criterion: some k with lt(k) | lcm(i,j) and both (i,k), (j,k)
        // pairs already gone
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && expo_divides(&basis[k].leading_term().unwrap().0, &pair.lcm)
                && !pairs.iter().any(|p| {
                    (p.i == i.min(k) && p.j == i.max(k)) || (p.i == j.min(k) && p.j == j.max(k))
                })
        });
        if chain {
            continue;
        }

        reductions += 1;
        if reductions > budget.max_pair_reductions {
            return Err(Error::Budget(format!(
                "basis computation exceeded {} S-pair reductions",
                budget.max_pair_reductions
            )));
        }

        let f = &ring.field;
        let qi = expo_sub(&pair.lcm, li);
        let qj = expo_sub(&pair.lcm, lj);
        let ci = basis[i].leading_term().unwrap().1.clone();
        let cj = basis[j].leading_term().unwrap().1.clone();
        let s = basis[i]
            .mul_term(&qi, &f.inv(&ci))
            .sub(&basis[j].mul_term(&qj, &f.inv(&cj)));
        let r = normal_form(&s, &basis);
        if !r.is_zero() {
            add_poly(r.monic(), pair.sugar, &mut basis, &mut sugars, &mut pairs);
        }
    }

    // minimalize: drop members whose leading term is divisible by another's
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let li = basis[i].leading_term().unwrap().0.clone();
        for j in 0..basis.len() {
            if i != j
                && keep[j]
                && expo_divides(&basis[j].leading_term().unwrap().0, &li)
                && (basis[j].leading_term().unwrap().0 != li || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<MultiPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // fully reduce each member against the others
    let mut reduced: Vec<MultiPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MultiPoly> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| (j != i).then(|| g.clone()))
            .collect();
        let r = normal_form(&minimal[i], &others);
        if !r.is_zero() {
            reduced.push(r.monic());
        }
    }
    reduced.sort_by(|a, b| {
        ring.mono_cmp(
            &b.leading_term().unwrap().0,
            &a.leading_term().unwrap().0,
        )
    });
    Ok(reduced)
}

/// Ideal membership test via normal form against a Groebner basis.
pub fn in_ideal(p: &MultiPoly, gb: &[MultiPoly]) -> bool {
    normal_form(p, gb).is_zero()
}

/// Saturation `I : h^infinity` via the extra variable `y`: compute a basis of
/// `I + (1 - y h)` in an order eliminating `y` and keep the `y`-free members.
pub fn saturate(
    gens: &[MultiPoly],
    h: &MultiPoly,
    budget: &Budget,
) -> Result<Vec<MultiPoly>, Error> {
    let ring = &h.ring;
    let n = ring.nvars();
    let mut vars: Vec<&str> = vec!["y_sat"];
    let var_names: Vec<String> = ring.vars.clone();
    vars.extend(var_names.iter().map(|s| s.as_str()));
    let mut weights = vec![1u64];
    weights.extend_from_slice(&ring.weights);
    let ext = ring_weighted(&ring.field, &vars, &weights, MonomialOrder::Elim(1));

    let lift = |p: &MultiPoly| -> MultiPoly {
        let terms = p
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0u32; n + 1];
                ne[1..].copy_from_slice(e);
                (ne, c.clone())
            })
            .collect();
        MultiPoly::from_terms(&ext, terms)
    };

    let mut ext_gens: Vec<MultiPoly> = gens.iter().map(&lift).collect();
    let y = MultiPoly::var(&ext, 0);
    ext_gens.push(MultiPoly::one(&ext).sub(&y.mul(&lift(h))));
    let gb = groebner_basis(&ext_gens, budget)?;
    let mut out = Vec::new();
    for g in gb {
        if g.terms.iter().all(|(e, _)| e[0] == 0) {
            let terms = g
                .terms
                .iter()
                .map(|(e, c)| (e[1..].to_vec(), c.clone()))
                .collect();
            out.push(MultiPoly::from_terms(ring, terms));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ext_field_make;
    use crate::multipoly::ring;

    fn setup() -> (crate::field::Field, Ring) {
        let f = ext_field_make(97, 1).unwrap();
        let r = ring(&f, &["x", "y", "z"], MonomialOrder::GrevLex);
        (f, r)
    }

    #[test]
    fn principal_ideal_membership() {
        let (f, r) = setup();
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        let g = x.mul(&x).add(&y.scale(&f.from_u64(3)));
        let gb = groebner_basis(&[g.clone()], &Budget::default()).unwrap();
        assert_eq!(gb.len(), 1);
        let h = g.mul(&x.add(&y));
        assert!(in_ideal(&h, &gb));
        assert!(!in_ideal(&x, &gb));
    }

    #[test]
    fn textbook_basis_cyclic_like() {
        let (f, r) = setup();
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        let z = MultiPoly::var(&r, 2);
        // I = (x + y + z, xy + yz + zx, xyz - 1)
        let g1 = x.add(&y).add(&z);
        let g2 = x.mul(&y).add(&y.mul(&z)).add(&z.mul(&x));
        let g3 = x.mul(&y).mul(&z).sub(&MultiPoly::one(&r));
        let gb = groebner_basis(&[g1.clone(), g2.clone(), g3.clone()], &Budget::default()).unwrap();
        // Buchberger's criterion: all S-pairs reduce to zero
        for i in 0..gb.len() {
            for j in (i + 1)..gb.len() {
                let li = &gb[i].leading_term().unwrap().0;
                let lj = &gb[j].leading_term().unwrap().0;
                let lcm = expo_lcm(li, lj);
                let s = gb[i]
                    .mul_term(&expo_sub(&lcm, li), &f.inv(&gb[i].leading_term().unwrap().1))
                    .sub(&gb[j].mul_term(&expo_sub(&lcm, lj), &f.inv(&gb[j].leading_term().unwrap().1)));
                assert!(normal_form(&s, &gb).is_zero());
            }
        }
        // original generators are in the ideal
        for g in [g1, g2, g3] {
            assert!(in_ideal(&g, &gb));
        }
    }

    #[test]
    fn deterministic_output() {
        let (_, r) = setup();
        let f = &r.field;
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        let z = MultiPoly::var(&r, 2);
        let gens = vec![
            x.mul(&x).sub(&y.mul(&z)),
            y.mul(&y).sub(&x.mul(&z)).scale(&f.from_u64(5)),
            z.mul(&z).sub(&x.mul(&y)),
        ];
        let a = groebner_basis(&gens, &Budget::default()).unwrap();
        let b = groebner_basis(&gens, &Budget::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_exhaustion_reported() {
        let (_, r) = setup();
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        let z = MultiPoly::var(&r, 2);
        let gens = vec![
            x.pow(2).mul(&y).sub(&z),
            x.mul(&y.pow(2)).sub(&MultiPoly::one(&r)),
        ];
        let tiny = Budget {
            max_pair_reductions: 0,
        };
        match groebner_basis(&gens, &tiny) {
            Err(Error::Budget(_)) => {}
            other => panic!("expected budget error, got {:?}", other.map(|v| v.len())),
        }
    }

    #[test]
    fn saturation_removes_component() {
        let (_, r) = setup();
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        // I = (x * y) saturated at x gives (y)
        let gens = vec![x.mul(&y)];
        let sat = saturate(&gens, &x, &Budget::default()).unwrap();
        let gb = groebner_basis(&sat, &Budget::default()).unwrap();
        assert!(in_ideal(&y, &gb));
        assert!(!in_ideal(&x, &gb));
    }

    #[test]
    fn saturation_of_embedded_point() {
        let (_, r) = setup();
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        // I = (x^2, x y): V = line x=0 with an embedded point; saturating at y
        // leaves the line (x)
        let gens = vec![x.mul(&x), x.mul(&y)];
        let sat = saturate(&gens, &y, &Budget::default()).unwrap();
        let gb = groebner_basis(&sat, &Budget::default()).unwrap();
        assert!(in_ideal(&x, &gb));
    }

    #[test]
    fn normal_form_is_linear() {
        let (f, r) = setup();
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        let z = MultiPoly::var(&r, 2);
        let gb = groebner_basis(
            &[x.mul(&x).sub(&y), y.mul(&y).sub(&z)],
            &Budget::default(),
        )
        .unwrap();
        let p = x.pow(4).add(&y.pow(3));
        let q = z.mul(&x).sub(&y.scale(&f.from_u64(7)));
        let lhs = normal_form(&p.add(&q), &gb);
        let rhs = normal_form(&p, &gb).add(&normal_form(&q, &gb));
        assert_eq!(lhs, rhs);
    }
}
