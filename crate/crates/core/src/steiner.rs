//! Steiner system on the 120 tritangents: combinatorial labels, syzygetic
//! tests (by label and by quadric through the contact points), and assembly
//! of the 255-block pair partition by either route.

use std::collections::HashMap;

use crate::construct::{space_ring, SpaceSextic};
use crate::error::Error;
use crate::field::{embed, ext_field_make, Field, FqElem};
use crate::linalg::Mat;
use crate::multipoly::monomials_of_wdeg;
use crate::tritangent::{TriType, Tritangent};

/// A tritangent label: an odd-cardinality subset of {1,...,9} as a 9-bit
/// mask (bit i is element i+1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Label(pub u16);

impl Label {
    pub fn size(self) -> u32 {
        self.0.count_ones()
    }

    pub fn elements(self) -> Vec<usize> {
        (1..=9).filter(|&e| self.0 >> (e - 1) & 1 == 1).collect()
    }

    pub fn from_elements(es: &[usize]) -> Label {
        let mut m = 0u16;
        for &e in es {
            assert!((1..=9).contains(&e));
            m |= 1 << (e - 1);
        }
        Label(m)
    }
}

/// Label of a typed tritangent, by its type and plane-point indices:
/// type (0,6) at P_i maps to {1..8} minus {i}; type (1,5) through
/// {P_i, P_j} to {1..9} minus {i, j}; type (2,4) doubled on {P_i, P_j, P_k}
/// to {i, j, k}; type (3,3) with distinguished pair {P_i, P_j} to {i, j, 9}.
/// (Indices 1-based in the label, 0-based in `index_data`.)
pub fn label(t: &Tritangent) -> Result<Label, Error> {
    let ttype = t
        .ttype
        .ok_or_else(|| Error::Validation("unlabeled tritangent".into()))?;
    let full8: u16 = 0xff; // {1..8}
    let full9: u16 = 0x1ff; // {1..9}
    let bit = |i: usize| -> u16 { 1 << i };
    let mask = match ttype {
        TriType::T06 => full8 & !bit(t.index_data[0]),
        TriType::T15 => full9 & !(bit(t.index_data[0]) | bit(t.index_data[1])),
        TriType::T24 => bit(t.index_data[0]) | bit(t.index_data[1]) | bit(t.index_data[2]),
        TriType::T33 => bit(t.index_data[0]) | bit(t.index_data[1]) | bit(8),
    };
    Ok(Label(mask))
}

/// Four tritangents are syzygetic iff the fourfold symmetric difference of
/// their labels is empty.
pub fn syzygetic_labels(ls: &[Label; 4]) -> bool {
    ls[0].0 ^ ls[1].0 ^ ls[2].0 ^ ls[3].0 == 0
}

/// The Steiner system: a partition of all 7140 unordered pairs of the 120
/// tritangents into 255 blocks of 28 pairwise-disjoint pairs each. `keys`
/// carries the label-difference masks when built from labels.
#[derive(Clone, Debug)]
pub struct SteinerSystem {
    pub blocks: Vec<Vec<(usize, usize)>>,
    pub keys: Option<Vec<u16>>,
}

impl SteinerSystem {
    /// Structural axioms: 255 blocks, 28 pairs each, pairs within a block
    /// pairwise disjoint, all 7140 pairs covered exactly once.
    pub fn check(&self, n: usize) -> Result<(), Error> {
        if self.blocks.len() != 255 {
            return Err(Error::MathAssertion(format!(
                "expected 255 blocks, got {}",
                self.blocks.len()
            )));
        }
        let mut seen = vec![vec![false; n]; n];
        for b in &self.blocks {
            if b.len() != 28 {
                return Err(Error::MathAssertion(format!(
                    "expected 28 pairs in a block, got {}",
                    b.len()
                )));
            }
            let mut used = vec![false; n];
            for &(a, c) in b {
                if a >= c || c >= n {
                    return Err(Error::MathAssertion("bad pair indices".into()));
                }
                if used[a] || used[c] {
                    return Err(Error::MathAssertion(
                        "pairs within a block are not disjoint".into(),
                    ));
                }
                used[a] = true;
                used[c] = true;
                if seen[a][c] {
                    return Err(Error::MathAssertion("pair covered twice".into()));
                }
                seen[a][c] = true;
            }
        }
        let covered: usize = seen.iter().map(|r| r.iter().filter(|&&x| x).count()).sum();
        if covered != n * (n - 1) / 2 {
            return Err(Error::MathAssertion(format!(
                "covered {} of {} pairs",
                covered,
                n * (n - 1) / 2
            )));
        }
        Ok(())
    }

    /// Block index containing a given pair, if any.
    pub fn block_of(&self, pair: (usize, usize)) -> Option<usize> {
        let key = if pair.0 < pair.1 { pair } else { (pair.1, pair.0) };
        self.blocks.iter().position(|b| b.contains(&key))
    }

    /// Same partition of pairs into blocks, regardless of block order and
    /// keying.
    pub fn same_partition(&self, other: &SteinerSystem) -> bool {
        let canon = |s: &SteinerSystem| -> Vec<Vec<(usize, usize)>> {
            let mut bs: Vec<Vec<(usize, usize)>> = s
                .blocks
                .iter()
                .map(|b| {
                    let mut b = b.clone();
                    b.sort();
                    b
                })
                .collect();
            bs.sort();
            bs
        };
        canon(self) == canon(other)
    }
}

/// Assemble the Steiner system from the 120 labeled tritangents: the block
/// of a pair is keyed by the symmetric difference of the two labels.
pub fn steiner_from_labels(ts: &[Tritangent]) -> Result<SteinerSystem, Error> {
    let labels: Vec<Label> = ts.iter().map(label).collect::<Result<_, _>>()?;
    {
        let mut sorted: Vec<u16> = labels.iter().map(|l| l.0).collect();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(Error::MathAssertion("label collision".into()));
        }
    }
    let mut by_key: HashMap<u16, Vec<(usize, usize)>> = HashMap::new();
    for a in 0..ts.len() {
        for b in (a + 1)..ts.len() {
            by_key
                .entry(labels[a].0 ^ labels[b].0)
                .or_default()
                .push((a, b));
        }
    }
    let mut keys: Vec<u16> = by_key.keys().copied().collect();
    keys.sort_unstable();
    let blocks: Vec<Vec<(usize, usize)>> =
        keys.iter().map(|k| by_key.remove(k).unwrap()).collect();
    let sys = SteinerSystem {
        blocks,
        keys: Some(keys),
    };
    sys.check(ts.len())?;
    Ok(sys)
}

// ---------------------------------------------------------------------------
// geometric syzygetic test
// ---------------------------------------------------------------------------

fn lcm(a: usize, b: usize) -> usize {
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

/// Do the four tritangents cut the curve in twelve contact points lying on
/// a quadric other than the curve's own quadric? Equivalent to the fourfold
/// contact divisor moving in a pencil of quadric sections: the evaluation
/// (and, at multiple points, curve-tangent derivative) conditions on the ten
/// quadric coefficients must leave a null space of dimension at least two.
pub fn syzygetic_quadric(
    c: &SpaceSextic,
    ts: [&Tritangent; 4],
) -> Result<bool, Error> {
    // a repeated tritangent is always syzygetic: the product of the two
    // distinct planes, squared, is a quadric through the contact points
    for i in 0..4 {
        for j in (i + 1)..4 {
            if ts[i].field.k() == ts[j].field.k() && ts[i].l == ts[j].l {
                return Ok(true);
            }
        }
    }
    let base = &c.ring.field;
    let mut deg = base.k();
    for t in ts.iter() {
        for p in &t.contact {
            deg = lcm(deg, p.field.k());
        }
    }
    let big = ext_field_make(base.p(), deg)?;
    let space_big = space_ring(&big);
    let quad_monos = monomials_of_wdeg(&space_big, 2);
    debug_assert_eq!(quad_monos.len(), 10);

    // aggregate contact multiplicities per point over the compositum
    let mut agg: Vec<(Vec<FqElem>, usize)> = Vec::new();
    for t in ts.iter() {
        for p in &t.contact {
            let pt: Vec<FqElem> = p
                .point
                .iter()
                .map(|x| embed(&p.field, &big, x))
                .collect();
            match agg.iter_mut().find(|(q, _)| *q == pt) {
                Some((_, m)) => *m += p.multiplicity,
                None => agg.push((pt, p.multiplicity)),
            }
        }
    }

    // embedded curve equations for tangent directions
    let lift = |p: &crate::multipoly::MultiPoly| -> crate::multipoly::MultiPoly {
        crate::multipoly::MultiPoly::from_terms(
            &space_big,
            p.terms
                .iter()
                .map(|(e, cc)| (e.clone(), embed(base, &big, cc)))
                .collect(),
        )
    };
    let (qb, fb) = (lift(&c.q), lift(&c.f));

    let mut rows: Vec<Vec<FqElem>> = Vec::new();
    for (pt, m) in &agg {
        // evaluation row
        rows.push(
            quad_monos
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
        if *m >= 3 {
            return Err(Error::Validation(
                "unresolvable contact degeneracy (multiplicity three at one point)".into(),
            ));
        }
        if *m == 2 {
            // second condition: vanishing of the derivative along the curve
            let v = curve_tangent(&big, &qb, &fb, pt)?;
            rows.push(
                quad_monos
                    .iter()
                    .map(|e| {
                        let mono = crate::multipoly::MultiPoly::monomial(
                            &space_big,
                            e.clone(),
                            big.one(),
                        );
                        let mut acc = big.zero();
                        for i in 0..4 {
                            acc = big.add(
                                &acc,
                                &big.mul(&mono.derivative(i).eval(pt), &v[i]),
                            );
                        }
                        acc
                    })
                    .collect(),
            );
        }
    }
    let m = Mat::from_rows(&big, rows);
    Ok(m.kernel().dim() >= 2)
}

/// A tangent vector of the curve at a smooth point, independent of the point
/// itself (the Jacobian kernel is two-dimensional, spanned by the point and
/// the tangent direction).
fn curve_tangent(
    big: &Field,
    q: &crate::multipoly::MultiPoly,
    f: &crate::multipoly::MultiPoly,
    pt: &[FqElem],
) -> Result<Vec<FqElem>, Error> {
    let jac = Mat::from_rows(
        big,
        vec![
            (0..4).map(|i| q.derivative(i).eval(pt)).collect(),
            (0..4).map(|i| f.derivative(i).eval(pt)).collect(),
        ],
    );
    let ker = jac.kernel();
    if ker.dim() != 2 {
        return Err(Error::Validation(
            "unresolvable contact degeneracy (singular curve point)".into(),
        ));
    }
    for r in 0..2 {
        let v: Vec<FqElem> = ker.basis.row(r).to_vec();
        let two = Mat::from_rows(big, vec![pt.to_vec(), v.clone()]);
        if two.rank() == 2 {
            return Ok(v);
        }
    }
    Err(Error::Internal("tangent direction not found".into()))
}

/// Assemble the Steiner system geometrically: walk all pairs and group them
/// by the syzygetic-quadric relation, testing membership against one
/// representative pair per existing block. With `verify_all`, membership is
/// re-checked against every pair of the matched block.
pub fn steiner_generic(
    c: &SpaceSextic,
    ts: &[Tritangent],
    verify_all: bool,
) -> Result<SteinerSystem, Error> {
    use rayon::prelude::*;
    let n = ts.len();
    let mut blocks: Vec<Vec<(usize, usize)>> = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            // test against each block's representative pair concurrently
            let hit: Option<usize> = {
                let results: Vec<bool> = blocks
                    .par_iter()
                    .map(|blk| {
                        let (x, y) = blk[0];
                        // pairs sharing a tritangent never share a block
                        if x == a || x == b || y == a || y == b {
                            return false;
                        }
                        syzygetic_quadric(c, [&ts[a], &ts[b], &ts[x], &ts[y]])
                            .unwrap_or(false)
                    })
                    .collect();
                results.iter().position(|&r| r)
            };
            match hit {
                Some(i) => {
                    if verify_all {
                        for &(x, y) in &blocks[i] {
                            if !syzygetic_quadric(c, [&ts[a], &ts[b], &ts[x], &ts[y]])? {
                                return Err(Error::MathAssertion(
                                    "block membership not confirmed by all pairs".into(),
                                ));
                            }
                        }
                    }
                    blocks[i].push((a, b));
                }
                None => blocks.push(vec![(a, b)]),
            }
        }
    }
    let sys = SteinerSystem { blocks, keys: None };
    sys.check(n)?;
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct_surface, space_sextic_from_relation, Config8};
    use crate::field::ext_field_make;
    use crate::tritangent::tritangents_special;

    fn paper_setup() -> (SpaceSextic, Vec<Tritangent>) {
        let f = ext_field_make(97, 1).unwrap();
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
        (curve, ts)
    }

    #[test]
    fn label_table() {
        let (_, ts) = paper_setup();
        let find = |tt: TriType, idx: &[usize]| -> &Tritangent {
            ts.iter()
                .find(|t| t.ttype == Some(tt) && t.index_data == idx)
                .unwrap()
        };
        assert_eq!(
            label(find(TriType::T15, &[0, 1])).unwrap(),
            Label::from_elements(&[3, 4, 5, 6, 7, 8, 9])
        );
        assert_eq!(
            label(find(TriType::T24, &[0, 1, 4])).unwrap(),
            Label::from_elements(&[1, 2, 5])
        );
        assert_eq!(
            label(find(TriType::T06, &[2])).unwrap(),
            Label::from_elements(&[1, 2, 4, 5, 6, 7, 8])
        );
        // sizes: 8 + 28 of size 7, 56 + 28 of size 3; all distinct
        let labels: Vec<Label> = ts.iter().map(|t| label(t).unwrap()).collect();
        assert_eq!(labels.iter().filter(|l| l.size() == 7).count(), 36);
        assert_eq!(labels.iter().filter(|l| l.size() == 3).count(), 84);
        let mut ms: Vec<u16> = labels.iter().map(|l| l.0).collect();
        ms.sort_unstable();
        ms.dedup();
        assert_eq!(ms.len(), 120);
    }

    #[test]
    fn syzygetic_label_cases() {
        let l12 = Label::from_elements(&[3, 4, 5, 6, 7, 8, 9]);
        let l34 = Label::from_elements(&[1, 2, 5, 6, 7, 8, 9]);
        let l125 = Label::from_elements(&[1, 2, 5]);
        let l345 = Label::from_elements(&[3, 4, 5]);
        assert!(syzygetic_labels(&[l12, l34, l125, l345]));
        assert!(syzygetic_labels(&[l12, l12, l345, l345]));
        assert!(!syzygetic_labels(&[
            Label::from_elements(&[1, 2, 5]),
            Label::from_elements(&[3, 4, 5]),
            Label::from_elements(&[3, 4, 5]),
            Label::from_elements(&[1, 2, 6]),
        ]));
    }

    #[test]
    fn labeled_steiner_system() {
        let (_, ts) = paper_setup();
        let sys = steiner_from_labels(&ts).unwrap();
        sys.check(120).unwrap();
        // pairs {l12, l34} and {l125, l345} share the block keyed {1,2,3,4}
        let pos = |tt: TriType, idx: &[usize]| -> usize {
            ts.iter()
                .position(|t| t.ttype == Some(tt) && t.index_data == idx)
                .unwrap()
        };
        let a = pos(TriType::T15, &[0, 1]);
        let b = pos(TriType::T15, &[2, 3]);
        let c = pos(TriType::T24, &[0, 1, 4]);
        let d = pos(TriType::T24, &[2, 3, 4]);
        let ba = sys.block_of((a, b)).unwrap();
        let bb = sys.block_of((c, d)).unwrap();
        assert_eq!(ba, bb);
        assert_eq!(
            sys.keys.as_ref().unwrap()[ba],
            Label::from_elements(&[1, 2, 3, 4]).0
        );
    }

    #[test]
    fn quadric_test_on_fixture_quadruple() {
        let (curve, ts) = paper_setup();
        let find = |tt: TriType, idx: &[usize]| -> &Tritangent {
            ts.iter()
                .find(|t| t.ttype == Some(tt) && t.index_data == idx)
                .unwrap()
        };
        let quad = [
            find(TriType::T15, &[0, 1]),
            find(TriType::T15, &[2, 3]),
            find(TriType::T24, &[0, 1, 4]),
            find(TriType::T24, &[2, 3, 4]),
        ];
        assert!(syzygetic_quadric(&curve, quad).unwrap());
        // a repeated tritangent is syzygetic by the guarded special case
        let t0 = find(TriType::T15, &[0, 1]);
        assert!(syzygetic_quadric(&curve, [t0, t0, quad[2], quad[3]]).unwrap());
        // an asyzygetic quadruple
        let bad = [
            find(TriType::T15, &[0, 1]),
            find(TriType::T15, &[2, 3]),
            find(TriType::T24, &[0, 1, 4]),
            find(TriType::T24, &[2, 3, 5]),
        ];
        let ls = [
            label(bad[0]).unwrap(),
            label(bad[1]).unwrap(),
            label(bad[2]).unwrap(),
            label(bad[3]).unwrap(),
        ];
        assert!(!syzygetic_labels(&ls));
        assert!(!syzygetic_quadric(&curve, bad).unwrap());
    }

    #[test]
    fn generic_assembly_matches_labels() {
        let (curve, ts) = paper_setup();
        let by_labels = steiner_from_labels(&ts).unwrap();
        let by_quadrics = steiner_generic(&curve, &ts, false).unwrap();
        assert!(by_labels.same_partition(&by_quadrics));
    }

    #[test]
    fn quadric_test_matches_labels_sampled() {
        use rand::{Rng, SeedableRng};
        let (curve, ts) = paper_setup();
        let labels: Vec<Label> = ts.iter().map(|t| label(t).unwrap()).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4406);
        let mut syz = 0usize;
        for _ in 0..300 {
            let mut idx = [0usize; 4];
            for x in idx.iter_mut() {
                *x = rng.gen_range(0..120);
            }
            if idx[0] == idx[1] || idx[0] == idx[2] || idx[0] == idx[3]
                || idx[1] == idx[2] || idx[1] == idx[3] || idx[2] == idx[3]
            {
                continue;
            }
            let by_labels = syzygetic_labels(&[
                labels[idx[0]],
                labels[idx[1]],
                labels[idx[2]],
                labels[idx[3]],
            ]);
            let by_quadric = syzygetic_quadric(
                &curve,
                [&ts[idx[0]], &ts[idx[1]], &ts[idx[2]], &ts[idx[3]]],
            )
            .unwrap();
            assert_eq!(by_labels, by_quadric, "at {:?}", idx);
            if by_labels {
                syz += 1;
            }
        }
        // random quadruples are rarely syzygetic; force some positives
        let sys = steiner_from_labels(&ts).unwrap();
        for b in 0..10 {
            let blk = &sys.blocks[b * 25];
            let (a1, b1) = blk[0];
            let (a2, b2) = blk[1];
            assert!(syzygetic_quadric(&curve, [&ts[a1], &ts[b1], &ts[a2], &ts[b2]]).unwrap());
            syz += 1;
        }
        assert!(syz >= 10);
    }
}
