use sextic_core::construct::*;
use sextic_core::field::*;
use sextic_core::groebner::Budget;
use sextic_core::lehavi::*;
use sextic_core::linalg::*;
use sextic_core::multipoly::*;

fn main() {
    let f = ext_field_make(97, 1).unwrap();
    let space = space_ring(&f);
    let data: Vec<Vec<([u32;4], u64)>> = vec![
        vec![([2,0,0,0],1),([0,1,0,1],36),([0,0,1,1],71)],
        vec![([1,1,0,0],1),([0,1,0,1],85),([0,0,1,1],17),([0,0,0,2],91)],
        vec![([0,2,0,0],1),([0,1,0,1],69),([0,0,1,1],22),([0,0,0,2],45)],
        vec![([1,0,1,0],1),([0,1,0,1],69),([0,0,1,1],22),([0,0,0,2],45)],
        vec![([0,1,1,0],1),([0,1,0,1],84),([0,0,1,1],32),([0,0,0,2],68)],
        vec![([0,0,2,0],1),([0,1,0,1],10),([0,0,1,1],94),([0,0,0,2],27)],
        vec![([1,0,0,1],1),([0,1,0,1],39),([0,0,1,1],34),([0,0,0,2],38)],
    ];
    let rows: Vec<Vec<FqElem>> = data.iter().map(|terms| {
        let pp = MultiPoly::from_terms(&space, terms.iter().map(|(e,c)| (e.to_vec(), f.from_u64(*c))).collect());
        poly_to_row(&space, 2, &pp)
    }).collect();
    let g = Subspace::span(&f, rows);
    let budget = Budget::default();
    let planes = cayley_planes(&space, &g, &budget).unwrap();
    for p in &planes {
        if p.field.k() == 1 {
            // normalize last coord to 1
            let last = p.coords.last().unwrap().clone();
            let inv = f.inv(&last);
            let s: Vec<FqElem> = p.coords.iter().map(|c| f.mul(c, &inv)).collect();
            println!("rational plane: {:?}", s);
        } else {
            println!("plane deg {}", p.field.k());
        }
    }
    let nodes = cayley_nodes(&f, &planes).unwrap();
    for n in &nodes {
        if n.field.k() == 1 {
            let last = n.coords.last().unwrap().clone();
            let inv = f.inv(&last);
            let s: Vec<FqElem> = n.coords.iter().map(|c| f.mul(c, &inv)).collect();
            println!("rational node: {:?}", s);
        } else {
            println!("node deg {}", n.field.k());
        }
    }

    // W subspace vs printed 8x20
    let qc = MultiPoly::from_terms(&space, vec![
        (vec![0,2,0,0], f.one()), (vec![1,0,1,0], f.neg(&f.one()))]);
    let w = cayley_subspace(&f, &nodes, &qc).unwrap();
    println!("W dim {}", w.dim());
    let rows20: [[u64; 20]; 8] = [
        [1,0,0,0,0,0,0,6,29,41,38,73,0,23,58,51,68,29,51,74],
        [0,1,0,0,0,0,0,3,11,34,57,79,0,38,46,92,41,34,61,88],
        [0,0,1,0,0,0,0,47,72,48,42,39,0,72,8,32,93,48,85,12],
        [0,0,0,1,0,0,0,3,16,2,40,8,0,85,35,90,28,69,17,15],
        [0,0,0,0,1,0,0,47,72,48,42,39,0,72,8,32,93,48,85,12],
        [0,0,0,0,0,1,0,3,16,2,40,8,0,85,35,90,28,69,17,15],
        [0,0,0,0,0,0,1,96,0,0,0,0,0,0,0,0,0,0,0,0],
        [0,0,0,0,0,0,0,0,0,0,0,0,1,96,0,0,0,0,0,0],
    ];
    let mono_order: [[u32;4];20] = [
        [3,0,0,0],[2,1,0,0],[1,2,0,0],[0,3,0,0],[2,0,1,0],
        [1,1,1,0],[0,2,1,0],[1,0,2,0],[0,1,2,0],[0,0,3,0],
        [2,0,0,1],[1,1,0,1],[0,2,0,1],[1,0,1,1],[0,1,1,1],
        [0,0,2,1],[1,0,0,2],[0,1,0,2],[0,0,1,2],[0,0,0,3],
    ];
    let prows: Vec<Vec<FqElem>> = rows20.iter().map(|row| {
        let pp = MultiPoly::from_terms(&space, row.iter().zip(mono_order.iter())
            .filter(|(c, _)| **c != 0)
            .map(|(c, e)| (e.to_vec(), f.from_u64(*c))).collect());
        poly_to_row(&space, 3, &pp)
    }).collect();
    let want = Subspace::span(&f, prows);
    println!("printed W dim {}", want.dim());
    let mut same = true;
    for r in 0..want.dim() { if !w.contains(want.basis.row(r)) { same = false; println!("printed row {} missing", r); } }
    for r in 0..w.dim() { if !want.contains(w.basis.row(r)) { same = false; println!("our row {} extra", r); } }
    println!("W spaces equal: {}", same);
}
