//! Independent reference implementations used to check the library: brute
//! force colorings, a direct Σ evaluation and coloring transport by
//! exhaustive search. Only the diagram type and move application come from
//! the library.

#![allow(dead_code)]

use bawq::arrowweight::WeightTensor;
use bawq::biquandle::Biquandle;
use bawq::gausscode::{GaussDiagram, Move, Passage, Sign};

/// Positions of the over and under endpoint of every chord, by chord id.
fn positions(d: &GaussDiagram) -> Vec<(usize, usize, Sign)> {
    let mut out = vec![(usize::MAX, usize::MAX, Sign::Positive); d.chord_count() + 1];
    for (i, e) in d.endpoints().iter().enumerate() {
        let slot = &mut out[e.chord as usize];
        match e.passage {
            Passage::Over => slot.0 = i,
            Passage::Under => slot.1 = i,
        }
        slot.2 = e.sign;
    }
    out
}

/// Segment `i` runs from endpoint `i` to endpoint `i + 1`.
fn ends(d: &GaussDiagram, over: usize, under: usize) -> [usize; 4] {
    let n = d.len();
    // under-in, under-out, over-in, over-out
    [(under + n - 1) % n, under, (over + n - 1) % n, over]
}

/// Positive crossings: under-out = under-in ▷̱ over-out and
/// over-in = over-out ▷̄ under-in. Negative crossings: under-in =
/// under-out ▷̱ over-in and over-out = over-in ▷̄ under-out.
pub fn is_coloring(d: &GaussDiagram, b: &Biquandle, c: &[usize]) -> bool {
    positions(d).iter().skip(1).all(|&(o, u, s)| {
        let [ui, uo, oi, oo] = ends(d, o, u).map(|k| c[k]);
        match s {
            Sign::Positive => uo == b.under(ui, oo) && oi == b.over(oo, ui),
            Sign::Negative => ui == b.under(uo, oi) && oo == b.over(oi, uo),
        }
    })
}

pub fn colorings(d: &GaussDiagram, b: &Biquandle) -> Vec<Vec<usize>> {
    let segs = d.segment_count();
    let k = b.size();
    let mut out = Vec::new();
    let mut c = vec![0; segs];
    loop {
        if is_coloring(d, b, &c) {
            out.push(c.clone());
        }
        let mut i = segs;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            c[i] += 1;
            if c[i] < k {
                break;
            }
            c[i] = 0;
        }
    }
}

/// The arrow label: the crossing's input pair.
fn label(d: &GaussDiagram, c: &[usize], o: usize, u: usize, s: Sign) -> (usize, usize) {
    let [ui, uo, oi, oo] = ends(d, o, u).map(|k| c[k]);
    match s {
        Sign::Positive => (ui, oo),
        Sign::Negative => (uo, oi),
    }
}

fn strictly_between(n: usize, from: usize, to: usize, p: usize) -> bool {
    let dp = (p + n - from) % n;
    dp > 0 && dp < (to + n - from) % n
}

/// `(first label, second label, sign product)` of one crossing pair.
pub type Term = ((usize, usize), (usize, usize), i64);

/// Σ as one term per crossing pair of chords.
pub fn sigma_terms(d: &GaussDiagram, c: &[usize]) -> Vec<Term> {
    let pos = positions(d);
    let n = d.len();
    let mut out = Vec::new();
    for p in 1..pos.len() {
        for q in p + 1..pos.len() {
            let (po, pu, ps) = pos[p];
            let (qo, qu, qs) = pos[q];
            let interleave = strictly_between(n, po, pu, qo) != strictly_between(n, po, pu, qu);
            if !interleave {
                continue;
            }
            let lp = label(d, c, po, pu, ps);
            let lq = label(d, c, qo, qu, qs);
            let sign = ps.value() * qs.value();
            if strictly_between(n, po, pu, qu) {
                out.push((lp, lq, sign));
            } else {
                out.push((lq, lp, sign));
            }
        }
    }
    out
}

pub fn sigma(d: &GaussDiagram, c: &[usize], w: &WeightTensor) -> u64 {
    let m = w.modulus() as i64;
    let total: i64 = sigma_terms(d, c).iter().map(|&((a, b), (x, y), s)| s * w.get(a, b, x, y) as i64).sum();
    total.rem_euclid(m) as u64
}

/// The colorings of the moved diagram that agree with `c` on every
/// segment the move leaves in place.
pub fn transport(d: &GaussDiagram, b: &Biquandle, mv: &Move, c: &[usize]) -> (GaussDiagram, Vec<Vec<usize>>) {
    let applied = d.apply_move(mv).expect("move applies");
    let found = colorings(&applied.diagram, b)
        .into_iter()
        .filter(|c2| applied.segment_map.iter().enumerate().all(|(i, s)| s.is_none_or(|k| c2[i] == c[k])))
        .collect();
    (applied.diagram, found)
}
