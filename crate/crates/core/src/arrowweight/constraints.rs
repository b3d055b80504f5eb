//! Invariance equations for arrow weights.
//!
//! Every move template is embedded in every diagram with at most two
//! spectator chords, in every position. For each coloring the difference
//! of Σ before and after the move is a linear form in the tensor entries
//! that a valid weight must send to zero.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{sigma_form, LinearForm, SolutionSpace, WeightTensor};
use crate::biquandle::Biquandle;
use crate::gausscode::{Endpoint, GaussDiagram, Move, MoveKind, Passage, Sign};
use crate::homset::{transport_coloring, Coloring, ColoringProblem, Conventions};

/// A homogeneous equation `Σ coeff * W[index] ≡ 0 (mod m)`, sparse and
/// sorted by index, with coefficients in `1..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equation {
    pub terms: Vec<(usize, u64)>,
}

impl Equation {
    /// Reduces a linear form mod `m`; `None` if it vanishes. Of an equation
    /// and its negation, the lexicographically smaller one is kept.
    pub fn from_form(form: &LinearForm, m: u64) -> Option<Equation> {
        let terms: Vec<(usize, u64)> =
            form.iter().map(|(&i, &c)| (i, c.rem_euclid(m as i64) as u64)).filter(|&(_, c)| c != 0).collect();
        if terms.is_empty() {
            return None;
        }
        let negated: Vec<(usize, u64)> = terms.iter().map(|&(i, c)| (i, m - c)).collect();
        Some(Equation { terms: terms.min(negated) })
    }

    pub fn evaluate(&self, w: &WeightTensor) -> u64 {
        let m = w.modulus() as u128;
        (self.terms.iter().map(|&(i, c)| c as u128 * w.entries()[i] as u128).sum::<u128>() % m) as u64
    }

    pub fn dense(&self, unknowns: usize) -> Vec<u64> {
        let mut row = vec![0; unknowns];
        for &(i, c) in &self.terms {
            row[i] = c;
        }
        row
    }
}

#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub modulus: u64,
    pub unknowns: usize,
    pub equations: Vec<Equation>,
}

impl ConstraintSystem {
    pub fn solve(&self) -> SolutionSpace {
        let rows: Vec<Vec<u64>> = self.equations.iter().map(|e| e.dense(self.unknowns)).collect();
        SolutionSpace::solve(self.modulus, self.unknowns, rows.iter().map(|r| r.as_slice()))
    }

    /// Indices of equations the tensor fails.
    pub fn violated(&self, w: &WeightTensor) -> Vec<usize> {
        self.equations.iter().enumerate().filter(|(_, e)| e.evaluate(w) != 0).map(|(i, _)| i).collect()
    }
}

/// `Σ_before − Σ_after` for one coloring carried across one move.
pub fn sigma_difference(
    before: &ColoringProblem,
    c_before: &Coloring,
    after: &ColoringProblem,
    c_after: &Coloring,
) -> LinearForm {
    let mut form = sigma_form(before, c_before);
    for (i, c) in sigma_form(after, c_after) {
        *form.entry(i).or_insert(0) -= c;
    }
    form.retain(|_, v| *v != 0);
    form
}

/// Diagrams with a move applied to them: every insertion of R1 and R2 into
/// every diagram with at most two chords, and every R3 triangle built on
/// such a diagram.
pub fn template_instances() -> Vec<(GaussDiagram, Move)> {
    let mut out = Vec::new();
    for spectators in 0..=2 {
        for base in GaussDiagram::all_with_chords(spectators) {
            for kind in [MoveKind::R1, MoveKind::R2] {
                out.extend(
                    base.moves_of_kind(kind, true).into_iter().filter(|m| m.adds_chords()).map(|m| (base.clone(), m)),
                );
            }
            out.extend(r3_instances(&base));
        }
    }
    out
}

/// Places the three endpoint pairs of an R3 triangle into the segments of
/// `base` in every order and returns each resulting diagram with every R3
/// move it admits.
fn r3_instances(base: &GaussDiagram) -> Vec<(GaussDiagram, Move)> {
    let k = base.chord_count() as u32;
    let (x, y, z) = (k + 1, k + 2, k + 3);
    let segs = base.segment_count();
    let mut built = BTreeSet::new();
    for sign in Sign::both() {
        let e = |c, p| Endpoint::new(c, p, sign);
        let pairs = [
            [e(x, Passage::Over), e(y, Passage::Over)],
            [e(x, Passage::Under), e(z, Passage::Over)],
            [e(y, Passage::Under), e(z, Passage::Under)],
        ];
        for flips in 0..8u32 {
            let blocks: Vec<Vec<Endpoint>> = (0..3)
                .map(|i| {
                    let mut b = pairs[i].to_vec();
                    if flips >> i & 1 == 1 {
                        b.reverse();
                    }
                    b
                })
                .collect();
            for order in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                for s0 in 0..segs {
                    for s1 in 0..segs {
                        for s2 in 0..segs {
                            let placed = vec![
                                (s0, blocks[order[0]].clone()),
                                (s1, blocks[order[1]].clone()),
                                (s2, blocks[order[2]].clone()),
                            ];
                            let (d, _) = base.insert_blocks(placed);
                            built.insert(d.to_string());
                        }
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for code in built {
        let d = GaussDiagram::parse(&code).unwrap();
        for mv in d.moves_of_kind(MoveKind::R3, false) {
            out.push((d.clone(), mv));
        }
    }
    out
}

/// Builds the invariance system for a biquandle and modulus.
pub fn generate_constraints(b: &Biquandle, m: u64, conventions: Conventions) -> ConstraintSystem {
    let instances = template_instances();
    let sets: Vec<BTreeSet<Equation>> = instances
        .par_iter()
        .map(|(d, mv)| {
            let mut eqs = BTreeSet::new();
            let before = ColoringProblem::new(d, b, conventions);
            for c in before.colorings() {
                let (d2, c2, _) = transport_coloring(d, b, conventions, mv, &c).expect("moves transport colorings");
                let after = ColoringProblem::new(&d2, b, conventions);
                let form = sigma_difference(&before, &c, &after, &c2);
                if let Some(eq) = Equation::from_form(&form, m) {
                    eqs.insert(eq);
                }
            }
            eqs
        })
        .collect();
    let mut all = BTreeSet::new();
    for s in sets {
        all.extend(s);
    }
    ConstraintSystem { modulus: m, unknowns: b.size().pow(4), equations: all.into_iter().collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn r3_templates_exist() {
        let inst = template_instances();
        assert!(inst.iter().any(|(_, m)| m.kind() == MoveKind::R3));
        assert!(inst.iter().filter(|(d, m)| m.kind() == MoveKind::R3 && d.chord_count() == 5).count() > 0);
    }

    #[test]
    fn printed_tensors_satisfy_generated_equations() {
        for f in fixtures::all() {
            let sys = generate_constraints(&f.biquandle, f.tensor.modulus(), Conventions::default());
            assert!(!sys.equations.is_empty());
            assert_eq!(sys.violated(&f.tensor), Vec::<usize>::new(), "{}", f.name);
            assert!(sys.violated(&WeightTensor::zero(f.tensor.modulus(), f.biquandle.size())).is_empty());
        }
    }

    #[test]
    fn perturbed_tensor_fails() {
        let w = fixtures::ex1_tensor().with_entry(0, 0, 0, 1, 5);
        let sys = generate_constraints(&fixtures::ex1(), 16, Conventions::default());
        assert!(!sys.violated(&w).is_empty());
    }

    #[test]
    fn realizable_diagonal_entries_vanish() {
        // crossed R2 pairs force W[p][p] = 0 for every label p that occurs
        let b = fixtures::ex1();
        let sys = generate_constraints(&b, 16, Conventions::default());
        let sol = sys.solve();
        let n = b.size();
        for x in 0..n {
            for y in 0..n {
                let idx = WeightTensor::index(n, x, y, x, y);
                let forced_zero = sol.basis().rows().iter().all(|(_, r)| r[idx] == 0);
                assert!(forced_zero, "W[{x}{y}][{x}{y}] is free");
            }
        }
    }
}
