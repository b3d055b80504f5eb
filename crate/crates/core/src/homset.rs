//! Biquandle colorings of Gauss diagrams.
//!
//! Each crossing has four strand ends: the under strand entering and
//! leaving (`UnderIn`, `UnderOut`) and the over strand entering and leaving
//! (`OverIn`, `OverOut`). A coloring rule picks one under end `a` and one
//! over end `b` as inputs and requires the two remaining ends to be
//! `a ▷̱ b` (under) and `b ▷̄ a` (over). The rule may depend on the sign.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::biquandle::Biquandle;
use crate::gausscode::{GaussDiagram, Move, MoveError, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum End {
    UnderIn,
    UnderOut,
    OverIn,
    OverOut,
}

impl End {
    pub fn all() -> [End; 4] {
        [End::UnderIn, End::UnderOut, End::OverIn, End::OverOut]
    }

    /// The other end of the same strand.
    fn partner(self) -> End {
        match self {
            End::UnderIn => End::UnderOut,
            End::UnderOut => End::UnderIn,
            End::OverIn => End::OverOut,
            End::OverOut => End::OverIn,
        }
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            End::UnderIn => "under-in",
            End::UnderOut => "under-out",
            End::OverIn => "over-in",
            End::OverOut => "over-out",
        })
    }
}

/// How the under and over input ends are chosen for one crossing sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rule {
    pub under: End,
    pub over: End,
}

impl Rule {
    /// All four choices of one under end and one over end.
    pub fn all() -> Vec<Rule> {
        let mut out = Vec::new();
        for under in [End::UnderIn, End::UnderOut] {
            for over in [End::OverIn, End::OverOut] {
                out.push(Rule { under, over });
            }
        }
        out
    }
}

/// Order of the two arrows of a crossing pair in the weight tensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SlotRule {
    /// `p` comes first iff the head of `q` lies on the arc running forward
    /// from the tail of `p` to the head of `p`. Independent of basepoint.
    HeadOnArc,
    /// The chord whose head has the smaller endpoint index comes first.
    /// Depends on the basepoint unless the tensor is symmetric.
    HeadIndex,
}

/// Coloring and labelling conventions, indexed by sign (positive first).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Conventions {
    pub rule: [Rule; 2],
    pub label: [(End, End); 2],
    pub slot: SlotRule,
}

impl Default for Conventions {
    /// Positive crossings take under-in and over-out as inputs, negative
    /// crossings take under-out and over-in; the arrow label is the input
    /// pair.
    fn default() -> Self {
        Conventions {
            rule: [Rule { under: End::UnderIn, over: End::OverOut }, Rule { under: End::UnderOut, over: End::OverIn }],
            label: [(End::UnderIn, End::OverOut), (End::UnderOut, End::OverIn)],
            slot: SlotRule::HeadOnArc,
        }
    }
}

impl Conventions {
    pub fn rule_for(&self, sign: Sign) -> Rule {
        self.rule[sign_index(sign)]
    }

    pub fn label_for(&self, sign: Sign) -> (End, End) {
        self.label[sign_index(sign)]
    }
}

fn sign_index(sign: Sign) -> usize {
    match sign {
        Sign::Positive => 0,
        Sign::Negative => 1,
    }
}

/// Segment indices at the four ends of one chord.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingEnds {
    pub chord: u32,
    pub sign: Sign,
    pub under_in: usize,
    pub under_out: usize,
    pub over_in: usize,
    pub over_out: usize,
}

impl CrossingEnds {
    pub fn of(d: &GaussDiagram, chord: u32) -> CrossingEnds {
        let c = d.chord(chord);
        CrossingEnds {
            chord,
            sign: c.sign,
            under_in: d.incoming_segment(c.under),
            under_out: d.outgoing_segment(c.under),
            over_in: d.incoming_segment(c.over),
            over_out: d.outgoing_segment(c.over),
        }
    }

    pub fn segment(&self, end: End) -> usize {
        match end {
            End::UnderIn => self.under_in,
            End::UnderOut => self.under_out,
            End::OverIn => self.over_in,
            End::OverOut => self.over_out,
        }
    }
}

/// One coloring: a color (0-indexed) per segment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring(pub Vec<usize>);

impl Coloring {
    /// 1-indexed colors.
    pub fn colors(&self) -> Vec<usize> {
        self.0.iter().map(|c| c + 1).collect()
    }

    /// Builds from 1-indexed colors.
    pub fn from_colors(colors: &[usize]) -> Coloring {
        Coloring(colors.iter().map(|c| c - 1).collect())
    }

    /// Entrywise image under a map of the biquandle.
    pub fn map(&self, phi: &crate::biquandle::Endomorphism) -> Coloring {
        Coloring(self.0.iter().map(|&c| phi.apply(c)).collect())
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.colors().iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintStatus {
    Satisfied,
    Violated,
    Undetermined,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomsetError {
    #[error("no chord {0}")]
    UnknownChord(u32),
    #[error("coloring has {found} entries, diagram has {expected} segments")]
    Length { found: usize, expected: usize },
    #[error("coloring is not valid at chord {0}")]
    Invalid(u32),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("transport found {0} matching colorings instead of exactly one")]
    NotUnique(usize),
}

/// A diagram prepared for coloring with fixed conventions.
#[derive(Clone, Debug)]
pub struct ColoringProblem<'a> {
    pub diagram: &'a GaussDiagram,
    pub biquandle: &'a Biquandle,
    pub conventions: Conventions,
    crossings: Vec<(CrossingEnds, Rule)>,
}

impl<'a> ColoringProblem<'a> {
    pub fn new(diagram: &'a GaussDiagram, biquandle: &'a Biquandle, conventions: Conventions) -> Self {
        let crossings = diagram
            .chord_ids()
            .map(|c| {
                let ends = CrossingEnds::of(diagram, c);
                (ends, conventions.rule_for(ends.sign))
            })
            .collect();
        ColoringProblem { diagram, biquandle, conventions, crossings }
    }

    /// Evaluates the coloring condition at one chord of a partial coloring.
    pub fn constraint(&self, chord: u32, partial: &[Option<usize>]) -> Result<ConstraintStatus, HomsetError> {
        let (ends, rule) =
            *self.crossings.get((chord as usize).wrapping_sub(1)).ok_or(HomsetError::UnknownChord(chord))?;
        let get = |e: End| partial[ends.segment(e)];
        let (Some(a), Some(b)) = (get(rule.under), get(rule.over)) else {
            return Ok(ConstraintStatus::Undetermined);
        };
        let u = get(rule.under.partner());
        let o = get(rule.over.partner());
        let expect_u = self.biquandle.under(a, b);
        let expect_o = self.biquandle.over(b, a);
        if u.is_some_and(|u| u != expect_u) || o.is_some_and(|o| o != expect_o) {
            return Ok(ConstraintStatus::Violated);
        }
        if u.is_none() || o.is_none() {
            return Ok(ConstraintStatus::Undetermined);
        }
        Ok(ConstraintStatus::Satisfied)
    }

    pub fn is_coloring(&self, colors: &[usize]) -> bool {
        if colors.len() != self.diagram.segment_count() || colors.iter().any(|&c| c >= self.biquandle.size()) {
            return false;
        }
        self.crossings.iter().all(|(ends, rule)| {
            let a = colors[ends.segment(rule.under)];
            let b = colors[ends.segment(rule.over)];
            colors[ends.segment(rule.under.partner())] == self.biquandle.under(a, b)
                && colors[ends.segment(rule.over.partner())] == self.biquandle.over(b, a)
        })
    }

    /// All colorings in lexicographic order.
    pub fn colorings(&self) -> Vec<Coloring> {
        self.extensions(&vec![None; self.diagram.segment_count()])
    }

    /// All colorings agreeing with the given partial assignment, in
    /// lexicographic order.
    pub fn extensions(&self, fixed: &[Option<usize>]) -> Vec<Coloring> {
        let mut out = Vec::new();
        let mut partial = fixed.to_vec();
        if self.propagate(&mut partial) {
            self.search(partial, &mut out);
        }
        out.sort();
        out
    }

    fn search(&self, partial: Vec<Option<usize>>, out: &mut Vec<Coloring>) {
        let Some(free) = partial.iter().position(|c| c.is_none()) else {
            let colors: Vec<usize> = partial.into_iter().map(|c| c.unwrap()).collect();
            if self.is_coloring(&colors) {
                out.push(Coloring(colors));
            }
            return;
        };
        for v in 0..self.biquandle.size() {
            let mut next = partial.clone();
            next[free] = Some(v);
            if self.propagate(&mut next) {
                self.search(next, out);
            }
        }
    }

    /// Deduces forced colors until nothing changes. Returns false on a
    /// contradiction.
    fn propagate(&self, partial: &mut [Option<usize>]) -> bool {
        let b = self.biquandle;
        let mut changed = true;
        while changed {
            changed = false;
            for (ends, rule) in &self.crossings {
                let (sa, sb) = (ends.segment(rule.under), ends.segment(rule.over));
                let (su, so) = (ends.segment(rule.under.partner()), ends.segment(rule.over.partner()));
                let mut deduced: [(usize, usize); 4] = [(usize::MAX, 0); 4];
                let mut k = 0;
                match (partial[sa], partial[sb], partial[su], partial[so]) {
                    (Some(a), Some(bb), _, _) => {
                        deduced[0] = (su, b.under(a, bb));
                        deduced[1] = (so, b.over(bb, a));
                        k = 2;
                    }
                    (_, _, Some(u), Some(o)) => {
                        let (a, bb) = b.pair_inv(u, o);
                        deduced[0] = (sa, a);
                        deduced[1] = (sb, bb);
                        k = 2;
                    }
                    (Some(a), None, _, Some(o)) => {
                        let bb = b.over_inv(a, o);
                        deduced[0] = (sb, bb);
                        deduced[1] = (su, b.under(a, bb));
                        k = 2;
                    }
                    (None, Some(bb), Some(u), _) => {
                        let a = b.under_inv(bb, u);
                        deduced[0] = (sa, a);
                        deduced[1] = (so, b.over(bb, a));
                        k = 2;
                    }
                    _ => {}
                }
                for &(seg, val) in &deduced[..k] {
                    match partial[seg] {
                        Some(v) if v != val => return false,
                        Some(_) => {}
                        None => {
                            partial[seg] = Some(val);
                            changed = true;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn crossing(&self, chord: u32) -> Option<CrossingEnds> {
        self.crossings.get((chord as usize).wrapping_sub(1)).map(|c| c.0)
    }

    /// The arrow label of a chord under the chosen conventions, 0-indexed.
    pub fn label(&self, coloring: &Coloring, chord: u32) -> Result<(usize, usize), HomsetError> {
        let ends = self.crossing(chord).ok_or(HomsetError::UnknownChord(chord))?;
        let (e1, e2) = self.conventions.label_for(ends.sign);
        Ok((coloring.0[ends.segment(e1)], coloring.0[ends.segment(e2)]))
    }
}

pub fn enumerate_colorings(d: &GaussDiagram, b: &Biquandle) -> Vec<Coloring> {
    ColoringProblem::new(d, b, Conventions::default()).colorings()
}

pub fn counting_invariant(d: &GaussDiagram, b: &Biquandle) -> usize {
    enumerate_colorings(d, b).len()
}

pub fn color_constraints(
    d: &GaussDiagram,
    b: &Biquandle,
    chord: u32,
    partial: &[Option<usize>],
) -> Result<ConstraintStatus, HomsetError> {
    ColoringProblem::new(d, b, Conventions::default()).constraint(chord, partial)
}

/// Arrow label under the default conventions, 1-indexed.
pub fn arrow_label(d: &GaussDiagram, b: &Biquandle, c: &Coloring, chord: u32) -> Result<(usize, usize), HomsetError> {
    let (x, y) = ColoringProblem::new(d, b, Conventions::default()).label(c, chord)?;
    Ok((x + 1, y + 1))
}

/// Applies a move and returns the new diagram with the unique coloring
/// that agrees with `c` away from the move.
pub fn transport_coloring(
    d: &GaussDiagram,
    b: &Biquandle,
    conventions: Conventions,
    mv: &Move,
    c: &Coloring,
) -> Result<(GaussDiagram, Coloring, Move), HomsetError> {
    if c.0.len() != d.segment_count() {
        return Err(HomsetError::Length { found: c.0.len(), expected: d.segment_count() });
    }
    let applied = d.apply_move(mv)?;
    let fixed: Vec<Option<usize>> = applied.segment_map.iter().map(|s| s.map(|k| c.0[k])).collect();
    let mut found = ColoringProblem::new(&applied.diagram, b, conventions).extensions(&fixed);
    if found.len() != 1 {
        return Err(HomsetError::NotUnique(found.len()));
    }
    Ok((applied.diagram, found.pop().unwrap(), applied.inverse))
}
