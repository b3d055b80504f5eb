//! Reidemeister moves on Gauss diagrams.
//!
//! Insertions place new endpoints into segments of the current diagram;
//! new chords always take the next free ids. Deletions renumber the
//! remaining chords to keep ids contiguous, so a move followed by its
//! inverse restores the diagram up to basepoint and chord numbering
//! (see [`GaussDiagram::same_diagram`]).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Endpoint, GaussDiagram, Passage, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    R1,
    R2,
    R3,
}

impl MoveKind {
    pub fn all() -> [MoveKind; 3] {
        [MoveKind::R1, MoveKind::R2, MoveKind::R3]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    /// Adds chord `n+1` with adjacent endpoints inside `segment`.
    R1Insert { segment: usize, head_first: bool, sign: Sign },
    /// Removes a chord whose endpoints are adjacent.
    R1Delete { chord: u32 },
    /// Adds chords `n+1` (with `sign`) and `n+2` (opposite sign). The block
    /// `U(n+1) U(n+2)` goes into segment `heads` and the block
    /// `O(n+1) O(n+2)`, or `O(n+2) O(n+1)` when `tails_reversed`, into
    /// segment `tails`. When both blocks share a segment, `tails_first`
    /// puts the tail block in front.
    R2Insert { heads: usize, tails: usize, tails_reversed: bool, tails_first: bool, sign: Sign },
    /// Removes two chords of opposite sign with adjacent heads and
    /// adjacent tails.
    R2Delete { first: u32, second: u32 },
    /// Swaps the endpoint pairs starting at the three given positions.
    R3 { strands: [usize; 3] },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R1Insert { .. } | Move::R1Delete { .. } => MoveKind::R1,
            Move::R2Insert { .. } | Move::R2Delete { .. } => MoveKind::R2,
            Move::R3 { .. } => MoveKind::R3,
        }
    }

    pub fn adds_chords(&self) -> bool {
        matches!(self, Move::R1Insert { .. } | Move::R2Insert { .. })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("segment {segment} out of range (diagram has {count} segments)")]
    SegmentOutOfRange { segment: usize, count: usize },
    #[error("no chord {0}")]
    UnknownChord(u32),
    #[error("move does not apply: {0}")]
    NotApplicable(String),
}

/// Result of applying a move.
#[derive(Clone, Debug)]
pub struct Applied {
    pub diagram: GaussDiagram,
    pub inverse: Move,
    /// For each segment of the new diagram, the segment of the old diagram
    /// it continues, or `None` for arcs created inside the move region.
    pub segment_map: Vec<Option<usize>>,
}

impl GaussDiagram {
    pub fn apply_move(&self, mv: &Move) -> Result<Applied, MoveError> {
        match *mv {
            Move::R1Insert { segment, head_first, sign } => {
                self.check_segment(segment)?;
                let id = self.chord_count() as u32 + 1;
                let (o, u) = (Endpoint::new(id, Passage::Over, sign), Endpoint::new(id, Passage::Under, sign));
                let block = if head_first { vec![u, o] } else { vec![o, u] };
                let applied = self.insert_blocks(vec![(segment, block)]);
                Ok(Applied { diagram: applied.0, inverse: Move::R1Delete { chord: id }, segment_map: applied.1 })
            }
            Move::R1Delete { chord } => {
                let c = self.try_chord(chord).ok_or(MoveError::UnknownChord(chord))?;
                let first = if self.next(c.over) == c.under {
                    c.over
                } else if self.next(c.under) == c.over {
                    c.under
                } else {
                    return Err(MoveError::NotApplicable(format!("chord {chord} endpoints are not adjacent")));
                };
                let blocks = vec![vec![first, self.next(first)]];
                let (diagram, segment_map, sites) = self.delete_blocks(&[chord], &blocks);
                let inverse = Move::R1Insert {
                    segment: sites[0].0,
                    head_first: self.endpoint(first).passage == Passage::Under,
                    sign: c.sign,
                };
                Ok(Applied { diagram, inverse, segment_map })
            }
            Move::R2Insert { heads, tails, tails_reversed, tails_first, sign } => {
                self.check_segment(heads)?;
                self.check_segment(tails)?;
                let a = self.chord_count() as u32 + 1;
                let b = a + 1;
                let head_block =
                    vec![Endpoint::new(a, Passage::Under, sign), Endpoint::new(b, Passage::Under, sign.negated())];
                let mut tail_block =
                    vec![Endpoint::new(a, Passage::Over, sign), Endpoint::new(b, Passage::Over, sign.negated())];
                if tails_reversed {
                    tail_block.reverse();
                }
                let blocks = if heads == tails && tails_first {
                    vec![(tails, tail_block), (heads, head_block)]
                } else {
                    vec![(heads, head_block), (tails, tail_block)]
                };
                let (diagram, segment_map) = self.insert_blocks(blocks);
                Ok(Applied { diagram, inverse: Move::R2Delete { first: a, second: b }, segment_map })
            }
            Move::R2Delete { first, second } => {
                let ca = self.try_chord(first).ok_or(MoveError::UnknownChord(first))?;
                let cb = self.try_chord(second).ok_or(MoveError::UnknownChord(second))?;
                if first == second || ca.sign == cb.sign {
                    return Err(MoveError::NotApplicable("R2 needs two chords of opposite sign".into()));
                }
                let heads = self
                    .ordered_pair(ca.under, cb.under)
                    .ok_or_else(|| MoveError::NotApplicable("heads are not adjacent".into()))?;
                let tails = self
                    .ordered_pair(ca.over, cb.over)
                    .ok_or_else(|| MoveError::NotApplicable("tails are not adjacent".into()))?;
                let blocks = vec![vec![heads.0, heads.1], vec![tails.0, tails.1]];
                let (diagram, segment_map, sites) = self.delete_blocks(&[first, second], &blocks);
                let lead = self.endpoint(heads.0);
                let tails_reversed = self.endpoint(tails.0).chord != lead.chord;
                let tails_first = sites[0].0 == sites[1].0 && sites[1].1 < sites[0].1;
                let inverse = Move::R2Insert {
                    heads: sites[0].0,
                    tails: sites[1].0,
                    tails_reversed,
                    tails_first,
                    sign: lead.sign,
                };
                Ok(Applied { diagram, inverse, segment_map })
            }
            Move::R3 { strands } => {
                if !self.is_r3_triangle(strands) {
                    return Err(MoveError::NotApplicable(format!("no R3 triangle at {strands:?}")));
                }
                let mut endpoints = self.endpoints().to_vec();
                for &p in &strands {
                    endpoints.swap(p, self.next(p));
                }
                let diagram = GaussDiagram::from_endpoints(endpoints).expect("swap preserves validity");
                let segment_map =
                    (0..self.segment_count()).map(|k| if strands.contains(&k) { None } else { Some(k) }).collect();
                Ok(Applied { diagram, inverse: Move::R3 { strands }, segment_map })
            }
        }
    }

    /// Every move applicable to this diagram, in a fixed order.
    pub fn enumerate_moves(&self) -> Vec<Move> {
        let mut out = Vec::new();
        self.push_moves(MoveKind::R1, true, &mut out);
        self.push_moves(MoveKind::R2, true, &mut out);
        self.push_moves(MoveKind::R3, true, &mut out);
        out
    }

    /// Applicable moves of one kind, optionally excluding insertions.
    pub fn moves_of_kind(&self, kind: MoveKind, allow_insert: bool) -> Vec<Move> {
        let mut out = Vec::new();
        self.push_moves(kind, allow_insert, &mut out);
        out
    }

    fn push_moves(&self, kind: MoveKind, allow_insert: bool, out: &mut Vec<Move>) {
        let segs = self.segment_count();
        match kind {
            MoveKind::R1 => {
                if allow_insert {
                    for segment in 0..segs {
                        for head_first in [false, true] {
                            for sign in Sign::both() {
                                out.push(Move::R1Insert { segment, head_first, sign });
                            }
                        }
                    }
                }
                for chord in self.chord_ids() {
                    let c = self.chord(chord);
                    if self.next(c.over) == c.under || self.next(c.under) == c.over {
                        out.push(Move::R1Delete { chord });
                    }
                }
            }
            MoveKind::R2 => {
                if allow_insert {
                    for heads in 0..segs {
                        for tails in 0..segs {
                            for tails_reversed in [false, true] {
                                for tails_first in [false, true] {
                                    if tails_first && heads != tails {
                                        continue;
                                    }
                                    for sign in Sign::both() {
                                        out.push(Move::R2Insert { heads, tails, tails_reversed, tails_first, sign });
                                    }
                                }
                            }
                        }
                    }
                }
                for first in self.chord_ids() {
                    for second in first + 1..=self.chord_count() as u32 {
                        let (ca, cb) = (self.chord(first), self.chord(second));
                        if ca.sign != cb.sign
                            && self.ordered_pair(ca.under, cb.under).is_some()
                            && self.ordered_pair(ca.over, cb.over).is_some()
                        {
                            out.push(Move::R2Delete { first, second });
                        }
                    }
                }
            }
            MoveKind::R3 => {
                let n = self.len();
                if n < 6 {
                    return;
                }
                for a in 0..n {
                    for b in a + 2..n {
                        for c in b + 2..n {
                            if (c + 1) % n == a {
                                continue;
                            }
                            if self.is_r3_triangle([a, b, c]) {
                                out.push(Move::R3 { strands: [a, b, c] });
                            }
                        }
                    }
                }
            }
        }
    }

    /// Checks whether the three endpoint pairs starting at `strands` form a
    /// braid-like R3 triangle: one pair of tails, one pair of heads, one
    /// mixed pair, three distinct chords of a common sign, and a consistent
    /// cyclic arrangement.
    pub fn is_r3_triangle(&self, strands: [usize; 3]) -> bool {
        let n = self.len();
        if n < 6 || strands.iter().any(|&p| p >= n) {
            return false;
        }
        let mut used = vec![false; n];
        for &p in &strands {
            for q in [p, self.next(p)] {
                if used[q] {
                    return false;
                }
                used[q] = true;
            }
        }
        let pairs: Vec<(Endpoint, Endpoint)> =
            strands.iter().map(|&p| (self.endpoint(p), self.endpoint(self.next(p)))).collect();
        if pairs.iter().any(|(x, y)| x.chord == y.chord) {
            return false;
        }
        let sign = pairs[0].0.sign;
        if pairs.iter().any(|(x, y)| x.sign != sign || y.sign != sign) {
            return false;
        }
        let mut chords: Vec<u32> = pairs.iter().flat_map(|(x, y)| [x.chord, y.chord]).collect();
        chords.sort_unstable();
        chords.dedup();
        if chords.len() != 3 {
            return false;
        }
        let find = |f: &dyn Fn(&(Endpoint, Endpoint)) -> bool| pairs.iter().position(f);
        let top = find(&|(x, y)| x.passage == Passage::Over && y.passage == Passage::Over);
        let bottom = find(&|(x, y)| x.passage == Passage::Under && y.passage == Passage::Under);
        let mid = find(&|(x, y)| x.passage != y.passage);
        let (Some(top), Some(bottom), Some(mid)) = (top, bottom, mid) else {
            return false;
        };
        let shares = |p: &(Endpoint, Endpoint), chord: u32| p.0.chord == chord || p.1.chord == chord;
        let (t, m, b) = (pairs[top], pairs[mid], pairs[bottom]);
        let top_leads_with_mid = shares(&m, t.0.chord);
        let mid_leads_with_under = m.0.passage == Passage::Under;
        let bottom_leads_with_top = shares(&t, b.0.chord);
        top_leads_with_mid == mid_leads_with_under && mid_leads_with_under == bottom_leads_with_top
    }

    fn next(&self, pos: usize) -> usize {
        (pos + 1) % self.len()
    }

    fn check_segment(&self, segment: usize) -> Result<(), MoveError> {
        if segment >= self.segment_count() {
            Err(MoveError::SegmentOutOfRange { segment, count: self.segment_count() })
        } else {
            Ok(())
        }
    }

    /// Orders two cyclically adjacent positions, or `None` if not adjacent.
    fn ordered_pair(&self, p: usize, q: usize) -> Option<(usize, usize)> {
        if p == q {
            None
        } else if self.next(p) == q {
            Some((p, q))
        } else if self.next(q) == p {
            Some((q, p))
        } else {
            None
        }
    }

    /// Inserts blocks of new endpoints; blocks aimed at the same segment
    /// keep their given order. The caller keeps chord ids contiguous.
    pub(crate) fn insert_blocks(&self, blocks: Vec<(usize, Vec<Endpoint>)>) -> (GaussDiagram, Vec<Option<usize>>) {
        // origin: Some(old position) or None; block id for new endpoints
        let mut endpoints = Vec::new();
        let mut origin: Vec<Result<usize, (usize, usize)>> = Vec::new();
        let push_blocks = |seg: usize, endpoints: &mut Vec<Endpoint>, origin: &mut Vec<_>| {
            for (b, (s, block)) in blocks.iter().enumerate() {
                if *s == seg {
                    for e in block {
                        endpoints.push(*e);
                        origin.push(Err((b, seg)));
                    }
                }
            }
        };
        if self.is_empty() {
            push_blocks(0, &mut endpoints, &mut origin);
        } else {
            for k in 0..self.len() {
                endpoints.push(self.endpoint(k));
                origin.push(Ok(k));
                push_blocks(k, &mut endpoints, &mut origin);
            }
        }
        let n = endpoints.len();
        let segment_map = (0..n)
            .map(|j| match (origin[j], origin[(j + 1) % n]) {
                (Err((b1, _)), Err((b2, _))) if b1 == b2 && j + 1 < n => None,
                (Ok(k), _) => Some(k),
                (Err((_, seg)), _) => Some(seg),
            })
            .collect();
        (GaussDiagram::from_endpoints(endpoints).expect("insertion preserves validity"), segment_map)
    }

    /// Deletes the given chords, whose endpoints form the given blocks of
    /// consecutive positions. Returns the new diagram, its segment map and,
    /// for each block, the segment of the new diagram it sat in together
    /// with its order among blocks sharing that segment.
    fn delete_blocks(
        &self,
        chords: &[u32],
        blocks: &[Vec<usize>],
    ) -> (GaussDiagram, Vec<Option<usize>>, Vec<(usize, usize)>) {
        let n = self.len();
        let deleted: Vec<bool> = (0..n).map(|k| chords.contains(&self.endpoint(k).chord)).collect();
        let renumber = |c: u32| c - chords.iter().filter(|&&d| d < c).count() as u32;
        let mut new_index = vec![usize::MAX; n];
        let mut endpoints = Vec::new();
        for k in 0..n {
            if !deleted[k] {
                new_index[k] = endpoints.len();
                let e = self.endpoint(k);
                endpoints.push(Endpoint { chord: renumber(e.chord), ..e });
            }
        }
        let segment_map =
            if endpoints.is_empty() { vec![Some(n - 1)] } else { (0..n).filter(|&k| !deleted[k]).map(Some).collect() };
        // distance walked back to the anchor orders blocks in one segment
        let sites = blocks
            .iter()
            .map(|block| {
                let mut p = block[0];
                let mut walked = 0;
                loop {
                    p = (p + n - 1) % n;
                    walked += 1;
                    if !deleted[p] {
                        return (new_index[p], walked);
                    }
                    if walked >= n {
                        return (0, n - block[0]);
                    }
                }
            })
            .collect();
        let diagram = GaussDiagram::from_endpoints(endpoints).expect("deletion preserves validity");
        (diagram, segment_map, sites)
    }
}
