//! Signed Gauss codes and Gauss diagrams of virtual knots.
//!
//! A diagram is a cyclic list of `2n` chord endpoints. Each chord is an
//! arrow from its over-crossing endpoint (the tail) to its under-crossing
//! endpoint (the head) and carries the local writhe of the crossing.
//! Segment `i` is the arc of the circle running from endpoint `i` to
//! endpoint `i + 1 (mod 2n)`; the unknot diagram has a single segment.

mod moves;

pub use moves::{Applied, Move, MoveError, MoveKind};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Passage {
    Over,
    Under,
}

impl Passage {
    pub fn flipped(self) -> Self {
        match self {
            Passage::Over => Passage::Under,
            Passage::Under => Passage::Over,
        }
    }

    fn letter(self) -> char {
        match self {
            Passage::Over => 'O',
            Passage::Under => 'U',
        }
    }
}

/// Local writhe of a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn negated(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Positive, Sign::Negative]
    }

    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Endpoint {
    pub chord: u32,
    pub passage: Passage,
    pub sign: Sign,
}

impl Endpoint {
    pub fn new(chord: u32, passage: Passage, sign: Sign) -> Self {
        Endpoint { chord, passage, sign }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.passage.letter(), self.chord, self.sign.symbol())
    }
}

/// Positions of a chord's two endpoints in the endpoint list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChordEnds {
    pub over: usize,
    pub under: usize,
    pub sign: Sign,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaussCodeError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("chords appear only once: {0:?}")]
    Unpaired(Vec<u32>),
    #[error("chord {chord} appears more than twice")]
    Repeated { chord: u32 },
    #[error("chord {chord} has two {passage:?} endpoints")]
    SamePassage { chord: u32, passage: Passage },
    #[error("sign mismatch on chord {chord}")]
    SignMismatch { chord: u32 },
    #[error("chord ids must be exactly 1..={count}, found id {found}")]
    NonContiguous { count: usize, found: u32 },
}

/// A validated Gauss diagram. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    endpoints: Vec<Endpoint>,
    chords: Vec<ChordEnds>,
}

impl GaussDiagram {
    /// The unknot diagram with no chords.
    pub fn unknot() -> Self {
        GaussDiagram { endpoints: Vec::new(), chords: Vec::new() }
    }

    pub fn from_endpoints(endpoints: Vec<Endpoint>) -> Result<Self, GaussCodeError> {
        let count = endpoints.len() / 2;
        let mut over: Vec<Option<usize>> = Vec::new();
        let mut under: Vec<Option<usize>> = Vec::new();
        let mut signs: Vec<Option<Sign>> = Vec::new();
        let mut seen: Vec<u8> = Vec::new();

        for (pos, e) in endpoints.iter().enumerate() {
            if e.chord == 0 || e.chord as usize > endpoints.len() {
                return Err(GaussCodeError::NonContiguous { count, found: e.chord });
            }
            let idx = e.chord as usize - 1;
            if idx >= seen.len() {
                over.resize(idx + 1, None);
                under.resize(idx + 1, None);
                signs.resize(idx + 1, None);
                seen.resize(idx + 1, 0);
            }
            seen[idx] += 1;
            if seen[idx] > 2 {
                return Err(GaussCodeError::Repeated { chord: e.chord });
            }
            let slot = match e.passage {
                Passage::Over => &mut over[idx],
                Passage::Under => &mut under[idx],
            };
            if slot.is_some() {
                return Err(GaussCodeError::SamePassage { chord: e.chord, passage: e.passage });
            }
            *slot = Some(pos);
            match signs[idx] {
                Some(s) if s != e.sign => return Err(GaussCodeError::SignMismatch { chord: e.chord }),
                _ => signs[idx] = Some(e.sign),
            }
        }

        let unpaired: Vec<u32> = seen.iter().enumerate().filter(|(_, &k)| k == 1).map(|(i, _)| i as u32 + 1).collect();
        if !unpaired.is_empty() {
            return Err(GaussCodeError::Unpaired(unpaired));
        }
        if seen.contains(&0) {
            // a gap in the id range: the largest id is then out of range
            return Err(GaussCodeError::NonContiguous { count, found: seen.len() as u32 });
        }

        let chords = (0..seen.len())
            .map(|i| ChordEnds { over: over[i].unwrap(), under: under[i].unwrap(), sign: signs[i].unwrap() })
            .collect();
        Ok(GaussDiagram { endpoints, chords })
    }

    /// Parses `O1+O2-U1+U2-` style codes. Commas and whitespace between
    /// tokens are ignored.
    pub fn parse(text: &str) -> Result<Self, GaussCodeError> {
        let bytes = text.as_bytes();
        let mut i = 0;
        let mut endpoints = Vec::new();
        let syntax = |position: usize, message: &str| GaussCodeError::Syntax { position, message: message.to_string() };
        while i < bytes.len() {
            let c = bytes[i];
            if c == b',' || c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let passage = match c {
                b'O' | b'o' => Passage::Over,
                b'U' | b'u' => Passage::Under,
                _ => return Err(syntax(i, "expected 'O' or 'U'")),
            };
            i += 1;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(syntax(i, "expected chord number"));
            }
            let chord: u32 = text[start..i].parse().map_err(|_| syntax(start, "chord number out of range"))?;
            if chord == 0 {
                return Err(syntax(start, "chord numbers start at 1"));
            }
            let sign = match bytes.get(i) {
                Some(b'+') => Sign::Positive,
                Some(b'-') => Sign::Negative,
                _ => return Err(syntax(i, "expected '+' or '-'")),
            };
            i += 1;
            endpoints.push(Endpoint { chord, passage, sign });
        }
        Self::from_endpoints(endpoints)
    }

    pub fn endpoints(&self) -> &[Endpoint] {
        &self.endpoints
    }

    pub fn endpoint(&self, pos: usize) -> Endpoint {
        self.endpoints[pos]
    }

    pub fn chord_count(&self) -> usize {
        self.chords.len()
    }

    pub fn len(&self) -> usize {
        self.endpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.endpoints.is_empty()
    }

    pub fn segment_count(&self) -> usize {
        self.endpoints.len().max(1)
    }

    /// Chord ids `1..=n` in order.
    pub fn chord_ids(&self) -> impl Iterator<Item = u32> {
        1..=self.chords.len() as u32
    }

    /// Endpoint positions of a chord. Panics on an id outside `1..=n`.
    pub fn chord(&self, id: u32) -> ChordEnds {
        self.chords[id as usize - 1]
    }

    pub fn try_chord(&self, id: u32) -> Option<ChordEnds> {
        if id == 0 {
            return None;
        }
        self.chords.get(id as usize - 1).copied()
    }

    pub fn sign(&self, id: u32) -> Sign {
        self.chord(id).sign
    }

    /// Segment entering endpoint `pos`.
    pub fn incoming_segment(&self, pos: usize) -> usize {
        let n = self.endpoints.len();
        (pos + n - 1) % n
    }

    /// Segment leaving endpoint `pos`.
    pub fn outgoing_segment(&self, pos: usize) -> usize {
        pos
    }

    pub fn writhe(&self) -> i64 {
        self.chords.iter().map(|c| c.sign.value()).sum()
    }

    /// True iff the endpoints of the two chords interleave around the circle.
    pub fn crosses(&self, a: u32, b: u32) -> bool {
        if a == b {
            return false;
        }
        let ca = self.chord(a);
        let cb = self.chord(b);
        let (lo, hi) = (ca.over.min(ca.under), ca.over.max(ca.under));
        let inside = |p: usize| lo < p && p < hi;
        inside(cb.over) != inside(cb.under)
    }

    /// All unordered pairs `(a, b)` with `a < b` of crossing chords.
    pub fn crossing_pairs(&self) -> BTreeSet<(u32, u32)> {
        let mut out = BTreeSet::new();
        for a in self.chord_ids() {
            for b in a + 1..=self.chords.len() as u32 {
                if self.crosses(a, b) {
                    out.insert((a, b));
                }
            }
        }
        out
    }

    /// Whether `pos` lies strictly on the forward arc from `from` to `to`.
    pub fn on_arc(&self, from: usize, to: usize, pos: usize) -> bool {
        let n = self.endpoints.len();
        let d_pos = (pos + n - from) % n;
        let d_to = (to + n - from) % n;
        d_pos > 0 && d_pos < d_to
    }

    /// Rotates the basepoint forward by `k` endpoints.
    pub fn rotate_basepoint(&self, k: i64) -> GaussDiagram {
        let n = self.endpoints.len();
        if n == 0 {
            return self.clone();
        }
        let k = k.rem_euclid(n as i64) as usize;
        let mut endpoints = self.endpoints.clone();
        endpoints.rotate_left(k);
        Self::from_endpoints(endpoints).expect("rotation preserves validity")
    }

    /// Reverses the orientation of the knot. Reversing both strands at a
    /// crossing keeps its sign.
    pub fn reverse_orientation(&self) -> GaussDiagram {
        let mut endpoints = self.endpoints.clone();
        endpoints.reverse();
        Self::from_endpoints(endpoints).expect("reversal preserves validity")
    }

    /// Swaps over and under at every crossing and negates every sign.
    pub fn mirror(&self) -> GaussDiagram {
        let endpoints = self
            .endpoints
            .iter()
            .map(|e| Endpoint { chord: e.chord, passage: e.passage.flipped(), sign: e.sign.negated() })
            .collect();
        Self::from_endpoints(endpoints).expect("mirror preserves validity")
    }

    /// Renumbers chords `1..=n` in order of first appearance.
    pub fn relabeled(&self) -> GaussDiagram {
        let mut map = vec![0u32; self.chords.len() + 1];
        let mut next = 1;
        let endpoints = self
            .endpoints
            .iter()
            .map(|e| {
                if map[e.chord as usize] == 0 {
                    map[e.chord as usize] = next;
                    next += 1;
                }
                Endpoint { chord: map[e.chord as usize], ..*e }
            })
            .collect();
        Self::from_endpoints(endpoints).expect("relabeling preserves validity")
    }

    /// Canonical representative over basepoint rotations and chord
    /// renumbering: the lexicographically smallest relabeled code.
    pub fn canonical(&self) -> GaussDiagram {
        let n = self.endpoints.len();
        if n == 0 {
            return self.clone();
        }
        (0..n)
            .map(|k| self.rotate_basepoint(k as i64).relabeled())
            .min_by(|a, b| a.sort_key().cmp(&b.sort_key()))
            .unwrap()
    }

    /// Equal as cyclic diagrams, ignoring basepoint and chord numbering.
    pub fn same_diagram(&self, other: &GaussDiagram) -> bool {
        self.endpoints.len() == other.endpoints.len() && self.canonical() == other.canonical()
    }

    /// One representative (the canonical form) of every diagram with
    /// exactly `chords` chords, sorted by code.
    pub fn all_with_chords(chords: usize) -> Vec<GaussDiagram> {
        let mut seen = BTreeSet::new();
        let mut seq = Vec::with_capacity(2 * chords);
        let mut placed_over = vec![None; chords + 1];
        all_sequences(chords, &mut seq, &mut placed_over, 0, &mut |endpoints| {
            let d = GaussDiagram::from_endpoints(endpoints.to_vec()).expect("generated codes are valid");
            seen.insert(d.canonical().sort_key());
        });
        seen.into_iter()
            .map(|key| {
                let endpoints =
                    key.into_iter().map(|(chord, passage, sign)| Endpoint { chord, passage, sign }).collect();
                GaussDiagram::from_endpoints(endpoints).unwrap()
            })
            .collect()
    }

    fn sort_key(&self) -> Vec<(u32, Passage, Sign)> {
        self.endpoints.iter().map(|e| (e.chord, e.passage, e.sign)).collect()
    }
}

/// Endpoint sequences with chords numbered by first appearance.
/// `state[c]` holds the passage and sign of chord `c` once opened.
fn all_sequences(
    chords: usize,
    seq: &mut Vec<Endpoint>,
    state: &mut Vec<Option<(Passage, Sign)>>,
    opened: u32,
    emit: &mut dyn FnMut(&[Endpoint]),
) {
    if seq.len() == 2 * chords {
        emit(seq);
        return;
    }
    // close a chord that is open and not yet closed
    for c in 1..=opened {
        let (passage, sign) = state[c as usize].unwrap();
        if seq.iter().filter(|e| e.chord == c).count() == 1 {
            seq.push(Endpoint::new(c, passage.flipped(), sign));
            all_sequences(chords, seq, state, opened, emit);
            seq.pop();
        }
    }
    // open a new chord
    if (opened as usize) < chords {
        let c = opened + 1;
        for passage in [Passage::Over, Passage::Under] {
            for sign in Sign::both() {
                state[c as usize] = Some((passage, sign));
                seq.push(Endpoint::new(c, passage, sign));
                all_sequences(chords, seq, state, c, emit);
                seq.pop();
            }
        }
        state[c as usize] = None;
    }
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.endpoints {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for GaussDiagram {
    type Err = GaussCodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GaussDiagram::parse(s)
    }
}

impl Serialize for GaussDiagram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        GaussDiagram::parse(&s).map_err(serde::de::Error::custom)
    }
}
