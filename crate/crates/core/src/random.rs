//! Seeded random diagrams and Reidemeister move walks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::gausscode::{Endpoint, GaussDiagram, Move, MoveKind, Passage, Sign};

/// A uniformly shuffled diagram with `0..=max_chords` chords and random
/// signs.
pub fn random_diagram<R: Rng>(rng: &mut R, max_chords: usize) -> GaussDiagram {
    let n = rng.gen_range(0..=max_chords);
    let signs: Vec<Sign> = (0..n).map(|_| if rng.gen() { Sign::Positive } else { Sign::Negative }).collect();
    let mut endpoints: Vec<Endpoint> = (1..=n as u32)
        .flat_map(|c| {
            let s = signs[c as usize - 1];
            [Endpoint::new(c, Passage::Over, s), Endpoint::new(c, Passage::Under, s)]
        })
        .collect();
    endpoints.shuffle(rng);
    GaussDiagram::from_endpoints(endpoints).expect("shuffled endpoints stay valid")
}

/// Picks a move kind uniformly among the kinds with an applicable move,
/// then a move of that kind uniformly. Insertions are skipped once the
/// diagram has `chord_cap` chords.
pub fn random_move<R: Rng>(rng: &mut R, d: &GaussDiagram, chord_cap: usize) -> Option<Move> {
    let allow_insert = d.chord_count() < chord_cap;
    let mut kinds = MoveKind::all().to_vec();
    kinds.shuffle(rng);
    for kind in kinds {
        let moves = d.moves_of_kind(kind, allow_insert);
        if let Some(mv) = moves.choose(rng) {
            return Some(mv.clone());
        }
    }
    None
}
