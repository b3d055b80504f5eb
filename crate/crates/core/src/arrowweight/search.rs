//! Weight search and validity checking.

use std::ops::ControlFlow;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::constraints::{generate_constraints, ConstraintSystem};
use super::{evaluate_form, sigma_form, sigma_with, LinearForm, WeightTensor};
use crate::biquandle::Biquandle;
use crate::gausscode::GaussDiagram;
use crate::homset::{transport_coloring, ColoringProblem, Conventions};
use crate::random::{random_diagram, random_move};

#[derive(Clone, Copy, Debug)]
pub struct ValidityOptions {
    pub trials: usize,
    pub seed: u64,
    pub max_chords: usize,
    pub max_moves: usize,
    pub chord_cap: usize,
}

impl Default for ValidityOptions {
    fn default() -> Self {
        ValidityOptions { trials: 200, seed: 2024, max_chords: 6, max_moves: 8, chord_cap: 10 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialFailure {
    pub seed: u64,
    pub step: usize,
    pub diagram: String,
    pub mv: String,
    pub coloring: Vec<usize>,
    pub before: u64,
    pub after: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidityReport {
    pub valid: bool,
    pub equations: usize,
    pub violated_equations: Vec<usize>,
    pub trials: usize,
    pub failing_trials: Vec<TrialFailure>,
}

/// One randomized trial: a random diagram, a random walk of moves, and
/// every coloring carried along the walk with Σ compared at each step.
pub fn validity_trial(
    b: &Biquandle,
    w: &WeightTensor,
    conventions: Conventions,
    opts: &ValidityOptions,
    seed: u64,
) -> Result<(), TrialFailure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = random_diagram(&mut rng, opts.max_chords);
    let steps = rand::Rng::gen_range(&mut rng, 1..=opts.max_moves.max(1));
    let mut colorings = ColoringProblem::new(&d, b, conventions).colorings();
    for step in 0..steps {
        let Some(mv) = random_move(&mut rng, &d, opts.chord_cap) else { break };
        let before = ColoringProblem::new(&d, b, conventions);
        let mut next_diagram = None;
        let mut next = Vec::with_capacity(colorings.len());
        for c in &colorings {
            let fail = |after_value| TrialFailure {
                seed,
                step,
                diagram: d.to_string(),
                mv: format!("{mv:?}"),
                coloring: c.colors(),
                before: sigma_with(&before, c, w),
                after: after_value,
            };
            let (d2, c2, _) = transport_coloring(&d, b, conventions, &mv, c).map_err(|_| fail(u64::MAX))?;
            let after = ColoringProblem::new(&d2, b, conventions);
            let (s1, s2) = (sigma_with(&before, c, w), sigma_with(&after, &c2, w));
            if s1 != s2 {
                return Err(fail(s2));
            }
            next.push(c2);
            next_diagram = Some(d2);
        }
        d = match next_diagram {
            Some(d2) => d2,
            None => d.apply_move(&mv).expect("chosen moves apply").diagram,
        };
        colorings = next;
    }
    Ok(())
}

/// Checks a tensor against the generated system and against randomized
/// move trials. Pass a prebuilt system to avoid regenerating it.
pub fn is_valid_weight(
    b: &Biquandle,
    w: &WeightTensor,
    conventions: Conventions,
    opts: &ValidityOptions,
    system: Option<&ConstraintSystem>,
) -> ValidityReport {
    let owned;
    let system = match system {
        Some(s) => s,
        None => {
            owned = generate_constraints(b, w.modulus(), conventions);
            &owned
        }
    };
    let violated = system.violated(w);
    let failing: Vec<TrialFailure> = (0..opts.trials as u64)
        .into_par_iter()
        .filter_map(|i| validity_trial(b, w, conventions, opts, opts.seed.wrapping_add(i)).err())
        .collect();
    ValidityReport {
        valid: violated.is_empty() && failing.is_empty(),
        equations: system.equations.len(),
        violated_equations: violated,
        trials: opts.trials,
        failing_trials: failing,
    }
}

/// Σ forms of every coloring of the probe diagrams: all diagrams with two
/// or three chords.
fn probe_forms(b: &Biquandle, conventions: Conventions) -> Vec<LinearForm> {
    let mut forms = Vec::new();
    for k in 2..=3 {
        for d in GaussDiagram::all_with_chords(k) {
            if d.crossing_pairs().is_empty() {
                continue;
            }
            let p = ColoringProblem::new(&d, b, conventions);
            for c in p.colorings() {
                let f = sigma_form(&p, &c);
                if !f.is_empty() {
                    forms.push(f);
                }
            }
        }
    }
    forms.sort();
    forms.dedup();
    forms
}

/// Lists solutions of the generated system in lexicographic order of entry
/// vectors, up to `limit`. With `nontrivial`, tensors that give Σ = 0 on
/// every coloring of every probe diagram (including the zero tensor) are
/// skipped.
pub fn search_weights(
    b: &Biquandle,
    m: u64,
    limit: usize,
    nontrivial: bool,
    conventions: Conventions,
) -> Vec<WeightTensor> {
    let system = generate_constraints(b, m, conventions);
    let space = system.solve();
    let probes = if nontrivial { probe_forms(b, conventions) } else { Vec::new() };
    let n = b.size();
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    space.for_each_lex(|x| {
        let w = WeightTensor::new(m, n, x.to_vec()).expect("solution has n^4 entries");
        if !nontrivial || probes.iter().any(|f| evaluate_form(f, &w) != 0) {
            out.push(w);
        }
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}
