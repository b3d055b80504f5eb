//! Arrow weight tensors over Z_m and the signed crossing sum Σ.
//!
//! Entry `W[a][b][c][d]` is the weight of an ordered pair of arrows
//! labelled `(a, b)` and `(c, d)`. Entries are stored flat with index
//! `((a*n + b)*n + c)*n + d`.

mod constraints;
mod search;
mod zmod;

pub use constraints::template_instances;
pub use constraints::{generate_constraints, sigma_difference, ConstraintSystem, Equation};
pub use search::{is_valid_weight, search_weights, validity_trial, TrialFailure, ValidityOptions, ValidityReport};
pub use zmod::{HowellBasis, SolutionSpace};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::biquandle::Biquandle;
use crate::gausscode::GaussDiagram;
use crate::homset::{Coloring, ColoringProblem, Conventions, SlotRule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("modulus must be at least 1")]
    Modulus,
    #[error("tensor has size {tensor} but the biquandle has {biquandle} elements")]
    Dimension { tensor: usize, biquandle: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightTensor {
    m: u64,
    n: usize,
    entries: Vec<u64>,
}

impl WeightTensor {
    /// Entries are reduced mod `m`. `entries.len()` must be `n^4`.
    pub fn new(m: u64, n: usize, entries: Vec<u64>) -> Result<Self, TensorError> {
        if m == 0 {
            return Err(TensorError::Modulus);
        }
        if entries.len() != n.pow(4) {
            return Err(TensorError::Parse {
                line: 0,
                message: format!("expected {} entries, found {}", n.pow(4), entries.len()),
            });
        }
        Ok(WeightTensor { m, n, entries: entries.into_iter().map(|e| e % m).collect() })
    }

    pub fn zero(m: u64, n: usize) -> Self {
        WeightTensor { m: m.max(1), n, entries: vec![0; n.pow(4)] }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn index(n: usize, a: usize, b: usize, c: usize, d: usize) -> usize {
        ((a * n + b) * n + c) * n + d
    }

    /// 0-indexed lookup.
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> u64 {
        self.entries[Self::index(self.n, a, b, c, d)]
    }

    pub fn with_entry(&self, a: usize, b: usize, c: usize, d: usize, value: u64) -> Self {
        let mut t = self.clone();
        t.entries[Self::index(self.n, a, b, c, d)] = value % self.m;
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// `W[p][q] == W[q][p]` for all labels `p`, `q`.
    pub fn is_symmetric(&self) -> bool {
        let n = self.n;
        (0..n * n).all(|p| (0..n * n).all(|q| self.entries[p * n * n + q] == self.entries[q * n * n + p]))
    }

    /// Parses the text format: `m`, `n`, then `n^2` lines, one per outer
    /// label `(a, b)` in row-major order, each holding the `n^2` entries
    /// for inner labels `(c, d)` in row-major order. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, TensorError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut scalar = |what: &str| -> Result<u64, TensorError> {
            let (line, l) =
                lines.next().ok_or_else(|| TensorError::Parse { line: 0, message: format!("missing {what}") })?;
            l.parse().map_err(|_| TensorError::Parse { line, message: format!("bad {what} {l:?}") })
        };
        let m = scalar("modulus")?;
        if m == 0 {
            return Err(TensorError::Modulus);
        }
        let n = scalar("size")? as usize;
        let mut entries = Vec::with_capacity(n.pow(4));
        let mut rows = 0;
        for (line, l) in lines {
            let row: Vec<u64> = l
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| TensorError::Parse { line, message: format!("bad entry {t:?}") }))
                .collect::<Result<_, _>>()?;
            if row.len() != n * n {
                return Err(TensorError::Parse {
                    line,
                    message: format!("expected {} entries, found {}", n * n, row.len()),
                });
            }
            entries.extend(row);
            rows += 1;
        }
        if rows != n * n {
            return Err(TensorError::Parse { line: 0, message: format!("expected {} rows, found {rows}", n * n) });
        }
        Self::new(m, n, entries)
    }

    pub fn to_text(&self) -> String {
        let nn = self.n * self.n;
        let mut s = format!("{}\n{}\n", self.m, self.n);
        for row in self.entries.chunks(nn.max(1)) {
            let parts: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn check_biquandle(&self, b: &Biquandle) -> Result<(), TensorError> {
        if self.n != b.size() {
            return Err(TensorError::Dimension { tensor: self.n, biquandle: b.size() });
        }
        Ok(())
    }
}

/// Σ as a linear form: flat tensor index → signed coefficient.
pub type LinearForm = BTreeMap<usize, i64>;

/// Ordered crossing pairs `(first, second)` under a slot rule.
pub fn ordered_crossing_pairs(d: &GaussDiagram, slot: SlotRule) -> Vec<(u32, u32)> {
    d.crossing_pairs()
        .into_iter()
        .map(|(p, q)| {
            let (cp, cq) = (d.chord(p), d.chord(q));
            let p_first = match slot {
                SlotRule::HeadOnArc => d.on_arc(cp.over, cp.under, cq.under),
                SlotRule::HeadIndex => cp.under < cq.under,
            };
            if p_first {
                (p, q)
            } else {
                (q, p)
            }
        })
        .collect()
}

/// Σ for one coloring as a linear form in the tensor entries.
pub fn sigma_form(problem: &ColoringProblem, coloring: &Coloring) -> LinearForm {
    let d = problem.diagram;
    let n = problem.biquandle.size();
    let mut form = LinearForm::new();
    for (p, q) in ordered_crossing_pairs(d, problem.conventions.slot) {
        let (a, b) = problem.label(coloring, p).expect("chord exists");
        let (c, e) = problem.label(coloring, q).expect("chord exists");
        let sign = d.sign(p).value() * d.sign(q).value();
        *form.entry(WeightTensor::index(n, a, b, c, e)).or_insert(0) += sign;
    }
    form.retain(|_, v| *v != 0);
    form
}

pub fn evaluate_form(form: &LinearForm, w: &WeightTensor) -> u64 {
    let m = w.modulus() as i128;
    let total: i128 = form.iter().map(|(&i, &c)| c as i128 * w.entries[i] as i128).sum();
    total.rem_euclid(m) as u64
}

/// Σ_D of one coloring under given conventions.
pub fn sigma_with(problem: &ColoringProblem, coloring: &Coloring, w: &WeightTensor) -> u64 {
    evaluate_form(&sigma_form(problem, coloring), w)
}

/// Σ_D of one coloring under the default conventions.
pub fn sigma_d(d: &GaussDiagram, b: &Biquandle, c: &Coloring, w: &WeightTensor) -> Result<u64, TensorError> {
    w.check_biquandle(b)?;
    Ok(sigma_with(&ColoringProblem::new(d, b, Conventions::default()), c, w))
}

/// Σ_D over all colorings, in coloring order.
pub fn weight_list(d: &GaussDiagram, b: &Biquandle, w: &WeightTensor, conventions: Conventions) -> Vec<u64> {
    let problem = ColoringProblem::new(d, b, conventions);
    problem.colorings().iter().map(|c| sigma_with(&problem, c, w)).collect()
}

/// Σ_D over all colorings as a sorted multiset.
pub fn weight_multiset(d: &GaussDiagram, b: &Biquandle, w: &WeightTensor) -> Result<Vec<u64>, TensorError> {
    w.check_biquandle(b)?;
    let mut v = weight_list(d, b, w, Conventions::default());
    v.sort_unstable();
    Ok(v)
}
