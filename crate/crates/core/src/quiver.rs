//! Coloring quivers: a vertex per coloring weighted by Σ, an edge from each
//! coloring to its image under each chosen endomorphism, and the quotient
//! obtained by merging vertices of equal weight.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arrowweight::{sigma_with, TensorError, WeightTensor};
use crate::biquandle::{Biquandle, BiquandleError, Endomorphism};
use crate::gausscode::GaussDiagram;
use crate::homset::{Coloring, ColoringProblem, Conventions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error(transparent)]
    Endomorphism(#[from] BiquandleError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("image of coloring {coloring} under map {map} is not a coloring")]
    MissingImage { coloring: String, map: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuiverEdge {
    pub source: usize,
    pub target: usize,
    /// Index into the endomorphism list.
    pub endo: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedQuiver {
    pub modulus: u64,
    pub vertices: Vec<(Coloring, u64)>,
    pub edges: Vec<QuiverEdge>,
    pub endos: Vec<Endomorphism>,
}

/// Weight classes with their sizes, and edges between classes with
/// multiplicities. Both lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientQuiver {
    pub vertices: Vec<(u64, usize)>,
    pub edges: Vec<(u64, u64, usize)>,
}

/// Builds the quiver under the default conventions.
pub fn build_quiver(
    d: &GaussDiagram,
    b: &Biquandle,
    endos: &[Endomorphism],
    w: &WeightTensor,
) -> Result<WeightedQuiver, QuiverError> {
    build_quiver_with(d, b, endos, w, Conventions::default())
}

pub fn build_quiver_with(
    d: &GaussDiagram,
    b: &Biquandle,
    endos: &[Endomorphism],
    w: &WeightTensor,
    conventions: Conventions,
) -> Result<WeightedQuiver, QuiverError> {
    b.check_endomorphisms(endos)?;
    w.check_biquandle(b)?;
    let problem = ColoringProblem::new(d, b, conventions);
    let colorings = problem.colorings();
    let vertices: Vec<(Coloring, u64)> = colorings
        .into_par_iter()
        .map(|c| {
            let s = sigma_with(&problem, &c, w);
            (c, s)
        })
        .collect();
    let index: HashMap<&Coloring, usize> = vertices.iter().enumerate().map(|(i, (c, _))| (c, i)).collect();
    let mut edges = Vec::with_capacity(vertices.len() * endos.len());
    for (source, (c, _)) in vertices.iter().enumerate() {
        for (k, phi) in endos.iter().enumerate() {
            let image = c.map(phi);
            let &target = index
                .get(&image)
                .ok_or_else(|| QuiverError::MissingImage { coloring: c.to_string(), map: phi.to_string() })?;
            edges.push(QuiverEdge { source, target, endo: k });
        }
    }
    Ok(WeightedQuiver { modulus: w.modulus(), vertices, edges, endos: endos.to_vec() })
}

impl WeightedQuiver {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn weights(&self) -> Vec<u64> {
        self.vertices.iter().map(|(_, w)| *w).collect()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.target] += 1;
        }
        deg
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.source] += 1;
        }
        deg
    }

    pub fn quotient(&self) -> QuotientQuiver {
        let mut classes: BTreeMap<u64, usize> = BTreeMap::new();
        for (_, w) in &self.vertices {
            *classes.entry(*w).or_insert(0) += 1;
        }
        let mut edges: BTreeMap<(u64, u64), usize> = BTreeMap::new();
        for e in &self.edges {
            *edges.entry((self.vertices[e.source].1, self.vertices[e.target].1)).or_insert(0) += 1;
        }
        QuotientQuiver {
            vertices: classes.into_iter().collect(),
            edges: edges.into_iter().map(|((s, t), k)| (s, t, k)).collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph quiver {\n");
        for (i, (c, w)) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{c}\\nw={w}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(s, "  v{} -> v{} [label=\"{}\"];", e.source, e.target, e.endo + 1);
        }
        s.push_str("}\n");
        s
    }

    /// Stable JSON-ready view with 1-indexed colors and endomorphisms.
    pub fn to_json_value(&self) -> QuiverJson {
        QuiverJson {
            modulus: self.modulus,
            endomorphisms: self.endos.iter().map(|p| p.images()).collect(),
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(i, (c, w))| VertexJson { index: i, coloring: c.colors(), weight: *w })
                .collect(),
            edges: self.edges.iter().map(|e| QuiverEdge { endo: e.endo + 1, ..*e }).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexJson {
    pub index: usize,
    pub coloring: Vec<usize>,
    pub weight: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuiverJson {
    pub modulus: u64,
    pub endomorphisms: Vec<Vec<usize>>,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<QuiverEdge>,
}

impl QuotientQuiver {
    /// Loop multiplicity per weight class; classes without loops are absent.
    pub fn loop_counts(&self) -> BTreeMap<u64, usize> {
        self.edges.iter().filter(|(s, t, _)| s == t).map(|&(s, _, k)| (s, k)).collect()
    }

    pub fn edge_total(&self) -> usize {
        self.edges.iter().map(|e| e.2).sum()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph quotient {\n");
        for (w, size) in &self.vertices {
            let _ = writeln!(s, "  w{w} [label=\"w={w}\\n{size} vertices\"];");
        }
        for (a, b, k) in &self.edges {
            let _ = writeln!(s, "  w{a} -> w{b} [label=\"{k}\"];");
        }
        s.push_str("}\n");
        s
    }
}

pub fn in_degrees(q: &WeightedQuiver) -> Vec<usize> {
    q.in_degrees()
}

pub fn loop_counts(qq: &QuotientQuiver) -> BTreeMap<u64, usize> {
    qq.loop_counts()
}

/// What an isomorphism has to preserve besides the edge structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoMode {
    pub weights: bool,
    /// Edge labels are endomorphism indices, so this only makes sense when
    /// both quivers use the same list.
    pub labels: bool,
}

impl IsoMode {
    pub const FULL: IsoMode = IsoMode { weights: true, labels: true };
    pub const UNWEIGHTED: IsoMode = IsoMode { weights: false, labels: true };
    pub const BARE: IsoMode = IsoMode { weights: false, labels: false };
}

struct Shape {
    n: usize,
    weight: Vec<u64>,
    out: Vec<Vec<(usize, usize)>>,
    inc: Vec<Vec<(usize, usize)>>,
    /// Sorted edge labels for each ordered vertex pair with an edge.
    between: HashMap<(usize, usize), Vec<usize>>,
}

impl Shape {
    fn of(q: &WeightedQuiver, mode: IsoMode) -> Shape {
        let n = q.vertices.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let mut between: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for e in &q.edges {
            let label = if mode.labels { e.endo } else { 0 };
            out[e.source].push((label, e.target));
            inc[e.target].push((label, e.source));
            between.entry((e.source, e.target)).or_default().push(label);
        }
        for v in between.values_mut() {
            v.sort_unstable();
        }
        let weight = q.vertices.iter().map(|(_, w)| if mode.weights { *w } else { 0 }).collect();
        Shape { n, weight, out, inc, between }
    }
}

/// Color refinement run on both graphs with a shared palette.
fn refine(a: &Shape, b: &Shape) -> (Vec<usize>, Vec<usize>) {
    type Key = (usize, Vec<(usize, usize)>, Vec<(usize, usize)>);
    let mut palette: BTreeMap<Key, usize> = BTreeMap::new();
    let init = |s: &Shape| -> Vec<Key> { (0..s.n).map(|v| (s.weight[v] as usize, Vec::new(), Vec::new())).collect() };
    let mut keys = (init(a), init(b));
    let mut colors;
    let mut classes = 0;
    loop {
        palette.clear();
        for k in keys.0.iter().chain(keys.1.iter()) {
            let next = palette.len();
            palette.entry(k.clone()).or_insert(next);
        }
        colors = (
            keys.0.iter().map(|k| palette[k]).collect::<Vec<_>>(),
            keys.1.iter().map(|k| palette[k]).collect::<Vec<_>>(),
        );
        if palette.len() == classes {
            break;
        }
        classes = palette.len();
        let step = |s: &Shape, c: &[usize]| -> Vec<Key> {
            (0..s.n)
                .map(|v| {
                    let mut o: Vec<(usize, usize)> = s.out[v].iter().map(|&(l, t)| (l, c[t])).collect();
                    let mut i: Vec<(usize, usize)> = s.inc[v].iter().map(|&(l, t)| (l, c[t])).collect();
                    o.sort_unstable();
                    i.sort_unstable();
                    (c[v], o, i)
                })
                .collect()
        };
        keys = (step(a, &colors.0), step(b, &colors.1));
    }
    colors
}

/// Whether a bijection of vertices carries one quiver onto the other,
/// respecting edge multiplicities and whatever `mode` asks for.
pub fn quiver_isomorphic(q1: &WeightedQuiver, q2: &WeightedQuiver, mode: IsoMode) -> bool {
    if q1.vertices.len() != q2.vertices.len() || q1.edges.len() != q2.edges.len() {
        return false;
    }
    let (a, b) = (Shape::of(q1, mode), Shape::of(q2, mode));
    let (ca, cb) = refine(&a, &b);
    let hist = |c: &[usize]| {
        let mut h = c.to_vec();
        h.sort_unstable();
        h
    };
    if hist(&ca) != hist(&cb) {
        return false;
    }
    // smallest classes first keeps the branching low
    let mut class_size: HashMap<usize, usize> = HashMap::new();
    for &c in &ca {
        *class_size.entry(c).or_insert(0) += 1;
    }
    let mut order: Vec<usize> = (0..a.n).collect();
    order.sort_by_key(|&v| (class_size[&ca[v]], ca[v], v));
    let mut map = vec![usize::MAX; a.n];
    let mut used = vec![false; b.n];
    extend(&a, &b, &ca, &cb, &order, 0, &mut map, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Shape,
    b: &Shape,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for t in 0..b.n {
        if used[t] || cb[t] != ca[v] {
            continue;
        }
        let consistent = order[..=depth].iter().all(|&u| {
            let fu = if u == v { t } else { map[u] };
            a.between.get(&(v, u)) == b.between.get(&(t, fu)) && a.between.get(&(u, v)) == b.between.get(&(fu, t))
        });
        if !consistent {
            continue;
        }
        map[v] = t;
        used[t] = true;
        if extend(a, b, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        used[t] = false;
        map[v] = usize::MAX;
    }
    false
}
