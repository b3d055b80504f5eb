//! Bundled example biquandles, weight tensors, endomorphism sets and the
//! knot table.

use crate::arrowweight::WeightTensor;
use crate::biquandle::{Biquandle, Endomorphism};
use crate::knotdata::KnotTable;

pub const EX1_BQ: &str = include_str!("../data/ex1.bq");
pub const EX1_TENSOR: &str = include_str!("../data/ex1.tensor");
pub const EX1_ENDOS: &str = include_str!("../data/ex1.endos");
pub const SIGMA3_BQ: &str = include_str!("../data/sigma3.bq");
pub const SIGMA3_Z8_TENSOR: &str = include_str!("../data/sigma3_z8.tensor");
pub const SIGMA3_ENDOS: &str = include_str!("../data/sigma3.endos");
pub const EX3_BQ: &str = include_str!("../data/ex3.bq");
pub const EX3_TENSOR: &str = include_str!("../data/ex3.tensor");
pub const EX3_ENDOS: &str = include_str!("../data/ex3.endos");
pub const Z4_BQ: &str = include_str!("../data/z4.bq");
pub const Z4_TENSOR: &str = include_str!("../data/z4.tensor");
pub const Z4_ENDOS: &str = include_str!("../data/z4.endos");
/// The three-element table as printed; it fails the axioms.
pub const Z3_PRINTED_BQ: &str = include_str!("../data/z3_printed.bq");
/// Endomorphism list printed with the three-element table.
pub const Z3_PRINTED_ENDOS: &str = include_str!("../data/z3_printed.endos");
pub const Z3_TENSOR: &str = include_str!("../data/z3.tensor");
pub const KNOTS_TSV: &str = include_str!("../data/knots_upto4.tsv");

pub fn ex1() -> Biquandle {
    Biquandle::parse(EX1_BQ).expect("bundled biquandle")
}

pub fn ex1_tensor() -> WeightTensor {
    WeightTensor::parse(EX1_TENSOR).expect("bundled tensor")
}

/// Constant-action biquandle `x ∘ y = σ(x)` with `σ = (1 3 2)`.
pub fn sigma3() -> Biquandle {
    Biquandle::parse(SIGMA3_BQ).expect("bundled biquandle")
}

pub fn sigma3_z8_tensor() -> WeightTensor {
    WeightTensor::parse(SIGMA3_Z8_TENSOR).expect("bundled tensor")
}

pub fn ex3() -> Biquandle {
    Biquandle::parse(EX3_BQ).expect("bundled biquandle")
}

pub fn ex3_tensor() -> WeightTensor {
    WeightTensor::parse(EX3_TENSOR).expect("bundled tensor")
}

pub fn z4() -> Biquandle {
    Biquandle::parse(Z4_BQ).expect("bundled biquandle")
}

pub fn z4_tensor() -> WeightTensor {
    WeightTensor::parse(Z4_TENSOR).expect("bundled tensor")
}

pub fn z3_tensor() -> WeightTensor {
    WeightTensor::parse(Z3_TENSOR).expect("bundled tensor")
}

pub fn endos(b: &Biquandle, text: &str) -> Vec<Endomorphism> {
    b.parse_endomorphisms(text).expect("bundled endomorphisms")
}

pub fn knot_table() -> KnotTable {
    KnotTable::parse(KNOTS_TSV).expect("bundled knot table")
}

/// A named biquandle, tensor and endomorphism set bundled together.
pub struct Fixture {
    pub name: &'static str,
    pub biquandle: Biquandle,
    pub tensor: WeightTensor,
    pub endos: Vec<Endomorphism>,
}

/// The four example data sets whose tables pass the axioms as printed,
/// plus the corrected three-element set (the sigma3 table, the Z_3 tensor,
/// and the cyclic endomorphisms).
pub fn all() -> Vec<Fixture> {
    let sigma = sigma3();
    vec![
        Fixture { name: "ex1", endos: endos(&ex1(), EX1_ENDOS), biquandle: ex1(), tensor: ex1_tensor() },
        Fixture {
            name: "sigma3-z8",
            endos: endos(&sigma, SIGMA3_ENDOS),
            biquandle: sigma.clone(),
            tensor: sigma3_z8_tensor(),
        },
        Fixture { name: "ex3", endos: endos(&ex3(), EX3_ENDOS), biquandle: ex3(), tensor: ex3_tensor() },
        Fixture { name: "sigma3-z3", endos: endos(&sigma, SIGMA3_ENDOS), biquandle: sigma, tensor: z3_tensor() },
        Fixture { name: "z4", endos: endos(&z4(), Z4_ENDOS), biquandle: z4(), tensor: z4_tensor() },
    ]
}
