//! The two complexes shipped with the library: the tetrahedron (`t4`) and the
//! double tetrahedron (`dt4`).

use crate::complex::DegenerationComplex;

const T4: &str = include_str!("../data/t4.json");
const DT4: &str = include_str!("../data/dt4.json");

pub const BUILTIN_NAMES: [&str; 2] = ["t4", "dt4"];

pub fn t4() -> DegenerationComplex {
    DegenerationComplex::parse(T4).expect("bundled t4 data is valid")
}

pub fn dt4() -> DegenerationComplex {
    DegenerationComplex::parse(DT4).expect("bundled dt4 data is valid")
}

pub fn builtin(name: &str) -> Option<DegenerationComplex> {
    match name {
        "t4" => Some(t4()),
        "dt4" => Some(dt4()),
        _ => None,
    }
}

/// Raw JSON of a bundled complex.
pub fn builtin_source(name: &str) -> Option<&'static str> {
    match name {
        "t4" => Some(T4),
        "dt4" => Some(DT4),
        _ => None,
    }
}
