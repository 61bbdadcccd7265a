//! Exact computations for canonical double covers of P² and of Hirzebruch
//! surfaces F_e: line-bundle cohomology of the base, invariants and moduli
//! dimension of the cover, an audit of the cohomological hypotheses of the
//! deformation theorem, geography of `(χ, c1²)` and invariant collisions.
//!
//! Everything is integer or rational arithmetic; there is no floating point.

pub mod audit;
pub mod cohomology;
pub mod collisions;
pub mod error;
pub mod export;
pub mod geography;
pub mod invariants;
pub mod surface;

pub use audit::{audit, bpf_exception_locus, AuditReport, ConditionId};
pub use cohomology::{cohomology, h0_lattice_oracle, serre_dual, CohomologyTable};
pub use error::{Error, Result};
pub use geography::{enumerate_points, point_of, GeographyLine, GeographyPoint};
pub use invariants::{invariants, moduli_dimension, CoverInvariants};
pub use surface::{canonical_class, intersect, DivisorClass, Polarization, SurfaceBase};

pub(crate) mod ratio_serde {
    use num_rational::Ratio;
    use serde::ser::SerializeTuple;
    use serde::Serializer;

    /// `"p/q"`, or `"p"` for integers.
    pub fn serialize<S: Serializer>(r: &Ratio<i128>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn serialize_pair<S: Serializer>(p: &(Ratio<i128>, Ratio<i128>), s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&p.0.to_string())?;
        t.serialize_element(&p.1.to_string())?;
        t.end()
    }
}
