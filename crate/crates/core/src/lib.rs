//! Exact computational algebra around Boolean-coefficient Steinberg algebras.
//!
//! The crate has three layers:
//!
//! * finite semiring machinery: operation-table algebras, congruence closure,
//!   congruence-simpleness, ideals and homomorphism kernels ([`algebra`],
//!   [`congruence`], [`semiring`]);
//! * combinatorial models: directed graphs with infinite-emitter bundles,
//!   finite discrete groupoids, and the groupoid of a finite acyclic graph
//!   ([`graph`], [`groupoid`], [`semilattice`]);
//! * the symbolic layer: compact open cylinder sets with their union/convolution
//!   calculus, and Leavitt path algebra terms with the natural map into the
//!   cylinder algebra ([`cylinder`], [`lpa`]).
//!
//! Everything is exact and deterministic. Tropical coefficients use arbitrary
//! precision rationals with a distinguished bottom element, never floats.
//! Randomised law checks ([`verify`]) draw from a seeded generator so reports
//! are reproducible.

pub mod algebra;
pub mod congruence;

pub mod cylinder;
pub mod graph;
pub mod groupoid;
pub mod limits;
pub mod lpa;
pub mod semilattice;
pub mod semiring;
pub mod verify;

pub use algebra::{function_algebra, group_semiring, matrix_semiring, FiniteAlgebra, GroupTable};
pub use congruence::{
    congruence_closure, hom_kernel, ideal_closure, is_congruence_simple, AlgebraHom, Congruence,
    HomKernel, SimplenessVerdict,
};
pub use cylinder::{cylinder_compare, Cylinder, CylinderRelation, SteinbergElt};
pub use graph::{
    all_hereditary_saturated, condition_l, cycle_has_exit, enumerate_cycles, hs_closure,
    only_trivial_hs, steinberg_simple_decision, Cycle, DecisionVerdict, EdgeRef, Graph, Path,
    VertexClass,
};
pub use groupoid::{
    build_groupoid, graph_groupoid_finite, steinberg_finite, verify_simpleness_theorem,
    FiniteGroupoid, GraphGroupoid, GroupoidSpec, TheoremReport,
};
pub use limits::Limits;
pub use lpa::{
    ck_uniqueness_check, eval_cycle_poly, graded_uniqueness_check, lpa_equals, pi_e,
    rose_omega_demo, GenImages, LaurentPoly, LpaTerm, TargetAlgebra, UniquenessVerdict,
};
pub use semilattice::{semilattice_check_noniso, NonIsoReport, Semilattice};
pub use semiring::{check_congruence_axioms, instantiate_semiring, SemiringDescriptor, Value};
pub use verify::{run_all, CheckLine};
