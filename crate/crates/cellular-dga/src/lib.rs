//! Cellular differential graded algebras of Legendrian surface fronts over GF(2).
//!
//! The pipeline, bottom to top:
//!
//! - [`gf2`]: dense bit-packed matrices, graded bases, linear systems.
//! - [`front`]: the combinatorial model of a front — a polygonal complex whose
//!   cells carry sheet tables, plus inclusion records and swallowtail data —
//!   with a validator and a JSON format (`cellular-front/1`).
//! - [`dga`]: the free noncommutative differential over GF(2) generated by the
//!   sheet pairs of every cell, with the boundary-matrix calculus that defines it.
//! - [`chd`]: chain-level data attached to augmentations (per-vertex
//!   differentials, per-edge morphisms, per-face homotopies) and the
//!   bijection between the two descriptions.
//! - [`search`]: augmentation enumeration — a bit-sliced brute forcer and a
//!   propagation/branching solver that agree on small inputs.
//! - [`monodromy`]: fiber complexes at a base vertex and continuation maps
//!   along loop words, with the two obstruction flags derived from them.
//! - [`builders`]: concrete complexes (flying saucer, torus curve, swallowtail
//!   disks, trivalent-graph surfaces, the unknot conormal) and the trivalent
//!   graph corpus.

pub mod builders;
pub mod chd;
pub mod dga;
pub mod front;
pub mod gf2;
pub mod monodromy;
pub mod search;
