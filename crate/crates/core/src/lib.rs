//! Degrees of k-partitions of Baire space at desk scale.
//!
//! The pieces fit together as follows. [`forest`] provides finite k-labeled
//! forests with the homomorphism preorder, minimization and canonical
//! forms; [`poset`] unfolds finite labeled posets into forests. [`lattice`]
//! materializes principal ideals of the degree quotient and the lattices
//! L*(A) / L(A) of a finite family of open sets, with isomorphism,
//! automorphy and equivalence-relation reducibility decisions on top.
//! [`partition`], [`transducer`], [`realizer`] and [`pi`] give the
//! executable prefix semantics: evaluation of the forest-generated
//! partitions and their combinators, continuous realizers synthesized from
//! morphisms, the totalizer, and the principal open-set representation.
//! [`hierarchy`] holds the finite-universe oracles for ω-Boolean
//! operations, the difference operator and ω-uniformization.

pub mod cli;
pub mod fmt;
pub mod forest;
pub mod hierarchy;
pub mod lattice;
pub mod partition;
pub mod pi;
pub mod poset;
pub mod realizer;
pub mod transducer;
