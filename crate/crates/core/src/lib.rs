//! Subgroup lattices of small finite groups, transfer systems on them and on
//! abstract posets, the pushforward/pullback correspondence with the poset of
//! conjugacy classes, and structural tests (losslessness, metacyclic Frobenius
//! structure) that drive it.
//!
//! The crate is `no_std` + `alloc`; all heavy state (groups, lattices,
//! relations) is immutable after construction and safe to share.

#![no_std]

extern crate alloc;

pub mod bitset;
pub mod error;
pub mod group;
pub mod lattice;
pub mod lifting;
pub mod lossless;
pub mod mcf;
pub mod poset;
pub mod sl2;
pub mod transfer;

pub use bitset::{BitMatrix, BitSet};
pub use error::{Error, Result};
pub use group::{build_group, build_group_bounded, Group, GroupSpec};
pub use lattice::{enumerate_subgroups, ClassInfo, ClassPoset, SubgroupLattice};
pub use lifting::{
    is_liftable, is_liftable_via_meets, lift_report, pi_preimage, pi_pushforward, pi_star,
    LiftReport,
};
pub use lossless::{
    is_lossless, is_pronormal, is_solvable, is_subnormal, is_t_group, is_t_group_two_step,
    is_universally_lossless, lossless_criteria, CriteriaReport, LosslessVerdict,
};
pub use mcf::{base, grid_iso, mcf_lift_violation, mcf_liftable, mcf_structure, McfStructure};
pub use poset::FinitePoset;
pub use sl2::{
    build_frame, build_frame_bounded, conjecture_check, decompose, is_split_transfer_system,
    lift_split, ConjectureFailure, ConjectureReport, Sl2Frame, SplitPart, SplitTransferSystem,
    SplitViolation,
};
pub use transfer::{
    cat_closure, enumerate_cat_transfer_systems, enumerate_g_transfer_systems, g_closure,
    is_cat_transfer_system, is_g_transfer_system, Relation, Violation,
};
