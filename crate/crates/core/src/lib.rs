//! Exact machinery for quantum automatic complexity.
//!
//! * [`exactfield`]: cyclotomic fields ℚ(ζ_N) with canonical element forms.
//! * [`projlinalg`]: small matrices over those fields, projective classes of
//!   matrices and points.
//! * [`groups`]: finite subgroups of U(2)/PU(2), closure, commuting exponents.
//! * [`automata`]: quantum DFAs, orbit automata, uniqueness certificates,
//!   witness search and permutation automatic complexity.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod automata;
pub mod exactfield;
pub mod groups;
pub mod projlinalg;
