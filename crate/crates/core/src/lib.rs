//! Permutations avoiding {2431, 4231, 1432, 4132}, their code words and
//! lattice paths, and a census of symmetry classes of four length-4 patterns.
//!
//! * [`perm`]: permutations, containment, symmetries, pattern sets.
//! * [`avoid`]: exhaustive generation and counting of avoiders.
//! * [`codeword`]: code words and the encode/decode bijection.
//! * [`lattice`]: paths below `y = x + i`, reflection, closed-form counts.
//! * [`wilf`]: symmetry classes and prefix matching against a target sequence.
//! * [`render`]: SVG and ASCII drawings of a code word's path.
//! * [`checks`]: self-verification suites.

pub mod avoid;
pub mod checks;
pub mod codeword;
pub mod error;
pub mod lattice;
pub mod numbers;
pub mod perm;
pub mod render;
pub mod wilf;

pub use avoid::{count_sequence, generate_avoiders, AvoiderSequence, AvoiderTree};
pub use codeword::{
    decode, encode, enumerate_codewords, p_statistic, validate, CodeLetter, CodeWord,
};
pub use error::{Error, Result};
pub use lattice::{LatticePath, PathFamily, Step};
pub use perm::{avoids_all, contains_pattern, symmetry_orbit, PatternSet, Permutation, Symmetry};
