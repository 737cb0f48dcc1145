//! Heights of formal groups of Calabi-Yau threefolds of Delsarte type.
//!
//! A Delsarte threefold is cut out of weighted projective 4-space by a sum of
//! five monomials whose exponents form a square matrix `A`. In characteristic
//! `p` the height of its formal group is read off from one character: the
//! norm-zero solution of the congruences defined by `A`, reduced to its
//! primitive form modulo `d_A`. This crate computes that character exactly,
//! decides the height for any prime, tabulates heights over all residue
//! classes, and enumerates the Fermat and quasi-diagonal weight catalogs.
//!
//! ```
//! use delsarte::{height, DelsarteThreefold, Height, Prime, WeightSystem};
//!
//! let octic = DelsarteThreefold::from_fermat(WeightSystem::calabi_yau([1, 1, 1, 1, 4])).unwrap();
//! let r = height(&octic, Prime::new(3).unwrap()).unwrap();
//! assert_eq!(r.outcome, Height::Finite(2));
//! ```

pub mod arith;
pub mod catalog;
pub mod character;
pub mod cli;
pub mod error;
pub mod height;
pub mod linalg;
pub mod threefold;

pub use catalog::{
    build_atlas, classify_finite_heights, enumerate_fermat_weights,
    enumerate_quasidiagonal_weights, mirror_obstruction_flag, HeightAtlas, QuasiDiagonalRule,
    WeightRecord,
};
pub use character::{
    ah_bruteforce, enumerate_aset, find_alpha0, newton_low_slope_count, CharSet, CharacterVector,
};
pub use error::{Error, Result};
pub use height::{
    height, height_class, reduce_alpha0, spectrum, Height, HeightResult, ReducedCharacter,
    ResidueSpectrum,
};
pub use linalg::{determinant, kernel_mod, smith_normal_form, IntMatrix};
pub use threefold::{validate, ChainShape, DelsarteThreefold, Family, Prime, WeightSystem};
