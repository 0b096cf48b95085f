//! Exact classical simulation of concordant quantum circuits.
//!
//! A circuit is concordant when its state stays diagonal in some product of
//! local bases after every gate. Such a state is a probability distribution
//! over dit strings, and each gate acts on it as a permutation once the new
//! local basis is known. This crate finds those bases exactly (rational and
//! algebraic arithmetic, no floating point), builds the resulting update
//! rule, and samples or enumerates measurement outcomes from it.
//!
//! Modules, bottom up:
//!
//! - [`exactnum`]: Gaussian rationals, matrices, Bareiss elimination, Sturm
//!   root isolation, algebraic numbers and number fields.
//! - [`circuit`]: registers, gates with a `1/sqrt(n)` normalization, local
//!   bases, initial states and the JSON circuit format.
//! - [`frase`]: quantum-classical decomposition of a dense state across a cut.
//! - [`lbf`]: the local-basis finder, which either derives the new basis and
//!   permutation for a gate or heralds an incompatibility.
//! - [`cliffordsym`]: Pauli propagation through NOT/CNOT/SWAP circuits and the
//!   symmetry test for diagonal product states.
//! - [`simulator`]: update rules, trajectories, shots and exact marginals.
//! - [`oracle`]: dense density-matrix evolution used as a reference.
//! - [`generate`]: random concordant gates and circuits with known answers.
//! - [`cli`]: the `concordant` command line.

pub mod exactnum;
pub mod circuit;
pub mod tensor;
pub mod frase;
pub mod lbf;
pub mod generate;
pub mod cliffordsym;
pub mod simulator;
pub mod oracle;
pub mod cli;
