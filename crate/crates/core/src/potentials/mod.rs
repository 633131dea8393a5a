//! Quantum and classical potentials of the mapped solutions, and the
//! closed-form vortex wavefunction obtained for lambda = 0, R = const.

mod psi;
mod quantum;

pub use psi::{winding_number, PsiModel, PsiRegime, PsiSample};
pub use quantum::{classical_potential, kinetic_term, quantum_potential, quantum_potential_literal, QPotentialArgs};
