//! B-side models: matrix factorizations, coherent generators on coordinate hypersurfaces,
//! descent over coordinate subspaces and nodal chains, and the torus/Kronecker model.

mod coh;
mod descent;
mod mf;
mod nodal;
mod torus;

pub use coh::{
    coh_expected, coh_ext_table, ext_table, fold_compare, fold_compare_pair, fold_tables, hypersurface_potential, hypersurface_ring,
    periodic_resolution, CohKind, CohTable, CoherentGenerator,
};
pub use descent::{box_points, cech_descent_check, find_free_quasi_iso, is_quasi_iso_on, shift_box, DescentComparison, DescentObject};
pub use mf::{mf_expected, mf_generator, mf_hom_cohomology, potential, potential_ring, MatrixFactorization, MfTable};
pub use nodal::{nodal_chain_ext, NodalChain, NodalGenerator, NodalTable};
pub use torus::{kronecker_dictionary, KroneckerModel, KroneckerRep, Pole, TorsionModule};

#[cfg(test)]
mod tests;
