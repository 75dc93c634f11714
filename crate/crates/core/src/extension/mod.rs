//! Boundary data and their harmonic and monogenic extensions.

pub mod ball;
pub mod boundary;
pub mod catalog;
pub mod field;
pub mod halfspace;

pub use ball::{
    ball_poisson_kernel, disk_holomorphic_field, harmonic_gradient_ball, laplace_projection_norms,
    poisson_extend_ball, poisson_kernel_ball, ProjectionNorms,
};
pub use boundary::{
    BoundarySpec, CircleFourier, FourierTerm, GaussianFamily, GaussianTerm, SampledGrid, ZonalGegenbauer,
};
pub use catalog::{catalog_boundary, catalog_monogenic, halfspace_cauchy, CatalogField, CATALOG_IDS};
pub use field::{dirac_residual, FieldDomain, ParavectorField};
pub use halfspace::{
    fourier_extension, halfspace_kernel_field, halfspace_subordinated_field, kernel_extension,
    monogenic_extension_halfspace, poisson_extend_halfspace, poisson_extend_halfspace_fourier,
    riesz_conjugate, riesz_conjugate_fourier, spectral_nodes, subordinated, ExtensionValues,
    SubordinatedValues,
};
