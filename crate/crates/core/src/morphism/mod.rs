//! Meadow homs, kernels, ideals, quotients, congruences and the categorical
//! constructions around them.

mod congruence;
mod enumerate;
mod functor;
mod hom;
mod ideal;
mod quotient;

pub use congruence::{congruence_quotient, CongruenceClasses};
pub use enumerate::enumerate_meadow_homs;
pub use functor::{
    adjoin_a, adjoin_a_hom, adjoint_transpose, adjoint_untranspose, base_ring, base_ring_hom,
    glue_over_zp, initial_hom, meadow_product, ProductMeadow, BOTTOM_NAME, GLUE_TOP, TOP_NAME,
};
pub use hom::{
    hom_apply, hom_build, hom_build_named, hom_is_injective, kernel, Injectivity, KernelKind,
    MeadowHom,
};
pub use ideal::{
    all_ideals, ideal_contains, ideal_elements, ideal_generators, ideal_is_whole, ideal_validate,
    kernel_ideal, maximal_ideals, normalize_ideal, rad, ring_ideals, IdealDesc, MeadowIdeal,
};
pub use quotient::{induced_hom, quotient, quotient_ring, QuotientKind, QuotientResult};
