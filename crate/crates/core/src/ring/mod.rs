//! Exact arithmetic in a closed family of commutative rings and the
//! homomorphisms between them.

mod descriptor;
mod hom;
mod text;
mod value;

pub(crate) use descriptor::is_prime;
pub use descriptor::RingDescriptor;
pub(crate) use hom::check_inputs;
pub use hom::{
    enumerate_ring_homs, hom_agree, hom_collision, hom_validate, kernel_generator, HomRule,
    HomTable, KernelShape, RingHom,
};
pub use text::{parse_value, value_from_json, value_to_json};
pub use value::{
    random_value, ring_arith, ring_enumerate, ring_is_unit, ring_unit_inverse, sample_pool,
    Payload, RingOp, RingValue,
};
