//! Block encodings of ladder operators and their algebra: the `S₁`
//! primitive, qubit-frame conjugation, products of commuting encodings
//! (addition), upper-left products (multiplication), and powers of `a†`.

mod algebra;
mod encoding;

pub use algebra::{
    add, add_cost_bound, add_with, arb_power, arb_power_cost_bound, mult, mult_cost_bound, mult_with, power,
    power_cost_bound, power_generator, AddPlan, SynthesisBudget,
};
pub use encoding::{
    block_diagonal_generator, conditional_displacement_s1_time, conjugate, identity_encoding,
    interior_commutator_norm, interior_projector_on, lower_right_block, off_diagonal_generator,
    s1, s1_from_conditional_displacements, upper_left_block, upper_right_block, BlockEncoding, BlockKind,
};
