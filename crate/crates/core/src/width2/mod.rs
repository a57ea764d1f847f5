//! Width-2 approximation: products of primitive Q-matrices `Q(l) = [[l, 1], [1, 0]]`
//! whose value lies in `Q(f) + O(eps)`.

mod cert;
mod compile;
mod eval;
mod gadgets;
mod json;
mod modular;
mod program;
mod recover;
pub mod worked_example;

pub use cert::{
    check_det, check_q_membership, check_q_membership_with, error_degree_of, verify_claim, CheckMethod, ErrorDegree,
    DetCheck, QMembershipCert, EXACT_BUDGET, TOP_BUDGET,
};
pub use compile::{compile_width2, compile_width2_family, error_bound, length_bound, CompileStats, Compiler};
pub use eval::{
    degree_bounds, error_degree_bound, error_degree_from_top, eval_window, low_window, program_value, program_value_within, value_at,
    DegreeMatrix, Series, Window,
};
pub use gadgets::{gadget_a, gadget_b, gadget_c, q_add, q_mul, q_square};
pub use json::{CertJson, QProgramJson};
pub use modular::{det_at_random_points, reduce, value_mod_p, PRIME};
pub use program::{q_matrix, swap_matrix, Claim, ProgNode, QProgram};
pub use recover::{fib_degeneration, interpolate_exact, lagrange_weights_at_zero, FibDegeneration};
