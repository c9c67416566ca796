//! The bundled three-state system and the intermediate values it is known
//! to produce.

pub const WORKED_EXAMPLE: &str = include_str!("../../fixtures/worked_example.sys");

pub const G1: [&str; 3] = [
    "-1/2",
    "4*x1*x3^3 - 2*x3^3 + 4*x1*x2*x3 - 2*x2*x3 + x1 - 1/2",
    "-2*x1*x3^2 + x3^2 - 2*x1*x2 + x2",
];
pub const G2: [&str; 3] = ["0", "-4*x3^3 - 4*x2*x3 - 1", "2*x3^2 + 2*x2"];
pub const NU2: [&str; 3] = ["0", "1", "0"];
pub const NU1: [&str; 3] = ["8*x1*x3^3 - 4*x3^3 + 8*x1*x2*x3 - 4*x2*x3 + 2*x1 - 1", "1", "0"];
pub const NU0: [&str; 3] = [
    "8*x1*x3^3 - 4*x3^3 + 8*x1*x2*x3 - 4*x2*x3 + 2*x1 - 1",
    "4*x3^3 + 4*x2*x3 + 1",
    "8*x3^4 + 8*x2*x3^2 + 2*x3",
];
pub const Y: &str = "x1 - x1^2 - x2 - x3^2";
/// First-algorithm drift and input field after one step, in `z`.
pub const F1_Z: [&str; 2] = [
    "1/2*z1^2 + 1/2*z1 + 1/2*z2 + 1/2*z3",
    "-z1^3 - 3/2*z1^2 - z1*z2 - z1*z3 - 1/2*z1 - 1/2*z2 + 1/2*z3",
];
pub const G1_Z: [&str; 2] = ["-1/2", "z1 - 1/2"];
/// `L_f y` and `L_f² y`.
pub const LIE_CHAIN: [&str; 2] = ["x1^2 + x1 + x3^2 + x2", "x3^4 + 2*x2*x3^2 + x3 + x2^2"];
pub const RELATIVE_DEGREE: usize = 3;
