//! Printed formulas in the expression grammar; `@` stands for the section parameter.

use agdoid_core::matrixoper::MatrixPoly;
use agdoid_core::symjet::{qf, DiffPoly, Ring};

use crate::eval::function;
use crate::grammar::parse;
use crate::CliError;

/// Evaluates a reference formula with `@` replaced by `field`.
pub fn formula(ring: &Ring, text: &str, field: &str) -> Result<DiffPoly, CliError> {
    let e = parse(&text.replace('@', field))?;
    function(ring, &e, -8)
}

/// δT for the order-two section with parameter `@`.
pub const N2_ANCHOR: &str = "-k*@*T[1,0] - 2*k*T*@[1,0] + 1/2*k^3*@[3,0]";

/// The order-two section bracket of parameters a, b before the sign freeze.
pub const N2_BRACKET: &str = "k*a*b[1,0] - k*b*a[1,0]";

/// (δ₁T, δ₁W, δ₂T, δ₂W) at order three.
pub const N3_ANCHOR: [&str; 4] = [
    "-2*k^3*@[3,0] + 2*k*T*@[1,0] + k*T[1,0]*@",
    "-k^4*@[4,0] + 3*k*W*@[1,0] + k*W[1,0]*@ + k^2*T*@[2,0]",
    "k^4*@[4,0] - k^2*T*@[2,0] + 3*k*W*@[1,0] - 2*k^2*T[1,0]*@[1,0] + 2*k*W[1,0]*@ - k^2*T[2,0]*@",
    "2/3*k^5*@[5,0] - 4/3*k^3*T*@[3,0] - 2*k^3*T[1,0]*@[2,0] + 2/3*k*T^2*@[1,0] - 2*k^3*T[2,0]*@[1,0] \
     + 2*k^2*W[1,0]*@[1,0] + k^2*W[2,0]*@ - 2/3*k^3*T[3,0]*@ + 2/3*k*T*T[1,0]*@",
];

/// Order-three brackets of types (1,1), (1,2), (2,2) with parameters a, b: (ε1, ε2).
pub const N3_BRACKETS: [(&str, &str); 3] = [
    ("k*a*b[1,0] - k*b*a[1,0]", "0"),
    ("-k^2*b*a[2,0]", "-2*k*b*a[1,0] + k*a*b[1,0]"),
    (
        "2/3*k^3*b*a[3,0] - 2/3*k^3*a*b[3,0] + 2/3*k*T*a*b[1,0] - 2/3*k*T*b*a[1,0]",
        "k^2*b*a[2,0] - k^2*a*b[2,0]",
    ),
];

/// The order-two constraint.
pub const N2_CONSTRAINT: &str = "T[0,1] + k*mu*T[1,0] + 2*k*mu[1,0]*T - 1/2*k^3*mu[3,0]";

/// The order-three constraints (F^(1), F^(2)) with the two misprints repaired.
pub const N3_CONSTRAINTS: [&str; 2] = [
    "-T[0,1] - k^4*rho[4,0] + k^2*T*rho[2,0] - 3*k*W*rho[1,0] + 2*k^2*T[1,0]*rho[1,0] - 2*k*W[1,0]*rho \
     + k^2*T[2,0]*rho + 2*k^3*mu[3,0] - 2*k*T*mu[1,0] - k*T[1,0]*mu",
    "-W[0,1] - 2/3*k^5*rho[5,0] + 4/3*k^3*T*rho[3,0] + 2*k^3*T[1,0]*rho[2,0] - 2/3*k*T^2*rho[1,0] \
     + 2*k^3*T[2,0]*rho[1,0] - 2*k^2*W[1,0]*rho[1,0] - k^2*W[2,0]*rho + 2/3*k^3*T[3,0]*rho \
     - 2/3*k*T*T[1,0]*rho + k^4*mu[4,0] - 3*k*W*mu[1,0] - k*W[1,0]*mu - k^2*T*mu[2,0]",
];

/// Factors multiplying the section parameters in the cocycles: ε∂̄T, then ε1∂̄T + ε2∂̄W.
pub const N2_COCYCLE: &str = "T[0,1]";
pub const N3_COCYCLE: [&str; 2] = ["T[0,1]", "W[0,1]"];

fn kd(f: &DiffPoly, n: u32) -> DiffPoly {
    f.d_z_n(n).kappa_shift(n as i32)
}

/// The printed order-three lift with parameters (a, b). `printed_x31` keeps ∂² instead of κ²∂²
/// inside the first term of the (3,1) entry.
pub fn n3_lift(ring: &Ring, printed_x31: bool) -> Result<MatrixPoly, CliError> {
    let v = |n: &str| DiffPoly::var(ring, n, 0, 0);
    let (a, b, t, w) = (v("a")?, v("b")?, v("T")?, v("W")?);
    let s = &kd(&b, 2) - &(&t * &b);
    let (two, third) = (qf(2, 3), qf(1, 3));
    let inner = if printed_x31 { &b.d_z_n(2) - &(&t * &b) } else { s.clone() };
    let x11 = &s.scale(&two) - &kd(&a, 1);
    let x12 = &a - &kd(&b, 1);
    let x21 = &(&kd(&s, 1).scale(&two) - &kd(&a, 2)) + &(&w * &b);
    let x22 = -&s.scale(&third);
    let x31 = &(&(&kd(&inner, 2).scale(&two) - &kd(&a, 3)) + &kd(&(&w * &b), 1)) + &(&w * &a);
    let x32 = &(&(&kd(&s, 1).scale(&third) - &kd(&a, 2)) + &(&w * &b)) + &(&t * &a);
    let x33 = &(-&s.scale(&third)) + &kd(&a, 1);
    Ok(MatrixPoly::from_rows(ring, vec![vec![x11, x12, b], vec![x21, x22, a], vec![x31, x32, x33]])?)
}
