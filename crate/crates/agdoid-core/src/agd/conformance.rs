use crate::symjet::{q, DiffPoly, Q, Ring};

/// One frozen normalization relating raw engine output to the printed formulas.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Constant {
    pub key: &'static str,
    pub value: &'static str,
    pub meaning: &'static str,
}

pub const TABLE: &[Constant] = &[
    Constant {
        key: "oper.convention",
        value: "minus",
        meaning: "L2 = k^2*Del^2 - T, L3 = k^3*Del^3 - T*k*Del - W; dW_j = -coeff(N-j) * k^-(N-j)",
    },
    Constant { key: "n2.dictionary", value: "y1 = -eps/k", meaning: "section eps*d/dz as a Volterra class, SL-corrected" },
    Constant {
        key: "n3.dictionary",
        value: "y1 = eps2/k, y2 = (eps1 - k*eps2[1,0])/k^2",
        meaning: "sections eps1*d/dz + eps2*d^2/dz^2, SL-corrected in the Del^-3 slot",
    },
    Constant { key: "n3.dictionary.inverse", value: "eps2 = k*y1, eps1 = k^2*y2 + k*eps2[1,0]", meaning: "read-back" },
    Constant { key: "section.tail", value: "omitted", meaning: "the unit Del^-(N+1) coefficient is invisible to anchor and pairing" },
    Constant {
        key: "pairing.scale",
        value: "-k",
        meaning: "int(eps1*dT + eps2*dW) = -k * int Res(X dL) for N = 2, 3",
    },
    Constant { key: "n2.bracket.sign", value: "-1", meaning: "lie_bracket = -1 * (eps1 k eps2' - eps2 k eps1')" },
    Constant { key: "n3.bracket.sign", value: "+1", meaning: "lie_bracket reproduces the printed N=3 brackets" },
    Constant {
        key: "bracket.window",
        value: "-N..-1",
        meaning: "the Del^-(N+1) slot of a bracket depends on representatives and is dropped",
    },
    Constant {
        key: "homomorphism.order",
        value: "D_Y o D_X - D_X o D_Y",
        meaning: "[d_X, d_Y] composes transformations right to left; equals d_[X,Y]",
    },
    Constant {
        key: "jacobi.variation",
        value: "+D_Z[X,Y]",
        meaning: "sum_cp([[X,Y],Z] + D_Z[X,Y]) = 0; the eps1 part of D_Z[X,Y] is 2/3 k (ab'-ba') dT",
    },
    Constant {
        key: "cocycle.coboundary",
        value: "D_X c(Y) - D_Y c(X) + c([X,Y])",
        meaning: "closedness test in the composition order above",
    },
    Constant {
        key: "central.leading",
        value: "1/d",
        meaning: "printed leading density = (1/d) * top part of d/dk of the scaled bracket, d = top power",
    },
    Constant { key: "n2.xi.sign", value: "+1", meaning: "xi = +embed_n2(mu), nu_3 = 1" },
    Constant { key: "n3.xi.sign", value: "-1", meaning: "xi = -embed_n3(mu, rho), nu_4 = 1" },
    Constant {
        key: "constraint.sign",
        value: "sigma_N",
        meaning: "printed F components = sigma_N * read_off(dbar L - (L xi)+ L + L (xi L)+)",
    },
    Constant {
        key: "hamiltonian.scale",
        value: "k",
        meaning: "int(eps . F) = k * int Res(Y F_op) for N = 2, 3; F_op = dbar L - (L xi)+ L + L (xi L)+",
    },
    Constant {
        key: "xi.anchor",
        value: "+dbar Y + 1/2 [Y(L xi)+ - (xi L)+ Y + (Y L)+ xi - xi (L Y)+]",
        meaning: "variation of xi generated by h_Y",
    },
    Constant {
        key: "poisson.sign",
        value: "-1",
        meaning: "{F,G} = -sum (E_q F E_p G - E_p F E_q G), so that {h_Y, T} = dT",
    },
    Constant {
        key: "hamiltonian.map",
        value: "{h_X, h_Y} = -h_[X,Y]",
        meaning: "the Lie algebra map in the composition order of homomorphism.order",
    },
    Constant {
        key: "linear.system",
        value: "dbar - (xi L)+",
        meaning: "second operator of the linear problem on ker L",
    },
    Constant {
        key: "brst.quadratic",
        value: "+1/2",
        meaning: "Omega = sum int eta_j F_j + c * sum int [eta,eta]_j P_j, a-jets left of b-jets in the polarized bracket",
    },
];

pub fn lookup(key: &str) -> Option<&'static Constant> {
    TABLE.iter().find(|c| c.key == key)
}

/// −κ.
pub fn pairing_scale(ring: &Ring) -> DiffPoly {
    -DiffPoly::kappa(ring, 1)
}

/// κ.
pub fn hamiltonian_scale(ring: &Ring) -> DiffPoly {
    DiffPoly::kappa(ring, 1)
}

pub fn bracket_sign(n: usize) -> Q {
    if n == 2 {
        q(-1)
    } else {
        q(1)
    }
}

pub fn xi_sign(n: usize) -> Q {
    if n == 2 {
        q(1)
    } else {
        q(-1)
    }
}
