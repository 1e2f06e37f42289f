use super::FiniteLieRing;
use crate::coeff::CoeffDomain;
use crate::variety::{RelativelyFreeRing, VarietySpec};
use crate::wordlang::{parse_identity, Identity};

/// `[e1, e2] = e3` over `Z/m`.
pub fn heisenberg(m: u64) -> FiniteLieRing {
    FiniteLieRing::from_brackets(m, 3, &[(0, 1, vec![0, 0, 1])]).expect("valid table")
}

/// Strictly upper triangular `n × n` matrices over `Z/m` under the
/// commutator, on the basis of matrix units `E_ij`, `i < j`, in
/// lexicographic order.
pub fn strictly_upper_triangular(n: usize, m: u64) -> FiniteLieRing {
    let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let pos = |a: usize, b: usize| units.iter().position(|&u| u == (a, b));
    let d = units.len();
    let mut brackets = Vec::new();
    for (s, &(i, j)) in units.iter().enumerate() {
        for (t, &(k, l)) in units.iter().enumerate().skip(s + 1) {
            let mut v = vec![0i64; d];
            if j == k {
                v[pos(i, l).unwrap()] += 1;
            }
            if l == i {
                v[pos(k, j).unwrap()] -= 1;
            }
            if v.iter().any(|&c| c != 0) {
                brackets.push((s, t, v));
            }
        }
    }
    FiniteLieRing::from_brackets(m, d, &brackets).expect("valid table")
}

fn exported(identities: &[&str], rank: usize, class: usize, p: u64) -> FiniteLieRing {
    let domain = CoeffDomain::Modular(p);
    let r = if identities.is_empty() {
        RelativelyFreeRing::free(rank, class, domain)
    } else {
        let ids = identities.iter().map(|s| parse_identity(s).unwrap()).collect();
        RelativelyFreeRing::new(&VarietySpec::new(ids, domain).unwrap(), rank, class)
    };
    FiniteLieRing::from_relatively_free(&r.expect("small ring")).expect("nonzero quotient")
}

/// The bundled rings: abelian, Heisenberg, upper triangular, a simple ring,
/// a solvable non-nilpotent ring and quotients exported from the variety
/// engine. Classes 1 to 3, characteristics 2, 3 and 5.
pub fn corpus() -> Vec<(&'static str, FiniteLieRing)> {
    vec![
        ("abelian-2x2", FiniteLieRing::abelian(2, 2).unwrap()),
        ("abelian-3x2", FiniteLieRing::abelian(3, 2).unwrap()),
        ("heisenberg-mod2", heisenberg(2)),
        ("heisenberg-mod3", heisenberg(3)),
        ("heisenberg-mod5", heisenberg(5)),
        ("ut3-mod3", strictly_upper_triangular(3, 3)),
        ("ut4-mod2", strictly_upper_triangular(4, 2)),
        ("free-r2c3-mod2", exported(&[], 2, 3, 2)),
        ("engel2-r2c3-mod3", exported(&["(x,y,x) = 0"], 2, 3, 3)),
        (
            "sl2-mod3",
            FiniteLieRing::from_brackets(3, 3, &[(0, 1, vec![0, 2, 0]), (0, 2, vec![0, 0, -2]), (1, 2, vec![1, 0, 0])])
                .unwrap(),
        ),
        (
            "affine-mod3",
            FiniteLieRing::from_brackets(3, 2, &[(0, 1, vec![1, 0])]).unwrap(),
        ),
    ]
}

/// Identities checked against every corpus ring.
pub fn corpus_identities() -> Vec<Identity> {
    [
        "(x,y) = 0",
        "(x,y,x) = 0",
        "(x,y,z) = 0",
        "(x,y;x,z) = 0",
        "(x1,x2,x3) = (x1,x3,x2)",
        "(x,y,y,x) = 0",
        "(x1,x2;x3,x4) = 0",
    ]
    .iter()
    .map(|s| parse_identity(s).unwrap())
    .collect()
}
