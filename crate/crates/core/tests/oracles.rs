//! Frozen values checked against oracles written independently of the
//! library code.

mod common;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use orbimirror::bside::critical_constant;
use orbimirror::rational::{format_rational, int, parse_rational, ratio};
use orbimirror::spectral::build_spectrum;
use orbimirror::wdvv::{exponents_of_length, reconstruct};
use orbimirror::{LandauGinzburg, Matrix, OrbifoldCohomology, Rational};

use common::{kontsevich, weights};

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

#[test]
fn kontsevich_oracle_values() {
    let n = kontsevich(5);
    let expected: Vec<BigInt> = [0, 1, 1, 12, 620, 87304].iter().map(|&v| BigInt::from(v)).collect();
    assert_eq!(n, expected);
}

#[test]
fn plane_potential_matches_oracle() {
    let pc = reconstruct(&weights(&[1, 1, 1]), 8).unwrap();
    let n = kontsevich(3);
    for (d, count) in n.iter().enumerate().skip(2) {
        let alpha = [0, 0, 3 * d as u32 - 1];
        assert_eq!(pc.get(&alpha).unwrap(), Rational::from_integer(count.clone()));
    }
    // only the classical cubic and the curve counts survive at alpha_1 = 0
    let support: Vec<_> = pc
        .representatives()
        .filter(|(_, v)| !v.is_zero())
        .map(|(a, _)| a.clone())
        .collect();
    assert_eq!(support, vec![vec![0, 0, 5], vec![0, 0, 8], vec![2, 0, 1]]);
}

#[test]
fn line_potential_is_exponential() {
    // F = t0^2 t1 / 2 + e^{t1}
    let pc = reconstruct(&weights(&[1, 1]), 9).unwrap();
    for len in 3..=9 {
        for alpha in exponents_of_length(2, len, None) {
            let expected = match alpha.as_slice() {
                [2, 1] | [0, _] => int(1),
                _ => int(0),
            };
            assert_eq!(pc.get(&alpha).unwrap(), expected, "{alpha:?}");
        }
    }
}

#[test]
fn inverse_metric_closed_form() {
    // g^{a a*} = prod_{I(s(a))} w_i against a generic inverse
    for v in [vec![1, 2], vec![1, 2, 2, 3, 3, 3], vec![2, 3, 5], vec![2, 4]] {
        let w = weights(&v);
        let lg = LandauGinzburg::new(&w).unwrap();
        let mu = w.mu();
        let g = Matrix::from_fn(mu, |j, k| lg.residue_pairing(j, k).unwrap());
        let inv = g.inverse().unwrap();
        let table = lg.table();
        for a in 0..mu {
            let astar = (w.dim() + mu - a) % mu;
            assert_eq!(inv[(a, astar)], table.sector_of_slot(a).fixed_product, "{v:?} {a}");
        }
        assert_eq!(g.mul(&inv), Matrix::identity(mu));
    }
}

#[test]
fn worked_example_spectrum() {
    let t = build_spectrum(&weights(&[1, 2, 2, 3, 3, 3])).unwrap();
    assert_eq!(t.newton_degree(6), &ratio(4, 3));
    assert_eq!(t.newton_degree(9), &int(2));
    assert_eq!(t.newton_degree(13), &ratio(11, 3));
    let sigma: Vec<String> = (0..3)
        .map(|k| format_rational(build_spectrum(&weights(&[1, 2])).unwrap().newton_degree(k)))
        .collect();
    assert_eq!(sigma, ["0", "1", "1/2"]);
}

#[test]
fn critical_values() {
    // mu^mu / prod w^w computed with plain integers
    for (v, expected) in [
        (vec![1, 2], "27/4"),
        (vec![1, 1, 1], "27"),
        (vec![1, 2, 2, 3, 3, 3], "694500426597376/19683"),
    ] {
        let w = weights(&v);
        let mu = w.mu() as u32;
        let num = BigInt::from(mu).pow(mu);
        let den = v
            .iter()
            .fold(BigInt::one(), |acc, &x| acc * BigInt::from(x).pow(x as u32));
        assert_eq!(Rational::new(num, den), q(expected));
        assert_eq!(critical_constant(&w), q(expected));
    }
}

#[test]
fn cohomology_char_poly() {
    // A0 on the cohomology side of P(1,2): x^3 - 27/4
    let coh = OrbifoldCohomology::new(&weights(&[1, 2])).unwrap();
    let m = coh.a_matrices().unwrap();
    assert_eq!(m.a0.char_poly(), vec![q("-27/4"), int(0), int(0), int(1)]);
}
