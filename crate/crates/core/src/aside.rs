//! The orbifold cohomology ring of `P(w)` and its three-point Gromov-Witten
//! values with one divisor insertion.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{self, format_rational, int, Rational};
use crate::spectral::{self, Sector, SpectrumTable, Weights};

/// A basis class `eta^d_gamma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohClass {
    pub gamma: Rational,
    /// Index of `gamma` in the table's sector list.
    pub sector: usize,
    /// Power `d` of the hyperplane class, `0 <= d < delta(gamma)`.
    pub power: usize,
    /// Flat index `kmin({1 - gamma}) + d`.
    pub flat: usize,
    /// Orbifold degree divided by two, `d + age(gamma)`.
    pub half_degree: Rational,
}

impl CohClass {
    /// Machine label `eta[d,gamma]`.
    pub fn label(&self) -> String {
        format!("eta[{},{}]", self.power, format_rational(&self.gamma))
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A scalar multiple of a basis class, or the zero class.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScaledClass {
    Zero,
    Multiple { coeff: Rational, class: CohClass },
}

impl ScaledClass {
    pub fn coeff(&self) -> Rational {
        match self {
            ScaledClass::Zero => Rational::zero(),
            ScaledClass::Multiple { coeff, .. } => coeff.clone(),
        }
    }

    pub fn flat(&self) -> Option<usize> {
        match self {
            ScaledClass::Zero => None,
            ScaledClass::Multiple { class, .. } => Some(class.flat),
        }
    }
}

/// The obstruction bundle over the moduli of constant twisted maps: a sum of
/// line bundles `O(w_j)` for `j` in `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionBundle {
    pub indices: Vec<usize>,
    pub rank: usize,
    pub summand_weights: Vec<u64>,
}

/// Provenance of a three-point value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GwStatus {
    /// Degree-zero value, equal to the classical triple tensor.
    Classical,
    /// Positive-degree value that is proven (projective space).
    QuantumTheorem,
    /// Positive-degree value that relies on the conjectured closed form.
    QuantumConjecture,
    /// Vanishes by the degree selection rule (coprime case).
    Zero,
    /// Not determined: the selection rule is only known when `gcd(mu, lcm w) = 1`,
    /// and a single weight `w > 1` has no divisor class to insert.
    Unsupported,
}

impl GwStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            GwStatus::Classical => "classical",
            GwStatus::QuantumTheorem => "quantum-theorem",
            GwStatus::QuantumConjecture => "quantum-conjecture",
            GwStatus::Zero => "zero",
            GwStatus::Unsupported => "unsupported",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GwValue {
    pub value: Rational,
    pub status: GwStatus,
}

/// Degree of the curve class `A(j, k)` against the hyperplane class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveDegree {
    pub value: Rational,
    /// `lcm(w) * value` is a natural number.
    pub effective: bool,
}

/// Initial matrices on the cohomology side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyMatrices {
    pub a0: Matrix,
    pub a_inf: Matrix,
    /// Some conjectural three-point value entered `a0`.
    pub conjecture_used: bool,
    /// Cells of `a0` that depend on an unsupported value (set to zero).
    pub unsupported: Vec<(usize, usize)>,
}

/// Orbifold cohomology of `P(w)` in the flat basis.
#[derive(Debug, Clone)]
pub struct OrbifoldCohomology {
    table: SpectrumTable,
    basis: Vec<CohClass>,
}

impl OrbifoldCohomology {
    pub fn new(weights: &Weights) -> Result<Self> {
        Ok(Self::from_table(spectral::build_spectrum(weights)?))
    }

    pub fn from_table(table: SpectrumTable) -> Self {
        let mu = table.mu();
        let basis = (0..mu)
            .map(|i| {
                let gamma = rational::fract(&(int(1) - table.gamma(i)));
                let sector = table
                    .sector_index(&gamma)
                    .expect("S_w is closed under gamma -> {1 - gamma}");
                let dual_kmin = table.sector_of_slot(i).kmin;
                let power = i - dual_kmin;
                let half_degree = int(power as i64) + &table.sectors()[sector].age;
                CohClass {
                    gamma,
                    sector,
                    power,
                    flat: i,
                    half_degree,
                }
            })
            .collect();
        Self { table, basis }
    }

    pub fn table(&self) -> &SpectrumTable {
        &self.table
    }

    pub fn weights(&self) -> &Weights {
        self.table.weights()
    }

    pub fn mu(&self) -> usize {
        self.table.mu()
    }

    /// Basis classes ordered by flat index.
    pub fn basis(&self) -> &[CohClass] {
        &self.basis
    }

    pub fn class(&self, flat: usize) -> Result<&CohClass> {
        self.table.check_slot(flat).map(|i| &self.basis[i])
    }

    /// The class `eta^d_gamma`.
    pub fn class_of(&self, gamma: &Rational, power: usize) -> Result<&CohClass> {
        let dual = rational::fract(&(int(1) - gamma));
        let sec = self.table.sector(&dual)?;
        if power >= sec.delta() {
            return Err(Error::IndexOutOfRange {
                index: power,
                bound: sec.delta(),
            });
        }
        Ok(&self.basis[sec.kmin + power])
    }

    fn sector(&self, c: &CohClass) -> &Sector {
        &self.table.sectors()[c.sector]
    }

    /// Orbifold Poincare pairing.
    pub fn pairing(&self, c1: &CohClass, c2: &CohClass) -> Rational {
        let s1 = self.sector(c1);
        let s2 = self.sector(c2);
        let dual = s1.num * s2.den + s2.num * s1.den == s1.den * s2.den || (s1.num == 0 && s2.num == 0);
        if dual && c1.power + c2.power + 1 == s1.delta() {
            s1.fixed_product.recip()
        } else {
            Rational::zero()
        }
    }

    pub fn pairing_matrix(&self) -> Matrix {
        Matrix::from_fn(self.mu(), |i, j| self.pairing(&self.basis[i], &self.basis[j]))
    }

    /// The obstruction bundle for a triple of sectors with integral sum.
    pub fn obstruction_bundle(&self, g0: &Rational, g1: &Rational, g_inf: &Rational) -> Result<ObstructionBundle> {
        let w = self.weights();
        let secs = [
            spectral::sector(w, g0)?,
            spectral::sector(w, g1)?,
            spectral::sector(w, g_inf)?,
        ];
        let sum = g0 + g1 + g_inf;
        if !sum.is_integer() {
            return Err(Error::Degenerate(format!(
                "sector sum {} is not an integer",
                format_rational(&sum)
            )));
        }
        let indices = obstruction_indices(w.values(), [&secs[0], &secs[1], &secs[2]]);
        let summand_weights = indices.iter().map(|&i| w.values()[i]).collect();
        Ok(ObstructionBundle {
            rank: indices.len(),
            indices,
            summand_weights,
        })
    }

    /// Orbifold three-point tensor `<c0, c1, c2>` (degree zero).
    pub fn triple_tensor(&self, c0: &CohClass, c1: &CohClass, c2: &CohClass) -> Rational {
        let secs = [self.sector(c0), self.sector(c1), self.sector(c2)];
        if !integral_sum(&secs) {
            return Rational::zero();
        }
        let total = &c0.half_degree + &c1.half_degree + &c2.half_degree;
        if total != int(self.table.dim() as i64) {
            return Rational::zero();
        }
        let w = self.weights().values();
        let j = obstruction_indices(w, secs);
        let common = secs[0]
            .fixed
            .iter()
            .copied()
            .filter(|&i| secs[1].is_fixed(i) && secs[2].is_fixed(i));
        rational::weight_product(w, j) / rational::weight_product(w, common)
    }

    /// Orbifold cup product.
    pub fn cup(&self, c0: &CohClass, c1: &CohClass) -> ScaledClass {
        let gamma = rational::fract(&(&c0.gamma + &c1.gamma));
        let Some(target) = self.table.sector_index(&gamma) else {
            return ScaledClass::Zero;
        };
        let st = &self.table.sectors()[target];
        let power = &c0.half_degree + &c1.half_degree - &st.age;
        debug_assert!(power.is_integer() && power >= Rational::zero());
        let power = rational::floor_i64(&power) as usize;
        if power >= st.delta() {
            return ScaledClass::Zero;
        }
        let (s0, s1) = (self.sector(c0), self.sector(c1));
        let w = self.weights().values();
        let dual = self
            .table
            .sector(&rational::fract(&(int(1) - &gamma)))
            .expect("S_w is closed under gamma -> {1 - gamma}");
        let mut k = obstruction_indices(w, [s0, s1, dual]);
        k.extend(
            st.fixed
                .iter()
                .copied()
                .filter(|&i| !(s0.is_fixed(i) && s1.is_fixed(i))),
        );
        let coeff = rational::weight_product(w, k);
        let class = self.basis[dual.kmin + power].clone();
        debug_assert_eq!(class.gamma, gamma);
        ScaledClass::Multiple { coeff, class }
    }

    /// `int eta_0^n = 1 / prod w_i`.
    pub fn top_integral(&self) -> Rational {
        let w = self.weights().values();
        rational::weight_product(w, 0..w.len()).recip()
    }

    /// Index of the hyperplane class `eta_1` (`0` when `mu = 1`).
    pub fn hyperplane(&self) -> usize {
        1 % self.mu()
    }

    /// `int_{A(j,k)} eta_1 = (1 + j + k - n)/mu - s(j) - s(k)`.
    pub fn gw_degree(&self, j: usize, k: usize) -> Result<CurveDegree> {
        let (j, k) = (self.table.check_slot(j)?, self.table.check_slot(k)?);
        let t = &self.table;
        let value = rational::ratio(1 + j as i64 + k as i64 - t.dim() as i64, t.mu() as i64) - t.gamma(j) - t.gamma(k);
        let scaled = &value * int(self.weights().lcm() as i64);
        Ok(CurveDegree {
            effective: rational::is_natural(&scaled),
            value,
        })
    }

    /// `((eta_1, eta_j, eta_k))`, the three-point value at the origin.
    pub fn gw_three_point(&self, j: usize, k: usize) -> Result<GwValue> {
        let (j, k) = (self.table.check_slot(j)?, self.table.check_slot(k)?);
        let t = &self.table;
        let (mu, n) = (t.mu(), t.dim());
        let w = self.weights();
        if n == 0 && mu > 1 {
            return Ok(GwValue {
                value: Rational::zero(),
                status: GwStatus::Unsupported,
            });
        }
        if (1 + j + k) % mu != n % mu {
            let status = if w.is_coprime() {
                GwStatus::Zero
            } else {
                GwStatus::Unsupported
            };
            return Ok(GwValue {
                value: Rational::zero(),
                status,
            });
        }
        let pj = &t.sector_of_slot(j).fixed_product;
        let sigma = t.newton_degree(self.hyperplane()) + t.newton_degree(j) + t.newton_degree(k);
        if sigma == int(n as i64) {
            return Ok(GwValue {
                value: pj.recip(),
                status: GwStatus::Classical,
            });
        }
        let pk = &t.sector_of_slot(k).fixed_product;
        let status = if w.is_projective_space() {
            GwStatus::QuantumTheorem
        } else {
            GwStatus::QuantumConjecture
        };
        Ok(GwValue {
            value: (pj * pk).recip(),
            status,
        })
    }

    /// `(A0, A_inf)`: Euler multiplication at the origin, obtained from the
    /// three-point values through the inverse pairing, and the grading.
    pub fn a_matrices(&self) -> Result<CohomologyMatrices> {
        let mu = self.mu();
        let g_inv = self.pairing_matrix().inverse()?;
        let mut triples = Matrix::zeros(mu);
        let mut conjecture_used = false;
        let mut missing = vec![false; mu * mu];
        for j in 0..mu {
            for k in 0..mu {
                let v = self.gw_three_point(j, k)?;
                match v.status {
                    GwStatus::QuantumConjecture => conjecture_used = true,
                    GwStatus::Unsupported => missing[j * mu + k] = true,
                    _ => {}
                }
                triples[(k, j)] = v.value;
            }
        }
        let a0 = g_inv.mul(&triples).scale(&int(mu as i64));
        let mut unsupported = Vec::new();
        for a in 0..mu {
            for j in 0..mu {
                if (0..mu).any(|k| missing[j * mu + k] && !g_inv[(a, k)].is_zero()) {
                    unsupported.push((a, j));
                }
            }
        }
        let a_inf = Matrix::diagonal(self.basis.iter().map(|c| c.half_degree.clone()).collect());
        Ok(CohomologyMatrices {
            a0,
            a_inf,
            conjecture_used,
            unsupported,
        })
    }
}

/// `gamma_0 + gamma_1 + gamma_2` is an integer.
pub(crate) fn integral_sum(secs: &[&Sector; 3]) -> bool {
    let l = secs.iter().fold(1u128, |l, s| num_integer::lcm(l, s.den as u128));
    let total: u128 = secs.iter().map(|s| s.num as u128 * (l / s.den as u128)).sum();
    total.is_multiple_of(l)
}

/// `J = { i : {g0 w_i} + {g1 w_i} + {g2 w_i} = 2 }`.
pub(crate) fn obstruction_indices(w: &[u64], secs: [&Sector; 3]) -> Vec<usize> {
    let l = secs.iter().fold(1u128, |l, s| num_integer::lcm(l, s.den as u128));
    (0..w.len())
        .filter(|&i| {
            let total: u128 = secs
                .iter()
                .map(|s| s.frac_num(w[i]) as u128 * (l / s.den as u128))
                .sum();
            total == 2 * l
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn coh(w: &[u64]) -> OrbifoldCohomology {
        OrbifoldCohomology::new(&Weights::new(w.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn basis_of_1_2() {
        let c = coh(&[1, 2]);
        let hd: Vec<_> = c.basis().iter().map(|b| b.half_degree.clone()).collect();
        assert_eq!(hd, vec![int(0), int(1), ratio(1, 2)]);
        assert_eq!(c.basis()[2].gamma, ratio(1, 2));
        assert_eq!(c.basis()[1].power, 1);
    }

    #[test]
    fn basis_grouping() {
        let c = coh(&[1, 2, 2, 3, 3, 3]);
        let count = |g: Rational| c.basis().iter().filter(|b| b.gamma == g).count();
        assert_eq!(count(int(0)), 6);
        assert_eq!(count(ratio(1, 3)), 3);
        assert_eq!(count(ratio(1, 2)), 2);
        assert_eq!(count(ratio(2, 3)), 3);
        for b in c.basis() {
            assert_eq!(&b.half_degree, c.table().newton_degree(b.flat));
        }
    }

    #[test]
    fn pairing_blocks() {
        let c = coh(&[1, 2, 2, 3, 3, 3]);
        let e = |g: Rational, d| c.class_of(&g, d).unwrap().clone();
        assert_eq!(c.pairing(&e(int(0), 1), &e(int(0), 4)), ratio(1, 108));
        assert_eq!(c.pairing(&e(ratio(1, 3), 0), &e(ratio(2, 3), 2)), ratio(1, 27));
        assert_eq!(c.pairing(&e(ratio(1, 2), 0), &e(ratio(1, 2), 1)), ratio(1, 4));
        assert_eq!(c.pairing(&e(ratio(1, 3), 0), &e(ratio(2, 3), 1)), int(0));
    }

    #[test]
    fn obstruction_examples() {
        let c = coh(&[1, 2, 2, 3, 3, 3]);
        let third = ratio(1, 3);
        let b = c.obstruction_bundle(&third, &third, &third).unwrap();
        assert_eq!(b.summand_weights, vec![2, 2]);
        let two = ratio(2, 3);
        let b = c.obstruction_bundle(&two, &two, &two).unwrap();
        assert_eq!(b.summand_weights, vec![1]);
        assert_eq!(c.obstruction_bundle(&int(0), &int(0), &int(0)).unwrap().rank, 0);
        assert!(c.obstruction_bundle(&third, &int(0), &int(0)).is_err());
    }

    #[test]
    fn triples_and_cups() {
        let c = coh(&[1, 2, 2, 3, 3, 3]);
        let e = |g: Rational, d| c.class_of(&g, d).unwrap().clone();
        let t = e(ratio(1, 3), 0);
        assert_eq!(c.triple_tensor(&t, &t, &t), ratio(4, 27));
        let h = e(ratio(1, 2), 0);
        assert_eq!(c.triple_tensor(&e(int(0), 0), &h, &e(ratio(1, 2), 1)), ratio(1, 4));
        assert_eq!(
            c.cup(&t, &t),
            ScaledClass::Multiple {
                coeff: int(4),
                class: e(ratio(2, 3), 2)
            }
        );
        let tt = e(ratio(2, 3), 0);
        assert_eq!(
            c.cup(&tt, &tt),
            ScaledClass::Multiple {
                coeff: int(1),
                class: e(ratio(1, 3), 1)
            }
        );
        assert_eq!(c.top_integral(), ratio(1, 108));
    }

    #[test]
    fn gw_examples() {
        let c = coh(&[1, 2]);
        assert_eq!(
            c.gw_degree(1, 2).unwrap(),
            CurveDegree {
                value: ratio(1, 2),
                effective: true
            }
        );
        let v = c.gw_three_point(0, 0).unwrap();
        assert_eq!((v.value, v.status), (ratio(1, 2), GwStatus::Classical));
        let v = c.gw_three_point(1, 2).unwrap();
        assert_eq!((v.value, v.status), (ratio(1, 4), GwStatus::QuantumConjecture));
        assert!(c.gw_three_point(3, 0).is_err());

        let p1 = coh(&[1, 1]);
        let v = p1.gw_three_point(1, 1).unwrap();
        assert_eq!((v.value, v.status), (int(1), GwStatus::QuantumTheorem));

        let big = coh(&[1, 2, 2, 3, 3, 3]);
        assert_eq!(big.gw_degree(5, 13).unwrap().value, ratio(1, 3));
        assert_eq!(big.gw_three_point(0, 0).unwrap().status, GwStatus::Unsupported);
    }

    #[test]
    fn a_matrix_cycle() {
        let c = coh(&[1, 2, 2, 3, 3, 3]);
        let m = c.a_matrices().unwrap();
        assert_eq!(m.a0[(6, 5)], ratio(7, 54));
        assert_eq!(m.a0[(9, 8)], ratio(14, 27));
        assert_eq!(m.a0[(11, 10)], ratio(7, 2));
        assert_eq!(m.a0[(0, 13)], ratio(14, 27));
        assert_eq!(m.a0[(1, 0)], int(14));
        let p2 = coh(&[1, 1, 1]);
        let m = p2.a_matrices().unwrap();
        assert_eq!(m.a0[(1, 0)], int(3));
        assert_eq!(m.a0[(0, 2)], int(3));
        assert!(!m.conjecture_used);
        assert_eq!(m.a_inf, Matrix::diagonal(vec![int(0), int(1), int(2)]));
    }
}
