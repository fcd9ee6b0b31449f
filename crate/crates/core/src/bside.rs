//! Frobenius data of the mirror Laurent polynomial: the Brieskorn-lattice
//! basis, the Jacobian product, the residue metric, the connection matrices
//! and the Newton-graded algebra.

use std::fmt;

use num_traits::Zero;

use crate::aside::{integral_sum, obstruction_indices};
use crate::error::Result;
use crate::frobenius::FrobeniusData;
use crate::matrix::Matrix;
use crate::rational::{self, int, Rational};
use crate::spectral::{self, SpectrumTable, Weights};

/// `prod w_i^{v_i}` with the exponent vector kept alongside the value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMonomial {
    pub exponents: Vec<i64>,
    pub value: Rational,
}

impl WeightMonomial {
    pub fn new(weights: &[u64], exponents: Vec<i64>) -> Self {
        let value = rational::monomial(weights, &exponents);
        Self { exponents, value }
    }

    /// `w^{a - b}` for multi-indices `a`, `b`.
    pub fn ratio(weights: &[u64], a: &[u64], b: &[u64]) -> Self {
        let exps = a.iter().zip(b).map(|(&x, &y)| x as i64 - y as i64).collect();
        Self::new(weights, exps)
    }
}

impl fmt::Display for WeightMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps: Vec<String> = self.exponents.iter().map(i64::to_string).collect();
        write!(f, "w^({}) = {}", exps.join(","), rational::format_rational(&self.value))
    }
}

/// Basis element `omega_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaClass {
    pub index: usize,
    pub multi_index: Vec<u64>,
    pub newton_degree: Rational,
    /// `omega~_k = rescale * omega_k`.
    pub rescale: WeightMonomial,
}

impl OmegaClass {
    /// Machine label `omega~[k]`.
    pub fn label(&self) -> String {
        format!("omega~[{}]", self.index)
    }
}

/// A scalar multiple of a basis element, or zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GradedProduct {
    Zero,
    Multiple { coeff: Rational, index: usize },
}

impl GradedProduct {
    pub fn coeff(&self) -> Rational {
        match self {
            GradedProduct::Zero => Rational::zero(),
            GradedProduct::Multiple { coeff, .. } => coeff.clone(),
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            GradedProduct::Zero => None,
            GradedProduct::Multiple { index, .. } => Some(*index),
        }
    }
}

/// The Landau-Ginzburg side for `f = u_0 + ... + u_n` on `prod u_i^{w_i} = 1`.
#[derive(Debug, Clone)]
pub struct LandauGinzburg {
    table: SpectrumTable,
    omega: Vec<OmegaClass>,
}

impl LandauGinzburg {
    pub fn new(weights: &Weights) -> Result<Self> {
        Ok(Self::from_table(spectral::build_spectrum(weights)?))
    }

    pub fn from_table(table: SpectrumTable) -> Self {
        let w = table.weights().values().to_vec();
        let omega = (0..table.mu())
            .map(|k| {
                let kmin = table.sector_of_slot(k).kmin;
                OmegaClass {
                    index: k,
                    multi_index: table.multi_index(k).to_vec(),
                    newton_degree: table.newton_degree(k).clone(),
                    rescale: WeightMonomial::ratio(&w, table.multi_index(kmin), table.multi_index(k)),
                }
            })
            .collect();
        Self { table, omega }
    }

    pub fn table(&self) -> &SpectrumTable {
        &self.table
    }

    pub fn mu(&self) -> usize {
        self.table.mu()
    }

    fn w(&self) -> &[u64] {
        self.table.weights().values()
    }

    pub fn omega_basis(&self) -> &[OmegaClass] {
        &self.omega
    }

    /// `[omega_i] * [omega_j] = w^{a(i) + a(j) - a(i+j)} [omega_{i+j mod mu}]`.
    pub fn star(&self, i: usize, j: usize) -> Result<(WeightMonomial, usize)> {
        let (i, j) = (self.table.check_slot(i)?, self.table.check_slot(j)?);
        let t = &self.table;
        let exps = t
            .multi_index(i)
            .iter()
            .zip(t.multi_index(j))
            .zip(t.multi_index(i + j))
            .map(|((&a, &b), &c)| a as i64 + b as i64 - c as i64)
            .collect();
        Ok((WeightMonomial::new(self.w(), exps), (i + j) % self.mu()))
    }

    /// The product in the rescaled basis `omega~`.
    pub fn star_rescaled(&self, i: usize, j: usize) -> Result<(Rational, usize)> {
        let (c, m) = self.star(i, j)?;
        let r = |k: usize| &self.omega[k].rescale.value;
        Ok((c.value * r(i) * r(j) / r(m), m))
    }

    /// `(A0, A_inf)` of the Gauss-Manin connection in the basis `omega~`.
    pub fn connection_matrices(&self) -> (Matrix, Matrix) {
        let mu = self.mu();
        let t = &self.table;
        let mut a0 = Matrix::zeros(mu);
        for k in 0..mu {
            let from = t.multi_index(t.sector_of_slot(k).kmin);
            // past the last slot the recursion continues with a(mu) = w
            let to = if k + 1 < mu {
                t.multi_index(t.sector_of_slot(k + 1).kmin)
            } else {
                t.multi_index(mu)
            };
            let m = WeightMonomial::ratio(self.w(), from, to);
            a0[((k + 1) % mu, k)] = m.value * int(mu as i64);
        }
        let a_inf = Matrix::diagonal(self.omega.iter().map(|o| o.newton_degree.clone()).collect());
        (a0, a_inf)
    }

    /// Residue metric `[g](omega~_j, omega~_k)`.
    pub fn residue_pairing(&self, j: usize, k: usize) -> Result<Rational> {
        let (j, k) = (self.table.check_slot(j)?, self.table.check_slot(k)?);
        let (mu, n) = (self.mu(), self.table.dim());
        if (j + k) % mu != n % mu {
            return Ok(Rational::zero());
        }
        Ok(self.table.sector_of_slot(j).fixed_product.recip())
    }

    /// Residue metric in the unscaled basis `omega`, from the splitting
    /// `j = q mu/d + r` and `w^{a(r_j) + a(r_k) - a(n+1) - a(r_j + r_k - n)}`.
    pub fn residue_pairing_unscaled(&self, j: usize, k: usize) -> Result<Rational> {
        let (j, k) = (self.table.check_slot(j)?, self.table.check_slot(k)?);
        let (mu, n) = (self.mu(), self.table.dim());
        if (j + k) % mu != n % mu {
            return Ok(Rational::zero());
        }
        let block = mu / self.table.weights().gcd() as usize;
        let (rj, rk) = (j % block, k % block);
        let t = &self.table;
        let exps: Vec<i64> = (0..=n)
            .map(|i| {
                t.multi_index(rj)[i] as i64 + t.multi_index(rk)[i] as i64
                    - t.multi_index(n + 1)[i] as i64
                    - t.multi_index(rj + rk - n)[i] as i64
            })
            .collect();
        Ok(rational::monomial(self.w(), &exps))
    }

    /// `((omega~_1, omega~_j, omega~_k)) = [g](omega~_1 * omega~_j, omega~_k)`.
    pub fn b_triple_tensor(&self, j: usize, k: usize) -> Result<Rational> {
        let one = 1 % self.mu();
        let (c, m) = self.star_rescaled(one, j)?;
        Ok(c * self.residue_pairing(m, k)?)
    }

    /// Closed form of the three-point value with one `omega~_1` insertion.
    pub fn b_triple_closed_form(&self, j: usize, k: usize) -> Result<Rational> {
        let (j, k) = (self.table.check_slot(j)?, self.table.check_slot(k)?);
        let t = &self.table;
        let (mu, n) = (t.mu(), t.dim());
        if (1 + j + k) % mu != n % mu {
            return Ok(Rational::zero());
        }
        let pj = &t.sector_of_slot(j).fixed_product;
        let sigma = t.newton_degree(1 % mu) + t.newton_degree(j) + t.newton_degree(k);
        if sigma == int(n as i64) {
            Ok(pj.recip())
        } else {
            Ok((pj * &t.sector_of_slot(k).fixed_product).recip())
        }
    }

    /// Product of the Newton-graded algebra in the basis `omega`.
    pub fn graded_product(&self, i: usize, j: usize) -> Result<GradedProduct> {
        let (c, m) = self.star(i, j)?;
        let t = &self.table;
        if *t.newton_degree(m) == t.newton_degree(i) + t.newton_degree(j) {
            Ok(GradedProduct::Multiple {
                coeff: c.value,
                index: m,
            })
        } else {
            debug_assert!(*t.newton_degree(m) < t.newton_degree(i) + t.newton_degree(j));
            Ok(GradedProduct::Zero)
        }
    }

    /// Product of the Newton-graded algebra in the basis `omega~`.
    pub fn graded_product_rescaled(&self, i: usize, j: usize) -> Result<GradedProduct> {
        Ok(match self.graded_product(i, j)? {
            GradedProduct::Zero => GradedProduct::Zero,
            GradedProduct::Multiple { coeff, index } => {
                let r = |k: usize| &self.omega[k].rescale.value;
                GradedProduct::Multiple {
                    coeff: coeff * r(i) * r(j) / r(index),
                    index,
                }
            }
        })
    }

    /// Graded metric `[[g]](omega~_j, omega~_k)`: nonzero on pairs of dual
    /// sectors whose Newton degrees add up to `n`.
    pub fn graded_pairing(&self, j: usize, k: usize) -> Result<Rational> {
        let (j, k) = (self.table.check_slot(j)?, self.table.check_slot(k)?);
        let t = &self.table;
        let (sj, sk) = (t.sector_of_slot(j), t.sector_of_slot(k));
        let dual = rational::fract(&(&sj.gamma + &sk.gamma)).is_zero();
        let degree = t.newton_degree(j) + t.newton_degree(k) == int(t.dim() as i64);
        if dual && degree {
            Ok(sj.fixed_product.recip())
        } else {
            Ok(Rational::zero())
        }
    }

    /// Closed form of the graded three-point tensor at flat indices.
    pub fn graded_triple(&self, i: usize, j: usize, k: usize) -> Result<Rational> {
        let idx = [
            self.table.check_slot(i)?,
            self.table.check_slot(j)?,
            self.table.check_slot(k)?,
        ];
        let t = &self.table;
        let secs = idx.map(|x| t.sector_of_slot(x));
        if !integral_sum(&secs) {
            return Ok(Rational::zero());
        }
        let degree: Rational = idx.iter().map(|&x| t.newton_degree(x)).sum();
        if degree != int(t.dim() as i64) {
            return Ok(Rational::zero());
        }
        let duals = secs.map(|s| {
            t.sector(&rational::fract(&(int(1) - &s.gamma)))
                .expect("S_w is closed under gamma -> {1 - gamma}")
        });
        let w = self.w();
        let jset = obstruction_indices(w, duals);
        let common = secs[0]
            .fixed
            .iter()
            .copied()
            .filter(|&x| secs[1].is_fixed(x) && secs[2].is_fixed(x));
        Ok(rational::weight_product(w, jset) / rational::weight_product(w, common))
    }

    /// `[[g]](omega~_i u omega~_j, omega~_k)` from the graded product.
    pub fn graded_triple_via_product(&self, i: usize, j: usize, k: usize) -> Result<Rational> {
        match self.graded_product_rescaled(i, j)? {
            GradedProduct::Zero => Ok(Rational::zero()),
            GradedProduct::Multiple { coeff, index } => Ok(coeff * self.graded_pairing(index, k)?),
        }
    }

    /// `mu^mu / prod w_i^{w_i}`, the constant term of `det(x - A0)` up to sign.
    pub fn critical_constant(&self) -> Rational {
        critical_constant(self.table.weights())
    }

    /// `(A0, A_inf, g, e_0)` in the basis `omega~`.
    pub fn initial_conditions(&self) -> FrobeniusData {
        let mu = self.mu();
        let (a0, a_inf) = self.connection_matrices();
        let metric = Matrix::from_fn(mu, |j, k| self.residue_pairing(j, k).expect("indices in range"));
        FrobeniusData {
            a0,
            a_inf,
            metric,
            unit: 0,
        }
    }
}

/// `mu^mu / prod w_i^{w_i}`.
pub fn critical_constant(weights: &Weights) -> Rational {
    let w = weights.values();
    let mu = weights.mu() as i64;
    let num = rational::monomial(&[mu as u64], &[mu]);
    let den = rational::monomial(w, &w.iter().map(|&x| x as i64).collect::<Vec<_>>());
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn lg(w: &[u64]) -> LandauGinzburg {
        LandauGinzburg::new(&Weights::new(w.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn omega_data() {
        let b = lg(&[1, 2, 2, 3, 3, 3]);
        let o = &b.omega_basis()[6];
        assert_eq!(o.multi_index, vec![1; 6]);
        assert_eq!(o.newton_degree, ratio(4, 3));
        assert_eq!(o.rescale.value, int(1));
        let b = lg(&[1, 2]);
        assert_eq!(b.omega_basis()[2].multi_index, vec![1, 1]);
        assert_eq!(b.omega_basis()[2].newton_degree, ratio(1, 2));
        assert_eq!(lg(&[1]).omega_basis().len(), 1);
    }

    #[test]
    fn star_examples() {
        let b = lg(&[1, 2]);
        let (c, m) = b.star(1, 2).unwrap();
        assert_eq!((c.exponents, c.value, m), (vec![1, -1], ratio(1, 2), 0));
        for j in 0..3 {
            let (c, m) = b.star(0, j).unwrap();
            assert_eq!((c.value, m), (int(1), j));
        }
        let p = lg(&[1, 1, 1, 1]);
        let (c, m) = p.star(3, 2).unwrap();
        assert_eq!((c.value, m), (int(1), 1));
    }

    #[test]
    fn connection_cycle() {
        let b = lg(&[1, 2, 2, 3, 3, 3]);
        let (a0, _) = b.connection_matrices();
        assert_eq!(a0[(6, 5)], ratio(7, 54));
        assert_eq!(a0[(9, 8)], ratio(14, 27));
        assert_eq!(a0[(11, 10)], ratio(7, 2));
        assert_eq!(a0[(0, 13)], ratio(14, 27));
        let (a0, a_inf) = lg(&[1, 1, 1]).connection_matrices();
        assert_eq!(a0[(0, 2)], int(3));
        assert_eq!(a_inf, Matrix::diagonal(vec![int(0), int(1), int(2)]));
    }

    #[test]
    fn metrics() {
        let b = lg(&[1, 2, 2, 3, 3, 3]);
        assert_eq!(b.residue_pairing(0, 5).unwrap(), ratio(1, 108));
        assert_eq!(b.graded_pairing(6, 13).unwrap(), ratio(1, 27));
        assert_eq!(b.residue_pairing(0, 4).unwrap(), int(0));
        assert_eq!(lg(&[1, 2]).residue_pairing(2, 2).unwrap(), ratio(1, 2));
    }

    #[test]
    fn triples() {
        let b = lg(&[1, 2]);
        assert_eq!(b.b_triple_tensor(1, 2).unwrap(), ratio(1, 4));
        assert_eq!(b.b_triple_closed_form(1, 2).unwrap(), ratio(1, 4));
        let p2 = lg(&[1, 1, 1]);
        assert_eq!(p2.b_triple_tensor(2, 2).unwrap(), int(1));
        assert_eq!(p2.b_triple_tensor(1, 1).unwrap(), int(0));
    }

    #[test]
    fn graded_examples() {
        let b = lg(&[1, 2]);
        assert_eq!(b.graded_product(1, 2).unwrap(), GradedProduct::Zero);
        assert_eq!(
            b.graded_product(0, 2).unwrap(),
            GradedProduct::Multiple {
                coeff: int(1),
                index: 2
            }
        );
        let b = lg(&[1, 2, 2, 3, 3, 3]);
        // the images of eta^0_{1/3} and eta^2_{2/3}
        assert_eq!(
            b.graded_product_rescaled(11, 11).unwrap(),
            GradedProduct::Multiple {
                coeff: int(4),
                index: 8
            }
        );
        assert_eq!(
            b.graded_product_rescaled(6, 6).unwrap(),
            GradedProduct::Multiple {
                coeff: int(1),
                index: 12
            }
        );
        assert_eq!(b.graded_triple(11, 11, 11).unwrap(), ratio(4, 27));
        assert_eq!(b.graded_triple_via_product(11, 11, 11).unwrap(), ratio(4, 27));
        assert_eq!(b.graded_triple(6, 0, 0).unwrap(), int(0));
    }

    #[test]
    fn constants() {
        assert_eq!(critical_constant(&Weights::new(vec![1, 1]).unwrap()), int(4));
        assert_eq!(critical_constant(&Weights::new(vec![1, 2]).unwrap()), ratio(27, 4));
        assert_eq!(critical_constant(&Weights::new(vec![1, 1, 1]).unwrap()), int(27));
    }
}
