//! Reconstruction of the Frobenius potential from the three-point values
//! `A_{1jk}(0)`, through Euler homogeneity and the WDVV equations.
//!
//! The potential is `F = sum_alpha A(alpha) t^alpha / alpha!`. Coefficients
//! with `alpha_1 > 0` follow from the Euler recursion
//! `A(alpha + e_1) = d(alpha) A(alpha) / mu` (for `|alpha| >= 3`), so only
//! representatives with `alpha_1 = 0` are stored; the rest is derived on
//! demand.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::aside::{GwStatus, OrbifoldCohomology};
use crate::bside::LandauGinzburg;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{self, format_rational, int, Rational};
use crate::spectral::{self, SpectrumTable, Weights};

/// An exponent vector `alpha` in `N^mu`.
pub type Exponent = Vec<u32>;

/// Euler field `sum (1 - sigma(k)) t_k d/dt_k + mu d/dt_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerField {
    pub linear: Vec<Rational>,
    pub constant: Rational,
    /// Coordinate carrying the constant part.
    pub slot: usize,
}

pub fn euler_field(weights: &Weights) -> Result<EulerField> {
    let table = spectral::build_spectrum(weights)?;
    let mu = table.mu();
    Ok(EulerField {
        linear: (0..mu).map(|k| int(1) - table.newton_degree(k)).collect(),
        constant: int(mu as i64),
        slot: 1 % mu,
    })
}

/// Where the values `A_{1jk}(0)` come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialData {
    /// The mirror three-point values (proven).
    Mirror,
    /// The cohomology-side values, conjectural off the classical pattern.
    Cohomology,
}

/// Everything but the coefficients: sizes, degrees, initial data and the
/// inverse metric.
#[derive(Debug, Clone)]
struct Frame {
    mu: usize,
    n: usize,
    sigma: Vec<Rational>,
    max_length: usize,
    /// `A_{1jk}(0)`, row-major in `(j, k)`.
    initial: Vec<Rational>,
    /// `(a*, g^{a a*})` for each `a`.
    inverse_metric: Vec<(usize, Rational)>,
}

/// Taylor coefficients of the potential up to a given length.
#[derive(Debug, Clone)]
pub struct PotentialCoefficients {
    frame: Arc<Frame>,
    /// Representatives with `alpha_1 = 0` and `3 <= |alpha| <= max_length`.
    coeffs: BTreeMap<Exponent, Rational>,
}

impl PotentialCoefficients {
    pub fn mu(&self) -> usize {
        self.frame.mu
    }

    pub fn max_length(&self) -> usize {
        self.frame.max_length
    }

    /// Stored representatives (`alpha_1 = 0`), in lexicographic order.
    pub fn representatives(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.coeffs.iter()
    }

    /// `d(alpha) = 3 - n + sum alpha_k (sigma(k) - 1)`.
    pub fn euler_degree(&self, alpha: &[u32]) -> Rational {
        self.frame.euler_degree(alpha)
    }

    /// `A_{1jk}(0)`.
    pub fn initial(&self, j: usize, k: usize) -> &Rational {
        self.frame.initial(j, k)
    }

    /// `A(alpha)` for any `alpha` with `|alpha| <= max_length`.
    pub fn get(&self, alpha: &[u32]) -> Result<Rational> {
        self.frame.check(alpha)?;
        self.frame.lookup(alpha, &mut |rep| stored(&self.coeffs, rep))
    }

    /// Replaces a stored representative; used to probe the residual checks.
    pub fn override_coefficient(&mut self, alpha: Exponent, value: Rational) {
        self.coeffs.insert(alpha, value);
    }

    /// Coefficient of `t^beta / beta!` in `LHS - RHS` of equation
    /// `(i, j, k, l)`.
    pub fn wdvv_residual(&self, i: usize, j: usize, k: usize, l: usize, beta: &[u32]) -> Result<Rational> {
        let mu = self.mu();
        for idx in [i, j, k, l] {
            if idx >= mu {
                return Err(Error::IndexOutOfRange { index: idx, bound: mu });
            }
        }
        if beta.len() != mu {
            return Err(Error::Reconstruction(format!("exponent {beta:?} has wrong size")));
        }
        if length(beta) + 3 > self.max_length() {
            return Err(Error::IndexOutOfRange {
                index: length(beta) + 3,
                bound: self.max_length() + 1,
            });
        }
        self.frame.equation([i, j, k, l], beta, &mut |a| self.get(a))
    }

    /// Checks every equation `(i, j, k, l)` at every `beta` with
    /// `|beta| + 3 = len`; returns the number of equations checked.
    ///
    /// For each split `beta = b1 + b2` the left-hand sides form the product
    /// of the `mu^2 x mu` matrix `A(b1 + e_i + e_j + e_a)` with the
    /// `mu x mu^2` matrix `g^{a a*} A(b2 + e_a* + e_k + e_l)`, so both sides are
    /// read off one accumulated `mu^2 x mu^2` table `S`:
    /// `LHS(i,j,k,l) = S[ij][kl]` and `RHS(i,j,k,l) = S[jk][il]`.
    pub fn audit_length(&self, len: usize) -> Result<usize> {
        let mu = self.mu();
        let mut cache: HashMap<Exponent, Rational> = HashMap::new();
        let mut value = |a: Exponent| -> Result<Rational> {
            if let Some(v) = cache.get(&a) {
                return Ok(v.clone());
            }
            let v = self.get(&a)?;
            cache.insert(a, v.clone());
            Ok(v)
        };
        let mut count = 0;
        for beta in exponents_of_length(mu, len - 3, None) {
            let mut table = vec![Rational::zero(); mu.pow(4)];
            for (b1, binom) in sub_exponents(&beta) {
                let b2: Exponent = beta.iter().zip(&b1).map(|(x, y)| x - y).collect();
                // right factor, sparse per a: (kl, g^{aa*} A(b2 + a* + k + l))
                let mut right: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); mu];
                for (a, (astar, ginv)) in self.frame.inverse_metric.iter().enumerate() {
                    for k in 0..mu {
                        for l in 0..mu {
                            let v = value(with(&b2, &[*astar, k, l]))?;
                            if !v.is_zero() {
                                right[a].push((k * mu + l, v * ginv));
                            }
                        }
                    }
                }
                for i in 0..mu {
                    for j in 0..mu {
                        let row = (i * mu + j) * mu * mu;
                        for (a, entries) in right.iter().enumerate() {
                            if entries.is_empty() {
                                continue;
                            }
                            let x = value(with(&b1, &[i, j, a]))?;
                            if x.is_zero() {
                                continue;
                            }
                            let x = x * &binom;
                            for (q, y) in entries {
                                table[row + q] += &x * y;
                            }
                        }
                    }
                }
            }
            for i in 0..mu {
                for j in 0..mu {
                    for k in 0..mu {
                        for l in 0..mu {
                            let lhs = &table[(i * mu + j) * mu * mu + k * mu + l];
                            let rhs = &table[(j * mu + k) * mu * mu + i * mu + l];
                            if lhs != rhs {
                                return Err(Error::Inconsistent {
                                    equation: [i, j, k, l],
                                    beta,
                                    lhs: format_rational(lhs),
                                    rhs: format_rational(rhs),
                                });
                            }
                            count += 1;
                        }
                    }
                }
            }
        }
        Ok(count)
    }

    /// Audits all lengths from 3 to `max_length`.
    pub fn audit(&self) -> Result<usize> {
        (3..=self.max_length()).map(|len| self.audit_length(len)).sum()
    }
}

fn stored(coeffs: &BTreeMap<Exponent, Rational>, rep: &Exponent) -> Result<Rational> {
    coeffs
        .get(rep)
        .cloned()
        .ok_or_else(|| Error::Reconstruction(format!("missing coefficient {rep:?}")))
}

impl Frame {
    fn euler_degree(&self, alpha: &[u32]) -> Rational {
        alpha
            .iter()
            .zip(&self.sigma)
            .fold(int(3 - self.n as i64), |acc, (&a, s)| {
                acc + int(a as i64) * (s - int(1))
            })
    }

    fn initial(&self, j: usize, k: usize) -> &Rational {
        &self.initial[j * self.mu + k]
    }

    fn check(&self, alpha: &[u32]) -> Result<()> {
        if alpha.len() != self.mu {
            return Err(Error::Reconstruction(format!(
                "exponent {alpha:?} has {} entries, expected {}",
                alpha.len(),
                self.mu
            )));
        }
        let len = length(alpha);
        if len > self.max_length {
            return Err(Error::IndexOutOfRange {
                index: len,
                bound: self.max_length + 1,
            });
        }
        Ok(())
    }

    /// Resolves `A(alpha)` to a stored representative through the Euler
    /// recursion; `stored` supplies representatives.
    fn lookup<T: Linear>(&self, alpha: &[u32], stored: &mut dyn FnMut(&Exponent) -> Result<T>) -> Result<T> {
        let len = length(alpha);
        if len < 3 {
            return Ok(T::constant(Rational::zero()));
        }
        let one = 1 % self.mu;
        let m = alpha[one] as usize;
        let mut rep = alpha.to_vec();
        rep[one] = 0;
        let rest = len - m;
        let (mut value, start) = if rest >= 3 {
            (stored(&rep)?, 0)
        } else {
            // length-3 base with at least one index 1
            let lift = 3 - rest;
            let mut others: Vec<usize> = Vec::with_capacity(2);
            for _ in 1..lift {
                others.push(one);
            }
            for (k, &a) in rep.iter().enumerate() {
                for _ in 0..a {
                    others.push(k);
                }
            }
            let v = self.initial(others[0], others[1]).clone();
            rep[one] = lift as u32;
            (T::constant(v), lift)
        };
        for _ in start..m {
            let d = self.euler_degree(&rep) / int(self.mu as i64);
            value = value.scale(&d);
            rep[one] += 1;
        }
        Ok(value)
    }

    fn equation<T: Linear>(
        &self,
        [i, j, k, l]: [usize; 4],
        beta: &[u32],
        value: &mut dyn FnMut(&[u32]) -> Result<T>,
    ) -> Result<T> {
        let mut total = T::constant(Rational::zero());
        let splits = sub_exponents(beta);
        for (a, (astar, ginv)) in self.inverse_metric.iter().enumerate() {
            for (b1, binom) in &splits {
                let b2: Vec<u32> = beta.iter().zip(b1).map(|(x, y)| x - y).collect();
                // The factor carrying index i is evaluated first: when it
                // vanishes the partner is never requested, which keeps the
                // peeling order acyclic.
                let c = binom * ginv;
                let x = value(&with(b1, &[i, j, a]))?;
                if !x.vanishes() {
                    let lhs = x.mul(&value(&with(&b2, &[*astar, k, l]))?)?;
                    total = total.add(&lhs.scale(&c));
                }
                let y = value(&with(&b2, &[*astar, i, l]))?;
                if !y.vanishes() {
                    let rhs = value(&with(b1, &[j, k, a]))?.mul(&y)?;
                    total = total.sub(&rhs.scale(&c));
                }
            }
        }
        Ok(total)
    }
}

/// `A(alpha + e_1) = d(alpha) A(alpha) / mu`, for `|alpha| >= 3`.
pub fn euler_extend(coeffs: &PotentialCoefficients, alpha: &[u32]) -> Result<Rational> {
    if length(alpha) < 3 {
        return Err(Error::Degenerate(format!(
            "Euler recursion needs |alpha| >= 3, got {alpha:?}"
        )));
    }
    let value = coeffs.get(alpha)?;
    Ok(coeffs.euler_degree(alpha) * value / int(coeffs.mu() as i64))
}

/// Reconstructs the potential from the mirror three-point values.
pub fn reconstruct(weights: &Weights, max_length: usize) -> Result<PotentialCoefficients> {
    reconstruct_with(weights, max_length, InitialData::Mirror)
}

pub fn reconstruct_with(weights: &Weights, max_length: usize, source: InitialData) -> Result<PotentialCoefficients> {
    let table = spectral::build_spectrum(weights)?;
    let mu = table.mu();
    if mu < 2 {
        return Err(Error::Degenerate("potential of a point".into()));
    }
    if max_length < 3 {
        return Err(Error::Degenerate(format!("max length {max_length} is below 3")));
    }
    let initial = initial_values(&table, source)?;
    let lg = LandauGinzburg::from_table(table.clone());
    let metric = Matrix::from_fn(mu, |j, k| lg.residue_pairing(j, k).expect("in range"));
    let inv = metric.inverse()?;
    let n = table.dim();
    let inverse_metric = (0..mu)
        .map(|a| {
            let astar = (n + mu - a % mu) % mu;
            (astar, inv[(a, astar)].clone())
        })
        .collect();
    let frame = Frame {
        mu,
        n,
        sigma: (0..mu).map(|k| table.newton_degree(k).clone()).collect(),
        max_length,
        initial,
        inverse_metric,
    };
    let pc = PotentialCoefficients {
        frame: Arc::new(frame),
        coeffs: BTreeMap::new(),
    };
    let mut solver = Solver {
        pc,
        active: HashSet::new(),
    };
    let one = 1 % mu;
    for len in 3..=max_length {
        for alpha in exponents_of_length(mu, len, Some(one)) {
            solver.value(&alpha)?;
        }
        solver.pc.audit_length(len)?;
    }
    Ok(solver.pc)
}

fn initial_values(table: &SpectrumTable, source: InitialData) -> Result<Vec<Rational>> {
    let mu = table.mu();
    let mut out = Vec::with_capacity(mu * mu);
    match source {
        InitialData::Mirror => {
            let lg = LandauGinzburg::from_table(table.clone());
            for j in 0..mu {
                for k in 0..mu {
                    out.push(lg.b_triple_tensor(j, k)?);
                }
            }
        }
        InitialData::Cohomology => {
            let coh = OrbifoldCohomology::from_table(table.clone());
            for j in 0..mu {
                for k in 0..mu {
                    let v = coh.gw_three_point(j, k)?;
                    if v.status == GwStatus::Unsupported {
                        return Err(Error::Degenerate(format!(
                            "three-point value ({j},{k}) is not determined by the closed form"
                        )));
                    }
                    out.push(v.value);
                }
            }
        }
    }
    Ok(out)
}

struct Solver {
    pc: PotentialCoefficients,
    active: HashSet<Exponent>,
}

impl Solver {
    /// `A(alpha)`, solving for missing representatives on demand.
    fn value(&mut self, alpha: &[u32]) -> Result<Rational> {
        let frame = Arc::clone(&self.pc.frame);
        frame.check(alpha)?;
        frame.lookup(alpha, &mut |rep| self.representative(rep))
    }

    fn representative(&mut self, rep: &Exponent) -> Result<Rational> {
        if let Some(v) = self.pc.coeffs.get(rep) {
            return Ok(v.clone());
        }
        if !self.active.insert(rep.clone()) {
            return Err(Error::Reconstruction(format!("cyclic dependency at {rep:?}")));
        }
        let v = self.solve(rep)?;
        self.active.remove(rep);
        self.pc.coeffs.insert(rep.clone(), v.clone());
        Ok(v)
    }

    /// Peels `A(alpha)` (with `alpha_1 = 0`) off the equation
    /// `(1, x - 1, k, l)` at `beta = alpha - e_x - e_k - e_l`, where `x` is the
    /// smallest index `>= 2` in the support (or `0`) and `l` is `0` when
    /// possible, otherwise the largest remaining index. The other unknown
    /// of the same length moves `x` down and `l` up, so the chain ends at
    /// an index `1` term, which the Euler recursion reduces.
    fn solve(&mut self, alpha: &Exponent) -> Result<Rational> {
        let frame = Arc::clone(&self.pc.frame);
        let mu = frame.mu;
        let one = 1 % mu;
        let x = (2..mu).find(|&i| alpha[i] > 0).unwrap_or(0);
        let mut rest = alpha.clone();
        rest[x] -= 1;
        let l = if rest[0] > 0 {
            0
        } else {
            (0..mu).rev().find(|&i| rest[i] > 0).expect("length >= 3")
        };
        rest[l] -= 1;
        let k = (0..mu).find(|&i| rest[i] > 0).expect("length >= 3");
        rest[k] -= 1;
        let beta = rest;
        let j = (x + mu - 1) % mu;

        let pivot_ok = !frame.initial(one, j).is_zero();
        let target = alpha.clone();
        let eq = frame.equation([one, j, k, l], &beta, &mut |a: &[u32]| -> Result<Affine> {
            let len = length(a);
            if len < 3 {
                return Ok(Affine::constant(Rational::zero()));
            }
            if len == length(&target) && a[one] == 0 && a == target.as_slice() {
                return Ok(Affine::unknown());
            }
            self.value(a).map(Affine::constant)
        })?;
        if eq.x.is_zero() {
            return Err(Error::ZeroPivot(format!(
                "A{alpha:?} in equation (1,{j},{k},{l}) (A_1{j}*(0) nonzero: {pivot_ok})"
            )));
        }
        Ok(-eq.c / eq.x)
    }
}

/// Values that are affine in one unknown.
trait Linear: Sized {
    fn constant(v: Rational) -> Self;
    fn vanishes(&self) -> bool;
    fn scale(self, c: &Rational) -> Self;
    fn add(self, other: &Self) -> Self;
    fn sub(self, other: &Self) -> Self;
    fn mul(self, other: &Self) -> Result<Self>;
}

impl Linear for Rational {
    fn constant(v: Rational) -> Self {
        v
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn scale(self, c: &Rational) -> Self {
        self * c
    }
    fn add(self, other: &Self) -> Self {
        self + other
    }
    fn sub(self, other: &Self) -> Self {
        self - other
    }
    fn mul(self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }
}

/// `c + x * X` for the unknown `X`.
#[derive(Debug, Clone)]
struct Affine {
    c: Rational,
    x: Rational,
}

impl Affine {
    fn unknown() -> Self {
        Self {
            c: Rational::zero(),
            x: Rational::one(),
        }
    }
}

impl Linear for Affine {
    fn constant(v: Rational) -> Self {
        Self {
            c: v,
            x: Rational::zero(),
        }
    }
    fn vanishes(&self) -> bool {
        self.c.is_zero() && self.x.is_zero()
    }
    fn scale(self, k: &Rational) -> Self {
        Self {
            c: self.c * k,
            x: self.x * k,
        }
    }
    fn add(self, o: &Self) -> Self {
        Self {
            c: self.c + &o.c,
            x: self.x + &o.x,
        }
    }
    fn sub(self, o: &Self) -> Self {
        Self {
            c: self.c - &o.c,
            x: self.x - &o.x,
        }
    }
    fn mul(self, o: &Self) -> Result<Self> {
        if !self.x.is_zero() && !o.x.is_zero() {
            return Err(Error::Reconstruction("unknown enters quadratically".into()));
        }
        Ok(Self {
            x: &self.c * &o.x + &self.x * &o.c,
            c: self.c * &o.c,
        })
    }
}

fn length(alpha: &[u32]) -> usize {
    alpha.iter().map(|&a| a as usize).sum()
}

fn with(base: &[u32], extra: &[usize]) -> Exponent {
    let mut v = base.to_vec();
    for &e in extra {
        v[e] += 1;
    }
    v
}

/// All `beta' <= beta` with the multinomial weight `prod C(beta_m, beta'_m)`.
fn sub_exponents(beta: &[u32]) -> Vec<(Exponent, Rational)> {
    let mut out = vec![(Vec::with_capacity(beta.len()), Rational::one())];
    for &b in beta {
        let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
        for (prefix, w) in &out {
            for c in 0..=b {
                let mut p = prefix.clone();
                p.push(c);
                let binom = Rational::from_integer(rational::binomial(b as u64, c as u64));
                next.push((p, w * binom));
            }
        }
        out = next;
    }
    out
}

/// Exponents of the given length in `N^mu`, lexicographically descending,
/// optionally with one coordinate forced to zero.
pub fn exponents_of_length(mu: usize, len: usize, skip: Option<usize>) -> Vec<Exponent> {
    fn go(pos: usize, left: u32, cur: &mut Exponent, skip: Option<usize>, out: &mut Vec<Exponent>) {
        if pos + 1 == cur.len() {
            if Some(pos) == skip && left > 0 {
                return;
            }
            cur[pos] = left;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        let top = if Some(pos) == skip { 0 } else { left };
        for v in (0..=top).rev() {
            cur[pos] = v;
            go(pos + 1, left - v, cur, skip, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if mu == 0 {
        return out;
    }
    let mut cur = vec![0; mu];
    go(0, len as u32, &mut cur, skip, &mut out);
    out
}
