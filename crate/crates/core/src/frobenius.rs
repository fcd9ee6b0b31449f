//! Initial conditions on both sides, the correspondence map and the
//! verification suites.

use std::fmt;

use num_traits::{One, Zero};

use crate::aside::{CohClass, CohomologyMatrices, OrbifoldCohomology, ScaledClass};
use crate::bside::{critical_constant, GradedProduct, LandauGinzburg};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::rational::{self, format_rational, int, Rational};
use crate::report::{Check, CheckReport};
use crate::spectral::{self, Weights};

/// Initial conditions `(A0, A_inf, g, e_0)` of a semisimple Frobenius manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusData {
    pub a0: Matrix,
    pub a_inf: Matrix,
    pub metric: Matrix,
    /// Index of the unit basis vector.
    pub unit: usize,
}

/// Outcome of a correspondence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub checks: CheckReport,
    /// A conjectural three-point value entered the comparison.
    pub conjecture_used: bool,
    /// `gcd(mu, lcm w) = 1`.
    pub coprime: bool,
    /// Cells of `A0` left out because one side does not define them.
    pub skipped: Vec<(usize, usize)>,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }
}

impl fmt::Display for CorrespondenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.checks)?;
        writeln!(f, "coprime: {}", self.coprime)?;
        writeln!(f, "conjecture used: {}", self.conjecture_used)?;
        if !self.skipped.is_empty() {
            writeln!(f, "skipped cells: {:?}", self.skipped)?;
        }
        Ok(())
    }
}

/// Initial conditions on the cohomology side, plus the bookkeeping of which
/// three-point values were conjectural or undefined.
pub fn initial_conditions_a(coh: &OrbifoldCohomology) -> Result<(FrobeniusData, CohomologyMatrices)> {
    let mats = coh.a_matrices()?;
    let data = FrobeniusData {
        a0: mats.a0.clone(),
        a_inf: mats.a_inf.clone(),
        metric: coh.pairing_matrix(),
        unit: xi(coh, &coh.basis()[0]),
    };
    Ok((data, mats))
}

/// `eta^d_gamma -> omega~_{kmin({1 - gamma}) + d}`.
pub fn xi(coh: &OrbifoldCohomology, c: &CohClass) -> usize {
    let dual = rational::fract(&(int(1) - &c.gamma));
    coh.table()
        .kmin(&dual)
        .expect("S_w is closed under gamma -> {1 - gamma}")
        + c.power
}

/// Sparse product table entry: `coeff * e_index`, or zero.
type Product = Option<(Rational, usize)>;

fn cup_table(coh: &OrbifoldCohomology) -> Vec<Product> {
    let b = coh.basis();
    let mut out = Vec::with_capacity(b.len() * b.len());
    for x in b {
        for y in b {
            out.push(match coh.cup(x, y) {
                ScaledClass::Zero => None,
                ScaledClass::Multiple { coeff, class } => Some((coeff, class.flat)),
            });
        }
    }
    out
}

fn graded_table(lg: &LandauGinzburg) -> Result<Vec<Product>> {
    let mu = lg.mu();
    let mut out = Vec::with_capacity(mu * mu);
    for i in 0..mu {
        for j in 0..mu {
            out.push(match lg.graded_product_rescaled(i, j)? {
                GradedProduct::Zero => None,
                GradedProduct::Multiple { coeff, index } => Some((coeff, index)),
            });
        }
    }
    Ok(out)
}

fn star_table(lg: &LandauGinzburg) -> Result<Vec<Product>> {
    let mu = lg.mu();
    let mut out = Vec::with_capacity(mu * mu);
    for i in 0..mu {
        for j in 0..mu {
            let (c, m) = lg.star_rescaled(i, j)?;
            out.push(Some((c, m)));
        }
    }
    Ok(out)
}

/// Checks that the map `xi` is a graded isomorphism of Frobenius algebras
/// between the orbifold cohomology and the Newton-graded Jacobian algebra.
pub fn verify_classical(weights: &Weights) -> Result<CorrespondenceReport> {
    let table = spectral::build_spectrum(weights)?;
    let coh = OrbifoldCohomology::from_table(table.clone());
    let lg = LandauGinzburg::from_table(table);
    let mu = coh.mu();
    let basis = coh.basis();
    let mut checks = CheckReport::default();

    let image: Vec<usize> = basis.iter().map(|c| xi(&coh, c)).collect();
    let mut bij = Check::new("xi is a bijection of flat indices");
    let mut seen = vec![false; mu];
    for &k in &image {
        bij.record(k < mu && !std::mem::replace(&mut seen[k], true), || {
            format!("index {k} hit twice")
        });
    }
    checks.push(bij);

    let mut grading = Check::new("half degree equals Newton degree of the image");
    for (c, &k) in basis.iter().zip(&image) {
        grading.record(&c.half_degree == lg.table().newton_degree(k), || c.label());
    }
    checks.push(grading);

    let pairing_b = Matrix::from_fn(mu, |j, k| lg.graded_pairing(j, k).expect("in range"));
    let mut pairing = Check::new("pairing equals graded metric of the images");
    for (x, &kx) in basis.iter().zip(&image) {
        for (y, &ky) in basis.iter().zip(&image) {
            let a = coh.pairing(x, y);
            let b = &pairing_b[(kx, ky)];
            pairing.record(&a == b, || {
                format!(
                    "{} {}: {} vs {}",
                    x.label(),
                    y.label(),
                    format_rational(&a),
                    format_rational(b)
                )
            });
        }
    }
    checks.push(pairing);

    let graded = graded_table(&lg)?;
    let mut triple = Check::new("triple tensor equals graded triple of the images");
    let mut closed = Check::new("graded triple closed form equals the product form");
    for (x, &kx) in basis.iter().zip(&image) {
        for (y, &ky) in basis.iter().zip(&image) {
            let prod = &graded[kx * mu + ky];
            for (z, &kz) in basis.iter().zip(&image) {
                let a = coh.triple_tensor(x, y, z);
                let b = match prod {
                    None => Rational::zero(),
                    Some((c, m)) => c * &pairing_b[(*m, kz)],
                };
                triple.record(a == b, || {
                    format!(
                        "{} {} {}: {} vs {}",
                        x.label(),
                        y.label(),
                        z.label(),
                        format_rational(&a),
                        format_rational(&b)
                    )
                });
                let cf = lg.graded_triple(kx, ky, kz)?;
                closed.record(cf == b, || format!("({kx},{ky},{kz})"));
            }
        }
    }
    checks.push(triple);
    checks.push(closed);

    let mut cup = Check::new("cup product transports to the graded product");
    for (x, &kx) in basis.iter().zip(&image) {
        for (y, &ky) in basis.iter().zip(&image) {
            let a = match coh.cup(x, y) {
                ScaledClass::Zero => None,
                ScaledClass::Multiple { coeff, class } => Some((coeff, xi(&coh, &class))),
            };
            let b = &graded[kx * mu + ky];
            cup.record(&a == b, || format!("{} u {}: {a:?} vs {b:?}", x.label(), y.label()));
        }
    }
    checks.push(cup);

    Ok(CorrespondenceReport {
        checks,
        conjecture_used: false,
        coprime: weights.is_coprime(),
        skipped: Vec::new(),
    })
}

/// Compares the initial conditions of both sides entrywise.
pub fn verify_quantum(weights: &Weights) -> Result<CorrespondenceReport> {
    let table = spectral::build_spectrum(weights)?;
    let coh = OrbifoldCohomology::from_table(table.clone());
    let lg = LandauGinzburg::from_table(table);
    let mu = coh.mu();
    let (a, mats) = initial_conditions_a(&coh)?;
    let b = lg.initial_conditions();
    let mut checks = CheckReport::default();

    let mut a0 = Check::new("A0 agrees entrywise");
    for i in 0..mu {
        for j in 0..mu {
            if mats.unsupported.contains(&(i, j)) {
                continue;
            }
            a0.record(a.a0[(i, j)] == b.a0[(i, j)], || {
                format!(
                    "({i},{j}): {} vs {}",
                    format_rational(&a.a0[(i, j)]),
                    format_rational(&b.a0[(i, j)])
                )
            });
        }
    }
    checks.push(a0);

    let mut a_inf = Check::new("A_inf agrees entrywise");
    let mut metric = Check::new("metric agrees entrywise");
    for i in 0..mu {
        for j in 0..mu {
            a_inf.record(a.a_inf[(i, j)] == b.a_inf[(i, j)], || format!("({i},{j})"));
            metric.record(a.metric[(i, j)] == b.metric[(i, j)], || format!("({i},{j})"));
        }
    }
    checks.push(a_inf);
    checks.push(metric);

    let mut unit = Check::new("units correspond");
    unit.record(a.unit == b.unit, || format!("{} vs {}", a.unit, b.unit));
    checks.push(unit);

    Ok(CorrespondenceReport {
        checks,
        conjecture_used: mats.conjecture_used,
        coprime: weights.is_coprime(),
        skipped: mats.unsupported,
    })
}

/// Hypotheses under which `(A0, A_inf, g, e_0)` determines a unique
/// Frobenius manifold germ, checked on the mirror data.
pub fn check_dubrovin_preconditions(weights: &Weights) -> Result<CheckReport> {
    let lg = LandauGinzburg::new(weights)?;
    Ok(check_initial_conditions(
        &lg.initial_conditions(),
        &critical_constant(weights),
        weights.dim(),
    ))
}

/// The Dubrovin checks for arbitrary initial data.
pub fn check_initial_conditions(data: &FrobeniusData, constant: &Rational, n: usize) -> CheckReport {
    let mu = data.a0.size();
    let mut report = CheckReport::default();

    let mut poly = Check::new("char(A0) = x^mu - mu^mu / prod w_i^w_i, constant nonzero");
    let cp = data.a0.char_poly();
    let mut expect = vec![Rational::zero(); mu + 1];
    expect[mu] = Rational::one();
    expect[0] = -constant.clone();
    poly.record(cp == expect && !constant.is_zero(), || {
        let got: Vec<String> = cp.iter().map(format_rational).collect();
        format!("coefficients {got:?}")
    });
    report.push(poly);

    let g = &data.metric;
    let mut selfadj = Check::new("A0 is self-adjoint for g");
    selfadj.record(data.a0.transpose().mul(g) == g.mul(&data.a0), String::new);
    report.push(selfadj);

    let mut adj = Check::new("A_inf + A_inf* = n id");
    match g.inverse() {
        Ok(g_inv) => {
            let star = g_inv.mul(&data.a_inf.transpose()).mul(g);
            let sum = data.a_inf.add(&star);
            adj.record(sum == Matrix::identity(mu).scale(&int(n as i64)), || sum.to_string());
        }
        Err(_) => adj.record(false, || "metric is degenerate".into()),
    }
    report.push(adj);

    let mut eigen = Check::new("e_0 is an A_inf eigenvector with eigenvalue 0");
    let mut e0 = vec![Rational::zero(); mu];
    e0[data.unit] = Rational::one();
    eigen.record(data.a_inf.mul_vec(&e0).iter().all(Zero::is_zero), String::new);
    report.push(eigen);

    let mut cyclic = Check::new("e_0 is cyclic for A0");
    let mut rows = Vec::with_capacity(mu);
    let mut v = e0;
    for _ in 0..mu {
        let next = data.a0.mul_vec(&v);
        rows.push(std::mem::replace(&mut v, next));
    }
    let rank = Matrix::rank_of_rows(rows);
    cyclic.record(rank == mu, || format!("Krylov rank {rank}"));
    report.push(cyclic);

    report
}

fn compose(table: &[Product], mu: usize, lhs: &Product, c: usize) -> Product {
    let (k, x) = lhs.as_ref()?;
    let (k2, y) = table[x * mu + c].as_ref()?;
    Some((k * k2, *y))
}

fn same(a: &Product, b: &Product) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some((x, i)), Some((y, j))) => x == y && (i == j || x.is_zero()),
        (Some((x, _)), None) | (None, Some((x, _))) => x.is_zero(),
    }
}

#[allow(clippy::too_many_arguments)]
fn algebra_checks(
    report: &mut CheckReport,
    side: &str,
    table: &[Product],
    mu: usize,
    unit: usize,
    pairing: &Matrix,
    degree: impl Fn(usize) -> Rational,
    graded: bool,
) {
    let mut comm = Check::new(format!("{side}: product is commutative"));
    let mut assoc = Check::new(format!("{side}: product is associative"));
    let mut unital = Check::new(format!("{side}: unit"));
    let mut grading = Check::new(format!("{side}: product respects the grading"));
    let mut frob = Check::new(format!("{side}: g(ab, c) = g(a, bc)"));
    let mut sym = Check::new(format!("{side}: g(ab, c) is symmetric"));
    let g_of = |p: &Product, c: usize| match p {
        None => Rational::zero(),
        Some((k, x)) => k * &pairing[(*x, c)],
    };
    for a in 0..mu {
        unital.record(table[unit * mu + a] == Some((Rational::one(), a)), || format!("{a}"));
        for b in 0..mu {
            let ab = &table[a * mu + b];
            comm.record(same(ab, &table[b * mu + a]), || format!("({a},{b})"));
            if graded {
                if let Some((k, x)) = ab {
                    grading.record(k.is_zero() || degree(*x) == degree(a) + degree(b), || {
                        format!("({a},{b})")
                    });
                }
            }
            for c in 0..mu {
                let bc = &table[b * mu + c];
                let l = compose(table, mu, ab, c);
                let r = match bc {
                    None => None,
                    Some((k, x)) => table[a * mu + x].as_ref().map(|(k2, y)| (k * k2, *y)),
                };
                assoc.record(same(&l, &r), || format!("({a},{b},{c})"));
                let lhs = g_of(ab, c);
                let rhs = g_of(bc, a);
                frob.record(lhs == rhs, || format!("({a},{b},{c})"));
                let ac = &table[a * mu + c];
                sym.record(lhs == g_of(ac, b), || format!("({a},{b},{c})"));
            }
        }
    }
    for c in [comm, assoc, unital] {
        report.push(c);
    }
    if graded {
        report.push(grading);
    }
    report.push(frob);
    report.push(sym);
}

/// Frobenius algebra axioms on both sides, by brute force over all triples.
pub fn verify_algebra_axioms(weights: &Weights) -> Result<CheckReport> {
    let table = spectral::build_spectrum(weights)?;
    let coh = OrbifoldCohomology::from_table(table.clone());
    let lg = LandauGinzburg::from_table(table);
    let mu = coh.mu();
    let n = weights.dim();
    let mut report = CheckReport::default();
    let basis = coh.basis();

    let cups = cup_table(&coh);
    let g_a = coh.pairing_matrix();
    algebra_checks(
        &mut report,
        "cohomology",
        &cups,
        mu,
        0,
        &g_a,
        |i| basis[i].half_degree.clone(),
        true,
    );

    let mut tri = Check::new("cohomology: g(a u b, c) equals the triple tensor");
    for a in basis {
        for b in basis {
            let ab = &cups[a.flat * mu + b.flat];
            for c in basis {
                let lhs = match ab {
                    None => Rational::zero(),
                    Some((k, x)) => k * &g_a[(*x, c.flat)],
                };
                tri.record(lhs == coh.triple_tensor(a, b, c), || {
                    format!("{} {} {}", a.label(), b.label(), c.label())
                });
            }
        }
    }
    report.push(tri);

    let mut pair = Check::new("cohomology: pairing is symmetric and non-degenerate");
    pair.record(g_a == g_a.transpose() && g_a.inverse().is_ok(), String::new);
    report.push(pair);

    let mut rank = Check::new("obstruction rank = dim P(w_I) - n + sum of ages");
    let sectors = coh.table().sectors();
    for s0 in sectors {
        for s1 in sectors {
            for s2 in sectors {
                let sum = &s0.gamma + &s1.gamma + &s2.gamma;
                if !sum.is_integer() {
                    continue;
                }
                let bundle = coh.obstruction_bundle(&s0.gamma, &s1.gamma, &s2.gamma)?;
                let common = s0.fixed.iter().filter(|&&i| s1.is_fixed(i) && s2.is_fixed(i)).count();
                let expect = int(common as i64 - 1 - n as i64) + &s0.age + &s1.age + &s2.age;
                let disjoint = bundle
                    .indices
                    .iter()
                    .all(|&i| !s0.is_fixed(i) && !s1.is_fixed(i) && !s2.is_fixed(i));
                rank.record(int(bundle.rank as i64) == expect && disjoint, || {
                    format!(
                        "({},{},{})",
                        format_rational(&s0.gamma),
                        format_rational(&s1.gamma),
                        format_rational(&s2.gamma)
                    )
                });
            }
        }
    }
    report.push(rank);

    let stars = star_table(&lg)?;
    let g_b = Matrix::from_fn(mu, |j, k| lg.residue_pairing(j, k).expect("in range"));
    let newton = |i: usize| lg.table().newton_degree(i).clone();
    algebra_checks(&mut report, "Jacobian", &stars, mu, 0, &g_b, newton, false);

    let graded = graded_table(&lg)?;
    let gg = Matrix::from_fn(mu, |j, k| lg.graded_pairing(j, k).expect("in range"));
    algebra_checks(&mut report, "graded Jacobian", &graded, mu, 0, &gg, newton, true);

    let mut compat = Check::new("graded product is the leading part of the Jacobian product");
    for i in 0..mu {
        for j in 0..mu {
            if let Some((c, m)) = &graded[i * mu + j] {
                compat.record(stars[i * mu + j] == Some((c.clone(), *m)), || format!("({i},{j})"));
            }
        }
    }
    report.push(compat);

    let mut triple = Check::new("three-point value from the product equals the closed form");
    let mut metric = Check::new("rescaled residue metric equals the closed form");
    let mut gmetric = Check::new("graded metric equals the residue metric");
    let omega = lg.omega_basis();
    for j in 0..mu {
        for k in 0..mu {
            triple.record(lg.b_triple_tensor(j, k)? == lg.b_triple_closed_form(j, k)?, || {
                format!("({j},{k})")
            });
            let raw = lg.residue_pairing_unscaled(j, k)? * &omega[j].rescale.value * &omega[k].rescale.value;
            metric.record(raw == g_b[(j, k)], || format!("({j},{k})"));
            gmetric.record(gg[(j, k)] == g_b[(j, k)], || format!("({j},{k})"));
        }
    }
    report.push(triple);
    report.push(metric);
    report.push(gmetric);

    let (a0, _) = lg.connection_matrices();
    let mut closed = Check::new("connection entries: mu, or mu / prod I(s(k)) across a sector change");
    let mut cycle = Check::new("cycle product of A0 = mu^mu / prod w_i^w_i");
    let mut prod = Rational::one();
    for k in 0..mu {
        let next = (k + 1) % mu;
        let same_sector = next != 0 && lg.table().gamma(next) == lg.table().gamma(k);
        let expect = if same_sector {
            int(mu as i64)
        } else {
            int(mu as i64) / &lg.table().sector_of_slot(k).fixed_product
        };
        closed.record(a0[(next, k)] == expect, || format!("column {k}"));
        prod *= &a0[(next, k)];
    }
    cycle.record(prod == critical_constant(weights), || format_rational(&prod));
    report.push(closed);
    report.push(cycle);

    let mut grading = Check::new("A_inf + A_inf* = n id on the cohomology side");
    let g_inv = g_a.inverse()?;
    let mats = coh.a_matrices()?;
    let sum = mats.a_inf.add(&g_inv.mul(&mats.a_inf.transpose()).mul(&g_a));
    grading.record(sum == Matrix::identity(mu).scale(&int(n as i64)), String::new);
    report.push(grading);

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u64]) -> Weights {
        Weights::new(v.to_vec()).unwrap()
    }

    #[test]
    fn xi_examples() {
        let coh = OrbifoldCohomology::new(&w(&[1, 2, 2, 3, 3, 3])).unwrap();
        let c = coh.class_of(&rational::ratio(1, 3), 0).unwrap();
        assert_eq!(xi(&coh, c), 11);
        assert_eq!(xi(&coh, &coh.basis()[0]), 0);
        let coh = OrbifoldCohomology::new(&w(&[1, 2])).unwrap();
        let c = coh.class_of(&rational::ratio(1, 2), 0).unwrap();
        assert_eq!(xi(&coh, c), 2);
    }

    #[test]
    fn classical_examples() {
        for v in [&[1, 2, 2, 3, 3, 3][..], &[1], &[2, 4], &[1, 2]] {
            let r = verify_classical(&w(v)).unwrap();
            assert!(r.passed(), "{v:?}\n{r}");
        }
    }

    #[test]
    fn quantum_examples() {
        let r = verify_quantum(&w(&[1, 2])).unwrap();
        assert!(r.passed() && r.conjecture_used && r.coprime, "{r}");
        let r = verify_quantum(&w(&[1, 1, 1])).unwrap();
        assert!(r.passed() && !r.conjecture_used, "{r}");
        let r = verify_quantum(&w(&[1, 2, 2, 3, 3, 3])).unwrap();
        assert!(!r.coprime);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn dubrovin_examples() {
        for v in [&[1, 2][..], &[1, 1], &[1], &[1, 2, 2, 3, 3, 3], &[2, 4]] {
            let r = check_dubrovin_preconditions(&w(v)).unwrap();
            assert!(r.passed(), "{v:?}\n{r}");
        }
    }

    #[test]
    fn axioms_examples() {
        for v in [&[1, 2][..], &[1, 1, 1], &[1], &[1, 2, 2, 3, 3, 3], &[2, 4], &[2, 3, 5]] {
            let r = verify_algebra_axioms(&w(v)).unwrap();
            assert!(r.passed(), "{v:?}\n{r}");
        }
    }
}
