//! Weight vectors, the spectrum `S_w`, sectors and the multi-index recursion.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rational::{self, int, ratio, Rational};
use crate::report::{Check, CheckReport};

/// A validated weight vector `(w_0, ..., w_n)` with every `w_i >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weights {
    values: Vec<u64>,
    total: u64,
    gcd: u64,
    lcm: u64,
}

impl Weights {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidWeights("empty weight vector".into()));
        }
        if values.contains(&0) {
            return Err(Error::InvalidWeights("weights must be positive".into()));
        }
        let total = values
            .iter()
            .try_fold(0u64, |acc, &w| acc.checked_add(w))
            .filter(|&t| t <= u32::MAX as u64)
            .ok_or_else(|| Error::Overflow("sum of weights".into()))?;
        let lcm = rational::lcm_all(&values).ok_or_else(|| Error::Overflow("lcm of weights".into()))?;
        let gcd = rational::gcd_all(&values);
        Ok(Self {
            values,
            total,
            gcd,
            lcm,
        })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Number of weights, `n + 1`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Complex dimension `n`.
    pub fn dim(&self) -> usize {
        self.values.len() - 1
    }

    /// `mu = sum w_i`, the rank of the cohomology and of the Jacobi ring.
    pub fn mu(&self) -> usize {
        self.total as usize
    }

    pub fn gcd(&self) -> u64 {
        self.gcd
    }

    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    /// `gcd(mu, lcm(w)) = 1`: the quantum three-point functions are fully known.
    pub fn is_coprime(&self) -> bool {
        self.total.gcd(&self.lcm) == 1
    }

    /// All weights equal to one.
    pub fn is_projective_space(&self) -> bool {
        self.values.iter().all(|&w| w == 1)
    }
}

impl FromStr for Weights {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let values = trimmed
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad weight {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Weights::new(values)
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// One element `gamma` of `S_w`, with its fixed-index set and age.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    pub gamma: Rational,
    /// Reduced numerator and denominator of `gamma`.
    pub num: u64,
    pub den: u64,
    /// `I(gamma) = { i : gamma * w_i is an integer }`.
    pub fixed: Vec<usize>,
    /// `sum_i {gamma * w_i}`.
    pub age: Rational,
    /// First and last flat index with `s(k) = gamma`.
    pub kmin: usize,
    pub kmax: usize,
    /// `prod_{i in I(gamma)} w_i`.
    pub fixed_product: Rational,
}

impl Sector {
    /// `delta(gamma) = #I(gamma)`.
    pub fn delta(&self) -> usize {
        self.fixed.len()
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.fixed.binary_search(&i).is_ok()
    }

    /// Numerator of `{gamma * w}` over the denominator `den`.
    pub fn frac_num(&self, w: u64) -> u64 {
        (self.num * w) % self.den
    }
}

/// The sequence of multi-indices `a(k)` and the index `i(k)` that produced
/// slot `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndexSequence {
    pub multi: Vec<Vec<u64>>,
    pub index: Vec<usize>,
}

impl MultiIndexSequence {
    pub fn len(&self) -> usize {
        self.multi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multi.is_empty()
    }

    /// `a(k)_{i(k)} / w_{i(k)}`.
    pub fn slot_value(&self, weights: &Weights, k: usize) -> Rational {
        let i = self.index[k];
        ratio(self.multi[k][i] as i64, weights.values()[i] as i64)
    }
}

/// Runs the recursion `a(k+1) = a(k) + e_{i(k)}`, where `i(k+1)` is the
/// smallest index minimising `a(k+1)_j / w_j`, for `len` steps.
pub fn multi_index_sequence(weights: &Weights, len: usize) -> MultiIndexSequence {
    let w = weights.values();
    let mut multi = Vec::with_capacity(len);
    let mut index = Vec::with_capacity(len);
    let mut a = vec![0u64; w.len()];
    let mut cur = 0usize;
    for k in 0..len {
        if k > 0 {
            a[cur] += 1;
            cur = argmin_ratio(&a, w);
        }
        multi.push(a.clone());
        index.push(cur);
    }
    MultiIndexSequence { multi, index }
}

fn argmin_ratio(a: &[u64], w: &[u64]) -> usize {
    let mut best = 0;
    for j in 1..a.len() {
        // a_j / w_j < a_best / w_best
        let lhs = a[j] as u128 * w[best] as u128;
        let rhs = a[best] as u128 * w[j] as u128;
        if lhs < rhs {
            best = j;
        }
    }
    best
}

/// The spectrum `s: {0..mu-1} -> S_w` with sectors, Newton degrees and the
/// multi-index recursion, all cross-checked on construction.
#[derive(Debug, Clone)]
pub struct SpectrumTable {
    weights: Weights,
    s: Vec<Rational>,
    origin: Vec<usize>,
    slot_sector: Vec<usize>,
    sigma: Vec<Rational>,
    sectors: Vec<Sector>,
    by_gamma: BTreeMap<Rational, usize>,
    sequence: MultiIndexSequence,
}

impl SpectrumTable {
    /// Builds the table from the sorted multiset `{ l / w_i : 0 <= l < w_i }`
    /// (ties broken by weight index) and checks it against the recursion.
    pub fn new(weights: &Weights) -> Result<Self> {
        let w = weights.values();
        let mu = weights.mu();

        let mut entries: Vec<(u64, u64, usize)> = Vec::with_capacity(mu);
        for (i, &wi) in w.iter().enumerate() {
            for l in 0..wi {
                entries.push((l, wi, i));
            }
        }
        entries.sort_by(|x, y| {
            let lhs = x.0 as u128 * y.1 as u128;
            let rhs = y.0 as u128 * x.1 as u128;
            lhs.cmp(&rhs).then(x.2.cmp(&y.2))
        });

        let s: Vec<Rational> = entries.iter().map(|&(l, wi, _)| ratio(l as i64, wi as i64)).collect();
        let origin: Vec<usize> = entries.iter().map(|e| e.2).collect();

        let mut sectors: Vec<Sector> = Vec::new();
        let mut slot_sector = Vec::with_capacity(mu);
        for (k, gamma) in s.iter().enumerate() {
            match sectors.last_mut() {
                Some(sec) if &sec.gamma == gamma => sec.kmax = k,
                _ => sectors.push(make_sector(w, gamma, k)),
            }
            slot_sector.push(sectors.len() - 1);
        }
        let by_gamma = sectors
            .iter()
            .enumerate()
            .map(|(i, sec)| (sec.gamma.clone(), i))
            .collect();
        let mu_q = int(mu as i64);
        let sigma = s.iter().enumerate().map(|(k, g)| int(k as i64) - &mu_q * g).collect();

        let sequence = multi_index_sequence(weights, 2 * mu + 1);
        for k in 0..mu {
            let rec = sequence.slot_value(weights, k);
            if rec != s[k] || sequence.index[k] != origin[k] {
                return Err(Error::RecursionMismatch {
                    slot: k,
                    detail: format!(
                        "recursion gives {} from index {}, multiset gives {} from index {}",
                        rational::format_rational(&rec),
                        sequence.index[k],
                        rational::format_rational(&s[k]),
                        origin[k]
                    ),
                });
            }
        }
        for sec in &sectors {
            if sec.kmax + 1 - sec.kmin != sec.delta() {
                return Err(Error::RecursionMismatch {
                    slot: sec.kmin,
                    detail: "sector multiplicity differs from #I(gamma)".into(),
                });
            }
        }

        Ok(Self {
            weights: weights.clone(),
            s,
            origin,
            slot_sector,
            sigma,
            sectors,
            by_gamma,
            sequence,
        })
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn mu(&self) -> usize {
        self.weights.mu()
    }

    pub fn dim(&self) -> usize {
        self.weights.dim()
    }

    /// `s(k)` for `0 <= k < mu`.
    pub fn gamma(&self, k: usize) -> &Rational {
        &self.s[k]
    }

    pub fn spectrum(&self) -> &[Rational] {
        &self.s
    }

    /// Weight index whose fraction `l / w_i` sits at slot `k`.
    pub fn origin(&self, k: usize) -> usize {
        self.origin[k]
    }

    /// Newton degree `sigma(k) = k - mu * s(k)`.
    pub fn newton_degree(&self, k: usize) -> &Rational {
        &self.sigma[k]
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn sector_of_slot(&self, k: usize) -> &Sector {
        &self.sectors[self.slot_sector[k]]
    }

    pub fn sector_index_of_slot(&self, k: usize) -> usize {
        self.slot_sector[k]
    }

    pub fn sector_index(&self, gamma: &Rational) -> Option<usize> {
        self.by_gamma.get(gamma).copied()
    }

    pub fn sector(&self, gamma: &Rational) -> Result<&Sector> {
        self.sector_index(gamma)
            .map(|i| &self.sectors[i])
            .ok_or_else(|| Error::NotInSpectrum(rational::format_rational(gamma)))
    }

    pub fn kmin(&self, gamma: &Rational) -> Result<usize> {
        self.sector(gamma).map(|s| s.kmin)
    }

    pub fn kmax(&self, gamma: &Rational) -> Result<usize> {
        self.sector(gamma).map(|s| s.kmax)
    }

    /// The multi-index `a(k)`, available for `k <= 2 mu`.
    pub fn multi_index(&self, k: usize) -> &[u64] {
        &self.sequence.multi[k]
    }

    pub fn sequence(&self) -> &MultiIndexSequence {
        &self.sequence
    }

    /// Slot index checked against `mu`.
    pub fn check_slot(&self, k: usize) -> Result<usize> {
        if k < self.mu() {
            Ok(k)
        } else {
            Err(Error::IndexOutOfRange {
                index: k,
                bound: self.mu(),
            })
        }
    }
}

fn make_sector(w: &[u64], gamma: &Rational, k: usize) -> Sector {
    let num: u64 = gamma.numer().try_into().expect("small numerator");
    let den: u64 = gamma.denom().try_into().expect("small denominator");
    let fixed: Vec<usize> = (0..w.len()).filter(|&i| (num * w[i]).is_multiple_of(den)).collect();
    let age = w
        .iter()
        .map(|&wi| ratio(((num * wi) % den) as i64, den as i64))
        .fold(int(0), |acc, x| acc + x);
    let fixed_product = rational::weight_product(w, fixed.iter().copied());
    Sector {
        gamma: gamma.clone(),
        num,
        den,
        fixed,
        age,
        kmin: k,
        kmax: k,
        fixed_product,
    }
}

/// Sector data for an arbitrary `gamma` in `[0, 1)`. For `gamma` outside
/// `S_w` the fixed set is empty; `kmin`/`kmax` come from the position formula
/// `kmax = n + sum floor(gamma w_i)` and are only meaningful inside `S_w`.
pub fn sector(weights: &Weights, gamma: &Rational) -> Result<Sector> {
    if *gamma < int(0) || *gamma >= int(1) {
        return Err(Error::NotInSpectrum(format!(
            "{} is outside [0,1)",
            rational::format_rational(gamma)
        )));
    }
    let w = weights.values();
    let mut sec = make_sector(w, gamma, 0);
    let floors: u64 = w.iter().map(|&wi| sec.num * wi / sec.den).sum();
    sec.kmax = weights.dim() + floors as usize;
    sec.kmin = sec.kmax + 1 - sec.delta().min(sec.kmax + 1);
    Ok(sec)
}

/// Builds the spectrum table for `weights`.
pub fn build_spectrum(weights: &Weights) -> Result<SpectrumTable> {
    SpectrumTable::new(weights)
}

/// Checks the structural identities of the spectrum: monotonicity, the
/// recursion, the `kmax` and Newton-degree formulas, periodicity under the
/// gcd, and `a(mu) = w`.
pub fn verify_spectral_identities(table: &SpectrumTable) -> CheckReport {
    let weights = table.weights();
    let w = weights.values();
    let mu = weights.mu();
    let n = weights.dim();
    let d = weights.gcd() as usize;
    let seq = table.sequence();
    let mut report = CheckReport::default();

    let mut mono = Check::new("spectrum is non-decreasing in [0,1)");
    for k in 0..mu {
        let g = table.gamma(k);
        let in_range = *g >= int(0) && *g < int(1);
        let ordered = k == 0 || table.gamma(k - 1).cmp(g) != Ordering::Greater;
        mono.record(in_range && ordered, || format!("slot {k}"));
    }
    report.push(mono);

    let mut rec = Check::new("multi-index recursion reproduces the spectrum");
    for k in 0..mu {
        let ok = seq.slot_value(weights, k) == *table.gamma(k);
        rec.record(ok, || format!("slot {k}"));
    }
    report.push(rec);

    let mut kmax = Check::new("kmax(gamma) = n + sum floor(gamma w_i)");
    let mut kmin = Check::new("kmin(gamma) = kmax(gamma) - delta(gamma) + 1");
    let mut sig = Check::new("sigma(kmax(gamma) - d) = n - d - age(gamma)");
    for sec in table.sectors() {
        let floors: u64 = w.iter().map(|&wi| sec.num * wi / sec.den).sum();
        let expect = n as u64 + floors;
        kmax.record(sec.kmax as u64 == expect, || {
            format!("gamma {}", rational::format_rational(&sec.gamma))
        });
        kmin.record(sec.kmin + sec.delta() == sec.kmax + 1, || {
            format!("gamma {}", rational::format_rational(&sec.gamma))
        });
        for dd in 0..sec.delta() {
            let lhs = table.newton_degree(sec.kmax - dd);
            let rhs = int(n as i64 - dd as i64) - &sec.age;
            sig.record(*lhs == rhs, || {
                format!("gamma {} d {dd}", rational::format_rational(&sec.gamma))
            });
        }
    }
    report.push(kmax);
    report.push(kmin);
    report.push(sig);

    let mut period = Check::new("s(q mu/d + r) = q/d + s(r) and sigma is periodic");
    let block = mu / d;
    let mu_q = int(mu as i64);
    for k in 0..seq.len() {
        let (q, r) = (k / block, k % block);
        let sk = seq.slot_value(weights, k);
        let sr = seq.slot_value(weights, r);
        let ok_s = sk == ratio(q as i64, d as i64) + &sr;
        let sigma_k = int(k as i64) - &mu_q * &sk;
        let sigma_r = int(r as i64) - &mu_q * &sr;
        period.record(ok_s && sigma_k == sigma_r, || format!("k {k}"));
    }
    report.push(period);

    let mut dual_age = Check::new("age(gamma) + age({1-gamma}) = n + 1 - delta(gamma)");
    let mut dual_fixed = Check::new("I(gamma) = I({1-gamma})");
    let mut dual_kmax = Check::new("kmax(gamma) + kmax({1-gamma}) = n + mu + delta(gamma) - 1");
    let mut dual_sigma = Check::new("sigma(kmax(g)-d) + sigma(kmax({1-g})-d') = n iff d + d' = delta - 1");
    for sec in table.sectors() {
        let label = || format!("gamma {}", rational::format_rational(&sec.gamma));
        let Some(other) = table.sector(&rational::fract(&(int(1) - &sec.gamma))).ok() else {
            dual_age.record(false, label);
            continue;
        };
        let rhs = int(n as i64 + 1 - sec.delta() as i64);
        dual_age.record(&sec.age + &other.age == rhs, label);
        dual_fixed.record(sec.fixed == other.fixed, label);
        if sec.gamma > int(0) {
            dual_kmax.record(sec.kmax + other.kmax + 1 == n + mu + sec.delta(), label);
        }
        for d1 in 0..sec.delta() {
            for d2 in 0..other.delta() {
                let sum = table.newton_degree(sec.kmax - d1) + table.newton_degree(other.kmax - d2);
                let hits = sum == int(n as i64);
                dual_sigma.record(hits == (d1 + d2 + 1 == sec.delta()), || {
                    format!("gamma {} d {d1} d' {d2}", rational::format_rational(&sec.gamma))
                });
            }
        }
    }
    report.push(dual_age);
    report.push(dual_fixed);
    report.push(dual_kmax);
    report.push(dual_sigma);

    let mut count = Check::new("sum of delta(gamma) = mu");
    let total: usize = table.sectors().iter().map(Sector::delta).sum();
    count.record(total == mu, || format!("sum {total}"));
    report.push(count);

    let mut flat_dual = Check::new("sigma(j) + sigma(k) = n when j + k = n mod mu");
    for j in 0..mu {
        let k = (n + mu - j % mu) % mu;
        let ok = table.newton_degree(j) + table.newton_degree(k) == int(n as i64);
        flat_dual.record(ok, || format!("j {j} k {k}"));
    }
    report.push(flat_dual);

    let mut length = Check::new("|a(k)| = k");
    let mut split = Check::new("a(q mu/d + r) = q w/d + a(r)");
    for k in 0..seq.len() {
        let a = &seq.multi[k];
        length.record(a.iter().sum::<u64>() == k as u64, || format!("k {k}"));
        let (q, r) = ((k / block) as u64, k % block);
        let ok = a
            .iter()
            .zip(&seq.multi[r])
            .zip(w)
            .all(|((&ak, &ar), &wi)| ak == q * wi / d as u64 + ar);
        split.record(ok, || format!("k {k}"));
    }
    report.push(length);
    report.push(split);

    let mut top = Check::new("a(mu) = w");
    top.record(table.multi_index(mu) == w, || {
        format!("a(mu) = {:?}", table.multi_index(mu))
    });
    report.push(top);

    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(w: &[u64]) -> SpectrumTable {
        build_spectrum(&Weights::new(w.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn spectrum_of_1_2_2_3_3_3() {
        let t = table(&[1, 2, 2, 3, 3, 3]);
        let expect = [
            (0, 1),
            (0, 1),
            (0, 1),
            (0, 1),
            (0, 1),
            (0, 1),
            (1, 3),
            (1, 3),
            (1, 3),
            (1, 2),
            (1, 2),
            (2, 3),
            (2, 3),
            (2, 3),
        ];
        let got: Vec<_> = t.spectrum().to_vec();
        let want: Vec<_> = expect.iter().map(|&(p, q)| ratio(p, q)).collect();
        assert_eq!(got, want);
        assert_eq!(t.kmax(&int(0)).unwrap(), 5);
        assert_eq!(t.kmax(&ratio(1, 3)).unwrap(), 8);
        assert_eq!(t.kmax(&ratio(1, 2)).unwrap(), 10);
        assert_eq!(t.kmax(&ratio(2, 3)).unwrap(), 13);
        assert_eq!(t.kmin(&ratio(2, 3)).unwrap(), 11);
        assert_eq!(*t.newton_degree(6), ratio(4, 3));
        assert_eq!(*t.newton_degree(9), int(2));
        assert_eq!(*t.newton_degree(13), ratio(11, 3));
        assert!(verify_spectral_identities(&t).passed());
    }

    #[test]
    fn recursion_by_hand() {
        let t = table(&[1, 2, 2, 3, 3, 3]);
        assert_eq!(t.multi_index(6), &[1, 1, 1, 1, 1, 1]);
        assert_eq!(t.sequence().index[6], 3);
        assert_eq!(t.multi_index(11), &[1, 2, 2, 2, 2, 2]);
        assert_eq!(t.multi_index(14), &[1, 2, 2, 3, 3, 3]);
        assert_eq!(t.sequence().index[14], 0);
    }

    #[test]
    fn recursion_for_1_2() {
        let w = Weights::new(vec![1, 2]).unwrap();
        let seq = multi_index_sequence(&w, 4);
        assert_eq!(seq.multi, vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert_eq!(seq.index, vec![0, 1, 1, 0]);
    }

    #[test]
    fn non_reduced_weights() {
        let t = table(&[2, 4]);
        assert_eq!(t.mu(), 6);
        assert!(verify_spectral_identities(&t).passed());
        assert_eq!(t.multi_index(6), &[2, 4]);
    }

    #[test]
    fn sector_data() {
        let t = table(&[1, 2, 2, 3, 3, 3]);
        let sec = t.sector(&ratio(1, 2)).unwrap();
        assert_eq!(sec.fixed, vec![1, 2]);
        assert_eq!(sec.age, int(2));
        assert_eq!(sec.fixed_product, int(4));
        assert!(t.sector(&ratio(1, 5)).is_err());
    }

    #[test]
    fn standalone_sector() {
        let w = Weights::new(vec![1, 2, 2, 3, 3, 3]).unwrap();
        let sec = sector(&w, &ratio(1, 3)).unwrap();
        assert_eq!(sec.fixed, vec![3, 4, 5]);
        assert_eq!(sec.age, ratio(5, 3));
        assert_eq!((sec.kmin, sec.kmax), (6, 8));
        let off = sector(&w, &ratio(1, 5)).unwrap();
        assert_eq!(off.delta(), 0);
        assert!(sector(&w, &int(1)).is_err());
        let w12 = Weights::new(vec![1, 2]).unwrap();
        let half = sector(&w12, &ratio(1, 2)).unwrap();
        assert_eq!((half.fixed.clone(), half.age), (vec![1], ratio(1, 2)));
    }

    #[test]
    fn parse_weights() {
        let w: Weights = "1,2,2".parse().unwrap();
        assert_eq!(w.values(), &[1, 2, 2]);
        assert_eq!(w.mu(), 5);
        assert!("1,0".parse::<Weights>().is_err());
        assert!("".parse::<Weights>().is_err());
        assert!("1,a".parse::<Weights>().is_err());
        assert_eq!(w.to_string(), "(1,2,2)");
    }

    #[test]
    fn coprimality() {
        assert!(Weights::new(vec![1, 2]).unwrap().is_coprime());
        assert!(!Weights::new(vec![1, 1, 2]).unwrap().is_coprime());
        assert!(!Weights::new(vec![1, 2, 2, 3, 3, 3]).unwrap().is_coprime());
        assert!(Weights::new(vec![1, 1, 3]).unwrap().is_coprime());
    }
}
