//! One table builder per verb.

use num_traits::Zero;
use orbimirror::aside::{CohClass, GwStatus, ScaledClass};
use orbimirror::frobenius::{
    check_dubrovin_preconditions, initial_conditions_a, verify_algebra_axioms, verify_classical, verify_quantum,
};
use orbimirror::rational::parse_rational;
use orbimirror::wdvv::{reconstruct, reconstruct_with, InitialData};
use orbimirror::{
    verify_spectral_identities, CheckReport, Error, GradedProduct, LandauGinzburg, Matrix, OrbifoldCohomology,
    Rational, Weights,
};

use crate::emit::{Cell, Grid, Table};
use crate::{Failure, Output, Side, Verb};

const CONJECTURE_NOTE: &str =
    "Positive-degree three-point values for weights other than all ones come from a conjectured closed form; \
     the quantum comparison is conditional on it.";

pub fn dispatch(verb: &Verb) -> Result<Output, Failure> {
    let table = match verb {
        Verb::Info(a) => info(&a.weights)?,
        Verb::Basis(a) => basis(&a.weights)?,
        Verb::Pairing(a) => pairing(&a.weights)?,
        Verb::CupTable(a) => cup_table(&a.weights)?,
        Verb::Triple { w, classes } => triple(&w.weights, classes.as_deref())?,
        Verb::Obstruction { w, gammas } => obstruction(&w.weights, gammas.as_deref())?,
        Verb::Gw {
            w,
            classes,
            assume_conjecture,
        } => gw(&w.weights, classes.as_deref(), *assume_conjecture)?,
        Verb::Bside { w, classes } => bside(&w.weights, classes.as_deref())?,
        Verb::Frobenius {
            w,
            side,
            assume_conjecture,
        } => frobenius(&w.weights, *side, *assume_conjecture)?,
        Verb::Potential {
            w,
            max_length,
            side,
            assume_conjecture,
        } => potential(&w.weights, *max_length, *side, *assume_conjecture)?,
        Verb::Correspond { w, classical, quantum } => {
            let both = !classical && !quantum;
            return correspond(&w.weights, *classical || both, *quantum || both);
        }
        Verb::Check { w, max_length } => return check(&w.weights, *max_length),
    };
    Ok(Output { table, passed: true })
}

/// `"conjectural": true` on rows that depend on the conjectured values.
fn marker(conjectural: bool) -> Cell {
    if conjectural {
        Cell::Bool(true)
    } else {
        Cell::Absent
    }
}

fn eta(c: &CohClass) -> Cell {
    Cell::Eta {
        power: c.power,
        gamma: c.gamma.clone(),
    }
}

fn product(coeff: Rational, class: Cell) -> Cell {
    Cell::Product(Some((coeff, Box::new(class))))
}

/// Basis in the order sectors ascending, then power.
fn sector_major(coh: &OrbifoldCohomology) -> Vec<&CohClass> {
    let mut classes: Vec<&CohClass> = coh.basis().iter().collect();
    classes.sort_by(|a, b| a.gamma.cmp(&b.gamma).then(a.power.cmp(&b.power)));
    classes
}

/// A flat index `k` or a label `eta[d,gamma]`.
fn resolve<'a>(coh: &'a OrbifoldCohomology, text: &str) -> Result<&'a CohClass, Failure> {
    if let Ok(k) = text.trim().parse::<usize>() {
        return Ok(coh.class(k)?);
    }
    let inner = text
        .trim()
        .strip_prefix("eta[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Failure::Usage(format!("class {text:?}: expected a flat index or eta[d,gamma]")))?;
    let (d, g) = inner
        .split_once(',')
        .ok_or_else(|| Failure::Usage(format!("class {text:?}: expected eta[d,gamma]")))?;
    let d: usize = d
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("class {text:?}: bad power")))?;
    Ok(coh.class_of(&parse_rational(g.trim())?, d)?)
}

fn info(w: &Weights) -> Result<Table, Failure> {
    let coh = OrbifoldCohomology::new(w)?;
    let t = coh.table();
    let secs = t.sectors();
    let mut table = Table::new("info", w, vec!["key", "value"]);
    let mut row = |k: &str, v: Cell| table.push(vec![Cell::Text(k.into()), v]);
    row("n", Cell::Int(w.dim() as u64));
    row("mu", Cell::Int(w.mu() as u64));
    row("gcd", Cell::Int(w.gcd()));
    row("lcm", Cell::Int(w.lcm()));
    row("coprime", Cell::Bool(w.is_coprime()));
    row("projective_space", Cell::Bool(w.is_projective_space()));
    row(
        "sectors",
        Cell::List(secs.iter().map(|s| Cell::rational(&s.gamma)).collect()),
    );
    row("delta", Cell::ints(secs.iter().map(|s| s.delta() as u64)));
    row("age", Cell::List(secs.iter().map(|s| Cell::rational(&s.age)).collect()));
    row("kmin", Cell::ints(secs.iter().map(|s| s.kmin as u64)));
    row("kmax", Cell::ints(secs.iter().map(|s| s.kmax as u64)));
    row(
        "spectrum",
        Cell::List((0..t.mu()).map(|k| Cell::rational(t.gamma(k))).collect()),
    );
    row(
        "sigma",
        Cell::List((0..t.mu()).map(|k| Cell::rational(t.newton_degree(k))).collect()),
    );
    row(
        "critical_value",
        Cell::rational(&orbimirror::bside::critical_constant(w)),
    );
    Ok(table)
}

fn basis(w: &Weights) -> Result<Table, Failure> {
    let coh = OrbifoldCohomology::new(w)?;
    let t = coh.table();
    let mut table = Table::new(
        "basis",
        w,
        vec![
            "flat",
            "class",
            "gamma",
            "power",
            "half_degree",
            "mirror",
            "sigma",
            "multi_index",
        ],
    );
    for c in coh.basis() {
        table.push(vec![
            Cell::Int(c.flat as u64),
            eta(c),
            Cell::rational(&c.gamma),
            Cell::Int(c.power as u64),
            Cell::rational(&c.half_degree),
            Cell::Omega(c.flat),
            Cell::rational(t.newton_degree(c.flat)),
            Cell::ints(t.multi_index(c.flat).iter().copied()),
        ]);
    }
    Ok(table)
}

fn pairing(w: &Weights) -> Result<Table, Failure> {
    let coh = OrbifoldCohomology::new(w)?;
    let mut table = Table::new("pairing", w, vec!["left", "right", "value"]);
    for a in coh.basis() {
        for b in coh.basis() {
            let v = coh.pairing(a, b);
            if !v.is_zero() {
                table.push(vec![eta(a), eta(b), Cell::Rational(v)]);
            }
        }
    }
    let order = sector_major(&coh);
    table.grid = Some(Grid {
        labels: order.iter().map(|c| eta(c)).collect(),
        cells: order
            .iter()
            .map(|a| order.iter().map(|b| Some(Cell::Rational(coh.pairing(a, b)))).collect())
            .collect(),
    });
    Ok(table)
}

fn cup_cell(coh: &OrbifoldCohomology, a: &CohClass, b: &CohClass) -> Cell {
    match coh.cup(a, b) {
        ScaledClass::Zero => Cell::Product(None),
        ScaledClass::Multiple { coeff, class } => product(coeff, eta(&class)),
    }
}

fn cup_table(w: &Weights) -> Result<Table, Failure> {
    let coh = OrbifoldCohomology::new(w)?;
    let order = sector_major(&coh);
    let mut table = Table::new("cup-table", w, vec!["left", "right", "product"]);
    let mut cells = Vec::with_capacity(order.len());
    for (i, a) in order.iter().enumerate() {
        let mut row = Vec::with_capacity(order.len());
        for (j, b) in order.iter().enumerate() {
            if j < i {
                row.push(None);
                continue;
            }
            let cell = cup_cell(&coh, a, b);
            table.push(vec![eta(a), eta(b), cell.clone()]);
            row.push(Some(cell));
        }
        cells.push(row);
    }
    table.grid = Some(Grid {
        labels: order.iter().map(|c| eta(c)).collect(),
        cells,
    });
    Ok(table)
}

fn triple(w: &Weights, classes: Option<&[String]>) -> Result<Table, Failure> {
    let coh = OrbifoldCohomology::new(w)?;
    let mut table = Table::new("triple", w, vec!["first", "second", "third", "value"]);
    match classes {
        Some(list) => {
            let cs = list.iter().map(|s| resolve(&coh, s)).collect::<Result<Vec<_>, _>>()?;
            let v = coh.triple_tensor(cs[0], cs[1], cs[2]);
            table.push(vec![eta(cs[0]), eta(cs[1]), eta(cs[2]), Cell::Rational(v)]);
        }
        None => {
            let b = coh.basis();
            for (i, x) in b.iter().enumerate() {
                for (j, y) in b.iter().enumerate().skip(i) {
                    for z in b.iter().skip(j) {
                        let v = coh.triple_tensor(x, y, z);
                        if !v.is_zero() {
                            table.push(vec![eta(x), eta(y), eta(z), Cell::Rational(v)]);
                        }
                    }
                }
            }
        }
    }
    Ok(table)
}

fn obstruction(w: &Weights, gammas: Option<&[String]>) -> Result<Table, Failure> {
    let coh = OrbifoldCohomology::new(w)?;
    let mut table = Table::new("obstruction", w, vec!["gammas", "rank", "summands", "indices"]);
    let triples: Vec<[Rational; 3]> = match gammas {
        Some(list) => {
            let g = list
                .iter()
                .map(|s| parse_rational(s.trim()))
                .collect::<Result<Vec<_>, Error>>()?;
            vec![[g[0].clone(), g[1].clone(), g[2].clone()]]
        }
        None => {
            let secs: Vec<&Rational> = coh.table().sectors().iter().map(|s| &s.gamma).collect();
            let mut out = Vec::new();
            for (i, a) in secs.iter().enumerate() {
                for (j, b) in secs.iter().enumerate().skip(i) {
                    for c in secs.iter().skip(j) {
                        if (*a + *b + *c).is_integer() {
                            out.push([(*a).clone(), (*b).clone(), (*c).clone()]);
                        }
                    }
                }
            }
            out
        }
    };
    for [a, b, c] in triples {
        let bundle = coh.obstruction_bundle(&a, &b, &c)?;
        table.push(vec![
            Cell::List(vec![Cell::Rational(a), Cell::Rational(b), Cell::Rational(c)]),
            Cell::Int(bundle.rank as u64),
            Cell::ints(bundle.summand_weights.iter().copied()),
            Cell::ints(bundle.indices.iter().map(|&i| i as u64)),
        ]);
    }
    Ok(table)
}

fn gw(w: &Weights, classes: Option<&[String]>, assume: bool) -> Result<Table, Failure> {
    let coh = OrbifoldCohomology::new(w)?;
    let mut table = Table::new(
        "gw",
        w,
        vec!["j", "k", "left", "right", "degree", "value", "status", "conjectural"],
    );
    let pairs: Vec<(usize, usize)> = match classes {
        Some(list) => {
            let cs = list.iter().map(|s| resolve(&coh, s)).collect::<Result<Vec<_>, _>>()?;
            vec![(cs[0].flat, cs[1].flat)]
        }
        None => {
            let mu = coh.mu();
            (0..mu).flat_map(|j| (0..mu).map(move |k| (j, k))).collect()
        }
    };
    let explicit = classes.is_some();
    let mut conjectural = false;
    for (j, k) in pairs {
        let v = coh.gw_three_point(j, k)?;
        if v.status == GwStatus::Zero && !explicit {
            continue;
        }
        let conj = v.status == GwStatus::QuantumConjecture && !assume;
        conjectural |= conj;
        let value = if v.status == GwStatus::Unsupported {
            Cell::Null
        } else {
            Cell::Rational(v.value)
        };
        table.push(vec![
            Cell::Int(j as u64),
            Cell::Int(k as u64),
            eta(coh.class(j)?),
            eta(coh.class(k)?),
            Cell::Rational(coh.gw_degree(j, k)?.value),
            value,
            Cell::Text(v.status.as_str().into()),
            marker(conj),
        ]);
    }
    if conjectural {
        table.notes.push(CONJECTURE_NOTE.into());
    }
    Ok(table)
}

fn bside(w: &Weights, classes: Option<&[usize]>) -> Result<Table, Failure> {
    let lg = LandauGinzburg::new(w)?;
    match classes {
        None => {
            let mut table = Table::new(
                "bside",
                w,
                vec!["k", "omega", "multi_index", "newton_degree", "rescale", "sector"],
            );
            for o in lg.omega_basis() {
                table.push(vec![
                    Cell::Int(o.index as u64),
                    Cell::Omega(o.index),
                    Cell::ints(o.multi_index.iter().copied()),
                    Cell::rational(&o.newton_degree),
                    Cell::rational(&o.rescale.value),
                    Cell::rational(lg.table().gamma(o.index)),
                ]);
            }
            Ok(table)
        }
        Some(&[i, j]) => {
            let mut table = Table::new("bside-product", w, vec!["left", "right", "star", "graded"]);
            let (c, m) = lg.star_rescaled(i, j)?;
            let graded = match lg.graded_product_rescaled(i, j)? {
                GradedProduct::Zero => Cell::Product(None),
                GradedProduct::Multiple { coeff, index } => product(coeff, Cell::Omega(index)),
            };
            table.push(vec![Cell::Omega(i), Cell::Omega(j), product(c, Cell::Omega(m)), graded]);
            Ok(table)
        }
        Some(_) => Err(Failure::Usage("--classes takes two indices".into())),
    }
}

fn push_matrix(table: &mut Table, name: &str, m: &Matrix, conjectural: impl Fn(usize, usize) -> bool) {
    for i in 0..m.size() {
        for j in 0..m.size() {
            if !m[(i, j)].is_zero() {
                table.push(vec![
                    Cell::Text(name.into()),
                    Cell::Int(i as u64),
                    Cell::Int(j as u64),
                    Cell::rational(&m[(i, j)]),
                    marker(conjectural(i, j)),
                ]);
            }
        }
    }
}

fn frobenius(w: &Weights, side: Side, assume: bool) -> Result<Table, Failure> {
    let mut table = Table::new("frobenius", w, vec!["matrix", "row", "col", "value", "conjectural"]);
    let data = match side {
        Side::B => LandauGinzburg::new(w)?.initial_conditions(),
        Side::A => {
            let coh = OrbifoldCohomology::new(w)?;
            let (data, mats) = initial_conditions_a(&coh)?;
            let mu = coh.mu();
            let g_inv = coh.pairing_matrix().inverse()?;
            let mut conj_cells = vec![false; mu * mu];
            for a in 0..mu {
                for j in 0..mu {
                    for k in 0..mu {
                        if !g_inv[(a, k)].is_zero() && coh.gw_three_point(j, k)?.status == GwStatus::QuantumConjecture {
                            conj_cells[a * mu + j] = !assume;
                        }
                    }
                }
            }
            push_matrix(&mut table, "A0", &mats.a0, |i, j| conj_cells[i * mu + j]);
            if conj_cells.iter().any(|&c| c) {
                table.notes.push(CONJECTURE_NOTE.into());
            }
            if !mats.unsupported.is_empty() {
                table.notes.push(format!(
                    "A0 cells {:?} depend on three-point values the closed form does not determine; shown as 0",
                    mats.unsupported
                ));
            }
            push_matrix(&mut table, "A_inf", &data.a_inf, |_, _| false);
            push_matrix(&mut table, "metric", &data.metric, |_, _| false);
            push_unit(&mut table, data.unit);
            return Ok(table);
        }
    };
    push_matrix(&mut table, "A0", &data.a0, |_, _| false);
    push_matrix(&mut table, "A_inf", &data.a_inf, |_, _| false);
    push_matrix(&mut table, "metric", &data.metric, |_, _| false);
    push_unit(&mut table, data.unit);
    Ok(table)
}

fn push_unit(table: &mut Table, unit: usize) {
    table.push(vec![
        Cell::Text("unit".into()),
        Cell::Int(unit as u64),
        Cell::Null,
        Cell::rational(&Rational::from_integer(1.into())),
        Cell::Absent,
    ]);
}

fn potential(w: &Weights, max_length: usize, side: Side, assume: bool) -> Result<Table, Failure> {
    let (pc, conjectural) = match side {
        Side::B => (reconstruct(w, max_length)?, false),
        Side::A => {
            let coh = OrbifoldCohomology::new(w)?;
            let mu = coh.mu();
            let mut conj = false;
            for j in 0..mu {
                for k in 0..mu {
                    conj |= coh.gw_three_point(j, k)?.status == GwStatus::QuantumConjecture;
                }
            }
            (
                reconstruct_with(w, max_length, InitialData::Cohomology)?,
                conj && !assume,
            )
        }
    };
    let mut table = Table::new("potential", w, vec!["alpha", "conjectural", "value"]);
    let mut rows: Vec<_> = pc.representatives().filter(|(_, v)| !v.is_zero()).collect();
    rows.sort_by_key(|(a, _)| (a.iter().sum::<u32>(), (*a).clone()));
    for (alpha, value) in rows {
        table.push(vec![
            Cell::ints(alpha.iter().copied()),
            marker(conjectural),
            Cell::rational(value),
        ]);
    }
    table
        .notes
        .push("Rows are the nonzero coefficients with alpha_1 = 0; the rest follow from the Euler recursion.".into());
    if conjectural {
        table.notes.push(CONJECTURE_NOTE.into());
    }
    Ok(table)
}

fn report_rows(table: &mut Table, suite: &str, report: &CheckReport) {
    for c in &report.checks {
        table.push(vec![
            Cell::Text(suite.into()),
            Cell::Text(c.name.clone()),
            Cell::Bool(c.passed),
            Cell::Int(c.cases as u64),
            c.witness.clone().map_or(Cell::Null, Cell::Text),
        ]);
    }
}

fn check_table(kind: &str, w: &Weights) -> Table {
    Table::new(kind, w, vec!["suite", "check", "passed", "cases", "witness"])
}

fn correspond(w: &Weights, classical: bool, quantum: bool) -> Result<Output, Failure> {
    let mut table = check_table("correspond", w);
    let mut passed = true;
    if classical {
        let r = verify_classical(w)?;
        passed &= r.passed();
        report_rows(&mut table, "classical", &r.checks);
    }
    if quantum {
        let r = verify_quantum(w)?;
        passed &= r.passed();
        report_rows(&mut table, "quantum", &r.checks);
        quantum_notes(&mut table, r.conjecture_used, r.coprime, &r.skipped);
    }
    Ok(Output { table, passed })
}

fn quantum_notes(table: &mut Table, conjecture_used: bool, coprime: bool, skipped: &[(usize, usize)]) {
    if conjecture_used {
        table.notes.push(CONJECTURE_NOTE.into());
    }
    if !coprime {
        table
            .notes
            .push("gcd(mu, lcm w) > 1: the degree selection rule is only established in the coprime case.".into());
    }
    if !skipped.is_empty() {
        table
            .notes
            .push(format!("A0 cells left out of the comparison: {skipped:?}"));
    }
}

/// WDVV audit length used by `check` when none is given.
fn default_audit_length(mu: usize) -> usize {
    match mu {
        0..=4 => 8,
        5..=8 => 6,
        9..=14 => 4,
        _ => 3,
    }
}

fn check(w: &Weights, max_length: Option<usize>) -> Result<Output, Failure> {
    let mut table = check_table("check", w);
    let mut passed = true;
    let spectral = verify_spectral_identities(&orbimirror::spectral::build_spectrum(w)?);
    let classical = verify_classical(w)?;
    let quantum = verify_quantum(w)?;
    let dubrovin = check_dubrovin_preconditions(w)?;
    let axioms = verify_algebra_axioms(w)?;
    for (suite, report) in [
        ("spectral", &spectral),
        ("classical", &classical.checks),
        ("quantum", &quantum.checks),
        ("dubrovin", &dubrovin),
        ("axioms", &axioms),
    ] {
        passed &= report.passed();
        report_rows(&mut table, suite, report);
    }
    quantum_notes(&mut table, quantum.conjecture_used, quantum.coprime, &quantum.skipped);

    let length = max_length.unwrap_or_else(|| default_audit_length(w.mu()));
    let name = format!("WDVV residuals vanish up to length {length}");
    let (ok, cases, witness) = if w.mu() < 2 {
        (true, 0, Some("not applicable for mu = 1".to_string()))
    } else {
        match reconstruct(w, length) {
            Ok(pc) => (true, pc.audit().map_err(Failure::from)?, None),
            Err(e @ (Error::Inconsistent { .. } | Error::ZeroPivot(_) | Error::Reconstruction(_))) => {
                (false, 0, Some(e.to_string()))
            }
            Err(e) => return Err(e.into()),
        }
    };
    passed &= ok;
    table.push(vec![
        Cell::Text("wdvv".into()),
        Cell::Text(name),
        Cell::Bool(ok),
        Cell::Int(cases as u64),
        witness.map_or(Cell::Null, Cell::Text),
    ]);
    Ok(Output { table, passed })
}
