//! The acceptance matrix: worked values, oracle equivalences and rank
//! sandwiches, each reported as one pass/fail outcome.

use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::asymptotics::{divergence, FamilyDescriptor, FamilyKind};
use crate::bounds::{self, Side};
use crate::bruteforce;
use crate::context::GroupData;
use crate::divisors::divisor_stats;
use crate::error::{Error, Result};
use crate::grammar::parse_group_with;
use crate::group;
use crate::limits::Limits;
use crate::orbits;
use crate::rank::{self, ActionTable};
use crate::structure;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Fast,
    Heavy,
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub checks: usize,
    pub notes: Vec<String>,
    /// Minimal counterexamples.
    pub failures: Vec<String>,
    /// Cases that cannot be evaluated within the configured caps.
    pub skipped: Vec<String>,
    pub elapsed: Duration,
}

struct Recorder {
    checks: usize,
    notes: Vec<String>,
    failures: Vec<String>,
    skipped: Vec<String>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { checks: 0, notes: Vec::new(), failures: Vec::new(), skipped: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, label: &str, got: T, want: T) {
        self.checks += 1;
        if got != want {
            self.failures.push(format!("{label}: got {got:?}, expected {want:?}"));
        }
    }
}

pub const CRITERIA: [(usize, &str); 9] = [
    (1, "worked examples"),
    (2, "alpha oracle equivalence"),
    (3, "unit group order oracle"),
    (4, "automaton monoid order oracle"),
    (5, "rank sandwich"),
    (6, "wreath ranks"),
    (7, "dihedral class counts"),
    (8, "divergence sequences"),
    (9, "S4 binary alphabet consistency"),
];

pub fn run(suite: Suite, limits: &Limits) -> Vec<CheckOutcome> {
    CRITERIA.iter().map(|&(id, _)| criterion(id, suite, limits)).collect()
}

pub fn criterion(id: usize, suite: Suite, limits: &Limits) -> CheckOutcome {
    let start = Instant::now();
    let mut rec = Recorder::new();
    let res = match id {
        1 => worked_examples(&mut rec, limits),
        2 => alpha_equivalence(&mut rec, limits),
        3 => ica_order_oracle(&mut rec, limits),
        4 => ca_order_oracle(&mut rec, limits),
        5 => rank_sandwich(&mut rec, limits),
        6 => wreath_ranks(&mut rec, limits),
        7 => dihedral_class_counts(&mut rec, limits),
        8 => divergence_sequences(&mut rec, limits),
        9 => s4_consistency(&mut rec, suite, limits),
        _ => Err(Error::InvalidArgument(format!("no criterion {id}"))),
    };
    if let Err(e) = res {
        rec.failures.push(format!("error: {e}"));
    }
    let name = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1);
    CheckOutcome {
        id,
        name,
        passed: rec.failures.is_empty(),
        checks: rec.checks,
        notes: rec.notes,
        failures: rec.failures,
        skipped: rec.skipped,
        elapsed: start.elapsed(),
    }
}

fn data(spec: &str, limits: &Limits) -> Result<GroupData> {
    GroupData::new(parse_group_with(spec, limits)?, limits)
}

fn worked_examples(rec: &mut Recorder, limits: &Limits) -> Result<()> {
    rec.eq("dihedral_upper(3,2)", bounds::dihedral_upper(3, 2)?, 7);
    rec.eq("dihedral_upper(4,2)", bounds::dihedral_upper(4, 2)?, 12);
    for q in [3, 4, 5] {
        rec.eq(&format!("dihedral_upper(3,{q})"), bounds::dihedral_upper(3, q)?, 9);
        rec.eq(&format!("dihedral_upper(4,{q})"), bounds::dihedral_upper(4, q)?, 18);
    }
    let q8 = data("Q8", limits)?;
    let rank_q8 = rank::group_rank_bruteforce(&q8.group, limits)?;
    rec.eq("Rank(Q8)", rank_q8, 2);
    rec.eq("dedekind_ica_upper(Q8,2)", bounds::dedekind_ica_upper(&q8, 2, rank_q8)?, 12);
    let s4 = data("S4", limits)?;
    let degree = s4.group.perm_degree().unwrap_or(0);
    rec.eq("mciver_neumann_upper(S4,2)", bounds::mciver_neumann_upper(&s4, 2, degree)?, 40);
    for q in [3, 4, 5] {
        rec.eq(&format!("dedekind_ica_upper(Q8,{q})"), bounds::dedekind_ica_upper(&q8, q, rank_q8)?, 16);
        rec.eq(&format!("mciver_neumann_upper(S4,{q})"), bounds::mciver_neumann_upper(&s4, q, degree)?, 42);
    }
    rec.eq("r(S4)", s4.r(), 11);
    rec.eq("r(Q8)", q8.r(), 6);
    Ok(())
}

const ALPHA_GROUPS: [&str; 16] =
    ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "V4", "C2xC4", "D6", "D8", "D10", "D12", "Q8", "S3"];

fn alpha_equivalence(rec: &mut Recorder, limits: &Limits) -> Result<()> {
    for spec in ALPHA_GROUPS {
        let d = data(spec, limits)?;
        for q in [2u32, 3] {
            if (q as u64).pow(d.order() as u32) > 1 << 20 {
                rec.skipped.push(format!("{spec} q={q}: state space above 2^20"));
                continue;
            }
            let dec = orbits::enumerate_orbits(&d, q)?;
            let mobius = orbits::alpha_all(&d, q)?;
            for (c, (m, e)) in mobius.iter().zip(&dec.alpha).enumerate() {
                rec.check(*m == BigUint::from(*e), || format!("{spec} q={q} class {c}: mobius {m}, enumeration {e}"));
            }
            let burnside = orbits::burnside_count(&d.group, q);
            let total = orbits::alpha_total(&mobius);
            rec.check(total == burnside, || format!("{spec} q={q}: sum of alpha {total} != Burnside {burnside}"));
        }
    }
    Ok(())
}

/// Groups small enough for the point-level oracles, with all alphabets
/// whose configuration space stays within `max_points`.
fn small_cases(max_points: u64) -> Vec<(&'static str, u32)> {
    let groups = ["C1", "C2", "D2", "C3", "C4", "V4", "D4", "C5", "C6", "S3", "D6"];
    let mut out = Vec::new();
    for spec in groups {
        let n = parse_group_with(spec, &Limits::default()).map(|g| g.order()).unwrap_or(usize::MAX);
        for q in 2u32.. {
            match (q as u64).checked_pow(n as u32) {
                Some(p) if p <= max_points => out.push((spec, q)),
                _ => break,
            }
        }
    }
    out
}

fn ica_order_oracle(rec: &mut Recorder, limits: &Limits) -> Result<()> {
    let cases = small_cases(limits.max_ica_points);
    for &(spec, q) in &cases {
        let d = data(spec, limits)?;
        let formula = structure::ica_order(&d, q)?;
        let bf = bruteforce::enumerate_ica_bruteforce(&d.group, q, limits)?;
        let exact = formula.exact.clone();
        rec.check(exact.as_ref() == Some(&bf.count), || {
            format!("{spec} q={q}: structure order {exact:?}, enumeration {}", bf.count)
        });
        if let Some(maps) = &bf.maps {
            rec.check(maps.len() as u64 == bf.count.iter_u64_digits().next().unwrap_or(0), || {
                format!("{spec} q={q}: listed {} maps", maps.len())
            });
        }
    }
    rec.notes.push(format!("{} (group, alphabet) pairs", cases.len()));
    Ok(())
}

fn ca_order_oracle(rec: &mut Recorder, limits: &Limits) -> Result<()> {
    let cases = small_cases(limits.max_ca_points);
    let mut done = 0;
    let mut orbitwise = 0;
    for &(spec, q) in &cases {
        let d = data(spec, limits)?;
        let formula = structure::ca_order(&d, q)?;
        match bruteforce::enumerate_ca_bruteforce(&d.group, q, limits) {
            Ok(bf) => {
                done += 1;
                let exact = formula.exact.clone();
                rec.check(exact == Some(BigUint::from(bf.count)), || {
                    format!("{spec} q={q}: formula {exact:?}, enumeration {}", bf.count)
                });
            }
            Err(Error::CapExceeded { .. }) => {
                // too many local rules: count the shift-commuting maps orbit by orbit instead
                let count = bruteforce::count_equivariant_maps(&d.group, q, limits)?;
                orbitwise += 1;
                let exact = formula.exact.clone();
                rec.check(exact.as_ref() == Some(&count), || {
                    format!("{spec} q={q}: formula {exact:?}, orbitwise count {count}")
                });
            }
            Err(e) => return Err(e),
        }
    }
    rec.notes.push(format!(
        "{} pairs: {done} by local-rule enumeration, {orbitwise} by orbitwise count of shift-commuting maps",
        cases.len()
    ));
    Ok(())
}

fn rank_sandwich(rec: &mut Recorder, limits: &Limits) -> Result<()> {
    let mut done = Vec::new();
    for (spec, q) in small_cases(limits.max_ica_points) {
        let d = data(spec, limits)?;
        let Some(r) = bounds::ica_rank_oracle(&d, q)? else { continue };
        let Some(exact) = r.exact() else {
            rec.failures.push(format!("{spec} q={q}: rank search did not finish: {:?}", r.outcome));
            continue;
        };
        let lower = bounds::ica_lower(&d, q);
        rec.check(lower <= exact, || format!("{spec} q={q}: lower {lower} > rank {exact}"));
        for e in bounds::all_bounds(&d, q)? {
            let ok = match e.side {
                Side::Lower => e.value <= exact,
                Side::Upper => !e.admissible || exact <= e.value,
            };
            rec.check(ok, || format!("{spec} q={q}: rank {exact} violates {:?} bound {} = {}", e.side, e.method, e.value));
        }
        let upper = bounds::best_bounds(&d, q, Some(exact))?.upper;
        done.push(format!("{spec}/q={q}: {lower} <= {exact} <= {} ({})", upper.value, upper.method));
    }
    rec.notes.push(done.join(", "));
    Ok(())
}

fn wreath_ranks(rec: &mut Recorder, limits: &Limits) -> Result<()> {
    for (d, a) in [(2, 2), (2, 3), (3, 2), (4, 2)] {
        let w = group::wreath(&group::cyclic(d)?, a)?;
        rec.eq(&format!("Rank(C{d} wr S{a})"), rank::group_rank_bruteforce(&w, limits)?, 2);
    }
    let w = group::wreath(&group::dihedral(6)?, 2)?;
    let r = rank::rank_exact(&ActionTable::from_group(&w), limits)?;
    match r.exact() {
        Some(k) => {
            rec.check(k <= 3, || format!("Rank(D6 wr S2) = {k} > 3"));
            rec.notes.push(format!("Rank(D6 wr S2) = {k}"));
        }
        None => rec.failures.push(format!("Rank(D6 wr S2) unresolved: {:?}", r.outcome)),
    }
    Ok(())
}

fn dihedral_class_counts(rec: &mut Recorder, limits: &Limits) -> Result<()> {
    for n in 1..=12u64 {
        let d = GroupData::new(group::dihedral(2 * n as usize)?, limits)?;
        let mut want = divisor_stats(2 * n).d;
        if n % 2 == 0 {
            want += 2 * divisor_stats(n).d_plus;
        }
        rec.eq(&format!("r(D{})", 2 * n), d.r() as u64, want);
    }
    Ok(())
}

fn divergence_sequences(rec: &mut Recorder, limits: &Limits) -> Result<()> {
    let z = divergence(&FamilyDescriptor::new(FamilyKind::Z, 2)?, 8, limits)?;
    rec.eq("Z q=2 lower bounds", z.lower_bounds(), (1..=8).collect());
    let dinf = divergence(&FamilyDescriptor::new(FamilyKind::DInfinity, 2)?, 6, limits)?;
    let seq = dinf.lower_bounds();
    rec.check(seq.windows(2).all(|w| w[0] < w[1]), || format!("Dinf sequence not increasing: {seq:?}"));
    for st in &dinf.stages {
        let d = GroupData::new(group::dihedral(1 << st.k)?, limits)?;
        rec.eq(&format!("Dinf stage {}", st.k), st.lower_bound, d.r() - d.r_index(2));
    }
    rec.notes.push(format!("Dinf q=2: {seq:?}"));
    Ok(())
}

fn s4_consistency(rec: &mut Recorder, suite: Suite, limits: &Limits) -> Result<()> {
    let s4 = data("S4", limits)?;
    let alpha = orbits::alpha_all(&s4, 2)?;
    let total = orbits::alpha_total(&alpha);
    let burnside = orbits::burnside_count(&s4.group, 2);
    rec.check(total == burnside, || format!("sum of alpha {total} != Burnside {burnside}"));
    let order = structure::ica_order(&s4, 2)?;
    let claim = (1u64 << 24) as f64;
    rec.notes.push(format!(
        "orbits {burnside}; log2 |ICA(S4; 2)| = {:.6} (+/- {:.1e}), against the informal 2^24 = {claim} \
         (ratio {:.4}); reported only",
        order.log2,
        order.log2_error,
        order.log2 / claim
    ));
    if suite == Suite::Heavy {
        let heavy = Limits { max_states: limits.max_states.max(1 << 24), ..limits.clone() };
        let s4h = GroupData::new(s4.group.clone(), &heavy)?;
        let dec = orbits::enumerate_orbits(&s4h, 2)?;
        rec.eq("orbit count over 2^24 configurations", BigUint::from(dec.orbits.len()), burnside);
        for (c, (m, e)) in alpha.iter().zip(&dec.alpha).enumerate() {
            rec.check(*m == BigUint::from(*e), || format!("class {c}: mobius {m}, enumeration {e}"));
        }
    } else {
        rec.skipped.push("enumeration of 2^24 configurations (heavy suite)".into());
    }
    Ok(())
}
