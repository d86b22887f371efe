use ica_core::asymptotics::{self, FamilyDescriptor, FamilyKind};
use ica_core::bigcount::BigCount;
use ica_core::bounds::{self, Side};
use ica_core::context::GroupData;
use ica_core::lattice::{quotient_within, subgroup_as_group};
use ica_core::orbits;
use ica_core::rank::{rank_exact, ActionTable, RankOutcome, RankResult};
use ica_core::structure;
use ica_core::verify::{self, CheckOutcome, Suite};
use ica_core::{Error, Limits, Result};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::report::Report;

/// Exact values longer than this are abbreviated in table and TSV output.
const MAX_INLINE_DIGITS: u64 = 80;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn subgroups(data: &GroupData) -> Result<Report> {
    let g = &data.group;
    let lat = data.classes.lattice();
    let mut items = Vec::with_capacity(lat.len());
    let mut rows = Vec::with_capacity(lat.len());
    for (id, h) in lat.subgroups().iter().enumerate() {
        let class = data.classes.class_of[id];
        let normal = data.classes.classes[class].is_normal;
        let gens: Vec<String> = h.generators().iter().map(|&a| g.label(a)).collect();
        let kind = subgroup_as_group(g, h)?.describe();
        items.push(json!({
            "id": id,
            "order": h.order(),
            "index": data.order() / h.order(),
            "class": class,
            "normal": normal,
            "generators": gens,
            "type": kind,
        }));
        rows.push(vec![
            id.to_string(),
            h.order().to_string(),
            (data.order() / h.order()).to_string(),
            class.to_string(),
            yes_no(normal).into(),
            format!("<{}>", gens.join(",")),
            kind,
        ]);
    }
    let json = json!({
        "group": g.name(),
        "order": data.order(),
        "length": data.length,
        "subgroups": items,
    });
    Ok(Report::new(json)
        .field("group", g.name())
        .field("order", data.order())
        .field("subgroups", lat.len())
        .field("length", data.length)
        .table(vec!["id", "order", "index", "class", "normal", "generators", "type"], rows))
}

pub fn classes(data: &GroupData) -> Result<Report> {
    let g = &data.group;
    let lat = data.classes.lattice();
    let top = lat.top();
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for (id, c) in data.classes.classes.iter().enumerate() {
        let h = lat.get(c.representative);
        let weyl = quotient_within(g, &c.normalizer, h)?.describe();
        let mu = data.mobius.get(c.representative, top).unwrap_or(0);
        items.push(json!({
            "class": id,
            "representative": c.representative,
            "order": h.order(),
            "index": c.index,
            "conjugates": c.members.len(),
            "normalizer_order": c.normalizer.order(),
            "normal": c.is_normal,
            "normalizer_quotient": weyl,
            "mobius_to_top": mu,
        }));
        rows.push(vec![
            id.to_string(),
            c.representative.to_string(),
            h.order().to_string(),
            c.index.to_string(),
            c.members.len().to_string(),
            c.normalizer.order().to_string(),
            yes_no(c.is_normal).into(),
            weyl,
            mu.to_string(),
        ]);
    }
    let json = json!({
        "group": g.name(),
        "order": data.order(),
        "r": data.r(),
        "r_2": data.r_index(2),
        "r_prime": data.r_prime_sum(),
        "dedekind": data.is_dedekind(),
        "length": data.length,
        "classes": items,
    });
    Ok(Report::new(json)
        .field("group", g.name())
        .field("order", data.order())
        .field("r", data.r())
        .field("r_2", data.r_index(2))
        .field("r_prime", data.r_prime_sum())
        .field("dedekind", yes_no(data.is_dedekind()))
        .field("length", data.length)
        .table(
            vec!["class", "rep", "order", "index", "conjugates", "normalizer", "normal", "n_quotient", "mu"],
            rows,
        ))
}

pub fn alpha(data: &GroupData, q: u32) -> Result<Report> {
    let alpha = orbits::alpha_all(data, q)?;
    let total = orbits::alpha_total(&alpha);
    let burnside = orbits::burnside_count(&data.group, q);
    if total != burnside {
        return Err(Error::Internal(format!("sum of alpha {total} differs from orbit count {burnside}")));
    }
    let lat = data.classes.lattice();
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for (id, (c, a)) in data.classes.classes.iter().zip(&alpha).enumerate() {
        let order = lat.get(c.representative).order();
        let weyl = c.normalizer.order() / order;
        items.push(json!({
            "class": id,
            "order": order,
            "index": c.index,
            "normalizer_index": weyl,
            "alpha": a.to_string(),
        }));
        rows.push(vec![id.to_string(), order.to_string(), c.index.to_string(), weyl.to_string(), a.to_string()]);
    }
    let json = json!({
        "group": data.group.name(),
        "q": q,
        "orbits": total.to_string(),
        "classes": items,
    });
    Ok(Report::new(json)
        .field("group", data.group.name())
        .field("q", q)
        .field("orbits", &total)
        .table(vec!["class", "order", "index", "n_index", "alpha"], rows))
}

/// One JSON object per orbit, ordered by representative.
pub fn dump_orbits(data: &GroupData, q: u32) -> Result<String> {
    let dec = orbits::enumerate_orbits(data, q)?;
    let mut out = String::new();
    for o in &dec.orbits {
        let line = json!({
            "rep": dec.representative(o),
            "size": o.size,
            "stabilizer_class": o.stabilizer,
            "class_index": o.class_id,
        });
        out.push_str(&line.to_string());
        out.push('\n');
    }
    Ok(out)
}

fn count_json(c: &BigCount) -> Value {
    let mut m = Map::new();
    if let Some(x) = &c.exact {
        m.insert("exact".into(), Value::String(x.to_string()));
    }
    m.insert("log2".into(), json!(c.log2));
    m.insert("log2_error".into(), json!(c.log2_error));
    if let Some(d) = c.decimal_digits() {
        m.insert("digits".into(), json!(d));
    }
    m.insert("factored".into(), Value::String(c.factored_string()));
    Value::Object(m)
}

fn log2_text(x: f64) -> String {
    if x.abs() < 1e15 {
        format!("{x:.6}")
    } else {
        format!("{x:.6e}")
    }
}

fn count_text(c: &BigCount) -> String {
    let digits = c.decimal_digits();
    match (&c.exact, digits) {
        (Some(x), Some(d)) if d <= MAX_INLINE_DIGITS => x.to_string(),
        (_, Some(d)) => format!("~2^{} ({d} digits)", log2_text(c.log2)),
        (_, None) => format!("~2^{}", log2_text(c.log2)),
    }
}

pub fn structure(data: &GroupData, q: u32) -> Result<Report> {
    let s = structure::ica_structure(data, q)?;
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for f in &s.factors {
        let name = f.quotient.describe();
        items.push(json!({
            "class": f.class_id,
            "index": f.index,
            "quotient_name": name,
            "quotient_order": f.quotient.order(),
            "alpha": f.alpha.to_string(),
        }));
        rows.push(vec![
            f.class_id.to_string(),
            f.index.to_string(),
            name.clone(),
            f.quotient.order().to_string(),
            f.alpha.to_string(),
            format!("{name} wr S{}", f.alpha),
        ]);
    }
    let json = json!({
        "group": data.group.name(),
        "q": q,
        "factors": items,
        "order": count_json(&s.order),
    });
    Ok(Report::new(json)
        .field("group", data.group.name())
        .field("q", q)
        .field("order", count_text(&s.order))
        .field("log2", log2_text(s.order.log2))
        .field("factored", s.order.factored_string())
        .table(vec!["class", "index", "quotient", "quotient_order", "alpha", "factor"], rows))
}

pub fn order(data: &GroupData, q: u32) -> Result<Report> {
    let ica = structure::ica_order(data, q)?;
    let ca = structure::ca_order(data, q)?;
    let json = json!({
        "group": data.group.name(),
        "q": q,
        "ica": count_json(&ica),
        "ca": count_json(&ca),
    });
    Ok(Report::new(json)
        .field("group", data.group.name())
        .field("q", q)
        .field("ica_order", count_text(&ica))
        .field("ica_log2", log2_text(ica.log2))
        .field("ica_factored", ica.factored_string())
        .field("ca_order", count_text(&ca))
        .field("ca_log2", log2_text(ca.log2)))
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Lower => "lower",
        Side::Upper => "upper",
    }
}

fn outcome_json(r: &RankResult) -> Value {
    let mut m = Map::new();
    match r.outcome {
        RankOutcome::Exact(k) => {
            m.insert("outcome".into(), json!("exact"));
            m.insert("lower".into(), json!(k));
            m.insert("upper".into(), json!(k));
        }
        RankOutcome::Bounded { lower, upper } => {
            m.insert("outcome".into(), json!("bounded"));
            m.insert("lower".into(), json!(lower));
            m.insert("upper".into(), json!(upper));
        }
        RankOutcome::Unknown => {
            m.insert("outcome".into(), json!("unknown"));
        }
    }
    if let Some(a) = r.abelian_rank {
        m.insert("abelian_rank".into(), json!(a));
    }
    Value::Object(m)
}

fn outcome_name(o: &RankOutcome) -> &'static str {
    match o {
        RankOutcome::Exact(_) => "exact",
        RankOutcome::Bounded { .. } => "bounded",
        RankOutcome::Unknown => "unknown",
    }
}

pub fn bounds(data: &GroupData, q: u32, oracle: bool) -> Result<Report> {
    let rank = if oracle { bounds::ica_rank_oracle(data, q)? } else { None };
    let exact = rank.as_ref().and_then(RankResult::exact);
    let b = bounds::best_bounds(data, q, exact)?;
    let mut all = Vec::new();
    let mut rows = Vec::new();
    for e in &b.all {
        let mut m = Map::new();
        m.insert("side".into(), json!(side_name(e.side)));
        m.insert("method".into(), json!(e.method));
        m.insert("value".into(), json!(e.value));
        m.insert("admissible".into(), json!(e.admissible));
        if let Some(n) = &e.note {
            m.insert("note".into(), json!(n));
        }
        all.push(Value::Object(m));
        rows.push(vec![
            side_name(e.side).into(),
            e.method.into(),
            e.value.to_string(),
            yes_no(e.admissible).into(),
            e.note.clone().unwrap_or_default(),
        ]);
    }
    let mut json = json!({
        "group": data.group.name(),
        "q": q,
        "lower": {"value": b.lower.value, "method": b.lower.method},
        "upper": {"value": b.upper.value, "method": b.upper.method},
        "all_bounds": all,
    });
    if let Some(x) = exact {
        json["exact"] = json!(x);
    }
    let oracle_text = match (oracle, &rank) {
        (false, _) => "off",
        (true, None) => "skipped (unit group above oracle cap)",
        (true, Some(r)) => outcome_name(&r.outcome),
    };
    if oracle {
        json["oracle"] = match &rank {
            Some(r) => outcome_json(r),
            None => json!({"outcome": "skipped"}),
        };
    }
    Ok(Report::new(json)
        .field("group", data.group.name())
        .field("q", q)
        .field("lower", b.lower.value)
        .field("lower_method", b.lower.method)
        .field("upper", b.upper.value)
        .field("upper_method", b.upper.method)
        .field("exact", exact.map_or("-".to_string(), |x| x.to_string()))
        .field("oracle", oracle_text)
        .table(vec!["side", "method", "value", "admissible", "note"], rows))
}

/// Rank of the group itself, or of its unit group of automata when `q` is given.
pub fn rank(data: &GroupData, q: Option<u32>, limits: &Limits) -> Result<Report> {
    let (target, order, result, labels) = match q {
        None => {
            let r = rank_exact(&ActionTable::from_group(&data.group), limits)?;
            let g = &data.group;
            let labels = r.witness.as_ref().map(|w| w.iter().map(|&a| g.label(a)).collect::<Vec<_>>());
            (g.name().to_string(), data.order() as u64, r, labels)
        }
        Some(q) => {
            let count = structure::ica_order(data, q)?;
            let Some(order) = count.to_u64() else {
                return Err(Error::CapExceeded {
                    what: "log2 of the unit group order for the rank oracle",
                    value: count.log2.ceil() as u128,
                    cap: (limits.max_oracle_order as f64).log2().floor() as u128,
                });
            };
            let r = bounds::ica_rank_oracle(data, q)?.ok_or(Error::CapExceeded {
                what: "unit group order for the rank oracle",
                value: order as u128,
                cap: limits.max_oracle_order as u128,
            })?;
            let labels = r.witness.as_ref().map(|w| w.iter().map(|a| format!("u{a}")).collect::<Vec<_>>());
            (format!("ICA({};{q})", data.group.name()), order, r, labels)
        }
    };
    let mut json = json!({
        "target": target,
        "group": data.group.name(),
        "order": order,
    });
    if let Some(q) = q {
        json["q"] = json!(q);
    }
    if let Value::Object(m) = outcome_json(&result) {
        for (k, v) in m {
            json[k] = v;
        }
    }
    if let Some(x) = result.exact() {
        json["rank"] = json!(x);
    }
    if let Some(l) = &labels {
        json["witness"] = json!(l);
    }
    let (lo, hi) = match result.outcome {
        RankOutcome::Exact(k) => (k.to_string(), k.to_string()),
        RankOutcome::Bounded { lower, upper } => (lower.to_string(), upper.to_string()),
        RankOutcome::Unknown => ("-".into(), "-".into()),
    };
    Ok(Report::new(json)
        .field("target", &target)
        .field("order", order)
        .field("outcome", outcome_name(&result.outcome))
        .field("lower", lo)
        .field("upper", hi)
        .field("abelian_rank", result.abelian_rank.map_or("-".to_string(), |a| a.to_string()))
        .field("witness", labels.map_or("-".to_string(), |l| format!("<{}>", l.join(",")))))
}

pub fn diverge(family: &str, q: u32, k: usize, limits: &Limits) -> Result<Report> {
    let kind: FamilyKind = family.parse()?;
    let desc = FamilyDescriptor::new(kind, q)?;
    let rep = asymptotics::divergence(&desc, k, limits)?;
    let mut stages = Vec::new();
    let mut rows = Vec::new();
    for s in &rep.stages {
        stages.push(json!({
            "k": s.k,
            "quotient": s.quotient,
            "r": s.r,
            "r_2": s.r_2,
            "lower_bound": s.lower_bound,
            "justification": s.justification,
            "from_lattice": s.from_lattice,
        }));
        rows.push(vec![
            s.k.to_string(),
            s.quotient.clone(),
            s.r.to_string(),
            s.r_2.to_string(),
            s.lower_bound.to_string(),
            s.justification.clone(),
            yes_no(s.from_lattice).into(),
        ]);
    }
    let json = json!({
        "family": desc.kind.to_string(),
        "q": q,
        "stages": stages,
    });
    Ok(Report::new(json)
        .field("family", desc.kind.to_string())
        .field("q", q)
        .table(vec!["k", "quotient", "r", "r_2", "lower_bound", "justification", "from_lattice"], rows))
}

/// Runs every criterion; criteria are independent, so they run in parallel
/// and are reported in order.
pub fn verify(suite: Suite, limits: &Limits) -> (Report, Vec<CheckOutcome>) {
    let outcomes: Vec<CheckOutcome> =
        (1..=verify::CRITERIA.len()).into_par_iter().map(|id| verify::criterion(id, suite, limits)).collect();
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let suite_name = match suite {
        Suite::Fast => "fast",
        Suite::Heavy => "heavy",
    };
    let items: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            json!({
                "id": o.id,
                "name": o.name,
                "passed": o.passed,
                "checks": o.checks,
                "notes": o.notes,
                "skipped": o.skipped,
                "failures": o.failures,
            })
        })
        .collect();
    let rows = outcomes
        .iter()
        .map(|o| {
            vec![
                o.id.to_string(),
                if o.passed { "PASS" } else { "FAIL" }.into(),
                o.checks.to_string(),
                o.skipped.len().to_string(),
                o.name.to_string(),
            ]
        })
        .collect();
    let json = json!({
        "suite": suite_name,
        "passed": passed == outcomes.len(),
        "passed_count": passed,
        "total": outcomes.len(),
        "criteria": items,
    });
    let report = Report::new(json)
        .field("suite", suite_name)
        .field("passed", format!("{passed} of {}", outcomes.len()))
        .table(vec!["criterion", "status", "checks", "not_evaluated", "name"], rows);
    (report, outcomes)
}
