use serde_json::{json, Map, Value};

use dmrb::discrete::{grouplike_m_discrete, grouplike_m_series, strip_z2};
use dmrb::liealg::{solve_degree, LieCondition, LieDmrMethod, LieElement, LieSolution};
use dmrb::padic::ProPElement;
use dmrb::{DmrMethod, GroupWord, RingSpec, Series, TwistedMagnusElement};

use crate::parse::{parse_group_or_series, parse_group_word, parse_lie, parse_scalar, InputError};
use crate::report::{Check, Config};

/// Bad flags or unparsable input; reported with exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<InputError> for UsageError {
    fn from(e: InputError) -> Self {
        UsageError(e.to_string())
    }
}

impl From<dmrb::Error> for UsageError {
    fn from(e: dmrb::Error) -> Self {
        UsageError(e.to_string())
    }
}

pub type CmdResult<T> = Result<T, UsageError>;

#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub ring: RingSpec,
    pub deg: usize,
    pub seed: u64,
}

impl Ctx {
    pub fn config(&self) -> Config {
        let (p, k) = match self.ring {
            RingSpec::PAdic { p, k } => (Some(p), Some(k)),
            _ => (None, None),
        };
        Config { ring: self.ring.to_string(), degree: self.deg, seed: self.seed, p, k }
    }
}

pub const GROUP_TESTS: [&str; 9] =
    ["grouplike", "quad", "stabW", "stabM", "dmr:stab", "dmr:grouplike", "dmr0", "gt", "gammaRefl"];
pub const LIE_TESTS: [&str; 6] = ["quad", "stabW", "stabM", "primM", "dmr:stab", "dmr:prim"];
pub const PADIC_TESTS: [&str; 3] = ["grouplike", "star-roundtrip", "gt"];

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

fn select(tests: Option<&str>, known: &[&str]) -> CmdResult<Vec<String>> {
    let list = match tests {
        Some(t) => split_list(t),
        None => known.iter().map(|s| s.to_string()).collect(),
    };
    for t in &list {
        if !known.contains(&t.as_str()) {
            return Err(UsageError(format!("unknown test `{t}`; known: {}", known.join(","))));
        }
    }
    Ok(list)
}

pub fn element_json(e: &TwistedMagnusElement) -> Value {
    json!({ "mu": e.mu().to_string(), "g": e.g().to_string() })
}

/// Series as a map from rendered words to coefficients.
pub fn series_json(s: &Series) -> Value {
    let names = s.coords().names();
    let mut m = Map::new();
    for (w, c) in s.terms() {
        let key = if w.is_empty() { "1".to_string() } else { w.render(names) };
        m.insert(key, Value::String(c.to_string()));
    }
    Value::Object(m)
}

pub fn lie_json(a: &LieElement) -> Value {
    json!({ "nu": a.nu().to_string(), "x": series_json(a.x()) })
}

fn reflection_check(e: &TwistedMagnusElement) -> Check {
    match e.gamma_reflection() {
        Ok(v) if v.dmr_member => Check::new("gammaRefl", v.identity_holds, "Gamma(t) Gamma(-t) identity"),
        Ok(v) => Check::skipped(
            "gammaRefl",
            format!("not in the double shuffle group at this truncation; identity holds: {}", v.identity_holds),
        )
        .with_data(json!({ "identity_holds": v.identity_holds, "dmr_member": false })),
        Err(err) => Check::new("gammaRefl", false, format!("error: {err}")),
    }
}

pub fn check_group(ctx: &Ctx, mu: &str, g: &str, tests: Option<&str>) -> CmdResult<(Value, Vec<Check>)> {
    let tests = select(tests, &GROUP_TESTS)?;
    let e = TwistedMagnusElement::new(parse_scalar(mu, ctx.ring)?, parse_group_or_series(g, ctx.ring, ctx.deg)?)?;
    let mut out = Vec::new();
    for t in &tests {
        let name = t.as_str();
        let c = match name {
            "grouplike" => Check::new(name, e.validate(), "g is group-like for the shuffle coproduct"),
            "quad" => Check::from_result(name, e.is_quad(), "(g|u0) = (g|u1) = 0, mu^2 = 1 + 24 (g|u0 u1)"),
            "stabW" => Check::from_result(name, e.is_stab_w(), "twisted action preserves the coproduct on W"),
            "stabM" => Check::from_result(name, e.is_stab_m(), "twisted action preserves the coproduct on M"),
            "dmr:stab" => Check::from_result(name, e.is_dmr(DmrMethod::StabDef), "quad and stabM"),
            "dmr:grouplike" => {
                Check::from_result(name, e.is_dmr(DmrMethod::GrouplikeDef), "quad and group-like image of 1_B")
            }
            "dmr0" => Check::from_result(name, e.is_dmr0(), "mu = 1, normalized, stabM"),
            "gt" => match e.gt_relations() {
                Ok(v) => Check::new(name, v.passed(), "duality and kappa relations")
                    .with_data(json!({ "duality": v.duality, "kappa": v.kappa })),
                Err(err) => Check::new(name, false, format!("error: {err}")),
            },
            _ => reflection_check(&e),
        };
        out.push(c);
    }
    Ok((element_json(&e), out))
}

pub fn check_lie(ctx: &Ctx, lie: &str, tests: Option<&str>) -> CmdResult<(Value, Vec<Check>)> {
    let tests = select(tests, &LIE_TESTS)?;
    let a = parse_lie(lie, ctx.ring, ctx.deg)?;
    let mut out = Vec::new();
    for t in &tests {
        let name = t.as_str();
        let r = match name {
            "dmr:stab" => a.is_dmr(LieDmrMethod::StabDef),
            "dmr:prim" => a.is_dmr(LieDmrMethod::PrimitiveDef),
            _ => a.satisfies(LieCondition::parse(name)?),
        };
        out.push(Check::from_result(name, r, format!("Lie condition {name}")));
    }
    Ok((lie_json(&a), out))
}

pub fn padic_ring(ctx: &Ctx, p: Option<u64>, k: Option<u32>) -> CmdResult<RingSpec> {
    match (p, k, ctx.ring) {
        (Some(p), Some(k), _) => Ok(RingSpec::padic(p, k)?),
        (None, None, r @ RingSpec::PAdic { .. }) => Ok(r),
        (p, k, RingSpec::PAdic { p: rp, k: rk }) => Ok(RingSpec::padic(p.unwrap_or(rp), k.unwrap_or(rk))?),
        _ => Err(UsageError("check-padic needs --p and --K or --ring padic:<p>:<K>".into())),
    }
}

pub fn check_padic(ring: RingSpec, n: usize, lambda: i64, f: &str, tests: Option<&str>) -> CmdResult<(Value, Vec<Check>)> {
    let tests = select(tests, &PADIC_TESTS)?;
    let e = ProPElement::from_word(ring, n, lambda, &parse_group_word(f)?)?;
    let mut out = Vec::new();
    for t in &tests {
        let name = t.as_str();
        let c = match name {
            "grouplike" => Check::new(name, e.validate(), "f is group-like"),
            "star-roundtrip" => match e.invert() {
                Ok(inv) => {
                    let one = ProPElement::identity(ring, n)?;
                    let ok = e.star(&inv)? == one && inv.star(&e)? == one;
                    Check::new(name, ok, "two-sided inverse over Z/p^K")
                        .with_data(json!({ "lambda": inv.lambda().to_string(), "f": inv.f().to_string() }))
                }
                Err(err) => Check::new(name, false, format!("error: {err}")),
            },
            _ => match e.gt_relations() {
                Ok(v) => Check::new(name, v.passed(), "duality and kappa relations")
                    .with_data(json!({ "duality": v.duality, "kappa": v.kappa })),
                Err(err) => Check::new(name, false, format!("error: {err}")),
            },
        };
        out.push(c);
    }
    Ok((json!({ "lambda": e.lambda().to_string(), "f": e.f().to_string() }), out))
}

pub fn parse_conditions(s: &str) -> CmdResult<Vec<LieCondition>> {
    split_list(s).iter().map(|c| LieCondition::parse(c).map_err(UsageError::from)).collect()
}

fn solution_json(s: &LieSolution) -> Value {
    json!({
        "dim": s.dim(),
        "unknowns": s.unknowns,
        "basis": s.basis.iter().map(lie_json).collect::<Vec<_>>(),
    })
}

pub struct SolveOptions {
    pub deg_max: usize,
    pub conditions: Vec<LieCondition>,
    pub compare: Option<Vec<LieCondition>>,
    pub inclusion: Option<LieCondition>,
}

/// Per-degree solution spaces, with optional comparison and inclusion checks.
pub fn solve_lie(n: usize, o: &SolveOptions) -> CmdResult<Vec<Check>> {
    if o.deg_max == 0 || o.deg_max + 1 > n {
        return Err(UsageError(format!("--deg-max must lie in 1..={} for --deg {n}", n.saturating_sub(1))));
    }
    let mut out = Vec::new();
    for d in 1..=o.deg_max {
        let s = solve_degree(d, &o.conditions, n)?;
        let mut ok = true;
        let mut detail = format!("dim {}", s.dim());
        let mut data = Map::new();
        data.insert("solution".into(), solution_json(&s));
        if let Some(cmp) = &o.compare {
            let t = solve_degree(d, cmp, n)?;
            let same = s.same_space(&t);
            ok &= same;
            detail.push_str(&format!(", compared dim {}, same space: {same}", t.dim()));
            data.insert("compare".into(), solution_json(&t));
            data.insert("same_space".into(), Value::Bool(same));
        }
        if let Some(c) = o.inclusion {
            let mut all = true;
            for b in &s.basis {
                all &= b.satisfies(c)?;
            }
            ok &= all;
            detail.push_str(&format!(", inside {}: {all}", c.name()));
            data.insert("inclusion".into(), Value::Bool(all));
        }
        out.push(Check::new(format!("degree-{d:02}"), ok, detail).with_data(Value::Object(data)));
    }
    Ok(out)
}

/// Classification of all words up to `max_len`, the window over
/// `mu = +-1` at truncation `n`, and a sampled cross-check against series.
pub fn enumerate_discrete(max_len: usize, n: usize, samples: usize, seed: u64) -> CmdResult<Vec<Check>> {
    use rand::seq::SliceRandom;
    let q = RingSpec::Rational;
    let words = GroupWord::enumerate(max_len);
    let mut wrong = Vec::new();
    let mut grouplike = 0;
    for g in &words {
        let d = grouplike_m_discrete(g);
        grouplike += d as usize;
        if d != strip_z2(g).1.is_identity() {
            wrong.push(g.to_string());
        }
    }
    let classification = Check::new(
        "classification",
        wrong.is_empty(),
        format!("{} words, {grouplike} group-like in M, {} misclassified", words.len(), wrong.len()),
    )
    .with_data(json!({ "words": words.len(), "grouplike": grouplike, "misclassified": wrong }));

    let mut members = Vec::new();
    let mut survivors = 0;
    for mu in [1i64, -1] {
        for g in &words {
            if !TwistedMagnusElement::from_word(q.from_i64(mu), g, 2)?.is_quad()? {
                continue;
            }
            survivors += 1;
            let e = TwistedMagnusElement::from_word(q.from_i64(mu), g, n)?;
            if e.is_dmr(DmrMethod::StabDef)? || e.is_dmr(DmrMethod::GrouplikeDef)? {
                members.push(json!({ "mu": mu, "g": g.to_string() }));
            }
        }
    }
    let expected = vec![json!({ "mu": 1, "g": "1" }), json!({ "mu": -1, "g": "1" })];
    let window = Check::new(
        "window",
        members == expected,
        format!("{} members after {survivors} quadratic survivors", members.len()),
    )
    .with_data(json!({ "members": members }));

    let mut r = dmrb::gen::rng(seed);
    let mut disagree = Vec::new();
    let picked: Vec<&GroupWord> = words.choose_multiple(&mut r, samples.min(words.len())).collect();
    for g in &picked {
        if grouplike_m_series(g, n)? != grouplike_m_discrete(g) {
            disagree.push(g.to_string());
        }
    }
    let cross = Check::new(
        "series-crosscheck",
        disagree.is_empty(),
        format!("{} sampled words at N={n}, {} disagreements", picked.len(), disagree.len()),
    )
    .with_data(json!({ "disagreements": disagree }));
    Ok(vec![classification, window, cross])
}

pub fn gamma(ctx: &Ctx, mu: &str, g: &str) -> CmdResult<(Value, Vec<Check>)> {
    let e = TwistedMagnusElement::new(parse_scalar(mu, ctx.ring)?, parse_group_or_series(g, ctx.ring, ctx.deg)?)?;
    let one = e.g().one_like();
    let c = match (e.gamma(), e.cocycle(), e.gamma_aut_m(&one)) {
        (Ok(gm), Ok(c), Ok(m)) => Check::new("gamma", true, gm.to_string()).with_data(json!({
            "gamma": gm.to_string(),
            "cocycle": c.to_string(),
            "gamma_aut_M(1)": m.to_string(),
        })),
        (a, b, c) => {
            let e = [a.err(), b.err(), c.err()].into_iter().flatten().next().expect("one error");
            Check::new("gamma", false, format!("error: {e}"))
        }
    };
    Ok((element_json(&e), vec![c, reflection_check(&e)]))
}
