//! Named invariant suites. Under `all` the suites run on scoped threads;
//! the report orders checks by name, so output does not depend on timing.

use clap::ValueEnum;
use rand::Rng;
use serde_json::json;

use dmrb::discrete::DiscreteW;
use dmrb::gen::{random_element, random_grouplike, rng};
use dmrb::hopf::{coproduct_w, hopf_w, project_m};
use dmrb::liealg::LieCondition;
use dmrb::padic::{random_unit_element, ProPElement};
use dmrb::{GroupWord, RingSpec, TwistedMagnusElement};

use crate::commands::{enumerate_discrete, solve_lie, CmdResult, Ctx, SolveOptions, UsageError};
use crate::report::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    GroupAxioms,
    Cocycle,
    Hopf,
    LieSolver,
    DiscreteEnum,
    Padic,
    All,
}

impl SuiteName {
    pub fn id(&self) -> &'static str {
        match self {
            SuiteName::GroupAxioms => "group-axioms",
            SuiteName::Cocycle => "cocycle",
            SuiteName::Hopf => "hopf",
            SuiteName::LieSolver => "lie-solver",
            SuiteName::DiscreteEnum => "discrete-enum",
            SuiteName::Padic => "padic",
            SuiteName::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub max_len: usize,
    pub deg_max: Option<usize>,
    pub samples: usize,
}

const Q: RingSpec = RingSpec::Rational;

fn require_q(ctx: &Ctx, suite: &str) -> CmdResult<()> {
    if ctx.ring != Q {
        return Err(UsageError(format!("suite {suite} runs over q only")));
    }
    Ok(())
}

fn prefixed(suite: &str, checks: Vec<Check>) -> Vec<Check> {
    checks
        .into_iter()
        .map(|mut c| {
            c.name = format!("{suite}/{}", c.name);
            c
        })
        .collect()
}

fn count_check(name: &str, total: usize, bad: usize, what: &str) -> Check {
    Check::new(name, bad == 0, format!("{}/{total} {what}", total - bad)).with_data(json!({ "total": total, "failures": bad }))
}

fn group_axioms(ctx: &Ctx) -> CmdResult<Vec<Check>> {
    let n = ctx.deg;
    let mut r = rng(ctx.seed);
    let one = TwistedMagnusElement::identity(Q, n);
    let (mut assoc, mut unit, mut inv) = (0, 0, 0);
    let total = 25;
    for _ in 0..total {
        let a = random_element(&mut r, n)?;
        let b = random_element(&mut r, n)?;
        let c = random_element(&mut r, n)?;
        assoc += (a.star(&b)?.star(&c)? != a.star(&b.star(&c)?)?) as usize;
        unit += (a.star(&one)? != a || one.star(&a)? != a) as usize;
        let ai = a.star_inverse()?;
        inv += (a.star(&ai)? != one || ai.star(&a)? != one) as usize;
    }
    Ok(vec![
        count_check("associativity", total, assoc, "triples"),
        count_check("unit", total, unit, "elements"),
        count_check("inverse", total, inv, "elements"),
    ])
}

fn cocycle(ctx: &Ctx) -> CmdResult<Vec<Check>> {
    let n = ctx.deg;
    let mut r = rng(ctx.seed.wrapping_add(1));
    let total = 25;
    let (mut bad, mut bad_w, mut bad_m) = (0, 0, 0);
    for _ in 0..total {
        let a = random_element(&mut r, n)?;
        let b = random_element(&mut r, n)?;
        let ab = a.star(&b)?;
        bad += (ab.cocycle()? != &a.cocycle()? * &a.aut_v1(&b.cocycle()?)?) as usize;
        let w = project_m(&random_grouplike(&mut r, Q, n)?)?;
        bad_w += (ab.gamma_aut_w(&w)? != a.gamma_aut_w(&b.gamma_aut_w(&w)?)?) as usize;
        bad_m += (ab.gamma_aut_m(&w)? != a.gamma_aut_m(&b.gamma_aut_m(&w)?)?) as usize;
    }
    Ok(vec![
        count_check("identity", total, bad, "pairs"),
        count_check("action-W", total, bad_w, "pairs compose"),
        count_check("action-M", total, bad_m, "pairs compose"),
    ])
}

fn hopf(ctx: &Ctx) -> CmdResult<Vec<Check>> {
    let n = ctx.deg.min(6);
    let table = hopf_w(n);
    let coassoc = table.coassociativity_defects();
    let mult = table.multiplicativity_defects();
    let mut r = rng(ctx.seed.wrapping_add(2));
    let (mut total, mut square, mut series) = (0, 0, 0);
    for _ in 0..60 {
        let deg = r.gen_range(1..=3);
        let d = DiscreteW::random(&mut r, deg, 4, 3);
        let Some(top) = d.degree() else { continue };
        total += 1;
        square += (d.delta_exact().pr(top) != d.pr(top).delta_mod()) as usize;
        let lhs = d.delta_exact().to_series(Q, n)?;
        series += (lhs != coproduct_w(&d.to_series(Q, n)?)?) as usize;
    }
    Ok(vec![
        Check::new("coassociativity", coassoc.is_empty(), format!("N={n}, {} defective words", coassoc.len())),
        Check::new("multiplicativity", mult.is_empty(), format!("N={n}, {} defective pairs", mult.len())),
        count_check("graded-square", total, square, "discrete elements"),
        count_check("discrete-vs-series", total, series, "discrete elements"),
    ])
}

fn lie_solver(ctx: &Ctx, o: &SuiteOptions) -> CmdResult<Vec<Check>> {
    use LieCondition::*;
    let n = ctx.deg;
    let opts = SolveOptions {
        deg_max: o.deg_max.unwrap_or(n.saturating_sub(1)),
        conditions: vec![Quad, StabM],
        compare: Some(vec![Quad, PrimM]),
        inclusion: None,
    };
    let mut out = solve_lie(n, &opts)?;
    let inclusion = SolveOptions { conditions: vec![StabM], compare: None, inclusion: Some(StabW), ..opts };
    for mut c in solve_lie(n, &inclusion)? {
        c.name = format!("inclusion-{}", c.name);
        out.push(c);
    }
    Ok(out)
}

fn padic(ctx: &Ctx) -> CmdResult<Vec<Check>> {
    let n = ctx.deg;
    let rings: Vec<RingSpec> = match ctx.ring {
        r @ RingSpec::PAdic { .. } => vec![r],
        _ => [2, 3, 5].iter().map(|&p| RingSpec::padic(p, 3)).collect::<dmrb::Result<_>>()?,
    };
    let mut out = Vec::new();
    for (i, &ring) in rings.iter().enumerate() {
        let RingSpec::PAdic { p, k } = ring else { unreachable!() };
        let one = ProPElement::identity(ring, n)?;
        let mut r = rng(ctx.seed.wrapping_add(10 + i as u64));
        let total = 50;
        let (mut round, mut reduce) = (0, 0);
        for _ in 0..total {
            let e = random_unit_element(&mut r, ring, n)?;
            match e.invert() {
                Ok(inv) => {
                    round += (e.star(&inv)? != one || inv.star(&e)? != one) as usize;
                    if k > 1 {
                        let e2 = random_unit_element(&mut r, ring, n)?;
                        let ok = e.star(&e2)?.reduce(k - 1)? == e.reduce(k - 1)?.star(&e2.reduce(k - 1)?)?
                            && inv.reduce(k - 1)? == e.reduce(k - 1)?.invert()?;
                        reduce += !ok as usize;
                    }
                }
                Err(_) => round += 1,
            }
        }
        out.push(count_check(&format!("p{p}-roundtrip"), total, round, "inverses"));
        if k > 1 {
            out.push(count_check(&format!("p{p}-reduction"), total, reduce, "reductions"));
        }
        let mut ok = true;
        for lambda in [1, -1] {
            ok &= ProPElement::from_word(ring, n, lambda, &GroupWord::identity())?.gt_relations()?.passed();
        }
        let x0x1 = GroupWord::from_syllables(&[(0, 1), (1, 1)]);
        let fails = !ProPElement::from_word(ring, n, 1, &x0x1)?.gt_relations()?.duality;
        out.push(Check::new(
            format!("p{p}-gt"),
            ok && fails,
            format!("(+-1, 1) satisfy both relations: {ok}; (1, X0 X1) breaks duality: {fails}"),
        ));
    }
    Ok(out)
}

fn run_one(name: SuiteName, ctx: &Ctx, o: &SuiteOptions) -> CmdResult<Vec<Check>> {
    let checks = match name {
        SuiteName::GroupAxioms => {
            require_q(ctx, "group-axioms")?;
            group_axioms(ctx)?
        }
        SuiteName::Cocycle => {
            require_q(ctx, "cocycle")?;
            cocycle(ctx)?
        }
        SuiteName::Hopf => {
            require_q(ctx, "hopf")?;
            hopf(ctx)?
        }
        SuiteName::LieSolver => {
            require_q(ctx, "lie-solver")?;
            lie_solver(ctx, o)?
        }
        SuiteName::DiscreteEnum => {
            require_q(ctx, "discrete-enum")?;
            enumerate_discrete(o.max_len, ctx.deg, o.samples, ctx.seed)?
        }
        SuiteName::Padic => padic(ctx)?,
        SuiteName::All => unreachable!(),
    };
    Ok(prefixed(name.id(), checks))
}

pub fn run_suite(name: SuiteName, ctx: &Ctx, o: &SuiteOptions) -> CmdResult<Vec<Check>> {
    if name != SuiteName::All {
        return run_one(name, ctx, o);
    }
    use SuiteName::*;
    let names = [GroupAxioms, Cocycle, Hopf, LieSolver, DiscreteEnum, Padic];
    let results: Vec<CmdResult<Vec<Check>>> = std::thread::scope(|s| {
        let handles: Vec<_> = names.iter().map(|&nm| s.spawn(move || run_one(nm, ctx, o))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
