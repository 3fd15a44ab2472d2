//! Subcommand implementations. Each returns a text rendering and a JSON
//! document of the same result.

use std::fmt::Write as _;
use std::fs;

use chainbound::antichain::{
    chain_to_antichain, is_antichain, is_f_beta_bounded, is_f_bounded, longest_f_bounded_antichain,
    IdealChainInput,
};
use chainbound::bounds::{self, parse_degree_function, BoundBudget, DegreeFunction};
use chainbound::division::reduce;
use chainbound::groebner::{buchberger_trace, verify_stage_degree_bounds};
use chainbound::membership::{brute_force_membership, membership, verify_membership_bound};
use chainbound::ring::{MonomialOrder, Polynomial};
use serde_json::{json, Value};

use crate::failure::Failure;
use crate::input;
use crate::{
    BoundArgs, BudgetArgs, CheckArgs, DivideArgs, FromChainArgs, GammaArgs, GroebnerArgs, MemberArgs, SearchArgs,
};

pub struct Report {
    pub text: String,
    pub json: Value,
    /// A requested verification came out negative.
    pub check_failed: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report { text, json, check_failed: false }
    }
}

fn budget(args: &BudgetArgs) -> Result<BoundBudget, Failure> {
    BoundBudget::new(args.max_steps, args.max_bits).map_err(|e| Failure::Usage(e.to_string()))
}

fn degree_function(text: &str, running_max: bool) -> Result<DegreeFunction, Failure> {
    parse_degree_function(text, running_max).map_err(|e| Failure::Usage(format!("invalid --f {text:?}: {e}")))
}

fn usize_arg(v: u64, name: &str) -> Result<usize, Failure> {
    usize::try_from(v).map_err(|_| Failure::Usage(format!("--{name} is too large")))
}

fn show(p: &Polynomial, order: MonomialOrder) -> String {
    p.display(order).to_string()
}

fn show_all(ps: &[Polynomial], order: MonomialOrder) -> Vec<String> {
    ps.iter().map(|p| show(p, order)).collect()
}

pub fn bound(args: &BoundArgs) -> Result<Report, Failure> {
    let budget = budget(&args.budget)?;
    let f = degree_function(&args.f, args.running_max)?;
    let m = usize_arg(args.m, "m")?;
    let value = bounds::bound(m, &f, &budget)?;
    Ok(Report::new(
        format!("{value}\n"),
        json!({ "command": "bound", "m": m, "f": f.to_string(), "value": value.to_string() }),
    ))
}

pub fn gamma(args: &GammaArgs) -> Result<Report, Failure> {
    let budget = budget(&args.budget)?;
    let m = usize_arg(args.m, "m")?;
    let value = bounds::gamma(m, args.d, args.i, &budget)?;
    Ok(Report::new(
        format!("{value}\n"),
        json!({ "command": "gamma", "m": m, "d": args.d, "i": args.i, "value": value.to_string() }),
    ))
}

pub fn antichain_check(args: &CheckArgs) -> Result<Report, Failure> {
    let seq = input::exponent_sequence(&args.seq)?;
    let f = args.f.as_deref().map(|s| degree_function(s, args.running_max)).transpose()?;
    let beta = args.beta.as_deref().map(input::natural_list).transpose()?;

    let antichain = is_antichain(&seq)?;
    let mut text = String::from(if antichain { "antichain\n" } else { "not an antichain\n" });
    let mut doc = json!({
        "command": "antichain check",
        "sequence": seq.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "antichain": antichain,
    });
    if let Some(f) = &f {
        let bounded = is_f_bounded(&seq, f)?;
        text.push_str(if bounded { "f-bounded\n" } else { "not f-bounded\n" });
        doc["f"] = json!(f.to_string());
        doc["f_bounded"] = json!(bounded);
        if let Some(beta) = &beta {
            let beta_bounded = is_f_beta_bounded(&seq, f, beta)?;
            text.push_str(if beta_bounded { "(f,beta)-bounded\n" } else { "not (f,beta)-bounded\n" });
            doc["beta"] = json!(beta);
            doc["f_beta_bounded"] = json!(beta_bounded);
        }
    }
    Ok(Report::new(text, doc))
}

pub fn antichain_search(args: &SearchArgs) -> Result<Report, Failure> {
    let f = degree_function(&args.f, args.running_max)?;
    let m = usize_arg(args.m, "m")?;
    let out = longest_f_bounded_antichain(m, &f, args.budget)?;
    Ok(Report::new(
        format!("length {}\nwitness {}\nnodes {}\n", out.length, out.witness, out.nodes_visited),
        json!({
            "command": "antichain search",
            "m": m,
            "f": f.to_string(),
            "length": out.length,
            "witness": out.witness.elements().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "nodes_visited": out.nodes_visited,
        }),
    ))
}

pub fn antichain_from_chain(args: &FromChainArgs) -> Result<Report, Failure> {
    let stages = input::chain_file(&args.chain)?;
    let sizes: Vec<usize> = stages.iter().map(Vec::len).collect();
    let mut flat = input::polynomials_in_common_ring(&stages.concat())?.into_iter();
    let stages: Vec<Vec<Polynomial>> = sizes.iter().map(|&n| flat.by_ref().take(n).collect()).collect();
    let order = args.order;
    let out = chain_to_antichain(&IdealChainInput { stages, order })?;

    let mut text = format!("witness {}\n", out.witness);
    let mut rows = Vec::new();
    for (j, ((h, r), degree)) in out.selected.iter().zip(&out.reduced).zip(&out.stage_degrees).enumerate() {
        let lm = &out.witness.elements()[j];
        writeln!(
            text,
            "stage {}: selected {}, reduced {}, leading monomial {lm}, stage degree {degree}",
            j + 1,
            show(h, order),
            show(r, order)
        )
        .expect("writing to a string");
        rows.push(json!({
            "stage": j + 1,
            "selected": show(h, order),
            "reduced": show(r, order),
            "leading_monomial": lm.to_string(),
            "stage_degree": degree,
        }));
    }
    Ok(Report::new(
        text,
        json!({
            "command": "antichain from-chain",
            "order": order,
            "witness": out.witness.elements().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "stages": rows,
        }),
    ))
}

pub fn groebner(args: &GroebnerArgs) -> Result<Report, Failure> {
    let order = args.order;
    if args.check_degrees.is_some() {
        order.require_graded()?;
    }
    let input = input::polynomials_in_common_ring(&input::polynomial_file(&args.input)?)?;
    let trace = buchberger_trace(&input, order)?;
    let document = trace.to_document();

    if let Some(path) = &args.trace {
        let body = serde_json::to_string_pretty(&document).expect("serialisable");
        fs::write(path, body + "\n")
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }

    let mut text = format!("r = {}\n", trace.r());
    for stage in &document.stages {
        let lts: Vec<String> = stage.lt_generators.iter().map(ToString::to_string).collect();
        writeln!(
            text,
            "stage {}: {} elements, {} added, leading terms {}",
            stage.stage,
            stage.size,
            stage.added.len(),
            lts.join(";")
        )
        .expect("writing to a string");
    }
    text.push_str("basis:\n");
    for p in trace.basis_polynomials() {
        writeln!(text, "  {}", show(&p, order)).expect("writing to a string");
    }
    let mut doc = json!({ "command": "groebner", "trace": document });

    let mut check_failed = false;
    if let Some(d) = args.check_degrees {
        let report = verify_stage_degree_bounds(&trace, d)?;
        writeln!(text, "degree bounds with d = {d}: {}", if report.pass { "pass" } else { "FAIL" })
            .expect("writing to a string");
        for s in &report.stages {
            let cofactor = s.max_cofactor_degree.map_or("-".to_string(), |v| v.to_string());
            writeln!(
                text,
                "  stage {}: cofactor degree {cofactor} <= {}, leading degree {} <= {}, certificates {}",
                s.stage,
                s.cofactor_bound,
                s.max_leading_degree,
                s.leading_bound,
                if s.certificates_verified { "verified" } else { "WRONG" }
            )
            .expect("writing to a string");
        }
        check_failed = !report.pass;
        doc["degree_bounds"] = json!(report);
    }
    Ok(Report { text, json: doc, check_failed })
}

pub fn divide(args: &DivideArgs) -> Result<Report, Failure> {
    let order = args.order;
    let mut sources = vec![args.f.clone()];
    sources.extend(input::semicolon_list(&args.by, "divisor")?);
    let mut polys = input::polynomials_in_common_ring(&sources)?;
    let divisors = polys.split_off(1);
    let result = reduce(&polys[0], &divisors, order)?;

    let mut text = String::new();
    for (i, q) in result.quotients.iter().enumerate() {
        writeln!(text, "q{} = {}", i + 1, show(q, order)).expect("writing to a string");
    }
    writeln!(text, "remainder = {}", show(&result.remainder, order)).expect("writing to a string");
    Ok(Report::new(
        text,
        json!({
            "command": "divide",
            "order": order,
            "dividend": show(&polys[0], order),
            "divisors": show_all(&divisors, order),
            "quotients": show_all(&result.quotients, order),
            "remainder": show(&result.remainder, order),
        }),
    ))
}

fn pair(s: &str) -> Result<(usize, u64), Failure> {
    match input::natural_list(s)?.as_slice() {
        &[m, d] => Ok((usize_arg(m, "verify-bound")?, d)),
        _ => Err(Failure::Usage(format!("--verify-bound expects M,D, got {s:?}"))),
    }
}

pub fn member(args: &MemberArgs) -> Result<Report, Failure> {
    let order = args.order;
    let budget = budget(&args.budget)?;
    let verify = args.verify_bound.as_deref().map(pair).transpose()?;
    let mut sources = vec![args.g.clone()];
    sources.extend(input::polynomial_file(&args.ideal)?);
    let mut polys = input::polynomials_in_common_ring(&sources)?;
    let generators = polys.split_off(1);
    let g = &polys[0];

    let cert = membership(g, &generators, order)?;
    let mut text = String::from(if cert.member { "member\n" } else { "not a member\n" });
    for (i, h) in cert.cofactors.iter().enumerate() {
        writeln!(text, "h{} = {}", i + 1, show(h, order)).expect("writing to a string");
    }
    if cert.member {
        writeln!(text, "max cofactor degree {}", cert.max_cofactor_degree).expect("writing to a string");
    }
    writeln!(
        text,
        "trace bound (3^r - 1) d + deg g = {} with r = {}, d = {}",
        cert.bound_used, cert.trace_length, cert.d
    )
    .expect("writing to a string");
    let mut doc = json!({
        "command": "member",
        "order": order,
        "g": show(g, order),
        "generators": show_all(&generators, order),
        "member": cert.member,
        "cofactors": show_all(&cert.cofactors, order),
        "max_cofactor_degree": cert.max_cofactor_degree,
        "bound_used": cert.bound_used.to_string(),
        "bound_source": cert.bound_source,
        "r": cert.trace_length,
        "d": cert.d,
    });

    let mut check_failed = false;
    if let Some((m, d)) = verify {
        if cert.member {
            let report = verify_membership_bound(&cert, g, &generators, m, d, &budget)?;
            match (&report.gamma, &report.gamma_notice) {
                (Some(gamma), _) => writeln!(text, "gamma({m}, {d}, deg g) = {gamma}"),
                (None, Some(notice)) => writeln!(text, "gamma not evaluated: {notice}"),
                (None, None) => Ok(()),
            }
            .expect("writing to a string");
            writeln!(
                text,
                "bound check against {}: {}",
                match report.checked_against {
                    chainbound::membership::BoundSource::Gamma => "gamma",
                    chainbound::membership::BoundSource::TraceDerived => "the trace bound",
                },
                if report.pass { "pass" } else { "FAIL" }
            )
            .expect("writing to a string");
            check_failed = !report.pass;
            doc["bound_check"] = json!(report);
        } else {
            text.push_str("bound check: not applicable to a non-member\n");
            doc["bound_check"] = Value::Null;
        }
    }

    if let Some(cap) = args.oracle_cap {
        let oracle = brute_force_membership(g, &generators, cap, args.oracle_max_unknowns)?;
        let agrees = oracle == cert.member;
        writeln!(
            text,
            "oracle with cofactor degree <= {cap}: {}, {}",
            if oracle { "member" } else { "no certificate" },
            if agrees { "agrees" } else { "disagrees" }
        )
        .expect("writing to a string");
        doc["oracle"] = json!({ "cap": cap, "member": oracle, "agrees": agrees });
    }
    Ok(Report { text, json: doc, check_failed })
}
