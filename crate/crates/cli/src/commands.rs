use std::fs;
use std::path::Path;

use dyck_core::oracle::closed_walk_counts;
use dyck_core::{
    approximate_with, bfs_minimal_witness, build_gadgets, count_members, is_one_sided,
    is_two_sided, random_quotient, reduce_trace, separate as build_certificate, verify_separation,
    CountKind, CountTable, Error, FiniteQuotient, Letter, MatchingCertificate, OneSidedVerdict,
    Orientation, SeparationCertificate, SeparationReport, TwoSidedVerdict, WitnessReport, Word,
};
use serde_json::{json, Value};

use crate::{Context, Format};

pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

/// A non-zero exit: whatever report was produced, plus the exit code.
pub struct Failure {
    pub code: u8,
    pub output: String,
}

impl Failure {
    pub fn new(code: u8, output: impl Into<String>) -> Self {
        Failure {
            code,
            output: output.into(),
        }
    }

    pub fn usage(e: impl std::fmt::Display) -> Self {
        eprintln!("error: {e}");
        Failure::new(EXIT_USAGE, "")
    }

    pub fn from_core(e: Error) -> Self {
        let code = match e {
            Error::NotTwoSided { .. } | Error::NotSeparable => EXIT_NEGATIVE,
            Error::SelfCheck(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        eprintln!("{}: {e}", error_kind(&e));
        Failure::new(code, "")
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidPairCount { .. } => "InvalidPairCount",
        Error::BracketModeUnsupported(_) => "BracketModeUnsupported",
        Error::UnknownSymbol { .. } => "UnknownSymbol",
        Error::ResourceBound { .. } => "ResourceBound",
        Error::InvalidPermutation(_) => "InvalidPermutation",
        Error::QuotientFormat { .. } => "QuotientFormat",
        Error::NotTwoSided { .. } => "NotTwoSided",
        Error::NotSeparable => "NotSeparable",
        Error::EmptyWord => "EmptyWord",
        Error::SelfCheck(_) => "SelfCheck",
    }
}

pub fn render(ctx: &Context, text: String, structured: Value) -> String {
    match ctx.format {
        Format::Text => text,
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(&structured).expect("json values serialize");
            s.push('\n');
            s
        }
    }
}

fn parse(ctx: &Context, text: &str) -> Result<Word, Failure> {
    ctx.notation.parse(text).map_err(Failure::from_core)
}

fn read_quotient(ctx: &Context, path: &Path) -> Result<FiniteQuotient, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let q = FiniteQuotient::from_text(&text).map_err(Failure::from_core)?;
    if q.alphabet() != ctx.notation.alphabet() {
        return Err(Failure::usage(format!(
            "{} has {} pairs but --pairs is {}",
            path.display(),
            q.alphabet().pair_count(),
            ctx.notation.alphabet().pair_count()
        )));
    }
    Ok(q)
}

fn fmt_word(ctx: &Context, w: &Word) -> String {
    ctx.notation.format(w)
}

fn matching_json(cert: &MatchingCertificate) -> Value {
    cert.pairs()
        .iter()
        .map(|p| {
            let tag = match p.orientation {
                Orientation::Opening => "O",
                Orientation::Closing => "C",
            };
            json!([p.left, p.right, tag])
        })
        .collect()
}

fn quotient_json(q: &FiniteQuotient) -> Value {
    let images: serde_json::Map<String, Value> = q
        .alphabet()
        .letters()
        .map(|l| (l.letter_symbol().to_string(), json!(q.image(l).images())))
        .collect();
    json!({
        "degree": q.degree(),
        "pairs": q.alphabet().pair_count(),
        "images": images,
    })
}

pub fn check(ctx: &Context, text: &str) -> Result<String, Failure> {
    let w = parse(ctx, text)?;
    let shown = fmt_word(ctx, &w);
    let (out, value) = match (is_one_sided(&w), is_two_sided(&w)) {
        (OneSidedVerdict::Accepted(cert), _) => (
            format!(
                "word: {shown}\nclass: one_sided\nin_closure: true\nmatching:\n{}",
                cert.to_text()
            ),
            json!({
                "word": shown,
                "class": "one_sided",
                "in_closure": true,
                "matching": matching_json(&cert),
            }),
        ),
        (OneSidedVerdict::Rejected { position }, TwoSidedVerdict::Accepted(cert)) => (
            format!(
                "word: {shown}\nclass: two_sided_only\nin_closure: true\none_sided_failure_at: {position}\nmatching:\n{}",
                cert.to_text()
            ),
            json!({
                "word": shown,
                "class": "two_sided_only",
                "in_closure": true,
                "one_sided_failure_at": position,
                "matching": matching_json(&cert),
            }),
        ),
        (OneSidedVerdict::Rejected { position }, TwoSidedVerdict::Rejected { residual }) => {
            let cert = build_certificate(ctx.notation.alphabet(), &w).map_err(Failure::from_core)?;
            (
                format!(
                    "word: {shown}\nclass: neither\nin_closure: false\none_sided_failure_at: {position}\nresidual: {}\nseparation_certificate:\n{}",
                    fmt_word(ctx, &residual),
                    cert.to_text(&w, &ctx.notation)
                ),
                json!({
                    "word": shown,
                    "class": "neither",
                    "in_closure": false,
                    "one_sided_failure_at": position,
                    "residual": fmt_word(ctx, &residual),
                    "separation_certificate": certificate_json(ctx, &cert, &w),
                }),
            )
        }
    };
    Ok(render(ctx, out, value))
}

pub fn reduce(ctx: &Context, text: &str) -> Result<String, Failure> {
    let w = parse(ctx, text)?;
    let trace = reduce_trace(&w);
    let residual = fmt_word(ctx, trace.residual());
    let out = format!(
        "word: {}\n{}residual: {residual}\nmember: {}\n",
        fmt_word(ctx, &w),
        trace.to_text(&ctx.notation),
        trace.is_member()
    );
    let steps: Vec<Value> = trace
        .steps()
        .iter()
        .map(|s| {
            json!({
                "position": s.position,
                "left": ctx.notation.symbol(s.left).to_string(),
                "right": ctx.notation.symbol(s.right).to_string(),
            })
        })
        .collect();
    let value = json!({
        "word": fmt_word(ctx, &w),
        "steps": steps,
        "residual": residual,
        "member": trace.is_member(),
    });
    Ok(render(ctx, out, value))
}

pub fn approximate(
    ctx: &Context,
    text: &str,
    quotient_path: &Path,
    minimal_bound: Option<usize>,
) -> Result<String, Failure> {
    let w = parse(ctx, text)?;
    let q = read_quotient(ctx, quotient_path)?;
    let gadgets = build_gadgets(&q).map_err(Failure::from_core)?;
    let witness = approximate_with(&q, &gadgets, &w).map_err(Failure::from_core)?;
    let report = WitnessReport::new(
        &q,
        &gadgets,
        quotient_path.display().to_string(),
        w.clone(),
        witness.clone(),
    );
    let passed = report.verification.passed();
    let mut out = report.to_text(&ctx.notation);
    out.push_str(&format!(
        "result: {}\n",
        if passed { "pass" } else { "fail" }
    ));
    let mut value = json!({
        "input": fmt_word(ctx, &report.input),
        "witness": fmt_word(ctx, &report.witness),
        "quotient": report.quotient_ref,
        "input_two_sided": report.verification.input_two_sided,
        "witness_one_sided": report.verification.witness_one_sided,
        "images_agree": report.verification.images_agree,
        "gadgets": report.gadget_parameters.iter()
            .map(|(pair, n, m)| json!({"pair": pair, "N": n, "M": m}))
            .collect::<Vec<_>>(),
        "result": if passed { "pass" } else { "fail" },
    });
    if let Some(bound) = minimal_bound {
        let bound = bound.min(witness.len());
        let found = bfs_minimal_witness(&q, &w, bound).map_err(Failure::from_core)?;
        match &found {
            Some(u) => out.push_str(&format!(
                "minimal: {}\nminimal_length: {}\n",
                fmt_word(ctx, u),
                u.len()
            )),
            None => out.push_str(&format!("minimal: not found up to length {bound}\n")),
        }
        value["minimal"] = found.map_or(Value::Null, |u| json!(fmt_word(ctx, &u)));
    }
    let rendered = render(ctx, out, value);
    if passed {
        Ok(rendered)
    } else {
        Err(Failure::new(EXIT_INTERNAL, rendered))
    }
}

fn certificate_json(ctx: &Context, cert: &SeparationCertificate, w: &Word) -> Value {
    json!({
        "quotient": quotient_json(&cert.quotient),
        "word": fmt_word(ctx, w),
        "moved_point": cert.moved_point,
        "image_of_word_moves_point_to": cert.target,
    })
}

fn separation_report_text(report: &SeparationReport, bound: usize, ctx: &Context) -> String {
    let mut out = format!(
        "verify_up_to: {bound}\nmoves_point: {}\nfactors_through_phi: {}\none_sided_checked: {}\n",
        report.moves_point, report.factors_through_phi, report.one_sided_checked
    );
    if let Some(u) = &report.one_sided_counterexample {
        out.push_str(&format!("one_sided_counterexample: {}\n", fmt_word(ctx, u)));
    }
    out.push_str(&format!(
        "result: {}\n",
        if report.passed() { "pass" } else { "fail" }
    ));
    out
}

fn separation_report_json(report: &SeparationReport, bound: usize, ctx: &Context) -> Value {
    json!({
        "verify_up_to": bound,
        "moves_point": report.moves_point,
        "factors_through_phi": report.factors_through_phi,
        "one_sided_checked": report.one_sided_checked,
        "one_sided_counterexample": report.one_sided_counterexample.as_ref().map(|u| fmt_word(ctx, u)),
        "result": if report.passed() { "pass" } else { "fail" },
    })
}

pub fn separate(
    ctx: &Context,
    text: &str,
    bound: usize,
    output: Option<&Path>,
) -> Result<String, Failure> {
    let w = parse(ctx, text)?;
    let cert = build_certificate(ctx.notation.alphabet(), &w).map_err(Failure::from_core)?;
    let cert_text = cert.to_text(&w, &ctx.notation);
    if let Some(path) = output {
        fs::write(path, &cert_text)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    let report = verify_separation(&cert, &w, bound);
    let out = format!("{cert_text}{}", separation_report_text(&report, bound, ctx));
    let value = json!({
        "certificate": certificate_json(ctx, &cert, &w),
        "report": separation_report_json(&report, bound, ctx),
    });
    let rendered = render(ctx, out, value);
    if report.passed() {
        Ok(rendered)
    } else {
        Err(Failure::new(EXIT_INTERNAL, rendered))
    }
}

pub fn verify(ctx: &Context, path: &Path, bound: usize) -> Result<String, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let (cert, w) =
        SeparationCertificate::from_text(&text, &ctx.notation).map_err(Failure::from_core)?;
    let report = verify_separation(&cert, &w, bound);
    let out = format!(
        "word: {}\n{}",
        fmt_word(ctx, &w),
        separation_report_text(&report, bound, ctx)
    );
    let value = json!({
        "word": fmt_word(ctx, &w),
        "report": separation_report_json(&report, bound, ctx),
    });
    let rendered = render(ctx, out, value);
    if report.passed() {
        Ok(rendered)
    } else {
        Err(Failure::new(EXIT_NEGATIVE, rendered))
    }
}

pub fn count_tables(ctx: &Context, max_length: usize) -> Result<[CountTable; 2], Failure> {
    let alphabet = ctx.notation.alphabet();
    let one = count_members(CountKind::OneSided, &alphabet, max_length, ctx.cap)
        .map_err(Failure::from_core)?;
    let two = count_members(CountKind::TwoSided, &alphabet, max_length, ctx.cap)
        .map_err(Failure::from_core)?;
    Ok([one, two])
}

pub fn table_json(t: &CountTable) -> Value {
    json!({
        "kind": t.kind.to_string(),
        "pairs": t.pairs,
        "rows": t.rows.iter().map(|r| json!([r.length, r.count.to_string()])).collect::<Vec<_>>(),
        "closed_forms": t.check_closed_forms().err().unwrap_or_else(|| "agree".into()),
    })
}

pub fn count(ctx: &Context, max_length: usize, csv: bool) -> Result<String, Failure> {
    let tables = count_tables(ctx, max_length)?;
    let mut out = String::new();
    let mut ok = true;
    for (k, t) in tables.iter().enumerate() {
        if csv {
            let rows = t.to_csv();
            out.push_str(if k == 0 {
                &rows
            } else {
                rows.split_once('\n').map_or("", |r| r.1)
            });
        } else {
            out.push_str(&t.to_text());
        }
        let verdict = t.check_closed_forms();
        ok &= verdict.is_ok();
        if !csv {
            out.push_str(&format!(
                "closed_forms: {}\n\n",
                verdict.err().unwrap_or_else(|| "agree".into())
            ));
        }
    }
    let walks = closed_walk_counts(ctx.notation.alphabet().pair_count(), max_length);
    let value = json!({
        "tables": tables.iter().map(table_json).collect::<Vec<_>>(),
        "tree_walks": walks.iter().map(u128::to_string).collect::<Vec<_>>(),
    });
    let rendered = render(ctx, out, value);
    if ok {
        Ok(rendered)
    } else {
        Err(Failure::new(EXIT_INTERNAL, rendered))
    }
}

pub fn quotient_generate(
    ctx: &Context,
    degree: usize,
    output: Option<&Path>,
) -> Result<String, Failure> {
    if degree == 0 {
        return Err(Failure::usage("--degree must be at least 1"));
    }
    let q = random_quotient(ctx.notation.alphabet(), degree, ctx.seed);
    let text = q.to_text();
    if let Some(path) = output {
        fs::write(path, &text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    Ok(render(ctx, text, quotient_json(&q)))
}

pub fn quotient_inspect(ctx: &Context, path: &Path) -> Result<String, Failure> {
    let q = read_quotient(ctx, path)?;
    let mut out = format!(
        "degree: {}\npairs: {}\n",
        q.degree(),
        q.alphabet().pair_count()
    );
    let mut letters = Vec::new();
    for l in q.alphabet().letters() {
        let p = q.image(l);
        out.push_str(&format!(
            "{}: {} order {}\n",
            ctx.notation.symbol(l),
            p,
            p.order()
        ));
        letters.push(json!({
            "letter": ctx.notation.symbol(l).to_string(),
            "cycles": p.to_string(),
            "order": p.order(),
        }));
    }
    let mut pairs = Vec::new();
    for pair in 0..q.alphabet().pair_count() {
        let n = q.pair_exponent(pair);
        out.push_str(&format!(
            "pair {pair} ({}{}): exponent {n}\n",
            ctx.notation.symbol(Letter::opener(pair)),
            ctx.notation.symbol(Letter::closer(pair)),
        ));
        pairs.push(json!({"pair": pair, "exponent": n}));
    }
    let factors = q.factors_through_free_group();
    out.push_str(&format!("factors_through_phi: {factors}\n"));
    let value = json!({
        "quotient": quotient_json(&q),
        "letters": letters,
        "pairs": pairs,
        "factors_through_phi": factors,
    });
    Ok(render(ctx, out, value))
}
