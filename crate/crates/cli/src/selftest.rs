//! The `selftest` subcommand. Output depends only on the arguments, so two
//! runs with the same flags print identical bytes.

use dyck_core::{
    approximate_with, bfs_minimal_witness, build_gadgets, enumerate_words, exhaustive_equivalence,
    is_two_sided_member, quotient_suite, separate, verify_approximation, verify_separation, Error,
    Word,
};
use serde_json::json;

use crate::commands::{count_tables, render, table_json, Failure, EXIT_INTERNAL};
use crate::Context;

/// Separation certificates are re-checked against one-sided words up to
/// this length at most.
const SEPARATION_CHECK_CAP: usize = 8;
/// Length bound for the brute-force shortest-witness search.
const ORACLE_SEARCH_CAP: usize = 12;
const ORACLE_CASES_PER_QUOTIENT: usize = 2;

pub fn run(ctx: &Context, max_length: usize) -> Result<String, Failure> {
    let alphabet = ctx.notation.alphabet();
    let mut out = format!(
        "selftest max_length={max_length} pairs={} seed={}\n",
        alphabet.pair_count(),
        ctx.seed
    );
    let mut ok = true;

    let eq = exhaustive_equivalence(&alphabet, max_length, ctx.cap).map_err(Failure::from_core)?;
    ok &= eq.passed();
    out.push_str(&format!(
        "[equivalence] words={} members={} result={}\n",
        eq.words_checked,
        eq.members,
        verdict(eq.passed())
    ));
    if let Some(w) = &eq.first_discrepancy {
        out.push_str(&format!("  discrepancy: {}\n", ctx.notation.format(w)));
    }

    let tables = count_tables(ctx, max_length)?;
    out.push_str("[counts]\n");
    for t in &tables {
        out.push_str(&t.to_text());
        let check = t.check_closed_forms();
        ok &= check.is_ok();
        out.push_str(&format!(
            "closed_forms: {}\n",
            check.err().unwrap_or_else(|| "agree".into())
        ));
    }

    let mut members = Vec::new();
    let mut non_members = Vec::new();
    for len in 0..=max_length {
        for w in enumerate_words(&alphabet, len, ctx.cap).map_err(Failure::from_core)? {
            if is_two_sided_member(&w) {
                members.push(w);
            } else {
                non_members.push(w);
            }
        }
    }

    let suite = quotient_suite(alphabet);
    let mut approx_fail = Vec::new();
    let mut oracle_cases = 0;
    let mut oracle_fail = Vec::new();
    let mut longest = 0;
    for (k, (name, q)) in suite.iter().enumerate() {
        let gadgets = match build_gadgets(q) {
            Ok(g) => g,
            Err(e) => {
                approx_fail.push(format!("{name}: {e}"));
                continue;
            }
        };
        let mut witnesses = Vec::with_capacity(members.len());
        for w in &members {
            match approximate_with(q, &gadgets, w) {
                Ok(out) if verify_approximation(q, w, &out).passed() => {
                    longest = longest.max(out.len());
                    witnesses.push(out);
                }
                Ok(_) => approx_fail.push(format!("{name} {}", ctx.notation.format(w))),
                Err(e) => approx_fail.push(format!("{name} {}: {e}", ctx.notation.format(w))),
            }
        }
        if witnesses.len() != members.len() {
            continue;
        }
        for j in 0..ORACLE_CASES_PER_QUOTIENT {
            let idx = sample_index(ctx.seed, k, j, members.len());
            let (w, ours) = (&members[idx], &witnesses[idx]);
            oracle_cases += 1;
            if let Err(msg) = oracle_case(q, w, ours) {
                oracle_fail.push(format!("{name} {}: {msg}", ctx.notation.format(w)));
            }
        }
    }
    ok &= approx_fail.is_empty() && oracle_fail.is_empty();
    out.push_str(&format!(
        "[approximation] quotients={} members={} longest_witness={} result={}\n",
        suite.len(),
        members.len(),
        longest,
        verdict(approx_fail.is_empty())
    ));
    for f in &approx_fail {
        out.push_str(&format!("  failure: {f}\n"));
    }

    let bound = max_length.min(SEPARATION_CHECK_CAP);
    let mut sep_fail = Vec::new();
    for w in &non_members {
        let passed = separate(alphabet, w)
            .map(|cert| verify_separation(&cert, w, bound).passed())
            .unwrap_or(false);
        if !passed {
            sep_fail.push(ctx.notation.format(w));
        }
    }
    for w in &members {
        if separate(alphabet, w) != Err(Error::NotSeparable) {
            sep_fail.push(format!("member {}", ctx.notation.format(w)));
        }
    }
    ok &= sep_fail.is_empty();
    out.push_str(&format!(
        "[separation] non_members={} verify_up_to={bound} result={}\n",
        non_members.len(),
        verdict(sep_fail.is_empty())
    ));
    for f in &sep_fail {
        out.push_str(&format!("  failure: {f}\n"));
    }

    out.push_str(&format!(
        "[oracle] cases={oracle_cases} search_up_to={ORACLE_SEARCH_CAP} result={}\n",
        verdict(oracle_fail.is_empty())
    ));
    for f in &oracle_fail {
        out.push_str(&format!("  failure: {f}\n"));
    }
    out.push_str(&format!("selftest: {}\n", verdict(ok)));

    let value = json!({
        "max_length": max_length,
        "pairs": alphabet.pair_count(),
        "seed": ctx.seed,
        "equivalence": {
            "words": eq.words_checked.to_string(),
            "members": eq.members.to_string(),
            "result": verdict(eq.passed()),
        },
        "counts": tables.iter().map(table_json).collect::<Vec<_>>(),
        "approximation": {
            "quotients": suite.len(),
            "members": members.len(),
            "longest_witness": longest,
            "failures": approx_fail,
        },
        "separation": {
            "non_members": non_members.len(),
            "verify_up_to": bound,
            "failures": sep_fail,
        },
        "oracle": {
            "cases": oracle_cases,
            "search_up_to": ORACLE_SEARCH_CAP,
            "failures": oracle_fail,
        },
        "result": verdict(ok),
    });
    let rendered = render(ctx, out, value);
    if ok {
        Ok(rendered)
    } else {
        Err(Failure::new(EXIT_INTERNAL, rendered))
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn sample_index(seed: u64, quotient: usize, j: usize, len: usize) -> usize {
    // splitmix64 step over (seed, quotient, j)
    let mut z = seed
        .wrapping_add((quotient as u64) << 8 | j as u64)
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    (z % len as u64) as usize
}

fn oracle_case(q: &dyck_core::FiniteQuotient, w: &Word, ours: &Word) -> Result<(), String> {
    let bound = ours.len().min(ORACLE_SEARCH_CAP);
    match bfs_minimal_witness(q, w, bound).map_err(|e| e.to_string())? {
        Some(u) if u.len() <= ours.len() && verify_approximation(q, w, &u).passed() => Ok(()),
        Some(u) => Err(format!(
            "search returned unusable witness of length {}",
            u.len()
        )),
        None if ours.len() > ORACLE_SEARCH_CAP => Ok(()),
        None => Err("search found nothing up to the constructed length".into()),
    }
}
