//! Runs every acceptance criterion one after another (so wall times are not
//! inflated by sibling criteria) and prints one line per criterion.

use std::process::ExitCode;

use ncfourier::verify::{run_criteria, Context, Suite};

fn main() -> ExitCode {
    let ctx = Context::default();
    let outcomes = run_criteria(&Suite::All.criteria(), &ctx, false);
    let mut all_ok = true;
    println!("acceptance: {} criteria, seed {}", outcomes.len(), ctx.seed);
    for o in &outcomes {
        let failed: Vec<_> = o.cases.iter().filter(|c| !c.passed).collect();
        let ok = o.cases_passed() && o.within_time();
        all_ok &= ok;
        let limit = o.runtime_limit.map(|l| format!(" (limit {} s)", l.as_secs())).unwrap_or_default();
        println!(
            "{} criterion {:>2}: {} [{}/{} cases, {:.2} s{}]",
            if ok { "PASS" } else { "FAIL" },
            o.number,
            o.title,
            o.cases.len() - failed.len(),
            o.cases.len(),
            o.elapsed.as_secs_f64(),
            limit,
        );
        if !o.within_time() {
            println!("    runtime exceeded the limit");
        }
        for c in failed {
            println!(
                "    {}: {} (computed {:e}, expected {:e}, residual {:e} > tolerance {:e})",
                c.id, c.reference, c.computed, c.expected, c.residual, c.tolerance
            );
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: some criteria failed");
        ExitCode::FAILURE
    }
}
