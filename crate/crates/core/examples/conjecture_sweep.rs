//! Generator-degree reports for every graph up to a given size.
//!
//! cargo run --release --example conjecture_sweep -- 5 full

use tensorsym::invariant_ring::{sweep, write_summary_csv, CapPolicy, GeneratorOptions};

fn main() -> tensorsym::Result<()> {
    let mut args = std::env::args().skip(1);
    let n_max: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let policy: CapPolicy = args.next().unwrap_or_else(|| "full".into()).parse()?;
    let result = sweep(n_max, policy, &GeneratorOptions::default(), 0)?;
    write_summary_csv(&result.reports, std::io::stdout().lock())?;
    for row in &result.summary {
        eprintln!(
            "n={}: {} graphs, A true/false/capped {}/{}/{}, B {}/{}/{}",
            row.n, row.graphs, row.a.holds, row.a.fails, row.a.capped, row.b.holds, row.b.fails, row.b.capped
        );
    }
    let bad: Vec<_> = result.counterexamples().map(|r| r.graph6.clone()).collect();
    if !bad.is_empty() {
        eprintln!("counterexamples: {bad:?}");
    }
    Ok(())
}
