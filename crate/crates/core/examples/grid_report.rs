//! Prints realized and expected-value regret for every grid cell.
//!
//! `cargo run --release -p ccb-core --example grid_report -- [seed] [runs] [horizon]`

use ccb_core::harness::table2_grid;

fn main() -> Result<(), ccb_core::Error> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let seed = args.first().copied().unwrap_or(0);
    let runs = args.get(1).copied().unwrap_or(20);
    let horizon = args.get(2).copied().unwrap_or(100_000);
    println!("config,realized_mean,realized_se,expected_mean,expected_se");
    for cell in table2_grid(seed, runs, horizon)? {
        let (r, e) = (cell.result.summary, cell.result.expected_summary);
        println!(
            "{},{:.1},{:.1},{:.1},{:.1}",
            cell.label(),
            r.mean,
            r.std_error(),
            e.mean,
            e.std_error()
        );
    }
    Ok(())
}
