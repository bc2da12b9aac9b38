//! Small relay-placement sweep: regime label and throughput gain per cell,
//! printed as CSV on stdout. The full-resolution map is
//! `twrc sweep --res 81,81`.
//!
//! ```bash
//! cargo run --release --example relay_sweep
//! ```

use twrc::survey::{sweep_regime_map, SweepGrid};

fn main() -> Result<(), twrc::Error> {
    let grid = SweepGrid { nx: 21, ny: 21, ..SweepGrid::default_survey() };
    let cells = sweep_regime_map(&grid)?;

    println!("x,y,regime,gain_percent");
    for c in &cells {
        match c.label {
            Some(label) => {
                println!("{:.2},{:.2},{},{:.3}", c.x, c.y, label.major, c.gain_percent)
            }
            None => println!("{:.2},{:.2},near-user,", c.x, c.y),
        }
    }
    Ok(())
}
