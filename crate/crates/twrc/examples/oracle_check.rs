//! Closed-form regime classifier against the brute-force region oracle on a
//! few random channels. The full 200-draw suite is `twrc verify`.
//!
//! ```bash
//! cargo run --release --example oracle_check
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twrc::channel::PowerBudget;
use twrc::cli::draw_gains;
use twrc::regime_analysis::{brute_force_regime_oracle, classify_regime};

fn main() -> Result<(), twrc::Error> {
    let budget = PowerBudget::new(1.0, 1.0, 1.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    for i in 0..10 {
        let gains = draw_gains(&mut rng);
        let label = classify_regime(&gains, &budget)?;
        let verdict = brute_force_regime_oracle(&gains, &budget, 101)?;
        println!(
            "draw {i}: regime {:40} oracle: exceeds={} max_outside={:.2e} gamma*=({:.2}, {:.2})",
            label.to_string(),
            verdict.exceeds,
            verdict.max_outside,
            verdict.gamma_star[0],
            verdict.gamma_star[1],
        );
    }
    Ok(())
}
