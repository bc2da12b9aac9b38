//! Regime labels and time-share certificates for a handful of channels.
//!
//! ```bash
//! cargo run --release --example classify_regimes
//! ```

use twrc::channel::{ChannelGains, PowerBudget};
use twrc::regime_analysis::{classify_regime, timeshare_certificate};
use twrc::survey::throughput_gain;

fn main() -> Result<(), twrc::Error> {
    let budget = PowerBudget::new(1.0, 1.0, 1.0)?;
    // squared gains (g12..gr2), spanning all five regimes
    let channels: [(&str, [f64; 6]); 6] = [
        ("relay far away", [1.0, 1.0, 1.0, 1.0, 0.5, 0.5]),
        ("relay midway, strong", [1.0, 1.0, 1.0, 1.0, 4.0, 4.0]),
        ("both uplinks slightly strong", [1.0, 1.0, 1.0, 1.0, 1.2, 1.2]),
        ("uplink 1 very strong", [1.0, 1.0, 1.0, 1.0, 20.0, 0.5]),
        ("uplink 1 moderately strong", [1.0, 1.0, 1.0, 1.0, 2.0, 0.5]),
        ("mirror of the previous", [1.0, 1.0, 1.0, 1.0, 0.5, 2.0]),
    ];

    for (what, sq) in channels {
        let g = ChannelGains::new(
            sq[0].sqrt(),
            sq[1].sqrt(),
            sq[2].sqrt(),
            sq[3].sqrt(),
            sq[4].sqrt(),
            sq[5].sqrt(),
        )?;
        let label = classify_regime(&g, &budget)?;
        print!("{what:32} -> regime {label}");
        if let Some(user) = label.certificate_user() {
            let cert = timeshare_certificate(&g, &budget, user)?;
            print!(
                "  mu={:.4} gamma*={:.4} R_S={:.4} R_TS={:.4} gain={:.2}%",
                cert.mu,
                cert.gamma_star,
                cert.r_s,
                cert.r_ts,
                throughput_gain(&cert)?
            );
        }
        println!();
    }
    Ok(())
}
