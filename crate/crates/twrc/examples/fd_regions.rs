//! Full-duplex rate regions of the composite scheme and all of its
//! restrictions for one channel, printed as CSV on stdout.
//!
//! ```bash
//! cargo run --release --example fd_regions
//! ```

use twrc::channel::{ChannelGains, PowerBudget};
use twrc::fd_schemes::{optimize_fd_region, SchemeKind, SearchConfig, User};

fn main() -> Result<(), twrc::Error> {
    // relay uplink of user 1 far stronger than its direct link: a channel
    // where the composite scheme beats time sharing of the classic schemes
    let gains = ChannelGains::new(1.0, 1.0, 1.0, 1.0, 20f64.sqrt(), 0.5f64.sqrt())?;
    let budget = PowerBudget::new(1.0, 1.0, 1.0)?;
    let cfg = SearchConfig::default();

    let schemes = [
        ("composite", SchemeKind::Composite),
        ("markov-df", SchemeKind::MarkovDf),
        ("independent-df", SchemeKind::IndependentDf),
        ("independent-pdf", SchemeKind::IndependentPartialDf),
        ("hybrid-user1", SchemeKind::HybridDfDt(User::User1)),
        ("hybrid-user2", SchemeKind::HybridDfDt(User::User2)),
        ("dt", SchemeKind::DirectTransmission),
    ];

    println!("scheme,r1_bits,r2_bits");
    for (name, kind) in schemes {
        let region = optimize_fd_region(&gains, &budget, kind, &cfg)?;
        for v in region.vertices() {
            println!("{name},{:.6},{:.6}", v[0], v[1]);
        }
    }
    Ok(())
}
