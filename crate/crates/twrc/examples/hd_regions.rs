//! Half-duplex six-phase region and its protocol restrictions for one
//! asymmetric channel, printed as CSV on stdout.
//!
//! ```bash
//! cargo run --release --example hd_regions
//! ```

use twrc::channel::{ChannelGains, PowerBudget};
use twrc::hd_schemes::{optimize_hd_region, HdSchemeKind, HdSearchConfig};

fn main() -> Result<(), twrc::Error> {
    // asymmetric links: user 1 close to the relay, user 2 mostly on the
    // direct path
    let gains = ChannelGains::new(0.8, 0.9, 0.8, 0.6, 2.2, 0.9)?;
    let budget = PowerBudget::new(1.0, 1.0, 1.0)?;
    let cfg = HdSearchConfig::default();

    let schemes = [
        ("full", HdSchemeKind::Full),
        ("solo-common-only", HdSchemeKind::SoloCommonOnly),
        ("independent-six-phase", HdSchemeKind::IndependentSixPhase),
        ("four-phase", HdSchemeKind::FourPhase),
    ];

    println!("scheme,r1_bits,r2_bits");
    for (name, kind) in schemes {
        let region = optimize_hd_region(&gains, &budget, kind, &cfg)?;
        for v in region.vertices() {
            println!("{name},{:.6},{:.6}", v[0], v[1]);
        }
    }
    Ok(())
}
