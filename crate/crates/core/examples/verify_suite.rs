//! Run the applicable checks for a model and print JSON report lines.

use square_ice::verifier::{run_suite, SuiteConfig, SuiteModel};
use square_ice::CoeffMode;

fn main() -> square_ice::Result<()> {
    for mode in [CoeffMode::GenericA, CoeffMode::Omega6] {
        let cfg = SuiteConfig { model: SuiteModel::Dwbc, size: 3, mode, trials: 20, seed: 7 };
        for r in run_suite(&[], &cfg)? {
            println!("{}", r.to_json(false));
        }
    }
    Ok(())
}
