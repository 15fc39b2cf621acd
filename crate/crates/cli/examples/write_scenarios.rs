//! Regenerates the bundles under `scenarios/` at the workspace root.

use std::path::Path;

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    if let Err(f) = riccati_wall_cli::bundle::write_bundles(&root, &riccati_wall::scenarios::all()) {
        eprintln!("{}", f.message);
        std::process::exit(1);
    }
}
