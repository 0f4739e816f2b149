//! Writes the non-Pappus covector fixture.
//!
//! Usage: `cargo run -p mhgarside --example gen_nonpappus [output]`

use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/NONPAP.cov"));
    let text = mhgarside::wiring::non_pappus_file();
    std::fs::write(&path, &text)?;
    eprintln!(
        "wrote {} covectors to {}",
        text.lines().filter(|l| !l.starts_with('#')).count(),
        path.display()
    );
    Ok(())
}
