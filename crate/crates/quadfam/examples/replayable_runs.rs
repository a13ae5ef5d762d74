//! Every CLI run writes a manifest; replaying the manifest reproduces the
//! output files byte for byte. This example drives the dispatcher directly.
//!
//! ```bash
//! cargo run --example replayable_runs
//! ```

use quadfam::cli::dispatch;
use quadfam::report::manifest_argv;

fn main() {
    let dir = std::env::temp_dir().join(format!("quadfam-replay-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let out = dir.join("run");

    let args: Vec<String> = [
        "thm-d",
        "--a",
        "2.0",
        "--n-range",
        "8:12",
        "--seed",
        "42",
        "--out",
        out.to_str().unwrap(),
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    assert_eq!(dispatch(&args), 0);

    let first = std::fs::read(out.join("table.csv")).unwrap();
    let manifest = std::fs::read_to_string(out.join("manifest.json")).unwrap();
    println!("\nmanifest:\n{manifest}");

    // wipe the outputs and replay from the manifest alone
    let replay = manifest_argv(&manifest).unwrap();
    std::fs::remove_dir_all(&out).unwrap();
    assert_eq!(dispatch(&replay), 0);

    let second = std::fs::read(out.join("table.csv")).unwrap();
    assert_eq!(first, second);
    println!("\nreplay reproduced table.csv byte-identically ({} bytes)", first.len());
    let _ = std::fs::remove_dir_all(&dir);
}
