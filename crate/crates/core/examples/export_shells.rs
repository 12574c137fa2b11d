//! CSV of the ellipsoids B^m(I_*), m = 0..=3, through the command-line layer.

use dualframe::cli::{export, ExportKind, RunConfig};

fn main() -> dualframe::Result<()> {
    let cfg = RunConfig::from_json(r#"{"matrix": [[3, -3], [1, 0]]}"#)?;
    let mut out = Vec::new();
    let rows = export(&cfg, ExportKind::Shells, Some(12), &mut out)?;
    print!("{}", String::from_utf8_lossy(&out));
    eprintln!("{rows} boundary points");
    Ok(())
}
