use std::io::Write;
use std::path::Path;

use tempfile::NamedTempFile;

use crate::error::CliError;

pub const SCHEMA_LINE: &str = "# scarf-scatter v1 schema";
pub const SCAN_HEADER: &str = "E,T_fwd,T_rev,R_left_fwd,R_right_fwd,R_left_rev,R_right_rev,singular_flag";

/// Shortest round-trip exponent form, so output is byte-stable.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Writes to `out`, or stdout when `None`. Files are replaced atomically.
pub fn emit(out: Option<&Path>, body: &str) -> Result<(), CliError> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(body.as_bytes()).and_then(|()| stdout.flush()) {
                // A closed reader (e.g. `| head`) is not an error.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                other => other?,
            }
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = NamedTempFile::new_in(dir)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            tmp.write_all(body.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path)
                .map_err(|e| CliError::Input(format!("cannot write {}: {}", path.display(), e.error)))?;
        }
    }
    Ok(())
}
