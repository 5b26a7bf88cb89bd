//! CSV and hashing helpers shared by all artifact writers.

use sha2::{Digest, Sha256};
use std::path::Path;

/// 17 significant digits, enough for an exact double round trip.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|e| format!("bad number {s:?}: {e}"))
}

/// Writes a header plus rows as LF-terminated CSV.
pub fn write_csv<R, I, S>(path: &Path, header: &[&str], rows: R) -> Result<(), csv::Error>
where
    R: IntoIterator<Item = I>,
    I: IntoIterator<Item = S>,
    S: AsRef<[u8]>,
{
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn hash_file(path: &Path) -> std::io::Result<String> {
    let bytes = std::fs::read(path)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_roundtrips() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0] {
            assert_eq!(parse_f64(&fmt_f64(x)).unwrap(), x);
        }
    }
}
