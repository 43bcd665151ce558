//! On-disk formats: complex matrix text, raw little-endian float64 arrays,
//! and the JSON sidecars that describe them.
//!
//! All floating-point text is written with Rust's shortest round-trip
//! formatting, so write-then-read reproduces every value bit for bit.

use crate::error::{Error, Result};
use crate::C64;
use ndarray::Array2;
use std::fs;
use std::path::Path;

/// Render a complex number as `re+imj` (imaginary sign always explicit).
pub fn format_complex(z: C64) -> String {
    format!("{}{:+}j", z.re, z.im)
}

/// Parse `re+imj`. Both parts are required; exponent notation is accepted.
pub fn parse_complex(s: &str) -> Result<C64> {
    let body = s
        .strip_suffix(['j', 'J'])
        .ok_or_else(|| Error::FormatError(format!("complex entry `{s}` missing trailing j")))?;
    let bytes = body.as_bytes();
    // The imaginary part starts at the last sign that is not a leading sign
    // and not part of an exponent.
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
            break;
        }
    }
    let split = split
        .ok_or_else(|| Error::FormatError(format!("complex entry `{s}` missing imaginary part")))?;
    let re: f64 = body[..split]
        .parse()
        .map_err(|_| Error::FormatError(format!("bad real part in `{s}`")))?;
    let im: f64 = body[split..]
        .parse()
        .map_err(|_| Error::FormatError(format!("bad imaginary part in `{s}`")))?;
    Ok(C64::new(re, im))
}

/// Serialize a square complex matrix: header line `n`, then `n` rows of
/// `n` whitespace-separated `re+imj` entries.
pub fn matrix_to_text(m: &Array2<C64>) -> String {
    let n = m.nrows();
    let mut out = String::new();
    out.push_str(&format!("{n}\n"));
    for i in 0..n {
        let row: Vec<String> = (0..m.ncols()).map(|j| format_complex(m[[i, j]])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parse the square-matrix text format produced by [`matrix_to_text`].
pub fn matrix_from_text(text: &str) -> Result<Array2<C64>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::FormatError("empty matrix file".into()))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| Error::FormatError(format!("bad matrix header `{header}`")))?;
    if n == 0 {
        return Err(Error::FormatError("matrix dimension must be positive".into()));
    }
    let mut m = Array2::zeros((n, n));
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::FormatError(format!("matrix row {i} missing (expected {n})")))?;
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != n {
            return Err(Error::FormatError(format!(
                "matrix row {i} has {} entries, expected {n}",
                entries.len()
            )));
        }
        for (j, e) in entries.iter().enumerate() {
            m[[i, j]] = parse_complex(e)?;
        }
    }
    if lines.next().is_some() {
        return Err(Error::FormatError(format!("trailing data after {n} matrix rows")));
    }
    Ok(m)
}

/// Write a square complex matrix to `path` in the text format.
pub fn write_matrix_text(path: impl AsRef<Path>, m: &Array2<C64>) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::FormatError(format!(
            "matrix text format requires a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    fs::write(path, matrix_to_text(m))?;
    Ok(())
}

/// Read a square complex matrix from `path`.
pub fn read_matrix_text(path: impl AsRef<Path>) -> Result<Array2<C64>> {
    let text = fs::read_to_string(&path)?;
    matrix_from_text(&text)
}

/// Write a flat f64 slice as little-endian binary.
pub fn write_f64_binary(path: impl AsRef<Path>, data: &[f64]) -> Result<()> {
    let mut bytes = Vec::with_capacity(data.len() * 8);
    for v in data {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    fs::write(path, bytes)?;
    Ok(())
}

/// Read a little-endian f64 binary file written by [`write_f64_binary`].
pub fn read_f64_binary(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let bytes = fs::read(&path)?;
    if bytes.len() % 8 != 0 {
        return Err(Error::FormatError(format!(
            "binary float file length {} is not a multiple of 8",
            bytes.len()
        )));
    }
    Ok(bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn complex_entry_round_trip_is_bit_exact() {
        let cases = [
            C64::new(1.5, -0.25),
            C64::new(-1.0, 2.0),
            C64::new(0.0, -0.0),
            C64::new(1e-308, -2.5e-300),
            C64::new(9.87e300, 1e-15),
            C64::new(std::f64::consts::PI, -std::f64::consts::E),
            C64::new(-0.1, 0.3),
        ];
        for z in cases {
            let text = format_complex(z);
            let back = parse_complex(&text).unwrap();
            assert_eq!(z.re.to_bits(), back.re.to_bits(), "{text}");
            assert_eq!(z.im.to_bits(), back.im.to_bits(), "{text}");
        }
    }

    #[test]
    fn complex_entry_exponent_signs() {
        let z = parse_complex("1.5e-3-2e-7j").unwrap();
        assert_eq!(z, C64::new(1.5e-3, -2e-7));
        let z = parse_complex("-2E+4+3.5E-2j").unwrap();
        assert_eq!(z, C64::new(-2e4, 3.5e-2));
    }

    #[test]
    fn complex_entry_rejects_malformed() {
        assert!(parse_complex("1.5").is_err());
        assert!(parse_complex("1.5j").is_err());
        assert!(parse_complex("1.5+j2").is_err());
        assert!(parse_complex("abc+1j").is_err());
        assert!(parse_complex("1+xyzj").is_err());
    }

    #[test]
    fn matrix_round_trip_is_bit_exact() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(42);
        let n = 7;
        let m = Array2::from_shape_fn((n, n), |_| {
            C64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0) * 1e-7)
        });
        let text = matrix_to_text(&m);
        let back = matrix_from_text(&text).unwrap();
        for (a, b) in m.iter().zip(back.iter()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn matrix_text_rejects_bad_shapes() {
        assert!(matrix_from_text("").is_err());
        assert!(matrix_from_text("two\n1+0j").is_err());
        // Short row.
        assert!(matrix_from_text("2\n1+0j\n1+0j 2+0j").is_err());
        // Missing row.
        assert!(matrix_from_text("2\n1+0j 2+0j").is_err());
        // Trailing junk.
        assert!(matrix_from_text("1\n1+0j\n2+0j").is_err());
    }

    #[test]
    fn f64_binary_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("block.f64");
        let data: Vec<f64> = vec![0.0, -0.0, 1.5e-300, -7.25, f64::MAX, 1e-15];
        write_f64_binary(&path, &data).unwrap();
        let back = read_f64_binary(&path).unwrap();
        assert_eq!(data.len(), back.len());
        for (a, b) in data.iter().zip(back.iter()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn f64_binary_rejects_truncated_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.f64");
        std::fs::write(&path, [0u8; 12]).unwrap();
        assert!(read_f64_binary(&path).is_err());
    }
}
