//! Number formatting and atomic CSV/JSON writers.

use std::io::Write;
use std::path::{Path, PathBuf};

use rug::Float;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{CliError, CliResult};

/// Shortest decimal that reads back to exactly `x` at `x`'s precision.
pub fn shortest_decimal(x: &Float) -> String {
    if x.is_zero() {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf".into() } else { "inf".into() };
    }
    let prec = x.prec();
    let (_, full, _) = x.to_sign_string_exp(10, None);
    let render = |digits: usize| {
        let (negative, mantissa, exp) = x.to_sign_string_exp(10, Some(digits));
        scientific(negative, &mantissa, exp.expect("normal value"))
    };
    let reads_back = |text: &str| Float::parse(text).map(|v| Float::with_val(prec, v) == *x).unwrap_or(false);
    let (mut lo, mut hi) = (1, full.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if reads_back(&render(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    render(lo)
}

/// `0.d1d2… × 10^exp` as `d1.d2…e{exp-1}`, positional for moderate exponents.
fn scientific(negative: bool, mantissa: &str, exp: i32) -> String {
    let digits = mantissa.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let sign = if negative { "-" } else { "" };
    if (-4..=21).contains(&exp) {
        let body = if exp <= 0 {
            format!("0.{}{}", "0".repeat((-exp) as usize), digits)
        } else if exp as usize >= digits.len() {
            format!("{}{}", digits, "0".repeat(exp as usize - digits.len()))
        } else {
            format!("{}.{}", &digits[..exp as usize], &digits[exp as usize..])
        };
        format!("{sign}{body}")
    } else {
        let (head, tail) = digits.split_at(1);
        let tail = if tail.is_empty() { String::new() } else { format!(".{tail}") };
        format!("{sign}{head}{tail}e{}", exp - 1)
    }
}

/// `Some(x)` for finite values; `None` stands for an unbounded estimate.
pub fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// UTF-8, header row, comma separated, LF line endings.
pub fn csv_bytes<T: Serialize>(header: &[&str], rows: &[T]) -> CliResult<Vec<u8>> {
    let mut wtr = csv::WriterBuilder::new().has_headers(false).terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    wtr.write_record(header).map_err(|e| CliError::Output(e.to_string()))?;
    for row in rows {
        wtr.serialize(row).map_err(|e| CliError::Output(e.to_string()))?;
    }
    wtr.into_inner().map_err(|e| CliError::Output(e.to_string()))
}

pub fn parse_csv<T: DeserializeOwned>(bytes: &[u8]) -> CliResult<Vec<T>> {
    csv::ReaderBuilder::new()
        .from_reader(bytes)
        .deserialize()
        .collect::<Result<Vec<T>, _>>()
        .map_err(|e| CliError::Output(e.to_string()))
}

pub fn json_bytes<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| CliError::Output(e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let io_err = |source| CliError::Io { path: path.to_path_buf(), source };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

/// `runs/zeros.csv` with `bins.csv` gives `runs/zeros.bins.csv`.
pub fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Deserialize;

    fn roundtrip(x: &Float) {
        let text = shortest_decimal(x);
        let back = Float::with_val(x.prec(), Float::parse(&text).unwrap());
        assert_eq!(back, *x, "{text}");
        assert_eq!(shortest_decimal(&back), text);
    }

    #[test]
    fn shortest_forms() {
        assert_eq!(shortest_decimal(&Float::with_val(256, -0.5)), "-0.5");
        assert_eq!(shortest_decimal(&Float::with_val(53, 0.1)), "0.1");
        assert_eq!(shortest_decimal(&Float::with_val(53, 1e30)), "1e30");
        assert_eq!(shortest_decimal(&Float::with_val(53, 1.25e-7)), "1.25e-7");
        assert_eq!(shortest_decimal(&Float::with_val(53, 1234.5)), "1234.5");
        assert_eq!(shortest_decimal(&Float::with_val(53, 0.0)), "0");
        let third = Float::with_val(256, 1) / 3u32;
        let text = shortest_decimal(&third);
        assert!(text.len() > 70 && text.len() < 85, "{text}");
    }

    #[test]
    fn shortest_roundtrips() {
        let mut x = Float::with_val(256, 2).sqrt();
        for _ in 0..40 {
            roundtrip(&x);
            roundtrip(&Float::with_val(256, -&x));
            x *= 7u32;
            x /= 3u32;
            x.recip_mut();
        }
        for bits in [24, 53, 64, 113, 512] {
            roundtrip(&(Float::with_val(bits, 10).ln()));
        }
    }

    #[derive(Serialize, Deserialize, Debug, PartialEq)]
    struct Row {
        n: usize,
        value: String,
        x: Option<f64>,
    }

    #[test]
    fn csv_is_lf_terminated_and_roundtrips() {
        let rows = vec![
            Row { n: 1, value: "1/6".into(), x: Some(1e-20) },
            Row { n: 2, value: "-1".into(), x: None },
        ];
        let bytes = csv_bytes(&["n", "value", "x"], &rows).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(!text.contains('\r'));
        assert!(text.starts_with("n,value,x\n"));
        let back: Vec<Row> = parse_csv(&bytes).unwrap();
        assert_eq!(back, rows);
        assert_eq!(csv_bytes(&["n", "value", "x"], &back).unwrap(), bytes);
    }

    #[test]
    fn empty_table_keeps_header() {
        let bytes = csv_bytes::<Row>(&["n", "value", "x"], &[]).unwrap();
        assert_eq!(bytes, b"n,value,x\n");
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, b"a\n").unwrap();
        write_atomic(&path, b"b\n").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"b\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn sidecar_names() {
        assert_eq!(sidecar(Path::new("runs/zeros.csv"), "bins.csv"), PathBuf::from("runs/zeros.bins.csv"));
        assert_eq!(sidecar(Path::new("out"), "report.json"), PathBuf::from("out.report.json"));
    }
}
