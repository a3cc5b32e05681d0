//! Small shared helpers: byte-quantity parsing and seed derivation.

use thiserror::Error;

#[derive(Debug, Error)]
#[error("invalid byte quantity {input:?}: {reason}")]
pub struct ParseBytesError {
    pub input: String,
    pub reason: String,
}

/// Parses a byte quantity with an optional SI suffix (K/M/G/T, powers of 10).
///
/// `"100M"` is 100,000,000 bytes; a bare integer is taken verbatim. Suffixes
/// are case-insensitive and may be followed by `B` (`"1GB"`).
pub fn parse_bytes(input: &str) -> Result<u64, ParseBytesError> {
    let err = |reason: &str| ParseBytesError {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Err(err("empty string"));
    }
    let upper = trimmed.to_ascii_uppercase();
    let body = upper.strip_suffix('B').unwrap_or(&upper);
    let (digits, multiplier) = match body.chars().last() {
        Some('K') => (&body[..body.len() - 1], 1_000u64),
        Some('M') => (&body[..body.len() - 1], 1_000_000),
        Some('G') => (&body[..body.len() - 1], 1_000_000_000),
        Some('T') => (&body[..body.len() - 1], 1_000_000_000_000),
        Some(c) if c.is_ascii_digit() => (body, 1),
        _ => return Err(err("unrecognized suffix")),
    };
    let value: u64 = digits
        .parse()
        .map_err(|_| err("not a non-negative integer"))?;
    value
        .checked_mul(multiplier)
        .ok_or_else(|| err("quantity overflows u64"))
}

/// Derives a per-task seed from a run seed and a task id.
///
/// Stable across platforms and releases: FNV-1a over the id mixed with the
/// run seed, finalized with SplitMix64. The same (seed, id) pair always maps
/// to the same value, so task data is reproducible run-to-run.
pub fn derive_seed(run_seed: u64, task_id: &str) -> u64 {
    const FNV_OFFSET: u64 = 0xcbf29ce484222325;
    const FNV_PRIME: u64 = 0x100000001b3;
    let mut hash = FNV_OFFSET;
    for byte in task_id.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    splitmix64(hash ^ run_seed.wrapping_mul(0x9e3779b97f4a7c15))
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Median of a slice of measurements. Panics on an empty slice.
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of empty slice");
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("NaN measurement"));
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_integers() {
        assert_eq!(parse_bytes("0").unwrap(), 0);
        assert_eq!(parse_bytes("1048576").unwrap(), 1_048_576);
    }

    #[test]
    fn parses_si_suffixes_as_powers_of_ten() {
        assert_eq!(parse_bytes("1K").unwrap(), 1_000);
        assert_eq!(parse_bytes("100M").unwrap(), 100_000_000);
        assert_eq!(parse_bytes("1G").unwrap(), 1_000_000_000);
        assert_eq!(parse_bytes("1T").unwrap(), 1_000_000_000_000);
        assert_eq!(parse_bytes("2gb").unwrap(), 2_000_000_000);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_bytes("").is_err());
        assert!(parse_bytes("-5").is_err());
        assert!(parse_bytes("12X").is_err());
        assert!(parse_bytes("K").is_err());
    }

    #[test]
    fn derived_seeds_differ_by_task_and_run() {
        let a = derive_seed(7, "t1");
        let b = derive_seed(7, "t2");
        let c = derive_seed(8, "t1");
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, derive_seed(7, "t1"));
    }

    #[test]
    fn median_of_odd_and_even() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
