//! `--x-grid` syntax: comma-separated terms, each an integer (`5000`), a
//! power (`2^10`, `1e4`) or a range of powers with a common base
//! (`2^10..2^18`, `1e4..1e7`).

use crate::error::{ExperimentError, Result};

fn grid_err(input: &str, reason: impl Into<String>) -> ExperimentError {
    ExperimentError::Grid {
        input: input.to_owned(),
        reason: reason.into(),
    }
}

/// `(base, exponent)` with value `base^exponent`; plain integers are `(n, 1)`.
fn parse_power(term: &str) -> Result<(u64, u32)> {
    let t = term.trim();
    let parse_u64 = |s: &str| s.trim().parse::<u64>().map_err(|e| grid_err(term, e.to_string()));
    let parse_u32 = |s: &str| s.trim().parse::<u32>().map_err(|e| grid_err(term, e.to_string()));
    if let Some((b, e)) = t.split_once('^') {
        return Ok((parse_u64(b)?, parse_u32(e)?));
    }
    if let Some((m, e)) = t.split_once(['e', 'E']) {
        let m = parse_u64(m)?;
        let e = parse_u32(e)?;
        if m != 1 {
            // fold the mantissa in; such terms cannot open a range
            let v = 10u64
                .checked_pow(e)
                .and_then(|p| p.checked_mul(m))
                .ok_or_else(|| grid_err(term, "overflow"))?;
            return Ok((v, 1));
        }
        return Ok((10, e));
    }
    Ok((parse_u64(t)?, 1))
}

fn value(term: &str, (b, e): (u64, u32)) -> Result<u64> {
    b.checked_pow(e).ok_or_else(|| grid_err(term, "overflow"))
}

pub fn parse_x_grid(input: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for term in input.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some((lo, hi)) = term.split_once("..") {
            let (b0, e0) = parse_power(lo)?;
            let (b1, e1) = parse_power(hi)?;
            if b0 != b1 || e0 == 1 && e1 == 1 {
                return Err(grid_err(term, "range ends must be powers of one base"));
            }
            if e0 > e1 {
                return Err(grid_err(term, "empty range"));
            }
            for e in e0..=e1 {
                out.push(value(term, (b0, e))?);
            }
        } else {
            out.push(value(term, parse_power(term)?)?);
        }
    }
    if out.is_empty() {
        return Err(grid_err(input, "no grid points"));
    }
    if let Some(&bad) = out.iter().find(|&&x| x < 2) {
        return Err(grid_err(input, format!("x = {bad} is below 2")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_x_grid("1e4").unwrap(), vec![10_000]);
        assert_eq!(parse_x_grid("2^10").unwrap(), vec![1024]);
        assert_eq!(parse_x_grid("5000, 3e3").unwrap(), vec![5000, 3000]);
        assert_eq!(
            parse_x_grid("1e4..1e7").unwrap(),
            vec![10_000, 100_000, 1_000_000, 10_000_000]
        );
        assert_eq!(parse_x_grid("2^10..2^12,100").unwrap(), vec![1024, 2048, 4096, 100]);
    }

    #[test]
    fn rejects() {
        assert!(parse_x_grid("").is_err());
        assert!(parse_x_grid("2^10..1e4").is_err());
        assert!(parse_x_grid("10..20").is_err());
        assert!(parse_x_grid("2^12..2^10").is_err());
        assert!(parse_x_grid("abc").is_err());
        assert!(parse_x_grid("1").is_err());
        assert!(parse_x_grid("2^99").is_err());
    }
}
