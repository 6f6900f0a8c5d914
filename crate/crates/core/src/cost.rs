//! Exact rational costs.
//!
//! Costs enter as decimal literals with at most six fractional digits and are
//! kept as exact rationals throughout. Min-cut comparisons are done on
//! integers obtained by rescaling with the common denominator, so there are
//! no floating-point ties anywhere in the pipeline.

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Exact per-vertex cost.
pub type Cost = Ratio<i64>;

/// Maximum number of fractional digits accepted in a cost literal.
pub const MAX_FRACTION_DIGITS: usize = 6;

/// Parse a decimal cost literal such as `3`, `2.5` or `0.125`.
pub fn parse_cost(text: &str) -> std::result::Result<Cost, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty cost literal".to_string());
    }
    if text.starts_with('-') || text.starts_with('+') {
        return Err(format!("cost `{text}` must be an unsigned decimal"));
    }
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("malformed cost `{text}`"));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("malformed cost `{text}`"));
    }
    if frac_part.len() > MAX_FRACTION_DIGITS {
        return Err(format!(
            "cost `{text}` has more than {MAX_FRACTION_DIGITS} fractional digits"
        ));
    }
    let int_val: i64 = if int_part.is_empty() {
        0
    } else {
        int_part
            .parse()
            .map_err(|_| format!("cost `{text}` out of range"))?
    };
    let denom = 10i64.pow(frac_part.len() as u32);
    let frac_val: i64 = if frac_part.is_empty() {
        0
    } else {
        frac_part
            .parse()
            .map_err(|_| format!("cost `{text}` out of range"))?
    };
    let numer = int_val
        .checked_mul(denom)
        .and_then(|v| v.checked_add(frac_val))
        .ok_or_else(|| format!("cost `{text}` out of range"))?;
    Ok(Ratio::new(numer, denom))
}

/// Render a cost back as a decimal string when its reduced denominator
/// divides a power of ten, falling back to `p/q` otherwise.
pub fn format_cost(cost: &Cost) -> String {
    let numer = *cost.numer();
    let denom = *cost.denom();
    if denom == 1 {
        return numer.to_string();
    }
    for k in 1..=MAX_FRACTION_DIGITS as u32 {
        let pow = 10i64.pow(k);
        if pow % denom == 0 {
            let scaled = numer * (pow / denom);
            let sign = if scaled < 0 { "-" } else { "" };
            let abs = scaled.unsigned_abs();
            let int_part = abs / 10u64.pow(k);
            let frac_part = abs % 10u64.pow(k);
            let frac = format!("{frac_part:0width$}", width = k as usize);
            let frac = frac.trim_end_matches('0');
            return if frac.is_empty() {
                format!("{sign}{int_part}")
            } else {
                format!("{sign}{int_part}.{frac}")
            };
        }
    }
    format!("{numer}/{denom}")
}

/// Scale a family of rational costs to exact integers with a single common
/// denominator. Returns the per-item integers in input order.
pub fn scale_to_integers(costs: &[Cost]) -> Result<Vec<u64>> {
    let mut lcm: i64 = 1;
    for c in costs {
        lcm = num_integer::lcm(lcm, *c.denom());
        if lcm <= 0 {
            return Err(Error::CostOverflow);
        }
    }
    costs
        .iter()
        .map(|c| {
            let scaled = c
                .numer()
                .checked_mul(lcm / c.denom())
                .ok_or(Error::CostOverflow)?;
            u64::try_from(scaled).map_err(|_| Error::CostOverflow)
        })
        .collect()
}

/// Least common multiple of the reduced denominators.
pub fn common_denominator(costs: &[Cost]) -> Result<i64> {
    let mut lcm: i64 = 1;
    for c in costs {
        lcm = num_integer::lcm(lcm, *c.denom());
        if lcm <= 0 {
            return Err(Error::CostOverflow);
        }
    }
    Ok(lcm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_decimals() {
        assert_eq!(parse_cost("3").unwrap(), Ratio::new(3, 1));
        assert_eq!(parse_cost("2.5").unwrap(), Ratio::new(5, 2));
        assert_eq!(parse_cost("0.125").unwrap(), Ratio::new(1, 8));
        assert_eq!(parse_cost(".5").unwrap(), Ratio::new(1, 2));
    }

    #[test]
    fn rejects_malformed_literals() {
        assert!(parse_cost("").is_err());
        assert!(parse_cost("-1").is_err());
        assert!(parse_cost("1.2.3").is_err());
        assert!(parse_cost("abc").is_err());
        assert!(parse_cost("1.1234567").is_err());
        assert!(parse_cost(".").is_err());
    }

    #[test]
    fn formats_round_trip() {
        for text in ["3", "2.5", "0.125", "0.000001", "17"] {
            let c = parse_cost(text).unwrap();
            assert_eq!(parse_cost(&format_cost(&c)).unwrap(), c);
        }
        assert_eq!(format_cost(&Ratio::new(5, 2)), "2.5");
        assert_eq!(format_cost(&Ratio::new(3, 1)), "3");
    }

    #[test]
    fn scaling_is_exact() {
        let costs = vec![
            parse_cost("2.5").unwrap(),
            parse_cost("0.25").unwrap(),
            parse_cost("3").unwrap(),
        ];
        assert_eq!(scale_to_integers(&costs).unwrap(), vec![10, 1, 12]);
        assert_eq!(common_denominator(&costs).unwrap(), 4);
    }
}
