//! CSV ingestion. Microdata files carry one income per line, grouped
//! files carry `count,mean` rows; an optional single header line is
//! detected by a non-numeric first token. Errors carry the 1-based
//! line number of the offending row.

use crate::Failure;

/// Parses microdata: one income per line, first comma-separated field.
pub fn parse_incomes(text: &str) -> Result<Vec<f64>, Failure> {
    let mut values = Vec::new();
    let mut seen_first = false;
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let token = line.split(',').next().unwrap_or("").trim();
        match token.parse::<f64>() {
            Ok(value) => {
                if !value.is_finite() || value < 0.0 {
                    return Err(Failure::Malformed(format!(
                        "line {line_no}: income {value} is not a nonnegative real"
                    )));
                }
                values.push(value);
            }
            Err(_) if !seen_first => {} // header line, skipped
            Err(_) => {
                return Err(Failure::Malformed(format!(
                    "line {line_no}: cannot parse {token:?} as a number"
                )));
            }
        }
        seen_first = true;
    }
    Ok(values)
}

/// Parses grouped data: `count,mean` per line, means nondecreasing.
pub fn parse_grouped(text: &str) -> Result<Vec<graduation::GroupBin>, Failure> {
    let mut bins = Vec::new();
    let mut seen_first = false;
    let mut previous_mean = f64::NEG_INFINITY;
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let first_numeric = fields[0].parse::<f64>().is_ok();
        if !first_numeric && !seen_first {
            seen_first = true; // header line, skipped
            continue;
        }
        seen_first = true;
        if fields.len() != 2 {
            return Err(Failure::Malformed(format!(
                "line {line_no}: expected count,mean but found {} field(s)",
                fields.len()
            )));
        }
        let count: u64 = fields[0].parse().map_err(|_| {
            Failure::Malformed(format!(
                "line {line_no}: cannot parse count {:?} as a nonnegative integer",
                fields[0]
            ))
        })?;
        let mean: f64 = fields[1].parse().map_err(|_| {
            Failure::Malformed(format!(
                "line {line_no}: cannot parse mean {:?} as a number",
                fields[1]
            ))
        })?;
        if !mean.is_finite() || mean < 0.0 {
            return Err(Failure::Malformed(format!(
                "line {line_no}: mean {mean} is not a nonnegative real"
            )));
        }
        if mean < previous_mean {
            return Err(Failure::Malformed(format!(
                "line {line_no}: bin means must be nondecreasing ({mean} after {previous_mean})"
            )));
        }
        previous_mean = mean;
        bins.push(graduation::GroupBin { count, mean });
    }
    Ok(bins)
}
