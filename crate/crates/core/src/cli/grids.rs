//! Grid construction and parsing for scan flags.

/// `count` evenly spaced values from `min` to `max` inclusive.
pub fn lin_spaced(min: f64, max: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![min];
    }
    (0..count)
        .map(|i| min + (max - min) * i as f64 / (count - 1) as f64)
        .collect()
}

/// `count` log-spaced values from `min` to `max` inclusive (`min > 0`).
pub fn log_spaced(min: f64, max: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![min];
    }
    let ratio = max / min;
    (0..count)
        .map(|i| min * ratio.powf(i as f64 / (count - 1) as f64))
        .collect()
}

/// Parses a grid flag. Two forms are accepted:
///
/// * an explicit comma list: `0.5,1,2`;
/// * a range spec `min:max:count[:lin|log]`, e.g. `0.1:5:20:log`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty grid".into());
    }
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 && parts.len() != 4 {
            return Err(format!("expected min:max:count[:lin|log], got `{text}`"));
        }
        let min: f64 = parts[0].parse().map_err(|e| format!("bad min `{}`: {e}", parts[0]))?;
        let max: f64 = parts[1].parse().map_err(|e| format!("bad max `{}`: {e}", parts[1]))?;
        let count: usize =
            parts[2].parse().map_err(|e| format!("bad count `{}`: {e}", parts[2]))?;
        if count == 0 {
            return Err("count must be positive".into());
        }
        if !(min.is_finite() && max.is_finite() && min <= max) {
            return Err(format!("bad range {min}..{max}"));
        }
        match parts.get(3).copied().unwrap_or("lin") {
            "lin" => Ok(lin_spaced(min, max, count)),
            "log" => {
                if min <= 0.0 {
                    return Err("log spacing needs min > 0".into());
                }
                Ok(log_spaced(min, max, count))
            }
            other => Err(format!("unknown spacing `{other}` (use lin or log)")),
        }
    } else {
        text.split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| format!("bad grid value `{s}`: {e}"))
                    .and_then(|v| {
                        if v.is_finite() {
                            Ok(v)
                        } else {
                            Err(format!("grid value `{s}` is not finite"))
                        }
                    })
            })
            .collect()
    }
}
