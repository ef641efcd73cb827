//! Grid specifications: `a,b,c` lists or `start:stop:count` ranges, with
//! `pi` accepted in any number (`pi`, `-pi`, `2pi`, `3*pi/4`).

use std::f64::consts::PI;

pub fn parse_scalar(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let bad = || format!("cannot parse number '{s}'");
    let Some(at) = t.find("pi") else {
        return t.parse::<f64>().map_err(|_| bad());
    };
    let coef = t[..at].trim_end_matches('*').trim();
    let coef = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let rest = t[at + 2..].trim();
    let div = match rest.strip_prefix('/') {
        Some(d) => d.trim().parse::<f64>().map_err(|_| bad())?,
        None if rest.is_empty() => 1.0,
        None => return Err(bad()),
    };
    Ok(coef * PI / div)
}

pub fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty grid".into());
    }
    if t.contains(':') {
        let parts: Vec<&str> = t.split(':').collect();
        let [start, stop, count] = parts[..] else {
            return Err(format!("range '{s}' must be start:stop:count"));
        };
        let (start, stop) = (parse_scalar(start)?, parse_scalar(stop)?);
        let count: usize = count.trim().parse().map_err(|_| format!("bad point count in '{s}'"))?;
        return match count {
            0 => Err(format!("range '{s}' has no points")),
            1 => Ok(vec![start]),
            _ => {
                let step = (stop - start) / (count - 1) as f64;
                Ok((0..count)
                    .map(|i| if i + 1 == count { stop } else { start + i as f64 * step })
                    .collect())
            }
        };
    }
    t.split(',').map(parse_scalar).collect()
}
