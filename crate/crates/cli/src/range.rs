//! Grid flags: `start:stop:count[:log]`, `start:stop:log`, a comma list, or a
//! single number.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

/// Samples used when a range omits its count.
pub const DEFAULT_COUNT: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    source: String,
    values: Vec<f64>,
}

impl Grid {
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl Serialize for Grid {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.source)
    }
}

fn number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

fn linear(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    let step = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { b } else { a + step * i as f64 })
        .collect()
}

fn geometric(a: f64, b: f64, n: usize) -> Result<Vec<f64>, String> {
    if !(a > 0.0 && b > 0.0) {
        return Err("log ranges need positive endpoints".into());
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    let ratio = (b / a).ln() / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i + 1 == n { b } else { a * (ratio * i as f64).exp() })
        .collect())
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let parts: Vec<&str> = s.split(':').collect();
        let values = match parts.as_slice() {
            [one] => one.split(',').map(number).collect::<Result<Vec<_>, _>>()?,
            [a, b, "log"] => geometric(number(a)?, number(b)?, DEFAULT_COUNT)?,
            [a, b, n] | [a, b, n, "lin"] => linear(number(a)?, number(b)?, count(n)?),
            [a, b, n, "log"] => geometric(number(a)?, number(b)?, count(n)?)?,
            _ => return Err(format!("'{s}' is not start:stop:count[:log]")),
        };
        if values.is_empty() {
            return Err("empty grid".into());
        }
        Ok(Self {
            source: s.to_string(),
            values,
        })
    }
}

fn count(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("'{s}' is not a positive sample count")),
    }
}
