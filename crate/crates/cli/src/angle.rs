//! Angles as decimal radians or symbolic multiples of π.
//!
//! Accepted forms: `0.25`, `-1e-3`, `pi`, `-pi/2`, `3pi/8`, `3*pi/4`,
//! `π/4`, `2π`. The symbolic form is evaluated as `(n · π) / d`, so
//! `pi/4` is bit-identical to [`std::f64::consts::FRAC_PI_4`].

use std::f64::consts::PI;

pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty angle".into());
    }
    let lower = t.to_ascii_lowercase();
    let Some(at) = lower
        .find("pi")
        .map(|i| (i, 2))
        .or_else(|| lower.find('π').map(|i| (i, 'π'.len_utf8())))
    else {
        return finite(t.parse::<f64>().map_err(|_| format!("bad angle `{s}`"))?, s);
    };
    let (pos, len) = at;
    let (head, tail) = (&lower[..pos], &lower[pos + len..]);
    let head = head.trim().trim_end_matches('*').trim();
    let coeff = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| format!("bad coefficient in `{s}`"))?,
    };
    let tail = tail.trim();
    let den = if tail.is_empty() {
        1.0
    } else {
        let d = tail
            .strip_prefix('/')
            .ok_or_else(|| format!("unexpected `{tail}` in `{s}`"))?
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("bad denominator in `{s}`"))?;
        if d == 0.0 {
            return Err(format!("zero denominator in `{s}`"));
        }
        d
    };
    finite(coeff * PI / den, s)
}

fn finite(x: f64, s: &str) -> Result<f64, String> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("angle `{s}` is not finite"))
    }
}

/// One angle for all four qubits, or four comma-separated angles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thetas(pub [f64; 4]);

pub fn parse_thetas(s: &str) -> Result<Thetas, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [one] => Ok(Thetas([parse_angle(one)?; 4])),
        [a, b, c, d] => Ok(Thetas([
            parse_angle(a)?,
            parse_angle(b)?,
            parse_angle(c)?,
            parse_angle(d)?,
        ])),
        _ => Err(format!(
            "expected one angle or four comma-separated angles, got {}",
            parts.len()
        )),
    }
}

/// Inclusive linear grid `start:stop:count`, or a single angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    pub fn point(x: f64) -> Self {
        Self {
            start: x,
            stop: x,
            count: 1,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    self.stop
                } else {
                    self.start + step * k as f64
                }
            })
            .collect()
    }
}

pub fn parse_axis(s: &str) -> Result<Axis, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [x] => Ok(Axis::point(parse_angle(x)?)),
        [a, b, n] => {
            let count: usize = n.trim().parse().map_err(|_| format!("bad point count `{n}`"))?;
            if count == 0 {
                return Err("axis point count must be at least 1".into());
            }
            Ok(Axis {
                start: parse_angle(a)?,
                stop: parse_angle(b)?,
                count,
            })
        }
        _ => Err(format!("expected `start:stop:count` or a single angle, got `{s}`")),
    }
}
