//! The line-oriented `.walk` protocol file format.
//!
//! One line per step, entries separated by whitespace, `#` starts a
//! comment, blank lines are skipped. Angles are written in degrees — the
//! wave-plate convention — and converted to radians on parse. Entries:
//!
//! ```text
//! x:THETA_DEG      half-wave-plate coin at angle THETA_DEG ∈ [0, 45]
//! x:id             explicit identity (what unlisted positions get anyway)
//! x:custom(a,b,c,d)            real 2×2 unitary, row-major
//! x:custom(a,b,c,d,e,f,g,h)    complex 2×2 unitary, re/im pairs row-major
//! ```
//!
//! A step with no coin anywhere is written `0:id`.

use num_complex::Complex64;

use crate::coin::{CoinAction, CoinOp, Protocol, StepSpec};
use crate::error::{Error, Result};
use crate::math::Mat2;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::ProtocolParse {
        line,
        message: message.into(),
    }
}

fn parse_custom(body: &str, x: i64, line: usize) -> Result<CoinOp> {
    let numbers: Vec<f64> = body
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| parse_err(line, format!("bad number {:?} in custom(): {e}", s.trim())))
        })
        .collect::<Result<_>>()?;
    let m = match numbers.len() {
        4 => Mat2::from_real([[numbers[0], numbers[1]], [numbers[2], numbers[3]]]),
        8 => Mat2([
            [
                Complex64::new(numbers[0], numbers[1]),
                Complex64::new(numbers[2], numbers[3]),
            ],
            [
                Complex64::new(numbers[4], numbers[5]),
                Complex64::new(numbers[6], numbers[7]),
            ],
        ]),
        n => {
            return Err(parse_err(
                line,
                format!("custom() takes 4 real or 8 re,im numbers, got {n}"),
            ))
        }
    };
    CoinOp::from_matrix(m, x).map_err(|e| parse_err(line, e.to_string()))
}

/// Parse a protocol file. Errors carry the 1-based line number.
pub fn parse_protocol(text: &str) -> Result<Protocol> {
    let mut steps = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut spec = StepSpec::new();
        for token in content.split_whitespace() {
            let (pos, action) = token
                .split_once(':')
                .ok_or_else(|| parse_err(line, format!("entry {token:?} is not x:action")))?;
            let x: i64 = pos
                .parse()
                .map_err(|e| parse_err(line, format!("bad position {pos:?}: {e}")))?;
            if spec.coins().contains_key(&x) {
                return Err(parse_err(line, format!("position {x} listed twice")));
            }
            if action == "id" {
                spec.set(x, CoinAction::Identity);
            } else if let Some(body) = action
                .strip_prefix("custom(")
                .and_then(|rest| rest.strip_suffix(')'))
            {
                spec.set(x, CoinAction::Custom(parse_custom(body, x, line)?));
            } else {
                let degrees: f64 = action.parse().map_err(|e| {
                    parse_err(line, format!("bad action {action:?} (want angle in degrees, id, or custom(...)): {e}"))
                })?;
                if !(0.0..=45.0).contains(&degrees) {
                    return Err(parse_err(
                        line,
                        format!("angle {degrees}° at x = {x} is outside [0, 45]"),
                    ));
                }
                spec.set(x, CoinAction::Angle(degrees.to_radians()));
            }
        }
        steps.push(spec);
    }
    if steps.is_empty() {
        return Err(parse_err(
            text.lines().count().max(1),
            "no steps found".to_string(),
        ));
    }
    Protocol::new(steps)
}

fn format_complex_pair(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

/// Render a protocol in the `.walk` format; `parse_protocol` of the
/// output reproduces the protocol.
pub fn format_protocol(protocol: &Protocol) -> String {
    let mut out = String::new();
    for spec in protocol.steps() {
        if spec.is_empty() {
            out.push_str("0:id\n");
            continue;
        }
        let entries: Vec<String> = spec
            .coins()
            .iter()
            .map(|(&x, action)| match action {
                CoinAction::Identity => format!("{x}:id"),
                CoinAction::Angle(theta) => format!("{x}:{}", theta.to_degrees()),
                CoinAction::Custom(op) => {
                    let m = op.matrix().0;
                    let all_real = m.iter().flatten().all(|z| z.im == 0.0);
                    let body: Vec<String> = if all_real {
                        m.iter().flatten().map(|z| z.re.to_string()).collect()
                    } else {
                        m.iter().flatten().map(|z| format_complex_pair(*z)).collect()
                    };
                    format!("{x}:custom({})", body.join(","))
                }
            })
            .collect();
        out.push_str(&entries.join(" "));
        out.push('\n');
    }
    out
}
