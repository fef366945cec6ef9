//! Parsing of `--support "a0, c·cos(kθ/d), ..."` strings.

use regex::Regex;
use secant_caustic::TrigSeries;

/// Parses a constant term followed by comma-separated harmonics. `θ` may be
/// written `theta` or `t`; the frequency `k/d` must be a multiple of `1/n`.
pub fn parse_support(text: &str, n: u32) -> Result<TrigSeries, String> {
    if n == 0 {
        return Err("--n must be positive".into());
    }
    let term = Regex::new(
        r"^([+-]?)\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*(cos|sin)\(\s*(\d*)\s*(?:θ|theta|t)\s*(?:/\s*(\d+))?\s*\)$",
    )
    .expect("valid pattern");
    let mut parts = text.split(',').map(str::trim);
    let a0_text = parts.next().unwrap_or("");
    let a0: f64 = a0_text.parse().map_err(|_| format!("constant term {a0_text:?} is not a number"))?;
    let (mut cos, mut sin) = (Vec::new(), Vec::new());
    for part in parts {
        let caps = term.captures(part).ok_or_else(|| format!("cannot parse harmonic {part:?}"))?;
        let mut coef: f64 = caps.get(2).map_or(Ok(1.0), |m| m.as_str().parse()).map_err(|_| format!("bad coefficient in {part:?}"))?;
        if &caps[1] == "-" {
            coef = -coef;
        }
        let num: u32 = match &caps[4] {
            "" => 1,
            s => s.parse().map_err(|_| format!("bad frequency in {part:?}"))?,
        };
        let den: u32 = caps.get(5).map_or(Ok(1), |m| m.as_str().parse()).map_err(|_| format!("bad frequency in {part:?}"))?;
        if den == 0 || (num * n) % den != 0 || num == 0 {
            return Err(format!("frequency {num}/{den} in {part:?} is not a positive multiple of 1/{n}"));
        }
        let k = num * n / den;
        if &caps[3] == "cos" {
            cos.push((k, coef));
        } else {
            sin.push((k, coef));
        }
    }
    if !a0.is_finite() || cos.iter().chain(&sin).any(|(_, c)| !c.is_finite()) {
        return Err("coefficients must be finite".into());
    }
    Ok(TrigSeries::from_terms(n, a0, &cos, &sin))
}
