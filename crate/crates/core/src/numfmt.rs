// Copyright 2026 vsq Contributors
// SPDX-License-Identifier: Apache-2.0

//! Significant-digit float rendering matching C's `%g` conversion.
//!
//! Schedule CSV files use 17 significant digits so every `f64` survives a
//! round trip through text; matrix rendering uses 6 for readability. Rust's
//! `{:e}` format prints bare exponents (`e-7`), so this module reshapes the
//! output to the `%g` conventions: fixed notation when the decimal exponent
//! lies in `[-4, sig)`, otherwise scientific with a sign and at least two
//! exponent digits, trailing zeros stripped in both forms.

/// Renders `x` with `sig` significant digits, `%g` style.
pub(crate) fn format_g(x: f64, sig: usize) -> String {
    debug_assert!(sig >= 1);
    debug_assert!(x.is_finite());
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".to_owned() } else { "0".to_owned() };
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp_text) = sci.split_once('e').expect("{:e} always emits an exponent");
    let exp: i32 = exp_text.parse().expect("{:e} exponent is an integer");
    if exp >= -4 && exp < sig as i32 {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        strip_fraction_zeros(format!("{:.*}", decimals, x))
    } else {
        let mantissa = strip_fraction_zeros(mantissa.to_owned());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    }
}

/// Full-precision form used in CSV exports; round-trips any finite `f64`.
pub(crate) fn format_g17(x: f64) -> String {
    format_g(x, 17)
}

fn strip_fraction_zeros(text: String) -> String {
    if !text.contains('.') {
        return text;
    }
    text.trim_end_matches('0').trim_end_matches('.').to_owned()
}
