//! Exact decimal quantities.
//!
//! Weights and class thresholds are entered as decimal strings and kept as
//! reduced fractions so that equality tests such as `support == 1` are exact.

use alloc::string::{String, ToString};

use num_rational::Ratio;
use num_traits::{One, Zero};

/// Non-negative exact fraction.
pub type Rational = Ratio<u128>;

/// At most this many fractional digits are accepted, so every denominator is
/// a divisor of 10^18 and sums of weights stay far inside `u128`.
pub const MAX_FRACTION_DIGITS: usize = 18;

const MAX_INTEGER_DIGITS: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecimalError {
    #[error("empty decimal")]
    Empty,
    #[error("invalid decimal {0:?}: expected digits with an optional fractional part")]
    Malformed(String),
    #[error("decimal {0:?} has more than 18 integer or fractional digits")]
    TooPrecise(String),
}

/// Parses `123`, `0.7`, `.5` or `1.` into an exact fraction. Signs and
/// exponents are rejected.
pub fn parse_decimal(text: &str) -> Result<Rational, DecimalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(DecimalError::Empty);
    }
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if (int_part.is_empty() && frac_part.is_empty())
        || !all_digits(int_part)
        || !all_digits(frac_part)
    {
        return Err(DecimalError::Malformed(s.to_string()));
    }
    if int_part.len() > MAX_INTEGER_DIGITS || frac_part.len() > MAX_FRACTION_DIGITS {
        return Err(DecimalError::TooPrecise(s.to_string()));
    }
    let digits = |p: &str| -> u128 {
        p.bytes()
            .fold(0u128, |acc, b| acc * 10 + u128::from(b - b'0'))
    };
    let denom = 10u128.pow(frac_part.len() as u32);
    let numer = digits(int_part) * denom + digits(frac_part);
    Ok(Rational::new(numer, denom))
}

/// Nearest `f64`; exact-rounded when both terms fit in 53 bits.
pub fn to_f64(r: &Rational) -> f64 {
    const EXACT: u128 = 1 << 53;
    let (n, d) = (*r.numer(), *r.denom());
    if n < EXACT && d < EXACT {
        return n as f64 / d as f64;
    }
    let mut rem = n % d;
    let mut bits = 0u64;
    for _ in 0..64 {
        let (doubled, overflow) = rem.overflowing_mul(2);
        bits <<= 1;
        if overflow || doubled >= d {
            bits |= 1;
            rem = doubled.wrapping_sub(d);
        } else {
            rem = doubled;
        }
    }
    (n / d) as f64 + bits as f64 / 18_446_744_073_709_551_616.0
}

/// Fixed-point rendering with exactly `places` fractional digits, rounding
/// half away from zero. Computed by long division, so any `Ratio<u128>` is
/// rendered without overflow.
pub fn format_fixed(r: &Rational, places: u32) -> String {
    let (n, d) = (*r.numer(), *r.denom());
    let mut int = n / d;
    let mut rem = n % d;
    let mut digits = alloc::vec::Vec::with_capacity(places as usize);
    for _ in 0..places {
        let (q, next) = times_ten_div(rem, d);
        digits.push(q);
        rem = next;
    }
    let half_or_more = rem >= d - rem;
    if half_or_more {
        let mut carry = true;
        for digit in digits.iter_mut().rev() {
            if *digit == 9 {
                *digit = 0;
            } else {
                *digit += 1;
                carry = false;
                break;
            }
        }
        if carry {
            int += 1;
        }
    }
    let mut out = int.to_string();
    if places > 0 {
        out.push('.');
        out.extend(digits.iter().map(|&g| char::from(b'0' + g)));
    }
    out
}

/// `(10·rem / d, 10·rem mod d)` for `rem < d`, without overflowing.
fn times_ten_div(rem: u128, d: u128) -> (u8, u128) {
    let mut q = 0u8;
    let mut acc = 0u128;
    for _ in 0..10 {
        // acc < d, so acc + rem either fits or is at least d.
        let room = d - acc;
        if rem >= room {
            acc = rem - room;
            q += 1;
        } else {
            acc += rem;
        }
    }
    (q, acc)
}

/// Shortest decimal rendering: exact when the fraction terminates within
/// `max_places` digits, otherwise rounded to `max_places` with trailing zeros
/// removed.
pub fn format_decimal(r: &Rational, max_places: u32) -> String {
    let mut s = format_fixed(r, max_places);
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// `100·r` as a compact decimal, e.g. `0.05 -> "5"`, `0.125 -> "12.5"`.
pub fn format_percent(r: &Rational) -> String {
    format_decimal(&(r * Rational::from_integer(100)), 6)
}

pub fn is_unit_interval(r: &Rational) -> bool {
    *r <= Rational::one() && *r >= Rational::zero()
}
