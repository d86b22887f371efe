//! Exact-or-logarithmic representation of very large counts.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// A single multiplicative term of a factored count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `base ^ exponent`
    Power { base: u64, exponent: BigUint },
    /// `n!`
    Factorial(BigUint),
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Power { base, exponent } => write!(f, "{base}^{exponent}"),
            Factor::Factorial(n) => write!(f, "{n}!"),
        }
    }
}

/// A nonnegative integer that may be too large to materialize. `log2` is
/// always present and within `log2_error` of the true value; `exact` is
/// filled whenever the value has at most the configured number of digits.
#[derive(Clone, Debug, PartialEq)]
pub struct BigCount {
    pub exact: Option<BigUint>,
    pub log2: f64,
    pub log2_error: f64,
    pub factored: Vec<Factor>,
}

impl BigCount {
    /// Product of `factors`, materialized when at most `max_digits` digits.
    pub fn from_factors(factors: Vec<Factor>, max_digits: u64) -> Self {
        let mut log2 = 0.0;
        let mut err = 0.0;
        for f in &factors {
            let (v, e) = factor_log2(f);
            log2 += v;
            err += e;
        }
        err += log2.abs() * 4.0 * f64::EPSILON * (factors.len() as f64 + 1.0);
        let digits = log2 * std::f64::consts::LOG10_2;
        let exact = if digits <= max_digits as f64 {
            let mut acc = BigUint::one();
            for f in &factors {
                acc *= factor_exact(f);
            }
            Some(acc)
        } else {
            None
        };
        if let Some(x) = &exact {
            // an exact value pins log2 to machine precision
            log2 = log2_biguint(x);
            err = log2.abs() * 4.0 * f64::EPSILON;
        }
        let factored = factors.into_iter().filter(|f| !is_unit(f)).collect();
        BigCount { exact, log2, log2_error: err, factored }
    }

    pub fn from_exact(x: BigUint) -> Self {
        let log2 = log2_biguint(&x);
        BigCount { log2_error: log2.abs() * 4.0 * f64::EPSILON, log2, exact: Some(x), factored: Vec::new() }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.exact.as_ref().and_then(|x| x.to_u64())
    }

    /// Decimal digit count, exact when the value is materialized. `None`
    /// when the estimate does not fit in a `u64`.
    pub fn decimal_digits(&self) -> Option<u64> {
        match &self.exact {
            Some(x) if x.is_zero() => Some(1),
            Some(x) => Some(x.to_string().len() as u64),
            None => {
                let d = (self.log2 * std::f64::consts::LOG10_2).floor();
                (d.is_finite() && d < u64::MAX as f64).then(|| d as u64 + 1)
            }
        }
    }

    pub fn factored_string(&self) -> String {
        if self.factored.is_empty() {
            return "1".into();
        }
        self.factored.iter().map(ToString::to_string).collect::<Vec<_>>().join(" * ")
    }
}

fn is_unit(f: &Factor) -> bool {
    match f {
        Factor::Power { base, exponent } => *base == 1 || exponent.is_zero(),
        Factor::Factorial(n) => *n <= BigUint::one(),
    }
}

/// log2 of a big integer from its leading 64 bits.
pub fn log2_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().unwrap() as f64).log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap();
    (top as f64).log2() + shift as f64
}

fn biguint_f64(x: &BigUint) -> f64 {
    log2_biguint(x).exp2()
}

/// Returns `(log2, error bound)` for one factor.
fn factor_log2(f: &Factor) -> (f64, f64) {
    match f {
        Factor::Power { base, exponent } => {
            if *base == 0 {
                return if exponent.is_zero() { (0.0, 0.0) } else { (f64::NEG_INFINITY, 0.0) };
            }
            let v = biguint_f64(exponent) * (*base as f64).log2();
            (v, v.abs() * 4.0 * f64::EPSILON)
        }
        Factor::Factorial(n) => log2_factorial(n),
    }
}

const EXACT_LOG_SUM_LIMIT: u64 = 1 << 20;

/// `log2(n!)` with an error bound. Small arguments are summed directly;
/// larger ones use Stirling's series truncated after the `1/(12n)` term,
/// whose remainder is below `1/(360 n^3 ln 2)`.
pub fn log2_factorial(n: &BigUint) -> (f64, f64) {
    if let Some(small) = n.to_u64().filter(|&v| v <= EXACT_LOG_SUM_LIMIT) {
        // compensated summation keeps the rounding error near one ulp of the total
        let (mut v, mut c) = (0.0f64, 0.0f64);
        for k in 2..=small {
            let y = (k as f64).log2() - c;
            let t = v + y;
            c = (t - v) - y;
            v = t;
        }
        let per_term = (small.max(2) as f64).log2() * f64::EPSILON;
        return (v, small as f64 * per_term + 4.0 * v.abs() * f64::EPSILON);
    }
    let x = biguint_f64(n);
    let ln2 = std::f64::consts::LN_2;
    let v = x * x.log2() - x / ln2 + 0.5 * (2.0 * std::f64::consts::PI * x).log2() + 1.0 / (12.0 * x * ln2);
    (v, 1.0 / (360.0 * x * x * x * ln2) + v.abs() * 16.0 * f64::EPSILON)
}

fn factor_exact(f: &Factor) -> BigUint {
    match f {
        Factor::Power { base, exponent } => {
            if *base <= 1 || exponent.is_zero() {
                return if exponent.is_zero() { BigUint::one() } else { BigUint::from(*base) };
            }
            let e = exponent.to_u32().expect("exponent fits the digit budget");
            BigUint::from(*base).pow(e)
        }
        Factor::Factorial(n) => factorial(n.to_u64().expect("factorial argument fits the digit budget")),
    }
}

/// `n!` by a balanced product tree.
pub fn factorial(n: u64) -> BigUint {
    fn range_product(lo: u64, hi: u64) -> BigUint {
        if hi < lo {
            return BigUint::one();
        }
        if hi - lo < 16 {
            return (lo..=hi).fold(BigUint::one(), |acc, k| acc * k);
        }
        let mid = lo + (hi - lo) / 2;
        range_product(lo, mid) * range_product(mid + 1, hi)
    }
    range_product(2, n)
}
