//! Tree orders, the correspondence between marginal and coupling vectors,
//! the block-factor construction of Shearer's law and its exact
//! verification.
//!
//! Everything numeric is generic over [`Scalar`], implemented for `f64`
//! and for exact `BigRational`.

mod correspondence;
mod isp;
mod law;
mod order;
mod sample;

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub use correspondence::{
    c_from_p, default_tree_order, lll_lower_bound, p_from_c, region_membership, region_oracle,
    shearer_region_membership, PFromC, Region, RegionVerdict,
};
pub use isp::{isp, isp_subset, isp_table, ISP_LIMIT};
pub use law::{
    exact_block_factor_law, product_law, verify_shearer_law, CheckOutcome,
    CheckWitness, ExactLaw, ShearerReport, LAW_LIMIT,
};
pub use order::{build_tree_order, verify_tree_order, OrderViolation, TreeOrder};
pub use sample::{sample_block_factor, BlockFactorSampler};

/// Numeric field used by the correspondence solver and the exact law.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Zero
    + One
    + ToPrimitive
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Parses a decimal (`0.25`, `1e-3`) or a ratio `a/b`.
    fn parse(text: &str) -> Option<Self>;

    fn from_ratio(r: &BigRational) -> Self;

    fn abs_diff(&self, other: &Self) -> Self {
        if self >= other {
            self.clone() - other.clone()
        } else {
            other.clone() - self.clone()
        }
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn parse(text: &str) -> Option<Self> {
        match text.split_once('/') {
            Some((a, b)) => Some(a.trim().parse::<f64>().ok()? / b.trim().parse::<f64>().ok()?),
            None => text.trim().parse().ok(),
        }
    }

    fn from_ratio(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for BigRational {
    fn parse(text: &str) -> Option<Self> {
        parse_exact(text)
    }

    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }
}

/// Exact value of a decimal literal (optional exponent) or of `a/b`.
pub fn parse_exact(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((a, b)) = text.split_once('/') {
        let num: BigInt = a.trim().parse().ok()?;
        let den: BigInt = b.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all_digits.parse::<BigInt>().ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    for _ in 0..scale.unsigned_abs() {
        if scale > 0 {
            value *= ten.clone();
        } else {
            value /= ten.clone();
        }
    }
    Some(if negative { -value } else { value })
}

fn check_unit_interval<T: Scalar>(values: &[T]) -> Result<()> {
    for (vertex, x) in values.iter().enumerate() {
        if *x < T::zero() || *x > T::one() {
            return Err(Error::InvalidProbability {
                vertex,
                value: x.to_string(),
            });
        }
    }
    Ok(())
}

/// Marginal probabilities `p_v`, indexed by vertex id.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbVector<T>(Vec<T>);

/// Coupling probabilities `c_v`, indexed by vertex id.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingVector<T>(Vec<T>);

macro_rules! unit_vector {
    ($name:ident) => {
        impl<T: Scalar> $name<T> {
            pub fn new(values: Vec<T>) -> Result<Self> {
                check_unit_interval(&values)?;
                Ok($name(values))
            }

            pub fn values(&self) -> &[T] {
                &self.0
            }

            pub fn into_values(self) -> Vec<T> {
                self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> $name<U> {
                $name(self.0.iter().map(f).collect())
            }

            pub(crate) fn check_len(&self, n: usize) -> Result<()> {
                if self.0.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: self.0.len(),
                    });
                }
                Ok(())
            }
        }

        impl<T> std::ops::Index<VertexId> for $name<T> {
            type Output = T;
            fn index(&self, v: VertexId) -> &T {
                &self.0[v]
            }
        }
    };
}

unit_vector!(ProbVector);
unit_vector!(CouplingVector);

/// First vertex where solving for the coupling vector leaves `[0, 1]`.
/// `value` is `None` when the vertex has positive marginal over a vanishing
/// product.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NotInRegion {
    pub vertex: VertexId,
    pub value: Option<f64>,
}

impl Display for NotInRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Some(x) => write!(f, "not in region: coupling at vertex {} would be {x}", self.vertex),
            None => write!(
                f,
                "not in region: vertex {} has positive marginal over a zero product",
                self.vertex
            ),
        }
    }
}

/// Reads `vertexName value` lines (`#` comments, blank lines ignored).
/// Every vertex of `g` must appear exactly once.
pub fn parse_vector<T: Scalar>(text: &str, g: &Graph) -> Result<Vec<T>> {
    let mut values: Vec<Option<T>> = vec![None; g.vertex_count()];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => continue,
            [name, value] => {
                let v = g
                    .vertex_by_name(name)
                    .ok_or_else(|| Error::UnknownVertex(name.to_string()))?;
                let x = T::parse(value).ok_or_else(|| Error::Parse {
                    line,
                    reason: format!("cannot parse value `{value}`"),
                })?;
                if values[v].replace(x).is_some() {
                    return Err(Error::Parse {
                        line,
                        reason: format!("vertex `{name}` given twice"),
                    });
                }
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    reason: "expected `vertexName value`".into(),
                })
            }
        }
    }
    values
        .into_iter()
        .enumerate()
        .map(|(v, x)| {
            x.ok_or_else(|| Error::Parse {
                line: 0,
                reason: format!("no value for vertex `{}`", g.name(v)),
            })
        })
        .collect()
}

/// Renders values in the `vertexName value` format.
pub fn format_vector<T: Scalar>(values: &[T], g: &Graph) -> String {
    values
        .iter()
        .enumerate()
        .map(|(v, x)| format!("{} {}\n", g.name(v), x))
        .collect()
}
