//! Scalar abstraction shared by probabilities, weights and LP coefficients.
//!
//! Every numeric routine in the crate is written against [`Scalar`]. Floats
//! are accepted where an approximate answer is meaningful (reliability
//! evaluation, spanning tree weights); decisions that hinge on exact
//! comparisons (separability margins, certificates) additionally require
//! [`Exact`].

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

/// Ordered field element usable throughout the crate.
pub trait Scalar: Clone + Debug + Display + PartialOrd + Signed + Send + Sync + 'static {
    fn from_int(value: i64) -> Self;

    fn ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    /// Sums `table[σ] · Π p_i^{σ_i} (1-p_i)^{1-σ_i}` over all words, with
    /// `table` indexed by state word (component 1 is the most significant
    /// bit). The default folds one component at a time.
    fn weighted_table_sum(table: &[bool], probs: &[Self]) -> Self {
        debug_assert_eq!(table.len(), 1usize << probs.len());
        let mut values: Vec<Self> = table
            .iter()
            .map(|&b| if b { Self::one() } else { Self::zero() })
            .collect();
        // the least significant bit belongs to the last component
        for p in probs.iter().rev() {
            let q = Self::one() - p.clone();
            values = values
                .chunks_exact(2)
                .map(|pair| q.clone() * pair[0].clone() + p.clone() * pair[1].clone())
                .collect();
        }
        values.pop().unwrap_or_else(Self::zero)
    }

    /// Smallest value of the slice, `None` when empty.
    fn min_of(values: &[Self]) -> Option<Self> {
        values.iter().fold(None, |acc: Option<Self>, v| match acc {
            Some(a) if a <= *v => Some(a),
            _ => Some(v.clone()),
        })
    }
}

/// Scalars with exact arithmetic (no rounding, total order).
pub trait Exact: Scalar + Ord + std::hash::Hash + Eq {
    /// Smallest positive factor turning every value into an integer, so the
    /// scaled values are coprime integers. `None` when all values are zero.
    fn integral_scale(values: &[Self]) -> Option<Self>;
}

fn ratio_integral_scale<I>(values: &[Ratio<I>]) -> Option<Ratio<I>>
where
    I: Clone + num_integer::Integer + Signed,
{
    let lcm = values.iter().fold(I::one(), |acc, v| acc.lcm(v.denom()));
    let gcd = values
        .iter()
        .map(|v| (v.numer().clone() * (lcm.clone() / v.denom().clone())).abs())
        .fold(I::zero(), |acc, x| acc.gcd(&x));
    (!gcd.is_zero()).then(|| Ratio::new(lcm, gcd))
}

macro_rules! impl_float {
    ($f:ty) => {
        impl Scalar for $f {
            fn from_int(value: i64) -> Self {
                value as $f
            }
        }
    };
}

impl_float!(f32);
impl_float!(f64);

impl Scalar for Ratio<i64> {
    fn from_int(value: i64) -> Self {
        Ratio::from_integer(value)
    }
}

impl Exact for Ratio<i64> {
    fn integral_scale(values: &[Self]) -> Option<Self> {
        ratio_integral_scale(values)
    }
}

impl Scalar for BigRational {
    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    // Scale every probability to a common denominator and fold in integers;
    // reduces once at the end instead of at every step.
    fn weighted_table_sum(table: &[bool], probs: &[Self]) -> Self {
        debug_assert_eq!(table.len(), 1usize << probs.len());
        let mut values: Vec<BigInt> = table
            .iter()
            .map(|&b| if b { BigInt::one() } else { BigInt::zero() })
            .collect();
        let mut denominator = BigInt::one();
        for p in probs.iter().rev() {
            let up = p.numer().clone();
            let down = p.denom() - &up;
            denominator *= p.denom();
            values = values
                .chunks_exact(2)
                .map(|pair| &down * &pair[0] + &up * &pair[1])
                .collect();
        }
        match values.pop() {
            Some(total) => BigRational::new(total, denominator),
            None => BigRational::zero(),
        }
    }
}

impl Exact for BigRational {
    fn integral_scale(values: &[Self]) -> Option<Self> {
        ratio_integral_scale(values)
    }
}
