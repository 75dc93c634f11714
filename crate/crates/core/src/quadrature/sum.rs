//! Fixed-tree pairwise summation.
//!
//! The split points depend only on the slice length, so a sum is bitwise
//! reproducible no matter how the summands were produced.

use crate::clifford::{Multivector, Quaternion};
use crate::scalar::Real;

const LEAF: usize = 8;

/// Values that can be accumulated by a quadrature rule with weights in `T`.
pub trait Integrable<T>: Clone + Send + Sync {
    fn zero_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn scaled(&self, w: T) -> Self;
    fn all_finite(&self) -> bool;
}

impl<T: Real> Integrable<T> for T {
    fn zero_like(&self) -> Self {
        T::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        *self + *other
    }
    fn scaled(&self, w: T) -> Self {
        *self * w
    }
    fn all_finite(&self) -> bool {
        self.is_finite()
    }
}

impl<T: Real> Integrable<T> for Multivector<T> {
    fn zero_like(&self) -> Self {
        Multivector::zero(self.dim()).expect("existing element has a valid dimension")
    }
    fn plus(&self, other: &Self) -> Self {
        *self + *other
    }
    fn scaled(&self, w: T) -> Self {
        self.scale(w)
    }
    fn all_finite(&self) -> bool {
        self.is_finite()
    }
}

impl<T: Real> Integrable<T> for Quaternion<T> {
    fn zero_like(&self) -> Self {
        Quaternion::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        *self + *other
    }
    fn scaled(&self, w: T) -> Self {
        self.scale(w)
    }
    fn all_finite(&self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// Pairwise sum of a non-empty slice of integrable values.
pub fn pairwise<T, V: Integrable<T>>(xs: &[V]) -> Option<V> {
    match xs.len() {
        0 => None,
        n if n <= LEAF => {
            let mut acc = xs[0].clone();
            for x in &xs[1..] {
                acc = acc.plus(x);
            }
            Some(acc)
        }
        n => {
            let (l, r) = xs.split_at(n / 2);
            let a = pairwise::<T, V>(l)?;
            let b = pairwise::<T, V>(r)?;
            Some(a.plus(&b))
        }
    }
}

/// Pairwise sum of scalars; the empty sum is zero.
pub fn pairwise_sum<T: Real>(xs: &[T]) -> T {
    pairwise::<T, T>(xs).unwrap_or_else(T::zero)
}
