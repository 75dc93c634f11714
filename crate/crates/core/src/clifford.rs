//! Real Clifford algebra `Cl(0,n)` for `n <= 4` and Hamilton quaternions.
//!
//! Basis blades `e_A` are indexed by bitmask: bit `j-1` set means generator
//! `e_j` occurs in the ordered product. The empty mask is the scalar slot.
//! Generators anticommute and square to `-1`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Largest supported number of generators.
pub const MAX_GENERATORS: usize = 4;
const MAX_BLADES: usize = 1 << MAX_GENERATORS;

/// Sign of `e_A e_B` relative to `e_{A xor B}`.
#[inline]
pub fn blade_product_sign(a: usize, b: usize) -> i32 {
    // transpositions needed to bring the concatenation into canonical order
    let mut swaps = 0u32;
    let mut shifted = a >> 1;
    while shifted != 0 {
        swaps += (shifted & b).count_ones();
        shifted >>= 1;
    }
    // each repeated generator contributes e_j^2 = -1
    let squares = (a & b).count_ones();
    if (swaps + squares) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the Clifford conjugate on a blade of the given grade:
/// `(-1)^{g(g+1)/2}`.
#[inline]
pub fn conjugation_sign(grade: u32) -> i32 {
    if (grade * (grade + 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Element of `Cl(0,n)` stored densely over all `2^n` blades.
#[derive(Clone, Copy, PartialEq)]
pub struct Multivector<T> {
    dim: usize,
    coeffs: [T; MAX_BLADES],
}

impl<T: Scalar> Multivector<T> {
    /// The zero element of `Cl(0,dim)`.
    pub fn zero(dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_GENERATORS {
            return Err(Error::UnsupportedDimension(dim));
        }
        Ok(Self {
            dim,
            coeffs: [T::zero(); MAX_BLADES],
        })
    }

    pub fn scalar(dim: usize, s: T) -> Result<Self> {
        let mut m = Self::zero(dim)?;
        m.coeffs[0] = s;
        Ok(m)
    }

    /// Basis blade `e_A` for the given bitmask.
    pub fn blade(dim: usize, mask: usize) -> Result<Self> {
        let mut m = Self::zero(dim)?;
        if mask >= m.len() {
            return Err(Error::Domain(format!("blade mask {mask:#b} outside Cl(0,{dim})")));
        }
        m.coeffs[mask] = T::one();
        Ok(m)
    }

    /// Generator `e_k`, `1 <= k <= dim`.
    pub fn generator(dim: usize, k: usize) -> Result<Self> {
        if k == 0 || k > dim {
            return Err(Error::Domain(format!("generator e_{k} outside Cl(0,{dim})")));
        }
        Self::blade(dim, 1 << (k - 1))
    }

    /// Paravector `x0 + x1 e_1 + ... + xn e_n`; `vector.len()` must not exceed `dim`.
    pub fn paravector(dim: usize, x0: T, vector: &[T]) -> Result<Self> {
        if vector.len() > dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: vector.len(),
            });
        }
        let mut m = Self::scalar(dim, x0)?;
        for (k, &v) in vector.iter().enumerate() {
            m.coeffs[1 << k] = v;
        }
        Ok(m)
    }

    /// Builds an element from its `2^dim` coefficients.
    pub fn from_coeffs(dim: usize, coeffs: &[T]) -> Result<Self> {
        let mut m = Self::zero(dim)?;
        if coeffs.len() != m.len() {
            return Err(Error::DimensionMismatch {
                left: m.len(),
                right: coeffs.len(),
            });
        }
        m.coeffs[..coeffs.len()].copy_from_slice(coeffs);
        Ok(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of blades, `2^dim`.
    #[inline]
    pub fn len(&self) -> usize {
        1 << self.dim
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs[..self.len()]
    }

    #[inline]
    pub fn get(&self, mask: usize) -> T {
        self.coeffs[mask]
    }

    #[inline]
    pub fn set(&mut self, mask: usize, value: T) {
        assert!(mask < self.len(), "blade mask outside the algebra");
        self.coeffs[mask] = value;
    }

    /// Scalar part `Sc(x)`.
    #[inline]
    pub fn sc(&self) -> T {
        self.coeffs[0]
    }

    /// Non-scalar part `NSc(x)`.
    pub fn nsc(&self) -> Self {
        let mut m = *self;
        m.coeffs[0] = T::zero();
        m
    }

    /// Geometric product; fails when the operands live in different algebras.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let n = self.len();
        let mut out = [T::zero(); MAX_BLADES];
        for a in 0..n {
            let xa = self.coeffs[a];
            if xa == T::zero() {
                continue;
            }
            for b in 0..n {
                let yb = rhs.coeffs[b];
                if yb == T::zero() {
                    continue;
                }
                let p = xa * yb;
                if blade_product_sign(a, b) > 0 {
                    out[a ^ b] = out[a ^ b] + p;
                } else {
                    out[a ^ b] = out[a ^ b] - p;
                }
            }
        }
        Ok(Self {
            dim: self.dim,
            coeffs: out,
        })
    }

    fn map_blades(&self, sign: impl Fn(u32) -> i32) -> Self {
        let mut m = *self;
        for mask in 0..self.len() {
            if sign(mask.count_ones()) < 0 {
                m.coeffs[mask] = -m.coeffs[mask];
            }
        }
        m
    }

    /// Reversion: reverses the order of generators in each blade.
    pub fn reverse(&self) -> Self {
        self.map_blades(|g| if (g * g.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 })
    }

    /// Grade involution: `e_j -> -e_j`.
    pub fn grade_involution(&self) -> Self {
        self.map_blades(|g| if g % 2 == 0 { 1 } else { -1 })
    }

    /// Clifford conjugation `x -> x̄`, the composition of reversion and grade
    /// involution. It is an anti-automorphism with `Sc(x x̄) = Σ_A x_A²`.
    pub fn conj(&self) -> Self {
        self.map_blades(conjugation_sign)
    }

    /// `Σ_A x_A²`.
    pub fn norm_sqr(&self) -> T {
        self.coeffs()
            .iter()
            .fold(T::zero(), |acc, &c| acc + c * c)
    }

    pub fn scale(&self, s: T) -> Self {
        let mut m = *self;
        for c in m.coeffs.iter_mut() {
            *c = *c * s;
        }
        m
    }

    /// True when only grades 0 and 1 are populated.
    pub fn is_paravector(&self) -> bool {
        (0..self.len()).all(|mask| mask.count_ones() <= 1 || self.coeffs[mask] == T::zero())
    }
}

impl<T: Real> Multivector<T> {
    /// `|x| = sqrt(Σ_A x_A²)`.
    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_finite())
    }

    /// Largest coefficient difference; handy for approximate comparisons.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.coeffs()
            .iter()
            .zip(other.coeffs())
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()))
    }
}

impl<T: Scalar> Add for Multivector<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "algebra dimension mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a = *a + *b;
        }
        self
    }
}

impl<T: Scalar> AddAssign for Multivector<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: Scalar> Sub for Multivector<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "algebra dimension mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a = *a - *b;
        }
        self
    }
}

impl<T: Scalar> Neg for Multivector<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

/// Geometric product. Panics on a dimension mismatch; use
/// [`Multivector::checked_mul`] for a fallible version.
impl<T: Scalar> Mul for Multivector<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        match self.checked_mul(&rhs) {
            Ok(m) => m,
            Err(e) => panic!("{e}"),
        }
    }
}

impl<T: Scalar> Mul<T> for Multivector<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        self.scale(rhs)
    }
}

impl<T: Scalar> fmt::Debug for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl(0,{})[", self.dim)?;
        for (mask, c) in self.coeffs().iter().enumerate() {
            if mask > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{c:?}", blade_label(mask))?;
        }
        write!(f, "]")
    }
}

/// Human-readable blade name, `1`, `e1`, `e12`, ...
pub fn blade_label(mask: usize) -> String {
    if mask == 0 {
        return "1".into();
    }
    let mut s = String::from("e");
    for j in 0..MAX_GENERATORS {
        if mask & (1 << j) != 0 {
            s.push_str(&(j + 1).to_string());
        }
    }
    s
}

/// Hamilton quaternion `w + x i + y j + z k`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Quaternion<T> {
    pub const fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(&self) -> T {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Image in `Cl(0,2)` under `i -> e1`, `j -> e2`, `k -> e1e2`.
    pub fn to_cl02(&self) -> Multivector<T> {
        Multivector::from_coeffs(2, &[self.w, self.x, self.y, self.z])
            .expect("Cl(0,2) has four blades")
    }

    /// Inverse of [`Quaternion::to_cl02`].
    pub fn from_cl02(m: &Multivector<T>) -> Result<Self> {
        if m.dim() != 2 {
            return Err(Error::DimensionMismatch {
                left: 2,
                right: m.dim(),
            });
        }
        Ok(Self::new(m.get(0), m.get(1), m.get(2), m.get(3)))
    }
}

impl<T: Real> Quaternion<T> {
    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == T::zero() {
            return Err(Error::Domain("zero quaternion has no inverse".into()));
        }
        Ok(self.conj().scale(T::one() / n2))
    }
}

impl<T: Scalar> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, q: Self) -> Self {
        let p = self;
        Self::new(
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
        )
    }
}

impl<T: Scalar> Mul<T> for Quaternion<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        self.scale(s)
    }
}

impl<T: Scalar> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, q: Self) -> Self {
        Self::new(self.w + q.w, self.x + q.x, self.y + q.y, self.z + q.z)
    }
}

impl<T: Scalar> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, q: Self) -> Self {
        Self::new(self.w - q.w, self.x - q.x, self.y - q.y, self.z - q.z)
    }
}

impl<T: Scalar> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Values a hypercomplex field can take: an associative algebra with a
/// conjugation, a scalar part and the imaginary units used by the
/// Cauchy–Riemann (Dirac/Fueter) operator `½(∂₀ + Σ u_k ∂_k)`.
pub trait Hypercomplex: Copy + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {
    /// Number of imaginary units `u_1..u_m`, so field points live in `R^{m+1}`.
    fn unit_count(&self) -> usize;
    /// `u_k`, with `u_0 = 1`.
    fn unit(&self, k: usize) -> Self;
    fn zero_like(&self) -> Self;
    fn conj(&self) -> Self;
    fn scalar_part(&self) -> f64;
    fn norm_sqr(&self) -> f64;
    fn scale(&self, s: f64) -> Self;
    /// `x0 + Σ x_k u_k` for `coords = [x0, x1, ..]`.
    fn paravector_like(&self, coords: &[f64]) -> Self {
        coords
            .iter()
            .enumerate()
            .fold(self.zero_like(), |acc, (k, &c)| acc + self.unit(k).scale(c))
    }
    fn is_finite(&self) -> bool;
}

impl Hypercomplex for Multivector<f64> {
    fn unit_count(&self) -> usize {
        self.dim
    }

    fn unit(&self, k: usize) -> Self {
        if k == 0 {
            Multivector::scalar(self.dim, 1.0).expect("valid dimension")
        } else {
            Multivector::generator(self.dim, k).expect("generator index within the algebra")
        }
    }

    fn zero_like(&self) -> Self {
        Multivector::zero(self.dim).expect("valid dimension")
    }

    fn conj(&self) -> Self {
        Multivector::conj(self)
    }

    fn scalar_part(&self) -> f64 {
        self.sc()
    }

    fn norm_sqr(&self) -> f64 {
        Multivector::norm_sqr(self)
    }

    fn scale(&self, s: f64) -> Self {
        Multivector::scale(self, s)
    }

    fn is_finite(&self) -> bool {
        Multivector::is_finite(self)
    }
}

impl Hypercomplex for Quaternion<f64> {
    fn unit_count(&self) -> usize {
        3
    }

    fn unit(&self, k: usize) -> Self {
        match k {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::j(),
            3 => Self::k(),
            _ => panic!("quaternion unit index {k} out of range"),
        }
    }

    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn conj(&self) -> Self {
        Quaternion::conj(self)
    }

    fn scalar_part(&self) -> f64 {
        self.w
    }

    fn norm_sqr(&self) -> f64 {
        Quaternion::norm_sqr(self)
    }

    fn scale(&self, s: f64) -> Self {
        Quaternion::scale(self, s)
    }

    fn is_finite(&self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}
