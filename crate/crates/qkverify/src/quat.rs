//! Plain quaternion arithmetic and the identification of R^{4n} with H^n.
//!
//! Coordinate layout: slot m of H^n occupies real coordinates 4m..4m+4 as the
//! coefficients of (1, i, j, k).

use nalgebra::DVector;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const ONE: Quat = Quat { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };
pub const I: Quat = Quat { w: 0.0, x: 1.0, y: 0.0, z: 0.0 };
pub const J: Quat = Quat { w: 0.0, x: 0.0, y: 1.0, z: 0.0 };
pub const K: Quat = Quat { w: 0.0, x: 0.0, y: 0.0, z: 1.0 };

/// The basis (1, i, j, k) in slot order.
pub const UNITS: [Quat; 4] = [ONE, I, J, K];

/// The imaginary units (i, j, k).
pub const IMAG: [Quat; 3] = [I, J, K];

impl Quat {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quat { w, x, y, z }
    }

    pub const fn zero() -> Self {
        Quat { w: 0.0, x: 0.0, y: 0.0, z: 0.0 }
    }

    pub fn conj(self) -> Self {
        Quat { w: self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Quat { w: self.w * s, x: self.x * s, y: self.y * s, z: self.z * s }
    }

    pub fn re(self) -> f64 {
        self.w
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, o: Quat) -> Quat {
        Quat { w: self.w + o.w, x: self.x + o.x, y: self.y + o.y, z: self.z + o.z }
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, o: Quat) -> Quat {
        Quat { w: self.w - o.w, x: self.x - o.x, y: self.y - o.y, z: self.z - o.z }
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat { w: -self.w, x: -self.x, y: -self.y, z: -self.z }
    }
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, o: Quat) -> Quat {
        Quat {
            w: self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            x: self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            y: self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            z: self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        }
    }
}

/// A vector in H^n, the quaternionic view of R^{4n}.
#[derive(Debug, Clone, PartialEq)]
pub struct QVector(pub Vec<Quat>);

impl QVector {
    pub fn zeros(n: usize) -> Self {
        QVector(vec![Quat::zero(); n])
    }

    pub fn from_real(v: &DVector<f64>) -> Self {
        assert_eq!(v.len() % 4, 0, "real dimension must be a multiple of 4");
        let n = v.len() / 4;
        QVector(
            (0..n)
                .map(|m| Quat::new(v[4 * m], v[4 * m + 1], v[4 * m + 2], v[4 * m + 3]))
                .collect(),
        )
    }

    pub fn to_real(&self) -> DVector<f64> {
        let mut out = DVector::zeros(4 * self.0.len());
        for (m, q) in self.0.iter().enumerate() {
            out[4 * m] = q.w;
            out[4 * m + 1] = q.x;
            out[4 * m + 2] = q.y;
            out[4 * m + 3] = q.z;
        }
        out
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Hermitian product sum_m conj(a_m) b_m, conjugate-linear in the first slot.
    pub fn dot(&self, other: &QVector) -> Quat {
        assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Quat::zero(), |acc, (a, b)| acc + a.conj() * *b)
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|q| q.norm_sq()).sum()
    }

    /// Right scalar multiplication v * q, slotwise.
    pub fn mul_right(&self, q: Quat) -> QVector {
        QVector(self.0.iter().map(|a| *a * q).collect())
    }

    pub fn scale(&self, s: f64) -> QVector {
        QVector(self.0.iter().map(|a| a.scale(s)).collect())
    }

    pub fn add(&self, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| *a + *b).collect())
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| *a - *b).collect())
    }
}

/// A quaternionic matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Quat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Quat::zero(); rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> Quat {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, q: Quat) {
        self.data[r * self.cols + c] = q;
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|q| q.scale(s)).collect() }
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| *a + *b).collect(),
        }
    }

    /// Matrix-vector product over H (entries multiply vector components on the left).
    pub fn mul_vec(&self, v: &QVector) -> QVector {
        assert_eq!(self.cols, v.len());
        let mut out = QVector::zeros(self.rows);
        for r in 0..self.rows {
            let mut acc = Quat::zero();
            for c in 0..self.cols {
                acc = acc + self.get(r, c) * v.0[c];
            }
            out.0[r] = acc;
        }
        out
    }

    pub fn matmul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Quat::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    /// Max entry norm, used for exponential scaling.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    /// Matrix exponential by scaling-and-squaring with a truncated series.
    ///
    /// Adequate for the anti-Hermitian generators used here (entries O(1)).
    pub fn exp(&self) -> QMatrix {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let norm = self.max_norm() * n as f64;
        let k = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
        let scaled = self.scale(0.5f64.powi(k as i32));

        let mut result = QMatrix::identity(n);
        let mut term = QMatrix::identity(n);
        for order in 1..=16 {
            term = term.matmul(&scaled).scale(1.0 / order as f64);
            result = result.add(&term);
        }
        for _ in 0..k {
            result = result.matmul(&result);
        }
        result
    }

    pub fn identity(n: usize) -> QMatrix {
        let mut out = QMatrix::zeros(n, n);
        for r in 0..n {
            out.set(r, r, ONE);
        }
        out
    }
}
