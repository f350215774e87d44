use std::ops::{Add, Sub};

use crate::linalg::{self, C64};

/// Coefficients of an algebra element in the fixed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    pub coeffs: Vec<C64>,
}

/// Values `φ(g_i)` of a linear functional on the basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DualElement {
    pub coeffs: Vec<C64>,
}

/// Coefficient tensor of `Δ_n(x)`, row-major with leg 0 slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct SweedlerExpansion {
    pub rank: usize,
    pub dim: usize,
    pub tensor: Vec<C64>,
}

macro_rules! vector_like {
    ($t:ident) => {
        impl $t {
            pub fn new(coeffs: Vec<C64>) -> Self {
                $t { coeffs }
            }

            pub fn len(&self) -> usize {
                self.coeffs.len()
            }

            pub fn is_empty(&self) -> bool {
                self.coeffs.is_empty()
            }

            pub fn scale(&self, s: C64) -> Self {
                $t::new(self.coeffs.iter().map(|z| z * s).collect())
            }

            pub fn max_diff(&self, other: &Self) -> f64 {
                if self.len() != other.len() {
                    return f64::INFINITY;
                }
                linalg::max_abs_diff(&self.coeffs, &other.coeffs)
            }

            pub fn max_abs(&self) -> f64 {
                linalg::max_abs(&self.coeffs)
            }
        }

        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                $t::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                $t::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
            }
        }
    };
}

vector_like!(AlgebraElement);
vector_like!(DualElement);

impl SweedlerExpansion {
    pub fn get(&self, idx: &[usize]) -> C64 {
        debug_assert_eq!(idx.len(), self.rank);
        let flat = idx.iter().fold(0, |acc, &i| acc * self.dim + i);
        self.tensor[flat]
    }

    /// Moves leg `from` to position `to`, shifting the others.
    pub fn move_leg(&self, from: usize, to: usize) -> SweedlerExpansion {
        let mut order: Vec<usize> = (0..self.rank).collect();
        let leg = order.remove(from);
        order.insert(to, leg);
        self.permute(&order)
    }

    /// New tensor whose leg `k` is old leg `order[k]`.
    pub fn permute(&self, order: &[usize]) -> SweedlerExpansion {
        let n = self.rank;
        let d = self.dim;
        let mut out = vec![linalg::ZERO; self.tensor.len()];
        let mut idx = vec![0usize; n];
        let strides: Vec<usize> = (0..n).map(|k| d.pow((n - 1 - k) as u32)).collect();
        for (flat, slot) in out.iter_mut().enumerate() {
            let mut r = flat;
            for k in (0..n).rev() {
                idx[k] = r % d;
                r /= d;
            }
            let src: usize = (0..n).map(|k| idx[k] * strides[order[k]]).sum();
            *slot = self.tensor[src];
        }
        SweedlerExpansion { rank: n, dim: d, tensor: out }
    }

    pub fn max_diff(&self, other: &SweedlerExpansion) -> f64 {
        if self.tensor.len() != other.tensor.len() {
            return f64::INFINITY;
        }
        linalg::max_abs_diff(&self.tensor, &other.tensor)
    }
}
