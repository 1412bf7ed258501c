//! Row-major dense tensors addressed by index tuples.
//!
//! Primal builders and dual checkers share one `Shape` per variable or row
//! family, so a tuple maps to the same flat offset on both sides.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Shape {
    dims: Vec<usize>,
    strides: Vec<usize>,
    len: usize,
}

impl Shape {
    pub fn new(dims: &[usize]) -> Self {
        let mut strides = vec![0; dims.len()];
        let mut acc = 1;
        for k in (0..dims.len()).rev() {
            strides[k] = acc;
            acc *= dims[k];
        }
        Shape { dims: dims.to_vec(), strides, len: acc }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn at(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        let mut off = 0;
        for k in 0..idx.len() {
            debug_assert!(idx[k] < self.dims[k], "index {:?} outside {:?}", idx, self.dims);
            off += idx[k] * self.strides[k];
        }
        off
    }

    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dims.len()];
        for k in 0..self.dims.len() {
            idx[k] = flat / self.strides[k];
            flat %= self.strides[k];
        }
        idx
    }

    /// Visit every index tuple in row-major order.
    pub fn for_each(&self, mut f: impl FnMut(&[usize])) {
        if self.len == 0 {
            return;
        }
        let mut idx = vec![0; self.dims.len()];
        loop {
            f(&idx);
            let mut k = self.dims.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < self.dims[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tensor {
    shape: Shape,
    data: Vec<f64>,
}

impl Tensor {
    pub fn zeros(dims: &[usize]) -> Self {
        let shape = Shape::new(dims);
        let data = vec![0.0; shape.len()];
        Tensor { shape, data }
    }

    pub fn from_fn(dims: &[usize], mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let shape = Shape::new(dims);
        let mut data = Vec::with_capacity(shape.len());
        shape.for_each(|i| data.push(f(i)));
        Tensor { shape, data }
    }

    pub fn from_vec(dims: &[usize], data: Vec<f64>) -> Option<Self> {
        let shape = Shape::new(dims);
        (shape.len() == data.len()).then_some(Tensor { shape, data })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dims(&self) -> &[usize] {
        self.shape.dims()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.shape.at(idx)]
    }

    #[inline]
    pub fn set(&mut self, idx: &[usize], v: f64) {
        let k = self.shape.at(idx);
        self.data[k] = v;
    }

    #[inline]
    pub fn add(&mut self, idx: &[usize], v: f64) {
        let k = self.shape.at(idx);
        self.data[k] += v;
    }

    pub fn sum(&self) -> f64 {
        self.data.iter().sum()
    }

    pub fn max_abs_diff(&self, other: &Tensor) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Same data under a different shape of equal size.
    pub fn reshaped(&self, dims: &[usize]) -> Option<Tensor> {
        Tensor::from_vec(dims, self.data.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_are_row_major() {
        let s = Shape::new(&[2, 3, 4]);
        assert_eq!(s.len(), 24);
        assert_eq!(s.at(&[1, 2, 3]), 23);
        assert_eq!(s.at(&[1, 0, 0]), 12);
        let mut seen = Vec::new();
        s.for_each(|i| seen.push(s.at(i)));
        assert_eq!(seen, (0..24).collect::<Vec<_>>());
        assert_eq!(s.unravel(17), vec![1, 1, 1]);
    }

    #[test]
    fn empty_and_scalar_shapes() {
        let mut n = 0;
        Shape::new(&[2, 0]).for_each(|_| n += 1);
        assert_eq!(n, 0);
        Shape::new(&[]).for_each(|_| n += 1);
        assert_eq!(n, 1);
    }
}
