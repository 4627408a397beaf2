//! Weyl group action on coweight coordinates.

use std::collections::{HashMap, VecDeque};

use num_traits::{Signed, Zero};

use super::{ChamberPoint, RootSystem, RootSystemError};
use crate::exactlin::{int, RatVec};

pub const DEFAULT_WEYL_CEILING: u128 = 2_000_000;

/// A Weyl group element as an integer matrix on coweight coordinates,
/// with a word in simple reflections (applied left to right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: Vec<Vec<i64>>,
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn apply(&self, x: &ChamberPoint) -> ChamberPoint {
        ChamberPoint::new(RatVec::new(
            self.matrix
                .iter()
                .map(|row| x.coords.dot_int(row))
                .collect(),
        ))
    }
}

impl RootSystem {
    /// `s_i x = x - <alpha_i, x> alpha_i^vee`.
    pub fn reflect(&self, i: usize, x: &ChamberPoint) -> ChamberPoint {
        let xi = x.coords[i].clone();
        let coords = (0..self.rank())
            .map(|j| &x.coords[j] - int(self.cartan[j][i]) * &xi)
            .collect();
        ChamberPoint::new(RatVec::new(coords))
    }

    fn reflect_int(&self, i: usize, x: &[i64]) -> Vec<i64> {
        (0..self.rank())
            .map(|j| x[j] - self.cartan[j][i] * x[i])
            .collect()
    }

    /// All elements of W, each exactly once, in breadth-first order of word length.
    pub fn weyl_elements(&self, ceiling: u128) -> Result<Vec<WeylElement>, RootSystemError> {
        let order = self.spec.weyl_order();
        if order > ceiling {
            return Err(RootSystemError::WeylTooLarge { order, ceiling });
        }
        let n = self.rank();
        let rho: Vec<i64> = vec![1; n];
        let identity: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut out = vec![WeylElement {
            matrix: identity,
            word: Vec::new(),
        }];
        seen.insert(rho.clone(), 0);
        let mut images = vec![rho];
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for i in 0..n {
                let img = self.reflect_int(i, &images[k]);
                if seen.contains_key(&img) {
                    continue;
                }
                // s_i * w
                let w = &out[k].matrix;
                let matrix: Vec<Vec<i64>> = (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|c| w[j][c] - self.cartan[j][i] * w[i][c])
                            .collect()
                    })
                    .collect();
                let mut word = out[k].word.clone();
                word.push(i);
                seen.insert(img.clone(), out.len());
                images.push(img);
                queue.push_back(out.len());
                out.push(WeylElement { matrix, word });
            }
        }
        debug_assert_eq!(out.len() as u128, order);
        Ok(out)
    }

    /// The W-orbit of `x` with one witness word per point (breadth-first,
    /// so words are shortest; the first entry is `x` itself).
    pub fn weyl_orbit(&self, x: &ChamberPoint) -> Vec<(ChamberPoint, Vec<usize>)> {
        let mut seen: HashMap<ChamberPoint, ()> = HashMap::new();
        let mut out = vec![(x.clone(), Vec::new())];
        seen.insert(x.clone(), ());
        let mut k = 0;
        while k < out.len() {
            for i in 0..self.rank() {
                if out[k].0.coords[i].is_zero() {
                    continue;
                }
                let y = self.reflect(i, &out[k].0);
                if seen.contains_key(&y) {
                    continue;
                }
                seen.insert(y.clone(), ());
                let mut word = out[k].1.clone();
                word.push(i);
                out.push((y, word));
            }
            k += 1;
        }
        out
    }

    /// Dominant W-conjugate of `x`, reached by reflecting in the first
    /// simple root with negative pairing until none is left.
    pub fn dominant_representative(&self, x: &ChamberPoint) -> (ChamberPoint, Vec<usize>) {
        let mut cur = x.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| cur.coords[i].is_negative()) {
            cur = self.reflect(i, &cur);
            word.push(i);
        }
        (cur, word)
    }

    /// Applies a word of simple reflections, left to right.
    pub fn apply_word(&self, word: &[usize], x: &ChamberPoint) -> ChamberPoint {
        word.iter().fold(x.clone(), |acc, &i| self.reflect(i, &acc))
    }
}
