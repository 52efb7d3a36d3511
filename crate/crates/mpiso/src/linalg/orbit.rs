//! Power orbits: all T^alpha applied to a vector (or taken as matrices),
//! grouped by level |alpha| = k.
//!
//! Level k+1 is derived from level k by one operator application per
//! entry: T^alpha = T_j T^(alpha - e_j) for the first nonzero component j.
//! A full table up to level N therefore costs one application per stored
//! entry instead of |alpha| applications each. Entries within a level
//! follow the order of [`enumerate_multi_indices`], and each level is
//! produced with the data-parallel map, so results are identical with and
//! without the `parallel` feature.

use std::collections::HashMap;

use crate::error::Result;
use crate::exec::map_collect;
use crate::linalg::matrix::{Matrix, C64};
use crate::linalg::multiindex::{enumerate_multi_indices, MultiIndex};
use crate::linalg::tuple::OperatorTuple;

/// One level of an orbit: aligned multi-indices and payloads.
pub struct Level<T> {
    pub indices: Vec<MultiIndex>,
    pub items: Vec<T>,
}

fn build_levels<T, F>(d: usize, n_max: u32, seed: T, apply: F) -> Result<Vec<Level<T>>>
where
    T: Clone + Send + Sync,
    F: Fn(usize, &T) -> T + Sync + Send,
{
    let mut levels: Vec<Level<T>> = Vec::with_capacity(n_max as usize + 1);
    levels.push(Level { indices: enumerate_multi_indices(d, 0)?, items: vec![seed] });
    for k in 1..=n_max {
        let indices = enumerate_multi_indices(d, k)?;
        let parent_lookup: HashMap<&[u32], usize> = levels[k as usize - 1]
            .indices
            .iter()
            .enumerate()
            .map(|(pos, alpha)| (alpha.entries(), pos))
            .collect();
        // (operator j, parent position) for each entry of the new level
        let steps: Vec<(usize, usize)> = indices
            .iter()
            .map(|alpha| {
                let j = alpha
                    .entries()
                    .iter()
                    .position(|&a| a > 0)
                    .expect("level k >= 1 has a nonzero component");
                let mut parent = alpha.entries().to_vec();
                parent[j] -= 1;
                let pos = parent_lookup[parent.as_slice()];
                (j, pos)
            })
            .collect();
        let prev = &levels[k as usize - 1].items;
        let items = map_collect(steps.len(), |i| {
            let (j, pos) = steps[i];
            apply(j, &prev[pos])
        });
        levels.push(Level { indices, items });
    }
    Ok(levels)
}

/// Orbit of a probe vector: level k holds T^alpha x for all |alpha| = k.
pub struct VectorOrbit {
    levels: Vec<Level<Vec<C64>>>,
}

impl VectorOrbit {
    pub fn new(tuple: &OperatorTuple, x: &[C64], n_max: u32) -> Result<Self> {
        if x.len() != tuple.dim() {
            return Err(crate::error::Error::invalid(format!(
                "probe has length {}, tuple dimension is {}",
                x.len(),
                tuple.dim()
            )));
        }
        let levels = build_levels(tuple.len(), n_max, x.to_vec(), |j, v| tuple.op(j).matvec(v))?;
        Ok(VectorOrbit { levels })
    }

    pub fn depth(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    pub fn level(&self, k: u32) -> &Level<Vec<C64>> {
        &self.levels[k as usize]
    }
}

/// Orbit of the tuple itself: level k holds the matrices T^alpha.
pub struct MatrixOrbit {
    levels: Vec<Level<Matrix>>,
}

impl MatrixOrbit {
    pub fn new(tuple: &OperatorTuple, n_max: u32) -> Result<Self> {
        let id = Matrix::identity(tuple.dim());
        let levels = build_levels(tuple.len(), n_max, id, |j, m| tuple.op(j).matmul(m))?;
        Ok(MatrixOrbit { levels })
    }

    pub fn depth(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    pub fn level(&self, k: u32) -> &Level<Matrix> {
        &self.levels[k as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn richter() -> OperatorTuple {
        let z = std::f64::consts::FRAC_1_SQRT_2;
        let t1 = Matrix::from_real_rows(&[vec![z, 1.0], vec![0.0, z]]).unwrap();
        let t2 = Matrix::from_real_rows(&[vec![z, -1.0], vec![0.0, z]]).unwrap();
        OperatorTuple::new(vec![t1, t2]).unwrap()
    }

    #[test]
    fn orbit_matches_direct_power_application() {
        let t = richter();
        let x = vec![C64::new(0.3, -0.1), C64::new(-0.7, 0.2)];
        let orbit = VectorOrbit::new(&t, &x, 5).unwrap();
        for k in 0..=5u32 {
            let level = orbit.level(k);
            for (alpha, item) in level.indices.iter().zip(&level.items) {
                let direct = t.apply_power(alpha, &x).unwrap();
                let worst = direct
                    .iter()
                    .zip(item)
                    .map(|(&a, &b)| (a - b).norm())
                    .fold(0.0, f64::max);
                assert!(worst < 1e-13, "k={k} alpha={alpha:?}: {worst:.2e}");
            }
        }
    }

    #[test]
    fn matrix_orbit_matches_power_matrix() {
        let t = richter();
        let orbit = MatrixOrbit::new(&t, 4).unwrap();
        for k in 0..=4u32 {
            let level = orbit.level(k);
            for (alpha, item) in level.indices.iter().zip(&level.items) {
                let direct = t.power_matrix(alpha).unwrap();
                assert!(direct.sub(item).max_abs() < 1e-13, "k={k} alpha={alpha:?}");
            }
        }
    }

    #[test]
    fn single_operator_orbit_is_plain_powers() {
        let a = Matrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let t = OperatorTuple::new(vec![a.clone()]).unwrap();
        let orbit = MatrixOrbit::new(&t, 6).unwrap();
        for k in 0..=6u32 {
            assert_eq!(orbit.level(k).items.len(), 1);
            assert!(orbit.level(k).items[0].sub(&a.pow(k)).max_abs() < 1e-12);
        }
    }
}
