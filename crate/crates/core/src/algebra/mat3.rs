use std::fmt;

use super::ring::{Field, Ring};

/// 3x3 matrix over a commutative ring, stored row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat3<R> {
    pub rows: [[R; 3]; 3],
}

impl<R: Ring> Mat3<R> {
    pub fn new(rows: [[R; 3]; 3]) -> Self {
        Mat3 { rows }
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> R) -> Self {
        Mat3 { rows: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))) }
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i].clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Mat3<S> {
        Mat3::from_fn(|i, j| f(&self.rows[i][j]))
    }

    /// Signed 2x2 minor complementary to entry `(i, j)`.
    pub fn cofactor(&self, i: usize, j: usize) -> R {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        let m = &self.rows;
        m[r0][c0].clone() * m[r1][c1].clone() - m[r0][c1].clone() * m[r1][c0].clone()
    }

    pub fn det(&self) -> R {
        (0..3).fold(R::zero(), |acc, j| acc + self.rows[0][j].clone() * self.cofactor(0, j))
    }

    /// Matrix of cofactors, `C[i][j] = cofactor(i, j)`.
    pub fn cofactor_matrix(&self) -> Self {
        Self::from_fn(|i, j| self.cofactor(i, j))
    }

    /// Classical adjugate: the transposed cofactor matrix, so `m * adj(m) = det(m) * I`.
    pub fn adjugate(&self) -> Self {
        Self::from_fn(|i, j| self.cofactor(j, i))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| {
            (0..3).fold(R::zero(), |acc, k| acc + self.rows[i][k].clone() * o.rows[k][j].clone())
        })
    }

    pub fn mul_vec(&self, v: &[R; 3]) -> [R; 3] {
        std::array::from_fn(|i| {
            (0..3).fold(R::zero(), |acc, k| acc + self.rows[i][k].clone() * v[k].clone())
        })
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }
}

impl<F: Field> Mat3<F> {
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det().inv()?;
        Some(self.adjugate().scale(&d))
    }
}

impl<R: Ring> fmt::Display for Mat3<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}, {}, {}]", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}
