use num::Zero;

use super::ring::Rational;

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Rational>>) -> usize {
    rref(rows).0.len()
}

/// Solve `sum_i x_i * columns[i] = target`, if possible.
pub fn solve_combination(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let n = columns.len();
    let rows: Vec<Vec<Rational>> = (0..target.len())
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let (red, pivots) = rref(rows);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &p) in red.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Some(x)
}

/// Basis of the null space `{x : rows * x = 0}`.
pub fn kernel(rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let (red, pivots) = rref(rows);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::from_integer(1.into());
        for (row, &p) in red.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn kernel_of_plane() {
        let k = kernel(vec![vec![rat(1), rat(1), rat(1)]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((&v[0] + &v[1] + &v[2]).is_zero());
        }
    }

    #[test]
    fn combination() {
        let cols = vec![vec![rat(1), rat(0)], vec![rat(1), rat(1)]];
        assert_eq!(solve_combination(&cols, &[rat(3), rat(2)]), Some(vec![rat(1), rat(2)]));
        let cols = vec![vec![rat(1), rat(1)]];
        assert_eq!(solve_combination(&cols, &[rat(1), rat(2)]), None);
    }
}
