use super::Graph;
use crate::scalar::Scalar;

/// Determinant by Gaussian elimination with partial pivoting on `|a_ij|`.
///
/// Exact for rational scalars; subject to rounding for floats.
pub fn determinant<T: Scalar>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut det = T::one();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !m[r][col].is_zero())
            .max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap_or(std::cmp::Ordering::Equal));
        let Some(p) = pivot else {
            return T::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det = det * pv.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pv.clone();
            for c in col..n {
                let delta = factor.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - delta;
            }
        }
    }
    det
}

/// Number of spanning trees by the matrix-tree theorem: any cofactor of the
/// Laplacian (loops ignored, parallel edges counted with multiplicity).
pub fn spanning_tree_count<T: Scalar>(g: &Graph) -> T {
    let n = g.vertex_count();
    if n <= 1 {
        return T::one();
    }
    let mut lap = vec![vec![T::zero(); n]; n];
    for e in g.edges() {
        let [a, b] = e.ends;
        if a == b {
            continue;
        }
        lap[a][a] = lap[a][a].clone() + T::one();
        lap[b][b] = lap[b][b].clone() + T::one();
        lap[a][b] = lap[a][b].clone() - T::one();
        lap[b][a] = lap[b][a].clone() - T::one();
    }
    let reduced: Vec<Vec<T>> = lap.into_iter().skip(1).map(|row| row.into_iter().skip(1).collect()).collect();
    determinant(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::scalar::Rational;

    #[test]
    fn exact_counts() {
        assert_eq!(spanning_tree_count::<Rational>(&triangle()), Rational::from_integer(3));
        assert_eq!(spanning_tree_count::<Rational>(&k4()), Rational::from_integer(16));
        assert_eq!(spanning_tree_count::<Rational>(&dumb()), Rational::from_integer(5));
        assert_eq!(spanning_tree_count::<Rational>(&loop_graph()), Rational::from_integer(1));
    }

    #[test]
    fn float_counts_close() {
        let v: f64 = spanning_tree_count(&k4());
        assert!((v - 16.0).abs() < 1e-9);
        let w: f32 = spanning_tree_count(&theta());
        assert!((w - 3.0).abs() < 1e-5);
    }

    #[test]
    fn determinant_with_row_swap() {
        let m = vec![
            vec![Rational::from_integer(0), Rational::from_integer(1)],
            vec![Rational::from_integer(1), Rational::from_integer(0)],
        ];
        assert_eq!(determinant(m), Rational::from_integer(-1));
    }
}
