//! Small dense helpers over `&[f64]`. Dimensions here are tiny (a handful of
//! coordinates), so everything is plain loops over slices.

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn scale(s: f64, a: &[f64]) -> Vec<f64> {
    a.iter().map(|x| s * x).collect()
}

/// `a + s * b`
pub(crate) fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub(crate) fn mat_vec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub(crate) fn identity(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

pub(crate) fn zeros(n: usize) -> Vec<Vec<f64>> {
    vec![vec![0.0; n]; n]
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

/// Orthonormal basis of the span of `rows` (modified Gram-Schmidt, two passes).
/// Rows whose remainder falls below `drop_tol` relative to their own norm are
/// treated as dependent.
pub(crate) fn orthonormal_basis(rows: &[Vec<f64>], drop_tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for r in rows {
        let n0 = norm(r);
        if n0 == 0.0 {
            continue;
        }
        let mut q = r.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&q, b);
                q = axpy(&q, -c, b);
            }
        }
        let nq = norm(&q);
        if nq > drop_tol * n0 {
            basis.push(scale(1.0 / nq, &q));
        }
    }
    basis
}

/// Completes an orthonormal set to an orthonormal basis of the orthogonal
/// complement of its span, using canonical vectors as seeds.
pub(crate) fn orthogonal_complement(basis: &[Vec<f64>], n: usize) -> Vec<Vec<f64>> {
    let mut all: Vec<Vec<f64>> = basis.to_vec();
    let mut out = Vec::new();
    for i in 0..n {
        if all.len() == n {
            break;
        }
        let mut q = unit(n, i);
        for _ in 0..2 {
            for b in &all {
                let c = dot(&q, b);
                q = axpy(&q, -c, b);
            }
        }
        let nq = norm(&q);
        if nq > 1e-8 {
            let q = scale(1.0 / nq, &q);
            all.push(q.clone());
            out.push(q);
        }
    }
    out
}

/// Norm of the projection of `v` onto the span of an orthonormal set.
pub(crate) fn projected_norm(basis: &[Vec<f64>], v: &[f64]) -> f64 {
    basis.iter().map(|b| dot(b, v).powi(2)).sum::<f64>().sqrt()
}

/// Finds a unit vector `w` with `rows[i] . w = rhs[i]` for every row, or `None`
/// if the affine set misses the unit sphere (beyond `tol`).
///
/// The affine solution set is `w0 + N` with `w0` the minimum-norm solution and
/// `N` the null space; a unit solution exists iff `|w0| <= 1` and, when
/// `|w0| < 1`, `N` is nontrivial.
pub(crate) fn unit_solution(rows: &[Vec<f64>], rhs: &[f64], n: usize, tol: f64) -> Option<Vec<f64>> {
    // Orthonormalize the rows while carrying the right-hand side along.
    let mut q_rows: Vec<Vec<f64>> = Vec::new();
    let mut q_rhs: Vec<f64> = Vec::new();
    for (r, &c) in rows.iter().zip(rhs) {
        let mut q = r.clone();
        let mut d = c;
        for _ in 0..2 {
            for (b, &bc) in q_rows.iter().zip(&q_rhs) {
                let s = dot(&q, b);
                q = axpy(&q, -s, b);
                d -= s * bc;
            }
        }
        let nq = norm(&q);
        let scale_r = norm(r).max(1.0);
        if nq <= 1e-10 * scale_r {
            // Dependent row: consistency check only.
            if d.abs() > tol * (1.0 + c.abs()) {
                return None;
            }
            continue;
        }
        q_rows.push(scale(1.0 / nq, &q));
        q_rhs.push(d / nq);
    }
    let mut w0 = vec![0.0; n];
    for (b, &c) in q_rows.iter().zip(&q_rhs) {
        w0 = axpy(&w0, c, b);
    }
    let n0 = norm(&w0);
    if n0 > 1.0 + tol {
        return None;
    }
    if (n0 - 1.0).abs() <= tol {
        return Some(scale(1.0 / n0, &w0));
    }
    let null = orthogonal_complement(&q_rows, n);
    let dir = null.first()?;
    let s = (1.0 - n0 * n0).max(0.0).sqrt();
    Some(axpy(&w0, s, dir))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_spans_the_rest() {
        let b = orthonormal_basis(&[vec![1.0, 1.0, 0.0]], 1e-12);
        let c = orthogonal_complement(&b, 3);
        assert_eq!(c.len(), 2);
        for q in &c {
            assert!(dot(q, &b[0]).abs() < 1e-14);
            assert!((norm(q) - 1.0).abs() < 1e-14);
        }
        assert!(dot(&c[0], &c[1]).abs() < 1e-14);
    }

    #[test]
    fn unit_solution_cases() {
        // w1 = 0.6 in R^2 -> w = (0.6, 0.8)
        let w = unit_solution(&[vec![1.0, 0.0]], &[0.6], 2, 1e-12).unwrap();
        assert!((w[0] - 0.6).abs() < 1e-14 && (norm(&w) - 1.0).abs() < 1e-14);
        // w1 = 2 impossible on the unit sphere
        assert!(unit_solution(&[vec![1.0, 0.0]], &[2.0], 2, 1e-12).is_none());
        // inconsistent zero row
        assert!(unit_solution(&[vec![0.0, 0.0]], &[1.0], 2, 1e-12).is_none());
        // no constraints -> e1
        let w = unit_solution(&[], &[], 3, 1e-12).unwrap();
        assert_eq!(w, vec![1.0, 0.0, 0.0]);
        // full rank with |w0| != 1
        assert!(unit_solution(&[vec![1.0, 0.0], vec![0.0, 1.0]], &[0.1, 0.1], 2, 1e-12).is_none());
    }
}
