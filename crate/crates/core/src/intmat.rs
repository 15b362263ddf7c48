//! Dense integer row reduction: echelon forms, Hermite normal form and
//! integer kernels. All arithmetic is checked; overflow is reported as
//! [`Error::Overflow`] instead of wrapping.

use crate::error::{Error, Result};

type Row = Vec<i64>;

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow("integer row reduction"))
}

fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow("integer row reduction"))
}

/// `target -= q * source`, entrywise.
fn axpy(target: &mut Row, q: i64, source: &Row) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for (t, &s) in target.iter_mut().zip(source) {
        *t = sub(*t, mul(q, s)?)?;
    }
    Ok(())
}

/// Row-reduces `rows` to echelon form on the first `ncols` columns using
/// unimodular row operations applied to the full rows. Returns the rank of the
/// reduced block; the first `rank` rows carry the pivots, the rest are zero on
/// the reduced block.
pub(crate) fn echelonize(rows: &mut [Row], ncols: usize) -> Result<usize> {
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == rows.len() {
            break;
        }
        loop {
            // smallest nonzero entry in this column moves to the pivot slot
            let best =
                (pivot_row..rows.len()).filter(|&i| rows[i][col] != 0).min_by_key(|&i| rows[i][col].unsigned_abs());
            let Some(best) = best else { break };
            rows.swap(pivot_row, best);
            let pivot = rows[pivot_row][col];
            let mut done = true;
            for i in pivot_row + 1..rows.len() {
                let x = rows[i][col];
                if x != 0 {
                    let q = x.div_euclid(pivot);
                    let (head, tail) = rows.split_at_mut(i);
                    axpy(&mut tail[0], q, &head[pivot_row])?;
                    if tail[0][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][col] != 0 {
            pivot_row += 1;
        }
    }
    Ok(pivot_row)
}

/// Hermite normal form of the row span: nonzero rows only, pivots strictly
/// increasing in column, positive, with entries above each pivot reduced into
/// `[0, pivot)`. Two row sets span the same lattice iff their forms are equal.
pub(crate) fn hermite(rows: &[Row], ncols: usize) -> Result<Vec<Row>> {
    let mut m: Vec<Row> = rows.to_vec();
    let rank = echelonize(&mut m, ncols)?;
    m.truncate(rank);
    let mut pivots = Vec::with_capacity(rank);
    for i in 0..rank {
        let col = m[i].iter().position(|&x| x != 0).expect("nonzero echelon row");
        if m[i][col] < 0 {
            for x in m[i].iter_mut() {
                *x = x.checked_neg().ok_or(Error::Overflow("integer row reduction"))?;
            }
        }
        pivots.push(col);
    }
    for i in 0..rank {
        let col = pivots[i];
        let pivot = m[i][col];
        for k in 0..i {
            let q = m[k][col].div_euclid(pivot);
            let (head, tail) = m.split_at_mut(i);
            axpy(&mut head[k], q, &tail[0])?;
        }
    }
    Ok(m)
}

/// Integer basis (in Hermite form) of `{x in Z^ncols : row . x = 0 for all rows}`.
/// The result is always a saturated lattice.
pub(crate) fn kernel(rows: &[Row], ncols: usize) -> Result<Vec<Row>> {
    let nrows = rows.len();
    // [A^T | I]: unimodular row operations that kill A^T expose kernel vectors.
    let mut aug: Vec<Row> = (0..ncols)
        .map(|j| {
            let mut r: Row = rows.iter().map(|row| row[j]).collect();
            r.extend((0..ncols).map(|k| i64::from(k == j)));
            r
        })
        .collect();
    let rank = echelonize(&mut aug, nrows)?;
    let basis: Vec<Row> = aug[rank..].iter().map(|r| r[nrows..].to_vec()).collect();
    hermite(&basis, ncols)
}

/// Whether `v` lies in the integer span of a Hermite-form basis.
pub(crate) fn in_span(hnf: &[Row], v: &[i64]) -> Result<bool> {
    let mut v = v.to_vec();
    for row in hnf {
        let col = row.iter().position(|&x| x != 0).expect("nonzero hermite row");
        if v[col] % row[col] != 0 {
            return Ok(false);
        }
        let q = v[col] / row[col];
        axpy(&mut v, q, row)?;
    }
    Ok(v.iter().all(|&x| x == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_is_canonical() {
        let a = hermite(&[vec![2, 4, 6], vec![1, 1, 1]], 3).unwrap();
        let b = hermite(&[vec![1, 1, 1], vec![0, 2, 4], vec![3, 5, 7]], 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, vec![vec![1, 1, 1], vec![0, 2, 4]]);
    }

    #[test]
    fn kernel_of_single_row() {
        let k = kernel(&[vec![1, 1]], 2).unwrap();
        assert_eq!(k, vec![vec![1, -1]]);
    }

    #[test]
    fn kernel_of_nothing_is_everything() {
        let k = kernel(&[], 3).unwrap();
        assert_eq!(k, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x - 4y = 0 has kernel generated by (2, 1), not (4, 2)
        let k = kernel(&[vec![2, -4]], 2).unwrap();
        assert_eq!(k, vec![vec![2, 1]]);
    }

    #[test]
    fn membership() {
        let h = hermite(&[vec![2, 0], vec![0, 3]], 2).unwrap();
        assert!(in_span(&h, &[4, -3]).unwrap());
        assert!(!in_span(&h, &[1, 0]).unwrap());
        assert!(in_span(&h, &[0, 0]).unwrap());
    }

    #[test]
    fn overflow_is_reported() {
        let r = hermite(&[vec![1, i64::MAX], vec![2, 0]], 2);
        assert_eq!(r, Err(Error::Overflow("integer row reduction")));
    }
}
