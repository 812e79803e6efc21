
use super::IntMatrix;
use crate::scalar::Int;

/// Elementary divisors `d_1 | d_2 | ... | d_r` of `m`: the nonzero diagonal of
/// its Smith normal form.
pub fn smith_normal_form<T: Int>(m: &IntMatrix<T>) -> Vec<T> {
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut a: Vec<Vec<T>> = m.rows().iter().map(|r| r.coords().to_vec()).collect();
    let mut divisors = Vec::new();

    for t in 0..nr.min(nc) {
        let Some((pi, pj)) = smallest_entry(&a, t..nr, t..nc) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..nr {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for k in t..nc {
                        let v = a[i][k].clone() - q.clone() * a[t][k].clone();
                        a[i][k] = v;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..nc {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let v = row[j].clone() - q.clone() * row[t].clone();
                        row[j] = v;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot survived in row or column t
                let col_min = smallest_entry(&a, t..nr, t..t + 1);
                let row_min = smallest_entry(&a, t..t + 1, t..nc);
                let pick = match (col_min, row_min) {
                    (Some(c), Some(r)) if a[r.0][r.1].abs() < a[c.0][c.1].abs() => r,
                    (Some(c), _) => c,
                    (None, Some(r)) => r,
                    (None, None) => unreachable!("pivot is nonzero"),
                };
                a.swap(t, pick.0);
                swap_cols(&mut a, t, pick.1);
                continue;
            }
            let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for k in t..nc {
                        let v = a[t][k].clone() + a[i][k].clone();
                        a[t][k] = v;
                    }
                }
                None => break,
            }
        }
        divisors.push(a[t][t].abs());
    }
    divisors
}

fn smallest_entry<T: Int>(
    a: &[Vec<T>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols<T>(a: &mut [Vec<T>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}
