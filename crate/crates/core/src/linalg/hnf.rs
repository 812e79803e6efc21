
use super::{IntMatrix, IntVec};
use crate::scalar::Int;

/// Row-style Hermite normal form.
///
/// Returns `(h, u)` with `u` unimodular and `u * m = h`. The rows of `h` are in
/// echelon form with positive pivots, every entry above a pivot is reduced into
/// `[0, pivot)`, and zero rows are moved to the bottom. Two matrices have the
/// same row lattice iff their nonzero HNF rows agree.
pub fn hermite_normal_form<T: Int>(m: &IntMatrix<T>) -> (IntMatrix<T>, IntMatrix<T>) {
    let nrows = m.nrows();
    let ncols = m.ncols();
    let mut h: Vec<Vec<T>> = m.rows().iter().map(|r| r.coords().to_vec()).collect();
    let mut u: Vec<Vec<T>> = IntMatrix::<T>::identity(nrows).into_rows().into_iter().map(IntVec::into_coords).collect();

    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == nrows {
            break;
        }
        for r in pivot_row + 1..nrows {
            if h[r][col].is_zero() {
                continue;
            }
            let a = h[pivot_row][col].clone();
            let b = h[r][col].clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let (p, q) = (a / g.clone(), b / g);
            // [x y; -q p] has determinant x*p + y*q = 1.
            combine_rows(&mut h, pivot_row, r, &x, &y, &q, &p);
            combine_rows(&mut u, pivot_row, r, &x, &y, &q, &p);
        }
        if h[pivot_row][col].is_zero() {
            continue;
        }
        if h[pivot_row][col].is_negative() {
            negate_row(&mut h[pivot_row]);
            negate_row(&mut u[pivot_row]);
        }
        let pivot = h[pivot_row][col].clone();
        for r in 0..pivot_row {
            let q = h[r][col].div_floor(&pivot);
            if !q.is_zero() {
                sub_multiple(&mut h, r, pivot_row, &q);
                sub_multiple(&mut u, r, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }

    let wrap = |rows: Vec<Vec<T>>, n: usize| {
        IntMatrix::new(rows.into_iter().map(IntVec::new).collect(), n).expect("shape preserved")
    };
    (wrap(h, ncols), wrap(u, nrows))
}

fn combine_rows<T: Int>(a: &mut [Vec<T>], i: usize, j: usize, x: &T, y: &T, q: &T, p: &T) {
    let (ri, rj) = (a[i].clone(), a[j].clone());
    for k in 0..ri.len() {
        a[i][k] = x.clone() * ri[k].clone() + y.clone() * rj[k].clone();
        a[j][k] = p.clone() * rj[k].clone() - q.clone() * ri[k].clone();
    }
}

fn negate_row<T: Int>(row: &mut [T]) {
    for a in row.iter_mut() {
        *a = -a.clone();
    }
}

fn sub_multiple<T: Int>(a: &mut [Vec<T>], target: usize, source: usize, q: &T) {
    for k in 0..a[target].len() {
        let v = a[target][k].clone() - q.clone() * a[source][k].clone();
        a[target][k] = v;
    }
}
