//! Smith normal form of integer matrices.
//!
//! Reduction picks the nonzero entry of least absolute value as pivot and
//! clears its row and column by remainder steps. Arithmetic runs in checked
//! i64 and falls back to arbitrary precision on overflow, so torsion is
//! never corrupted silently.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.cols + j] = value;
    }

    /// Matrix product, for the boundary-squared law in tests.
    pub fn multiply(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

/// Nonzero invariant factors of the matrix, positive and each dividing the
/// next. The rank is the number of factors returned.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    match snf_i64(m) {
        Some(d) => d.into_iter().map(BigInt::from).collect(),
        None => snf_big(m),
    }
}

pub fn rank(m: &IntMatrix) -> usize {
    invariant_factors(m).len()
}

macro_rules! snf_body {
    ($ty:ty, $a:ident, $rows:ident, $cols:ident, $abs:ident, $zero:expr,
     $mul:expr, $sub:expr, $rem_check:expr, $quot:expr) => {{
        #[allow(clippy::redundant_closure_call)]
        (|| -> Option<Vec<$ty>> {
        let mut t = 0usize;
        'outer: while t < $rows && t < $cols {
            // least-absolute-value nonzero pivot in the remaining block
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..$rows {
                for j in t..$cols {
                    if $a[i][j] != $zero {
                        let better = match pivot {
                            None => true,
                            Some((pi, pj)) => $abs(&$a[i][j]) < $abs(&$a[pi][pj]),
                        };
                        if better {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            $a.swap(t, pi);
            for row in $a.iter_mut() {
                row.swap(t, pj);
            }
            // clear column t by remainder steps
            let mut i = t + 1;
            while i < $rows {
                if $a[i][t] != $zero {
                    let q = $quot(&$a[i][t], &$a[t][t])?;
                    for j in t..$cols {
                        let prod = $mul(&q, &$a[t][j])?;
                        $a[i][j] = $sub(&$a[i][j], &prod)?;
                    }
                    if $a[i][t] != $zero {
                        // remainder is strictly smaller; make it the pivot
                        $a.swap(t, i);
                        i = t + 1;
                        continue;
                    }
                }
                i += 1;
            }
            // clear row t
            let mut j = t + 1;
            while j < $cols {
                if $a[t][j] != $zero {
                    let q = $quot(&$a[t][j], &$a[t][t])?;
                    for i in t..$rows {
                        let prod = $mul(&q, &$a[i][t])?;
                        $a[i][j] = $sub(&$a[i][j], &prod)?;
                    }
                    if $a[t][j] != $zero {
                        for row in $a.iter_mut() {
                            row.swap(t, j);
                        }
                        // the column may be dirty again
                        continue 'outer;
                    }
                }
                j += 1;
            }
            // column entries may have reappeared while clearing the row
            if (t + 1..$rows).any(|i| $a[i][t] != $zero) {
                continue 'outer;
            }
            // divisibility: fold in any entry the pivot does not divide
            let mut fixed = true;
            'div: for i in t + 1..$rows {
                for j in t + 1..$cols {
                    if !$rem_check(&$a[i][j], &$a[t][t]) {
                        let row_i = $a[i].clone();
                        for (dst, src) in $a[t].iter_mut().zip(row_i) {
                            *dst = $sub(dst, &$sub(&$zero, &src)?)?;
                        }
                        fixed = false;
                        break 'div;
                    }
                }
            }
            if !fixed {
                continue 'outer;
            }
            t += 1;
        }
        let mut out = Vec::with_capacity(t);
        for i in 0..t {
            out.push($a[i][i].clone());
        }
        Some(out)
        })()
    }};
}

fn snf_i64(m: &IntMatrix) -> Option<Vec<i64>> {
    let rows = m.rows;
    let cols = m.cols;
    let mut a: Vec<Vec<i64>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.get(i, j)).collect())
        .collect();
    fn abs(x: &i64) -> i64 {
        // clamp keeps i64::MIN orderable as "very large"; outputs are
        // re-checked below
        x.unsigned_abs().min(i64::MAX as u64) as i64
    }
    let diag = snf_body!(
        i64,
        a,
        rows,
        cols,
        abs,
        0i64,
        |x: &i64, y: &i64| x.checked_mul(*y),
        |x: &i64, y: &i64| x.checked_sub(*y),
        |x: &i64, y: &i64| x % y == 0,
        |x: &i64, y: &i64| x.checked_div(*y)
    )?;
    diag.into_iter().map(|d| d.checked_abs()).collect()
}

fn snf_big(m: &IntMatrix) -> Vec<BigInt> {
    let rows = m.rows;
    let cols = m.cols;
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..cols).map(|j| BigInt::from(m.get(i, j))).collect())
        .collect();
    fn abs(x: &BigInt) -> BigInt {
        x.abs()
    }
    let zero = BigInt::zero();
    let out: Option<Vec<BigInt>> = snf_body!(
        BigInt,
        a,
        rows,
        cols,
        abs,
        zero.clone(),
        |x: &BigInt, y: &BigInt| Some(x * y),
        |x: &BigInt, y: &BigInt| Some(x - y),
        |x: &BigInt, y: &BigInt| (x % y).is_zero(),
        |x: &BigInt, y: &BigInt| Some(x / y)
    );
    out.expect("big integer reduction cannot overflow")
        .into_iter()
        .map(|d| d.abs())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_rows(rows: &[&[i64]]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    fn factors_u64(m: &IntMatrix) -> Vec<u64> {
        invariant_factors(m)
            .into_iter()
            .map(|d| u64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn diagonal_and_rank() {
        let m = from_rows(&[&[2, 0], &[0, 3]]);
        // 2 and 3 combine into the chain 1 | 6
        assert_eq!(factors_u64(&m), vec![1, 6]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&IntMatrix::zero(3, 4)), 0);
    }

    #[test]
    fn divisibility_chain() {
        let m = from_rows(&[&[4, 0, 0], &[0, 6, 0], &[0, 0, 10]]);
        let f = factors_u64(&m);
        assert_eq!(f.len(), 3);
        for w in f.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        // product of invariant factors = |det| = 240
        assert_eq!(f.iter().product::<u64>(), 240);
    }

    #[test]
    fn klein_bottle_style_torsion() {
        // relation matrix [[1, 1], [1, -1]] has factors 1, 2
        let m = from_rows(&[&[1, 1], &[1, -1]]);
        assert_eq!(factors_u64(&m), vec![1, 2]);
    }

    #[test]
    fn rectangular() {
        let m = from_rows(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(factors_u64(&m), vec![1, 3]);
    }

    #[test]
    fn big_fallback_agrees() {
        // entries chosen so the i64 path still works; force the big path
        let m = from_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let fast = snf_i64(&m).unwrap();
        let big = snf_big(&m);
        assert_eq!(
            fast.into_iter().map(BigInt::from).collect::<Vec<_>>(),
            big
        );
    }
}
