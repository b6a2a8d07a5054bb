//! Dense Gaussian elimination over F_p.

use crate::field::PrimeField;

/// Reduces `rows` (each of length `ncols`) to reduced row-echelon form in
/// place; returns the pivot columns. Zero rows end up at the bottom.
pub fn rref(field: PrimeField, rows: &mut [Vec<u64>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field.inv_nz(rows[r][col]);
        for v in rows[r][col..].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let factor = field.neg(row[col]);
            for (v, &pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if pv != 0 {
                    *v = field.mul_add(*v, factor, pv);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// A canonical basis of the left kernel `{c : Σ c_r · rows[r] = 0}`:
/// the reduced row-echelon basis with respect to the row order of `rows`.
pub fn left_kernel(field: PrimeField, rows: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
    let m = rows.len();
    // right kernel of the transpose
    let mut t: Vec<Vec<u64>> = (0..ncols)
        .map(|k| rows.iter().map(|row| row[k]).collect())
        .collect();
    let pivots = rref(field, &mut t, m);
    let mut is_pivot = vec![false; m];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis: Vec<Vec<u64>> = (0..m)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut v = vec![0u64; m];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(t[r][free]);
            }
            v
        })
        .collect();
    rref(field, &mut basis, m);
    basis
}

/// Rank of a growing set of vectors, maintained as an echelon basis.
#[derive(Debug, Clone)]
pub struct IncrementalRank {
    field: PrimeField,
    dim: usize,
    // rows with their pivot column; each row is normalized at its pivot
    basis: Vec<(usize, Vec<u64>)>,
}

impl IncrementalRank {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        IncrementalRank {
            field,
            dim,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.dim
    }

    /// Adds `v`; returns whether it was independent of the earlier vectors.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let f = self.field;
        for (pc, row) in &self.basis {
            let c = v[*pc];
            if c == 0 {
                continue;
            }
            let factor = f.neg(c);
            for (x, &r) in v[*pc..].iter_mut().zip(&row[*pc..]) {
                if r != 0 {
                    *x = f.mul_add(*x, factor, r);
                }
            }
        }
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv_nz(v[pc]);
        for x in v[pc..].iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.basis.push((pc, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn kernel_is_annihilating_and_canonical() {
        let fp = f(7);
        let rows = vec![
            vec![1, 2, 3],
            vec![2, 4, 6],
            vec![0, 1, 1],
            vec![1, 3, 4],
            vec![5, 0, 2],
        ];
        let k = left_kernel(fp, &rows, 3);
        assert_eq!(k.len(), 2); // rank 3
        for v in &k {
            for col in 0..3 {
                let s = rows
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (r, &c)| fp.mul_add(acc, c, r[col]));
                assert_eq!(s, 0);
            }
        }
        // reduced echelon: leading entries 1, strictly increasing, cleared columns
        let leads: Vec<usize> = k
            .iter()
            .map(|v| v.iter().position(|&x| x != 0).unwrap())
            .collect();
        assert!(leads.windows(2).all(|w| w[0] < w[1]));
        for (i, &l) in leads.iter().enumerate() {
            assert_eq!(k[i][l], 1);
            for (j, other) in k.iter().enumerate() {
                if j != i {
                    assert_eq!(other[l], 0);
                }
            }
        }
    }

    #[test]
    fn incremental_rank_matches_rref() {
        let fp = f(5);
        let vectors = [
            vec![1, 2, 0, 4],
            vec![2, 4, 0, 3],
            vec![0, 0, 1, 1],
            vec![1, 2, 1, 0],
            vec![3, 1, 4, 1],
        ];
        let mut inc = IncrementalRank::new(fp, 4);
        for k in 0..vectors.len() {
            inc.insert(vectors[k].clone());
            let mut m = vectors[..=k].to_vec();
            assert_eq!(inc.rank(), rref(fp, &mut m, 4).len());
        }
    }
}
