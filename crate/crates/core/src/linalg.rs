//! Dense Gaussian elimination over a [`FieldSpec`].

use crate::field::{FieldElement, FieldSpec};

pub type Row = Vec<FieldElement>;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(field: &FieldSpec, rows: &[Row]) -> (Vec<Row>, Vec<usize>) {
    let mut m: Vec<Row> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == m.len() {
            break;
        }
        let Some(found) = (top..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(top, found);
        let inv = field.inv(m[top][col]).expect("pivot is nonzero");
        for x in m[top].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[top].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == top || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, *p));
            }
        }
        pivots.push(col);
        top += 1;
    }
    m.truncate(top);
    (m, pivots)
}

pub fn rank(field: &FieldSpec, rows: &[Row]) -> usize {
    rref(field, rows).1.len()
}

/// Basis of `{v : rows · v = 0}` for vectors of length `ncols`.
pub fn nullspace(field: &FieldSpec, rows: &[Row], ncols: usize) -> Vec<Row> {
    let (r, pivots) = rref(field, rows);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![FieldElement::ZERO; ncols];
        v[free] = FieldElement::ONE;
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = field.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

/// Whether two generator matrices span the same space.
pub fn same_row_space(field: &FieldSpec, a: &[Row], b: &[Row]) -> bool {
    let (ra, _) = rref(field, a);
    let (rb, _) = rref(field, b);
    ra == rb
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(f: &FieldSpec, codes: &[u32]) -> Row {
        codes.iter().map(|&c| f.element(c).unwrap()).collect()
    }

    #[test]
    fn rank_and_nullspace_gf9() {
        let f = FieldSpec::with_q(3, 2).unwrap();
        let rows = vec![row(&f, &[1, 2, 0]), row(&f, &[2, 1, 0]), row(&f, &[0, 0, 1])];
        assert_eq!(rank(&f, &rows), 2);
        let ns = nullspace(&f, &rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            let dot = r.iter().zip(&ns[0]).fold(f.zero(), |acc, (x, y)| f.add(acc, f.mul(*x, *y)));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn row_space_equality() {
        let f = FieldSpec::with_q(2, 2).unwrap();
        let a = vec![row(&f, &[1, 0, 1]), row(&f, &[0, 1, 1])];
        let b = vec![row(&f, &[1, 1, 0]), row(&f, &[0, 1, 1])];
        assert!(same_row_space(&f, &a, &b));
        let c = vec![row(&f, &[1, 0, 0]), row(&f, &[0, 1, 1])];
        assert!(!same_row_space(&f, &a, &c));
    }
}
