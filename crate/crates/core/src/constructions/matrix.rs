use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::Ring;

/// Rectangular matrix of polynomials over one ring, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ring: &Arc<Ring>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.is_empty() || cols == 0 {
            return Err(Error::Input("matrix must have at least one row and one column".into()));
        }
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Input("matrix rows have different lengths".into()));
        }
        let nrows = rows.len();
        let entries: Vec<Polynomial> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| e.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn zeros(ring: &Arc<Ring>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn embed(&self, target: &Arc<Ring>) -> Result<PolyMatrix> {
        Ok(PolyMatrix {
            ring: target.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.embed(target)).collect::<Result<_>>()?,
        })
    }

    /// Row vector `v·M`.
    pub fn left_mul(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if v.len() != self.rows {
            return Err(Error::precondition(format!(
                "vector of length {} against a matrix with {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = Vec::with_capacity(self.cols);
        for j in 0..self.cols {
            let mut acc = Polynomial::zero(&self.ring);
            for (i, vi) in v.iter().enumerate() {
                acc = acc.add(&vi.mul(self.get(i, j))?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Determinant of the submatrix on the given rows and columns, by Laplace
    /// expansion along the first row.
    pub fn sub_determinant(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        debug_assert_eq!(rows.len(), cols.len());
        match rows.len() {
            0 => Polynomial::one(&self.ring),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = Polynomial::zero(&self.ring);
                let rest = &rows[1..];
                for (k, &c) in cols.iter().enumerate() {
                    let e = self.get(rows[0], c);
                    if e.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = e * &self.sub_determinant(rest, &sub_cols);
                    acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    pub fn determinant(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::precondition("determinant of a non-square matrix"));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.sub_determinant(&idx, &idx))
    }

    /// All `r × r` minors; row subsets in lexicographic order, then column subsets.
    pub fn minors(&self, r: usize) -> Result<Vec<Polynomial>> {
        if r == 0 || r > self.rows.min(self.cols) {
            return Err(Error::precondition(format!(
                "minor size {r} out of range for a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let row_sets = subsets(self.rows, r);
        let col_sets = subsets(self.cols, r);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                out.push(self.sub_determinant(rs, cs));
            }
        }
        Ok(out)
    }
}

/// `r`-subsets of `0..n`, lexicographic.
pub(crate) fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    go(0, n, r, &mut cur, &mut out);
    out
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_polynomial;

    fn m(r: &Arc<Ring>, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::new(
            r,
            rows.iter()
                .map(|row| row.iter().map(|e| parse_polynomial(r, e).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn two_by_two() {
        let r = Ring::new(Field::Rational, ["a", "b", "c", "d"], MonomialOrder::DegRevLex).unwrap();
        let mm = m(&r, &[&["a", "b"], &["c", "d"]]);
        let ms = mm.minors(2).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0], parse_polynomial(&r, "a*d-b*c").unwrap());
        assert!(mm.minors(3).is_err());
        assert_eq!(mm.minors(1).unwrap().len(), 4);
    }

    #[test]
    fn hn_minors() {
        let r = Ring::new(Field::Rational, ["x", "y", "z"], MonomialOrder::DegRevLex).unwrap();
        let mm = m(&r, &[&["x^2", "y^2", "z"], &["y", "z", "x"]]);
        let ms: Vec<String> = mm.minors(2).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(ms, ["-y^3+x^2*z", "x^3-y*z", "x*y^2-z^2"]);
    }

    #[test]
    fn three_by_three_det() {
        let r = Ring::new(Field::Rational, ["x"], MonomialOrder::DegRevLex).unwrap();
        let mm = m(&r, &[&["2", "0", "1"], &["1", "3", "2"], &["1", "1", "1"]]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert!(mm.determinant().unwrap().is_zero());
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn rejects_ragged() {
        let r = Ring::new(Field::Rational, ["x"], MonomialOrder::DegRevLex).unwrap();
        let x = Polynomial::var(&r, 0);
        assert!(PolyMatrix::new(&r, vec![vec![x.clone(), x.clone()], vec![x]]).is_err());
    }
}
