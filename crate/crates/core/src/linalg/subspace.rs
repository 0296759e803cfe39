//! Subspaces of GF(p)^n kept in reduced row echelon form.
//!
//! The basis of a [`Subspace`] is always the RREF of any spanning set, so
//! two subspaces are equal exactly when their bases are equal entrywise.

use super::{LinalgError, Matrix, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        let mut s = Subspace::zero(field, ambient);
        for i in 0..ambient {
            let mut v = vec![0; ambient];
            v[i] = 1;
            s.rows.push(v);
            s.pivots.push(i);
        }
        s
    }

    pub fn from_rows<I>(field: PrimeField, ambient: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut s = Subspace::zero(field, ambient);
        for r in rows {
            s.insert(r);
        }
        s
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        let (r, pivots) = m.rref();
        Subspace {
            field: m.field(),
            ambient: m.cols(),
            rows: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
            pivots,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient, &self.rows)
    }

    /// Coordinates not used as pivots: the unit vectors at these indices
    /// span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ambient - self.dim());
        let mut piv = self.pivots.iter().peekable();
        for c in 0..self.ambient {
            if piv.peek() == Some(&&c) {
                piv.next();
            } else {
                out.push(c);
            }
        }
        out
    }

    /// Subtracts the basis components of `v`; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let f = self.field;
        let p = f.modulus() as u64;
        let mut out = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            let neg = p - c as u64;
            for (x, &y) in out.iter_mut().zip(row).skip(pc) {
                if y != 0 {
                    *x = ((*x as u64 + neg * y as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coefficients of `v` in the stored basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// Adds `v` to the spanning set. Returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        let f = self.field;
        let p = f.modulus() as u64;
        let mut w = self.reduce(&v);
        let Some(lead) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[lead]) as u64;
        for x in w.iter_mut().skip(lead) {
            *x = ((*x as u64 * inv) % p) as u32;
        }
        for row in self.rows.iter_mut() {
            let c = row[lead];
            if c == 0 {
                continue;
            }
            let neg = p - c as u64;
            for (x, &y) in row.iter_mut().zip(&w).skip(lead) {
                if y != 0 {
                    *x = ((*x as u64 + neg * y as u64) % p) as u32;
                }
            }
        }
        let pos = self.pivots.partition_point(|&pc| pc < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, w);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        Ok(s)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        // x·A = y·B  <=>  (x, -y) in the left kernel of [A; B].
        let a = self.basis_matrix();
        let stacked = a.vstack(&other.basis_matrix());
        let lk = stacked.left_kernel();
        let na = self.dim();
        let rows = (0..lk.rows()).map(|i| a.apply(&lk.row(i)[..na]));
        Ok(Subspace::from_rows(self.field, self.ambient, rows))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }
}

/// Row space intersection of two spanning matrices, as an RREF basis.
pub fn intersect_subspaces(a: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    Ok(Subspace::from_matrix(a)
        .intersect(&Subspace::from_matrix(b))?
        .basis_matrix())
}

pub fn sum_subspaces(a: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    Ok(Subspace::from_matrix(a).sum(&Subspace::from_matrix(b))?.basis_matrix())
}

pub fn subspace_contains(a: &Matrix, v: &[u32]) -> Result<bool, LinalgError> {
    if v.len() != a.cols() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.cols(),
            found: v.len(),
        });
    }
    Ok(Subspace::from_matrix(a).contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn named_examples() {
        let e1 = Matrix::from_i64_rows(f(), &[&[1, 0]]);
        let e2 = Matrix::from_i64_rows(f(), &[&[0, 1]]);
        let both = Matrix::identity(f(), 2);
        assert_eq!(intersect_subspaces(&e1, &both).unwrap(), e1);
        assert_eq!(sum_subspaces(&e1, &e2).unwrap().rows(), 2);
        let diag = Matrix::from_i64_rows(f(), &[&[1, 1]]);
        assert!(!subspace_contains(&diag, &[1, 0]).unwrap());
        assert!(subspace_contains(&diag, &[5, 5]).unwrap());
        assert!(subspace_contains(&diag, &[1, 0, 0]).is_err());
        let e3 = Matrix::from_i64_rows(f(), &[&[0, 0, 1]]);
        assert!(intersect_subspaces(&e1, &e3).is_err());
    }

    #[test]
    fn canonical_form_is_spanning_set_independent() {
        let a = Subspace::from_rows(f(), 3, vec![vec![1, 2, 3], vec![0, 1, 1]]);
        let b = Subspace::from_rows(f(), 3, vec![vec![1, 3, 4], vec![2, 5, 7], vec![1, 2, 3]]);
        assert_eq!(a, b);
        assert_eq!(a.complement_indices(), vec![2]);
        let c = a.coordinates(&[1, 3, 4]).unwrap();
        assert_eq!(c, vec![1, 3]);
    }
}
