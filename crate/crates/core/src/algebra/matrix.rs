//! Small square matrices (2×2 and 3×3) over a [`Field`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{AlgebraError, Field, GroupElement};

#[derive(Clone, Debug)]
pub struct Mat {
    field: Arc<Field>,
    dim: usize,
    /// Row-major entries.
    entries: Vec<u32>,
}

impl Mat {
    pub fn new(field: Arc<Field>, rows: &[Vec<u32>]) -> Result<Self, AlgebraError> {
        let dim = rows.len();
        if !(2..=3).contains(&dim) || rows.iter().any(|r| r.len() != dim) {
            return Err(AlgebraError::BadDimension(dim));
        }
        let entries: Vec<u32> = rows.iter().flatten().copied().collect();
        if let Some(&e) = entries.iter().find(|&&e| !field.contains(e)) {
            return Err(AlgebraError::EntryOutOfField(e));
        }
        Ok(Mat {
            field,
            dim,
            entries,
        })
    }

    pub fn identity(field: Arc<Field>, dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Mat {
            field,
            dim,
            entries,
        }
    }

    pub fn diagonal(field: Arc<Field>, diag: &[u32]) -> Result<Self, AlgebraError> {
        let dim = diag.len();
        let rows: Vec<Vec<u32>> = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { diag[i] } else { 0 }).collect())
            .collect();
        Mat::new(field, &rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    fn same_carrier(&self, other: &Mat) -> bool {
        self.dim == other.dim && self.field == other.field
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, AlgebraError> {
        if !self.same_carrier(other) {
            return Err(AlgebraError::CarrierMismatch);
        }
        let (f, d) = (&self.field, self.dim);
        let mut entries = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = 0;
                for k in 0..d {
                    acc = f.add(acc, f.mul(self.entry(i, k), other.entry(k, j)));
                }
                entries[i * d + j] = acc;
            }
        }
        Ok(Mat {
            field: self.field.clone(),
            dim: d,
            entries,
        })
    }

    fn minor2(&self, r: [usize; 2], c: [usize; 2]) -> u32 {
        let f = &self.field;
        f.sub(
            f.mul(self.entry(r[0], c[0]), self.entry(r[1], c[1])),
            f.mul(self.entry(r[0], c[1]), self.entry(r[1], c[0])),
        )
    }

    pub fn det(&self) -> u32 {
        let f = &self.field;
        match self.dim {
            2 => self.minor2([0, 1], [0, 1]),
            3 => {
                let mut acc = 0;
                for j in 0..3 {
                    let cols = others(j);
                    let term = f.mul(self.entry(0, j), self.minor2([1, 2], cols));
                    acc = if j % 2 == 0 {
                        f.add(acc, term)
                    } else {
                        f.sub(acc, term)
                    };
                }
                acc
            }
            _ => unreachable!("dimension checked at construction"),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }

    /// Adjugate matrix: transpose of the cofactor matrix.
    pub fn adjugate(&self) -> Mat {
        let f = &self.field;
        let d = self.dim;
        let mut entries = vec![0; d * d];
        match d {
            2 => {
                entries[0] = self.entry(1, 1);
                entries[1] = f.neg(self.entry(0, 1));
                entries[2] = f.neg(self.entry(1, 0));
                entries[3] = self.entry(0, 0);
            }
            3 => {
                for i in 0..3 {
                    for j in 0..3 {
                        let cof = self.minor2(others(i), others(j));
                        let cof = if (i + j) % 2 == 0 { cof } else { f.neg(cof) };
                        entries[j * 3 + i] = cof;
                    }
                }
            }
            _ => unreachable!("dimension checked at construction"),
        }
        Mat {
            field: self.field.clone(),
            dim: d,
            entries,
        }
    }

    /// Inverse via the adjugate; `None` when singular.
    pub fn try_inverse(&self) -> Option<Mat> {
        let det_inv = self.field.inv(self.det())?;
        let mut adj = self.adjugate();
        for e in adj.entries.iter_mut() {
            *e = self.field.mul(*e, det_inv);
        }
        Some(adj)
    }
}

fn others(i: usize) -> [usize; 2] {
    match i {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.same_carrier(other) && self.entries == other.entries
    }
}

impl Eq for Mat {}

impl Hash for Mat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.entries.hash(state);
    }
}

impl PartialOrd for Mat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mat {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.dim, &self.entries).cmp(&(other.dim, &other.entries))
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .chunks(self.dim)
            .map(|r| {
                let r: Vec<String> = r.iter().map(|e| e.to_string()).collect();
                format!("[{}]", r.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl GroupElement for Mat {
    fn compose(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.mul(other)
    }

    fn inverse(&self) -> Self {
        self.try_inverse().expect("group elements are invertible")
    }

    fn identity_like(&self) -> Self {
        Mat::identity(self.field.clone(), self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32, n: u32) -> Arc<Field> {
        Arc::new(Field::new(p, n).unwrap())
    }

    #[test]
    fn unipotent_involution_in_char_2() {
        let f = field(2, 1);
        let m = Mat::new(f, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(m.inverse(), m);
    }

    #[test]
    fn inverse_law_3x3() {
        let f = field(5, 1);
        let m = Mat::new(f.clone(), &[vec![1, 2, 0], vec![3, 1, 4], vec![0, 2, 2]]).unwrap();
        assert!(m.is_invertible());
        assert_eq!(
            m.compose(&m.inverse()).unwrap(),
            Mat::identity(f.clone(), 3)
        );
        assert_eq!(m.inverse().compose(&m).unwrap(), Mat::identity(f, 3));
    }

    #[test]
    fn carrier_checks() {
        let a = Mat::identity(field(2, 1), 2);
        let b = Mat::identity(field(3, 1), 2);
        assert_eq!(a.mul(&b), Err(AlgebraError::CarrierMismatch));
        assert_eq!(
            Mat::new(field(3, 1), &[vec![1, 3], vec![0, 1]]).unwrap_err(),
            AlgebraError::EntryOutOfField(3)
        );
        assert!(Mat::new(field(3, 1), &[vec![1, 2, 0], vec![0, 1]]).is_err());
    }

    /// Adjugate inverse against brute-force search over every 2×2 matrix.
    #[test]
    fn adjugate_matches_brute_force() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3)] {
            let f = field(p, n);
            let q = f.size();
            let all: Vec<Mat> = (0..q.pow(4))
                .map(|code| {
                    let e: Vec<u32> = (0..4).map(|i| (code / q.pow(i)) % q).collect();
                    Mat::new(f.clone(), &[vec![e[0], e[1]], vec![e[2], e[3]]]).unwrap()
                })
                .collect();
            let id = Mat::identity(f.clone(), 2);
            for m in &all {
                let brute = all.iter().find(|x| m.mul(x).unwrap() == id);
                assert_eq!(m.try_inverse().as_ref(), brute, "GF({q}) {m}");
            }
        }
    }
}
