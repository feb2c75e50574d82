//! Dense tropical vectors and matrices.
//!
//! Column spans of [`TropicalMatrix`] play the role of tropical vector spaces.
//! The multiplicative conjugate of a column vector is a row vector; rows are
//! not given their own type; functions that consume a conjugate say so.

use crate::error::{Error, Result};
use crate::semifield::{Scalar, Semifield};

#[derive(Debug, Clone, PartialEq)]
pub struct TropicalVector {
    sf: Semifield,
    elems: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TropicalMatrix {
    sf: Semifield,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// The generalized distance between two vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distance {
    Finite(Scalar),
    /// Supports differ.
    Infinite,
}

impl Distance {
    pub fn finite(&self) -> Option<Scalar> {
        match *self {
            Distance::Finite(s) => Some(s),
            Distance::Infinite => None,
        }
    }
}

fn check_same(a: Semifield, b: Semifield) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SemifieldMismatch)
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

impl TropicalVector {
    pub fn new(sf: Semifield, elems: Vec<Scalar>) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::Empty);
        }
        Ok(TropicalVector { sf, elems })
    }

    /// Builds a vector from conventional reals, see [`Semifield::scalar`].
    pub fn from_reals(sf: Semifield, values: &[f64]) -> Result<Self> {
        let elems = values
            .iter()
            .map(|&v| sf.scalar(v))
            .collect::<Result<_>>()?;
        TropicalVector::new(sf, elems)
    }

    pub fn filled(sf: Semifield, len: usize, value: Scalar) -> Result<Self> {
        TropicalVector::new(sf, vec![value; len])
    }

    pub fn ones(sf: Semifield, len: usize) -> Result<Self> {
        TropicalVector::filled(sf, len, sf.one())
    }

    pub fn semifield(&self) -> Semifield {
        self.sf
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[Scalar] {
        &self.elems
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.elems[i]
    }

    pub fn to_reals(&self) -> Vec<f64> {
        self.elems.iter().map(|&s| self.sf.to_real(s)).collect()
    }

    pub fn is_regular(&self) -> bool {
        self.elems.iter().all(|s| !s.is_zero())
    }

    pub fn is_zero_vector(&self) -> bool {
        self.elems.iter().all(Scalar::is_zero)
    }

    /// Indices of the non-zero elements, zero-based.
    pub fn support(&self) -> Vec<usize> {
        self.elems
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Multiplicative conjugate `x⁻`, read as a row vector.
    pub fn conjugate(&self) -> Result<TropicalVector> {
        if self.is_zero_vector() {
            return Err(Error::ZeroVector);
        }
        let elems = self
            .elems
            .iter()
            .map(|&s| {
                if s.is_zero() {
                    Ok(Scalar::Zero)
                } else {
                    self.sf.inv(s)
                }
            })
            .collect::<Result<_>>()?;
        Ok(TropicalVector { sf: self.sf, elems })
    }

    /// `λ ⊗ x`.
    pub fn scale(&self, lambda: Scalar) -> TropicalVector {
        let elems = self.elems.iter().map(|&s| self.sf.mul(lambda, s)).collect();
        TropicalVector { sf: self.sf, elems }
    }

    /// Elementwise `x ⊕ y`.
    pub fn add(&self, other: &TropicalVector) -> Result<TropicalVector> {
        check_same(self.sf, other.sf)?;
        check_len(self.len(), other.len())?;
        let elems = self
            .elems
            .iter()
            .zip(&other.elems)
            .map(|(&a, &b)| self.sf.add(a, b))
            .collect();
        Ok(TropicalVector { sf: self.sf, elems })
    }

    /// Inner product `⊕_i self_i ⊗ other_i`; with `self` a conjugate this is
    /// the row-times-column product `x⁻y`.
    pub fn dot(&self, other: &TropicalVector) -> Result<Scalar> {
        check_same(self.sf, other.sf)?;
        check_len(self.len(), other.len())?;
        Ok(self
            .elems
            .iter()
            .zip(&other.elems)
            .fold(Scalar::Zero, |acc, (&a, &b)| {
                self.sf.add(acc, self.sf.mul(a, b))
            }))
    }

    /// Elementwise tolerant equality, see [`Semifield::approx_eq`].
    pub fn approx_eq(&self, other: &TropicalVector, tol: f64) -> bool {
        self.sf == other.sf
            && self.len() == other.len()
            && self
                .elems
                .iter()
                .zip(&other.elems)
                .all(|(&a, &b)| self.sf.approx_eq(a, b, tol))
    }
}

impl TropicalMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(sf: Semifield, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        check_len(rows * cols, data.len())?;
        Ok(TropicalMatrix {
            sf,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(sf: Semifield, rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            check_len(cols, row.len())?;
            for &v in row {
                data.push(sf.scalar(v)?);
            }
        }
        TropicalMatrix::new(sf, rows.len(), cols, data)
    }

    /// Square matrix with `diag` on the diagonal and zero elsewhere.
    pub fn diagonal(diag: &TropicalVector) -> TropicalMatrix {
        let n = diag.len();
        let mut data = vec![Scalar::Zero; n * n];
        for (i, &d) in diag.elems().iter().enumerate() {
            data[i * n + i] = d;
        }
        TropicalMatrix {
            sf: diag.semifield(),
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn identity(sf: Semifield, n: usize) -> Result<TropicalMatrix> {
        Ok(TropicalMatrix::diagonal(&TropicalVector::ones(sf, n)?))
    }

    pub fn semifield(&self) -> Semifield {
        self.sf
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_regular(&self) -> bool {
        self.data.iter().all(|s| !s.is_zero())
    }

    /// `A ⊗ x`.
    pub fn mul_vec(&self, x: &TropicalVector) -> Result<TropicalVector> {
        check_same(self.sf, x.semifield())?;
        check_len(self.cols, x.len())?;
        let sf = self.sf;
        let elems = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x.elems())
                    .fold(Scalar::Zero, |acc, (&a, &b)| sf.add(acc, sf.mul(a, b)))
            })
            .collect();
        Ok(TropicalVector { sf, elems })
    }

    /// Row vector times matrix, `r A`, where `r` is typically a conjugate.
    pub fn row_mul(&self, r: &TropicalVector) -> Result<TropicalVector> {
        check_same(self.sf, r.semifield())?;
        check_len(self.rows, r.len())?;
        let sf = self.sf;
        let mut elems = vec![Scalar::Zero; self.cols];
        for (i, &ri) in r.elems().iter().enumerate() {
            for (acc, &a) in elems.iter_mut().zip(self.row(i)) {
                *acc = sf.add(*acc, sf.mul(ri, a));
            }
        }
        Ok(TropicalVector { sf, elems })
    }

    /// `A ⊗ B`.
    pub fn mul_mat(&self, other: &TropicalMatrix) -> Result<TropicalMatrix> {
        check_same(self.sf, other.sf)?;
        check_len(self.cols, other.rows)?;
        let sf = self.sf;
        let mut data = vec![Scalar::Zero; self.rows * other.cols];
        for i in 0..self.rows {
            for (k, &a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (acc, &b) in data[i * other.cols..(i + 1) * other.cols]
                    .iter_mut()
                    .zip(other.row(k))
                {
                    *acc = sf.add(*acc, sf.mul(a, b));
                }
            }
        }
        TropicalMatrix::new(sf, self.rows, other.cols, data)
    }
}

/// Generalized distance `d(a, b) = b⁻a ⊕ a⁻b`.
///
/// Finite when both vectors share a non-empty support (the unit when both are
/// zero vectors), [`Distance::Infinite`] when the supports differ.
pub fn distance(a: &TropicalVector, b: &TropicalVector) -> Result<Distance> {
    check_same(a.semifield(), b.semifield())?;
    check_len(a.len(), b.len())?;
    let sf = a.semifield();
    let mut acc = sf.one();
    for (&x, &y) in a.elems().iter().zip(b.elems()) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => {}
            (false, false) => {
                acc = sf.add(acc, sf.add(sf.div(x, y)?, sf.div(y, x)?));
            }
            _ => return Ok(Distance::Infinite),
        }
    }
    Ok(Distance::Finite(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const MP: Semifield = Semifield::MaxPlus;

    fn v(vals: &[f64]) -> TropicalVector {
        TropicalVector::from_reals(MP, vals).unwrap()
    }

    #[test]
    fn mat_vec_examples() {
        let a = TropicalMatrix::from_rows(MP, &[vec![0.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(a.mul_vec(&v(&[0.0, 0.0])).unwrap(), v(&[0.0, 1.0]));

        let zero = TropicalVector::filled(MP, 2, Scalar::Zero).unwrap();
        assert!(a.mul_vec(&zero).unwrap().is_zero_vector());

        let id = TropicalMatrix::identity(MP, 2).unwrap();
        let x = v(&[3.5, -1.25]);
        assert_eq!(id.mul_vec(&x).unwrap(), x);

        assert_eq!(
            a.mul_vec(&v(&[1.0])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn conjugates() {
        assert_eq!(v(&[1.0, 2.0]).conjugate().unwrap(), v(&[-1.0, -2.0]));
        assert_eq!(
            v(&[f64::NEG_INFINITY, 5.0]).conjugate().unwrap(),
            v(&[f64::NEG_INFINITY, -5.0])
        );
        let mt = TropicalVector::from_reals(Semifield::MaxTimes, &[2.0, 4.0]).unwrap();
        assert_eq!(mt.conjugate().unwrap().to_reals(), vec![0.5, 0.25]);
        let zero = TropicalVector::filled(MP, 3, Scalar::Zero).unwrap();
        assert_eq!(zero.conjugate(), Err(Error::ZeroVector));
    }

    #[test]
    fn supports() {
        let ninf = f64::NEG_INFINITY;
        assert_eq!(v(&[ninf, 1.0, ninf]).support(), vec![1]);
        assert_eq!(v(&[1.0, 2.0, 3.0]).support(), vec![0, 1, 2]);
        assert!(v(&[ninf, ninf]).support().is_empty());
    }

    #[test]
    fn distance_examples() {
        let a = v(&[1.0, 2.0]);
        assert_eq!(distance(&a, &a).unwrap(), Distance::Finite(MP.one()));
        assert_eq!(
            distance(&a, &v(&[3.0, 1.0])).unwrap(),
            Distance::Finite(Scalar::Finite(2.0))
        );
        assert_eq!(
            distance(&v(&[1.0, f64::NEG_INFINITY]), &v(&[1.0, 1.0])).unwrap(),
            Distance::Infinite
        );
        let z = v(&[f64::NEG_INFINITY, f64::NEG_INFINITY]);
        assert_eq!(distance(&z, &z).unwrap(), Distance::Finite(MP.one()));
    }

    #[test]
    fn max_times_distance_is_ratio() {
        let sf = Semifield::MaxTimes;
        let a = TropicalVector::from_reals(sf, &[1.0, 8.0]).unwrap();
        let b = TropicalVector::from_reals(sf, &[2.0, 2.0]).unwrap();
        assert_eq!(
            distance(&a, &b).unwrap(),
            Distance::Finite(Scalar::Finite(4.0))
        );
    }

    #[test]
    fn row_and_matrix_products() {
        let a = TropicalMatrix::from_rows(MP, &[vec![1.0, 2.0], vec![3.0, 0.0]]).unwrap();
        // (0, -1) A = (max(1, 2), max(2, -1))
        assert_eq!(a.row_mul(&v(&[0.0, -1.0])).unwrap(), v(&[2.0, 2.0]));
        let id = TropicalMatrix::identity(MP, 2).unwrap();
        assert_eq!(id.mul_mat(&a).unwrap(), a);
        let d = TropicalMatrix::diagonal(&v(&[10.0, 20.0]));
        let da = d.mul_mat(&a).unwrap();
        assert_eq!(da.row(0), &[Scalar::Finite(11.0), Scalar::Finite(12.0)]);
        assert_eq!(da.row(1), &[Scalar::Finite(23.0), Scalar::Finite(20.0)]);
    }

    fn vec_pair(n: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        (
            proptest::collection::vec(-50.0..50.0f64, n),
            proptest::collection::vec(-50.0..50.0f64, n),
        )
    }

    proptest! {
        #[test]
        fn distance_is_a_chebyshev_metric((a, b) in (1usize..8).prop_flat_map(vec_pair), lambda in -20.0..20.0f64) {
            let (va, vb) = (v(&a), v(&b));
            let dab = distance(&va, &vb).unwrap().finite().unwrap();
            let dba = distance(&vb, &va).unwrap().finite().unwrap();
            prop_assert_eq!(dab, dba);
            prop_assert!(MP.leq(MP.one(), dab));
            let cheb = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            prop_assert!((dab.value().unwrap() - cheb).abs() <= 1e-12);
            let l = Scalar::Finite(lambda);
            let scaled = distance(&va.scale(l), &vb.scale(l)).unwrap().finite().unwrap();
            prop_assert!((scaled.value().unwrap() - cheb).abs() <= 1e-12);
        }

        #[test]
        fn mat_vec_is_linear(
            rows in proptest::collection::vec(proptest::collection::vec(-10.0..10.0f64, 3), 1..5),
            (x, y) in vec_pair(3),
            lambda in -10.0..10.0f64,
        ) {
            let a = TropicalMatrix::from_rows(MP, &rows).unwrap();
            let (vx, vy) = (v(&x), v(&y));
            let lhs = a.mul_vec(&vx.add(&vy).unwrap()).unwrap();
            let rhs = a.mul_vec(&vx).unwrap().add(&a.mul_vec(&vy).unwrap()).unwrap();
            prop_assert!(lhs.approx_eq(&rhs, 1e-12));
            let l = Scalar::Finite(lambda);
            let lhs = a.mul_vec(&vx.scale(l)).unwrap();
            let rhs = a.mul_vec(&vx).unwrap().scale(l);
            prop_assert!(lhs.approx_eq(&rhs, 1e-12));
        }
    }
}
