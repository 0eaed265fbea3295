use crate::algebra::StructureAlgebra;
use crate::linalg::{axpy, FieldSpec, Matrix, Scalar};

use super::HopfError;

/// A finite-dimensional coalgebra; the source side of a convolution algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    field: FieldSpec,
    dim: usize,
    // nonzero terms (a, b, coefficient) of Δ(e_i)
    terms: Vec<Vec<(usize, usize, Scalar)>>,
    counit: Vec<Scalar>,
}

impl Coalgebra {
    /// `comul[i][a*dim + b]` is the coefficient of `e_a ⊗ e_b` in `Δ(e_i)`.
    pub fn new(field: FieldSpec, comul: Vec<Vec<Scalar>>, counit: Vec<Scalar>) -> Self {
        let dim = counit.len();
        let terms = comul
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(ab, c)| (ab / dim, ab % dim, c.clone()))
                    .collect()
            })
            .collect();
        Coalgebra {
            field,
            dim,
            terms,
            counit,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn terms(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.terms[i]
    }

    /// `C ⊗ D` with `Δ(c⊗d) = Σ (c₁⊗d₁) ⊗ (c₂⊗d₂)`; `c⊗d` has index `c*dim(D) + d`.
    pub fn tensor(&self, other: &Coalgebra) -> Coalgebra {
        let m = other.dim;
        let dim = self.dim * m;
        let mut terms = Vec::with_capacity(dim);
        let mut counit = Vec::with_capacity(dim);
        for i in 0..self.dim {
            for j in 0..m {
                let mut acc: Vec<(usize, usize, Scalar)> = Vec::new();
                for (a, b, x) in &self.terms[i] {
                    for (c, d, y) in &other.terms[j] {
                        acc.push((a * m + c, b * m + d, x * y));
                    }
                }
                acc.sort_by_key(|t| (t.0, t.1));
                let mut merged: Vec<(usize, usize, Scalar)> = Vec::with_capacity(acc.len());
                for (l, r, c) in acc {
                    match merged.last_mut() {
                        Some(last) if last.0 == l && last.1 == r => last.2 += &c,
                        _ => merged.push((l, r, c)),
                    }
                }
                merged.retain(|t| !t.2.is_zero());
                terms.push(merged);
                counit.push(&self.counit[i] * &other.counit[j]);
            }
        }
        Coalgebra {
            field: self.field,
            dim,
            terms,
            counit,
        }
    }
}

fn check_shape(f: &Matrix, coalg: &Coalgebra, target: &StructureAlgebra) -> Result<(), HopfError> {
    if f.rows() != target.dim() || f.cols() != coalg.dim() {
        return Err(HopfError::Shape(format!(
            "convolution map must be {}×{}, got {}×{}",
            target.dim(),
            coalg.dim(),
            f.rows(),
            f.cols()
        )));
    }
    Ok(())
}

/// The convolution identity `uε`: column `c` is `ε(e_c)·1`.
pub fn convolution_unit(coalg: &Coalgebra, target: &StructureAlgebra) -> Matrix {
    let columns: Vec<Vec<Scalar>> = coalg
        .counit
        .iter()
        .map(|e| target.unit().iter().map(|u| u * e).collect())
        .collect();
    Matrix::from_columns(coalg.field, target.dim(), &columns).expect("unit columns")
}

/// `(f * g)(c) = Σ f(c₁) g(c₂)`; maps are matrices whose column `c` is the image of `e_c`.
pub fn convolve(
    f: &Matrix,
    g: &Matrix,
    coalg: &Coalgebra,
    target: &StructureAlgebra,
) -> Result<Matrix, HopfError> {
    check_shape(f, coalg, target)?;
    check_shape(g, coalg, target)?;
    let fc: Vec<Vec<Scalar>> = (0..coalg.dim).map(|c| f.column(c)).collect();
    let gc: Vec<Vec<Scalar>> = (0..coalg.dim).map(|c| g.column(c)).collect();
    let columns: Vec<Vec<Scalar>> = (0..coalg.dim)
        .map(|c| {
            let mut out = target.zero();
            for (a, b, coef) in &coalg.terms[c] {
                axpy(&mut out, coef, &target.mul(&fc[*a], &gc[*b]));
            }
            out
        })
        .collect();
    Ok(Matrix::from_columns(coalg.field, target.dim(), &columns)?)
}

/// Solves `f * g = uε` for `g` and keeps it only if `g * f = uε` as well.
pub fn convolution_invert(
    f: &Matrix,
    coalg: &Coalgebra,
    target: &StructureAlgebra,
) -> Result<Option<Matrix>, HopfError> {
    check_shape(f, coalg, target)?;
    let (r_dim, c_dim) = (target.dim(), coalg.dim);
    let field = coalg.field;
    let left_mults: Vec<Matrix> = (0..c_dim)
        .map(|a| target.left_mult_matrix(&f.column(a)))
        .collect::<Result<_, _>>()?;
    // unknown g[r][b] sits at r*c_dim + b; equation (c, k) at c*r_dim + k
    let mut system = Matrix::zeros(field, c_dim * r_dim, r_dim * c_dim);
    let mut rhs = field.zeros(c_dim * r_dim);
    for c in 0..c_dim {
        for (a, b, coef) in &coalg.terms[c] {
            let l = &left_mults[*a];
            for k in 0..r_dim {
                for r in 0..r_dim {
                    let v = l.get(k, r);
                    if !v.is_zero() {
                        let (row, col) = (c * r_dim + k, r * c_dim + b);
                        let entry = system.get(row, col) + &(coef * v);
                        system.set(row, col, entry);
                    }
                }
            }
        }
        for k in 0..r_dim {
            rhs[c * r_dim + k] = &coalg.counit[c] * &target.unit()[k];
        }
    }
    let Some(solution) = system.solve(&rhs)? else {
        return Ok(None);
    };
    let g = Matrix::new(field, r_dim, c_dim, solution)?;
    let unit = convolution_unit(coalg, target);
    if convolve(&g, f, coalg, target)? != unit || convolve(f, &g, coalg, target)? != unit {
        return Ok(None);
    }
    Ok(Some(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::truncated_polynomial;
    use crate::hopf::{group_algebra, GroupTable};

    #[test]
    fn unit_is_self_inverse() {
        let k = FieldSpec::prime(3).unwrap();
        let h = group_algebra(&GroupTable::cyclic(2), k).unwrap();
        let r = truncated_polynomial(k, 2);
        let c = h.coalgebra();
        let u = convolution_unit(&c, &r);
        assert_eq!(convolution_invert(&u, &c, &r).unwrap(), Some(u.clone()));
        // trivial cocycle σ(h,k) = ε(h)ε(k)1 on H⊗H
        let cc = c.tensor(&c);
        let sigma = convolution_unit(&cc, &r);
        assert_eq!(convolution_invert(&sigma, &cc, &r).unwrap(), Some(sigma));
    }

    #[test]
    fn nilpotent_perturbation_is_inverted() {
        let k = FieldSpec::prime(2).unwrap();
        let h = group_algebra(&GroupTable::cyclic(2), k).unwrap();
        let r = truncated_polynomial(k, 2);
        let c = h.coalgebra();
        // f(1) = 1, f(g) = 1 + x
        let f = Matrix::from_i64(k, 2, 2, &[1, 1, 0, 1]);
        let g = convolution_invert(&f, &c, &r).unwrap().expect("invertible");
        assert_eq!(convolve(&f, &g, &c, &r).unwrap(), convolution_unit(&c, &r));
        // the zero map has no inverse
        assert_eq!(
            convolution_invert(&Matrix::zeros(k, 2, 2), &c, &r).unwrap(),
            None
        );
    }
}
