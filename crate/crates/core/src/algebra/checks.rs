use num_traits::{One, Zero};

use super::table::{axpy, SparseVec, StructureTable};
use super::ParamVector;
use crate::exactnum::QiScalar;

/// The second-class multiplication table for `L(β)`:
///
/// ```text
/// [e_0,e_0] = e_2
/// [e_i,e_0] = e_{i+1}                      2 ≤ i ≤ n−1
/// [e_0,e_1] = β_3 e_3 + … + β_n e_n
/// [e_1,e_1] = γ e_n
/// [e_j,e_1] = β_3 e_{j+2} + … + β_{n+1−j} e_n  2 ≤ j ≤ n−2
/// ```
///
/// Every other product, `[e_1,e_0]` included, is zero.
pub fn build_second_class(p: &ParamVector) -> StructureTable {
    let n = p.n();
    let mut t = StructureTable::zero(n + 1);
    let one = QiScalar::one();
    let mut put = |i: usize, j: usize, k: usize, v: &QiScalar| t.add(i, j, k, v).expect("indices in 0..=n");
    put(0, 0, 2, &one);
    for i in 2..n {
        put(i, 0, i + 1, &one);
    }
    for k in 3..=n {
        put(0, 1, k, p.beta(k));
    }
    put(1, 1, n, p.gamma());
    for j in 2..=n.saturating_sub(2) {
        for k in 3..=(n + 1 - j) {
            put(j, 1, j + k - 1, p.beta(k));
        }
    }
    t
}

/// A basis triple at which the Leibniz identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizViolation {
    pub triple: (usize, usize, usize),
    /// `[x,[y,z]] − [[x,y],z] + [[x,z],y]`, nonzero.
    pub defect: SparseVec,
}

fn basis(i: usize) -> SparseVec {
    SparseVec::from([(i, QiScalar::one())])
}

/// Leibniz defect of the basis triple `(x, y, z)`.
pub fn leibniz_defect(t: &StructureTable, x: usize, y: usize, z: usize) -> SparseVec {
    let (ex, ey, ez) = (basis(x), basis(y), basis(z));
    let mut d = t.bracket(&ex, &t.product(y, z));
    axpy(&mut d, &QiScalar::from_int(-1), &t.bracket(&t.product(x, y), &ez));
    axpy(&mut d, &QiScalar::one(), &t.bracket(&t.product(x, z), &ey));
    d
}

/// Checks `[x,[y,z]] = [[x,y],z] − [[x,z],y]` on every basis triple and
/// reports all failing triples.
pub fn leibniz_check(t: &StructureTable) -> Result<(), Vec<LeibnizViolation>> {
    let d = t.dim();
    let mut violations = Vec::new();
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let defect = leibniz_defect(t, x, y, z);
                if !defect.is_empty() {
                    violations.push(LeibnizViolation { triple: (x, y, z), defect });
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Dimensions of `L^1 = L, L^{k+1} = [L^k, L]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerCentralSeries {
    /// `dim L^1, dim L^2, …`; ends at 0 for nilpotent algebras, otherwise at
    /// the first repeated (stable) dimension.
    pub dims: Vec<usize>,
    pub nilpotent: bool,
}

/// Row-reduce and return an echelon basis of the span.
fn echelon_basis(dim: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Vec<Vec<QiScalar>> {
    let mut rows: Vec<Vec<QiScalar>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for v in vectors {
        let mut row = vec![QiScalar::zero(); dim];
        for (k, c) in v {
            row[k] = c;
        }
        for (r, &pc) in rows.iter().zip(&pivots) {
            if !row[pc].is_zero() {
                let f = row[pc].clone();
                for k in 0..dim {
                    if !r[k].is_zero() {
                        let sub = &f * &r[k];
                        row[k] -= &sub;
                    }
                }
            }
        }
        if let Some(pc) = row.iter().position(|c| !c.is_zero()) {
            let inv = row[pc].inv().expect("pivot is nonzero");
            for c in row.iter_mut() {
                *c *= &inv;
            }
            // Keep earlier rows reduced against the new pivot.
            for r in rows.iter_mut() {
                if !r[pc].is_zero() {
                    let f = r[pc].clone();
                    for k in 0..dim {
                        if !row[k].is_zero() {
                            let sub = &f * &row[k];
                            r[k] -= &sub;
                        }
                    }
                }
            }
            rows.push(row);
            pivots.push(pc);
        }
    }
    rows
}

pub fn lower_central_dims(t: &StructureTable) -> LowerCentralSeries {
    let d = t.dim();
    let mut dims = vec![d];
    let mut current: Vec<SparseVec> = (0..d).map(basis).collect();
    loop {
        let spanning = current.iter().flat_map(|v| (0..d).map(move |j| t.bracket(v, &basis(j))));
        let next = echelon_basis(d, spanning);
        let nd = next.len();
        let prev = *dims.last().unwrap();
        if nd == prev && nd > 0 {
            return LowerCentralSeries { dims, nilpotent: false };
        }
        dims.push(nd);
        if nd == 0 {
            return LowerCentralSeries { dims, nilpotent: true };
        }
        current = next
            .into_iter()
            .map(|row| row.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
    }
}

/// `dim L^i = d − i` for `2 ≤ i ≤ d`, where `d = dim L`.
pub fn is_filiform(t: &StructureTable) -> bool {
    let d = t.dim();
    if d < 2 {
        return false;
    }
    let series = lower_central_dims(t);
    let mut expected = vec![d];
    expected.extend((2..=d).map(|i| d - i));
    series.nilpotent && series.dims == expected
}

/// Anticommutativity `γ_{ij}^k = −γ_{ji}^k`.
pub fn is_lie(t: &StructureTable) -> bool {
    let d = t.dim();
    (0..d).all(|i| {
        (i..d).all(|j| {
            let a = t.product(i, j);
            let b = t.product(j, i);
            let mut s = a;
            axpy(&mut s, &QiScalar::one(), &b);
            s.is_empty()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QiScalar {
        s.parse().unwrap()
    }

    fn entries(v: &SparseVec) -> Vec<(usize, String)> {
        v.iter().map(|(&k, c)| (k, c.to_string())).collect()
    }

    #[test]
    fn second_class_n4() {
        let t = build_second_class(&ParamVector::from_ints(&[1, 1, 2]).unwrap());
        let got: Vec<_> = t.products().map(|((i, j), v)| ((i, j), entries(v))).collect();
        let one = "1".to_string();
        assert_eq!(
            got,
            vec![
                ((0, 0), vec![(2, one.clone())]),
                ((0, 1), vec![(3, one.clone()), (4, one.clone())]),
                ((1, 1), vec![(4, "2".to_string())]),
                ((2, 0), vec![(3, one.clone())]),
                ((2, 1), vec![(4, one.clone())]),
                ((3, 0), vec![(4, one)]),
            ]
        );
        assert!(t.product(1, 0).is_empty());
    }

    #[test]
    fn second_class_all_zero_params() {
        let t = build_second_class(&ParamVector::from_ints(&[0, 0, 0]).unwrap());
        let keys: Vec<_> = t.products().map(|(k, _)| k).collect();
        assert_eq!(keys, vec![(0, 0), (2, 0), (3, 0)]);
    }

    #[test]
    fn abelian_is_leibniz() {
        assert!(leibniz_check(&StructureTable::zero(4)).is_ok());
    }

    #[test]
    fn hand_evaluated_violation() {
        // [e1,e1] = e2, [e1,e2] = e2 in dim 3: at (e1,e1,e1) the left side
        // is [e1,[e1,e1]] = [e1,e2] = e2 while [[e1,e1],e1] − [[e1,e1],e1] = 0.
        let mut t = StructureTable::zero(3);
        t.set(1, 1, 2, q("1")).unwrap();
        t.set(1, 2, 2, q("1")).unwrap();
        let v = leibniz_check(&t).unwrap_err();
        let at = v.iter().find(|x| x.triple == (1, 1, 1)).expect("violation at (1,1,1)");
        assert_eq!(entries(&at.defect), vec![(2, "1".to_string())]);
        for x in &v {
            assert_eq!(leibniz_defect(&t, x.triple.0, x.triple.1, x.triple.2), x.defect);
        }
    }

    #[test]
    fn lower_central_series() {
        assert_eq!(lower_central_dims(&StructureTable::zero(5)), LowerCentralSeries { dims: vec![5, 0], nilpotent: true });
        let t = build_second_class(&ParamVector::from_ints(&[1, 0, 1]).unwrap());
        assert_eq!(lower_central_dims(&t).dims, vec![5, 3, 2, 1, 0]);
        let mut s = StructureTable::zero(2);
        s.set(1, 1, 1, q("1")).unwrap();
        let series = lower_central_dims(&s);
        assert!(!series.nilpotent);
        assert_eq!(series.dims, vec![2, 1]);
    }

    #[test]
    fn filiform_examples() {
        let t = build_second_class(&ParamVector::from_tuple(vec![q("2"), q("-1/3"), q("0+1*i"), q("5")]).unwrap());
        assert!(is_filiform(&t));
        assert!(!is_filiform(&StructureTable::zero(5)));
        // Two copies of the 3-dimensional filiform algebra [a,a] = c, [b,a] = c.
        let mut block = StructureTable::zero(3);
        block.set(0, 0, 2, q("1")).unwrap();
        block.set(1, 0, 2, q("1")).unwrap();
        assert!(is_filiform(&block));
        let sum = block.direct_sum(&block);
        assert!(leibniz_check(&sum).is_ok());
        assert!(!is_filiform(&sum));
    }

    #[test]
    fn lie_examples() {
        assert!(!is_lie(&build_second_class(&ParamVector::from_ints(&[0, 0, 0]).unwrap())));
        assert!(is_lie(&StructureTable::zero(3)));
        let mut t = StructureTable::zero(4);
        t.set(1, 2, 3, q("1")).unwrap();
        t.set(2, 1, 3, q("-1")).unwrap();
        assert!(is_lie(&t));
    }
}
