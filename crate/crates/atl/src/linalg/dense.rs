use crate::scalar::{Ring, RingDescriptor, RingKind, Scalar};

use super::Matrix;

/// Reduced row echelon form: the first `pivots.len()` rows are nonzero,
/// with a 1 in column `pivots[i]` and zeros elsewhere in that column.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

fn cost(s: &Scalar) -> usize {
    match s {
        Scalar::Rational(r) => (r.numer().bits() + r.denom().bits()) as usize,
        Scalar::Cyc(c) => c
            .coeffs()
            .iter()
            .map(|r| if num_traits::Zero::is_zero(r) { 0 } else { 4 + (r.numer().bits() + r.denom().bits()) as usize })
            .sum(),
        other => other.render().len(),
    }
}

/// Fields only; `GenericV` matrices are moved into Q(v) first.
fn field_view(ring: &Ring, m: &Matrix) -> (Ring, Matrix) {
    match ring.kind() {
        RingKind::GenericV => {
            let f = Ring::new(RingDescriptor::RatFunc).unwrap();
            let mm = m.map(|x| f.eval(x.as_laurent().unwrap()));
            (f, mm)
        }
        RingKind::GenericVX(_) => panic!("exact elimination needs a field; specialize the second variable first"),
        _ => (ring.clone(), m.clone()),
    }
}

pub fn rref(ring: &Ring, m: &Matrix) -> (Ring, Rref) {
    let (f, mut a) = field_view(ring, m);
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).filter(|&i| !a.get(i, c).is_zero()).min_by_key(|&i| cost(a.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let x = a.get(p, j).clone();
                let y = a.get(r, j).clone();
                a.set(p, j, y);
                a.set(r, j, x);
            }
        }
        let inv = f.inv(a.get(r, c)).expect("nonzero field element");
        for j in c..cols {
            let x = a.get(r, j);
            if !x.is_zero() {
                let y = x * &inv;
                a.set(r, j, y);
            }
        }
        let pivot_row: Vec<(usize, Scalar)> =
            (c..cols).filter(|&j| !a.get(r, j).is_zero()).map(|j| (j, a.get(r, j).clone())).collect();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if factor.is_zero() {
                continue;
            }
            for (j, x) in &pivot_row {
                let y = a.get(i, *j) - &(&factor * x);
                a.set(i, *j, y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (f, Rref { matrix: a, pivots })
}

pub fn rank_exact(ring: &Ring, m: &Matrix) -> usize {
    rref(ring, m).1.pivots.len()
}

/// Basis of {x : m x = 0}, over the field the elimination ran in.
pub fn nullspace(ring: &Ring, m: &Matrix) -> (Ring, Vec<Vec<Scalar>>) {
    let (f, e) = rref(ring, m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &c in &e.pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![f.zero(); cols];
        x[free] = f.one();
        for (i, &pc) in e.pivots.iter().enumerate() {
            x[pc] = -e.matrix.get(i, free);
        }
        basis.push(x);
    }
    (f, basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_gram_like_matrix() {
        let r = Ring::generic();
        let b = r.beta();
        let m = Matrix::from_rows(&r, 2, vec![vec![b.clone(), r.one()], vec![r.one(), b.clone()]]);
        assert_eq!(rank_exact(&r, &m), 2);
        let c = Ring::root_of_unity(3).unwrap();
        let bc = c.beta();
        let mc = Matrix::from_rows(&c, 2, vec![vec![bc.clone(), c.one()], vec![c.one(), bc.clone()]]);
        // β = 1 at ℓ = 3
        assert_eq!(rank_exact(&c, &mc), 1);
    }

    #[test]
    fn nullspace_vectors_are_killed() {
        let r = Ring::parse("inst=2").unwrap();
        let m = Matrix::from_rows(
            &r,
            3,
            vec![vec![r.int(1), r.int(2), r.int(3)], vec![r.int(2), r.int(4), r.int(6)]],
        );
        let (f, ns) = nullspace(&r, &m);
        assert_eq!(ns.len(), 2);
        for x in ns {
            assert!(m.apply(&f, &x).iter().all(Scalar::is_zero));
        }
    }
}
