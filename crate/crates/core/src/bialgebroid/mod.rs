//! Left and right bialgebroids, their Galois maps, full Hopf algebroids,
//! star structures, left-right pairs and instance-level bar checks.

pub mod full;
pub mod galois;
pub mod left;
pub mod modules;
pub mod pair;
pub mod right;

pub use full::{check_full_hopf, check_full_star_hopf, FullHopfAlgebroid};
pub use galois::GaloisMap;
pub use left::{check_left_bialgebroid, LeftBialgebroid};
pub use pair::{check_pair, pair_from_full, PairData, PairFlags};
pub use right::{check_right_bialgebroid, RightBialgebroid};

use crate::algebra::FiniteStarAlgebra;
use crate::linalg::Matrix;
use crate::tensor::Junction;

/// Which side an element multiplies from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mul {
    Left,
    Right,
}

fn mul_op(alg: &FiniteStarAlgebra, x: &[crate::Q], side: Mul) -> Matrix {
    match side {
        Mul::Left => alg.left_mul_matrix(x),
        Mul::Right => alg.right_mul_matrix(x),
    }
}

/// Junction balancing `X m(b) (x) Y = X (x) m'(b) Y` style relations: column
/// `k` of `lmap` (resp. `rmap`) is the element multiplying the left (resp.
/// right) factor for base basis element `k`.
pub fn junction(alg: &FiniteStarAlgebra, lmap: &Matrix, lside: Mul, rmap: &Matrix, rside: Mul) -> Junction {
    assert_eq!(lmap.cols(), rmap.cols());
    let left = (0..lmap.cols()).map(|k| mul_op(alg, &lmap.column(k), lside)).collect();
    let right = (0..rmap.cols()).map(|k| mul_op(alg, &rmap.column(k), rside)).collect();
    Junction::new(left, right)
}
