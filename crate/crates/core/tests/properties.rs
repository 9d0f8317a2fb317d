use nearly_kahler::deformation::InvariantComplex;
use nearly_kahler::su2_classify::{check_graph, random_rotation};
use nearly_kahler::tensor::{sym_eigendecomposition, trilinear_eval, Matrix, Tensor3};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn symmetric(d: usize, entries: &[f64]) -> Matrix {
    let mut m = Matrix::zeros(d, d);
    let mut k = 0;
    for i in 0..d {
        for j in i..d {
            m[(i, j)] = entries[k];
            m[(j, i)] = entries[k];
            k += 1;
        }
    }
    m
}

fn sym_input() -> impl Strategy<Value = Matrix> {
    (1usize..=12).prop_flat_map(|d| {
        prop::collection::vec(-10.0f64..10.0, d * (d + 1) / 2).prop_map(move |e| symmetric(d, &e))
    })
}

fn small_ints(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((-8i32..=8).prop_map(f64::from), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eigendecomposition_reconstructs(m in sym_input()) {
        let tol = 1e-12;
        let e = sym_eigendecomposition(&m, tol).unwrap();
        let scale = m.max_abs().max(1.0);
        prop_assert!(e.reconstruction_residual(&m) <= 100.0 * tol * scale);
        prop_assert!(e.orthogonality_residual() <= 100.0 * tol);
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn trilinear_is_linear_in_each_slot(
        t in small_ints(27),
        x in small_ints(3), x2 in small_ints(3),
        y in small_ints(3), z in small_ints(3),
        s in -5i32..=5,
    ) {
        let t = Tensor3::from_fn(3, |i, j, k| t[(i * 3 + j) * 3 + k]);
        let s = f64::from(s);
        let comb: Vec<f64> = x.iter().zip(&x2).map(|(a, b)| a + s * b).collect();
        let f = |a: &[f64], b: &[f64], c: &[f64]| trilinear_eval(&t, a, b, c).unwrap();
        prop_assert_eq!(f(&comb, &y, &z), f(&x, &y, &z) + s * f(&x2, &y, &z));
        prop_assert_eq!(f(&y, &comb, &z), f(&y, &x, &z) + s * f(&y, &x2, &z));
        prop_assert_eq!(f(&y, &z, &comb), f(&y, &z, &x) + s * f(&y, &z, &x2));
    }

    #[test]
    fn graph_flags_are_rotation_invariant(
        seed in any::<u64>(),
        class in 0usize..5,
        generic in prop::collection::vec(-2.0f64..2.0, 9),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = match class {
            0 => Matrix::from_diagonal(&[1.0, 1.0, 1.0]),
            1 => Matrix::from_diagonal(&[1.0, 1.0, -1.0]),
            2 => Matrix::from_diagonal(&[1.0, -1.0, -1.0]),
            3 => Matrix::from_diagonal(&[-1.0, -1.0, -1.0]),
            _ => Matrix::from_fn(3, 3, |i, j| generic[3 * i + j]),
        };
        let q = random_rotation(&mut rng);
        let a = &(&q * &a) * &q.transpose();
        let r = random_rotation(&mut rng);
        let rotated = &(&r * &a) * &r.transpose();
        let (g, h) = (check_graph(&a, 1e-9), check_graph(&rotated, 1e-9));
        prop_assert_eq!((g.lagrangian, g.subalgebra), (h.lagrangian, h.subalgebra));
    }

    #[test]
    fn exterior_derivative_squares_to_zero(n in prop::collection::vec(-3.0f64..3.0, 3)) {
        // Unimodular three-dimensional Lie algebras: [e2,e3] = n1 e1 and cyclically.
        let c = Tensor3::from_fn(3, |i, j, k| {
            let sign = match (i, j) {
                (1, 2) | (2, 0) | (0, 1) => 1.0,
                (2, 1) | (0, 2) | (1, 0) => -1.0,
                _ => return 0.0,
            };
            if 3 - i - j == k { sign * n[k] } else { 0.0 }
        });
        prop_assert!(InvariantComplex::new(c).d_squared_residual() <= 1e-12);
    }
}
