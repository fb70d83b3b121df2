use proptest::prelude::*;

use trivext_core::fplinalg::{FpMatrix, Subspace};

const PRIMES: [u32; 4] = [2, 3, 5, 7];

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = FpMatrix> {
    (0..PRIMES.len(), 1..=max_rows, 1..=max_cols).prop_flat_map(|(pi, r, c)| {
        let p = PRIMES[pi];
        proptest::collection::vec(0..p, r * c).prop_map(move |d| FpMatrix::from_vec(p, r, c, d).unwrap())
    })
}

/// Two matrices over the same prime, `a` of shape `r x c` and `b` with `c` rows.
fn composable() -> impl Strategy<Value = (FpMatrix, FpMatrix)> {
    (0..PRIMES.len(), 1..=5usize, 1..=5usize, 1..=5usize).prop_flat_map(|(pi, r, c, k)| {
        let p = PRIMES[pi];
        (
            proptest::collection::vec(0..p, r * c),
            proptest::collection::vec(0..p, c * k),
        )
            .prop_map(move |(a, b)| {
                (
                    FpMatrix::from_vec(p, r, c, a).unwrap(),
                    FpMatrix::from_vec(p, c, k, b).unwrap(),
                )
            })
    })
}

fn vectors(p: u32, n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    proptest::collection::vec(proptest::collection::vec(0..p, n), 0..=max)
}

proptest! {
    #[test]
    fn rank_nullity(a in matrix(7, 7)) {
        prop_assert_eq!(a.rank() + a.kernel_basis().rows(), a.cols());
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn kernel_vectors_are_killed(a in matrix(6, 6)) {
        let k = a.kernel_basis();
        for v in k.row_vecs() {
            prop_assert!(a.mul_vec(&v).iter().all(|&x| x == 0));
        }
        prop_assert_eq!(k.rank(), k.rows());
    }

    #[test]
    fn rref_is_idempotent(a in matrix(6, 6)) {
        let once = a.rref();
        let twice = once.reduced.rref();
        prop_assert_eq!(&once.reduced, &twice.reduced);
        prop_assert_eq!(once.pivots, twice.pivots);
    }

    #[test]
    fn solve_finds_preimages((a, x) in composable().prop_map(|(a, b)| (a, b.col(0)))) {
        let b = a.mul_vec(&x);
        let y = a.solve(&b).unwrap();
        prop_assert!(y.is_some());
        prop_assert_eq!(a.mul_vec(&y.unwrap()), b);
    }

    #[test]
    fn solve_rejects_outside_the_image(a in matrix(5, 3), seed in any::<u64>()) {
        let p = a.p();
        let b: Vec<u32> = (0..a.rows()).map(|i| ((seed >> (4 * i)) as u32) % p).collect();
        let in_image = Subspace::col_span(&a).contains(&b);
        prop_assert_eq!(a.solve(&b).unwrap().is_some(), in_image);
    }

    #[test]
    fn products_associate_with_vectors((a, b) in composable()) {
        let ab = a.mul(&b);
        for c in 0..b.cols() {
            prop_assert_eq!(ab.col(c), a.mul_vec(&b.col(c)));
        }
        prop_assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()));
    }

    #[test]
    fn kron_mixed_product((a, c) in composable(), (b, d) in composable()) {
        prop_assume!(a.p() == b.p());
        let lhs = a.kron(&b).mul(&c.kron(&d));
        prop_assert_eq!(lhs, a.mul(&c).kron(&b.mul(&d)));
    }

    #[test]
    fn inverses(a in matrix(4, 4)) {
        prop_assume!(a.rows() == a.cols());
        match a.inverse() {
            Some(ai) => prop_assert_eq!(a.mul(&ai), FpMatrix::identity(a.p(), a.rows())),
            None => prop_assert!(a.rank() < a.rows()),
        }
    }

    #[test]
    fn subspace_dimension_formula(
        (p, n, us, ws) in (0..PRIMES.len(), 1..=6usize).prop_flat_map(|(pi, n)| {
            let p = PRIMES[pi];
            (Just(p), Just(n), vectors(p, n, 4), vectors(p, n, 4))
        })
    ) {
        let u = Subspace::from_vectors(p, n, &us);
        let w = Subspace::from_vectors(p, n, &ws);
        let sum = u.sum(&w);
        let meet = u.intersect(&w);
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(u.contains_subspace(&meet) && w.contains_subspace(&meet));
        prop_assert!(sum.contains_subspace(&u) && sum.contains_subspace(&w));
        let picked = u.independent_modulo(&ws);
        prop_assert_eq!(picked.len(), sum.dim() - u.dim());
    }

    #[test]
    fn coordinates_rebuild_vectors(
        (p, n, vs, coeffs) in (0..PRIMES.len(), 1..=6usize).prop_flat_map(|(pi, n)| {
            let p = PRIMES[pi];
            (Just(p), Just(n), vectors(p, n, 4), proptest::collection::vec(0..p, 4))
        })
    ) {
        let s = Subspace::from_vectors(p, n, &vs);
        let mut v = vec![0u32; n];
        for (w, &c) in vs.iter().zip(&coeffs) {
            for (x, &y) in v.iter_mut().zip(w) {
                *x = (*x + c * y) % p;
            }
        }
        let coords = s.coords(&v);
        prop_assert!(coords.is_some());
        let basis = s.basis_vectors();
        let mut back = vec![0u32; n];
        for (w, &c) in basis.iter().zip(&coords.unwrap()) {
            for (x, &y) in back.iter_mut().zip(w) {
                *x = (*x + c * y) % p;
            }
        }
        prop_assert_eq!(back, v);
    }
}
