use proptest::prelude::*;

use trivext_core::algebra::{annihilator, Ideal, Ring};
use trivext_core::fplinalg::{FpMatrix, Subspace};
use trivext_core::modules::{
    direct_sum, dual, ext_dim, free_cover, hom_dim, hom_module, is_isomorphic, is_projective, minimal_generators,
    pushout, quotient_free, regular_module, tensor_module, tor_dim, FinModule, FinModuleMap, IsoVerdict,
};
use trivext_core::speclang::{
    deserialize_module, deserialize_ring, parse_ring, ring_from_expr, serialize_module, serialize_ring,
};
use trivext_core::Limits;

const RINGS: &[&str] = &[
    "gf(2)",
    "gf(3)",
    "gf(2, [1,1,1])",
    "quot(2, [0,0,1])",
    "quot(3, [0,0,1])",
    "quot(2, [0,0,0,1])",
    "trivext(gf(2), free(2))",
    "trivext(quot(2, [0,0,1]), quotfree(1, [(0,1)]))",
    "prod(gf(2), gf(2))",
    "prod(gf(3), quot(3, [0,0,1]))",
];

fn ring(i: usize) -> Ring {
    ring_from_expr(RINGS[i]).unwrap()
}

/// `R^copies / (relations)` from raw words. Most relations are first multiplied by a
/// nilpotent element so that the quotient rarely collapses to zero.
fn module_from(r: &Ring, copies: usize, raw: &[u32], flags: u32) -> FinModule {
    let (p, d) = (r.p(), r.dim());
    let nil = r.nilradical().basis_vectors();
    let rels: Vec<Vec<u32>> = raw
        .chunks_exact(copies * d)
        .enumerate()
        .map(|(k, c)| {
            let c: Vec<u32> = c.iter().map(|&x| x % p).collect();
            if (flags >> (2 * (k % 4))) & 3 == 0 {
                return c;
            }
            let mut n = r.zero();
            for (t, v) in nil.iter().enumerate() {
                let coef = (flags >> (8 + t)) & 1;
                for (a, &b) in n.iter_mut().zip(v) {
                    *a = (*a + coef * b) % p;
                }
            }
            c.chunks(d).flat_map(|x| r.mul_elements(&n, x)).collect()
        })
        .collect();
    quotient_free(r, copies, &rels).unwrap()
}

fn module_spec() -> impl Strategy<Value = (usize, Vec<u32>, u32)> {
    (1..=2usize, proptest::collection::vec(any::<u32>(), 0..24), any::<u32>())
}

fn ring_and_module() -> impl Strategy<Value = (Ring, FinModule)> {
    (0..RINGS.len(), module_spec()).prop_map(|(i, (copies, raw, flags))| {
        let r = ring(i);
        let m = module_from(&r, copies, &raw, flags);
        (r, m)
    })
}

fn ring_and_modules(k: usize) -> impl Strategy<Value = (Ring, Vec<FinModule>)> {
    (0..RINGS.len(), proptest::collection::vec(module_spec(), k)).prop_map(|(i, specs)| {
        let r = ring(i);
        let ms = specs.iter().map(|(c, raw, f)| module_from(&r, *c, raw, *f)).collect();
        (r, ms)
    })
}

fn lim() -> Limits {
    Limits::default()
}

fn conjugate(m: &FinModule, seed: u64) -> Option<(FinModule, FpMatrix)> {
    let n = m.dim();
    let p = m.p();
    let data: Vec<u32> = (0..n * n)
        .map(|i| (seed.wrapping_mul(6364136223846793005).rotate_left(i as u32 % 64) as u32 ^ i as u32) % p)
        .collect();
    let g = FpMatrix::from_vec(p, n, n, data).ok()?;
    let gi = g.inverse()?;
    let action = m.action().iter().map(|a| g.mul(a).mul(&gi)).collect();
    Some((FinModule::new(m.ring(), action).ok()?, g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn triple_annihilator((i, raw) in (0..RINGS.len(), proptest::collection::vec(any::<u32>(), 0..12))) {
        let r = ring(i);
        let vs: Vec<Vec<u32>> = raw.chunks_exact(r.dim()).map(|c| c.iter().map(|&x| x % r.p()).collect()).collect();
        let s = Subspace::from_vectors(r.p(), r.dim(), &vs);
        let a1 = annihilator(&r, &s);
        let a3 = annihilator(&r, annihilator(&r, a1.space()).space());
        prop_assert_eq!(a1.space(), a3.space());
        // Ann(S) kills S element-wise
        for x in a1.space().basis_vectors() {
            for y in &vs {
                prop_assert!(r.mul_elements(&x, y).iter().all(|&c| c == 0));
            }
        }
    }

    #[test]
    fn generated_ideals_are_closed((i, raw) in (0..RINGS.len(), proptest::collection::vec(any::<u32>(), 0..9))) {
        let r = ring(i);
        let vs: Vec<Vec<u32>> = raw.chunks_exact(r.dim()).map(|c| c.iter().map(|&x| x % r.p()).collect()).collect();
        let ideal = Ideal::generated_by(&r, &vs);
        for v in &vs {
            prop_assert!(ideal.contains(v));
        }
        for x in ideal.space().basis_vectors() {
            for j in 0..r.dim() {
                prop_assert!(ideal.contains(&r.mul_elements(&x, &r.basis_element(j))));
            }
        }
    }

    #[test]
    fn module_round_trip((r, m) in ring_and_module()) {
        let text = serialize_module(&m);
        prop_assert_eq!(deserialize_module(&text, &r).unwrap(), m);
        let rt = deserialize_ring(&serialize_ring(&r)).unwrap();
        prop_assert_eq!(&*rt, &*r);
    }

    #[test]
    fn biduality_and_dual_dims((_r, m) in ring_and_module()) {
        prop_assert_eq!(dual(&dual(&m)), m.clone());
        prop_assert_eq!(dual(&m).dim(), m.dim());
    }

    #[test]
    fn hom_from_the_ring_is_the_module((r, m) in ring_and_module()) {
        prop_assert_eq!(hom_dim(&regular_module(&r), &m).unwrap(), m.dim());
        prop_assert_eq!(tensor_module(&regular_module(&r), &m).unwrap().dim(), m.dim());
    }

    #[test]
    fn hom_tensor_adjunction((_r, ms) in ring_and_modules(3)) {
        let (m, n, l) = (&ms[0], &ms[1], &ms[2]);
        let lhs = hom_dim(&tensor_module(m, n).unwrap(), l).unwrap();
        let hn = hom_module(n, l).unwrap();
        let rhs = hom_dim(m, &hn.module).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_is_symmetric_in_dimension((_r, ms) in ring_and_modules(2)) {
        prop_assert_eq!(
            tensor_module(&ms[0], &ms[1]).unwrap().dim(),
            tensor_module(&ms[1], &ms[0]).unwrap().dim()
        );
    }

    #[test]
    fn ext_and_tor_are_additive((_r, ms) in ring_and_modules(3), i in 0..3usize) {
        let (a, b, c) = (&ms[0], &ms[1], &ms[2]);
        let ab = direct_sum(a, b).unwrap();
        prop_assert_eq!(
            ext_dim(&ab, c, i).unwrap(),
            ext_dim(a, c, i).unwrap() + ext_dim(b, c, i).unwrap()
        );
        prop_assert_eq!(
            tor_dim(&ab, c, i).unwrap(),
            tor_dim(a, c, i).unwrap() + tor_dim(b, c, i).unwrap()
        );
    }

    #[test]
    fn tor_is_symmetric((_r, ms) in ring_and_modules(2), i in 0..4usize) {
        prop_assert_eq!(tor_dim(&ms[0], &ms[1], i).unwrap(), tor_dim(&ms[1], &ms[0], i).unwrap());
    }

    #[test]
    fn minimal_generators_generate((_r, m) in ring_and_module()) {
        let gens = minimal_generators(&m);
        prop_assert_eq!(m.span_of(&gens).dim(), m.dim());
        prop_assert!(free_cover(&m).is_surjective());
        // a projective module is the image of a split cover of the same size
        if is_projective(&m) {
            prop_assert_eq!(free_cover(&m).source().dim() % m.ring().dim(), 0);
        }
    }

    #[test]
    fn transported_modules_are_isomorphic((_r, m) in ring_and_module(), seed in any::<u64>()) {
        if let Some((n, g)) = conjugate(&m, seed) {
            // g itself is an isomorphism m -> n
            prop_assert!(FinModuleMap::new(&m, &n, g).is_ok());
            match is_isomorphic(&m, &n, &lim()).unwrap() {
                IsoVerdict::Isomorphic(f) => prop_assert!(f.is_isomorphism()),
                v => prop_assert!(matches!(v, IsoVerdict::Undecided(_)), "{:?}", v),
            }
        }
    }

    #[test]
    fn pushout_square_commutes((_r, ms) in ring_and_modules(2)) {
        // push out the covers F -> M and F -> N of a common free module
        let (m, n) = (&ms[0], &ms[1]);
        let cm = free_cover(m);
        let cn = free_cover(n);
        let f = cm.source().clone();
        prop_assume!(f == *cn.source());
        let po = pushout(&cm, &cn).unwrap();
        let left = po.from_left.compose(&cm).unwrap();
        let right = po.from_right.compose(&cn).unwrap();
        prop_assert_eq!(left.matrix(), right.matrix());
        prop_assert!(po.module.dim() <= m.dim() + n.dim());
    }

    #[test]
    fn printed_expressions_reparse(i in 0..RINGS.len()) {
        let e = parse_ring(RINGS[i]).unwrap();
        prop_assert_eq!(parse_ring(&e.to_string()).unwrap(), e);
    }
}


