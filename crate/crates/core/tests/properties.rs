use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wklr::hall::{count_flags, func_y, hall_mult, RepSpace};
use wklr::loading::{enumerate_chambers, ChamberSet};
use wklr::poly::Monomial;
use wklr::quiver::presets::*;
use wklr::rat::int;
use wklr::{DimVector, Limits, Loading, MultiPoly, Perm, Quiver, SkewElement, VertexId, Wklr, WklrElement};

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn poly(n: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, n), -4i64..=4), 0..5).prop_map(move |terms| {
        MultiPoly::from_terms(n, terms.into_iter().map(|(e, c)| (Monomial::new(e), int(c))))
    })
}

fn demazure(j: usize, f: &MultiPoly) -> MultiPoly {
    SkewElement::demazure(j, f.nvars())
        .apply(f)
        .as_poly()
        .expect("divided differences of polynomials are polynomials")
        .clone()
}

proptest! {
    #[test]
    fn permutations_form_a_group(a in perm(5), b in perm(5), c in perm(5)) {
        prop_assert_eq!(a.compose(&b.compose(&c)), a.compose(&b).compose(&c));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.length(), a.inverse().length());
        let word = a.reduced_word();
        prop_assert_eq!(word.len(), a.length());
        let back = word.iter().fold(Perm::identity(5), |acc, &k| acc.compose(&Perm::simple(5, k)));
        prop_assert_eq!(back, a);
    }

    #[test]
    fn relabelling_is_a_ring_action(f in poly(3), g in poly(3), s in perm(3), t in perm(3)) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!((&f * &g).permute(&s), &f.permute(&s) * &g.permute(&s));
        prop_assert_eq!((&f + &g).permute(&s), &f.permute(&s) + &g.permute(&s));
        prop_assert_eq!(f.permute(&t).permute(&s), f.permute(&s.compose(&t)));
    }

    #[test]
    fn divided_differences(f in poly(3), g in poly(3), j in 0usize..2) {
        prop_assert!(demazure(j, &demazure(j, &f)).is_zero());
        let s = Perm::simple(3, j);
        let lhs = demazure(j, &(&f * &g));
        let rhs = &(&demazure(j, &f) * &g) + &(&f.permute(&s) * &demazure(j, &g));
        prop_assert_eq!(lhs, rhs);
        let braid0 = demazure(0, &demazure(1, &demazure(0, &f)));
        let braid1 = demazure(1, &demazure(0, &demazure(1, &f)));
        prop_assert_eq!(braid0, braid1);
    }
}

struct Setting {
    w: Wklr,
    b: ChamberSet,
}

fn setting(q: Quiver, nu: &[u32]) -> Setting {
    let b = enumerate_chambers(&q, &DimVector(nu.to_vec()), &Limits::default()).unwrap();
    Setting { w: Wklr::new(q).unwrap(), b }
}

/// The product of generators picked by `moves`, starting at `start`.
fn walk(s: &Setting, start: &Loading, moves: &[(bool, usize)]) -> WklrElement {
    let n = start.len();
    let mut x = s.w.idempotent(start);
    for &(cross, k) in moves {
        let g = if cross && n > 1 {
            s.w.psi(&x.tgt, k % (n - 1), &s.b).unwrap()
        } else {
            s.w.dot(&x.tgt, k % n).unwrap()
        };
        x = s.w.multiply(&g, &x).unwrap().value().unwrap();
    }
    x
}

fn moves() -> impl Strategy<Value = Vec<(bool, usize)>> {
    prop::collection::vec((any::<bool>(), 0usize..3), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn star_is_an_anti_involution(start in 0usize..8, m1 in moves(), m2 in moves()) {
        for s in [setting(a_n(&[int(-1)]), &[1, 2]), setting(kronecker(int(1), int(-1)), &[1, 1])] {
            let src = s.b.rep(start % s.b.len()).clone();
            let a = walk(&s, &src, &m1);
            let b = walk(&s, &a.tgt, &m2);
            let ba = s.w.multiply(&b, &a).unwrap().value().unwrap();
            prop_assert_eq!(s.w.star(&s.w.star(&a).unwrap()).unwrap(), a.clone());
            let lhs = s.w.star(&ba).unwrap();
            let rhs = s.w.multiply(&s.w.star(&a).unwrap(), &s.w.star(&b).unwrap()).unwrap().value().unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn degree_is_additive(start in 0usize..8, m1 in moves(), m2 in moves()) {
        for s in [setting(a_n(&[int(0)]), &[2, 1]), setting(kronecker(int(1), int(-1)), &[1, 1])] {
            let src = s.b.rep(start % s.b.len()).clone();
            let a = walk(&s, &src, &m1);
            let b = walk(&s, &a.tgt, &m2);
            let ba = s.w.multiply(&b, &a).unwrap().value().unwrap();
            if ba.is_zero() {
                continue;
            }
            let (da, db) = (s.w.degree(&a).unwrap(), s.w.degree(&b).unwrap());
            prop_assert_eq!(s.w.degree(&ba).unwrap(), Some(da.unwrap() + db.unwrap()));
        }
    }

    #[test]
    fn flag_counts_are_group_invariant(seed in any::<u64>(), point in 0u64..1 << 16) {
        let q = kronecker(int(1), int(-1));
        let lim = Limits::default();
        let i = load(&[(0, 0), (3, 1), (6, 0), (9, 1)]);
        let space = RepSpace::new(&q, &DimVector(vec![2, 2]), 2, &lim).unwrap();
        let e = space.rep(point % space.size());
        let g = space.random_group_element(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(count_flags(&q, &i, &e).unwrap(), count_flags(&q, &i, &space.act(&g, &e)).unwrap());
    }
}

fn load(v: &[(i64, usize)]) -> Loading {
    Loading::new(v.iter().map(|&(x, l)| (int(x), VertexId(l))).collect()).unwrap()
}

#[test]
fn hall_product_is_associative() {
    let lim = Limits::default();
    for (q, p) in [(a_n(&[int(0)]), 2), (a_n(&[int(-1)]), 3), (kronecker(int(1), int(-1)), 2)] {
        let loadings = [load(&[(0, 0)]), load(&[(0, 1)]), load(&[(0, 1), (5, 0)])];
        let fs: Vec<_> = loadings.iter().map(|i| func_y(&q, i, p, &lim).unwrap()).collect();
        for f in &fs {
            for g in &fs {
                for h in &fs {
                    if f.nu.add(&g.nu).add(&h.nu).total() > 4 {
                        continue;
                    }
                    let left = hall_mult(&q, &hall_mult(&q, f, g, &lim).unwrap(), h, &lim).unwrap();
                    let right = hall_mult(&q, f, &hall_mult(&q, g, h, &lim).unwrap(), &lim).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }
}
