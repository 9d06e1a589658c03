use num_bigint::BigInt;
use proptest::prelude::*;

use qgeom_core::designs::{self, BlockSet, DesignParams, LambdaTriangle};
use qgeom_core::gq;
use qgeom_core::num::{gaussian_binomial, q_power};
use qgeom_core::search::{self, Mode, SearchOptions};
use qgeom_core::{BilinearForm, Count, FieldElement, Lambda, ProjectiveSpace, Subspace};

fn field_q() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 4, 5])
}

fn params() -> impl Strategy<Value = DesignParams> {
    (field_q(), 2usize..10, 0usize..4, 1u64..4)
        .prop_flat_map(|(q, v, t, l)| {
            let t = t.min(v / 2);
            (Just(q), Just(v), Just(t), t..=v - t, Just(l))
        })
        .prop_map(|(q, v, t, k, l)| DesignParams::new(t, v, k, l, q).unwrap())
}

/// Random subspace of `F_q^v` spanned by up to `v` random vectors.
fn subspace(v: usize, q: u32) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(prop::collection::vec(0..q, v), 0..=v).prop_map(move |rows| {
        let sp = ProjectiveSpace::with_q(v, q).unwrap();
        sp.span_indices(&rows).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_symmetry_and_pascal(v in 0i64..12, k in 0i64..12, q in field_q()) {
        let a: Count = gaussian_binomial(v, k, q);
        let b: Count = gaussian_binomial(v, v - k, q);
        prop_assert_eq!(&a, &b);
        if v > 0 {
            let lo: Count = gaussian_binomial(v - 1, k - 1, q);
            let hi: Count = gaussian_binomial(v - 1, k, q);
            let shifted: Count = if k >= 0 { q_power::<Count>(q, k as usize) * hi } else { Count::from(0u8) };
            prop_assert_eq!(a, lo + shifted);
        }
    }

    /// `λ_{i,j} = λ_{i+1,j} + q^{k-i} λ_{i,j+1}`.
    #[test]
    fn triangle_recurrence(p in params()) {
        let tri = LambdaTriangle::new(&p);
        for i in 0..p.t {
            for j in 0..p.t - i {
                let step = Lambda::from_integer(q_power::<BigInt>(p.q, p.k - i));
                let rhs = tri.get(i + 1, j).clone() + step * tri.get(i, j + 1).clone();
                prop_assert_eq!(tri.get(i, j).clone(), rhs);
            }
        }
        for s in 0..=p.t {
            prop_assert_eq!(designs::lambda_s::<BigInt>(&p, s).unwrap(), tri.get(s, 0).clone());
        }
    }

    #[test]
    fn dual_params_are_an_involution(p in params()) {
        let adm = designs::admissible(&p);
        if let Ok(d) = p.dual() {
            prop_assert_eq!(d.dual().unwrap(), p);
            prop_assert_eq!(designs::admissible(&d).admissible, adm.admissible);
        }
    }

    #[test]
    fn dual_design_is_an_involution(
        blocks in prop::collection::btree_set(subspace(4, 3), 1..6),
        symplectic in any::<bool>(),
    ) {
        let by_dim = blocks.iter().next().unwrap().dim();
        let blocks: Vec<Subspace> = blocks.into_iter().filter(|b| b.dim() == by_dim).collect();
        let sp = ProjectiveSpace::with_q(4, 3).unwrap();
        let form = if symplectic {
            BilinearForm::symplectic(sp.field(), 4).unwrap()
        } else {
            BilinearForm::standard(sp.field(), 4)
        };
        let set = BlockSet::new(4, 3, by_dim, blocks).unwrap();
        let dual = designs::dual_design(&sp, &set, &form).unwrap();
        prop_assert_eq!(dual.k(), 4 - by_dim);
        prop_assert_eq!(designs::dual_design(&sp, &dual, &form).unwrap(), set);
    }

    #[test]
    fn dimension_formula(u in subspace(5, 2), w in subspace(5, 2)) {
        let sp = ProjectiveSpace::with_q(5, 2).unwrap();
        let join = sp.join(&u, &w).unwrap();
        let meet = sp.meet(&u, &w).unwrap();
        prop_assert_eq!(join.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(sp.is_subspace_of(&meet, &u) && sp.is_subspace_of(&u, &join));
    }

    #[test]
    fn point_ids_roundtrip(v in 1usize..6, q in field_q(), raw in prop::collection::vec(0u32..5, 6)) {
        let sp = ProjectiveSpace::with_q(v, q).unwrap();
        let x: Vec<FieldElement> = raw.iter().take(v).map(|&a| sp.field().element(a % q).unwrap()).collect();
        match sp.point_id(&x) {
            None => prop_assert!(x.iter().all(|a| a.is_zero())),
            Some(p) => {
                prop_assert!(p.0 < sp.n_points());
                let y = sp.point_vector(p);
                prop_assert_eq!(sp.point_id(&y), Some(p));
                prop_assert_eq!(sp.span(vec![x]).unwrap(), sp.point_subspace(p));
            }
        }
    }
}

/// All `k`-subspaces form a `t-(v, k, [v-t, k-t])_q` design.
#[test]
fn complete_designs() {
    for (v, k, q) in [(4usize, 2usize, 2u32), (5, 2, 2), (4, 2, 3), (5, 3, 2)] {
        let sp = ProjectiveSpace::with_q(v, q).unwrap();
        let all = BlockSet::new(v, q, k, sp.enumerate_subspaces(k).unwrap()).unwrap();
        for t in 0..=k.min(v - k) {
            let lambda: u64 = gaussian_binomial((v - t) as i64, (k - t) as i64, q);
            let p = DesignParams::new(t, v, k, lambda, q).unwrap();
            assert!(designs::is_design(&sp, &all, &p).unwrap().pass, "({t},{v},{k},{q})");
        }
        let p0 = qgeom_core::PointId(0);
        let der = designs::derived_design(&sp, &all, p0).unwrap();
        assert_eq!(der.blocks(), sp.with_dim(v - 1).enumerate_subspaces(k - 1).unwrap());
    }
}

/// Double counting forces `q^2 + 1` members in every spread and ovoid.
#[test]
fn spread_and_ovoid_sizes() {
    for q in [2u32, 3] {
        let size = (q * q + 1) as usize;
        for s in [gq::build_w(q).unwrap(), gq::build_q4(q).unwrap()] {
            let sp = search::enumerate_gq_spreads(&s, &SearchOptions::mode(Mode::All)).unwrap();
            let ov = search::enumerate_gq_ovoids(&s, &SearchOptions::mode(Mode::All)).unwrap();
            assert!(sp.completed && ov.completed);
            assert!(sp.solutions.iter().all(|x| x.len() == size && gq::is_gq_spread(&s, x).unwrap()));
            assert!(ov.solutions.iter().all(|x| x.len() == size && gq::is_gq_ovoid(&s, x).unwrap()));
        }
    }
}

/// Q(4,q) has q^2 (q^2 - 1) / 2 elliptic hyperplane sections, 36 at q = 3.
/// W(q) has no ovoids for odd q, so Q(4,q) has no spreads.
#[test]
fn frozen_counts() {
    let count = |s: &gq::IncidenceStructure, spreads: bool| {
        let opts = SearchOptions::mode(Mode::Count);
        let c = if spreads { search::enumerate_gq_spreads(s, &opts) } else { search::enumerate_gq_ovoids(s, &opts) };
        c.unwrap().solution_count
    };
    let w3 = gq::build_w(3).unwrap();
    let q3 = gq::build_q4(3).unwrap();
    assert_eq!(count(&w3, true), 36);
    assert_eq!(count(&q3, false), 36);
    assert_eq!(count(&w3, false), 0);
    assert_eq!(count(&q3, true), 0);
}

/// Backtracking over the lowest uncovered point, without dancing links.
fn naive_line_spreads(sp: &ProjectiveSpace) -> u64 {
    fn rec(lines: &[Vec<usize>], covered: &mut [bool]) -> u64 {
        let Some(p) = covered.iter().position(|&c| !c) else { return 1 };
        let mut n = 0;
        for l in lines.iter().filter(|l| l.contains(&p)) {
            if l.iter().all(|&x| !covered[x]) {
                l.iter().for_each(|&x| covered[x] = true);
                n += rec(lines, covered);
                l.iter().for_each(|&x| covered[x] = false);
            }
        }
        n
    }
    let lines: Vec<Vec<usize>> = sp
        .enumerate_subspaces(2)
        .unwrap()
        .iter()
        .map(|l| sp.points_of(l).into_iter().map(|p| p.0).collect())
        .collect();
    rec(&lines, &mut vec![false; sp.n_points()])
}

#[test]
fn pg_line_spread_counts_match_naive_backtracking() {
    for q in [2u32, 3] {
        let sp = ProjectiveSpace::with_q(4, q).unwrap();
        let found = search::enumerate_pg_line_spreads(4, q, &SearchOptions::mode(Mode::Count)).unwrap();
        assert!(found.certificate.completed);
        assert_eq!(found.certificate.solution_count, naive_line_spreads(&sp), "q={q}");
    }
}

#[test]
fn self_duality_in_even_characteristic() {
    let w4 = gq::build_w(4).unwrap();
    let q4 = gq::build_q4(4).unwrap();
    let iso = gq::is_isomorphic(&w4, &q4).unwrap().unwrap();
    assert!(iso.verify(&w4, &q4));
    let dual = gq::dualize_structure(&w4);
    assert!(gq::is_isomorphic(&dual, &q4).unwrap().is_some());
}
