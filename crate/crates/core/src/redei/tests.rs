use super::*;
use crate::directions::determined_directions;
use alloc::string::ToString;
use proptest::prelude::*;

fn codes(gf: &Gf, c: &[u32]) -> Vec<Elem> {
    c.iter().map(|&x| gf.elem(x).unwrap()).collect()
}

/// Affine plane `x_n = 0` of AG(n,q) minus the given tails.
fn plane_minus(gf: &Gf, n: usize, holes: &[Vec<Elem>]) -> AffineSet {
    let q = gf.q() as usize;
    let mut tails = Vec::new();
    for idx in 0..q.pow(n as u32 - 1) {
        let mut t = crate::directions::affine_from_index(gf, n - 1, idx).coords()[1..].to_vec();
        t.push(Elem::ZERO);
        if !holes.contains(&t) {
            tails.push(t);
        }
    }
    AffineSet::from_tails(gf, n, &tails).unwrap()
}

/// `h_k(S)` by summing over all non-decreasing index tuples.
fn complete_homogeneous(gf: &Gf, s: &[Elem], k: usize) -> Elem {
    fn go(gf: &Gf, s: &[Elem], k: usize, start: usize, acc: Elem) -> Elem {
        if k == 0 {
            return acc;
        }
        (start..s.len()).fold(Elem::ZERO, |sum, i| {
            gf.add(sum, go(gf, s, k - 1, i, gf.mul(acc, s[i])))
        })
    }
    go(gf, s, k, 0, Elem::ONE)
}

#[test]
fn first_two_f_coefficients() {
    let gf = Gf::new(5, 1).unwrap();
    let s = codes(&gf, &[1, 3, 4, 4, 2]);
    let mut sig = elementary_symmetric(&gf, s.iter().copied(), 2);
    sig.remove(0);
    let f = f_from_sigma(&gf, &sig);
    assert_eq!(f[0], gf.neg(sig[0]));
    assert_eq!(f[1], gf.sub(gf.mul(sig[0], sig[0]), sig[1]));
    assert!(f_from_sigma(&gf, &[]).is_empty());
}

#[test]
fn redei_of_full_plane() {
    for (p, h) in [(3, 1), (2, 2)] {
        let gf = Gf::new(p, h).unwrap();
        let q = gf.q() as usize;
        let u = plane_minus(&gf, 3, &[]);
        let x = codes(&gf, &[1, 0, 2 % gf.q()]);
        // (X0^q - X0)^q = X0^{q^2} - X0^q
        let mut c = vec![Elem::ZERO; q * q + 1];
        c[q * q] = Elem::ONE;
        c[q] = gf.neg(Elem::ONE);
        assert_eq!(redei_eval(&u, &x).unwrap(), UniPoly::from_coeffs(c));
        // root 0 has multiplicity q: [0,1,0,0] holds q points of the plane
        let r = redei_eval(&u, &x).unwrap();
        assert_eq!(
            split_check(&gf, &r).unwrap(),
            Split::Splits(gf.elements().map(|e| (e, q)).collect())
        );
    }
    let gf = Gf::new(3, 1).unwrap();
    let u = AffineSet::from_tails(&gf, 3, &[codes(&gf, &[0, 0, 0])]).unwrap();
    assert_eq!(
        redei_eval(&u, &codes(&gf, &[1, 2, 1])).unwrap(),
        UniPoly::monomial(Elem::ONE, 1)
    );
    assert!(redei_eval(&u, &codes(&gf, &[1, 2])).is_err());
}

#[test]
fn sigma_of_punctured_plane() {
    let gf = Gf::new(3, 1).unwrap();
    let u = plane_minus(&gf, 3, &[codes(&gf, &[0, 0, 0]), codes(&gf, &[1, 1, 0])]);
    for idx in 0..27 {
        let x = crate::directions::affine_from_index(&gf, 3, idx).coords()[1..].to_vec();
        let s = sigma_eval(&u, &x, 1).unwrap();
        assert_eq!(s[0], gf.neg(gf.add(x[0], x[1])));
    }
    assert!(sigma_eval(&u, &codes(&gf, &[1, 0, 0]), 8).is_err());
}

#[test]
fn f_surface_of_plane_minus_two() {
    let gf = Gf::new(3, 1).unwrap();
    let u = plane_minus(&gf, 3, &[codes(&gf, &[0, 0, 0]), codes(&gf, &[1, 1, 0])]);
    let f = build_f_surface(&u).unwrap();
    assert_eq!(f.poly().display().to_string(), "X0^2 + X0X1 + X0X2");
    assert!(!f.contains(&Point::from_codes(&gf, &[1, 0, 0, 0]).unwrap()));
}

#[test]
fn f_surface_of_plane_minus_one() {
    let gf = Gf::new(5, 1).unwrap();
    let u = plane_minus(&gf, 3, &[codes(&gf, &[2, 3, 0])]);
    let f = build_f_surface(&u).unwrap();
    assert_eq!(f.poly(), &MPoly::linear_form(&codes(&gf, &[1, 2, 3, 0])));
}

#[test]
fn f_surface_refusals() {
    let gf = Gf::new(3, 1).unwrap();
    let full = plane_minus(&gf, 3, &[]);
    assert_eq!(build_f_surface(&full), Err(Error::EpsOutOfRange { eps: 0 }));
    let holes: Vec<Vec<Elem>> = (0..3).map(|a| codes(&gf, &[a, 0, 0])).collect();
    assert_eq!(
        build_f_surface(&plane_minus(&gf, 3, &holes)),
        Err(Error::EpsOutOfRange { eps: 3 })
    );
    let gf = Gf::new(7, 1).unwrap();
    let holes: Vec<Vec<Elem>> = (0..5).map(|a| codes(&gf, &[a, 0, 0])).collect();
    assert_eq!(
        build_f_surface(&plane_minus(&gf, 3, &holes)),
        Err(Error::ExpansionGuard)
    );
}

#[test]
fn f_is_product_of_hole_duals() {
    for (p, h, m) in [(7, 1, 3), (5, 1, 3), (2, 2, 2), (2, 2, 3), (3, 1, 2)] {
        let gf = Gf::new(p, h).unwrap();
        let holes: Vec<Vec<Elem>> = [[1u32, 2, 0], [0, 3, 0], [2, 2, 0]]
            .iter()
            .take(m)
            .map(|c| c.iter().map(|&x| gf.elem(x % gf.q()).unwrap()).collect())
            .collect();
        let mut holes = holes;
        holes.dedup();
        let u = plane_minus(&gf, 3, &holes);
        let mut expected = MPoly::constant(4, Elem::ONE);
        for t in &holes {
            let mut c = vec![Elem::ONE];
            c.extend_from_slice(t);
            expected = expected.mul(&gf, &MPoly::linear_form(&c));
        }
        let f = build_f_surface(&u).unwrap();
        assert_eq!(f.poly(), &expected, "q={}", gf.q());
        for (mono, _) in f.poly().terms() {
            assert_eq!(mono.degree(), holes.len());
        }
    }
}

#[test]
fn star_on_punctured_planes() {
    for (p, h) in [(3, 1), (2, 2), (5, 1)] {
        let gf = Gf::new(p, h).unwrap();
        for m in 0..3 {
            let holes: Vec<Vec<Elem>> = (0..m).map(|a| codes(&gf, &[a, 1, 0])).collect();
            let u = plane_minus(&gf, 3, &holes);
            let s = verify_star_all(&u).unwrap();
            assert!(s.checked > 0);
            assert_eq!(s.holds, s.checked);
            assert_eq!(s.splits, s.checked);
        }
    }
}

#[test]
fn star_gate() {
    let gf = Gf::new(3, 1).unwrap();
    let u = plane_minus(&gf, 3, &[codes(&gf, &[0, 0, 0])]);
    assert_eq!(
        verify_star(&u, &codes(&gf, &[0, 0, 0])).unwrap(),
        StarCheck::NotApplicable
    );
    // s_x for x = (0,0,1) is the plane's own line at infinity, fully determined
    assert_eq!(
        verify_star(&u, &codes(&gf, &[0, 0, 1])).unwrap(),
        StarCheck::NotApplicable
    );
    assert_eq!(
        verify_star(&u, &codes(&gf, &[1, 2, 0])).unwrap(),
        StarCheck::Holds
    );
}

#[test]
fn deficient_hyperplanes_dualize_onto_f() {
    let gf = Gf::new(3, 1).unwrap();
    let u = plane_minus(&gf, 3, &[codes(&gf, &[0, 0, 0]), codes(&gf, &[1, 1, 0])]);
    let f = build_f_surface(&u).unwrap();
    let report = determined_directions(&u);
    let mut hits = 0;
    for alpha in &report.non_determined {
        for t in Hyperplane::all(&gf, 3) {
            match deficient_dual_point(&u, &f, &t, alpha) {
                Ok(d) => {
                    assert!(f.contains(&d));
                    hits += 1;
                }
                Err(Error::NotDeficient) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
    assert!(hits > 0);
    let alpha = &report.non_determined[0];
    let det = &report.determined[0];
    assert_eq!(
        deficient_dual_point(&u, &f, &Hyperplane::at_infinity(3), alpha),
        Err(Error::NotDeficient)
    );
    assert_eq!(
        deficient_dual_point(&u, &f, &Hyperplane::at_infinity(3), det),
        Err(Error::DirectionDetermined)
    );
}

#[test]
fn decomposition_matches_empty_lines() {
    let gf = Gf::new(3, 1).unwrap();
    for holes in [
        vec![codes(&gf, &[2, 1, 0])],
        vec![codes(&gf, &[0, 0, 0]), codes(&gf, &[1, 1, 0])],
    ] {
        let u = plane_minus(&gf, 3, &holes);
        let f = build_f_surface(&u).unwrap();
        for alpha in determined_directions(&u).non_determined {
            let parts = nd_hyperplane_decomposition(&u, &f, &alpha).unwrap();
            assert_eq!(parts.len(), holes.len());
            assert!(parts.iter().all(|s| s.dim() == 1));
        }
    }
}

#[test]
fn tangency_examples() {
    let gf = Gf::new(5, 1).unwrap();
    let f = MPoly::var(4, 0)
        .mul(&gf, &MPoly::var(4, 3))
        .sub(&gf, &MPoly::var(4, 1).mul(&gf, &MPoly::var(4, 2)));
    let p = Point::from_codes(&gf, &[1, 0, 0, 0]).unwrap();
    let h = |c: &[u32]| Hyperplane::from_codes(&gf, c).unwrap();
    assert!(tangency_check(&gf, &f, &h(&[0, 0, 0, 1]), &p).unwrap());
    assert!(!tangency_check(&gf, &f, &h(&[0, 0, 1, 0]), &p).unwrap());
    let off = Point::from_codes(&gf, &[1, 0, 0, 1]).unwrap();
    assert_eq!(
        tangency_check(&gf, &f, &h(&[0, 0, 0, 1]), &off),
        Err(Error::NotOnSurface)
    );
    let big = MPoly::var(4, 0).pow(&gf, 5);
    assert!(matches!(
        tangency_check(&gf, &big, &h(&[0, 0, 0, 1]), &p),
        Err(Error::DegreeTooLarge { .. })
    ));
}

#[test]
fn tri_census() {
    let gf = Gf::new(3, 1).unwrap();
    let v = |i| MPoly::var(4, i);
    let hyperbolic = v(0).mul(&gf, &v(3)).sub(&gf, &v(1).mul(&gf, &v(2)));
    assert_eq!(count_tri_hyperplanes(&gf, &hyperbolic).unwrap().len(), 16);
    // planes through the vertex meeting the base conic in 2 or 1 (doubled) points
    let cone = v(0).mul(&gf, &v(0)).sub(&gf, &v(1).mul(&gf, &v(2)));
    assert_eq!(count_tri_hyperplanes(&gf, &cone).unwrap().len(), 10);
    let gf5 = Gf::new(5, 1).unwrap();
    let three = MPoly::linear_form(&codes(&gf5, &[1, 0, 0, 0]))
        .mul(&gf5, &MPoly::linear_form(&codes(&gf5, &[0, 1, 0, 0])))
        .mul(&gf5, &MPoly::linear_form(&codes(&gf5, &[1, 1, 1, 2])));
    assert_eq!(count_tri_hyperplanes(&gf5, &three).unwrap().len(), 156);
    let gf11 = Gf::new(11, 1).unwrap();
    assert_eq!(
        count_tri_hyperplanes(&gf11, &MPoly::var(4, 0).pow(&gf11, 2)),
        Err(Error::GuardExceeded)
    );
}

#[test]
fn tri_planes_are_tangent_planes_of_hyperbolic_quadric() {
    let gf = Gf::new(3, 1).unwrap();
    let v = |i| MPoly::var(4, i);
    let f = v(0).mul(&gf, &v(3)).sub(&gf, &v(1).mul(&gf, &v(2)));
    for h in count_tri_hyperplanes(&gf, &f).unwrap() {
        assert!(tangent_point(&gf, &f, &h).unwrap().is_some());
    }
}

proptest! {
    #[test]
    fn f_matches_complete_homogeneous(s in proptest::collection::vec(0u32..5, 6)) {
        let gf = Gf::new(5, 1).unwrap();
        let s = codes(&gf, &s);
        let mut sig = elementary_symmetric(&gf, s.iter().copied(), 4);
        sig.remove(0);
        let f = f_from_sigma(&gf, &sig);
        for k in 1..=4 {
            let h = complete_homogeneous(&gf, &s, k);
            let expect = if k % 2 == 0 { h } else { gf.neg(h) };
            prop_assert_eq!(f[k - 1], expect);
        }
        // Σ_{i=0..k} σ_i f_{k-i} = 0
        for k in 1..=4 {
            let mut acc = f[k - 1];
            for i in 1..=k {
                let fk = if i == k { Elem::ONE } else { f[k - i - 1] };
                acc = gf.add(acc, gf.mul(sig[i - 1], fk));
            }
            prop_assert!(acc.is_zero());
        }
        // top eps coefficients below the leading one vanish in Π(X0+s)·f(X0)
        let mut r = UniPoly::one();
        for &c in &s {
            r.mul_linear(&gf, c);
        }
        for eps in 1..=4usize {
            let mut c = vec![Elem::ZERO; eps + 1];
            c[eps] = Elem::ONE;
            for k in 1..=eps {
                c[eps - k] = f[k - 1];
            }
            let prod = r.mul(&gf, &UniPoly::from_coeffs(c));
            let top = s.len() + eps;
            prop_assert_eq!(prod.coeff(top), Elem::ONE);
            for j in 1..=eps {
                prop_assert!(prod.coeff(top - j).is_zero());
            }
        }
    }

    #[test]
    fn symbolic_sigma_matches_pointwise(
        pts in proptest::collection::btree_set((0u32..3, 0u32..3, 0u32..3), 1..8),
        x in (0u32..3, 0u32..3, 0u32..3),
    ) {
        let gf = Gf::new(3, 1).unwrap();
        let tails: Vec<Vec<Elem>> =
            pts.iter().map(|&(a, b, c)| codes(&gf, &[a, b, c])).collect();
        let u = AffineSet::from_tails(&gf, 3, &tails).unwrap();
        let x = codes(&gf, &[x.0, x.1, x.2]);
        let ring = PolyRing { gf: &gf, nvars: 3 };
        let forms = tails.iter().map(|t| MPoly::linear_form(t));
        let k = tails.len().min(3);
        let sym = elementary_symmetric(&ring, forms, k);
        let num = sigma_eval(&u, &x, k).unwrap();
        for j in 1..=k {
            prop_assert_eq!(sym[j].eval(&gf, &x), num[j - 1]);
        }
    }

    #[test]
    fn star_holds_on_random_subsets_of_a_plane_section(
        holes in proptest::collection::btree_set((0u32..4, 0u32..4), 1..4),
    ) {
        let gf = Gf::new(2, 2).unwrap();
        let holes: Vec<Vec<Elem>> =
            holes.iter().map(|&(a, b)| codes(&gf, &[a, b, 0])).collect();
        let u = plane_minus(&gf, 3, &holes);
        let s = verify_star_all(&u).unwrap();
        prop_assert_eq!(s.holds, s.checked);
        prop_assert_eq!(s.splits, s.checked);
    }
}
