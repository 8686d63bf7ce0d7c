use eqsurf::geometry::{
    boundary_param, cap_seam_defect, embedding_plan, equivariance_residual,
    equivariance_residual_with, family_embedding, join_point, odd_family_embedding,
    rotation_estimate, sample_embedding, stereographic, tau_apply, tau_power, topological_plan,
    ComponentId, PointC2,
};
use eqsurf_core::surfaces::{SurfaceSpec, Variant};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn spec(p: u32, q: u32, v: Variant) -> SurfaceSpec {
    SurfaceSpec::new(p, q, v).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn tau_examples() {
    let pt = tau_apply(2, 3, PointC2::new(c(1.0, 0.0), c(0.0, 0.0)));
    assert!(pt.dist(&PointC2::new(c(-1.0, 0.0), c(0.0, 0.0))) < 1e-12);

    // applying the map lcm(p,q) times is the identity
    for (p, q) in [(2u32, 3u32), (4, 6), (5, 5)] {
        let x = PointC2::new(c(0.6, 0.0), c(0.0, 0.8));
        let order = eqsurf_core::numtheory::lcm(p as u64, q as u64) as i64;
        let back = tau_power(p, q, order, x);
        assert!(back.dist(&x) < 1e-12);
    }

    // the Clifford torus is preserved
    let t = PointC2::new(c(0.5f64.sqrt(), 0.0), c(0.0, 0.5f64.sqrt()));
    let img = tau_apply(2, 4, t);
    assert!((img.z.norm() - img.zp.norm()).abs() < 1e-12);
    assert!(img.sphere_defect() < 1e-12);
}

#[test]
fn stereographic_examples() {
    let p = stereographic(&PointC2::new(c(1.0, 0.0), c(0.0, 0.0))).unwrap();
    assert_eq!(p, [0.0, 0.0, 0.0]);
    let p = stereographic(&PointC2::new(c(0.0, 0.0), c(0.0, 1.0))).unwrap();
    assert_eq!(p, [0.0, 0.0, 1.0]);
    let p = stereographic(&PointC2::new(c(0.0, 1.0), c(0.0, 0.0))).unwrap();
    assert_eq!(p, [1.0, 0.0, 0.0]);
    assert!(stereographic(&PointC2::new(c(-1.0, 0.0), c(0.0, 0.0))).is_err());
}

#[test]
fn boundary_param_examples() {
    let r = 0.5f64.sqrt();
    let pt = boundary_param(spec(2, 3, Variant::Plain), ComponentId::Link(0), 0.0).unwrap();
    assert!(pt.dist(&PointC2::new(c(r, 0.0), c(r, 0.0))) < 1e-12);

    // the core is parameterized as (0, e^{-iθ})
    let pt = boundary_param(
        spec(3, 4, Variant::Plus),
        ComponentId::Core,
        std::f64::consts::FRAC_PI_2,
    )
    .unwrap();
    assert!(pt.dist(&PointC2::new(c(0.0, 0.0), c(0.0, -1.0))) < 1e-12);

    // closure after a full turn
    for v in [Variant::Plain, Variant::Plus, Variant::Minus] {
        let s = spec(3, 4, v);
        let a = boundary_param(s, ComponentId::Link(0), 0.37).unwrap();
        let b = boundary_param(s, ComponentId::Link(0), 0.37 + 2.0 * std::f64::consts::PI).unwrap();
        assert!(a.dist(&b) < 1e-12, "{v:?}");
    }

    assert!(boundary_param(spec(2, 3, Variant::Plain), ComponentId::Core, 0.0).is_err());
    assert!(boundary_param(spec(2, 3, Variant::Plain), ComponentId::Link(5), 0.0).is_err());
}

fn rand_unit(rng: &mut StdRng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}

#[test]
fn join_identities_random() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..10_000 {
        let x = rand_unit(&mut rng, 4);
        let y = rand_unit(&mut rng, 3);
        let t: f64 = rng.gen_range(0.0..1.0);
        let j = join_point(&x, &y, t);
        let norm = j.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
    }
    let x = rand_unit(&mut rng, 4);
    let y = rand_unit(&mut rng, 3);
    let j0 = join_point(&x, &y, 0.0);
    assert!(j0[..4].iter().zip(&x).all(|(a, b)| (a - b).abs() < 1e-15));
    assert!(j0[4..].iter().all(|a| a.abs() < 1e-15));
    let j1 = join_point(&x, &y, 1.0);
    assert!(j1[4..].iter().zip(&y).all(|(a, b)| (a - b).abs() < 1e-15));
    let jh = join_point(&x, &y, 0.5);
    let half = 0.5f64.sqrt();
    assert!(jh[..4].iter().zip(&x).all(|(a, b)| (a - b * half).abs() < 1e-15));
}

#[test]
fn plan_examples() {
    // connected knotted boundary: S^6, and a topological S^4 plan
    let p = embedding_plan(spec(2, 3, Variant::Plain)).unwrap();
    assert_eq!(p.ambient_dim, 6);
    assert_eq!(p.join_factors, vec![3, 2]);
    assert!(p.smooth);
    let t = topological_plan(spec(2, 3, Variant::Plain)).unwrap();
    assert_eq!(t.ambient_dim, 4);
    assert!(!t.smooth);
    assert_eq!(t.caps.len(), 1);

    // unknotted with (p;q)=2: S^4, smooth
    let p = embedding_plan(spec(2, 4, Variant::Plain)).unwrap();
    assert_eq!(p.ambient_dim, 4);
    assert!(p.smooth);

    // unknotted, three components: S^5
    let p = embedding_plan(spec(3, 3, Variant::Plain)).unwrap();
    assert_eq!(p.ambient_dim, 5);
    assert_eq!(p.caps.len(), 3);

    // connected: S^6
    let p = embedding_plan(spec(4, 5, Variant::Plain)).unwrap();
    assert_eq!(p.ambient_dim, 6);

    // plus variant always lands in S^6 with the pole cone first
    let p = embedding_plan(spec(3, 4, Variant::Plus)).unwrap();
    assert_eq!(p.ambient_dim, 6);
    assert_eq!(p.caps.len(), 1 + 4);

    // disconnected and knotted: no smooth plan, but two boundary circles
    // still admit the topological poles join
    assert!(embedding_plan(spec(4, 6, Variant::Plain)).is_err());
    assert!(topological_plan(spec(4, 6, Variant::Plain)).is_some());
    // more than two circles: no topological plan either
    assert!(topological_plan(spec(4, 8, Variant::Plain)).is_none());
    // 2 link components + core = 3 boundary circles: no topological plan
    assert!(topological_plan(spec(3, 4, Variant::Minus)).is_none());
    // but 1 + core = 2 works
    assert!(topological_plan(spec(2, 2, Variant::Minus)).is_some());
}

#[test]
fn sample_resolution_one_unit_norm() {
    for s in [
        spec(2, 3, Variant::Plain),
        spec(2, 4, Variant::Plain),
        spec(3, 3, Variant::Plain),
        spec(2, 2, Variant::Minus),
        spec(3, 4, Variant::Plus),
    ] {
        let plan = embedding_plan(s).unwrap();
        let cloud = sample_embedding(&plan, 1);
        assert!(cloud.max_norm_defect() < 1e-12, "{s}");
        assert_eq!(cloud.coords, plan.ambient_dim as usize + 1);
    }
}

#[test]
fn equivariance_residuals() {
    for s in [
        spec(2, 2, Variant::Minus),
        spec(2, 3, Variant::Plain),
        spec(2, 4, Variant::Plain),
        spec(3, 3, Variant::Plain),
        spec(3, 4, Variant::Plus),
        spec(4, 3, Variant::Minus),
        spec(1, 3, Variant::Plus),
        // offset caps projecting onto the H-core circle (d = q)
        spec(5, 3, Variant::Plus),
        spec(3, 8, Variant::Plus),
    ] {
        let plan = embedding_plan(s).unwrap();
        let cloud = sample_embedding(&plan, 32);
        let r = equivariance_residual(&cloud).unwrap();
        assert!(r < 1e-9, "{s}: residual {r}");
        // negative control: wrong rotation angle is far from equivariant
        let bad = cloud.action.as_ref().unwrap().perturbed();
        let r = equivariance_residual_with(&cloud, &bad).unwrap();
        assert!(r > 0.1, "{s}: perturbed residual {r}");
    }
}

#[test]
fn topological_plans_are_equivariant_too() {
    for s in [
        spec(2, 3, Variant::Plain),
        spec(2, 2, Variant::Plain),
        spec(2, 2, Variant::Minus),
    ] {
        let plan = topological_plan(s).unwrap();
        let cloud = sample_embedding(&plan, 32);
        assert!(cloud.max_norm_defect() < 1e-12);
        let r = equivariance_residual(&cloud).unwrap();
        assert!(r < 1e-9, "{s}: residual {r}");
    }
}

#[test]
fn missing_action_is_an_error() {
    let plan = embedding_plan(spec(2, 3, Variant::Plain)).unwrap();
    let mut cloud = sample_embedding(&plan, 4);
    cloud.action = None;
    assert!(equivariance_residual(&cloud).is_err());
    let mut cloud = sample_embedding(&plan, 4);
    cloud.image = None;
    assert!(equivariance_residual(&cloud).is_err());
}

#[test]
fn identity_action_residual_zero() {
    let plan = embedding_plan(spec(2, 3, Variant::Plain)).unwrap();
    let mut cloud = sample_embedding(&plan, 8);
    let n = cloud.samples.len();
    cloud.image = Some((0..n).collect());
    let mut action = cloud.action.clone().unwrap();
    for pl in &mut action.planes {
        pl.turns = eqsurf_core::numtheory::Rational::ZERO;
    }
    cloud.action = Some(action);
    assert_eq!(equivariance_residual(&cloud).unwrap(), 0.0);
}

#[test]
fn cap_seams_meet_boundaries() {
    for s in [
        spec(3, 4, Variant::Plus),
        spec(4, 3, Variant::Minus),
        spec(5, 3, Variant::Plus),
        spec(2, 3, Variant::Plain),
        spec(3, 3, Variant::Plain),
        spec(2, 4, Variant::Plain),
        spec(2, 2, Variant::Minus),
    ] {
        let plan = embedding_plan(s).unwrap();
        assert!(cap_seam_defect(&plan, 64) < 1e-9, "{s}");
    }
    let plan = topological_plan(spec(2, 2, Variant::Minus)).unwrap();
    assert!(cap_seam_defect(&plan, 64) < 1e-9);
}

fn circular_close(a: f64, b: f64, tol: f64) -> bool {
    [-1.0f64, 0.0, 1.0]
        .iter()
        .any(|k| (a - b + k).abs() < tol)
}

#[test]
fn rotation_estimates() {
    let r = rotation_estimate(spec(2, 3, Variant::Plain), ComponentId::Link(0)).unwrap();
    assert!((r - 1.0 / 6.0).abs() < 1e-9);

    // (3,4) plus: fourth power rotates each component by 1/3 of a turn
    let r = rotation_estimate(spec(3, 4, Variant::Plus), ComponentId::Link(1)).unwrap();
    assert!((r - 1.0 / 3.0).abs() < 1e-9);

    // the core rotates by -1/(pq)
    for (p, q) in [(2u32, 3u32), (3, 4), (1, 3)] {
        let r = rotation_estimate(spec(p, q, Variant::Plus), ComponentId::Core).unwrap();
        assert!((r + 1.0 / (p as f64 * q as f64)).abs() < 1e-9);
    }

    // against the exact lemma values, all variants, small sweep
    for p in 1..=4u32 {
        for q in 1..=4u32 {
            for v in [Variant::Plain, Variant::Plus, Variant::Minus] {
                let Ok(s) = SurfaceSpec::new(p, q, v) else { continue };
                let rot = s.boundary_action();
                for (l, orbit) in (0..s.top_type().d).zip(rot.orbits.iter().cycle()) {
                    let est = rotation_estimate(s, ComponentId::Link(l)).unwrap();
                    assert!(
                        circular_close(est, orbit.rotation.as_f64(), 1e-9),
                        "{s} link {l}: {est} vs {}",
                        orbit.rotation
                    );
                }
                if let Some(core) = rot.core_rotation {
                    let est = rotation_estimate(s, ComponentId::Core).unwrap();
                    assert!(circular_close(est, core.as_f64(), 1e-9), "{s} core");
                }
            }
        }
    }
}

#[test]
fn family_embedding_dimensions() {
    let f = family_embedding(2, 3).unwrap();
    assert_eq!(f.ambient_dim, 6);
    assert_eq!(f.join_factors, vec![3, 1, 0]);
    assert_eq!(f.factor_rotation_orders, vec![8, 4, 1]);

    let f = family_embedding(3, 3).unwrap();
    assert_eq!(f.ambient_dim, 7);
    assert_eq!(f.join_factors, vec![3, 1, 1]);
    assert_eq!(f.factor_rotation_orders, vec![27, 9, 1]);

    let f = family_embedding(2, 4).unwrap();
    assert_eq!(f.ambient_dim, 8);
    assert_eq!(f.join_factors, vec![3, 1, 1, 0]);

    assert!(family_embedding(2, 2).is_none());
    assert!(family_embedding(6, 3).is_none());

    let f = odd_family_embedding(2, 2).unwrap();
    assert_eq!(f.ambient_dim, 5);
    assert_eq!(f.factor_rotation_orders, vec![4, 2]);
    let f = odd_family_embedding(3, 4).unwrap();
    assert_eq!(f.ambient_dim, 9);
    assert_eq!(f.factor_rotation_orders, vec![81, 3, 9, 27]);
}

#[test]
fn sampled_points_match_curve_parameterizations() {
    // boundary curve patches agree with boundary_param
    let s = spec(3, 4, Variant::Plus);
    let plan = embedding_plan(s).unwrap();
    let cloud = sample_embedding(&plan, 16);
    for sample in &cloud.samples {
        if let eqsurf::geometry::PatchId::LinkCurve(l) = cloud.patch_id(sample) {
            let expect =
                boundary_param(s, ComponentId::Link(l), 2.0 * std::f64::consts::PI * sample.v)
                    .unwrap();
            let got = PointC2::new(
                c(sample.point[0], sample.point[1]),
                c(sample.point[2], sample.point[3]),
            );
            assert!(got.dist(&expect) < 1e-12);
            assert!(sample.point[4..].iter().all(|x| *x == 0.0));
        }
    }
}

#[test]
fn every_boundary_capped_exactly_once() {
    use eqsurf::geometry::BoundaryId;
    for p in 1..=6u32 {
        for q in 1..=6u32 {
            for v in [Variant::Plain, Variant::Plus, Variant::Minus] {
                let Ok(s) = SurfaceSpec::new(p, q, v) else { continue };
                let top = s.top_type();
                for plan in embedding_plan(s).into_iter().chain(topological_plan(s)) {
                    let mut seen_core = 0;
                    let mut seen_links = vec![0u32; top.d as usize];
                    for cap in &plan.caps {
                        match cap.boundary {
                            BoundaryId::Core => seen_core += 1,
                            BoundaryId::Link(l) => seen_links[l as usize] += 1,
                        }
                    }
                    assert_eq!(seen_core, top.has_core_boundary as u32, "{s}");
                    assert!(seen_links.iter().all(|&c| c == 1), "{s}");
                    assert_eq!(
                        plan.ambient_dim,
                        plan.join_factors.iter().sum::<u32>() + plan.join_factors.len() as u32 - 1
                    );
                }
            }
        }
    }
}
