mod common;

use common::{random_convex_polygon, random_interior_point};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sdg_core::bench::{observed_order, MeshFamily};
use sdg_core::geometry::{point, polygon_centroid, Point, Vec2};
use sdg_core::hdivrec::RtBasis;
use sdg_core::mesh::{read_mesh, write_mesh};
use sdg_core::wachspress::PolygonGeom;

fn polygon(seed: u64, m: usize) -> (Vec<Point>, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (random_convex_polygon(&mut rng, m), rng)
}

fn family() -> impl Strategy<Value = MeshFamily> {
    prop_oneof![
        Just(MeshFamily::triangular()),
        (0.0..0.3f64, any::<u64>()).prop_map(|(jitter, seed)| MeshFamily::Triangular { jitter, seed }),
        Just(MeshFamily::Trapezoidal),
        Just(MeshFamily::Polygonal),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wachspress_coordinates_are_a_convex_combination(seed in any::<u64>(), m in 3usize..=8) {
        let (pts, mut rng) = polygon(seed, m);
        let g = PolygonGeom::new(&pts).unwrap();
        let x = random_interior_point(&mut rng, &pts);
        let lambda = g.coords(&x).unwrap();
        prop_assert!(lambda.iter().all(|l| *l > 0.0));
        prop_assert!((lambda.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let rec = lambda.iter().zip(&pts).fold(Vec2::zeros(), |a, (l, v)| a + v * *l);
        prop_assert!((rec - x).norm() < 1e-12 * (1.0 + x.norm()));
        let grads = g.grads(&x).unwrap();
        prop_assert!(grads.iter().fold(Vec2::zeros(), |a, d| a + d).norm() < 1e-9 * (1.0 + grads[0].norm()));
    }

    #[test]
    fn wachspress_is_affine_invariant(seed in any::<u64>(), m in 3usize..=8, a in 0.5..2.0f64, s in -1.0..1.0f64) {
        let (pts, mut rng) = polygon(seed, m);
        let x = random_interior_point(&mut rng, &pts);
        let map = |p: &Point| point(a * p.x + s * p.y, p.y / a) + Vec2::new(s, 2.0);
        let mapped: Vec<Point> = pts.iter().map(map).collect();
        let l0 = PolygonGeom::new(&pts).unwrap().coords(&x).unwrap();
        let l1 = PolygonGeom::new(&mapped).unwrap().coords(&map(&x)).unwrap();
        for (p, q) in l0.iter().zip(&l1) {
            prop_assert!((p - q).abs() < 1e-10);
        }
    }

    #[test]
    fn reconstruction_satisfies_the_divergence_theorem(
        seed in any::<u64>(),
        m in 3usize..=8,
        fluxes in prop::collection::vec(-5.0..5.0f64, 8),
    ) {
        let (pts, _) = polygon(seed, m);
        let basis = RtBasis::new(&pts, polygon_centroid(&pts)).unwrap();
        let fluxes = &fluxes[..m];
        let net: f64 = fluxes.iter().zip(basis.edge_lengths()).map(|(r, l)| r * l).sum();
        let div = basis.reconstruct(fluxes).divergence();
        prop_assert!((div * basis.area() - net).abs() < 1e-10 * (1.0 + net.abs()));
    }

    #[test]
    fn reconstruction_reproduces_its_edge_fluxes(seed in any::<u64>(), m in 3usize..=8, cx in -2.0..2.0f64, cy in -2.0..2.0f64) {
        let (pts, mut rng) = polygon(seed, m);
        let split = random_interior_point(&mut rng, &pts);
        let basis = RtBasis::new(&pts, split).unwrap();
        let c = Vec2::new(cx, cy);
        let fluxes = basis.edge_fluxes(|_| c);
        let x = random_interior_point(&mut rng, &pts);
        prop_assert!((basis.reconstruct(&fluxes).eval(&x).unwrap() - c).norm() < 1e-10);
    }

    #[test]
    fn staggered_mesh_tiles_the_unit_square(fam in family(), n in 1usize..6) {
        let mesh = fam.build(2 * n).unwrap();
        let total: f64 = mesh.subs().iter().map(|s| s.area).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        for (c, info) in mesh.cells().iter().enumerate() {
            let sub: f64 = mesh.cell_subs(c).iter().map(|s| s.area).sum();
            prop_assert!((sub - info.area).abs() < 1e-13);
        }
        let interior = mesh.primal_edges().iter().filter(|e| !e.is_boundary()).count();
        prop_assert_eq!(interior, mesh.interior_edges().len());
        for d in mesh.dual_edges() {
            let (a, b) = d.subs;
            prop_assert_eq!(mesh.subs()[a].cell, d.cell);
            prop_assert_eq!(mesh.subs()[b].cell, d.cell);
        }
    }

    #[test]
    fn mesh_file_round_trip(fam in family(), n in 1usize..5) {
        let primal = fam.primal(2 * n).unwrap();
        let back = read_mesh(write_mesh(&primal).as_bytes()).unwrap();
        prop_assert_eq!(back, primal);
    }

    #[test]
    fn observed_order_recovers_power_laws(c in 0.1..10.0f64, k in 0.5..3.0f64, h in 0.01..0.5f64) {
        prop_assert!((observed_order(c * h.powf(k), c * (h / 2.0).powf(k)) - k).abs() < 1e-9);
    }
}
