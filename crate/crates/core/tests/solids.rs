//! Solid mensuration: closed forms against decompositions and meshes.

use std::f64::consts::PI;

use approx::assert_relative_eq;
use compasskit::solids::{
    archimedes_ratios, drilled_sphere_remaining, platonic_table, schwarz_lantern_area, similarity_scaling,
    surface_area, volume, LanternSpec, SolidSpec, SurfaceKind,
};
use proptest::prelude::*;

type V3 = [f64; 3];

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn tri_area(a: V3, b: V3, c: V3) -> f64 {
    let n = cross(sub(b, a), sub(c, a));
    0.5 * (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt()
}

/// Builds the lantern mesh vertex by vertex and sums its triangles.
fn lantern_mesh_area(r: f64, h: f64, m: u64, n: u64) -> f64 {
    let vertex = |ring: u64, k: u64| {
        let theta = (2.0 * k as f64 + (ring % 2) as f64) * PI / n as f64;
        [r * theta.cos(), r * theta.sin(), h * ring as f64 / m as f64]
    };
    let mut total = 0.0;
    for ring in 0..m {
        for k in 0..n {
            let (a, b) = (vertex(ring, k), vertex(ring, (k + 1) % n));
            let (c, d) = (vertex(ring + 1, k), vertex(ring + 1, (k + 1) % n));
            // which neighbour sits over the middle of a chord depends on parity
            if ring % 2 == 0 {
                total += tri_area(a, b, c);
                total += tri_area(c, d, b);
            } else {
                total += tri_area(a, b, d);
                total += tri_area(c, d, a);
            }
        }
    }
    total
}

proptest! {
    #[test]
    fn lantern_matches_mesh(r in 0.1..5.0f64, h in 0.0..5.0f64, m in 1u64..20, n in 3u64..40) {
        let closed = schwarz_lantern_area(&LanternSpec { radius: r, height: h, m, n }).unwrap();
        let mesh = lantern_mesh_area(r, h, m, n);
        prop_assert!((closed - mesh).abs() <= 1e-9 * mesh, "{} vs {}", closed, mesh);
    }

    #[test]
    fn sector_is_segment_plus_cone(r in 0.1..10.0f64, f in 0.001..0.999f64) {
        let h = f * r;
        let rho = (h * (2.0 * r - h)).sqrt();
        let cone = volume(&SolidSpec::Cone { radius: rho, height: r - h }).unwrap();
        let seg = volume(&SolidSpec::SphericalSegmentSolid { radius: r, height: h }).unwrap();
        let sec = volume(&SolidSpec::SphericalSector { radius: r, height: h }).unwrap();
        prop_assert!((sec - seg - cone).abs() <= 1e-9 * sec);
    }

    #[test]
    fn zone_areas_add(r in 0.1..10.0f64, a in 0.0..1.0f64, b in 0.0..1.0f64) {
        prop_assume!(a + b <= 1.0);
        let zone = |h: f64| surface_area(&SolidSpec::SphericalZoneSurface { radius: r, height: h }, SurfaceKind::Total).unwrap();
        let (h1, h2) = (2.0 * r * a, 2.0 * r * b);
        prop_assert!((zone(h1) + zone(h2) - zone(h1 + h2)).abs() <= 1e-12 * r * r);
    }

    #[test]
    fn similarity_laws(k in 0.1..10.0f64, r in 0.1..10.0f64, h in 0.1..10.0f64) {
        for s in [
            SolidSpec::Cylinder { radius: r, height: h },
            SolidSpec::Cone { radius: r, height: h },
            SolidSpec::ConeFrustum { radius: r, top: r / 2.0, height: h },
            SolidSpec::RegularPyramidFrustum { n: 5, a: r, b: r / 3.0, height: h },
            SolidSpec::Box { a: r, b: h, c: r + h },
        ] {
            let x = similarity_scaling(&s, k).unwrap();
            prop_assert!((x.area.unwrap() - k * k).abs() <= 1e-12 * k * k);
            prop_assert!((x.volume.unwrap() - k * k * k).abs() <= 1e-12 * k * k * k);
        }
    }

    #[test]
    fn drilled_sphere_is_independent_of_radius(l in 0.1..10.0f64, f in 1.0..50.0f64) {
        let left = drilled_sphere_remaining(l / 2.0 * f, l).unwrap();
        let want = volume(&SolidSpec::Sphere { radius: l / 2.0 }).unwrap();
        prop_assert!((left - want).abs() <= 1e-9 * want);
    }

    #[test]
    fn cone_frustum_is_difference_of_cones(big in 0.5..10.0f64, f in 0.05..0.95f64, h in 0.1..10.0f64) {
        // extend the frustum to its apex and cut off the small cone
        let small = big * f;
        let apex = h * big / (big - small);
        let outer = volume(&SolidSpec::Cone { radius: big, height: apex }).unwrap();
        let inner = volume(&SolidSpec::Cone { radius: small, height: apex - h }).unwrap();
        let frustum = volume(&SolidSpec::ConeFrustum { radius: big, top: small, height: h }).unwrap();
        prop_assert!((frustum - (outer - inner)).abs() <= 1e-9 * frustum);
    }
}

#[test]
fn frustum_limits() {
    let (b, h) = (7.0, 3.0);
    let prism = volume(&SolidSpec::Prism { base: b, height: h }).unwrap();
    let pyramid = volume(&SolidSpec::Pyramid { base: b, height: h }).unwrap();
    let top_full = SolidSpec::PyramidFrustum { base: b, top: b, height: h };
    let top_none = SolidSpec::PyramidFrustum { base: b, top: 0.0, height: h };
    assert!((volume(&top_full).unwrap() - prism).abs() < 1e-9);
    assert!((volume(&top_none).unwrap() - pyramid).abs() < 1e-9);
    assert!(top_full.measures().unwrap().degenerate);
    assert!(top_none.measures().unwrap().degenerate);
}

#[test]
fn egyptian_frustum() {
    let v = volume(&SolidSpec::PyramidFrustum { base: 16.0, top: 4.0, height: 6.0 }).unwrap();
    assert!((v - 56.0).abs() < 1e-12);
    // the same solid as a regular square frustum
    let sq = volume(&SolidSpec::RegularPyramidFrustum { n: 4, a: 4.0, b: 2.0, height: 6.0 }).unwrap();
    assert_relative_eq!(sq, 56.0, max_relative = 1e-12);
}

#[test]
fn archimedes_against_direct_formulas() {
    for r in [1.0f64, 2.0] {
        let x = archimedes_ratios(r).unwrap();
        // recomputed by hand: cylinder 2R high, equilateral cone R*sqrt(3) by 3R
        let sphere_area = 4.0 * PI * r * r;
        let sphere_vol = 4.0 / 3.0 * PI * r.powi(3);
        let cyl_area = 2.0 * PI * r * r + 2.0 * PI * r * 2.0 * r;
        let cyl_vol = PI * r * r * 2.0 * r;
        let (cr, ch) = (r * 3f64.sqrt(), 3.0 * r);
        let cone_area = PI * cr * cr + PI * cr * (cr * cr + ch * ch).sqrt();
        let cone_vol = PI * cr * cr * ch / 3.0;
        assert!((x.cylinder_area - sphere_area / cyl_area).abs() < 1e-12);
        assert!((x.cylinder_volume - sphere_vol / cyl_vol).abs() < 1e-12);
        assert!((x.cone_area - sphere_area / cone_area).abs() < 1e-12);
        assert!((x.cone_volume - sphere_vol / cone_vol).abs() < 1e-12);
        assert!((x.cylinder_area - 2.0 / 3.0).abs() < 1e-12);
        assert!((x.cone_volume - 4.0 / 9.0).abs() < 1e-12);
    }
}

#[test]
fn platonic_coefficients() {
    let table = platonic_table();
    let get = |name: &str| table.iter().find(|p| p.name == name).unwrap();
    let counts: Vec<(u32, u32, u32)> = table.iter().map(|p| (p.faces, p.edges, p.vertices)).collect();
    assert_eq!(counts, [(4, 6, 4), (8, 12, 6), (20, 30, 12), (6, 12, 8), (12, 30, 20)]);
    // tetrahedron of edge a in a cube of edge a/sqrt2: cube minus four corners
    let cube = 2f64.sqrt().recip().powi(3);
    let corner = cube / 6.0;
    assert_relative_eq!(get("tetrahedron").volume_coefficient, cube - 4.0 * corner, max_relative = 1e-12);
    // octahedron: two square pyramids of height a/sqrt2
    assert_relative_eq!(get("octahedron").volume_coefficient, 2.0 * (2f64.sqrt().recip() / 3.0), max_relative = 1e-12);
    assert!(table.iter().all(|p| p.euler_characteristic() == 2));
}

#[test]
fn lantern_limits() {
    let s = |m, n| schwarz_lantern_area(&LanternSpec { radius: 1.0, height: 1.0, m, n }).unwrap();
    assert!((s(512, 512) - 2.0 * PI).abs() < 1e-3);
    let blowup: Vec<f64> = (3..=64u64).map(|n| s(n * n * n, n)).collect();
    assert!(blowup.windows(2).all(|w| w[0] < w[1]));
    let first = (3..=64u64).find(|&n| s(n * n * n, n) > 2.0 * n as f64).unwrap();
    assert!((first..=64).all(|n| s(n * n * n, n) > 2.0 * n as f64));
    assert!(first <= 4, "blow-up starts at n = {first}");
    // the flat lantern is the hexagon
    let flat = schwarz_lantern_area(&LanternSpec { radius: 1.0, height: 0.0, m: 1, n: 3 }).unwrap();
    assert_relative_eq!(flat, lantern_mesh_area(1.0, 0.0, 1, 3), max_relative = 1e-12);
}

#[test]
fn cone_slant_example() {
    let cone = SolidSpec::cone_from_slant(5.0, 13.0).unwrap();
    assert_relative_eq!(surface_area(&cone, SurfaceKind::Lateral).unwrap(), 65.0 * PI, max_relative = 1e-14);
    assert_relative_eq!(cone.slant().unwrap(), 13.0, max_relative = 1e-14);
    let fr = SolidSpec::cone_frustum_from_slant(4.0, 1.0, 5.0).unwrap();
    assert_eq!(fr, SolidSpec::ConeFrustum { radius: 4.0, top: 1.0, height: 4.0 });
}
