//! Surface areas and volumes of the elementary solids, similarity laws,
//! the Platonic solids and the Schwarz lantern.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Parameters of a solid. Cones are stored by radius and height; use
/// [`SolidSpec::cone_from_slant`] when the slant height is what is known.
///
/// `B` and `b` are base areas, `a` and `b` in the regular variants are
/// base edges, `n` is the number of base sides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SolidSpec {
    Box {
        a: f64,
        b: f64,
        c: f64,
    },
    Prism {
        #[serde(rename = "B")]
        base: f64,
        #[serde(rename = "H")]
        height: f64,
    },
    Pyramid {
        #[serde(rename = "B")]
        base: f64,
        #[serde(rename = "H")]
        height: f64,
    },
    PyramidFrustum {
        #[serde(rename = "B")]
        base: f64,
        #[serde(rename = "b")]
        top: f64,
        #[serde(rename = "H")]
        height: f64,
    },
    RegularPrism {
        n: u32,
        a: f64,
        #[serde(rename = "H")]
        height: f64,
    },
    RegularPyramid {
        n: u32,
        a: f64,
        #[serde(rename = "H")]
        height: f64,
    },
    RegularPyramidFrustum {
        n: u32,
        a: f64,
        b: f64,
        #[serde(rename = "H")]
        height: f64,
    },
    Cylinder {
        #[serde(rename = "R")]
        radius: f64,
        #[serde(rename = "H")]
        height: f64,
    },
    Cone {
        #[serde(rename = "R")]
        radius: f64,
        #[serde(rename = "H")]
        height: f64,
    },
    ConeFrustum {
        #[serde(rename = "R")]
        radius: f64,
        #[serde(rename = "r")]
        top: f64,
        #[serde(rename = "H")]
        height: f64,
    },
    Sphere {
        #[serde(rename = "R")]
        radius: f64,
    },
    /// Sector over a cap of height `H`.
    SphericalSector {
        #[serde(rename = "R")]
        radius: f64,
        #[serde(rename = "H")]
        height: f64,
    },
    SphericalSegmentSolid {
        #[serde(rename = "R")]
        radius: f64,
        #[serde(rename = "H")]
        height: f64,
    },
    SphericalZoneSurface {
        #[serde(rename = "R")]
        radius: f64,
        #[serde(rename = "H")]
        height: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Lateral,
    Total,
}

/// Everything the formulas give for one solid. `None` marks a quantity the
/// parameters do not determine (the lateral area of a prism known only by
/// its base area) or that does not exist (the volume of a zone).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolidMeasures {
    pub volume: Option<f64>,
    pub lateral: Option<f64>,
    pub total: Option<f64>,
    /// A zero height or a frustum with equal ends: the formulas still hold
    /// as limits, but the figure is flat or not really a frustum.
    pub degenerate: bool,
}

fn positive(v: f64, name: &str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(GeomError::domain(format!("{name} must be positive, got {v}")))
    }
}

/// Zero is tolerated (and reported as degenerate), negatives are not.
fn non_negative(v: f64, name: &str) -> Result<bool> {
    if v >= 0.0 && v.is_finite() {
        Ok(v == 0.0)
    } else {
        Err(GeomError::domain(format!("{name} must be non-negative, got {v}")))
    }
}

fn sides(n: u32) -> Result<()> {
    if n >= 3 {
        Ok(())
    } else {
        Err(GeomError::domain(format!("a base polygon needs at least 3 sides, got {n}")))
    }
}

/// Area of the regular `n`-gon with side `a`.
fn regular_area(n: u32, a: f64) -> f64 {
    n as f64 * a * a / (4.0 * (PI / n as f64).tan())
}

/// Inradius of the regular `n`-gon with side `a`.
fn regular_apothem(n: u32, a: f64) -> f64 {
    a / (2.0 * (PI / n as f64).tan())
}

/// Base radius of the cap of height `h` on a sphere of radius `r`.
fn cap_radius(r: f64, h: f64) -> f64 {
    (h * (2.0 * r - h)).max(0.0).sqrt()
}

fn frustum(big: f64, small: f64, h: f64) -> f64 {
    h * (big + small + (big * small).sqrt()) / 3.0
}

impl SolidSpec {
    /// Cone from base radius and slant height `L > R`.
    pub fn cone_from_slant(radius: f64, slant: f64) -> Result<SolidSpec> {
        positive(radius, "R")?;
        if !(slant >= radius && slant.is_finite()) {
            return Err(GeomError::domain(format!("slant {slant} is shorter than the radius {radius}")));
        }
        Ok(SolidSpec::Cone {
            radius,
            height: (slant * slant - radius * radius).sqrt(),
        })
    }

    /// Cone frustum from both radii and the slant height.
    pub fn cone_frustum_from_slant(radius: f64, top: f64, slant: f64) -> Result<SolidSpec> {
        positive(radius, "R")?;
        let d = radius - top;
        if !(slant >= d.abs() && slant.is_finite()) {
            return Err(GeomError::domain(format!("slant {slant} is shorter than R - r = {d}")));
        }
        Ok(SolidSpec::ConeFrustum {
            radius,
            top,
            height: (slant * slant - d * d).sqrt(),
        })
    }

    /// Slant height of a cone or cone frustum.
    pub fn slant(&self) -> Option<f64> {
        match *self {
            SolidSpec::Cone { radius, height } => Some(radius.hypot(height)),
            SolidSpec::ConeFrustum { radius, top, height } => Some((radius - top).hypot(height)),
            _ => None,
        }
    }

    /// Checks the invariants; `Ok(true)` means valid but degenerate.
    pub fn validate(&self) -> Result<bool> {
        use SolidSpec::*;
        match *self {
            Box { a, b, c } => {
                positive(a, "a")?;
                positive(b, "b")?;
                non_negative(c, "c")
            }
            Prism { base, height } | Pyramid { base, height } => {
                positive(base, "B")?;
                non_negative(height, "H")
            }
            PyramidFrustum { base, top, height } => {
                positive(base, "B")?;
                let flat_top = non_negative(top, "b")?;
                if top > base {
                    return Err(GeomError::domain(format!("top base {top} exceeds the lower base {base}")));
                }
                Ok(non_negative(height, "H")? || flat_top || top == base)
            }
            RegularPrism { n, a, height } | RegularPyramid { n, a, height } => {
                sides(n)?;
                positive(a, "a")?;
                non_negative(height, "H")
            }
            RegularPyramidFrustum { n, a, b, height } => {
                sides(n)?;
                positive(a, "a")?;
                let flat_top = non_negative(b, "b")?;
                if b > a {
                    return Err(GeomError::domain(format!("top edge {b} exceeds the lower edge {a}")));
                }
                Ok(non_negative(height, "H")? || flat_top || a == b)
            }
            Cylinder { radius, height } | Cone { radius, height } => {
                positive(radius, "R")?;
                non_negative(height, "H")
            }
            ConeFrustum { radius, top, height } => {
                positive(radius, "R")?;
                let flat_top = non_negative(top, "r")?;
                if top > radius {
                    return Err(GeomError::domain(format!("top radius {top} exceeds R = {radius}")));
                }
                Ok(non_negative(height, "H")? || flat_top || top == radius)
            }
            Sphere { radius } => positive(radius, "R").map(|_| false),
            SphericalSector { radius, height }
            | SphericalSegmentSolid { radius, height }
            | SphericalZoneSurface { radius, height } => {
                positive(radius, "R")?;
                let flat = non_negative(height, "H")?;
                if height > 2.0 * radius {
                    return Err(GeomError::domain(format!("height {height} exceeds the diameter {}", 2.0 * radius)));
                }
                Ok(flat)
            }
        }
    }

    /// The same solid with every length multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Result<SolidSpec> {
        positive(k, "scale factor")?;
        let k2 = k * k;
        use SolidSpec::*;
        Ok(match *self {
            Box { a, b, c } => Box { a: a * k, b: b * k, c: c * k },
            Prism { base, height } => Prism { base: base * k2, height: height * k },
            Pyramid { base, height } => Pyramid { base: base * k2, height: height * k },
            PyramidFrustum { base, top, height } => PyramidFrustum {
                base: base * k2,
                top: top * k2,
                height: height * k,
            },
            RegularPrism { n, a, height } => RegularPrism { n, a: a * k, height: height * k },
            RegularPyramid { n, a, height } => RegularPyramid { n, a: a * k, height: height * k },
            RegularPyramidFrustum { n, a, b, height } => RegularPyramidFrustum {
                n,
                a: a * k,
                b: b * k,
                height: height * k,
            },
            Cylinder { radius, height } => Cylinder { radius: radius * k, height: height * k },
            Cone { radius, height } => Cone { radius: radius * k, height: height * k },
            ConeFrustum { radius, top, height } => ConeFrustum {
                radius: radius * k,
                top: top * k,
                height: height * k,
            },
            Sphere { radius } => Sphere { radius: radius * k },
            SphericalSector { radius, height } => SphericalSector { radius: radius * k, height: height * k },
            SphericalSegmentSolid { radius, height } => SphericalSegmentSolid {
                radius: radius * k,
                height: height * k,
            },
            SphericalZoneSurface { radius, height } => SphericalZoneSurface {
                radius: radius * k,
                height: height * k,
            },
        })
    }

    /// Volume, lateral and total area in one pass.
    pub fn measures(&self) -> Result<SolidMeasures> {
        let degenerate = self.validate()?;
        use SolidSpec::*;
        let (volume, lateral, total) = match *self {
            Box { a, b, c } => (Some(a * b * c), Some(2.0 * (a + b) * c), Some(2.0 * (a * b + b * c + c * a))),
            Prism { base, height } => (Some(base * height), None, None),
            Pyramid { base, height } => (Some(base * height / 3.0), None, None),
            PyramidFrustum { base, top, height } => (Some(frustum(base, top, height)), None, None),
            RegularPrism { n, a, height } => {
                let base = regular_area(n, a);
                let lateral = n as f64 * a * height;
                (Some(base * height), Some(lateral), Some(lateral + 2.0 * base))
            }
            RegularPyramid { n, a, height } => {
                let base = regular_area(n, a);
                let apothem = regular_apothem(n, a).hypot(height);
                let lateral = n as f64 * a * apothem / 2.0;
                (Some(base * height / 3.0), Some(lateral), Some(lateral + base))
            }
            RegularPyramidFrustum { n, a, b, height } => {
                let (big, small) = (regular_area(n, a), regular_area(n, b));
                let apothem = (regular_apothem(n, a) - regular_apothem(n, b)).hypot(height);
                let lateral = n as f64 * (a + b) / 2.0 * apothem;
                (Some(frustum(big, small, height)), Some(lateral), Some(lateral + big + small))
            }
            Cylinder { radius, height } => {
                let lateral = 2.0 * PI * radius * height;
                (
                    Some(PI * radius * radius * height),
                    Some(lateral),
                    Some(2.0 * PI * radius * (height + radius)),
                )
            }
            Cone { radius, height } => {
                let lateral = PI * radius * radius.hypot(height);
                (
                    Some(PI * radius * radius * height / 3.0),
                    Some(lateral),
                    Some(lateral + PI * radius * radius),
                )
            }
            ConeFrustum { radius, top, height } => {
                let lateral = PI * (radius + top) * (radius - top).hypot(height);
                (
                    Some(PI * height * (radius * radius + radius * top + top * top) / 3.0),
                    Some(lateral),
                    Some(lateral + PI * (radius * radius + top * top)),
                )
            }
            Sphere { radius } => {
                let area = 4.0 * PI * radius * radius;
                (Some(4.0 * PI * radius.powi(3) / 3.0), Some(area), Some(area))
            }
            SphericalSector { radius, height } => {
                // The cone over the cap's base closes the sector.
                let cone = PI * cap_radius(radius, height) * radius;
                let zone = 2.0 * PI * radius * height;
                (Some(2.0 * PI * radius * radius * height / 3.0), Some(cone), Some(zone + cone))
            }
            SphericalSegmentSolid { radius, height } => {
                let zone = 2.0 * PI * radius * height;
                let rho = cap_radius(radius, height);
                (
                    Some(PI * height * height * (radius - height / 3.0)),
                    Some(zone),
                    Some(zone + PI * rho * rho),
                )
            }
            SphericalZoneSurface { radius, height } => {
                let zone = 2.0 * PI * radius * height;
                (None, Some(zone), Some(zone))
            }
        };
        Ok(SolidMeasures {
            volume,
            lateral,
            total,
            degenerate,
        })
    }
}

pub fn volume(s: &SolidSpec) -> Result<f64> {
    s.measures()?
        .volume
        .ok_or_else(|| GeomError::domain("a surface has no volume"))
}

pub fn surface_area(s: &SolidSpec, which: SurfaceKind) -> Result<f64> {
    let m = s.measures()?;
    match which {
        SurfaceKind::Lateral => m.lateral,
        SurfaceKind::Total => m.total,
    }
    .ok_or_else(|| GeomError::domain("the base perimeter is unknown; use the regular variant"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArchimedesRatios {
    pub cylinder_area: f64,
    pub cylinder_volume: f64,
    pub cone_area: f64,
    pub cone_volume: f64,
}

/// Sphere against its circumscribed cylinder and the circumscribed
/// equilateral cone (base radius `R√3`, height `3R`).
pub fn archimedes_ratios(radius: f64) -> Result<ArchimedesRatios> {
    let sphere = SolidSpec::Sphere { radius };
    let cylinder = SolidSpec::Cylinder {
        radius,
        height: 2.0 * radius,
    };
    let cone = SolidSpec::Cone {
        radius: radius * 3f64.sqrt(),
        height: 3.0 * radius,
    };
    let (s, cy, co) = (sphere.measures()?, cylinder.measures()?, cone.measures()?);
    let ratio = |a: Option<f64>, b: Option<f64>| a.zip(b).map(|(a, b)| a / b).unwrap_or(f64::NAN);
    Ok(ArchimedesRatios {
        cylinder_area: ratio(s.total, cy.total),
        cylinder_volume: ratio(s.volume, cy.volume),
        cone_area: ratio(s.total, co.total),
        cone_volume: ratio(s.volume, co.volume),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimilarityRatios {
    /// Ratio of total (or, when that is unknown, lateral) areas.
    pub area: Option<f64>,
    pub volume: Option<f64>,
}

/// Rescales the solid by `k` and compares the recomputed measures.
pub fn similarity_scaling(s: &SolidSpec, k: f64) -> Result<SimilarityRatios> {
    let (before, after) = (s.measures()?, s.scaled(k)?.measures()?);
    let ratio = |a: Option<f64>, b: Option<f64>| match (a, b) {
        (Some(a), Some(b)) if a != 0.0 => Some(b / a),
        _ => None,
    };
    Ok(SimilarityRatios {
        area: ratio(before.total, after.total).or(ratio(before.lateral, after.lateral)),
        volume: ratio(before.volume, after.volume),
    })
}

/// What is left of a sphere of radius `r` after drilling a cylindrical
/// hole through its center that leaves a band of length `l`. Computed as
/// sphere minus cylinder minus the two caps.
pub fn drilled_sphere_remaining(r: f64, l: f64) -> Result<f64> {
    positive(r, "r")?;
    non_negative(l, "l")?;
    if l > 2.0 * r {
        return Err(GeomError::domain(format!("hole length {l} exceeds the diameter {}", 2.0 * r)));
    }
    let hole = (r * r - l * l / 4.0).max(0.0).sqrt();
    let cylinder = volume(&SolidSpec::Cylinder { radius: hole, height: l }).unwrap_or(0.0);
    let cap = volume(&SolidSpec::SphericalSegmentSolid {
        radius: r,
        height: r - l / 2.0,
    })?;
    Ok(volume(&SolidSpec::Sphere { radius: r })? - cylinder - 2.0 * cap)
}

/// A cylinder of radius `R` and height `H` cut into `m` slabs, each circle
/// divided into `n` arcs, alternate circles turned by half an arc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LanternSpec {
    #[serde(rename = "R")]
    pub radius: f64,
    #[serde(rename = "H")]
    pub height: f64,
    pub m: u64,
    pub n: u64,
}

impl LanternSpec {
    pub fn validate(&self) -> Result<()> {
        positive(self.radius, "R")?;
        non_negative(self.height, "H")?;
        if self.m < 1 {
            return Err(GeomError::domain("the lantern needs at least one slab"));
        }
        if self.n < 3 {
            return Err(GeomError::domain(format!("the lantern needs n >= 3, got {}", self.n)));
        }
        Ok(())
    }
}

/// Total area of the `2mn` congruent triangles. Each has a chord of the
/// inscribed `n`-gon as base; its apex sits over the midpoint of the arc
/// on the neighbouring circle, so the height combines the rise `H/m` with
/// the sagitta `R(1 - cos(π/n))`.
pub fn schwarz_lantern_area(spec: &LanternSpec) -> Result<f64> {
    spec.validate()?;
    let (m, n) = (spec.m as f64, spec.n as f64);
    let half = PI / n;
    let rise = spec.height / m;
    let sagitta = spec.radius * (1.0 - half.cos());
    Ok(2.0 * m * n * spec.radius * half.sin() * rise.hypot(sagitta))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlatonicData {
    pub name: &'static str,
    pub faces: u32,
    pub edges: u32,
    pub vertices: u32,
    /// Sides of each face.
    pub face_sides: u32,
    /// Volume divided by the cube of the edge.
    pub volume_coefficient: f64,
}

impl PlatonicData {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

pub fn platonic_table() -> Vec<PlatonicData> {
    let s2 = 2f64.sqrt();
    let s5 = 5f64.sqrt();
    let entry = |name, faces, edges, vertices, face_sides, volume_coefficient| PlatonicData {
        name,
        faces,
        edges,
        vertices,
        face_sides,
        volume_coefficient,
    };
    vec![
        entry("tetrahedron", 4, 6, 4, 3, s2 / 12.0),
        entry("octahedron", 8, 12, 6, 3, s2 / 3.0),
        entry("icosahedron", 20, 30, 12, 3, 5.0 * (3.0 + s5) / 12.0),
        entry("cube", 6, 12, 8, 4, 1.0),
        entry("dodecahedron", 12, 30, 20, 5, (15.0 + 7.0 * s5) / 4.0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn frustum_example() {
        let v = volume(&SolidSpec::PyramidFrustum {
            base: 16.0,
            top: 4.0,
            height: 6.0,
        })
        .unwrap();
        assert_relative_eq!(v, 56.0, max_relative = 1e-12);
    }

    #[test]
    fn sphere() {
        let s = SolidSpec::Sphere { radius: 1.0 };
        assert_relative_eq!(volume(&s).unwrap(), 4.0 * PI / 3.0, max_relative = 1e-15);
        assert_relative_eq!(surface_area(&s, SurfaceKind::Total).unwrap(), 4.0 * PI, max_relative = 1e-15);
    }

    #[test]
    fn full_segment_is_sphere() {
        let seg = SolidSpec::SphericalSegmentSolid { radius: 1.7, height: 3.4 };
        let sph = SolidSpec::Sphere { radius: 1.7 };
        assert_relative_eq!(volume(&seg).unwrap(), volume(&sph).unwrap(), max_relative = 1e-14);
    }

    #[test]
    fn cone_from_slant() {
        let cone = SolidSpec::cone_from_slant(5.0, 13.0).unwrap();
        assert_eq!(cone, SolidSpec::Cone { radius: 5.0, height: 12.0 });
        assert_relative_eq!(surface_area(&cone, SurfaceKind::Lateral).unwrap(), 65.0 * PI, max_relative = 1e-14);
        assert!(SolidSpec::cone_from_slant(5.0, 4.0).is_err());
    }

    #[test]
    fn flat_cylinder() {
        let c = SolidSpec::Cylinder { radius: 1.0, height: 0.0 };
        let m = c.measures().unwrap();
        assert!(m.degenerate);
        assert_eq!(m.lateral, Some(0.0));
        assert_relative_eq!(m.total.unwrap(), 2.0 * PI);
    }

    #[test]
    fn invariants_rejected() {
        for s in [
            SolidSpec::Sphere { radius: -1.0 },
            SolidSpec::PyramidFrustum { base: 1.0, top: 2.0, height: 1.0 },
            SolidSpec::ConeFrustum { radius: 1.0, top: 2.0, height: 1.0 },
            SolidSpec::SphericalSegmentSolid { radius: 1.0, height: 2.5 },
            SolidSpec::RegularPrism { n: 2, a: 1.0, height: 1.0 },
            SolidSpec::Cylinder { radius: 1.0, height: f64::NAN },
        ] {
            assert!(matches!(s.measures(), Err(GeomError::Domain(_))), "{s:?}");
        }
    }

    #[test]
    fn prism_by_base_area_has_no_lateral() {
        let p = SolidSpec::Prism { base: 3.0, height: 2.0 };
        assert_eq!(volume(&p).unwrap(), 6.0);
        assert!(surface_area(&p, SurfaceKind::Lateral).is_err());
    }

    #[test]
    fn regular_square_prism_matches_box() {
        let p = SolidSpec::RegularPrism { n: 4, a: 2.0, height: 3.0 }.measures().unwrap();
        let b = SolidSpec::Box { a: 2.0, b: 2.0, c: 3.0 }.measures().unwrap();
        assert_relative_eq!(p.volume.unwrap(), b.volume.unwrap(), max_relative = 1e-14);
        assert_relative_eq!(p.lateral.unwrap(), b.lateral.unwrap(), max_relative = 1e-14);
        assert_relative_eq!(p.total.unwrap(), b.total.unwrap(), max_relative = 1e-14);
    }

    #[test]
    fn square_pyramid_lateral() {
        // base 6×6, height 4: slant apothem 5, four faces of area 15
        let s = SolidSpec::RegularPyramid { n: 4, a: 6.0, height: 4.0 };
        assert_relative_eq!(surface_area(&s, SurfaceKind::Lateral).unwrap(), 60.0, max_relative = 1e-14);
        assert_relative_eq!(volume(&s).unwrap(), 48.0, max_relative = 1e-14);
    }

    #[test]
    fn archimedes() {
        for r in [1.0, 2.0, 0.37] {
            let a = archimedes_ratios(r).unwrap();
            assert!((a.cylinder_area - 2.0 / 3.0).abs() < 1e-12);
            assert!((a.cylinder_volume - 2.0 / 3.0).abs() < 1e-12);
            assert!((a.cone_area - 4.0 / 9.0).abs() < 1e-12);
            assert!((a.cone_volume - 4.0 / 9.0).abs() < 1e-12);
        }
    }

    #[test]
    fn similarity() {
        let r = similarity_scaling(&SolidSpec::Cylinder { radius: 2.0, height: 5.0 }, 3.0).unwrap();
        assert_relative_eq!(r.area.unwrap(), 9.0, max_relative = 1e-12);
        assert_relative_eq!(r.volume.unwrap(), 27.0, max_relative = 1e-12);
        let mars = similarity_scaling(&SolidSpec::Sphere { radius: 6371.0 }, 0.5).unwrap();
        assert_relative_eq!(mars.area.unwrap(), 0.25, max_relative = 1e-12);
        assert_relative_eq!(mars.volume.unwrap(), 0.125, max_relative = 1e-12);
        let same = similarity_scaling(&SolidSpec::Box { a: 1.0, b: 2.0, c: 3.0 }, 1.0).unwrap();
        assert_eq!((same.area, same.volume), (Some(1.0), Some(1.0)));
    }

    #[test]
    fn drilled_sphere() {
        let want = PI * 2f64.powi(3) / 6.0;
        for r in [1.0, 1.5, 4.0, 100.0] {
            assert_relative_eq!(drilled_sphere_remaining(r, 2.0).unwrap(), want, max_relative = 1e-9);
        }
        assert!(drilled_sphere_remaining(1.0, 3.0).is_err());
    }

    #[test]
    fn lantern_flat_hexagon() {
        let s = schwarz_lantern_area(&LanternSpec { radius: 1.0, height: 0.0, m: 1, n: 3 }).unwrap();
        assert_relative_eq!(s, 3.0 * 3f64.sqrt() / 2.0, max_relative = 1e-14);
    }

    #[test]
    fn lantern_rejects_small_n() {
        assert!(schwarz_lantern_area(&LanternSpec { radius: 1.0, height: 1.0, m: 1, n: 2 }).is_err());
        assert!(schwarz_lantern_area(&LanternSpec { radius: 1.0, height: 1.0, m: 0, n: 3 }).is_err());
    }

    #[test]
    fn platonic() {
        let t = platonic_table();
        assert_eq!(t.len(), 5);
        assert!(t.iter().all(|p| p.euler_characteristic() == 2));
        // each edge borders two faces
        assert!(t.iter().all(|p| p.faces * p.face_sides == 2 * p.edges));
    }

    #[test]
    fn serde_keys() {
        let s: SolidSpec = serde_json::from_str(r#"{"kind":"cone-frustum","R":3,"r":1,"H":2}"#).unwrap();
        assert_eq!(s, SolidSpec::ConeFrustum { radius: 3.0, top: 1.0, height: 2.0 });
    }
}
