//! Concrete reference surfaces used across tests and examples.

use crate::geom::Vec2;
use crate::surface::{from_polygon, TranslationSurface};

/// Unit square torus with one marked point.
pub fn square_torus() -> TranslationSurface {
    rectangle_torus(1.0, 1.0)
}

/// Rectangle torus with one marked point.
pub fn rectangle_torus(w: f64, h: f64) -> TranslationSurface {
    let pts = [
        Vec2::new(0.0, 0.0),
        Vec2::new(w, 0.0),
        Vec2::new(w, h),
        Vec2::new(0.0, h),
    ];
    from_polygon(&pts, &[(0, 2), (1, 3)], true).expect("torus fixture")
}

/// Torus spanned by (1,0) and a generic vector; one marked point.
pub fn sheared_torus(shear: Vec2) -> TranslationSurface {
    let a = Vec2::new(1.0, 0.0);
    let pts = [Vec2::ZERO, a, a + shear, shear];
    from_polygon(&pts, &[(0, 2), (1, 3)], true).expect("sheared torus fixture")
}

/// Regular octagon with side length `side`, opposite sides identified.
/// Genus two, one zero of order two (total angle 6π).
pub fn regular_octagon_side(side: f64) -> TranslationSurface {
    let r = side / (2.0 * (std::f64::consts::PI / 8.0).sin());
    let mut pts = Vec::with_capacity(8);
    for k in 0..8 {
        let a = std::f64::consts::PI * (2.0 * k as f64 + 1.0) / 8.0;
        pts.push(Vec2::new(r * a.cos(), r * a.sin()));
    }
    from_polygon(&pts, &[(0, 4), (1, 5), (2, 6), (3, 7)], false).expect("octagon fixture")
}

/// Regular octagon with unit sides.
pub fn regular_octagon() -> TranslationSurface {
    regular_octagon_side(1.0)
}

/// L-shaped square-tiled surface (three unit squares), boundary segments
/// identified by translation. Genus two, one zero of order two. Its
/// horizontal direction decomposes into two cylinders sharing parallel
/// boundary connections.
pub fn l_shape() -> TranslationSurface {
    // Outline split so every side has a translation partner.
    let pts = [
        Vec2::new(0.0, 0.0),
        Vec2::new(1.0, 0.0),
        Vec2::new(2.0, 0.0),
        Vec2::new(2.0, 1.0),
        Vec2::new(1.0, 1.0),
        Vec2::new(1.0, 2.0),
        Vec2::new(0.0, 2.0),
        Vec2::new(0.0, 1.0),
    ];
    // sides: 0:(1,0) 1:(1,0) 2:(0,1) 3:(-1,0) 4:(0,1) 5:(-1,0) 6:(0,-1) 7:(0,-1)
    from_polygon(&pts, &[(0, 5), (1, 3), (2, 7), (4, 6)], false).expect("l-shape fixture")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_validate() {
        square_torus();
        regular_octagon();
        l_shape();
        rectangle_torus(2.0, 0.5);
    }
}
