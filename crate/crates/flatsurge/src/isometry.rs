//! Translation-isometry testing via the Delaunay cell complex.
//!
//! Cocircular quads make the Delaunay *triangulation* non-unique, so the
//! comparison works on the Delaunay *cell* decomposition instead: triangles
//! glued across cocircular interior edges form canonical polygonal cells.
//! Two surfaces are translation-isometric exactly when their cell complexes
//! admit a label bijection with matching edge holonomies.

use crate::error::SurfaceError;
use crate::mesh::{in_circle, next, Mesh};
use crate::surface::TranslationSurface;

/// Interior edges of cocircular quads after Delaunay.
fn tie_edges(mesh: &Mesh) -> Vec<bool> {
    let n = mesh.n_edges();
    let mut tie = vec![false; n];
    for e in 0..n {
        if let Some([p0, p1, p2, p3]) = mesh.quad(e) {
            let scale = (p2 - p0)
                .norm_sq()
                .max((p3 - p1).norm_sq())
                .max((p1 - p0).norm_sq());
            if in_circle(p0, p2, p3, p1).abs() <= 1e-9 * scale * scale {
                tie[e] = true;
            }
        }
    }
    tie
}

/// Next boundary edge of the Delaunay cell containing `e` on its left.
fn cell_next(mesh: &Mesh, tie: &[bool], e: usize) -> usize {
    let mut cur = next(e);
    let mut guard = 0;
    while tie[cur] {
        cur = next(mesh.opp[cur]);
        guard += 1;
        assert!(guard <= mesh.n_edges(), "cell boundary walk does not close");
    }
    cur
}

/// Test whether two surfaces are related by a translation isometry; returns
/// the directed-edge bijection between their Delaunay forms when they are.
pub fn isometric(
    a: &TranslationSurface,
    b: &TranslationSurface,
    tol: f64,
) -> Result<Option<Vec<usize>>, SurfaceError> {
    if a.n_triangles() != b.n_triangles()
        || a.cone_points().len() != b.cone_points().len()
        || a.genus() != b.genus()
        || a.stratum() != b.stratum()
    {
        return Ok(None);
    }
    let da = a.delaunay()?;
    let db = b.delaunay()?;
    let ma = da.mesh();
    let mb = db.mesh();
    let tie_a = tie_edges(ma);
    let tie_b = tie_edges(mb);
    if tie_a.iter().filter(|&&t| t).count() != tie_b.iter().filter(|&&t| t).count() {
        return Ok(None);
    }
    let n = ma.n_edges();
    // anchor: any non-tie edge of a (fall back to edge 0 when everything is
    // a tie, which cannot happen for a valid cell complex)
    let anchor = (0..n).find(|&e| !tie_a[e]).unwrap_or(0);
    'candidates: for f0 in 0..n {
        if tie_b[f0] || (ma.hol[anchor] - mb.hol[f0]).norm() > tol {
            continue;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut stack = vec![(anchor, f0)];
        while let Some((e, f)) = stack.pop() {
            if map[e] != usize::MAX {
                if map[e] != f {
                    continue 'candidates;
                }
                continue;
            }
            if used[f]
                || tie_b[f]
                || (ma.hol[e] - mb.hol[f]).norm() > tol
                || ma.marked[ma.vstart[e]] != mb.marked[mb.vstart[f]]
            {
                continue 'candidates;
            }
            map[e] = f;
            used[f] = true;
            stack.push((ma.opp[e], mb.opp[f]));
            stack.push((cell_next(ma, &tie_a, e), cell_next(mb, &tie_b, f)));
        }
        // all non-tie edges must be matched
        if (0..n).all(|e| tie_a[e] || map[e] != usize::MAX) {
            return Ok(Some(map));
        }
    }
    Ok(None)
}

/// Convenience wrapper returning just the verdict.
pub fn is_isometric(a: &TranslationSurface, b: &TranslationSurface, tol: f64) -> bool {
    isometric(a, b, tol).map(|m| m.is_some()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::surface::TranslationSurface;

    #[test]
    fn surface_isometric_to_itself() {
        let s = fixtures::regular_octagon();
        assert!(is_isometric(&s, &s, 1e-9));
        let t = fixtures::square_torus();
        assert!(is_isometric(&t, &t, 1e-9));
        let l = fixtures::l_shape();
        assert!(is_isometric(&l, &l, 1e-9));
    }

    #[test]
    fn isometric_after_random_flips() {
        let s = fixtures::regular_octagon();
        let mut mesh = s.mesh().clone();
        // aggressively reshuffle the triangulation with valid flips
        let mut k = 0usize;
        for round in 0..6 {
            for e in 0..mesh.n_edges() {
                if (e + round) % 3 == 0 && mesh.flip_valid(e) {
                    mesh.flip(e);
                    k += 1;
                }
            }
        }
        assert!(k > 3, "expected some flips to apply");
        let t = TranslationSurface::from_mesh(mesh).unwrap();
        assert!(is_isometric(&s, &t, 1e-9));
    }

    #[test]
    fn different_tori_are_not_isometric() {
        let a = fixtures::square_torus();
        let b = fixtures::rectangle_torus(2.0, 0.5);
        assert!(!is_isometric(&a, &b, 1e-9));
        let c = fixtures::sheared_torus(crate::geom::Vec2::new(0.31, 1.07));
        assert!(!is_isometric(&a, &c, 1e-9));
        assert!(is_isometric(&c, &c, 1e-9));
    }
}
