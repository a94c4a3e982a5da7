//! Validated translation surfaces.
//!
//! A surface is an immutable triangulation in which every vertex class is a
//! cone point: total angle 2(n+1)π for a zero of order n, with order zero
//! allowed only for explicitly marked points. All operations return new
//! surfaces; sharing one across threads is safe.

use crate::error::SurfaceError;
use crate::geom::Vec2;
use crate::mesh::{prev, tri, Mesh, TAU};

/// A zero of the differential (or a marked regular point when `order == 0`).
#[derive(Clone, Debug)]
pub struct ConePoint {
    pub vertex: usize,
    pub order: usize,
    pub angle: f64,
    /// Outgoing directed edges in counterclockwise cyclic order.
    pub corners: Vec<usize>,
    pub marked: bool,
}

/// Stratum datum: multiset of positive zero orders plus genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    /// Sorted descending; marked points are excluded.
    pub kappa: Vec<usize>,
    pub genus: usize,
    pub marked_points: usize,
}

impl Stratum {
    /// Complex dimension 2g - 1 + n of the stratum chart.
    pub fn dimension(&self) -> usize {
        2 * self.genus - 1 + self.kappa.len()
    }
}

impl std::fmt::Display for Stratum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.kappa.iter().map(|k| k.to_string()).collect();
        write!(f, "H_{}({})", self.genus, parts.join(","))?;
        if self.marked_points > 0 {
            write!(f, "+{}pt", self.marked_points)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct TranslationSurface {
    mesh: Mesh,
    cones: Vec<ConePoint>,
    genus: usize,
}

impl TranslationSurface {
    /// Validate a mesh and wrap it. Checks closure, gluing, orientation,
    /// cone angles, vertex labels and connectivity.
    pub fn from_mesh(mesh: Mesh) -> Result<Self, SurfaceError> {
        mesh.check_structure()?;
        let n = mesh.n_edges();
        let scale: f64 = mesh
            .hol
            .iter()
            .map(|h| h.norm())
            .fold(0.0f64, f64::max)
            .max(1e-300);
        for e in 0..n {
            let o = mesh.opp[e];
            let r = (mesh.hol[e] + mesh.hol[o]).norm();
            if r > 1e-9 * scale {
                return Err(SurfaceError::GluingMismatch(e, o, r));
            }
        }
        for t in 0..mesh.n_tris() {
            let s = (mesh.hol[3 * t] + mesh.hol[3 * t + 1] + mesh.hol[3 * t + 2]).norm();
            if s > 1e-9 * scale {
                return Err(SurfaceError::TriangleNotClosed(t, s));
            }
            let area = mesh.signed_area_tri(t);
            if area <= 1e-14 * scale * scale {
                return Err(SurfaceError::DegenerateTriangle(t, area));
            }
        }
        // vertex classes from rotation orbits; verify the labels agree
        let mut orbit = vec![usize::MAX; n];
        let mut cones = Vec::new();
        for e in 0..n {
            if orbit[e] != usize::MAX {
                continue;
            }
            let id = mesh.vstart[e];
            let mut corners = Vec::new();
            let mut angle = 0.0;
            let mut cur = e;
            loop {
                if mesh.vstart[cur] != id {
                    return Err(SurfaceError::Format(format!(
                        "vertex label mismatch in rotation orbit at edge {cur}"
                    )));
                }
                orbit[cur] = id;
                corners.push(cur);
                angle += mesh.corner_angle(cur);
                cur = mesh.rot_ccw(cur);
                if cur == e {
                    break;
                }
                if corners.len() > n {
                    return Err(SurfaceError::Format("rotation orbit does not close".into()));
                }
            }
            let turns = angle / TAU;
            let k = turns.round();
            if (turns - k).abs() > 1e-7 || k < 1.0 {
                return Err(SurfaceError::BadConeAngle(id, angle));
            }
            let order = k as usize - 1;
            let marked = mesh.marked[id];
            if order == 0 && !marked {
                return Err(SurfaceError::UnmarkedRegularVertex(id));
            }
            cones.push(ConePoint { vertex: id, order, angle, corners, marked });
        }
        cones.sort_by_key(|c| c.vertex);
        if cones.len() != mesh.nv {
            return Err(SurfaceError::Format(
                "vertex ids are not dense or labels collide across orbits".into(),
            ));
        }
        // connectivity over triangle adjacency
        let nt = mesh.n_tris();
        if nt > 0 {
            let mut seen = vec![false; nt];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(t) = stack.pop() {
                for i in 0..3 {
                    let u = tri(mesh.opp[3 * t + i]);
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            if seen.iter().any(|s| !s) {
                return Err(SurfaceError::NotConnected);
            }
        }
        let v = mesh.nv as i64;
        let e_undirected = (n / 2) as i64;
        let f = nt as i64;
        let chi = v - e_undirected + f;
        if chi % 2 != 0 || chi > 2 {
            return Err(SurfaceError::Format(format!("bad Euler characteristic {chi}")));
        }
        let genus = ((2 - chi) / 2) as usize;
        let order_sum: usize = cones.iter().map(|c| c.order).sum();
        if order_sum as i64 != 2 * genus as i64 - 2 {
            return Err(SurfaceError::Format(format!(
                "zero orders sum to {order_sum}, expected 2g-2 = {}",
                2 * genus as i64 - 2
            )));
        }
        Ok(TranslationSurface { mesh, cones, genus })
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn into_mesh(self) -> Mesh {
        self.mesh
    }

    pub fn n_triangles(&self) -> usize {
        self.mesh.n_tris()
    }

    pub fn n_directed_edges(&self) -> usize {
        self.mesh.n_edges()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn cone_points(&self) -> &[ConePoint] {
        &self.cones
    }

    pub fn cone_point(&self, vertex: usize) -> &ConePoint {
        &self.cones[vertex]
    }

    pub fn hol(&self, e: usize) -> Vec2 {
        self.mesh.hol[e]
    }

    pub fn opp(&self, e: usize) -> usize {
        self.mesh.opp[e]
    }

    pub fn vertex_of(&self, e: usize) -> usize {
        self.mesh.vstart[e]
    }

    pub fn area(&self) -> f64 {
        self.mesh.area()
    }

    /// Area from the flat metric, as the sum of triangle areas.
    pub fn area_triangles(&self) -> f64 {
        self.mesh.area()
    }

    pub fn stratum(&self) -> Stratum {
        let mut kappa: Vec<usize> =
            self.cones.iter().filter(|c| c.order > 0).map(|c| c.order).collect();
        kappa.sort_unstable_by(|a, b| b.cmp(a));
        let marked_points = self.cones.iter().filter(|c| c.order == 0).count();
        Stratum { kappa, genus: self.genus, marked_points }
    }

    /// Rescale all holonomies so the area becomes one.
    pub fn normalize_area(&self) -> TranslationSurface {
        let a = self.area();
        let mut mesh = self.mesh.clone();
        mesh.scale(1.0 / a.sqrt());
        TranslationSurface { mesh, cones: self.cones.clone(), genus: self.genus }
    }

    /// Delaunay retriangulation with deterministic tie handling; the flat
    /// metric is unchanged.
    pub fn delaunay(&self) -> Result<TranslationSurface, SurfaceError> {
        let mut mesh = self.mesh.clone();
        mesh.make_delaunay(&[])?;
        TranslationSurface::from_mesh(mesh)
    }

    /// Systole lower bound: the shortest edge of the triangulation after
    /// Delaunay (the true systole cannot exceed the shortest edge but every
    /// saddle connection is at least as long as what the search would find;
    /// this is only used for quick windows/budget decisions).
    pub fn shortest_edge(&self) -> f64 {
        self.mesh.hol.iter().map(|h| h.norm()).fold(f64::INFINITY, f64::min)
    }
}

/// Build a surface from a simple polygon with glued sides.
///
/// `points` lists the polygon vertices counterclockwise; side `i` runs from
/// `points[i]` to `points[i+1]`. `pairing` lists unordered side pairs to be
/// glued by translation; paired sides must carry opposite vectors.
/// `marked_hint` optionally marks every resulting vertex class whose cone
/// angle is 2π.
pub fn from_polygon(
    points: &[Vec2],
    pairing: &[(usize, usize)],
    mark_flat_vertices: bool,
) -> Result<TranslationSurface, SurfaceError> {
    let m = points.len();
    if pairing.len() * 2 != m {
        return Err(SurfaceError::Format("side pairing must cover all sides".into()));
    }
    for &(i, j) in pairing {
        let vi = points[(i + 1) % m] - points[i];
        let vj = points[(j + 1) % m] - points[j];
        if (vi + vj).norm() > 1e-9 {
            return Err(SurfaceError::Format(format!(
                "paired sides {i},{j} are not opposite"
            )));
        }
    }
    let tris = triangulate_simple_polygon(points)
        .ok_or_else(|| SurfaceError::Format("polygon triangulation failed".into()))?;
    // mesh arrays
    let nt = tris.len();
    let mut hol = vec![Vec2::ZERO; 3 * nt];
    let mut opp = vec![usize::MAX; 3 * nt];
    let mut corner_point = vec![0usize; 3 * nt];
    use std::collections::HashMap;
    let mut half: HashMap<(usize, usize), usize> = HashMap::new();
    for (t, &[a, b, c]) in tris.iter().enumerate() {
        let idx = [a, b, c];
        for i in 0..3 {
            let e = 3 * t + i;
            let (u, v) = (idx[i], idx[(i + 1) % 3]);
            hol[e] = points[v] - points[u];
            corner_point[e] = u;
            half.insert((u, v), e);
        }
    }
    // interior edges: both (u,v) and (v,u) present
    for (&(u, v), &e) in half.iter() {
        if let Some(&f) = half.get(&(v, u)) {
            opp[e] = f;
            opp[f] = e;
        }
    }
    // boundary edges via the side pairing
    for &(i, j) in pairing {
        let ei = *half
            .get(&(i, (i + 1) % m))
            .ok_or_else(|| SurfaceError::Format("missing boundary side".into()))?;
        let ej = *half
            .get(&(j, (j + 1) % m))
            .ok_or_else(|| SurfaceError::Format("missing boundary side".into()))?;
        opp[ei] = ej;
        opp[ej] = ei;
    }
    if opp.iter().any(|&o| o == usize::MAX) {
        return Err(SurfaceError::Format("unglued edge remains".into()));
    }
    // vertex classes: orbits of rot_ccw
    let n = 3 * nt;
    let rot = |e: usize| opp[prev(e)];
    let mut vstart = vec![usize::MAX; n];
    let mut nv = 0usize;
    for e in 0..n {
        if vstart[e] != usize::MAX {
            continue;
        }
        let mut cur = e;
        loop {
            vstart[cur] = nv;
            cur = rot(cur);
            if cur == e {
                break;
            }
        }
        nv += 1;
    }
    let mut mesh = Mesh { opp, hol, vstart, nv, marked: vec![false; nv] };
    if mark_flat_vertices {
        let reps = mesh.vertex_reps();
        for v in 0..nv {
            let ang = mesh.vertex_angle(reps[v]);
            if (ang - TAU).abs() < 1e-7 {
                mesh.marked[v] = true;
            }
        }
    }
    TranslationSurface::from_mesh(mesh)
}

/// Ear-clipping triangulation of a simple polygon given counterclockwise.
/// Returns triangles as point-index triples, all positively oriented.
pub fn triangulate_simple_polygon(points: &[Vec2]) -> Option<Vec<[usize; 3]>> {
    let n = points.len();
    if n < 3 {
        return None;
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let mut tris = Vec::with_capacity(n - 2);
    let mut guard = 0usize;
    while idx.len() > 3 {
        let k = idx.len();
        let mut clipped = false;
        for i in 0..k {
            let (ia, ib, ic) = (idx[(i + k - 1) % k], idx[i], idx[(i + 1) % k]);
            let (a, b, c) = (points[ia], points[ib], points[ic]);
            let cross = (b - a).cross(c - a);
            if cross <= 1e-14 * (b - a).norm_sq().max((c - a).norm_sq()) {
                continue; // reflex or flat corner
            }
            // no other active vertex inside the candidate ear
            let mut blocked = false;
            for &j in &idx {
                if j == ia || j == ib || j == ic {
                    continue;
                }
                if point_in_triangle(points[j], a, b, c) {
                    blocked = true;
                    break;
                }
            }
            if !blocked {
                tris.push([ia, ib, ic]);
                idx.remove(i);
                clipped = true;
                break;
            }
        }
        if !clipped {
            return None;
        }
        guard += 1;
        if guard > 2 * n {
            return None;
        }
    }
    tris.push([idx[0], idx[1], idx[2]]);
    Some(tris)
}

fn point_in_triangle(p: Vec2, a: Vec2, b: Vec2, c: Vec2) -> bool {
    let d1 = (b - a).cross(p - a);
    let d2 = (c - b).cross(p - b);
    let d3 = (a - c).cross(p - c);
    d1 >= -1e-14 && d2 >= -1e-14 && d3 >= -1e-14
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn torus_from_polygon() {
        let s = fixtures::square_torus();
        assert_eq!(s.genus(), 1);
        assert_eq!(s.stratum().kappa, Vec::<usize>::new());
        assert_eq!(s.stratum().marked_points, 1);
        assert!((s.area() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn octagon_is_genus_two_double_zero() {
        let s = fixtures::regular_octagon();
        assert_eq!(s.genus(), 2);
        assert_eq!(s.stratum().kappa, vec![2]);
        assert_eq!(s.stratum().marked_points, 0);
        let c = &s.cone_points()[0];
        assert_eq!(c.order, 2);
        assert!((c.angle - 6.0 * std::f64::consts::PI).abs() < 1e-9);
        // side length 1: area 2 + 2*sqrt(2)
        assert!((s.area() - (2.0 + 2.0 * 2f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn octagon_normalized_area_and_side() {
        let s = fixtures::regular_octagon().normalize_area();
        assert!((s.area() - 1.0).abs() < 1e-12);
        let st = s.stratum();
        assert_eq!(st.dimension(), 2 * 2 - 1 + 1);
        // normalize twice: idempotent
        let s2 = s.normalize_area();
        for e in 0..s.n_directed_edges() {
            assert!((s.hol(e) - s2.hol(e)).norm() < 1e-12);
        }
    }

    #[test]
    fn perturbed_gluing_is_rejected() {
        let s = fixtures::square_torus();
        let mut mesh = s.into_mesh();
        mesh.hol[0].x += 0.1;
        match TranslationSurface::from_mesh(mesh) {
            Err(SurfaceError::GluingMismatch(..)) | Err(SurfaceError::TriangleNotClosed(..)) => {}
            other => panic!("expected gluing rejection, got {other:?}"),
        }
    }

    #[test]
    fn lshape_is_double_zero() {
        let s = fixtures::l_shape();
        assert_eq!(s.genus(), 2);
        assert_eq!(s.stratum().kappa, vec![2]);
    }
}
