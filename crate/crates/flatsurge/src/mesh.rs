//! Editable triangulated flat structure.
//!
//! Directed edge `e` lives in triangle `e / 3` at slot `e % 3`; `next` walks
//! the triangle boundary counterclockwise. `opp` pairs each directed edge
//! with its partner on the neighbouring triangle and glued partners carry
//! exactly opposite holonomy vectors, so every edge has a well-defined
//! global direction in the plane.
//!
//! All triangles are positively oriented: `hol(e).cross(hol(next(e))) > 0`.

use crate::error::SurfaceError;
use crate::geom::{lex_cmp, Vec2};

pub const TAU: f64 = 2.0 * std::f64::consts::PI;

#[inline]
pub fn tri(e: usize) -> usize {
    e / 3
}

#[inline]
pub fn next(e: usize) -> usize {
    3 * (e / 3) + (e % 3 + 1) % 3
}

#[inline]
pub fn prev(e: usize) -> usize {
    3 * (e / 3) + (e % 3 + 2) % 3
}

/// Mutable triangulated surface with per-directed-edge holonomy and start
/// vertex. Vertex ids stay dense; `marked` flags order-zero points that are
/// part of the surface data rather than triangulation artifacts.
#[derive(Clone, Debug)]
pub struct Mesh {
    pub opp: Vec<usize>,
    pub hol: Vec<Vec2>,
    pub vstart: Vec<usize>,
    pub nv: usize,
    pub marked: Vec<bool>,
}

impl Mesh {
    pub fn n_edges(&self) -> usize {
        self.opp.len()
    }

    pub fn n_tris(&self) -> usize {
        self.opp.len() / 3
    }

    /// Next outgoing edge counterclockwise around the start vertex of `e`.
    #[inline]
    pub fn rot_ccw(&self, e: usize) -> usize {
        self.opp[prev(e)]
    }

    /// Inverse of `rot_ccw`.
    #[inline]
    pub fn rot_cw(&self, e: usize) -> usize {
        next(self.opp[e])
    }

    /// Corner angle at the start vertex of `e`, between `e` and `rot_ccw(e)`.
    pub fn corner_angle(&self, e: usize) -> f64 {
        self.hol[e].corner_angle(-self.hol[prev(e)])
    }

    /// Outgoing edges around the start vertex of `e`, counterclockwise,
    /// starting with `e` itself.
    pub fn vertex_fan(&self, e: usize) -> Vec<usize> {
        let mut out = vec![e];
        let mut cur = self.rot_ccw(e);
        while cur != e {
            out.push(cur);
            cur = self.rot_ccw(cur);
            if out.len() > self.n_edges() {
                panic!("vertex fan does not close");
            }
        }
        out
    }

    /// Total cone angle at the start vertex of `e`.
    pub fn vertex_angle(&self, e: usize) -> f64 {
        self.vertex_fan(e).iter().map(|&c| self.corner_angle(c)).sum()
    }

    /// One outgoing edge per vertex id, or usize::MAX for unused ids.
    pub fn vertex_reps(&self) -> Vec<usize> {
        let mut rep = vec![usize::MAX; self.nv];
        for e in 0..self.n_edges() {
            let v = self.vstart[e];
            if rep[v] == usize::MAX {
                rep[v] = e;
            }
        }
        rep
    }

    /// Local development of triangle `t`: corner positions of the three
    /// directed edges' start vertices.
    pub fn tri_coords(&self, t: usize) -> [Vec2; 3] {
        let e = 3 * t;
        [Vec2::ZERO, self.hol[e], self.hol[e] + self.hol[next(e)]]
    }

    /// Position of the start vertex of `e` in its triangle's local frame.
    pub fn corner_pos(&self, e: usize) -> Vec2 {
        self.tri_coords(tri(e))[e % 3]
    }

    pub fn signed_area_tri(&self, t: usize) -> f64 {
        let e = 3 * t;
        0.5 * self.hol[e].cross(self.hol[next(e)])
    }

    pub fn area(&self) -> f64 {
        (0..self.n_tris()).map(|t| self.signed_area_tri(t)).sum()
    }

    pub fn scale(&mut self, s: f64) {
        for h in &mut self.hol {
            *h = *h * s;
        }
    }

    /// Structural validation; geometric checks happen in surface validation.
    pub fn check_structure(&self) -> Result<(), SurfaceError> {
        let n = self.n_edges();
        if n % 3 != 0 || self.hol.len() != n || self.vstart.len() != n {
            return Err(SurfaceError::Format("inconsistent mesh array lengths".into()));
        }
        for e in 0..n {
            let o = self.opp[e];
            if o >= n || o == e || self.opp[o] != e {
                return Err(SurfaceError::BadGluing(e));
            }
        }
        for e in 0..n {
            // glued edges meet end-to-start
            if self.vstart[e] != self.vstart[next(self.opp[e])] {
                return Err(SurfaceError::Format(format!(
                    "vertex labels inconsistent across gluing at edge {e}"
                )));
            }
            if self.vstart[e] >= self.nv {
                return Err(SurfaceError::Format(format!("vertex id out of range at edge {e}")));
            }
        }
        if self.marked.len() != self.nv {
            return Err(SurfaceError::Format("marked flag array length mismatch".into()));
        }
        Ok(())
    }

    // ------------------------------------------------------------------
    // Flips
    // ------------------------------------------------------------------

    /// Developed quad around edge `e`: [start(e), apex right, end(e), apex left].
    /// Requires the two sides of `e` to lie in distinct triangles.
    pub fn quad(&self, e: usize) -> Option<[Vec2; 4]> {
        let o = self.opp[e];
        if tri(o) == tri(e) {
            return None;
        }
        let h = self.hol[e];
        let p3 = h + self.hol[next(e)]; // apex on the left of e
        let p1 = self.hol[next(o)]; // apex on the right of e, from start(e)
        Some([Vec2::ZERO, p1, h, p3])
    }

    /// True when flipping `e` produces two positively oriented triangles.
    pub fn flip_valid(&self, e: usize) -> bool {
        match self.quad(e) {
            None => false,
            Some([p0, p1, p2, p3]) => {
                let a1 = (p1 - p0).cross(p3 - p0);
                let a2 = (p2 - p1).cross(p3 - p1);
                let scale = (p2 - p0).norm_sq().max((p3 - p1).norm_sq());
                a1 > 1e-12 * scale && a2 > 1e-12 * scale
            }
        }
    }

    /// Holonomy the diagonal would have after flipping `e` (from the right
    /// apex to the left apex).
    pub fn flipped_diagonal(&self, e: usize) -> Vec2 {
        let o = self.opp[e];
        -self.hol[prev(e)] - self.hol[next(o)]
    }

    /// Flip the diagonal `e` of its quad. The caller must have checked
    /// `flip_valid`. Edge ids of the four outer sides move; returns the new
    /// slot of the diagonal (same id as `e`).
    pub fn flip(&mut self, e: usize) {
        let o = self.opp[e];
        debug_assert!(tri(o) != tri(e));
        let (a, b) = (next(e), prev(e));
        let (c, d) = (next(o), prev(o));
        let content = |x: usize| (self.hol[x], self.vstart[x], self.opp[x]);
        let (hol_a, vs_a, op_a) = content(a);
        let (hol_b, vs_b, op_b) = content(b);
        let (hol_c, vs_c, op_c) = content(c);
        let (hol_d, vs_d, op_d) = content(d);
        let te = 3 * tri(e);
        let to = 3 * tri(o);
        // new triangle around e's slot: (diag, old b, old c)
        // new triangle around o's slot: (anti-diag, old d, old a)
        let diag = -hol_b - hol_c;
        let new_pos = |x: usize| -> usize {
            if x == a {
                to + 2
            } else if x == b {
                te + 1
            } else if x == c {
                te + 2
            } else if x == d {
                to + 1
            } else {
                x
            }
        };
        self.hol[te] = diag;
        self.vstart[te] = vs_d;
        self.opp[te] = to;
        self.hol[te + 1] = hol_b;
        self.vstart[te + 1] = vs_b;
        self.opp[te + 1] = new_pos(op_b);
        self.hol[te + 2] = hol_c;
        self.vstart[te + 2] = vs_c;
        self.opp[te + 2] = new_pos(op_c);
        self.hol[to] = -diag;
        self.vstart[to] = vs_b;
        self.opp[to] = te;
        self.hol[to + 1] = hol_d;
        self.vstart[to + 1] = vs_d;
        self.opp[to + 1] = new_pos(op_d);
        self.hol[to + 2] = hol_a;
        self.vstart[to + 2] = vs_a;
        self.opp[to + 2] = new_pos(op_a);
        for x in [te + 1, te + 2, to + 1, to + 2] {
            let p = self.opp[x];
            self.opp[p] = x;
        }
    }

    /// Strict empty-circumdisk violation: the right apex lies strictly
    /// inside the circumcircle of the left triangle.
    pub fn delaunay_violated(&self, e: usize) -> bool {
        match self.quad(e) {
            None => false,
            Some([p0, p1, p2, p3]) => {
                let scale = (p2 - p0)
                    .norm_sq()
                    .max((p3 - p1).norm_sq())
                    .max((p1 - p0).norm_sq());
                in_circle(p0, p2, p3, p1) > 1e-9 * scale * scale
            }
        }
    }

    fn delaunay_tie(&self, e: usize) -> bool {
        match self.quad(e) {
            None => false,
            Some([p0, p1, p2, p3]) => {
                let scale = (p2 - p0)
                    .norm_sq()
                    .max((p3 - p1).norm_sq())
                    .max((p1 - p0).norm_sq());
                in_circle(p0, p2, p3, p1).abs() <= 1e-9 * scale * scale
            }
        }
    }

    /// Flip until every interior edge satisfies the empty-circumdisk
    /// condition, then resolve cocircular ties toward the lexicographically
    /// smaller canonical diagonal. `protected` edges are never flipped.
    pub fn make_delaunay(&mut self, protected: &[usize]) -> Result<usize, SurfaceError> {
        let is_protected = |m: &Mesh, x: usize| {
            protected.iter().any(|&p| p == x || m.opp[x] == p)
        };
        let mut flips = 0usize;
        let budget = 200_000 + 200 * self.n_edges() * self.n_edges();
        loop {
            let mut changed = false;
            // strict pass
            let mut again = true;
            while again {
                again = false;
                for e in 0..self.n_edges() {
                    if e > self.opp[e] || is_protected(self, e) {
                        continue;
                    }
                    if self.delaunay_violated(e) && self.flip_valid(e) {
                        self.flip(e);
                        flips += 1;
                        again = true;
                        changed = true;
                        if flips > budget {
                            return Err(SurfaceError::Format(
                                "flip budget exhausted while computing Delaunay form".into(),
                            ));
                        }
                    }
                }
            }
            // tie pass: canonical diagonal is the lexicographically smaller
            // of the two candidate canonical holonomies
            let mut tie_flipped = false;
            for e in 0..self.n_edges() {
                if e > self.opp[e] || is_protected(self, e) {
                    continue;
                }
                if self.delaunay_tie(e) && self.flip_valid(e) {
                    let cur = self.hol[e].canonical();
                    let alt = self.flipped_diagonal(e).canonical();
                    if lex_cmp(alt, cur) == std::cmp::Ordering::Less {
                        self.flip(e);
                        flips += 1;
                        tie_flipped = true;
                        changed = true;
                        if flips > budget {
                            return Err(SurfaceError::Format(
                                "flip budget exhausted while canonicalizing ties".into(),
                            ));
                        }
                    }
                }
            }
            if !changed || !tie_flipped {
                break;
            }
        }
        Ok(flips)
    }

    // ------------------------------------------------------------------
    // Vertex insertion and removal
    // ------------------------------------------------------------------

    /// Insert a new vertex at position `p` (local frame of triangle `t`,
    /// origin at the start of edge `3t`). Returns the new vertex id.
    /// `p` must lie strictly inside the triangle.
    pub fn split_triangle(&mut self, t: usize, p: Vec2) -> usize {
        let e0 = 3 * t;
        let e1 = e0 + 1;
        let e2 = e0 + 2;
        let [pa, pb, pc] = self.tri_coords(t);
        let v = self.nv;
        self.nv += 1;
        self.marked.push(false);
        let (va, vb, vc) = (self.vstart[e0], self.vstart[e1], self.vstart[e2]);
        let (h0, h1, h2) = (self.hol[e0], self.hol[e1], self.hol[e2]);
        let (op1, op2) = (self.opp[e1], self.opp[e2]);
        let n1 = self.n_tris();
        let n2 = n1 + 1;
        self.opp.extend_from_slice(&[0; 6]);
        self.hol.extend_from_slice(&[Vec2::ZERO; 6]);
        self.vstart.extend_from_slice(&[0; 6]);
        // triangle t: (A->B, B->v, v->A)
        self.hol[e1] = p - pb;
        self.vstart[e1] = vb;
        self.hol[e2] = pa - p;
        self.vstart[e2] = v;
        // triangle n1: (B->C, C->v, v->B)
        let b1 = 3 * n1;
        self.hol[b1] = h1;
        self.vstart[b1] = vb;
        self.opp[b1] = op1;
        self.opp[op1] = b1;
        self.hol[b1 + 1] = p - pc;
        self.vstart[b1 + 1] = vc;
        self.hol[b1 + 2] = pb - p;
        self.vstart[b1 + 2] = v;
        // triangle n2: (C->A, A->v, v->C)
        let b2 = 3 * n2;
        self.hol[b2] = h2;
        self.vstart[b2] = vc;
        self.opp[b2] = op2;
        self.opp[op2] = b2;
        self.hol[b2 + 1] = p - pa;
        self.vstart[b2 + 1] = va;
        self.hol[b2 + 2] = pc - p;
        self.vstart[b2 + 2] = v;
        // spokes
        self.opp[e1] = b1 + 2;
        self.opp[b1 + 2] = e1;
        self.opp[b1 + 1] = b2 + 2;
        self.opp[b2 + 2] = b1 + 1;
        self.opp[b2 + 1] = e2;
        self.opp[e2] = b2 + 1;
        let _ = h0;
        v
    }

    /// Remove an unmarked vertex of total angle 2π by flipping its spokes
    /// down to degree three and deleting the final fan. Returns an edge
    /// remap table (old directed edge -> new id, usize::MAX if deleted).
    pub fn remove_flat_vertex(&mut self, v: usize) -> Result<Vec<usize>, SurfaceError> {
        let rep = *self
            .vertex_reps()
            .get(v)
            .ok_or_else(|| SurfaceError::Format(format!("no such vertex {v}")))?;
        if rep == usize::MAX {
            return Err(SurfaceError::Format(format!("vertex {v} has no edges")));
        }
        let ang = self.vertex_angle(rep);
        if (ang - TAU).abs() > 1e-7 {
            return Err(SurfaceError::Format(format!(
                "vertex {v} has angle {ang}, not removable"
            )));
        }
        let mut guard = 0usize;
        loop {
            let fan = self.vertex_fan(self.vertex_reps()[v]);
            let k = fan.len();
            if k == 3 {
                break;
            }
            if k < 3 {
                return Err(SurfaceError::Format(format!(
                    "vertex {v} has degree {k}; cannot remove"
                )));
            }
            // find a spoke whose flip is valid (an ear of the link not
            // containing the removed vertex)
            let mut flipped = false;
            for &s in &fan {
                if self.flip_valid(s) {
                    // flipping spoke s must detach it from v: the new
                    // diagonal joins the two link neighbours
                    self.flip(s);
                    flipped = true;
                    break;
                }
            }
            if !flipped {
                return Err(SurfaceError::Format(format!(
                    "no flippable spoke at vertex {v} (degree {k})"
                )));
            }
            guard += 1;
            if guard > 4 * self.n_edges() {
                return Err(SurfaceError::Format("vertex removal did not converge".into()));
            }
        }
        // degree-3 fan: triangles tri(fan[i]) with link edges next(fan[i])
        let fan = self.vertex_fan(self.vertex_reps()[v]);
        debug_assert_eq!(fan.len(), 3);
        let t_dead: Vec<usize> = fan.iter().map(|&e| tri(e)).collect();
        if t_dead[0] == t_dead[1] || t_dead[1] == t_dead[2] || t_dead[0] == t_dead[2] {
            return Err(SurfaceError::Format(
                "degenerate fan while removing vertex".into(),
            ));
        }
        // replacement triangle: the three link edges in fan order
        let link: Vec<usize> = fan.iter().map(|&e| next(e)).collect();
        let link_hol: Vec<Vec2> = link.iter().map(|&e| self.hol[e]).collect();
        let link_vs: Vec<usize> = link.iter().map(|&e| self.vstart[e]).collect();
        let link_opp: Vec<usize> = link.iter().map(|&e| self.opp[e]).collect();
        let s: Vec2 = link_hol.iter().fold(Vec2::ZERO, |a, &b| a + b);
        if s.norm() > 1e-7 * link_hol[0].norm().max(1.0) {
            return Err(SurfaceError::Format(
                "link polygon does not close while removing vertex".into(),
            ));
        }
        // build new arrays without the three dead triangles, appending the
        // replacement triangle
        let nt = self.n_tris();
        let mut tri_remap = vec![usize::MAX; nt];
        let mut keep = 0usize;
        for t in 0..nt {
            if !t_dead.contains(&t) {
                tri_remap[t] = keep;
                keep += 1;
            }
        }
        let new_tri = keep; // replacement triangle index
        let mut edge_remap = vec![usize::MAX; self.n_edges()];
        for e in 0..self.n_edges() {
            if tri_remap[tri(e)] != usize::MAX {
                edge_remap[e] = 3 * tri_remap[tri(e)] + e % 3;
            }
        }
        for (i, &le) in link.iter().enumerate() {
            edge_remap[le] = 3 * new_tri + i;
        }
        let n_new = 3 * (keep + 1);
        let mut opp = vec![usize::MAX; n_new];
        let mut hol = vec![Vec2::ZERO; n_new];
        let mut vstart = vec![0usize; n_new];
        for e in 0..self.n_edges() {
            let ne = edge_remap[e];
            if ne == usize::MAX || ne >= 3 * keep {
                continue;
            }
            hol[ne] = self.hol[e];
            vstart[ne] = self.vstart[e];
            let p = edge_remap[self.opp[e]];
            debug_assert_ne!(p, usize::MAX);
            opp[ne] = p;
        }
        for i in 0..3 {
            let ne = 3 * new_tri + i;
            hol[ne] = link_hol[i];
            vstart[ne] = link_vs[i];
            let p = edge_remap[link_opp[i]];
            opp[ne] = p;
            opp[p] = ne;
        }
        // drop the vertex id
        let mut vmap = vec![usize::MAX; self.nv];
        let mut nv = 0usize;
        for id in 0..self.nv {
            if id != v {
                vmap[id] = nv;
                nv += 1;
            }
        }
        for vs in &mut vstart {
            *vs = vmap[*vs];
        }
        let mut marked = Vec::with_capacity(nv);
        for id in 0..self.nv {
            if id != v {
                marked.push(self.marked[id]);
            }
        }
        self.opp = opp;
        self.hol = hol;
        self.vstart = vstart;
        self.nv = nv;
        self.marked = marked;
        Ok(edge_remap)
    }
}

/// Incircle determinant: positive when `d` lies strictly inside the circle
/// through `a`, `b`, `c` (counterclockwise).
pub fn in_circle(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> f64 {
    let (ax, ay) = (a.x - d.x, a.y - d.y);
    let (bx, by) = (b.x - d.x, b.y - d.y);
    let (cx, cy) = (c.x - d.x, c.y - d.y);
    let a2 = ax * ax + ay * ay;
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two-triangle square torus with the diagonal along (1, 1).
    pub fn square_torus_mesh() -> Mesh {
        // triangle 0: (1,0), (0,1), (-1,-1); triangle 1: (-1,0), (0,-1), (1,1)
        let hol = vec![
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(-1.0, -1.0),
            Vec2::new(-1.0, 0.0),
            Vec2::new(0.0, -1.0),
            Vec2::new(1.0, 1.0),
        ];
        let opp = vec![3, 4, 5, 0, 1, 2];
        let vstart = vec![0; 6];
        Mesh { opp, hol, vstart, nv: 1, marked: vec![true] }
    }

    #[test]
    fn torus_structure() {
        let m = square_torus_mesh();
        m.check_structure().unwrap();
        assert!((m.area() - 1.0).abs() < 1e-12);
        assert!((m.vertex_angle(0) - TAU).abs() < 1e-12);
        assert_eq!(m.vertex_fan(0).len(), 6);
    }

    #[test]
    fn flip_preserves_structure_and_area() {
        let mut m = square_torus_mesh();
        assert!(m.flip_valid(2));
        m.flip(2);
        m.check_structure().unwrap();
        assert!((m.area() - 1.0).abs() < 1e-12);
        // the diagonal is now the other square diagonal
        assert_eq!(m.hol[0].canonical(), Vec2::new(-1.0, 1.0).canonical());
        assert!((m.vertex_angle(0) - TAU).abs() < 1e-9);
    }

    #[test]
    fn delaunay_canonicalizes_square_diagonal() {
        let mut m = square_torus_mesh();
        m.make_delaunay(&[]).unwrap();
        m.check_structure().unwrap();
        // both diagonals are cocircular; the canonical one is (-1, 1)
        let diags: Vec<Vec2> = m.hol.iter().map(|h| h.canonical()).collect();
        assert!(diags.iter().any(|&d| (d - Vec2::new(-1.0, 1.0)).norm() < 1e-12));
    }

    #[test]
    fn insert_then_remove_vertex_roundtrip() {
        let mut m = square_torus_mesh();
        let v = m.split_triangle(0, Vec2::new(0.6, 0.25));
        m.check_structure().unwrap();
        assert_eq!(m.n_tris(), 4);
        assert!((m.area() - 1.0).abs() < 1e-12);
        assert!((m.vertex_angle(m.vertex_reps()[v]) - TAU).abs() < 1e-9);
        m.remove_flat_vertex(v).unwrap();
        m.check_structure().unwrap();
        assert_eq!(m.n_tris(), 2);
        assert!((m.area() - 1.0).abs() < 1e-12);
        assert_eq!(m.nv, 1);
    }
}
