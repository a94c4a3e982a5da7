//! Saddle-connection enumeration and classification.
//!
//! Enumeration develops wedges of directions out of every cone-point corner,
//! crossing one triangle at a time and splitting the wedge at each vertex it
//! sees. A wedge state carries the developed crossed edge together with the
//! open direction window through which unseen connections must pass; pruning
//! drops states whose reachable window already lies beyond the length bound.
//! Holonomy vectors of saddle connections form a discrete set, so the search
//! terminates.
//!
//! Each geodesic is discovered once per orientation; the result keeps the
//! canonical orientation (holonomy in the closed upper half-plane with the
//! positive x-axis).

use crate::error::EnumerateError;
use crate::geom::Vec2;
use crate::mesh::{next, prev, tri, Mesh, TAU};
use crate::surface::TranslationSurface;

pub const DEFAULT_NODE_BUDGET: usize = 20_000_000;

/// A developed geodesic segment between cone points with no cone point in
/// its interior, stored with canonical orientation.
#[derive(Clone, Debug)]
pub struct SaddleConnection {
    pub start_vertex: usize,
    pub end_vertex: usize,
    /// Corner (outgoing directed edge) whose sector contains the outgoing ray.
    pub start_corner: usize,
    /// Corner at the end vertex whose sector contains the reversed ray.
    pub end_corner: usize,
    pub holonomy: Vec2,
    pub length: f64,
    /// Directed edges exited along the way, in traversal order.
    pub crossings: Vec<usize>,
    pub closed: bool,
}

struct WedgeState {
    /// Directed edge of the triangle being entered; the origin lies strictly
    /// on its right, the apex on its left.
    edge: usize,
    pa: Vec2,
    pb: Vec2,
    u: Vec2,
    v: Vec2,
    path: Vec<usize>,
}

struct Search<'a> {
    mesh: &'a Mesh,
    max_len_sq: f64,
    max_len: f64,
    nodes: usize,
    budget: usize,
    out: Vec<(usize, SaddleConnection)>,
}

impl<'a> Search<'a> {
    /// Smallest distance from the origin to the part of segment [s0, s1]
    /// whose direction lies inside the wedge [u, v].
    fn clipped_min_dist(&self, s0: Vec2, s1: Vec2, u: Vec2, v: Vec2) -> f64 {
        let d = s1 - s0;
        let fu0 = u.cross(s0);
        let fu1 = u.cross(s1);
        let fv0 = v.cross(s0);
        let fv1 = v.cross(s1);
        // segment runs from the cw side to the ccw side of the window, so
        // u.cross grows and v.cross falls along it
        let mut t0 = 0.0f64;
        let mut t1 = 1.0f64;
        if fu0 < 0.0 {
            let den = fu0 - fu1;
            if den.abs() > 1e-300 {
                t0 = t0.max(fu0 / den);
            }
        }
        if fv1 < 0.0 {
            let den = fv1 - fv0;
            if den.abs() > 1e-300 {
                t1 = t1.min(1.0 - fv1 / den);
            }
        }
        if t0 > t1 {
            return f64::INFINITY;
        }
        let dd = d.norm_sq();
        let mut best = f64::INFINITY;
        let tstar = if dd > 0.0 { (-s0.dot(d) / dd).clamp(t0, t1) } else { t0 };
        for t in [t0, t1, tstar] {
            let p = s0 + d * t;
            best = best.min(p.norm());
        }
        best
    }

    fn run_corner(&mut self, corner: usize) -> Result<(), EnumerateError> {
        let m = self.mesh;
        let base_vertex = m.vstart[corner];
        // the corner's own edge is the sector's clockwise boundary ray
        let h = m.hol[corner];
        if h.norm_sq() <= self.max_len_sq {
            self.out.push((
                corner,
                SaddleConnection {
                    start_vertex: base_vertex,
                    end_vertex: m.vstart[m.opp[corner]],
                    start_corner: corner,
                    end_corner: m.opp[corner],
                    holonomy: h,
                    length: h.norm(),
                    crossings: Vec::new(),
                    closed: base_vertex == m.vstart[m.opp[corner]],
                },
            ));
        }
        // initial wedge through the opposite edge of the corner triangle
        let b = m.hol[corner];
        let c = m.hol[corner] + m.hol[next(corner)];
        let d0 = m.opp[next(corner)];
        let mut stack = vec![WedgeState {
            edge: d0,
            pa: c,
            pb: b,
            u: b,
            v: c,
            path: vec![next(corner)],
        }];
        while let Some(st) = stack.pop() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(EnumerateError::BudgetExceeded(self.budget));
            }
            let d = st.edge;
            let e1 = next(d);
            let e2 = prev(d);
            let pc = st.pb + m.hol[e1];
            // apex inside the open wedge: a saddle connection candidate
            if st.u.cross(pc) > 0.0 && pc.cross(st.v) > 0.0 && pc.norm_sq() <= self.max_len_sq
            {
                let end_corner = e2;
                self.out.push((
                    corner,
                    SaddleConnection {
                        start_vertex: base_vertex,
                        end_vertex: m.vstart[end_corner],
                        start_corner: corner,
                        end_corner,
                        holonomy: pc,
                        length: pc.norm(),
                        crossings: st.path.clone(),
                        closed: base_vertex == m.vstart[end_corner],
                    },
                ));
            }
            // child through e1: segment (pb, pc)
            {
                let u = st.u;
                let v = if pc.cross(st.v) > 0.0 { pc } else { st.v };
                if u.cross(v) > 0.0
                    && self.clipped_min_dist(st.pb, pc, u, v) <= self.max_len
                {
                    let mut path = st.path.clone();
                    path.push(e1);
                    stack.push(WedgeState {
                        edge: m.opp[e1],
                        pa: pc,
                        pb: st.pb,
                        u,
                        v,
                        path,
                    });
                }
            }
            // child through e2: segment (pc, pa)
            {
                let u = if st.u.cross(pc) > 0.0 { pc } else { st.u };
                let v = st.v;
                if u.cross(v) > 0.0
                    && self.clipped_min_dist(pc, st.pa, u, v) <= self.max_len
                {
                    let mut path = st.path;
                    path.push(e2);
                    stack.push(WedgeState {
                        edge: m.opp[e2],
                        pa: st.pa,
                        pb: pc,
                        u,
                        v,
                        path,
                    });
                }
            }
        }
        Ok(())
    }
}

/// All saddle connections of length at most `max_length`, one record per
/// unoriented geodesic, canonically oriented, sorted by (length, holonomy).
pub fn enumerate_saddle_connections(
    surface: &TranslationSurface,
    max_length: f64,
    budget: usize,
) -> Result<Vec<SaddleConnection>, EnumerateError> {
    let mesh = surface.mesh();
    let mut search = Search {
        mesh,
        max_len_sq: max_length * max_length,
        max_len: max_length,
        nodes: 0,
        budget,
        out: Vec::new(),
    };
    for e in 0..mesh.n_edges() {
        search.run_corner(e)?;
    }
    let mut found: Vec<SaddleConnection> = search
        .out
        .into_iter()
        .map(|(_, sc)| sc)
        .filter(|sc| sc.holonomy.is_canonical())
        .collect();
    found.sort_by(|a, b| {
        a.length
            .partial_cmp(&b.length)
            .unwrap()
            .then(a.holonomy.x.partial_cmp(&b.holonomy.x).unwrap())
            .then(a.holonomy.y.partial_cmp(&b.holonomy.y).unwrap())
            .then(a.start_vertex.cmp(&b.start_vertex))
            .then(a.end_vertex.cmp(&b.end_vertex))
            .then(a.start_corner.cmp(&b.start_corner))
    });
    Ok(found)
}

// ----------------------------------------------------------------------
// Classification
// ----------------------------------------------------------------------

/// Counterclockwise cone angle at a vertex from ray (`corner_a`, direction
/// `dir_a` inside its sector) to ray (`corner_b`, `dir_b`).
pub fn cone_angle_between(
    mesh: &Mesh,
    corner_a: usize,
    dir_a: Vec2,
    corner_b: usize,
    dir_b: Vec2,
) -> f64 {
    debug_assert_eq!(mesh.vstart[corner_a], mesh.vstart[corner_b]);
    let a0 = offset_in_corner(mesh, corner_a, dir_a);
    let b0 = offset_in_corner(mesh, corner_b, dir_b);
    if corner_a == corner_b && b0 >= a0 {
        return b0 - a0;
    }
    let mut acc = mesh.corner_angle(corner_a) - a0;
    let mut c = mesh.rot_ccw(corner_a);
    let mut guard = 0;
    while c != corner_b {
        acc += mesh.corner_angle(c);
        c = mesh.rot_ccw(c);
        guard += 1;
        assert!(guard <= mesh.n_edges(), "corner walk did not close");
    }
    acc + b0
}

/// Angle of `dir` past the clockwise boundary ray of `corner`.
fn offset_in_corner(mesh: &Mesh, corner: usize, dir: Vec2) -> f64 {
    let base = mesh.hol[corner];
    let a = base.angle_ccw_to(dir);
    // directions on the counterclockwise boundary belong to the next corner;
    // numerically we can land a hair past the corner angle
    if a >= TAU - 1e-9 {
        0.0
    } else {
        a
    }
}

/// The two cone-angle sums on the left and right of a closed connection at
/// its zero, in radians. Their sum is the total cone angle.
pub fn side_angles(surface: &TranslationSurface, sc: &SaddleConnection) -> (f64, f64) {
    assert!(sc.closed, "side angles are defined for closed connections");
    let mesh = surface.mesh();
    let total = surface.cone_point(sc.start_vertex).angle;
    let left = cone_angle_between(
        mesh,
        sc.start_corner,
        sc.holonomy,
        sc.end_corner,
        -sc.holonomy,
    );
    (left, total - left)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A maximal flat cylinder with a closed connection on its boundary.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub circumference: f64,
    pub height: f64,
    pub direction: Vec2,
}

/// Detect the maximal flat cylinder attached along `sc` on the given side.
/// Present exactly when the side angle is π: the offset leaf of the
/// foliation then closes up after one wrap. Returns `None` otherwise.
pub fn cylinder_on_side(
    surface: &TranslationSurface,
    sc: &SaddleConnection,
    side: Side,
) -> Option<Cylinder> {
    assert!(sc.closed);
    let mesh = surface.mesh();
    let (l, r) = side_angles(surface, sc);
    let ang = match side {
        Side::Left => l,
        Side::Right => r,
    };
    if (ang - std::f64::consts::PI).abs() > 1e-7 {
        return None;
    }
    // March the leaf at level 0+ on the chosen side and measure the lowest
    // strictly positive apex over the crossed triangles.
    march_cylinder(mesh, sc, side)
}

/// Follow the closed leaf just off `sc` on `side`; returns the cylinder when
/// the leaf closes up within budget.
pub fn march_cylinder(
    mesh: &Mesh,
    sc: &SaddleConnection,
    side: Side,
) -> Option<Cylinder> {
    // Work in a frame where the connection runs from the origin along `dir`
    // and the cylinder side is the upper half-plane.
    let dir = match side {
        Side::Left => sc.holonomy.normalized(),
        // mirror: traverse the connection backwards so its left is the
        // requested right side
        Side::Right => (-sc.holonomy).normalized(),
    };
    let start_corner = match side {
        Side::Left => sc.start_corner,
        Side::Right => sc.end_corner,
    };
    let c = sc.length;
    // local coordinates: rotate world w by -angle(dir)
    let to_local = |w: Vec2| Vec2::new(w.dot(dir), dir.cross(w));
    // The leaf enters the corner fan on the ccw side of the outgoing ray.
    // Starting at the corner containing the ray, walk the fan of triangles
    // crossed by the horizontal line y = 0+ until we either return to the
    // start (cylinder closes after advancing by exactly the circumference)
    // or leave without closing.
    let mut lowest = f64::INFINITY;
    // current crossed edge with developed endpoints (local frame)
    let mut cur = next(start_corner);
    let mut a = to_local(mesh.hol[start_corner]); // develops start of cur
    let mut b = a + to_local(mesh.hol[cur]);
    let budget = 8 * mesh.n_edges() + 16;
    for _ in 0..budget {
        // record the apex above the line if positive
        for p in [a, b] {
            if p.y > 1e-9 && p.y < lowest {
                lowest = p.y;
            }
        }
        // the horizontal leaf crosses `cur` iff its endpoints straddle y=0+
        // (one at y<=0 near the line start, one above); cross into the next
        // triangle
        let o = mesh.opp[cur];
        // positions transfer: start(o) = end(cur), end(o) = start(cur)
        let t = tri(o);
        let ea = next(o);
        let eb = prev(o);
        // apex of the next triangle
        let apex = b + to_local(mesh.hol[ea]);
        if apex.y > 1e-9 && apex.y < lowest {
            lowest = apex.y;
        }
        // choose the next crossed edge: the one straddling the leaf level
        // y = 0+ between x growing
        let _ = t;
        let (na, nb, nedge) = if apex.y > 1e-9 {
            // leaf exits through edge (end(cur)->apex)? that edge runs from
            // b to apex; it straddles 0+ iff b.y <= 0 < apex.y
            if b.y <= 1e-9 {
                (b, apex, ea)
            } else {
                (apex, a, eb)
            }
        } else if apex.y < -1e-9 {
            // apex below: leaf exits through the edge from apex to start(cur)
            if a.y > 1e-9 {
                (apex, a, eb)
            } else {
                (b, apex, ea)
            }
        } else {
            // apex sits on the leaf line: a cone point blocks the leaf unless
            // it is exactly the far end of the closed-up leaf
            let x = apex.x;
            if (x - c).abs() <= 1e-7 * c.max(1.0) && lowest.is_finite() {
                return Some(Cylinder {
                    circumference: c,
                    height: lowest,
                    direction: match side {
                        Side::Left => sc.holonomy.normalized(),
                        Side::Right => (-sc.holonomy).normalized(),
                    },
                });
            }
            if x.abs() <= 1e-7 * c.max(1.0) {
                // back at the start vertex: closed up
                if lowest.is_finite() {
                    return Some(Cylinder {
                        circumference: c,
                        height: lowest,
                        direction: match side {
                            Side::Left => sc.holonomy.normalized(),
                            Side::Right => (-sc.holonomy).normalized(),
                        },
                    });
                }
                return None;
            }
            return None;
        };
        a = na;
        b = nb;
        cur = nedge;
    }
    None
}

// ----------------------------------------------------------------------
// Cutting
// ----------------------------------------------------------------------

/// Number of connected components after severing triangle adjacency across
/// the given undirected edges (listed by either directed representative).
pub fn components_after_cut(mesh: &Mesh, cut_edges: &[usize]) -> usize {
    let nt = mesh.n_tris();
    let mut severed = vec![false; mesh.n_edges()];
    for &e in cut_edges {
        severed[e] = true;
        severed[mesh.opp[e]] = true;
    }
    let mut comp = vec![usize::MAX; nt];
    let mut n_comp = 0;
    for t0 in 0..nt {
        if comp[t0] != usize::MAX {
            continue;
        }
        let mut stack = vec![t0];
        comp[t0] = n_comp;
        while let Some(t) = stack.pop() {
            for i in 0..3 {
                let e = 3 * t + i;
                if severed[e] {
                    continue;
                }
                let u = tri(mesh.opp[e]);
                if comp[u] == usize::MAX {
                    comp[u] = n_comp;
                    stack.push(u);
                }
            }
        }
        n_comp += 1;
    }
    n_comp
}

/// Whether cutting along the closed connection disconnects the surface.
/// The connection is first realized as a triangulation edge on a scratch
/// copy; immersed (self-crossing) connections are rejected.
pub fn is_separating(
    surface: &TranslationSurface,
    sc: &SaddleConnection,
) -> Result<bool, crate::error::SurgeryError> {
    assert!(sc.closed);
    let mut mesh = surface.mesh().clone();
    let e = crate::surgery::insert_connection_edge(&mut mesh, sc)?;
    Ok(components_after_cut(&mesh, &[e]) > 1)
}

/// Whether two disjoint connections with equal holonomy bound a subsurface,
/// i.e. cutting along both disconnects the surface.
pub fn homologous_pair(
    surface: &TranslationSurface,
    sc1: &SaddleConnection,
    sc2: &SaddleConnection,
) -> Result<bool, crate::error::SurgeryError> {
    let mut mesh = surface.mesh().clone();
    let e1 = crate::surgery::insert_connection_edge(&mut mesh, sc1)?;
    let path2 = crate::surgery::retrace(&mesh, sc2)?;
    let e2 = crate::surgery::insert_traced_edge(&mut mesh, &path2)?;
    Ok(components_after_cut(&mesh, &[e1, e2]) > 1)
}

// ----------------------------------------------------------------------
// Multiplicity and counting
// ----------------------------------------------------------------------

pub const HOL_BUCKET_TOL: f64 = 1e-9;

/// Multiplicity of each connection: the number of enumerated connections
/// sharing its holonomy vector up to the bucketing tolerance (counting the
/// connection itself).
pub fn multiplicities(connections: &[SaddleConnection]) -> Vec<usize> {
    let n = connections.len();
    let mut mult = vec![1usize; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if connections[j].length - connections[i].length > 2.0 * HOL_BUCKET_TOL {
                break;
            }
            if (connections[i].holonomy - connections[j].holonomy).norm() <= HOL_BUCKET_TOL {
                mult[i] += 1;
                mult[j] += 1;
            }
        }
    }
    mult
}

/// Multiplicity of a specific holonomy value among the connections.
pub fn multiplicity(connections: &[SaddleConnection], v: Vec2) -> usize {
    let v = v.canonical();
    connections
        .iter()
        .filter(|sc| (sc.holonomy - v).norm() <= HOL_BUCKET_TOL)
        .count()
}

/// Filter for counting closed connections.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ClosedFilter {
    /// Keep only holonomy vectors realized by a single connection.
    pub multiplicity_one: bool,
    /// Drop connections with a π side (equivalently an adjacent cylinder).
    pub no_cylinder: bool,
    /// Keep only connections whose zero has this order.
    pub zero_order: Option<usize>,
    /// Keep only connections with these side angles, as odd multiples of π:
    /// angles {(2b'+1)π, (2b''+1)π} as an unordered pair.
    pub side_split: Option<(usize, usize)>,
}

/// Full classification of one closed connection.
#[derive(Clone, Debug)]
pub struct ClosedClass {
    pub index: usize,
    pub length: f64,
    pub zero_order: usize,
    pub side_left: f64,
    pub side_right: f64,
    pub multiplicity: usize,
    pub cylinder_sides: usize,
}

/// Classify every closed connection in an enumeration pass.
pub fn classify_closed(
    surface: &TranslationSurface,
    connections: &[SaddleConnection],
) -> Vec<ClosedClass> {
    let mult = multiplicities(connections);
    let pi = std::f64::consts::PI;
    connections
        .iter()
        .enumerate()
        .filter(|(_, sc)| sc.closed)
        .map(|(i, sc)| {
            let (l, r) = side_angles(surface, sc);
            let cyl = [l, r]
                .iter()
                .filter(|a| (**a - pi).abs() < 1e-7)
                .count();
            ClosedClass {
                index: i,
                length: sc.length,
                zero_order: surface.cone_point(sc.start_vertex).order,
                side_left: l,
                side_right: r,
                multiplicity: mult[i],
                cylinder_sides: cyl,
            }
        })
        .collect()
}

impl ClosedFilter {
    pub fn admits(&self, c: &ClosedClass) -> bool {
        if self.multiplicity_one && c.multiplicity != 1 {
            return false;
        }
        if self.no_cylinder && c.cylinder_sides != 0 {
            return false;
        }
        if let Some(m) = self.zero_order {
            if c.zero_order != m {
                return false;
            }
        }
        if let Some((b1, b2)) = self.side_split {
            let pi = std::f64::consts::PI;
            let t1 = (2 * b1 + 1) as f64 * pi;
            let t2 = (2 * b2 + 1) as f64 * pi;
            let ok = ((c.side_left - t1).abs() < 1e-6 && (c.side_right - t2).abs() < 1e-6)
                || ((c.side_left - t2).abs() < 1e-6 && (c.side_right - t1).abs() < 1e-6);
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Number of closed saddle connections with length in [a/√g, b/√g] passing
/// the filter. Connections are counted with both orientations, matching the
/// vector-counting convention of the length statistics.
pub fn count_closed(
    surface: &TranslationSurface,
    a: f64,
    b: f64,
    g: usize,
    filter: Option<&ClosedFilter>,
    budget: usize,
) -> Result<usize, EnumerateError> {
    let s = (g as f64).sqrt();
    let (lo, hi) = (a / s, b / s);
    let conns = enumerate_saddle_connections(surface, hi * (1.0 + 1e-12), budget)?;
    let classes = classify_closed(surface, &conns);
    let n = classes
        .iter()
        .filter(|c| c.length >= lo && c.length <= hi)
        .filter(|c| filter.map(|f| f.admits(c)).unwrap_or(true))
        .count();
    Ok(ORIENTED_COUNT_FACTOR * n)
}

/// Number of open saddle connections with length in [a/g, b/g].
pub fn count_open(
    surface: &TranslationSurface,
    a: f64,
    b: f64,
    g: usize,
    budget: usize,
) -> Result<usize, EnumerateError> {
    let s = g as f64;
    let (lo, hi) = (a / s, b / s);
    let conns = enumerate_saddle_connections(surface, hi * (1.0 + 1e-12), budget)?;
    let n = conns
        .iter()
        .filter(|sc| !sc.closed && sc.length >= lo && sc.length <= hi)
        .count();
    Ok(ORIENTED_COUNT_FACTOR * n)
}

/// Counting convention: every unoriented geodesic contributes both of its
/// orientations (equivalently both holonomy vectors ±v), matching the
/// vector-set convention of the counting statistics.
pub const ORIENTED_COUNT_FACTOR: usize = 2;

// ----------------------------------------------------------------------
// Counting transform
// ----------------------------------------------------------------------

/// Compactly supported test function on the plane with known integral.
#[derive(Clone, Copy, Debug)]
pub enum TestFunction {
    Disk { radius: f64 },
    Annulus { inner: f64, outer: f64 },
    Rect { x0: f64, x1: f64, y0: f64, y1: f64 },
}

impl TestFunction {
    pub fn eval(&self, v: Vec2) -> f64 {
        match *self {
            TestFunction::Disk { radius } => {
                if v.norm() <= radius {
                    1.0
                } else {
                    0.0
                }
            }
            TestFunction::Annulus { inner, outer } => {
                let r = v.norm();
                if r >= inner && r <= outer {
                    1.0
                } else {
                    0.0
                }
            }
            TestFunction::Rect { x0, x1, y0, y1 } => {
                if v.x >= x0 && v.x <= x1 && v.y >= y0 && v.y <= y1 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    pub fn integral(&self) -> f64 {
        match *self {
            TestFunction::Disk { radius } => std::f64::consts::PI * radius * radius,
            TestFunction::Annulus { inner, outer } => {
                std::f64::consts::PI * (outer * outer - inner * inner)
            }
            TestFunction::Rect { x0, x1, y0, y1 } => (x1 - x0) * (y1 - y0),
        }
    }

    pub fn support_radius(&self) -> f64 {
        match *self {
            TestFunction::Disk { radius } => radius,
            TestFunction::Annulus { outer, .. } => outer,
            TestFunction::Rect { x0, x1, y0, y1 } => {
                let xs = x0.abs().max(x1.abs());
                let ys = y0.abs().max(y1.abs());
                xs.hypot(ys)
            }
        }
    }
}

/// Which saddle connections a counting pass should see.
#[derive(Clone, Copy, Debug)]
pub enum Configuration {
    All,
    Closed(ClosedFilter),
    Open,
}

/// Sum of `f` over the holonomy vectors of connections matching the
/// configuration; each unoriented connection contributes both ±v.
pub fn counting_transform(
    surface: &TranslationSurface,
    configuration: Configuration,
    f: &TestFunction,
    budget: usize,
) -> Result<f64, EnumerateError> {
    let max_len = f.support_radius() * (1.0 + 1e-12);
    let conns = enumerate_saddle_connections(surface, max_len, budget)?;
    let sum = match configuration {
        Configuration::All => conns
            .iter()
            .map(|sc| f.eval(sc.holonomy) + f.eval(-sc.holonomy))
            .sum(),
        Configuration::Open => conns
            .iter()
            .filter(|sc| !sc.closed)
            .map(|sc| f.eval(sc.holonomy) + f.eval(-sc.holonomy))
            .sum(),
        Configuration::Closed(filter) => {
            let classes = classify_closed(surface, &conns);
            classes
                .iter()
                .filter(|c| filter.admits(c))
                .map(|c| {
                    let h = conns[c.index].holonomy;
                    f.eval(h) + f.eval(-h)
                })
                .sum()
        }
    };
    Ok(sum)
}
