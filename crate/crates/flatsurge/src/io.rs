//! Surface file format: a JSON object with `format_version: 1`, a triangle
//! list of directed-edge ids, a holonomy table with decimal-string
//! coordinates (17 significant digits, exact round trip), a gluing pair
//! list and marked vertex classes. A vertex class is named by the smallest
//! directed-edge id leaving it.

use crate::error::SurfaceError;
use crate::geom::Vec2;
use crate::mesh::Mesh;
use crate::surface::TranslationSurface;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Serialize, Deserialize)]
pub struct SurfaceFile {
    pub format_version: u32,
    pub triangles: Vec<[u64; 3]>,
    pub holonomy: BTreeMap<String, [String; 2]>,
    pub gluing: Vec<[u64; 2]>,
    pub marked_points: Vec<u64>,
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(s: &str) -> Result<f64, SurfaceError> {
    s.parse::<f64>()
        .map_err(|e| SurfaceError::Format(format!("bad decimal string {s:?}: {e}")))
}

pub fn to_file(surface: &TranslationSurface) -> SurfaceFile {
    let mesh = surface.mesh();
    let n = mesh.n_edges();
    let mut triangles = Vec::with_capacity(n / 3);
    for t in 0..n / 3 {
        triangles.push([(3 * t) as u64, (3 * t + 1) as u64, (3 * t + 2) as u64]);
    }
    let mut holonomy = BTreeMap::new();
    for e in 0..n {
        holonomy.insert(e.to_string(), [fmt_f64(mesh.hol[e].x), fmt_f64(mesh.hol[e].y)]);
    }
    let mut gluing = Vec::new();
    for e in 0..n {
        if e < mesh.opp[e] {
            gluing.push([e as u64, mesh.opp[e] as u64]);
        }
    }
    // vertex class id: smallest outgoing edge id
    let mut class_rep = vec![usize::MAX; mesh.nv];
    for e in (0..n).rev() {
        class_rep[mesh.vstart[e]] = e;
    }
    let mut marked_points = Vec::new();
    for v in 0..mesh.nv {
        if mesh.marked[v] {
            marked_points.push(class_rep[v] as u64);
        }
    }
    marked_points.sort_unstable();
    SurfaceFile { format_version: 1, triangles, holonomy, gluing, marked_points }
}

pub fn from_file(file: &SurfaceFile) -> Result<TranslationSurface, SurfaceError> {
    if file.format_version != 1 {
        return Err(SurfaceError::Format(format!(
            "unsupported format_version {}",
            file.format_version
        )));
    }
    let nt = file.triangles.len();
    let n = 3 * nt;
    // remap arbitrary edge ids to slots in triangle order
    let mut slot_of: BTreeMap<u64, usize> = BTreeMap::new();
    for (t, tri) in file.triangles.iter().enumerate() {
        for (i, &id) in tri.iter().enumerate() {
            if slot_of.insert(id, 3 * t + i).is_some() {
                return Err(SurfaceError::Format(format!("edge id {id} appears twice")));
            }
        }
    }
    let mut hol = vec![Vec2::ZERO; n];
    for (id, [re, im]) in &file.holonomy {
        let id: u64 = id
            .parse()
            .map_err(|_| SurfaceError::Format(format!("bad edge id {id:?}")))?;
        let &slot = slot_of
            .get(&id)
            .ok_or_else(|| SurfaceError::Format(format!("holonomy for unknown edge {id}")))?;
        hol[slot] = Vec2::new(parse_f64(re)?, parse_f64(im)?);
    }
    if file.holonomy.len() != n {
        return Err(SurfaceError::Format(format!(
            "holonomy table has {} entries, expected {n}",
            file.holonomy.len()
        )));
    }
    let mut opp = vec![usize::MAX; n];
    for &[a, b] in &file.gluing {
        let &sa = slot_of
            .get(&a)
            .ok_or_else(|| SurfaceError::Format(format!("gluing names unknown edge {a}")))?;
        let &sb = slot_of
            .get(&b)
            .ok_or_else(|| SurfaceError::Format(format!("gluing names unknown edge {b}")))?;
        if opp[sa] != usize::MAX || opp[sb] != usize::MAX || sa == sb {
            return Err(SurfaceError::BadGluing(sa));
        }
        opp[sa] = sb;
        opp[sb] = sa;
    }
    if let Some(e) = opp.iter().position(|&o| o == usize::MAX) {
        return Err(SurfaceError::BadGluing(e));
    }
    // vertex classes from rotation orbits
    let rot = |e: usize| opp[3 * (e / 3) + (e % 3 + 2) % 3];
    let mut vstart = vec![usize::MAX; n];
    let mut nv = 0usize;
    for e in 0..n {
        if vstart[e] != usize::MAX {
            continue;
        }
        let mut cur = e;
        let mut guard = 0;
        loop {
            vstart[cur] = nv;
            cur = rot(cur);
            guard += 1;
            if cur == e {
                break;
            }
            if guard > n {
                return Err(SurfaceError::Format("rotation orbit does not close".into()));
            }
        }
        nv += 1;
    }
    let mut marked = vec![false; nv];
    for &id in &file.marked_points {
        let &slot = slot_of
            .get(&id)
            .ok_or_else(|| SurfaceError::BadMarkedPoint(id as usize))?;
        marked[vstart[slot]] = true;
    }
    let mesh = Mesh { opp, hol, vstart, nv, marked };
    TranslationSurface::from_mesh(mesh)
}

pub fn write_surface(surface: &TranslationSurface, path: &std::path::Path) -> std::io::Result<()> {
    let file = to_file(surface);
    let json = serde_json::to_string_pretty(&file)?;
    std::fs::write(path, json)
}

pub fn read_surface(path: &std::path::Path) -> Result<TranslationSurface, SurfaceError> {
    let data = std::fs::read_to_string(path)
        .map_err(|e| SurfaceError::Format(format!("{}: {e}", path.display())))?;
    let file: SurfaceFile = serde_json::from_str(&data)
        .map_err(|e| SurfaceError::Format(format!("{}: {e}", path.display())))?;
    from_file(&file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn roundtrip_is_exact(){
        for s in [fixtures::square_torus(), fixtures::regular_octagon().normalize_area()] {
            let f = to_file(&s);
            let json = serde_json::to_string(&f).unwrap();
            let f2: SurfaceFile = serde_json::from_str(&json).unwrap();
            let s2 = from_file(&f2).unwrap();
            assert_eq!(s.n_directed_edges(), s2.n_directed_edges());
            for e in 0..s.n_directed_edges() {
                assert_eq!(s.hol(e).x.to_bits(), s2.hol(e).x.to_bits());
                assert_eq!(s.hol(e).y.to_bits(), s2.hol(e).y.to_bits());
                assert_eq!(s.opp(e), s2.opp(e));
            }
            assert_eq!(s.stratum(), s2.stratum());
        }
    }

    #[test]
    fn bad_version_rejected() {
        let mut f = to_file(&fixtures::square_torus());
        f.format_version = 2;
        assert!(matches!(from_file(&f), Err(SurfaceError::Format(_))));
    }
}
