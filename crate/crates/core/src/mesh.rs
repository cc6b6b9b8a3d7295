//! Closed triangle meshes: icosphere construction, validation, area, and a
//! plain text interchange format.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Largest supported icosphere subdivision depth.
pub const MAX_ICOSPHERE_DEPTH: u32 = 7;

/// A closed, consistently oriented triangle mesh in 3-space.
///
/// Construction validates that every directed edge is matched by its
/// reverse exactly once, that the triangle fan around every vertex is a
/// single cycle, and that no triangle is degenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    vertices: Vec<[f64; 3]>,
    triangles: Vec<[u32; 3]>,
}

impl TriangleMesh {
    /// Validating constructor.
    pub fn new(vertices: Vec<[f64; 3]>, triangles: Vec<[u32; 3]>) -> Result<Self> {
        let mesh = TriangleMesh {
            vertices,
            triangles,
        };
        mesh.validate(0.0)?;
        Ok(mesh)
    }

    pub fn vertices(&self) -> &[[f64; 3]] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    /// The same mesh with all coordinates multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if factor.is_nan() || factor <= 0.0 {
            return Err(Error::Domain(format!(
                "scale factor {factor} must be positive"
            )));
        }
        TriangleMesh::new(
            self.vertices
                .iter()
                .map(|v| [v[0] * factor, v[1] * factor, v[2] * factor])
                .collect(),
            self.triangles.clone(),
        )
    }

    /// Check the closed-manifold invariants; every triangle area must
    /// exceed `min_area`.
    pub fn validate(&self, min_area: f64) -> Result<()> {
        let n = self.vertices.len() as u32;
        if self.triangles.is_empty() {
            return Err(Error::Mesh("no triangles".into()));
        }
        let mut directed: HashMap<(u32, u32), u32> = HashMap::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            let [a, b, c] = *tri;
            if a >= n || b >= n || c >= n {
                return Err(Error::Mesh(format!(
                    "triangle {t} references a missing vertex"
                )));
            }
            if a == b || b == c || a == c {
                return Err(Error::Mesh(format!("triangle {t} repeats a vertex")));
            }
            for (u, v) in [(a, b), (b, c), (c, a)] {
                if directed.insert((u, v), t as u32).is_some() {
                    return Err(Error::Mesh(format!(
                        "directed edge ({u},{v}) used twice; orientation is inconsistent"
                    )));
                }
            }
            let area = triangle_area(
                self.vertices[a as usize],
                self.vertices[b as usize],
                self.vertices[c as usize],
            );
            if area.is_nan() || area <= min_area {
                return Err(Error::Mesh(format!(
                    "triangle {t} has area {area}, at or below the floor {min_area}"
                )));
            }
        }
        for &(u, v) in directed.keys() {
            if !directed.contains_key(&(v, u)) {
                return Err(Error::Mesh(format!(
                    "edge ({u},{v}) has no partner; the mesh is not closed"
                )));
            }
        }
        self.check_vertex_fans()?;
        Ok(())
    }

    /// Around every vertex the incident triangles must close into a single
    /// cycle (no pinched vertices).
    fn check_vertex_fans(&self) -> Result<()> {
        // succ[v]: within v's link, edge from a to b contributed by the
        // oriented triangle (v, a, b).
        let mut succ: Vec<HashMap<u32, u32>> = vec![HashMap::new(); self.vertices.len()];
        for tri in &self.triangles {
            let [a, b, c] = *tri;
            for (v, x, y) in [(a, b, c), (b, c, a), (c, a, b)] {
                if succ[v as usize].insert(x, y).is_some() {
                    return Err(Error::Mesh(format!("pinched link at vertex {v}")));
                }
            }
        }
        for (v, ring) in succ.iter().enumerate() {
            let Some((&start, _)) = ring.iter().next() else {
                return Err(Error::Mesh(format!("isolated vertex {v}")));
            };
            let mut current = start;
            let mut steps = 0usize;
            loop {
                current = *ring
                    .get(&current)
                    .ok_or_else(|| Error::Mesh(format!("open fan at vertex {v}")))?;
                steps += 1;
                if current == start {
                    break;
                }
                if steps > ring.len() {
                    return Err(Error::Mesh(format!("tangled fan at vertex {v}")));
                }
            }
            if steps != ring.len() {
                return Err(Error::Mesh(format!("vertex {v} has a disconnected link")));
            }
        }
        Ok(())
    }

    /// Total surface area.
    pub fn area(&self) -> f64 {
        self.triangles
            .iter()
            .map(|&[a, b, c]| {
                triangle_area(
                    self.vertices[a as usize],
                    self.vertices[b as usize],
                    self.vertices[c as usize],
                )
            })
            .sum()
    }

    /// Signed enclosed volume; positive for outward orientation.
    pub fn signed_volume(&self) -> f64 {
        self.triangles
            .iter()
            .map(|&[a, b, c]| {
                let va = self.vertices[a as usize];
                let vb = self.vertices[b as usize];
                let vc = self.vertices[c as usize];
                dot(va, cross(vb, vc)) / 6.0
            })
            .sum()
    }

    /// Write as plain text: one `v x y z` line per vertex, then one
    /// `f i j k` line per triangle (1-based indices). Coordinates use the
    /// shortest representation that parses back to the same float.
    pub fn write_text<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for v in &self.vertices {
            writeln!(w, "v {} {} {}", v[0], v[1], v[2])?;
        }
        for t in &self.triangles {
            writeln!(w, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
        }
        Ok(())
    }

    /// Parse the format written by [`write_text`](Self::write_text). Blank
    /// lines and `#` comments are ignored.
    pub fn read_text<R: BufRead>(r: R) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut triangles = Vec::new();
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let tag = fields.next().unwrap();
            let rest: Vec<&str> = fields.collect();
            let parse_err =
                |what: &str| Error::Parse(format!("line {}: bad {what}: {line}", lineno + 1));
            match tag {
                "v" => {
                    if rest.len() != 3 {
                        return Err(parse_err("vertex"));
                    }
                    let mut v = [0.0f64; 3];
                    for (slot, s) in v.iter_mut().zip(&rest) {
                        *slot = s.parse().map_err(|_| parse_err("coordinate"))?;
                    }
                    vertices.push(v);
                }
                "f" => {
                    if rest.len() != 3 {
                        return Err(parse_err("face"));
                    }
                    let mut t = [0u32; 3];
                    for (slot, s) in t.iter_mut().zip(&rest) {
                        let idx: u32 = s.parse().map_err(|_| parse_err("index"))?;
                        if idx == 0 {
                            return Err(parse_err("index (1-based)"));
                        }
                        *slot = idx - 1;
                    }
                    triangles.push(t);
                }
                _ => return Err(parse_err("tag")),
            }
        }
        TriangleMesh::new(vertices, triangles)
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

/// Area of the triangle `abc`.
pub fn triangle_area(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    norm(cross(sub(b, a), sub(c, a))) / 2.0
}

/// Icosahedron subdivided `depth` times with every vertex projected to the
/// unit sphere: `20 * 4^depth` triangles, `10 * 4^depth + 2` vertices.
pub fn build_icosphere(depth: u32) -> Result<TriangleMesh> {
    if depth > MAX_ICOSPHERE_DEPTH {
        return Err(Error::Domain(format!(
            "icosphere depth {depth} exceeds the maximum {MAX_ICOSPHERE_DEPTH}"
        )));
    }
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let raw = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    let mut vertices: Vec<[f64; 3]> = raw.iter().map(|&v| normalize(v)).collect();
    let mut triangles: Vec<[u32; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..depth {
        let mut midpoints: HashMap<(u32, u32), u32> = HashMap::new();
        let mut next = Vec::with_capacity(triangles.len() * 4);
        for &[a, b, c] in &triangles {
            let ab = midpoint(&mut vertices, &mut midpoints, a, b);
            let bc = midpoint(&mut vertices, &mut midpoints, b, c);
            let ca = midpoint(&mut vertices, &mut midpoints, c, a);
            next.push([a, ab, ca]);
            next.push([b, bc, ab]);
            next.push([c, ca, bc]);
            next.push([ab, bc, ca]);
        }
        triangles = next;
    }
    TriangleMesh::new(vertices, triangles)
}

fn midpoint(
    vertices: &mut Vec<[f64; 3]>,
    cache: &mut HashMap<(u32, u32), u32>,
    a: u32,
    b: u32,
) -> u32 {
    let key = (a.min(b), a.max(b));
    if let Some(&idx) = cache.get(&key) {
        return idx;
    }
    let va = vertices[a as usize];
    let vb = vertices[b as usize];
    let m = normalize([va[0] + vb[0], va[1] + vb[1], va[2] + vb[2]]);
    let idx = vertices.len() as u32;
    vertices.push(m);
    cache.insert(key, idx);
    idx
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = norm(v);
    [v[0] / n, v[1] / n, v[2] / n]
}
