//! Chronological near-loop erasure.
//!
//! A near-loop is a return of the interface to within one lattice spacing of
//! an earlier vertex. Erasure keeps the *last* such return: starting from
//! `t_0 = 0`, each retained time is
//!
//! ```text
//! t_{j+1} = max { i : t_j < i <= n, omega(i) adjacent to omega(t_j) }
//! ```
//!
//! and the construction stops once the retained vertex is the path's endpoint.
//! On the honeycomb, `|omega(i) - omega(t_j)| = delta` is exactly lattice
//! adjacency, so no floating point is involved.

use crate::hexlattice::{DiscreteDomain, HexBBox, VertexId};
use crate::{Error, Result};

/// A loop-erased path together with the retained original times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErasedPath {
    pub vertices: Vec<VertexId>,
    /// Strictly increasing indices into the source path; `times[0] = 0` and
    /// `times[m] = n`.
    pub times: Vec<u32>,
}

impl ErasedPath {
    /// Number of steps (edges) of the erased path.
    pub fn steps(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Reusable scratch for the linear-time eraser: a dense vertex-to-index table
/// cleared between paths by epoch stamping.
pub struct Eraser {
    bbox: HexBBox,
    /// Per vertex cell: `epoch << 32 | path index`.
    stamps: Vec<u64>,
    epoch: u64,
}

impl Eraser {
    pub fn new(domain: &DiscreteDomain) -> Self {
        Eraser { bbox: domain.bbox.clone(), stamps: vec![0; 2 * domain.bbox.len()], epoch: 0 }
    }

    /// Linear-time erasure: one pre-pass records each vertex's (unique, by
    /// self-avoidance) position in the path, then the last return to a
    /// neighborhood is the largest recorded index among the three neighbors.
    pub fn erase(&mut self, path: &[VertexId]) -> Result<ErasedPath> {
        if path.len() < 2 {
            return Err(Error::Erase("path must have at least one step".into()));
        }
        if path.len() > u32::MAX as usize / 2 {
            return Err(Error::Erase("path too long".into()));
        }
        self.epoch += 1;
        let tag = self.epoch << 32;
        for (i, v) in path.iter().enumerate() {
            let cell = self
                .bbox
                .vertex_index(*v)
                .ok_or_else(|| Error::Erase(format!("vertex {v:?} outside the domain box")))?;
            self.stamps[cell] = tag | i as u64;
        }

        let n = path.len() - 1;
        let mut vertices = vec![path[0]];
        let mut times: Vec<u32> = vec![0];
        let mut t = 0usize;
        while t != n {
            let v = path[t];
            let mut next = 0u64;
            for u in v.neighbors() {
                if let Some(cell) = self.bbox.vertex_index(u) {
                    let s = self.stamps[cell];
                    if s >> 32 == self.epoch {
                        next = next.max(s & 0xFFFF_FFFF);
                    }
                }
            }
            if next as usize <= t {
                return Err(Error::Erase(
                    "no later neighbor occurrence; input is not a valid interface".into(),
                ));
            }
            t = next as usize;
            vertices.push(path[t]);
            times.push(t as u32);
        }
        Ok(ErasedPath { vertices, times })
    }
}

/// Erase near-loops of `path` sampled in `domain`.
pub fn erase_near_loops(domain: &DiscreteDomain, path: &[VertexId]) -> Result<ErasedPath> {
    Eraser::new(domain).erase(path)
}

/// Literal quadratic-time reference: for each retained time scan the whole
/// remaining path for the largest adjacent index. Kept as an independent
/// check of the fast implementation.
pub fn erase_near_loops_reference(path: &[VertexId]) -> Result<ErasedPath> {
    if path.len() < 2 {
        return Err(Error::Erase("path must have at least one step".into()));
    }
    let n = path.len() - 1;
    let mut vertices = vec![path[0]];
    let mut times: Vec<u32> = vec![0];
    let mut t = 0usize;
    while t != n {
        let here = path[t];
        let neighbors = here.neighbors();
        let mut next: Option<usize> = None;
        for (i, v) in path.iter().enumerate().skip(t + 1) {
            if neighbors.contains(v) {
                next = Some(i);
            }
        }
        let Some(next) = next else {
            return Err(Error::Erase(
                "no later neighbor occurrence; input is not a valid interface".into(),
            ));
        };
        t = next;
        vertices.push(path[t]);
        times.push(t as u32);
    }
    Ok(ErasedPath { vertices, times })
}

/// Check every [`ErasedPath`] invariant against its source path.
pub fn validate_erased(path: &[VertexId], erased: &ErasedPath) -> Result<()> {
    let n = path.len() - 1;
    let times = &erased.times;
    if times.is_empty() || times[0] != 0 || *times.last().unwrap() != n as u32 {
        return Err(Error::Erase("times must start at 0 and end at n".into()));
    }
    if !times.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Erase("times must be strictly increasing".into()));
    }
    if erased.vertices.len() != times.len() {
        return Err(Error::Erase("vertex/time length mismatch".into()));
    }
    for (v, &t) in erased.vertices.iter().zip(times.iter()) {
        if *v != path[t as usize] {
            return Err(Error::Erase("eta(j) != omega(t_j)".into()));
        }
    }
    for pair in erased.vertices.windows(2) {
        if !pair[0].neighbors().contains(&pair[1]) {
            return Err(Error::Erase("consecutive erased vertices not adjacent".into()));
        }
    }
    // No near-loops: eta(j') is neither equal nor adjacent to eta(j) for
    // j' >= j + 2.
    let mut index = std::collections::HashMap::with_capacity(erased.vertices.len());
    for (j, v) in erased.vertices.iter().enumerate() {
        if index.insert(*v, j).is_some() {
            return Err(Error::Erase("erased path revisits a vertex".into()));
        }
    }
    for (j, v) in erased.vertices.iter().enumerate() {
        for u in v.neighbors() {
            if let Some(&j2) = index.get(&u) {
                if j2 >= j + 2 {
                    return Err(Error::Erase(format!(
                        "near-loop survives erasure: eta({j2}) adjacent to eta({j})"
                    )));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::{explore, ColorField};
    use crate::hexlattice::{build_domain, DomainSpec, Shape, VertexId};
    use crate::rng::RngStream;

    /// A zig-zag with no near-loops: the eraser must return it unchanged.
    #[test]
    fn near_loop_free_path_is_fixed() {
        // March to the north-east: alternate up-right steps.
        let mut path = vec![VertexId::bottom(0, 0)];
        for _ in 0..6 {
            let v = *path.last().unwrap();
            // pick the neighbor maximizing x + y so the walk drifts away
            let next = v
                .neighbors()
                .into_iter()
                .max_by(|a, b| {
                    let pa = a.position();
                    let pb = b.position();
                    (pa.x + pa.y).partial_cmp(&(pb.x + pb.y)).unwrap()
                })
                .unwrap();
            path.push(next);
        }
        let erased = erase_near_loops_reference(&path).unwrap();
        assert_eq!(erased.vertices, path);
        assert_eq!(erased.times, (0..path.len() as u32).collect::<Vec<_>>());
    }

    /// Smallest near-loop: omega = (v0, v1, v2) with v2 adjacent to v0 must
    /// erase to (v0, v2).
    #[test]
    fn smallest_near_loop_is_skipped() {
        let v0 = VertexId::top(0, 0);
        let v1 = v0.neighbors()[0];
        // v2: neighbor of v1 that is also adjacent to v0 (but not v0 itself)
        let v2 = v1
            .neighbors()
            .into_iter()
            .find(|u| *u != v0 && v0.neighbors().contains(u))
            .unwrap();
        let path = vec![v0, v1, v2];
        let erased = erase_near_loops_reference(&path).unwrap();
        assert_eq!(erased.vertices, vec![v0, v2]);
        assert_eq!(erased.times, vec![0, 2]);
    }

    #[test]
    fn fast_eraser_matches_reference_on_samples() {
        let domain = build_domain(&DomainSpec::with_defaults(Shape::Square, 16.0)).unwrap();
        let mut field = ColorField::new(&domain);
        let mut eraser = Eraser::new(&domain);
        for i in 0..200 {
            let mut rng = RngStream::new(2024, i);
            let path = explore(&domain, &mut field, &mut rng).unwrap();
            let fast = eraser.erase(&path.vertices).unwrap();
            let slow = erase_near_loops_reference(&path.vertices).unwrap();
            assert_eq!(fast, slow, "sample {i}");
            validate_erased(&path.vertices, &fast).unwrap();
        }
    }

    #[test]
    fn erasure_is_idempotent() {
        let domain = build_domain(&DomainSpec::with_defaults(Shape::Disc, 14.0)).unwrap();
        let mut field = ColorField::new(&domain);
        let mut eraser = Eraser::new(&domain);
        for i in 0..100 {
            let mut rng = RngStream::new(7, i);
            let path = explore(&domain, &mut field, &mut rng).unwrap();
            let once = eraser.erase(&path.vertices).unwrap();
            let twice = eraser.erase(&once.vertices).unwrap();
            assert_eq!(once.vertices, twice.vertices);
            // Re-erasing a near-loop-free path retains every time.
            assert_eq!(twice.times, (0..once.vertices.len() as u32).collect::<Vec<_>>());
            // Endpoints preserved, m <= n.
            assert_eq!(once.vertices.first(), path.vertices.first());
            assert_eq!(once.vertices.last(), path.vertices.last());
            assert!(once.vertices.len() <= path.vertices.len());
        }
    }

    /// Applying a lattice symmetry commutes with erasure. The x-mirror
    /// (q, r) -> (-q - r, r) maps tops to tops and preserves adjacency.
    #[test]
    fn erasure_is_mirror_equivariant() {
        let domain = build_domain(&DomainSpec::with_defaults(Shape::Disc, 12.0)).unwrap();
        let mut field = ColorField::new(&domain);
        let mirror = |v: VertexId| VertexId {
            hex: crate::hexlattice::HexCoord::new(-v.hex.q - v.hex.r, v.hex.r),
            corner: v.corner,
        };
        for i in 0..50 {
            let mut rng = RngStream::new(31, i);
            let path = explore(&domain, &mut field, &mut rng).unwrap();
            let mirrored: Vec<VertexId> = path.vertices.iter().copied().map(mirror).collect();
            let erased_then_mirror: Vec<VertexId> = erase_near_loops_reference(&path.vertices)
                .unwrap()
                .vertices
                .into_iter()
                .map(mirror)
                .collect();
            let mirror_then_erased = erase_near_loops_reference(&mirrored).unwrap().vertices;
            assert_eq!(erased_then_mirror, mirror_then_erased);
        }
    }

    #[test]
    fn corrupt_input_is_reported() {
        // Two far-apart vertices: no adjacency anywhere.
        let path = vec![VertexId::top(0, 0), VertexId::top(50, 50)];
        assert!(erase_near_loops_reference(&path).is_err());
    }
}
