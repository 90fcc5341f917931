//! The percolation exploration process: one interface from the start vertex to
//! the end vertex, with interior hexagon colors revealed lazily.
//!
//! The walk stands on a directed honeycomb edge with a white hexagon on its
//! left and a black one on its right. At each vertex it inspects the hexagon
//! ahead (the one not touching the edge it arrived on): a white hexagon forces
//! a right turn, a black one a left turn. Boundary hexagons carry the arc
//! colors; interior colors are drawn fair on first use.

use crate::hexlattice::{CellClass, DiscreteDomain, HexCoord, VertexId};
use crate::rng::RngStream;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn flipped(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

/// Lazily revealed coloring of one sample. Interior entries are cleared
/// between samples by bumping an epoch stamp instead of reallocating.
pub struct ColorField {
    /// Per hexagon cell: `epoch << 1 | color bit`; a stale epoch means unset.
    stamps: Vec<u64>,
    epoch: u64,
    revealed: usize,
}

impl ColorField {
    pub fn new(domain: &DiscreteDomain) -> Self {
        ColorField { stamps: vec![0; domain.bbox.len()], epoch: 0, revealed: 0 }
    }

    /// Start a fresh sample: all interior hexagons become uncolored.
    pub fn begin_sample(&mut self) {
        self.epoch += 1;
        self.revealed = 0;
    }

    /// Number of interior hexagons revealed in the current sample.
    pub fn revealed(&self) -> usize {
        self.revealed
    }

    /// Color already assigned to `cell` in this sample, if any.
    #[inline]
    fn get(&self, cell: usize) -> Option<Color> {
        let s = self.stamps[cell];
        if s >> 1 == self.epoch {
            Some(if s & 1 == 1 { Color::White } else { Color::Black })
        } else {
            None
        }
    }

    #[inline]
    fn set(&mut self, cell: usize, color: Color) {
        self.stamps[cell] = self.epoch << 1 | (color == Color::White) as u64;
        self.revealed += 1;
    }
}

/// Source of hexagon colors during a walk. The Monte Carlo sampler draws from
/// an [`RngStream`]; the enumeration oracle replays a fixed coloring.
pub trait ColorSource {
    /// Color of an in-domain hexagon, revealing it if needed. `class` is the
    /// domain classification of `h` (never `Exterior`).
    fn color(&mut self, h: HexCoord, cell: usize, class: CellClass) -> Color;
}

/// Fair lazy reveal backed by a [`ColorField`].
pub struct RandomColors<'a> {
    pub field: &'a mut ColorField,
    pub rng: &'a mut RngStream,
}

impl ColorSource for RandomColors<'_> {
    #[inline]
    fn color(&mut self, _h: HexCoord, cell: usize, class: CellClass) -> Color {
        match class {
            CellClass::WhiteArc => Color::White,
            CellClass::BlackArc => Color::Black,
            _ => match self.field.get(cell) {
                Some(c) => c,
                None => {
                    let c = self.rng.color();
                    self.field.set(cell, c);
                    c
                }
            },
        }
    }
}

/// Reveal one hexagon's color: boundary hexagons return their arc color
/// without consuming randomness; interior hexagons are drawn fair on first
/// use and are stable afterwards.
pub fn reveal(
    domain: &DiscreteDomain,
    field: &mut ColorField,
    h: HexCoord,
    rng: &mut RngStream,
) -> Result<Color> {
    let class = domain.class(h);
    if class == CellClass::Exterior {
        return Err(Error::Explorer(format!("hexagon {h:?} is outside the domain")));
    }
    let cell = domain.bbox.hex_index(h).unwrap();
    Ok(RandomColors { field, rng }.color(h, cell, class))
}

/// One sampled interface: the vertex sequence from the start vertex to the
/// end vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterfacePath {
    pub vertices: Vec<VertexId>,
}

impl InterfacePath {
    /// Number of steps (edges).
    pub fn steps(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Trace the unique interface for the colors produced by `colors`, appending
/// vertices into `out` (cleared first). Fails fast if the walk escapes the
/// domain or exceeds `10 * hex_count` steps, both of which indicate a
/// construction bug.
pub fn explore_with(
    domain: &DiscreteDomain,
    colors: &mut impl ColorSource,
    out: &mut Vec<VertexId>,
) -> Result<()> {
    out.clear();
    let crack = domain.start_crack;
    out.push(crack.outer);

    let mut prev = crack.outer;
    let mut cur = crack.inner;
    let mut left = crack.white;
    let mut right = crack.black;
    out.push(cur);

    let cap = 10 * domain.hex_count() + 4;
    while cur != domain.end_vertex {
        if out.len() > cap {
            return Err(Error::Explorer(format!(
                "interface exceeded {cap} steps; domain construction is inconsistent"
            )));
        }
        let ahead = cur
            .hex_opposite_edge(prev)
            .ok_or_else(|| Error::Explorer("walk lost its arrival edge".into()))?;
        let class = domain.class(ahead);
        if class == CellClass::Exterior {
            return Err(Error::Explorer(
                "walk reached the boundary away from the end crack".into(),
            ));
        }
        let cell = domain.bbox.hex_index(ahead).unwrap();
        let next = if colors.color(ahead, cell, class) == Color::White {
            // keep the white hexagon on the left: turn right
            let n = cur.neighbor_opposite(left).unwrap();
            left = ahead;
            n
        } else {
            let n = cur.neighbor_opposite(right).unwrap();
            right = ahead;
            n
        };
        prev = cur;
        cur = next;
        out.push(cur);
    }
    Ok(())
}

/// Sample one interface with colors drawn from `rng`.
pub fn explore(
    domain: &DiscreteDomain,
    field: &mut ColorField,
    rng: &mut RngStream,
) -> Result<InterfacePath> {
    field.begin_sample();
    let mut vertices = Vec::new();
    let mut src = RandomColors { field, rng };
    explore_with(domain, &mut src, &mut vertices)?;
    Ok(InterfacePath { vertices })
}

/// Check every [`InterfacePath`] invariant; used by tests and the oracle.
pub fn validate_interface(domain: &DiscreteDomain, path: &[VertexId]) -> Result<()> {
    if path.len() < 2 {
        return Err(Error::Explorer("path too short".into()));
    }
    if path[0] != domain.start_vertex || *path.last().unwrap() != domain.end_vertex {
        return Err(Error::Explorer("path endpoints are not the domain anchors".into()));
    }
    let mut seen = std::collections::HashSet::with_capacity(path.len());
    for v in path {
        if !seen.insert(*v) {
            return Err(Error::Explorer(format!("vertex {v:?} visited twice")));
        }
    }
    for pair in path.windows(2) {
        if !pair[0].neighbors().contains(&pair[1]) {
            return Err(Error::Explorer("consecutive vertices are not adjacent".into()));
        }
    }
    Ok(())
}
