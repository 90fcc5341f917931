//! Hexagonal-lattice geometry and domain discretization.
//!
//! Hexagons are addressed by axial coordinates `(q, r)` and drawn pointy-top
//! with edge length 1, so the lattice spacing (nearest honeycomb-vertex
//! distance) is exactly 1 in simulation units and adjacent hexagon centers are
//! at distance `sqrt(3)`. Continuum domains are scaled by a factor `L` before
//! discretization; `1/L` plays the role of the lattice spacing in continuum
//! coordinates.
//!
//! Every honeycomb vertex is canonically either the top or the bottom corner
//! of exactly one hexagon, which makes [`VertexId`] a unique address.

use std::collections::HashSet;
use std::fmt;

use crate::{Error, Result};

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

/// A point in the plane (continuum or lattice coordinates depending on context).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn scale(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Axial address of a hexagon center (a site of the triangular lattice).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HexCoord {
    pub q: i32,
    pub r: i32,
}

impl HexCoord {
    pub const fn new(q: i32, r: i32) -> Self {
        HexCoord { q, r }
    }

    /// Cartesian center; adjacent centers are at distance `sqrt(3)`.
    pub fn center(self) -> Point {
        Point::new(SQRT3 * (self.q as f64 + self.r as f64 / 2.0), 1.5 * self.r as f64)
    }

    /// The six adjacent hexagons.
    pub fn neighbors(self) -> [HexCoord; 6] {
        let HexCoord { q, r } = self;
        [
            HexCoord::new(q + 1, r),
            HexCoord::new(q - 1, r),
            HexCoord::new(q, r + 1),
            HexCoord::new(q, r - 1),
            HexCoord::new(q + 1, r - 1),
            HexCoord::new(q - 1, r + 1),
        ]
    }

    /// The six corners in clockwise order starting from the top: N, NE, SE, S, SW, NW.
    pub fn corners(self) -> [VertexId; 6] {
        let HexCoord { q, r } = self;
        [
            VertexId::top(q, r),
            VertexId::bottom(q, r + 1),
            VertexId::top(q + 1, r - 1),
            VertexId::bottom(q, r),
            VertexId::top(q, r - 1),
            VertexId::bottom(q - 1, r + 1),
        ]
    }
}

/// Cartesian center of a hexagon.
pub fn hex_center(c: HexCoord) -> Point {
    c.center()
}

/// Which corner of the owning hexagon a vertex is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    Top,
    Bottom,
}

/// Canonical address of a honeycomb vertex: the top or bottom corner of one
/// hexagon. Two `VertexId`s denote the same geometric point iff they are equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub hex: HexCoord,
    pub corner: Corner,
}

impl VertexId {
    pub const fn top(q: i32, r: i32) -> Self {
        VertexId { hex: HexCoord::new(q, r), corner: Corner::Top }
    }

    pub const fn bottom(q: i32, r: i32) -> Self {
        VertexId { hex: HexCoord::new(q, r), corner: Corner::Bottom }
    }

    pub fn position(self) -> Point {
        let c = self.hex.center();
        match self.corner {
            Corner::Top => Point::new(c.x, c.y + 1.0),
            Corner::Bottom => Point::new(c.x, c.y - 1.0),
        }
    }

    /// The three honeycomb neighbors, each at distance exactly 1.
    pub fn neighbors(self) -> [VertexId; 3] {
        let HexCoord { q, r } = self.hex;
        match self.corner {
            // up, north-west, north-east
            Corner::Top => [
                VertexId::bottom(q - 1, r + 2),
                VertexId::bottom(q - 1, r + 1),
                VertexId::bottom(q, r + 1),
            ],
            // down, south-east, south-west
            Corner::Bottom => [
                VertexId::top(q + 1, r - 2),
                VertexId::top(q + 1, r - 1),
                VertexId::top(q, r - 1),
            ],
        }
    }

    /// The three hexagons meeting at this vertex.
    pub fn hexes(self) -> [HexCoord; 3] {
        let HexCoord { q, r } = self.hex;
        match self.corner {
            Corner::Top => [self.hex, HexCoord::new(q, r + 1), HexCoord::new(q - 1, r + 1)],
            Corner::Bottom => [self.hex, HexCoord::new(q, r - 1), HexCoord::new(q + 1, r - 1)],
        }
    }

    /// Of the three edges at this vertex, each is untouched by exactly one of
    /// the three hexagons meeting here. Returns the neighbor across that edge,
    /// or `None` if `h` does not meet this vertex.
    pub fn neighbor_opposite(self, h: HexCoord) -> Option<VertexId> {
        let HexCoord { q, r } = self.hex;
        match self.corner {
            Corner::Top => {
                if h == self.hex {
                    Some(VertexId::bottom(q - 1, r + 2))
                } else if h == HexCoord::new(q, r + 1) {
                    Some(VertexId::bottom(q - 1, r + 1))
                } else if h == HexCoord::new(q - 1, r + 1) {
                    Some(VertexId::bottom(q, r + 1))
                } else {
                    None
                }
            }
            Corner::Bottom => {
                if h == self.hex {
                    Some(VertexId::top(q + 1, r - 2))
                } else if h == HexCoord::new(q, r - 1) {
                    Some(VertexId::top(q + 1, r - 1))
                } else if h == HexCoord::new(q + 1, r - 1) {
                    Some(VertexId::top(q, r - 1))
                } else {
                    None
                }
            }
        }
    }

    /// The hexagon across the edge `(self, to)` from `except`, i.e. the third
    /// hexagon at `self` that does not touch that edge.
    pub fn hex_opposite_edge(self, to: VertexId) -> Option<HexCoord> {
        let hexes = self.hexes();
        let nbrs = self.neighbors();
        for i in 0..3 {
            if nbrs[i] == to {
                return Some(hexes[i]);
            }
        }
        None
    }
}

/// The three honeycomb neighbors of a vertex.
pub fn vertex_neighbors(v: VertexId) -> [VertexId; 3] {
    v.neighbors()
}

/// The shared edge between two adjacent hexagons, as its two endpoint vertices.
/// Returns `None` if the hexagons are not adjacent.
pub fn shared_edge(a: HexCoord, b: HexCoord) -> Option<(VertexId, VertexId)> {
    let (dq, dr) = (b.q - a.q, b.r - a.r);
    let HexCoord { q, r } = a;
    let edge = match (dq, dr) {
        (1, 0) => (VertexId::bottom(q, r + 1), VertexId::top(q + 1, r - 1)),
        (-1, 0) => (VertexId::bottom(q - 1, r + 1), VertexId::top(q, r - 1)),
        (0, 1) => (VertexId::top(q, r), VertexId::bottom(q, r + 1)),
        (0, -1) => (VertexId::top(q, r - 1), VertexId::bottom(q, r)),
        (1, -1) => (VertexId::bottom(q, r), VertexId::top(q + 1, r - 1)),
        (-1, 1) => (VertexId::bottom(q - 1, r + 1), VertexId::top(q, r)),
        _ => return None,
    };
    Some(edge)
}

/// The continuum shapes studied here, in unit scale.
///
/// * `Triangle`: equilateral, vertices (0,0), (0,1), (sqrt(3)/2, 1/2).
/// * `Square`: [0,1] x [0,1].
/// * `Disc`: unit disc centered at the origin.
/// * `HalfDisc`: right half of the unit disc, `x >= 0`.
///
/// The triangle and half-disc are oriented with the anchor-bearing side
/// vertical so that the default start and end points sit at different heights
/// (the pass-right observable sweeps horizontal segments between them).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Triangle,
    Square,
    Disc,
    HalfDisc,
}

impl Shape {
    pub fn name(self) -> &'static str {
        match self {
            Shape::Triangle => "triangle",
            Shape::Square => "square",
            Shape::Disc => "disc",
            Shape::HalfDisc => "half_disc",
        }
    }

    pub fn from_name(s: &str) -> Option<Shape> {
        match s {
            "triangle" => Some(Shape::Triangle),
            "square" => Some(Shape::Square),
            "disc" => Some(Shape::Disc),
            "half_disc" | "halfdisc" | "half-disc" => Some(Shape::HalfDisc),
            _ => None,
        }
    }

    /// Default boundary anchors `(z, w)` in unit-shape coordinates: the
    /// interface runs from `z` to `w`.
    pub fn default_anchors(self) -> (Point, Point) {
        match self {
            // The two corners of the (vertical) base.
            Shape::Triangle => (Point::new(0.0, 0.0), Point::new(0.0, 1.0)),
            // Midpoints of the bottom and top edges.
            Shape::Square => (Point::new(0.5, 0.0), Point::new(0.5, 1.0)),
            // Bottom and top boundary points.
            Shape::Disc => (Point::new(0.0, -1.0), Point::new(0.0, 1.0)),
            // The two corners where the (vertical) diameter meets the arc.
            Shape::HalfDisc => (Point::new(0.0, -1.0), Point::new(0.0, 1.0)),
        }
    }

    /// Default interior normalization point: the centroid.
    pub fn default_marker(self) -> Point {
        match self {
            Shape::Triangle => Point::new(SQRT3 / 6.0, 0.5),
            Shape::Square => Point::new(0.5, 0.5),
            Shape::Disc => Point::new(0.0, 0.0),
            Shape::HalfDisc => Point::new(4.0 / (3.0 * std::f64::consts::PI), 0.0),
        }
    }

    /// Strict interior test in unit-shape coordinates.
    pub fn contains(self, p: Point) -> bool {
        match self {
            Shape::Triangle => {
                p.x > 0.0 && p.y > p.x / SQRT3 && p.y < 1.0 - p.x / SQRT3
            }
            Shape::Square => p.x > 0.0 && p.x < 1.0 && p.y > 0.0 && p.y < 1.0,
            Shape::Disc => p.x * p.x + p.y * p.y < 1.0,
            Shape::HalfDisc => p.x > 0.0 && p.x * p.x + p.y * p.y < 1.0,
        }
    }

    /// Signed distance-like margin to the boundary: positive inside. Used for
    /// boundary/interior classification of continuum points with a tolerance.
    pub fn boundary_margin(self, p: Point) -> f64 {
        match self {
            Shape::Triangle => {
                let d1 = p.x; // left edge x = 0
                // lower edge y = x/sqrt(3), upper edge y = 1 - x/sqrt(3); both at
                // unit-normal scale
                let d2 = (p.y - p.x / SQRT3) * (SQRT3 / 2.0);
                let d3 = (1.0 - p.x / SQRT3 - p.y) * (SQRT3 / 2.0);
                d1.min(d2).min(d3)
            }
            Shape::Square => p.x.min(1.0 - p.x).min(p.y).min(1.0 - p.y),
            Shape::Disc => 1.0 - (p.x * p.x + p.y * p.y).sqrt(),
            Shape::HalfDisc => p.x.min(1.0 - (p.x * p.x + p.y * p.y).sqrt()),
        }
    }

    /// Horizontal chord `[x_lo, x_hi]` of the unit shape at height `y`, or
    /// `None` if the line misses the interior.
    pub fn chord_at(self, y: f64) -> Option<(f64, f64)> {
        match self {
            Shape::Triangle => {
                if y <= 0.0 || y >= 1.0 {
                    return None;
                }
                Some((0.0, SQRT3 * y.min(1.0 - y)))
            }
            Shape::Square => {
                if y <= 0.0 || y >= 1.0 {
                    return None;
                }
                Some((0.0, 1.0))
            }
            Shape::Disc => {
                if y <= -1.0 || y >= 1.0 {
                    return None;
                }
                let half = (1.0 - y * y).sqrt();
                Some((-half, half))
            }
            Shape::HalfDisc => {
                if y <= -1.0 || y >= 1.0 {
                    return None;
                }
                Some((0.0, (1.0 - y * y).sqrt()))
            }
        }
    }

    /// Smallest scale for which discretization is supported; below this the
    /// interior is too thin for a well-formed boundary ring.
    pub fn min_scale(self) -> f64 {
        match self {
            Shape::Triangle => 14.0,
            Shape::Square => 8.0,
            Shape::Disc => 5.0,
            Shape::HalfDisc => 8.0,
        }
    }
}

/// A continuum domain instance: shape, scale factor `L`, the two boundary
/// anchors and the interior normalization point (all in unit-shape
/// coordinates).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DomainSpec {
    pub shape: Shape,
    pub scale: f64,
    pub z: Point,
    pub w: Point,
    pub marker: Point,
}

impl DomainSpec {
    /// Spec with the shape's default anchors and marker.
    pub fn with_defaults(shape: Shape, scale: f64) -> Self {
        let (z, w) = shape.default_anchors();
        DomainSpec { shape, scale, z, w, marker: shape.default_marker() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.scale > 0.0) {
            return Err(Error::Domain(format!("scale must be positive, got {}", self.scale)));
        }
        let eps = 1e-9;
        if self.z.dist(self.w) < eps {
            return Err(Error::Domain("anchors z and w must differ".into()));
        }
        for (name, p) in [("z", self.z), ("w", self.w)] {
            if self.shape.boundary_margin(p).abs() > 1e-6 {
                return Err(Error::Domain(format!(
                    "anchor {name} = {p} does not lie on the {} boundary",
                    self.shape.name()
                )));
            }
        }
        if self.shape.boundary_margin(self.marker) < 1e-6 {
            return Err(Error::Domain(format!(
                "marker {} must lie in the {} interior",
                self.marker,
                self.shape.name()
            )));
        }
        Ok(())
    }
}

/// Classification of a hexagon relative to a discrete domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellClass {
    Exterior,
    Interior,
    WhiteArc,
    BlackArc,
}

/// Axial-coordinate bounding box with one hexagon of margin, giving dense
/// array indices for hexagons and vertices of a domain.
#[derive(Clone, Debug)]
pub struct HexBBox {
    pub q0: i32,
    pub r0: i32,
    pub width: usize,
    pub height: usize,
}

impl HexBBox {
    fn around(hexes: &HashSet<HexCoord>) -> HexBBox {
        let mut qmin = i32::MAX;
        let mut qmax = i32::MIN;
        let mut rmin = i32::MAX;
        let mut rmax = i32::MIN;
        for h in hexes {
            qmin = qmin.min(h.q);
            qmax = qmax.max(h.q);
            rmin = rmin.min(h.r);
            rmax = rmax.max(h.r);
        }
        // Two cells of margin so every neighbor (and every vertex-owning
        // hexagon near the hull) stays in range.
        HexBBox {
            q0: qmin - 2,
            r0: rmin - 2,
            width: (qmax - qmin + 5) as usize,
            height: (rmax - rmin + 5) as usize,
        }
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    #[inline]
    pub fn hex_index(&self, h: HexCoord) -> Option<usize> {
        let dq = h.q - self.q0;
        let dr = h.r - self.r0;
        if dq < 0 || dr < 0 || dq as usize >= self.width || dr as usize >= self.height {
            None
        } else {
            Some(dr as usize * self.width + dq as usize)
        }
    }

    /// Dense index for a vertex: hexagon cell times two plus the corner bit.
    #[inline]
    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.hex_index(v.hex).map(|i| 2 * i + (v.corner == Corner::Bottom) as usize)
    }
}

/// Crack between the two boundary arcs: the honeycomb edge shared by the two
/// arc-end hexagons, oriented from the outer vertex into the domain.
#[derive(Clone, Copy, Debug)]
pub struct Crack {
    /// Vertex on the outer hull (start or end of the interface).
    pub outer: VertexId,
    /// Inner endpoint of the crack edge.
    pub inner: VertexId,
    /// White hexagon flanking the crack edge (left of outer->inner).
    pub white: HexCoord,
    /// Black hexagon flanking the crack edge (right of outer->inner).
    pub black: HexCoord,
}

/// A discretized domain: the hexagon set, its boundary ring split into the two
/// colored arcs, the interface start/end vertices and crack edges, and the
/// outer hull polyline along the black arc (used by the pass-right observable).
#[derive(Clone, Debug)]
pub struct DiscreteDomain {
    pub spec: DomainSpec,
    pub bbox: HexBBox,
    class: Vec<CellClass>,
    hex_count: usize,
    interior_count: usize,
    /// Boundary ring in clockwise order (y-axis up).
    pub ring: Vec<HexCoord>,
    /// Clockwise arc from z to w.
    pub boundary_white: Vec<HexCoord>,
    /// Clockwise arc from w back to z.
    pub boundary_black: Vec<HexCoord>,
    pub start_vertex: VertexId,
    pub end_vertex: VertexId,
    pub start_crack: Crack,
    pub end_crack: Crack,
    /// Hull vertices from `end_vertex` to `start_vertex` along the black arc;
    /// together with an interface path it forms a simple closed lattice loop
    /// enclosing exactly the black side.
    pub black_hull: Vec<VertexId>,
}

impl DiscreteDomain {
    #[inline]
    pub fn class(&self, h: HexCoord) -> CellClass {
        match self.bbox.hex_index(h) {
            Some(i) => self.class[i],
            None => CellClass::Exterior,
        }
    }

    #[inline]
    pub fn class_by_index(&self, idx: usize) -> CellClass {
        self.class[idx]
    }

    #[inline]
    pub fn contains(&self, h: HexCoord) -> bool {
        self.class(h) != CellClass::Exterior
    }

    /// Total number of hexagons in the domain.
    pub fn hex_count(&self) -> usize {
        self.hex_count
    }

    /// Number of interior (randomly colored) hexagons.
    pub fn interior_count(&self) -> usize {
        self.interior_count
    }

    /// Interior hexagons in lexicographic `(q, r)` order.
    pub fn interior_hexes(&self) -> Vec<HexCoord> {
        let mut v: Vec<HexCoord> = Vec::with_capacity(self.interior_count);
        for r in 0..self.bbox.height as i32 {
            for q in 0..self.bbox.width as i32 {
                let h = HexCoord::new(self.bbox.q0 + q, self.bbox.r0 + r);
                if self.class(h) == CellClass::Interior {
                    v.push(h);
                }
            }
        }
        v.sort();
        v
    }

    /// All domain hexagons (interior plus boundary ring).
    pub fn hexes(&self) -> Vec<HexCoord> {
        let mut v = Vec::with_capacity(self.hex_count);
        for r in 0..self.bbox.height as i32 {
            for q in 0..self.bbox.width as i32 {
                let h = HexCoord::new(self.bbox.q0 + q, self.bbox.r0 + r);
                if self.contains(h) {
                    v.push(h);
                }
            }
        }
        v
    }

    /// Flood-fill connectivity of a hexagon subset (edge adjacency).
    fn is_connected(hexes: &HashSet<HexCoord>) -> bool {
        let Some(&start) = hexes.iter().min() else { return true };
        let mut seen = HashSet::with_capacity(hexes.len());
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(h) = stack.pop() {
            for n in h.neighbors() {
                if hexes.contains(&n) && seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        seen.len() == hexes.len()
    }

    /// Whether the interior (domain minus boundary ring) is edge-connected.
    pub fn interior_connected(&self) -> bool {
        let interior: HashSet<HexCoord> = self.interior_hexes().into_iter().collect();
        Self::is_connected(&interior)
    }

    /// Build a domain from an explicit hexagon set and continuum anchor
    /// points given in lattice coordinates. The boundary ring is traced along
    /// the outer hull, ordered clockwise, and split at the hexagons nearest
    /// `z_target` / `w_target` (ties broken by lexicographic `(q, r)` order).
    pub fn from_hexes(
        spec: DomainSpec,
        hexes: HashSet<HexCoord>,
        z_target: Point,
        w_target: Point,
    ) -> Result<DiscreteDomain> {
        if hexes.is_empty() {
            return Err(Error::Domain("domain contains no hexagons".into()));
        }
        if !Self::is_connected(&hexes) {
            return Err(Error::Domain("domain hexagon set is not edge-connected".into()));
        }

        let bbox = HexBBox::around(&hexes);

        // Directed hull edges with the domain on the left (counterclockwise).
        // Keyed by start vertex; each hull vertex has exactly one outgoing edge.
        let mut hull_out: std::collections::HashMap<VertexId, (VertexId, HexCoord)> =
            std::collections::HashMap::new();
        for &h in &hexes {
            let HexCoord { q, r } = h;
            let sides: [(HexCoord, VertexId, VertexId); 6] = [
                // (exterior neighbor, edge start, edge end), domain on the left
                (HexCoord::new(q + 1, r), VertexId::top(q + 1, r - 1), VertexId::bottom(q, r + 1)),
                (HexCoord::new(q, r + 1), VertexId::bottom(q, r + 1), VertexId::top(q, r)),
                (HexCoord::new(q - 1, r + 1), VertexId::top(q, r), VertexId::bottom(q - 1, r + 1)),
                (HexCoord::new(q - 1, r), VertexId::bottom(q - 1, r + 1), VertexId::top(q, r - 1)),
                (HexCoord::new(q, r - 1), VertexId::top(q, r - 1), VertexId::bottom(q, r)),
                (HexCoord::new(q + 1, r - 1), VertexId::bottom(q, r), VertexId::top(q + 1, r - 1)),
            ];
            for (nbr, from, to) in sides {
                if !hexes.contains(&nbr) {
                    if hull_out.insert(from, (to, h)).is_some() {
                        return Err(Error::Domain(
                            "domain hull is pinched (vertex with two outgoing hull edges)".into(),
                        ));
                    }
                }
            }
        }
        if hull_out.is_empty() {
            return Err(Error::Domain("domain has no boundary".into()));
        }

        // Walk the hull cycle.
        let first = *hull_out.keys().min().unwrap();
        let mut hull_ccw: Vec<VertexId> = Vec::with_capacity(hull_out.len());
        let mut owners_ccw: Vec<HexCoord> = Vec::with_capacity(hull_out.len());
        let mut v = first;
        loop {
            let &(next, owner) = hull_out
                .get(&v)
                .ok_or_else(|| Error::Domain("hull walk left the boundary".into()))?;
            hull_ccw.push(v);
            owners_ccw.push(owner);
            v = next;
            if v == first {
                break;
            }
        }
        if hull_ccw.len() != hull_out.len() {
            return Err(Error::Domain("domain boundary is not a single cycle".into()));
        }

        // Sanity: the ccw hull must have positive signed area (y-axis up).
        let area2: f64 = hull_ccw
            .iter()
            .zip(hull_ccw.iter().cycle().skip(1))
            .map(|(a, b)| {
                let (pa, pb) = (a.position(), b.position());
                pa.x * pb.y - pb.x * pa.y
            })
            .sum();
        if area2 <= 0.0 {
            return Err(Error::Domain("hull orientation check failed".into()));
        }

        // Clockwise boundary ring: reverse the ccw owner sequence and collapse
        // consecutive duplicates.
        let mut ring: Vec<HexCoord> = Vec::new();
        for &h in owners_ccw.iter().rev() {
            if ring.last() != Some(&h) {
                ring.push(h);
            }
        }
        while ring.len() > 1 && ring.first() == ring.last() {
            ring.pop();
        }
        // Reject rings that visit a hexagon twice in non-consecutive runs.
        {
            let mut seen = HashSet::with_capacity(ring.len());
            for &h in &ring {
                if !seen.insert(h) {
                    return Err(Error::Domain(
                        "boundary ring touches a hexagon twice (domain too thin)".into(),
                    ));
                }
            }
        }
        if ring.len() < 4 {
            return Err(Error::Domain("boundary ring is too short".into()));
        }

        let nearest = |target: Point| -> usize {
            let mut best = 0usize;
            let mut best_d = f64::INFINITY;
            for (i, h) in ring.iter().enumerate() {
                let d = h.center().dist(target);
                if d < best_d - 1e-12
                    || ((d - best_d).abs() <= 1e-12 && ring[i] < ring[best])
                {
                    best = i;
                    best_d = d;
                }
            }
            best
        };
        let iz = nearest(z_target);
        let iw = nearest(w_target);
        if iz == iw {
            return Err(Error::Domain(
                "z and w round to the same boundary hexagon; increase the scale".into(),
            ));
        }

        let n = ring.len();
        let take = |from: usize, to: usize| -> Vec<HexCoord> {
            let mut v = Vec::new();
            let mut i = from;
            while i != to {
                v.push(ring[i]);
                i = (i + 1) % n;
            }
            v
        };
        let boundary_white = take(iz, iw);
        let boundary_black = take(iw, iz);

        // Classify cells.
        let mut class = vec![CellClass::Exterior; bbox.len()];
        for &h in &hexes {
            class[bbox.hex_index(h).unwrap()] = CellClass::Interior;
        }
        for &h in &boundary_white {
            class[bbox.hex_index(h).unwrap()] = CellClass::WhiteArc;
        }
        for &h in &boundary_black {
            class[bbox.hex_index(h).unwrap()] = CellClass::BlackArc;
        }
        let interior_count = class.iter().filter(|&&c| c == CellClass::Interior).count();

        let crack = |white: HexCoord, black: HexCoord, inward: bool| -> Result<Crack> {
            let (a, b) = shared_edge(white, black).ok_or_else(|| {
                Error::Domain("arc endpoints are not adjacent; boundary ring is broken".into())
            })?;
            let third = |v: VertexId| -> HexCoord {
                let hs = v.hexes();
                *hs.iter().find(|&&h| h != white && h != black).unwrap()
            };
            let a_out = !hexes.contains(&third(a));
            let b_out = !hexes.contains(&third(b));
            let (outer, inner) = match (a_out, b_out) {
                (true, false) => (a, b),
                (false, true) => (b, a),
                _ => {
                    return Err(Error::Domain(
                        "crack edge is not transverse to the boundary (degenerate domain)".into(),
                    ))
                }
            };
            // The interface keeps white on its left: walking inward at the
            // start crack, outward at the end crack.
            let (po, pi) = (outer.position(), inner.position());
            let mid = Point::new((po.x + pi.x) / 2.0, (po.y + pi.y) / 2.0);
            let dir = if inward { (pi.x - po.x, pi.y - po.y) } else { (po.x - pi.x, po.y - pi.y) };
            let wrel = (white.center().x - mid.x, white.center().y - mid.y);
            let cross = dir.0 * wrel.1 - dir.1 * wrel.0;
            if cross <= 0.0 {
                return Err(Error::Domain(
                    "white arc is not on the left of the crack edge; orientation bug".into(),
                ));
            }
            Ok(Crack { outer, inner, white, black })
        };

        // Start crack: between the last black-arc hexagon and the first white
        // one (z end). End crack: between the last white and the first black.
        let start_crack = crack(ring[iz], ring[(iz + n - 1) % n], true)?;
        let end_crack = crack(ring[(iw + n - 1) % n], ring[iw], false)?;
        let start_vertex = start_crack.outer;
        let end_vertex = end_crack.outer;

        // Split the hull vertex cycle at the two crack vertices and keep the
        // side whose owners are black, oriented end -> start. The clockwise
        // hull is the reversed ccw walk.
        let hull_cw: Vec<VertexId> = hull_ccw.iter().rev().copied().collect();
        let pos_of = |v: VertexId| hull_cw.iter().position(|&u| u == v);
        let (ps, pe) = match (pos_of(start_vertex), pos_of(end_vertex)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Domain("crack vertices are missing from the hull".into())),
        };
        let m = hull_cw.len();
        let walk = |from: usize, to: usize| -> Vec<VertexId> {
            let mut v = Vec::new();
            let mut i = from;
            loop {
                v.push(hull_cw[i]);
                if i == to {
                    break;
                }
                i = (i + 1) % m;
            }
            v
        };
        // Clockwise from the end vertex: one of the two walks runs along the
        // black arc. Identify it by testing a hexagon adjacent to its second
        // vertex.
        let cand = walk(pe, ps);
        let is_black_side = |path: &[VertexId]| -> bool {
            for v in &path[1..path.len().saturating_sub(1)] {
                for h in v.hexes() {
                    let c = bbox.hex_index(h).map_or(CellClass::Exterior, |i| class[i]);
                    match c {
                        CellClass::BlackArc => return true,
                        CellClass::WhiteArc => return false,
                        _ => {}
                    }
                }
            }
            true
        };
        let black_hull = if is_black_side(&cand) { cand } else { walk(ps, pe).into_iter().rev().collect() };
        if black_hull.first() != Some(&end_vertex) || black_hull.last() != Some(&start_vertex) {
            return Err(Error::Domain("black hull extraction failed".into()));
        }

        Ok(DiscreteDomain {
            spec,
            bbox,
            class,
            hex_count: hexes.len(),
            interior_count,
            ring,
            boundary_white,
            boundary_black,
            start_vertex,
            end_vertex,
            start_crack,
            end_crack,
            black_hull,
        })
    }
}

/// Discretize a continuum domain: hexagons whose center lies strictly inside
/// the `L`-scaled shape, boundary arcs split at the hexagons nearest `L*z` and
/// `L*w`, white running clockwise from z to w.
pub fn build_domain(spec: &DomainSpec) -> Result<DiscreteDomain> {
    spec.validate()?;
    let l = spec.scale;

    // Generous axial bounding box for the scan.
    let rmax = (l / 1.5).ceil() as i32 + 2;
    let qmax = (l / SQRT3).ceil() as i32 + rmax + 2;
    let mut hexes = HashSet::new();
    for r in -rmax..=rmax {
        for q in -qmax..=qmax {
            let h = HexCoord::new(q, r);
            let c = h.center();
            if spec.shape.contains(Point::new(c.x / l, c.y / l)) {
                hexes.insert(h);
            }
        }
    }
    if hexes.is_empty() {
        return Err(Error::Domain(format!(
            "no hexagon center falls inside {} at scale {}",
            spec.shape.name(),
            l
        )));
    }
    DiscreteDomain::from_hexes(*spec, hexes, spec.z.scale(l), spec.w.scale(l))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_center_origin_and_distance() {
        assert_eq!(hex_center(HexCoord::new(0, 0)), Point::new(0.0, 0.0));
        let d10 = hex_center(HexCoord::new(1, 0)).dist(Point::new(0.0, 0.0));
        assert!((d10 - SQRT3).abs() < 1e-12);
        let d1m1 = hex_center(HexCoord::new(1, -1)).dist(Point::new(0.0, 0.0));
        assert!((d1m1 - d10).abs() < 1e-12);
        for n in HexCoord::new(3, -2).neighbors() {
            let d = n.center().dist(HexCoord::new(3, -2).center());
            assert!((d - SQRT3).abs() < 1e-12);
        }
    }

    #[test]
    fn vertex_neighbors_symmetric_and_unit_distance() {
        for v in [
            VertexId::top(0, 0),
            VertexId::bottom(0, 0),
            VertexId::top(2, -3),
            VertexId::bottom(-1, 4),
        ] {
            let ns = vertex_neighbors(v);
            assert_eq!(ns.len(), 3);
            for u in ns {
                assert!((u.position().dist(v.position()) - 1.0).abs() < 1e-12);
                assert!(vertex_neighbors(u).contains(&v), "symmetry failed at {v:?} -> {u:?}");
            }
        }
    }

    /// Brute-force neighborhood scan: enumerate every vertex owned by a
    /// hexagon within axial radius 3 and keep those at distance ~1.
    #[test]
    fn vertex_neighbors_match_geometric_scan() {
        for v in [VertexId::top(0, 0), VertexId::bottom(1, -2), VertexId::top(-2, 3)] {
            let p = v.position();
            let mut found = Vec::new();
            for dq in -4..=4 {
                for dr in -4..=4 {
                    let h = HexCoord::new(v.hex.q + dq, v.hex.r + dr);
                    for corner in [Corner::Top, Corner::Bottom] {
                        let u = VertexId { hex: h, corner };
                        let d = u.position().dist(p);
                        if d > 0.99 && d < 1.01 {
                            found.push(u);
                        }
                    }
                }
            }
            found.sort();
            let mut expect = vertex_neighbors(v).to_vec();
            expect.sort();
            assert_eq!(found, expect);
        }
    }

    #[test]
    fn vertex_hexes_touch_vertex() {
        for v in [VertexId::top(0, 0), VertexId::bottom(5, -1)] {
            for h in v.hexes() {
                let d = h.center().dist(v.position());
                // corner: circumradius 1 from center
                assert!((d - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn opposite_tables_are_consistent() {
        // For each neighbor u of v, the edge (v,u) must be flanked by the two
        // hexagons common to v and u, and hex_opposite_edge must return the
        // third hexagon of v.
        for v in [VertexId::top(0, 0), VertexId::bottom(2, 1)] {
            let hv: HashSet<_> = v.hexes().into_iter().collect();
            for u in v.neighbors() {
                let hu: HashSet<_> = u.hexes().into_iter().collect();
                let shared: Vec<_> = hv.intersection(&hu).collect();
                assert_eq!(shared.len(), 2, "edge must be flanked by two hexagons");
                let opp = v.hex_opposite_edge(u).unwrap();
                assert!(hv.contains(&opp) && !hu.contains(&opp));
                // neighbor_opposite is the inverse view
                assert_eq!(v.neighbor_opposite(opp), Some(u));
            }
        }
    }

    #[test]
    fn shared_edge_endpoints_belong_to_both() {
        let a = HexCoord::new(0, 0);
        for b in a.neighbors() {
            let (u, v) = shared_edge(a, b).unwrap();
            for x in [u, v] {
                assert!(x.hexes().contains(&a));
                assert!(x.hexes().contains(&b));
            }
            assert!((u.position().dist(v.position()) - 1.0).abs() < 1e-12);
        }
        assert!(shared_edge(a, HexCoord::new(2, 0)).is_none());
    }

    #[test]
    fn square_domain_partitions_boundary() {
        let spec = DomainSpec::with_defaults(Shape::Square, 10.0);
        let d = build_domain(&spec).unwrap();
        assert!(!d.boundary_white.is_empty());
        assert!(!d.boundary_black.is_empty());
        assert_eq!(d.boundary_white.len() + d.boundary_black.len(), d.ring.len());
        // Arc hexagons are exactly the hexagons adjacent to the exterior.
        for h in d.hexes() {
            let adjacent_exterior = h.neighbors().iter().any(|n| !d.contains(*n));
            let on_ring = d.ring.contains(&h);
            assert_eq!(adjacent_exterior, on_ring, "hexagon {h:?}");
        }
    }

    #[test]
    fn disc_boundary_hexagons_poke_outside() {
        let spec = DomainSpec::with_defaults(Shape::Disc, 6.0);
        let d = build_domain(&spec).unwrap();
        for h in &d.ring {
            let outside = h
                .neighbors()
                .iter()
                .any(|n| n.center().dist(Point::new(0.0, 0.0)) >= 6.0);
            assert!(outside, "boundary hexagon {h:?} has no neighbor center outside the disc");
        }
    }

    /// Independent point-in-triangle scan over the axial bounding box.
    #[test]
    fn triangle_hex_count_matches_bruteforce() {
        let l = 36.0;
        let spec = DomainSpec::with_defaults(Shape::Triangle, l);
        let d = build_domain(&spec).unwrap();
        let mut count = 0usize;
        for r in -80..80 {
            for q in -80..160 {
                let c = HexCoord::new(q, r).center();
                let (x, y) = (c.x / l, c.y / l);
                // edges: x = 0, y = x/sqrt3, y = 1 - x/sqrt3
                if x > 0.0 && y > x / SQRT3 && y < 1.0 - x / SQRT3 {
                    count += 1;
                }
            }
        }
        assert_eq!(count, d.hex_count());
    }

    #[test]
    fn build_domain_is_deterministic() {
        let spec = DomainSpec::with_defaults(Shape::HalfDisc, 12.0);
        let a = build_domain(&spec).unwrap();
        let b = build_domain(&spec).unwrap();
        assert_eq!(a.ring, b.ring);
        assert_eq!(a.boundary_white, b.boundary_white);
        assert_eq!(a.start_vertex, b.start_vertex);
        assert_eq!(a.black_hull, b.black_hull);
    }

    #[test]
    fn interior_connected_for_all_shapes_above_min_scale() {
        for shape in [Shape::Triangle, Shape::Square, Shape::Disc, Shape::HalfDisc] {
            for mult in [1.0, 1.7, 2.9] {
                let l = shape.min_scale() * mult;
                let d = build_domain(&DomainSpec::with_defaults(shape, l)).unwrap();
                assert!(d.interior_connected(), "{} at L={} has split interior", shape.name(), l);
                assert!(d.interior_count() > 0);
            }
        }
    }

    #[test]
    fn degenerate_domains_are_rejected() {
        let spec = DomainSpec::with_defaults(Shape::Disc, 1.2);
        assert!(build_domain(&spec).is_err());
        let mut bad = DomainSpec::with_defaults(Shape::Square, 10.0);
        bad.w = bad.z;
        assert!(build_domain(&bad).is_err());
    }

    /// Reflecting a left-right symmetric spec maps the white arc onto the
    /// black arc hexagon for hexagon. The lattice is symmetric under x -> -x
    /// via (q, r) -> (-q - r, r), and the disc spec is fixed by that mirror.
    #[test]
    fn mirror_swaps_arcs_on_the_disc() {
        let d = build_domain(&DomainSpec::with_defaults(Shape::Disc, 9.0)).unwrap();
        let mirror = |h: HexCoord| HexCoord::new(-h.q - h.r, h.r);
        let white: HashSet<_> = d.boundary_white.iter().copied().map(mirror).collect();
        let black: HashSet<_> = d.boundary_black.iter().copied().collect();
        assert_eq!(white, black);
    }

    /// The y-mirror (q, r) -> (q + r, -r) maps the half-disc onto itself with
    /// z and w swapped; white of the original must land on black of the
    /// swapped-anchor build.
    #[test]
    fn mirror_swaps_arcs_on_the_half_disc() {
        let spec = DomainSpec::with_defaults(Shape::HalfDisc, 11.0);
        let d = build_domain(&spec).unwrap();
        let mut swapped = spec;
        std::mem::swap(&mut swapped.z, &mut swapped.w);
        let ds = build_domain(&swapped).unwrap();
        let mirror = |h: HexCoord| HexCoord::new(h.q + h.r, -h.r);
        let white_mirrored: HashSet<_> = d.boundary_white.iter().copied().map(mirror).collect();
        let black_swapped: HashSet<_> = ds.boundary_black.iter().copied().collect();
        assert_eq!(white_mirrored, black_swapped);
    }

    #[test]
    fn cracks_sit_between_the_arcs() {
        let d = build_domain(&DomainSpec::with_defaults(Shape::Triangle, 20.0)).unwrap();
        assert_eq!(d.class(d.start_crack.white), CellClass::WhiteArc);
        assert_eq!(d.class(d.start_crack.black), CellClass::BlackArc);
        assert_eq!(d.class(d.end_crack.white), CellClass::WhiteArc);
        assert_eq!(d.class(d.end_crack.black), CellClass::BlackArc);
        // Outer crack vertices have an exterior hexagon, inner ones do not.
        for c in [d.start_crack, d.end_crack] {
            assert!(c.outer.hexes().iter().any(|h| !d.contains(*h)));
            assert!(c.inner.hexes().iter().all(|h| d.contains(*h)));
        }
        // The black hull runs from the end vertex back to the start vertex.
        assert_eq!(d.black_hull.first(), Some(&d.end_vertex));
        assert_eq!(d.black_hull.last(), Some(&d.start_vertex));
        // Hull steps are unit lattice edges.
        for pair in d.black_hull.windows(2) {
            assert!((pair[0].position().dist(pair[1].position()) - 1.0).abs() < 1e-12);
        }
    }
}
