// temporary debug scaffold (removed before finishing)
use lep::hexlattice::*;

fn main() {
    let l = 10.0;
    let spec = DomainSpec::with_defaults(Shape::Square, l);
    let rmax = (l / 1.5).ceil() as i32 + 2;
    let qmax = (l / SQRT3).ceil() as i32 + rmax + 2;
    let mut hexes = std::collections::HashSet::new();
    for r in -rmax..=rmax {
        for q in -qmax..=qmax {
            let h = HexCoord::new(q, r);
            let c = h.center();
            if spec.shape.contains(Point::new(c.x / l, c.y / l)) {
                hexes.insert(h);
            }
        }
    }
    println!("hexes: {}", hexes.len());
    match DiscreteDomain::from_hexes(spec, hexes.clone(), spec.z.scale(l), spec.w.scale(l)) {
        Ok(d) => println!("ok ring {}", d.ring.len()),
        Err(e) => println!("ERR {e}"),
    }
    let mut hull_out: std::collections::HashMap<VertexId, (VertexId, HexCoord)> =
        std::collections::HashMap::new();
    for &h in &hexes {
        let HexCoord { q, r } = h;
        let sides: [(HexCoord, VertexId, VertexId); 6] = [
            (HexCoord::new(q + 1, r), VertexId::top(q + 1, r - 1), VertexId::bottom(q, r + 1)),
            (HexCoord::new(q, r + 1), VertexId::bottom(q, r + 1), VertexId::top(q, r)),
            (HexCoord::new(q - 1, r + 1), VertexId::top(q, r), VertexId::bottom(q - 1, r + 1)),
            (HexCoord::new(q - 1, r), VertexId::bottom(q - 1, r + 1), VertexId::top(q, r - 1)),
            (HexCoord::new(q, r - 1), VertexId::top(q, r - 1), VertexId::bottom(q, r)),
            (HexCoord::new(q + 1, r - 1), VertexId::bottom(q, r), VertexId::top(q + 1, r - 1)),
        ];
        for (nbr, from, to) in sides {
            if !hexes.contains(&nbr) {
                hull_out.insert(from, (to, h));
            }
        }
    }
    let first = *hull_out.keys().min().unwrap();
    let mut owners = vec![];
    let mut hull = vec![];
    let mut v = first;
    loop {
        let &(next, owner) = hull_out.get(&v).unwrap();
        owners.push(owner);
        hull.push(v);
        v = next;
        if v == first {
            break;
        }
    }
    let area2: f64 = hull
        .iter()
        .zip(hull.iter().cycle().skip(1))
        .map(|(a, b)| {
            let (pa, pb) = (a.position(), b.position());
            pa.x * pb.y - pb.x * pa.y
        })
        .sum();
    println!("hull area2 = {area2}");
    let mut ring: Vec<HexCoord> = Vec::new();
    for &h in owners.iter().rev() {
        if ring.last() != Some(&h) {
            ring.push(h);
        }
    }
    while ring.len() > 1 && ring.first() == ring.last() {
        ring.pop();
    }
    println!("ring len {}", ring.len());
    let zt = spec.z.scale(l);
    let nearest = |target: Point| -> usize {
        let mut best = 0;
        let mut bd = f64::INFINITY;
        for (i, h) in ring.iter().enumerate() {
            let d = h.center().dist(target);
            if d < bd {
                bd = d;
                best = i;
            }
        }
        best
    };
    let iz = nearest(zt);
    let n = ring.len();
    println!("z target {zt}");
    println!("iz   {:?} center {}", ring[iz], ring[iz].center());
    println!("iz-1 {:?} center {}", ring[(iz + n - 1) % n], ring[(iz + n - 1) % n].center());
    println!("iz+1 {:?} center {}", ring[(iz + 1) % n], ring[(iz + 1) % n].center());
}
