//! Bounding-volume hierarchy over triangles for nearest-point queries.

use super::V3;

#[derive(Debug, Clone, Copy)]
struct Aabb {
    min: V3,
    max: V3,
}

impl Aabb {
    fn empty() -> Self {
        Aabb {
            min: V3::repeat(f64::INFINITY),
            max: V3::repeat(f64::NEG_INFINITY),
        }
    }

    fn grow(&mut self, p: &V3) {
        self.min = self.min.inf(p);
        self.max = self.max.sup(p);
    }

    fn merge(&mut self, other: &Aabb) {
        self.min = self.min.inf(&other.min);
        self.max = self.max.sup(&other.max);
    }

    /// Squared distance from `p` to the box (0 inside).
    fn dist2(&self, p: &V3) -> f64 {
        let mut d2 = 0.0;
        for i in 0..3 {
            let lo = self.min[i] - p[i];
            let hi = p[i] - self.max[i];
            let d = lo.max(hi).max(0.0);
            d2 += d * d;
        }
        d2
    }

    fn centroid(&self) -> V3 {
        0.5 * (self.min + self.max)
    }

    fn longest_axis(&self) -> usize {
        let ext = self.max - self.min;
        if ext.x >= ext.y && ext.x >= ext.z {
            0
        } else if ext.y >= ext.z {
            1
        } else {
            2
        }
    }
}

#[derive(Debug, Clone)]
struct Node {
    bounds: Aabb,
    /// Leaf: `first..first+count` into `order`. Inner: `first` = left child,
    /// right child is `first + 1`, `count == 0`.
    first: u32,
    count: u32,
}

/// Closest point on triangle `(a, b, c)` to `p` (Ericson, Real-Time
/// Collision Detection, 5.1.5).
pub fn closest_point_triangle(p: &V3, a: &V3, b: &V3, c: &V3) -> V3 {
    let ab = b - a;
    let ac = c - a;
    let ap = p - a;
    let d1 = ab.dot(&ap);
    let d2 = ac.dot(&ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return *a;
    }
    let bp = p - b;
    let d3 = ab.dot(&bp);
    let d4 = ac.dot(&bp);
    if d3 >= 0.0 && d4 <= d3 {
        return *b;
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let t = d1 / (d1 - d3);
        return a + t * ab;
    }
    let cp = p - c;
    let d5 = ab.dot(&cp);
    let d6 = ac.dot(&cp);
    if d6 >= 0.0 && d5 <= d6 {
        return *c;
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let t = d2 / (d2 - d6);
        return a + t * ac;
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let t = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return b + t * (c - b);
    }
    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    a + ab * v + ac * w
}

pub struct Bvh {
    nodes: Vec<Node>,
    order: Vec<u32>,
}

pub struct NearestHit {
    pub triangle: u32,
    pub point: V3,
    pub dist2: f64,
}

impl Bvh {
    pub fn build(tri_bounds: &[(V3, V3, V3)]) -> Bvh {
        let n = tri_bounds.len();
        let boxes: Vec<Aabb> = tri_bounds
            .iter()
            .map(|(a, b, c)| {
                let mut bb = Aabb::empty();
                bb.grow(a);
                bb.grow(b);
                bb.grow(c);
                bb
            })
            .collect();
        let mut order: Vec<u32> = (0..n as u32).collect();
        let mut nodes = Vec::with_capacity(2 * n.max(1));
        nodes.push(Node {
            bounds: Aabb::empty(),
            first: 0,
            count: n as u32,
        });
        let mut bvh = Bvh { nodes, order: Vec::new() };
        Self::split(&mut bvh.nodes, &mut order, &boxes, 0, 0, n);
        bvh.order = order;
        bvh
    }

    fn split(
        nodes: &mut Vec<Node>,
        order: &mut [u32],
        boxes: &[Aabb],
        node: usize,
        start: usize,
        count: usize,
    ) {
        let mut bounds = Aabb::empty();
        for &t in &order[start..start + count] {
            bounds.merge(&boxes[t as usize]);
        }
        nodes[node].bounds = bounds;
        const LEAF_SIZE: usize = 4;
        if count <= LEAF_SIZE {
            nodes[node].first = start as u32;
            nodes[node].count = count as u32;
            return;
        }
        let axis = bounds.longest_axis();
        let mid = start + count / 2;
        order[start..start + count].select_nth_unstable_by(count / 2, |&x, &y| {
            let cx = boxes[x as usize].centroid()[axis];
            let cy = boxes[y as usize].centroid()[axis];
            cx.partial_cmp(&cy).unwrap_or(std::cmp::Ordering::Equal)
        });
        let left = nodes.len();
        nodes.push(Node {
            bounds: Aabb::empty(),
            first: 0,
            count: 0,
        });
        nodes.push(Node {
            bounds: Aabb::empty(),
            first: 0,
            count: 0,
        });
        nodes[node].first = left as u32;
        nodes[node].count = 0;
        Self::split(nodes, order, boxes, left, start, mid - start);
        Self::split(nodes, order, boxes, left + 1, mid, start + count - mid);
    }

    /// Nearest point over all triangles; `fetch` maps a triangle index to its
    /// vertices. Returns the best hit plus every triangle whose foot lies
    /// within `tie_tol` of the best distance (cut-locus candidates).
    pub fn nearest<F: Fn(u32) -> (V3, V3, V3)>(
        &self,
        p: &V3,
        fetch: F,
        tie_tol: f64,
    ) -> (NearestHit, Vec<NearestHit>) {
        let mut best = NearestHit {
            triangle: u32::MAX,
            point: V3::zeros(),
            dist2: f64::INFINITY,
        };
        let mut ties: Vec<NearestHit> = Vec::new();
        // (dist2 to box, node)
        let mut stack: Vec<(f64, u32)> = vec![(self.nodes[0].bounds.dist2(p), 0)];
        while let Some((d2, node)) = stack.pop() {
            // prune against best + tie slack so near-ties survive
            let slack = 2.0 * best.dist2.sqrt() * tie_tol + tie_tol * tie_tol;
            if d2 > best.dist2 + slack {
                continue;
            }
            let n = &self.nodes[node as usize];
            if n.count > 0 {
                for &t in &self.order[n.first as usize..(n.first + n.count) as usize] {
                    let (a, b, c) = fetch(t);
                    let q = closest_point_triangle(p, &a, &b, &c);
                    let dd = (p - q).norm_squared();
                    let hit = NearestHit {
                        triangle: t,
                        point: q,
                        dist2: dd,
                    };
                    if dd < best.dist2 {
                        ties.push(std::mem::replace(&mut best, hit));
                    } else {
                        ties.push(hit);
                    }
                }
                // drop ties that are now too far
                let keep = best.dist2.sqrt() + tie_tol;
                ties.retain(|h| h.dist2.sqrt() <= keep);
            } else {
                let l = n.first as usize;
                let dl = self.nodes[l].bounds.dist2(p);
                let dr = self.nodes[l + 1].bounds.dist2(p);
                // push farther first so nearer is processed next
                if dl <= dr {
                    stack.push((dr, (l + 1) as u32));
                    stack.push((dl, l as u32));
                } else {
                    stack.push((dl, l as u32));
                    stack.push((dr, (l + 1) as u32));
                }
            }
        }
        (best, ties)
    }
}
