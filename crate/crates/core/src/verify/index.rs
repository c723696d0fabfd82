//! Spatial index over a net for repeated stabbing queries.
//!
//! An axis-parallel flat with free axes `F` meets a convex body exactly when
//! its fixed coordinates lie in the projection of the body onto the other
//! axes. Flats are grouped by `F` and each group becomes a kd-tree over the
//! fixed coordinates. Tree nodes carry the smallest net index below them, so
//! a depth-first search can return the first stabbing flat in net order
//! without visiting everything. Flats that are not axis-parallel are checked
//! one by one.

use std::collections::BTreeMap;

use crate::geom::{Body, Ellipsoid, TOL};
use crate::{Net, Result};

const LEAF_SIZE: usize = 32;
const NONE: u32 = u32::MAX;

/// Relative slack for pruning, well above the predicate tolerance so that
/// pruning never rejects a flat the exact predicate would accept.
const PRUNE_SLACK: f64 = 1e-6;

#[derive(Clone, Copy)]
struct Node {
    start: u32,
    end: u32,
    left: u32,
    right: u32,
    min_index: u32,
}

struct Tree {
    fixed: Vec<usize>,
    perm: Vec<u32>,
    nodes: Vec<Node>,
    // lo then hi, 2 * fixed.len() numbers per node
    bounds: Vec<f64>,
}

pub struct StabIndex<'a> {
    net: &'a Net,
    trees: Vec<Tree>,
    loose: Vec<u32>,
}

impl<'a> StabIndex<'a> {
    pub fn new(net: &'a Net) -> StabIndex<'a> {
        assert!(net.len() < NONE as usize, "net too large to index");
        let d = net.dim();
        let mut groups: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        let mut loose = Vec::new();
        for (i, f) in net.flats().enumerate() {
            match f.axis_aligned_free_axes() {
                Some(mask) => groups.entry(mask).or_default().push(i as u32),
                None => loose.push(i as u32),
            }
        }
        let trees = groups
            .into_iter()
            .map(|(mask, perm)| {
                let fixed = (0..d).filter(|&a| mask & (1 << a) == 0).collect();
                Tree::build(net, fixed, perm)
            })
            .collect();
        StabIndex { net, trees, loose }
    }

    pub fn net(&self) -> &'a Net {
        self.net
    }

    /// Index of the first flat, in net order, that meets `body`.
    pub fn first_stab(&self, body: &Body) -> Result<Option<usize>> {
        crate::error::check_dim(self.net.dim(), body.dim())?;
        let mut best = NONE;
        for tree in &self.trees {
            let region = Region::new(body, &tree.fixed)?;
            tree.search(&region, &mut best, |i| body.intersects_flat(self.net.flat(i as usize)))?;
        }
        for &i in &self.loose {
            if i >= best {
                break;
            }
            if body.intersects_flat(self.net.flat(i as usize))? {
                best = i;
            }
        }
        Ok((best != NONE).then_some(best as usize))
    }

    /// Whether some flat comes within distance `r` of `center`, with the
    /// squared distance compared as `dist^2 <= r^2 (1 + TOL)`.
    pub fn ball_is_stabbed(&self, center: &[f64], r: f64) -> bool {
        let r2 = r * r * (1.0 + TOL);
        let (data, w) = (self.net.raw(), self.net.record_len());
        self.trees.iter().any(|tree| {
            // an axis-parallel flat is only displaced along its fixed axes
            let hit = |i: u32| {
                let base = &data[i as usize * w..];
                tree.fixed.iter().map(|&a| (center[a] - base[a]) * (center[a] - base[a])).sum::<f64>() <= r2
            };
            tree.any_in_ball(center, r2 * (1.0 + PRUNE_SLACK), hit)
        }) || self.loose.iter().any(|&i| self.net.flat(i as usize).dist_sq_unchecked(center) <= r2)
    }
}

impl Tree {
    fn build(net: &Net, fixed: Vec<usize>, mut perm: Vec<u32>) -> Tree {
        let m = fixed.len();
        let w = net.record_len();
        let data = net.raw();
        let coord = |i: u32, j: usize| data[i as usize * w + fixed[j]];
        // canonical point nets are sorted by record, so halving in index
        // order already separates space; for flats the lex order makes poor
        // boxes and a median split is used
        let sorted = m == net.dim() && perm.windows(2).all(|p| {
            (0..m).map(|j| coord(p[0], j).total_cmp(&coord(p[1], j))).find(|o| o.is_ne()).map_or(true, |o| o.is_lt())
        });
        let mut nodes = Vec::with_capacity(2 * perm.len() / LEAF_SIZE + 1);
        let mut bounds = Vec::with_capacity(nodes.capacity() * 2 * m);

        // iterative build: (node id, start, end), children patched in afterwards
        let mut stack = vec![(0usize, 0usize, perm.len())];
        nodes.push(Node { start: 0, end: perm.len() as u32, left: NONE, right: NONE, min_index: NONE });
        bounds.resize(2 * m, 0.0);
        while let Some((id, start, end)) = stack.pop() {
            let slice = &mut perm[start..end];
            let mut lo = vec![f64::INFINITY; m];
            let mut hi = vec![f64::NEG_INFINITY; m];
            let mut min_index = NONE;
            for &i in slice.iter() {
                min_index = min_index.min(i);
                for j in 0..m {
                    let x = coord(i, j);
                    lo[j] = lo[j].min(x);
                    hi[j] = hi[j].max(x);
                }
            }
            bounds[2 * m * id..2 * m * id + m].copy_from_slice(&lo);
            bounds[2 * m * id + m..2 * m * (id + 1)].copy_from_slice(&hi);
            nodes[id].min_index = min_index;
            if end - start <= LEAF_SIZE {
                continue;
            }
            let axis = (0..m).max_by(|&a, &b| (hi[a] - lo[a]).total_cmp(&(hi[b] - lo[b]))).unwrap();
            if hi[axis] == lo[axis] {
                // all points coincide; keep them in one leaf
                continue;
            }
            let mid = slice.len() / 2;
            if !sorted {
                slice.select_nth_unstable_by(mid, |&a, &b| coord(a, axis).total_cmp(&coord(b, axis)));
            }
            for (child, s, e) in [(0, start, start + mid), (1, start + mid, end)] {
                let cid = nodes.len();
                nodes.push(Node { start: s as u32, end: e as u32, left: NONE, right: NONE, min_index: NONE });
                bounds.resize(bounds.len() + 2 * m, 0.0);
                if child == 0 {
                    nodes[id].left = cid as u32;
                } else {
                    nodes[id].right = cid as u32;
                }
                stack.push((cid, s, e));
            }
        }
        nodes.shrink_to_fit();
        bounds.shrink_to_fit();
        Tree { fixed, perm, nodes, bounds }
    }

    /// Whether `hit` accepts a flat whose fixed coordinates lie within
    /// `sqrt(r2)` of those of `center`. Allocation free; the probe calls this
    /// once per grid point.
    fn any_in_ball(&self, center: &[f64], r2: f64, hit: impl Fn(u32) -> bool) -> bool {
        let m = self.fixed.len();
        // depth is at most log2 of the net size, so 64 pending nodes suffice
        let mut stack = [0u32; 64];
        let mut top = 1;
        while top > 0 {
            top -= 1;
            let id = stack[top] as usize;
            let b = &self.bounds[2 * m * id..2 * m * (id + 1)];
            let mut d2 = 0.0;
            for (j, &a) in self.fixed.iter().enumerate() {
                let c = center[a];
                let t = (b[j] - c).max(c - b[m + j]).max(0.0);
                d2 += t * t;
            }
            if d2 > r2 {
                continue;
            }
            let node = self.nodes[id];
            if node.left == NONE {
                if self.perm[node.start as usize..node.end as usize].iter().any(|&i| hit(i)) {
                    return true;
                }
                continue;
            }
            stack[top] = node.right;
            stack[top + 1] = node.left;
            top += 2;
        }
        false
    }

    /// Lowers `best` to the smallest index accepted by `hit` among flats the
    /// region may meet.
    fn search(&self, region: &Region, best: &mut u32, mut hit: impl FnMut(u32) -> Result<bool>) -> Result<()> {
        let m = self.fixed.len();
        let mut stack = vec![0u32];
        while let Some(id) = stack.pop() {
            let node = self.nodes[id as usize];
            if node.min_index >= *best {
                continue;
            }
            let b = &self.bounds[2 * m * id as usize..2 * m * (id as usize + 1)];
            if !region.may_meet(&b[..m], &b[m..]) {
                continue;
            }
            if node.left == NONE {
                for &i in &self.perm[node.start as usize..node.end as usize] {
                    if i < *best && hit(i)? {
                        *best = i;
                    }
                }
                continue;
            }
            let (l, r) = (self.nodes[node.left as usize], self.nodes[node.right as usize]);
            if l.min_index <= r.min_index {
                stack.push(node.right);
                stack.push(node.left);
            } else {
                stack.push(node.left);
                stack.push(node.right);
            }
        }
        Ok(())
    }
}

/// Conservative description of a body projected onto a group's fixed axes.
enum Region {
    Ellipsoid { lo: Vec<f64>, hi: Vec<f64>, center: Vec<f64>, axes: Vec<(Vec<f64>, f64)> },
    Bounds { lo: Vec<f64>, hi: Vec<f64> },
}

impl Region {
    fn new(body: &Body, fixed: &[usize]) -> Result<Region> {
        match body {
            Body::Ellipsoid(e) => {
                let p: Ellipsoid = if fixed.len() == e.dim() { e.clone() } else { e.project_onto(fixed)? };
                let bb = p.bounding_box();
                let (vecs, semi) = p.principal_axes();
                let axes = semi
                    .iter()
                    .enumerate()
                    .map(|(j, &a)| (vecs.column(j).iter().copied().collect(), a * (1.0 + PRUNE_SLACK) + TOL))
                    .collect();
                let (lo, hi) = widen(bb.lo(), bb.hi());
                Ok(Region::Ellipsoid { lo, hi, center: p.center().to_vec(), axes })
            }
            Body::Box(b) => {
                let lo: Vec<f64> = fixed.iter().map(|&a| b.lo()[a]).collect();
                let hi: Vec<f64> = fixed.iter().map(|&a| b.hi()[a]).collect();
                let (lo, hi) = widen(&lo, &hi);
                Ok(Region::Bounds { lo, hi })
            }
            Body::Polytope(p) => {
                let bb = p.bounding_box();
                let lo: Vec<f64> = fixed.iter().map(|&a| bb.lo()[a]).collect();
                let hi: Vec<f64> = fixed.iter().map(|&a| bb.hi()[a]).collect();
                let (lo, hi) = widen(&lo, &hi);
                Ok(Region::Bounds { lo, hi })
            }
        }
    }

    fn may_meet(&self, blo: &[f64], bhi: &[f64]) -> bool {
        match self {
            Region::Bounds { lo, hi } => overlaps(lo, hi, blo, bhi),
            Region::Ellipsoid { lo, hi, center, axes } => {
                if !overlaps(lo, hi, blo, bhi) {
                    return false;
                }
                axes.iter().all(|(u, a)| {
                    let mut mid = 0.0;
                    let mut half = 0.0;
                    for j in 0..u.len() {
                        mid += u[j] * ((blo[j] + bhi[j]) / 2.0 - center[j]);
                        half += u[j].abs() * (bhi[j] - blo[j]) / 2.0;
                    }
                    mid.abs() - half <= *a
                })
            }
        }
    }
}

fn widen(lo: &[f64], hi: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let pad = |a: f64, b: f64| PRUNE_SLACK * (b - a).abs() + TOL;
    (
        lo.iter().zip(hi).map(|(&a, &b)| a - pad(a, b)).collect(),
        lo.iter().zip(hi).map(|(&a, &b)| b + pad(a, b)).collect(),
    )
}

fn overlaps(lo: &[f64], hi: &[f64], blo: &[f64], bhi: &[f64]) -> bool {
    (0..lo.len()).all(|j| lo[j] <= bhi[j] && blo[j] <= hi[j])
}
