use std::collections::{HashMap, HashSet};

use super::SimplePolytope;

/// Searches for a facet bijection `σ` carrying the vertices of `p` onto the
/// vertices of `q`. Returns `σ` as `σ[i] =` image of facet `i`.
pub fn comb_iso(p: &SimplePolytope, q: &SimplePolytope) -> Option<Vec<usize>> {
    if p.dim != q.dim || p.facets != q.facets || p.vertices.len() != q.vertices.len() {
        return None;
    }
    let (cp, cq) = refine(p, q)?;
    let a = Incidence::new(p);
    let b = Incidence::new(q);
    let order = search_order(&a, &cp);
    let mut search = Search {
        a: &a,
        b: &b,
        cp: &cp,
        cq: &cq,
        order: &order,
        map: vec![usize::MAX; p.facets],
        used: vec![false; p.facets],
        assigned_on_vertex: vec![0; p.vertices.len()],
        dim: p.dim,
    };
    search.run(0).then_some(search.map)
}

struct Incidence<'a> {
    poly: &'a SimplePolytope,
    /// Vertices on each facet.
    on_facet: Vec<Vec<usize>>,
    /// Number of vertices shared by each pair of facets.
    common: Vec<Vec<u32>>,
    vertex_set: HashSet<&'a [usize]>,
}

impl<'a> Incidence<'a> {
    fn new(poly: &'a SimplePolytope) -> Self {
        let m = poly.facets;
        let mut on_facet = vec![Vec::new(); m];
        let mut common = vec![vec![0u32; m]; m];
        for (i, v) in poly.vertices.iter().enumerate() {
            for &f in v {
                on_facet[f].push(i);
                for &g in v {
                    common[f][g] += 1;
                }
            }
        }
        let vertex_set = poly.vertices.iter().map(Vec::as_slice).collect();
        Self {
            poly,
            on_facet,
            common,
            vertex_set,
        }
    }
}

/// Joint colour refinement of the facets of both polytopes. Colours are
/// interned in a shared table each round so they are comparable across the
/// two sides. Returns `None` as soon as the colour histograms differ.
fn refine(p: &SimplePolytope, q: &SimplePolytope) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut cp = vec![0usize; p.facets];
    let mut cq = vec![0usize; q.facets];
    let mut classes = 1;
    loop {
        let mut vtable: HashMap<Vec<usize>, usize> = HashMap::new();
        let vp = vertex_colours(p, &cp, &mut vtable);
        let vq = vertex_colours(q, &cq, &mut vtable);
        let mut ftable: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let np = facet_colours(p, &cp, &vp, &mut ftable);
        let nq = facet_colours(q, &cq, &vq, &mut ftable);
        if histogram(&np) != histogram(&nq) {
            return None;
        }
        cp = np;
        cq = nq;
        if ftable.len() == classes {
            return Some((cp, cq));
        }
        classes = ftable.len();
    }
}

fn vertex_colours(
    p: &SimplePolytope,
    facet_colour: &[usize],
    table: &mut HashMap<Vec<usize>, usize>,
) -> Vec<usize> {
    p.vertices
        .iter()
        .map(|v| {
            let mut sig: Vec<usize> = v.iter().map(|&f| facet_colour[f]).collect();
            sig.sort_unstable();
            let next = table.len();
            *table.entry(sig).or_insert(next)
        })
        .collect()
}

fn facet_colours(
    p: &SimplePolytope,
    facet_colour: &[usize],
    vertex_colour: &[usize],
    table: &mut HashMap<(usize, Vec<usize>), usize>,
) -> Vec<usize> {
    let mut sigs = vec![Vec::new(); p.facets];
    for (i, v) in p.vertices.iter().enumerate() {
        for &f in v {
            sigs[f].push(vertex_colour[i]);
        }
    }
    sigs.into_iter()
        .enumerate()
        .map(|(f, mut sig)| {
            sig.sort_unstable();
            let next = table.len();
            *table.entry((facet_colour[f], sig)).or_insert(next)
        })
        .collect()
}

fn histogram(colours: &[usize]) -> Vec<(usize, usize)> {
    let mut h: HashMap<usize, usize> = HashMap::new();
    for &c in colours {
        *h.entry(c).or_default() += 1;
    }
    let mut h: Vec<_> = h.into_iter().collect();
    h.sort_unstable();
    h
}

/// Smallest colour classes first, then facets sharing the most vertices with
/// those already placed.
fn search_order(a: &Incidence<'_>, colours: &[usize]) -> Vec<usize> {
    let m = colours.len();
    let mut class_size: HashMap<usize, usize> = HashMap::new();
    for &c in colours {
        *class_size.entry(c).or_default() += 1;
    }
    let mut placed = vec![false; m];
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let next = (0..m)
            .filter(|&f| !placed[f])
            .min_by_key(|&f| {
                let touch: u32 = order.iter().map(|&g: &usize| a.common[f][g]).sum();
                (class_size[&colours[f]], std::cmp::Reverse(touch), f)
            })
            .expect("an unplaced facet remains");
        placed[next] = true;
        order.push(next);
    }
    order
}

struct Search<'s, 'a> {
    a: &'s Incidence<'a>,
    b: &'s Incidence<'a>,
    cp: &'s [usize],
    cq: &'s [usize],
    order: &'s [usize],
    map: Vec<usize>,
    used: Vec<bool>,
    assigned_on_vertex: Vec<usize>,
    dim: usize,
}

impl Search<'_, '_> {
    fn run(&mut self, depth: usize) -> bool {
        let Some(&f) = self.order.get(depth) else {
            return true;
        };
        for g in 0..self.map.len() {
            if self.used[g] || self.cp[f] != self.cq[g] || !self.compatible(f, g, depth) {
                continue;
            }
            self.map[f] = g;
            self.used[g] = true;
            if self.complete_vertices_ok(f) && self.run(depth + 1) {
                return true;
            }
            self.undo(f);
            self.map[f] = usize::MAX;
            self.used[g] = false;
        }
        false
    }

    fn compatible(&self, f: usize, g: usize, depth: usize) -> bool {
        if self.a.common[f][f] != self.b.common[g][g] {
            return false;
        }
        self.order[..depth]
            .iter()
            .all(|&h| self.a.common[f][h] == self.b.common[g][self.map[h]])
    }

    /// Bumps the placed-facet count of each vertex on `f` and checks the image
    /// of every vertex whose facets are now all placed.
    fn complete_vertices_ok(&mut self, f: usize) -> bool {
        let mut ok = true;
        for &v in &self.a.on_facet[f] {
            self.assigned_on_vertex[v] += 1;
            if ok && self.assigned_on_vertex[v] == self.dim {
                let mut image: Vec<usize> = self.a.poly.vertices[v]
                    .iter()
                    .map(|&h| self.map[h])
                    .collect();
                image.sort_unstable();
                ok = self.b.vertex_set.contains(image.as_slice());
            }
        }
        ok
    }

    fn undo(&mut self, f: usize) {
        for &v in &self.a.on_facet[f] {
            self.assigned_on_vertex[v] -= 1;
        }
    }
}
