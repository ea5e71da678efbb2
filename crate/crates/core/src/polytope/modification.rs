use num_bigint::BigInt;

use super::{comb_iso, ChiAb, SimplePolytope};
use crate::error::{Error, Result};
use crate::milnor::s_kn;
use crate::planner::ModificationPlan;

fn check_k(n: usize, k: usize) -> Result<()> {
    if n < 2 || k + 2 > n {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as i64,
            lo: 0,
            hi: n as i64 - 2,
        });
    }
    Ok(())
}

/// Facets cutting out the smallest face through the given vertices.
fn spanned_face(p: &SimplePolytope, vertices: &[usize]) -> Vec<usize> {
    let (first, rest) = vertices.split_first().expect("at least one vertex");
    p.vertices[*first]
        .iter()
        .copied()
        .filter(|f| rest.iter().all(|&v| p.vertices[v].binary_search(f).is_ok()))
        .collect()
}

/// Splits the vertices of the simplex facet `g` of `cut` into its first
/// `k + 1` and its remaining `n - k - 1` (canonical order) and returns the
/// defining facets of the faces `Δ^k` and `Δ^{n-k-2}` they span.
pub fn complementary_faces(
    cut: &SimplePolytope,
    g: usize,
    k: usize,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = cut.dim;
    check_k(n, k)?;
    let on_g = cut.facet_vertices(g);
    if on_g.len() != n {
        return Err(Error::InvalidFace(format!(
            "facet {g} has {} vertices, not those of an (n-1)-simplex",
            on_g.len()
        )));
    }
    let (s1, s2) = on_g.split_at(k + 1);
    Ok((spanned_face(cut, s1), spanned_face(cut, s2)))
}

/// Cuts vertex `v`, then checks that truncating either of the two
/// complementary faces of the new simplex facet gives the same combinatorial
/// type.
pub fn verify_complementary_equiv(p: &SimplePolytope, v: usize, k: usize) -> Result<bool> {
    check_k(p.dim, k)?;
    let cut = p.cut_vertex(v)?;
    let (s1, s2) = complementary_faces(&cut, p.facets, k)?;
    let a = cut.cut_face(&s1)?;
    let b = cut.cut_face(&s2)?;
    Ok(comb_iso(&a, &b).is_some())
}

/// Moment-polytope shadow of `B_k`: cut vertex 0, then cut the `k`-face of
/// the new simplex facet spanned by its first `k + 1` vertices.
pub fn modification_b(p: &SimplePolytope, k: usize) -> Result<SimplePolytope> {
    check_k(p.dim, k)?;
    let cut = p.cut_vertex(0)?;
    let (s1, _) = complementary_faces(&cut, p.facets, k)?;
    cut.cut_face(&s1)
}

/// Runs a plan on `Δ^1 × Δ^1 × Δ^{n-2}`, applying `B_k` `counts[k]` times for
/// increasing `k`.
pub fn apply_plan(plan: &ModificationPlan) -> Result<SimplePolytope> {
    let n = plan.n as usize;
    if n < 3 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            lo: 3,
            hi: i64::MAX,
        });
    }
    if plan.counts.len() != n - 1 {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            found: plan.counts.len(),
        });
    }
    let mut p = SimplePolytope::simplex_product(&[1, 1, n - 2])?;
    for (k, &count) in plan.counts.iter().enumerate() {
        for _ in 0..count {
            p = modification_b(&p, k)?;
        }
    }
    Ok(p)
}

/// `B_0(Δ^n)` against `B_{n-2}(Δ^n)`: same combinatorial type, different
/// Milnor-number changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityReport {
    pub n: u32,
    pub iso: Option<Vec<usize>>,
    pub h_b0: Vec<i64>,
    pub h_bn2: Vec<i64>,
    pub chi_b0: ChiAb,
    pub chi_bn2: ChiAb,
    pub vertices_b0: usize,
    pub vertices_bn2: usize,
    pub delta_b0: BigInt,
    pub delta_bn2: BigInt,
}

impl RigidityReport {
    pub fn holds(&self) -> bool {
        self.iso.is_some()
            && self.h_b0 == self.h_bn2
            && self.chi_b0 == self.chi_bn2
            && self.vertices_b0 == self.vertices_bn2
            && self.delta_b0 != self.delta_bn2
    }
}

pub fn rigidity_demo(n: u32) -> Result<RigidityReport> {
    if n < 3 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            lo: 3,
            hi: i64::MAX,
        });
    }
    let simplex = SimplePolytope::simplex(n as usize);
    let b0 = modification_b(&simplex, 0)?;
    let bn2 = modification_b(&simplex, n as usize - 2)?;
    Ok(RigidityReport {
        n,
        iso: comb_iso(&b0, &bn2),
        h_b0: b0.h_vector(),
        h_bn2: bn2.h_vector(),
        chi_b0: b0.chi_ab(),
        chi_bn2: bn2.chi_ab(),
        vertices_b0: b0.vertex_count(),
        vertices_bn2: bn2.vertex_count(),
        delta_b0: s_kn(n, 0)?,
        delta_bn2: s_kn(n, n - 2)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_tetrahedron_faces() {
        let cut = SimplePolytope::simplex(3).cut_vertex(0).unwrap();
        assert_eq!((cut.facet_count(), cut.vertex_count()), (5, 6));
        let (s1, s2) = complementary_faces(&cut, 4, 0).unwrap();
        assert_eq!(s1.len(), 3);
        assert_eq!(s2.len(), 2);
        let a = cut.cut_face(&s1).unwrap();
        let b = cut.cut_face(&s2).unwrap();
        assert_eq!((a.facet_count(), a.vertex_count()), (6, 8));
        assert_eq!((b.facet_count(), b.vertex_count()), (6, 8));
        assert!(comb_iso(&a, &b).is_some());
    }

    #[test]
    fn complementary_faces_are_disjoint() {
        for n in 2..=6 {
            let cut = SimplePolytope::simplex(n).cut_vertex(0).unwrap();
            for k in 0..=n - 2 {
                let (s1, s2) = complementary_faces(&cut, n + 1, k).unwrap();
                assert_eq!(s1.len(), n - k);
                assert_eq!(s2.len(), k + 2);
                let f1 = cut.face(&s1).unwrap();
                let f2 = cut.face(&s2).unwrap();
                assert_eq!(f1.vertex_set.len(), k + 1);
                assert_eq!(f2.vertex_set.len(), n - k - 1);
                assert!(f1.vertex_set.iter().all(|v| !f2.vertex_set.contains(v)));
            }
        }
    }

    #[test]
    fn equivalence_on_small_simplices_and_cubes() {
        for p in [
            SimplePolytope::simplex(3),
            SimplePolytope::simplex(4),
            SimplePolytope::simplex_product(&[1, 1, 1]).unwrap(),
            SimplePolytope::simplex_product(&[1, 1, 2]).unwrap(),
        ] {
            for k in 0..=p.dim() - 2 {
                for v in 0..p.vertex_count() {
                    assert!(
                        verify_complementary_equiv(&p, v, k).unwrap(),
                        "{p:?} v={v} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn non_complementary_pair_can_fail() {
        // Two faces of G that share a vertex: an edge and one of its endpoints
        // give polytopes with different vertex counts.
        let cut = SimplePolytope::simplex(4).cut_vertex(0).unwrap();
        let on_g = cut.facet_vertices(5);
        let edge = spanned_face(&cut, &on_g[..2]);
        let point = spanned_face(&cut, &on_g[..1]);
        let a = cut.cut_face(&edge).unwrap();
        let b = cut.cut_face(&point).unwrap();
        assert!(comb_iso(&a, &b).is_none());
    }

    #[test]
    fn modification_vertex_counts() {
        for n in 3..=6usize {
            let s = SimplePolytope::simplex(n);
            for k in 0..=n - 2 {
                let b = modification_b(&s, k).unwrap();
                b.validate().unwrap();
                // Cutting a vertex adds n-1; cutting Δ^k of codim n-k adds (k+1)(n-k-1).
                assert_eq!(b.vertex_count(), n + 1 + n - 1 + (k + 1) * (n - k - 1));
                assert_eq!(b.facet_count(), n + 3);
            }
        }
        assert!(modification_b(&SimplePolytope::simplex(3), 2).is_err());
    }

    #[test]
    fn rigidity_for_small_n() {
        for n in 3..=6 {
            let r = rigidity_demo(n).unwrap();
            assert!(r.holds(), "{r:?}");
            let h = &r.h_b0;
            assert!(h.iter().eq(h.iter().rev()));
        }
        assert!(rigidity_demo(2).is_err());
    }

    #[test]
    fn plans_run_on_the_product() {
        let plan = ModificationPlan::from_counts(4, 1, vec![1, 0, 2]).unwrap();
        let p = apply_plan(&plan).unwrap();
        p.validate().unwrap();
        assert_eq!(p.facet_count(), 7 + 2 * 3);
        let h = p.h_vector();
        assert!(h.iter().eq(h.iter().rev()));
    }

    #[test]
    fn small_plans() {
        let zero = ModificationPlan::from_counts(4, 1, vec![0, 0, 0]).unwrap();
        assert_eq!(
            apply_plan(&zero).unwrap(),
            SimplePolytope::simplex_product(&[1, 1, 2]).unwrap()
        );
        let one = ModificationPlan::from_counts(4, 1, vec![1, 0, 0]).unwrap();
        assert_eq!(apply_plan(&one).unwrap().vertex_count(), 12 + 3 + 3);
    }

    #[test]
    fn bad_k_is_rejected() {
        let s = SimplePolytope::simplex(4);
        assert!(matches!(
            verify_complementary_equiv(&s, 0, 3),
            Err(Error::OutOfRange { .. })
        ));
        assert!(verify_complementary_equiv(&s, 9, 0).is_err());
    }
}
