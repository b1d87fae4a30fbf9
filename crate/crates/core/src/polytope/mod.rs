//! Exact lattice-polytope machinery: Newton polytopes, polar duals,
//! reflexivity, face lattices, face polynomials and the tempered
//! sufficient conditions.
//!
//! All geometry is exact rational; hulls are computed by brute-force
//! supporting-hyperplane enumeration, which is ample for the tiny
//! inputs here (n <= 4, at most a few dozen vertices).

mod hull;
mod lattice;
mod tempered;

pub use hull::{convex_hull, RationalPolytope};
pub use lattice::{hnf_row, integer_kernel, saturated_basis};
pub use tempered::{classify_facet_polygon, edge_lattice_length, facet_point_stats, is_cyclotomic, tempered_report, EdgeVerdict, FacetClass, FacetReport, TemperedReport, TemperedVerdict};

use crate::error::Error;
use crate::laurent::{solve_integer_combination, Laurent};
use crate::Result;
use rug::Rational;

/// An integral polytope with both V- and H-representations.
///
/// Facet inequalities are (a, c) meaning <a, x> >= -c with primitive a.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticePolytope {
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    pub facets: Vec<(Vec<i64>, i64)>,
}

/// A face of codimension `codim`, carrying an affine lattice basis of
/// its direction space and a chosen origin (the lexicographically
/// smallest lattice point of the face).
#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    pub codim: usize,
    /// Indices into the parent polytope's vertex list.
    pub vertex_indices: Vec<usize>,
    pub vertices: Vec<Vec<i64>>,
    /// Basis of the saturated direction lattice R_sigma cap Z^n.
    pub basis: Vec<Vec<i64>>,
    /// Chosen origin o_sigma.
    pub origin: Vec<i64>,
    /// Indices of the facets of the parent polytope containing the face.
    pub active_facets: Vec<usize>,
}

impl LatticePolytope {
    /// Builds a polytope from a point set (its convex hull).
    pub fn from_points(dim: usize, points: &[Vec<i64>]) -> Result<LatticePolytope> {
        hull::convex_hull(dim, points)
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.facets.iter().all(|(a, c)| dot(a, p) >= -c)
    }

    pub fn contains_strictly(&self, p: &[i64]) -> bool {
        self.facets.iter().all(|(a, c)| dot(a, p) > -c)
    }

    /// All lattice points of the polytope (bounding-box scan).
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        let n = self.dim;
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for v in &self.vertices {
            for i in 0..n {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        let mut out = vec![];
        let mut p = lo.clone();
        'outer: loop {
            if self.contains(&p) {
                out.push(p.clone());
            }
            for i in 0..n {
                p[i] += 1;
                if p[i] <= hi[i] {
                    continue 'outer;
                }
                p[i] = lo[i];
            }
            break;
        }
        out
    }

    /// Whether the origin is strictly interior.
    pub fn origin_interior(&self) -> bool {
        self.facets.iter().all(|(_, c)| *c > 0)
    }

    /// Reflexivity: the origin is interior and every facet has lattice
    /// distance one (offset c = 1 with primitive normal), equivalently
    /// the polar dual is integral.
    pub fn is_reflexive(&self) -> Result<bool> {
        if !self.origin_interior() {
            return Err(Error::OriginNotInterior);
        }
        Ok(self.facets.iter().all(|(_, c)| *c == 1))
    }

    /// The polar dual {y : <y, x> >= -1 for all x in P} with exact
    /// rational vertices. Requires the origin strictly interior.
    pub fn polar_dual(&self) -> Result<RationalPolytope> {
        if !self.origin_interior() {
            return Err(Error::OriginNotInterior);
        }
        // vertices of the dual <-> facets of the primal: y = a / c
        let verts: Vec<Vec<Rational>> = self
            .facets
            .iter()
            .map(|(a, c)| a.iter().map(|&ai| Rational::from((ai, *c))).collect())
            .collect();
        RationalPolytope::from_points(self.dim, &verts)
    }

    /// Complete list of faces of the given codimension (1 <= codim <= n).
    /// Codimension n faces are the vertices.
    pub fn faces(&self, codim: usize) -> Result<Vec<Face>> {
        if codim < 1 || codim > self.dim {
            return Err(Error::InvalidArgument(format!(
                "codim {} out of range 1..{}",
                codim, self.dim
            )));
        }
        // Enumerate candidate faces as intersections of facet subsets:
        // collect distinct vertex sets obtained by intersecting k facets.
        let mut found: Vec<Face> = vec![];
        let mut seen: Vec<Vec<usize>> = vec![];
        // iterate over subsets of facets of size up to codim (grow by rank)
        let facet_count = self.facets.len();
        let mut stack: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![], (0..self.vertices.len()).collect())];
        // BFS over facet subsets, tracking vertex sets; prune duplicates
        let mut layer = stack.clone();
        for _depth in 0..codim {
            let mut next = vec![];
            for (fs, vs) in &layer {
                let start = fs.last().map(|&x| x + 1).unwrap_or(0);
                for f in start..facet_count {
                    let (a, c) = &self.facets[f];
                    let nvs: Vec<usize> = vs
                        .iter()
                        .copied()
                        .filter(|&vi| dot(a, &self.vertices[vi]) == -c)
                        .collect();
                    if nvs.is_empty() {
                        continue;
                    }
                    let mut nfs = fs.clone();
                    nfs.push(f);
                    next.push((nfs, nvs));
                }
            }
            layer = next;
        }
        stack = layer;
        for (_fs, vs) in stack {
            let verts: Vec<Vec<i64>> = vs.iter().map(|&i| self.vertices[i].clone()).collect();
            // the affine rank must be dim - codim
            let rank = affine_rank(&verts);
            if rank != self.dim - codim {
                continue;
            }
            if seen.contains(&vs) {
                continue;
            }
            seen.push(vs.clone());
            found.push(self.make_face(codim, vs)?);
        }
        found.sort_by(|a, b| a.vertex_indices.cmp(&b.vertex_indices));
        Ok(found)
    }

    fn make_face(&self, codim: usize, vertex_indices: Vec<usize>) -> Result<Face> {
        let verts: Vec<Vec<i64>> = vertex_indices.iter().map(|&i| self.vertices[i].clone()).collect();
        // saturated lattice basis of the direction space
        let diffs: Vec<Vec<i64>> = verts[1..]
            .iter()
            .map(|v| v.iter().zip(verts[0].iter()).map(|(a, b)| a - b).collect())
            .collect();
        let basis = lattice::saturated_basis(&diffs, self.dim);
        // active facets
        let active_facets: Vec<usize> = self
            .facets
            .iter()
            .enumerate()
            .filter(|(_, (a, c))| verts.iter().all(|v| dot(a, v) == -c))
            .map(|(i, _)| i)
            .collect();
        // origin: lexicographically smallest lattice point of the face
        let pts = self.face_lattice_points(&verts, &active_facets);
        let origin = pts
            .iter()
            .min()
            .cloned()
            .ok_or_else(|| Error::Numeric("face has no lattice points".into()))?;
        Ok(Face { codim, vertex_indices, vertices: verts, basis, origin, active_facets })
    }

    /// Lattice points of a face given its vertices and active facets.
    pub fn face_lattice_points(&self, verts: &[Vec<i64>], active: &[usize]) -> Vec<Vec<i64>> {
        let n = self.dim;
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for v in verts {
            for i in 0..n {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        let mut out = vec![];
        let mut p = lo.clone();
        'outer: loop {
            if self.contains(&p)
                && active.iter().all(|&f| {
                    let (a, c) = &self.facets[f];
                    dot(a, &p) == -c
                })
            {
                out.push(p.clone());
            }
            for i in 0..n {
                p[i] += 1;
                if p[i] <= hi[i] {
                    continue 'outer;
                }
                p[i] = lo[i];
            }
            break;
        }
        out
    }

    /// Lattice points of a face object.
    pub fn points_of_face(&self, face: &Face) -> Vec<Vec<i64>> {
        self.face_lattice_points(&face.vertices, &face.active_facets)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "dim": self.dim, "vertices": self.vertices })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<LatticePolytope> {
        let dim = v["dim"].as_u64().ok_or_else(|| Error::Parse("missing dim".into()))? as usize;
        let verts = v["vertices"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing vertices".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .map(|r| r.iter().map(|x| x.as_i64().unwrap_or(0)).collect::<Vec<i64>>())
                    .ok_or_else(|| Error::Parse("bad vertex".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        LatticePolytope::from_points(dim, &verts)
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

pub fn affine_rank(points: &[Vec<i64>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|v| v.iter().zip(points[0].iter()).map(|(a, b)| a - b).collect())
        .collect();
    lattice::rank(&diffs)
}

/// Newton polytope of a Laurent polynomial: the convex hull of its
/// support. Errors with `DegenerateSupport` if the hull is not
/// full-dimensional.
pub fn newton_polytope(phi: &Laurent) -> Result<LatticePolytope> {
    let supp = phi.support();
    if supp.is_empty() {
        return Err(Error::DegenerateSupport("empty support".into()));
    }
    if affine_rank(&supp) != phi.nvars {
        return Err(Error::DegenerateSupport(format!(
            "support spans affine dimension {} < {}",
            affine_rank(&supp),
            phi.nvars
        )));
    }
    LatticePolytope::from_points(phi.nvars, &supp)
}

/// The face polynomial phi_sigma: translate by x^{-o_sigma}, rewrite in
/// the face's lattice coordinates, and restrict to the face.
pub fn face_polynomial(phi: &Laurent, face: &Face, newton: &LatticePolytope) -> Result<Laurent> {
    // restrict support to the face
    let mut restricted = Laurent::zero(phi.nvars);
    for (e, c) in &phi.terms {
        let on_face = face.active_facets.iter().all(|&f| {
            let (a, cc) = &newton.facets[f];
            dot(a, e) == -cc
        }) && newton.contains(e);
        if on_face {
            restricted.add_assign_term(e.clone(), c);
        }
    }
    if restricted.is_zero() {
        return Err(Error::FaceNotOfNewtonPolytope);
    }
    // sanity: every restricted exponent must lie in origin + span(basis)
    for e in restricted.support() {
        let diff: Vec<i64> = e.iter().zip(face.origin.iter()).map(|(a, b)| a - b).collect();
        if solve_integer_combination(&face.basis, &diff).is_none() {
            return Err(Error::FaceNotOfNewtonPolytope);
        }
    }
    restricted.change_lattice_coords(&face.origin, &face.basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_laurent;

    fn tri() -> LatticePolytope {
        LatticePolytope::from_points(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap()
    }

    fn square() -> LatticePolytope {
        LatticePolytope::from_points(
            2,
            &[vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]],
        )
        .unwrap()
    }

    #[test]
    fn newton_polytope_of_examples() {
        let phi = parse_laurent("x+y+x^-1*y^-1").unwrap();
        let np = newton_polytope(&phi).unwrap();
        assert_eq!(np, tri());

        let phi2 = parse_laurent("(x-1)^2*(y-1)^2*x^-1*y^-1").unwrap();
        let np2 = newton_polytope(&phi2).unwrap();
        assert_eq!(np2, square());

        let degenerate = parse_laurent("x+y").unwrap();
        assert!(matches!(newton_polytope(&degenerate), Err(Error::DegenerateSupport(_))));
    }

    #[test]
    fn polar_dual_triangle() {
        let d = tri().polar_dual().unwrap();
        let mut vs: Vec<Vec<Rational>> = d.vertices.clone();
        vs.sort();
        let expect: Vec<Vec<Rational>> = vec![
            vec![Rational::from(-1), Rational::from(-1)],
            vec![Rational::from(-1), Rational::from(2)],
            vec![Rational::from(2), Rational::from(-1)],
        ];
        assert_eq!(vs, expect);
    }

    #[test]
    fn polar_dual_square() {
        let d = square().polar_dual().unwrap();
        let mut vs = d.vertices.clone();
        vs.sort();
        let expect: Vec<Vec<Rational>> = vec![
            vec![Rational::from(-1), Rational::from(0)],
            vec![Rational::from(0), Rational::from(-1)],
            vec![Rational::from(0), Rational::from(1)],
            vec![Rational::from(1), Rational::from(0)],
        ];
        assert_eq!(vs, expect);
    }

    #[test]
    fn polar_dual_requires_interior_origin() {
        let p = LatticePolytope::from_points(2, &[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        assert!(matches!(p.polar_dual(), Err(Error::OriginNotInterior)));
    }

    #[test]
    fn reflexivity() {
        assert!(tri().is_reflexive().unwrap());
        assert!(square().is_reflexive().unwrap());
        let big =
            LatticePolytope::from_points(2, &[vec![2, 0], vec![0, 2], vec![-2, -2]]).unwrap();
        assert!(!big.is_reflexive().unwrap());
    }

    #[test]
    fn dual_of_dual_is_identity() {
        for p in [tri(), square()] {
            let dd = p.polar_dual().unwrap().polar_dual().unwrap();
            let back = dd.to_integral().unwrap();
            let mut v1 = p.vertices.clone();
            v1.sort();
            let mut v2 = back.vertices.clone();
            v2.sort();
            assert_eq!(v1, v2);
        }
    }

    #[test]
    fn face_counts() {
        assert_eq!(square().faces(1).unwrap().len(), 4);
        assert_eq!(tri().faces(2).unwrap().len(), 3);
        // quintic 4-simplex: 5 facets
        let quintic = LatticePolytope::from_points(
            4,
            &[
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1],
                vec![-1, -1, -1, -1],
            ],
        )
        .unwrap();
        assert_eq!(quintic.faces(1).unwrap().len(), 5);
        assert!(quintic.is_reflexive().unwrap());
    }

    #[test]
    fn face_polynomial_examples() {
        // box edge: (u-1)^2 up to unit
        let phi = parse_laurent("(x-1)^2*(y-1)^2*x^-1*y^-1").unwrap();
        let np = newton_polytope(&phi).unwrap();
        let edges = np.faces(1).unwrap();
        // pick the edge with x-exponent +1 on all vertices
        let edge = edges
            .iter()
            .find(|f| f.vertices.iter().all(|v| v[0] == 1))
            .expect("edge x=1");
        let fp = face_polynomial(&phi, edge, &np).unwrap();
        let coeffs = fp.univariate_coeffs().unwrap();
        // (u-1)^2 = 1 - 2u + u^2 up to reversal/unit
        let ints: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
        assert_eq!(ints, vec!["1", "-2", "1"]);

        // vertex of the triangle: unit monomial
        let tri_phi = parse_laurent("x+y+x^-1*y^-1").unwrap();
        let tnp = newton_polytope(&tri_phi).unwrap();
        let verts = tnp.faces(2).unwrap();
        let vp = face_polynomial(&tri_phi, &verts[0], &tnp).unwrap();
        assert_eq!(vp.terms.len(), 1);

        // quartic 3-simplex facet: 1 + u + v up to unit
        let p3 = parse_laurent("x+y+z+x^-1*y^-1*z^-1").unwrap();
        let np3 = newton_polytope(&p3).unwrap();
        let facets = np3.faces(1).unwrap();
        let f0 = &facets[0];
        let fp3 = face_polynomial(&p3, f0, &np3).unwrap();
        assert_eq!(fp3.terms.len(), 3);
        for (_, c) in &fp3.terms {
            assert_eq!(c.clone(), crate::cyclotomic::CycNum::one());
        }
    }

    #[test]
    fn face_polynomial_rejects_non_face() {
        let phi = parse_laurent("(x-1)^2*(y-1)^2*x^-1*y^-1").unwrap();
        let np = newton_polytope(&phi).unwrap();
        let other = parse_laurent("x+y+x^-1*y^-1").unwrap();
        let onp = newton_polytope(&other).unwrap();
        let edge = &onp.faces(1).unwrap()[0];
        assert!(face_polynomial(&phi, edge, &np).is_err());
    }

    #[test]
    fn basis_invariance_of_face_polynomial() {
        // recompute an edge polynomial with a flipped basis: root multisets
        // agree after dehomogenization (here: same up to reversal)
        let phi = parse_laurent("(x-1)^2*(y-1)^2*x^-1*y^-1").unwrap();
        let np = newton_polytope(&phi).unwrap();
        let edge = np.faces(1).unwrap()[0].clone();
        let fp1 = face_polynomial(&phi, &edge, &np).unwrap();
        let mut edge2 = edge.clone();
        edge2.basis = vec![edge.basis[0].iter().map(|x| -x).collect()];
        let fp2 = face_polynomial(&phi, &edge2, &np).unwrap();
        let c1 = fp1.univariate_coeffs().unwrap();
        let mut c2 = fp2.univariate_coeffs().unwrap();
        c2.reverse();
        assert_eq!(c1, c2);
    }
}
