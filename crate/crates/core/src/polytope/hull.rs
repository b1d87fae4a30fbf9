//! Exact convex hulls by supporting-hyperplane enumeration (n <= 4).

use super::{affine_rank, dot, LatticePolytope};
use crate::error::Error;
use crate::Result;
use rug::{Integer, Rational};

/// Generalized cross product: a normal vector to the span of n-1
/// vectors in R^n, via cofactor expansion. Returns the zero vector if
/// the input is degenerate.
fn normal_vector(vectors: &[Vec<i64>], n: usize) -> Vec<Integer> {
    assert_eq!(vectors.len(), n - 1);
    let mut normal = vec![Integer::new(); n];
    for j in 0..n {
        // minor obtained by deleting column j
        let mut m: Vec<Vec<Integer>> = vec![];
        for v in vectors {
            let row: Vec<Integer> =
                (0..n).filter(|&c| c != j).map(|c| Integer::from(v[c])).collect();
            m.push(row);
        }
        let d = det(&m);
        normal[j] = if j % 2 == 0 { d } else { -d };
    }
    normal
}

fn det(m: &[Vec<Integer>]) -> Integer {
    let n = m.len();
    match n {
        0 => Integer::from(1),
        1 => m[0][0].clone(),
        2 => Integer::from(&m[0][0] * &m[1][1]) - Integer::from(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = Integer::new();
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let sub: Vec<Vec<Integer>> = m[1..]
                    .iter()
                    .map(|row| {
                        (0..n).filter(|&c| c != j).map(|c| row[c].clone()).collect()
                    })
                    .collect();
                let term = Integer::from(&m[0][j] * &det(&sub));
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

fn gcd_all(v: &[Integer]) -> Integer {
    let mut g = Integer::new();
    for x in v {
        g.gcd_mut(x);
    }
    g
}

/// Exact convex hull of an integral point set: vertices and primitive
/// facet inequalities <a, x> >= -c.
pub fn convex_hull(dim: usize, points: &[Vec<i64>]) -> Result<LatticePolytope> {
    if points.is_empty() {
        return Err(Error::DegenerateSupport("no points".into()));
    }
    for p in points {
        if p.len() != dim {
            return Err(Error::InvalidArgument("point dimension mismatch".into()));
        }
    }
    if affine_rank(points) != dim {
        return Err(Error::DegenerateSupport(format!(
            "points span affine dimension {} < {}",
            affine_rank(points),
            dim
        )));
    }
    let mut pts: Vec<Vec<i64>> = points.to_vec();
    pts.sort();
    pts.dedup();

    let mut facets: Vec<(Vec<i64>, i64)> = vec![];
    let idxs: Vec<usize> = (0..pts.len()).collect();
    // iterate over (dim)-subsets; dim <= 4 and point counts are small
    let mut subset = vec![0usize; dim];
    subsets(&idxs, dim, &mut subset, 0, 0, &mut |chosen: &[usize]| {
        let base = &pts[chosen[0]];
        let vecs: Vec<Vec<i64>> = chosen[1..]
            .iter()
            .map(|&i| pts[i].iter().zip(base.iter()).map(|(a, b)| a - b).collect())
            .collect();
        let nrm = normal_vector(&vecs, dim);
        if nrm.iter().all(|x| *x == 0) {
            return;
        }
        let g = gcd_all(&nrm);
        let nrm: Vec<i64> = nrm
            .iter()
            .map(|x| Integer::from(x / &g).to_i64().expect("normal overflow"))
            .collect();
        let h = dot(&nrm, base);
        let mut pos = false;
        let mut neg = false;
        for p in &pts {
            let v = dot(&nrm, p) - h;
            if v > 0 {
                pos = true;
            }
            if v < 0 {
                neg = true;
            }
            if pos && neg {
                return;
            }
        }
        // supporting hyperplane: orient inward
        let (a, c) = if neg {
            (nrm.iter().map(|x| -x).collect::<Vec<i64>>(), h)
        } else {
            (nrm, -h)
        };
        if !facets.contains(&(a.clone(), c)) {
            facets.push((a, c));
        }
    });

    // vertices: points where the active facet normals span R^n
    let mut vertices = vec![];
    for p in &pts {
        let active: Vec<&Vec<i64>> = facets
            .iter()
            .filter(|(a, c)| dot(a, p) == -c)
            .map(|(a, _)| a)
            .collect();
        if active.len() >= dim {
            let rows: Vec<Vec<i64>> = active.iter().map(|a| (*a).clone()).collect();
            if super::lattice::rank(&rows) == dim {
                vertices.push(p.clone());
            }
        }
    }
    vertices.sort();
    facets.sort();
    Ok(LatticePolytope { dim, vertices, facets })
}

fn subsets<F: FnMut(&[usize])>(
    idxs: &[usize],
    k: usize,
    cur: &mut Vec<usize>,
    depth: usize,
    start: usize,
    f: &mut F,
) {
    if depth == k {
        f(cur);
        return;
    }
    for i in start..idxs.len() {
        cur[depth] = idxs[i];
        subsets(idxs, k, cur, depth + 1, i + 1, f);
    }
}

/// A polytope with rational vertices (e.g. a polar dual). Facet
/// inequalities use primitive integer normals with rational offsets.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalPolytope {
    pub dim: usize,
    pub vertices: Vec<Vec<Rational>>,
    pub facets: Vec<(Vec<i64>, Rational)>,
}

impl RationalPolytope {
    pub fn from_points(dim: usize, points: &[Vec<Rational>]) -> Result<RationalPolytope> {
        // scale to integers
        let mut den = Integer::from(1);
        for p in points {
            for c in p {
                den.lcm_mut(&c.denom().clone());
            }
        }
        let scaled: Vec<Vec<i64>> = points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|c| {
                        Rational::from(c * Rational::from(&den))
                            .numer()
                            .to_i64()
                            .expect("scaled coordinate overflow")
                    })
                    .collect()
            })
            .collect();
        let hull = convex_hull(dim, &scaled)?;
        let denq = Rational::from(&den);
        let vertices = hull
            .vertices
            .iter()
            .map(|v| v.iter().map(|&x| Rational::from(x) / denq.clone()).collect())
            .collect();
        let facets = hull
            .facets
            .iter()
            .map(|(a, c)| (a.clone(), Rational::from(*c) / denq.clone()))
            .collect();
        Ok(RationalPolytope { dim, vertices, facets })
    }

    pub fn origin_interior(&self) -> bool {
        self.facets.iter().all(|(_, c)| *c > 0)
    }

    /// Polar dual with exact rational vertices.
    pub fn polar_dual(&self) -> Result<RationalPolytope> {
        if !self.origin_interior() {
            return Err(Error::OriginNotInterior);
        }
        let verts: Vec<Vec<Rational>> = self
            .facets
            .iter()
            .map(|(a, c)| a.iter().map(|&ai| Rational::from(ai) / c.clone()).collect())
            .collect();
        RationalPolytope::from_points(self.dim, &verts)
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(|v| v.iter().all(|c| c.is_integer()))
    }

    pub fn to_integral(&self) -> Result<LatticePolytope> {
        if !self.is_integral() {
            return Err(Error::InvalidArgument("polytope has non-integral vertices".into()));
        }
        let pts: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|c| c.numer().to_i64().unwrap()).collect())
            .collect();
        convex_hull(self.dim, &pts)
    }
}
