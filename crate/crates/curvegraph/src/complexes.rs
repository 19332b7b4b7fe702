//! Pure simplicial complexes given by facet lists, vertex links, and the
//! equivalence check between thick stars of the one-skeleton and vertex
//! link sizes for proper triangulations.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("complex has no facets")]
    Empty,
    #[error("complex is not pure: facet sizes {0} and {1} differ")]
    NotPure(usize, usize),
    #[error("facet contains a repeated vertex")]
    DegenerateFacet,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
}

/// Pure simplicial complex stored as its facet list. Faces are derived, not
/// stored. Duplicate facet entries are allowed; they encode degenerate
/// gluings (two top cells with the same vertex set) and fail properness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<BTreeSet<u32>>,
}

impl SimplicialComplex {
    pub fn new<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<SimplicialComplex, ComplexError> {
        if facets.is_empty() {
            return Err(ComplexError::Empty);
        }
        let mut vertices: Vec<String> = facets
            .iter()
            .flat_map(|f| f.iter().map(|v| v.as_ref().to_owned()))
            .collect();
        vertices.sort();
        vertices.dedup();
        let index: BTreeMap<&str, u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i as u32))
            .collect();
        let size = facets[0].len();
        let mut sets = Vec::with_capacity(facets.len());
        for f in facets {
            if f.len() != size {
                return Err(ComplexError::NotPure(size, f.len()));
            }
            let set: BTreeSet<u32> = f.iter().map(|v| index[v.as_ref()]).collect();
            if set.len() != size {
                return Err(ComplexError::DegenerateFacet);
            }
            sets.push(set);
        }
        sets.sort();
        Ok(SimplicialComplex {
            vertices,
            facets: sets,
        })
    }

    pub fn from_json(text: &str) -> Result<SimplicialComplex, ComplexError> {
        let file: ComplexFile = serde_json::from_str(text).map_err(|_| ComplexError::Empty)?;
        SimplicialComplex::new(&file.facets)
    }

    pub fn to_json(&self) -> String {
        let facets: Vec<Vec<String>> = self
            .facets
            .iter()
            .map(|f| f.iter().map(|&v| self.vertices[v as usize].clone()).collect())
            .collect();
        serde_json::to_string_pretty(&ComplexFile { facets }).expect("serializes")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Number of vertices per facet; the dimension is one less.
    pub fn facet_size(&self) -> usize {
        self.facets[0].len()
    }

    pub fn facets(&self) -> impl Iterator<Item = Vec<&str>> {
        self.facets
            .iter()
            .map(|f| f.iter().map(|&v| self.vertices[v as usize].as_str()).collect())
    }

    /// Number of codimension-1 faces two facets share: the full count for a
    /// duplicated facet, one when the vertex sets differ in one element,
    /// zero otherwise.
    fn shared_codim1(&self, i: usize, j: usize) -> usize {
        let common = self.facets[i].intersection(&self.facets[j]).count();
        let k = self.facet_size();
        if common == k {
            k
        } else if common == k - 1 {
            1
        } else {
            0
        }
    }

    /// Size of the largest vertex-set intersection between facet entries.
    fn max_shared_vertices(&self) -> usize {
        let mut best = 0;
        for i in 0..self.facets.len() {
            for j in 0..i {
                best = best.max(self.facets[i].intersection(&self.facets[j]).count());
            }
        }
        best
    }

    /// Properness under the adopted reading: no two facet entries share
    /// more than one codimension-1 face.
    pub fn is_proper(&self) -> bool {
        self.proper_readings().codim1
    }

    /// The sentence "no two facets share more than one face" admits two
    /// readings; both are reported so corpus checks can show where they
    /// disagree (two triangles sharing an edge pass the first and fail the
    /// second).
    pub fn proper_readings(&self) -> ProperReadings {
        let mut codim1 = true;
        for i in 0..self.facets.len() {
            for j in 0..i {
                if self.shared_codim1(i, j) > 1 {
                    codim1 = false;
                }
            }
        }
        let any_dimension = self.max_shared_vertices() <= 1;
        ProperReadings {
            codim1,
            any_dimension,
        }
    }

    /// Link of a vertex: facets opposite `v` within the facets containing it.
    pub fn vertex_link(&self, v: &str) -> Result<SimplicialComplex, ComplexError> {
        let vi = self
            .vertices
            .iter()
            .position(|l| l == v)
            .ok_or_else(|| ComplexError::UnknownVertex(v.to_owned()))? as u32;
        let facets: Vec<Vec<&str>> = self
            .facets
            .iter()
            .filter(|f| f.contains(&vi))
            .map(|f| {
                f.iter()
                    .filter(|&&u| u != vi)
                    .map(|&u| self.vertices[u as usize].as_str())
                    .collect()
            })
            .collect();
        SimplicialComplex::new(&facets)
    }

    /// Graph on the complex's vertices with the 2-element faces as edges.
    pub fn one_skeleton(&self) -> Graph {
        let mut edges: BTreeSet<(String, String)> = BTreeSet::new();
        for f in &self.facets {
            let verts: Vec<&String> = f.iter().map(|&v| &self.vertices[v as usize]).collect();
            for i in 0..verts.len() {
                for j in i + 1..verts.len() {
                    let (a, b) = (verts[i].clone(), verts[j].clone());
                    edges.insert(if a <= b { (a, b) } else { (b, a) });
                }
            }
        }
        let edge_list: Vec<(String, String)> = edges.into_iter().collect();
        Graph::new(&self.vertices, &edge_list).expect("facet pairs are loop-free")
    }

    /// Every codimension-1 face lies in exactly two facets.
    fn is_closed_pseudomanifold(&self) -> bool {
        let mut counts: BTreeMap<BTreeSet<u32>, usize> = BTreeMap::new();
        for f in &self.facets {
            for &v in f {
                let mut ridge = f.clone();
                ridge.remove(&v);
                *counts.entry(ridge).or_insert(0) += 1;
            }
        }
        counts.values().all(|&c| c == 2)
    }

    /// Facet-adjacency connectivity (facets adjacent when they share a
    /// codimension-1 face).
    fn is_strongly_connected(&self) -> bool {
        let n = self.facets.len();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && self.shared_codim1(i, j) >= 1 {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProperReadings {
    /// At most one shared codimension-1 face per facet pair (adopted).
    pub codim1: bool,
    /// At most one shared face of any dimension, i.e. facet vertex sets
    /// meet in at most one vertex (alternative reading).
    pub any_dimension: bool,
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    facets: Vec<Vec<String>>,
}

/// Outcome of the thick-star/link-size comparison on one complex.
#[derive(Debug, Clone)]
pub struct PropositionReport {
    /// Violated preconditions, empty when the complex qualifies.
    pub precondition_failures: Vec<String>,
    pub readings: ProperReadings,
    /// Whether the one-skeleton has N-thick stars.
    pub thick_stars: bool,
    /// Whether every vertex link has at least N + 1 facets.
    pub links_large: bool,
    pub smallest_link: usize,
}

impl PropositionReport {
    pub fn equivalent(&self) -> bool {
        self.thick_stars == self.links_large
    }
}

/// Evaluates both sides of the equivalence "the one-skeleton has N-thick
/// stars iff every vertex link has at least N + 1 facets" on a proper
/// triangulation of a closed (N-1)-manifold. Precondition violations are
/// itemized, not fatal; the two sides are still computed.
pub fn check_proposition(k: &SimplicialComplex, n: usize) -> PropositionReport {
    let mut failures = Vec::new();
    if k.facet_size() != n {
        failures.push(format!(
            "facet size {} does not match N = {n}",
            k.facet_size()
        ));
    }
    let readings = k.proper_readings();
    if !readings.codim1 {
        failures.push("complex is not proper (codimension-1 reading)".to_owned());
    }
    if !k.is_closed_pseudomanifold() {
        failures.push("some codimension-1 face does not lie in exactly two facets".to_owned());
    }
    if !k.is_strongly_connected() {
        failures.push("facet adjacency graph is disconnected".to_owned());
    }
    let mut links_large = true;
    let mut smallest = usize::MAX;
    for v in k.vertices() {
        match k.vertex_link(v) {
            Ok(link) => {
                smallest = smallest.min(link.facet_count());
                if !link.is_strongly_connected() {
                    failures.push(format!("link of `{v}` is disconnected"));
                }
                if link.facet_count() < n + 1 {
                    links_large = false;
                }
            }
            Err(_) => failures.push(format!("vertex `{v}` lies in no facet")),
        }
    }
    PropositionReport {
        precondition_failures: failures,
        readings,
        thick_stars: k.one_skeleton().has_thick_stars(n),
        links_large,
        smallest_link: smallest,
    }
}

/// The fixed test corpus of closed triangulations.
pub mod corpus {
    use super::SimplicialComplex;

    fn build(facets: &[&[&str]]) -> SimplicialComplex {
        let lists: Vec<Vec<&str>> = facets.iter().map(|f| f.to_vec()).collect();
        SimplicialComplex::new(&lists).expect("corpus complexes are valid")
    }

    pub fn tetrahedron() -> SimplicialComplex {
        build(&[
            &["a", "b", "c"],
            &["a", "b", "d"],
            &["a", "c", "d"],
            &["b", "c", "d"],
        ])
    }

    pub fn octahedron() -> SimplicialComplex {
        // three antipodal pairs (u, u'), (v, v'), (w, w')
        build(&[
            &["u", "v", "w"],
            &["u", "v", "w'"],
            &["u", "v'", "w"],
            &["u", "v'", "w'"],
            &["u'", "v", "w"],
            &["u'", "v", "w'"],
            &["u'", "v'", "w"],
            &["u'", "v'", "w'"],
        ])
    }

    pub fn icosahedron() -> SimplicialComplex {
        // apex t, upper ring u1..u5, lower ring l1..l5, apex b
        build(&[
            &["t", "u1", "u2"],
            &["t", "u2", "u3"],
            &["t", "u3", "u4"],
            &["t", "u4", "u5"],
            &["t", "u5", "u1"],
            &["b", "l1", "l2"],
            &["b", "l2", "l3"],
            &["b", "l3", "l4"],
            &["b", "l4", "l5"],
            &["b", "l5", "l1"],
            &["u1", "u2", "l1"],
            &["u2", "u3", "l2"],
            &["u3", "u4", "l3"],
            &["u4", "u5", "l4"],
            &["u5", "u1", "l5"],
            &["l1", "l2", "u2"],
            &["l2", "l3", "u3"],
            &["l3", "l4", "u4"],
            &["l4", "l5", "u5"],
            &["l5", "l1", "u1"],
        ])
    }

    pub fn simplex4_boundary() -> SimplicialComplex {
        build(&[
            &["a", "b", "c", "d"],
            &["a", "b", "c", "e"],
            &["a", "b", "d", "e"],
            &["a", "c", "d", "e"],
            &["b", "c", "d", "e"],
        ])
    }

    /// The 7-vertex triangulated torus: facets {i, i+1, i+3} and
    /// {i, i+2, i+3} mod 7. Its one-skeleton is complete.
    pub fn torus7() -> SimplicialComplex {
        let mut facets: Vec<Vec<String>> = Vec::new();
        for i in 0..7u32 {
            facets.push(vec![
                format!("t{i}"),
                format!("t{}", (i + 1) % 7),
                format!("t{}", (i + 3) % 7),
            ]);
            facets.push(vec![
                format!("t{i}"),
                format!("t{}", (i + 2) % 7),
                format!("t{}", (i + 3) % 7),
            ]);
        }
        SimplicialComplex::new(&facets).expect("torus facets are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::corpus::*;
    use super::*;

    #[test]
    fn construction_and_errors() {
        assert_eq!(
            SimplicialComplex::new::<&str>(&[]),
            Err(ComplexError::Empty)
        );
        assert_eq!(
            SimplicialComplex::new(&[vec!["a", "b", "c"], vec!["a", "b"]]),
            Err(ComplexError::NotPure(3, 2))
        );
        assert_eq!(
            SimplicialComplex::new(&[vec!["a", "a", "b"]]),
            Err(ComplexError::DegenerateFacet)
        );
    }

    #[test]
    fn properness_readings() {
        assert!(tetrahedron().is_proper());
        assert!(octahedron().is_proper());
        // folded square: two triangles glued along two edges, encoded as a
        // duplicated facet entry
        let folded =
            SimplicialComplex::new(&[vec!["a", "b", "c"], vec!["a", "b", "c"]]).unwrap();
        assert!(!folded.is_proper());
        // the two readings disagree on a pair of triangles sharing an edge
        let pair = SimplicialComplex::new(&[vec!["a", "b", "c"], vec!["b", "c", "d"]]).unwrap();
        let readings = pair.proper_readings();
        assert!(readings.codim1);
        assert!(!readings.any_dimension);
        // and agree on a pair sharing only a vertex
        let pair = SimplicialComplex::new(&[vec!["a", "b", "c"], vec!["c", "d", "e"]]).unwrap();
        let readings = pair.proper_readings();
        assert!(readings.codim1);
        assert!(readings.any_dimension);
    }

    #[test]
    fn links() {
        let link = tetrahedron().vertex_link("a").unwrap();
        assert_eq!(link.facet_count(), 3);
        assert_eq!(link.facet_size(), 2);
        let link = octahedron().vertex_link("u").unwrap();
        assert_eq!(link.facet_count(), 4);
        let link = icosahedron().vertex_link("t").unwrap();
        assert_eq!(link.facet_count(), 5);
        assert!(matches!(
            tetrahedron().vertex_link("z"),
            Err(ComplexError::UnknownVertex(_))
        ));
    }

    #[test]
    fn skeletons() {
        let skel = tetrahedron().one_skeleton();
        assert_eq!(skel.vertex_count(), 4);
        assert_eq!(skel.edge_count(), 6);
        let skel = octahedron().one_skeleton();
        assert_eq!(skel.edge_count(), 12);
        let single = SimplicialComplex::new(&[vec!["a", "b", "c"]]).unwrap();
        assert_eq!(single.one_skeleton().edge_count(), 3);
        let skel = torus7().one_skeleton();
        assert_eq!(skel.edge_count(), 21); // complete on 7 vertices
    }

    #[test]
    fn proposition_on_corpus() {
        let cases: [(SimplicialComplex, usize, bool); 5] = [
            (tetrahedron(), 3, false),
            (octahedron(), 3, true),
            (icosahedron(), 3, true),
            (simplex4_boundary(), 4, false),
            (torus7(), 3, true),
        ];
        for (complex, n, expect_both) in cases {
            let report = check_proposition(&complex, n);
            assert!(
                report.precondition_failures.is_empty(),
                "{:?}",
                report.precondition_failures
            );
            assert!(report.equivalent());
            assert_eq!(report.thick_stars, expect_both);
            assert_eq!(report.links_large, expect_both);
        }
    }

    #[test]
    fn json_round_trip() {
        let k = octahedron();
        let text = k.to_json();
        let back = SimplicialComplex::from_json(&text).unwrap();
        assert_eq!(k, back);
    }
}
