//! Word algebra in right-angled Artin groups.
//!
//! A word is a sequence of signed generators over an ambient [`Graph`];
//! generators commute exactly along edges. The canonical representative of a
//! group element is its lexicographically least geodesic: first delete every
//! cancellable pair (an inverse pair separated only by letters that commute
//! with it), then greedily emit the least available letter. Geodesic words
//! for a fixed element differ only by transpositions of adjacent commuting
//! letters, so the greedy pass is a normal form.
//!
//! Letters are ordered by the ambient graph's declared vertex order, with a
//! positive letter preceding its inverse.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Catalog, Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown vertex label `{0}`")]
    UnknownVertex(String),
    #[error("bad word token `{0}` (expected `label` or `label^-1`)")]
    BadToken(String),
    #[error("letter index {0} out of range for ambient graph")]
    LetterOutOfRange(u16),
    #[error("source vertex `{0}` has no image")]
    UnmappedVertex(String),
    #[error("homomorphism used before verification")]
    HomNotVerified,
    #[error("element cap {0} exceeded while enumerating a ball")]
    ResourceCap(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A signed generator. Ordering is (vertex, sign) with positive first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: u16,
    pub inv: bool,
}

impl Letter {
    pub fn pos(gen: u16) -> Letter {
        Letter { gen, inv: false }
    }

    pub fn neg(gen: u16) -> Letter {
        Letter { gen, inv: true }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }
}

/// A not-necessarily-reduced word.
pub type Word = Vec<Letter>;

/// Formal inverse of a word.
pub fn inverse_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Parses whitespace-separated tokens `a`, `a^-1` over the graph's labels.
pub fn parse_word(g: &Graph, text: &str) -> Result<Word, WordError> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        let (label, inv) = match tok.strip_suffix("^-1") {
            Some(base) => (base, true),
            None => {
                if tok.contains('^') {
                    return Err(WordError::BadToken(tok.to_owned()));
                }
                (tok, false)
            }
        };
        let gen = g
            .vertex(label)
            .map_err(|_| WordError::UnknownVertex(label.to_owned()))? as u16;
        out.push(Letter { gen, inv });
    }
    Ok(out)
}

/// Renders a word in the token syntax.
pub fn format_word(g: &Graph, w: &[Letter]) -> String {
    w.iter()
        .map(|l| {
            let label = g.label(l.gen as u32);
            if l.inv {
                format!("{label}^-1")
            } else {
                label.to_owned()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn check_letters(g: &Graph, w: &[Letter]) -> Result<(), WordError> {
    for l in w {
        if l.gen as usize >= g.vertex_count() {
            return Err(WordError::LetterOutOfRange(l.gen));
        }
    }
    Ok(())
}

/// Deletes cancellable pairs until none remain; the result is geodesic.
fn reduce_to_geodesic(g: &Graph, mut w: Word) -> Word {
    'outer: loop {
        for i in 0..w.len() {
            let a = w[i];
            for j in i + 1..w.len() {
                let b = w[j];
                if b.gen == a.gen {
                    if b.inv != a.inv {
                        w.remove(j);
                        w.remove(i);
                        continue 'outer;
                    }
                    // same signed letter passes through
                } else if !g.adjacent(a.gen as u32, b.gen as u32) {
                    break;
                }
            }
        }
        return w;
    }
}

/// Greedy least-available-letter pass over a geodesic word.
fn lex_least(g: &Graph, geodesic: &[Letter]) -> Word {
    let mut remaining: Vec<Letter> = geodesic.to_vec();
    let mut out = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let mut best: Option<usize> = None;
        for i in 0..remaining.len() {
            let movable = remaining[..i]
                .iter()
                .all(|b| b.gen != remaining[i].gen && g.adjacent(b.gen as u32, remaining[i].gen as u32));
            if movable && best.is_none_or(|b| remaining[i] < remaining[b]) {
                best = Some(i);
            }
        }
        out.push(remaining.remove(best.expect("front letter is always movable")));
    }
    out
}

/// Canonical representative of a group element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalForm {
    letters: Word,
}

impl NormalForm {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True iff the element is the identity.
    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn into_word(self) -> Word {
        self.letters
    }
}

/// Canonical form: the lexicographically least geodesic representative.
/// Empty iff the word represents the identity; idempotent.
pub fn normal_form(g: &Graph, w: &[Letter]) -> Result<NormalForm, WordError> {
    check_letters(g, w)?;
    let geo = reduce_to_geodesic(g, w.to_vec());
    Ok(NormalForm {
        letters: lex_least(g, &geo),
    })
}

/// Word-problem equality.
pub fn equal(g: &Graph, w1: &[Letter], w2: &[Letter]) -> Result<bool, WordError> {
    Ok(normal_form(g, w1)? == normal_form(g, w2)?)
}

/// Vertices occurring in the normal form.
pub fn support(g: &Graph, w: &[Letter]) -> Result<BTreeSet<u16>, WordError> {
    Ok(normal_form(g, w)?
        .letters()
        .iter()
        .map(|l| l.gen)
        .collect())
}

/// Signed occurrence count of a generator; invariant under rewriting.
pub fn exponent_sum(w: &[Letter], gen: u16) -> i64 {
    w.iter()
        .filter(|l| l.gen == gen)
        .map(|l| if l.inv { -1 } else { 1 })
        .sum()
}

/// A homomorphism between right-angled Artin groups, given by generator
/// images. Must be verified (every source relator maps to the identity)
/// before it can be applied.
#[derive(Debug, Clone)]
pub struct Hom {
    source: Graph,
    target: Graph,
    images: Vec<Word>,
    verified: bool,
}

impl Hom {
    /// Builds a homomorphism candidate from labeled images. Every source
    /// vertex must be mapped.
    pub fn from_images(
        source: Graph,
        target: Graph,
        images: &BTreeMap<String, String>,
    ) -> Result<Hom, WordError> {
        let mut image_words = Vec::with_capacity(source.vertex_count());
        for label in source.labels() {
            let text = images
                .get(label)
                .ok_or_else(|| WordError::UnmappedVertex(label.clone()))?;
            image_words.push(parse_word(&target, text)?);
        }
        Ok(Hom {
            source,
            target,
            images: image_words,
            verified: false,
        })
    }

    /// The projection killing the given generators: they map to the
    /// identity, every other generator maps to itself. Well-defined for any
    /// subset, and verified on construction.
    pub fn kill_generators(g: &Graph, kill: &BTreeSet<String>) -> Result<Hom, WordError> {
        for label in kill {
            g.vertex(label)
                .map_err(|_| WordError::UnknownVertex(label.clone()))?;
        }
        let images: Vec<Word> = g
            .labels()
            .iter()
            .enumerate()
            .map(|(i, label)| {
                if kill.contains(label) {
                    Vec::new()
                } else {
                    vec![Letter::pos(i as u16)]
                }
            })
            .collect();
        let mut hom = Hom {
            source: g.clone(),
            target: g.clone(),
            images,
            verified: false,
        };
        assert!(hom.check()?, "killing generators preserves all relators");
        Ok(hom)
    }

    /// The map collapsing q to the product ef, identity on the remaining
    /// vertices.
    pub fn q_to_ef(ef_variant: bool) -> Hom {
        let source = Catalog::Gamma0.build().expect("catalog");
        let target = Catalog::Gamma1 { ef: ef_variant }.build().expect("catalog");
        let mut images = BTreeMap::new();
        for label in source.labels() {
            let image = if label == "q" { "e f".to_owned() } else { label.clone() };
            images.insert(label.clone(), image);
        }
        let mut hom = Hom::from_images(source, target, &images).expect("labels line up");
        assert!(hom.check().expect("valid letters"), "q -> ef is a homomorphism");
        hom
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn image_of(&self, v: u16) -> &Word {
        &self.images[v as usize]
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// True iff the image of every source relator [u, v] is trivial in the
    /// target; marks the homomorphism as verified on success.
    pub fn check(&mut self) -> Result<bool, WordError> {
        for (u, v) in self.source.edges() {
            let iu = &self.images[u as usize];
            let iv = &self.images[v as usize];
            let mut comm = iu.clone();
            comm.extend_from_slice(iv);
            comm.extend(inverse_word(iu));
            comm.extend(inverse_word(iv));
            if !normal_form(&self.target, &comm)?.is_identity() {
                return Ok(false);
            }
        }
        self.verified = true;
        Ok(true)
    }

    /// Letterwise substitution followed by normalization in the target.
    /// Requires a prior successful [`Hom::check`].
    pub fn apply(&self, w: &[Letter]) -> Result<NormalForm, WordError> {
        if !self.verified {
            return Err(WordError::HomNotVerified);
        }
        check_letters(&self.source, w)?;
        let mut out = Vec::new();
        for l in w {
            let img = &self.images[l.gen as usize];
            if l.inv {
                out.extend(inverse_word(img));
            } else {
                out.extend_from_slice(img);
            }
        }
        normal_form(&self.target, &out)
    }
}

/// On-disk homomorphism description: graphs are either catalog names
/// (`"gamma0"`, `"gamma1"`, `"gamma1ef"`, `"k3"`, ...) or inline graph
/// objects; images use the word token syntax.
#[derive(Serialize, Deserialize)]
pub struct HomFile {
    pub source: GraphSpec,
    pub target: GraphSpec,
    pub images: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphSpec {
    Name(String),
    Inline {
        vertices: Vec<String>,
        edges: Vec<(String, String)>,
    },
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph, GraphError> {
        match self {
            GraphSpec::Name(n) => {
                let lower = n.to_ascii_lowercase();
                if lower == "gamma1ef" || lower == "gamma1+ef" || lower == "gamma1-ef" {
                    return Catalog::Gamma1 { ef: true }.build();
                }
                Catalog::parse(&lower)?.build()
            }
            GraphSpec::Inline { vertices, edges } => {
                let v: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
                let e: Vec<(&str, &str)> =
                    edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                Graph::new(&v, &e)
            }
        }
    }
}

impl HomFile {
    pub fn build(&self) -> Result<Hom, WordError> {
        let source = self.source.build()?;
        let target = self.target.build()?;
        Hom::from_images(source, target, &self.images)
    }
}

/// All distinct group elements of geodesic length at most `radius`, as
/// normal forms sorted by (length, letters).
#[derive(Debug, Clone)]
pub struct Ball {
    pub elements: Vec<NormalForm>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Breadth-first ball enumeration with canonical-form dedup. Errors out if
/// the element count exceeds `cap` — the ball is too large for desk scale,
/// which is a resource signal, not a mathematical one.
pub fn enumerate_ball(g: &Graph, radius: usize, cap: usize) -> Result<Ball, WordError> {
    let mut seen: HashSet<Word> = HashSet::new();
    let mut all: Vec<NormalForm> = Vec::new();
    let identity = NormalForm { letters: Vec::new() };
    seen.insert(Vec::new());
    all.push(identity);
    let mut frontier: Vec<Word> = vec![Vec::new()];

    let letters: Vec<Letter> = (0..g.vertex_count() as u16)
        .flat_map(|gen| [Letter::pos(gen), Letter::neg(gen)])
        .collect();

    for depth in 1..=radius {
        let candidates: Vec<Word> = frontier
            .par_iter()
            .flat_map_iter(|w| {
                let g = &g;
                let letters = &letters;
                letters.iter().filter_map(move |&l| {
                    let mut next = w.clone();
                    next.push(l);
                    let nf = normal_form(g, &next).expect("letters validated");
                    if nf.len() == depth {
                        Some(nf.into_word())
                    } else {
                        None
                    }
                })
            })
            .collect();
        let mut next_frontier = Vec::new();
        for cand in candidates {
            if seen.insert(cand.clone()) {
                if all.len() + 1 > cap {
                    return Err(WordError::ResourceCap(cap));
                }
                all.push(NormalForm {
                    letters: cand.clone(),
                });
                next_frontier.push(cand);
            }
        }
        next_frontier.sort();
        frontier = next_frontier;
        if frontier.is_empty() {
            break;
        }
    }
    all.sort_by(|a, b| (a.len(), a.letters()).cmp(&(b.len(), b.letters())));
    Ok(Ball { elements: all })
}

/// Result of a ball-restricted kernel check.
#[derive(Debug, Clone)]
pub struct KernelReport {
    pub ball_size: usize,
    /// Nontrivial ball elements whose image is trivial, sorted.
    pub violations: Vec<NormalForm>,
}

/// Applies the homomorphism to every nontrivial element of the radius-`r`
/// ball of the source; an empty violation list certifies injectivity on the
/// ball, and hence on all pairs u, v with |u| + |v| <= r.
pub fn kernel_ball_check(hom: &Hom, radius: usize, cap: usize) -> Result<KernelReport, WordError> {
    if !hom.is_verified() {
        return Err(WordError::HomNotVerified);
    }
    let ball = enumerate_ball(hom.source(), radius, cap)?;
    let mut violations: Vec<NormalForm> = ball
        .elements
        .par_iter()
        .filter(|nf| !nf.is_identity())
        .filter_map(|nf| {
            let image = hom.apply(nf.letters()).expect("hom verified");
            if image.is_identity() {
                Some(nf.clone())
            } else {
                None
            }
        })
        .collect();
    violations.sort_by(|a, b| (a.len(), a.letters()).cmp(&(b.len(), b.letters())));
    Ok(KernelReport {
        ball_size: ball.len(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::VecDeque;

    /// Letters commute iff same generator or adjacent vertices.
    fn commutes(g: &Graph, a: Letter, b: Letter) -> bool {
        a.gen == b.gen || g.adjacent(a.gen as u32, b.gen as u32)
    }

    fn gamma0() -> Graph {
        Catalog::Gamma0.build().unwrap()
    }

    fn gamma1() -> Graph {
        Catalog::Gamma1 { ef: false }.build().unwrap()
    }

    fn nf_text(g: &Graph, s: &str) -> String {
        let w = parse_word(g, s).unwrap();
        format_word(g, normal_form(g, &w).unwrap().letters())
    }

    #[test]
    fn parse_and_format() {
        let g = gamma0();
        let w = parse_word(&g, "a b^-1 q").unwrap();
        assert_eq!(format_word(&g, &w), "a b^-1 q");
        assert!(matches!(
            parse_word(&g, "z"),
            Err(WordError::UnknownVertex(_))
        ));
        assert!(matches!(
            parse_word(&g, "a^2"),
            Err(WordError::BadToken(_))
        ));
    }

    #[test]
    fn normal_form_examples() {
        let g0 = gamma0();
        // a and b commute, so the conjugate collapses
        assert_eq!(nf_text(&g0, "a b a^-1"), "b");
        // g and h do not commute: the commutator survives
        assert_ne!(nf_text(&g0, "g h g^-1 h^-1"), "");
        let g1 = gamma1();
        assert_eq!(nf_text(&g1, "e a e^-1 a^-1"), "");
        assert_eq!(nf_text(&g1, "e f"), "e f");
    }

    #[test]
    fn normal_form_idempotent_and_inverse() {
        let g = gamma0();
        let w = parse_word(&g, "q a d^-1 g h g^-1 a^-1").unwrap();
        let nf = normal_form(&g, &w).unwrap();
        let again = normal_form(&g, nf.letters()).unwrap();
        assert_eq!(nf, again);
        let mut ww = w.clone();
        ww.extend(inverse_word(&w));
        assert!(normal_form(&g, &ww).unwrap().is_identity());
    }

    #[test]
    fn equality_examples() {
        let g = gamma0();
        let ab = parse_word(&g, "a b").unwrap();
        let ba = parse_word(&g, "b a").unwrap();
        assert!(equal(&g, &ab, &ba).unwrap());
        let ac = parse_word(&g, "a c").unwrap();
        let ca = parse_word(&g, "c a").unwrap();
        assert!(!equal(&g, &ac, &ca).unwrap());
    }

    #[test]
    fn support_and_exponent() {
        let g0 = gamma0();
        assert!(support(&g0, &[]).unwrap().is_empty());
        let w = parse_word(&g0, "a b a^-1").unwrap();
        let b = g0.vertex("b").unwrap() as u16;
        assert_eq!(support(&g0, &w).unwrap(), BTreeSet::from([b]));
        let g1 = gamma1();
        let ef = parse_word(&g1, "e f").unwrap();
        let e = g1.vertex("e").unwrap() as u16;
        let f = g1.vertex("f").unwrap() as u16;
        assert_eq!(support(&g1, &ef).unwrap(), BTreeSet::from([e, f]));
        let w = parse_word(&g1, "e f e^-1").unwrap();
        assert_eq!(exponent_sum(&w, e), 0);
        let w3 = parse_word(&g1, "e f e f e f").unwrap();
        assert_eq!(exponent_sum(&w3, f), 3);
    }

    #[test]
    fn hom_checks() {
        let phi = Hom::q_to_ef(false);
        assert!(phi.is_verified());
        // variant q -> eg fails: d is adjacent to q but not to g
        let source = gamma0();
        let target = gamma1();
        let mut images = BTreeMap::new();
        for l in source.labels() {
            images.insert(
                l.clone(),
                if l == "q" { "e g".into() } else { l.clone() },
            );
        }
        let mut bad = Hom::from_images(source, target, &images).unwrap();
        assert!(!bad.check().unwrap());
        assert!(matches!(
            bad.apply(&[Letter::pos(0)]),
            Err(WordError::HomNotVerified)
        ));
    }

    #[test]
    fn hom_requires_all_images() {
        let source = gamma0();
        let target = gamma1();
        let images = BTreeMap::new();
        assert!(matches!(
            Hom::from_images(source, target, &images),
            Err(WordError::UnmappedVertex(_))
        ));
    }

    #[test]
    fn apply_examples() {
        let g0 = gamma0();
        let g1 = gamma1();
        let phi = Hom::q_to_ef(false);
        let q = parse_word(&g0, "q").unwrap();
        assert_eq!(format_word(&g1, phi.apply(&q).unwrap().letters()), "e f");

        let p = Hom::kill_generators(&g1, &BTreeSet::from(["f".to_owned()])).unwrap();
        let ef = parse_word(&g1, "e f").unwrap();
        assert_eq!(format_word(&g1, p.apply(&ef).unwrap().letters()), "e");

        // (p o phi)(q^3 a) = e^3 a
        let w = parse_word(&g0, "q q q a").unwrap();
        let through = p.apply(phi.apply(&w).unwrap().letters()).unwrap();
        assert_eq!(format_word(&g1, through.letters()), "a e e e");
        let expect = parse_word(&g1, "e e e a").unwrap();
        assert!(equal(&g1, through.letters(), &expect).unwrap());
    }

    #[test]
    fn kill_generators_edge_cases() {
        let g = gamma0();
        let id = Hom::kill_generators(&g, &BTreeSet::new()).unwrap();
        let w = parse_word(&g, "q a g").unwrap();
        assert_eq!(
            id.apply(&w).unwrap(),
            normal_form(&g, &w).unwrap()
        );
        let all: BTreeSet<String> = g.labels().iter().cloned().collect();
        let trivial = Hom::kill_generators(&g, &all).unwrap();
        assert!(trivial.apply(&w).unwrap().is_identity());
    }

    #[test]
    fn ball_counts() {
        let g0 = gamma0();
        assert_eq!(enumerate_ball(&g0, 0, 1000).unwrap().len(), 1);
        assert_eq!(enumerate_ball(&g0, 1, 1000).unwrap().len(), 15);
        // Z^2: L1 ball of radius 2 has 13 lattice points
        let k2 = Catalog::K(2).build().unwrap();
        assert_eq!(enumerate_ball(&k2, 2, 1000).unwrap().len(), 13);
        assert!(matches!(
            enumerate_ball(&g0, 3, 10),
            Err(WordError::ResourceCap(10))
        ));
    }

    #[test]
    fn kernel_checks() {
        let phi = Hom::q_to_ef(false);
        let report = kernel_ball_check(&phi, 2, 100_000).unwrap();
        assert!(report.violations.is_empty());
        assert!(report.ball_size > 1);

        // killing f on a free group of rank 2 puts f in the kernel
        let free2 = Graph::new(&["e", "f"], &[]).unwrap();
        let p = Hom::kill_generators(&free2, &BTreeSet::from(["f".to_owned()])).unwrap();
        let report = kernel_ball_check(&p, 2, 100_000).unwrap();
        let f = parse_word(&free2, "f").unwrap();
        assert!(report
            .violations
            .iter()
            .any(|nf| nf.letters() == f.as_slice()));

        let id = Hom::kill_generators(&gamma0(), &BTreeSet::new()).unwrap();
        let report = kernel_ball_check(&id, 3, 100_000).unwrap();
        assert!(report.violations.is_empty());
    }

    #[test]
    fn hom_file_round_trip() {
        let text = r#"{
            "source": "gamma0",
            "target": "gamma1",
            "images": {"a":"a","b":"b","c":"c","d":"d","g":"g","h":"h","q":"e f"}
        }"#;
        let file: HomFile = serde_json::from_str(text).unwrap();
        let mut hom = file.build().unwrap();
        assert!(hom.check().unwrap());
    }

    /// All words reachable from `w` by adjacent commuting transpositions and
    /// adjacent inverse-pair deletions; the shortest ones, lexicographically
    /// least first.
    fn brute_force_least_geodesic(g: &Graph, w: &[Letter]) -> Word {
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue: VecDeque<Word> = VecDeque::new();
        seen.insert(w.to_vec());
        queue.push_back(w.to_vec());
        let mut best: Option<Word> = None;
        while let Some(cur) = queue.pop_front() {
            let better = match &best {
                None => true,
                Some(b) => (cur.len(), &cur) < (b.len(), b),
            };
            if better {
                best = Some(cur.clone());
            }
            for i in 0..cur.len().saturating_sub(1) {
                let (a, b) = (cur[i], cur[i + 1]);
                if a.gen == b.gen && a.inv != b.inv {
                    let mut next = cur.clone();
                    next.remove(i + 1);
                    next.remove(i);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                } else if a.gen != b.gen && commutes(g, a, b) {
                    let mut next = cur.clone();
                    next.swap(i, i + 1);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn normal_form_matches_brute_force_on_short_words() {
        let g = gamma0();
        let letters: Vec<Letter> = (0..g.vertex_count() as u16)
            .flat_map(|gen| [Letter::pos(gen), Letter::neg(gen)])
            .collect();
        // deterministic sweep over a spread of length <= 5 words
        let mut words = Vec::new();
        for i in 0..letters.len() {
            for j in 0..letters.len() {
                for k in (0..letters.len()).step_by(3) {
                    words.push(vec![letters[i], letters[j], letters[k]]);
                }
            }
        }
        for (n, chunk) in words.iter().enumerate() {
            let mut w = chunk.clone();
            w.push(letters[(n * 5) % letters.len()]);
            w.push(letters[(n * 11) % letters.len()]);
            let nf = normal_form(&g, &w).unwrap();
            let brute = brute_force_least_geodesic(&g, &w);
            assert_eq!(nf.letters(), brute.as_slice(), "word {n}");
        }
    }
}
