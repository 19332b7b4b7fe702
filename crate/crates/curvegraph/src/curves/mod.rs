//! Simple closed curves on punctured surfaces.
//!
//! A punctured surface is modeled by a spine: a wedge of circles carrying a
//! ribbon structure (the cyclic order of the band ends at the wedge point).
//! The fundamental group is free; an unoriented free-homotopy class of
//! closed curves is a canonical cyclic word — the least rotation of the
//! cyclically reduced word or its inverse. Peripheral classes are read off
//! the ribbon structure by face tracing, so the model checks its own genus
//! and puncture count at construction.

mod intersect;
pub mod oracle;

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::words::{format_word, inverse_word, parse_word, Letter, Word, WordError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("closed surfaces are not modeled; use a punctured model (n >= 1)")]
    ClosedSurface,
    #[error("surface complexity 3g - 3 + n must be at least 1, got {0}")]
    ComplexityTooSmall(i64),
    #[error("word is trivial after cyclic reduction")]
    TrivialClass,
    #[error("word is a proper power, so it has no embedded simple representative")]
    NonPrimitive,
    #[error("class `{0}` is peripheral")]
    PeripheralClass(String),
    #[error("class `{word}` is not simple (self-intersection {value})")]
    NotSimple { word: String, value: u32 },
    #[error("automorphism rejected: {0}")]
    InvalidAutomorphism(String),
    #[error("class cap {0} exceeded during orbit enumeration")]
    ResourceCap(usize),
    #[error("grid oracle supports genus-0 models only")]
    OracleNeedsPlanar,
    #[error("cached sample is corrupt: stored hash disagrees with recomputed content hash")]
    CacheCorrupt,
    #[error("internal fault: {0}")]
    Internal(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A punctured surface of genus `g` with `n >= 1` punctures, presented as a
/// wedge of `2g + n - 1` circles with a ribbon structure.
#[derive(Debug, Clone)]
pub struct SurfaceModel {
    genus: u32,
    punctures: u32,
    group: Graph,
    /// Cyclic order of band-end germs at the wedge point. Germ ids are
    /// `2 * gen` (departure end of the band) and `2 * gen + 1` (arrival end).
    sigma: Vec<u16>,
    germ_pos: Vec<u16>,
    peripherals: Vec<CurveClass>,
}

impl SurfaceModel {
    pub fn new(genus: u32, punctures: u32) -> Result<SurfaceModel, CurveError> {
        if punctures == 0 {
            return Err(CurveError::ClosedSurface);
        }
        let xi = 3 * genus as i64 - 3 + punctures as i64;
        if xi < 1 {
            return Err(CurveError::ComplexityTooSmall(xi));
        }
        let rank = (2 * genus + punctures - 1) as usize;

        let mut labels = Vec::with_capacity(rank);
        for i in 1..=genus {
            labels.push(format!("a{i}"));
            labels.push(format!("b{i}"));
        }
        for j in 1..punctures {
            labels.push(format!("x{j}"));
        }
        let group = Graph::new(&labels, &[]).expect("distinct labels, no edges");

        // Handle blocks interleave the two bands of each handle; puncture
        // loops sit side by side, departure end first, which makes the
        // product x1 x2 ... x_{n-1} a boundary word.
        let mut sigma = Vec::with_capacity(2 * rank);
        for i in 0..genus as u16 {
            let a = 2 * i;
            let b = 2 * i + 1;
            sigma.extend_from_slice(&[2 * a, 2 * b, 2 * a + 1, 2 * b + 1]);
        }
        for j in 0..(punctures - 1) as u16 {
            let x = 2 * genus as u16 + j;
            sigma.extend_from_slice(&[2 * x, 2 * x + 1]);
        }
        let mut germ_pos = vec![0u16; 2 * rank];
        for (pos, &germ) in sigma.iter().enumerate() {
            germ_pos[germ as usize] = pos as u16;
        }

        let mut model = SurfaceModel {
            genus,
            punctures,
            group,
            sigma,
            germ_pos,
            peripherals: Vec::new(),
        };
        let faces = model.trace_faces();
        if faces.len() != punctures as usize {
            return Err(CurveError::Internal(format!(
                "ribbon structure for ({genus}, {punctures}) produced {} boundary words",
                faces.len()
            )));
        }
        model.peripherals = faces
            .into_iter()
            .map(|w| CurveClass::from_word(&w))
            .collect::<Result<_, _>>()?;
        model.peripherals.sort();
        Ok(model)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn punctures(&self) -> u32 {
        self.punctures
    }

    pub fn complexity(&self) -> u32 {
        (3 * self.genus as i64 - 3 + self.punctures as i64) as u32
    }

    pub fn rank(&self) -> usize {
        self.group.vertex_count()
    }

    /// The free fundamental group, as an edgeless ambient graph whose labels
    /// name the generators.
    pub fn group(&self) -> &Graph {
        &self.group
    }

    pub fn peripherals(&self) -> &[CurveClass] {
        &self.peripherals
    }

    /// Germ through which an edge labeled by this letter departs a vertex.
    #[inline]
    fn germ_of(&self, l: Letter) -> u16 {
        2 * l.gen + u16::from(l.inv)
    }

    /// Orientation of three distinct germs in the ribbon cyclic order.
    #[inline]
    fn orient_germs(&self, g1: u16, g2: u16, g3: u16) -> i8 {
        let n = self.sigma.len() as u16;
        let p1 = self.germ_pos[g1 as usize];
        let d2 = (self.germ_pos[g2 as usize] + n - p1) % n;
        let d3 = (self.germ_pos[g3 as usize] + n - p1) % n;
        if d2 < d3 {
            1
        } else {
            -1
        }
    }

    /// Boundary words of the ribbon surface, one per puncture.
    fn trace_faces(&self) -> Vec<Word> {
        let dart_count = self.sigma.len();
        let mut visited = vec![false; dart_count];
        let mut faces = Vec::new();
        for start in 0..dart_count as u16 {
            if visited[start as usize] {
                continue;
            }
            let mut word = Vec::new();
            let mut dart = start;
            loop {
                visited[dart as usize] = true;
                word.push(Letter {
                    gen: dart / 2,
                    inv: dart % 2 == 1,
                });
                let partner = dart ^ 1;
                let next_pos = (self.germ_pos[partner as usize] as usize + 1) % dart_count;
                dart = self.sigma[next_pos];
                if dart == start {
                    break;
                }
            }
            faces.push(word);
        }
        faces
    }
}

/// Unoriented free-homotopy class of an essential closed curve, stored as
/// its canonical cyclic word: cyclically reduced, primitive, and least
/// among all rotations of itself and of its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveClass {
    word: Word,
}

impl PartialOrd for CurveClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CurveClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.word.len(), &self.word).cmp(&(other.word.len(), &other.word))
    }
}

fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(mut w: Word) -> Word {
    while w.len() >= 2 && *w.first().unwrap() == w.last().unwrap().inverse() {
        w.pop();
        w.remove(0);
    }
    w
}

fn least_rotation(w: &[Letter]) -> Word {
    let n = w.len();
    let mut best: Option<Word> = None;
    for r in 0..n {
        let rot: Word = (0..n).map(|i| w[(r + i) % n]).collect();
        if best.as_ref().is_none_or(|b| rot < *b) {
            best = Some(rot);
        }
    }
    best.expect("nonempty word")
}

impl CurveClass {
    /// Canonicalizes a word into a class. Rejects words that are trivial
    /// after cyclic reduction and proper powers.
    pub fn from_word(w: &[Letter]) -> Result<CurveClass, CurveError> {
        let reduced = cyclic_reduce(free_reduce(w));
        if reduced.is_empty() {
            return Err(CurveError::TrivialClass);
        }
        let n = reduced.len();
        for d in 1..n {
            if n % d == 0 && (0..n).all(|i| reduced[i] == reduced[(i + d) % n]) {
                return Err(CurveError::NonPrimitive);
            }
        }
        let fwd = least_rotation(&reduced);
        let bwd = least_rotation(&inverse_word(&reduced));
        Ok(CurveClass {
            word: fwd.min(bwd),
        })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn format(&self, m: &SurfaceModel) -> String {
        format_word(m.group(), &self.word)
    }
}

/// Canonical class of a word over the model's generators.
pub fn canonical_class(m: &SurfaceModel, w: &[Letter]) -> Result<CurveClass, CurveError> {
    for l in w {
        if (l.gen as usize) >= m.rank() {
            return Err(CurveError::Word(WordError::LetterOutOfRange(l.gen)));
        }
    }
    CurveClass::from_word(w)
}

/// Parses the word token syntax directly into a class.
pub fn parse_class(m: &SurfaceModel, text: &str) -> Result<CurveClass, CurveError> {
    let w = parse_word(m.group(), text)?;
    canonical_class(m, &w)
}

/// True iff the class is one of the model's puncture classes.
pub fn is_peripheral(m: &SurfaceModel, c: &CurveClass) -> bool {
    m.peripherals.binary_search(c).is_ok()
}

/// Minimal self-intersection number of the free-homotopy class.
pub fn self_intersection(m: &SurfaceModel, c: &CurveClass) -> u32 {
    intersect::self_crossings(m, c)
}

pub fn is_simple(m: &SurfaceModel, c: &CurveClass) -> bool {
    self_intersection(m, c) == 0
}

/// Minimal geometric intersection number of two simple classes. Zero iff
/// the classes admit disjoint representatives; rejects non-simple input.
pub fn geometric_intersection(
    m: &SurfaceModel,
    c1: &CurveClass,
    c2: &CurveClass,
) -> Result<u32, CurveError> {
    for c in [c1, c2] {
        let v = self_intersection(m, c);
        if v != 0 {
            return Err(CurveError::NotSimple {
                word: c.format(m),
                value: v,
            });
        }
    }
    if c1 == c2 {
        return Ok(0);
    }
    Ok(intersect::pair_crossings(m, c1, c2))
}

/// An automorphism of the free fundamental group, given with its inverse.
/// Geometric (curve-moving) automorphisms are exactly those that permute
/// the peripheral classes, which [`validate_automorphism`] checks.
#[derive(Debug, Clone)]
pub struct FreeAutomorphism {
    pub name: String,
    images: Vec<Word>,
    inverse_images: Vec<Word>,
}

impl FreeAutomorphism {
    pub fn new(name: &str, images: Vec<Word>, inverse_images: Vec<Word>) -> FreeAutomorphism {
        FreeAutomorphism {
            name: name.to_owned(),
            images,
            inverse_images,
        }
    }

    pub fn from_labels(
        m: &SurfaceModel,
        name: &str,
        images: &BTreeMap<String, String>,
        inverse_images: &BTreeMap<String, String>,
    ) -> Result<FreeAutomorphism, CurveError> {
        let build = |map: &BTreeMap<String, String>| -> Result<Vec<Word>, CurveError> {
            let mut out = Vec::with_capacity(m.rank());
            for label in m.group().labels() {
                let text = map
                    .get(label)
                    .ok_or_else(|| WordError::UnmappedVertex(label.clone()))?;
                out.push(parse_word(m.group(), text)?);
            }
            Ok(out)
        };
        Ok(FreeAutomorphism {
            name: name.to_owned(),
            images: build(images)?,
            inverse_images: build(inverse_images)?,
        })
    }

    fn substitute(map: &[Word], w: &[Letter]) -> Word {
        let mut out = Vec::new();
        for l in w {
            let img = &map[l.gen as usize];
            if l.inv {
                out.extend(inverse_word(img));
            } else {
                out.extend_from_slice(img);
            }
        }
        free_reduce(&out)
    }

    pub fn apply_word(&self, w: &[Letter]) -> Word {
        Self::substitute(&self.images, w)
    }

    pub fn apply_inverse_word(&self, w: &[Letter]) -> Word {
        Self::substitute(&self.inverse_images, w)
    }

    pub fn apply_class(&self, c: &CurveClass) -> Result<CurveClass, CurveError> {
        CurveClass::from_word(&self.apply_word(c.letters()))
    }

    pub fn apply_inverse_class(&self, c: &CurveClass) -> Result<CurveClass, CurveError> {
        CurveClass::from_word(&self.apply_inverse_word(c.letters()))
    }
}

/// Checks that map and inverse compose to the identity on generators and
/// that the peripheral class set is permuted (up to conjugacy and
/// inversion, which the canonical class form absorbs).
pub fn validate_automorphism(m: &SurfaceModel, a: &FreeAutomorphism) -> bool {
    if a.images.len() != m.rank() || a.inverse_images.len() != m.rank() {
        return false;
    }
    for gen in 0..m.rank() as u16 {
        let v = vec![Letter::pos(gen)];
        if free_reduce(&a.apply_inverse_word(&a.apply_word(&v))) != v {
            return false;
        }
        if free_reduce(&a.apply_word(&a.apply_inverse_word(&v))) != v {
            return false;
        }
    }
    let mut images: Vec<CurveClass> = Vec::with_capacity(m.peripherals.len());
    for p in &m.peripherals {
        match a.apply_class(p) {
            Ok(c) => images.push(c),
            Err(_) => return false,
        }
    }
    images.sort();
    images == m.peripherals
}

/// The braid half-twist generators of a genus-0 model: `s_i` swaps
/// punctures i and i+1. The last one moves the puncture carried by the
/// defining product, via the eliminated-generator formula.
pub fn braid_generators(m: &SurfaceModel) -> Result<Vec<FreeAutomorphism>, CurveError> {
    if m.genus() != 0 {
        return Err(CurveError::InvalidAutomorphism(
            "braid generators are built in for genus-0 models only".into(),
        ));
    }
    let r = m.rank() as u16;
    let mut gens = Vec::new();
    for i in 0..r.saturating_sub(1) {
        // x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i
        let mut images: Vec<Word> = (0..r).map(|g| vec![Letter::pos(g)]).collect();
        images[i as usize] = vec![Letter::pos(i), Letter::pos(i + 1), Letter::neg(i)];
        images[i as usize + 1] = vec![Letter::pos(i)];
        let mut inverse: Vec<Word> = (0..r).map(|g| vec![Letter::pos(g)]).collect();
        inverse[i as usize] = vec![Letter::pos(i + 1)];
        inverse[i as usize + 1] = vec![Letter::neg(i + 1), Letter::pos(i), Letter::pos(i + 1)];
        gens.push(FreeAutomorphism::new(
            &format!("s{}", i + 1),
            images,
            inverse,
        ));
    }
    // last half-twist: x_r -> x_r (x_1 ... x_r)^-1 x_r^-1, inverse x_r -> (x_1 ... x_r)^-1
    let full: Word = (0..r).map(Letter::pos).collect();
    let mut images: Vec<Word> = (0..r).map(|g| vec![Letter::pos(g)]).collect();
    let mut w = vec![Letter::pos(r - 1)];
    w.extend(inverse_word(&full));
    w.push(Letter::neg(r - 1));
    images[r as usize - 1] = free_reduce(&w);
    let mut inverse: Vec<Word> = (0..r).map(|g| vec![Letter::pos(g)]).collect();
    inverse[r as usize - 1] = inverse_word(&full);
    gens.push(FreeAutomorphism::new(&format!("s{r}"), images, inverse));

    for g in &gens {
        if !validate_automorphism(m, g) {
            return Err(CurveError::InvalidAutomorphism(format!(
                "built-in braid generator {} failed validation",
                g.name
            )));
        }
    }
    Ok(gens)
}

/// The two standard twist generators of the once-punctured torus model.
pub fn torus_twists(m: &SurfaceModel) -> Result<Vec<FreeAutomorphism>, CurveError> {
    if (m.genus(), m.punctures()) != (1, 1) {
        return Err(CurveError::InvalidAutomorphism(
            "built-in twists exist for the (1,1) model only".into(),
        ));
    }
    let a = 0u16;
    let b = 1u16;
    let ta = FreeAutomorphism::new(
        "ta",
        vec![vec![Letter::pos(a)], vec![Letter::pos(b), Letter::pos(a)]],
        vec![vec![Letter::pos(a)], vec![Letter::pos(b), Letter::neg(a)]],
    );
    let tb = FreeAutomorphism::new(
        "tb",
        vec![vec![Letter::pos(a), Letter::pos(b)], vec![Letter::pos(b)]],
        vec![vec![Letter::pos(a), Letter::neg(b)], vec![Letter::pos(b)]],
    );
    for g in [&ta, &tb] {
        if !validate_automorphism(m, g) {
            return Err(CurveError::InvalidAutomorphism(format!(
                "built-in twist {} failed validation",
                g.name
            )));
        }
    }
    Ok(vec![ta, tb])
}

/// Natural seed curves: for genus 0, the round curves about 2 to n-2
/// consecutive punctures; for the once-punctured torus, the two core
/// curves.
pub fn default_seeds(m: &SurfaceModel) -> Vec<CurveClass> {
    let mut seeds = Vec::new();
    if m.genus() == 0 {
        let r = m.rank();
        for len in 2..=(m.punctures() as usize - 2) {
            for start in 0..=(r - len) {
                let w: Word = (start..start + len).map(|g| Letter::pos(g as u16)).collect();
                seeds.push(CurveClass::from_word(&w).expect("round words are primitive"));
            }
        }
    } else if (m.genus(), m.punctures()) == (1, 1) {
        seeds.push(CurveClass::from_word(&[Letter::pos(0)]).unwrap());
        seeds.push(CurveClass::from_word(&[Letter::pos(1)]).unwrap());
    }
    seeds
}

/// A finite induced subgraph sample of the curve graph: classes plus their
/// pairwise geometric intersection matrix.
#[derive(Debug, Clone)]
pub struct CurveGraphSample {
    pub genus: u32,
    pub punctures: u32,
    classes: Vec<CurveClass>,
    /// Lower-triangular intersection numbers: entry for (i, j), j < i, at
    /// index i(i-1)/2 + j.
    tri: Vec<u32>,
}

impl CurveGraphSample {
    pub fn classes(&self) -> &[CurveClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Geometric intersection number between sample members.
    pub fn intersection(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 0;
        }
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        self.tri[hi * (hi - 1) / 2 + lo]
    }

    /// Disjointness graph: vertices are class indices, edges the zero
    /// entries of the matrix.
    pub fn curve_graph(&self) -> Graph {
        let labels: Vec<String> = (0..self.len()).map(|i| format!("c{i:05}")).collect();
        let mut edges = Vec::new();
        for i in 0..self.len() {
            for j in 0..i {
                if self.intersection(i, j) == 0 {
                    edges.push((labels[j].clone(), labels[i].clone()));
                }
            }
        }
        Graph::new(&labels, &edges).expect("fresh labels")
    }

    fn content_hash(genus: u32, punctures: u32, classes: &[CurveClass], tri: &[u32]) -> String {
        let mut hasher = Sha256::new();
        hasher.update(format!("sample-v1|{genus}|{punctures}|"));
        for c in classes {
            for l in c.letters() {
                hasher.update(l.gen.to_le_bytes());
                hasher.update([u8::from(l.inv)]);
            }
            hasher.update([0xff]);
        }
        for t in tri {
            hasher.update(t.to_le_bytes());
        }
        hex_string(&hasher.finalize())
    }

    pub fn to_file(&self, m: &SurfaceModel, config_key: &str) -> SampleFile {
        let mut matrix_lower = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            matrix_lower.push((0..i).map(|j| self.intersection(i, j)).collect());
        }
        SampleFile {
            algorithm_version: ALGORITHM_VERSION.to_owned(),
            genus: self.genus,
            punctures: self.punctures,
            config_key: config_key.to_owned(),
            classes: self.classes.iter().map(|c| c.format(m)).collect(),
            matrix_lower,
            content_hash: Self::content_hash(self.genus, self.punctures, &self.classes, &self.tri),
        }
    }
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Version tag of the enumeration and intersection algorithms; part of the
/// cache key so stale caches never masquerade as fresh results.
pub const ALGORITHM_VERSION: &str = "1";

/// On-disk sample: model descriptor, canonical words, lower-triangular
/// matrix, and a content hash over all of it.
#[derive(Debug, Serialize, Deserialize)]
pub struct SampleFile {
    pub algorithm_version: String,
    pub genus: u32,
    pub punctures: u32,
    pub config_key: String,
    pub classes: Vec<String>,
    pub matrix_lower: Vec<Vec<u32>>,
    pub content_hash: String,
}

impl SampleFile {
    pub fn load(&self) -> Result<(SurfaceModel, CurveGraphSample), CurveError> {
        let m = SurfaceModel::new(self.genus, self.punctures)?;
        let mut classes = Vec::with_capacity(self.classes.len());
        for text in &self.classes {
            classes.push(parse_class(&m, text)?);
        }
        let mut tri = Vec::new();
        for (i, row) in self.matrix_lower.iter().enumerate() {
            if row.len() != i {
                return Err(CurveError::CacheCorrupt);
            }
            tri.extend_from_slice(row);
        }
        let recomputed =
            CurveGraphSample::content_hash(self.genus, self.punctures, &classes, &tri);
        if recomputed != self.content_hash {
            return Err(CurveError::CacheCorrupt);
        }
        Ok((
            m,
            CurveGraphSample {
                genus: self.genus,
                punctures: self.punctures,
                classes,
                tri,
            },
        ))
    }
}

/// Orbit-closure enumeration: closes the seeds under the given automorphisms
/// and their inverses up to `depth` compositions, discarding canonical words
/// longer than `maxlen`, then fills the pairwise intersection matrix.
///
/// Peripheral images are filtered out. Automorphism images of simple curves
/// stay simple; a non-simple image therefore reports an implementation
/// fault rather than being silently dropped.
pub fn enumerate_curves(
    m: &SurfaceModel,
    seeds: &[CurveClass],
    gens: &[FreeAutomorphism],
    depth: usize,
    maxlen: usize,
    cap: usize,
) -> Result<CurveGraphSample, CurveError> {
    for g in gens {
        if !validate_automorphism(m, g) {
            return Err(CurveError::InvalidAutomorphism(g.name.clone()));
        }
    }
    for s in seeds {
        if is_peripheral(m, s) {
            return Err(CurveError::PeripheralClass(s.format(m)));
        }
        let v = self_intersection(m, s);
        if v != 0 {
            return Err(CurveError::NotSimple {
                word: s.format(m),
                value: v,
            });
        }
    }

    let mut seen: HashSet<CurveClass> = seeds.iter().cloned().collect();
    let mut frontier: Vec<CurveClass> = {
        let mut f: Vec<CurveClass> = seen.iter().cloned().collect();
        f.sort();
        f
    };
    if seen.len() > cap {
        return Err(CurveError::ResourceCap(cap));
    }

    for _ in 0..depth {
        if frontier.is_empty() {
            break;
        }
        let images: Vec<Result<CurveClass, CurveError>> = frontier
            .par_iter()
            .flat_map_iter(|c| {
                gens.iter().flat_map(move |g| {
                    [g.apply_class(c), g.apply_inverse_class(c)].into_iter()
                })
            })
            .collect();
        let mut next = Vec::new();
        for img in images {
            let class = img.map_err(|e| {
                CurveError::Internal(format!("automorphism image degenerated: {e}"))
            })?;
            if class.len() > maxlen || is_peripheral(m, &class) {
                continue;
            }
            if seen.contains(&class) {
                continue;
            }
            let v = self_intersection(m, &class);
            if v != 0 {
                return Err(CurveError::Internal(format!(
                    "image `{}` of a simple class is not simple (self-intersection {v})",
                    class.format(m)
                )));
            }
            if seen.len() + 1 > cap {
                return Err(CurveError::ResourceCap(cap));
            }
            seen.insert(class.clone());
            next.push(class);
        }
        next.sort();
        next.dedup();
        frontier = next;
    }

    let mut classes: Vec<CurveClass> = seen.into_iter().collect();
    classes.sort();

    let rows: Vec<Vec<u32>> = (0..classes.len())
        .into_par_iter()
        .map(|i| {
            (0..i)
                .map(|j| intersect::pair_crossings(m, &classes[i], &classes[j]))
                .collect()
        })
        .collect();
    let mut tri = Vec::with_capacity(classes.len() * (classes.len().saturating_sub(1)) / 2);
    for row in rows {
        tri.extend(row);
    }

    Ok(CurveGraphSample {
        genus: m.genus(),
        punctures: m.punctures(),
        classes,
        tri,
    })
}

/// Generator file: named automorphisms for one surface model.
#[derive(Debug, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub surface: (u32, u32),
    pub generators: Vec<GeneratorEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub name: String,
    pub images: BTreeMap<String, String>,
    pub inverse_images: BTreeMap<String, String>,
}

impl GeneratorFile {
    pub fn build(&self, m: &SurfaceModel) -> Result<Vec<FreeAutomorphism>, CurveError> {
        if (m.genus(), m.punctures()) != self.surface {
            return Err(CurveError::InvalidAutomorphism(format!(
                "generator file is for surface ({}, {}), model is ({}, {})",
                self.surface.0,
                self.surface.1,
                m.genus(),
                m.punctures()
            )));
        }
        let mut out = Vec::new();
        for entry in &self.generators {
            let a = FreeAutomorphism::from_labels(m, &entry.name, &entry.images, &entry.inverse_images)?;
            if !validate_automorphism(m, &a) {
                return Err(CurveError::InvalidAutomorphism(entry.name.clone()));
            }
            out.push(a);
        }
        Ok(out)
    }

    /// Serializes built-in generators so they can be shipped as data files.
    pub fn describe(m: &SurfaceModel, gens: &[FreeAutomorphism]) -> GeneratorFile {
        let labels = m.group().labels();
        let entries = gens
            .iter()
            .map(|g| GeneratorEntry {
                name: g.name.clone(),
                images: labels
                    .iter()
                    .enumerate()
                    .map(|(i, l)| (l.clone(), format_word(m.group(), &g.images[i])))
                    .collect(),
                inverse_images: labels
                    .iter()
                    .enumerate()
                    .map(|(i, l)| (l.clone(), format_word(m.group(), &g.inverse_images[i])))
                    .collect(),
            })
            .collect();
        GeneratorFile {
            surface: (m.genus(), m.punctures()),
            generators: entries,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(g: u32, n: u32) -> SurfaceModel {
        SurfaceModel::new(g, n).unwrap()
    }

    fn class(m: &SurfaceModel, text: &str) -> CurveClass {
        parse_class(m, text).unwrap()
    }

    #[test]
    fn model_construction() {
        let m = model(0, 7);
        assert_eq!(m.rank(), 6);
        assert_eq!(m.complexity(), 4);
        let m = model(0, 4);
        assert_eq!(m.rank(), 3);
        assert_eq!(m.complexity(), 1);
        let m = model(1, 1);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.complexity(), 1);
        let m = model(1, 4);
        assert_eq!(m.rank(), 5);
        assert_eq!(m.peripherals().len(), 4);
        let m = model(2, 1);
        assert_eq!(m.rank(), 4);
        assert_eq!(m.peripherals().len(), 1);
        assert_eq!(
            SurfaceModel::new(0, 0).unwrap_err(),
            CurveError::ClosedSurface
        );
        assert_eq!(
            SurfaceModel::new(0, 3).unwrap_err(),
            CurveError::ComplexityTooSmall(0)
        );
    }

    #[test]
    fn peripherals_read_off_the_ribbon() {
        let m = model(0, 4);
        for t in ["x1", "x2", "x3", "x1 x2 x3"] {
            assert!(is_peripheral(&m, &class(&m, t)), "{t}");
        }
        assert!(!is_peripheral(&m, &class(&m, "x1 x2")));
        // once-punctured torus: the boundary is the commutator class
        let m = model(1, 1);
        assert!(is_peripheral(
            &m,
            &class(&m, "a1 b1 a1^-1 b1^-1")
        ));
    }

    #[test]
    fn canonical_class_mechanics() {
        let m = model(0, 4);
        assert_eq!(class(&m, "x1 x2"), class(&m, "x2 x1"));
        assert_eq!(class(&m, "x1 x2"), class(&m, "x2^-1 x1^-1"));
        assert_eq!(class(&m, "x2 x1 x2 x1^-1"), class(&m, "x1 x2 x1^-1 x2"));
        assert_eq!(
            parse_class(&m, "x1 x2 x1 x2"),
            Err(CurveError::NonPrimitive)
        );
        assert_eq!(parse_class(&m, "x1 x1^-1"), Err(CurveError::TrivialClass));
        // conjugation does not change the class
        assert_eq!(class(&m, "x3 x1 x2 x3^-1"), class(&m, "x1 x2"));
    }

    #[test]
    fn pinned_intersection_numbers() {
        let m4 = model(0, 4);
        let a = class(&m4, "x1 x2");
        let b = class(&m4, "x2 x3");
        assert_eq!(geometric_intersection(&m4, &a, &b).unwrap(), 2);
        assert_eq!(geometric_intersection(&m4, &b, &a).unwrap(), 2);
        assert_eq!(geometric_intersection(&m4, &a, &a).unwrap(), 0);

        let m5 = model(0, 5);
        let a = class(&m5, "x1 x2");
        let b = class(&m5, "x3 x4");
        assert_eq!(geometric_intersection(&m5, &a, &b).unwrap(), 0);

        // peripheral loop is disjoint from a curve enclosing it
        let p = class(&m4, "x1");
        let c = class(&m4, "x1 x2");
        assert_eq!(geometric_intersection(&m4, &p, &c).unwrap(), 0);
    }

    #[test]
    fn simplicity() {
        let m = model(0, 4);
        assert_eq!(self_intersection(&m, &class(&m, "x1")), 0);
        assert_eq!(self_intersection(&m, &class(&m, "x1 x2")), 0);
        assert!(self_intersection(&m, &class(&m, "x1 x2 x1 x3")) >= 1);
        assert!(matches!(
            geometric_intersection(&m, &class(&m, "x1 x2 x1 x3"), &class(&m, "x1")),
            Err(CurveError::NotSimple { .. })
        ));
    }

    #[test]
    fn automorphism_validation() {
        let m = model(0, 5);
        let gens = braid_generators(&m).unwrap();
        assert_eq!(gens.len(), 4);
        for g in &gens {
            assert!(validate_automorphism(&m, g), "{}", g.name);
        }
        // squaring a generator is not invertible over the free group
        let r = m.rank() as u16;
        let mut images: Vec<Word> = (0..r).map(|g| vec![Letter::pos(g)]).collect();
        images[0] = vec![Letter::pos(0), Letter::pos(0)];
        let bad = FreeAutomorphism::new("square", images.clone(), images);
        assert!(!validate_automorphism(&m, &bad));
        // identity is fine
        let ident: Vec<Word> = (0..r).map(|g| vec![Letter::pos(g)]).collect();
        let id = FreeAutomorphism::new("id", ident.clone(), ident);
        assert!(validate_automorphism(&m, &id));
    }

    #[test]
    fn torus_twists_validate() {
        let m = model(1, 1);
        let gens = torus_twists(&m).unwrap();
        assert_eq!(gens.len(), 2);
    }

    #[test]
    fn intersection_is_automorphism_invariant() {
        let m = model(0, 5);
        let gens = braid_generators(&m).unwrap();
        let pairs = [
            ("x1 x2", "x2 x3"),
            ("x1 x2", "x3 x4"),
            ("x1 x2 x3", "x2 x3"),
            ("x1 x3", "x2 x4"),
        ];
        for (t1, t2) in pairs {
            let c1 = class(&m, t1);
            let c2 = class(&m, t2);
            let base = geometric_intersection(&m, &c1, &c2).unwrap();
            for g in &gens {
                let d1 = g.apply_class(&c1).unwrap();
                let d2 = g.apply_class(&c2).unwrap();
                assert_eq!(
                    geometric_intersection(&m, &d1, &d2).unwrap(),
                    base,
                    "{} on ({t1}, {t2})",
                    g.name
                );
            }
        }
    }

    #[test]
    fn subsurface_consistency() {
        // curves supported on x1, x2 compute the same in (0,4) and (0,6)
        let small = model(0, 4);
        let big = model(0, 6);
        let pairs = [("x1 x2", "x2 x3"), ("x1 x2", "x1 x3"), ("x1", "x2 x3")];
        for (t1, t2) in pairs {
            let a_small = geometric_intersection(&small, &class(&small, t1), &class(&small, t2))
                .unwrap();
            let a_big =
                geometric_intersection(&big, &class(&big, t1), &class(&big, t2)).unwrap();
            assert_eq!(a_small, a_big, "({t1}, {t2})");
        }
    }

    #[test]
    fn enumerate_depth_zero_returns_seeds() {
        let m = model(0, 5);
        let seeds = default_seeds(&m);
        let gens = braid_generators(&m).unwrap();
        let sample = enumerate_curves(&m, &seeds, &gens, 0, 10, 1000).unwrap();
        assert_eq!(sample.len(), seeds.len());
    }

    #[test]
    fn enumerate_s04_is_discrete() {
        let m = model(0, 4);
        let seeds = vec![class(&m, "x1 x2")];
        let gens = braid_generators(&m).unwrap();
        let sample = enumerate_curves(&m, &seeds, &gens, 3, 8, 10_000).unwrap();
        assert!(sample.len() >= 10, "got {}", sample.len());
        for i in 0..sample.len() {
            for j in 0..i {
                assert!(sample.intersection(i, j) > 0);
            }
        }
        assert_eq!(sample.curve_graph().edge_count(), 0);
    }

    #[test]
    fn enumerate_s05_triangle_free() {
        let m = model(0, 5);
        let seeds = default_seeds(&m);
        let gens = braid_generators(&m).unwrap();
        let sample = enumerate_curves(&m, &seeds, &gens, 2, 8, 10_000).unwrap();
        let graph = sample.curve_graph();
        assert!(graph.clique_number() <= 2, "triangle found");
    }

    #[test]
    fn enumerate_rejects_bad_seeds() {
        let m = model(0, 5);
        let gens = braid_generators(&m).unwrap();
        let peripheral = class(&m, "x1");
        assert!(matches!(
            enumerate_curves(&m, &[peripheral], &gens, 1, 8, 100),
            Err(CurveError::PeripheralClass(_))
        ));
        let nonsimple = class(&m, "x1 x2 x1 x3");
        assert!(matches!(
            enumerate_curves(&m, &[nonsimple], &gens, 1, 8, 100),
            Err(CurveError::NotSimple { .. })
        ));
    }

    #[test]
    fn sample_file_round_trip_and_corruption() {
        let m = model(0, 4);
        let seeds = vec![class(&m, "x1 x2")];
        let gens = braid_generators(&m).unwrap();
        let sample = enumerate_curves(&m, &seeds, &gens, 2, 8, 10_000).unwrap();
        let file = sample.to_file(&m, "test-key");
        let text = serde_json::to_string(&file).unwrap();
        let parsed: SampleFile = serde_json::from_str(&text).unwrap();
        let (_, back) = parsed.load().unwrap();
        assert_eq!(back.len(), sample.len());
        let mut corrupt: SampleFile = serde_json::from_str(&text).unwrap();
        if let Some(row) = corrupt.matrix_lower.last_mut() {
            if let Some(v) = row.last_mut() {
                *v += 1;
            }
        }
        assert_eq!(corrupt.load().unwrap_err(), CurveError::CacheCorrupt);
    }
}
