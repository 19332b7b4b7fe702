//! Complexity accounting for two-sided surface decompositions.
//!
//! A decomposition splits a surface into two disjoint essential pieces S1
//! and S2 (each of complexity at least one) and the closure S0 of the
//! complement, whose components are annuli and pants attached to S1 and S2
//! along gluing circles. Complexity is additive:
//! xi(S) = xi(S1) + xi(S2) + xi(S0) + alpha, where alpha counts free
//! isotopy classes of S0 boundary circles — an annulus glued at both ends
//! has isotopic boundary circles and contributes one class.
//!
//! The enumerator lists every decomposition over the fixed piece catalog
//! satisfying the identity and the structural invariants, deduplicated up
//! to swapping S1 and S2 and permuting S0 components, and the matcher
//! classifies the total-complexity-4 output into its five case shapes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Catalog of admissible core pieces (complexity 1 or 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoreKind {
    S11,
    S04,
    S12,
    S05,
}

impl CoreKind {
    pub const ALL: [CoreKind; 4] = [CoreKind::S11, CoreKind::S04, CoreKind::S12, CoreKind::S05];

    pub fn xi(self) -> u32 {
        match self {
            CoreKind::S11 | CoreKind::S04 => 1,
            CoreKind::S12 | CoreKind::S05 => 2,
        }
    }

    pub fn genus(self) -> u32 {
        match self {
            CoreKind::S11 | CoreKind::S12 => 1,
            CoreKind::S04 | CoreKind::S05 => 0,
        }
    }

    /// Total ends: punctures plus gluing circles.
    pub fn ends(self) -> u32 {
        match self {
            CoreKind::S11 => 1,
            CoreKind::S12 => 2,
            CoreKind::S04 => 4,
            CoreKind::S05 => 5,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CoreKind::S11 => "S_{1,1}",
            CoreKind::S04 => "S_{0,4}",
            CoreKind::S12 => "S_{1,2}",
            CoreKind::S05 => "S_{0,5}",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    S1,
    S2,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::S1 => Side::S2,
            Side::S2 => Side::S1,
        }
    }
}

/// One component of S0: an annulus or pants with its gluing ends assigned
/// to sides; the remaining ends are punctures of the ambient surface.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SmallComponent {
    /// Total ends: 2 for an annulus, 3 for pants.
    pub ends: u32,
    /// Targets of the glued ends, sorted.
    pub glued: Vec<Side>,
}

impl SmallComponent {
    pub fn punctures(&self) -> u32 {
        self.ends - self.glued.len() as u32
    }

    pub fn is_annulus(&self) -> bool {
        self.ends == 2
    }

    /// Free isotopy classes contributed by this component's boundary: both
    /// circles of a fully glued annulus are isotopic and count once.
    pub fn alpha(&self) -> u32 {
        if self.is_annulus() && self.glued.len() == 2 {
            1
        } else {
            self.glued.len() as u32
        }
    }

    fn flipped(&self) -> SmallComponent {
        let mut glued: Vec<Side> = self.glued.iter().map(|s| s.flip()).collect();
        glued.sort();
        SmallComponent {
            ends: self.ends,
            glued,
        }
    }
}

/// A full decomposition, with the derived accounting data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub s1: CoreKind,
    pub s2: CoreKind,
    pub components: Vec<SmallComponent>,
    pub alpha: u32,
    /// Ambient surface (genus, punctures) implied by Euler characteristic
    /// additivity and the gluing graph's cycle rank.
    pub ambient: (u32, u32),
    /// Whether the enumeration total is the canonical value 4.
    pub canonical_total: bool,
}

impl Decomposition {
    fn key(&self) -> (CoreKind, CoreKind, Vec<SmallComponent>) {
        (self.s1, self.s2, self.components.clone())
    }

    fn swapped(&self) -> Decomposition {
        let mut components: Vec<SmallComponent> =
            self.components.iter().map(|c| c.flipped()).collect();
        components.sort();
        Decomposition {
            s1: self.s2,
            s2: self.s1,
            components,
            ..self.clone()
        }
    }

    fn canonicalize(self) -> Decomposition {
        let swapped = self.swapped();
        if swapped.key() < self.key() {
            swapped
        } else {
            self
        }
    }

    pub fn describe(&self) -> String {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let kind = if c.is_annulus() { "annulus" } else { "pants" };
                let targets: Vec<&str> = c
                    .glued
                    .iter()
                    .map(|s| match s {
                        Side::S1 => "S1",
                        Side::S2 => "S2",
                    })
                    .collect();
                format!("{kind}->{}", targets.join(","))
            })
            .collect();
        format!(
            "S1 = {}, S2 = {}, S0 = [{}], alpha = {}, ambient = S_{{{},{}}}",
            self.s1.label(),
            self.s2.label(),
            comps.join(" | "),
            self.alpha,
            self.ambient.0,
            self.ambient.1
        )
    }
}

fn glued_count(components: &[SmallComponent], side: Side) -> u32 {
    components
        .iter()
        .map(|c| c.glued.iter().filter(|&&s| s == side).count() as u32)
        .sum()
}

fn is_connected(components: &[SmallComponent]) -> bool {
    // nodes: S1, S2, components; edges: gluing circles
    let n = components.len() + 2;
    let mut adj = vec![vec![false; n]; n];
    for (i, c) in components.iter().enumerate() {
        for &s in &c.glued {
            let side_node = match s {
                Side::S1 => 0,
                Side::S2 => 1,
            };
            adj[side_node][i + 2] = true;
            adj[i + 2][side_node] = true;
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for (v, &a) in adj[u].iter().enumerate() {
            if a && !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == n
}

/// Candidate S0 components: annuli glued at both ends (an annulus with a
/// free end would be a punctured disk) and pants with one to three glued
/// ends.
fn component_shapes() -> Vec<SmallComponent> {
    let mut shapes = Vec::new();
    for targets in [
        vec![Side::S1, Side::S1],
        vec![Side::S1, Side::S2],
        vec![Side::S2, Side::S2],
    ] {
        shapes.push(SmallComponent {
            ends: 2,
            glued: targets,
        });
    }
    let sides = [Side::S1, Side::S2];
    for k in 1..=3usize {
        // multisets of k targets
        let mut choices = vec![vec![]];
        for _ in 0..k {
            let mut next = Vec::new();
            for c in &choices {
                for &s in &sides {
                    if c.last().is_none_or(|&l| l <= s) {
                        let mut cc = c.clone();
                        cc.push(s);
                        next.push(cc);
                    }
                }
            }
            choices = next;
        }
        for glued in choices {
            shapes.push(SmallComponent { ends: 3, glued });
        }
    }
    shapes
}

/// All decompositions over the catalog with
/// xi(S1) + xi(S2) + xi(S0) + alpha equal to `total_xi`, up to swapping the
/// sides and permuting components. The canonical total is 4; other values
/// are permitted for exploration and flagged.
pub fn enumerate_decompositions(total_xi: u32) -> Vec<Decomposition> {
    let shapes = component_shapes();
    let mut out: Vec<Decomposition> = Vec::new();
    for &s1 in &CoreKind::ALL {
        for &s2 in &CoreKind::ALL {
            let base = s1.xi() + s2.xi();
            if base + 1 > total_xi {
                continue;
            }
            let alpha_needed = total_xi - base;
            // every component contributes alpha >= 1
            let max_components = alpha_needed as usize;
            let mut stack: Vec<(Vec<SmallComponent>, usize, u32)> =
                vec![(Vec::new(), 0, 0)];
            while let Some((components, from, alpha)) = stack.pop() {
                if alpha == alpha_needed && !components.is_empty() {
                    if let Some(d) =
                        assemble(s1, s2, &components, alpha, total_xi)
                    {
                        out.push(d);
                    }
                }
                if components.len() == max_components || alpha >= alpha_needed {
                    continue;
                }
                for (i, shape) in shapes.iter().enumerate().skip(from) {
                    if alpha + shape.alpha() <= alpha_needed {
                        let mut next = components.clone();
                        next.push(shape.clone());
                        stack.push((next, i, alpha + shape.alpha()));
                    }
                }
            }
        }
    }
    let mut canonical: Vec<Decomposition> = out.into_iter().map(|d| d.canonicalize()).collect();
    canonical.sort_by_key(|d| d.key());
    canonical.dedup_by_key(|d| d.key());
    canonical
}

fn assemble(
    s1: CoreKind,
    s2: CoreKind,
    components: &[SmallComponent],
    alpha: u32,
    total_xi: u32,
) -> Option<Decomposition> {
    let glued_s1 = glued_count(components, Side::S1);
    let glued_s2 = glued_count(components, Side::S2);
    if glued_s1 > s1.ends() || glued_s2 > s2.ends() {
        return None;
    }
    if glued_s1 + glued_s2 < 2 {
        return None;
    }
    if !is_connected(components) {
        return None;
    }
    let mut sorted: Vec<SmallComponent> = components.to_vec();
    sorted.sort();

    // ambient surface from Euler characteristic and gluing cycle rank
    let circles: u32 = components.iter().map(|c| c.glued.len() as u32).sum();
    let nodes = components.len() as u32 + 2;
    let cycle_rank = circles + 1 - nodes;
    let genus = s1.genus() + s2.genus() + cycle_rank;
    let punctures = (s1.ends() - glued_s1)
        + (s2.ends() - glued_s2)
        + components.iter().map(|c| c.punctures()).sum::<u32>();
    let chi_pieces: i64 = [
        2 - 2 * s1.genus() as i64 - s1.ends() as i64,
        2 - 2 * s2.genus() as i64 - s2.ends() as i64,
    ]
    .iter()
    .sum::<i64>()
        + components.iter().map(|c| 2 - c.ends as i64).sum::<i64>();
    let chi_ambient = 2 - 2 * genus as i64 - punctures as i64;
    debug_assert_eq!(
        chi_pieces, chi_ambient,
        "Euler characteristic additivity must hold"
    );
    // the accounting identity gives the ambient complexity back
    debug_assert_eq!(3 * genus + punctures, 3 + total_xi);

    Some(Decomposition {
        s1,
        s2,
        components: sorted,
        alpha,
        ambient: (genus, punctures),
        canonical_total: total_xi == 4,
    })
}

/// The five case shapes of the total-complexity-4 classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    I,
    II,
    III,
    IV,
    V,
}

impl Case {
    pub const ALL: [Case; 5] = [Case::I, Case::II, Case::III, Case::IV, Case::V];

    pub fn label(self) -> &'static str {
        match self {
            Case::I => "(i)",
            Case::II => "(ii)",
            Case::III => "(iii)",
            Case::IV => "(iv)",
            Case::V => "(v)",
        }
    }
}

/// Structural classification of one decomposition; `None` if it matches no
/// case shape.
pub fn classify(d: &Decomposition) -> Option<Case> {
    let xi1 = d.s1.xi();
    let xi2 = d.s2.xi();
    let comps = &d.components;
    let bridge = SmallComponent {
        ends: 2,
        glued: vec![Side::S1, Side::S2],
    };
    // (i): one core of complexity 2, the other 1, joined by one annulus
    if xi1 + xi2 == 3 && comps.len() == 1 && comps[0] == bridge {
        return Some(Case::I);
    }
    if xi1 != 1 || xi2 != 1 {
        return None;
    }
    match comps.len() {
        1 => {
            let c = &comps[0];
            // (ii): one pants glued once to each side, third end a puncture
            if c.ends == 3 && c.glued == vec![Side::S1, Side::S2] {
                return Some(Case::II);
            }
            None
        }
        2 => {
            let bridges = comps.iter().filter(|c| **c == bridge).count();
            if bridges == 2 {
                // (iii): two annuli, each joining S1 and S2
                return Some(Case::III);
            }
            if bridges == 1 {
                let other = comps.iter().find(|c| **c != bridge)?;
                if other.is_annulus() {
                    // (iv): second annulus returns to one side twice
                    let same_side = other.glued == vec![Side::S1, Side::S1]
                        || other.glued == vec![Side::S2, Side::S2];
                    if same_side {
                        return Some(Case::IV);
                    }
                } else if other.glued.len() == 1 {
                    // (v): pants glued once, with two punctures
                    return Some(Case::V);
                }
            }
            None
        }
        _ => None,
    }
}

/// Classification report over an enumerated batch.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseReport {
    pub by_case: BTreeMap<String, Vec<String>>,
    pub unclassified: Vec<String>,
    pub missing: Vec<String>,
}

impl CaseReport {
    pub fn complete(&self) -> bool {
        self.unclassified.is_empty() && self.missing.is_empty()
    }

    pub fn render_table(&self) -> String {
        let mut s = String::new();
        for (case, members) in &self.by_case {
            s.push_str(&format!("case {case}: {} decomposition(s)\n", members.len()));
            for m in members {
                s.push_str(&format!("  {m}\n"));
            }
        }
        if !self.unclassified.is_empty() {
            s.push_str("unclassified:\n");
            for m in &self.unclassified {
                s.push_str(&format!("  {m}\n"));
            }
        }
        if !self.missing.is_empty() {
            s.push_str(&format!("missing cases: {}\n", self.missing.join(", ")));
        }
        s
    }
}

/// Classifies every decomposition and reports unclassified outputs and
/// missing cases.
pub fn match_cases(ds: &[Decomposition]) -> CaseReport {
    let mut by_case: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut unclassified = Vec::new();
    let mut present: Vec<Case> = Vec::new();
    for d in ds {
        match classify(d) {
            Some(c) => {
                present.push(c);
                by_case
                    .entry(c.label().to_owned())
                    .or_default()
                    .push(d.describe());
            }
            None => unclassified.push(d.describe()),
        }
    }
    let missing = Case::ALL
        .iter()
        .filter(|c| !present.contains(c))
        .map(|c| c.label().to_owned())
        .collect();
    CaseReport {
        by_case,
        unclassified,
        missing,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accounting_identity_holds() {
        for d in enumerate_decompositions(4) {
            let xi_s0 = 0; // annuli and pants have complexity zero
            assert_eq!(d.s1.xi() + d.s2.xi() + xi_s0 + d.alpha, 4);
            assert!(d.alpha >= 1);
            assert!(d.canonical_total);
        }
    }

    #[test]
    fn xi3_cores_force_a_single_bridge() {
        let ds = enumerate_decompositions(4);
        for d in ds.iter().filter(|d| d.s1.xi() + d.s2.xi() == 3) {
            assert_eq!(d.components.len(), 1);
            assert!(d.components[0].is_annulus());
            assert_eq!(d.components[0].glued, vec![Side::S1, Side::S2]);
            assert_eq!(d.alpha, 1);
            assert_eq!(classify(d), Some(Case::I));
        }
    }

    #[test]
    fn all_five_cases_and_nothing_else() {
        let ds = enumerate_decompositions(4);
        let report = match_cases(&ds);
        assert!(report.complete(), "{}", report.render_table());
        assert_eq!(report.by_case.len(), 5);
    }

    #[test]
    fn two_bridge_case_present() {
        let ds = enumerate_decompositions(4);
        assert!(ds.iter().any(|d| classify(d) == Some(Case::III)));
        // and its ambient is the genus-1 candidate
        for d in ds.iter().filter(|d| classify(d) == Some(Case::III)) {
            assert_eq!(d.ambient, (1, 4));
            assert_eq!((d.s1, d.s2), (CoreKind::S04, CoreKind::S04));
        }
    }

    #[test]
    fn ambients_are_the_three_complexity_four_surfaces() {
        for d in enumerate_decompositions(4) {
            assert!(
                [(0, 7), (1, 4), (2, 1)].contains(&d.ambient),
                "{}",
                d.describe()
            );
        }
    }

    #[test]
    fn empty_input_reports_all_missing() {
        let report = match_cases(&[]);
        assert_eq!(report.missing.len(), 5);
        assert!(report.unclassified.is_empty());
    }

    #[test]
    fn no_alpha_zero_output() {
        assert!(enumerate_decompositions(4).iter().all(|d| d.alpha > 0));
        // total 2 would need alpha = 0; nothing qualifies
        assert!(enumerate_decompositions(2).is_empty());
    }

    #[test]
    fn case_iv_hosts_on_the_four_holed_sphere() {
        let ds = enumerate_decompositions(4);
        let iv: Vec<&Decomposition> = ds.iter().filter(|d| classify(d) == Some(Case::IV)).collect();
        assert!(!iv.is_empty());
        for d in iv {
            // the doubly-glued side must offer three ends
            let doubled = d
                .components
                .iter()
                .find(|c| c.is_annulus() && c.glued[0] == c.glued[1])
                .unwrap();
            let host = match doubled.glued[0] {
                Side::S1 => d.s1,
                Side::S2 => d.s2,
            };
            assert_eq!(host, CoreKind::S04);
        }
    }
}
