//! Command-line front end: graph predicates and searches, word algebra,
//! curve enumeration, the decomposition case table, and triangulation
//! checks.
//!
//! Exit codes separate outcomes: 0 means success, 2 means a search or
//! check came back mathematically negative (no embedding found, a check
//! failed), and 1 means an actual error such as a malformed file.

mod store;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use curvegraph::complexes::{check_proposition, corpus, SimplicialComplex};
use curvegraph::curves::{
    braid_generators, default_seeds, geometric_intersection, oracle, parse_class, torus_twists,
    CurveClass, CurveGraphSample, FreeAutomorphism, GeneratorFile, SurfaceModel,
};
use curvegraph::decomposition::{enumerate_decompositions, match_cases};
use curvegraph::graph::{
    consistency_suite, eta_lower_bound, induced_embeddings, Catalog, EtaFacts, Graph,
};
use curvegraph::words::{
    enumerate_ball, format_word, kernel_ball_check, normal_form, parse_word, GraphSpec, HomFile,
};

/// Exit status for a mathematically negative result.
const NEGATIVE: u8 = 2;

#[derive(Parser)]
#[command(name = "curvegraph", version, about = "graphs, group words, and curves on punctured surfaces")]
struct Cli {
    /// Worker threads for parallel sections (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite graph catalog, predicates, and induced-subgraph search.
    Graphs {
        #[command(subcommand)]
        command: GraphsCommand,
    },
    /// Right-angled Artin group words and homomorphisms.
    Raag {
        #[command(subcommand)]
        command: RaagCommand,
    },
    /// Curves on punctured surfaces and curve-graph samples.
    Curves {
        #[command(subcommand)]
        command: CurvesCommand,
    },
    /// Surface decomposition enumeration and case classification.
    Decomp {
        #[command(subcommand)]
        command: DecompCommand,
    },
    /// Simplicial complexes and the thick-star criterion.
    Complexes {
        #[command(subcommand)]
        command: ComplexesCommand,
    },
}

#[derive(Subcommand)]
enum GraphsCommand {
    /// Print a catalog graph as JSON (or DOT).
    Catalog {
        name: String,
        #[arg(long)]
        dot: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Search for induced embeddings of a pattern in a host.
    Embed {
        pattern: String,
        host: String,
        /// 0 lists all embeddings.
        #[arg(long, default_value_t = 1)]
        limit: usize,
    },
    /// Decide whether every vertex sits in two size-N cliques meeting
    /// exactly at it.
    ThickStars { graph: String, n: usize },
    /// Certified lower bound for the minimal hosting complexity.
    Eta { graph: String },
    /// Run the catalog reconstruction cross-checks for both e-f variants.
    Consistency,
}

#[derive(Subcommand)]
enum RaagCommand {
    /// Canonical form of a word over a catalog graph.
    Normalize { graph: String, word: String },
    /// Verify that a homomorphism file maps every relator to the identity.
    CheckHom { file: PathBuf },
    /// Enumerate the ball of a given radius; optionally dump the elements.
    Ball {
        graph: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, default_value_t = 10_000_000)]
        cap: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Search the ball of the source for nontrivial kernel elements.
    KernelBall {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        #[arg(long, default_value_t = 10_000_000)]
        cap: usize,
    },
}

#[derive(Args, Clone)]
struct CurveConfig {
    /// Surface as `genus,punctures`, e.g. `0,7`.
    #[arg(long)]
    surface: String,
    /// Seed curves, one word per line; defaults to the round curves.
    #[arg(long)]
    seeds: Option<PathBuf>,
    /// Generator file; defaults to built-in braids (genus 0) or twists (1,1).
    #[arg(long)]
    gens: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[arg(long, default_value_t = 10)]
    maxlen: usize,
    #[arg(long, default_value_t = 20_000)]
    cap: usize,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CurvesCommand {
    /// Close the seeds under the mapping classes and fill the intersection
    /// matrix; results are cached under the configuration hash.
    Enumerate {
        #[command(flatten)]
        config: CurveConfig,
    },
    /// Export the disjointness graph of the enumerated sample.
    Graph {
        #[command(flatten)]
        config: CurveConfig,
        #[arg(long)]
        dot: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Search the sample's disjointness graph for an induced copy of a
    /// catalog graph and print the curves realizing it.
    Find {
        pattern: String,
        #[command(flatten)]
        config: CurveConfig,
        /// For gamma1: which e-f variants to try (`true`, `false`, `both`).
        #[arg(long, default_value = "both")]
        ef: String,
    },
    /// Cross-check one intersection number on the planar grid.
    Oracle {
        #[command(flatten)]
        config: CurveConfig,
        c1: String,
        c2: String,
        /// Fixed grid size; by default sweeps until stable.
        #[arg(long)]
        grid: Option<usize>,
    },
}

#[derive(Subcommand)]
enum DecompCommand {
    /// Enumerate decompositions and classify them into the five cases.
    Cases {
        #[arg(long, default_value_t = 4)]
        total: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum ComplexesCommand {
    /// Check the thick-star/link-size equivalence on the built-in corpus
    /// or on a complex file.
    Check {
        #[arg(long)]
        file: Option<PathBuf>,
        /// Facet size N; required with --file.
        #[arg(long)]
        n: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Graphs { command } => graphs(command),
        Command::Raag { command } => raag(command),
        Command::Curves { command } => curves_cmd(command),
        Command::Decomp { command } => decomp(command),
        Command::Complexes { command } => complexes(command),
    }
}

/// A graph argument is a file path or a catalog name.
fn resolve_graph(arg: &str) -> Result<Graph> {
    let path = Path::new(arg);
    if path.exists() {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading graph file {}", path.display()))?;
        return Graph::from_json(&text)
            .with_context(|| format!("parsing graph file {}", path.display()));
    }
    Ok(GraphSpec::Name(arg.to_owned()).build()?)
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn graphs(command: GraphsCommand) -> Result<u8> {
    match command {
        GraphsCommand::Catalog { name, dot, out } => {
            let g = resolve_graph(&name)?;
            let text = if dot { g.to_dot(&name) } else { g.to_json() };
            write_or_print(out.as_deref(), &text)?;
            if !dot {
                println!();
            }
            Ok(0)
        }
        GraphsCommand::Embed {
            pattern,
            host,
            limit,
        } => {
            let p = resolve_graph(&pattern)?;
            let h = resolve_graph(&host)?;
            let found = induced_embeddings(&p, &h, limit);
            if found.is_empty() {
                println!("no induced embedding of {pattern} in {host}");
                return Ok(NEGATIVE);
            }
            for e in &found {
                let rendered: Vec<String> = e
                    .map
                    .iter()
                    .enumerate()
                    .map(|(i, &hv)| format!("{} -> {}", p.label(i as u32), h.label(hv)))
                    .collect();
                println!("{}", rendered.join(", "));
            }
            Ok(0)
        }
        GraphsCommand::ThickStars { graph, n } => {
            let g = resolve_graph(&graph)?;
            let result = g.has_thick_stars(n);
            println!("{graph} has {n}-thick stars: {result}");
            Ok(0)
        }
        GraphsCommand::Eta { graph } => {
            let g = resolve_graph(&graph)?;
            let facts = registered_facts()?;
            let bound = eta_lower_bound(&g, &facts);
            println!("eta({graph}) >= {bound}");
            Ok(0)
        }
        GraphsCommand::Consistency => {
            let g0 = Catalog::Gamma0.build()?;
            let mut all_pass = true;
            for ef in [false, true] {
                let g1 = Catalog::Gamma1 { ef }.build()?;
                let report = consistency_suite(&g0, &g1);
                let passed = report.items.iter().filter(|i| i.pass).count();
                println!(
                    "gamma1 (e-f edge: {ef}): {passed}/{} checks pass",
                    report.items.len()
                );
                for item in &report.items {
                    let mark = if item.pass { "pass" } else { "FAIL" };
                    println!("  [{mark}] {}", item.name);
                    if !item.pass {
                        println!("        {}", item.detail);
                    }
                }
                all_pass &= report.all_pass();
            }
            Ok(if all_pass { 0 } else { NEGATIVE })
        }
    }
}

/// The one registered certified bound: the 7-vertex catalog graph needs
/// complexity at least 5.
fn registered_facts() -> Result<EtaFacts> {
    let mut facts = EtaFacts::new();
    facts.register(Catalog::Gamma0.build()?, 5)?;
    Ok(facts)
}

fn raag(command: RaagCommand) -> Result<u8> {
    match command {
        RaagCommand::Normalize { graph, word } => {
            let g = resolve_graph(&graph)?;
            let w = parse_word(&g, &word)?;
            let nf = normal_form(&g, &w)?;
            if nf.is_identity() {
                println!("(identity)");
            } else {
                println!("{}", format_word(&g, nf.letters()));
            }
            Ok(0)
        }
        RaagCommand::CheckHom { file } => {
            let text = fs::read_to_string(&file)
                .with_context(|| format!("reading hom file {}", file.display()))?;
            let hom_file: HomFile = serde_json::from_str(&text)
                .with_context(|| format!("parsing hom file {}", file.display()))?;
            let mut hom = hom_file.build()?;
            let relators = hom.source().edge_count();
            if hom.check()? {
                println!("homomorphism verified: all {relators} relators map to the identity");
                Ok(0)
            } else {
                println!("not a homomorphism: some relator has nontrivial image");
                Ok(NEGATIVE)
            }
        }
        RaagCommand::Ball {
            graph,
            radius,
            cap,
            out,
        } => {
            let g = resolve_graph(&graph)?;
            let ball = enumerate_ball(&g, radius, cap)?;
            println!("ball of radius {radius}: {} elements", ball.len());
            if let Some(path) = out {
                let mut text = String::new();
                for nf in &ball.elements {
                    text.push_str(&format_word(&g, nf.letters()));
                    text.push('\n');
                }
                fs::write(&path, text)
                    .with_context(|| format!("writing ball dump {}", path.display()))?;
            }
            Ok(0)
        }
        RaagCommand::KernelBall { file, radius, cap } => {
            let text = fs::read_to_string(&file)
                .with_context(|| format!("reading hom file {}", file.display()))?;
            let hom_file: HomFile = serde_json::from_str(&text)
                .with_context(|| format!("parsing hom file {}", file.display()))?;
            let mut hom = hom_file.build()?;
            if !hom.check()? {
                bail!("the map is not a homomorphism; kernel check is meaningless");
            }
            let report = kernel_ball_check(&hom, radius, cap)?;
            println!(
                "ball size {} at radius {radius}: {} violations",
                report.ball_size,
                report.violations.len()
            );
            for v in report.violations.iter().take(20) {
                println!("  kernel element: {}", format_word(hom.source(), v.letters()));
            }
            Ok(0)
        }
    }
}

fn parse_surface(text: &str) -> Result<SurfaceModel> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        bail!("surface must be `genus,punctures`, got `{text}`");
    }
    let g: u32 = parts[0].trim().parse().context("parsing genus")?;
    let n: u32 = parts[1].trim().parse().context("parsing punctures")?;
    Ok(SurfaceModel::new(g, n)?)
}

struct ResolvedConfig {
    model: SurfaceModel,
    seeds: Vec<CurveClass>,
    gens: Vec<FreeAutomorphism>,
    store: store::EnumerateConfig,
    cache: PathBuf,
}

fn resolve_config(config: &CurveConfig) -> Result<ResolvedConfig> {
    let model = parse_surface(&config.surface)?;
    let seeds = match &config.seeds {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading seeds file {}", path.display()))?;
            let mut seeds = Vec::new();
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                seeds.push(parse_class(&model, line)?);
            }
            seeds
        }
        None => default_seeds(&model),
    };
    if seeds.is_empty() {
        bail!("no seed curves: supply --seeds for this surface");
    }
    let (gens, gens_tag) = match &config.gens {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading generator file {}", path.display()))?;
            let file: GeneratorFile = serde_json::from_str(&text)
                .with_context(|| format!("parsing generator file {}", path.display()))?;
            (file.build(&model)?, text)
        }
        None => {
            let gens = if model.genus() == 0 {
                braid_generators(&model)?
            } else if (model.genus(), model.punctures()) == (1, 1) {
                torus_twists(&model)?
            } else {
                bail!(
                    "no built-in mapping classes for genus {}; supply --gens",
                    model.genus()
                );
            };
            (gens, "builtin".to_owned())
        }
    };
    let store = store::EnumerateConfig {
        genus: model.genus(),
        punctures: model.punctures(),
        depth: config.depth,
        maxlen: config.maxlen,
        cap: config.cap,
        gens_tag,
    };
    let cache = store::cache_dir(config.cache_dir.as_deref());
    Ok(ResolvedConfig {
        model,
        seeds,
        gens,
        store,
        cache,
    })
}

fn load_sample(config: &CurveConfig) -> Result<(SurfaceModel, CurveGraphSample, bool)> {
    let resolved = resolve_config(config)?;
    let (sample, hit) = store::sample_for(
        &resolved.model,
        &resolved.seeds,
        &resolved.gens,
        &resolved.store,
        &resolved.cache,
    )?;
    Ok((resolved.model, sample, hit))
}

fn curves_cmd(command: CurvesCommand) -> Result<u8> {
    match command {
        CurvesCommand::Enumerate { config } => {
            let (model, sample, hit) = load_sample(&config)?;
            let source = if hit { "cache" } else { "fresh run" };
            println!(
                "S_{{{},{}}}: {} classes ({source})",
                model.genus(),
                model.punctures(),
                sample.len()
            );
            let edges = sample.curve_graph().edge_count();
            println!("disjoint pairs: {edges}");
            Ok(0)
        }
        CurvesCommand::Graph { config, dot, out } => {
            let (_, sample, _) = load_sample(&config)?;
            let graph = sample.curve_graph();
            let text = if dot {
                graph.to_dot("curve_graph")
            } else {
                graph.to_json()
            };
            write_or_print(out.as_deref(), &text)?;
            if !dot {
                println!();
            }
            Ok(0)
        }
        CurvesCommand::Find {
            pattern,
            config,
            ef,
        } => {
            let variants: Vec<bool> = match ef.as_str() {
                "true" => vec![true],
                "false" => vec![false],
                "both" => vec![false, true],
                other => bail!("--ef must be true, false, or both, got `{other}`"),
            };
            let (model, sample, _) = load_sample(&config)?;
            let host = sample.curve_graph();
            println!(
                "searching {} classes on S_{{{},{}}} for induced {pattern}",
                sample.len(),
                model.genus(),
                model.punctures()
            );
            let mut found_any = false;
            for variant in variant_list(&pattern, &variants)? {
                let (label, target) = variant;
                let hits = induced_embeddings(&target, &host, 1);
                match hits.first() {
                    Some(embedding) => {
                        found_any = true;
                        println!("{label}: found");
                        let image: Vec<usize> =
                            embedding.map.iter().map(|&v| v as usize).collect();
                        for (p, &s) in embedding.map.iter().enumerate() {
                            println!(
                                "  {} -> {}",
                                target.label(p as u32),
                                sample.classes()[s as usize].format(&model)
                            );
                        }
                        let mut values = BTreeSet::new();
                        for i in 0..image.len() {
                            for j in 0..i {
                                values.insert(sample.intersection(image[i], image[j]));
                            }
                        }
                        println!("  pairwise intersection numbers: {values:?}");
                    }
                    None => println!("{label}: none"),
                }
            }
            Ok(if found_any { 0 } else { NEGATIVE })
        }
        CurvesCommand::Oracle {
            config,
            c1,
            c2,
            grid,
        } => {
            let model = parse_surface(&config.surface)?;
            let a = parse_class(&model, &c1)?;
            let b = parse_class(&model, &c2)?;
            let direct = geometric_intersection(&model, &a, &b)?;
            match grid {
                Some(size) => {
                    let outcome = oracle::grid_oracle_intersection(&model, &a, &b, size)?;
                    println!("i({c1}, {c2}) = {direct}; grid {size}: {outcome:?}");
                }
                None => match oracle::stabilized_intersection(&model, &a, &b)? {
                    Some(v) => {
                        println!("i({c1}, {c2}) = {direct}; grid oracle stabilized at {v}");
                        if v != direct {
                            bail!("oracle disagrees with the direct computation");
                        }
                    }
                    None => println!("i({c1}, {c2}) = {direct}; grid oracle did not stabilize"),
                },
            }
            Ok(0)
        }
    }
}

/// Pattern variants to try: `gamma1` expands to the requested e-f
/// variants; every other pattern is a single target.
fn variant_list(pattern: &str, variants: &[bool]) -> Result<Vec<(String, Graph)>> {
    if pattern.eq_ignore_ascii_case("gamma1") {
        variants
            .iter()
            .map(|&ef| {
                Ok((
                    format!("gamma1 (e-f edge: {ef})"),
                    Catalog::Gamma1 { ef }.build()?,
                ))
            })
            .collect()
    } else {
        Ok(vec![(pattern.to_owned(), resolve_graph(pattern)?)])
    }
}

fn decomp(command: DecompCommand) -> Result<u8> {
    match command {
        DecompCommand::Cases { total, json } => {
            let ds = enumerate_decompositions(total);
            let report = match_cases(&ds);
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                if total != 4 {
                    println!("(non-canonical total complexity {total})");
                }
                println!("{} decompositions", ds.len());
                print!("{}", report.render_table());
            }
            if total == 4 {
                Ok(if report.complete() { 0 } else { NEGATIVE })
            } else {
                Ok(0)
            }
        }
    }
}

fn complexes(command: ComplexesCommand) -> Result<u8> {
    match command {
        ComplexesCommand::Check { file, n } => {
            let cases: Vec<(String, SimplicialComplex, usize)> = match file {
                Some(path) => {
                    let n = n.context("--n is required with --file")?;
                    let text = fs::read_to_string(&path)
                        .with_context(|| format!("reading complex file {}", path.display()))?;
                    let k = SimplicialComplex::from_json(&text)?;
                    vec![(path.display().to_string(), k, n)]
                }
                None => vec![
                    ("tetrahedron".into(), corpus::tetrahedron(), 3),
                    ("octahedron".into(), corpus::octahedron(), 3),
                    ("icosahedron".into(), corpus::icosahedron(), 3),
                    ("4-simplex boundary".into(), corpus::simplex4_boundary(), 4),
                    ("7-vertex torus".into(), corpus::torus7(), 3),
                ],
            };
            let mut all_equivalent = true;
            for (name, complex, n) in cases {
                let report = check_proposition(&complex, n);
                println!(
                    "{name} (N = {n}): thick stars {}, links >= {} facets {}, equivalent: {}",
                    report.thick_stars,
                    n + 1,
                    report.links_large,
                    report.equivalent()
                );
                println!(
                    "  proper: codimension-1 reading {}, any-dimension reading {}",
                    report.readings.codim1, report.readings.any_dimension
                );
                for failure in &report.precondition_failures {
                    println!("  precondition: {failure}");
                    all_equivalent = false;
                }
                all_equivalent &= report.equivalent();
            }
            Ok(if all_equivalent { 0 } else { NEGATIVE })
        }
    }
}
