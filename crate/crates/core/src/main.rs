//! Command-line front end: evaluate and search blockmodels, suggest the
//! valued-blockmodeling parameter m, or run the homogeneity-first workflow.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use blockmodeling::block::DiagonalPolicy;
use blockmodeling::criterion::{AllowedBlocks, Approach, ModelSpec};
use blockmodeling::error::Error;
use blockmodeling::inconsistency::{BlockType, RowColFunction};
use blockmodeling::io::{read_network, write_dense_csv, InputFormat};
use blockmodeling::network::ValuedNetwork;
use blockmodeling::report::{
    image_csv, inconsistencies_csv, partition_csv, render_reordered_matrix, MachineSummary,
};
use blockmodeling::search::{
    exhaustive_search, local_search, multistart_report, SearchConfig, SearchResult,
};
use blockmodeling::summaries::suggest_m;
use blockmodeling::workflow::workflow_preset;
use blockmodeling::{datasets, Result};

#[derive(Parser, Debug, Default)]
#[command(
    name = "blockmodeling",
    about = "Generalized blockmodeling of valued networks",
    disable_help_subcommand = true
)]
struct Cli {
    /// Input network: a file path or "builtin:students"
    #[arg(long)]
    input: Option<String>,
    /// Input format: dense (matrix CSV/TSV) or edges (source,target,value)
    #[arg(long)]
    format: Option<String>,
    /// Criterion family: binary, valued, ss or ad
    #[arg(long)]
    approach: Option<String>,
    /// Allowed block types for every position, e.g. "null,reg"
    #[arg(long)]
    blocks: Option<String>,
    /// Per-position allowed types: rows ';', cells ',', types '|'
    #[arg(long = "blocks-matrix")]
    blocks_matrix: Option<String>,
    /// Row/column function for regular blocks: max, sum or mean
    #[arg(long)]
    f: Option<String>,
    /// Threshold parameter of the valued approach
    #[arg(long)]
    m: Option<f64>,
    /// Number of clusters
    #[arg(long)]
    k: Option<usize>,
    /// Binarize the network at this threshold before analysis
    #[arg(long)]
    slice: Option<f64>,
    /// Cap tie values at this ceiling before analysis
    #[arg(long)]
    censor: Option<f64>,
    /// Local-search restarts
    #[arg(long)]
    restarts: Option<usize>,
    /// Random seed
    #[arg(long)]
    seed: Option<u64>,
    /// Divide each block inconsistency by its cell count
    #[arg(long)]
    normalize: bool,
    /// Diagonal treatment: ignore, variant or ordinary
    #[arg(long)]
    diagonal: Option<String>,
    /// Output directory
    #[arg(long)]
    out: Option<String>,
    /// Run the homogeneity-first workflow preset
    #[arg(long = "preset-workflow")]
    preset_workflow: bool,
    /// Report the parameter-m diagnostics instead of fitting
    #[arg(long = "suggest-m")]
    suggest_m: bool,
    /// Enumerate all partitions instead of local search
    #[arg(long)]
    exhaustive: bool,
    /// key=value configuration file; command-line flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Fully resolved run configuration.
struct AnalysisConfig {
    input: String,
    format: InputFormat,
    approach: Option<String>,
    blocks: Option<String>,
    blocks_matrix: Option<String>,
    f: RowColFunction,
    m: Option<f64>,
    k: Option<usize>,
    slice: Option<f64>,
    censor: Option<f64>,
    restarts: usize,
    seed: u64,
    normalize: bool,
    diagonal: Option<DiagonalPolicy>,
    out: PathBuf,
    preset_workflow: bool,
    suggest_m: bool,
    exhaustive: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let file_cfg = match &cli.config {
        Some(path) => parse_config_file(path)?,
        None => BTreeMap::new(),
    };
    let config = resolve(cli, &file_cfg)?;
    let t0 = Instant::now();

    let net = load_input(&config)?;
    let net = preprocess(&config, net)?;

    if config.suggest_m {
        return run_suggest_m(&config, &net);
    }
    if config.preset_workflow {
        return run_workflow(&config, &net, t0);
    }
    run_analysis(&config, &net, t0)
}

fn parse_config_file(path: &Path) -> Result<BTreeMap<String, (usize, String)>> {
    let text = fs::read_to_string(path)?;
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("expected key=value, got {trimmed:?}"),
        })?;
        out.insert(
            key.trim().to_string(),
            (line_no, value.trim().to_string()),
        );
    }
    Ok(out)
}

fn resolve(cli: Cli, file: &BTreeMap<String, (usize, String)>) -> Result<AnalysisConfig> {
    let get = |key: &str| file.get(key).map(|(_, v)| v.clone());
    let line_of = |key: &str| file.get(key).map(|(l, _)| *l).unwrap_or(0);
    let parse_num = |key: &str| -> Result<Option<f64>> {
        match get(key) {
            Some(v) => v.parse::<f64>().map(Some).map_err(|_| Error::Parse {
                line: line_of(key),
                message: format!("{key} must be a number, got {v:?}"),
            }),
            None => Ok(None),
        }
    };
    let parse_bool = |key: &str| -> Result<bool> {
        match get(key) {
            Some(v) => match v.as_str() {
                "true" | "1" | "yes" => Ok(true),
                "false" | "0" | "no" => Ok(false),
                other => Err(Error::Parse {
                    line: line_of(key),
                    message: format!("{key} must be true or false, got {other:?}"),
                }),
            },
            None => Ok(false),
        }
    };

    for key in file.keys() {
        const KNOWN: [&str; 18] = [
            "input", "format", "approach", "blocks", "blocks-matrix", "f", "m", "k", "slice",
            "censor", "restarts", "seed", "normalize", "diagonal", "out", "preset-workflow",
            "suggest-m", "exhaustive",
        ];
        if !KNOWN.contains(&key.as_str()) {
            return Err(Error::Parse {
                line: line_of(key),
                message: format!("unknown configuration key {key:?}"),
            });
        }
    }

    let input = cli
        .input
        .or_else(|| get("input"))
        .ok_or_else(|| Error::Config("no input network; pass --input".into()))?;
    let format_str = cli.format.or_else(|| get("format")).unwrap_or_else(|| "dense".into());
    let format = InputFormat::parse(&format_str)
        .ok_or_else(|| Error::Config(format!("unknown format {format_str:?} (dense or edges)")))?;
    let f_str = cli.f.or_else(|| get("f")).unwrap_or_else(|| "max".into());
    let f = RowColFunction::parse(&f_str)
        .ok_or_else(|| Error::Config(format!("unknown f {f_str:?} (max, sum or mean)")))?;
    let diagonal = match cli.diagonal.or_else(|| get("diagonal")) {
        Some(d) => Some(DiagonalPolicy::parse(&d).ok_or_else(|| {
            Error::Config(format!("unknown diagonal policy {d:?} (ignore, variant or ordinary)"))
        })?),
        None => None,
    };
    let k = match cli.k {
        Some(k) => Some(k),
        None => match get("k") {
            Some(v) => Some(v.parse::<usize>().map_err(|_| Error::Parse {
                line: line_of("k"),
                message: format!("k must be a positive integer, got {v:?}"),
            })?),
            None => None,
        },
    };
    let restarts = match cli.restarts {
        Some(r) => r,
        None => match get("restarts") {
            Some(v) => v.parse::<usize>().map_err(|_| Error::Parse {
                line: line_of("restarts"),
                message: format!("restarts must be a positive integer, got {v:?}"),
            })?,
            None => 100,
        },
    };
    let seed = match cli.seed {
        Some(s) => s,
        None => match get("seed") {
            Some(v) => v.parse::<u64>().map_err(|_| Error::Parse {
                line: line_of("seed"),
                message: format!("seed must be an unsigned integer, got {v:?}"),
            })?,
            None => 0,
        },
    };

    Ok(AnalysisConfig {
        input,
        format,
        approach: cli.approach.or_else(|| get("approach")),
        blocks: cli.blocks.or_else(|| get("blocks")),
        blocks_matrix: cli.blocks_matrix.or_else(|| get("blocks-matrix")),
        f,
        m: match cli.m {
            Some(m) => Some(m),
            None => parse_num("m")?,
        },
        k,
        slice: match cli.slice {
            Some(s) => Some(s),
            None => parse_num("slice")?,
        },
        censor: match cli.censor {
            Some(c) => Some(c),
            None => parse_num("censor")?,
        },
        restarts,
        seed,
        normalize: cli.normalize || parse_bool("normalize")?,
        diagonal,
        out: PathBuf::from(cli.out.or_else(|| get("out")).unwrap_or_else(|| "out".into())),
        preset_workflow: cli.preset_workflow || parse_bool("preset-workflow")?,
        suggest_m: cli.suggest_m || parse_bool("suggest-m")?,
        exhaustive: cli.exhaustive || parse_bool("exhaustive")?,
    })
}

fn load_input(config: &AnalysisConfig) -> Result<ValuedNetwork> {
    // loops are meaningful only when the diagonal policy says they are
    let diagonal_relevant = matches!(
        config.diagonal,
        Some(DiagonalPolicy::TableVariant) | Some(DiagonalPolicy::Ordinary)
    );
    if let Some(name) = config.input.strip_prefix("builtin:") {
        return match name {
            "students" => Ok(datasets::students()),
            other => Err(Error::Config(format!("unknown builtin dataset {other:?}"))),
        };
    }
    read_network(Path::new(&config.input), config.format, diagonal_relevant)
}

fn preprocess(config: &AnalysisConfig, net: ValuedNetwork) -> Result<ValuedNetwork> {
    let net = match config.censor {
        Some(c) => {
            if let (Some(m), Some("valued")) = (config.m, config.approach.as_deref()) {
                if c < m {
                    return Err(Error::Config(format!(
                        "censoring ceiling {c} is below m = {m}; complete blocks could never fit"
                    )));
                }
            }
            net.censor(c)?
        }
        None => net,
    };
    match config.slice {
        Some(t) => net.slice(t),
        None => Ok(net),
    }
}

fn parse_blocks_list(s: &str) -> Result<Vec<BlockType>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            BlockType::parse(t).ok_or_else(|| Error::Config(format!("unknown block type {t:?}")))
        })
        .collect()
}

fn parse_blocks_matrix(s: &str, k: usize) -> Result<AllowedBlocks> {
    let rows: Vec<&str> = s.split(';').collect();
    if rows.len() != k {
        return Err(Error::Config(format!(
            "--blocks-matrix has {} rows, expected k = {k}",
            rows.len()
        )));
    }
    let mut matrix = Vec::with_capacity(k);
    for row in rows {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != k {
            return Err(Error::Config(format!(
                "--blocks-matrix row has {} cells, expected k = {k}",
                cells.len()
            )));
        }
        let mut row_sets = Vec::with_capacity(k);
        for cell in cells {
            let types: Result<Vec<BlockType>> = cell
                .split('|')
                .map(|t| {
                    let t = t.trim();
                    BlockType::parse(t)
                        .ok_or_else(|| Error::Config(format!("unknown block type {t:?}")))
                })
                .collect();
            row_sets.push(types?);
        }
        matrix.push(row_sets);
    }
    Ok(AllowedBlocks::PerCell(matrix))
}

fn build_spec(config: &AnalysisConfig, k: usize) -> Result<ModelSpec> {
    // slicing implies the binary approach unless one is named explicitly
    let approach_str = match (&config.approach, config.slice) {
        (Some(a), _) => a.clone(),
        (None, Some(_)) => "binary".to_string(),
        (None, None) => {
            return Err(Error::Config(
                "no approach; pass --approach binary|valued|ss|ad".into(),
            ))
        }
    };
    let approach = match approach_str.as_str() {
        "binary" => Approach::Binary,
        "valued" => Approach::Valued {
            m: config
                .m
                .ok_or_else(|| Error::Config("the valued approach requires --m".into()))?,
        },
        "ss" => Approach::HomogeneitySumSquares,
        "ad" => Approach::HomogeneityAbsoluteDeviations,
        other => {
            return Err(Error::Config(format!(
                "unknown approach {other:?} (binary, valued, ss or ad)"
            )))
        }
    };
    if !matches!(approach, Approach::Valued { .. }) && config.m.is_some() {
        return Err(Error::Config(
            "--m only applies to the valued approach".into(),
        ));
    }
    let allowed = match (&config.blocks, &config.blocks_matrix) {
        (Some(_), Some(_)) => {
            return Err(Error::Config(
                "pass either --blocks or --blocks-matrix, not both".into(),
            ))
        }
        (Some(list), None) => AllowedBlocks::Global(parse_blocks_list(list)?),
        (None, Some(matrix)) => parse_blocks_matrix(matrix, k)?,
        (None, None) => {
            return Err(Error::Config(
                "no allowed blocks; pass --blocks (e.g. \"null,reg\") or --blocks-matrix".into(),
            ))
        }
    };
    let mut spec = ModelSpec::new(approach, allowed, config.f).with_normalize(config.normalize);
    if let Some(policy) = config.diagonal {
        spec = spec.with_policy(policy);
    }
    Ok(spec)
}

fn config_echo(config: &AnalysisConfig) -> BTreeMap<String, String> {
    let mut echo = BTreeMap::new();
    let mut put = |k: &str, v: String| {
        echo.insert(k.to_string(), v);
    };
    put("input", config.input.clone());
    put(
        "format",
        match config.format {
            InputFormat::Dense => "dense".into(),
            InputFormat::Edges => "edges".into(),
        },
    );
    if let Some(a) = &config.approach {
        put("approach", a.clone());
    }
    if let Some(b) = &config.blocks {
        put("blocks", b.clone());
    }
    if let Some(b) = &config.blocks_matrix {
        put("blocks-matrix", b.clone());
    }
    put("f", config.f.tag().to_string());
    if let Some(m) = config.m {
        put("m", m.to_string());
    }
    if let Some(k) = config.k {
        put("k", k.to_string());
    }
    if let Some(s) = config.slice {
        put("slice", s.to_string());
    }
    if let Some(c) = config.censor {
        put("censor", c.to_string());
    }
    put("restarts", config.restarts.to_string());
    put("seed", config.seed.to_string());
    put("normalize", config.normalize.to_string());
    if let Some(d) = config.diagonal {
        put("diagonal", d.tag().to_string());
    }
    put("exhaustive", config.exhaustive.to_string());
    echo
}

fn write_outputs(out: &Path, files: &[(&str, String)]) -> Result<()> {
    fs::create_dir_all(out)?;
    for (name, content) in files {
        fs::write(out.join(name), content)?;
    }
    Ok(())
}

fn run_analysis(config: &AnalysisConfig, net: &ValuedNetwork, t0: Instant) -> Result<()> {
    let k = config
        .k
        .ok_or_else(|| Error::Config("no cluster count; pass --k".into()))?;
    let spec = build_spec(config, k)?;
    for warning in spec.validate(net, k)? {
        eprintln!("warning: {warning}");
    }
    let search_config = SearchConfig::new(k)
        .with_restarts(config.restarts)
        .with_seed(config.seed);
    let result: SearchResult = if config.exhaustive {
        exhaustive_search(net, &spec, k)?
    } else {
        local_search(net, &spec, &search_config, None)?
    };
    let elapsed = t0.elapsed();

    let summary = MachineSummary::from_search(net, &result, config_echo(config));
    let report = render_report(config, net, &result, elapsed.as_millis());
    write_outputs(
        &config.out,
        &[
            ("network.csv", write_dense_csv(net)),
            ("partition.csv", partition_csv(net, &result.best.partition)),
            ("image.csv", image_csv(&result.best.image)),
            (
                "block_inconsistencies.csv",
                inconsistencies_csv(&result.best.block_inconsistencies),
            ),
            (
                "matrix_reordered.txt",
                render_reordered_matrix(net, &result.best.partition),
            ),
            ("summary.json", summary.to_json()),
            ("report.txt", report),
        ],
    )?;
    println!(
        "total inconsistency {} over {} optima ({} evaluations); outputs in {}",
        result.best.total,
        result.optima.len(),
        result.evaluations,
        config.out.display()
    );
    Ok(())
}

fn render_report(
    config: &AnalysisConfig,
    net: &ValuedNetwork,
    result: &SearchResult,
    elapsed_ms: u128,
) -> String {
    let mut out = String::new();
    out.push_str("blockmodeling run\n=================\n\n");
    for (k, v) in config_echo(config) {
        out.push_str(&format!("{k} = {v}\n"));
    }
    out.push_str(&format!("\ntotal inconsistency: {}\n", result.best.total));
    out.push_str(&format!("co-optimal partitions: {}\n", result.optima.len()));
    if !result.restart_finals.is_empty() {
        let report = multistart_report(result);
        out.push_str(&format!(
            "distinct local optima: {}\nrestarts reaching best: {}\n",
            report.distinct_local_optima, report.restarts_reaching_best
        ));
    }
    out.push_str(&format!("evaluations: {}\n", result.evaluations));
    out.push_str(&format!("elapsed: {elapsed_ms} ms\n\nimage:\n"));
    out.push_str(&image_csv(&result.best.image));
    out.push_str("\nblock inconsistencies:\n");
    out.push_str(&inconsistencies_csv(&result.best.block_inconsistencies));
    out.push_str("\nreordered matrix:\n");
    out.push_str(&render_reordered_matrix(net, &result.best.partition));
    out
}

fn run_suggest_m(config: &AnalysisConfig, net: &ValuedNetwork) -> Result<()> {
    let regular = config
        .blocks
        .as_deref()
        .map(parse_blocks_list)
        .transpose()?
        .map(|types| {
            types.iter().any(|t| {
                matches!(
                    t,
                    BlockType::RowRegular | BlockType::ColRegular | BlockType::Regular
                )
            })
        })
        .unwrap_or(false);
    let suggestion = suggest_m(net, None, config.f, regular, config.slice)?;
    let json = serde_json::to_string_pretty(&suggestion).expect("serializable");
    write_outputs(
        &config.out,
        &[
            ("m_suggestion.json", json),
            ("histogram.csv", suggestion.histogram.to_csv()),
        ],
    )?;
    match &suggestion.recommended {
        blockmodeling::MRange::Interval(lo, hi) => {
            println!("distribution is bimodal; choose m between {lo:.3} and {hi:.3}")
        }
        blockmodeling::MRange::Around(x) => {
            println!("distribution is unimodal; choose m around {x:.3}")
        }
    }
    println!("test candidates: {:?}", suggestion.candidates);
    if let Some((lo, hi)) = suggestion.slice_rule {
        println!("slicing rule: m between {lo} and {hi}");
    }
    println!("outputs in {}", config.out.display());
    Ok(())
}

fn run_workflow(config: &AnalysisConfig, net: &ValuedNetwork, t0: Instant) -> Result<()> {
    let k = config
        .k
        .ok_or_else(|| Error::Config("no cluster count; pass --k".into()))?;
    let f = if config.f == RowColFunction::Max {
        RowColFunction::Max
    } else {
        RowColFunction::Mean
    };
    let report = workflow_preset(net, k, f, config.restarts, config.seed)?;
    let elapsed = t0.elapsed();

    let mut text = String::new();
    text.push_str("homogeneity-first workflow\n==========================\n\n");
    text.push_str(&format!(
        "homogeneity f = {}, valued f = {}\n\n",
        report.f_homogeneity.tag(),
        report.f_valued.tag()
    ));
    text.push_str(&format!(
        "sum-of-squares optimum: total {}\n",
        report.hom_ss.best.total
    ));
    text.push_str(&partition_csv(net, &report.hom_ss.best.partition));
    text.push_str(&format!(
        "\nabsolute-deviations optimum: total {}\n",
        report.hom_ad.best.total
    ));
    text.push_str(&partition_csv(net, &report.hom_ad.best.partition));
    text.push_str(&format!("\nm candidates: {:?}\n", report.m_candidates));
    if let Some(note) = &report.note {
        text.push_str(&format!("\nnote: {note}\n"));
    }
    for (m, run) in &report.valued_runs {
        text.push_str(&format!(
            "\nvalued m = {m}: total {}\nimage:\n{}",
            run.best.total,
            image_csv(&run.best.image)
        ));
    }
    text.push_str(&format!("\nelapsed: {} ms\n", elapsed.as_millis()));

    let json = serde_json::to_string_pretty(&report).expect("serializable");
    write_outputs(
        &config.out,
        &[("workflow.json", json), ("workflow.txt", text)],
    )?;
    println!(
        "workflow complete; m candidates {:?}; outputs in {}",
        report.m_candidates,
        config.out.display()
    );
    Ok(())
}
