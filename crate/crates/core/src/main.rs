use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mmambig::grammar::{load_grammar, Grammar};
use mmambig::io::corpus::{generate_corpus, read_labels, CorpusCounts, LABELS_FILE};
use mmambig::io::{eval_corpus, load_lexicon, Lexicon, Pipeline};
use mmambig::{Error, Result, DEFAULT_THRESHOLD};

/// Detect and classify ambiguities in multimodal sentences.
#[derive(Parser)]
#[command(name = "mmambig", version)]
struct Cli {
    /// Grammar file (default: bundled grammar)
    #[arg(long, global = true, env = "MMAMBIG_GRAMMAR")]
    grammar: Option<PathBuf>,

    /// Close-by threshold in time units
    #[arg(long, global = true, default_value_t = DEFAULT_THRESHOLD)]
    threshold: u64,

    /// Lexicon file (default: bundled lexicon)
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the classification report of one sentence
    Classify { file: PathBuf },
    /// Write the syntax graph of one sentence as Graphviz DOT
    Graph {
        file: PathBuf,
        /// Output path; `-` for stdout
        #[arg(long)]
        dot: PathBuf,
    },
    /// Generate a labelled synthetic corpus
    Gen {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Seven numbers, or class=n pairs
        #[arg(long, default_value = "80,80,80,80,80,80,40")]
        counts: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify a labelled corpus and print accuracy figures
    Eval {
        /// Labels file (default: <dir>/labels.tsv)
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        dir: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io { path: path.into(), source: e })
}

fn pipeline(cli: &Cli) -> Result<Pipeline> {
    let grammar = match &cli.grammar {
        Some(p) => load_grammar(&read(p)?)?,
        None => Grammar::default_grammar(),
    };
    let lexicon = match &cli.lexicon {
        Some(p) => load_lexicon(&read(p)?)?,
        None => Lexicon::default_lexicon(),
    };
    Ok(Pipeline { grammar, lexicon, threshold: cli.threshold })
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.cmd {
        Cmd::Classify { file } => {
            let report = pipeline(cli)?.classify_xml(&read(file)?)?;
            print!("{}", report.to_text());
        }
        Cmd::Graph { file, dot } => {
            let s = pipeline(cli)?.sentence_from_xml(&read(file)?)?;
            let text = s.graph.to_dot();
            if dot.as_os_str() == "-" {
                print!("{text}");
            } else {
                fs::write(dot, text).map_err(|e| Error::Io { path: dot.clone(), source: e })?;
            }
        }
        Cmd::Gen { seed, counts, out } => {
            let labels = generate_corpus(*seed, &CorpusCounts::parse(counts)?, out)?;
            println!("wrote {} files to {}", labels.len(), out.display());
        }
        Cmd::Eval { labels, dir } => {
            let lpath = labels.clone().unwrap_or_else(|| dir.join(LABELS_FILE));
            let labels = read_labels(&read(&lpath)?)?;
            let m = eval_corpus(&labels, dir, &pipeline(cli)?);
            print!("{}", m.to_text());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; --help and --version succeed
            return ExitCode::from(u8::from(e.use_stderr()));
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 1 } else { 2 })
        }
    }
}
