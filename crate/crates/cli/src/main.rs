mod spec;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hrg::graphprod::{chamber_of, enumerate_group, gp_multiply, normalize, GPWord, GraphOfGroups, NormalWord};
use hrg::hrs::{sector_decompose, verify_system, walls};
use hrg::hypergraph::{CayleySystem, HypergraphDocument};
use hrg::words::{coset_min, double_coset_min, exchange, length_and_reduced, reduce_word, Side, Word};

use spec::{gp_failure, load, Failure, Input};

#[derive(Parser)]
#[command(name = "hrg", version, about = "Hyperreflection systems on Cayley hypergraphs and graph products of groups")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand)]
enum Command {
    /// Check every member of Σ and print the report; exit 1 on failure.
    Verify { input: PathBuf },
    /// Export the Cayley hypergraph.
    Cayley {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the walls and their fixed edges.
    Walls { input: PathBuf },
    /// Reduce a word by the deletion procedure.
    Reduce {
        input: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Word length of the element a word represents.
    Length {
        input: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Exchange a letter `s0` into a reduced word.
    Exchange {
        input: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long)]
        s0: String,
    },
    /// Split `g = h k` with `h` in the fundamental sector of `G_A`.
    Sector {
        input: PathBuf,
        /// Σ indices of `A`, comma separated.
        #[arg(long, default_value = "")]
        sigma: String,
        #[arg(long)]
        word: String,
    },
    /// Shortest element of the coset of `Σ[sigma]` through `g`.
    CosetMin {
        input: PathBuf,
        #[arg(long)]
        sigma: usize,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
    },
    /// Shortest element of `G_A g G_B`.
    DoubleCosetMin {
        input: PathBuf,
        #[arg(long, default_value = "")]
        sigma: String,
        #[arg(long, default_value = "")]
        sigma_b: String,
        #[arg(long)]
        word: String,
    },
    /// Normal form of a graph product word.
    Normalize {
        input: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Normal form of a product of graph product words.
    Multiply {
        input: PathBuf,
        #[arg(long, required = true)]
        word: Vec<String>,
    },
    /// Chamber label of `g` for the wall of `Σ_v[sigma]`.
    Chamber {
        input: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value_t = 0)]
        sigma: usize,
        #[arg(long)]
        word: String,
    },
    /// Enumerate the group, failing with exit 3 beyond the cap.
    Enumerate {
        input: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args.command) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code as u8)
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn names(sys: &CayleySystem, elems: &[usize]) -> Vec<String> {
    elems.iter().map(|&g| sys.group().name(g).to_string()).collect()
}

fn parse_word(sys: &CayleySystem, literal: &str) -> Result<Word, Failure> {
    Word::parse(sys, literal).map_err(|e| Failure::input(format!("--word: {e}")))
}

fn parse_indices(flag: &str, literal: &str) -> Result<Vec<usize>, Failure> {
    literal
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| Failure::input(format!("{flag}: `{p}` is not an index"))))
        .collect()
}

fn parse_gp_word(gp: &GraphOfGroups, literal: &str) -> Result<GPWord, Failure> {
    GPWord::parse(gp, literal).map_err(|e| Failure::input(format!("--word: {e}")))
}

fn nf_json(gp: &GraphOfGroups, x: &NormalWord) -> Value {
    json!(x.word().names(gp))
}

fn run(command: Command) -> Result<(String, u8), Failure> {
    match command {
        Command::Verify { input } => {
            let sys = load(&input)?.system()?;
            let report = verify_system(&sys);
            let members: Vec<Value> = report
                .members
                .iter()
                .map(|m| {
                    json!({
                        "sigma_index": m.sigma_index,
                        "subgroup": names(&sys, sys.sigma()[m.sigma_index].elements()),
                        "fixed_edges": m.fixed_edges.len(),
                        "components": m.components.blocks().iter().map(|b| names(&sys, b)).collect::<Vec<_>>(),
                        "action_map": m.action_map.iter().map(|&(g, c)| json!([sys.group().name(g), c])).collect::<Vec<_>>(),
                        "verdict": m.verdict,
                    })
                })
                .collect();
            let out = json!({ "group_order": sys.group().order(), "pass": report.pass, "members": members });
            Ok((pretty(&out), if report.pass { 0 } else { 1 }))
        }
        Command::Cayley { input, format, out } => {
            let sys = load(&input)?.system()?;
            let text = match format {
                Format::Dot => sys.hypergraph().to_dot(sys.names()),
                Format::Json => {
                    let doc = HypergraphDocument::new(sys.hypergraph(), sys.names());
                    pretty(&serde_json::to_value(doc).expect("documents serialize"))
                }
            };
            match out {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| Failure::input(format!("--out: {e}")))?;
                    Ok((String::new(), 0))
                }
                None => Ok((text, 0)),
            }
        }
        Command::Walls { input } => {
            let sys = load(&input)?.system()?;
            let out: Vec<Value> = walls(&sys)
                .iter()
                .map(|w| {
                    json!({
                        "subgroup": names(&sys, w.subgroup.elements()),
                        "fixed_edges": w.fixed_edges.iter().map(|&e| names(&sys, sys.hypergraph().edge(e))).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok((pretty(&json!(out)), 0))
        }
        Command::Reduce { input, word } => {
            let sys = load(&input)?.system()?;
            let w = parse_word(&sys, &word)?;
            Ok((serde_json::to_string(&reduce_word(&sys, &w).names(&sys)).expect("strings serialize") + "\n", 0))
        }
        Command::Length { input, word } => {
            let sys = load(&input)?.system()?;
            let g = parse_word(&sys, &word)?.evaluate(&sys);
            let (length, geodesic) = length_and_reduced(&sys, g);
            let out = json!({ "element": sys.group().name(g), "length": length, "geodesic": geodesic.names(&sys) });
            Ok((pretty(&out), 0))
        }
        Command::Exchange { input, word, s0 } => {
            let sys = load(&input)?.system()?;
            let w = parse_word(&sys, &word)?;
            let s0 = *Word::parse(&sys, &s0)
                .map_err(|e| Failure::input(format!("--s0: {e}")))?
                .letters()
                .first()
                .filter(|_| !s0.contains(','))
                .ok_or_else(|| Failure::input("--s0: expected exactly one letter"))?;
            let outcome = exchange(&sys, &w, s0).map_err(|e| Failure::input(format!("--word: {e}")))?;
            let witness = outcome.witness(&w, s0).map(|x| x.names(&sys));
            let described = match outcome {
                hrg::words::ExchangeOutcome::Deletion { index } => json!({ "kind": "deletion", "index": index }),
                hrg::words::ExchangeOutcome::Replacement { index, replacement } => {
                    json!({ "kind": "replacement", "index": index, "replacement": sys.group().name(replacement) })
                }
                hrg::words::ExchangeOutcome::NoExchange => json!({ "kind": "no_exchange" }),
            };
            Ok((pretty(&json!({ "outcome": described, "witness": witness })), 0))
        }
        Command::Sector { input, sigma, word } => {
            let sys = load(&input)?.system()?;
            let subset = parse_indices("--sigma", &sigma)?;
            let g = parse_word(&sys, &word)?.evaluate(&sys);
            let d = sector_decompose(&sys, &subset, g).map_err(|e| Failure::input(format!("--sigma: {e}")))?;
            let grp = sys.group();
            Ok((pretty(&json!({ "h": grp.name(d.h), "k": grp.name(d.k) })), 0))
        }
        Command::CosetMin { input, sigma, word, side } => {
            let sys = load(&input)?.system()?;
            let g = parse_word(&sys, &word)?.evaluate(&sys);
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let m = coset_min(&sys, sigma, g, side).map_err(|e| Failure::input(format!("--sigma: {e}")))?;
            Ok((pretty(&json!({ "min": sys.group().name(m), "length": sys.length(m) })), 0))
        }
        Command::DoubleCosetMin { input, sigma, sigma_b, word } => {
            let sys = load(&input)?.system()?;
            let a = parse_indices("--sigma", &sigma)?;
            let b = parse_indices("--sigma-b", &sigma_b)?;
            let g = parse_word(&sys, &word)?.evaluate(&sys);
            let d = double_coset_min(&sys, &a, &b, g).map_err(|e| Failure::input(format!("--sigma: {e}")))?;
            let grp = sys.group();
            let out = json!({ "min": grp.name(d.min), "left": grp.name(d.left), "right": grp.name(d.right) });
            Ok((pretty(&out), 0))
        }
        Command::Normalize { input, word } => {
            let input = load(&input)?;
            let (gp, _) = input.graph_product("normalize")?;
            let w = parse_gp_word(gp, &word)?;
            Ok((serde_json::to_string(&nf_json(gp, &normalize(gp, &w))).expect("values serialize") + "\n", 0))
        }
        Command::Multiply { input, word } => {
            let input = load(&input)?;
            let (gp, _) = input.graph_product("multiply")?;
            let mut acc = NormalWord::identity();
            for literal in word.iter().rev() {
                acc = gp_multiply(gp, &normalize(gp, &parse_gp_word(gp, literal)?), &acc);
            }
            Ok((serde_json::to_string(&nf_json(gp, &acc)).expect("values serialize") + "\n", 0))
        }
        Command::Chamber { input, vertex, sigma, word } => {
            let input = load(&input)?;
            let (gp, systems) = input.graph_product("chamber")?;
            let v = gp
                .vertex_by_name(&vertex)
                .ok_or_else(|| Failure::input(format!("--vertex: unknown vertex `{vertex}`")))?;
            if sigma >= systems.system(v).sigma().len() {
                return Err(Failure::input(format!("--sigma: vertex `{vertex}` has no sigma member {sigma}")));
            }
            let g = normalize(gp, &parse_gp_word(gp, &word)?);
            let s = chamber_of(gp, systems, v, sigma, &g).map_err(|e| gp_failure("--sigma", e))?;
            let out = json!({ "vertex": vertex, "sigma": sigma, "chamber": gp.group(v).name(s) });
            Ok((pretty(&out), 0))
        }
        Command::Enumerate { input, cap } => enumerate(load(&input)?, cap),
    }
}

fn enumerate(input: Input, cap: Option<usize>) -> Result<(String, u8), Failure> {
    let cap = cap.unwrap_or(input.cap);
    let names: Vec<String> = match &input.loaded {
        spec::Loaded::GraphProduct { gp, .. } => {
            enumerate_group(gp, cap).map_err(|e| gp_failure("graph_product", e))?.group.names().to_vec()
        }
        spec::Loaded::System(sys) => {
            if sys.group().order() > cap {
                return Err(Failure::cap(cap));
            }
            sys.names().to_vec()
        }
    };
    Ok((pretty(&json!({ "order": names.len(), "elements": names })), 0))
}
