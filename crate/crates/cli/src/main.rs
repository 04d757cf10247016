//! Command-line access to cubefold.
//!
//! Exit codes: 0 and 1 answer the question asked (yes/no, found/none), 2 is
//! an unreadable or unsuitable input, 3 a budget ran out, 4 the hidden
//! `--oracle` cross-check disagreed.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use cubefold::completion::{complete_with, Bouquet, Schedule, Status};
use cubefold::format::{emit_complex, emit_letters, emit_map, parse_complex, parse_letters, parse_word_list, Names};
use cubefold::geometry::{convex_hull, dual_to_ambient, geodesics, halfspaces_meeting, sageev_dual, universal_cover_ball, Halfspaces};
use cubefold::group::{
    cubical_presentation, finite_index, is_normal, membership, power_membership, reduced_forms, spanning_tree,
    word_to_cubical, Decision, IndexVerdict, Relator, Subgroup,
};
use cubefold::link::FlagVerdict;
use cubefold::oracles::{brute_hull, classic_fold, exponents, Lattice, Letter, StallingsGraph};
use cubefold::{check_npc, CubeComplex, CubicalWord, DirectedEdge, VertexId};

#[derive(Parser)]
#[command(name = "cubefold", version, about = "Completions and subgroup questions for cube complexes")]
struct Cli {
    /// Cross-check answers against brute-force oracles where one applies.
    #[arg(long, global = true, hide = true)]
    oracle: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a complex and test the link condition.
    Check { file: PathBuf },
    /// Complete the bouquet of comma-separated words.
    Complete {
        file: PathBuf,
        words: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        /// Write the move history here.
        #[arg(long)]
        log: Option<PathBuf>,
        /// Shuffle the order of moves within each phase.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Is `g` in the subgroup generated by `sub`?
    Member {
        file: PathBuf,
        #[arg(long)]
        sub: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Least power of `g` in the subgroup.
    PowerMember {
        file: PathBuf,
        #[arg(long)]
        sub: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Is the subgroup normal? Compares both criteria
    Normal {
        file: PathBuf,
        #[arg(long)]
        sub: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Index of the subgroup, or a lower bound when cosets run out
    Index {
        file: PathBuf,
        #[arg(long)]
        sub: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 100)]
        coset_budget: usize,
    },
    /// Convex hull of vertices of a finite CAT(0) complex.
    Hull {
        file: PathBuf,
        #[arg(long)]
        vertices: String,
    },
    /// Ball in the universal cover, with its projection.
    Ball {
        file: PathBuf,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        center: Option<String>,
    },
    /// Every combinatorial geodesic between two vertices of a finite CAT(0) complex.
    Geodesics {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// The complex dual to the hyperplanes separating the given vertices.
    Dual {
        file: PathBuf,
        #[arg(long)]
        vertices: String,
    },
    /// Every reduced word equal to `word`.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// The cubical presentation.
    Present { file: PathBuf },
}

enum Failure {
    Input(String),
    Budget(String),
    Oracle(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Oracle(_) => 4,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

/// Printed output and the answer bit.
struct Answer {
    text: String,
    yes: bool,
}

fn answer(text: impl Into<String>, yes: bool) -> Result<Answer, Failure> {
    Ok(Answer { text: text.into(), yes })
}

struct Loaded {
    y: Arc<CubeComplex>,
    names: Names,
}

fn load(path: &PathBuf) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let file = parse_complex(&text).map_err(input)?;
    Ok(Loaded { y: Arc::new(file.complex), names: file.names })
}

impl Loaded {
    fn require_npc(&self) -> Result<(), Failure> {
        match check_npc(&self.y).first_failure() {
            Some(v) => Err(Failure::Input(format!("complex is not nonpositively curved at {}", self.vertex_name(v.vertex)))),
            None => Ok(()),
        }
    }

    fn vertex_name(&self, v: VertexId) -> &str {
        &self.names.vertices[v.index()]
    }

    fn vertex(&self, name: &str) -> Result<VertexId, Failure> {
        self.names
            .vertices
            .iter()
            .position(|n| n == name)
            .map(VertexId::from)
            .ok_or_else(|| Failure::Input(format!("unknown vertex `{name}`")))
    }

    fn vertices(&self, list: &str) -> Result<Vec<VertexId>, Failure> {
        list.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(|s| self.vertex(s)).collect()
    }

    /// Words closed up at the basepoint through the spanning tree.
    fn loops(&self, text: &str) -> Result<Vec<CubicalWord>, Failure> {
        let tree = spanning_tree(&self.y).map_err(input)?;
        let words = parse_word_list(text, &self.names).map_err(input)?;
        Ok(words.iter().map(|w| word_to_cubical(&self.y, &tree, w)).collect())
    }

    fn one_loop(&self, text: &str) -> Result<CubicalWord, Failure> {
        let tree = spanning_tree(&self.y).map_err(input)?;
        let letters = parse_letters(text, &self.names).map_err(input)?;
        Ok(word_to_cubical(&self.y, &tree, &letters))
    }

    fn subgroup(&self, sub: &str, budget: usize) -> Result<Subgroup, Failure> {
        self.require_npc()?;
        let h = Subgroup::complete(self.y.clone(), self.loops(sub)?, budget).map_err(input)?;
        if !h.is_finished() {
            return Err(Failure::Budget(format!("completion exceeded the budget of {budget} cells")));
        }
        Ok(h)
    }

    fn word(&self, w: &[DirectedEdge]) -> String {
        emit_letters(w, &self.names)
    }
}

enum Oracle {
    Rose(usize),
    Torus(usize),
    None,
}

fn oracle_for(y: &CubeComplex) -> Oracle {
    let w = CubicalWord::empty(VertexId(0));
    if y.vertex_count() == 1 && y.cube_count() == 0 {
        Oracle::Rose(y.edge_count())
    } else if exponents(y, &w).is_ok() {
        Oracle::Torus(y.edge_count())
    } else {
        Oracle::None
    }
}

fn letters(w: &CubicalWord) -> Vec<Letter> {
    w.letters.iter().map(|d| (d.edge.index(), d.forward)).collect()
}

fn stallings(h: &Subgroup) -> StallingsGraph {
    classic_fold(&h.generators.iter().map(letters).collect::<Vec<_>>())
}

fn lattice(h: &Subgroup, d: usize) -> Lattice {
    let gens: Vec<Vec<i64>> = h.generators.iter().map(|w| exponents(&h.ambient, w).expect("torus")).collect();
    Lattice::new(d, &gens)
}

fn agree<T: PartialEq + std::fmt::Debug>(what: &str, ours: T, theirs: T) -> Result<(), Failure> {
    if ours == theirs {
        Ok(())
    } else {
        Err(Failure::Oracle(format!("{what}: computed {ours:?}, oracle {theirs:?}")))
    }
}

fn run(cli: Cli) -> Result<Answer, Failure> {
    let check_oracle = cli.oracle;
    match cli.command {
        Command::Check { file } => {
            let l = load(&file)?;
            let x = &l.y;
            let head = format!("vertices {} edges {} cubes {} dim {}\n", x.vertex_count(), x.edge_count(), x.cube_count(), x.max_dim());
            match check_npc(x).first_failure() {
                None => answer(format!("{head}npc\n"), true),
                Some(v) => {
                    let at = l.vertex_name(v.vertex);
                    let why = match &v.flag {
                        Some(FlagVerdict::EmptySimplex(germs)) => format!("empty simplex {}", l.word(germs)),
                        _ => "link not simplicial".to_string(),
                    };
                    answer(format!("{head}not-npc at {at}: {why}\n"), false)
                }
            }
        }
        Command::Complete { file, words, budget, log, seed } => {
            let l = load(&file)?;
            l.require_npc()?;
            let words = l.loops(&words)?;
            let b = cubefold::completion::bouquet_from_words(l.y.clone(), &words).map_err(input)?;
            let Bouquet { map, .. } = b;
            let schedule = seed.map_or(Schedule::Canonical, Schedule::Shuffled);
            let r = complete_with(map, budget, schedule);
            if let Some(path) = log {
                std::fs::write(&path, r.move_log()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            let mut text = emit_map(&r.map, &Names::numeric(r.complex()), &l.names);
            writeln!(text, "# status {} cells {}", r.status, r.budget_used).unwrap();
            if r.status == Status::BudgetExceeded {
                print!("{text}");
                return Err(Failure::Budget(format!("completion exceeded the budget of {budget} cells")));
            }
            answer(text, true)
        }
        Command::Member { file, sub, g, budget } => {
            let l = load(&file)?;
            let h = l.subgroup(&sub, budget)?;
            let g = l.one_loop(&g)?;
            let yes = membership(&h, &g).map_err(input)?;
            if check_oracle {
                match oracle_for(&l.y) {
                    Oracle::Rose(_) => agree("membership", yes, stallings(&h).accepts(&letters(&g)))?,
                    Oracle::Torus(d) => agree("membership", yes, lattice(&h, d).contains(&exponents(&l.y, &g).unwrap()))?,
                    Oracle::None => {}
                }
            }
            answer(if yes { "yes\n" } else { "no\n" }, yes)
        }
        Command::PowerMember { file, sub, g, budget } => {
            let l = load(&file)?;
            let h = l.subgroup(&sub, budget)?;
            let g = l.one_loop(&g)?;
            let k = power_membership(&h, &g).map_err(input)?;
            if check_oracle {
                let bound = h.completion.complex().vertex_count();
                match oracle_for(&l.y) {
                    Oracle::Rose(_) => agree("power", k, stallings(&h).least_power(&letters(&g), bound))?,
                    Oracle::Torus(d) => agree("power", k, lattice(&h, d).least_power(&exponents(&l.y, &g).unwrap(), bound))?,
                    Oracle::None => {}
                }
            }
            match k {
                Some(k) => answer(format!("{k}\n"), true),
                None => answer("none\n", false),
            }
        }
        Command::Normal { file, sub, budget } => {
            let l = load(&file)?;
            let h = l.subgroup(&sub, budget)?;
            let r = is_normal(&h, budget).map_err(input)?;
            if check_oracle {
                let expected = match oracle_for(&l.y) {
                    Oracle::Rose(n) => Some(stallings(&h).is_normal(n)),
                    Oracle::Torus(d) => Some(lattice(&h, d).is_normal()),
                    Oracle::None => None,
                };
                if let Some(e) = expected {
                    agree("normality by conjugates", r.by_conjugates, e)?;
                    if r.by_completion != Decision::Undecided {
                        agree("normality by completion", r.by_completion == Decision::Yes, e)?;
                    }
                }
            }
            match r.by_completion {
                Decision::Yes => answer("normal\n", true),
                Decision::No => answer("not-normal\n", false),
                Decision::Undecided => {
                    println!("undecided");
                    Err(Failure::Budget("a conjugate completion exceeded the budget".into()))
                }
            }
        }
        Command::Index { file, sub, budget, coset_budget } => {
            let l = load(&file)?;
            let h = l.subgroup(&sub, budget)?;
            let v = finite_index(&h, coset_budget).map_err(input)?;
            if check_oracle {
                let ours = match v {
                    IndexVerdict::Finite(n) => Some(n as u64),
                    IndexVerdict::AtLeast(_) => None,
                };
                match oracle_for(&l.y) {
                    Oracle::Rose(n) => agree("index", ours, stallings(&h).index(n).map(|i| i as u64))?,
                    Oracle::Torus(d) => agree("index", ours, lattice(&h, d).index())?,
                    Oracle::None => {}
                }
            }
            match v {
                IndexVerdict::Finite(n) => answer(format!("{n}\n"), true),
                IndexVerdict::AtLeast(_) => answer("infinite-or->budget\n", false),
            }
        }
        Command::Hull { file, vertices } => {
            let l = load(&file)?;
            let s = l.vertices(&vertices)?;
            let hs = Halfspaces::new(&l.y).map_err(input)?;
            let h = convex_hull(&l.y, &hs, &s).map_err(input)?;
            if check_oracle {
                let b = brute_hull(&l.y, &s);
                agree("hull", (&h.vertices, &h.edges, &h.cubes), (&b.vertices, &b.edges, &b.cubes))?;
            }
            let (sub, _) = h.extract(&l.y);
            let names = Names {
                vertices: h.vertices.iter().map(|v| l.names.vertices[v.index()].clone()).collect(),
                edges: h.edges.iter().map(|e| l.names.edges[e.index()].clone()).collect(),
                cubes: h.cubes.iter().map(|c| l.names.cubes[c.index()].clone()).collect(),
            };
            answer(emit_complex(&sub, &names), true)
        }
        Command::Ball { file, radius, center } => {
            let l = load(&file)?;
            let q = match center {
                Some(c) => l.vertex(&c)?,
                None => l.y.basepoint().ok_or_else(|| Failure::Input("complex has no basepoint".into()))?,
            };
            let b = universal_cover_ball(l.y.clone(), q, radius).map_err(input)?;
            answer(emit_map(&b.projection, &Names::numeric(b.complex()), &l.names), true)
        }
        Command::Geodesics { file, from, to } => {
            let l = load(&file)?;
            let (u, v) = (l.vertex(&from)?, l.vertex(&to)?);
            let hs = Halfspaces::new(&l.y).map_err(input)?;
            let mut lines: Vec<String> = geodesics(&l.y, &hs, u, v).iter().map(|p| l.word(p)).collect();
            lines.sort();
            answer(lines.iter().map(|s| format!("{s}\n")).collect::<String>(), true)
        }
        Command::Dual { file, vertices } => {
            let l = load(&file)?;
            let s = l.vertices(&vertices)?;
            let &q = s.first().ok_or_else(|| Failure::Input("no vertices given".into()))?;
            let hs = Halfspaces::new(&l.y).map_err(input)?;
            let p = halfspaces_meeting(&l.y, &hs, &s);
            let d = sageev_dual(&p).map_err(input)?;
            let mut text = emit_complex(&d.complex, &Names::numeric(&d.complex));
            for (i, z) in d.orientations.iter().enumerate() {
                let signs: String = (0..p.hyperplane_count()).map(|j| if z[j] { '+' } else { '-' }).collect();
                let at = dual_to_ambient(&p, &hs, z, q).map_or("?", |v| l.vertex_name(v));
                writeln!(text, "# {i} {signs} {at}").unwrap();
            }
            answer(text, true)
        }
        Command::Reduce { file, word } => {
            let l = load(&file)?;
            l.require_npc()?;
            let w = l.one_loop(&word)?;
            let forms = reduced_forms(&l.y, &w).map_err(|e| match e {
                cubefold::group::GroupError::BudgetExceeded => Failure::Budget(e.to_string()),
                e => input(e),
            })?;
            answer(forms.iter().map(|f| format!("{}\n", l.word(&f.letters))).collect::<String>(), true)
        }
        Command::Present { file } => {
            let l = load(&file)?;
            let tree = spanning_tree(&l.y).map_err(input)?;
            let p = cubical_presentation(&l.y, &tree);
            let mut text = format!("generators {}\n", p.generators.iter().map(|e| l.names.edges[e.index()].as_str()).collect::<Vec<_>>().join(" "));
            for r in &p.relators {
                match r {
                    Relator::Tree(e) => writeln!(text, "tree {}", l.names.edges[e.index()]).unwrap(),
                    Relator::Square(c, w) => writeln!(text, "square {} {}", l.names.cubes[c.index()], l.word(w)).unwrap(),
                }
            }
            answer(text, true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(a) => {
            print!("{}", a.text);
            ExitCode::from(if a.yes { 0 } else { 1 })
        }
        Err(f) => {
            let code = f.code();
            let (Failure::Input(m) | Failure::Budget(m) | Failure::Oracle(m)) = f;
            eprintln!("error: {m}");
            ExitCode::from(code)
        }
    }
}
