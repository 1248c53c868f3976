use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use cyclotome::catalog;
use cyclotome::graph::format::{parse_input, to_csg, Input};
use cyclotome::graph::{are_equivalent, canonical_form, weak_canonical_form};
use cyclotome::intpoly::{char_poly, reciprocal_transform};
use cyclotome::par::Jobs;
use cyclotome::search::{
    e8::format_e8_set, enumerate_levels, grow_to_maximal, search_e8_triangle_free, E8SearchOptions, EnumerateOptions,
    Mode,
};
use cyclotome::spectral::{
    gram_vectors, graph_passes, interlaces, is_cyclotomic, is_open_cyclotomic, Evidence, Side, Verdict,
};
use cyclotome::{ChargedSignedGraph, EquivalenceWitness, SpectralCertificate};

use crate::manifest::RunManifest;
use crate::output::{sha256_hex, Sink};
use crate::{CatalogAction, Cli, Command, InputArg, ModeArgs, Result, SearchTarget};

/// Input files read during a run, with their digests.
#[derive(Default)]
struct Inputs {
    digests: BTreeMap<String, String>,
}

impl Inputs {
    fn text(&mut self, path: Option<&Path>) -> Result<String> {
        let (label, text) = match path {
            None => ("-".to_string(), read_stdin()?),
            Some(p) if p == Path::new("-") => ("-".to_string(), read_stdin()?),
            Some(p) => (
                p.display().to_string(),
                std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?,
            ),
        };
        self.digests.insert(label, sha256_hex(text.as_bytes()));
        Ok(text)
    }

    fn input(&mut self, arg: &InputArg) -> Result<Input> {
        let text = self.text(arg.input.as_deref())?;
        parse_input(&text).map_err(lib)
    }

    fn graph(&mut self, path: Option<&Path>) -> Result<ChargedSignedGraph> {
        let text = self.text(path)?;
        parse_input(&text).and_then(|i| i.graph()).map_err(lib)
    }
}

fn read_stdin() -> Result<String> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| format!("stdin: {e}"))?;
    Ok(s)
}

fn lib(e: cyclotome::Error) -> String {
    e.to_string()
}

fn io(e: std::io::Error) -> String {
    format!("output: {e}")
}

fn is_long(cmd: &Command) -> bool {
    matches!(
        cmd,
        Command::Search { .. }
            | Command::Enumerate { .. }
            | Command::Grow { .. }
            | Command::VerifyTables
            | Command::Selftest { .. }
    )
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Check { .. } => "check",
        Command::Charpoly { .. } => "charpoly",
        Command::Cycfactor { .. } => "cycfactor",
        Command::Canon { .. } => "canon",
        Command::Equiv { .. } => "equiv",
        Command::Catalog { .. } => "catalog",
        Command::Search { .. } => "search",
        Command::Enumerate { .. } => "enumerate",
        Command::Grow { .. } => "grow",
        Command::VerifyTables => "verify-tables",
        Command::Gram { .. } => "gram",
        Command::Selftest { .. } => "selftest",
        Command::Replay { .. } => "replay",
    }
}

/// Runs `cli`, writing a manifest afterwards for long commands.
pub fn run_with_manifest(cli: &Cli, args: &[String], sink: &mut Sink) -> Result<u8> {
    if let Command::Replay { manifest } = &cli.command {
        return replay(cli, manifest, sink);
    }
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let code = run(cli, &mut inputs, sink)?;
    sink.flush().map_err(io)?;
    if is_long(&cli.command) && !cli.no_manifest {
        RunManifest {
            command: command_name(&cli.command).to_string(),
            parameters: args.to_vec(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            input_digests: inputs.digests,
            wall_time_secs: start.elapsed().as_secs_f64(),
            result_digest: sink.digest(),
        }
        .write(&cli.manifest)?;
    }
    Ok(code)
}

fn replay(cli: &Cli, path: &Path, sink: &mut Sink) -> Result<u8> {
    let recorded = RunManifest::read(path)?;
    let argv = std::iter::once("cyclotome".to_string()).chain(recorded.parameters.iter().cloned());
    let again = Cli::try_parse_from(argv).map_err(|e| format!("manifest parameters: {e}"))?;
    if matches!(again.command, Command::Replay { .. }) {
        return Err("a manifest cannot record a replay".into());
    }
    for (file, digest) in &recorded.input_digests {
        if file == "-" {
            return Err("the recorded run read standard input".into());
        }
        let bytes = std::fs::read(file).map_err(|e| format!("{file}: {e}"))?;
        if &sha256_hex(&bytes) != digest {
            return Err(format!("{file} has changed since the recorded run"));
        }
    }
    let mut quiet = Sink::discard();
    run(&again, &mut Inputs::default(), &mut quiet)?;
    let digest = quiet.digest();
    let same = digest == recorded.result_digest;
    if cli.json {
        sink.json(&json!({
            "command": recorded.command,
            "recorded_digest": recorded.result_digest,
            "replayed_digest": digest,
            "matches": same,
        }))
        .map_err(io)?;
    } else {
        let status = if same { "matches" } else { "differs" };
        writeln!(sink, "replay {status}: {digest}").map_err(io)?;
    }
    Ok(if same { 0 } else { 1 })
}

fn run(cli: &Cli, inputs: &mut Inputs, out: &mut Sink) -> Result<u8> {
    let json = cli.json;
    match &cli.command {
        Command::Check {
            input,
            open,
            certificate,
        } => check(out, json, inputs.input(input)?, *open, *certificate),
        Command::Charpoly { input } => charpoly(out, json, inputs.input(input)?),
        Command::Cycfactor { input } => cycfactor(out, json, inputs.input(input)?),
        Command::Canon { input, weak } => canon(out, json, inputs.graph(input.input.as_deref())?, *weak),
        Command::Equiv { first, second } => {
            let g = inputs.graph(Some(first))?;
            let h = inputs.graph(Some(second))?;
            equiv(out, json, &g, &h)
        }
        Command::Catalog { action } => catalog_cmd(out, json, action),
        Command::Search {
            target: SearchTarget::E8 { jobs, checkpoint },
        } => search_e8(out, json, *jobs, checkpoint.clone()),
        Command::Enumerate {
            max_n,
            mode,
            maximal_only,
            jobs,
        } => enumerate(out, json, *max_n, mode_of(mode), *maximal_only, *jobs),
        Command::Grow { input, mode, cap } => {
            grow(out, json, inputs.graph(input.input.as_deref())?, mode_of(mode), *cap)
        }
        Command::VerifyTables => verify_tables(out, json),
        Command::Gram { input } => gram(out, json, inputs.input(input)?),
        Command::Selftest { seed, samples, max_n } => selftest(out, json, *seed, *samples, *max_n),
        Command::Replay { .. } => Err("nested replay".into()),
    }
}

fn mode_of(m: &ModeArgs) -> Mode {
    Mode {
        charged: m.charged,
        unsigned_only: m.unsigned,
        open: m.open,
    }
}

fn int(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn ints(xs: &[BigInt]) -> Vec<Value> {
    xs.iter().map(int).collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::TwoMinusA => "2I - A",
        Side::TwoPlusA => "2I + A",
    }
}

fn check_verdict(cert: &SpectralCertificate, open: bool) -> (&'static str, u8) {
    match (cert.verdict, open) {
        (Verdict::NotCyclotomic, _) => ("not cyclotomic", 1),
        (_, false) => ("cyclotomic", 0),
        (Verdict::OpenCyclotomic, true) => ("open-cyclotomic", 0),
        (Verdict::Cyclotomic, true) => ("not open-cyclotomic (eigenvalue ±2)", 1),
    }
}

fn certificate_lines(cert: &SpectralCertificate) -> Vec<String> {
    let mut lines = Vec::new();
    match &cert.evidence {
        Evidence::Factorizations { minus, plus, kernel } => {
            for (side, ldl) in [(Side::TwoMinusA, minus), (Side::TwoPlusA, plus)] {
                lines.push(format!(
                    "{}: rank {}, pivots {}",
                    side_name(side),
                    ldl.rank(),
                    join(&ldl.pivots)
                ));
                lines.push(format!("{}: diagonal {}", side_name(side), join(&ldl.d)));
            }
            if let Some((side, x)) = kernel {
                lines.push(format!(
                    "kernel of {}: {} (eigenvalue {})",
                    side_name(*side),
                    join(x),
                    side.eigenvalue()
                ));
            }
        }
        Evidence::PositiveMinors { minus, plus } => {
            lines.push(format!("leading minors of 2I - A: {}", join(minus)));
            lines.push(format!("leading minors of 2I + A: {}", join(plus)));
        }
        Evidence::NegativeDirection { side, vector } => {
            lines.push(format!("x^T ({}) x < 0 for x = {}", side_name(*side), join(vector)));
        }
    }
    lines
}

fn check(out: &mut Sink, json: bool, input: Input, open: bool, certificate: bool) -> Result<u8> {
    let a = input.matrix();
    let cert = if open {
        is_open_cyclotomic(&a)
    } else {
        is_cyclotomic(&a)
    };
    let (verdict, code) = check_verdict(&cert, open);
    if json {
        let mut v = json!({ "verdict": verdict, "open": open, "exit_code": code });
        if certificate {
            v["certificate"] = serde_json::to_value(&cert).map_err(|e| e.to_string())?;
        }
        out.json(&v).map_err(io)?;
    } else {
        writeln!(out, "{verdict}").map_err(io)?;
        if certificate {
            for line in certificate_lines(&cert) {
                writeln!(out, "{line}").map_err(io)?;
            }
        }
    }
    Ok(code)
}

fn charpoly(out: &mut Sink, json: bool, input: Input) -> Result<u8> {
    let chi = char_poly(&input.matrix());
    if json {
        out.json(&json!({ "polynomial": chi.to_string(), "coefficients": ints(chi.coeffs()) }))
            .map_err(io)?;
    } else {
        writeln!(out, "{chi}").map_err(io)?;
    }
    Ok(0)
}

fn cycfactor(out: &mut Sink, json: bool, input: Input) -> Result<u8> {
    let r = reciprocal_transform(&char_poly(&input.matrix()));
    let f = r.factor();
    if json {
        let v = match &f {
            Some(f) => json!({
                "cyclotomic": true,
                "reciprocal": r.poly().to_string(),
                "factorization": f.to_string(),
                "sign": f.sign,
                "factors": f.factors.iter().map(|&(m, e)| json!({ "m": m, "multiplicity": e })).collect::<Vec<_>>(),
            }),
            None => json!({ "cyclotomic": false, "reciprocal": r.poly().to_string() }),
        };
        out.json(&v).map_err(io)?;
    } else {
        match &f {
            Some(f) => writeln!(out, "{f}"),
            None => writeln!(out, "not a product of cyclotomic polynomials"),
        }
        .map_err(io)?;
    }
    Ok(if f.is_some() { 0 } else { 1 })
}

fn canon(out: &mut Sink, json: bool, g: ChargedSignedGraph, weak: bool) -> Result<u8> {
    let form = if weak {
        weak_canonical_form(&g).form
    } else {
        canonical_form(&g)
    };
    let csg = to_csg(&form.to_graph());
    if json {
        out.json(&json!({ "weak": weak, "code": form.code(), "csg": csg }))
            .map_err(io)?;
    } else {
        write!(out, "{csg}").map_err(io)?;
    }
    Ok(0)
}

fn witness_json(w: &EquivalenceWitness) -> Value {
    json!({ "perm": w.perm, "signs": w.signs, "negate": w.negate })
}

fn equiv(out: &mut Sink, json: bool, g: &ChargedSignedGraph, h: &ChargedSignedGraph) -> Result<u8> {
    let found = match are_equivalent(g, h, true) {
        Some(w) => Some(("strongly equivalent", w)),
        None => are_equivalent(g, h, false).map(|w| ("weakly equivalent", w)),
    };
    let code = if found.is_some() { 0 } else { 1 };
    if json {
        let v = match &found {
            Some((relation, w)) => json!({ "relation": relation, "witness": witness_json(w) }),
            None => json!({ "relation": "not equivalent" }),
        };
        out.json(&v).map_err(io)?;
    } else {
        match &found {
            Some((relation, w)) => {
                writeln!(out, "{relation}").map_err(io)?;
                writeln!(out, "perm {}", join(&w.perm)).map_err(io)?;
                writeln!(out, "signs {}", join(&w.signs)).map_err(io)?;
                writeln!(out, "negate {}", w.negate).map_err(io)?;
            }
            None => writeln!(out, "not equivalent").map_err(io)?,
        }
    }
    Ok(code)
}

fn catalog_cmd(out: &mut Sink, json: bool, action: &CatalogAction) -> Result<u8> {
    match action {
        CatalogAction::List => {
            let fams = catalog::families();
            if json {
                out.json(&serde_json::to_value(&fams).map_err(|e| e.to_string())?)
                    .map_err(io)?;
            } else {
                for f in &fams {
                    writeln!(out, "{:<8} {:<6} {}", f.name, f.params.join(","), f.description).map_err(io)?;
                }
            }
        }
        CatalogAction::Get { name, params } => {
            let g = catalog::build(name, params).map_err(lib)?;
            let csg = to_csg(&g);
            if json {
                out.json(&json!({ "name": name, "params": params, "csg": csg }))
                    .map_err(io)?;
            } else {
                write!(out, "{csg}").map_err(io)?;
            }
        }
    }
    Ok(0)
}

fn search_e8(out: &mut Sink, json: bool, jobs: usize, checkpoint: Option<PathBuf>) -> Result<u8> {
    let result = search_e8_triangle_free(&E8SearchOptions {
        jobs: Jobs(jobs),
        checkpoint,
        only_roots: None,
    })
    .map_err(lib)?;
    if json {
        let classes: Vec<Value> = result
            .classes
            .iter()
            .map(|set| json!({ "size": set.len(), "vertices": format_e8_set(set).split(' ').collect::<Vec<_>>() }))
            .collect();
        out.json(&json!({
            "classes": classes,
            "raw_survivors": result.raw_survivors,
            "nodes": result.nodes,
        }))
        .map_err(io)?;
    } else {
        for set in &result.classes {
            writeln!(out, "{:>2}  {}", set.len(), format_e8_set(set)).map_err(io)?;
        }
        writeln!(
            out,
            "# {} classes, {} survivors before deduplication, {} nodes",
            result.classes.len(),
            result.raw_survivors,
            result.nodes
        )
        .map_err(io)?;
    }
    Ok(0)
}

fn enumerate(out: &mut Sink, json: bool, max_n: usize, mode: Mode, maximal_only: bool, jobs: usize) -> Result<u8> {
    let opts = EnumerateOptions::new(max_n, mode)
        .maximal_only(maximal_only)
        .jobs(Jobs(jobs));
    let mut counts: Vec<(usize, usize, usize)> = Vec::new();
    let mut records: Vec<Value> = Vec::new();
    let mut write_error = None;
    enumerate_levels(&opts, |n, level| {
        let shown: Vec<_> = level.iter().filter(|r| r.maximal || !maximal_only).collect();
        counts.push((n, shown.len(), shown.iter().filter(|r| r.maximal).count()));
        for r in shown {
            let csg = to_csg(&r.graph);
            if json {
                records.push(json!({ "n": n, "maximal": r.maximal, "csg": csg }));
            } else if write_error.is_none() {
                let tag = if r.maximal { " maximal" } else { "" };
                if let Err(e) = write!(out, "# n={n}{tag}\n{csg}\n") {
                    write_error = Some(e);
                }
            }
        }
        Ok(())
    })
    .map_err(lib)?;
    if let Some(e) = write_error {
        return Err(io(e));
    }
    let total: usize = counts.iter().map(|c| c.1).sum();
    if json {
        let counts: Vec<Value> = counts
            .iter()
            .map(|&(n, classes, maximal)| json!({ "n": n, "classes": classes, "maximal": maximal }))
            .collect();
        out.json(&json!({ "classes": records, "counts": counts, "total": total }))
            .map_err(io)?;
    } else {
        for (n, classes, maximal) in &counts {
            writeln!(out, "# count n={n} classes={classes} maximal={maximal}").map_err(io)?;
        }
        writeln!(out, "# total {total}").map_err(io)?;
    }
    Ok(0)
}

fn grow(out: &mut Sink, json: bool, g: ChargedSignedGraph, mode: Mode, cap: usize) -> Result<u8> {
    let growth = grow_to_maximal(&g, mode, cap).map_err(lib)?;
    let code = if growth.reached_cap() { 1 } else { 0 };
    if json {
        let csgs = |gs: &[ChargedSignedGraph]| gs.iter().map(to_csg).collect::<Vec<_>>();
        out.json(&json!({
            "hosts": csgs(&growth.hosts),
            "capped": csgs(&growth.capped),
            "explored": growth.explored,
            "cap": cap,
        }))
        .map_err(io)?;
    } else {
        for h in &growth.hosts {
            write!(out, "# maximal host, {} vertices\n{}\n", h.n(), to_csg(h)).map_err(io)?;
        }
        for h in &growth.capped {
            write!(out, "# still extendable at the cap of {cap}\n{}\n", to_csg(h)).map_err(io)?;
        }
        writeln!(
            out,
            "# {} hosts, {} capped, {} classes explored",
            growth.hosts.len(),
            growth.capped.len(),
            growth.explored
        )
        .map_err(io)?;
    }
    Ok(code)
}

fn verify_tables(out: &mut Sink, json: bool) -> Result<u8> {
    let rows = catalog::verify_tables();
    let failed = rows.iter().filter(|r| !r.pass).count();
    if json {
        out.json(&json!({ "rows": rows, "failed": failed })).map_err(io)?;
    } else {
        for r in &rows {
            let status = if r.pass { "PASS" } else { "FAIL" };
            writeln!(out, "{status} table {} {}: {}", r.table, r.name, r.expected).map_err(io)?;
            if !r.pass {
                writeln!(out, "     found {}", r.found).map_err(io)?;
            }
        }
        writeln!(out, "# {} rows, {} failed", rows.len(), failed).map_err(io)?;
    }
    Ok(if failed == 0 { 0 } else { 1 })
}

fn gram(out: &mut Sink, json: bool, input: Input) -> Result<u8> {
    let Some(g) = gram_vectors(&input.matrix()) else {
        if json {
            out.json(&json!({ "psd": false })).map_err(io)?;
        } else {
            writeln!(out, "A + 2I is not positive semidefinite").map_err(io)?;
        }
        return Ok(1);
    };
    let strs = |xs: &[num_rational::BigRational]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    if json {
        out.json(&json!({
            "psd": true,
            "rank": g.rank,
            "weights": strs(&g.weights),
            "vectors": g.vectors.iter().map(|v| strs(v)).collect::<Vec<_>>(),
        }))
        .map_err(io)?;
    } else {
        writeln!(out, "rank {}", g.rank).map_err(io)?;
        writeln!(out, "weights {}", strs(&g.weights).join(" ")).map_err(io)?;
        for (i, v) in g.vectors.iter().enumerate() {
            writeln!(out, "v{i} {}", strs(v).join(" ")).map_err(io)?;
        }
    }
    Ok(0)
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> ChargedSignedGraph {
    let mut g = ChargedSignedGraph::empty(n);
    for i in 0..n {
        g.set_charge(i, rng.gen_range(-1..=1)).expect("valid charge");
        for j in i + 1..n {
            g.set_edge(i, j, rng.gen_range(-1..=1)).expect("valid sign");
        }
    }
    g
}

fn random_witness(rng: &mut ChaCha8Rng, n: usize) -> EquivalenceWitness {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    EquivalenceWitness {
        perm,
        signs: (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect(),
        negate: false,
    }
}

fn selftest(out: &mut Sink, json: bool, seed: u64, samples: usize, max_n: usize) -> Result<u8> {
    if max_n == 0 {
        return Err("--max-n must be at least 1".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = [
        "certificates",
        "factorization",
        "fast-path",
        "interlacing",
        "canonical-form",
    ];
    let mut failures = [0usize; 5];
    for _ in 0..samples {
        let n = rng.gen_range(1..=max_n);
        let g = random_graph(&mut rng, n);
        let a = g.adjacency_matrix();
        let closed = is_cyclotomic(&a);
        let open = is_open_cyclotomic(&a);
        let chi = char_poly(&a);
        let results = [
            closed.verify(&a) && open.verify(&a),
            reciprocal_transform(&chi).factor().is_some() == closed.is_cyclotomic(),
            graph_passes(&g, false) == closed.is_cyclotomic()
                && graph_passes(&g, true) == (open.verdict == Verdict::OpenCyclotomic),
            n < 2 || {
                let v = rng.gen_range(0..n);
                let child = char_poly(&g.delete_vertex(v).map_err(lib)?.adjacency_matrix());
                interlaces(&chi, &child).map_err(lib)?
            },
            canonical_form(&g) == canonical_form(&g.apply(&random_witness(&mut rng, n))),
        ];
        for (f, ok) in failures.iter_mut().zip(results) {
            *f += usize::from(!ok);
        }
    }
    if json {
        let checks: Vec<Value> = names
            .iter()
            .zip(failures)
            .map(|(name, failed)| json!({ "check": name, "samples": samples, "failed": failed }))
            .collect();
        out.json(&json!({ "seed": seed, "checks": checks })).map_err(io)?;
    } else {
        writeln!(out, "# seed {seed}").map_err(io)?;
        for (name, failed) in names.iter().zip(failures) {
            writeln!(out, "{name}: {samples} samples, {failed} failed").map_err(io)?;
        }
    }
    Ok(if failures.iter().all(|&f| f == 0) { 0 } else { 1 })
}
