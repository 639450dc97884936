use std::fmt::Write;

use psl2codes_core::codes::{is_type2_extremal, mask, qr_codes, Type2Verdict};
use psl2codes_core::designs::{design_sweep, DesignVerdict, LayerOutcome};
use psl2codes_core::psl2::{
    classify_extended_cyclic, expected_invariant_defining_sets, extended_cyclic_defining_set, group_closure, CodeLabel,
    Psl2,
};
use psl2codes_core::spectral::{blahut_mismatches, spectral_witness, Branch};
use psl2codes_core::{Error, PrimeContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::formats::{bit_string, field_hex, poly_bits, word_hex, CodeJson, Envelope, LinearCodeJson, SCHEMA};
use crate::{Cli, CliError, Command, Outcome, Status};

fn outcome<T: Serialize>(command: &str, body: &T, text: String, status: Status) -> Result<Outcome, CliError> {
    let json = serde_json::to_string_pretty(&Envelope {
        schema: SCHEMA,
        command,
        body,
    })
    .map_err(|e| CliError {
        code: 1,
        message: e.to_string(),
    })?;
    Ok(Outcome { json, text, status })
}

fn set_text(set: &[u32]) -> String {
    let items: Vec<String> = set.iter().map(u32::to_string).collect();
    format!("{{{}}}", items.join(","))
}

pub fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let name = cli.command.name();
    match &cli.command {
        Command::Field { n } => field(name, *n),
        Command::Cosets { n } => cosets(name, *n),
        Command::Qr { n, extremal } => qr(name, *n, *extremal, cli.max_dim),
        Command::Classify { n, max_cosets } => classify(name, *n, *max_cosets),
        Command::Spin {
            n,
            max_spin_n,
            max_group_order,
        } => spin(name, *n, *max_spin_n, *max_group_order),
        Command::Designs { n } => designs(name, *n, cli.max_dim),
        Command::FourierCheck { n, trials } => fourier_check(name, *n, *trials, cli.seed, cli.max_dim),
        Command::Witness { n, l, s, defining_set } => witness(name, *n, *l, *s, defining_set),
    }
}

#[derive(Serialize)]
struct FieldBody {
    n: u32,
    m: u32,
    modulus: String,
    modulus_poly: String,
    alpha: String,
    beta: String,
    group_order: u64,
    log_tables: bool,
}

fn field(name: &str, n: u32) -> Result<Outcome, CliError> {
    let ctx = PrimeContext::new(n)?;
    let f = ctx.field();
    let modulus = f.modulus();
    let body = FieldBody {
        n,
        m: f.m(),
        modulus: format!("{:#x}", modulus.to_bits().unwrap_or_default()),
        modulus_poly: modulus.to_string(),
        alpha: field_hex(f.alpha()),
        beta: field_hex(f.beta()),
        group_order: f.group_order(),
        log_tables: f.has_tables(),
    };
    let text = format!(
        "GF(2^{}) modulo {} ({})\nalpha = {}, beta = alpha^{} = {}\n",
        body.m,
        body.modulus_poly,
        body.modulus,
        body.alpha,
        body.group_order / n as u64,
        body.beta
    );
    outcome(name, &body, text, Status::Ok)
}

#[derive(Serialize)]
struct CosetJson {
    leader: u32,
    members: Vec<u32>,
    minimal_polynomial: String,
}

#[derive(Serialize)]
struct CosetsBody {
    n: u32,
    m: u32,
    pi: u32,
    h: u32,
    two_is_residue: bool,
    cosets: Vec<CosetJson>,
    residues: Vec<u32>,
    nonresidues: Vec<u32>,
}

fn cosets(name: &str, n: u32) -> Result<Outcome, CliError> {
    let ctx = PrimeContext::new(n)?;
    let table = ctx.cosets();
    let split = ctx.split();
    let body = CosetsBody {
        n,
        m: table.m(),
        pi: split.pi(),
        h: split.h(),
        two_is_residue: split.two_is_residue(),
        cosets: table
            .cosets()
            .iter()
            .enumerate()
            .map(|(i, c)| CosetJson {
                leader: c[0],
                members: c.clone(),
                minimal_polynomial: poly_bits(ctx.coset_polynomial(i)),
            })
            .collect(),
        residues: split.residues(),
        nonresidues: split.nonresidues(),
    };
    let mut text = format!("n = {n}, m = {}, pi = {}, h = {}\n", body.m, body.pi, body.h);
    for (i, c) in body.cosets.iter().enumerate() {
        let _ = writeln!(
            text,
            "C_{:<3} {:<30} {}",
            c.leader,
            set_text(&c.members),
            ctx.coset_polynomial(i)
        );
    }
    let _ = writeln!(
        text,
        "Q = {}\nN = {}",
        set_text(&body.residues),
        set_text(&body.nonresidues)
    );
    outcome(name, &body, text, Status::Ok)
}

#[derive(Serialize)]
struct QrBody {
    n: u32,
    qr_q: CodeJson,
    qr_n: CodeJson,
    extended_code: LinearCodeJson,
    weight_distribution: Vec<u64>,
    self_dual: bool,
    length: usize,
    dim: usize,
    d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    type2_extremal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    type2_detail: Option<String>,
}

fn qr(name: &str, n: u32, extremal: bool, cap: usize) -> Result<Outcome, CliError> {
    let ctx = PrimeContext::new(n)?;
    let (q, nq) = qr_codes(&ctx)?;
    let ext = q.extend();
    let dist = ext.weight_distribution(cap)?;
    let d = dist.min_distance().ok_or(Error::ZeroCode)?;
    let (type2_extremal, type2_detail) = if extremal {
        let verdict = is_type2_extremal(&ext, cap)?;
        let detail = match verdict {
            Type2Verdict::Extremal { length, d } => format!("extremal: length {length}, d = {d}"),
            Type2Verdict::NotSelfDual => "not self-dual".into(),
            Type2Verdict::NotDoublyEven { weight } => format!("basis word of weight {weight}"),
            Type2Verdict::NotExtremal { d, required } => format!("d = {d}, extremal needs {required}"),
        };
        (Some(verdict.is_extremal()), Some(detail))
    } else {
        (None, None)
    };
    let body = QrBody {
        n,
        qr_q: CodeJson::new(&q, false),
        qr_n: CodeJson::new(&nq, false),
        extended_code: LinearCodeJson::new(&ext),
        weight_distribution: dist.counts().to_vec(),
        self_dual: ext.is_self_dual(),
        length: ext.length(),
        dim: ext.dimension(),
        d,
        type2_extremal,
        type2_detail,
    };
    let mut text = format!(
        "Q: g(x) = {}\nN: g(x) = {}\nextended Q: [{}, {}, {}]{}\n",
        q.generator(),
        nq.generator(),
        body.length,
        body.dim,
        d,
        if body.self_dual { " self-dual" } else { "" }
    );
    let weights: Vec<String> = dist
        .nonzero_weights()
        .map(|w| format!("A_{w} = {}", dist.count(w)))
        .collect();
    let _ = writeln!(text, "{}", weights.join(", "));
    if let Some(detail) = &body.type2_detail {
        let _ = writeln!(text, "Type II: {detail}");
    }
    outcome(name, &body, text, Status::Ok)
}

#[derive(Serialize)]
struct ClassJson {
    defining_set: Vec<u32>,
    dimension: usize,
    invariant: bool,
    label: &'static str,
}

#[derive(Serialize)]
struct ClassifyBody {
    n: u32,
    consistent: bool,
    expected: Vec<Vec<u32>>,
    invariant: Vec<Vec<u32>>,
    codes: Vec<ClassJson>,
}

fn classify(name: &str, n: u32, max_cosets: usize) -> Result<Outcome, CliError> {
    let ctx = PrimeContext::new(n)?;
    let classes = classify_extended_cyclic(&ctx, max_cosets)?;
    let expected = expected_invariant_defining_sets(&ctx);
    let mut invariant: Vec<Vec<u32>> = classes
        .iter()
        .filter(|c| c.invariant)
        .map(|c| c.defining_set.clone())
        .collect();
    invariant.sort();
    let consistent = invariant == expected;
    let mut text = String::new();
    for c in classes.iter().filter(|c| c.invariant) {
        let _ = writeln!(
            text,
            "{:<16} dim {:<3} T = {}",
            c.label.as_str(),
            c.dimension,
            set_text(&c.defining_set)
        );
    }
    let _ = writeln!(
        text,
        "{} of {} extended cyclic codes invariant",
        invariant.len(),
        classes.len()
    );
    if !consistent {
        for set in invariant.iter().filter(|s| !expected.contains(s)) {
            let _ = writeln!(text, "+ unexpected invariant T = {}", set_text(set));
        }
        for set in expected.iter().filter(|s| !invariant.contains(s)) {
            let _ = writeln!(text, "- missing invariant T = {}", set_text(set));
        }
    }
    let body = ClassifyBody {
        n,
        consistent,
        expected,
        invariant,
        codes: classes
            .into_iter()
            .map(|c| ClassJson {
                defining_set: c.defining_set,
                dimension: c.dimension,
                invariant: c.invariant,
                label: c.label.as_str(),
            })
            .collect(),
    };
    let status = if consistent { Status::Ok } else { Status::Inconsistent };
    outcome(name, &body, text, status)
}

#[derive(Serialize)]
struct SubspaceJson {
    dimension: usize,
    basis: Vec<String>,
    extended_cyclic: bool,
    defining_set: Option<Vec<u32>>,
    label: Option<&'static str>,
}

#[derive(Serialize)]
struct SpinBody {
    n: u32,
    group_order: usize,
    count: usize,
    consistent: bool,
    subspaces: Vec<SubspaceJson>,
}

fn spin(name: &str, n: u32, max_spin_n: u32, max_group_order: usize) -> Result<Outcome, CliError> {
    let ctx = PrimeContext::new(n)?;
    let group = Psl2::new(n)?;
    let subspaces = group.invariant_subspaces(max_spin_n)?;
    let group_order = group_closure(n, max_group_order)?.order();
    let expected = expected_invariant_defining_sets(&ctx);
    let full = n as usize + 1;
    let mut consistent = subspaces.len() == expected.len() + 1;
    let mut rows = Vec::new();
    for code in &subspaces {
        let defining_set = extended_cyclic_defining_set(&ctx, code)?;
        if code.dimension() < full {
            consistent &= defining_set.as_ref().is_some_and(|t| expected.contains(t));
        }
        rows.push(SubspaceJson {
            dimension: code.dimension(),
            basis: code.basis().iter().map(|&w| word_hex(w, full)).collect(),
            extended_cyclic: defining_set.is_some(),
            label: defining_set.as_ref().map(|t| CodeLabel::of(&ctx, t).as_str()),
            defining_set,
        });
    }
    let mut text = format!("|PSL(2,{n})| = {group_order}, {} invariant subspaces\n", rows.len());
    for r in &rows {
        let what = match (&r.defining_set, r.label) {
            (Some(t), Some(label)) => format!("extended cyclic, T = {} ({label})", set_text(t)),
            _ => "not extended cyclic".into(),
        };
        let _ = writeln!(text, "dim {:<3} {what}", r.dimension);
    }
    let body = SpinBody {
        n,
        group_order,
        count: rows.len(),
        consistent,
        subspaces: rows,
    };
    let status = if consistent { Status::Ok } else { Status::Inconsistent };
    outcome(name, &body, text, status)
}

#[derive(Serialize)]
struct CounterexampleJson {
    t: usize,
    subsets: [Vec<u32>; 2],
    counts: [u64; 2],
}

#[derive(Serialize)]
struct LayerJson {
    k: usize,
    b: usize,
    t: Option<usize>,
    lambda: Option<u64>,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<CounterexampleJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct DesignsBody {
    n: u32,
    v: usize,
    t: usize,
    status: &'static str,
    layers: Vec<LayerJson>,
}

fn points(mask: u64) -> Vec<u32> {
    (0..64).filter(|i| (mask >> i) & 1 == 1).collect()
}

fn designs(name: &str, n: u32, cap: usize) -> Result<Outcome, CliError> {
    let ctx = PrimeContext::new(n)?;
    let report = design_sweep(&ctx, cap)?;
    let mut status = Status::Ok;
    let layers: Vec<LayerJson> = report
        .layers
        .iter()
        .map(|layer| {
            let mut row = LayerJson {
                k: layer.k,
                b: layer.b,
                t: None,
                lambda: None,
                status: "verified",
                counterexample: None,
                error: None,
            };
            match &layer.outcome {
                LayerOutcome::Verified { t, lambda } => {
                    row.t = Some(*t);
                    row.lambda = Some(*lambda);
                }
                LayerOutcome::Failed(DesignVerdict::Counterexample { t, first, second }) => {
                    status = Status::Inconsistent;
                    row.status = "counterexample";
                    row.counterexample = Some(CounterexampleJson {
                        t: *t,
                        subsets: [points(first.0), points(second.0)],
                        counts: [first.1, second.1],
                    });
                }
                LayerOutcome::Failed(DesignVerdict::Design { .. }) => {
                    unreachable!("failed layer holds a counterexample")
                }
                LayerOutcome::CapExceeded(e) => {
                    if status == Status::Ok {
                        status = Status::CapExceeded;
                    }
                    row.status = "cap_exceeded";
                    row.error = Some(e.to_string());
                }
            }
            row
        })
        .collect();
    let mut text = format!(
        "extended QR code of length {}, t = {}\n   k      b  t  lambda\n",
        report.v, report.t
    );
    for l in &layers {
        let t = l.t.map_or("-".into(), |t| t.to_string());
        let lambda = l.lambda.map_or(l.status.to_string(), |x| x.to_string());
        let _ = writeln!(text, "{:>4} {:>6} {:>2}  {lambda}", l.k, l.b, t);
    }
    let body = DesignsBody {
        n,
        v: report.v,
        t: report.t,
        status: match status {
            Status::Ok => "verified",
            Status::Inconsistent => "failed",
            Status::CapExceeded => "cap_exceeded",
        },
        layers,
    };
    outcome(name, &body, text, status)
}

#[derive(Serialize)]
struct BlahutFailure {
    trial: usize,
    word: String,
    mismatches: Vec<usize>,
}

#[derive(Serialize)]
struct QrSweep {
    checked: usize,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct FourierBody {
    n: u32,
    trials: usize,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    qr_codewords: Option<QrSweep>,
    failures: Vec<BlahutFailure>,
}

fn fourier_check(name: &str, n: u32, trials: usize, seed: u64, cap: usize) -> Result<Outcome, CliError> {
    let ctx = PrimeContext::new(n)?;
    let len = n as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words: Vec<u64> = (0..trials)
        .map(|_| {
            let c = rng.random::<u64>() & mask(len);
            c | (u64::from(c.count_ones() & 1) << len)
        })
        .collect();
    let checked: Vec<Vec<usize>> = words
        .par_iter()
        .map(|&w| blahut_mismatches(&ctx, w))
        .collect::<Result<_, _>>()?;
    let failures: Vec<BlahutFailure> = checked
        .into_iter()
        .enumerate()
        .filter(|(_, m)| !m.is_empty())
        .map(|(trial, mismatches)| BlahutFailure {
            trial,
            word: word_hex(words[trial], len + 1),
            mismatches,
        })
        .collect();

    let qr_codewords = match qr_codes(&ctx) {
        Ok((q, _)) if (n as usize).div_ceil(2) <= cap => {
            let mut all = Vec::new();
            q.extend().for_each_codeword(cap, |w| all.push(w))?;
            let bad: Vec<bool> = all
                .par_iter()
                .map(|&w| blahut_mismatches(&ctx, w).map(|m| !m.is_empty()))
                .collect::<Result<_, _>>()?;
            let failures = all
                .iter()
                .zip(bad)
                .filter(|(_, b)| *b)
                .map(|(&w, _)| word_hex(w, len + 1))
                .collect();
            Some(QrSweep {
                checked: all.len(),
                failures,
            })
        }
        _ => None,
    };
    let ok = failures.is_empty() && qr_codewords.as_ref().is_none_or(|s| s.failures.is_empty());
    let mut text = format!("{} of {trials} random words fail\n", failures.len());
    if let Some(s) = &qr_codewords {
        let _ = writeln!(text, "{} of {} extended QR codewords fail", s.failures.len(), s.checked);
    }
    let body = FourierBody {
        n,
        trials,
        seed,
        qr_codewords,
        failures,
    };
    outcome(name, &body, text, if ok { Status::Ok } else { Status::Inconsistent })
}

#[derive(Serialize)]
struct WitnessJson {
    l: u32,
    s: u32,
    target: u32,
    branch: &'static str,
    gamma: String,
    a: String,
    codeword: String,
    d_prime: String,
}

#[derive(Serialize)]
struct WitnessFailure {
    l: u32,
    s: u32,
    error: String,
}

#[derive(Serialize)]
struct WitnessBody {
    n: u32,
    defining_set: Vec<u32>,
    count: usize,
    witnesses: Vec<WitnessJson>,
    failures: Vec<WitnessFailure>,
}

fn witness(name: &str, n: u32, l: Option<u32>, s: Option<u32>, defining_set: &[u32]) -> Result<Outcome, CliError> {
    let ctx = PrimeContext::new(n)?;
    let mask = ctx.cosets().coset_mask(defining_set)?;
    let defining_set = ctx.cosets().union_of(mask);
    let ls: Vec<u32> = match l {
        Some(l) => vec![l],
        None => (1..n).filter(|l| !defining_set.contains(l)).collect(),
    };
    let ss: Vec<u32> = match s {
        Some(s) => vec![s],
        None => (0..=(n - 3) / 2).collect(),
    };
    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    for &l in &ls {
        for &s in &ss {
            match spectral_witness(&ctx, &defining_set, l, s) {
                Ok(w) => witnesses.push(WitnessJson {
                    l,
                    s,
                    target: w.target,
                    branch: match w.branch {
                        Branch::TwoIsResidue => "2_in_Q",
                        Branch::TwoIsNonresidue => "2_in_N",
                    },
                    gamma: field_hex(w.gamma),
                    a: poly_bits(&w.a),
                    codeword: bit_string(w.codeword, n as usize),
                    d_prime: field_hex(w.d_prime),
                }),
                Err(Error::Falsified(msg)) => failures.push(WitnessFailure { l, s, error: msg }),
                Err(e) => return Err(e.into()),
            }
        }
    }
    let mut text = String::new();
    for w in &witnesses {
        let _ = writeln!(
            text,
            "l={:<3} s={:<3} D'_{:<3} = {:<10} c = {}",
            w.l, w.s, w.target, w.d_prime, w.codeword
        );
    }
    for f in &failures {
        let _ = writeln!(text, "l={} s={} FAILED: {}", f.l, f.s, f.error);
    }
    let status = if failures.is_empty() {
        Status::Ok
    } else {
        Status::Inconsistent
    };
    let body = WitnessBody {
        n,
        defining_set,
        count: witnesses.len(),
        witnesses,
        failures,
    };
    outcome(name, &body, text, status)
}
