//! Command implementations behind the `lieforge` binary. Each command
//! returns a [`RunReport`]; the binary maps it to an exit code.

use std::path::PathBuf;

use serde_json::json;

use crate::exact::Scalar;
use crate::lie::{cartan_and_roots, read_structure, root_checks, verify_structure, write_structure, FormatError, JacobiMode};
use crate::report::{Claim, RunReport, Status};
use crate::srep::casimir_image;
use crate::srep::families::{construct, TARGETS};
use crate::weights::tables::{verify_table, RowStatus, Table};
use crate::weights::{irreducible, lie_type_scan, Character, RootDatum, RootKind, ScanCase, Weight, Witness};

pub const MEM_ENV: &str = "LIEFORGE_MAX_MEM_MB";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("malformed structure file: {0}")]
    Format(#[from] FormatError),
    #[error("memory cap of {cap_mb} MB exceeded ({needed_mb} MB needed for {what})")]
    MemoryCap { what: String, needed_mb: u64, cap_mb: u64 },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Format(_) => 2,
            CliError::MemoryCap { .. } => 3,
            CliError::Io(_) | CliError::Compute(_) => 1,
        }
    }
}

/// Cap on the size of accumulation tables, read from `LIEFORGE_MAX_MEM_MB`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub cap_mb: Option<u64>,
}

impl Budget {
    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var(MEM_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map(|v| Budget { cap_mb: Some(v) })
                .map_err(|_| CliError::Usage(format!("{MEM_ENV} must be a whole number of megabytes, got {s:?}"))),
            Err(_) => Ok(Budget { cap_mb: None }),
        }
    }

    pub fn unlimited() -> Self {
        Budget { cap_mb: None }
    }

    pub fn charge(&self, what: &str, entries: usize, bytes_per_entry: usize) -> Result<(), CliError> {
        let Some(cap_mb) = self.cap_mb else { return Ok(()) };
        let needed = (entries as u64 * bytes_per_entry as u64).div_ceil(1 << 20);
        if needed > cap_mb {
            return Err(CliError::MemoryCap { what: what.to_string(), needed_mb: needed, cap_mb });
        }
        Ok(())
    }
}

const WEIGHT_ENTRY_BYTES: usize = 64;
const SCALAR_ENTRY_BYTES: usize = 48;

#[derive(Debug, Clone)]
pub struct SampleOptions {
    pub full: bool,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions { full: false, samples: 10_000, seed: 42 }
    }
}

impl SampleOptions {
    fn mode(&self) -> JacobiMode {
        if self.full {
            JacobiMode::Full
        } else {
            JacobiMode::Sampled(self.samples)
        }
    }
}

/// Expected `(dim, rank, roots)` of a named target.
pub fn expected_shape(target: &str) -> Option<(usize, usize, usize)> {
    let num = |p: &str| target.strip_prefix(p).and_then(|s| s.parse::<usize>().ok());
    match target {
        "f4" => Some((52, 4, 48)),
        "e6" => Some((78, 6, 72)),
        "e7" => Some((133, 7, 126)),
        "e8" => Some((248, 8, 240)),
        "sp3" => Some((21, 3, 18)),
        "n6" => Some((24, 4, 20)),
        _ => {
            if let Some(n) = num("cp") {
                Some((n * n + 2 * n, n, n * (n + 1)))
            } else if let Some(n) = num("hp") {
                Some(((n + 1) * (2 * n + 3), n + 1, 2 * (n + 1) * (n + 1)))
            } else if let Some(n) = num("sphere") {
                let big = n + 1;
                let r = big / 2;
                let roots = if big % 2 == 0 { 2 * r * (r - 1) } else { 2 * r * r };
                Some((big * (big - 1) / 2, r, roots))
            } else {
                None
            }
        }
    }
}

fn shape_claim(id: &str, got: usize, expected: Option<usize>) -> Claim {
    let c = Claim::new(id, expected.is_none_or(|e| e == got)).with("value", got);
    match expected {
        Some(e) => c.with("expected", e),
        None => c,
    }
}

pub fn cmd_construct(target: &str, opts: &SampleOptions, out: Option<&PathBuf>, budget: Budget) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("construct").input("target", target).input("jacobi", jacobi_label(opts));
    if !opts.full {
        report.seed = Some(opts.seed);
    }
    let c = construct(target).map_err(|e| match e {
        crate::srep::SrepError::UnknownTarget(t) => CliError::Usage(format!("unknown target {t:?}; expected one of {TARGETS}")),
        e => CliError::Compute(e.to_string()),
    })?;
    let g = &c.candidate.g;
    budget.charge("structure constants", g.nnz(), SCALAR_ENTRY_BYTES)?;
    let expected = expected_shape(target);
    report.push(shape_claim("dimension", g.dim(), expected.map(|e| e.0)));
    let cas = casimir_image(&c.rep).map_err(|e| CliError::Compute(e.to_string()))?;
    budget.charge("casimir image", cas.nnz(), SCALAR_ENTRY_BYTES)?;
    report.push(Claim::new("casimir_vanishes", cas.is_zero()).with("nonzero_entries", cas.nnz()));
    if let Some((cval, r)) = &c.augmentation {
        report.push(Claim::new("augmentation_positive", cval.is_negative() && r.is_positive()).with("c", cval).with("r", r));
    }
    let v = verify_structure(g, opts.mode(), opts.seed);
    let mut jac = Claim::new("jacobi", v.jacobi_ok).with("mode", jacobi_label(opts));
    if let Some((i, j, k)) = v.jacobi_violation {
        jac = jac.with("violation", format!("{i},{j},{k}"));
    }
    report.push(jac);
    report.push(Claim::new("invariant_form", v.invariance_ok));
    match v.killing_signature {
        Some(sig) => report.push(
            Claim::new("killing_negative_definite", sig == (0, g.dim(), 0))
                .with("signature", format!("({},{},{})", sig.0, sig.1, sig.2)),
        ),
        None => report.push(Claim::skipped("killing_negative_definite")),
    }
    let roots = cartan_and_roots(g, &c.cartan).map_err(|e| CliError::Compute(e.to_string()))?;
    report.push(shape_claim("rank", roots.rank, expected.map(|e| e.1)));
    report.push(shape_claim("root_count", roots.roots.len(), expected.map(|e| e.2)));
    let checks = root_checks(g, &c.cartan, &roots);
    report.push(
        Claim::new("root_system", checks.all())
            .with("closed", checks.closed)
            .with("q_integral", checks.q_integral)
            .with("connected", checks.connected),
    );
    if let Some(path) = out {
        std::fs::write(path, write_structure(g))?;
        report = report.input("out", path.display());
    }
    report.details = json!({
        "name": c.name,
        "labels": g.labels(),
        "dim_h": c.candidate.h_dim,
        "dim_m": c.candidate.m_dim,
        "structure_constants": g.nnz(),
    });
    if c.name == "n6" {
        report.details["naming"] =
            json!("dimension 24 and rank 4 match su(5); u(5) would have dimension 25 and a center");
    }
    Ok(report)
}

fn jacobi_label(opts: &SampleOptions) -> String {
    if opts.full {
        "full".into()
    } else {
        format!("sampled({})", opts.samples)
    }
}

pub fn cmd_verify(path: &PathBuf, opts: &SampleOptions) -> Result<RunReport, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let l = read_structure(&text)?;
    let mut report = RunReport::new("verify").input("file", path.display()).input("jacobi", jacobi_label(opts));
    if !opts.full {
        report.seed = Some(opts.seed);
    }
    let v = verify_structure(&l, opts.mode(), opts.seed);
    let mut jac = Claim::new("jacobi", v.jacobi_ok).with("mode", jacobi_label(opts));
    if let Some((i, j, k)) = v.jacobi_violation {
        let labels = l.labels();
        jac = jac
            .with("violation", format!("{i},{j},{k}"))
            .with("labels", format!("{},{},{}", labels[i], labels[j], labels[k]));
    }
    report.push(jac);
    report.push(Claim::new("invariant_form", v.invariance_ok));
    report.details = json!({
        "dim": l.dim(),
        "killing_signature": v.killing_signature,
    });
    Ok(report)
}

/// Feasible `n` of the spin classification.
pub const SPIN_FEASIBLE: [usize; 7] = [5, 6, 8, 9, 10, 12, 16];

pub fn cmd_scan(min: usize, max: usize) -> Result<RunReport, CliError> {
    if min < 5 || min > max {
        return Err(CliError::Usage(format!("scan needs 5 <= min <= max, got {min} {max}")));
    }
    let res = lie_type_scan(min, max).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut report = RunReport::new("scan").input("min", min).input("max", max);
    for e in &res.entries {
        let mut c = Claim::new(format!("n={}", e.n), true).with("feasible", e.feasible);
        c = match &e.witness {
            Witness::Ratio { alpha, beta, q } => {
                let consistent = q.is_integer() == e.feasible;
                c.status = Status::from_bool(consistent);
                c.with("alpha", alpha).with("beta", beta).with("q", q)
            }
            Witness::Extension { x, alpha, beta, q } => {
                c.status = Status::from_bool(q.is_integer() == e.feasible);
                c.with("x", x).with("alpha", alpha).with("beta", beta).with("q", q)
            }
            Witness::Candidates { candidates } => {
                let ok: Vec<String> =
                    candidates.iter().filter(|c| c.violation.is_none()).map(|c| c.x.to_string()).collect();
                let tried: Vec<String> = candidates.iter().map(|c| c.x.to_string()).collect();
                c.with("x_tried", tried.join(",")).with("x_feasible", ok.join(","))
            }
        };
        if let Some(v) = &e.violation {
            c = c.with("violation", serde_json::to_string(v).expect("serializes"));
        }
        c = c.with("case", case_label(e.case));
        report.push(c);
    }
    let expected: Vec<usize> = SPIN_FEASIBLE.iter().copied().filter(|n| (min..=max).contains(n)).collect();
    let list = |v: &[usize]| v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",");
    report.push(
        Claim::new("feasible_set", res.feasible == expected)
            .with("value", list(&res.feasible))
            .with("expected", list(&expected)),
    );
    report.details = serde_json::to_value(&res).expect("serializes");
    Ok(report)
}

fn case_label(c: ScanCase) -> String {
    match c {
        ScanCase::HalfSpin { k } => format!("n=8k, k={k}"),
        ScanCase::SpinPlusOne { k } => format!("n=8k+1, k={k}"),
        ScanCase::SpinMinusOne { k } => format!("n=8k-1, k={k}"),
        ScanCase::Complex { k } => format!("n=4k+2, k={k}"),
        ScanCase::Quaternionic { rank } => format!("quaternionic, rank={rank}"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Functor {
    Ext,
    Sym,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum What {
    TrivialMult,
    Norm2,
    Full,
}

impl What {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "trivial-mult" => Some(What::TrivialMult),
            "norm2" => Some(What::Norm2),
            "full" => Some(What::Full),
            _ => None,
        }
    }
}

/// `A3`, `B4`, `C2`, `D8`.
pub fn parse_algebra(s: &str) -> Result<std::sync::Arc<RootDatum>, CliError> {
    let bad = || CliError::Usage(format!("unsupported algebra {s:?}; expected A<r>, B<r>, C<r> or D<r>"));
    let mut chars = s.chars();
    let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
        Some('A') => RootKind::A,
        Some('B') => RootKind::B,
        Some('C') => RootKind::C,
        Some('D') => RootKind::D,
        _ => return Err(bad()),
    };
    let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
    let min = if kind == RootKind::D { 3 } else { 1 };
    if rank < min || rank > 14 {
        return Err(bad());
    }
    Ok(RootDatum::new(kind, rank))
}

/// `standard`, `adjoint`, `spin`, `halfspin+`, `halfspin-`, or
/// `hw=<c_1>,...` with real coordinates such as `3/2`.
pub fn parse_rep(d: &std::sync::Arc<RootDatum>, s: &str) -> Result<Character, CliError> {
    let n = d.ambient();
    let bad = |why: &str| CliError::Usage(format!("unsupported representation {s:?} for {d}: {why}"));
    let hw = |w: Weight| irreducible(d, &d.normalize(&w));
    let e = |i: usize| Weight::unit(n, i);
    match s {
        "standard" => Ok(hw(e(0))),
        "adjoint" => Ok(hw(d.positive.iter().max_by_key(|a| d.height(a)).cloned().expect("nonempty root system"))),
        "spin" => match d.kind {
            RootKind::B => Ok(hw(Weight::doubled(&vec![1; n]))),
            RootKind::D => {
                let plus = Weight::doubled(&vec![1; n]);
                let mut minus = plus.clone();
                minus.0[n - 1] = -1;
                Ok(hw(plus).add(&hw(minus)))
            }
            _ => Err(bad("spin needs B or D")),
        },
        "halfspin+" | "halfspin-" => {
            if d.kind != RootKind::D {
                return Err(bad("half-spin needs D"));
            }
            let mut w = Weight::doubled(&vec![1; n]);
            if s.ends_with('-') {
                w.0[n - 1] = -1;
            }
            Ok(hw(w))
        }
        _ => {
            let coords = s.strip_prefix("hw=").ok_or_else(|| bad("unknown name"))?;
            let mut w = Weight::zero(n);
            let parts: Vec<&str> = coords.split(',').collect();
            if parts.len() != n {
                return Err(bad(&format!("need {n} coordinates")));
            }
            for (i, p) in parts.iter().enumerate() {
                let x: Scalar = p.trim().parse().map_err(|_| bad("coordinate is not a rational"))?;
                let two = &x * &Scalar::from_int(2);
                let v = two.to_i64().filter(|v| v.abs() < 1000).ok_or_else(|| bad("coordinates must be in (1/2)Z"))?;
                w.0[i] = v as i16;
            }
            let w = d.normalize(&w);
            if !d.is_dominant(&w) {
                return Err(bad("highest weight must be dominant"));
            }
            Ok(hw(w))
        }
    }
}

pub struct DecomposeRequest<'a> {
    pub algebra: &'a str,
    pub rep: &'a str,
    pub power: usize,
    pub functor: Functor,
    pub what: What,
    pub expect: Option<i64>,
}

pub fn cmd_decompose(req: &DecomposeRequest<'_>, budget: Budget) -> Result<RunReport, CliError> {
    let d = parse_algebra(req.algebra)?;
    let m = parse_rep(&d, req.rep)?;
    let functor = match req.functor {
        Functor::Ext => "ext",
        Functor::Sym => "sym",
    };
    let what = match req.what {
        What::TrivialMult => "trivial-mult",
        What::Norm2 => "norm2",
        What::Full => "full",
    };
    let mut report = RunReport::new("decompose")
        .input("algebra", &d)
        .input("rep", req.rep)
        .input("power", req.power)
        .input("functor", functor)
        .input("what", what);
    let ch = match req.functor {
        Functor::Ext => m.ext_power(req.power),
        Functor::Sym => m.sym_power(req.power),
    }
    .map_err(|e| CliError::Compute(e.to_string()))?;
    budget.charge("character table", ch.support_size(), WEIGHT_ENTRY_BYTES)?;
    let compute = |e: crate::weights::WeightError| CliError::Compute(e.to_string());
    let (value, details) = match req.what {
        What::TrivialMult => (ch.trivial_multiplicity().map_err(compute)?, json!({})),
        What::Norm2 => (ch.irreducibility_norm().map_err(compute)?, json!({})),
        What::Full => {
            let dec = ch.decompose().map_err(compute)?;
            let parts: Vec<_> = dec
                .iter()
                .map(|(w, k)| json!({"highest_weight": w.to_string(), "multiplicity": k, "dim": d.weyl_dimension(w).to_string()}))
                .collect();
            (dec.len() as i64, json!({ "summands": parts }))
        }
    };
    let id = match req.what {
        What::TrivialMult => "trivial_multiplicity",
        What::Norm2 => "irreducibility_norm",
        What::Full => "summand_count",
    };
    let mut claim = Claim::new(id, req.expect.is_none_or(|e| e == value)).with("value", value).with("dim", ch.dim());
    if let Some(e) = req.expect {
        claim = claim.with("expected", e);
    }
    report.push(claim);
    report.details = details;
    Ok(report)
}

pub fn cmd_table(which: Option<Table>) -> Result<RunReport, CliError> {
    let tables: Vec<Table> = match which {
        Some(t) => vec![t],
        None => Table::ALL.to_vec(),
    };
    let mut report = RunReport::new("table").input(
        "tables",
        tables.iter().map(|t| serde_json::to_value(t).unwrap().as_str().unwrap().to_string()).collect::<Vec<_>>().join(","),
    );
    let mut details = Vec::new();
    for t in tables {
        for o in verify_table(t).map_err(|e| CliError::Compute(e.to_string()))? {
            let id = format!("{}: {} {} {}", serde_json::to_value(t).unwrap().as_str().unwrap(), o.row.symbol, o.row.algebra, o.row.module);
            let mut c = match o.status {
                RowStatus::Pass => Claim::new(id, true),
                RowStatus::Fail => Claim::new(id, false),
                RowStatus::Skipped => Claim::skipped(id).with("reason", "exceptional algebra"),
            };
            if let (Some(dim), Some(v)) = (o.dim, o.value) {
                let key = if t == Table::Real { "trivial_multiplicity" } else { "norm2" };
                c = c.with("dim", dim).with(key, v);
            }
            report.push(c);
            details.push(o);
        }
    }
    report.details = serde_json::to_value(details).expect("serializes");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_reports_witness() {
        let r = cmd_scan(7, 7).unwrap();
        assert!(r.passed());
        assert_eq!(r.claims[0].witness["q"], "2/3");
        assert_eq!(r.claims[0].witness["feasible"], "false");
        assert!(matches!(cmd_scan(4, 9), Err(CliError::Usage(_))));
        assert!(matches!(cmd_scan(9, 8), Err(CliError::Usage(_))));
    }

    #[test]
    fn decompose_small() {
        let req = DecomposeRequest {
            algebra: "A3",
            rep: "standard",
            power: 2,
            functor: Functor::Ext,
            what: What::Full,
            expect: Some(1),
        };
        let r = cmd_decompose(&req, Budget::unlimited()).unwrap();
        assert!(r.passed());
        assert_eq!(r.claims[0].witness["dim"], "6");
        let req = DecomposeRequest { what: What::TrivialMult, expect: Some(1), ..req };
        assert!(!cmd_decompose(&req, Budget::unlimited()).unwrap().passed());
    }

    #[test]
    fn rep_parsing() {
        let d = parse_algebra("D4").unwrap();
        assert_eq!(parse_rep(&d, "halfspin-").unwrap().dim(), 8);
        assert_eq!(parse_rep(&d, "spin").unwrap().dim(), 16);
        assert_eq!(parse_rep(&d, "adjoint").unwrap().dim(), 28);
        assert_eq!(parse_rep(&d, "hw=3/2,1/2,1/2,1/2").unwrap().dim(), 56);
        assert!(parse_rep(&d, "hw=1,2,0,0").is_err());
        assert!(parse_rep(&d, "hw=1/3,0,0,0").is_err());
        assert!(parse_algebra("E6").is_err());
        assert!(parse_algebra("D2").is_err());
        let c = parse_algebra("C3").unwrap();
        assert_eq!(parse_rep(&c, "adjoint").unwrap().dim(), 21);
        assert!(parse_rep(&c, "spin").is_err());
    }

    #[test]
    fn budget_caps() {
        let b = Budget { cap_mb: Some(1) };
        assert!(b.charge("t", 1000, 64).is_ok());
        let err = b.charge("t", 1 << 20, 64).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn shapes() {
        assert_eq!(expected_shape("cp3"), Some((15, 3, 12)));
        assert_eq!(expected_shape("hp2"), Some((21, 3, 18)));
        assert_eq!(expected_shape("sphere4"), Some((10, 2, 8)));
        assert_eq!(expected_shape("sphere5"), Some((15, 3, 12)));
        assert_eq!(expected_shape("spin7"), None);
    }
}
