use std::path::Path;

use anyhow::{anyhow, bail, Context as _, Result};
use serde::Serialize;

use nearring_core::io::{self, Format, NearringFile};
use nearring_core::regularity::{self, ElementWitness, UnityMode};
use nearring_core::substructures::{self, IdealSide};
use nearring_core::theorems::{run_full_suite, SuiteOptions, SummaryRow, UnmetHypothesis};
use nearring_core::{
    standard_catalog, validate_nearring, verify, Axiom, DecompositionWitness, Error, FiniteNearring, OrderCap,
    RegularityCertificate, StructureKind, Subset, TheoremChecker, TheoremId, TheoremReport, Verdict,
};

use crate::report::{Instance, RunReport, TOOL_VERSION};
use crate::{Command, DecomposeArgs, FileFormat, ReportFormat, VerifyArgs};

pub struct Output {
    pub stdout: String,
    pub code: u8,
}

fn emit<T: Serialize>(
    format: ReportFormat,
    subcommand: &str,
    instance: Option<Instance>,
    results: T,
    code: u8,
) -> Output {
    let report = RunReport {
        tool_version: TOOL_VERSION,
        instance,
        subcommand,
        results,
        exit_status: code,
    };
    Output {
        stdout: report.render(format),
        code,
    }
}

pub fn run(command: &Command, format: ReportFormat) -> Result<Output> {
    let cap = OrderCap::from_env();
    match command {
        Command::Check { file } => check(file, cap, format),
        Command::Enumerate { kind, file } => {
            let (n, inst) = load(file, cap)?;
            let list = substructures::enumerate(&n, *kind, cap)?;
            let results = EnumerateResults {
                kind: *kind,
                count: list.len(),
                members: list.members,
            };
            Ok(emit(format, "enumerate", Some(inst), results, 0))
        }
        Command::Regularity {
            file,
            ideal,
            all_ideals,
            strict_unity,
        } => regularity(
            file,
            ideal.as_deref(),
            *all_ideals,
            unity_mode(*strict_unity),
            cap,
            format,
        ),
        Command::Verify(args) => verify_cmd(args, cap, format),
        Command::Decompose(args) => decompose(args, cap, format),
        Command::Catalog {
            max_order,
            export,
            export_format,
        } => catalog(*max_order, export.as_deref(), *export_format, format),
        Command::Convert { input, output } => {
            let file = io::read_file(input).map_err(|e| anyhow!("{}: {e}", input.display()))?;
            cap.check(file.order)?;
            file.validate().map_err(|e| anyhow!("{}: {e}", input.display()))?;
            let to = Format::from_path(output);
            std::fs::write(output, file.render(to)).with_context(|| format!("writing {}", output.display()))?;
            let inst = Instance::new(input, file.name.as_deref(), file.order);
            let results = ConvertResults {
                output: Instance::new(output, None, file.order).file,
                format: match to {
                    Format::Text => "text",
                    Format::Json => "json",
                },
            };
            Ok(emit(format, "convert", Some(inst), results, 0))
        }
    }
}

fn unity_mode(strict: bool) -> UnityMode {
    if strict {
        UnityMode::Strict
    } else {
        UnityMode::Lenient
    }
}

fn load(path: &Path, cap: OrderCap) -> Result<(FiniteNearring, Instance)> {
    let file = io::read_file(path).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    cap.check(file.order)?;
    let named = file.validate().map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let inst = Instance::new(path, named.name.as_deref(), file.order);
    Ok((named.nearring, inst))
}

fn parse_subset(n: &FiniteNearring, text: &str) -> Result<Subset> {
    let elements = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| anyhow!("`{t}` is not an element index")))
        .collect::<Result<Vec<_>>>()?;
    if elements.is_empty() {
        bail!("empty subset `{text}`");
    }
    Ok(n.subset(elements)?)
}

#[derive(Serialize)]
struct EnumerateResults {
    kind: StructureKind,
    count: usize,
    members: Vec<Subset>,
}

#[derive(Serialize)]
struct ConvertResults {
    output: String,
    format: &'static str,
}

#[derive(Serialize)]
struct AxiomStatus {
    axiom: Axiom,
    holds: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    witnesses: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct CheckResults {
    valid: bool,
    axioms: Vec<AxiomStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distributive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    zero_symmetric: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unity: Option<usize>,
}

fn check(path: &Path, cap: OrderCap, format: ReportFormat) -> Result<Output> {
    let file = io::read_file(path).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    cap.check(file.order)?;
    let inst = Instance::new(path, file.name.as_deref(), file.order);
    match validate_nearring(&file.add, &file.mul) {
        Ok(n) => {
            let results = CheckResults {
                valid: true,
                axioms: Axiom::ALL
                    .into_iter()
                    .map(|axiom| AxiomStatus {
                        axiom,
                        holds: true,
                        witnesses: Vec::new(),
                    })
                    .collect(),
                distributive: Some(n.is_distributive()),
                zero_symmetric: Some(n.elements().all(|a| n.mul(a, 0) == 0)),
                unity: n.unity(),
            };
            Ok(emit(format, "check", Some(inst), results, 0))
        }
        Err(Error::AxiomViolation(report)) => {
            let axioms = Axiom::ALL
                .into_iter()
                .map(|axiom| {
                    let witnesses = report.get(axiom).map(|v| v.witnesses.clone()).unwrap_or_default();
                    AxiomStatus {
                        axiom,
                        holds: witnesses.is_empty(),
                        witnesses,
                    }
                })
                .collect();
            let results = CheckResults {
                valid: false,
                axioms,
                distributive: None,
                zero_symmetric: None,
                unity: None,
            };
            Ok(emit(format, "check", Some(inst), results, 1))
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct WitnessRow {
    x: usize,
    y: usize,
    p: usize,
}

#[derive(Serialize)]
struct RegularityRow {
    /// `None` for plain regularity `xyx = x`.
    ideal: Option<Subset>,
    regular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    refuted_at: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    witnesses: Vec<WitnessRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<&'static str>,
}

impl RegularityRow {
    fn certified(ideal: Option<Subset>, cert: &RegularityCertificate) -> Self {
        RegularityRow {
            ideal,
            regular: true,
            refuted_at: None,
            witnesses: cert
                .witnesses()
                .iter()
                .enumerate()
                .map(|(x, &ElementWitness { y, p })| WitnessRow { x, y, p })
                .collect(),
            warning: cert.warning(),
        }
    }

    fn refuted(ideal: Option<Subset>, element: usize) -> Self {
        RegularityRow {
            ideal,
            regular: false,
            refuted_at: Some(element),
            witnesses: Vec::new(),
            warning: None,
        }
    }
}

#[derive(Serialize)]
struct RegularityResults {
    unity_mode: UnityMode,
    certificates: Vec<RegularityRow>,
}

fn regularity(
    path: &Path,
    ideal: Option<&str>,
    all: bool,
    mode: UnityMode,
    cap: OrderCap,
    format: ReportFormat,
) -> Result<Output> {
    let (n, inst) = load(path, cap)?;
    if mode == UnityMode::Strict && n.unity().is_none() {
        bail!("strict unity mode requires a multiplicative identity");
    }
    let row = |p: &Subset| -> Result<RegularityRow> {
        Ok(match regularity::is_p_regular(&n, p, mode)? {
            regularity::RegularityVerdict::Certified(cert) => RegularityRow::certified(Some(p.clone()), &cert),
            regularity::RegularityVerdict::Refuted { element } => RegularityRow::refuted(Some(p.clone()), element),
        })
    };
    let (rows, code) = if all {
        let ideals = substructures::enumerate(&n, StructureKind::Ideal, cap)?;
        // A classification: refutations are results, not failed checks.
        (ideals.iter().map(row).collect::<Result<Vec<_>>>()?, 0)
    } else if let Some(text) = ideal {
        let p = parse_subset(&n, text)?;
        if !substructures::is_ideal(&n, &p, IdealSide::TwoSided) {
            bail!("{p} is not a two-sided ideal");
        }
        let r = row(&p)?;
        let code = u8::from(!r.regular);
        (vec![r], code)
    } else {
        let r = match regularity::is_regular(&n) {
            regularity::RegularityVerdict::Certified(cert) => RegularityRow::certified(None, &cert),
            regularity::RegularityVerdict::Refuted { element } => RegularityRow::refuted(None, element),
        };
        let code = u8::from(!r.regular);
        (vec![r], code)
    };
    let results = RegularityResults {
        unity_mode: mode,
        certificates: rows,
    };
    Ok(emit(format, "regularity", Some(inst), results, code))
}

#[derive(Serialize)]
struct VerifyResults {
    theorems: Vec<TheoremId>,
    ideals: Vec<Subset>,
    summary: Vec<SummaryRow>,
    failures: Vec<TheoremReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reports: Option<Vec<TheoremReport>>,
}

fn verify_cmd(args: &VerifyArgs, cap: OrderCap, format: ReportFormat) -> Result<Output> {
    let (n, inst) = load(&args.file, cap)?;
    let mode = unity_mode(args.strict_unity);
    if mode == UnityMode::Strict && n.unity().is_none() {
        bail!("strict unity mode requires a multiplicative identity");
    }
    let mut theorems = if args.theorems.is_empty() {
        TheoremId::ALL.to_vec()
    } else {
        args.theorems.clone()
    };
    theorems.sort();
    theorems.dedup();
    let options = SuiteOptions {
        mode,
        cap,
        only: Some(theorems.clone()),
        max_family: args.max_family.into(),
    };
    let ideal = args.ideal.as_deref().map(|t| parse_subset(&n, t)).transpose()?;
    let suite = run_full_suite(&n, ideal.as_ref(), &options)?;
    let failures: Vec<TheoremReport> = suite.failures().cloned().collect();
    let code = u8::from(!failures.is_empty());
    let results = VerifyResults {
        theorems,
        ideals: suite.ideals.clone(),
        summary: suite.summary(),
        failures,
        reports: args.detailed.then(|| suite.reports.clone()),
    };
    Ok(emit(format, "verify", Some(inst), results, code))
}

#[derive(Serialize)]
struct DecomposeResults {
    theorem: TheoremId,
    ideal: Subset,
    blocks: Vec<Subset>,
    element: usize,
    verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<DecompositionWitness>,
}

fn decompose(args: &DecomposeArgs, cap: OrderCap, format: ReportFormat) -> Result<Output> {
    let (n, inst) = load(&args.file, cap)?;
    let mode = unity_mode(args.strict_unity);
    let blocks = args
        .blocks
        .iter()
        .filter(|b| !b.trim().is_empty())
        .map(|b| parse_subset(&n, b))
        .collect::<Result<Vec<_>>>()?;
    let wanted = match args.theorem {
        TheoremId::SingleDecomposition => Some(1),
        TheoremId::PairDecomposition => Some(2),
        TheoremId::ChainDecomposition => None,
        other => bail!("decompose supports 3.3, 3.4 and 3.5, not {other}"),
    };
    if let Some(k) = wanted {
        if blocks.len() != k {
            bail!("{} takes {k} block(s), got {}", args.theorem, blocks.len());
        }
    }
    if blocks.is_empty() {
        bail!("at least one block is required");
    }
    n.check_element(args.element)?;
    if args.theorem == TheoremId::SingleDecomposition && args.x.is_some() {
        bail!("--x applies to 3.4 and 3.5 only");
    }
    let x = args.x.unwrap_or(0);
    n.check_element(x)?;
    for b in &blocks {
        if !b.contains(args.element) {
            bail!("element {} is not in block {b}", args.element);
        }
    }

    let checker = match &args.ideal {
        Some(text) => TheoremChecker::new(&n, &parse_subset(&n, text)?, mode),
        None => {
            let (_, cert) = regularity::find_p_regular_ideals(&n, mode, cap)?
                .into_iter()
                .next()
                .ok_or_else(|| anyhow!("no P-regular ideal"))?;
            TheoremChecker::from_certificate(&n, cert)
        }
    };
    let built = match args.theorem {
        TheoremId::SingleDecomposition => checker.decompose_single(&blocks[0], args.element),
        TheoremId::PairDecomposition => checker.decompose_pair(&blocks[0], &blocks[1], args.element, x),
        _ => checker.decompose_chain(&blocks, args.element, x),
    };
    let (verdict, witness, code) = match built {
        Ok(w) => match verify::decomposition(&n, checker.ideal(), &blocks, &w) {
            Ok(()) => (Verdict::Holds, Some(w), 0),
            Err(msg) => {
                eprintln!("independent reconstruction failed: {msg}");
                (
                    Verdict::Fails(nearring_core::theorems::Counterexample::Element(args.element)),
                    Some(w),
                    1,
                )
            }
        },
        Err(Error::HypothesisViolation(h)) => match h {
            UnmetHypothesis::ElementOutOfRange { .. } | UnmetHypothesis::WrongOrder { .. } => {
                bail!("{h}")
            }
            h => (Verdict::Inapplicable(h), None, 0),
        },
        Err(e) => return Err(e.into()),
    };
    let results = DecomposeResults {
        theorem: args.theorem,
        ideal: checker.ideal().clone(),
        blocks,
        element: args.element,
        verdict,
        witness,
    };
    Ok(emit(format, "decompose", Some(inst), results, code))
}

#[derive(Serialize)]
struct CatalogRow {
    name: String,
    slug: String,
    order: usize,
    provenance: String,
    distributive: bool,
    unity: Option<usize>,
    flags_match: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    file: Option<String>,
}

fn catalog(max_order: usize, export: Option<&Path>, export_format: FileFormat, format: ReportFormat) -> Result<Output> {
    let file_format = match export_format {
        FileFormat::Text => Format::Text,
        FileFormat::Json => Format::Json,
    };
    if let Some(dir) = export {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut rows = Vec::new();
    for entry in standard_catalog(max_order) {
        let slug = entry.slug();
        let file = match export {
            Some(dir) => {
                let name = format!("{slug}.{}", file_format.extension());
                let content = NearringFile::from_nearring(&entry.nearring, Some(&entry.name)).render(file_format);
                std::fs::write(dir.join(&name), content).with_context(|| format!("writing {name}"))?;
                Some(name)
            }
            None => None,
        };
        rows.push(CatalogRow {
            flags_match: entry.flags_match(),
            name: entry.name,
            slug,
            order: entry.nearring.order(),
            provenance: entry.provenance,
            distributive: entry.nearring.is_distributive(),
            unity: entry.nearring.unity(),
            file,
        });
    }
    let code = u8::from(rows.iter().any(|r| !r.flags_match));
    Ok(emit(format, "catalog", None, rows, code))
}
