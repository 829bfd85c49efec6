use std::fmt::Write as _;

use num_bigint::BigUint;
use serde_json::{json, Value};

use orthant_walks::asymptotics::{asymptotics, minimal_points, ExpansionOptions};
use orthant_walks::diagonal::{
    build_rational, diagonal_coeffs, verify_orbit_sum_identity_series,
    verify_pospart_to_diagonal, SeriesKind,
};
use orthant_walks::holonomic::to_signed;
use orthant_walks::report::{json_report, render_text};
use orthant_walks::{
    count_totals, count_walks, models, DpOptions, EnumerateError, Execution, HolonomicError,
    OdeSpec, RecurrenceSpec, StepSet,
};

use crate::{Cli, Command, Format, Kind, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, EXIT_VERIFY};

pub struct Output {
    pub stdout: String,
    pub status: u8,
}

#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub status: u8,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            status: EXIT_USAGE,
        }
    }
}

impl From<EnumerateError> for Failure {
    fn from(e: EnumerateError) -> Self {
        let status = match e {
            EnumerateError::ResourceLimit { .. } => EXIT_RESOURCE,
            EnumerateError::OutOfRange { .. } => EXIT_USAGE,
        };
        Failure {
            message: e.to_string(),
            status,
        }
    }
}

fn ok(stdout: String) -> Result<Output, Failure> {
    Ok(Output {
        stdout,
        status: EXIT_OK,
    })
}

pub fn parse_model(text: &str) -> Result<StepSet, Failure> {
    if let Some(m) = models::by_name(text.trim()) {
        return Ok(m);
    }
    StepSet::parse(text).map_err(|e| Failure::usage(format!("invalid step set: {e}")))
}

fn kind_of(k: Kind) -> SeriesKind {
    match k {
        Kind::Walks => SeriesKind::Walks,
        Kind::Excursions => SeriesKind::Excursions,
    }
}

fn read_file(path: &std::path::Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn json_error(path: &std::path::Path, e: serde_json::Error) -> Failure {
    Failure::usage(format!("{}: {e}", path.display()))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    let execution = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let dp = DpOptions::default().with_execution(execution);
    match &cli.command {
        Command::Asymptotics {
            model,
            terms,
            kind,
            format,
            emit_rational,
            digits,
        } => {
            let steps = parse_model(&model.steps)?;
            if *terms == 0 {
                return Err(Failure::usage("--terms must be at least 1"));
            }
            let kind = kind_of(*kind);
            let opts = ExpansionOptions {
                execution,
                degree: None,
            };
            let internal = |e: orthant_walks::AsymptoticsError| Failure {
                message: e.to_string(),
                status: EXIT_VERIFY,
            };
            let exp = asymptotics(&steps, kind, *terms, opts).map_err(internal)?;
            let rational = build_rational(&steps, kind).canonical_string();
            match format {
                Format::Json => {
                    let points = minimal_points(&steps).map_err(internal)?;
                    let (w, e) = match kind {
                        SeriesKind::Walks => (Some(&exp), None),
                        SeriesKind::Excursions => (None, Some(&exp)),
                    };
                    let mut v = json_report(&steps, &points, w, e, *digits);
                    if *emit_rational {
                        v["rational"] = Value::String(rational);
                    }
                    ok(pretty(&v))
                }
                Format::Text | Format::Csv => {
                    let mut s = format!("model {steps}, |S| = {}\n", steps.len());
                    s.push_str(&render_text(&exp, *digits));
                    if *emit_rational {
                        s.push_str(&rational);
                        s.push('\n');
                    }
                    ok(s)
                }
            }
        }
        Command::Count {
            model,
            n,
            excursions,
            format,
        } => {
            let steps = parse_model(&model.steps)?;
            let summary = count_totals(&steps, *n, dp)?;
            match format {
                Format::Json => {
                    let rows: Vec<Value> = (0..=*n)
                        .map(|i| {
                            let mut r = json!({"n": i, "s": summary.totals[i].to_string()});
                            if *excursions {
                                r["e"] = Value::String(summary.excursions[i].to_string());
                            }
                            r
                        })
                        .collect();
                    ok(pretty(&json!({"model": steps.to_spec_string(), "rows": rows})))
                }
                Format::Csv | Format::Text => {
                    let mut s = String::from(if *excursions { "n,s_n,e_n\n" } else { "n,s_n\n" });
                    for i in 0..=*n {
                        write!(s, "{i},{}", summary.totals[i]).unwrap();
                        if *excursions {
                            write!(s, ",{}", summary.excursions[i]).unwrap();
                        }
                        s.push('\n');
                    }
                    ok(s)
                }
            }
        }
        Command::Verify {
            model,
            n,
            inject_fault,
            format,
        } => {
            let steps = parse_model(&model.steps)?;
            verify(&steps, *n, *inject_fault, *format, dp)
        }
        Command::OdeCheck {
            model,
            ode,
            n,
            format,
        } => {
            let steps = parse_model(&model.steps)?;
            let spec: OdeSpec =
                serde_json::from_str(&read_file(ode)?).map_err(|e| json_error(ode, e))?;
            spec.validate().map_err(|e| Failure::usage(e.to_string()))?;
            let series = to_signed(&count_totals(&steps, *n, dp)?.totals);
            holonomic_outcome("ode", spec.check(&series), *format)
        }
        Command::RecurrenceCheck {
            model,
            rec,
            n,
            format,
        } => {
            let steps = parse_model(&model.steps)?;
            let spec: RecurrenceSpec =
                serde_json::from_str(&read_file(rec)?).map_err(|e| json_error(rec, e))?;
            spec.validate().map_err(|e| Failure::usage(e.to_string()))?;
            let series = to_signed(&count_totals(&steps, *n, dp)?.totals);
            holonomic_outcome("recurrence", spec.check(&series), *format)
        }
    }
}

fn holonomic_outcome(
    what: &str,
    result: Result<usize, HolonomicError>,
    format: Format,
) -> Result<Output, Failure> {
    let (passed, detail) = match &result {
        Ok(last) => (true, format!("{what} holds through {last}")),
        Err(HolonomicError::InsufficientOrder { .. }) | Err(HolonomicError::Invalid(_)) => {
            return Err(Failure::usage(result.unwrap_err().to_string()))
        }
        Err(e) => (false, e.to_string()),
    };
    let stdout = match format {
        Format::Json => {
            let mut v = json!({"check": what, "passed": passed, "detail": detail});
            match &result {
                Ok(last) => v["checked_through"] = json!(last),
                Err(HolonomicError::NonzeroResidual { order, residual }) => {
                    v["order"] = json!(order);
                    v["residual"] = json!(residual.to_string());
                }
                Err(HolonomicError::RecurrenceFails { n, residual }) => {
                    v["n"] = json!(n);
                    v["residual"] = json!(residual.to_string());
                }
                _ => {}
            }
            pretty(&v)
        }
        _ => format!("{} {detail}\n", if passed { "PASS" } else { "FAIL" }),
    };
    Ok(Output {
        stdout,
        status: if passed { EXIT_OK } else { EXIT_VERIFY },
    })
}

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn verify(
    steps: &StepSet,
    order: usize,
    inject_fault: bool,
    format: Format,
    dp: DpOptions,
) -> Result<Output, Failure> {
    let table = count_walks(steps, order, dp)?;
    let mut totals: Vec<BigUint> = table.totals().to_vec();
    let mut excursions = table.excursions();
    let mut series: Vec<_> = (0..=order)
        .map(|n| table.endpoint_series(n).expect("within table"))
        .collect();
    if inject_fault {
        let n = order.min(2);
        totals[n] += 1u32;
        excursions[n] += 1u32;
        let d = steps.dim();
        let bump = orthant_walks::algebra::LaurentPoly::monomial(
            orthant_walks::algebra::ExponentVector::zero(d),
            orthant_walks::algebra::rat(1, 1),
        );
        series[n] = &series[n] + &bump;
    }
    let mut checks = Vec::new();
    for kind in [SeriesKind::Walks, SeriesKind::Excursions] {
        let diag = diagonal_coeffs(&build_rational(steps, kind), order, dp.execution);
        let counts = if kind == SeriesKind::Walks {
            &totals
        } else {
            &excursions
        };
        let first_bad = diag.iter().zip(counts).position(|(q, c)| {
            *q != orthant_walks::algebra::Rational::from_integer(c.clone().into())
        });
        checks.push(Check {
            name: if kind == SeriesKind::Walks {
                "enumeration equals walk diagonal"
            } else {
                "enumeration equals excursion diagonal"
            },
            passed: first_bad.is_none(),
            detail: match first_bad {
                None => format!("n = 0..{order}"),
                Some(n) => format!("differs at n = {n}: diagonal {}, count {}", diag[n], counts[n]),
            },
        });
    }
    let orbit = verify_orbit_sum_identity_series(steps, &series);
    checks.push(Check {
        name: "orbit-sum identity",
        passed: orbit.is_ok(),
        detail: match orbit {
            Ok(()) => format!("through order {order}"),
            Err(d) => d.to_string(),
        },
    });
    let pos = verify_pospart_to_diagonal(steps, order);
    checks.push(Check {
        name: "positive part equals transformed diagonal",
        passed: pos.is_ok(),
        detail: match pos {
            Ok(()) => format!("through order {order}"),
            Err(d) => d.to_string(),
        },
    });
    let smooth = build_rational(steps, SeriesKind::Walks).smoothness_identity_holds();
    checks.push(Check {
        name: "smoothness identity t*H_t = H - 1",
        passed: smooth,
        detail: String::new(),
    });
    let all = checks.iter().all(|c| c.passed);
    let stdout = match format {
        Format::Json => {
            let list: Vec<Value> = checks
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect();
            pretty(&json!({
                "model": steps.to_spec_string(),
                "order": order,
                "fault_injected": inject_fault,
                "checks": list,
                "passed": all,
            }))
        }
        _ => {
            let mut s = String::new();
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    writeln!(s, "{tag} {}", c.name).unwrap();
                } else {
                    writeln!(s, "{tag} {}: {}", c.name, c.detail).unwrap();
                }
            }
            writeln!(s, "{}", if all { "all checks passed" } else { "verification failed" }).unwrap();
            s
        }
    };
    Ok(Output {
        stdout,
        status: if all { EXIT_OK } else { EXIT_VERIFY },
    })
}
