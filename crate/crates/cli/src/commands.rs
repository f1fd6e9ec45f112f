use std::fmt::Write;

use serde_json::{json, Value};
use unibranch::blowup::{resolve_unibranch, ResolutionChain};
use unibranch::euclid::{
    equivalent, euclidean_sequence, key_identity, predicted_types, ContactType,
};
use unibranch::hypertangency::{analyze_pair, mirror_certificate};
use unibranch::invariants::{codim_bound, delta_bound, invariant_report, summation_identities};
use unibranch::localgeom::{contact_type, is_unibranch, multiplicity, tangent_line};
use unibranch::tropic::{canonical_code, dual_graph, tropical_curve, Exportable, Format};
use unibranch::{Error, Germ, Poly, Rat, Result};

use crate::args::{Cli, Command};
use crate::sweep::sweep;

pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn no_dot(format: Format, verb: &str) -> Result<()> {
    if format == Format::Dot {
        return Err(Error::InvalidFormat(format!(
            "'{verb}' has no dot output; use json or text"
        )));
    }
    Ok(())
}

fn two<'a, T>(items: &'a [T], what: &str) -> Result<(&'a T, &'a T)> {
    match items {
        [a, b] => Ok((a, b)),
        _ => Err(Error::InvalidFormat(format!(
            "expected exactly two {what}, got {}",
            items.len()
        ))),
    }
}

/// `y^m - x^n`, of projective degree `n`.
fn model_germ(t: ContactType) -> Result<Germ> {
    let m = u32::try_from(t.m()).map_err(|_| Error::InvalidGerm(format!("{t} is too large")))?;
    let n = u32::try_from(t.n()).map_err(|_| Error::InvalidGerm(format!("{t} is too large")))?;
    let one = Rat::from_integer(1.into());
    Germ::new(&Poly::term(one.clone(), 0, m) - &Poly::term(one, n, 0), n)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let format: Format = cli.format.parse()?;
    match &cli.command {
        Command::Analyze(a) => {
            no_dot(format, "analyze")?;
            analyze(&Germ::parse(&a.curve)?, format)
        }
        Command::Resolve(a) => {
            no_dot(format, "resolve")?;
            let germ = match (&a.curve, a.pair) {
                (Some(c), _) => Germ::parse(c)?,
                (None, Some(t)) => model_germ(t)?,
                (None, None) => unreachable!("clap requires one of --curve, --pair"),
            };
            Ok(Outcome::ok(render_chain(
                &resolve_unibranch(&germ)?,
                &germ,
                format,
            )))
        }
        Command::Tropical(a) => {
            let s = euclidean_sequence(a.pair)?;
            let t = tropical_curve(&s)?;
            let text = match format {
                Format::Text => format!(
                    "contact tropical curve of {}\n{}code {}\n",
                    a.pair,
                    t.export(Format::Text),
                    canonical_code(&t, false)
                ),
                _ => t.export(format),
            };
            Ok(Outcome::ok(ensure_newline(text)))
        }
        Command::Dualgraph(a) => {
            let g = dual_graph(&euclidean_sequence(a.pair)?)?;
            Ok(Outcome::ok(ensure_newline(g.export(format))))
        }
        Command::Equiv(a) => {
            no_dot(format, "equiv")?;
            let (t, t2) = two(&a.pair, "--pair values")?;
            let (t, t2) = (*t, *t2);
            let eq = equivalent(t, t2)?;
            let (s, s2) = (euclidean_sequence(t)?, euclidean_sequence(t2)?);
            Ok(Outcome::ok(match format {
                Format::Json => pretty(&json!({
                    "pair": t, "pair2": t2, "equivalent": eq, "k": s.ks(), "k2": s2.ks(),
                })),
                _ => format!(
                    "{t} and {t2} are {}\n",
                    if eq { "equivalent" } else { "not equivalent" }
                ),
            }))
        }
        Command::Delta(a) => {
            no_dot(format, "delta")?;
            let b = delta_bound(a.pair)?;
            summation_identities(&euclidean_sequence(a.pair)?)?;
            Ok(Outcome::ok(match format {
                Format::Json => pretty(&json!({
                    "m": a.pair.m(), "n": a.pair.n(), "c": a.pair.gcd(),
                    "delta_bound": b.value, "delta_exact": b.exact,
                })),
                _ => format!(
                    "delta {} {} for {}\n",
                    if b.exact { "=" } else { "<=" },
                    b.value,
                    a.pair
                ),
            }))
        }
        Command::Codim(a) => {
            no_dot(format, "codim")?;
            let b = codim_bound(a.pair, a.degree)?;
            Ok(Outcome::ok(match format {
                Format::Json => pretty(
                    &serde_json::to_value(invariant_report(a.pair, a.degree)?)
                        .expect("report serializes"),
                ),
                _ => format!(
                    "codimension {} {} for {} on degree {} curves\n",
                    if b.exact { "=" } else { "<=" },
                    b.value,
                    a.pair,
                    a.degree
                ),
            }))
        }
        Command::Mirror(a) => {
            no_dot(format, "mirror")?;
            let (b, c) = two(&a.curve, "--curve values")?;
            let (b, c) = (Germ::parse(b)?, Germ::parse(c)?);
            let report = analyze_pair(&b, &c)?;
            let cert = mirror_certificate(&report)?;
            Ok(Outcome::ok(match format {
                Format::Json => pretty(&json!({ "report": report, "certificate": cert })),
                _ => {
                    let mut out = String::new();
                    let _ = writeln!(out, "types {} and {}", report.type_b, report.type_c);
                    let _ = writeln!(
                        out,
                        "intersection at origin {} of {} (Bézout)",
                        report.i_q, report.bezout_total
                    );
                    let _ = writeln!(out, "hypertangent: {}", yes_no(report.hypertangent));
                    let _ = writeln!(out, "mirror holds: {}", yes_no(report.mirror_holds));
                    let _ = writeln!(
                        out,
                        "tropical curves isomorphic: {}",
                        yes_no(report.tropical_iso)
                    );
                    if let (Some(bound), Some(ok)) = (report.inverse_bound, report.inverse_bound_ok)
                    {
                        let _ = writeln!(
                            out,
                            "tangent bound {bound}: {}",
                            if ok { "satisfied" } else { "violated" }
                        );
                    }
                    let _ = writeln!(out, "{}", cert.summary);
                    out
                }
            }))
        }
        Command::Identities(a) => {
            no_dot(format, "identities")?;
            identities(&a.pair, format)
        }
        Command::Sweep(a) => {
            no_dot(format, "sweep")?;
            let result = sweep(a.max_n)?;
            let text = match format {
                Format::Json => pretty(&result.to_json()),
                _ => result.to_text(),
            };
            Ok(Outcome {
                text,
                code: if result.passed() { 0 } else { 2 },
            })
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn analyze(germ: &Germ, format: Format) -> Result<Outcome> {
    let mult = multiplicity(germ)?;
    let unibranch = is_unibranch(germ)?;
    let mut v = json!({
        "curve": germ.poly().to_string(),
        "projective_degree": germ.projective_degree(),
        "multiplicity": mult,
        "unibranch": unibranch,
    });
    if unibranch {
        let t = contact_type(germ)?;
        let s = euclidean_sequence(t)?;
        v["tangent_line"] = json!(tangent_line(germ)?.to_string());
        v["contact_type"] = json!(t);
        v["euclidean_sequence"] = json!(s);
        v["predicted_types"] = json!(predicted_types(&s));
        let delta = delta_bound(t)?;
        v["delta_bound"] = json!(delta.value);
        v["delta_exact"] = json!(delta.exact);
        let d = u64::from(germ.projective_degree());
        v["codim_bound"] = match codim_bound(t, d) {
            Ok(b) => json!(b.value),
            Err(Error::DegreeTooSmall { .. }) => Value::Null,
            Err(e) => return Err(e),
        };
    }
    Ok(Outcome::ok(match format {
        Format::Json => pretty(&v),
        _ => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "curve {} of degree {}",
                v["curve"].as_str().unwrap_or(""),
                germ.projective_degree()
            );
            let _ = writeln!(out, "multiplicity {mult}");
            if !unibranch {
                let _ = writeln!(out, "not unibranch at the origin");
            } else {
                let _ = writeln!(
                    out,
                    "tangent line {}",
                    v["tangent_line"].as_str().unwrap_or("")
                );
                let t = contact_type(germ)?;
                let _ = writeln!(out, "contact type {t}");
                let _ = writeln!(out, "euclidean sequence {}", euclidean_sequence(t)?);
                let delta = delta_bound(t)?;
                let _ = writeln!(
                    out,
                    "delta {} {}",
                    if delta.exact { "=" } else { "<=" },
                    delta.value
                );
                if let Some(c) = v["codim_bound"].as_u64() {
                    let _ = writeln!(out, "codimension bound {c}");
                }
            }
            out
        }
    }))
}

fn render_chain(chain: &ResolutionChain<Rat>, germ: &Germ, format: Format) -> String {
    match format {
        Format::Json => pretty(&chain.to_json()),
        _ => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "resolution of {} at the origin, type {}",
                germ.poly(),
                chain.sequence.contact_type()
            );
            for s in &chain.steps {
                let _ = write!(
                    out,
                    "step {}: ({},{})",
                    s.index, s.observed_mult, s.observed_contact
                );
                match &s.transform {
                    Some(t) => {
                        let _ = writeln!(
                            out,
                            " -> blow up, chart {} shift {}",
                            t.chart, t.translation
                        );
                    }
                    None => {
                        let _ = writeln!(out, " terminal");
                    }
                }
            }
            let term = &chain.terminal;
            let _ = writeln!(
                out,
                "terminal point of multiplicity {}{}",
                term.mult,
                if term.partial {
                    " (partial: c > 1)"
                } else {
                    ", smooth and transverse"
                }
            );
            let _ = writeln!(out, "delta contribution {}", chain.delta_contribution);
            out
        }
    }
}

fn identities(pairs: &[ContactType], format: Format) -> Result<Outcome> {
    let (first, second) = match pairs {
        [t] => (*t, None),
        [t, t2] => (*t, Some(*t2)),
        _ => {
            return Err(Error::InvalidFormat(
                "expected one or two --pair values".into(),
            ))
        }
    };
    let s = euclidean_sequence(first)?;
    summation_identities(&s)?;
    let mut key = Vec::new();
    if let Some(t2) = second {
        summation_identities(&euclidean_sequence(t2)?)?;
        let s2 = euclidean_sequence(t2)?;
        for h in 1..=s.r().min(s2.r()) {
            if h > 1 && s.k(h - 1) != s2.k(h - 1) {
                break;
            }
            let (lhs, rhs) = key_identity(&s, &s2, h)?;
            key.push(json!({ "h": h, "lhs": lhs.to_string(), "rhs": rhs.to_string() }));
        }
    }
    Ok(Outcome::ok(match format {
        Format::Json => pretty(&json!({
            "pairs": pairs,
            "summation_identities": true,
            "key_identity": key,
        })),
        _ => {
            let mut out = String::new();
            for t in pairs {
                let _ = writeln!(out, "summation identities hold for {t}");
            }
            for k in &key {
                let _ = writeln!(
                    out,
                    "key identity h = {}: {} = {}",
                    k["h"],
                    k["lhs"].as_str().unwrap_or(""),
                    k["rhs"].as_str().unwrap_or("")
                );
            }
            out
        }
    }))
}
