//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always print.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use unibranch::blowup::resolve_unibranch;
use unibranch::euclid::{
    equivalent, euclidean_sequence, key_identity, predicted_types, ContactType, EuclideanSequence,
};
use unibranch::hypertangency::analyze_pair;
use unibranch::invariants::{
    codim_bound, codim_oracle_smooth, inverse_bound, resolution_sum, summation_identities,
};
use unibranch::localgeom::{
    contact_type, intersection_multiplicity, intersection_multiplicity_blowup, Contact,
};
use unibranch::polyalgebra::parse_poly;
use unibranch::tropic::{
    canonical_code, dual_graph, graph_isomorphic, is_isomorphic, tropical_curve,
};
use unibranch::{Germ, Poly};

const IDENTITY_MAX_N: u64 = 300;
const IDENTITY_TIME_LIMIT: Duration = Duration::from_secs(5);
const KEY_MAX_N: u64 = 80;
const KEY_TIME_LIMIT: Duration = Duration::from_secs(30);
const EQUIVALENCE_MAX_N: u64 = 120;
const RESOLUTION_MAX_N: u64 = 12;
const MIRROR_TIME_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_MIN_PAIRS: usize = 50;
const CODIM_ORACLE_MAX_D: u64 = 10;
const CODIM_MAX_N: u64 = 50;
const INVERSE_MIN_CASES: usize = 20;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ty(m: u64, n: u64) -> ContactType {
    ContactType::new(m, n).unwrap()
}

fn seq(m: u64, n: u64) -> EuclideanSequence {
    euclidean_sequence(ty(m, n)).unwrap()
}

fn grid(max_n: u64) -> Vec<ContactType> {
    (2..=max_n)
        .flat_map(|n| (1..n).map(move |m| ty(m, n)))
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn identities() -> Outcome {
    let start = Instant::now();
    let cells = grid(IDENTITY_MAX_N);
    for &t in &cells {
        let s = euclidean_sequence(t).map_err(|e| e.to_string())?;
        summation_identities(&s).map_err(|e| format!("{t}: {e}"))?;
    }
    let took = start.elapsed();
    ensure(took < IDENTITY_TIME_LIMIT, || format!("took {took:?}"))?;
    Ok(format!(
        "{} pairs with n <= {IDENTITY_MAX_N}, {took:.2?}",
        cells.len()
    ))
}

fn key_identities() -> Outcome {
    let start = Instant::now();
    let seqs: Vec<EuclideanSequence> = grid(KEY_MAX_N)
        .into_iter()
        .map(|t| euclidean_sequence(t).unwrap())
        .collect();
    let mut checked = 0u64;
    for s in &seqs {
        for s2 in &seqs {
            for h in 1..=s.r().min(s2.r()) {
                if h > 1 && s.k(h - 1) != s2.k(h - 1) {
                    break;
                }
                // key_identity itself rejects lhs != rhs and lhs >= n n'
                let (lhs, rhs) = key_identity(s, s2, h).map_err(|e| {
                    format!("({},{}) ({},{}) h={h}: {e}", s.m(), s.n(), s2.m(), s2.n())
                })?;
                let nn = u128::from(s.n()) * u128::from(s2.n());
                ensure(lhs == rhs && lhs < nn, || {
                    format!(
                        "({},{}) ({},{}) h={h}: {lhs} vs {rhs}",
                        s.m(),
                        s.n(),
                        s2.m(),
                        s2.n()
                    )
                })?;
                checked += 1;
            }
        }
    }
    let took = start.elapsed();
    ensure(took < KEY_TIME_LIMIT, || format!("took {took:?}"))?;
    Ok(format!(
        "{checked} (pair, pair, h) instances with n, n' <= {KEY_MAX_N}, {took:.2?}"
    ))
}

/// Interns values so the pairwise loop compares integers.
fn intern<K: Eq + std::hash::Hash>(keys: impl Iterator<Item = K>) -> Vec<usize> {
    let mut ids = HashMap::new();
    keys.map(|k| {
        let next = ids.len();
        *ids.entry(k).or_insert(next)
    })
    .collect()
}

fn equivalence_criterion() -> Outcome {
    let cells = grid(EQUIVALENCE_MAX_N);
    let seqs: Vec<EuclideanSequence> = cells
        .iter()
        .map(|&t| euclidean_sequence(t).unwrap())
        .collect();
    let codes = intern(
        seqs.iter()
            .map(|s| canonical_code(&tropical_curve(s).unwrap(), false)),
    );
    // equivalence by definition: same r and same quotients
    let classes = intern(seqs.iter().map(|s| s.ks().to_vec()));
    let mut pairs = 0u64;
    for (a, ta) in cells.iter().enumerate() {
        for (b, tb) in cells.iter().enumerate() {
            let eq = classes[a] == classes[b];
            let iso = codes[a] == codes[b];
            let frac = ta.m() * tb.n() == tb.m() * ta.n();
            ensure(eq == iso && eq == frac, || {
                format!("{ta} vs {tb}: equivalent {eq}, isomorphic {iso}, m n' = m' n {frac}")
            })?;
            pairs += 1;
        }
    }
    // the library's own test agrees with the definition on every class pair
    for (a, &ta) in cells.iter().enumerate().step_by(97) {
        for (b, &tb) in cells.iter().enumerate() {
            ensure(
                equivalent(ta, tb).unwrap() == (classes[a] == classes[b]),
                || format!("equivalent({ta}, {tb})"),
            )?;
        }
    }
    Ok(format!(
        "{pairs} ordered pairs with n, n' <= {EQUIVALENCE_MAX_N}, zero exceptions"
    ))
}

fn model(m: u64, n: u64) -> Germ {
    Germ::parse(&format!("y^{m} - x^{n}:{n}")).unwrap()
}

fn resolution_fidelity() -> Outcome {
    let mut count = 0;
    for t in grid(RESOLUTION_MAX_N).into_iter().filter(|t| t.gcd() == 1) {
        let (m, n) = (t.m(), t.n());
        let chain = resolve_unibranch(&model(m, n)).map_err(|e| format!("{t}: {e}"))?;
        let observed: Vec<(u64, u64)> = chain
            .steps
            .iter()
            .map(|s| (s.observed_mult, s.observed_contact))
            .collect();
        let predicted: Vec<(u64, u64)> = predicted_types(&seq(m, n))
            .iter()
            .map(|p| (p.mult, p.contact))
            .collect();
        ensure(observed == predicted, || {
            format!("{t}: observed {observed:?}, predicted {predicted:?}")
        })?;
        let term = &chain.terminal;
        ensure(
            term.mult == 1
                && term.transverse_to_exceptional
                && term.transverse_to_reference
                && !term.partial,
            || format!("{t}: terminal {term:?}"),
        )?;
        let delta = (n * m + 1 - n - m) / 2;
        ensure(chain.delta_contribution == delta, || {
            format!("{t}: δ {} != {delta}", chain.delta_contribution)
        })?;
        count += 1;
    }
    let chain = resolve_unibranch(&model(3, 5)).map_err(|e| e.to_string())?;
    let first: Vec<(u64, u64)> = chain
        .steps
        .iter()
        .take(3)
        .map(|s| (s.observed_mult, s.observed_contact))
        .collect();
    ensure(first == [(3, 5), (2, 3), (1, 2)], || {
        format!("(3,5) chain {first:?}")
    })?;
    Ok(format!(
        "{count} coprime pairs with n <= {RESOLUTION_MAX_N}; (3,5) -> (2,3) -> (1,2)"
    ))
}

fn graph_examples() -> Outcome {
    let g = |m, n| dual_graph(&seq(m, n)).unwrap();
    let gamma = |m, n| tropical_curve(&seq(m, n)).unwrap();
    ensure(graph_isomorphic(&g(5, 8), &g(3, 7)), || {
        "G(5,8) and G(3,7) not isomorphic".into()
    })?;
    ensure(!is_isomorphic(&gamma(5, 8), &gamma(3, 7)), || {
        "Γ(5,8) and Γ(3,7) isomorphic".into()
    })?;
    ensure(g(1, 4) == g(2, 8), || "G(1,4) != G(2,8)".into())?;
    ensure(is_isomorphic(&gamma(1, 4), &gamma(2, 8)), || {
        "Γ(1,4) and Γ(2,8) not isomorphic".into()
    })?;
    Ok("G(5,8) ≅ G(3,7), Γ(5,8) ≇ Γ(3,7), G(1,4) = G(2,8), Γ(1,4) ≅ Γ(2,8)".into())
}

fn mirror_example() -> Outcome {
    let start = Instant::now();
    let b = Germ::parse("y - x^2:2").unwrap();
    let c = Germ::parse("y - x^2 - y^3:3").unwrap();
    let r = analyze_pair(&b, &c).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(r.i_q == Contact::Finite(6) && r.bezout_total == 6, || {
        format!("i_q {} bezout {}", r.i_q, r.bezout_total)
    })?;
    ensure(r.hypertangent && r.mirror_holds, || format!("{r:?}"))?;
    ensure(r.type_b == ty(1, 2) && r.type_c == ty(1, 2), || {
        format!("types {} {}", r.type_b, r.type_c)
    })?;
    ensure(took < MIRROR_TIME_LIMIT, || format!("took {took:?}"))?;
    Ok(format!(
        "i_q = 6 = 2·3, hypertangent, mirror holds, types (1,2), {took:.2?}"
    ))
}

/// Germs whose infinitely near points over the origin are all rational.
const ORACLE_CORPUS: [&str; 16] = [
    "y - x^2",
    "y + x^2",
    "y - x^3",
    "x - y^2",
    "y - 2*x",
    "y^2 - x^3",
    "y^2 - 2*x^3",
    "y^2 - x^3 - x^4",
    "(y - x)^2 - x^3",
    "y^3 - x^5",
    "y^2 - x^5",
    "x*y",
    "y^2 - x^2 - x^3",
    "y^2 - x^4 - x^5",
    "(y^2 - x^3)^2 - x^7",
    "y*(y - x^2)",
];

fn oracle_agreement() -> Outcome {
    let polys: Vec<Poly> = ORACLE_CORPUS
        .iter()
        .map(|s| parse_poly(s).unwrap())
        .collect();
    let mut compared = 0;
    for (i, f) in polys.iter().enumerate() {
        for g in &polys[i + 1..] {
            let fast = intersection_multiplicity(
                &Germ::from_poly(f.clone()).unwrap(),
                &Germ::from_poly(g.clone()).unwrap(),
            )
            .map_err(|e| format!("{f} · {g}: {e}"))?;
            let Contact::Finite(fast) = fast else {
                continue;
            };
            let slow = intersection_multiplicity_blowup(f, g)
                .map_err(|e| format!("{f} · {g}: oracle {e}"))?;
            ensure(fast == slow, || {
                format!("{f} · {g}: resultant {fast}, blow-ups {slow}")
            })?;
            compared += 1;
        }
    }
    ensure(compared >= ORACLE_MIN_PAIRS, || {
        format!("only {compared} pairs")
    })?;
    Ok(format!("{compared} pairs agree exactly"))
}

fn codimension() -> Outcome {
    let mut ranks = 0;
    for d in 2..=CODIM_ORACLE_MAX_D {
        for n in 2..=d {
            let rank = codim_oracle_smooth(n, d).map_err(|e| e.to_string())?;
            ensure(rank == n, || format!("n={n} d={d}: rank {rank}"))?;
            let bound = codim_bound(ty(1, n), d).map_err(|e| e.to_string())?;
            ensure(bound.value == rank && bound.exact, || {
                format!("n={n} d={d}: bound {bound:?}")
            })?;
            ranks += 1;
        }
    }
    let mut cells = 0;
    for t in grid(CODIM_MAX_N).into_iter().filter(|t| t.gcd() == 1) {
        let (m, n) = (t.m(), t.n());
        let lhs = (n * m + m + n - 1) / 2;
        let rhs = n + (m - 1) + resolution_sum(&seq(m, n)) as u64;
        ensure(lhs == rhs, || format!("{t}: {lhs} != {rhs}"))?;
        let b = codim_bound(t, n).map_err(|e| e.to_string())?;
        ensure(b.value == lhs && b.exact, || format!("{t}: {b:?}"))?;
        cells += 1;
    }
    Ok(format!("{ranks} rank checks with d <= {CODIM_ORACLE_MAX_D}; {cells} coprime pairs with n <= {CODIM_MAX_N}"))
}

/// Unibranch germs of assorted types, all tangent to y = 0.
const TANGENT_CORPUS: [&str; 18] = [
    "y - x^2:2",
    "y - 2*x^2:2",
    "y - x^2 - x^3:3",
    "y - x^2 - y^3:3",
    "y + x^2 - x^4:4",
    "y - x^3:3",
    "y - x^3 - x^5:5",
    "(y - x^2)^2 - x^5:5",
    "(y - x^3)^2 - x^7:7",
    "y^2 - x^3:3",
    "y^2 - 2*x^3:3",
    "y^2 - x^3 - x^4:4",
    "y^2 - x^3 + x^2*y:3",
    "(y^2 - x^3)^2 - 4*x^5*y - x^7:7",
    "y^3 - x^5:5",
    "y^3 - x^5 - x^6:6",
    "y^3 - 3*x^5:5",
    "y^2 - x^5:5",
];

fn inverse() -> Outcome {
    let germs: Vec<(Germ, ContactType)> = TANGENT_CORPUS
        .iter()
        .map(|s| {
            let g = Germ::parse(s).unwrap();
            let t = contact_type(&g).unwrap();
            (g, t)
        })
        .collect();
    let mut cases = 0;
    for (i, (b, tb)) in germs.iter().enumerate() {
        for (c, tc) in &germs[i + 1..] {
            if !equivalent(*tb, *tc).unwrap() {
                continue;
            }
            let Contact::Finite(i_q) = intersection_multiplicity(b, c).unwrap() else {
                continue;
            };
            if i_q <= tb.m() * tc.m() {
                continue;
            }
            let bound = inverse_bound(*tb, *tc).unwrap();
            ensure(i_q >= bound, || {
                format!("{} · {}: i_q {i_q} < bound {bound}", b, c)
            })?;
            cases += 1;
        }
    }
    ensure(cases >= INVERSE_MIN_CASES, || {
        format!("only {cases} tangent equivalent pairs")
    })?;
    Ok(format!(
        "{cases} tangent pairs of equivalent type, i_q >= bound in every case"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("summation identities", identities),
        ("key identity", key_identities),
        (
            "equivalence ⟺ tropical isomorphism ⟺ equal fractions",
            equivalence_criterion,
        ),
        ("resolution fidelity", resolution_fidelity),
        ("dual graph and tropical curve examples", graph_examples),
        ("hypertangent conic and cubic", mirror_example),
        ("intersection multiplicity oracle", oracle_agreement),
        ("codimension", codimension),
        ("tangent intersection bound", inverse),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS — {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL — {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
