//! Acceptance suite. Every check prints one `[PASS]`/`[FAIL]` line and then
//! asserts, so `cargo test --test acceptance -- --nocapture` gives a
//! readable summary.
//!
//! The expected cohomological values come from `Oracle`, a row-by-row
//! transcription of the published cup-length table that shares no code with
//! the library's closed forms.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use grassmann_cup::grassmann::{
    brute_force_basis, catalog, closed_basis, formula_values, ht2_computed, ht3_computed,
    ideal_basis, m_n_computed, realizer_check, verify, IdentityId,
};
use grassmann_cup::groebner::{
    self, is_groebner, member, normal_form, standard_monomials, GroebnerBasis,
};
use grassmann_cup::gseq::GSequence;
use grassmann_cup::poly::{Monomial, Polynomial};

fn report(name: &str, ok: bool, elapsed: Duration, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!(
        "[{tag}] {name} ({:.2} s){}{detail}",
        elapsed.as_secs_f64(),
        if detail.is_empty() { "" } else { ": " }
    );
}

fn finish(name: &str, start: Instant, limit: Option<Duration>, failures: &[String]) {
    let elapsed = start.elapsed();
    let slow = limit.is_some_and(|l| elapsed > l);
    let mut detail = failures
        .iter()
        .take(5)
        .cloned()
        .collect::<Vec<_>>()
        .join("; ");
    if slow {
        detail = format!("took longer than {:?} {detail}", limit.unwrap());
    }
    let ok = failures.is_empty() && !slow;
    report(name, ok, elapsed, &detail);
    assert!(ok, "{name}: {detail}");
}

fn canonical_set(b: &GroebnerBasis) -> BTreeSet<String> {
    b.elements().iter().map(|p| p.to_string()).collect()
}

/// One row of the published cup-length table: `(cup, b, c, a_dim, ht2, ht3)`.
struct Oracle {
    cup: u64,
    b: u64,
    c: u64,
    a_dim: u64,
    ht2: u64,
    ht3: u64,
}

fn oracle(n: u64) -> Oracle {
    let mut t = 3;
    while (1u64 << (t + 1)) - 1 <= n {
        t += 1;
    }
    let p = |k: u32| 1u64 << k;
    let top_a = p(t + 1) - 4;
    if n <= p(t) + p(t - 1) - 2 {
        return Oracle {
            cup: p(t) - 3,
            b: p(t) - 4,
            c: 0,
            a_dim: 3 * n - p(t + 1) - 1,
            ht2: p(t) - 4,
            ht3: p(t - 1) - 2,
        };
    }
    if n == p(t) + p(t - 1) - 1 {
        return Oracle {
            cup: p(t) - 2,
            b: p(t - 1) - 1,
            c: p(t - 1) - 2,
            a_dim: top_a,
            ht2: p(t) - 4,
            ht3: p(t - 1) - 2,
        };
    }
    if n == p(t) + p(t - 1) {
        return Oracle {
            cup: p(t) - 1,
            b: p(t - 1) - 1,
            c: p(t - 1) - 1,
            a_dim: top_a,
            ht2: p(t) - 4,
            ht3: p(t - 1) - 1,
        };
    }
    let s = (1..=t - 2)
        .find(|&s| p(t + 1) - p(s + 1) < n && n <= p(t + 1) - p(s))
        .expect("n lies in an upper block");
    let k = n - (p(t + 1) - p(s + 1) + 1);
    Oracle {
        cup: p(t + 1) - 3 * p(s) + k,
        b: p(t + 1) - 3 * p(s) - 1,
        c: k,
        a_dim: top_a,
        ht2: p(t + 1) - 3 * p(s) - 1,
        ht3: p(t) - p(s + 1) + k,
    }
}

/// `M_n` by brute force: normal form of every monomial up to the top
/// standard-monomial degree (nothing above it survives).
fn m_n_brute(basis: &GroebnerBasis) -> u64 {
    let top = standard_monomials(basis)
        .expect("finite staircase")
        .iter()
        .map(|m| m.degree())
        .max()
        .expect("nonempty staircase");
    let mut best = 0;
    for b in 0..=top / 2 {
        for c in 0..=(top - 2 * b) / 3 {
            if !normal_form(&Polynomial::term(b, c), basis).is_zero() {
                best = best.max(b + c);
            }
        }
    }
    best
}

const G_TABLE: [&str; 26] = [
    "1",
    "0",
    "w2",
    "w3",
    "w2^2",
    "0",
    "w2^3 + w3^2",
    "w2^2*w3",
    "w2^4 + w2*w3^2",
    "w3^3",
    "w2^5",
    "w2^4*w3",
    "w2^6 + w3^4",
    "0",
    "w2^7 + w2^4*w3^2 + w2*w3^4",
    "w2^6*w3 + w3^5",
    "w2^8 + w2^5*w3^2 + w2^2*w3^4",
    "w2^4*w3^3",
    "w2^9 + w2^3*w3^4 + w3^6",
    "w2^8*w3 + w2^2*w3^5",
    "w2^10 + w2*w3^6",
    "w3^7",
    "w2^11 + w2^8*w3^2",
    "w2^10*w3",
    "w2^12 + w2^9*w3^2 + w3^8",
    "w2^8*w3^3",
];

#[test]
fn g_sequence_golden_values() {
    let start = Instant::now();
    let mut seq = GSequence::new();
    let failures: Vec<String> = (0..=25u64)
        .filter_map(|r| {
            let got = seq.g(r).to_string();
            (got != G_TABLE[r as usize])
                .then(|| format!("g_{r} = {got}, expected {}", G_TABLE[r as usize]))
        })
        .collect();
    finish(
        "g_r golden values for 0 <= r <= 25",
        start,
        Some(Duration::from_secs(1)),
        &failures,
    );
}

#[test]
fn closed_basis_matches_buchberger() {
    let start = Instant::now();
    let mut seq = GSequence::new();
    let mut failures = Vec::new();
    for n in 7..=128u64 {
        let closed = closed_basis(n, &mut seq)
            .expect("closed basis")
            .to_groebner_basis();
        if !is_groebner(&closed) {
            failures.push(format!("n = {n}: closed basis is not a Gröbner basis"));
            continue;
        }
        let gens = [seq.g(n - 2), seq.g(n - 1), seq.g(n)];
        let brute = groebner::reduce_basis(&groebner::buchberger(&gens).expect("buchberger"));
        let reduced = groebner::reduce_basis(&closed);
        if canonical_set(&reduced) != canonical_set(&brute) {
            failures.push(format!("n = {n}: reduced bases differ"));
        }
    }
    finish(
        "closed basis is Gröbner and matches Buchberger, 7 <= n <= 128",
        start,
        Some(Duration::from_secs(300)),
        &failures,
    );
}

#[test]
fn w2_height() {
    let start = Instant::now();
    let mut seq = GSequence::new();
    let mut failures = Vec::new();
    for n in 7..=128u64 {
        let basis = ideal_basis(n, &mut seq).unwrap();
        let h = ht2_computed(&basis).unwrap();
        let want = oracle(n).ht2;
        let formula = formula_values(n).unwrap().ht2;
        let below = !member(&Polynomial::term(want, 0), &basis).unwrap();
        let above = member(&Polynomial::term(want + 1, 0), &basis).unwrap();
        if h != want || formula != want || !below || !above {
            failures.push(format!(
                "n = {n}: computed {h}, formula {formula}, table {want}"
            ));
        }
    }
    let samples = [(7..=12, 4), (13..=14, 9), (15..=24, 12)];
    for (ns, v) in samples {
        for n in ns {
            if oracle(n).ht2 != v {
                failures.push(format!(
                    "n = {n}: table oracle disagrees with sample value {v}"
                ));
            }
        }
    }
    finish(
        "ht(w2) computed equals closed form, 7 <= n <= 128",
        start,
        None,
        &failures,
    );
}

#[test]
fn w3_height() {
    let start = Instant::now();
    let mut seq = GSequence::new();
    let mut failures = Vec::new();
    for n in 7..=128u64 {
        let t = 63 - (n + 1).leading_zeros();
        let want = ((1u64 << (t - 1)) - 2).max((n as i64 - (1i64 << t) - 1).max(0) as u64);
        let basis = ideal_basis(n, &mut seq).unwrap();
        let h = ht3_computed(&basis).unwrap();
        if h != want || oracle(n).ht3 != want || formula_values(n).unwrap().ht3 != want {
            failures.push(format!("n = {n}: computed {h}, expected {want}"));
        }
    }
    finish(
        "ht(w3) = max(2^(t-1)-2, n-2^t-1), 7 <= n <= 128",
        start,
        None,
        &failures,
    );
}

#[test]
fn cup_length() {
    let start = Instant::now();
    let mut seq = GSequence::new();
    let mut failures = Vec::new();
    for n in 7..=128u64 {
        let basis = ideal_basis(n, &mut seq).unwrap();
        let (m, w) = m_n_computed(&basis).unwrap();
        let cup = formula_values(n).unwrap().cup;
        let brute = m_n_brute(&basis);
        if m + 1 != cup || cup != oracle(n).cup || brute != m {
            failures.push(format!(
                "n = {n}: M_n + 1 = {}, formula {cup}, brute force {brute}",
                m + 1
            ));
        }
        if w.degree() >= 3 * n - 9
            || w.b + w.c != m
            || member(&Polynomial::monomial(w), &basis).unwrap()
        {
            failures.push(format!("n = {n}: bad witness {w}"));
        }
    }
    finish(
        "cup-length = M_n + 1 with valid witnesses, 7 <= n <= 128",
        start,
        None,
        &failures,
    );
}

#[test]
fn realizers() {
    let start = Instant::now();
    let mut seq = GSequence::new();
    let mut failures = Vec::new();
    for n in 7..=128u64 {
        let basis = ideal_basis(n, &mut seq).unwrap();
        let (ok, spec) = realizer_check(n, &basis).unwrap();
        let o = oracle(n);
        let nonmember = !member(&Polynomial::term(o.b, o.c), &basis).unwrap();
        let sum = o.b + o.c + 1 == o.cup;
        let degree = 2 * o.b + 3 * o.c + o.a_dim == 3 * n - 9;
        let same = (spec.b, spec.c, spec.a_dim) == (o.b, o.c, o.a_dim);
        if !(ok && nonmember && sum && degree && same) {
            failures.push(format!("n = {n}: realizer {spec}"));
        }
    }
    finish(
        "table realizers check out, 7 <= n <= 128",
        start,
        None,
        &failures,
    );
}

#[test]
fn identity_catalog() {
    let start = Instant::now();
    let mut seq = GSequence::new();
    let mut failures = Vec::new();
    let groups = catalog();
    let count = |id: IdentityId| {
        groups
            .iter()
            .find(|(g, _)| *g == id)
            .map_or(0, |(_, v)| v.len())
    };
    let expected_counts = [
        (IdentityId::W3Square, 301),
        (IdentityId::DoublingShift, 201 * 6),
        (IdentityId::ClosedForm, 4 * 8 + 7),
        (IdentityId::SquareOfG, 9),
        (IdentityId::LeadingMonomialG, 301),
        (IdentityId::BasisLeadingMonomials, 122),
        (IdentityId::W2PowerExpansion, 6),
        (IdentityId::SquaredGExpansion, 36),
        (IdentityId::LowerCongruence, 5),
        (IdentityId::MiddleCongruence, 5),
        (IdentityId::SquaredGCongruence, 21),
        (IdentityId::UpperCongruence, 15),
    ];
    for (id, want) in expected_counts {
        if count(id) != want {
            failures.push(format!("{id}: {} instances, expected {want}", count(id)));
        }
    }
    for id in [
        IdentityId::BasisElementFromG,
        IdentityId::BasisElementFromShiftedG,
        IdentityId::SPolynomialRecurrence,
        IdentityId::SquareIntoW3Ideal,
    ] {
        if count(id) == 0 {
            failures.push(format!("{id}: no instances"));
        }
    }
    let mut total = 0;
    for (id, items) in &groups {
        for ident in items {
            total += 1;
            match ident.check(&mut seq) {
                Ok(true) => {}
                Ok(false) => failures.push(format!("{id} {:?} is false", ident.params())),
                Err(e) => failures.push(format!("{id} {:?}: {e}", ident.params())),
            }
        }
    }
    finish(
        &format!("identity catalog, {total} instances"),
        start,
        Some(Duration::from_secs(300)),
        &failures,
    );
}

#[test]
fn ideals_coincide_at_powers_of_two() {
    let start = Instant::now();
    let mut seq = GSequence::new();
    let mut failures = Vec::new();
    for t in 3..=7u32 {
        let lo = brute_force_basis((1 << t) - 1, &mut seq).unwrap();
        let hi = brute_force_basis(1 << t, &mut seq).unwrap();
        if canonical_set(&lo) != canonical_set(&hi) {
            failures.push(format!("t = {t}"));
        }
    }
    finish(
        "reduced bases of I_(2^t-1) and I_(2^t) coincide, 3 <= t <= 7",
        start,
        None,
        &failures,
    );
}

#[test]
fn six_dimensional_case() {
    let start = Instant::now();
    let mut seq = GSequence::new();
    let mut failures = Vec::new();
    let basis = brute_force_basis(6, &mut seq).unwrap();
    let set = canonical_set(&basis);
    let want: BTreeSet<String> = ["w2^2", "w3^2"].iter().map(|s| s.to_string()).collect();
    if set != want {
        failures.push(format!("basis {set:?}"));
    }
    let (m, _) = m_n_computed(&basis).unwrap();
    let h2 = ht2_computed(&basis).unwrap();
    let h3 = ht3_computed(&basis).unwrap();
    if (m, m + 1, h2, h3) != (2, 3, 1, 1) {
        failures.push(format!("M_6 = {m}, heights {h2}, {h3}"));
    }
    let rep = verify(6, &mut seq).unwrap();
    if !rep.passed() {
        failures.push(format!("verify: {:?}", rep.errors));
    }
    finish(
        "n = 6: basis {w2^2, w3^2}, M_6 = 2, cup 3, heights 1",
        start,
        None,
        &failures,
    );
}

#[test]
fn m_n_monotone() {
    let start = Instant::now();
    let mut seq = GSequence::new();
    let mut failures = Vec::new();
    let values: Vec<u64> = (6..=128u64)
        .map(|n| m_n_brute(&brute_force_basis(n, &mut seq).unwrap()))
        .collect();
    for (k, w) in values.windows(2).enumerate() {
        if w[0] > w[1] {
            failures.push(format!("M_{} = {} > M_{} = {}", k + 6, w[0], k + 7, w[1]));
        }
    }
    finish("M_n <= M_(n+1), 6 <= n <= 127", start, None, &failures);
}

#[test]
fn verify_output_is_deterministic() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_grassmann-cup");
    let run = || {
        Command::new(bin)
            .args(["verify", "--from", "7", "--to", "64", "--format", "json"])
            .output()
            .expect("run binary")
    };
    let (a, b) = (run(), run());
    let mut failures = Vec::new();
    if a.stdout != b.stdout {
        failures.push("outputs differ".to_string());
    }
    if a.status.code() != Some(0) {
        failures.push(format!("exit status {:?}", a.status.code()));
    }
    let text = String::from_utf8(a.stdout).unwrap();
    let records: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    if records.len() != 58 {
        failures.push(format!("{} records", records.len()));
    }
    for (r, n) in records.iter().zip(7u64..) {
        let flags = r["flags"].as_object().unwrap();
        if r["n"] != n || !flags.values().all(|v| v == true) {
            failures.push(format!("record for n = {n} not all-pass"));
        }
    }
    finish(
        "verify --from 7 --to 64 is byte-deterministic and all-pass",
        start,
        None,
        &failures,
    );
}

#[test]
fn staircase_of_seven() {
    let start = Instant::now();
    let mut seq = GSequence::new();
    let basis = ideal_basis(7, &mut seq).unwrap();
    let sm = standard_monomials(&basis).unwrap();
    let mut failures = Vec::new();
    // dim Z2[w2,w3]/I_7 = (6*7)/(2*3) from the Hilbert series of a complete intersection
    if sm.len() != 7 || sm.iter().map(|m| m.degree()).max() != Some(8) {
        failures.push(format!("staircase {sm:?}"));
    }
    if sm.contains(&Monomial::new(3, 0)) {
        failures.push("w2^3 is standard".into());
    }
    finish(
        "staircase of I_7 has 7 monomials up to degree 8",
        start,
        None,
        &failures,
    );
}
