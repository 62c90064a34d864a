//! Replays the tabulated values and structural properties, reporting each
//! as a tabulated/computed pair.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bordism::{
    bp, bp_order, exactness_check, homotopy_sphere_bordism, j_image, l_group, stable_stem,
    stem_mod_j, stem_quotient_check, theta, theta_mod_bp, FiniteAbelianGroup,
};
use crate::eulercalc::{chi_surgery, evaluate_chi};
use crate::exactnum::bernoulli;
use crate::forms::{e8_form, e8_form_as_printed, IntegerSymmetricForm, Z2QuadraticForm};
use crate::genus::{format_fraction_layout, l_polynomial, l_series};
use crate::jets::recurrence_holds;
use crate::milnor::{
    cp_pontrjagin_numbers, hirzebruch_signature, milnor_detect, pontrjagin_cp, signature_breakdown,
    sphere_bundle_homology, Verdict,
};
use crate::ricci::study::{
    conformal_drift, conformal_oracle_error, flat_drift, observed_orders, substituted_residual,
};
use crate::symmpoly::{
    elementary_symmetric, monomial_symmetric_oracle, partitions_of, plain_variables, s_polynomial,
    Partition,
};
use crate::{Error, Rational};

/// Which checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Tables,
    Properties,
    All,
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "tables" => Ok(Scope::Tables),
            "properties" => Ok(Scope::Properties),
            "all" => Ok(Scope::All),
            other => Err(Error::InvalidArguments(format!(
                "unknown verify scope '{other}' (expected tables, properties or all)"
            ))),
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Tables => "tables",
            Scope::Properties => "properties",
            Scope::All => "all",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Table,
    Property,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub item: String,
    pub kind: Kind,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub key: String,
    pub title: String,
    pub checks: Vec<Check>,
}

impl Section {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scope: Scope,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(Section::passed)
    }

    pub fn total(&self) -> usize {
        self.sections.iter().map(|s| s.checks.len()).sum()
    }

    pub fn section(&self, key: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.key == key)
    }

    /// (section key, check) for every failed check.
    pub fn mismatches(&self) -> Vec<(&str, &Check)> {
        self.sections
            .iter()
            .flat_map(|s| {
                s.checks
                    .iter()
                    .filter(|c| !c.ok)
                    .map(move |c| (s.key.as_str(), c))
            })
            .collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pad =
            |s: &str, w: usize| format!("{s}{}", " ".repeat(w.saturating_sub(s.chars().count())));
        writeln!(f, "verify {}", self.scope)?;
        for s in &self.sections {
            let width = |pick: fn(&Check) -> &str, head: &str| {
                s.checks
                    .iter()
                    .map(|c| pick(c).chars().count())
                    .chain([head.len()])
                    .max()
                    .unwrap_or(0)
            };
            let wi = width(|c| &c.item, "item");
            let we = width(|c| &c.expected, "tabulated");
            let wc = width(|c| &c.computed, "computed");
            let status = if s.passed() { "matched" } else { "MISMATCH" };
            writeln!(f)?;
            writeln!(f, "[{}] {} ({status})", s.key, s.title)?;
            writeln!(
                f,
                "  {}  {}  {}  status",
                pad("item", wi),
                pad("tabulated", we),
                pad("computed", wc)
            )?;
            for c in &s.checks {
                writeln!(
                    f,
                    "  {}  {}  {}  {}",
                    pad(&c.item, wi),
                    pad(&c.expected, we),
                    pad(&c.computed, wc),
                    if c.ok { "ok" } else { "MISMATCH" }
                )?;
            }
        }
        writeln!(f)?;
        let bad = self.mismatches();
        for (key, c) in &bad {
            writeln!(
                f,
                "mismatch [{key}] {}: tabulated {}, computed {}",
                c.item, c.expected, c.computed
            )?;
        }
        write!(f, "{} checks, {} mismatches", self.total(), bad.len())
    }
}

struct Builder {
    scope: Scope,
    sections: Vec<Section>,
}

impl Builder {
    fn section(&mut self, key: &str, title: &str) {
        self.sections.push(Section {
            key: key.into(),
            title: title.into(),
            checks: Vec::new(),
        });
    }

    fn wants(&self, kind: Kind) -> bool {
        matches!(
            (self.scope, kind),
            (Scope::All, _) | (Scope::Tables, Kind::Table) | (Scope::Properties, Kind::Property)
        )
    }

    fn push(
        &mut self,
        kind: Kind,
        item: impl Into<String>,
        expected: impl ToString,
        computed: impl ToString,
        ok: bool,
    ) {
        if !self.wants(kind) {
            return;
        }
        let section = self.sections.last_mut().expect("section opened first");
        section.checks.push(Check {
            item: item.into(),
            kind,
            expected: expected.to_string(),
            computed: computed.to_string(),
            ok,
        });
    }

    /// Compares rendered strings.
    fn same(
        &mut self,
        kind: Kind,
        item: impl Into<String>,
        expected: impl ToString,
        computed: impl ToString,
    ) {
        let (e, c) = (expected.to_string(), computed.to_string());
        let ok = e == c;
        self.push(kind, item, e, c, ok);
    }

    fn fallible(
        &mut self,
        kind: Kind,
        item: impl Into<String>,
        expected: impl ToString,
        computed: Result<String, Error>,
    ) {
        let e = expected.to_string();
        match computed {
            Ok(c) => self.same(kind, item, e, c),
            Err(err) => self.push(kind, item, e, format!("error: {err}"), false),
        }
    }

    fn finish(mut self) -> Report {
        self.sections.retain(|s| !s.checks.is_empty());
        Report {
            scope: self.scope,
            sections: self.sections,
        }
    }
}

const BERNOULLI_TABLE: [(u32, i64, i64); 11] = [
    (0, 1, 1),
    (1, -1, 2),
    (2, 1, 6),
    (4, -1, 30),
    (6, 1, 42),
    (8, -1, 30),
    (10, 5, 66),
    (12, -691, 2730),
    (14, 7, 6),
    (16, -3617, 510),
    (18, 43862, 798),
];

const S_TABLE: [(&str, &str); 12] = [
    ("()", "1"),
    ("(1)", "s1"),
    ("(2)", "s1^2 - 2*s2"),
    ("(1,1)", "s2"),
    ("(3)", "s1^3 - 3*s1*s2 + 3*s3"),
    ("(1,2)", "s1*s2 - 3*s3"),
    ("(1,1,1)", "s3"),
    ("(4)", "s1^4 - 4*s1^2*s2 + 2*s2^2 + 4*s1*s3 - 4*s4"),
    ("(1,3)", "s1^2*s2 - 2*s2^2 - s1*s3 + 4*s4"),
    ("(2,2)", "s2^2 - 2*s1*s3 + 2*s4"),
    ("(1,1,2)", "s1*s3 - 4*s4"),
    ("(1,1,1,1)", "s4"),
];

const L_TABLE: [(u32, &str, &[i64]); 4] = [
    (1, "p1/3", &[3]),
    (2, "(7*p2 - p1^2)/45", &[5, 10]),
    (3, "(62*p3 - 13*p2*p1 + 2*p1^3)/945", &[7, 21, 35]),
    (
        4,
        "(381*p4 - 71*p3*p1 - 19*p2^2 + 22*p2*p1^2 - 3*p1^4)/14175",
        &[9, 36, 84, 126],
    ),
];

fn bernoulli_section(b: &mut Builder) {
    b.section("bernoulli", "Bernoulli numbers");
    for (n, num, den) in BERNOULLI_TABLE {
        let v = bernoulli(n);
        b.same(
            Kind::Table,
            format!("B_{n}"),
            format!("{num}/{den}"),
            format!("{}/{}", v.numer(), v.denom()),
        );
    }
    let odd_nonzero: Vec<u32> = (3..=61)
        .step_by(2)
        .filter(|&n| !bernoulli(n).is_zero())
        .collect();
    b.same(
        Kind::Property,
        "B_n = 0 for odd 3 ≤ n ≤ 61",
        "[]",
        format!("{odd_nonzero:?}"),
    );
}

/// Σ t^I recovered from s_I(e_1, …, e_n) in n = |I| variables.
fn s_roundtrip(p: &Partition) -> Result<bool, Error> {
    let n = (p.weight() as usize).max(1);
    let names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    let vars = plain_variables(&names);
    let s = s_polynomial(p);
    let images: Vec<_> = (1..=s.vars().len())
        .map(|k| elementary_symmetric(k, &vars))
        .collect();
    let lhs = s.substitute(&images)?;
    Ok(lhs.to_string() == monomial_symmetric_oracle(p, &vars)?.to_string())
}

fn symmpoly_section(b: &mut Builder) {
    b.section("s-polynomials", "s_I in the elementary symmetric functions");
    for (part, text) in S_TABLE {
        let p: Partition = part.parse().expect("table partitions parse");
        b.same(Kind::Table, format!("s_{part}"), text, s_polynomial(&p));
    }
    if !b.wants(Kind::Property) {
        return;
    }
    for w in 0..=6 {
        let failures: Vec<String> = partitions_of(w)
            .iter()
            .filter(|p| !matches!(s_roundtrip(p), Ok(true)))
            .map(|p| p.to_string())
            .collect();
        b.same(
            Kind::Property,
            format!(
                "oracle round trip, weight {w} ({} partitions)",
                partitions_of(w).len()
            ),
            "[]",
            format!("{failures:?}"),
        );
    }
}

fn genus_section(b: &mut Builder) {
    b.section("l-polynomials", "L-polynomials and the L-series");
    for (k, text, _) in L_TABLE {
        b.same(
            Kind::Table,
            format!("L_{k}"),
            text,
            format_fraction_layout(&l_polynomial(k)),
        );
    }
    b.same(
        Kind::Property,
        "√z/tanh√z to order 2",
        "1 + z/3 - z^2/45",
        l_series(2),
    );
}

fn signature_section(b: &mut Builder) {
    b.section("signature", "signatures of complex projective spaces");
    for (k, _, classes) in L_TABLE {
        let computed: Vec<String> = pontrjagin_cp(2 * k as u64)
            .into_iter()
            .map(|x| x.to_string())
            .collect();
        let expected: Vec<String> = classes.iter().map(|x| x.to_string()).collect();
        b.same(
            Kind::Table,
            format!("p(CP^{})", 2 * k),
            expected.join(", "),
            computed.join(", "),
        );
        let sigma = hirzebruch_signature(&cp_pontrjagin_numbers(k)).map(|v| v.to_string());
        b.fallible(Kind::Table, format!("σ(CP^{})", 2 * k), 1, sigma);
    }
    let breakdown = signature_breakdown(&cp_pontrjagin_numbers(4)).map(|v| v.to_string());
    b.fallible(
        Kind::Table,
        "CP^8 intermediate sum",
        "(48006 - 53676 - 24624 + 64152 - 19683)/14175 = 1",
        breakdown,
    );
}

fn negate(form: &IntegerSymmetricForm) -> IntegerSymmetricForm {
    IntegerSymmetricForm::new(
        form.matrix()
            .iter()
            .map(|r| r.iter().map(|x| -x).collect())
            .collect(),
    )
    .expect("negation keeps symmetry")
}

/// A random unimodular matrix as a product of elementary operations.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<BigInt>> {
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        for k in 0..n {
            let add = &c * &u[j][k];
            u[i][k] += add;
        }
    }
    u
}

fn random_z2_form(rng: &mut ChaCha8Rng) -> Z2QuadraticForm {
    let half = rng.gen_range(1..=3);
    let mut form = Z2QuadraticForm::hyperbolic(rng.gen_range(0..=1), rng.gen_range(0..=1));
    for _ in 1..half {
        let next = Z2QuadraticForm::hyperbolic(rng.gen_range(0..=1), rng.gen_range(0..=1));
        form = form.direct_sum(&next).expect("dimension stays small");
    }
    let dim = form.dim();
    loop {
        let rows: Vec<u64> = (0..dim).map(|_| rng.gen_range(1..(1u64 << dim))).collect();
        if let Ok(f) = form.change_basis(&rows) {
            return f;
        }
    }
}

fn forms_section(b: &mut Builder) {
    b.section("forms", "intersection forms and the Arf invariant");
    let printed = e8_form_as_printed();
    b.same(
        Kind::Table,
        "σ of the tabulated E8 matrix",
        8,
        printed.signature(),
    );
    b.same(
        Kind::Table,
        "det of the tabulated E8 matrix",
        1,
        printed.determinant(),
    );
    let e8 = e8_form();
    b.same(
        Kind::Property,
        "σ(E8) for the standard E8 matrix",
        8,
        e8.signature(),
    );
    b.same(
        Kind::Property,
        "det(E8), even",
        "1, true",
        format!("{}, {}", e8.determinant(), e8.is_even()),
    );

    let standard = Z2QuadraticForm::hyperbolic(1, 1);
    b.fallible(
        Kind::Table,
        "Arf of the rank-2 form with μ(b) = μ(c) = 1",
        1,
        standard.arf().map(|a| a.to_string()),
    );
    if !b.wants(Kind::Property) {
        return;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let blocks = [e8.clone(), negate(&e8), IntegerSymmetricForm::hyperbolic()];
    let mut bad = 0;
    for _ in 0..100 {
        let count = rng.gen_range(1..=3);
        let mut form = blocks[rng.gen_range(0..3)].clone();
        for _ in 1..count {
            form = form.direct_sum(&blocks[rng.gen_range(0..3)]);
        }
        let u = random_unimodular(&mut rng, form.dim());
        let form = form.congruent(&u).expect("square change of basis");
        let unimodular = form.determinant().magnitude() == &num_bigint::BigUint::from(1u32);
        if !(form.is_even() && unimodular && form.signature().rem_euclid(8) == 0) {
            bad += 1;
        }
    }
    b.same(
        Kind::Property,
        "σ ≡ 0 mod 8 on 100 even unimodular sums",
        0,
        format!("{bad}"),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut bad = 0;
    for _ in 0..200 {
        let f = random_z2_form(&mut rng);
        let majority = u8::from(f.count_mu_zero() < 1u64 << (f.dim() - 1));
        if f.arf().ok() != Some(majority) {
            bad += 1;
        }
    }
    b.same(
        Kind::Property,
        "Arf = majority value on 200 forms, dim ≤ 6",
        0,
        format!("{bad}"),
    );
}

fn milnor_section(b: &mut Builder) {
    b.section("milnor", "exotic 7-sphere detector");
    let mut wrong = Vec::new();
    for k in (1..=199i64).step_by(2) {
        let expect_exotic = !matches!(k % 7, 1 | 6);
        let expect_p2 = Rational::new(45 + 4 * k * k, 7).expect("nonzero denominator");
        match milnor_detect(k) {
            Ok(r) if (r.verdict == Verdict::Exotic) == expect_exotic && r.p2 == expect_p2 => {}
            _ => wrong.push(k),
        }
    }
    b.same(
        Kind::Property,
        "verdict and p₂ for odd k in 1..199",
        "[]",
        format!("{wrong:?}"),
    );
    let h: Vec<String> = sphere_bundle_homology(1)
        .iter()
        .map(|g| g.to_string())
        .collect();
    let s7: Vec<String> = (0..8)
        .map(|i| if i == 0 || i == 7 { "Z" } else { "0" }.to_string())
        .collect();
    b.same(
        Kind::Property,
        "H_*(V) for χ = 1",
        s7.join(" "),
        h.join(" "),
    );
    let report = milnor_detect(1).map(|r| r.verdict.to_string());
    b.fallible(Kind::Table, "k = 1", "StandardConsistent", report);
    let report = milnor_detect(3).map(|r| r.verdict.to_string());
    b.fallible(Kind::Table, "k = 3", "Exotic", report);
}

fn euler_section(b: &mut Builder) {
    b.section("euler", "Euler characteristic rules");
    let rows = [
        ("χ(pt)", "point()", 1),
        ("χ(S^n), n odd", "sphere(3)", 0),
        ("χ(S^n), n even", "sphere(4)", 2),
        ("χ(D^3)", "disk(3)", 1),
        ("χ(R^n)", "euclidean(5)", 1),
        ("χ(S^2)", "sphere(2)", 2),
        (
            "χ of 3 disjoint S^2",
            "union(sphere(2), sphere(2), sphere(2))",
            6,
        ),
        (
            "χ(S^2) = χ(D^2) + χ(D^2) − χ(S^1)",
            "glue(disk(2), disk(2), sphere(1))",
            2,
        ),
        (
            "χ(K) = 2χ(Mob) − χ(S^1)",
            "glue(mobius(), mobius(), sphere(1))",
            0,
        ),
        (
            "χ(RP^2) = χ(crosscap) + χ(D^2) − χ(S^1)",
            "glue(crosscap(), disk(2), sphere(1))",
            1,
        ),
        (
            "χ(T^3) as a product",
            "product(sphere(1), sphere(1), sphere(1))",
            0,
        ),
        (
            "χ(S^2) = χ({±1})·χ(RP^2)",
            "bundle(union(point(), point()), rp(2))",
            2,
        ),
        ("χ(RP^n), n odd", "rp(5)", 0),
        ("χ(RP^n), n even", "rp(4)", 1),
        ("χ(Mob) = 2χ(S^1)", "cover(2, sphere(1))", 0),
    ];
    for (item, expr, chi) in rows {
        b.fallible(
            Kind::Table,
            item,
            chi,
            evaluate_chi(expr).map(|v| v.chi.to_string()),
        );
    }
    b.fallible(
        Kind::Table,
        "RP^4 is not a boundary (χ odd)",
        "true",
        evaluate_chi("rp(4)").map(|v| (v.chi % 2 != 0).to_string()),
    );
    b.same(
        Kind::Property,
        "surgery S^6 → S^3×S^3",
        "2 → 0",
        format!("2 → {}", chi_surgery(2, 2)),
    );
    b.fallible(
        Kind::Property,
        "χ(S^3×S^3)",
        0,
        evaluate_chi("surgery(sphere(6), 2)").map(|v| v.chi.to_string()),
    );
}

fn group_text(g: Result<FiniteAbelianGroup, Error>) -> Result<String, Error> {
    g.map(|g| g.to_string())
}

fn bordism_section(b: &mut Builder) {
    b.section("bordism", "bordism and exotic sphere groups");
    let table = [1usize, 2, 1, 3, 2, 4, 2];
    for (i, &rank) in table.iter().enumerate() {
        let n = i + 1;
        let printed = FiniteAbelianGroup::elementary_two(rank);
        b.fallible(
            Kind::Table,
            format!("Ω_{n},s"),
            printed,
            group_text(homotopy_sphere_bordism(n)),
        );
    }
    for (n, text) in [(0, "Z"), (1, "0"), (2, "Z_2"), (3, "0")] {
        b.same(Kind::Table, format!("L_{n}(Z)"), text, l_group(n));
    }
    b.same(
        Kind::Table,
        "Θ_7",
        "Z_28",
        theta(7).map(|g| g.to_string()).unwrap_or_default(),
    );
    let order = |g: FiniteAbelianGroup| {
        g.order()
            .map(|o| o.to_string())
            .unwrap_or_else(|| "∞".into())
    };
    for n in 1..=20 {
        let computed = (|| -> Result<String, Error> {
            let sub = bp(n + 1)?.order().expect("finite");
            let quotient = theta_mod_bp(n)?.order().expect("finite");
            Ok((sub * quotient).to_string())
        })();
        let expected = theta(n).map(order).unwrap_or_default();
        b.fallible(
            Kind::Table,
            format!("|Θ_{n}| = |bP_{}|·|Θ_{n}/bP_{}|", n + 1, n + 1),
            expected,
            computed,
        );
        debug_assert!(exactness_check(n).is_ok());
    }
    for n in 1..=17 {
        let computed = (|| -> Result<String, Error> {
            let image = j_image(n)?.order().expect("finite");
            let quotient = stem_mod_j(n)?.order().expect("finite");
            Ok((image * quotient).to_string())
        })();
        let expected = stable_stem(n).map(order).unwrap_or_default();
        b.fallible(
            Kind::Table,
            format!("|π^s_{n}| = |J_{n}|·|π^s_{n}/J|"),
            expected,
            computed,
        );
        debug_assert!(stem_quotient_check(n).is_ok());
    }
    for (m, text) in [(2u32, "28"), (3, "992"), (4, "8128"), (5, "261632")] {
        b.fallible(
            Kind::Table,
            format!("|bP_{}| from the order formula", 4 * m),
            text,
            bp_order(m).map(|v| v.to_string()),
        );
        let tabulated = bp(4 * m as usize).map(order).unwrap_or_default();
        b.same(
            Kind::Table,
            format!("|bP_{}| in the sphere table", 4 * m),
            text,
            tabulated,
        );
    }
}

fn jets_section(b: &mut Builder) {
    b.section("jets", "jet space dimensions");
    let mut failures = Vec::new();
    for n in 1..=6 {
        for s in 1..=5 {
            if !matches!(recurrence_holds(n, s), Ok(true)) {
                failures.push((n, s));
            }
        }
    }
    b.same(
        Kind::Property,
        "dim(RF)_{+s} recurrence, n ≤ 6, s ≤ 5",
        "[]",
        format!("{failures:?}"),
    );
}

fn ricci_section(b: &mut Builder) {
    b.section("ricci", "Ricci flow on the 2-torus");
    if !b.wants(Kind::Property) {
        return;
    }
    let fmt_orders = |o: &[f64]| {
        o.iter()
            .map(|v| format!("{v:.3}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    match flat_drift(16, 100, 1e-2) {
        Ok(d) => b.push(
            Kind::Property,
            "flat torus, 100 steps",
            "≤ 1e-12",
            format!("{d:.1e}"),
            d <= 1e-12,
        ),
        Err(e) => b.push(
            Kind::Property,
            "flat torus, 100 steps",
            "≤ 1e-12",
            format!("error: {e}"),
            false,
        ),
    }
    let oracle: Result<Vec<f64>, Error> = [16, 32, 64]
        .iter()
        .map(|&m| conformal_oracle_error(m, 0.1))
        .collect();
    match oracle {
        Ok(e) => {
            let o = observed_orders(&e);
            let ok = o.iter().all(|v| *v >= 1.8);
            b.push(
                Kind::Property,
                "conformal Ricci oracle order, m = 16/32/64",
                "≥ 1.8",
                fmt_orders(&o),
                ok,
            );
        }
        Err(e) => b.push(
            Kind::Property,
            "conformal Ricci oracle order",
            "≥ 1.8",
            format!("error: {e}"),
            false,
        ),
    }
    match substituted_residual(32, 1.0) {
        Ok(r) => b.push(
            Kind::Property,
            "bracket with both equations substituted",
            "≤ 1e-12",
            format!("{r:.1e}"),
            r <= 1e-12,
        ),
        Err(e) => b.push(
            Kind::Property,
            "bracket with both equations substituted",
            "≤ 1e-12",
            format!("error: {e}"),
            false,
        ),
    }
    let drift: Result<Vec<f64>, Error> = [16, 32, 64]
        .iter()
        .map(|&m| conformal_drift(m, 0.2, 0.05, 0.02))
        .collect();
    match drift {
        Ok(d) => {
            let o = observed_orders(&d);
            let ok = o.iter().all(|v| *v >= 1.8);
            b.push(
                Kind::Property,
                "conserved integral drift order, dt ∝ h²",
                "≥ 1.8",
                fmt_orders(&o),
                ok,
            );
        }
        Err(e) => b.push(
            Kind::Property,
            "conserved integral drift order",
            "≥ 1.8",
            format!("error: {e}"),
            false,
        ),
    }
}

/// Runs every check in `scope`.
pub fn verify(scope: Scope) -> Report {
    let mut b = Builder {
        scope,
        sections: Vec::new(),
    };
    bernoulli_section(&mut b);
    symmpoly_section(&mut b);
    genus_section(&mut b);
    signature_section(&mut b);
    forms_section(&mut b);
    milnor_section(&mut b);
    euler_section(&mut b);
    bordism_section(&mut b);
    jets_section(&mut b);
    ricci_section(&mut b);
    b.finish()
}

/// Section keys in report order.
pub const SECTION_KEYS: [&str; 10] = [
    "bernoulli",
    "s-polynomials",
    "l-polynomials",
    "signature",
    "forms",
    "milnor",
    "euler",
    "bordism",
    "jets",
    "ricci",
];

/// Pass/fail per section key.
pub fn section_status(report: &Report) -> BTreeMap<String, bool> {
    report
        .sections
        .iter()
        .map(|s| (s.key.clone(), s.passed()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_scope_skips_properties() {
        let r = verify(Scope::Tables);
        assert!(r
            .sections
            .iter()
            .all(|s| s.checks.iter().all(|c| c.kind == Kind::Table)));
        assert!(r.section("ricci").is_none());
        assert!(r.section("jets").is_none());
        let bad: Vec<&str> = r
            .mismatches()
            .iter()
            .map(|(_, c)| c.item.as_str())
            .collect();
        assert_eq!(
            bad,
            [
                "B_18",
                "σ of the tabulated E8 matrix",
                "det of the tabulated E8 matrix"
            ]
        );
    }

    #[test]
    fn report_text_lists_mismatches() {
        let r = verify(Scope::Tables);
        let text = r.to_string();
        assert!(text.contains("mismatch [bernoulli] B_18: tabulated 43862/798, computed 43867/798"));
        assert!(text.lines().last().unwrap().ends_with("3 mismatches"));
    }

    #[test]
    fn json_round_trip() {
        let r = verify(Scope::Tables);
        let back: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back.to_string(), r.to_string());
    }
}
