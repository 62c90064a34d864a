//! Partitions, weighted multivariate polynomials over the rationals, and the
//! polynomials s_I expressing monomial symmetric functions in the elementary
//! symmetric functions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::exactnum::{solve_square, Rational};
use crate::Error;

/// An integer partition, parts stored in nondecreasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        parts.sort_unstable();
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Multiplicity of each part size s, indexed s - 1, up to the largest part.
    pub fn multiplicities(&self) -> Vec<u32> {
        let max = self.parts.last().copied().unwrap_or(0) as usize;
        let mut mult = vec![0; max];
        for &p in &self.parts {
            mult[p as usize - 1] += 1;
        }
        mult
    }

    /// The partition read off an exponent vector: exponent e at position
    /// i contributes e parts equal to i + 1.
    pub fn from_multiplicities(mult: &[u32]) -> Self {
        let parts = mult
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i as u32 + 1, e as usize))
            .collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", inner.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts "(1,1,2)", "1,1,2", "1 1 2" or "()".
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition part {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n`, each once, in ascending lexicographic order of
/// their nondecreasing part lists: for n = 4 the order is
/// (1,1,1,1), (1,1,2), (1,3), (2,2), (4).
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn extend(remaining: u32, min_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for part in min_part..=remaining {
            // every later part is >= part
            if part != remaining && remaining - part < part {
                continue;
            }
            prefix.push(part);
            extend(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, 1, &mut Vec::new(), &mut out);
    out
}

/// A polynomial variable with a positive grading weight.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Variable {
    pub name: String,
    pub weight: u32,
}

impl Variable {
    pub fn new(name: impl Into<String>, weight: u32) -> Self {
        Variable {
            name: name.into(),
            weight,
        }
    }
}

/// `prefix1, prefix2, …, prefix{n}` with variable i carrying weight i.
pub fn graded_variables(prefix: &str, n: usize) -> Vec<Variable> {
    (1..=n)
        .map(|i| Variable::new(format!("{prefix}{i}"), i as u32))
        .collect()
}

/// Weight-one variables with the given names.
pub fn plain_variables<S: AsRef<str>>(names: &[S]) -> Vec<Variable> {
    names.iter().map(|n| Variable::new(n.as_ref(), 1)).collect()
}

/// Sparse exponent vector: (variable index, exponent) pairs, sorted by index,
/// exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        Monomial(vec![(index, 1)])
    }

    pub fn from_dense(exps: &[u32]) -> Self {
        Monomial(
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i, e))
                .collect(),
        )
    }

    pub fn exponents(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0
            .iter()
            .find(|(i, _)| *i == index)
            .map_or(0, |&(_, e)| e)
    }

    pub fn dense(&self, nvars: usize) -> Vec<u32> {
        let mut out = vec![0; nvars];
        for &(i, e) in &self.0 {
            out[i] = e;
        }
        out
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<usize, u32> = self.0.iter().copied().collect();
        for &(i, e) in &other.0 {
            *map.entry(i).or_insert(0) += e;
        }
        Monomial(map.into_iter().collect())
    }

    fn weighted_degree(&self, vars: &[Variable]) -> u32 {
        self.0.iter().map(|&(i, e)| vars[i].weight * e).sum()
    }

    /// The multiset of variable weights, largest first.
    fn weight_pattern(&self, vars: &[Variable]) -> Vec<u32> {
        let mut w: Vec<u32> = self
            .0
            .iter()
            .flat_map(|&(i, e)| std::iter::repeat_n(vars[i].weight, e as usize))
            .collect();
        w.sort_unstable_by(|a, b| b.cmp(a));
        w
    }
}

/// A polynomial with rational coefficients over weighted variables. No zero
/// coefficient is ever stored.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedPolynomial {
    vars: Arc<[Variable]>,
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPolynomial {
    pub fn zero(vars: &[Variable]) -> Self {
        GradedPolynomial {
            vars: vars.into(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[Variable], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn variable(vars: &[Variable], index: usize) -> Self {
        assert!(index < vars.len(), "variable index out of range");
        let mut p = Self::zero(vars);
        p.add_term(Monomial::var(index), Rational::one());
        p
    }

    pub fn from_terms(
        vars: &[Variable],
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same_vars(&self, other: &Self) {
        assert!(
            self.vars == other.vars,
            "polynomials over different variable sets"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        GradedPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_vars(other);
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::constant(&self.vars, Rational::one());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Weighted degree of every monomial, if they all agree. The zero
    /// polynomial reports `None`.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut weights = self.terms.keys().map(|m| m.weighted_degree(&self.vars));
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, w: u32) -> bool {
        self.terms
            .keys()
            .all(|m| m.weighted_degree(&self.vars) == w)
    }

    /// Replaces variable i by `images[i]`; all images share one target
    /// variable set.
    pub fn substitute(&self, images: &[GradedPolynomial]) -> Result<GradedPolynomial, Error> {
        if images.len() != self.vars.len() {
            return Err(Error::invalid(format!(
                "substitution needs {} images, got {}",
                self.vars.len(),
                images.len()
            )));
        }
        let target: Vec<Variable> = match images.first() {
            Some(p) => p.vars.to_vec(),
            None => Vec::new(),
        };
        if images.iter().any(|p| p.vars[..] != target[..]) {
            return Err(Error::invalid(
                "substitution images over different variables",
            ));
        }
        let mut out = GradedPolynomial::zero(&target);
        let mut powers: HashMap<(usize, u32), GradedPolynomial> = HashMap::new();
        for (m, c) in &self.terms {
            let mut term = GradedPolynomial::constant(&target, c.clone());
            for &(i, e) in m.exponents() {
                let pw = powers
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e))
                    .clone();
                term = term.mul(&pw);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    pub fn evaluate(&self, values: &[Rational]) -> Result<Rational, Error> {
        if values.len() < self.vars.len() {
            return Err(Error::invalid(format!(
                "evaluation needs {} values, got {}",
                self.vars.len(),
                values.len()
            )));
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                m.exponents()
                    .iter()
                    .fold(c.clone(), |acc, &(i, e)| acc * values[i].pow(e))
            })
            .sum())
    }

    /// Same coefficients over a different variable set of equal length.
    pub fn with_variables(&self, vars: &[Variable]) -> Result<GradedPolynomial, Error> {
        if vars.len() != self.vars.len() {
            return Err(Error::invalid("variable count mismatch"));
        }
        Ok(GradedPolynomial {
            vars: vars.into(),
            terms: self.terms.clone(),
        })
    }

    /// Terms in display order: by weighted degree, then by the pattern of
    /// variable weights (largest first, compared lexicographically), then by
    /// exponent vector with earlier variables first.
    pub fn ordered_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        let vars = &self.vars;
        v.sort_by(|(a, _), (b, _)| display_order(a, b, vars));
        v
    }

    /// Formats one monomial as `x1^2*x3`; the empty monomial is "".
    pub fn format_monomial(&self, m: &Monomial, highest_first: bool) -> String {
        let mut factors: Vec<String> = m
            .exponents()
            .iter()
            .map(|&(i, e)| {
                if e == 1 {
                    self.vars[i].name.clone()
                } else {
                    format!("{}^{}", self.vars[i].name, e)
                }
            })
            .collect();
        if highest_first {
            factors.reverse();
        }
        factors.join("*")
    }
}

fn display_order(a: &Monomial, b: &Monomial, vars: &[Variable]) -> Ordering {
    a.weighted_degree(vars)
        .cmp(&b.weighted_degree(vars))
        .then_with(|| a.weight_pattern(vars).cmp(&b.weight_pattern(vars)))
        .then_with(|| {
            let n = vars.len();
            b.dense(n).cmp(&a.dense(n))
        })
}

/// Writes `terms` joined by " + " / " - ", each `coefficient*monomial` with
/// unit coefficients suppressed.
pub(crate) fn format_terms(terms: &[(String, Rational)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (mono, c)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let unit = mag == Rational::one();
        match (mono.is_empty(), unit) {
            (true, _) => out.push_str(&mag.to_string()),
            (false, true) => out.push_str(mono),
            (false, false) => {
                out.push_str(&mag.to_string());
                out.push('*');
                out.push_str(mono);
            }
        }
    }
    out
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, Rational)> = self
            .ordered_terms()
            .into_iter()
            .map(|(m, c)| (self.format_monomial(m, false), c.clone()))
            .collect();
        f.write_str(&format_terms(&terms))
    }
}

impl fmt::Debug for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The k-th elementary symmetric polynomial in `vars`.
pub fn elementary_symmetric(k: usize, vars: &[Variable]) -> GradedPolynomial {
    let n = vars.len();
    let mut out = GradedPolynomial::zero(vars);
    if k > n {
        return out;
    }
    // iterate k-subsets of 0..n
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut exps = vec![0; n];
        for &i in &idx {
            exps[i] = 1;
        }
        out.add_term(Monomial::from_dense(&exps), Rational::one());
        let Some(pos) = (0..k).rev().find(|&p| idx[p] != p + n - k) else {
            break;
        };
        idx[pos] += 1;
        for p in pos + 1..k {
            idx[p] = idx[p - 1] + 1;
        }
    }
    out
}

/// The monomial symmetric polynomial Σ t^I over all distinct permutations
/// of the exponent pattern I in the given variables.
pub fn monomial_symmetric_oracle(
    partition: &Partition,
    vars: &[Variable],
) -> Result<GradedPolynomial, Error> {
    let needed = partition.weight() as usize;
    if vars.len() < needed {
        return Err(Error::InsufficientVariables {
            needed,
            got: vars.len(),
        });
    }
    let mut pattern: Vec<u32> = partition.parts().to_vec();
    pattern.resize(vars.len(), 0);
    pattern.sort_unstable();
    let mut out = GradedPolynomial::zero(vars);
    loop {
        out.add_term(Monomial::from_dense(&pattern), Rational::one());
        if !next_permutation(&mut pattern) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn s_cache() -> &'static Mutex<HashMap<Partition, GradedPolynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<Partition, GradedPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// s_I(σ_1, …, σ_n) with n = weight(I): the unique polynomial in the
/// elementary symmetric functions equal to Σ t^I. Variables are named
/// `s1..sn`, σ_i of weight i.
///
/// Found by expanding every σ-monomial of weight n in n variables and solving
/// for the coefficients exactly. Results are cached.
pub fn s_polynomial(partition: &Partition) -> GradedPolynomial {
    if let Some(p) = s_cache().lock().expect("cache poisoned").get(partition) {
        return p.clone();
    }
    let p = compute_s_polynomial(partition);
    s_cache()
        .lock()
        .expect("cache poisoned")
        .insert(partition.clone(), p.clone());
    p
}

fn compute_s_polynomial(partition: &Partition) -> GradedPolynomial {
    let n = partition.weight() as usize;
    let sigma = graded_variables("s", n);
    if n == 0 {
        return GradedPolynomial::constant(&sigma, Rational::one());
    }
    let t = graded_variables("t", n)
        .into_iter()
        .map(|v| Variable::new(v.name, 1))
        .collect::<Vec<_>>();
    let elementary: Vec<GradedPolynomial> = (1..=n).map(|k| elementary_symmetric(k, &t)).collect();
    let basis = partitions_of(n as u32);

    // Column J holds the coefficients of e_J at each dominant monomial t^λ.
    let rows: Vec<Monomial> = basis.iter().map(|lam| dominant_monomial(lam, n)).collect();
    let columns: Vec<GradedPolynomial> = basis
        .iter()
        .map(|j| {
            j.parts().iter().fold(
                GradedPolynomial::constant(&t, Rational::one()),
                |acc, &part| acc.mul(&elementary[part as usize - 1]),
            )
        })
        .collect();
    let matrix: Vec<Vec<Rational>> = rows
        .iter()
        .map(|row| columns.iter().map(|col| col.coefficient(row)).collect())
        .collect();
    let target = monomial_symmetric_oracle(partition, &t).expect("n variables suffice");
    let rhs: Vec<Rational> = rows.iter().map(|row| target.coefficient(row)).collect();
    let coeffs = solve_square(&matrix, &rhs).expect("elementary products form a basis");

    GradedPolynomial::from_terms(
        &sigma,
        basis
            .iter()
            .zip(coeffs)
            .map(|(j, c)| (Monomial::from_dense(&j.multiplicities()), c)),
    )
}

/// t_1^{λ_1} t_2^{λ_2} … with λ sorted largest first.
fn dominant_monomial(lam: &Partition, nvars: usize) -> Monomial {
    let mut exps: Vec<u32> = lam.parts().iter().rev().copied().collect();
    exps.resize(nvars, 0);
    Monomial::from_dense(&exps)
}

/// The σ-monomial σ_{i_1} σ_{i_2} … as an exponent vector over `s1..sn`.
pub fn sigma_monomial(partition: &Partition) -> Monomial {
    Monomial::from_dense(&partition.multiplicities())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn small_partition_lists() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        let four: Vec<String> = partitions_of(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(four, ["(1,1,1,1)", "(1,1,2)", "(1,3)", "(2,2)", "(4)"]);
    }

    /// Brute force: every nondecreasing list of positive parts summing to n,
    /// by filtering all compositions.
    fn brute_force_count(n: u32) -> usize {
        fn compositions(n: u32) -> Vec<Vec<u32>> {
            if n == 0 {
                return vec![vec![]];
            }
            (1..=n)
                .flat_map(|first| {
                    compositions(n - first).into_iter().map(move |mut rest| {
                        rest.insert(0, first);
                        rest
                    })
                })
                .collect()
        }
        compositions(n)
            .into_iter()
            .filter(|c| c.windows(2).all(|w| w[0] <= w[1]))
            .count()
    }

    #[test]
    fn partition_counts_match_brute_force() {
        assert_eq!(brute_force_count(6), 11);
        for n in 0..=10 {
            let ps = partitions_of(n);
            assert_eq!(ps.len(), brute_force_count(n), "n = {n}");
            let mut sorted = ps.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, ps, "canonical order, no duplicates");
            assert!(ps.iter().all(|p| p.weight() == n));
        }
    }

    #[test]
    fn partition_parsing() {
        assert_eq!("(2,1,1)".parse::<Partition>().unwrap(), part(&[1, 1, 2]));
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert!("(0,1)".parse::<Partition>().is_err());
        assert!("(a)".parse::<Partition>().is_err());
        assert_eq!(part(&[1, 1, 2]).multiplicities(), vec![2, 1]);
        assert_eq!(Partition::from_multiplicities(&[2, 1]), part(&[1, 1, 2]));
    }

    #[test]
    fn oracle_examples() {
        let ab = plain_variables(&["a", "b"]);
        let abc = plain_variables(&["a", "b", "c"]);
        assert_eq!(
            monomial_symmetric_oracle(&part(&[2]), &ab)
                .unwrap()
                .to_string(),
            "a^2 + b^2"
        );
        assert_eq!(
            monomial_symmetric_oracle(&part(&[1, 1]), &abc)
                .unwrap()
                .to_string(),
            "a*b + a*c + b*c"
        );
        let m12 = monomial_symmetric_oracle(&part(&[1, 2]), &abc).unwrap();
        assert_eq!(m12.num_terms(), 6);
        for (mono, c) in m12.terms() {
            assert_eq!(c, &Rational::one());
            let mut e = mono.dense(3);
            e.sort_unstable();
            assert_eq!(e, vec![0, 1, 2]);
        }
        assert_eq!(
            monomial_symmetric_oracle(&part(&[1, 2]), &ab),
            Err(Error::InsufficientVariables { needed: 3, got: 2 })
        );
    }

    #[test]
    fn s_polynomial_examples() {
        assert_eq!(s_polynomial(&part(&[2])).to_string(), "s1^2 - 2*s2");
        assert_eq!(s_polynomial(&part(&[1, 1])).to_string(), "s2");
        assert_eq!(s_polynomial(&part(&[1, 1, 2])).to_string(), "s1*s3 - 4*s4");
        assert_eq!(s_polynomial(&Partition::empty()).to_string(), "1");
    }

    #[test]
    fn elementary_counts() {
        let v = plain_variables(&["a", "b", "c", "d"]);
        assert_eq!(elementary_symmetric(2, &v).num_terms(), 6);
        assert_eq!(elementary_symmetric(0, &v).to_string(), "1");
        assert!(elementary_symmetric(5, &v).is_zero());
    }

    #[test]
    fn arithmetic_and_evaluation() {
        let v = graded_variables("p", 2);
        let p1 = GradedPolynomial::variable(&v, 0);
        let p2 = GradedPolynomial::variable(&v, 1);
        let f = p1.mul(&p1).sub(&p2.scale(&Rational::from(7)));
        assert_eq!(f.to_string(), "p1^2 - 7*p2");
        assert!(f.is_homogeneous_of(2));
        assert_eq!(f.homogeneous_weight(), Some(2));
        let val = f
            .evaluate(&[Rational::from(5), Rational::from(10)])
            .unwrap();
        assert_eq!(val, Rational::from(-45));
        assert!(f.sub(&f).is_zero());
        assert_eq!(f.sub(&f).to_string(), "0");
    }
}
