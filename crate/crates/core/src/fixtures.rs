//! Built-in presentations and the expectation suite run by `artinv fixtures`.

use std::fmt::Display;

use crate::algebra::{ArtinianAlgebra, Element};
use crate::arith::FieldSpec;
use crate::hilbert::{self, OSequence};
use crate::invariants::{self, Effort, ExactnessVerdict, ReesMode, XiFamily};
use crate::presentation::Presentation;
use crate::Error;

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
}

macro_rules! fixture {
    ($name:literal) => {
        Fixture {
            name: $name,
            source: include_str!(concat!("../fixtures/", $name, ".toml")),
        }
    };
}

pub const ALL: &[Fixture] = &[
    fixture!("flagship_f2"),
    fixture!("monomial_q4"),
    fixture!("gorenstein_family_a"),
    fixture!("gorenstein_family_b"),
    fixture!("twelve_q5"),
    fixture!("char_sensitive_q"),
    fixture!("char_sensitive_f2"),
    fixture!("quadrics_q5"),
    fixture!("plane_length2"),
    fixture!("plane_length3"),
    fixture!("plane_truncated"),
    fixture!("plane_truncated3"),
    fixture!("chain_f2"),
    fixture!("monomial_ci_q3"),
];

pub fn get(name: &str) -> Option<&'static Fixture> {
    ALL.iter().find(|f| f.name == name)
}

impl Fixture {
    pub fn presentation(&self) -> Presentation {
        Presentation::from_toml_str(self.source).unwrap_or_else(|e| panic!("fixture {} is malformed: {e}", self.name))
    }

    pub fn build(&self) -> Result<ArtinianAlgebra, Error> {
        Ok(self.presentation().build()?)
    }

    /// Effort with the fixture's named ideals registered.
    pub fn effort(&self, a: &ArtinianAlgebra) -> Result<Effort, Error> {
        Ok(Effort {
            registered: self.presentation().registered_ideals(a)?,
            ..Effort::default()
        })
    }
}

/// One expectation of the suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub fixture: String,
    pub claim: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

struct Suite {
    out: Vec<Outcome>,
}

impl Suite {
    fn check<E: Display, A: Display>(&mut self, fixture: &str, claim: &str, expected: E, actual: Result<A, Error>) {
        let expected = expected.to_string();
        let (actual, passed) = match actual {
            Ok(v) => {
                let v = v.to_string();
                let ok = v == expected;
                (v, ok)
            }
            Err(e) => (format!("error: {e}"), false),
        };
        self.out.push(Outcome {
            fixture: fixture.into(),
            claim: claim.into(),
            expected,
            actual,
            passed,
        });
    }
}

fn hf(a: &ArtinianAlgebra) -> Result<OSequence, Error> {
    Ok(OSequence::try_from(a.hilbert_function()?.as_slice())?)
}

fn elem(a: &ArtinianAlgebra, s: &str) -> Result<Element, Error> {
    Ok(a.parse_element(s)?)
}

fn verdict(a: &ArtinianAlgebra, effort: &Effort) -> Result<ExactnessVerdict, Error> {
    Ok(invariants::exactness(a, effort)?)
}

fn load(name: &str) -> Result<(ArtinianAlgebra, Effort), Error> {
    let f = get(name).unwrap_or_else(|| panic!("no fixture {name}"));
    let a = f.build()?;
    let e = f.effort(&a)?;
    Ok((a, e))
}

/// Runs every built-in expectation. The result is in a fixed order.
pub fn run_suite() -> Vec<Outcome> {
    let mut s = Suite { out: Vec::new() };
    flagship(&mut s);
    monomial_q4(&mut s);
    gorenstein_families(&mut s);
    twelve(&mut s);
    char_pair(&mut s);
    quadrics(&mut s);
    plane(&mut s);
    chain(&mut s);
    monomial_ci(&mut s);
    macaulay(&mut s);
    admissible_everywhere(&mut s);
    s.out
}

fn flagship(s: &mut Suite) {
    let n = "flagship_f2";
    let (a, e) = match load(n) {
        Ok(x) => x,
        Err(err) => return s.check(n, "builds", "ok", Err::<&str, _>(err)),
    };
    s.check(n, "length", 8, Ok(a.dim()));
    s.check(n, "hilbert function", "(1,3,3,1)", hf(&a));
    s.check(n, "gorenstein", true, a.is_gorenstein().map_err(Error::from));
    s.check(
        n,
        "complete intersection",
        true,
        a.is_complete_intersection().map_err(Error::from),
    );
    let oracle = invariants::dilworth_oracle(&a, &e).map_err(Error::from);
    s.check(
        n,
        "dilworth (oracle)",
        3,
        oracle.as_ref().map(|o| o.value).map_err(Clone::clone),
    );
    s.check(
        n,
        "maximizers are powers of m",
        true,
        oracle.map(|o| {
            let powers: Vec<_> = (1..4).map(|i| a.mpow(i)).collect();
            o.maximizers.iter().all(|m| powers.contains(m)) && o.maximizers.contains(&a.maximal_ideal())
        }),
    );
    for (mode, claim) in [
        (ReesMode::ExhaustiveAll, "rees (all of m)"),
        (ReesMode::GradedDegreeOne, "rees (degree one)"),
    ] {
        s.check(
            n,
            claim,
            4,
            invariants::rees_number(&a, mode, &e)
                .map(|r| r.value)
                .map_err(Error::from),
        );
    }
    s.check(
        n,
        "no xi with m*xi = m^2",
        "none",
        invariants::xi_certificate_search(&a, XiFamily::AllOfM, &e)
            .map(|x| {
                if x.witness.is_none() && x.exhausted {
                    "none"
                } else {
                    "found"
                }
            })
            .map_err(Error::from),
    );
    s.check(
        n,
        "monomial criterion passes",
        false,
        invariants::watanabe_monomial_criterion(&a)
            .map(|c| c.passes)
            .map_err(Error::from),
    );
    s.check(n, "no degree-one weak Lefschetz element", true, no_wl_in_degree_one(&a));
    s.check(n, "verdict", "NotExact(3, 4)", verdict(&a, &e));
}

fn no_wl_in_degree_one(a: &ArtinianAlgebra) -> Result<bool, Error> {
    let q = a.field().size().expect("finite field");
    let deg1 = a.degree_indices(1).to_vec();
    let total = q.pow(deg1.len() as u32);
    for idx in 1..total {
        let mut c = vec![a.field().zero(); a.dim()];
        let mut rest = idx;
        for &i in &deg1 {
            c[i] = a.field().element(rest % q);
            rest /= q;
        }
        if invariants::weak_lefschetz(a, &Element::new(c))?.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

fn monomial_q4(s: &mut Suite) {
    let n = "monomial_q4";
    let (a, e) = match load(n) {
        Ok(x) => x,
        Err(err) => return s.check(n, "builds", "ok", Err::<&str, _>(err)),
    };
    s.check(n, "length", 9, Ok(a.dim()));
    s.check(n, "m^3 = 0", true, Ok(a.mpow(3).dim() == 0));
    s.check(n, "gorenstein", false, a.is_gorenstein().map_err(Error::from));
    s.check(
        n,
        "socle dimension > 1",
        true,
        a.socle().map(|q| q.dim() > 1).map_err(Error::from),
    );
    s.check(
        n,
        "dim (m*sigma)_2 vs dim (m^2)_2",
        "3 < 4",
        invariants::watanabe_monomial_criterion(&a)
            .map(|c| format!("{} < {}", c.degree_two.0, c.degree_two.1))
            .map_err(Error::from),
    );
    s.check(n, "verdict", "NotExact", verdict(&a, &e).map(|v| v.label()));
}

fn gorenstein_families(s: &mut Suite) {
    for n in ["gorenstein_family_a", "gorenstein_family_b"] {
        let (a, _) = match load(n) {
            Ok(x) => x,
            Err(err) => return s.check(n, "builds", "ok", Err::<&str, _>(err)),
        };
        s.check(n, "hilbert function", "(1,3,3,1,1)", hf(&a));
        s.check(n, "gorenstein", true, a.is_gorenstein().map_err(Error::from));
    }
    let n = "gorenstein_family_a";
    let (a, e) = match load(n) {
        Ok(x) => x,
        Err(_) => return,
    };
    let report = elem(&a, "x1 + x2 + x3").and_then(|xi| Ok(invariants::fact_main_check(&a, &xi, &a.maximal_ideal())?));
    s.check(
        n,
        "xi = x1 + x2 + x3: m*xi = m^2, mu(m) = l(A/xiA)",
        "true, 3 = 3",
        report.map(|r| format!("{}, {} = {}", r.m_n_equals_a_n, r.mu, r.colength)),
    );
    s.check(
        n,
        "verdict",
        "Exact(3) xi_witness",
        verdict(&a, &e).map(|v| match &v {
            ExactnessVerdict::Exact { witness, .. } => format!("{v} {}", witness.kind()),
            _ => v.to_string(),
        }),
    );
}

fn twelve(s: &mut Suite) {
    let n = "twelve_q5";
    let (a, e) = match load(n) {
        Ok(x) => x,
        Err(err) => return s.check(n, "builds", "ok", Err::<&str, _>(err)),
    };
    s.check(n, "length", 12, Ok(a.dim()));
    s.check(n, "hilbert function", "(1,5,5,1)", hf(&a));
    let fact = (|| {
        let u = elem(&a, "u")?;
        let ideal = &e.registered[0].1;
        Ok(invariants::fact_main_check(&a, &u, ideal)?)
    })();
    s.check(
        n,
        "a = u, N = (x,y,z,uv,u^2,v^2): (0:u) in N, mN = uN, mu(N) = l(A/uA)",
        "true, true, 6 = 6",
        fact.map(|r: invariants::FactMainReport| {
            format!(
                "{}, {}, {} = {}",
                r.annihilator_in_n, r.m_n_equals_a_n, r.mu, r.colength
            )
        }),
    );
    s.check(
        n,
        "dilworth bounds",
        "(6, 6)",
        invariants::dilworth_bounds(&a, &e)
            .map(|b| format!("({}, {})", b.lower, b.upper))
            .map_err(Error::from),
    );
    s.check(n, "verdict", "Exact(6)", verdict(&a, &e));
}

fn char_pair(s: &mut Suite) {
    for (n, expected) in [("char_sensitive_q", "3 = 3"), ("char_sensitive_f2", "2 < 3")] {
        let (a, _) = match load(n) {
            Ok(x) => x,
            Err(err) => return s.check(n, "builds", "ok", Err::<&str, _>(err)),
        };
        s.check(n, "hilbert function", "(1,4,3,1)", hf(&a));
        let cmp = elem(&a, "x1 + x2 + x3").map(|xi| {
            let mxi = a.element_times(&xi, a.maximal_ideal().space());
            let (d, t) = (
                a.filtered_piece_dim(&mxi, 2),
                a.filtered_piece_dim(a.mpow(2).space(), 2),
            );
            let rel = if mxi.dim() == a.mpow(2).dim() { "=" } else { "<" };
            format!("{d} {rel} {t}")
        });
        s.check(n, "xi = x1 + x2 + x3: dim (m*xi)_2 vs dim (m^2)_2", expected, cmp);
    }
    // The same presentation over both fields, via with_field.
    let p = get("char_sensitive_q").unwrap().presentation();
    let f2 = p.with_field(FieldSpec::prime(2).unwrap());
    s.check(
        "char_sensitive_q",
        "over F2 the sum is no witness",
        false,
        f2.build()
            .map_err(Error::from)
            .and_then(|a| Ok(invariants::is_xi_witness(&a, &elem(&a, "x1 + x2 + x3")?))),
    );
}

fn quadrics(s: &mut Suite) {
    let n = "quadrics_q5";
    let (a, e) = match load(n) {
        Ok(x) => x,
        Err(err) => return s.check(n, "builds", "ok", Err::<&str, _>(err)),
    };
    s.check(n, "hilbert function", "(1,5,5,1)", hf(&a));
    s.check(n, "gorenstein", true, a.is_gorenstein().map_err(Error::from));
    for (abcd, src, expected) in [
        ("(1,1,1,1)", "x1 + x2 + x3 + x4 + x5", false),
        ("(-1,1,1,1)", "x1 - x2 + x3 + x4 + x5", true),
    ] {
        s.check(
            n,
            &format!("xi with (A,B,C,D) = {abcd}: m*xi = m^2"),
            expected,
            elem(&a, src).map(|xi| invariants::is_xi_witness(&a, &xi)),
        );
    }
    s.check(
        n,
        "rees (generic symbolic)",
        5,
        invariants::rees_number(&a, ReesMode::GenericSymbolic, &e)
            .map(|r| r.value)
            .map_err(Error::from),
    );
    s.check(
        n,
        "weak Lefschetz for x1 - x2 + x3 + x4 + x5, l(A/xiA)",
        "true, 5",
        elem(&a, "x1 - x2 + x3 + x4 + x5")
            .and_then(|l| Ok(invariants::weak_lefschetz(&a, &l)?))
            .map(|w| format!("{}, {}", w.holds, w.colength)),
    );
    s.check(
        n,
        "generic weak Lefschetz",
        true,
        invariants::has_wl_generic(&a).map(|g| g.holds).map_err(Error::from),
    );
    s.check(
        n,
        "dilworth bounds",
        "(5, 5)",
        invariants::dilworth_bounds(&a, &e)
            .map(|b| format!("({}, {})", b.lower, b.upper))
            .map_err(Error::from),
    );
    s.check(n, "verdict", "Exact(5)", verdict(&a, &e));
}

fn plane(s: &mut Suite) {
    for (n, len) in [("plane_length2", 2), ("plane_length3", 3)] {
        s.check(n, "length", len, load(n).map(|(a, _)| a.dim()));
    }
    for (n, len) in [("plane_truncated", 2), ("plane_truncated3", 3)] {
        s.check(
            n,
            "l(A/yA)",
            len,
            load(n).and_then(|(a, _)| Ok(a.quotient_length(&[elem(&a, "y")?]))),
        );
    }
}

fn chain(s: &mut Suite) {
    let n = "chain_f2";
    let (a, e) = match load(n) {
        Ok(x) => x,
        Err(err) => return s.check(n, "builds", "ok", Err::<&str, _>(err)),
    };
    s.check(
        n,
        "dilworth (oracle)",
        1,
        invariants::dilworth_oracle(&a, &e)
            .map(|o| o.value)
            .map_err(Error::from),
    );
    s.check(
        n,
        "monomial criterion passes",
        true,
        invariants::watanabe_monomial_criterion(&a)
            .map(|c| c.passes)
            .map_err(Error::from),
    );
    s.check(n, "verdict", "Exact(1)", verdict(&a, &e));
}

fn monomial_ci(s: &mut Suite) {
    let n = "monomial_ci_q3";
    s.check(
        n,
        "generic weak Lefschetz",
        true,
        load(n).and_then(|(a, _)| Ok(invariants::has_wl_generic(&a)?.holds)),
    );
}

fn macaulay(s: &mut Suite) {
    for (seq, expected) in [
        ("1,3,1,2", false),
        ("1,3,1,1", true),
        ("1,3,2,1", true),
        ("1,3,3,1", true),
        ("1,4,1,1", true),
    ] {
        s.check(
            "macaulay",
            &format!("({seq}) admissible"),
            expected,
            seq.parse::<OSequence>()
                .map(|h| hilbert::is_admissible(&h))
                .map_err(Error::from),
        );
    }
}

fn admissible_everywhere(s: &mut Suite) {
    for f in ALL {
        s.check(
            f.name,
            "hilbert function admissible",
            true,
            f.build().and_then(|a| hf(&a)).map(|h| hilbert::is_admissible(&h)),
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses() {
        for f in ALL {
            let p = f.presentation();
            assert_eq!(p.name.as_deref(), Some(f.name));
        }
    }
}
