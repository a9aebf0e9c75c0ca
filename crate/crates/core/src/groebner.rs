//! Buchberger's algorithm, normal forms and standard monomials.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::poly::{add_into, Monomial, Polynomial, RingContext};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("quotient is not artinian: no power of `{variable}` is a leading monomial")]
    NotArtinian { variable: String },
    #[error("quotient has more than {cap} standard monomials")]
    TooLarge { cap: usize },
}

/// Reduced Gröbner basis: monic, inter-reduced, sorted by leading monomial
/// descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ctx: Arc<RingContext>,
    generators: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.generators.iter().filter_map(Polynomial::leading_monomial)
    }

    pub fn is_unit(&self) -> bool {
        self.leading_monomials().any(Monomial::is_one)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, self).is_zero()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(Polynomial::is_monomial)
    }
}

/// Full reduction of `f` modulo a list of monic polynomials.
fn reduce_by(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let ctx = f.ctx().clone();
    let mut work: BTreeMap<Monomial, _> = f.terms().iter().cloned().collect();
    let mut rem = Vec::new();
    while let Some((m, c)) = work.pop_last() {
        let hit = divisors.iter().find_map(|g| {
            let (lm, _) = g.leading_term()?;
            m.div(lm).map(|q| (g, q))
        });
        match hit {
            Some((g, q)) => {
                // g is monic, so subtract c·q·g; its leading term cancels m.
                for (gm, gc) in &g.terms()[1..] {
                    add_into(&mut work, gm.mul(&q), &-&(&c * gc));
                }
            }
            None => rem.push((m, c)),
        }
    }
    Polynomial::from_sorted(&ctx, rem)
}

/// The unique remainder of `f` supported on standard monomials.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    reduce_by(f, &gb.generators)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lf, cf) = f.leading_term().expect("nonzero");
    let (lg, cg) = g.leading_term().expect("nonzero");
    let l = lf.lcm(lg);
    let a = f.mul_term(&l.div(lf).expect("lcm"), &cf.inverse().expect("nonzero"));
    let b = g.mul_term(&l.div(lg).expect("lcm"), &cg.inverse().expect("nonzero"));
    &a - &b
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are processed by the normal strategy (smallest lcm first, ties by
/// lcm order then index), skipping pairs with coprime leading monomials and
/// pairs covered by the chain criterion.
pub fn buchberger(ctx: &Arc<RingContext>, gens: &[Polynomial]) -> GroebnerBasis {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();

    let add = |basis: &mut Vec<Polynomial>, pairs: &mut Vec<(usize, usize)>, p: Polynomial| {
        let j = basis.len();
        basis.push(p.monic());
        for i in 0..j {
            pairs.push((i, j));
        }
    };

    for g in gens {
        assert!(
            Arc::ptr_eq(g.ctx(), ctx) || **g.ctx() == **ctx,
            "generator from another ring"
        );
        let r = reduce_by(g, &basis);
        if !r.is_zero() {
            add(&mut basis, &mut pairs, r);
        }
    }

    let lm = |basis: &[Polynomial], i: usize| basis[i].leading_monomial().expect("nonzero").clone();

    while !pairs.is_empty() {
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, &(a, b)), (_, &(c, d))| {
                let l1 = lm(&basis, a).lcm(&lm(&basis, b));
                let l2 = lm(&basis, c).lcm(&lm(&basis, d));
                l1.cmp(&l2).then((a, b).cmp(&(c, d)))
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(k);
        done.insert((i, j));
        let (li, lj) = (lm(&basis, i), lm(&basis, j));
        if li.is_coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|t| {
            t != i && t != j && lm(&basis, t).divides(&l) && done.contains(&key(i, t)) && done.contains(&key(j, t))
        });
        if chain {
            continue;
        }
        let s = reduce_by(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !s.is_zero() {
            add(&mut basis, &mut pairs, s);
        }
    }

    // Minimalize: drop elements whose leading monomial is divisible by an
    // earlier-kept or another element's leading monomial.
    let mut keep: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let m = g.leading_monomial().expect("nonzero");
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let n = h.leading_monomial().expect("nonzero");
            j != i && n.divides(m) && (n != m || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    let reduced: Vec<Polynomial> = (0..keep.len())
        .map(|i| {
            let lead = Polynomial::from_sorted(ctx, vec![keep[i].leading_term().expect("nonzero").clone()]);
            let others: Vec<Polynomial> = keep
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let tail = &keep[i] - &lead;
            &lead + &reduce_by(&tail, &others)
        })
        .collect();
    GroebnerBasis {
        ctx: ctx.clone(),
        generators: reduced,
    }
}

/// The monomials outside the leading-term ideal, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardMonomials {
    basis: Vec<Monomial>,
    by_degree: Vec<Vec<usize>>,
}

impl StandardMonomials {
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Indices into [`basis`](Self::basis) grouped by total degree.
    pub fn by_degree(&self) -> &[Vec<usize>] {
        &self.by_degree
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.basis.binary_search(m).ok()
    }
}

/// Enumerates standard monomials, refusing infinite quotients and those
/// with more than `cap` elements.
pub fn standard_monomials(gb: &GroebnerBasis, cap: usize) -> Result<StandardMonomials, GroebnerError> {
    let n = gb.ctx.nvars();
    let leads: Vec<&Monomial> = gb.leading_monomials().collect();
    for v in 0..n {
        let has_power = leads.iter().any(|m| m.is_one() || m.pure_power_var() == Some(v));
        if !has_power {
            return Err(GroebnerError::NotArtinian {
                variable: gb.ctx.var_names()[v].clone(),
            });
        }
    }
    let standard = |m: &Monomial| !leads.iter().any(|l| l.divides(m));
    let one = Monomial::one(n);
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut queue = VecDeque::new();
    if standard(&one) {
        seen.insert(one.clone());
        queue.push_back(one);
    }
    while let Some(m) = queue.pop_front() {
        for v in 0..n {
            let next = m.mul(&Monomial::var(n, v));
            if !seen.contains(&next) && standard(&next) {
                if seen.len() >= cap {
                    return Err(GroebnerError::TooLarge { cap });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut basis: Vec<Monomial> = seen.into_iter().collect();
    basis.sort();
    let top = basis.last().map_or(0, |m| m.degree() as usize);
    let mut by_degree = vec![Vec::new(); if basis.is_empty() { 0 } else { top + 1 }];
    for (i, m) in basis.iter().enumerate() {
        by_degree[m.degree() as usize].push(i);
    }
    Ok(StandardMonomials { basis, by_degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;
    use crate::poly::parse_poly;

    fn setup(field: FieldSpec, vars: &[&str], gens: &[&str]) -> (Arc<RingContext>, GroebnerBasis) {
        let ctx = RingContext::new(field, vars.iter().copied()).unwrap();
        let polys: Vec<_> = gens.iter().map(|g| parse_poly(g, &ctx).unwrap()).collect();
        let gb = buchberger(&ctx, &polys);
        (ctx, gb)
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let f2 = FieldSpec::prime(2).unwrap();
        let (ctx, gb) = setup(f2, &["x", "y", "z"], &["x^2", "y^2", "z^2"]);
        let shown: Vec<String> = gb.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["x^2", "y^2", "z^2"]);
        let sm = standard_monomials(&gb, 100).unwrap();
        assert_eq!(sm.len(), 8);
        assert_eq!(sm.by_degree().iter().map(Vec::len).collect::<Vec<_>>(), [1, 3, 3, 1]);
        assert!(normal_form(&parse_poly("x^2", &ctx).unwrap(), &gb).is_zero());
    }

    #[test]
    fn redundant_and_non_artinian() {
        let (_, gb) = setup(FieldSpec::Rationals, &["x", "y"], &["x^2", "x*y", "y"]);
        let sm = standard_monomials(&gb, 100).unwrap();
        assert_eq!(sm.len(), 2);
        let (_, gb) = setup(FieldSpec::Rationals, &["x", "y"], &[]);
        assert_eq!(
            standard_monomials(&gb, 100),
            Err(GroebnerError::NotArtinian { variable: "x".into() })
        );
        let (_, gb) = setup(FieldSpec::Rationals, &["x", "y"], &["x^2"]);
        assert_eq!(
            standard_monomials(&gb, 100),
            Err(GroebnerError::NotArtinian { variable: "y".into() })
        );
    }

    #[test]
    fn non_monomial_input() {
        // x*y - 1 and y^2 - x: x = y^2, so y^3 = 1 and the quotient has length 3.
        let (ctx, gb) = setup(FieldSpec::Rationals, &["x", "y"], &["x*y - 1", "y^2 - x"]);
        assert_eq!(standard_monomials(&gb, 100).unwrap().len(), 3);
        assert!(gb.contains(&parse_poly("y^3 - 1", &ctx).unwrap()));
        let (_, unit) = setup(FieldSpec::Rationals, &["x"], &["x", "x - 1"]);
        assert!(unit.is_unit());
        assert_eq!(standard_monomials(&unit, 10).unwrap().len(), 0);
    }

    #[test]
    fn cap_is_enforced() {
        let (_, gb) = setup(FieldSpec::Rationals, &["x", "y"], &["x^10", "y^10"]);
        assert_eq!(standard_monomials(&gb, 50), Err(GroebnerError::TooLarge { cap: 50 }));
    }
}
