//! Subgroup closure, commutators, and the derived, lower central and lower
//! Fitting series.

use super::group::{Elem, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// Smallest subgroup containing `gens`.
pub fn subgroup_closure(g: &FiniteGroup, gens: &[Elem]) -> Subgroup {
    let mut mask = vec![false; g.order()];
    mask[g.identity() as usize] = true;
    let mut members = vec![g.identity()];
    let mut kept: Vec<Elem> = Vec::new();
    for &s in gens {
        if mask[s as usize] {
            continue;
        }
        kept.push(s);
        // grow from every current member; finite, so products suffice
        let mut frontier = members.clone();
        while let Some(x) = frontier.pop() {
            for &t in &kept {
                for y in [g.mul(x, t), g.mul(t, x)] {
                    if !mask[y as usize] {
                        mask[y as usize] = true;
                        members.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
    }
    Subgroup::from_mask(&mask)
}

/// `<[a, b] : a ∈ A, b ∈ B>`.
pub fn commutator_subgroup(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut seen = vec![false; g.order()];
    let mut gens = Vec::new();
    for &x in a.members() {
        for &y in b.members() {
            let c = g.commutator(x, y);
            if !seen[c as usize] {
                seen[c as usize] = true;
                gens.push(c);
            }
        }
    }
    subgroup_closure(g, &gens)
}

/// `H, [H, H], …` up to the first repeated term.
pub fn derived_series_of(g: &FiniteGroup, h: &Subgroup) -> Vec<Subgroup> {
    let mut series = vec![h.clone()];
    loop {
        let last = series.last().expect("nonempty");
        let next = commutator_subgroup(g, last, last);
        if next == *last {
            return series;
        }
        series.push(next);
    }
}

pub fn derived_series(g: &FiniteGroup) -> Vec<Subgroup> {
    derived_series_of(g, &Subgroup::whole(g))
}

/// `H, [H, H], [[H, H], H], …` up to the first repeated term.
pub fn lower_central_series_of(g: &FiniteGroup, h: &Subgroup) -> Vec<Subgroup> {
    let mut series = vec![h.clone()];
    loop {
        let last = series.last().expect("nonempty");
        let next = commutator_subgroup(g, last, h);
        if next == *last {
            return series;
        }
        series.push(next);
    }
}

pub fn lower_central_series(g: &FiniteGroup) -> Vec<Subgroup> {
    lower_central_series_of(g, &Subgroup::whole(g))
}

pub fn is_solvable_subgroup(g: &FiniteGroup, h: &Subgroup) -> bool {
    derived_series_of(g, h).last().expect("nonempty").is_trivial()
}

pub fn is_solvable(g: &FiniteGroup) -> bool {
    is_solvable_subgroup(g, &Subgroup::whole(g))
}

pub fn is_nilpotent_subgroup(g: &FiniteGroup, h: &Subgroup) -> bool {
    lower_central_series_of(g, h).last().expect("nonempty").is_trivial()
}

pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    is_nilpotent_subgroup(g, &Subgroup::whole(g))
}

/// Number of nontrivial steps of the derived series; errors if not solvable.
pub fn derived_length(g: &FiniteGroup) -> Result<usize> {
    let s = derived_series(g);
    if !s.last().expect("nonempty").is_trivial() {
        return Err(Error::Group("group is not solvable".into()));
    }
    Ok(s.len() - 1)
}

/// Stable term of the lower central series of `h`.
pub fn nilpotent_residual_of(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    if !is_solvable_subgroup(g, h) {
        return Err(Error::Group("nilpotent residual needs a solvable group".into()));
    }
    Ok(lower_central_series_of(g, h).pop().expect("nonempty"))
}

pub fn nilpotent_residual(g: &FiniteGroup) -> Result<Subgroup> {
    nilpotent_residual_of(g, &Subgroup::whole(g))
}

/// `G = F_0 > F_1 > … > F_h = 1`, each term the nilpotent residual of the
/// previous one.
pub fn lower_fitting_series(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let mut series = vec![Subgroup::whole(g)];
    while !series.last().expect("nonempty").is_trivial() {
        let next = nilpotent_residual_of(g, series.last().expect("nonempty"))?;
        series.push(next);
    }
    Ok(series)
}

pub fn fitting_height(g: &FiniteGroup) -> Result<usize> {
    Ok(lower_fitting_series(g)?.len() - 1)
}
