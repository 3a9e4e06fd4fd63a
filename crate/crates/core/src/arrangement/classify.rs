use std::collections::BTreeMap;

use serde::Serialize;

use super::poset::Poset;
use crate::error::{Error, Result};

/// `⌊m/2⌋ = n - d - 1`: blowing up the stratum keeps the cover crepant.
pub fn admissible(dim: usize, mult: usize, n: usize) -> bool {
    n.checked_sub(dim + 1) == Some(mult / 2)
}

/// An incidence vector and how many strata of the type carry it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceVariant {
    pub incidence: Vec<usize>,
    pub count: usize,
}

/// One `(dim, mult)` type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeRow {
    pub label: String,
    pub dim: usize,
    pub mult: usize,
    pub count: usize,
    /// Every stratum of the type is near-pencil.
    pub near_pencil: bool,
    pub near_pencil_count: usize,
    pub admissible: bool,
    /// Number of strata of each positive-dimensional type containing a
    /// stratum of this type (the most frequent vector if they differ).
    pub incidence: Vec<usize>,
    /// All incidence vectors, present only when strata of the type disagree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub incidence_variants: Option<Vec<IncidenceVariant>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub ambient_dim: usize,
    pub hyperplanes: usize,
    /// Labels of the incidence columns.
    pub columns: Vec<String>,
    pub types: Vec<TypeRow>,
    pub resolvable: bool,
}

impl Classification {
    pub fn row(&self, dim: usize, mult: usize) -> Option<&TypeRow> {
        self.types.iter().find(|t| t.dim == dim && t.mult == mult)
    }

    pub fn total(&self) -> usize {
        self.types.iter().map(|t| t.count).sum()
    }

    /// Header and one line per type.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("type,dim,mult,count,near_pencil,near_pencil_count,admissible");
        for c in &self.columns {
            s.push_str(&format!(",N_{c}"));
        }
        s.push('\n');
        for t in &self.types {
            s.push_str(&format!(
                "{},{},{},{},{},{},{}",
                t.label, t.dim, t.mult, t.count, t.near_pencil, t.near_pencil_count, t.admissible
            ));
            for v in &t.incidence {
                s.push_str(&format!(",{v}"));
            }
            s.push('\n');
        }
        s
    }
}

/// Type labels `T1, T2, …` in poset order (dimension descending, then
/// multiplicity ascending).
fn type_labels<E>(poset: &Poset<E>) -> Vec<(usize, usize)> {
    let mut kinds: Vec<(usize, usize)> = poset.strata().iter().map(|s| s.kind()).collect();
    kinds.dedup();
    kinds
}

fn label_of(kinds: &[(usize, usize)], kind: (usize, usize)) -> String {
    format!("T{}", kinds.iter().position(|&k| k == kind).expect("known type") + 1)
}

/// Incidence vector of every stratum against the positive-dimensional types.
fn incidences<E>(poset: &Poset<E>, columns: &[(usize, usize)]) -> Vec<Vec<usize>> {
    (0..poset.len())
        .map(|i| {
            columns
                .iter()
                .map(|&col| poset.above(i).iter().filter(|&&j| poset.strata()[j].kind() == col).count())
                .collect()
        })
        .collect()
}

pub fn classify<E>(poset: &Poset<E>) -> Classification {
    let n = poset.ambient_dim();
    let kinds = type_labels(poset);
    let columns: Vec<(usize, usize)> = kinds.iter().copied().filter(|&(d, _)| d >= 1).collect();
    let inc = incidences(poset, &columns);
    let types = kinds
        .iter()
        .enumerate()
        .map(|(k, &(dim, mult))| {
            let members: Vec<usize> = (0..poset.len()).filter(|&i| poset.strata()[i].kind() == (dim, mult)).collect();
            let near_pencil_count = members.iter().filter(|&&i| poset.strata()[i].near_pencil).count();
            let mut tally: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
            for &i in &members {
                *tally.entry(&inc[i]).or_default() += 1;
            }
            let mut variants: Vec<IncidenceVariant> =
                tally.into_iter().map(|(v, c)| IncidenceVariant { incidence: v.clone(), count: c }).collect();
            variants.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.incidence.cmp(&b.incidence)));
            TypeRow {
                label: format!("T{}", k + 1),
                dim,
                mult,
                count: members.len(),
                near_pencil: near_pencil_count == members.len(),
                near_pencil_count,
                admissible: admissible(dim, mult, n),
                incidence: variants[0].incidence.clone(),
                incidence_variants: (variants.len() > 1).then_some(variants),
            }
        })
        .collect();
    Classification {
        ambient_dim: n,
        hyperplanes: poset.hyperplane_count(),
        columns: columns.iter().map(|&c| label_of(&kinds, c)).collect(),
        types,
        resolvable: crepant_resolvable(poset).resolvable,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Resolvability {
    pub resolvable: bool,
    /// Strata that are neither near-pencil nor admissible.
    pub violations: Vec<usize>,
}

/// Every stratum must be near-pencil or admissible.
pub fn crepant_resolvable<E>(poset: &Poset<E>) -> Resolvability {
    let n = poset.ambient_dim();
    let violations: Vec<usize> = poset
        .strata()
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.near_pencil && !admissible(s.dim, s.multiplicity(), n))
        .map(|(i, _)| i)
        .collect();
    Resolvability { resolvable: violations.is_empty(), violations }
}

/// A blow-up center and its effect on the branch divisor
/// `D* = σ*D - 2⌊m/2⌋E`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowUp {
    pub stratum: usize,
    pub label: String,
    pub dim: usize,
    pub mult: usize,
    pub hyperplanes: Vec<usize>,
    /// The exceptional divisor joins the branch locus (`m` odd).
    pub adds_exceptional: bool,
}

/// Non-near-pencil strata by ascending dimension, ties broken by the
/// lexicographic order of their echelon bases.
pub fn resolution_schedule<E: Ord>(poset: &Poset<E>) -> Result<Vec<BlowUp>> {
    let check = crepant_resolvable(poset);
    if !check.resolvable {
        return Err(Error::NotResolvable(check.violations.len()));
    }
    let kinds = type_labels(poset);
    let strata = poset.strata();
    let mut centers: Vec<usize> = (0..strata.len()).filter(|&i| !strata[i].near_pencil).collect();
    centers.sort_by(|&a, &b| strata[a].dim.cmp(&strata[b].dim).then_with(|| strata[a].basis.cmp(&strata[b].basis)));
    Ok(centers
        .into_iter()
        .map(|i| {
            let s = &strata[i];
            BlowUp {
                stratum: i,
                label: label_of(&kinds, s.kind()),
                dim: s.dim,
                mult: s.multiplicity(),
                hyperplanes: s.hyperplanes.clone(),
                adds_exceptional: s.multiplicity() % 2 == 1,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RationalField;
    use crate::arrangement::{bundled, intersection_poset, Arrangement};

    fn poset(n: usize, forms: Vec<Vec<i64>>) -> Poset<num_rational::BigRational> {
        intersection_poset(&RationalField, &Arrangement::new(n, forms).unwrap())
    }

    #[test]
    fn admissibility_examples() {
        assert!(admissible(0, 2, 2));
        assert!(admissible(3, 2, 5));
        assert!(admissible(0, 9, 5));
        assert!(!admissible(0, 4, 2));
        assert!(!admissible(4, 2, 5));
    }

    #[test]
    fn small_resolvability() {
        let four = poset(2, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![1, -1, 0]]);
        let r = crepant_resolvable(&four);
        assert!(!r.resolvable);
        assert_eq!(r.violations, vec![0]);
        assert_eq!(resolution_schedule(&four), Err(Error::NotResolvable(1)));

        let two = poset(2, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        assert!(crepant_resolvable(&two).resolvable);

        let triangle = poset(2, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let s = resolution_schedule(&triangle).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|b| b.dim == 0 && b.mult == 2 && !b.adds_exceptional));

        let pencil = poset(2, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]);
        assert!(crepant_resolvable(&pencil).resolvable);
    }

    #[test]
    fn pencil_point_in_p3() {
        // three planes through a line: d = 1, m = 3, ⌊3/2⌋ = 1 = 3 - 1 - 1
        let p = poset(3, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 1, 0, 0]]);
        let s = resolution_schedule(&p).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].adds_exceptional);
    }

    #[test]
    fn ahlgren_types() {
        let c = classify(&intersection_poset(&RationalField, &bundled::ahlgren()));
        let counts: Vec<usize> = c.types.iter().map(|t| t.count).collect();
        assert_eq!(counts, vec![66, 148, 18, 117, 36, 18, 12, 18, 12, 3, 4]);
        let kinds: Vec<(usize, usize)> = c.types.iter().map(|t| (t.dim, t.mult)).collect();
        assert_eq!(
            kinds,
            vec![(3, 2), (2, 3), (2, 4), (1, 4), (1, 5), (1, 6), (0, 5), (0, 6), (0, 7), (0, 8), (0, 9)]
        );
        let near: Vec<&str> = c.types.iter().filter(|t| t.near_pencil).map(|t| t.label.as_str()).collect();
        assert_eq!(near, ["T2", "T4", "T5", "T7", "T8", "T9"]);
        let adm: Vec<&str> = c.types.iter().filter(|t| t.admissible).map(|t| t.label.as_str()).collect();
        assert_eq!(adm, ["T1", "T3", "T6", "T10", "T11"]);
        assert!(c.types.iter().all(|t| t.near_pencil_count == 0 || t.near_pencil));
        assert_eq!(c.columns, ["T1", "T2", "T3", "T4", "T5", "T6"]);
        assert!(c.resolvable);
        assert_eq!(c.total(), 452);
    }

    #[test]
    fn ahlgren_schedule() {
        let p = intersection_poset(&RationalField, &bundled::ahlgren());
        let s = resolution_schedule(&p).unwrap();
        assert_eq!(s.len(), 66 + 18 + 18 + 3 + 4);
        assert!(s.windows(2).all(|w| w[0].dim <= w[1].dim));
        let by_dim = |d: usize| -> std::collections::BTreeSet<&str> {
            s.iter().filter(|b| b.dim == d).map(|b| b.label.as_str()).collect()
        };
        assert_eq!(by_dim(0), ["T10", "T11"].into());
        assert_eq!(by_dim(1), ["T6"].into());
        assert_eq!(by_dim(2), ["T3"].into());
        assert_eq!(by_dim(3), ["T1"].into());
        for b in &s {
            assert_eq!(b.adds_exceptional, b.mult % 2 == 1);
        }
        assert!(s.iter().filter(|b| b.label == "T10").all(|b| !b.adds_exceptional));
        assert!(s.iter().filter(|b| b.label == "T11").all(|b| b.adds_exceptional));
    }

    #[test]
    fn csv_shape() {
        let c = classify(&intersection_poset(&RationalField, &bundled::sextic()));
        let csv = c.to_csv();
        assert_eq!(csv.lines().count(), 1 + c.types.len());
        assert!(c.types.iter().all(|t| t.dim == 0));
    }
}
