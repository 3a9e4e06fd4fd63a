use std::collections::BTreeSet;

use rayon::prelude::*;

use super::Arrangement;
use crate::arith::{echelon, reduce_against, Field};

/// A flat of the arrangement lying on at least two hyperplanes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum<E> {
    /// Reduced row-echelon basis of the linear forms vanishing on the flat.
    pub basis: Vec<Vec<E>>,
    /// Projective dimension `n - rank`.
    pub dim: usize,
    /// Indices of the hyperplanes containing the flat, ascending.
    pub hyperplanes: Vec<usize>,
    pub near_pencil: bool,
}

impl<E> Stratum<E> {
    pub fn multiplicity(&self) -> usize {
        self.hyperplanes.len()
    }

    /// `(dim, mult)`, the grouping key of the classification.
    pub fn kind(&self) -> (usize, usize) {
        (self.dim, self.multiplicity())
    }

    /// Whether `self` is a proper subset of `other` as a point set.
    pub fn lies_in(&self, other: &Self) -> bool {
        other.hyperplanes.len() < self.hyperplanes.len() && is_subset(&other.hyperplanes, &self.hyperplanes)
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// All strata with their containment relation.
#[derive(Debug, Clone)]
pub struct Poset<E> {
    n: usize,
    hyperplanes: usize,
    strata: Vec<Stratum<E>>,
    above: Vec<Vec<usize>>,
}

impl<E> Poset<E> {
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Sorted by dimension descending, then multiplicity ascending, then
    /// containing hyperplane set.
    pub fn hyperplane_count(&self) -> usize {
        self.hyperplanes
    }

    pub fn strata(&self) -> &[Stratum<E>] {
        &self.strata
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    /// Indices of the strata properly containing stratum `i`.
    pub fn above(&self, i: usize) -> &[usize] {
        &self.above[i]
    }

    /// The hyperplane sets of all strata, for comparing posets across fields.
    pub fn hyperplane_sets(&self) -> BTreeSet<(usize, Vec<usize>)> {
        self.strata.iter().map(|s| (s.dim, s.hyperplanes.clone())).collect()
    }

    fn assemble(n: usize, hyperplanes: usize, mut strata: Vec<Stratum<E>>) -> Self {
        strata.sort_by(|a, b| {
            b.dim
                .cmp(&a.dim)
                .then(a.multiplicity().cmp(&b.multiplicity()))
                .then_with(|| a.hyperplanes.cmp(&b.hyperplanes))
        });
        let above: Vec<Vec<usize>> = (0..strata.len())
            .map(|i| (0..strata.len()).filter(|&j| strata[i].lies_in(&strata[j])).collect())
            .collect();
        for i in 0..strata.len() {
            let (d, m) = strata[i].kind();
            strata[i].near_pencil = above[i].iter().any(|&j| strata[j].kind() == (d + 1, m - 1));
        }
        Self { n, hyperplanes, strata, above }
    }
}

fn forms<F: Field>(field: &F, arr: &Arrangement) -> Vec<Vec<F::Elem>> {
    arr.hyperplanes().iter().map(|h| h.coeffs().iter().map(|&c| field.from_int(c)).collect()).collect()
}

fn stratum<F: Field>(field: &F, forms: &[Vec<F::Elem>], n: usize, basis: Vec<Vec<F::Elem>>) -> Stratum<F::Elem> {
    let hyperplanes = (0..forms.len())
        .filter(|&i| reduce_against(field, &basis, &forms[i]).iter().all(|x| field.is_zero(x)))
        .collect();
    Stratum { dim: n - basis.len(), basis, hyperplanes, near_pencil: false }
}

/// Intersection poset by breadth-first closure: start from pairwise
/// intersections and keep intersecting with further hyperplanes, deduplicating
/// flats by their echelon basis.
pub fn intersection_poset<F>(field: &F, arr: &Arrangement) -> Poset<F::Elem>
where
    F: Field + Sync,
    F::Elem: Send + Sync,
{
    let n = arr.dim();
    let forms = forms(field, arr);
    let count = forms.len();
    let mut seen: BTreeSet<Vec<Vec<F::Elem>>> = BTreeSet::new();
    let mut frontier: Vec<Vec<Vec<F::Elem>>> = Vec::new();
    for i in 0..count {
        for j in i + 1..count {
            let b = echelon(field, &[forms[i].clone(), forms[j].clone()]);
            if b.len() <= n && seen.insert(b.clone()) {
                frontier.push(b);
            }
        }
    }
    let mut all = frontier.clone();
    while !frontier.is_empty() {
        let candidates: Vec<Vec<Vec<F::Elem>>> = frontier
            .par_iter()
            .flat_map_iter(|b| {
                forms.iter().filter_map(move |f| {
                    if reduce_against(field, b, f).iter().all(|x| field.is_zero(x)) {
                        return None;
                    }
                    let mut rows = b.clone();
                    rows.push(f.clone());
                    let e = echelon(field, &rows);
                    (e.len() <= n).then_some(e)
                })
            })
            .collect();
        frontier = candidates.into_iter().filter(|b| seen.insert(b.clone())).collect();
        all.extend(frontier.iter().cloned());
    }
    let strata = all.into_par_iter().map(|b| stratum(field, &forms, n, b)).collect();
    Poset::assemble(n, forms.len(), strata)
}

/// Intersection poset from every subset of at least two hyperplanes.
///
/// # Panics
/// If the arrangement has more than 20 hyperplanes.
pub fn intersection_poset_by_subsets<F>(field: &F, arr: &Arrangement) -> Poset<F::Elem>
where
    F: Field + Sync,
    F::Elem: Send + Sync,
{
    let n = arr.dim();
    let forms = forms(field, arr);
    assert!(forms.len() <= 20, "subset enumeration limited to 20 hyperplanes");
    let bases: BTreeSet<Vec<Vec<F::Elem>>> = (0u32..1 << forms.len())
        .into_par_iter()
        .filter(|mask| mask.count_ones() >= 2)
        .filter_map(|mask| {
            let rows: Vec<Vec<F::Elem>> =
                (0..forms.len()).filter(|i| mask >> i & 1 == 1).map(|i| forms[i].clone()).collect();
            let e = echelon(field, &rows);
            (e.len() <= n).then_some(e)
        })
        .collect();
    let strata = bases.into_iter().map(|b| stratum(field, &forms, n, b)).collect();
    Poset::assemble(n, forms.len(), strata)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rank, PrimeField, RationalField};
    use crate::arrangement::bundled;
    use proptest::prelude::*;

    fn kinds<E>(p: &Poset<E>) -> Vec<(usize, usize)> {
        p.strata().iter().map(Stratum::kind).collect()
    }

    #[test]
    fn small_configurations() {
        let triangle = Arrangement::new(2, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(kinds(&intersection_poset(&RationalField, &triangle)), vec![(0, 2); 3]);
        let pencil = Arrangement::new(2, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]).unwrap();
        assert_eq!(kinds(&intersection_poset(&RationalField, &pencil)), vec![(0, 3)]);
        let lines = Arrangement::new(1, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(intersection_poset(&RationalField, &lines).is_empty());
    }

    #[test]
    fn ahlgren_census() {
        let p = intersection_poset(&RationalField, &bundled::ahlgren());
        assert_eq!(p.len(), 452);
        assert_eq!(p.hyperplane_sets(), intersection_poset_by_subsets(&RationalField, &bundled::ahlgren()).hyperplane_sets());
    }

    #[test]
    fn every_pair_lands_in_one_codim_two_flat() {
        for arr in [bundled::ahlgren(), bundled::octic(), bundled::sextic()] {
            let p = intersection_poset(&RationalField, &arr);
            let n = arr.dim();
            let pairs: usize = p
                .strata()
                .iter()
                .filter(|s| s.dim + 2 == n)
                .map(|s| s.multiplicity() * (s.multiplicity() - 1) / 2)
                .sum();
            assert_eq!(pairs, arr.len() * (arr.len() - 1) / 2);
        }
    }

    #[test]
    fn closure_complete() {
        let arr = bundled::octic();
        let p = intersection_poset(&RationalField, &arr);
        let f = forms(&RationalField, &arr);
        let keys: BTreeSet<_> = p.strata().iter().map(|s| s.basis.clone()).collect();
        for s in p.strata() {
            for h in &f {
                let mut rows = s.basis.clone();
                rows.push(h.clone());
                let e = echelon(&RationalField, &rows);
                assert!(e.len() > arr.dim() || keys.contains(&e));
            }
        }
    }

    #[test]
    fn bundled_posets_agree_mod_small_primes() {
        for arr in [bundled::ahlgren(), bundled::octic(), bundled::sextic()] {
            let q = intersection_poset(&RationalField, &arr).hyperplane_sets();
            for p in [3, 5, 7] {
                assert_eq!(intersection_poset(&PrimeField::new(p), &arr).hyperplane_sets(), q, "p={p}");
            }
        }
    }

    fn arrangement_strategy() -> impl Strategy<Value = Arrangement> {
        (2usize..=4).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec(-2i64..=2, n + 1), 2..=8).prop_filter_map(
                "distinct nonzero forms",
                move |forms| Arrangement::new(n, forms).ok(),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn closure_matches_subset_enumeration(arr in arrangement_strategy()) {
            let a = intersection_poset(&RationalField, &arr);
            let b = intersection_poset_by_subsets(&RationalField, &arr);
            prop_assert_eq!(a.hyperplane_sets(), b.hyperplane_sets());
            let f = forms(&RationalField, &arr);
            // same echelon basis iff the hyperplane sets have equal span
            for s in a.strata() {
                for t in a.strata() {
                    let rs: Vec<_> = s.hyperplanes.iter().map(|&i| f[i].clone()).collect();
                    let rt: Vec<_> = t.hyperplanes.iter().map(|&i| f[i].clone()).collect();
                    let joint: Vec<_> = rs.iter().chain(rt.iter()).cloned().collect();
                    let same_span = rank(&RationalField, &rs) == rank(&RationalField, &joint)
                        && rank(&RationalField, &rt) == rank(&RationalField, &joint);
                    prop_assert_eq!(same_span, s.basis == t.basis);
                }
            }
        }
    }
}
