//! Concept lattices.
//!
//! [`ConceptLattice::build`] enumerates the concepts of a classification in
//! lectic order of their intents (NextClosure), so index 0 is always the top
//! concept and the last index the bottom. The lattice order is materialised
//! as a [`Relation`] and wrapped in a [`CompleteLattice`], which knows nothing
//! about extents or intents. [`AbstractConceptLattice`] pairs such a lattice
//! with instance and type embeddings; it is what the classification functor
//! consumes.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::classification::{numbered_labels, Classification, InstanceSet, TypeSet};
use crate::error::{Error, Result};
use crate::relalg::{FunctionGraph, Relation};

/// Default cap on the number of concepts [`ConceptLattice::build`] will
/// enumerate.
pub const CONCEPT_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalConcept {
    pub extent: InstanceSet,
    pub intent: TypeSet,
}

/// A finite lattice given by its order relation (`order.get(x, y)` iff
/// `x ≤ y`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteLattice {
    labels: Vec<String>,
    order: Relation,
    below: Relation,
    top: usize,
    bottom: usize,
}

impl CompleteLattice {
    /// Validates that `order` is a partial order in which every pair, and the
    /// empty set, has a meet and a join.
    pub fn new(labels: Vec<String>, order: Relation) -> Result<Self> {
        let n = labels.len();
        if order.shape() != (n, n) {
            return Err(Error::ShapeMismatch {
                op: "complete lattice",
                left: (n, n),
                right: order.shape(),
            });
        }
        if n == 0 {
            return Err(Error::NotALattice("no elements".into()));
        }
        if let Some(err) = order.preorder_violation() {
            return Err(Error::NotALattice(err.to_string()));
        }
        if !order.is_antisymmetric() {
            return Err(Error::NotALattice("order is not antisymmetric".into()));
        }
        let below = order.transpose();
        let mut lat = CompleteLattice { labels, order, below, top: 0, bottom: 0 };
        lat.top = lat
            .greatest_in(&BitSet::full(n))
            .ok_or_else(|| Error::NotALattice("no top element".into()))?;
        lat.bottom = lat
            .least_in(&BitSet::full(n))
            .ok_or_else(|| Error::NotALattice("no bottom element".into()))?;
        for x in 0..n {
            for y in x + 1..n {
                let lower = lat.down_set(x).intersection(&lat.down_set(y));
                if lat.greatest_in(&lower).is_none() {
                    return Err(Error::NotALattice(format!("no meet for ({x}, {y})")));
                }
                let upper = lat.up_set(x).intersection(&lat.up_set(y));
                if lat.least_in(&upper).is_none() {
                    return Err(Error::NotALattice(format!("no join for ({x}, {y})")));
                }
            }
        }
        Ok(lat)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Result<Self> {
        CompleteLattice::new(numbered_labels("", n), Relation::from_fn(n, n, |i, j| i <= j))
    }

    /// The powerset lattice of an `n`-element set, elements indexed by bitmask.
    pub fn boolean(n: usize) -> Result<Self> {
        let size = 1usize << n;
        CompleteLattice::new(numbered_labels("b", size), Relation::from_fn(size, size, |x, y| x & !y == 0))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn order(&self) -> &Relation {
        &self.order
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.order.get(x, y)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// `↑x`
    pub fn up_set(&self, x: usize) -> BitSet {
        self.order.row(x)
    }

    /// `↓x`
    pub fn down_set(&self, x: usize) -> BitSet {
        self.below.row(x)
    }

    fn greatest_in(&self, set: &BitSet) -> Option<usize> {
        set.iter().find(|&m| set.is_subset(&self.down_set(m)))
    }

    fn least_in(&self, set: &BitSet) -> Option<usize> {
        set.iter().find(|&m| set.is_subset(&self.up_set(m)))
    }

    /// Greatest lower bound of `set` (the top for the empty set).
    pub fn meet(&self, set: &BitSet) -> usize {
        let mut lower = BitSet::full(self.len());
        for x in set {
            lower.intersect_with(&self.down_set(x));
        }
        self.greatest_in(&lower).expect("validated lattice has all meets")
    }

    /// Least upper bound of `set` (the bottom for the empty set).
    pub fn join(&self, set: &BitSet) -> usize {
        let mut upper = BitSet::full(self.len());
        for x in set {
            upper.intersect_with(&self.up_set(x));
        }
        self.least_in(&upper).expect("validated lattice has all joins")
    }

    pub fn meet_of<I: IntoIterator<Item = usize>>(&self, elems: I) -> usize {
        self.meet(&BitSet::from_indices(self.len(), elems))
    }

    pub fn join_of<I: IntoIterator<Item = usize>>(&self, elems: I) -> usize {
        self.join(&BitSet::from_indices(self.len(), elems))
    }

    /// `x` is not the meet of the elements strictly above it.
    pub fn is_meet_irreducible(&self, x: usize) -> bool {
        let mut above = self.up_set(x);
        above.remove(x);
        self.meet(&above) != x
    }

    pub fn is_join_irreducible(&self, x: usize) -> bool {
        let mut below = self.down_set(x);
        below.remove(x);
        self.join(&below) != x
    }

    /// Cover relation: `x ⋖ y` iff `x < y` with nothing strictly between.
    pub fn covers(&self) -> Relation {
        let n = self.len();
        Relation::from_fn(n, n, |x, y| {
            x != y
                && self.leq(x, y)
                && !(0..n).any(|z| z != x && z != y && self.leq(x, z) && self.leq(z, y))
        })
    }

    /// The same lattice with elements renumbered: new element `i` is old
    /// element `old_of[i]`.
    pub fn permuted(&self, old_of: &[usize]) -> CompleteLattice {
        let labels = old_of.iter().map(|&o| self.labels[o].clone()).collect();
        CompleteLattice::new(labels, self.order.reindex(old_of, old_of)).expect("permutation of a lattice")
    }

    /// Checks that `map` is monotone from `self` into `target`.
    pub fn is_monotone(&self, map: &[usize], target: &CompleteLattice) -> bool {
        (0..self.len()).all(|x| {
            self.up_set(x)
                .iter()
                .all(|y| target.leq(map[x], map[y]))
        })
    }
}

/// Concepts of a classification together with order, embeddings and the
/// embedding relations.
#[derive(Clone, Debug)]
pub struct ConceptLattice {
    context: Classification,
    concepts: Vec<FormalConcept>,
    lattice: Arc<CompleteLattice>,
    iota: FunctionGraph,
    tau: FunctionGraph,
    iota_rel: Relation,
    tau_rel: Relation,
    by_extent: HashMap<InstanceSet, usize>,
}

impl PartialEq for ConceptLattice {
    fn eq(&self, other: &Self) -> bool {
        self.context == other.context && self.concepts == other.concepts
    }
}

/// Next intent after `current` in lectic order, or `None` when `current` is
/// the last one.
fn next_intent(k: &Classification, current: &TypeSet) -> Option<TypeSet> {
    let m = k.num_types();
    let mut prefix = current.clone();
    for i in (0..m).rev() {
        if prefix.contains(i) {
            prefix.remove(i);
            continue;
        }
        let mut cand = prefix.clone();
        cand.insert(i);
        let closed = k.close_intent(&cand).expect("shape");
        // Lectically next iff closing adds nothing below i.
        if closed.iter().take_while(|&j| j < i).all(|j| prefix.contains(j)) {
            return Some(closed);
        }
    }
    None
}

impl ConceptLattice {
    pub fn build(k: &Classification) -> Result<Self> {
        Self::build_with_cap(k, CONCEPT_CAP)
    }

    pub fn build_with_cap(k: &Classification, cap: usize) -> Result<Self> {
        let mut concepts = Vec::new();
        let mut intent = k.close_intent(&BitSet::new(k.num_types()))?;
        loop {
            if concepts.len() == cap {
                return Err(Error::ConceptCap { cap });
            }
            let extent = k.extent_of(&intent)?;
            concepts.push(FormalConcept { extent, intent: intent.clone() });
            match next_intent(k, &intent) {
                Some(next) => intent = next,
                None => break,
            }
        }
        Ok(Self::from_concepts(k, concepts))
    }

    fn from_concepts(k: &Classification, concepts: Vec<FormalConcept>) -> Self {
        let n = concepts.len();
        let order = Relation::from_fn(n, n, |x, y| concepts[x].extent.is_subset(&concepts[y].extent));
        let lattice = Arc::new(CompleteLattice::new(numbered_labels("c", n), order).expect("concepts form a lattice"));
        let by_extent: HashMap<_, _> = concepts.iter().enumerate().map(|(i, c)| (c.extent.clone(), i)).collect();
        let lookup = |ext: &InstanceSet| by_extent[ext];
        let iota = (0..k.num_instances())
            .map(|a| lookup(&k.close_extent(&BitSet::from_indices(k.num_instances(), [a])).unwrap()))
            .collect();
        let tau = (0..k.num_types()).map(|t| lookup(&k.type_extent(t))).collect();
        let iota_rel = Relation::from_fn(k.num_instances(), n, |a, c| concepts[c].extent.contains(a));
        let tau_rel = Relation::from_fn(n, k.num_types(), |c, t| concepts[c].intent.contains(t));
        ConceptLattice {
            context: k.clone(),
            iota: FunctionGraph::new(iota, n).unwrap(),
            tau: FunctionGraph::new(tau, n).unwrap(),
            iota_rel,
            tau_rel,
            concepts,
            lattice,
            by_extent,
        }
    }

    /// Exhaustive oracle: close every instance subset. Exponential in the
    /// instance count; meant for tests on small contexts.
    pub fn brute_force_concepts(k: &Classification) -> Vec<FormalConcept> {
        let n = k.num_instances();
        assert!(n < 24, "brute force over 2^{n} subsets");
        let mut seen: Vec<FormalConcept> = Vec::new();
        for mask in 0u32..1 << n {
            let a = BitSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
            let intent = k.intent_of(&a).unwrap();
            let extent = k.extent_of(&intent).unwrap();
            let c = FormalConcept { extent, intent };
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        seen
    }

    pub fn classification(&self) -> &Classification {
        &self.context
    }

    pub fn concepts(&self) -> &[FormalConcept] {
        &self.concepts
    }

    pub fn concept(&self, i: usize) -> &FormalConcept {
        &self.concepts[i]
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn lattice(&self) -> &Arc<CompleteLattice> {
        &self.lattice
    }

    pub fn order(&self) -> &Relation {
        self.lattice.order()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.lattice.leq(x, y)
    }

    pub fn top(&self) -> usize {
        0
    }

    pub fn bottom(&self) -> usize {
        self.concepts.len() - 1
    }

    /// Instance embedding `inst → L`.
    pub fn iota(&self) -> &FunctionGraph {
        &self.iota
    }

    /// Type embedding `typ → L`.
    pub fn tau(&self) -> &FunctionGraph {
        &self.tau
    }

    /// `a ι c` iff `a ∈ ext(c)`; shape `inst × L`.
    pub fn iota_rel(&self) -> &Relation {
        &self.iota_rel
    }

    /// `c τ α` iff `α ∈ int(c)`; shape `L × typ`.
    pub fn tau_rel(&self) -> &Relation {
        &self.tau_rel
    }

    pub fn index_of_extent(&self, extent: &InstanceSet) -> Option<usize> {
        self.by_extent.get(extent).copied()
    }

    /// Index of the concept whose intent is `intent`, if it is closed.
    pub fn index_of_intent(&self, intent: &TypeSet) -> Option<usize> {
        let ext = self.context.extent_of(intent).ok()?;
        self.index_of_extent(&ext).filter(|&i| &self.concepts[i].intent == intent)
    }

    pub fn index_of(&self, c: &FormalConcept) -> Result<usize> {
        self.index_of_extent(&c.extent)
            .filter(|&i| self.concepts[i].intent == c.intent)
            .ok_or_else(|| Error::ForeignConcept(c.extent.to_string()))
    }

    /// Index of the concept generated by an arbitrary instance set.
    pub fn concept_of_instances(&self, set: &InstanceSet) -> usize {
        self.by_extent[&self.context.close_extent(set).expect("shape")]
    }

    /// Index of the concept generated by an arbitrary type set.
    pub fn concept_of_types(&self, set: &TypeSet) -> usize {
        self.by_extent[&self.context.extent_of(set).expect("shape")]
    }

    /// Meet by the extent-intersection formula.
    pub fn meet(&self, concepts: &[FormalConcept]) -> Result<FormalConcept> {
        let mut extent = BitSet::full(self.context.num_instances());
        for c in concepts {
            self.index_of(c)?;
            extent.intersect_with(&c.extent);
        }
        let intent = self.context.intent_of(&extent)?;
        Ok(FormalConcept { extent, intent })
    }

    /// Join by the intent-intersection formula.
    pub fn join(&self, concepts: &[FormalConcept]) -> Result<FormalConcept> {
        let mut intent = BitSet::full(self.context.num_types());
        for c in concepts {
            self.index_of(c)?;
            intent.intersect_with(&c.intent);
        }
        let extent = self.context.extent_of(&intent)?;
        Ok(FormalConcept { extent, intent })
    }

    pub fn instance_concept(&self, label: &str) -> Result<&FormalConcept> {
        let a = self.context.instance_index(label)?;
        Ok(&self.concepts[self.iota.apply(a)])
    }

    pub fn type_concept(&self, label: &str) -> Result<&FormalConcept> {
        let t = self.context.type_index(label)?;
        Ok(&self.concepts[self.tau.apply(t)])
    }

    /// `⊨ == ι ∘ ≤ ∘ τᵀ` against an arbitrary incidence of the right shape.
    pub fn decomposes(&self, incidence: &Relation) -> bool {
        let composed = self
            .iota
            .to_relation()
            .compose(self.order())
            .and_then(|r| r.compose(&self.tau.to_relation().transpose()));
        matches!(composed, Ok(r) if &r == incidence)
    }

    /// The lattice stripped of its generating classification.
    pub fn to_abstract(&self) -> AbstractConceptLattice {
        AbstractConceptLattice {
            lattice: self.lattice.clone(),
            instance_labels: self.context.instances().to_vec(),
            type_labels: self.context.types().to_vec(),
            iota: self.iota.clone(),
            tau: self.tau.clone(),
        }
    }

    /// `(ι_rel, τ_rel)`, the collective concept indexed by the lattice itself.
    pub fn basic_collective(&self) -> CollectiveConcept {
        CollectiveConcept {
            extents: self.iota_rel.clone(),
            intents: self.tau_rel.clone(),
        }
    }

    /// Mediating function `X → L` of an `X`-indexed collective concept:
    /// `x ↦ (column x of extents, row x of intents)`.
    pub fn mediating_function(&self, c: &CollectiveConcept) -> Result<FunctionGraph> {
        if !c.is_collective_concept(&self.context) {
            return Err(Error::NotACollectiveConcept);
        }
        let map = (0..c.index_len())
            .map(|x| {
                let concept = FormalConcept { extent: c.extents.col(x), intent: c.intents.row(x) };
                self.index_of(&concept)
            })
            .collect::<Result<Vec<_>>>()?;
        FunctionGraph::new(map, self.len())
    }

    /// `(ι ∘ fᵀ, f ∘ τ)` for `f: X → L`.
    pub fn collective_from_function(&self, f: &FunctionGraph) -> Result<CollectiveConcept> {
        let fr = f.to_relation();
        Ok(CollectiveConcept {
            extents: self.iota_rel.compose(&fr.transpose())?,
            intents: fr.compose(&self.tau_rel)?,
        })
    }
}

/// An indexed family of concepts as a pair of relations: `extents` is
/// `inst × X` (column `x` an extent), `intents` is `X × typ` (row `x` the
/// matching intent).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectiveConcept {
    pub extents: Relation,
    pub intents: Relation,
}

/// Which adjoint of `⟨φ_r, ψ_r⟩` to apply in [`CollectiveConcept::transport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transport {
    /// `φ_r`: `X`-indexed to `Y`-indexed, for `r: X → Y`.
    Left,
    /// `ψ_r`: `Y`-indexed to `X`-indexed, for `r: X → Y`.
    Right,
}

impl CollectiveConcept {
    pub fn index_len(&self) -> usize {
        self.extents.cols()
    }

    /// Both closure conditions `a = K/α` and `α = a\K`, with compatible shapes.
    pub fn is_collective_concept(&self, k: &Classification) -> bool {
        let inc = k.incidence();
        if self.extents.rows() != inc.rows()
            || self.intents.cols() != inc.cols()
            || self.extents.cols() != self.intents.rows()
        {
            return false;
        }
        inc.right_residual(&self.intents).ok().as_ref() == Some(&self.extents)
            && self.extents.left_residual(inc).ok().as_ref() == Some(&self.intents)
    }

    /// Order by extent inclusion (reverse intent inclusion).
    pub fn leq(&self, other: &CollectiveConcept) -> Result<bool> {
        self.extents.is_subset(&other.extents)
    }

    /// Moves a collective concept along an index relation `r: X → Y`.
    ///
    /// `Left` takes an `X`-indexed `(b, β)` to `(K/((b∘r)\K), r\β)`; `Right`
    /// takes a `Y`-indexed `(a, α)` to `(a/r, (K/(r∘α))\K)`. The two are
    /// adjoint with respect to [`CollectiveConcept::leq`].
    pub fn transport(&self, k: &Classification, r: &Relation, dir: Transport) -> Result<CollectiveConcept> {
        let inc = k.incidence();
        match dir {
            Transport::Left => {
                let br = self.extents.compose(r)?;
                Ok(CollectiveConcept {
                    extents: inc.right_residual(&br.left_residual(inc)?)?,
                    intents: r.left_residual(&self.intents)?,
                })
            }
            Transport::Right => {
                let ra = r.compose(&self.intents)?;
                Ok(CollectiveConcept {
                    extents: self.extents.right_residual(r)?,
                    intents: inc.right_residual(&ra)?.left_residual(inc)?,
                })
            }
        }
    }
}

/// A complete lattice with join-dense instance embedding and meet-dense type
/// embedding, independent of any classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractConceptLattice {
    lattice: Arc<CompleteLattice>,
    instance_labels: Vec<String>,
    type_labels: Vec<String>,
    iota: FunctionGraph,
    tau: FunctionGraph,
}

impl AbstractConceptLattice {
    pub fn new(
        lattice: Arc<CompleteLattice>,
        instance_labels: Vec<String>,
        type_labels: Vec<String>,
        iota: FunctionGraph,
        tau: FunctionGraph,
    ) -> Result<Self> {
        if iota.domain() != instance_labels.len() || iota.codomain() != lattice.len() {
            return Err(Error::ShapeMismatch {
                op: "instance embedding",
                left: (instance_labels.len(), lattice.len()),
                right: (iota.domain(), iota.codomain()),
            });
        }
        if tau.domain() != type_labels.len() || tau.codomain() != lattice.len() {
            return Err(Error::ShapeMismatch {
                op: "type embedding",
                left: (type_labels.len(), lattice.len()),
                right: (tau.domain(), tau.codomain()),
            });
        }
        let l = AbstractConceptLattice { lattice, instance_labels, type_labels, iota, tau };
        if let Some(x) = (0..l.len()).find(|&x| l.lattice.join_of(l.instances_below(x).iter().map(|a| l.iota.apply(a))) != x) {
            return Err(Error::NotALattice(format!("instance embedding is not join-dense at {x}")));
        }
        if let Some(x) = (0..l.len()).find(|&x| l.lattice.meet_of(l.types_above(x).iter().map(|t| l.tau.apply(t))) != x) {
            return Err(Error::NotALattice(format!("type embedding is not meet-dense at {x}")));
        }
        Ok(l)
    }

    pub fn lattice(&self) -> &Arc<CompleteLattice> {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn instance_labels(&self) -> &[String] {
        &self.instance_labels
    }

    pub fn type_labels(&self) -> &[String] {
        &self.type_labels
    }

    pub fn iota(&self) -> &FunctionGraph {
        &self.iota
    }

    pub fn tau(&self) -> &FunctionGraph {
        &self.tau
    }

    /// `{a | ι(a) ≤ x}`
    pub fn instances_below(&self, x: usize) -> BitSet {
        BitSet::from_indices(
            self.instance_labels.len(),
            (0..self.instance_labels.len()).filter(|&a| self.lattice.leq(self.iota.apply(a), x)),
        )
    }

    /// `{α | x ≤ τ(α)}`
    pub fn types_above(&self, x: usize) -> BitSet {
        BitSet::from_indices(
            self.type_labels.len(),
            (0..self.type_labels.len()).filter(|&t| self.lattice.leq(x, self.tau.apply(t))),
        )
    }

    /// Renumbers lattice elements: new element `i` is old element `old_of[i]`.
    pub fn permuted(&self, old_of: &[usize]) -> AbstractConceptLattice {
        let mut new_of = vec![0; old_of.len()];
        for (i, &o) in old_of.iter().enumerate() {
            new_of[o] = i;
        }
        let remap = |f: &FunctionGraph| {
            FunctionGraph::new(f.as_slice().iter().map(|&x| new_of[x]).collect(), old_of.len()).unwrap()
        };
        AbstractConceptLattice {
            lattice: Arc::new(self.lattice.permuted(old_of)),
            instance_labels: self.instance_labels.clone(),
            type_labels: self.type_labels.clone(),
            iota: remap(&self.iota),
            tau: remap(&self.tau),
        }
    }
}
