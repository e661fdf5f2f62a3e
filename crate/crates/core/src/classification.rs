//! Classifications (formal contexts) and their derivation operators.

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::ConceptLattice;
use crate::relalg::Relation;

/// Subset of the instances of some classification.
pub type InstanceSet = BitSet;
/// Subset of the types of some classification.
pub type TypeSet = BitSet;

/// Largest label set accepted by [`Classification::powerset`].
pub const POWERSET_CAP: usize = 16;

/// A classification `⟨inst, typ, ⊨⟩`: labelled instances, labelled types and
/// an incidence relation `inst × typ`.
///
/// Labels are opaque and distinct within each list; all algebra runs on
/// indices. The concept lattice is computed on first use and cached.
#[derive(Clone)]
pub struct Classification {
    instances: Vec<String>,
    types: Vec<String>,
    incidence: Relation,
    by_type: Relation,
    lattice: OnceLock<Arc<ConceptLattice>>,
}

impl PartialEq for Classification {
    fn eq(&self, other: &Self) -> bool {
        self.instances == other.instances && self.types == other.types && self.incidence == other.incidence
    }
}

impl Eq for Classification {}

impl fmt::Debug for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Classification")
            .field("instances", &self.instances)
            .field("types", &self.types)
            .field("incidence", &self.incidence)
            .finish()
    }
}

fn check_distinct(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// Labels `prefix0, prefix1, ...`.
pub fn numbered_labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

impl Classification {
    pub fn new(instances: Vec<String>, types: Vec<String>, incidence: Relation) -> Result<Self> {
        if incidence.shape() != (instances.len(), types.len()) {
            return Err(Error::ShapeMismatch {
                op: "classification",
                left: (instances.len(), types.len()),
                right: incidence.shape(),
            });
        }
        check_distinct(&instances)?;
        check_distinct(&types)?;
        let by_type = incidence.transpose();
        Ok(Classification {
            instances,
            types,
            incidence,
            by_type,
            lattice: OnceLock::new(),
        })
    }

    /// Classification with generated labels `g0..` and `m0..`.
    pub fn unlabelled(incidence: Relation) -> Self {
        let (n, m) = incidence.shape();
        Classification::new(numbered_labels("g", n), numbered_labels("m", m), incidence)
            .expect("generated labels are distinct")
    }

    pub fn from_labels<S: AsRef<str>>(instances: &[S], types: &[S], incidence: Relation) -> Result<Self> {
        Classification::new(
            instances.iter().map(|s| s.as_ref().to_owned()).collect(),
            types.iter().map(|s| s.as_ref().to_owned()).collect(),
            incidence,
        )
    }

    pub fn instances(&self) -> &[String] {
        &self.instances
    }

    pub fn types(&self) -> &[String] {
        &self.types
    }

    pub fn incidence(&self) -> &Relation {
        &self.incidence
    }

    pub fn num_instances(&self) -> usize {
        self.instances.len()
    }

    pub fn num_types(&self) -> usize {
        self.types.len()
    }

    #[inline]
    pub fn classifies(&self, instance: usize, ty: usize) -> bool {
        self.incidence.get(instance, ty)
    }

    pub fn instance_index(&self, label: &str) -> Result<usize> {
        self.instances
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    pub fn type_index(&self, label: &str) -> Result<usize> {
        self.types
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    pub fn instance_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<InstanceSet> {
        let idx = labels.iter().map(|l| self.instance_index(l.as_ref())).collect::<Result<Vec<_>>>()?;
        Ok(BitSet::from_indices(self.num_instances(), idx))
    }

    pub fn type_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<TypeSet> {
        let idx = labels.iter().map(|l| self.type_index(l.as_ref())).collect::<Result<Vec<_>>>()?;
        Ok(BitSet::from_indices(self.num_types(), idx))
    }

    /// Types of a single instance, `a′`.
    pub fn instance_intent(&self, instance: usize) -> TypeSet {
        self.incidence.row(instance)
    }

    /// Instances of a single type, `α′`.
    pub fn type_extent(&self, ty: usize) -> InstanceSet {
        self.by_type.row(ty)
    }

    /// `A′`: the types shared by every instance in `set`.
    pub fn intent_of(&self, set: &InstanceSet) -> Result<TypeSet> {
        if set.len() != self.num_instances() {
            return Err(Error::ShapeMismatch {
                op: "intent_of",
                left: self.incidence.shape(),
                right: (set.len(), 1),
            });
        }
        let mut out = BitSet::full(self.num_types());
        for a in set {
            out.intersect_with(&self.incidence.row(a));
        }
        Ok(out)
    }

    /// `Γ′`: the instances having every type in `set`.
    pub fn extent_of(&self, set: &TypeSet) -> Result<InstanceSet> {
        if set.len() != self.num_types() {
            return Err(Error::ShapeMismatch {
                op: "extent_of",
                left: self.incidence.shape(),
                right: (1, set.len()),
            });
        }
        let mut out = BitSet::full(self.num_instances());
        for t in set {
            out.intersect_with(&self.by_type.row(t));
        }
        Ok(out)
    }

    pub fn close_extent(&self, set: &InstanceSet) -> Result<InstanceSet> {
        self.extent_of(&self.intent_of(set)?)
    }

    pub fn close_intent(&self, set: &TypeSet) -> Result<TypeSet> {
        self.intent_of(&self.extent_of(set)?)
    }

    pub fn is_extent(&self, set: &InstanceSet) -> Result<bool> {
        Ok(&self.close_extent(set)? == set)
    }

    pub fn is_intent(&self, set: &TypeSet) -> Result<bool> {
        Ok(&self.close_intent(set)? == set)
    }

    /// `K^∞`: instances and types swapped, incidence transposed.
    pub fn dual(&self) -> Classification {
        Classification {
            instances: self.types.clone(),
            types: self.instances.clone(),
            incidence: self.by_type.clone(),
            by_type: self.incidence.clone(),
            lattice: OnceLock::new(),
        }
    }

    /// The instance powerset classification `⟨S, ℘S, ∈⟩`.
    ///
    /// Types are the subsets of `S` ordered by their bitmask (bit `i` set when
    /// the `i`-th label is a member) and labelled `{x,y}`.
    pub fn powerset<S: AsRef<str>>(labels: &[S]) -> Result<Classification> {
        let n = labels.len();
        if n > POWERSET_CAP {
            return Err(Error::PowersetCap { size: n, cap: POWERSET_CAP });
        }
        let types = (0..1usize << n).map(|mask| subset_label(labels, mask)).collect();
        let incidence = Relation::from_fn(n, 1 << n, |i, mask| mask >> i & 1 == 1);
        Classification::new(labels.iter().map(|s| s.as_ref().to_owned()).collect(), types, incidence)
    }

    /// A preorder `⟨P, ≤⟩` read as the classification `⟨P, P, ≤⟩`.
    pub fn preorder<S: AsRef<str>>(labels: &[S], leq: &Relation) -> Result<Classification> {
        if leq.shape() != (labels.len(), labels.len()) {
            return Err(Error::ShapeMismatch {
                op: "preorder_as_classification",
                left: (labels.len(), labels.len()),
                right: leq.shape(),
            });
        }
        if let Some(err) = leq.preorder_violation() {
            return Err(err);
        }
        Classification::from_labels(labels, labels, leq.clone())
    }

    /// `a ≤ a′` iff `a′′ ⊆ a′` in intent terms: `intent(a) ⊇ intent(a′)`.
    /// Equals `⊨ / ⊨`.
    pub fn instance_preorder(&self) -> Relation {
        self.incidence.right_residual(&self.incidence).expect("square")
    }

    /// `α ≤ α′` iff `extent(α) ⊆ extent(α′)`. Equals `⊨ \ ⊨`.
    pub fn type_preorder(&self) -> Relation {
        self.incidence.left_residual(&self.incidence).expect("square")
    }

    /// The concept lattice, built on first call and cached.
    pub fn lattice(&self) -> Result<Arc<ConceptLattice>> {
        if let Some(l) = self.lattice.get() {
            return Ok(l.clone());
        }
        let built = Arc::new(ConceptLattice::build(self)?);
        Ok(self.lattice.get_or_init(|| built).clone())
    }

    /// Same classification with instances and types reordered; entry `i` of
    /// `instance_order` names the old index placed at position `i`.
    pub fn reorder(&self, instance_order: &[usize], type_order: &[usize]) -> Classification {
        Classification::new(
            instance_order.iter().map(|&i| self.instances[i].clone()).collect(),
            type_order.iter().map(|&t| self.types[t].clone()).collect(),
            self.incidence.reindex(instance_order, type_order),
        )
        .expect("permutation keeps labels distinct")
    }

    /// The `n`-chain `⟨n, n, ≤⟩` labelled `0..n`.
    pub fn chain(n: usize) -> Classification {
        let labels = numbered_labels("", n);
        Classification::preorder(&labels, &Relation::from_fn(n, n, |i, j| i <= j)).expect("chain order")
    }

    /// The antichain `⟨n, n, =⟩`.
    pub fn antichain(n: usize) -> Classification {
        let labels = numbered_labels("", n);
        Classification::preorder(&labels, &Relation::identity(n)).expect("discrete order")
    }

    /// The contranominal scale `⟨n, n, ≠⟩`.
    pub fn contranominal(n: usize) -> Classification {
        let labels = numbered_labels("", n);
        Classification::from_labels(&labels, &labels, Relation::from_fn(n, n, |i, j| i != j)).expect("labels")
    }
}

fn subset_label<S: AsRef<str>>(labels: &[S], mask: usize) -> String {
    let members: Vec<&str> = (0..labels.len()).filter(|i| mask >> i & 1 == 1).map(|i| labels[i].as_ref()).collect();
    format!("{{{}}}", members.join(","))
}
