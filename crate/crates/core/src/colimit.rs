//! Sums, products, apposition, subposition, fiber end objects and dual
//! quotients, plus a check that coproducts survive the passage to concept
//! lattices.

use std::sync::Arc;

use crate::bitset::BitSet;
use crate::classification::{Classification, InstanceSet};
use crate::error::{Error, Result};
use crate::functors::{c_morphism, cl_witness, l_morphism, l_object, ConceptLatticeMorphism};
use crate::infomorphism::{same, FunctionalInfomorphism};
use crate::relalg::{FunctionGraph, Relation};

fn tagged(tag: usize, labels: &[String]) -> impl Iterator<Item = String> + '_ {
    labels.iter().map(move |l| format!("{tag}:{l}"))
}

/// Two summands, an apex and the injections `summand ⇄ apex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoproductDiagram {
    pub summands: [Arc<Classification>; 2],
    pub apex: Arc<Classification>,
    pub injections: [FunctionalInfomorphism; 2],
}

/// Two factors, an apex and the projections `apex ⇄ factor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductDiagram {
    pub factors: [Arc<Classification>; 2],
    pub apex: Arc<Classification>,
    pub projections: [FunctionalInfomorphism; 2],
}

/// `A + B`: instances are pairs `(a,b)`, types the disjoint union tagged
/// `0:` and `1:`.
pub fn sum(a: &Arc<Classification>, b: &Arc<Classification>) -> Result<CoproductDiagram> {
    let (na, nb, ta) = (a.num_instances(), b.num_instances(), a.num_types());
    let instances = (0..na * nb)
        .map(|x| format!("({},{})", a.instances()[x / nb], b.instances()[x % nb]))
        .collect();
    let types = tagged(0, a.types()).chain(tagged(1, b.types())).collect();
    let incidence = Relation::from_fn(na * nb, ta + b.num_types(), |x, t| {
        if t < ta {
            a.classifies(x / nb, t)
        } else {
            b.classifies(x % nb, t - ta)
        }
    });
    let apex = Arc::new(Classification::new(instances, types, incidence)?);
    let inj_a = FunctionalInfomorphism::new(
        a.clone(),
        apex.clone(),
        FunctionGraph::new((0..na * nb).map(|x| x / nb).collect(), na)?,
        FunctionGraph::new((0..ta).collect(), apex.num_types())?,
    )?;
    let inj_b = FunctionalInfomorphism::new(
        b.clone(),
        apex.clone(),
        FunctionGraph::new((0..na * nb).map(|x| x % nb).collect(), nb)?,
        FunctionGraph::new((ta..ta + b.num_types()).collect(), apex.num_types())?,
    )?;
    Ok(CoproductDiagram { summands: [a.clone(), b.clone()], apex, injections: [inj_a, inj_b] })
}

impl CoproductDiagram {
    /// The mediating infomorphism `apex ⇄ C` for a cocone of legs
    /// `summand_k ⇄ C`: types by case split, each target instance sent to the
    /// apex instance projecting onto both leg images.
    pub fn mediator(&self, legs: [&FunctionalInfomorphism; 2]) -> Result<FunctionalInfomorphism> {
        let c = legs[0].target();
        for (leg, summand) in legs.iter().zip(&self.summands) {
            if !same(leg.source(), summand) || !same(leg.target(), c) {
                return Err(Error::EndpointMismatch("cocone"));
            }
        }
        let [i0, i1] = &self.injections;
        let f = (0..c.num_instances())
            .map(|ci| {
                (0..self.apex.num_instances())
                    .find(|&x| i0.f().apply(x) == legs[0].f().apply(ci) && i1.f().apply(x) == legs[1].f().apply(ci))
                    .ok_or(Error::EndpointMismatch("cocone instances"))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut g = vec![0; self.apex.num_types()];
        for k in 0..2 {
            for t in 0..self.summands[k].num_types() {
                g[self.injections[k].g().apply(t)] = legs[k].g().apply(t);
            }
        }
        FunctionalInfomorphism::new(
            self.apex.clone(),
            c.clone(),
            FunctionGraph::new(f, self.apex.num_instances())?,
            FunctionGraph::new(g, c.num_types())?,
        )
    }

    /// All infomorphisms `apex ⇄ C` making both triangles commute, by
    /// enumeration.
    pub fn mediators(&self, legs: [&FunctionalInfomorphism; 2], instance_identity: bool) -> Vec<FunctionalInfomorphism> {
        FunctionalInfomorphism::enumerate(&self.apex, legs[0].target(), instance_identity)
            .into_iter()
            .filter(|m| {
                (0..2).all(|k| self.injections[k].compose(m).as_ref() == Ok(legs[k]))
            })
            .collect()
    }
}

/// `A × B = (A^∞ + B^∞)^∞`.
pub fn product(a: &Arc<Classification>, b: &Arc<Classification>) -> Result<ProductDiagram> {
    let s = sum(&Arc::new(a.dual()), &Arc::new(b.dual()))?;
    Ok(ProductDiagram::dual_of(&s, [a.clone(), b.clone()]))
}

impl ProductDiagram {
    fn dual_of(s: &CoproductDiagram, factors: [Arc<Classification>; 2]) -> Self {
        let apex = Arc::new(s.apex.dual());
        let projections = [0, 1].map(|k| {
            let d = s.injections[k].dual();
            FunctionalInfomorphism::unchecked(apex.clone(), factors[k].clone(), d.f().clone(), d.g().clone())
                .expect("dual shapes")
        });
        ProductDiagram { factors, apex, projections }
    }

    /// The coproduct of the dual factors.
    pub fn dual(&self) -> CoproductDiagram {
        let summands = self.factors.clone().map(|f| Arc::new(f.dual()));
        let apex = Arc::new(self.apex.dual());
        let injections = [0, 1].map(|k| {
            let d = self.projections[k].dual();
            FunctionalInfomorphism::unchecked(summands[k].clone(), apex.clone(), d.f().clone(), d.g().clone())
                .expect("dual shapes")
        });
        CoproductDiagram { summands, apex, injections }
    }

    /// All infomorphisms `C ⇄ apex` through which both legs `C ⇄ factor_k`
    /// factor, by enumeration.
    pub fn mediators(&self, legs: [&FunctionalInfomorphism; 2], type_identity: bool) -> Vec<FunctionalInfomorphism> {
        let c = legs[0].source();
        let mut candidates = FunctionalInfomorphism::enumerate(c, &self.apex, false);
        if type_identity {
            candidates.retain(|m| m.g().as_slice().iter().enumerate().all(|(i, &j)| i == j));
        }
        candidates
            .into_iter()
            .filter(|m| (0..2).all(|k| m.compose(&self.projections[k]).as_ref() == Ok(legs[k])))
            .collect()
    }
}

/// `A₀|A₁`: shared instances, types side by side.
pub fn apposition(a0: &Classification, a1: &Classification) -> Result<Classification> {
    if a0.instances() != a1.instances() {
        return Err(Error::FiberMismatch("instance"));
    }
    let t0 = a0.num_types();
    let types = tagged(0, a0.types()).chain(tagged(1, a1.types())).collect();
    let incidence = Relation::from_fn(a0.num_instances(), t0 + a1.num_types(), |i, t| {
        if t < t0 {
            a0.classifies(i, t)
        } else {
            a1.classifies(i, t - t0)
        }
    });
    Classification::new(a0.instances().to_vec(), types, incidence)
}

/// Apposition with its instance-identity injections, a coproduct in the
/// instance fiber.
pub fn apposition_diagram(a0: &Arc<Classification>, a1: &Arc<Classification>) -> Result<CoproductDiagram> {
    let apex = Arc::new(apposition(a0, a1)?);
    let n = apex.num_instances();
    let t0 = a0.num_types();
    let inj0 = FunctionalInfomorphism::new(
        a0.clone(),
        apex.clone(),
        FunctionGraph::identity(n),
        FunctionGraph::new((0..t0).collect(), apex.num_types())?,
    )?;
    let inj1 = FunctionalInfomorphism::new(
        a1.clone(),
        apex.clone(),
        FunctionGraph::identity(n),
        FunctionGraph::new((t0..apex.num_types()).collect(), apex.num_types())?,
    )?;
    Ok(CoproductDiagram { summands: [a0.clone(), a1.clone()], apex, injections: [inj0, inj1] })
}

/// Shared types, instances stacked; `(A₀^∞ | A₁^∞)^∞`.
pub fn subposition(a0: &Classification, a1: &Classification) -> Result<Classification> {
    if a0.types() != a1.types() {
        return Err(Error::FiberMismatch("type"));
    }
    Ok(apposition(&a0.dual(), &a1.dual())?.dual())
}

/// Subposition with its type-identity projections, a product in the type
/// fiber.
pub fn subposition_diagram(a0: &Arc<Classification>, a1: &Arc<Classification>) -> Result<ProductDiagram> {
    if a0.types() != a1.types() {
        return Err(Error::FiberMismatch("type"));
    }
    let d = apposition_diagram(&Arc::new(a0.dual()), &Arc::new(a1.dual()))?;
    Ok(ProductDiagram::dual_of(&d, [a0.clone(), a1.clone()]))
}

/// `0_A = ⟨A, ∅, ∅⟩`.
pub fn fiber_initial<S: AsRef<str>>(instances: &[S]) -> Result<Classification> {
    let labels: Vec<String> = instances.iter().map(|s| s.as_ref().to_owned()).collect();
    let n = labels.len();
    Classification::new(labels, Vec::new(), Relation::empty(n, 0))
}

/// `℘A`, terminal in the instance fiber.
pub fn fiber_terminal<S: AsRef<str>>(instances: &[S]) -> Result<Classification> {
    Classification::powerset(instances)
}

/// A kept-instance set and a relation on types that the kept instances
/// cannot tell apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualInvariant {
    pub kept_instances: InstanceSet,
    pub type_relation: Relation,
}

impl DualInvariant {
    /// `α R β` implies `a ⊨ α ⇔ a ⊨ β` for every kept `a`; the witness is the
    /// first `(a, α, β)` that fails.
    pub fn check(&self, a: &Classification) -> Result<()> {
        let (n, m) = (a.num_instances(), a.num_types());
        if self.kept_instances.len() != n {
            return Err(Error::ShapeMismatch { op: "kept instances", left: (n, 1), right: (self.kept_instances.len(), 1) });
        }
        if self.type_relation.shape() != (m, m) {
            return Err(Error::ShapeMismatch { op: "type relation", left: (m, m), right: self.type_relation.shape() });
        }
        for (alpha, beta) in self.type_relation.pairs() {
            if let Some(i) = self.kept_instances.iter().find(|&i| a.classifies(i, alpha) != a.classifies(i, beta)) {
                return Err(Error::IncompatibleInvariant { instance: i, alpha, beta });
            }
        }
        Ok(())
    }

    /// Classes of the equivalence closure of the type relation, ordered by
    /// least member.
    pub fn classes(&self) -> Vec<BitSet> {
        let m = self.type_relation.rows();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for (x, y) in self.type_relation.pairs() {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            // keep the smaller index as root so roots are least members
            if rx < ry {
                parent[ry] = rx;
            } else {
                parent[rx] = ry;
            }
        }
        let mut classes: Vec<BitSet> = Vec::new();
        let mut class_of_root = vec![usize::MAX; m];
        for t in 0..m {
            let r = find(&mut parent, t);
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = classes.len();
                classes.push(BitSet::new(m));
            }
            classes[class_of_root[r]].insert(t);
        }
        classes
    }
}

/// `A/J` with its projection `A ⇄ A/J` (types to classes, kept instances
/// included back into `A`).
pub fn dual_quotient(a: &Arc<Classification>, j: &DualInvariant) -> Result<(Arc<Classification>, FunctionalInfomorphism)> {
    j.check(a)?;
    let classes = j.classes();
    let kept = j.kept_instances.to_vec();
    let instances = kept.iter().map(|&i| a.instances()[i].clone()).collect();
    let types = classes
        .iter()
        .map(|c| format!("[{}]", c.iter().map(|t| a.types()[t].as_str()).collect::<Vec<_>>().join(",")))
        .collect();
    let reps: Vec<usize> = classes.iter().map(|c| c.first().expect("nonempty class")).collect();
    let incidence = Relation::from_fn(kept.len(), classes.len(), |i, c| a.classifies(kept[i], reps[c]));
    let q = Arc::new(Classification::new(instances, types, incidence)?);
    let mut class_of = vec![0; a.num_types()];
    for (ci, c) in classes.iter().enumerate() {
        for t in c {
            class_of[t] = ci;
        }
    }
    let proj = FunctionalInfomorphism::new(
        a.clone(),
        q.clone(),
        FunctionGraph::new(kept, a.num_instances())?,
        FunctionGraph::new(class_of, classes.len())?,
    )?;
    Ok((q, proj))
}

/// Where a colimit transport check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportFailure {
    pub stage: &'static str,
    pub apex: usize,
    pub cocone: usize,
    pub detail: String,
}

impl std::fmt::Display for TransportFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} stage, test apex {}, cocone {}: {}", self.stage, self.apex, self.cocone, self.detail)
    }
}

/// Checks the coproduct property of `diag` against every cocone into each
/// test apex, first among classifications and then among the concept lattice
/// images. In the lattice stage the enumerated unique mediator must equal the
/// one obtained by mapping the cocone back with `C`, taking the
/// classification mediator, applying `L` and composing with the `L ∘ C`
/// witness. Test apexes enter the lattice stage with their elements
/// renumbered so the witness is not an identity.
///
/// `fiber` restricts every morphism to the identity on instances.
/// `inject_bug` corrupts the lattice image of the first injection.
///
/// Returns the number of cocones checked.
pub fn transport_colimit_check(
    diag: &CoproductDiagram,
    apexes: &[Arc<Classification>],
    fiber: bool,
    inject_bug: bool,
) -> std::result::Result<usize, TransportFailure> {
    let fail = |stage, apex, cocone, detail: String| TransportFailure { stage, apex, cocone, detail };
    let internal = |e: Error| fail("setup", 0, 0, e.to_string());
    let summands_l = [l_object(&diag.summands[0]).map_err(internal)?, l_object(&diag.summands[1]).map_err(internal)?];
    let apex_l = l_object(&diag.apex).map_err(internal)?;
    let mut inj_l = [
        l_morphism(&diag.injections[0]).map_err(internal)?,
        l_morphism(&diag.injections[1]).map_err(internal)?,
    ];
    if inject_bug {
        let mut psi = inj_l[0].psi().as_slice().to_vec();
        let (top, bottom) = (summands_l[0].lattice().top(), apex_l.lattice().bottom());
        psi[top] = bottom;
        inj_l[0] = inj_l[0].with_psi(FunctionGraph::new(psi, apex_l.len()).expect("in range"));
    }
    let mut total = 0;
    for (ai, c) in apexes.iter().enumerate() {
        // classification stage
        let legs: [Vec<FunctionalInfomorphism>; 2] =
            [0, 1].map(|k| FunctionalInfomorphism::enumerate(&diag.summands[k], c, fiber));
        let meds = FunctionalInfomorphism::enumerate(&diag.apex, c, fiber);
        let mut idx = 0;
        for l0 in &legs[0] {
            for l1 in &legs[1] {
                let n = meds
                    .iter()
                    .filter(|m| diag.injections[0].compose(m).as_ref() == Ok(l0) && diag.injections[1].compose(m).as_ref() == Ok(l1))
                    .count();
                if n != 1 {
                    return Err(fail("classification", ai, idx, format!("{n} mediating infomorphisms")));
                }
                let built = diag.mediator([l0, l1]).map_err(|e| fail("classification", ai, idx, e.to_string()))?;
                if diag.injections[0].compose(&built).as_ref() != Ok(l0) {
                    return Err(fail("classification", ai, idx, "constructed mediator does not commute".into()));
                }
                idx += 1;
                total += 1;
            }
        }

        // concept lattice stage
        let kc_plain = l_object(c).map_err(internal)?;
        let reversed: Vec<usize> = (0..kc_plain.len()).rev().collect();
        let kc = Arc::new(kc_plain.permuted(&reversed));
        let (lck, iso) = cl_witness(&kc).map_err(internal)?;
        let eta = ConceptLatticeMorphism::new(
            Arc::new(lck.to_abstract()),
            kc.clone(),
            iso.backward.clone(),
            iso.forward.clone(),
            FunctionGraph::identity(c.num_instances()),
            FunctionGraph::identity(c.num_types()),
        )
        .map_err(internal)?;
        let cl_legs: [Vec<ConceptLatticeMorphism>; 2] =
            [0, 1].map(|k| ConceptLatticeMorphism::enumerate(&summands_l[k], &kc, fiber));
        let cl_meds = ConceptLatticeMorphism::enumerate(&apex_l, &kc, fiber);
        let mut idx = 0;
        for l0 in &cl_legs[0] {
            for l1 in &cl_legs[1] {
                let matching: Vec<&ConceptLatticeMorphism> = cl_meds
                    .iter()
                    .filter(|m| inj_l[0].compose(m).as_ref() == Ok(l0) && inj_l[1].compose(m).as_ref() == Ok(l1))
                    .collect();
                if matching.len() != 1 {
                    return Err(fail("concept lattice", ai, idx, format!("{} mediating morphisms", matching.len())));
                }
                let recipe = (|| -> Result<ConceptLatticeMorphism> {
                    let back = [c_morphism(l0)?, c_morphism(l1)?];
                    let g = diag.mediator([&back[0], &back[1]])?;
                    l_morphism(&g)?.compose(&eta)
                })()
                .map_err(|e| fail("concept lattice", ai, idx, e.to_string()))?;
                if &recipe != matching[0] {
                    return Err(fail("concept lattice", ai, idx, "transported mediator differs from the enumerated one".into()));
                }
                idx += 1;
                total += 1;
            }
        }
    }
    Ok(total)
}
