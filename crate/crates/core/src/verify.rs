//! Executable check of the three equivalences over a generated corpus.
//!
//! The corpus is fully determined by [`VerifyConfig`]; the report lists one
//! entry per (check, item) in generation order.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bond::{Bond, BondingPair};
use crate::classification::Classification;
use crate::colimit::{apposition_diagram, sum, transport_colimit_check, CoproductDiagram};
use crate::error::Result;
use crate::functors::{
    a2_pair, a_bond, a_bond_factored, b2_hom, b_adjoint, b_object, c_morphism, c_object, cl_witness,
    embedding_bonds, is_instance_reduced, is_type_reduced, l_morphism, pair_from_homomorphism, principal_iso,
    AdjointPair, CompleteHomomorphism, ConceptLatticeMorphism,
};
use crate::infomorphism::FunctionalInfomorphism;
use crate::lattice::AbstractConceptLattice;
use crate::relalg::{FunctionGraph, Relation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Exhaustive contexts go up to `min(max_size, 3)` on each side; random
    /// ones up to `max(max_size, 6)`. Zero gives an empty corpus.
    pub max_size: usize,
    pub seed: u64,
    /// Number of random items drawn per sampled family.
    pub samples: usize,
    /// Corrupt the concept lattice functor so the harness must fail.
    pub inject_bug: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_size: 3, seed: 0, samples: 64, inject_bug: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportEntry {
    pub check: &'static str,
    pub item: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub entries: Vec<ReportEntry>,
}

/// Per-check tallies in first-seen order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckSummary {
    pub check: &'static str,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    /// An empty report passes vacuously; callers should flag it.
    pub fn no_coverage(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.verdict == Verdict::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| e.verdict == Verdict::Fail)
    }

    pub fn summary(&self) -> Vec<CheckSummary> {
        let mut out: Vec<CheckSummary> = Vec::new();
        for e in &self.entries {
            let pos = match out.iter().position(|s| s.check == e.check) {
                Some(p) => p,
                None => {
                    out.push(CheckSummary { check: e.check, passed: 0, failed: 0 });
                    out.len() - 1
                }
            };
            match e.verdict {
                Verdict::Pass => out[pos].passed += 1,
                Verdict::Fail => out[pos].failed += 1,
            }
        }
        out
    }

    fn record(&mut self, check: &'static str, item: &str, outcome: std::result::Result<(), String>) {
        let (verdict, witness) = match outcome {
            Ok(()) => (Verdict::Pass, None),
            Err(w) => (Verdict::Fail, Some(w)),
        };
        self.entries.push(ReportEntry { check, item: item.to_owned(), verdict, witness });
    }

    /// Runs `f`, turning library errors into failures.
    fn run(&mut self, check: &'static str, item: &str, f: impl FnOnce() -> Result<std::result::Result<(), String>>) {
        let outcome = f().unwrap_or_else(|e| Err(e.to_string()));
        self.record(check, item, outcome);
    }
}

fn expect(ok: bool, witness: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(witness())
    }
}

/// Named items the checks run over.
pub struct Corpus {
    pub contexts: Vec<(String, Arc<Classification>)>,
    pub infomorphisms: Vec<(String, FunctionalInfomorphism)>,
    pub composable_infomorphisms: Vec<(String, FunctionalInfomorphism, FunctionalInfomorphism)>,
    pub bonds: Vec<(String, Bond)>,
    pub composable_bonds: Vec<(String, Bond, Bond)>,
    pub homomorphisms: Vec<(String, Arc<Classification>, Arc<Classification>, CompleteHomomorphism)>,
    pub composable_pairs: Vec<(String, BondingPair, BondingPair)>,
    pub sums: Vec<(String, CoproductDiagram, bool)>,
    pub test_apexes: Vec<Arc<Classification>>,
}

fn context_from_code(n: usize, m: usize, code: u64) -> Classification {
    Classification::unlabelled(Relation::from_fn(n, m, |i, j| code >> (i * m + j) & 1 == 1))
}

fn exhaustive(max: usize) -> Vec<(String, Arc<Classification>)> {
    let mut out = Vec::new();
    for n in 0..=max {
        for m in 0..=max {
            for code in 0..1u64 << (n * m) {
                out.push((format!("ctx {n}x{m} #{code}"), Arc::new(context_from_code(n, m, code))));
            }
        }
    }
    out
}

fn random_context(rng: &mut ChaCha8Rng, max: usize) -> Classification {
    let n = rng.gen_range(1..=max);
    let m = rng.gen_range(1..=max);
    Classification::unlabelled(Relation::from_fn(n, m, |_, _| rng.gen_bool(0.5)))
}

fn random_relation(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Relation {
    Relation::from_fn(rows, cols, |_, _| rng.gen_bool(0.3))
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    &items[rng.gen_range(0..items.len())]
}

/// Largest number of maps tried when enumerating homomorphisms.
const HOM_BUDGET: usize = 4096;

fn homs_between(a: &Classification, b: &Classification) -> Result<Vec<CompleteHomomorphism>> {
    let (la, lb) = (a.lattice()?, b.lattice()?);
    let tries = (lb.len() as f64).powi(la.len() as i32);
    if tries > HOM_BUDGET as f64 {
        return Ok(Vec::new());
    }
    Ok(CompleteHomomorphism::enumerate(la.lattice(), lb.lattice()))
}

impl Corpus {
    pub fn generate(cfg: &VerifyConfig) -> Result<Corpus> {
        let mut corpus = Corpus {
            contexts: Vec::new(),
            infomorphisms: Vec::new(),
            composable_infomorphisms: Vec::new(),
            bonds: Vec::new(),
            composable_bonds: Vec::new(),
            homomorphisms: Vec::new(),
            composable_pairs: Vec::new(),
            sums: Vec::new(),
            test_apexes: Vec::new(),
        };
        if cfg.max_size == 0 {
            return Ok(corpus);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let exhaustive_max = cfg.max_size.min(3);
        let random_max = cfg.max_size.max(6);
        let small_max = cfg.max_size.min(2);

        // contexts
        corpus.contexts = exhaustive(exhaustive_max);
        for i in 0..cfg.samples {
            corpus.contexts.push((format!("random #{i}"), Arc::new(random_context(&mut rng, random_max))));
        }
        let mut scales = Vec::new();
        for n in 1..=4 {
            scales.push((format!("chain {n}"), Arc::new(Classification::chain(n))));
            scales.push((format!("antichain {n}"), Arc::new(Classification::antichain(n))));
            scales.push((format!("contranominal {n}"), Arc::new(Classification::contranominal(n))));
        }
        corpus.contexts.extend(scales.iter().cloned());
        let small: Vec<(String, Arc<Classification>)> = exhaustive(small_max);

        // infomorphisms: exhaustive between small contexts
        for (na, a) in &small {
            for (nb, b) in &small {
                for (i, m) in FunctionalInfomorphism::enumerate(a, b, false).into_iter().enumerate() {
                    corpus.infomorphisms.push((format!("{na} -> {nb} #{i}"), m));
                }
            }
        }
        // and by construction
        for (name, c) in corpus.contexts.iter().filter(|(n, _)| !n.starts_with("ctx")) {
            let id = FunctionalInfomorphism::identity(c.clone());
            let eta = FunctionalInfomorphism::instance_infomorphism(c.clone())?;
            corpus.infomorphisms.push((format!("id {name}"), id));
            corpus.infomorphisms.push((format!("eta {name}"), eta.clone()));
            corpus.infomorphisms.push((format!("dual eta {name}"), eta.dual()));
        }
        for i in 0..cfg.samples {
            let (na, nb) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
            if na == 0 && nb > 0 {
                continue;
            }
            let a: Vec<String> = (0..na).map(|x| format!("x{x}")).collect();
            let b: Vec<String> = (0..nb).map(|x| format!("y{x}")).collect();
            let f = FunctionGraph::new((0..nb).map(|_| rng.gen_range(0..na)).collect(), na)?;
            corpus.infomorphisms.push((format!("powerset #{i}"), FunctionalInfomorphism::powerset(&a, &b, f)?));
        }
        // composable pairs: random small chains, plus m ; η
        let mut attempts = 0;
        while corpus.composable_infomorphisms.len() < cfg.samples && attempts < 50 * cfg.samples.max(1) {
            attempts += 1;
            let (a, b, c) = (&pick(&mut rng, &small).1, &pick(&mut rng, &small).1, &pick(&mut rng, &small).1);
            let (ms, ns) = (FunctionalInfomorphism::enumerate(a, b, false), FunctionalInfomorphism::enumerate(b, c, false));
            if ms.is_empty() || ns.is_empty() {
                continue;
            }
            let (m, n) = (pick(&mut rng, &ms).clone(), pick(&mut rng, &ns).clone());
            let name = format!("chain #{}", corpus.composable_infomorphisms.len());
            corpus.composable_infomorphisms.push((name, m, n));
        }
        for (name, m) in corpus.infomorphisms.iter().step_by(97).take(cfg.samples) {
            let eta = FunctionalInfomorphism::instance_infomorphism(m.target().clone())?;
            corpus.composable_infomorphisms.push((format!("{name} ; eta"), m.clone(), eta));
        }

        // bonds: closed random relations, bonds of corpus infomorphisms, identities
        let bond_pool: Vec<Arc<Classification>> = small
            .iter()
            .map(|(_, c)| c.clone())
            .chain(scales.iter().map(|(_, c)| c.clone()))
            .collect();
        for i in 0..cfg.samples {
            let (a, b) = (pick(&mut rng, &bond_pool).clone(), pick(&mut rng, &bond_pool).clone());
            let r = random_relation(&mut rng, b.num_instances(), a.num_types());
            corpus.bonds.push((format!("closed #{i}"), Bond::generate(a, b, &r)?));
        }
        for (name, m) in corpus.infomorphisms.iter().step_by(41).take(cfg.samples) {
            corpus.bonds.push((format!("bond of {name}"), Bond::of_infomorphism(&m.to_relational()?)?));
        }
        for (name, c) in &scales {
            corpus.bonds.push((format!("identity {name}"), Bond::identity(c.clone())));
        }
        for i in 0..cfg.samples {
            let a = pick(&mut rng, &bond_pool).clone();
            let b = pick(&mut rng, &bond_pool).clone();
            let c = pick(&mut rng, &bond_pool).clone();
            let f = Bond::generate(a.clone(), b.clone(), &random_relation(&mut rng, b.num_instances(), a.num_types()))?;
            let g = Bond::generate(b.clone(), c.clone(), &random_relation(&mut rng, c.num_instances(), b.num_types()))?;
            corpus.composable_bonds.push((format!("bond chain #{i}"), f, g));
        }

        // complete homomorphisms and their bonding pairs
        let hom_pool: Vec<(String, Arc<Classification>)> = small
            .iter()
            .filter(|(_, c)| c.num_instances() > 0 || c.num_types() > 0)
            .cloned()
            .chain(scales.iter().cloned())
            .collect();
        let mut pair_pool: Vec<(usize, usize, CompleteHomomorphism)> = Vec::new();
        for (i, (na, a)) in hom_pool.iter().enumerate() {
            for (j, (nb, b)) in hom_pool.iter().enumerate() {
                for (k, h) in homs_between(a, b)?.into_iter().enumerate() {
                    corpus.homomorphisms.push((format!("{na} => {nb} #{k}"), a.clone(), b.clone(), h.clone()));
                    pair_pool.push((i, j, h));
                }
            }
        }
        let mut attempts = 0;
        while corpus.composable_pairs.len() < cfg.samples && attempts < 50 * cfg.samples.max(1) && !pair_pool.is_empty() {
            attempts += 1;
            let (i, j, h1) = pick(&mut rng, &pair_pool).clone();
            let nexts: Vec<&(usize, usize, CompleteHomomorphism)> = pair_pool.iter().filter(|(s, _, _)| *s == j).collect();
            if nexts.is_empty() {
                continue;
            }
            let (_, k, h2) = nexts[rng.gen_range(0..nexts.len())].clone();
            let (a, b, c) = (&hom_pool[i].1, &hom_pool[j].1, &hom_pool[k].1);
            let p1 = pair_from_homomorphism(a, b, &h1)?;
            let p2 = pair_from_homomorphism(b, c, &h2)?;
            corpus.composable_pairs.push((format!("pair chain #{}", corpus.composable_pairs.len()), p1, p2));
        }

        // sums and appositions of small contexts
        let summands: Vec<&(String, Arc<Classification>)> =
            small.iter().filter(|(_, c)| c.num_instances() > 0 && c.num_types() > 0).collect();
        if !summands.is_empty() {
            for i in 0..cfg.samples.min(12) {
                let (na, a) = pick(&mut rng, &summands);
                let (nb, b) = pick(&mut rng, &summands);
                corpus.sums.push((format!("sum #{i} {na} + {nb}"), sum(a, b)?, false));
                let same_inst: Vec<&&(String, Arc<Classification>)> =
                    summands.iter().filter(|(_, c)| c.instances() == a.instances()).collect();
                let (nc, c) = *pick(&mut rng, &same_inst);
                corpus.sums.push((format!("apposition #{i} {na} | {nc}"), apposition_diagram(a, c)?, true));
            }
        }
        corpus.test_apexes = small
            .iter()
            .filter(|(_, c)| c.num_instances() > 0)
            .map(|(_, c)| c.clone())
            .collect::<Vec<_>>()
            .choose_multiple(&mut rng, 4)
            .cloned()
            .collect();
        Ok(corpus)
    }
}

/// `L(m)`, with `ψ(top) := bottom` when the harness is asked to misbehave.
fn l_under_test(m: &FunctionalInfomorphism, inject_bug: bool) -> Result<ConceptLatticeMorphism> {
    let lm = l_morphism(m)?;
    if !inject_bug {
        return Ok(lm);
    }
    let mut psi = lm.psi().as_slice().to_vec();
    psi[lm.source().lattice().top()] = lm.target().lattice().bottom();
    Ok(lm.with_psi(FunctionGraph::new(psi, lm.target().len())?))
}

fn shuffled(rng: &mut ChaCha8Rng, l: &AbstractConceptLattice) -> Arc<AbstractConceptLattice> {
    let mut perm: Vec<usize> = (0..l.len()).collect();
    perm.shuffle(rng);
    Arc::new(l.permuted(&perm))
}

/// `η_L: L(C(L)) ⇄ L` from the witness isomorphism.
fn witness_morphism(l: &Arc<AbstractConceptLattice>) -> Result<ConceptLatticeMorphism> {
    let (lcl, iso) = cl_witness(l)?;
    ConceptLatticeMorphism::new(
        Arc::new(lcl.to_abstract()),
        l.clone(),
        iso.backward,
        iso.forward,
        FunctionGraph::identity(l.instance_labels().len()),
        FunctionGraph::identity(l.type_labels().len()),
    )
}

fn check_contexts(corpus: &Corpus, cfg: &VerifyConfig, rng: &mut ChaCha8Rng, report: &mut Report) {
    for (name, a) in &corpus.contexts {
        report.run("C(L(A)) == A", name, || {
            let back = c_object(&a.lattice()?.to_abstract());
            Ok(expect(back == **a, || "incidence or labels differ".into()))
        });
        report.run("L(C(L)) ≅ L witness", name, || {
            let l = shuffled(rng, &a.lattice()?.to_abstract());
            cl_witness(&l)?;
            Ok(Ok(()))
        });
        report.run("lattice decomposition", name, || {
            let l = a.lattice()?;
            Ok(expect(l.decomposes(a.incidence()), || "⊨ != ι;≤;τᵀ".into()))
        });
        report.run("embedding bonds inverse", name, || {
            let (iota, tau) = embedding_bonds(a)?;
            let it = iota.compose(&tau)? == Bond::identity(iota.source().clone());
            let ti = tau.compose(&iota)? == Bond::identity(a.clone());
            Ok(expect(it, || "ι∘τ is not ≤_L".into()).and_then(|_| expect(ti, || "τ∘ι is not ⊨".into())))
        });
        report.run("A preserves identities", name, || {
            let id = a_bond(&Bond::identity(a.clone()))?;
            Ok(expect(id == AdjointPair::identity(a.lattice()?.lattice().clone()), || "A(id) is not the identity".into()))
        });
        report.run("B preserves identities", name, || {
            let l = a.lattice()?.lattice().clone();
            let id = b_adjoint(&AdjointPair::identity(l.clone()))?;
            Ok(expect(id == Bond::identity(Arc::new(b_object(&l))), || "B(id) is not the identity bond".into()))
        });
        report.run("L preserves identities", name, || {
            let lm = l_under_test(&FunctionalInfomorphism::identity(a.clone()), cfg.inject_bug)?;
            let id = ConceptLatticeMorphism::identity(Arc::new(a.lattice()?.to_abstract()));
            Ok(expect(lm == id, || "L(id) is not the identity".into()))
        });
    }
}

fn check_infomorphisms(corpus: &Corpus, cfg: &VerifyConfig, rng: &mut ChaCha8Rng, report: &mut Report) {
    for (name, m) in &corpus.infomorphisms {
        report.run("C(L(m)) == m", name, || {
            let lm = l_under_test(m, cfg.inject_bug)?;
            Ok(expect(&c_morphism(&lm)? == m, || "round trip changed the infomorphism".into()))
        });
        report.run("L(C) naturality", name, || {
            let lm = l_under_test(m, cfg.inject_bug)?;
            let (lc, kc) = (shuffled(rng, lm.source()), shuffled(rng, lm.target()));
            let cm = ConceptLatticeMorphism::from_functions(lc.clone(), kc.clone(), m.f().clone(), m.g().clone())?;
            cm.check()?;
            let lcm = l_under_test(&c_morphism(&cm)?, cfg.inject_bug)?;
            let left = lcm.compose(&witness_morphism(&kc)?)?;
            let right = witness_morphism(&lc)?.compose(&cm)?;
            Ok(expect(left == right, || "naturality square does not commute".into()))
        });
        report.run("fn2rel bond", name, || {
            let rel = m.to_relational()?;
            let bond = Bond::of_infomorphism(&rel)?;
            let expected = Relation::from_fn(m.target().num_instances(), m.source().num_types(), |b, t| {
                m.source().classifies(m.f().apply(b), t)
            });
            Ok(expect(bond.rel() == &expected, || "bond differs from the fundamental relation".into()))
        });
        report.run("irreducibility preserved", name, || {
            let lm = l_under_test(m, cfg.inject_bug)?;
            let (la, lb) = (m.source().lattice()?, m.target().lattice()?);
            if is_type_reduced(m.target())? {
                if let Some(x) = (0..la.len()).find(|&x| {
                    la.lattice().is_meet_irreducible(x) && !lb.lattice().is_meet_irreducible(lm.psi().apply(x))
                }) {
                    return Ok(Err(format!("meet-irreducible concept {x} not preserved")));
                }
            }
            if is_instance_reduced(m.source())? {
                if let Some(y) = (0..lb.len()).find(|&y| {
                    lb.lattice().is_join_irreducible(y) && !la.lattice().is_join_irreducible(lm.phi().apply(y))
                }) {
                    return Ok(Err(format!("join-irreducible concept {y} not preserved")));
                }
            }
            Ok(Ok(()))
        });
    }
    for (name, m, n) in &corpus.composable_infomorphisms {
        report.run("L preserves composition", name, || {
            let whole = l_under_test(&m.compose(n)?, cfg.inject_bug)?;
            let parts = l_under_test(m, cfg.inject_bug)?.compose(&l_under_test(n, cfg.inject_bug)?)?;
            Ok(expect(whole == parts, || "L(m;n) != L(m);L(n)".into()))
        });
        report.run("fn2rel preserves composition", name, || {
            let whole = m.compose(n)?.to_relational()?;
            let parts = m.to_relational()?.compose(&n.to_relational()?)?;
            Ok(expect(whole == parts, || "fn2rel(m;n) != fn2rel(m);fn2rel(n)".into()))
        });
    }
}

fn check_bonds(corpus: &Corpus, report: &mut Report) {
    for (name, f) in &corpus.bonds {
        report.run("bond closure", name, || {
            Ok(expect(Bond::is_bond(f.source(), f.target(), f.rel())?, || format!("{:?}", f.violation())))
        });
        report.run("bond infomorphism round trip", name, || {
            Ok(expect(&Bond::of_infomorphism(&f.to_infomorphism()?)? == f, || "bond changed".into()))
        });
        report.run("A factors through L(F)", name, || {
            let p = a_bond(f)?;
            let (psi, phi) = a_bond_factored(f)?;
            Ok(expect(&psi == p.psi() && &phi == p.phi(), || "factorization differs".into()))
        });
        report.run("A(B(p)) ≅ p", name, || {
            let p = a_bond(f)?;
            let abp = a_bond(&b_adjoint(&p)?)?;
            let (il, ik) = (principal_iso(p.source())?, principal_iso(p.target())?);
            if let Some(x) = (0..p.source().len()).find(|&x| abp.psi().apply(il.apply(x)) != ik.apply(p.psi().apply(x))) {
                return Ok(Err(format!("psi differs at {x}")));
            }
            if let Some(y) = (0..p.target().len()).find(|&y| abp.phi().apply(ik.apply(y)) != il.apply(p.phi().apply(y))) {
                return Ok(Err(format!("phi differs at {y}")));
            }
            Ok(Ok(()))
        });
        report.run("B(A(F)) naturality", name, || {
            let (iota_a, _) = embedding_bonds(f.source())?;
            let (iota_b, _) = embedding_bonds(f.target())?;
            let baf = b_adjoint(&a_bond(f)?)?;
            Ok(expect(baf.compose(&iota_b)? == iota_a.compose(f)?, || "B(A(F))∘ι_B != ι_A∘F".into()))
        });
    }
    for (name, f, g) in &corpus.composable_bonds {
        report.run("bond composition formulas agree", name, || {
            let fg = f.compose(g)?;
            Ok(expect(fg == f.compose_alt(g)? && fg.violation().is_none(), || "formulas differ".into()))
        });
        report.run("A preserves composition", name, || {
            let whole = a_bond(&f.compose(g)?)?;
            Ok(expect(whole == a_bond(f)?.compose(&a_bond(g)?)?, || "A(F∘G) != A(F);A(G)".into()))
        });
        report.run("B preserves composition", name, || {
            let (p, q) = (a_bond(f)?, a_bond(g)?);
            let whole = b_adjoint(&p.compose(&q)?)?;
            Ok(expect(whole == b_adjoint(&p)?.compose(&b_adjoint(&q)?)?, || "B(p;q) != B(p)∘B(q)".into()))
        });
    }
}

fn check_pairs(corpus: &Corpus, report: &mut Report) {
    for (name, a, b, h) in &corpus.homomorphisms {
        let pair = pair_from_homomorphism(a, b, h);
        report.run("ψ_F == φ_G", name, || {
            let p = pair.clone()?;
            let (psi_f, phi_g) = (a_bond(p.forward())?, a_bond(p.backward())?);
            Ok(expect(psi_f.psi() == phi_g.phi(), || "ψ_F and φ_G differ".into()))
        });
        report.run("pairing constraints pointwise", name, || {
            let p = pair.clone()?;
            Ok(expect(BondingPair::check_pointwise(p.forward(), p.backward())?, || "pointwise form fails".into()))
        });
        report.run("A2(pair) == hom", name, || {
            Ok(expect(&a2_pair(&pair.clone()?)? == h, || "A2 does not recover the homomorphism".into()))
        });
        report.run("B2(A2(p)) ≅ p", name, || {
            let p = pair.clone()?;
            let back = b2_hom(&a2_pair(&p)?)?;
            let (iota_a, tau_a) = embedding_bonds(a)?;
            let (iota_b, tau_b) = embedding_bonds(b)?;
            let f = iota_a.compose(p.forward())?.compose(&tau_b)?;
            let g = iota_b.compose(p.backward())?.compose(&tau_a)?;
            Ok(expect(back.forward() == &f && back.backward() == &g, || "embedding conjugate differs".into()))
        });
        report.run("A2(B2(h)) ≅ h", name, || {
            let round = a2_pair(&b2_hom(h)?)?;
            let (il, ik) = (principal_iso(h.source())?, principal_iso(h.target())?);
            let bad = (0..h.source().len()).find(|&x| round.map().apply(il.apply(x)) != ik.apply(h.map().apply(x)));
            Ok(expect(bad.is_none(), || format!("differs at {bad:?}")))
        });
    }
    for (name, p, q) in &corpus.composable_pairs {
        report.run("A2 preserves composition", name, || {
            let pq = p.compose(q)?;
            pq.check()?;
            Ok(expect(a2_pair(&pq)? == a2_pair(p)?.compose(&a2_pair(q)?)?, || "A2(p∘q) != A2(p);A2(q)".into()))
        });
    }
}

fn check_colimits(corpus: &Corpus, cfg: &VerifyConfig, report: &mut Report) {
    for (name, d, fiber) in &corpus.sums {
        let check = if *fiber { "apposition transport" } else { "sum transport" };
        let apexes: Vec<Arc<Classification>> = if *fiber {
            let a = &d.summands[0];
            vec![a.clone(), Arc::new(Classification::powerset(a.instances()).expect("small"))]
        } else {
            corpus.test_apexes.clone()
        };
        let outcome = transport_colimit_check(d, &apexes, *fiber, cfg.inject_bug)
            .map(|_| ())
            .map_err(|w| w.to_string());
        report.record(check, name, outcome);
    }
}

pub fn verify_equivalences(cfg: &VerifyConfig) -> Result<Report> {
    let corpus = Corpus::generate(cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    let mut report = Report::default();
    check_contexts(&corpus, cfg, &mut rng, &mut report);
    check_infomorphisms(&corpus, cfg, &mut rng, &mut report);
    check_bonds(&corpus, &mut report);
    check_pairs(&corpus, &mut report);
    check_colimits(&corpus, cfg, &mut report);
    Ok(report)
}
