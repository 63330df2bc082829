//! Monoidal structure on a table category: tensor tables, explicit
//! coherence components, subunits, and the induced semilattice.
//!
//! Coherence components (unitors, associator, braiding) are stored
//! explicitly even when they are identities, so strict and non-strict
//! presentations go through the same code paths. [`check_monoidal_laws`]
//! verifies functoriality of the tensor, naturality of every component,
//! invertibility, and the triangle, pentagon, and both hexagon identities
//! by full enumeration.
//!
//! A *subunit* is (an isomorphism class of) a monomorphism `s : S -> I`
//! into the tensor unit such that `s (x) S` is invertible. Subunits are the
//! backbone of everything downstream: restriction idempotents, tensor
//! restriction, and the S-construction all quantify over them.

use crate::fincat::{FinCategory, LawReport, MorId, ObjId};
use crate::Error;

/// Tensor tables plus coherence components for a [`FinCategory`].
///
/// The associator is oriented `alpha(A,B,C) : A(x)(B(x)C) -> (A(x)B)(x)C`.
/// The braiding is optional; none of the purely monoidal checks require it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalData {
    n_objects: usize,
    n_morphisms: usize,
    /// The tensor unit object.
    unit: ObjId,
    /// Row-major `a * n_objects + b`.
    tensor_obj: Vec<ObjId>,
    /// Row-major `f * n_morphisms + g`.
    tensor_mor: Vec<MorId>,
    /// `lambda[a] : I(x)a -> a`.
    lambda: Vec<MorId>,
    /// `rho[a] : a(x)I -> a`.
    rho: Vec<MorId>,
    /// `alpha[(a*n + b)*n + c] : a(x)(b(x)c) -> (a(x)b)(x)c`.
    alpha: Vec<MorId>,
    /// `sigma[a * n_objects + b] : a(x)b -> b(x)a`, when braided.
    sigma: Option<Vec<MorId>>,
}

impl MonoidalData {
    /// Builds monoidal data over `c`, validating table shapes and the
    /// typing of every stored component. Laws are checked separately by
    /// [`check_monoidal_laws`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        c: &FinCategory,
        unit: ObjId,
        tensor_obj: Vec<ObjId>,
        tensor_mor: Vec<MorId>,
        lambda: Vec<MorId>,
        rho: Vec<MorId>,
        alpha: Vec<MorId>,
        sigma: Option<Vec<MorId>>,
    ) -> Result<Self, Error> {
        let n = c.n_objects();
        let nm = c.n_morphisms();
        if unit >= n {
            return Err(Error::MalformedTables("tensor unit out of range".into()));
        }
        if tensor_obj.len() != n * n {
            return Err(Error::MalformedTables("object tensor table has wrong size".into()));
        }
        if tensor_obj.iter().any(|&x| x >= n) {
            return Err(Error::MalformedTables("object tensor entry out of range".into()));
        }
        if tensor_mor.len() != nm * nm {
            return Err(Error::MalformedTables("morphism tensor table has wrong size".into()));
        }
        let tobj = |a: ObjId, b: ObjId| tensor_obj[a * n + b];
        for f in 0..nm {
            for g in 0..nm {
                let h = tensor_mor[f * nm + g];
                if h >= nm {
                    return Err(Error::MalformedTables(format!(
                        "tensor of morphisms ({f}, {g}) out of range"
                    )));
                }
                if c.dom(h) != tobj(c.dom(f), c.dom(g)) || c.cod(h) != tobj(c.cod(f), c.cod(g)) {
                    return Err(Error::MalformedTables(format!(
                        "tensor of morphisms ({f}, {g}) has wrong endpoints"
                    )));
                }
            }
        }
        let component = |name: &str, table: &[MorId], len: usize| -> Result<(), Error> {
            if table.len() != len {
                return Err(Error::MalformedTables(format!("{name} table has wrong size")));
            }
            if table.iter().any(|&f| f >= nm) {
                return Err(Error::MalformedTables(format!("{name} entry out of range")));
            }
            Ok(())
        };
        component("lambda", &lambda, n)?;
        component("rho", &rho, n)?;
        component("alpha", &alpha, n * n * n)?;
        for a in 0..n {
            let l = lambda[a];
            if c.dom(l) != tobj(unit, a) || c.cod(l) != a {
                return Err(Error::MalformedTables(format!("lambda[{a}] has wrong endpoints")));
            }
            let r = rho[a];
            if c.dom(r) != tobj(a, unit) || c.cod(r) != a {
                return Err(Error::MalformedTables(format!("rho[{a}] has wrong endpoints")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    let al = alpha[(a * n + b) * n + cc];
                    if c.dom(al) != tobj(a, tobj(b, cc)) || c.cod(al) != tobj(tobj(a, b), cc) {
                        return Err(Error::MalformedTables(format!(
                            "alpha[{a},{b},{cc}] has wrong endpoints"
                        )));
                    }
                }
            }
        }
        if let Some(ref sg) = sigma {
            component("sigma", sg, n * n)?;
            for a in 0..n {
                for b in 0..n {
                    let s = sg[a * n + b];
                    if c.dom(s) != tobj(a, b) || c.cod(s) != tobj(b, a) {
                        return Err(Error::MalformedTables(format!(
                            "sigma[{a},{b}] has wrong endpoints"
                        )));
                    }
                }
            }
        }
        Ok(MonoidalData { n_objects: n, n_morphisms: nm, unit, tensor_obj, tensor_mor, lambda, rho, alpha, sigma })
    }

    /// The tensor unit.
    pub fn unit(&self) -> ObjId {
        self.unit
    }

    /// Object tensor `a (x) b`.
    pub fn tensor_obj(&self, a: ObjId, b: ObjId) -> ObjId {
        self.tensor_obj[a * self.n_objects + b]
    }

    /// Morphism tensor `f (x) g`.
    pub fn tensor_mor(&self, f: MorId, g: MorId) -> MorId {
        self.tensor_mor[f * self.n_morphisms + g]
    }

    /// Left unitor component at `a`.
    pub fn lambda(&self, a: ObjId) -> MorId {
        self.lambda[a]
    }

    /// Right unitor component at `a`.
    pub fn rho(&self, a: ObjId) -> MorId {
        self.rho[a]
    }

    /// Associator component `a (x) (b (x) c) -> (a (x) b) (x) c`.
    pub fn alpha(&self, a: ObjId, b: ObjId, c: ObjId) -> MorId {
        self.alpha[(a * self.n_objects + b) * self.n_objects + c]
    }

    /// Braiding component `a (x) b -> b (x) a`, when a braiding is present.
    pub fn sigma(&self, a: ObjId, b: ObjId) -> Option<MorId> {
        self.sigma.as_ref().map(|sg| sg[a * self.n_objects + b])
    }

    /// True when a braiding table is stored.
    pub fn has_braiding(&self) -> bool {
        self.sigma.is_some()
    }

    /// True when every unitor and associator component is an identity
    /// morphism. The braiding is exempt.
    pub fn is_strict(&self, c: &FinCategory) -> bool {
        let id_ok = |f: MorId| c.identity(c.dom(f)) == f;
        self.lambda.iter().all(|&f| id_ok(f))
            && self.rho.iter().all(|&f| id_ok(f))
            && self.alpha.iter().all(|&f| id_ok(f))
    }

    /// Consumes the data, returning raw tables
    /// `(unit, tensor_obj, tensor_mor, lambda, rho, alpha, sigma)`.
    #[allow(clippy::type_complexity)]
    pub fn into_parts(
        self,
    ) -> (ObjId, Vec<ObjId>, Vec<MorId>, Vec<MorId>, Vec<MorId>, Vec<MorId>, Option<Vec<MorId>>) {
        (self.unit, self.tensor_obj, self.tensor_mor, self.lambda, self.rho, self.alpha, self.sigma)
    }
}

/// Checks every monoidal law by enumeration: tensor functoriality,
/// naturality and invertibility of all components, triangle, pentagon, and
/// (when braided) braiding naturality plus both hexagons.
///
/// The braiding is not assumed symmetric; no law here would force
/// `sigma(b,a)∘sigma(a,b) = id`.
pub fn check_monoidal_laws(c: &FinCategory, m: &MonoidalData) -> LawReport {
    let mut report = LawReport::new("monoidal");
    let n = c.n_objects();

    for a in c.objects() {
        for b in c.objects() {
            let lhs = m.tensor_mor(c.identity(a), c.identity(b));
            let rhs = c.identity(m.tensor_obj(a, b));
            if lhs != rhs {
                report.push("tensor-id", vec![a, b], Some(lhs), Some(rhs));
            }
        }
    }

    let pairs = c.composable_pairs();
    for &(g, f) in &pairs {
        let gf = c.compose(g, f).expect("composable");
        for &(g2, f2) in &pairs {
            let g2f2 = c.compose(g2, f2).expect("composable");
            let lhs = m.tensor_mor(gf, g2f2);
            let rhs = c.compose(m.tensor_mor(g, g2), m.tensor_mor(f, f2));
            if rhs != Some(lhs) {
                report.push("interchange", vec![g, f, g2, f2], Some(lhs), rhs);
            }
        }
    }

    for a in c.objects() {
        if c.is_iso(m.lambda(a)).is_none() {
            report.push("lambda-iso", vec![a], Some(m.lambda(a)), None);
        }
        if c.is_iso(m.rho(a)).is_none() {
            report.push("rho-iso", vec![a], Some(m.rho(a)), None);
        }
    }
    for a in c.objects() {
        for b in c.objects() {
            for cc in c.objects() {
                if c.is_iso(m.alpha(a, b, cc)).is_none() {
                    report.push("alpha-iso", vec![a, b, cc], Some(m.alpha(a, b, cc)), None);
                }
            }
        }
    }

    for f in c.morphisms() {
        let (a, b) = (c.dom(f), c.cod(f));
        let id_i = c.identity(m.unit());
        let lhs = c.compose(f, m.lambda(a));
        let rhs = c.compose(m.lambda(b), m.tensor_mor(id_i, f));
        if lhs != rhs || lhs.is_none() {
            report.push("lambda-nat", vec![f], lhs, rhs);
        }
        let lhs = c.compose(f, m.rho(a));
        let rhs = c.compose(m.rho(b), m.tensor_mor(f, id_i));
        if lhs != rhs || lhs.is_none() {
            report.push("rho-nat", vec![f], lhs, rhs);
        }
    }

    for f in c.morphisms() {
        for g in c.morphisms() {
            for h in c.morphisms() {
                let lhs = c.compose(
                    m.tensor_mor(m.tensor_mor(f, g), h),
                    m.alpha(c.dom(f), c.dom(g), c.dom(h)),
                );
                let rhs = c.compose(
                    m.alpha(c.cod(f), c.cod(g), c.cod(h)),
                    m.tensor_mor(f, m.tensor_mor(g, h)),
                );
                if lhs != rhs || lhs.is_none() {
                    report.push("alpha-nat", vec![f, g, h], lhs, rhs);
                }
            }
        }
    }

    for a in c.objects() {
        for b in c.objects() {
            let lhs = c.compose(
                m.tensor_mor(m.rho(a), c.identity(b)),
                m.alpha(a, m.unit(), b),
            );
            let rhs = m.tensor_mor(c.identity(a), m.lambda(b));
            if lhs != Some(rhs) {
                report.push("triangle", vec![a, b], lhs, Some(rhs));
            }
        }
    }

    for a in c.objects() {
        for b in c.objects() {
            for cc in c.objects() {
                for d in c.objects() {
                    let lhs = c.compose(m.alpha(m.tensor_obj(a, b), cc, d), m.alpha(a, b, m.tensor_obj(cc, d)));
                    let rhs = c.compose_chain(&[
                        m.tensor_mor(m.alpha(a, b, cc), c.identity(d)),
                        m.alpha(a, m.tensor_obj(b, cc), d),
                        m.tensor_mor(c.identity(a), m.alpha(b, cc, d)),
                    ]);
                    if lhs != rhs || lhs.is_none() {
                        report.push("pentagon", vec![a, b, cc, d], lhs, rhs);
                    }
                }
            }
        }
    }

    if m.has_braiding() {
        // inverse associator components, where they exist
        let mut alpha_inv = vec![None; n * n * n];
        for a in c.objects() {
            for b in c.objects() {
                for cc in c.objects() {
                    alpha_inv[(a * n + b) * n + cc] = c.is_iso(m.alpha(a, b, cc));
                }
            }
        }
        let ainv = |a: ObjId, b: ObjId, cc: ObjId| alpha_inv[(a * n + b) * n + cc];

        for a in c.objects() {
            for b in c.objects() {
                let s = m.sigma(a, b).expect("braided");
                if c.is_iso(s).is_none() {
                    report.push("sigma-iso", vec![a, b], Some(s), None);
                }
            }
        }
        for f in c.morphisms() {
            for g in c.morphisms() {
                let lhs = c.compose(
                    m.sigma(c.cod(f), c.cod(g)).expect("braided"),
                    m.tensor_mor(f, g),
                );
                let rhs = c.compose(
                    m.tensor_mor(g, f),
                    m.sigma(c.dom(f), c.dom(g)).expect("braided"),
                );
                if lhs != rhs || lhs.is_none() {
                    report.push("sigma-nat", vec![f, g], lhs, rhs);
                }
            }
        }
        for a in c.objects() {
            for b in c.objects() {
                for cc in c.objects() {
                    let sg = |x: ObjId, y: ObjId| m.sigma(x, y).expect("braided");
                    // forward hexagon: braid a past b(x)c
                    let lhs = Some(sg(a, m.tensor_obj(b, cc)));
                    let rhs = match ainv(b, a, cc) {
                        Some(inv) => c.compose_chain(&[
                            m.alpha(b, cc, a),
                            m.tensor_mor(c.identity(b), sg(a, cc)),
                            inv,
                            m.tensor_mor(sg(a, b), c.identity(cc)),
                            m.alpha(a, b, cc),
                        ]),
                        None => None,
                    };
                    if lhs != rhs {
                        report.push("hexagon-fwd", vec![a, b, cc], lhs, rhs);
                    }
                    // reverse hexagon: braid a(x)b past c
                    let lhs = Some(sg(m.tensor_obj(a, b), cc));
                    let rhs = match (ainv(a, b, cc), ainv(cc, a, b)) {
                        (Some(inv_abc), Some(inv_cab)) => c.compose_chain(&[
                            inv_cab,
                            m.tensor_mor(sg(a, cc), c.identity(b)),
                            m.alpha(a, cc, b),
                            m.tensor_mor(c.identity(a), sg(b, cc)),
                            inv_abc,
                        ]),
                        _ => None,
                    };
                    if lhs != rhs {
                        report.push("hexagon-rev", vec![a, b, cc], lhs, rhs);
                    }
                }
            }
        }
    }

    report.finish()
}

/// A subunit: a monomorphism `mono : domain -> I` whose tensor action
/// `mono (x) domain` is invertible, together with the canonical splitting
/// `split : domain -> domain (x) domain`, the inverse of
/// `lambda∘(mono (x) domain)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Subunit {
    /// The representing monomorphism into the unit.
    pub mono: MorId,
    /// Its domain object.
    pub domain: ObjId,
    /// The splitting `domain -> domain (x) domain`.
    pub split: MorId,
}

/// Enumerates all subunits up to isomorphism of subobjects of the unit.
///
/// Each class is represented by its least morphism index, and the result is
/// sorted by that index, so the output is deterministic for a given
/// category. Requires no braiding.
pub fn enumerate_subunits(c: &FinCategory, m: &MonoidalData) -> Vec<Subunit> {
    let i = m.unit();
    let mut classes: Vec<MorId> = Vec::new();
    'monos: for s in c.morphisms() {
        if c.cod(s) != i || !c.is_mono(s) {
            continue;
        }
        // skip morphisms equivalent to an earlier class representative
        for &rep in &classes {
            if mono_equivalent(c, rep, s) {
                continue 'monos;
            }
        }
        classes.push(s);
    }
    let mut subs = Vec::new();
    for s in classes {
        let dom = c.dom(s);
        let action = m.tensor_mor(s, c.identity(dom));
        if c.is_iso(action).is_none() {
            continue;
        }
        let fold = c
            .compose(m.lambda(dom), action)
            .expect("lambda composes with the tensor action");
        match c.is_iso(fold) {
            Some(split) => subs.push(Subunit { mono: s, domain: dom, split }),
            None => {}
        }
    }
    subs
}

/// True when the subobjects `a, b -> I` (or any common codomain) are
/// related by an isomorphism `m` with `a∘m = b`.
fn mono_equivalent(c: &FinCategory, a: MorId, b: MorId) -> bool {
    c.hom(c.dom(b), c.dom(a))
        .into_iter()
        .any(|med| c.is_iso(med).is_some() && c.compose(a, med) == Some(b))
}

/// Finds the canonical subunit class of an arbitrary monomorphism into the
/// unit: returns `(class index, mediating iso m)` with
/// `subs[k].mono ∘ m == mono`. The mediating iso is unique because
/// canonical representatives are monic.
pub fn classify_subunit(
    c: &FinCategory,
    subs: &[Subunit],
    mono: MorId,
) -> Option<(usize, MorId)> {
    for (k, su) in subs.iter().enumerate() {
        for med in c.hom(c.dom(mono), su.domain) {
            if c.is_iso(med).is_some() && c.compose(su.mono, med) == Some(mono) {
                return Some((k, med));
            }
        }
    }
    None
}

/// Verifies the two descriptions of a subunit's fold map agree and are
/// invertible: `lambda∘(mono (x) S) = rho∘(S (x) mono)`, both isos.
pub fn check_lemma_subunit_swap(c: &FinCategory, m: &MonoidalData, s: &Subunit) -> bool {
    let id_s = c.identity(s.domain);
    let left = c.compose(m.lambda(s.domain), m.tensor_mor(s.mono, id_s));
    let right = c.compose(m.rho(s.domain), m.tensor_mor(id_s, s.mono));
    match (left, right) {
        (Some(l), Some(r)) => l == r && c.is_iso(l).is_some(),
        _ => false,
    }
}

/// The meet monomorphism of two subunits: `lambda_I ∘ (s (x) t) : S(x)T -> I`.
pub fn meet_mono(c: &FinCategory, m: &MonoidalData, s: &Subunit, t: &Subunit) -> MorId {
    let st = m.tensor_mor(s.mono, t.mono);
    c.compose(m.lambda(m.unit()), st).expect("meet mono composes")
}

/// A firm monoidal category: braided, and `s (x) T` is monic for every
/// pair of subunits. Firmness is what makes the subunit meet well defined.
pub fn is_firm(c: &FinCategory, m: &MonoidalData) -> bool {
    if !m.has_braiding() {
        return false;
    }
    let subs = enumerate_subunits(c, m);
    for s in &subs {
        for t in &subs {
            if !c.is_mono(m.tensor_mor(s.mono, c.identity(t.domain))) {
                return false;
            }
        }
    }
    true
}

/// Meet of two subunit classes in a firm category: the class of
/// `lambda∘(s (x) t)`. Returns the canonical class index.
pub fn subunit_meet(
    c: &FinCategory,
    m: &MonoidalData,
    subs: &[Subunit],
    i: usize,
    j: usize,
) -> Result<usize, Error> {
    if !is_firm(c, m) {
        return Err(Error::NotFirm("subunit meet requires a firm category".into()));
    }
    let w = meet_mono(c, m, &subs[i], &subs[j]);
    classify_subunit(c, subs, w)
        .map(|(k, _)| k)
        .ok_or_else(|| Error::NotFirm(format!("meet of subunits {i} and {j} is not a subunit")))
}

/// True when subunit `i` factors through subunit `j`, i.e. there is a
/// (necessarily unique) `m` with `subs[j].mono ∘ m = subs[i].mono`.
pub fn subunit_leq(c: &FinCategory, subs: &[Subunit], i: usize, j: usize) -> bool {
    c.hom(subs[i].domain, subs[j].domain)
        .into_iter()
        .any(|med| c.compose(subs[j].mono, med) == Some(subs[i].mono))
}

/// A finite meet-semilattice with a top element, as a meet table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semilattice {
    n: usize,
    meet: Vec<usize>,
    top: usize,
}

impl Semilattice {
    /// Builds a semilattice, validating commutativity, associativity,
    /// idempotence, and neutrality of `top`.
    pub fn new(n: usize, meet: Vec<usize>, top: usize) -> Result<Self, Error> {
        if meet.len() != n * n {
            return Err(Error::MalformedTables("meet table has wrong size".into()));
        }
        if meet.iter().any(|&x| x >= n) || (top >= n && n > 0) {
            return Err(Error::MalformedTables("semilattice entry out of range".into()));
        }
        if n == 0 {
            return Err(Error::MalformedTables("semilattice needs at least a top element".into()));
        }
        let mt = |a: usize, b: usize| meet[a * n + b];
        for a in 0..n {
            if mt(a, a) != a {
                return Err(Error::MalformedTables(format!("meet not idempotent at {a}")));
            }
            if mt(top, a) != a || mt(a, top) != a {
                return Err(Error::MalformedTables(format!("top not neutral at {a}")));
            }
            for b in 0..n {
                if mt(a, b) != mt(b, a) {
                    return Err(Error::MalformedTables(format!("meet not commutative at ({a}, {b})")));
                }
                for cc in 0..n {
                    if mt(mt(a, b), cc) != mt(a, mt(b, cc)) {
                        return Err(Error::MalformedTables(format!(
                            "meet not associative at ({a}, {b}, {cc})"
                        )));
                    }
                }
            }
        }
        Ok(Semilattice { n, meet, top })
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; a semilattice has at least its top.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Meet of two elements.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    /// The top element.
    pub fn top(&self) -> usize {
        self.top
    }

    /// Partial order derived from the meet: `a <= b` iff `a∧b = a`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    /// Size of the downset of `a`.
    fn downset_size(&self, a: usize) -> usize {
        (0..self.n).filter(|&b| self.leq(b, a)).count()
    }

    /// Searches for a meet-and-top preserving bijection onto `other`,
    /// returning the element map if one exists.
    pub fn find_isomorphism(&self, other: &Semilattice) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        self.search_iso(other, 0, &mut map, &mut used).then_some(map)
    }

    fn search_iso(&self, other: &Semilattice, next: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if next == self.n {
            if map[self.top] != other.top {
                return false;
            }
            for a in 0..self.n {
                for b in 0..self.n {
                    if map[self.meet(a, b)] != other.meet(map[a], map[b]) {
                        return false;
                    }
                }
            }
            return true;
        }
        for cand in 0..self.n {
            if used[cand] || self.downset_size(next) != other.downset_size(cand) {
                continue;
            }
            // partial consistency: elements are assigned in index order, so
            // a meet is determined once its index is <= next
            let consistent = (0..=next).all(|a| {
                let img_a = if a == next { cand } else { map[a] };
                let mt = self.meet(next, a);
                if mt > next {
                    return true;
                }
                let img_mt = if mt == next { cand } else { map[mt] };
                img_mt == other.meet(cand, img_a)
            });
            if !consistent {
                continue;
            }
            map[next] = cand;
            used[cand] = true;
            if self.search_iso(other, next + 1, map, used) {
                return true;
            }
            map[next] = usize::MAX;
            used[cand] = false;
        }
        false
    }

    /// True when a meet-and-top preserving bijection onto `other` exists.
    pub fn is_isomorphic(&self, other: &Semilattice) -> bool {
        self.find_isomorphism(other).is_some()
    }
}

/// The semilattice of subunit classes of a firm category, indexed as in
/// [`enumerate_subunits`], with meet induced by the tensor and top the
/// class of the identity on the unit.
pub fn isub_semilattice(c: &FinCategory, m: &MonoidalData) -> Result<Semilattice, Error> {
    if !is_firm(c, m) {
        return Err(Error::NotFirm("subunit semilattice requires a firm category".into()));
    }
    let subs = enumerate_subunits(c, m);
    let n = subs.len();
    let top = classify_subunit(c, &subs, c.identity(m.unit()))
        .map(|(k, _)| k)
        .ok_or_else(|| Error::NotFirm("identity on the unit is not a subunit".into()))?;
    let mut meet = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            let w = meet_mono(c, m, &subs[i], &subs[j]);
            let (k, _) = classify_subunit(c, &subs, w)
                .ok_or_else(|| Error::NotFirm(format!("meet of subunits {i} and {j} is not a subunit")))?;
            meet[i * n + j] = k;
        }
    }
    Semilattice::new(n, meet, top).map_err(|e| match e {
        Error::MalformedTables(msg) => Error::NotFirm(format!("subunit meets are not a semilattice: {msg}")),
        other => other,
    })
}

/// Searches for a witness that `f : A -> B` restricts along the subunit
/// `s : S -> I`: a morphism `g : A -> B(x)S` with
/// `rho_B ∘ (B (x) s) ∘ g = f`. Returns the least such witness.
pub fn tensor_restricts(c: &FinCategory, m: &MonoidalData, f: MorId, s: &Subunit) -> Option<MorId> {
    let b = c.cod(f);
    let collapse = c
        .compose(m.rho(b), m.tensor_mor(c.identity(b), s.mono))
        .expect("collapse composes");
    c.hom(c.dom(f), m.tensor_obj(b, s.domain))
        .into_iter()
        .find(|&g| c.compose(collapse, g) == Some(f))
}

/// True when the identity of `a` restricts along `s`, i.e.
/// `rho_a ∘ (a (x) s)` is invertible.
pub fn identity_restricts(c: &FinCategory, m: &MonoidalData, a: ObjId, s: &Subunit) -> bool {
    let fold = c
        .compose(m.rho(a), m.tensor_mor(c.identity(a), s.mono))
        .expect("fold composes");
    c.is_iso(fold).is_some()
}

/// A morphism is tensor-total when every subunit it restricts along is one
/// the identity of its domain also restricts along.
pub fn is_tensor_total(c: &FinCategory, m: &MonoidalData, subs: &[Subunit], f: MorId) -> bool {
    subs.iter().all(|s| {
        tensor_restricts(c, m, f, s).is_none() || identity_restricts(c, m, c.dom(f), s)
    })
}

/// Searches for a duality `(unit_map, counit_map)` exhibiting `astar` as a
/// right dual of `a`: `eta : I -> A*(x)A` and `eps : A(x)A* -> I`
/// satisfying both triangle (snake) identities. Returns the least pair.
pub fn check_duality(
    c: &FinCategory,
    m: &MonoidalData,
    a: ObjId,
    astar: ObjId,
) -> Option<(MorId, MorId)> {
    let i = m.unit();
    let rho_inv = c.is_iso(m.rho(a))?;
    let lam_inv = c.is_iso(m.lambda(astar))?;
    let etas = c.hom(i, m.tensor_obj(astar, a));
    let epss = c.hom(m.tensor_obj(a, astar), i);
    for &eta in &etas {
        for &eps in &epss {
            let snake1 = c.compose_chain(&[
                m.lambda(a),
                m.tensor_mor(eps, c.identity(a)),
                m.alpha(a, astar, a),
                m.tensor_mor(c.identity(a), eta),
                rho_inv,
            ]);
            if snake1 != Some(c.identity(a)) {
                continue;
            }
            let alpha_inv = match c.is_iso(m.alpha(astar, a, astar)) {
                Some(x) => x,
                None => continue,
            };
            let snake2 = c.compose_chain(&[
                m.rho(astar),
                m.tensor_mor(c.identity(astar), eps),
                alpha_inv,
                m.tensor_mor(eta, c.identity(astar)),
                lam_inv,
            ]);
            if snake2 == Some(c.identity(astar)) {
                return Some((eta, eps));
            }
        }
    }
    None
}
