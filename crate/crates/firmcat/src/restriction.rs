//! Restriction and corestriction structure on a finite category.
//!
//! A restriction operator assigns to every morphism `f: A -> B` a partial
//! identity `bar(f): A -> A` recording where `f` is defined; a corestriction
//! operator assigns `hat(f): B -> B` recording the image side. Both are plain
//! lookup tables here, validated for typing at construction and for the
//! equational laws by the suites in this module.

use crate::fincat::{FinCategory, Functor, LawReport, MorId, ObjId};
use crate::monoidal::{MonoidalData, Semilattice};
use crate::Error;

/// Restriction operator: for each morphism `f: A -> B` an endomorphism
/// `bar(f): A -> A`.
///
/// Construction checks typing only; run [`check_r_axioms`] for the laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionData {
    bar: Vec<MorId>,
}

impl RestrictionData {
    /// Validates that `bar` assigns every morphism an endomorphism of its
    /// domain.
    pub fn new(c: &FinCategory, bar: Vec<MorId>) -> Result<Self, Error> {
        if bar.len() != c.n_morphisms() {
            return Err(Error::MalformedTables(format!(
                "restriction table has {} entries for {} morphisms",
                bar.len(),
                c.n_morphisms()
            )));
        }
        for (f, &bf) in bar.iter().enumerate() {
            if bf >= c.n_morphisms() {
                return Err(Error::MalformedTables(format!(
                    "restriction of morphism {f} is out of range"
                )));
            }
            if c.dom(bf) != c.dom(f) || c.cod(bf) != c.dom(f) {
                return Err(Error::MalformedTables(format!(
                    "restriction of morphism {f} is not an endomorphism of its domain"
                )));
            }
        }
        Ok(Self { bar })
    }

    /// The partial identity `bar(f): dom f -> dom f`.
    pub fn bar(&self, f: MorId) -> MorId {
        self.bar[f]
    }

    /// The raw table.
    pub fn table(&self) -> &[MorId] {
        &self.bar
    }

    /// Consumes the structure and returns the table.
    pub fn into_table(self) -> Vec<MorId> {
        self.bar
    }
}

/// Corestriction operator: for each morphism `f: A -> B` an endomorphism
/// `hat(f): B -> B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorestrictionData {
    hat: Vec<MorId>,
}

impl CorestrictionData {
    /// Validates that `hat` assigns every morphism an endomorphism of its
    /// codomain.
    pub fn new(c: &FinCategory, hat: Vec<MorId>) -> Result<Self, Error> {
        if hat.len() != c.n_morphisms() {
            return Err(Error::MalformedTables(format!(
                "corestriction table has {} entries for {} morphisms",
                hat.len(),
                c.n_morphisms()
            )));
        }
        for (f, &hf) in hat.iter().enumerate() {
            if hf >= c.n_morphisms() {
                return Err(Error::MalformedTables(format!(
                    "corestriction of morphism {f} is out of range"
                )));
            }
            if c.dom(hf) != c.cod(f) || c.cod(hf) != c.cod(f) {
                return Err(Error::MalformedTables(format!(
                    "corestriction of morphism {f} is not an endomorphism of its codomain"
                )));
            }
        }
        Ok(Self { hat })
    }

    /// The image idempotent `hat(f): cod f -> cod f`.
    pub fn hat(&self, f: MorId) -> MorId {
        self.hat[f]
    }

    /// The raw table.
    pub fn table(&self) -> &[MorId] {
        &self.hat
    }

    /// Consumes the structure and returns the table.
    pub fn into_table(self) -> Vec<MorId> {
        self.hat
    }
}

/// Checks the four restriction laws.
///
/// - `R1`: `f . bar f = f`
/// - `R2`: `bar f . bar g = bar g . bar f` for `f, g` with a common domain
/// - `R3`: `bar(g . bar f) = bar g . bar f` for `f, g` with a common domain
/// - `R4`: `bar g . f = f . bar(g . f)` whenever `cod f = dom g`
pub fn check_r_axioms(c: &FinCategory, r: &RestrictionData) -> LawReport {
    let mut report = LawReport::new("R");
    for f in c.morphisms() {
        let bf = r.bar(f);
        let lhs = c.compose(f, bf);
        if lhs != Some(f) {
            report.push("R1", vec![f], lhs, Some(f));
        }
    }
    for f in c.morphisms() {
        for g in c.morphisms() {
            if c.dom(f) != c.dom(g) {
                continue;
            }
            let (bf, bg) = (r.bar(f), r.bar(g));
            let fg = c.compose(bf, bg);
            let gf = c.compose(bg, bf);
            if fg != gf {
                report.push("R2", vec![f, g], fg, gf);
            }
            let gbf = c.compose(g, bf);
            let lhs = gbf.map(|x| r.bar(x));
            if lhs != gf {
                report.push("R3", vec![f, g], lhs, gf);
            }
        }
    }
    for (g, f) in c.composable_pairs() {
        let lhs = c.compose(r.bar(g), f);
        let rhs = c.compose(g, f).and_then(|gf| c.compose(f, r.bar(gf)));
        if lhs != rhs {
            report.push("R4", vec![g, f], lhs, rhs);
        }
    }
    report.finish()
}

/// Checks the four corestriction laws, the mirror images of `R1`-`R4`.
///
/// - `CR1`: `hat f . f = f`
/// - `CR2`: `hat f . hat g = hat g . hat f` for `f, g` with a common codomain
/// - `CR3`: `hat(hat g . f) = hat g . hat f` for `f, g` with a common codomain
/// - `CR4`: `g . hat f = hat(g . f) . g` whenever `dom g = cod f`
pub fn check_cr_axioms(c: &FinCategory, h: &CorestrictionData) -> LawReport {
    let mut report = LawReport::new("CR");
    for f in c.morphisms() {
        let hf = h.hat(f);
        let lhs = c.compose(hf, f);
        if lhs != Some(f) {
            report.push("CR1", vec![f], lhs, Some(f));
        }
    }
    for f in c.morphisms() {
        for g in c.morphisms() {
            if c.cod(f) != c.cod(g) {
                continue;
            }
            let (hf, hg) = (h.hat(f), h.hat(g));
            let fg = c.compose(hf, hg);
            let gf = c.compose(hg, hf);
            if fg != gf {
                report.push("CR2", vec![f, g], fg, gf);
            }
            let lhs = c.compose(hg, f).map(|x| h.hat(x));
            let rhs = c.compose(hg, hf);
            if lhs != rhs {
                report.push("CR3", vec![f, g], lhs, rhs);
            }
        }
    }
    for (g, f) in c.composable_pairs() {
        let lhs = c.compose(g, h.hat(f));
        let rhs = c.compose(g, f).and_then(|gf| c.compose(h.hat(gf), g));
        if lhs != rhs {
            report.push("CR4", vec![g, f], lhs, rhs);
        }
    }
    report.finish()
}

/// Checks the range laws, which tie a corestriction operator to an existing
/// restriction operator.
///
/// - `RR1`: `bar(hat f) = hat f`
/// - `RR2`: `hat f . f = f`
/// - `RR3`: `hat(bar g . f) = bar g . hat f` whenever `cod f = dom g`
/// - `RR4`: `hat(g . hat f) = hat(g . f)` whenever `cod f = dom g`
pub fn check_rr_axioms(
    c: &FinCategory,
    r: &RestrictionData,
    h: &CorestrictionData,
) -> LawReport {
    let mut report = LawReport::new("RR");
    for f in c.morphisms() {
        let hf = h.hat(f);
        if r.bar(hf) != hf {
            report.push("RR1", vec![f], Some(r.bar(hf)), Some(hf));
        }
        let lhs = c.compose(hf, f);
        if lhs != Some(f) {
            report.push("RR2", vec![f], lhs, Some(f));
        }
    }
    for (g, f) in c.composable_pairs() {
        let lhs = c.compose(r.bar(g), f).map(|x| h.hat(x));
        let rhs = c.compose(r.bar(g), h.hat(f));
        if lhs != rhs {
            report.push("RR3", vec![g, f], lhs, rhs);
        }
        let lhs4 = c.compose(g, h.hat(f)).map(|x| h.hat(x));
        let rhs4 = c.compose(g, f).map(|x| h.hat(x));
        if lhs4 != rhs4 {
            report.push("RR4", vec![g, f], lhs4, rhs4);
        }
    }
    report.finish()
}

/// Checks the two compatibility laws for a birestriction structure, where
/// restriction and corestriction idempotents coincide classwise.
///
/// - `BR1`: `hat(bar f) = bar f`
/// - `BR2`: `bar(hat f) = hat f`
pub fn check_br_axioms(
    c: &FinCategory,
    r: &RestrictionData,
    h: &CorestrictionData,
) -> LawReport {
    let _ = c;
    let mut report = LawReport::new("BR");
    for (f, _) in r.table().iter().enumerate() {
        let bf = r.bar(f);
        if h.hat(bf) != bf {
            report.push("BR1", vec![f], Some(h.hat(bf)), Some(bf));
        }
        let hf = h.hat(f);
        if r.bar(hf) != hf {
            report.push("BR2", vec![f], Some(r.bar(hf)), Some(hf));
        }
    }
    report.finish()
}

/// The restriction idempotents on one object, as a meet-semilattice under
/// composition.
#[derive(Debug, Clone)]
pub struct RestrictionIdempotents {
    /// Morphism ids of the idempotents, ascending.
    pub elements: Vec<MorId>,
    /// Their semilattice structure; indices match `elements`.
    pub semilattice: Semilattice,
}

/// Collects `O(a)`, the endomorphisms of `a` fixed by the restriction
/// operator, and packages them as a semilattice with composition as meet and
/// the identity as top.
///
/// Fails with [`Error::CheckFailed`] when the set is not closed under
/// composition or does not contain the identity, which signals broken
/// restriction data rather than a budget problem.
pub fn restriction_idempotents(
    c: &FinCategory,
    r: &RestrictionData,
    a: ObjId,
) -> Result<RestrictionIdempotents, Error> {
    let elements: Vec<MorId> = c
        .hom(a, a)
        .into_iter()
        .filter(|&e| r.bar(e) == e)
        .collect();
    let pos = |e: MorId| elements.binary_search(&e).ok();
    let top = pos(c.identity(a)).ok_or_else(|| {
        Error::CheckFailed(format!(
            "identity of object {a} is not a restriction idempotent"
        ))
    })?;
    let n = elements.len();
    let mut meet = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            let composite = c.compose(elements[i], elements[j]).ok_or_else(|| {
                Error::CheckFailed(format!(
                    "idempotents on object {a} do not compose"
                ))
            })?;
            meet[i * n + j] = pos(composite).ok_or_else(|| {
                Error::CheckFailed(format!(
                    "composite of restriction idempotents on object {a} is not one"
                ))
            })?;
        }
    }
    let semilattice = Semilattice::new(n, meet, top).map_err(|e| {
        Error::CheckFailed(format!(
            "restriction idempotents on object {a} fail semilattice laws: {e}"
        ))
    })?;
    Ok(RestrictionIdempotents {
        elements,
        semilattice,
    })
}

/// Whether `bar f` is the identity, i.e. `f` is defined everywhere.
pub fn is_restriction_total(c: &FinCategory, r: &RestrictionData, f: MorId) -> bool {
    r.bar(f) == c.identity(c.dom(f))
}

/// The wide subcategory of everywhere-defined morphisms, re-indexed, with an
/// embedding back into the ambient category.
#[derive(Debug, Clone)]
pub struct TotalSubcategory {
    /// The subcategory on the same objects.
    pub cat: FinCategory,
    /// Functor from the subcategory into the ambient category.
    pub embed: Functor,
    /// Inherited tensor tables, when the ambient category had them and all
    /// structure maps are total.
    pub monoidal: Option<MonoidalData>,
    /// For each ambient morphism, its index in the subcategory if total.
    pub from_ambient: Vec<Option<MorId>>,
}

/// Carves out the total morphisms.
///
/// Fails with [`Error::CheckFailed`] if identities or composites of total
/// morphisms escape the subcategory, or if monoidal data is supplied whose
/// structure maps or tensors of totals are not total; for data passing the
/// `R` and compatibility suites none of that can happen.
pub fn total_subcategory(
    c: &FinCategory,
    r: &RestrictionData,
    m: Option<&MonoidalData>,
) -> Result<TotalSubcategory, Error> {
    let totals: Vec<MorId> = c
        .morphisms()
        .filter(|&f| is_restriction_total(c, r, f))
        .collect();
    let mut from_ambient = vec![None; c.n_morphisms()];
    for (i, &f) in totals.iter().enumerate() {
        from_ambient[f] = Some(i);
    }
    let take = |f: MorId, what: &str| -> Result<MorId, Error> {
        from_ambient[f].ok_or_else(|| {
            Error::CheckFailed(format!("{what} is not restriction-total"))
        })
    };
    let n = c.n_objects();
    let mut identity = Vec::with_capacity(n);
    for a in c.objects() {
        identity.push(take(c.identity(a), &format!("identity of object {a}"))?);
    }
    let nm = totals.len();
    let mut dom = Vec::with_capacity(nm);
    let mut cod = Vec::with_capacity(nm);
    for &f in &totals {
        dom.push(c.dom(f));
        cod.push(c.cod(f));
    }
    let mut compose = vec![None; nm * nm];
    for gi in 0..nm {
        for fi in 0..nm {
            if let Some(gf) = c.compose(totals[gi], totals[fi]) {
                compose[gi * nm + fi] =
                    Some(take(gf, "a composite of total morphisms")?);
            }
        }
    }
    let cat = FinCategory::new(n, dom, cod, identity, compose)?;
    let embed = Functor {
        obj_map: (0..n).collect(),
        mor_map: totals.clone(),
    };
    let monoidal = match m {
        None => None,
        Some(m) => {
            let mut tensor_mor = vec![0usize; nm * nm];
            for fi in 0..nm {
                for gi in 0..nm {
                    tensor_mor[fi * nm + gi] = take(
                        m.tensor_mor(totals[fi], totals[gi]),
                        "a tensor of total morphisms",
                    )?;
                }
            }
            let mut tensor_obj = vec![0usize; n * n];
            let mut lambda = Vec::with_capacity(n);
            let mut rho = Vec::with_capacity(n);
            let mut alpha = vec![0usize; n * n * n];
            for a in 0..n {
                for b in 0..n {
                    tensor_obj[a * n + b] = m.tensor_obj(a, b);
                }
                lambda.push(take(m.lambda(a), "a unitor")?);
                rho.push(take(m.rho(a), "a unitor")?);
            }
            for a in 0..n {
                for b in 0..n {
                    for d in 0..n {
                        alpha[(a * n + b) * n + d] =
                            take(m.alpha(a, b, d), "an associator component")?;
                    }
                }
            }
            let sigma = match (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| m.sigma(a, b).map(|s| take(s, "a braiding component")))
                .collect::<Option<Result<Vec<_>, _>>>()
            {
                None => None,
                Some(rows) => Some(rows?),
            };
            Some(MonoidalData::new(
                &cat,
                m.unit(),
                tensor_obj,
                tensor_mor,
                lambda,
                rho,
                alpha,
                sigma,
            )?)
        }
    };
    Ok(TotalSubcategory {
        cat,
        embed,
        monoidal,
        from_ambient,
    })
}

/// The partial inverse of `f` when one exists: a morphism `g` with
/// `g . f = bar f` and `f . g = bar g`.
///
/// Lawful restriction data makes such a `g` unique; on arbitrary tables the
/// least candidate is returned so the result is deterministic.
pub fn restriction_inverse(
    c: &FinCategory,
    r: &RestrictionData,
    f: MorId,
) -> Option<MorId> {
    c.hom(c.cod(f), c.dom(f)).into_iter().find(|&g| {
        c.compose(g, f) == Some(r.bar(f)) && c.compose(f, g) == Some(r.bar(g))
    })
}

/// Whether every morphism has a partial inverse.
pub fn is_inverse_category(c: &FinCategory, r: &RestrictionData) -> bool {
    c.morphisms()
        .all(|f| restriction_inverse(c, r, f).is_some())
}

/// Checks compatibility of a restriction operator with tensor structure.
///
/// - `monrest-tensor`: `bar(f (x) g) = bar f (x) bar g`
/// - `monrest-coherence`: every unitor, associator, and braiding component is
///   restriction-total
pub fn check_monoidal_restriction(
    c: &FinCategory,
    m: &MonoidalData,
    r: &RestrictionData,
) -> LawReport {
    let mut report = LawReport::new("monrest");
    for f in c.morphisms() {
        for g in c.morphisms() {
            let lhs = r.bar(m.tensor_mor(f, g));
            let rhs = m.tensor_mor(r.bar(f), r.bar(g));
            if lhs != rhs {
                report.push("monrest-tensor", vec![f, g], Some(lhs), Some(rhs));
            }
        }
    }
    let mut check_total = |component: MorId| {
        if !is_restriction_total(c, r, component) {
            report.push(
                "monrest-coherence",
                vec![component],
                Some(r.bar(component)),
                Some(c.identity(c.dom(component))),
            );
        }
    };
    let n = c.n_objects();
    for a in 0..n {
        check_total(c.identity(a));
    }
    for a in 0..n {
        check_total(m.lambda(a));
        check_total(m.rho(a));
        for b in 0..n {
            if let Some(s) = m.sigma(a, b) {
                check_total(s);
            }
            for d in 0..n {
                check_total(m.alpha(a, b, d));
            }
        }
    }
    report.finish()
}

/// Scalar action `a . f` of an endomorphism `a` of the unit on a morphism
/// `f: X -> Y`, computed as `lambda_Y . (a (x) f) . lambda_X^{-1}`.
pub fn scalar_mult(
    c: &FinCategory,
    m: &MonoidalData,
    a: MorId,
    f: MorId,
) -> Result<MorId, Error> {
    let unit = m.unit();
    if c.dom(a) != unit || c.cod(a) != unit {
        return Err(Error::CheckFailed(format!(
            "morphism {a} is not an endomorphism of the unit"
        )));
    }
    let lam_dom = m.lambda(c.dom(f));
    let lam_cod = m.lambda(c.cod(f));
    let lam_dom_inv = c.is_iso(lam_dom).ok_or_else(|| {
        Error::CheckFailed(format!("unitor of object {} is not invertible", c.dom(f)))
    })?;
    c.compose_chain(&[lam_cod, m.tensor_mor(a, f), lam_dom_inv])
        .ok_or_else(|| {
            Error::CheckFailed("scalar action composite is undefined".into())
        })
}

/// Checks the interaction of scalars (unit endomorphisms) with restriction.
///
/// - `scalar-rest-mult`: `bar(s . t) = bar s . bar t` for all scalars
/// - `scalar-action-top`: `id_I . X = id_X`
/// - `scalar-action-meet`: `(e . e') . X = (e . X) compose (e' . X)` for
///   idempotent scalars
/// - `scalar-action-idem`: `e . X` is a restriction idempotent
pub fn check_scalar_lemmas(
    c: &FinCategory,
    m: &MonoidalData,
    r: &RestrictionData,
) -> LawReport {
    let mut report = LawReport::new("scalar");
    let unit = m.unit();
    let scalars = c.hom(unit, unit);
    for &s in &scalars {
        for &t in &scalars {
            if let Some(st) = c.compose(s, t) {
                let lhs = r.bar(st);
                let rhs = c.compose(r.bar(s), r.bar(t));
                if rhs != Some(lhs) {
                    report.push("scalar-rest-mult", vec![s, t], Some(lhs), rhs);
                }
            }
        }
    }
    let idems: Vec<MorId> = scalars
        .iter()
        .copied()
        .filter(|&e| r.bar(e) == e)
        .collect();
    for x in c.objects() {
        let id_x = c.identity(x);
        match scalar_mult(c, m, c.identity(unit), id_x) {
            Ok(v) if v == id_x => {}
            Ok(v) => report.push("scalar-action-top", vec![x], Some(v), Some(id_x)),
            Err(_) => report.push("scalar-action-top", vec![x], None, Some(id_x)),
        }
        for &e in &idems {
            let ex = match scalar_mult(c, m, e, id_x) {
                Ok(v) => v,
                Err(_) => {
                    report.push("scalar-action-idem", vec![e, x], None, None);
                    continue;
                }
            };
            if r.bar(ex) != ex {
                report.push("scalar-action-idem", vec![e, x], Some(r.bar(ex)), Some(ex));
            }
            for &e2 in &idems {
                let lhs = c
                    .compose(e, e2)
                    .and_then(|ee| scalar_mult(c, m, ee, id_x).ok());
                let rhs = scalar_mult(c, m, e2, id_x)
                    .ok()
                    .and_then(|e2x| c.compose(ex, e2x));
                if lhs != rhs {
                    report.push("scalar-action-meet", vec![e, e2, x], lhs, rhs);
                }
            }
        }
    }
    report.finish()
}

/// The restriction operator that declares every morphism total.
pub fn trivial_restriction(c: &FinCategory) -> RestrictionData {
    let bar = c.morphisms().map(|f| c.identity(c.dom(f))).collect();
    RestrictionData::new(c, bar).expect("identities are endomorphisms of their objects")
}

/// Promotes a birestriction structure to a range structure.
///
/// Requires the `R`, `CR`, and `BR` suites to pass, then verifies the derived
/// `RR` laws, which those suites entail; a failure there means the entailment
/// was broken by inconsistent tables and is reported as a check failure.
pub fn derived_range_from_birestriction(
    c: &FinCategory,
    r: &RestrictionData,
    h: &CorestrictionData,
) -> Result<CorestrictionData, Error> {
    if !check_r_axioms(c, r).passed() {
        return Err(Error::PrerequisiteFailed("restriction laws"));
    }
    if !check_cr_axioms(c, h).passed() {
        return Err(Error::PrerequisiteFailed("corestriction laws"));
    }
    if !check_br_axioms(c, r, h).passed() {
        return Err(Error::PrerequisiteFailed("birestriction compatibility"));
    }
    let rr = check_rr_axioms(c, r, h);
    if !rr.passed() {
        return Err(Error::CheckFailed(format!(
            "birestriction laws hold but a derived range law fails: {:?}",
            rr.violations[0]
        )));
    }
    Ok(h.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::CategoryBuilder;

    /// Two objects, one non-identity arrow `a: 0 -> 1`, plus a partial
    /// endomorphism `e: 0 -> 0` acting as `bar a`.
    fn partial_walk() -> (FinCategory, RestrictionData) {
        let mut b = CategoryBuilder::new(2);
        let id0 = b.add_morphism(0, 0);
        let id1 = b.add_morphism(1, 1);
        let e = b.add_morphism(0, 0);
        let a = b.add_morphism(0, 1);
        b.set_identity(0, id0);
        b.set_identity(1, id1);
        let c = b
            .finish(|g, f| match (g, f) {
                (g, f) if f == id0 => g,
                (g, f) if g == id0 => f,
                (g, f) if f == id1 => g,
                (g, f) if g == id1 => f,
                (g, f) if g == e && f == e => e,
                (g, f) if g == a && f == e => a,
                _ => unreachable!(),
            })
            .unwrap();
        let r = RestrictionData::new(&c, vec![id0, id1, e, e]).unwrap();
        (c, r)
    }

    #[test]
    fn partial_walk_satisfies_restriction_laws() {
        let (c, r) = partial_walk();
        let report = check_r_axioms(&c, &r);
        assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn broken_restriction_is_reported() {
        let (c, _) = partial_walk();
        // Declaring `a` total while `bar e = e` breaks R3 on the pair (e, a):
        // bar(a . bar e) = bar a = id, but bar a . bar e = e.
        let r = RestrictionData::new(&c, vec![0, 1, 2, 0]).unwrap();
        let report = check_r_axioms(&c, &r);
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| v.law == "R3"));
    }

    #[test]
    fn mistyped_restriction_table_is_rejected() {
        let (c, _) = partial_walk();
        assert!(matches!(
            RestrictionData::new(&c, vec![0, 1, 2, 1]),
            Err(Error::MalformedTables(_))
        ));
        assert!(matches!(
            RestrictionData::new(&c, vec![0, 1, 2]),
            Err(Error::MalformedTables(_))
        ));
    }

    #[test]
    fn trivial_restriction_passes_everywhere() {
        let (c, _) = partial_walk();
        let r = trivial_restriction(&c);
        assert!(check_r_axioms(&c, &r).passed());
        for f in c.morphisms() {
            assert!(is_restriction_total(&c, &r, f));
        }
        let sub = total_subcategory(&c, &r, None).unwrap();
        assert_eq!(sub.cat.n_morphisms(), c.n_morphisms());
    }

    #[test]
    fn idempotents_form_a_semilattice() {
        let (c, r) = partial_walk();
        let o0 = restriction_idempotents(&c, &r, 0).unwrap();
        assert_eq!(o0.elements, vec![0, 2]);
        assert_eq!(o0.semilattice.top(), 0);
        assert_eq!(o0.semilattice.meet(0, 1), 1);
        let o1 = restriction_idempotents(&c, &r, 1).unwrap();
        assert_eq!(o1.elements, vec![1]);
    }

    #[test]
    fn total_subcategory_drops_partial_morphisms() {
        let (c, r) = partial_walk();
        let sub = total_subcategory(&c, &r, None).unwrap();
        // `e` and `a` are partial; only identities survive.
        assert_eq!(sub.cat.n_morphisms(), 2);
        assert_eq!(sub.embed.mor_map, vec![0, 1]);
        assert_eq!(sub.from_ambient, vec![Some(0), Some(1), None, None]);
        assert!(crate::fincat::check_functor_laws(&sub.cat, &c, &sub.embed).passed());
    }

    #[test]
    fn restriction_inverse_of_partial_identity_is_itself() {
        let (c, r) = partial_walk();
        assert_eq!(restriction_inverse(&c, &r, 2), Some(2));
        assert_eq!(restriction_inverse(&c, &r, 0), Some(0));
        // `a` has no inverse: nothing maps 1 -> 0.
        assert_eq!(restriction_inverse(&c, &r, 3), None);
        assert!(!is_inverse_category(&c, &r));
    }
}
