//! Randomized invariants: serialization round-trips, relabeling
//! invariance of the isomorphism search, subunit arithmetic of carrier
//! composition, and parser robustness on arbitrary input.

use proptest::prelude::*;

use firmcat::examples::{
    boolean_ideal_semilattice, chain_semilattice, cyclic_group_category, depressing_downsets,
    diamond_semilattice, finpar, finset_monoidal, from_semilattice,
};
use firmcat::fincat::FinCategory;
use firmcat::format::{document_from_data, parse, serialize};
use firmcat::iso::{find_isomorphism, StructureFlags, DEFAULT_SEARCH_BUDGET};
use firmcat::monoidal::{subunit_meet, MonoidalData};
use firmcat::restriction::{CorestrictionData, RestrictionData};
use firmcat::sconstr::build_s_construction;
use firmcat::CategoryData;

fn generated(ix: usize) -> (&'static str, CategoryData) {
    match ix {
        0 => ("semilattice chain1", from_semilattice(&chain_semilattice(1).unwrap())),
        1 => ("semilattice chain2", from_semilattice(&chain_semilattice(2).unwrap())),
        2 => ("semilattice chain3", from_semilattice(&chain_semilattice(3).unwrap())),
        3 => ("semilattice diamond", from_semilattice(&diamond_semilattice())),
        4 => ("semilattice bool1", from_semilattice(&boolean_ideal_semilattice(1).unwrap())),
        5 => ("downsets chain2", depressing_downsets(&chain_semilattice(2).unwrap())),
        6 => ("downsets chain3", depressing_downsets(&chain_semilattice(3).unwrap())),
        7 => ("downsets diamond", depressing_downsets(&diamond_semilattice())),
        8 => ("finpar 1", finpar(1).unwrap()),
        9 => ("finpar 2", finpar(2).unwrap()),
        10 => ("finset 1", finset_monoidal(1).unwrap()),
        11 => ("finset 2", finset_monoidal(2).unwrap()),
        12 => ("cyclic 2", cyclic_group_category(2).unwrap()),
        13 => ("cyclic 3", cyclic_group_category(3).unwrap()),
        _ => ("cyclic 4", cyclic_group_category(4).unwrap()),
    }
}

const GENERATED_COUNT: usize = 15;

/// Firm monoidal bases small enough to build pair constructions under
/// shrinking without dominating the run time.
fn firm_base(ix: usize) -> (&'static str, CategoryData) {
    match ix {
        0 => ("chain1", from_semilattice(&chain_semilattice(1).unwrap())),
        1 => ("chain2", from_semilattice(&chain_semilattice(2).unwrap())),
        2 => ("chain3", from_semilattice(&chain_semilattice(3).unwrap())),
        3 => ("diamond", from_semilattice(&diamond_semilattice())),
        4 => ("finset1", finset_monoidal(1).unwrap()),
        _ => ("cyclic2", cyclic_group_category(2).unwrap()),
    }
}

const FIRM_COUNT: usize = 6;

/// Rebuilds the same data with objects and morphisms renumbered by the
/// given permutations; `obj_perm[a]` is the new id of object `a`.
fn relabeled(data: &CategoryData, obj_perm: &[usize], mor_perm: &[usize]) -> CategoryData {
    let c = &data.cat;
    let n = c.n_morphisms();
    let no = c.n_objects();
    let mut dom = vec![0; n];
    let mut cod = vec![0; n];
    for f in c.morphisms() {
        dom[mor_perm[f]] = obj_perm[c.dom(f)];
        cod[mor_perm[f]] = obj_perm[c.cod(f)];
    }
    let mut identity = vec![0; no];
    for a in c.objects() {
        identity[obj_perm[a]] = mor_perm[c.identity(a)];
    }
    let mut compose = vec![None; n * n];
    for g in c.morphisms() {
        for f in c.morphisms() {
            if let Some(h) = c.compose(g, f) {
                compose[mor_perm[g] * n + mor_perm[f]] = Some(mor_perm[h]);
            }
        }
    }
    let cat = FinCategory::new(no, dom, cod, identity, compose)
        .expect("permuted tables stay well formed");

    let monoidal = data.monoidal.as_ref().map(|m| {
        let mut tobj = vec![0; no * no];
        let mut tmor = vec![0; n * n];
        let mut lambda = vec![0; no];
        let mut rho = vec![0; no];
        let mut alpha = vec![0; no * no * no];
        for a in c.objects() {
            for b in c.objects() {
                tobj[obj_perm[a] * no + obj_perm[b]] = obj_perm[m.tensor_obj(a, b)];
            }
            lambda[obj_perm[a]] = mor_perm[m.lambda(a)];
            rho[obj_perm[a]] = mor_perm[m.rho(a)];
        }
        for f in c.morphisms() {
            for g in c.morphisms() {
                tmor[mor_perm[f] * n + mor_perm[g]] = mor_perm[m.tensor_mor(f, g)];
            }
        }
        for a in c.objects() {
            for b in c.objects() {
                for x in c.objects() {
                    alpha[(obj_perm[a] * no + obj_perm[b]) * no + obj_perm[x]] =
                        mor_perm[m.alpha(a, b, x)];
                }
            }
        }
        let sigma = m.has_braiding().then(|| {
            let mut table = vec![0; no * no];
            for a in c.objects() {
                for b in c.objects() {
                    table[obj_perm[a] * no + obj_perm[b]] =
                        mor_perm[m.sigma(a, b).expect("braided tables are total")];
                }
            }
            table
        });
        MonoidalData::new(
            &cat,
            obj_perm[m.unit()],
            tobj,
            tmor,
            lambda,
            rho,
            alpha,
            sigma,
        )
        .expect("permuted tensor tables stay well typed")
    });

    let restriction = data.restriction.as_ref().map(|r| {
        let mut bar = vec![0; n];
        for f in c.morphisms() {
            bar[mor_perm[f]] = mor_perm[r.bar(f)];
        }
        RestrictionData::new(&cat, bar).expect("permuted bar stays well typed")
    });
    let corestriction = data.corestriction.as_ref().map(|h| {
        let mut hat = vec![0; n];
        for f in c.morphisms() {
            hat[mor_perm[f]] = mor_perm[h.hat(f)];
        }
        CorestrictionData::new(&cat, hat).expect("permuted hat stays well typed")
    });

    CategoryData { cat, monoidal, restriction, corestriction }
}

proptest! {
    /// Serialized generator output parses back to the same document and
    /// serializes identically the second time.
    #[test]
    fn serialization_round_trips(ix in 0..GENERATED_COUNT) {
        let (name, data) = generated(ix);
        let doc = document_from_data(&data);
        let text = serialize(&doc);
        let reparsed = parse(&text);
        prop_assert_eq!(reparsed.as_ref(), Ok(&doc), "parse(serialize) changed {}", name);
        prop_assert_eq!(serialize(&reparsed.unwrap()), text, "second pass changed {}", name);
    }

    /// Renumbering objects and morphisms is invisible to the isomorphism
    /// search: it must reconnect the relabeled copy to the original with
    /// every structure flag that the data supports.
    #[test]
    fn relabeling_is_always_isomorphic(
        ix in 0..GENERATED_COUNT,
        seed_obj in proptest::collection::vec(any::<u32>(), 16),
        seed_mor in proptest::collection::vec(any::<u32>(), 64),
    ) {
        let (name, data) = generated(ix);
        let no = data.cat.n_objects();
        let n = data.cat.n_morphisms();
        // Fisher-Yates driven by the raw seeds; shrinking the seeds walks
        // toward the identity permutation.
        let mut obj_perm: Vec<usize> = (0..no).collect();
        for a in (1..no).rev() {
            obj_perm.swap(a, seed_obj[a % seed_obj.len()] as usize % (a + 1));
        }
        let mut mor_perm: Vec<usize> = (0..n).collect();
        for f in (1..n).rev() {
            mor_perm.swap(f, seed_mor[f % seed_mor.len()] as usize % (f + 1));
        }
        let copy = relabeled(&data, &obj_perm, &mor_perm);
        let flags = StructureFlags {
            monoidal: data.monoidal.is_some(),
            restriction: data.restriction.is_some(),
            corestriction: data.corestriction.is_some(),
        };
        let found = find_isomorphism(&data, &copy, flags, DEFAULT_SEARCH_BUDGET)
            .expect("search stays within budget");
        prop_assert!(found.is_some(), "relabeled {} was not recognized", name);
    }

    /// Composing carrier pairs tensors the definedness levels: the subunit
    /// of a composite is the meet of the factors' subunits.
    #[test]
    fn carrier_composition_meets_subunits(
        ix in 0..FIRM_COUNT,
        pick_f in any::<u32>(),
        pick_g in any::<u32>(),
    ) {
        let (name, base) = firm_base(ix);
        let m = base.monoidal.as_ref().unwrap();
        let s = build_s_construction(&base.cat, m).expect("bundled bases are firm");
        let f = pick_f as usize % s.cat.n_morphisms();
        let outgoing: Vec<usize> = s
            .cat
            .morphisms()
            .filter(|&g| s.cat.dom(g) == s.cat.cod(f))
            .collect();
        let g = outgoing[pick_g as usize % outgoing.len()];
        let composite = s.cat.compose(g, f).expect("pair is composable by choice");
        let expected = subunit_meet(
            &s.base,
            &s.base_monoidal,
            &s.subunits,
            s.pair(f).subunit,
            s.pair(g).subunit,
        )
        .expect("meets of canonical classes exist");
        prop_assert_eq!(
            s.pair(composite).subunit,
            expected,
            "composite level over {} is not the meet",
            name
        );
    }

    /// The restriction of a composite never exceeds the restriction of the
    /// first factor: bar(g . f) = bar(bar g . f) composed into bar f.
    #[test]
    fn carrier_restriction_shrinks_along_composition(
        ix in 0..FIRM_COUNT,
        pick_f in any::<u32>(),
        pick_g in any::<u32>(),
    ) {
        let (name, base) = firm_base(ix);
        let m = base.monoidal.as_ref().unwrap();
        let s = build_s_construction(&base.cat, m).expect("bundled bases are firm");
        let f = pick_f as usize % s.cat.n_morphisms();
        let outgoing: Vec<usize> = s
            .cat
            .morphisms()
            .filter(|&g| s.cat.dom(g) == s.cat.cod(f))
            .collect();
        let g = outgoing[pick_g as usize % outgoing.len()];
        let gf = s.cat.compose(g, f).expect("pair is composable by choice");
        let bar_gf = s.restriction.bar(gf);
        let shrunk = s
            .cat
            .compose(s.restriction.bar(f), bar_gf)
            .expect("restriction idempotents on one object compose");
        prop_assert_eq!(shrunk, bar_gf, "bar(g . f) escapes bar f over {}", name);
    }

    /// Arbitrary printable input never panics the parser; it either parses
    /// or reports a structured error.
    #[test]
    fn parser_is_total_on_printable_text(text in "([ -~]{0,60}\n){0,25}") {
        let _ = parse(&text);
    }

    /// Prepending a valid header keeps the parser total on arbitrary tails.
    #[test]
    fn parser_is_total_after_a_valid_header(tail in "([ -~]{0,60}\n){0,25}") {
        let _ = parse(&format!("format 1 monoidal braided restriction corestriction\n{tail}"));
    }
}
