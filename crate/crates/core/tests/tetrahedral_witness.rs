use qac_core::automata::witness::SearchOptions;
use qac_core::automata::{
    brute_force_check, build_orbit_dfa, conjugate_witness, count_accepting, qsf_search, unique_witness_check,
    word_product, ComplexityPair, Count, GroupOrder, QuantumDFA, Word,
};
use qac_core::exactfield::{ratio, CycNum, CyclotomicField, Field};
use qac_core::groups::{catalog_up_to, tetrahedral_generators, GroupFamily};
use qac_core::projlinalg::{AffineLabel, Matrix, ProjPoint};

fn gauss(k: &Field, re: (i64, i64), im: (i64, i64)) -> CycNum {
    CycNum::from_coeffs(k, &[ratio(re.0, re.1), ratio(im.0, im.1)]).unwrap()
}

fn reference_witness() -> (Field, QuantumDFA) {
    let k = CyclotomicField::new(4).unwrap();
    let [a, b] = tetrahedral_generators(&k);
    let x: Word = "0011".parse().unwrap();
    let m = conjugate_witness(&a, &b, &x, &[ratio(1, 1), ratio(2, 1)]).unwrap();
    (k, m)
}

#[test]
fn conjugated_matrices() {
    let (k, m) = reference_witness();
    let g = |re: i64, im: i64| gauss(&k, (re, 10), (im, 10));
    let u0 = Matrix::from_2x2([[g(5, 1), g(5, 7)], [g(-5, 7), g(5, -1)]]).unwrap();
    let u1 = Matrix::from_2x2([[g(5, -7), g(5, 1)], [g(-5, 1), g(5, 7)]]).unwrap();
    assert_eq!(m.delta[0], u0);
    assert_eq!(m.delta[1], u1);
    assert_eq!(m.start, ProjPoint::basis(&k, 2, 0));
    assert_eq!(m.accept, ProjPoint::basis(&k, 2, 1));
}

#[test]
fn tetrahedral_relations() {
    let k = CyclotomicField::new(4).unwrap();
    let [a, b] = tetrahedral_generators(&k);
    let a3 = a.pow(3);
    assert_eq!(a3, b.pow(3));
    assert_eq!(a3, word_product(&a, &b, &"0101".parse().unwrap()).unwrap());
    assert_eq!(a3, Matrix::identity(&k, 2).neg());
}

#[test]
fn orbit_is_the_cuboctahedron() {
    let (k, m) = reference_witness();
    let orbit = build_orbit_dfa(&m, 100).unwrap();
    assert_eq!(orbit.len(), 12);
    assert!(orbit.transitions_are_permutations());

    let fin = |re: (i64, i64), im: (i64, i64)| AffineLabel::Finite(gauss(&k, re, im));
    let mut want = vec![
        fin((0, 1), (0, 1)),
        fin((16, 13), (-15, 13)),
        fin((-9, 13), (20, 13)),
        fin((16, 13), (15, 13)),
        fin((9, 37), (20, 37)),
        fin((3, 4), (0, 1)),
        fin((-4, 3), (0, 1)),
        AffineLabel::Infinity,
        fin((-16, 37), (-15, 37)),
        fin((9, 37), (-20, 37)),
        fin((-9, 13), (-20, 13)),
        fin((-16, 37), (15, 37)),
    ];
    let mut got: Vec<AffineLabel> = orbit.states.iter().map(|p| p.affine_label().unwrap()).collect();
    let key = |l: &AffineLabel| format!("{l}");
    want.sort_by_key(key);
    got.sort_by_key(key);
    assert_eq!(got, want);
}

#[test]
fn path_of_0011_through_the_orbit() {
    // 0 –U1→ −16/37−15/37i –U1→ 9/37−20/37i –U0→ −16/37+15/37i –U0→ ∞
    let (k, m) = reference_witness();
    let p0 = ProjPoint::basis(&k, 2, 0);
    let p1 = p0.apply(&m.delta[1]).unwrap();
    let p2 = p1.apply(&m.delta[1]).unwrap();
    let p3 = p2.apply(&m.delta[0]).unwrap();
    let p4 = p3.apply(&m.delta[0]).unwrap();
    let label = |p: &ProjPoint| p.affine_label().unwrap().to_string();
    assert_eq!(label(&p0), "0");
    assert_eq!(label(&p1), "-16/37-15/37i");
    assert_eq!(label(&p2), "9/37-20/37i");
    assert_eq!(label(&p3), "-16/37+15/37i");
    assert_eq!(label(&p4), "∞");
    assert_eq!(
        p0.apply(&m.delta[0]).unwrap().affine_label().unwrap().to_string(),
        "-9/13+20/13i"
    );
}

#[test]
fn word_0011_is_uniquely_accepted() {
    let (_, m) = reference_witness();
    let x: Word = "0011".parse().unwrap();
    let c = unique_witness_check(&m, &x, 100).unwrap();
    assert!(c.unique);
    assert_eq!(c.orbit_size, Some(12));
    let orbit = build_orbit_dfa(&m, 100).unwrap();
    assert_eq!(count_accepting(&orbit, 4), Count::One(x.clone()));

    let b = brute_force_check(&m, &x).unwrap();
    assert!(b.unique);

    // the orbit and enumeration methods agree on every length-4 word
    for y in Word::all(4) {
        let orbit_says = unique_witness_check(&m, &y, 100).unwrap().unique;
        let brute_says = brute_force_check(&m, &y).unwrap().unique;
        assert_eq!(orbit_says, brute_says, "{y}");
        assert_eq!(orbit_says, y == x, "{y}");
        assert_eq!(m.accepts(&y).unwrap(), y == x, "{y}");
    }
}

#[test]
fn axis_aligned_conjugation_is_valid() {
    let k = CyclotomicField::new(4).unwrap();
    let [a, b] = tetrahedral_generators(&k);
    let x: Word = "0011".parse().unwrap();
    let m = conjugate_witness(&a, &b, &x, &[ratio(1, 1), ratio(0, 1)]).unwrap();
    assert!(m.accepts(&x).unwrap());
    let orbit = unique_witness_check(&m, &x, 100).unwrap();
    let brute = brute_force_check(&m, &x).unwrap();
    assert_eq!(orbit.unique, brute.unique);
    assert_eq!(orbit.count, brute.count);
}

#[test]
fn search_finds_the_tetrahedral_witness() {
    let x: Word = "0011".parse().unwrap();
    let families = catalog_up_to(12, true);
    let report = qsf_search(&x, &families, &SearchOptions::default()).unwrap();
    let w = report.witness.expect("a witness exists at order 12");
    assert_eq!(
        w.pair,
        ComplexityPair {
            states: 2,
            order: GroupOrder::Finite(12)
        }
    );
    assert_eq!(w.family, GroupFamily::BinaryTetrahedral);
    assert!(w.certificate.unique);
    assert!(brute_force_check(&w.dfa, &x).unwrap().unique);
    // every smaller group was scanned completely
    let scanned: usize = report.scans.iter().filter(|s| s.order < 12).map(|s| s.pairs).sum();
    let expected: usize = families
        .iter()
        .filter(|f| f.order(true) < 12)
        .map(|f| f.order(true) * f.order(true))
        .sum();
    assert_eq!(scanned, expected);
}

#[test]
fn prunes_do_not_change_the_search() {
    let families = catalog_up_to(12, true);
    for x in ["0011", "0110", "000111"] {
        let x: Word = x.parse().unwrap();
        let pruned = qsf_search(&x, &families, &SearchOptions::default()).unwrap();
        let options = SearchOptions {
            group_prune: false,
            ..SearchOptions::default()
        };
        let full = qsf_search(&x, &families, &options).unwrap();
        let key = |r: &qac_core::automata::witness::SearchReport| {
            r.witness.as_ref().map(|w| (w.family, w.delta_indices, w.v.clone()))
        };
        assert_eq!(key(&pruned), key(&full), "{x}");
    }
}
