use num_integer::Integer;
use proptest::prelude::*;

use sslab::groups::{hom_count, AbelianGroup, FiniteGroup, Presentation, Word};
use sslab::lspace::{certify, is_qhs};
use sslab::seifert::{Framing, Recognition, ReducibleKind, SeifertBounded, SeifertClosed, SeifertPair};
use sslab::tangles::{lens_homeo_equal, LensSpace};
use sslab::{Int, Slope};

fn word(generators: usize) -> impl Strategy<Value = Word> {
    let g = generators as i32;
    proptest::collection::vec((1..=g, any::<bool>()), 0..8)
        .prop_map(|v| Word::from_letters(v.into_iter().map(|(l, pos)| if pos { l } else { -l })))
}

fn presentation() -> impl Strategy<Value = Presentation> {
    (1usize..4).prop_flat_map(|n| {
        proptest::collection::vec(word(n), 0..4).prop_map(move |rels| {
            let names = (0..n).map(|i| format!("g{i}")).collect();
            Presentation::new(names, rels, vec![]).unwrap()
        })
    })
}

#[derive(Clone, Debug)]
enum Move {
    Conjugate(usize, Vec<(usize, bool)>),
    Invert(usize),
    Multiply(usize, usize, bool),
    AddGenerator(Vec<(usize, bool)>),
}

fn moves() -> impl Strategy<Value = Vec<Move>> {
    let letters = || proptest::collection::vec((0usize..16, any::<bool>()), 0..6);
    let one = prop_oneof![
        (any::<usize>(), letters()).prop_map(|(i, w)| Move::Conjugate(i, w)),
        any::<usize>().prop_map(Move::Invert),
        (any::<usize>(), any::<usize>(), any::<bool>()).prop_map(|(i, j, inv)| Move::Multiply(i, j, inv)),
        letters().prop_map(Move::AddGenerator),
    ];
    proptest::collection::vec(one, 1..6)
}

fn build_word(letters: &[(usize, bool)], generators: usize) -> Word {
    Word::from_letters(letters.iter().map(|&(g, pos)| {
        let l = (g % generators) as i32 + 1;
        if pos {
            l
        } else {
            -l
        }
    }))
}

fn apply(p: &Presentation, m: &Move) -> Presentation {
    let n = p.generator_count();
    let mut names = p.generators().to_vec();
    let mut rels = p.relators().to_vec();
    let k = rels.len();
    match m {
        Move::Conjugate(i, w) if k > 0 => rels[i % k] = rels[i % k].conjugate_by(&build_word(w, n)),
        Move::Invert(i) if k > 0 => rels[i % k] = rels[i % k].inverse(),
        Move::Multiply(i, j, inv) if k > 1 => {
            let (i, j) = (i % k, (i % k + 1 + j % (k - 1)) % k);
            let other = if *inv { rels[j].inverse() } else { rels[j].clone() };
            rels[i] = &rels[i] * &other;
        }
        Move::AddGenerator(w) => {
            names.push(format!("x{n}"));
            rels.push(Word::generator(n) * build_word(w, n).inverse());
        }
        _ => {}
    }
    Presentation::new(names, rels, vec![]).unwrap()
}

/// `|Hom(A, Z/n)|` for a finitely generated abelian group `A`.
fn abelian_count(a: &AbelianGroup, n: u64) -> u64 {
    let n_int = Int::from(n);
    let torsion: u64 = a
        .torsion
        .iter()
        .map(|d| u64::try_from(d.gcd(&n_int)).unwrap())
        .product();
    n.pow(a.free_rank as u32) * torsion
}

fn pair() -> impl Strategy<Value = (i64, i64)> {
    (2i64..9, -20i64..20).prop_filter("coprime", |(a, b)| a.gcd(b) == 1)
}

fn closed(genus: usize, orientable: bool, b0: i64, fibers: &[(i64, i64)]) -> SeifertClosed {
    SeifertClosed::from_i64(genus, orientable, b0, fibers).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tietze_moves_preserve_abelianization(p in presentation(), ms in moves()) {
        let h1 = p.abelianization();
        let mut q = p;
        for m in &ms {
            q = apply(&q, m);
        }
        prop_assert_eq!(q.abelianization(), h1);
    }

    #[test]
    fn abelian_targets_see_only_the_abelianization(p in presentation(), n in 1u64..7) {
        let a = p.abelianization();
        let g = FiniteGroup::cyclic(n as usize);
        prop_assert_eq!(hom_count(&p, &g).unwrap(), abelian_count(&a, n));
        let klein = FiniteGroup::from_permutations("V4", &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap();
        prop_assert_eq!(hom_count(&p, &klein).unwrap(), abelian_count(&a, 2).pow(2));
    }

    #[test]
    fn certificates_ignore_orientation(
        b0 in -3i64..3,
        fibers in proptest::collection::vec(pair(), 0..5),
        non_orientable in any::<bool>(),
    ) {
        let m = if non_orientable { closed(1, false, b0, &fibers) } else { closed(0, true, b0, &fibers) };
        prop_assume!(is_qhs(&m));
        let c = certify(&m).unwrap();
        let r = certify(&m.reverse_orientation()).unwrap();
        prop_assert!(c.revalidate() && r.revalidate());
        prop_assert_eq!(c.verdict, r.verdict);
    }

    #[test]
    fn distance_one_fillings_add_no_cone_point(
        b0 in -3i64..3,
        fibers in proptest::collection::vec(pair(), 0..4),
        non_orientable in any::<bool>(),
        q in -20i64..20,
    ) {
        let fibers: Vec<SeifertPair> = fibers.iter().map(|&(a, b)| SeifertPair::new(a, b).unwrap()).collect();
        let (genus, orientable) = if non_orientable { (1, false) } else { (0, true) };
        let m = SeifertBounded::new(genus, orientable, b0, fibers, vec![Framing::identity()]).unwrap();
        let alpha = Slope::new(1, q).unwrap();
        prop_assert_eq!(alpha.distance(&m.fiber_slope(0).unwrap()), Int::from(1));
        let filled = m.fill(0, &alpha).unwrap();
        let filled = filled.closed().unwrap();
        prop_assert_eq!(filled.base().cone_points(), m.base().cone_points());
    }

    #[test]
    fn section_change_keeps_the_lens_class(
        (a, b) in pair(),
        k in -5i64..5,
        (p, q) in (1i64..15, -15i64..15).prop_filter("coprime", |(p, q)| p.gcd(q) == 1),
    ) {
        let m = SeifertBounded::new(0, true, 0, vec![SeifertPair::new(a, b).unwrap()], vec![Framing::identity()]).unwrap();
        let alpha = Slope::new(p, q).unwrap();
        let lens = |m: &SeifertBounded| match m.fill(0, &alpha).unwrap().closed().unwrap().recognize().unwrap() {
            Recognition::Lens { p, q } => Some(LensSpace::new(p, q).unwrap()),
            Recognition::Reducible { manifold: ReducibleKind::S2xS1 } => Some(LensSpace::new(0, 1).unwrap()),
            _ => None,
        };
        let (x, y) = (lens(&m), lens(&m.reframed(0, &Int::from(k)).unwrap()));
        prop_assert!(x.is_some());
        let (x, y) = (x.unwrap(), y.unwrap());
        prop_assert!(lens_homeo_equal(&x, &y));
        let shifted = LensSpace::new(x.p().clone(), x.q() + Int::from(k) * x.p()).unwrap();
        prop_assert!(lens_homeo_equal(&x, &shifted));
    }
}
