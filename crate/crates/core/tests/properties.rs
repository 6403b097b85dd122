use proptest::prelude::*;

use klr::fshuffle::{Character, FAlgebra};
use klr::qhalg::QHAlgebra;
use klr::qring::{LaurentPoly, RatFn};
use klr::rootdata::{Permutation, QPlus, Quiver, Word};

fn quiver(k: u8) -> Quiver {
    match k % 3 {
        0 => Quiver::type_a(2),
        1 => Quiver::type_a(3),
        _ => Quiver::affine_a1(),
    }
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..rank, 0..=max_len).prop_map(Word)
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, -3i64..=3), 0..3).prop_map(LaurentPoly::from_terms)
}

fn character(rank: usize, len: usize) -> impl Strategy<Value = Character> {
    prop::collection::vec((prop::collection::vec(0..rank, len..=len), poly()), 1..3)
        .prop_map(|ts| Character::from_terms(ts.into_iter().map(|(w, p)| (Word(w), p))))
}

fn same_weight(q: &Quiver, c: &Character) -> Character {
    // keep the terms whose weight agrees with the first word
    let Some((w0, _)) = c.iter().next() else { return c.clone() };
    let wt = w0.weight(q.rank());
    Character::from_terms(c.iter().filter(|(w, _)| w.weight(q.rank()) == wt).map(|(w, p)| (w.clone(), p.clone())))
}

fn weight_of(q: &Quiver, c: &Character) -> QPlus {
    c.iter().next().map_or(QPlus::zero(q.rank()), |(w, _)| w.weight(q.rank()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shuffle_is_associative(k in 0u8..3, a in word(3, 2), b in word(3, 2), c in word(3, 2)) {
        let q = quiver(k);
        let fix = |w: Word| Word(w.0.into_iter().map(|x| x % q.rank()).collect());
        let (a, b, c) = (Character::word(fix(a)), Character::word(fix(b)), Character::word(fix(c)));
        prop_assert_eq!(a.shuffle(&b, &q).shuffle(&c, &q), a.shuffle(&b.shuffle(&c, &q), &q));
    }

    #[test]
    fn bar_reverses_shuffles(k in 0u8..3, x in character(2, 2), y in character(2, 2)) {
        let q = quiver(k);
        let (x, y) = (same_weight(&q, &x), same_weight(&q, &y));
        let twist = q.form(&weight_of(&q, &x), &weight_of(&q, &y));
        let lhs = x.shuffle(&y, &q).bar();
        let rhs = y.bar().shuffle(&x.bar(), &q).scale(&LaurentPoly::monomial(1, twist));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_in_f_is_associative_and_form_symmetric(k in 0u8..3, a in word(3, 2), b in word(3, 1), c in word(3, 1)) {
        let q = quiver(k);
        let fix = |w: Word| Word(w.0.into_iter().map(|x| x % q.rank()).collect());
        let f = FAlgebra::new(q.clone());
        let (a, b, c) = (f.theta_word(&fix(a)), f.theta_word(&fix(b)), f.theta_word(&fix(c)));
        let left = f.fmul(&f.fmul(&a, &b), &c);
        let right = f.fmul(&a, &f.fmul(&b, &c));
        prop_assert_eq!(&left, &right);
        let ab = f.fmul(&a, &b);
        let ba = f.fmul(&b, &a);
        if ab.weight() == ba.weight() {
            prop_assert_eq!(f.lusztig_form(&ab, &ba).unwrap(), f.lusztig_form(&ba, &ab).unwrap());
        }
        let twice = f.bar_f(&f.bar_f(&left).unwrap()).unwrap();
        prop_assert_eq!(twice.pv(), left.pv());
    }

    #[test]
    fn mackey_identity(k in 0u8..3, x in character(3, 2), y in character(3, 1), split in 0usize..4) {
        let q = quiver(k);
        let fix = |c: &Character| Character::from_terms(c.iter().map(|(w, p)| {
            (Word(w.0.iter().map(|x| x % q.rank()).collect()), p.clone())
        }));
        let (x, y) = (same_weight(&q, &fix(&x)), same_weight(&q, &fix(&y)));
        let total = weight_of(&q, &x).add(&weight_of(&q, &y));
        let subs = klr::fshuffle::sub_weights(&total);
        let beta = &subs[split % subs.len()];
        let gamma = total.checked_sub(beta).unwrap();
        let f = FAlgebra::new(q);
        prop_assert!(f.mackey_character_check(&x, &y, beta, &gamma));
    }

    #[test]
    fn qh_multiplication_is_associative(
        picks in prop::collection::vec((0usize..3, 0usize..6, prop::collection::vec(0u32..2, 3)), 3)
    ) {
        let q = Quiver::type_a(2);
        let h = QHAlgebra::new(q, QPlus(vec![2, 1]));
        let words = h.words().to_vec();
        let perms = Permutation::all(3);
        let el: Vec<_> = picks
            .iter()
            .map(|(w, p, e)| h.monomial(words[*w].clone(), perms[*p].clone(), e.clone(), LaurentPoly::one()))
            .collect();
        let l = h.mul(&h.mul(&el[0], &el[1]).unwrap(), &el[2]).unwrap();
        let r = h.mul(&el[0], &h.mul(&el[1], &el[2]).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn ratfn_parse_round_trip(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let r = RatFn::new(a, b).unwrap();
        prop_assert_eq!(r.to_string().parse::<RatFn>().unwrap(), r);
    }
}
