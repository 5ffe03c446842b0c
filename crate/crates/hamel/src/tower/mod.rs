//! Finitely presented models and their decision procedures.

mod basis;
mod cut;
mod model;
mod order;
mod text;
mod valuation;
mod witness;

pub use cut::{AlphaCut, Cut, CutShape};
pub use model::{GenRecord, Mode, Model, TowerError};
pub use text::{
    parse_expr, parse_model, parse_point, render_expr, render_model, render_point, ModelTextError,
};

#[cfg(test)]
mod tests {
    use std::cmp::Ordering::{Equal, Greater, Less};

    use super::*;
    use crate::linear::Point;
    use crate::scalar::Scalar;

    /// Three generators pinned by hand: `h1` immediately above 0, `h2`
    /// immediately above `h1`, and `t` a ball element of value `h1`
    /// immediately above the zero coset, placed above `h2` in order 0.
    fn standard_tower() -> (Model, crate::linear::Vector, crate::linear::Vector, crate::linear::Vector) {
        let m = Model::new_hamel();
        let (m, h1) = m.adjoin_value(Some("h1"), Cut::below_weak(0, m.zero())).unwrap();
        let (m, h2) = m.adjoin_value(Some("h2"), Cut::below_weak(0, h1.clone())).unwrap();
        let acut = AlphaCut { alpha: h1.clone(), pivot: m.zero(), weak: true };
        let (m, t) = m.adjoin_ball(Some("t"), acut, Cut::below_weak(0, h2.clone())).unwrap();
        (m, h1, h2, t)
    }

    fn fin(v: &crate::linear::Vector) -> Point {
        Point::Finite(v.clone())
    }

    #[test]
    fn first_order_chain() {
        let (m, h1, h2, t) = standard_tower();
        let zero = m.zero();
        assert_eq!(m.compare_vec(&zero, &h1, 0).unwrap(), Less);
        assert_eq!(m.compare_vec(&h1, &h2, 0).unwrap(), Less);
        assert_eq!(m.compare_vec(&h2, &t, 0).unwrap(), Less);
        // h2 fills the gap right above h1: still below every larger multiple.
        let two_h1 = h1.scale(&Scalar::from_int(2));
        let three_half_h1 = h1.scale(&Scalar::new(3, 2).unwrap());
        assert_eq!(m.compare_vec(&h2, &two_h1, 0).unwrap(), Less);
        assert_eq!(m.compare_vec(&h2, &three_half_h1, 0).unwrap(), Less);
    }

    #[test]
    fn generator_values() {
        let (m, h1, h2, t) = standard_tower();
        assert_eq!(m.valuate(&fin(&h1)).unwrap(), fin(&h1));
        assert_eq!(m.valuate(&fin(&h2)).unwrap(), fin(&h2));
        assert_eq!(m.valuate(&fin(&t)).unwrap(), fin(&h1));
        assert_eq!(m.valuate(&Point::Infinity).unwrap(), Point::Infinity);
        assert_eq!(m.valuate(&fin(&m.zero())).unwrap(), Point::Infinity);
    }

    #[test]
    fn value_of_combinations_is_support_minimum() {
        let (m, h1, h2, t) = standard_tower();
        let five = Scalar::from_int(5);
        let h2_plus_5t = m.combine(&Scalar::one(), &h2, &five, &t).unwrap();
        assert_eq!(m.valuate(&fin(&h2_plus_5t)).unwrap(), fin(&h1));
        let mix = m.combine(&Scalar::one(), &h1, &-Scalar::from_int(3), &h2).unwrap();
        assert_eq!(m.valuate(&fin(&mix)).unwrap(), fin(&h1));
        // Scaling never moves the value, so nonunit multiples are not values.
        let two_h1 = h1.scale(&Scalar::from_int(2));
        assert_eq!(m.valuate(&fin(&two_h1)).unwrap(), fin(&h1));
        assert!(m.is_value(&h1).unwrap());
        assert!(!m.is_value(&two_h1).unwrap());
        assert!(!m.is_value(&t).unwrap());
        assert!(!m.is_value(&h2_plus_5t).unwrap());
        assert!(!m.is_value(&m.zero()).unwrap());
    }

    #[test]
    fn second_order_inverts_value_magnitude() {
        let (m, h1, h2, t) = standard_tower();
        let zero = m.zero();
        // Larger value means closer to zero in the second order.
        assert_eq!(m.compare_vec(&h2, &h1, 1).unwrap(), Less);
        assert_eq!(m.compare_vec(&zero, &h2, 1).unwrap(), Less);
        assert_eq!(m.compare_vec(&h2, &t, 1).unwrap(), Less);
        assert_eq!(m.compare_vec(&t, &h1, 1).unwrap(), Less);
        // Any positive multiple of h1 dominates h2 in the second order.
        let third_h1 = h1.scale(&Scalar::new(1, 3).unwrap());
        assert_eq!(m.compare_vec(&third_h1, &h2, 1).unwrap(), Greater);
        // t sits above the zero coset but below every positive multiple of h1.
        let tiny = h1.scale(&Scalar::new(1, 100).unwrap());
        assert_eq!(m.compare_vec(&t, &tiny, 1).unwrap(), Less);
        assert_eq!(m.compare_vec(&t, &tiny.neg(), 1).unwrap(), Greater);
    }

    #[test]
    fn mixed_combination_sign() {
        let (m, h1, h2, _) = standard_tower();
        let mix = m.combine(&Scalar::one(), &h1, &-Scalar::from_int(3), &h2).unwrap();
        // The h1 term dominates in the second order by its smaller value,
        // while in the first order 3*h2 exceeds h1 outright.
        assert_eq!(m.compare(&fin(&mix), &fin(&m.zero()), 1).unwrap(), Greater);
        assert_eq!(m.compare(&fin(&mix), &fin(&m.zero()), 0).unwrap(), Less);
    }

    #[test]
    fn infinity_is_top_in_every_order() {
        let (m, h1, _, _) = standard_tower();
        for order in 0..2 {
            assert_eq!(m.compare(&Point::Infinity, &fin(&h1), order).unwrap(), Greater);
            assert_eq!(m.compare(&fin(&h1), &Point::Infinity, order).unwrap(), Less);
            assert_eq!(m.compare(&Point::Infinity, &Point::Infinity, order).unwrap(), Equal);
        }
        assert_eq!(m.min0(&Point::Infinity, &fin(&h1)).unwrap(), fin(&h1));
    }

    #[test]
    fn recursive_valuation_agrees_with_support_minimum() {
        let (m, h1, h2, t) = standard_tower();
        let five = Scalar::from_int(5);
        let samples = vec![
            m.zero(),
            h1.clone(),
            h2.clone(),
            t.clone(),
            m.combine(&Scalar::one(), &h2, &five, &t).unwrap(),
            m.combine(&Scalar::one(), &h1, &-Scalar::from_int(3), &h2).unwrap(),
            m.combine(&Scalar::one(), &t, &-Scalar::one(), &h2).unwrap(),
            m.combine(&Scalar::one(), &h1, &Scalar::one(), &m.sum(&h2, &t).unwrap()).unwrap(),
        ];
        for s in samples {
            let p = fin(&s);
            assert_eq!(m.valuate(&p).unwrap(), m.valuate_recursive(&p).unwrap(), "element {s:?}");
        }
    }

    #[test]
    fn residue_comparison_in_the_ball_at_h1() {
        let (m, h1, h2, t) = standard_tower();
        let zero = m.zero();
        // h2 has value above h1, so it shares the zero coset.
        assert_eq!(m.residue_compare(&h2, &zero, &h1).unwrap(), Equal);
        // t was adjoined immediately above that coset.
        assert_eq!(m.residue_compare(&t, &zero, &h1).unwrap(), Greater);
        assert_eq!(m.residue_compare(&t, &h2, &h1).unwrap(), Greater);
        assert_eq!(m.residue_compare(&h1, &zero, &h1).unwrap(), Greater);
        assert_eq!(m.residue_compare(&h1.neg(), &zero, &h1).unwrap(), Less);
        // h1 falls outside the closed ball at h2.
        assert_eq!(m.residue_compare(&h1, &zero, &h2), Err(TowerError::OutsideBall));
    }

    #[test]
    fn adjunction_validation() {
        let (m, h1, h2, _) = standard_tower();
        let two_h1 = h1.scale(&Scalar::from_int(2));
        let acut = AlphaCut { alpha: two_h1, pivot: m.zero(), weak: true };
        let err = m.adjoin_ball(None, acut, Cut::below_weak(0, m.zero())).unwrap_err();
        assert_eq!(err, TowerError::NotAValue);
        // A pivot of smaller value lies outside the ball.
        let acut = AlphaCut { alpha: h2.clone(), pivot: h1.clone(), weak: true };
        let err = m.adjoin_ball(None, acut, Cut::below_weak(0, m.zero())).unwrap_err();
        assert_eq!(err, TowerError::PivotOutsideBall);
        // A pivot of larger value is fine.
        let acut = AlphaCut { alpha: h1.clone(), pivot: h2.clone(), weak: false };
        assert!(m.adjoin_ball(None, acut, Cut::below_weak(0, m.zero())).is_ok());
        let err = m.adjoin_value(Some("h1"), Cut::everything(0)).unwrap_err();
        assert_eq!(err, TowerError::DuplicateName("h1".into()));
        let err = m.compare_vec(&h1, &h2, 2).unwrap_err();
        assert_eq!(err, TowerError::OrderOutOfRange { order: 2, orders: 2 });
    }

    #[test]
    fn mode_guards() {
        let plain = Model::new_plain(3).unwrap();
        assert_eq!(plain.orders(), 3);
        let err = plain.adjoin_value(None, Cut::everything(0)).unwrap_err();
        assert_eq!(err, TowerError::HamelOnly);
        let err = plain.valuate(&Point::Finite(plain.zero())).unwrap_err();
        assert_eq!(err, TowerError::HamelOnly);
        let hamel = Model::new_hamel();
        let cuts = vec![Cut::everything(0), Cut::everything(1)];
        let err = hamel.adjoin_free(None, cuts).unwrap_err();
        assert_eq!(err, TowerError::PlainOnly);
        assert!(Model::new_plain(0).is_err());
    }

    #[test]
    fn free_generators_span_independent_orders() {
        let m = Model::new_plain(2).unwrap();
        // a: top of order 0, bottom of order 1.
        let cuts = vec![Cut::everything(0), Cut::nothing(1)];
        let (m, a) = m.adjoin_free(Some("a"), cuts).unwrap();
        // b: immediately below a in order 0, above everything in order 1.
        let cuts = vec![Cut::below_strict(0, a.clone()), Cut::everything(1)];
        let (m, b) = m.adjoin_free(Some("b"), cuts).unwrap();
        let zero = m.zero();
        assert_eq!(m.compare_vec(&zero, &a, 0).unwrap(), Less);
        assert_eq!(m.compare_vec(&a, &zero, 1).unwrap(), Less);
        assert_eq!(m.compare_vec(&b, &a, 0).unwrap(), Less);
        assert_eq!(m.compare_vec(&zero, &b, 0).unwrap(), Less);
        assert_eq!(m.compare_vec(&a, &b, 1).unwrap(), Less);
        assert_eq!(m.compare_vec(&zero, &b, 1).unwrap(), Less);
        // b lands between every fraction of a and a itself in order 0.
        let half_a = a.scale(&Scalar::new(1, 2).unwrap());
        assert_eq!(m.compare_vec(&half_a, &b, 0).unwrap(), Less);
    }

    #[test]
    fn foreign_vectors_are_rejected() {
        let (m, h1, _, _) = standard_tower();
        let (other, _, _, _) = standard_tower();
        let other_h1 = other.unit(crate::linear::GenId(0));
        assert!(m.compare_vec(&h1, &other_h1, 0).is_err());
        // Extensions still accept vectors from every earlier state.
        let (ext, fresh) = m.adjoin_value(None, Cut::below_weak(0, h1.clone())).unwrap();
        assert_eq!(ext.compare_vec(&h1, &fresh, 0).unwrap(), Less);
        assert!(ext.accepts(&h1).is_ok());
        assert!(m.accepts(&fresh).is_err());
    }

    #[test]
    fn density_witness_realizes_the_cut() {
        let (m, h1, h2, _) = standard_tower();
        let (ext, id) = m.density_witness(&h1, &h2).unwrap();
        let h = ext.unit(id);
        assert_eq!(ext.compare_vec(&h1, &h, 0).unwrap(), Less);
        assert_eq!(ext.compare_vec(&h, &h2, 0).unwrap(), Less);
        assert!(ext.is_value(&h).unwrap());
        let (ext, id) = m.density_witness(&m.zero(), &h1).unwrap();
        let h = ext.unit(id);
        assert_eq!(ext.compare_vec(&ext.zero(), &h, 0).unwrap(), Less);
        assert_eq!(ext.compare_vec(&h, &h1, 0).unwrap(), Less);
        let err = m.density_witness(&h1, &h1).unwrap_err();
        assert_eq!(err, TowerError::EmptyInterval { order: 0 });
    }

    #[test]
    fn dense_pair_witness_has_positive_value() {
        let (m, h1, h2, _) = standard_tower();
        for (a, b) in [(h1.neg(), m.zero()), (h1.clone(), h2.clone())] {
            let (ext, s) = m.dense_pair_witness(&a, &b).unwrap();
            assert_eq!(ext.compare_vec(&a, &s, 0).unwrap(), Less);
            assert_eq!(ext.compare_vec(&s, &b, 0).unwrap(), Less);
            let vs = ext.valuate(&fin(&s)).unwrap();
            assert_eq!(ext.compare(&vs, &fin(&ext.zero()), 0).unwrap(), Greater);
        }
        let err = m.dense_pair_witness(&h1, &h1).unwrap_err();
        assert_eq!(err, TowerError::EmptyInterval { order: 0 });
    }

    #[test]
    fn independence_witness_lands_in_both_intervals() {
        let (m, h1, h2, t) = standard_tower();
        let iv0 = (crate::linear::Bound::Finite(h1.clone()), crate::linear::Bound::Finite(h2.clone()));
        let iv1 = (crate::linear::Bound::Finite(t.clone()), crate::linear::Bound::Finite(h1.clone()));
        let (ext, z) = m.independence_witness(iv0, iv1).unwrap();
        assert_eq!(ext.compare_vec(&h1, &z, 0).unwrap(), Less);
        assert_eq!(ext.compare_vec(&z, &h2, 0).unwrap(), Less);
        assert_eq!(ext.compare_vec(&t, &z, 1).unwrap(), Less);
        assert_eq!(ext.compare_vec(&z, &h1, 1).unwrap(), Less);
        // Conservativity: pre-existing comparisons are untouched.
        assert_eq!(ext.compare_vec(&h1, &h2, 0).unwrap(), Less);
        assert_eq!(ext.compare_vec(&h2, &h1, 1).unwrap(), Less);
        assert_eq!(ext.valuate(&fin(&t)).unwrap(), fin(&h1));
    }

    #[test]
    fn independence_witness_with_infinite_bounds() {
        use crate::linear::Bound;
        let (m, h1, _, _) = standard_tower();
        let iv0 = (Bound::NegInfinite, Bound::Finite(m.zero()));
        let iv1 = (Bound::Finite(m.zero()), Bound::PosInfinite);
        let (ext, z) = m.independence_witness(iv0, iv1).unwrap();
        assert_eq!(ext.compare_vec(&z, &ext.zero(), 0).unwrap(), Less);
        assert_eq!(ext.compare_vec(&ext.zero(), &z, 1).unwrap(), Less);
        // The empty tower grows its own offset element.
        let empty = Model::new_hamel();
        let (ext, z) = empty
            .independence_witness((Bound::NegInfinite, Bound::PosInfinite), (Bound::NegInfinite, Bound::PosInfinite))
            .unwrap();
        assert!(ext.len() >= 2);
        assert!(ext.accepts(&z).is_ok());
        let bad = (Bound::Finite(h1.clone()), Bound::Finite(h1.clone()));
        let err = m.independence_witness((Bound::NegInfinite, Bound::PosInfinite), bad);
        assert_eq!(err.unwrap_err(), TowerError::EmptyInterval { order: 1 });
        let bad = (Bound::PosInfinite, Bound::NegInfinite);
        let err = m.independence_witness(bad, (Bound::NegInfinite, Bound::PosInfinite));
        assert_eq!(err.unwrap_err(), TowerError::EmptyInterval { order: 0 });
    }

    #[test]
    fn independence_witness_plain_mode() {
        use crate::linear::Bound;
        let m = Model::new_plain(2).unwrap();
        let iv0 = (Bound::Finite(m.zero()), Bound::PosInfinite);
        let iv1 = (Bound::NegInfinite, Bound::Finite(m.zero()));
        let (ext, z) = m.independence_witness(iv0, iv1).unwrap();
        assert_eq!(ext.compare_vec(&ext.zero(), &z, 0).unwrap(), Less);
        assert_eq!(ext.compare_vec(&z, &ext.zero(), 1).unwrap(), Less);
    }

    #[test]
    fn nonvalue_witness_avoids_the_value_set() {
        use crate::linear::Bound;
        let (m, h1, _, _) = standard_tower();
        let iv0 = (Bound::Finite(m.zero()), Bound::Finite(h1.clone()));
        let iv1 = (Bound::Finite(m.zero()), Bound::Finite(h1.clone()));
        let (ext, z) = m.nonvalue_witness(iv0, iv1).unwrap();
        assert_eq!(ext.compare_vec(&ext.zero(), &z, 0).unwrap(), Less);
        assert_eq!(ext.compare_vec(&z, &h1, 0).unwrap(), Less);
        assert_eq!(ext.compare_vec(&ext.zero(), &z, 1).unwrap(), Less);
        assert_eq!(ext.compare_vec(&z, &h1, 1).unwrap(), Less);
        let vz = ext.valuate(&fin(&z)).unwrap();
        assert_ne!(vz, fin(&z));
    }

    #[test]
    fn separated_basis_reduces_same_value_blocks() {
        let (m, h1, h2, t) = standard_tower();
        let five = Scalar::from_int(5);
        let h2_plus_5t = m.combine(&Scalar::one(), &h2, &five, &t).unwrap();
        let two_h1 = h1.scale(&Scalar::from_int(2));
        assert_eq!(m.separated_basis(&[h1.clone(), h2.clone()]).unwrap(), vec![h1.clone(), h2.clone()]);
        assert_eq!(
            m.separated_basis(&[h1.clone(), h2_plus_5t.clone()]).unwrap(),
            vec![h1.clone(), h2_plus_5t.clone()]
        );
        assert_eq!(m.separated_basis(&[h1.clone(), two_h1.clone()]).unwrap(), vec![h1.clone()]);
        // Sum of the first two reduces to zero against them.
        let sum = m.sum(&h1, &h2_plus_5t).unwrap();
        let basis = m.separated_basis(&[h1.clone(), h2_plus_5t.clone(), sum]).unwrap();
        assert_eq!(basis.len(), 2);
        // Separation: every combination's value is the min over used parts.
        let combo = m.combine(&Scalar::from_int(7), &basis[0], &-Scalar::from_int(2), &basis[1]).unwrap();
        assert_eq!(m.valuate(&fin(&combo)).unwrap(), fin(&h1));
    }

    #[test]
    fn subspace_values_counts_the_span() {
        let (m, h1, h2, t) = standard_tower();
        let five = Scalar::from_int(5);
        let h2_plus_5t = m.combine(&Scalar::one(), &h2, &five, &t).unwrap();
        assert!(m.subspace_values(&[]).unwrap().is_empty());
        let vals = m.subspace_values(&[h1.clone()]).unwrap();
        assert_eq!(vals.into_iter().collect::<Vec<_>>(), vec![h1.clone()]);
        let vals = m.subspace_values(&[h1.clone(), h2.clone()]).unwrap();
        assert_eq!(vals.len(), 2);
        // Strict growth case: both basis vectors share the value h1.
        let vals = m.subspace_values(&[h1.clone(), h2_plus_5t]).unwrap();
        assert_eq!(vals.into_iter().collect::<Vec<_>>(), vec![h1.clone()]);
    }

    #[test]
    fn expression_text_round_trips() {
        let (m, h1, h2, t) = standard_tower();
        let e = m
            .combine(&Scalar::new(3, 2).unwrap(), &h1, &-Scalar::one(), &t)
            .unwrap();
        assert_eq!(render_expr(&m, &e), "3/2*h1 + -1*t");
        assert_eq!(parse_expr(&m, "3/2*h1 + -1*t").unwrap(), e);
        assert_eq!(parse_expr(&m, "3/2*h1-t").unwrap(), e);
        assert_eq!(render_expr(&m, &m.zero()), "0");
        assert_eq!(parse_expr(&m, " 0 ").unwrap(), m.zero());
        assert_eq!(parse_point(&m, "inf").unwrap(), Point::Infinity);
        assert_eq!(render_point(&m, &Point::Infinity), "inf");
        assert_eq!(parse_expr(&m, "h2").unwrap(), h2);
        assert_eq!(parse_expr(&m, "-h1 + h1").unwrap(), m.zero());
        assert_eq!(parse_expr(&m, "1/2*h1 + 1/2*h1").unwrap(), h1);
        assert!(parse_expr(&m, "5").is_err());
        assert!(parse_expr(&m, "nope").is_err());
        assert!(parse_expr(&m, "h1 +").is_err());
        assert!(parse_expr(&m, "inf + h1").is_err());
        assert!(parse_expr(&m, "1/0*h1").is_err());
        // Errors carry the byte position of the offending token.
        match parse_expr(&m, "h1 + what").unwrap_err() {
            ModelTextError::Expr { pos, .. } => assert_eq!(pos, 5),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn model_files_round_trip() {
        let (m, _, _, _) = standard_tower();
        let rendered = render_model(&m);
        let reparsed = parse_model(&rendered).unwrap();
        assert_eq!(render_model(&reparsed), rendered);
        let h1 = reparsed.unit(crate::linear::GenId(0));
        let t = reparsed.unit(crate::linear::GenId(2));
        assert_eq!(reparsed.valuate(&fin(&t)).unwrap(), fin(&h1));

        let plain = Model::new_plain(2).unwrap();
        let cuts = vec![Cut::everything(0), Cut::nothing(1)];
        let (plain, a) = plain.adjoin_free(Some("a"), cuts).unwrap();
        let half_a = a.scale(&Scalar::new(1, 2).unwrap());
        let cuts = vec![Cut::below_strict(0, half_a), Cut::below_weak(1, a.clone())];
        let (plain, _) = plain.adjoin_free(Some("b"), cuts).unwrap();
        let rendered = render_model(&plain);
        let reparsed = parse_model(&rendered).unwrap();
        assert_eq!(render_model(&reparsed), rendered);
    }

    #[test]
    fn model_files_reject_bad_input() {
        let reject = |text: &str| parse_model(text).unwrap_err();
        assert!(matches!(reject(""), ModelTextError::Line { line: 1, .. }));
        assert!(matches!(reject("model weird"), ModelTextError::Line { line: 1, .. }));
        assert!(matches!(reject("model plain orders=0"), ModelTextError::Reject { line: 1, .. }));
        // Forward references are unknown names at parse time.
        let text = "model hamel\ngen a = value cut0=(<= b)\ngen b = value cut0=(<= 0)";
        assert!(matches!(reject(text), ModelTextError::Line { line: 2, .. }));
        // Mode violations surface as engine rejections with the line.
        let text = "model hamel\ngen a = free cut0=(all) cut1=(all)";
        assert!(matches!(
            reject(text),
            ModelTextError::Reject { line: 2, source: TowerError::PlainOnly }
        ));
        let text = "model plain orders=2\ngen a = value cut0=(<= 0)";
        assert!(matches!(
            reject(text),
            ModelTextError::Reject { line: 2, source: TowerError::HamelOnly }
        ));
        let text = "model hamel\ngen a = value cut0=(<= 0)\ngen a = value cut0=(<= 0)";
        assert!(matches!(
            reject(text),
            ModelTextError::Reject { line: 3, source: TowerError::DuplicateName(_) }
        ));
        let text = "model hamel\ngen inf = value cut0=(<= 0)";
        assert!(matches!(
            reject(text),
            ModelTextError::Reject { line: 2, source: TowerError::BadName(_) }
        ));
        let text = "model hamel\ngen a = ball alpha=0 pivot=0 weak=yes cut0=(none)";
        assert!(matches!(reject(text), ModelTextError::Line { line: 2, .. }));
        let text = "model hamel\ngen a = value cut0=(?? 0)";
        assert!(matches!(reject(text), ModelTextError::Line { line: 2, .. }));
        // Comments and blank lines are fine.
        let text = "# header\nmodel hamel\n\ngen a = value cut0=(<= 0) # above zero\n";
        assert_eq!(parse_model(text).unwrap().len(), 1);
    }

    #[test]
    fn strict_ultrametric_equality_under_distinct_values() {
        let (m, h1, h2, t) = standard_tower();
        // v(x + y) = min when v(x) != v(y); h2 and t have values h2 and h1.
        let sum = m.sum(&h2, &t).unwrap();
        assert_eq!(m.valuate(&fin(&sum)).unwrap(), fin(&h1));
        // Cancellation can only raise the value: t - t jumps to infinity.
        let cancel = m.diff(&t, &t).unwrap();
        assert_eq!(m.valuate(&fin(&cancel)).unwrap(), Point::Infinity);
    }
}
