use std::sync::Arc;

use milnor_core::invariant::{binom3, is_all_ones, TotalMilnorQuotient};
use milnor_core::lattice::to_big;
use milnor_core::{
    classical_mu, invariants_equal, parse_link_file, realize_family, total_invariant, Error,
    LinkingMatrix, Validation,
};
use num_bigint::BigInt;

#[test]
fn family_values() {
    let classes: Vec<_> = (-5..=5)
        .map(|m| {
            let s = realize_family(m);
            s.validate(Validation::Strict).unwrap();
            assert!(is_all_ones(&s.linking_matrix().unwrap()));
            assert_eq!(s.linear_word(2).signed_pair_count(3, 1), 1 + m);
            let c = total_invariant(&s).unwrap();
            assert_eq!(c.free_coordinates(), vec![BigInt::from(m)]);
            c
        })
        .collect();
    for (a, ca) in classes.iter().enumerate() {
        for (b, cb) in classes.iter().enumerate() {
            assert_eq!(invariants_equal(ca, cb).unwrap(), a == b);
        }
    }
}

#[test]
fn functional_matches_closed_form() {
    let q = TotalMilnorQuotient::new(LinkingMatrix::constant(4, 1)).unwrap();
    assert_eq!(q.free_functionals(), vec![to_big(&[1, -1, 1, -1])]);
}

#[test]
fn zero_linking_is_free() {
    for n in 3..=7 {
        let q = TotalMilnorQuotient::new(LinkingMatrix::zero(n)).unwrap();
        assert_eq!(q.structure().free_rank, binom3(n));
        assert!(q.structure().torsion.is_empty());
    }
}

#[test]
fn nine_components_have_rank() {
    let q = TotalMilnorQuotient::new(LinkingMatrix::constant(9, 1)).unwrap();
    assert_eq!(q.relations().rows(), 84);
    assert_eq!(q.relations().cols(), 72);
    assert!(q.structure().free_rank >= 1);
}

#[test]
fn borromean_fixture() {
    let links = parse_link_file(include_str!("../../../fixtures/borromean.link")).unwrap();
    let s = links[0].surface_system(Validation::General).unwrap();
    let (residue, delta) = classical_mu(&s, 1, 2, 3).unwrap();
    assert_eq!(delta, 0);
    assert_eq!(residue.abs(), 1);
    assert_eq!(residue, -s.triple(1, 2, 3));
    let c = total_invariant(&s).unwrap();
    assert_eq!(c.quotient().structure().free_rank, 1);
    assert_eq!(c.representative(), &[BigInt::from(-1)]);
}

#[test]
fn incomparable_quotients() {
    let ones = total_invariant(&realize_family(1)).unwrap();
    let zero =
        milnor_core::SurfaceSystemData::new(4, vec![Default::default(); 4], Default::default());
    let zero = total_invariant(&zero).unwrap();
    assert_eq!(invariants_equal(&ones, &zero), Err(Error::Incomparable));
}

#[test]
fn classes_share_quotient_shape() {
    let q = Arc::new(TotalMilnorQuotient::new(LinkingMatrix::constant(4, 1)).unwrap());
    let s = realize_family(3);
    let c = q
        .class_of(&(&s.m_vector().unwrap() - &s.t_vector().unwrap()))
        .unwrap();
    assert_eq!(c.free_coordinates(), vec![BigInt::from(3)]);
}
