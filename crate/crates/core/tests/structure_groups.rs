use calibex_core::calibration::{catalog, chi_equivariant, tau_representation};
use calibex_core::group::Group;
use calibex_core::integral::{
    coordinate_freedom, ideal_constraint_system, variables, ParamVariable,
};
use calibex_core::stabilizer::{
    membership, stabilizer, subgroup_quotient_dim_check, torsion_report, MatrixSubspace,
};

#[test]
fn stabilizer_dimensions() {
    let cat = catalog();
    assert_eq!(
        stabilizer(std::slice::from_ref(&cat.phi0), 7)
            .unwrap()
            .dim(),
        14
    );
    assert_eq!(
        stabilizer(std::slice::from_ref(&cat.psi0), 8)
            .unwrap()
            .dim(),
        21
    );
    let su3 = stabilizer(
        &[
            cat.su3_dx7.clone(),
            cat.su3_omega0.clone(),
            cat.su3_upsilon0_re.clone(),
            cat.su3_upsilon0_im.clone(),
        ],
        7,
    )
    .unwrap();
    assert_eq!(su3.dim(), 8);
    assert!(su3.is_subspace_of(Group::G2.algebra()));
}

#[test]
fn four_form_adds_no_constraint_to_g2() {
    let cat = catalog();
    let a = stabilizer(std::slice::from_ref(&cat.phi0), 7).unwrap();
    let b = stabilizer(&[cat.phi0.clone(), cat.star_phi0.clone()], 7).unwrap();
    assert_eq!(a, b);
}

#[test]
fn algebras_are_closed_orthogonal_and_annihilate_their_forms() {
    for g in Group::ALL {
        let alg = g.algebra();
        assert!(alg.is_bracket_closed(), "{g}");
        assert!(alg.is_subspace_of(&MatrixSubspace::so(g.n())), "{g}");
        for x in alg.basis() {
            for f in g.forms() {
                assert!(f.gl_act(&x).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn torsion_dimensions() {
    let g2 = torsion_report(Group::G2.algebra());
    assert_eq!(g2.dim_h0, 49);
    assert!(g2.rank_nullity_holds());
    let spin7 = torsion_report(Group::Spin7.algebra());
    assert_eq!(spin7.dim_h0, 56);
    assert!(spin7.rank_nullity_holds());
    for g in Group::ALL {
        assert_eq!(subgroup_quotient_dim_check(g.algebra()), Ok(true));
    }
}

#[test]
fn constraint_ranks() {
    let cat = catalog();
    let g2 = ideal_constraint_system(&[cat.phi0.clone(), cat.star_phi0.clone()], 7).unwrap();
    assert_eq!(g2.cumulative_ranks(2), vec![35, 49]);
    let reversed = ideal_constraint_system(&[cat.star_phi0.clone(), cat.phi0.clone()], 7).unwrap();
    assert_eq!(*reversed.cumulative_ranks(2).last().unwrap(), 49);
    let spin7 = ideal_constraint_system(std::slice::from_ref(&cat.psi0), 8).unwrap();
    assert_eq!(spin7.rank(), 56);
    assert_eq!(spin7.matrix().rows(), 56);
}

#[test]
fn first_three_columns_are_free() {
    let cat = catalog();
    let system = ideal_constraint_system(&[cat.phi0.clone(), cat.star_phi0.clone()], 7).unwrap();
    let coords: Vec<ParamVariable> = variables(7).into_iter().filter(|v| v.l <= 2).collect();
    assert!(coordinate_freedom(&system, &coords).unwrap());
    assert!(coordinate_freedom(&system, &[]).unwrap());
    assert!(!coordinate_freedom(&system, &variables(7)).unwrap());
}

#[test]
fn constraint_rank_is_frame_invariant_under_the_involution() {
    // pulling the generators back by R leaves them unchanged, hence also the system
    for g in Group::ALL {
        let r = g.involution();
        assert!(membership(&r, &g.forms()).unwrap());
        let moved: Vec<_> = g.forms().iter().map(|f| f.pullback(&r).unwrap()).collect();
        assert_eq!(
            ideal_constraint_system(&moved, g.n()).unwrap().rank(),
            ideal_constraint_system(&g.forms(), g.n()).unwrap().rank()
        );
    }
}

#[test]
fn chi_and_tau_are_equivariant() {
    for x in Group::G2.algebra().basis() {
        assert!(chi_equivariant(&x).unwrap());
    }
    let basis = Group::Spin7.algebra().basis();
    let reps: Vec<_> = basis
        .iter()
        .map(|x| tau_representation(x).unwrap().expect("τ span is invariant"))
        .collect();
    for rho in &reps {
        assert_eq!(rho.transpose(), rho.scale(&calibex_core::scalar::int(-1)));
    }
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate().skip(i + 1) {
            let lhs = tau_representation(&x.bracket(y)).unwrap().unwrap();
            assert_eq!(lhs, reps[i].bracket(&reps[j]), "({i},{j})");
        }
    }
}
