use nearly_kahler::deformation::HomogeneousLagrangian;
use nearly_kahler::deformation::{
    build_star, deformation_spectrum, s3s3_diagonal, s3s3_factor, s3s3_graph,
};
use nearly_kahler::homogeneous::{su2_cubed, to_nk_model};
use nearly_kahler::lagrangian::{
    lagrangian_identity_check, make_lagrangian, random_lagrangian, split_by_r,
};
use nearly_kahler::model::registry::resolve;
use nearly_kahler::model::{identity_suite, product, r_matrix, r_operator, type_constant};
use nearly_kahler::su2_classify::{enumerate_solutions, graph_subspace};
use nearly_kahler::tensor::{null_space, rank, vector, Matrix};
use nearly_kahler::twistor::build_twistor_model;

const BUILT_IN: [&str; 9] = [
    "flat-kahler:1",
    "flat-kahler:2",
    "flat-kahler:3",
    "s6",
    "s3s3",
    "twistor:1:1",
    "twistor:2:1",
    "twistor:3:1",
    "product:c1,s6",
];

#[test]
fn random_lagrangians_satisfy_identities_and_split() {
    for name in BUILT_IN {
        let m = resolve(name).unwrap();
        for seed in 0..100 {
            let l =
                random_lagrangian(&m, seed).unwrap_or_else(|e| panic!("{name} seed {seed}: {e}"));
            let rep = lagrangian_identity_check(&m, &l);
            assert!(rep.passed(), "{name} seed {seed}: {:?}", rep.failures());
            let s = split_by_r(&m, &l).unwrap_or_else(|e| panic!("{name} seed {seed}: {e}"));
            assert!(
                s.groups.iter().all(|g| 2 * g.dim_in_l == g.multiplicity),
                "{name} seed {seed}: {:?}",
                s.groups
            );
        }
    }
}

#[test]
fn product_r_is_block_diagonal() {
    let names = ["c1", "flat-kahler:2", "s6", "s6:2", "s3s3"];
    for a in names {
        for b in names {
            let (ma, mb) = (resolve(a).unwrap(), resolve(b).unwrap());
            let p = product(&ma, &mb);
            assert_eq!(
                r_matrix(&p),
                Matrix::block_diag(&r_matrix(&ma), &r_matrix(&mb)),
                "{a} × {b}"
            );
        }
    }
}

#[test]
fn strictness_trichotomy() {
    for (name, kernel) in [
        ("flat-kahler:3", 6),
        ("s6", 0),
        ("s3s3", 0),
        ("twistor:2:1", 0),
        ("product:c1,s6", 2),
    ] {
        let m = resolve(name).unwrap();
        let r = r_operator(&m).unwrap();
        assert_eq!(r.kernel_dim, kernel, "{name}");
        assert_eq!(r.is_strict, kernel == 0, "{name}");
        assert_eq!(kernel == m.dim(), m.a().max_abs() == 0.0, "{name}");
    }
}

#[test]
fn twistor_models_pass_identity_suite() {
    for n in 1..=3 {
        for kappa in [0.5, 1.0, 2.0] {
            let tw = build_twistor_model(n, kappa).unwrap();
            let rep = identity_suite(&tw.model);
            assert!(rep.passed(), "n={n} κ={kappa}: {:?}", rep.failures());
        }
    }
}

#[test]
fn enumerated_graphs_are_lagrangian_subspaces() {
    let t = su2_cubed(1.0).unwrap();
    let m = to_nk_model(&t).unwrap();
    let res = enumerate_solutions(1000, 3, 1e-9).unwrap();
    let mut seen = 0;
    for class in &res.classes {
        for g in class
            .examples
            .iter()
            .chain(std::iter::once(&class.diagonal))
            .filter(|g| g.both)
        {
            let l = make_lagrangian(&m, &graph_subspace(&t, &g.matrix())).unwrap();
            assert!(
                lagrangian_identity_check(&m, &l).passed(),
                "{}",
                class.signature
            );
            seen += 1;
        }
    }
    assert!(seen >= 2);
}

#[test]
fn star_squares_to_identity_on_random_lagrangians() {
    for name in ["s6", "s3s3", "twistor:1:1", "s6:3"] {
        let m = resolve(name).unwrap();
        let alpha = type_constant(&m).alpha_type;
        for seed in 0..25 {
            let l = random_lagrangian(&m, seed).unwrap();
            let star = build_star(&m, &l).unwrap();
            assert!(star.square_residual() <= 1e-10, "{name} seed {seed}");
            assert!(star.isometry_residual() <= 1e-10, "{name} seed {seed}");
            assert!((star.alpha - alpha).abs() <= 1e-9, "{name} seed {seed}");
        }
    }
}

#[test]
fn invariant_deformation_spectra() {
    let cases = [
        s3s3_diagonal(1.0).unwrap(),
        s3s3_diagonal(0.25).unwrap(),
        s3s3_graph(&Matrix::from_diagonal(&[1.0, -1.0, -1.0]), 1.0).unwrap(),
        s3s3_factor(0, 1.0).unwrap(),
        s3s3_factor(1, 2.0).unwrap(),
    ];
    for hl in &cases {
        let sp = deformation_spectrum(hl).unwrap();
        assert!(
            sp.report.passed(),
            "{}: {:?}",
            hl.name,
            sp.report.failures()
        );
        assert_eq!(sp.ratio, 0.3);
        assert!((sp.lambda - sp.ratio * sp.scalar_curvature).abs() <= 1e-15 * sp.lambda.max(1.0));
    }
}

/// Killing fields of elements commuting with `𝔨` are `K`-invariant and
/// preserve `ω`; their normal parts are invariant Lagrangian variations.
fn centralizer_normal_rank(hl: &HomogeneousLagrangian) -> usize {
    let g = hl.space.algebra();
    let mut ad = Matrix::zeros(0, g.dim());
    for k in &hl.generators {
        let a = g.ad(k);
        for r in 0..a.rows() {
            ad.push_row(a.row(r));
        }
    }
    let p = hl.lagrangian.projector();
    let normals: Vec<Vec<f64>> = null_space(&ad, 1e-10)
        .iter()
        .map(|z| {
            let zm = hl.space.project_m(z);
            vector::sub(&zm, &p.apply(&zm))
        })
        .collect();
    if normals.is_empty() {
        return 0;
    }
    rank(&Matrix::from_rows(&normals).unwrap(), 1e-9)
}

#[test]
fn solution_dimension_matches_centralizer_variations() {
    let cases = [
        (s3s3_diagonal(1.0).unwrap(), 0),
        (
            s3s3_graph(&Matrix::from_diagonal(&[1.0, -1.0, -1.0]), 1.0).unwrap(),
            2,
        ),
        (s3s3_factor(0, 1.0).unwrap(), 3),
        (s3s3_factor(1, 0.5).unwrap(), 3),
    ];
    for (hl, expected) in &cases {
        let sp = deformation_spectrum(hl).unwrap();
        assert_eq!(centralizer_normal_rank(hl), *expected, "{}", hl.name);
        assert_eq!(sp.solution_dim, *expected, "{}", hl.name);
    }
}
