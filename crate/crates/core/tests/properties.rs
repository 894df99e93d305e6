use std::collections::BTreeSet;

use ltistruct::dsf::dsf;
use ltistruct::gds::{closed_neighborhood_nor, dependency_graph, DepVertex, FiniteSystem, Gds};
use ltistruct::polyrat::{poly_gcd, q, Polynomial, QMatrix, RationalFunction, RationalMatrix, Q};
use ltistruct::realization::{output_normal_form, transfer_function, Block, GeneralizedRealization, StateRealization};
use ltistruct::structure::{comp_structure, Vertex};
use proptest::prelude::*;

fn small_q() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=3).prop_map(|(a, b)| q(a, b))
}

fn poly(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(small_q(), 0..=max_degree + 1).prop_map(Polynomial::from_coeffs)
}

fn nonzero_poly(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    poly(max_degree).prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (poly(3), nonzero_poly(3)).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

fn rational_matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(ratfunc(), n * n)
        .prop_map(move |v| RationalMatrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

fn poly_matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(poly(2), n * n)
        .prop_map(move |v| RationalMatrix::from_fn(n, n, |i, j| RationalFunction::from_poly(v[i * n + j].clone())))
}

fn qmatrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(small_q(), rows * cols)
        .prop_map(move |v| QMatrix::from_fn(rows, cols, |i, j| v[i * cols + j].clone()))
}

fn state_realization(max_n: usize, max_m: usize, max_p: usize) -> impl Strategy<Value = StateRealization> {
    (1..=max_n, 1..=max_m, 1..=max_p).prop_flat_map(|(n, m, p)| {
        (qmatrix(n, n), qmatrix(n, m), qmatrix(p, n), qmatrix(p, m))
            .prop_map(|(a, b, c, d)| StateRealization::new(a, b, c, d).unwrap())
    })
}

fn cofactor_det(m: &RationalMatrix) -> RationalFunction {
    let n = m.rows();
    if n == 0 {
        return RationalFunction::one();
    }
    let mut acc = RationalFunction::zero();
    for j in 0..n {
        if m[(0, j)].is_zero() {
            continue;
        }
        let rest: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let rows: Vec<usize> = (1..n).collect();
        let term = &m[(0, j)] * &cofactor_det(&m.select(&rows, &rest));
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

proptest! {
    #[test]
    fn text_round_trip(f in ratfunc()) {
        let back: RationalFunction = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn canonical_form_is_idempotent(f in ratfunc()) {
        let again = RationalFunction::new(f.num().clone(), f.den().clone()).unwrap();
        prop_assert_eq!(&again, &f);
        prop_assert!(f.den().leading_coeff().unwrap() == &q(1, 1));
        prop_assert!(poly_gcd(f.num(), f.den()).is_one() || f.is_zero());
    }

    #[test]
    fn gcd_divides_and_scales(a in nonzero_poly(3), b in nonzero_poly(3), c in nonzero_poly(2)) {
        let g = poly_gcd(&a, &b);
        prop_assert!(a.div_rem(&g).1.is_zero());
        prop_assert!(b.div_rem(&g).1.is_zero());
        prop_assert_eq!(poly_gcd(&(&a * &c), &(&b * &c)), (&g * &c).monic());
    }

    #[test]
    fn field_operations_invert(a in ratfunc(), b in ratfunc()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_is_two_sided(m in (1usize..=3).prop_flat_map(rational_matrix)) {
        let n = m.rows();
        match m.inverse() {
            Ok(inv) => {
                prop_assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(n));
                prop_assert_eq!(inv.mul(&m).unwrap(), RationalMatrix::identity(n));
            }
            Err(_) => prop_assert!(cofactor_det(&m).is_zero()),
        }
    }

    #[test]
    fn det_matches_cofactor_expansion(m in (1usize..=4).prop_flat_map(poly_matrix)) {
        prop_assert_eq!(m.det().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn det_of_rational_entries(m in (1usize..=3).prop_flat_map(rational_matrix)) {
        prop_assert_eq!(m.det().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn normal_form_keeps_transfer_function(r in state_realization(4, 2, 3)) {
        prop_assume!(r.c().rank() > 0);
        let nf = output_normal_form(&r).unwrap();
        let original = transfer_function(&r);
        let reordered = transfer_function(&nf.realization());
        let cols: Vec<usize> = (0..r.m()).collect();
        prop_assert_eq!(reordered, original.select(&nf.output_perm, &cols));
    }

    #[test]
    fn dsf_follows_output_permutation(r in state_realization(4, 2, 3), perm in Just((0..3).collect::<Vec<usize>>()).prop_shuffle()) {
        prop_assume!(r.p() <= r.n() && r.c().rank() == r.p());
        let perm: Vec<usize> = perm.into_iter().filter(|&k| k < r.p()).collect();
        let all_n: Vec<usize> = (0..r.n()).collect();
        let all_m: Vec<usize> = (0..r.m()).collect();
        let permuted = StateRealization::new(
            r.a().clone(),
            r.b().clone(),
            r.c().select(&perm, &all_n),
            r.d().select(&perm, &all_m),
        ).unwrap();
        let d = dsf(&output_normal_form(&r).unwrap()).unwrap();
        let dp = dsf(&output_normal_form(&permuted).unwrap()).unwrap();
        prop_assert_eq!(dp.q_bar(), d.q_bar().select(&perm, &perm));
        prop_assert_eq!(dp.p_bar(), d.p_bar().select(&perm, &all_m));
    }
}

fn random_gds() -> impl Strategy<Value = (Gds, Vec<bool>, usize)> {
    (2usize..=7).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
        let count = pairs.len();
        (prop::collection::vec(any::<bool>(), count), prop::collection::vec(any::<bool>(), n), 1..=n).prop_map(
            move |(keep, x, u)| {
                let edges: Vec<(usize, usize)> = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(e, _)| *e).collect();
                (Gds::new(n, &edges).unwrap(), x, u)
            },
        )
    })
}

/// Linear dynamics over GF(3): `x' = A x + B u`, `y = C x + D u`.
struct LinearMod3 {
    a: Vec<Vec<u8>>,
    b: Vec<Vec<u8>>,
    c: Vec<Vec<u8>>,
    d: Vec<Vec<u8>>,
}

fn affine(row_x: &[u8], row_u: &[u8], x: &[u8], u: &[u8]) -> u8 {
    let sum: u32 = row_x.iter().zip(x).chain(row_u.iter().zip(u)).map(|(&k, &v)| u32::from(k) * u32::from(v)).sum();
    (sum % 3) as u8
}

impl FiniteSystem for LinearMod3 {
    type Value = u8;
    type Input = u8;
    type Next = u8;
    type Output = u8;

    fn state_count(&self) -> usize {
        self.a.len()
    }
    fn input_count(&self) -> usize {
        self.b.first().map_or(0, Vec::len)
    }
    fn output_count(&self) -> usize {
        self.c.len()
    }
    fn state_values(&self) -> Vec<u8> {
        vec![0, 1, 2]
    }
    fn input_values(&self) -> Vec<u8> {
        vec![0, 1, 2]
    }
    fn update(&self, i: usize, x: &[u8], u: &[u8]) -> u8 {
        affine(&self.a[i], &self.b[i], x, u)
    }
    fn output(&self, r: usize, x: &[u8], u: &[u8]) -> u8 {
        affine(&self.c[r], &self.d[r], x, u)
    }
}

fn gf3(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
    prop::collection::vec(prop::collection::vec(0u8..3, cols), rows)
}

fn to_q(m: &[Vec<u8>], rows: usize, cols: usize) -> QMatrix {
    QMatrix::from_fn(rows, cols, |i, j| q(i64::from(m[i][j]), 1))
}

proptest! {
    #[test]
    fn gds_step_touches_only_the_selected_node((g, x, u) in random_gds()) {
        let next = g.step(&x, u).unwrap();
        for i in 0..g.n() {
            if i + 1 == u {
                prop_assert_eq!(next[i], closed_neighborhood_nor(&x, i, g.neighbors(i)));
            } else {
                prop_assert_eq!(next[i], x[i]);
            }
        }
    }

    #[test]
    fn linear_dependencies_match_the_computational_structure(
        (n, m, p) in (1usize..=3, 0usize..=2, 1usize..=2),
        seed in gf3(7, 7),
    ) {
        let block = |r0: usize, c0: usize, rows: usize, cols: usize| -> Vec<Vec<u8>> {
            (0..rows).map(|i| (0..cols).map(|j| seed[r0 + i][c0 + j]).collect()).collect()
        };
        let sys = LinearMod3 { a: block(0, 0, n, n), b: block(0, 3, n, m), c: block(3, 0, p, n), d: block(3, 3, p, m) };
        let g = GeneralizedRealization::zeros(n, 0, m, p)
            .with(Block::A, to_q(&sys.a, n, n))
            .and_then(|g| g.with(Block::B, to_q(&sys.b, n, m)))
            .and_then(|g| g.with(Block::C, to_q(&sys.c, p, n)))
            .and_then(|g| g.with(Block::D, to_q(&sys.d, p, m)))
            .unwrap();
        let c = comp_structure(&g).unwrap();
        let as_dep = |v: Vertex| match v {
            Vertex::Input(k) => DepVertex::Input(k),
            Vertex::State(i) => DepVertex::State(i),
            Vertex::Output(r) => DepVertex::Output(r),
            Vertex::Aux(_) => unreachable!("no auxiliaries"),
        };
        let from_structure: BTreeSet<(DepVertex, DepVertex)> =
            c.edges().iter().map(|e| (as_dep(c.vertex(e.from)), as_dep(c.vertex(e.to)))).collect();
        prop_assert_eq!(dependency_graph(&sys).edges, from_structure);
    }
}
