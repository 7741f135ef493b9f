mod common;

use std::collections::BTreeMap;

use braid_simplex_core::disc::{all_edges, classify_pair, edge_rank, third_edge, EdgeIndex, EdgePairClass};
use braid_simplex_core::exactalg::{EdgeMatrix, LaurentQT};
use braid_simplex_core::noncrossing::{NcPartition, Permutation};
use braid_simplex_core::rep::{
    act_on_norms, dual_simple_matrix, evaluate_word, evaluate_word_at, lkb_generator_matrix, permutation_matrix,
    simplicial_generator_matrix, BraidWord, RepMode,
};
use braid_simplex_core::rescale::{rescaling_matrix, RescalingSpec};
use braid_simplex_core::simplex::EdgeNormVector;
use common::{int, part, poly, poly_matrix};

fn spec(s: &str, n: usize) -> RescalingSpec {
    RescalingSpec::parse(s, n).unwrap()
}

fn e(i: usize, j: usize, n: usize) -> EdgeIndex {
    edge_rank(i, j, n).unwrap()
}

/// Row as a sparse combination of edges.
type Combo = BTreeMap<usize, LaurentQT>;

fn combo(terms: &[(EdgeIndex, &str)]) -> Combo {
    let mut out = Combo::new();
    for (edge, p) in terms {
        let entry = out.entry(edge.rank).or_insert_with(LaurentQT::zero);
        *entry = &*entry + &poly(p);
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn row_combo(m: &EdgeMatrix<LaurentQT>, r: usize) -> Combo {
    m.row(r).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect()
}

#[test]
fn triangle_rescaling_matrix() {
    let m = rescaling_matrix(&spec("R{1,2}^fix{2,3}", 3)).unwrap();
    let expected = poly_matrix(3, &[&["q^2", "0", "0"], &["q^2-q", "q", "1-q"], &["0", "0", "1"]]);
    assert_eq!(m, expected);
}

#[test]
fn tetrahedron_rescaling_matrix() {
    let m = rescaling_matrix(&spec("R{1,2}^fix{2,3,4}", 4)).unwrap();
    let expected = poly_matrix(
        4,
        &[
            &["q^2", "0", "0", "0", "0", "0"],
            &["q^2-q", "q", "0", "1-q", "0", "0"],
            &["q^2-q", "0", "q", "0", "1-q", "0"],
            &["0", "0", "0", "1", "0", "0"],
            &["0", "0", "0", "0", "1", "0"],
            &["0", "0", "0", "0", "0", "1"],
        ],
    );
    assert_eq!(m, expected);
}

fn printed_diagonal_row() -> Combo {
    let n = 4;
    combo(&[
        (e(1, 3, n), "1"),
        (e(2, 4, n), "q^2-2*q+1"),
        (e(1, 4, n), "q-1"),
        (e(2, 3, n), "q-1"),
        (e(1, 2, n), "1-q"),
        (e(3, 4, n), "1-q"),
    ])
}

#[test]
fn diagonal_edge_row() {
    let sigma = part("{2,4}", 4);
    assert_eq!(sigma.rc().unwrap(), part("{1,4|2,3}", 4));
    assert_eq!(sigma.lc().unwrap(), part("{1,2|3,4}", 4));
    assert_eq!(&poly("q-1") * &poly("q-1"), poly("q^2-2*q+1"));
    // the printed coefficients come from the complement fixing e12 and e34
    let lc = rescaling_matrix(&RescalingSpec::new(sigma.clone(), sigma.lc().unwrap()).unwrap()).unwrap();
    assert_eq!(row_combo(&lc, e(1, 3, 4).rank), printed_diagonal_row());
    let rc = rescaling_matrix(&RescalingSpec::new(sigma.clone(), sigma.rc().unwrap()).unwrap()).unwrap();
    assert_ne!(row_combo(&rc, e(1, 3, 4).rank), printed_diagonal_row());
}

fn printed_s12() -> EdgeMatrix<LaurentQT> {
    poly_matrix(
        4,
        &[
            &["q^2", "0", "0", "0", "0", "0"],
            &["0", "0", "0", "1", "0", "0"],
            &["0", "0", "0", "0", "1", "0"],
            &["q^2-q", "q", "0", "1-q", "0", "0"],
            &["q^2-q", "0", "q", "0", "1-q", "0"],
            &["0", "0", "0", "0", "0", "1"],
        ],
    )
}

#[test]
fn geometry_of_s12() {
    let s12 = simplicial_generator_matrix(1, 2, 4).unwrap();
    assert_eq!(s12, printed_s12());
    assert_eq!(lkb_generator_matrix(1, 4).unwrap().set_t_one(), printed_s12());

    let p12: EdgeMatrix<LaurentQT> = permutation_matrix(&Permutation::parse("(1,2)", 4).unwrap());
    let printed_rows = [
        ["1", "0", "0", "0", "0", "0"],
        ["0", "0", "0", "1", "0", "0"],
        ["0", "0", "0", "0", "1", "0"],
        ["0", "1", "0", "0", "0", "0"],
        ["0", "0", "1", "0", "0", "0"],
        ["0", "0", "0", "0", "0", "0"],
    ];
    for (r, printed) in printed_rows.iter().enumerate() {
        let printed: Vec<LaurentQT> = printed.iter().map(|s| poly(s)).collect();
        if r < 5 {
            assert_eq!(p12.row(r), printed.as_slice(), "row {r}");
        } else {
            assert_ne!(p12.row(r), printed.as_slice());
            assert_eq!(row_combo(&p12, 5), combo(&[(e(3, 4, 4), "1")]));
        }
    }

    let r_right = rescaling_matrix(&spec("R{1,2}^fix{2,3,4}", 4)).unwrap();
    let r_left = rescaling_matrix(&spec("R{1,2}^fix{1,3,4}", 4)).unwrap();
    assert_eq!(p12.mul(&r_right).unwrap(), s12);
    assert_eq!(r_left.mul(&p12).unwrap(), s12);
}

fn boundary_edges(n: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
    if n > 2 {
        out.push((1, n));
    }
    out
}

/// Rows of `R^{ij}_{rc(ij)}` (`left_complement = false`) or `R^{ij}_{lc(ij)}`
/// described by the position of `e_kl` relative to `e_ij`.
fn boundary_row(e_ij: &EdgeIndex, e_kl: &EdgeIndex, left_complement: bool) -> Combo {
    let stretched_side = if left_complement { EdgePairClass::Clockwise } else { EdgePairClass::Counterclockwise };
    match classify_pair(e_ij, e_kl) {
        EdgePairClass::Identical => combo(&[(*e_kl, "q^2")]),
        class if class == stretched_side => {
            let new = third_edge(e_ij, e_kl).unwrap();
            combo(&[(*e_ij, "q^2-q"), (*e_kl, "q"), (new, "1-q")])
        }
        _ => combo(&[(*e_kl, "1")]),
    }
}

#[test]
fn boundary_edge_row_descriptions() {
    for n in 3..=7 {
        for (i, j) in boundary_edges(n) {
            let sigma = NcPartition::from_nonsingleton_blocks(n, vec![vec![i, j]]).unwrap();
            let rc = rescaling_matrix(&RescalingSpec::new(sigma.clone(), sigma.rc().unwrap()).unwrap()).unwrap();
            let lc = rescaling_matrix(&RescalingSpec::new(sigma.clone(), sigma.lc().unwrap()).unwrap()).unwrap();
            let e_ij = e(i, j, n);
            for e_kl in all_edges(n) {
                assert_eq!(row_combo(&rc, e_kl.rank), boundary_row(&e_ij, &e_kl, false), "rc n={n} {e_ij} {e_kl}");
                assert_eq!(row_combo(&lc, e_kl.rank), boundary_row(&e_ij, &e_kl, true), "lc n={n} {e_ij} {e_kl}");
            }
        }
    }
}

/// Crossing row of a single-edge rescaling in the printed form, with the
/// linear coefficients multiplied by `sign`.
fn crossing_row(e_ij: &EdgeIndex, e_kl: &EdgeIndex, n: usize, sign: &str) -> Combo {
    let (i, j) = (e_ij.i, e_ij.j);
    // clockwise order (k, i, l, j)
    let (k, l) = if e_kl.i < i { (e_kl.i, e_kl.j) } else { (e_kl.j, e_kl.i) };
    let (plus, minus) = if sign == "+" { ("q-1", "1-q") } else { ("1-q", "q-1") };
    combo(&[
        (e(k, l, n), "1"),
        (e(i, j, n), "q^2-2*q+1"),
        (e(k, j, n), plus),
        (e(i, l, n), plus),
        (e(k, i, n), minus),
        (e(l, j, n), minus),
    ])
}

#[test]
fn diagonal_edge_row_descriptions() {
    for n in 4..=7 {
        for e_ij in all_edges(n) {
            let sigma = NcPartition::from_nonsingleton_blocks(n, vec![vec![e_ij.i, e_ij.j]]).unwrap();
            let rc = rescaling_matrix(&RescalingSpec::new(sigma.clone(), sigma.rc().unwrap()).unwrap()).unwrap();
            let lc = rescaling_matrix(&RescalingSpec::new(sigma.clone(), sigma.lc().unwrap()).unwrap()).unwrap();
            let s = simplicial_generator_matrix(e_ij.i, e_ij.j, n).unwrap();
            for e_kl in all_edges(n) {
                if classify_pair(&e_ij, &e_kl) != EdgePairClass::Crossing {
                    assert_eq!(row_combo(&rc, e_kl.rank), boundary_row(&e_ij, &e_kl, false), "n={n} {e_ij} {e_kl}");
                    assert_eq!(row_combo(&lc, e_kl.rank), boundary_row(&e_ij, &e_kl, true), "n={n} {e_ij} {e_kl}");
                    continue;
                }
                // The printed crossing formula is the lc one; fixing the rc
                // blocks flips the sign of every linear coefficient.
                assert_eq!(row_combo(&lc, e_kl.rank), crossing_row(&e_ij, &e_kl, n, "+"), "n={n} {e_ij} {e_kl}");
                assert_eq!(row_combo(&rc, e_kl.rank), crossing_row(&e_ij, &e_kl, n, "-"), "n={n} {e_ij} {e_kl}");
                // the transposition leaves crossing edges alone
                assert_eq!(row_combo(&s, e_kl.rank), row_combo(&rc, e_kl.rank));
            }
        }
    }
}

#[test]
fn diagonal_edge_row_by_tree_path() {
    // v'_13 = v_14 + q v_42 + v_23 when e_14 and e_23 are held fixed
    let n = 4;
    let m = rescaling_matrix(&spec("R{2,4}^fix{1,4|2,3}", n)).unwrap();
    let expected = combo(&[
        (e(1, 3, n), "1"),
        (e(2, 4, n), "q^2-2*q+1"),
        (e(1, 4, n), "1-q"),
        (e(2, 3, n), "1-q"),
        (e(1, 2, n), "q-1"),
        (e(3, 4, n), "q-1"),
    ]);
    assert_eq!(row_combo(&m, e(1, 3, n).rank), expected);
    // v'_13 = v_12 + q v_24 + v_43 gives the printed coefficients
    let m = rescaling_matrix(&spec("R{2,4}^fix{1,2|3,4}", n)).unwrap();
    assert_eq!(part("{2,4}", n).lc().unwrap(), part("{1,2|3,4}", n));
    assert_eq!(row_combo(&m, e(1, 3, n).rank), printed_diagonal_row());
}

#[test]
fn simplicial_and_permutation_row_descriptions() {
    for n in 2..=7 {
        for i in 1..n {
            let e_ij = e(i, i + 1, n);
            let s = simplicial_generator_matrix(i, i + 1, n).unwrap();
            let p: EdgeMatrix<LaurentQT> = permutation_matrix(&Permutation::transposition(n, i, i + 1).unwrap());
            for e_kl in all_edges(n) {
                let class = classify_pair(&e_ij, &e_kl);
                let (s_row, p_row) = match class {
                    EdgePairClass::Identical => (combo(&[(e_kl, "q^2")]), combo(&[(e_kl, "1")])),
                    EdgePairClass::Noncrossing | EdgePairClass::Crossing => {
                        (combo(&[(e_kl, "1")]), combo(&[(e_kl, "1")]))
                    }
                    EdgePairClass::Counterclockwise => {
                        let new = third_edge(&e_ij, &e_kl).unwrap();
                        (combo(&[(new, "1")]), combo(&[(new, "1")]))
                    }
                    EdgePairClass::Clockwise => {
                        let new = third_edge(&e_ij, &e_kl).unwrap();
                        (combo(&[(e_ij, "q^2-q"), (new, "q"), (e_kl, "1-q")]), combo(&[(new, "1")]))
                    }
                };
                assert_eq!(row_combo(&s, e_kl.rank), s_row, "S n={n} {e_ij} {e_kl}");
                assert_eq!(row_combo(&p, e_kl.rank), p_row, "P n={n} {e_ij} {e_kl}");
            }
        }
    }
}

#[test]
fn lkb_shared_endpoint_rows_use_the_third_edge() {
    // the case i = k, j < l names e_jl; that is the third side of the triangle
    for n in 3..=7 {
        for i in 1..n {
            let j = i + 1;
            let m = lkb_generator_matrix(i, n).unwrap();
            for l in j + 1..=n {
                let e_kl = e(i, l, n);
                let new = third_edge(&e(i, j, n), &e_kl).unwrap();
                assert_eq!(new, e(j, l, n));
                assert_eq!(row_combo(&m, e_kl.rank), combo(&[(new, "1")]));
            }
        }
    }
}

#[test]
fn lkb_row_with_t() {
    let m = lkb_generator_matrix(2, 4).unwrap();
    // row e_13: k = 1 < i = 2, j = l = 3
    let n = 4;
    let mut expected = combo(&[(e(1, 2, n), "q"), (e(1, 3, n), "1-q")]);
    expected.insert(e(2, 3, n).rank, &LaurentQT::t() * &poly("q^2-q"));
    assert_eq!(row_combo(&m, e(1, 3, n).rank), expected);
    assert_eq!(m.get(3, 3), &(&LaurentQT::t() * &poly("q^2")));
}

#[test]
fn dual_simple_examples() {
    let s_delta = dual_simple_matrix(&NcPartition::full(3)).unwrap();
    let s12 = simplicial_generator_matrix(1, 2, 3).unwrap();
    let s23 = simplicial_generator_matrix(2, 3, 3).unwrap();
    assert_eq!(s12.mul(&s23).unwrap(), s_delta);
    assert!(dual_simple_matrix(&NcPartition::discrete(5)).unwrap().is_identity());

    let two_blocks = part("{1,2|3,4}", 4);
    let a = simplicial_generator_matrix(1, 2, 4).unwrap();
    let b = simplicial_generator_matrix(3, 4, 4).unwrap();
    assert_eq!(a.mul(&b).unwrap(), dual_simple_matrix(&two_blocks).unwrap());
    assert_eq!(b.mul(&a).unwrap(), dual_simple_matrix(&two_blocks).unwrap());

    let s13 = simplicial_generator_matrix(1, 3, 3).unwrap();
    let rc = part("{1,3}", 3).rc().unwrap();
    assert_eq!(rc, part("{1,2}", 3));
    let p13: EdgeMatrix<LaurentQT> = permutation_matrix(&Permutation::parse("(1,3)", 3).unwrap());
    let r = rescaling_matrix(&RescalingSpec::new(part("{1,3}", 3), rc).unwrap()).unwrap();
    assert_eq!(s13, p13.mul(&r).unwrap());
}

#[test]
fn word_examples() {
    let w = BraidWord::parse("s12 s23 s12 s23' s12' s23'", 3).unwrap();
    for mode in [RepMode::Lkb, RepMode::Simplicial, RepMode::Permutation] {
        assert!(evaluate_word(&w, mode).unwrap().is_identity(), "{mode}");
    }
    let tri = EdgeNormVector::new(3, vec![int(1); 3]).unwrap();
    let s12 = evaluate_word_at(&BraidWord::parse("s12", 3).unwrap(), RepMode::Simplicial, &int(2), &int(1)).unwrap();
    let image = act_on_norms(&s12, &tri).unwrap();
    assert_eq!(image.entries(), &[int(4), int(1), int(3)]);
    let eq1 = rescaling_matrix(&spec("R{1,2}^fix{2,3}", 3)).unwrap().eval(&int(2), &int(1)).unwrap();
    assert_eq!(act_on_norms(&eq1, &tri).unwrap().entries(), &[int(4), int(3), int(1)]);
    let id = EdgeMatrix::identity(3);
    assert_eq!(act_on_norms(&id, &tri).unwrap(), tri);
    assert!(act_on_norms(&EdgeMatrix::identity(4), &tri).is_err());
}

#[test]
fn evaluation_examples() {
    assert_eq!(poly("q^2").eval(&int(2), &int(1)).unwrap(), int(4));
    assert_eq!(poly("q^2-q").eval(&int(1), &int(1)).unwrap(), int(0));
    let sum = &(&poly("q^2-q") + &poly("q")) + &poly("1-q");
    assert_eq!(sum.eval(&int(2), &int(1)).unwrap(), int(3));
    let r = rescaling_matrix(&spec("R{1,2}^fix{2,3,4}", 4)).unwrap();
    assert!(r.mul(&r.invert_q()).unwrap().is_identity());
}
