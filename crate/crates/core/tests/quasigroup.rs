use kaleido_core::group::abelian_groups_up_to;
use kaleido_core::quasigroup::{
    complete_rectangle, complete_rectangle_with_rng, order9_rectangle, quasi_classify_subset,
    quasi_kaleidoscopic, ryser_completable, verify_quasi_kaleidoscopic, LatinSquare,
    PartialRectangle,
};
use kaleido_core::space::cayley_space;
use kaleido_core::transversal::find_kaleidoscopic_coloring;
use kaleido_core::Configuration;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every `r×s` array over `n` symbols with no repeats in rows or columns,
/// filled row by row.
fn rectangles(n: usize, r: usize, s: usize, out: &mut dyn FnMut(&[Vec<usize>])) {
    fn fill(
        n: usize,
        r: usize,
        s: usize,
        cell: usize,
        t: &mut Vec<Vec<usize>>,
        out: &mut dyn FnMut(&[Vec<usize>]),
    ) {
        if cell == r * s {
            out(t);
            return;
        }
        let (i, j) = (cell / s, cell % s);
        for v in 0..n {
            if t[i][..j].contains(&v) || (0..i).any(|k| t[k][j] == v) {
                continue;
            }
            t[i][j] = v;
            fill(n, r, s, cell + 1, t, out);
        }
        t[i][j] = usize::MAX;
    }
    let mut t = vec![vec![usize::MAX; s]; r];
    fill(n, r, s, 0, &mut t, out);
}

fn check_ryser(rect: PartialRectangle) {
    let completed = complete_rectangle(&rect);
    assert_eq!(completed.is_some(), ryser_completable(&rect), "{rect}");
    if let Some(sq) = completed {
        assert!(sq.extends(&rect));
        assert!(LatinSquare::new(sq.rows().to_vec()).is_ok());
    }
}

#[test]
fn ryser_equivalence_exhaustive() {
    let mut total = 0usize;
    let mut blocked = 0usize;
    for n in 1..=5 {
        for r in 1..=n {
            for s in 1..=n {
                rectangles(n, r, s, &mut |t| {
                    let rect = PartialRectangle::new(n, t.to_vec()).unwrap();
                    total += 1;
                    blocked += usize::from(!ryser_completable(&rect));
                    check_ryser(rect);
                });
            }
        }
    }
    assert!(blocked > 0);
    assert!(total > 100_000, "{total}");
}

#[test]
fn ryser_equivalence_sampled_order6() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let n = 6;
    let mut blocked = 0;
    let mut tried = 0;
    while tried < 3000 {
        let r = rng.gen_range(1..=n);
        let s = rng.gen_range(1..=n);
        // random greedy fill; restart on dead ends
        let mut t = vec![vec![usize::MAX; s]; r];
        let mut ok = true;
        'cells: for i in 0..r {
            for j in 0..s {
                let free: Vec<usize> = (0..n)
                    .filter(|&v| !t[i][..j].contains(&v) && (0..i).all(|k| t[k][j] != v))
                    .collect();
                if free.is_empty() {
                    ok = false;
                    break 'cells;
                }
                t[i][j] = free[rng.gen_range(0..free.len())];
            }
        }
        if !ok {
            continue;
        }
        tried += 1;
        let rect = PartialRectangle::new(n, t).unwrap();
        blocked += usize::from(!ryser_completable(&rect));
        check_ryser(rect);
    }
    assert!(blocked > 0);
}

#[test]
fn kaleidoscopic_subsets_are_complemented() {
    let mut squares = 0;
    let mut kaleido = 0;
    for n in 1..=5 {
        rectangles(n, n, n, &mut |t| {
            let sq = LatinSquare::new(t.to_vec()).unwrap();
            squares += 1;
            for m in 1..1u64 << n {
                let a = Configuration::from_mask(m);
                if n % a.len() != 0 {
                    continue;
                }
                if let Some(chi) = quasi_kaleidoscopic(&sq, &a).unwrap() {
                    kaleido += 1;
                    assert!(verify_quasi_kaleidoscopic(&sq, &a, &chi));
                    let flags = quasi_classify_subset(&sq, &a).unwrap();
                    assert!(flags.complemented.is_some(), "{sq} {a}");
                    assert!(flags.verify(&sq, &a));
                }
            }
        });
    }
    assert_eq!(squares, 1 + 2 + 12 + 576 + 161_280);
    assert!(kaleido > 0);
}

#[test]
fn order9_conclusion_holds_for_sampled_completions() {
    let rect = order9_rectangle();
    let a = Configuration::new([0, 1, 2]);
    let mut seen = Vec::new();
    for seed in 0..16 {
        let sq = complete_rectangle_with_rng(&rect, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        assert!(sq.extends(&rect));
        assert!(quasi_classify_subset(&sq, &a).unwrap().self_complemented);
        assert_eq!(quasi_kaleidoscopic(&sq, &a).unwrap(), None);
        if !seen.contains(&sq) {
            seen.push(sq);
        }
    }
    assert!(seen.len() >= 2, "sampling produced a single completion");
}

#[test]
fn group_squares_match_regular_action() {
    for spec in abelian_groups_up_to(6) {
        let sq = LatinSquare::cayley(&spec);
        let space = cayley_space(&spec);
        for m in 1..1u64 << spec.order() {
            let a = Configuration::from_mask(m);
            assert_eq!(
                quasi_kaleidoscopic(&sq, &a).unwrap(),
                find_kaleidoscopic_coloring(&space, &a).unwrap(),
                "{spec} {a}"
            );
        }
    }
}

#[test]
fn whole_symbol_set_is_kaleidoscopic() {
    let sq = complete_rectangle(&order9_rectangle()).unwrap();
    let all = Configuration::new(0..9);
    let chi = quasi_kaleidoscopic(&sq, &all).unwrap().unwrap();
    assert_eq!(chi.colors, (0..9).collect::<Vec<_>>());
}
