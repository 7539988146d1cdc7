//! Acceptance matrix: one line per criterion with its runtime.

use std::time::{Duration, Instant};

use qcartan::quiver::parse_height;
use qcartan::suites::{self, small_types, Outcome};
use qcartan::torus::{wt_q, Exps};
use qcartan::weyl::parse_word;
use qcartan::*;

const SEED: u64 = 2024;

struct Report {
    lines: Vec<String>,
    failed: usize,
}

impl Report {
    fn run(&mut self, id: usize, name: &str, cap: Option<Duration>, f: impl FnOnce() -> Vec<Outcome>) {
        let start = Instant::now();
        let outcomes = f();
        let took = start.elapsed();
        let checks: u64 = outcomes.iter().map(|o| o.checked).sum();
        let bad = outcomes.iter().find(|o| !o.passed());
        let slow = cap.is_some_and(|c| took > c);
        let cap_txt = cap.map_or(String::new(), |c| format!(" cap {}s", c.as_secs()));
        let status = if bad.is_none() && !slow { "PASS" } else { "FAIL" };
        let mut line = format!(
            "[{status}] {id:>2} {name}: {} cases, {checks} checks, {:.2}s{cap_txt}",
            outcomes.len(),
            took.as_secs_f64()
        );
        if let Some(o) = bad {
            line.push_str(&format!(" -- {o}"));
        } else if slow {
            line.push_str(" -- over the time cap");
        }
        if status == "FAIL" {
            self.failed += 1;
        }
        println!("{line}");
        self.lines.push(line);
    }
}

fn quivers(ty: CartanType, count: usize) -> Vec<DynkinQuiver> {
    suites::sample_quivers(&build_datum(ty), count, SEED)
}

fn torus_for(q: &DynkinQuiver) -> Torus {
    Torus::for_quiver(q)
}

/// The B3 worked example as a list of outcomes.
fn b3_example() -> Vec<Outcome> {
    let dt = build_datum("B3".parse().unwrap());
    let q = DynkinQuiver::new(dt.clone(), vec![3, 2, 1]).unwrap();
    let t = Torus::for_quiver(&q);
    let mut fails = Vec::new();
    let mut checked = 0;
    let mut check = |ok: bool, msg: &str| {
        checked += 1;
        if !ok {
            fails.push(msg.to_string());
        }
    };
    // labels of the AR-quiver figure
    let ar = q.ar_quiver();
    let want: [((usize, i64), [i64; 3]); 9] = [
        ((1, 3), [1, 0, 0]),
        ((2, 2), [1, 1, 0]),
        ((3, 1), [1, 1, 1]),
        ((1, 1), [0, 1, 0]),
        ((2, 0), [1, 2, 2]),
        ((3, -1), [0, 1, 1]),
        ((1, -1), [1, 1, 2]),
        ((2, -2), [0, 1, 2]),
        ((3, -3), [0, 0, 1]),
    ];
    check(ar.vertices.len() == 9, "AR-quiver has 9 vertices");
    for ((i, p), root) in want {
        let got = ar.label(RepVertex::new(i - 1, p)).map(|l| l.coords.clone());
        check(got == Some(root.to_vec()), &format!("label at ({i},{p})"));
    }
    // the four listed Q-weights
    let wt = |i: usize, p: i64| wt_q(&q, &Exps::from([(RepVertex::new(i - 1, p), 1)])).coords;
    check(wt(1, 1) == vec![0, 1, 0], "wt X(1,1)");
    check(wt(2, 2) == vec![1, 1, 0], "wt X(2,2)");
    check(wt(2, 0) == vec![1, 2, 2], "wt X(2,0)");
    check(wt(3, 1) == vec![1, 1, 1], "wt X(3,1)");
    let b21 = t.b_monomial(&q, 1, 1).unwrap();
    check(wt_q(&q, &b21.exps).is_zero(), "wt B(2,1) = 0");
    // the seven-term element
    let e = t
        .parse_element(
            "q*X[1,1] + q*X[2,2]*X[1,3]^-1 + q^2*X[3,3]^2*X[2,4]^-1 \
             + q^-1*X[3,3]*X[3,5]^-1 + q*X[3,3]*X[3,5]^-1 + q^2*X[2,4]*X[3,5]^-2 \
             + q*X[1,5]*X[2,6]^-1 + q^-1*X[1,7]^-1",
        )
        .unwrap();
    check(e.supports().len() == 7, "seven monomials");
    check(t.bar(&t.bar(&e)) == e, "bar is an involution on the element");
    for m in e.supports() {
        check(wt_q(&q, &m).coords == vec![0, 1, 0], "monomial weight alpha_2");
    }
    vec![Outcome {
        suite: suites::Suite::Phi,
        case: "B3 xi=(3,2,1) worked example".into(),
        checked,
        failure: fails.first().cloned(),
    }]
}

#[test]
fn acceptance() {
    println!();
    let mut r = Report {
        lines: Vec::new(),
        failed: 0,
    };
    let secs = Duration::from_secs;
    let upto8 = CartanType::all_up_to(8);
    let small = small_types();

    r.run(1, "golden tables", Some(secs(10)), || {
        qcartan::golden::golden_types().into_iter().map(suites::tables).collect()
    });
    r.run(2, "closed formulas, rank <= 10", Some(secs(10)), || {
        CartanType::all_up_to(10)
            .into_iter()
            .filter(|t| matches!(t.family, Family::A | Family::B | Family::C | Family::D))
            .map(suites::closed_formulas)
            .collect()
    });
    r.run(3, "series inversion to 4h, rank <= 8", Some(secs(30)), || {
        upto8.iter().map(|&t| suites::series(t)).collect()
    });
    r.run(4, "quiver independence, 10 quivers", None, || {
        upto8.iter().map(|&t| suites::independence(t, 10, SEED)).collect()
    });
    r.run(5, "structural suite, rank <= 8", None, || {
        upto8.iter().map(|&t| suites::structural(t, 3, SEED)).collect()
    });
    r.run(6, "N-form vs roots, 4h window, 5 quivers", Some(secs(60)), || {
        small
            .iter()
            .flat_map(|&t| quivers(t, 5))
            .map(|q| {
                let (lo, hi) = suites::window(&q, 4);
                suites::cal_n(&q, &torus_for(&q), lo, hi)
            })
            .collect()
    });
    r.run(7, "interval identity and commutation formulas", None, || {
        small
            .iter()
            .flat_map(|&t| quivers(t, 3))
            .flat_map(|q| {
                let t = torus_for(&q);
                let (lo, hi) = suites::window(&q, 2);
                [suites::nnkr(&q, &t), suites::ya(&q, &t, lo, hi)]
            })
            .collect()
    });
    r.run(8, "additive property, rank <= 8", None, || {
        upto8
            .iter()
            .flat_map(|&t| quivers(t, 5))
            .map(|q| suites::additive(&q))
            .collect()
    });
    r.run(9, "phi bijection, shift rule, reflections", None, || {
        upto8
            .iter()
            .flat_map(|&t| quivers(t, 3))
            .map(|q| suites::phi(&q))
            .collect()
    });
    r.run(10, "B3 worked example", None, b3_example);
    r.run(11, "compatible pairs", Some(secs(60)), || {
        let mut out: Vec<Outcome> = small.iter().map(|&t| suites::compatible(t, 100, SEED)).collect();
        let dt = build_datum("B3".parse().unwrap());
        out.push(suites::compatible_word(&dt, &parse_word("1,2,3,1,2,3,1,2,3", 3).unwrap()));
        out
    });
    r.run(12, "torus isomorphism", None, || {
        let mut qs: Vec<DynkinQuiver> = small.iter().flat_map(|&t| quivers(t, 3)).collect();
        for (ty, xi) in [("B3", "3,2,1"), ("F4", "4,3,2,1"), ("G2", "1,2")] {
            let dt = build_datum(ty.parse().unwrap());
            let xi = parse_height(&dt, xi).unwrap();
            qs.push(DynkinQuiver::new(dt, xi).unwrap());
        }
        qs.iter().map(|q| suites::torus_iso(q, &torus_for(q))).collect()
    });
    r.run(13, "commutation class census, rank <= 5", None, || {
        CartanType::all_up_to(5).into_iter().map(suites::census).collect()
    });
    r.run(14, "reading round trip and quiver isomorphism", None, || {
        upto8
            .iter()
            .flat_map(|&t| quivers(t, 3))
            .map(|q| suites::gaup(&q, 5, SEED))
            .collect()
    });

    assert_eq!(r.lines.len(), 14);
    assert_eq!(r.failed, 0, "{} criteria failed", r.failed);
}
