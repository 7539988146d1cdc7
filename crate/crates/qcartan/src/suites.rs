//! Verification suites shared by the `verify` command and the acceptance
//! tests. Each suite counts the identities it checks and keeps the first
//! counterexample.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cartan::{build_datum, CartanDatum, CartanType, Family};
use crate::error::{Error, Result};
use crate::golden;
use crate::pairs;
use crate::quiver::{self, DynkinQuiver, RepVertex};
use crate::tcartan::{self, inverse_via_eta, inverse_via_series, TildeBTable};
use crate::torus::{self, Torus};
use crate::weyl::{self, PhiHat, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Suite {
    Tables,
    ClosedFormulas,
    Series,
    Independence,
    Structural,
    CalN,
    Nnkr,
    Ya,
    Additive,
    Phi,
    Compatible,
    TorusIso,
    Census,
    GaUp,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::Tables,
        Suite::ClosedFormulas,
        Suite::Series,
        Suite::Independence,
        Suite::Structural,
        Suite::CalN,
        Suite::Nnkr,
        Suite::Ya,
        Suite::Additive,
        Suite::Phi,
        Suite::Compatible,
        Suite::TorusIso,
        Suite::Census,
        Suite::GaUp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tables => "tables",
            Suite::ClosedFormulas => "closed-formulas",
            Suite::Series => "series",
            Suite::Independence => "independence",
            Suite::Structural => "structural",
            Suite::CalN => "calN",
            Suite::Nnkr => "nnkr",
            Suite::Ya => "ya",
            Suite::Additive => "additive",
            Suite::Phi => "phi",
            Suite::Compatible => "compatible",
            Suite::TorusIso => "torus-iso",
            Suite::Census => "census",
            Suite::GaUp => "gaup",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

/// Result of one suite on one case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub suite: Suite,
    pub case: String,
    pub checked: u64,
    pub failure: Option<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} {} ({} checks)", self.suite, self.case, self.checked),
            Some(e) => write!(f, "FAIL {} {}: {}", self.suite, self.case, e),
        }
    }
}

/// Counts checks and remembers the first failure.
struct Checker {
    checked: u64,
    failure: Option<String>,
}

impl Checker {
    fn new() -> Self {
        Checker {
            checked: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.check(false, || msg);
    }

    fn done(&self) -> bool {
        self.failure.is_some()
    }

    fn finish(self, suite: Suite, case: impl Into<String>) -> Outcome {
        Outcome {
            suite,
            case: case.into(),
            checked: self.checked,
            failure: self.failure,
        }
    }
}

fn quiver_case(q: &DynkinQuiver) -> String {
    let xi: Vec<String> = q.xi.iter().map(|x| x.to_string()).collect();
    format!("{} xi=({})", q.datum.ty, xi.join(","))
}

/// The linear orientation followed by `count - 1` random ones.
pub fn sample_quivers(dt: &CartanDatum, count: usize, seed: u64) -> Vec<DynkinQuiver> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    if count > 0 {
        let xi = quiver::parse_height(dt, "linear").expect("linear heights exist");
        out.push(DynkinQuiver::new(dt.clone(), xi).expect("valid heights"));
    }
    while out.len() < count {
        let xi = quiver::random_heights(dt, &mut rng);
        out.push(DynkinQuiver::new(dt.clone(), xi).expect("valid heights"));
    }
    out
}

/// Types of rank at most 5 together with F4 and G2.
pub fn small_types() -> Vec<CartanType> {
    let mut v = CartanType::all_up_to(5);
    for extra in ["F4", "G2"] {
        let t: CartanType = extra.parse().expect("known type");
        if !v.contains(&t) {
            v.push(t);
        }
    }
    v
}

/// Compare the computed table with the published one. Types without a
/// published table are compared with series inversion instead.
pub fn tables(ty: CartanType) -> Outcome {
    let dt = build_datum(ty);
    let q = &sample_quivers(&dt, 1, 0)[0];
    let table = inverse_via_eta(q);
    let mut c = Checker::new();
    match golden::compare(ty, &table.delta) {
        Some(rep) => {
            // certified misprints count as matches
            c.checked += (rep.matched + rep.certified_misprints.len()) as u64;
            if let Some(&(i, j)) = rep.mismatches.first() {
                c.fail(format!("delta({i},{j}) differs from the published table"));
            }
        }
        None => return series(ty),
    }
    c.finish(Suite::Tables, ty.to_string())
}

/// Closed formulas against the computed table (types A, B, C, D).
pub fn closed_formulas(ty: CartanType) -> Outcome {
    let dt = build_datum(ty);
    let mut c = Checker::new();
    if matches!(ty.family, Family::A | Family::B | Family::C | Family::D) {
        let table = inverse_via_eta(&sample_quivers(&dt, 1, 0)[0]);
        for i in 0..dt.n {
            for j in 0..dt.n {
                match tcartan::closed_formula(ty, i, j) {
                    Ok(v) => c.check(v == table.delta[i][j], || {
                        format!("({},{}): formula {:?}, computed {:?}", i + 1, j + 1, v, table.delta[i][j])
                    }),
                    Err(e) => c.fail(e.to_string()),
                }
            }
        }
    }
    c.finish(Suite::ClosedFormulas, ty.to_string())
}

/// Series inversion up to degree `4h` against the extended table.
pub fn series(ty: CartanType) -> Outcome {
    let dt = build_datum(ty);
    let table = inverse_via_eta(&sample_quivers(&dt, 1, 0)[0]);
    let max_u = 4 * dt.h;
    let s = inverse_via_series(&dt, max_u as usize);
    let mut c = Checker::new();
    for i in 0..dt.n {
        for j in 0..dt.n {
            for u in 0..=max_u {
                let (a, b) = (s[i][j][u as usize], table.tfb(i, j, u));
                c.check(a == b, || format!("b({},{};{u}): series {a}, table {b}", i + 1, j + 1));
            }
        }
    }
    c.finish(Suite::Series, ty.to_string())
}

/// `eta` tables agree across `count` quivers.
pub fn independence(ty: CartanType, count: usize, seed: u64) -> Outcome {
    let dt = build_datum(ty);
    let qs = sample_quivers(&dt, count, seed);
    let base = inverse_via_eta(&qs[0]);
    let mut c = Checker::new();
    for q in &qs[1..] {
        let t = inverse_via_eta(q);
        c.check(t.delta == base.delta, || format!("{} differs from {}", quiver_case(q), quiver_case(&qs[0])));
    }
    c.finish(Suite::Independence, format!("{ty} x{count}"))
}

/// The vanishing, parity, periodicity, reflection, sign and recurrence
/// properties of the coefficients, tested on series coefficients up to
/// degree `4h` and for `|u| <= 2h`.
pub fn structural(ty: CartanType, quivers: usize, seed: u64) -> Outcome {
    let dt = build_datum(ty);
    let qs = sample_quivers(&dt, quivers.max(1), seed);
    let table = inverse_via_eta(&qs[0]);
    let h = dt.h;
    let s = inverse_via_series(&dt, 4 * h as usize);
    let star = weyl::star_involution(&dt);
    let n = dt.n;
    let b = |i: usize, j: usize, u: i64| if u < 0 { 0 } else { s[i][j][u as usize] };
    let theta = |i: usize, j: usize, u: i64| b(i, j, u) + b(i, j, -u);
    let mut c = Checker::new();
    let tag = |i: usize, j: usize, u: i64| format!("(i,j,u)=({},{},{u})", i + 1, j + 1);
    for i in 0..n {
        for j in 0..n {
            let dij = dt.dist[i][j] as i64;
            c.check(b(i, j, 0) == 0, || format!("b(0) != 0 at {}", tag(i, j, 0)));
            c.check(b(i, j, 1) == if i == j { dt.d[i] } else { 0 }, || {
                format!("b(1) != d_i delta at {}", tag(i, j, 1))
            });
            c.check(table.tfb(i, j, h) == 0, || format!("b(h) != 0 at {}", tag(i, j, h)));
            for u in -2 * h..=2 * h {
                let v = b(i, j, u);
                c.check(table.tfb(i, j, u) == v, || format!("extension differs at {}", tag(i, j, u)));
                c.check(v == b(j, i, u), || format!("asymmetric at {}", tag(i, j, u)));
                if u < 1 || (u - dij - 1).rem_euclid(2) != 0 {
                    c.check(v == 0, || format!("(i) fails at {}", tag(i, j, u)));
                }
                if u <= dij {
                    c.check(v == 0, || format!("vanishing below d(i,j) fails at {}", tag(i, j, u)));
                }
                if u >= 0 {
                    c.check(b(i, j, u + h) == -b(i, star[j], u), || format!("(ii) fails at {}", tag(i, j, u)));
                    c.check(b(i, j, u + 2 * h) == v, || format!("(iii) fails at {}", tag(i, j, u)));
                    c.check(b(i, j, 2 * h - u) == -v, || format!("(v) fails at {}", tag(i, j, u)));
                }
                if (0..=h).contains(&u) {
                    c.check(b(i, j, h - u) == b(i, star[j], u), || format!("(iv) fails at {}", tag(i, j, u)));
                    c.check(v >= 0, || format!("(vi) fails at {}", tag(i, j, u)));
                }
                if (h..=2 * h).contains(&u) {
                    c.check(v <= 0, || format!("(vii) fails at {}", tag(i, j, u)));
                }
                for q in &qs {
                    let lhs = v - b(i, j, -u);
                    c.check(lhs == tcartan::eta(q, i, j, u), || {
                        format!("(viii) fails at {} for {}", tag(i, j, u), quiver_case(q))
                    });
                }
                // recurrence for theta
                let mut lhs = theta(i, j, u - 1) + theta(i, j, u + 1);
                for k in dt.neighbors(j) {
                    lhs += dt.c[k][j] * theta(i, k, u);
                }
                let want = if u == 0 && i == j { 2 * dt.d[i] } else { 0 };
                c.check(lhs == want, || format!("theta recurrence fails at {}", tag(i, j, u)));
                c.check(table.teta(i, j, u) == theta(i, j, u), || format!("theta differs at {}", tag(i, j, u)));
            }
        }
    }
    c.finish(Suite::Structural, ty.to_string())
}

/// `[lo, hi]` spanning `ξ` with `k h` to each side.
pub fn window(q: &DynkinQuiver, k: i64) -> (i64, i64) {
    let lo = *q.xi.iter().min().expect("rank >= 1");
    let hi = *q.xi.iter().max().expect("rank >= 1");
    (lo - k * q.h(), hi + k * q.h())
}

fn window_vertices(q: &DynkinQuiver, lo: i64, hi: i64) -> Vec<RepVertex> {
    (lo..=hi)
        .flat_map(|p| (0..q.n()).map(move |i| RepVertex::new(i, p)))
        .filter(|v| q.valid(v.i, v.p))
        .collect()
}

/// The N-form against the root formula on every vertex pair in `[lo, hi]`.
pub fn cal_n(q: &DynkinQuiver, t: &Torus, lo: i64, hi: i64) -> Outcome {
    let vs = window_vertices(q, lo, hi);
    let mut c = Checker::new();
    for a in &vs {
        for b in &vs {
            let x = t.n_pairing(*a, *b);
            let y = torus::n_via_roots(q, *a, *b);
            c.check(x.is_ok() && x == y, || format!("N{a}{b}: {x:?} vs {y:?}"));
        }
        if c.done() {
            break;
        }
    }
    c.finish(Suite::CalN, format!("{} [{lo},{hi}]", quiver_case(q)))
}

/// The interval identity for every admissible pair of intervals inside
/// `[xi_i - 2h, xi_i]`.
pub fn nnkr(q: &DynkinQuiver, t: &Torus) -> Outcome {
    let h = q.h();
    let n = q.n();
    // positions of node i in its window, ascending
    let pos: Vec<Vec<i64>> = (0..n)
        .map(|i| (q.xi[i] - 2 * h..=q.xi[i]).filter(|&p| q.valid(i, p)).collect())
        .collect();
    let mut c = Checker::new();
    for i in 0..n {
        for j in 0..n {
            let d = q.datum.dist[i][j] as i64;
            // N(X_{i,x}, X_{j,y}) on the window, prefix-summed over y
            let nij: Vec<Vec<i64>> = pos[i]
                .iter()
                .map(|&x| {
                    pos[j]
                        .iter()
                        .map(|&y| t.n_pairing(RepVertex::new(i, x), RepVertex::new(j, y)).unwrap_or(i64::MIN))
                        .collect()
                })
                .collect();
            for (a, &p) in pos[i].iter().enumerate() {
                // rows[k] = N(m^i[p,p2], X_{j,pos[j][k]})
                let mut rows = vec![0i64; pos[j].len()];
                for (a2, &p2) in pos[i].iter().enumerate().skip(a) {
                    for (k, v) in nij[a2].iter().enumerate() {
                        rows[k] += v;
                    }
                    for (b, &s) in pos[j].iter().enumerate() {
                        if p - s > d {
                            continue;
                        }
                        let mut lhs = 0;
                        for (b2, &s2) in pos[j].iter().enumerate().skip(b) {
                            lhs += rows[b2];
                            if s2 - p2 > d {
                                continue;
                            }
                            let rhs = torus::nnkr_rhs(q, i, p, p2, j, s, s2);
                            c.check(lhs == rhs, || {
                                format!("N(m{}[{p},{p2}], m{}[{s},{s2}]) = {lhs}, expected {rhs}", i + 1, j + 1)
                            });
                        }
                    }
                }
            }
        }
    }
    // the library entry point on the single-variable intervals
    for i in 0..n {
        for j in 0..n {
            for &p in &pos[i] {
                for &s in &pos[j] {
                    let d = q.datum.dist[i][j] as i64;
                    if (p - s).abs() <= d {
                        let r = torus::check_nnkr(q, t, i, p, p, j, s, s);
                        c.check(r == Ok(true), || format!("check_nnkr({},{p};{},{s}) = {r:?}", i + 1, j + 1));
                    }
                }
            }
        }
    }
    c.finish(Suite::Nnkr, quiver_case(q))
}

pub fn ya(q: &DynkinQuiver, t: &Torus, lo: i64, hi: i64) -> Outcome {
    let mut c = Checker::new();
    let vs = window_vertices(q, lo, hi).len() as u64;
    match torus::check_ya(q, t, lo, hi) {
        None => c.checked = 2 * vs * vs,
        Some(e) => c.fail(e),
    }
    c.finish(Suite::Ya, format!("{} [{lo},{hi}]", quiver_case(q)))
}

pub fn additive(q: &DynkinQuiver) -> Outcome {
    let mut c = Checker::new();
    match q.check_additive() {
        None => c.checked = (q.n() as u64) * (q.h() as u64 + 1),
        Some((i, l)) => c.fail(format!("fails at i={}, l={l}", i + 1)),
    }
    c.finish(Suite::Additive, quiver_case(q))
}

/// Bijectivity of `phi` on a window, the `h`-shift rule, and
/// compatibility with source reflections.
pub fn phi(q: &DynkinQuiver) -> Outcome {
    let dt = &q.datum;
    let h = q.h();
    let n = q.n();
    let star = &q.star;
    let mut c = Checker::new();
    let mut image = BTreeSet::new();
    for i in 0..n {
        c.check((h + q.xi[star[i]] - q.xi[i]).rem_euclid(2) == 0, || {
            format!("h + xi_i* - xi_i odd at i={}", i + 1)
        });
        let g = q.phi(i, q.xi[i]);
        c.check(
            matches!(&g, Ok(x) if x.level == 0 && x.root == q.gamma(i)),
            || format!("phi(i, xi_i) != (gamma_i, 0) at i={}", i + 1),
        );
        for p in (q.xi[i] - 2 * h..=q.xi[i] + 2 * h).filter(|&p| q.valid(i, p)) {
            let Ok(x) = q.phi(i, p) else {
                c.fail(format!("phi undefined at ({},{p})", i + 1));
                continue;
            };
            c.check(x.root.is_positive(), || format!("phi({},{p}) not positive", i + 1));
            c.check(image.insert((x.root.coords.clone(), x.level)), || {
                format!("phi not injective at ({},{p})", i + 1)
            });
            let back = q.phi_inverse(&x);
            c.check(back == Ok(RepVertex::new(i, p)), || format!("phi_inverse fails at ({},{p})", i + 1));
            // tau-hat step
            if let Ok(y) = q.phi(i, p - 2) {
                let want = weyl::hat_action(dt, &q.coxeter_word(), &x);
                c.check(y == want, || format!("phi({},{}) != tau-hat phi({},{p})", i + 1, p - 2, i + 1));
            }
            for sign in [-1, 1] {
                let y = q.phi(star[i], p + sign * h);
                let want = PhiHat::new(x.root.clone(), x.level + sign);
                c.check(y.as_ref() == Ok(&want), || {
                    format!("phi({}*, {} {} h) shift rule fails", i + 1, p, if sign > 0 { "+" } else { "-" })
                });
            }
            in_range(&mut c, q, i, p, &x);
        }
    }
    // surjectivity onto levels -1..=1
    for beta in weyl::positive_roots(dt) {
        for k in -1..=1 {
            let x = PhiHat::new(beta.clone(), k);
            match q.phi_inverse(&x) {
                Ok(v) => c.check(q.phi(v.i, v.p) == Ok(x.clone()), || format!("phi(phi_inverse({:?},{k})) differs", beta.coords)),
                Err(e) => c.fail(format!("({:?},{k}) not in image: {e}", beta.coords)),
            }
        }
    }
    // phi_{s_i Q} = s_i-hat^{-1} phi_Q for sources i
    for i in q.sources() {
        let r = match q.reflect(i) {
            Ok(r) => r,
            Err(e) => {
                c.fail(e.to_string());
                continue;
            }
        };
        for j in 0..n {
            for p in (q.xi[j] - 2 * h..=q.xi[j] + 2 * h).filter(|&p| q.valid(j, p)) {
                let lhs = r.phi(j, p);
                let rhs = q.phi(j, p).map(|x| weyl::hat_action_inverse(dt, &[i], &x));
                c.check(lhs.is_ok() && lhs == rhs, || {
                    format!("reflection at source {} fails at ({},{p})", i + 1, j + 1)
                });
            }
        }
    }
    c.finish(Suite::Phi, quiver_case(q))
}

/// `Gamma_Q` is exactly the level-0 slice.
fn in_range(c: &mut Checker, q: &DynkinQuiver, i: usize, p: i64, x: &PhiHat) {
    let inside = q.in_gamma_q(i, p);
    c.check(inside == (x.level == 0), || {
        format!("({},{p}) in Gamma_Q is {inside} but level is {}", i + 1, x.level)
    });
}

/// Extend the compatible reading by the readings of the successively
/// reflected quivers, up to `len` letters.
pub fn source_cycled(q: &DynkinQuiver, len: usize) -> Word {
    let mut out = Vec::with_capacity(len);
    let mut cur = q.clone();
    while out.len() < len {
        let w = cur.longest_word();
        let mut xi = cur.xi.clone();
        for &i in &w {
            xi[i] -= 2;
        }
        out.extend_from_slice(&w);
        cur = DynkinQuiver::new(cur.datum.clone(), xi).expect("reflected heights are valid");
    }
    out.truncate(len);
    out
}

fn check_word(c: &mut Checker, dt: &CartanDatum, w: &[usize]) {
    match pairs::pair_matrices(dt, w) {
        Ok(pm) => {
            let defect = pm.compatibility_defect();
            c.check(defect.is_none(), || {
                let (s, t, v) = defect.unwrap();
                format!("word {}: (Lambda B)[{},{}] = {v}", weyl::format_word(w), s + 1, t + 1)
            });
            c.check(pm.check_transposed(), || format!("word {}: transposed form fails", weyl::format_word(w)));
            c.check(pm.check_skew_symmetrizable(), || {
                format!("word {}: B not skew-symmetrizable", weyl::format_word(w))
            });
        }
        Err(e) => c.fail(e.to_string()),
    }
}

/// Compatibility for every reading word and its prefixes, source-cycled
/// extensions up to `3 l(w_0)` with their prefixes, and `random` random
/// adapted sequences of length at most 60.
pub fn compatible(ty: CartanType, random: usize, seed: u64) -> Outcome {
    use rand::Rng;
    let dt = build_datum(ty);
    let ell = weyl::positive_roots(&dt).len();
    let mut c = Checker::new();
    let orientations = quiver::all_orientations(&dt);
    for xi in &orientations {
        let q = DynkinQuiver::new(dt.clone(), xi.clone()).expect("valid heights");
        let ext = source_cycled(&q, 3 * ell);
        for k in 1..=ext.len() {
            check_word(&mut c, &dt, &ext[..k]);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        let xi = quiver::random_heights(&dt, &mut rng);
        let q = DynkinQuiver::new(dt.clone(), xi).expect("valid heights");
        let len = rng.gen_range(1..=60);
        let w = q.random_adapted(len, &mut rng);
        check_word(&mut c, &dt, &w);
    }
    c.finish(Suite::Compatible, ty.to_string())
}

/// Compatibility for one given word.
pub fn compatible_word(dt: &CartanDatum, w: &[usize]) -> Outcome {
    let mut c = Checker::new();
    check_word(&mut c, dt, w);
    c.finish(Suite::Compatible, format!("{} {}", dt.ty, weyl::format_word(w)))
}

pub fn torus_iso(q: &DynkinQuiver, t: &Torus) -> Outcome {
    let mut c = Checker::new();
    let r = weyl::positive_roots(&q.datum).len() as u64;
    match pairs::torus_iso_defect(q, t) {
        Ok(None) => c.checked = r * r,
        Ok(Some((a, b))) => c.fail(format!("kappa{a}{b} != Lambda")),
        Err(e) => c.fail(e.to_string()),
    }
    c.finish(Suite::TorusIso, quiver_case(q))
}

pub fn census(ty: CartanType) -> Outcome {
    let dt = build_datum(ty);
    let mut c = Checker::new();
    let want = 1usize << (dt.n - 1);
    match quiver::class_census(&dt) {
        Ok(k) => c.check(k == want, || format!("{k} classes, expected {want}")),
        Err(e) => c.fail(e.to_string()),
    }
    c.finish(Suite::Census, ty.to_string())
}

/// The compatible reading is an adapted reduced word of `w_0` whose
/// positions are `Gamma_Q`; adapted words of length `l(w_0)` lie in one
/// class; and `Gamma_Q` matches the Hasse quiver as labeled quivers.
pub fn gaup(q: &DynkinQuiver, random: usize, seed: u64) -> Outcome {
    let dt = &q.datum;
    let mut c = Checker::new();
    let w = q.longest_word();
    let ell = weyl::positive_roots(dt).len();
    c.check(w.len() == ell && weyl::beta_sequence(dt, &w).1, || "reading is not reduced".into());
    c.check(q.is_adapted(&w), || "reading is not adapted".into());
    match q.adapted_positions(&w) {
        Ok(pos) => c.check(pos == q.compatible_reading(), || "positions differ from the reading".into()),
        Err(e) => c.fail(e.to_string()),
    }
    let hq = weyl::hasse_quiver(dt, &w);
    match &hq {
        Ok(hq) => c.check(q.ar_quiver().labeled() == hq.labeled(), || "Gamma_Q and the Hasse quiver differ".into()),
        Err(e) => c.fail(e.to_string()),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gq: BTreeSet<RepVertex> = q.gamma_q_vertices().into_iter().collect();
    for _ in 0..random {
        // another compatible reading: a random order in which the target
        // of every arrow comes before its source
        let order = random_reading(q, &mut rng);
        let v: Word = order.iter().map(|x| x.i).collect();
        let ok = weyl::beta_sequence(dt, &v).1
            && q.is_adapted(&v)
            && weyl::same_commutation_class(dt, &v, &w) == Ok(true)
            && q.adapted_positions(&v).ok() == Some(order.clone());
        c.check(ok, || format!("reading {} is not an adapted word in [Q]", weyl::format_word(&v)));
        // adapted words of length l(w_0) that are reduced lie in [Q]
        let v = q.random_adapted(ell, &mut rng);
        if weyl::beta_sequence(dt, &v).1 {
            let pos: BTreeSet<RepVertex> = q.adapted_positions(&v).unwrap_or_default().into_iter().collect();
            c.check(weyl::same_commutation_class(dt, &v, &w) == Ok(true) && pos == gq, || {
                format!("reduced adapted word {} is outside [Q]", weyl::format_word(&v))
            });
        }
    }
    c.finish(Suite::GaUp, quiver_case(q))
}

fn random_reading(q: &DynkinQuiver, rng: &mut ChaCha8Rng) -> Vec<RepVertex> {
    use rand::Rng;
    let ar = q.ar_quiver();
    let verts: Vec<RepVertex> = ar.vertices.iter().map(|(v, _)| *v).collect();
    let mut blockers: Vec<usize> = vec![0; verts.len()];
    let idx = |v: &RepVertex| verts.iter().position(|x| x == v).expect("arrow ends are vertices");
    for (src, _, _) in &ar.arrows {
        blockers[idx(src)] += 1;
    }
    let mut out = Vec::with_capacity(verts.len());
    let mut done = vec![false; verts.len()];
    while out.len() < verts.len() {
        let ready: Vec<usize> = (0..verts.len()).filter(|&k| !done[k] && blockers[k] == 0).collect();
        let k = ready[rng.gen_range(0..ready.len())];
        done[k] = true;
        out.push(verts[k]);
        for (src, tgt, _) in &ar.arrows {
            if *tgt == verts[k] {
                blockers[idx(src)] -= 1;
            }
        }
    }
    out
}

/// Options for [`run`].
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub quivers: usize,
    pub seed: u64,
    pub word: Option<Word>,
    pub height: Option<Vec<i64>>,
    pub window: Option<(i64, i64)>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            quivers: 3,
            seed: 0,
            word: None,
            height: None,
            window: None,
        }
    }
}

fn quivers_for(dt: &CartanDatum, opts: &RunOptions) -> Result<Vec<DynkinQuiver>> {
    match &opts.height {
        Some(xi) => Ok(vec![DynkinQuiver::new(dt.clone(), xi.clone())?]),
        None => Ok(sample_quivers(dt, opts.quivers, opts.seed)),
    }
}

/// Run one suite on one type. Quiver-based suites run on every sampled
/// quiver (or the given height function).
pub fn run(suite: Suite, ty: CartanType, opts: &RunOptions) -> Result<Vec<Outcome>> {
    let dt = build_datum(ty);
    let per_quiver = |f: &dyn Fn(&DynkinQuiver) -> Outcome| -> Result<Vec<Outcome>> {
        Ok(quivers_for(&dt, opts)?.iter().map(f).collect())
    };
    let table = || -> TildeBTable { inverse_via_eta(&sample_quivers(&dt, 1, 0)[0]) };
    Ok(match suite {
        Suite::Tables => vec![tables(ty)],
        Suite::ClosedFormulas => {
            if !matches!(ty.family, Family::A | Family::B | Family::C | Family::D) {
                return Err(Error::Unsupported(format!("no closed formula for type {ty}")));
            }
            vec![closed_formulas(ty)]
        }
        Suite::Series => vec![series(ty)],
        Suite::Independence => vec![independence(ty, opts.quivers.max(10), opts.seed)],
        Suite::Structural => vec![structural(ty, opts.quivers, opts.seed)],
        Suite::CalN => {
            let tb = table();
            per_quiver(&|q| {
                let t = Torus::new(tb.clone(), &q.xi);
                let (lo, hi) = opts.window.unwrap_or_else(|| window(q, 4));
                cal_n(q, &t, lo, hi)
            })?
        }
        Suite::Nnkr => {
            let tb = table();
            per_quiver(&|q| nnkr(q, &Torus::new(tb.clone(), &q.xi)))?
        }
        Suite::Ya => {
            let tb = table();
            per_quiver(&|q| {
                let (lo, hi) = opts.window.unwrap_or_else(|| window(q, 2));
                ya(q, &Torus::new(tb.clone(), &q.xi), lo, hi)
            })?
        }
        Suite::Additive => per_quiver(&additive)?,
        Suite::Phi => per_quiver(&phi)?,
        Suite::Compatible => match &opts.word {
            Some(w) => vec![compatible_word(&dt, w)],
            None => vec![compatible(ty, 100, opts.seed)],
        },
        Suite::TorusIso => {
            let tb = table();
            per_quiver(&|q| torus_iso(q, &Torus::new(tb.clone(), &q.xi)))?
        }
        Suite::Census => {
            if dt.n > 6 {
                return Err(Error::Unsupported(format!("census needs rank <= 6, got {}", dt.n)));
            }
            vec![census(ty)]
        }
        Suite::GaUp => per_quiver(&|q| gaup(q, 20, opts.seed))?,
    })
}
