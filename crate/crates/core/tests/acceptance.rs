//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Tolerances: every algebraic comparison is exact (zero tolerance); runtime
//! limits are wall-clock and apply to the test profile build.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supercohom::cli::{fixture, run_command, run_command_with_threads, Workspace, ADJOINT};
use supercohom::cochain::{
    annihilator, coboundary, coboundary_eval, coboundary_matrix, coboundary_matrix_full, cochain_bases, cohomology,
    cohomology_with_representatives, derivations, Cochain, CochainSpace,
};
use supercohom::deformation::{
    gauge_transform, infinitesimals_cohomologous, matrix_to_cochain, obstruction, validate, cochain_to_matrix,
    Deformation, GaugeTransform, Mode,
};
use supercohom::extension::{build_extension, certificate_map, extensions_equivalent, jacobi_iff_cocycle, verify_isomorphism};
use supercohom::graded::{Parity, Vector};
use supercohom::group::{validate_action, FiniteGroup, Symmetry, ActionRep};
use supercohom::linalg::Matrix;
use supercohom::nr::{bracket_to_element, circ, mc_check, nr_bracket, NRElement};
use supercohom::random::{random_equivariant_cochain, random_instance, random_symmetry, ModuleKind, parity_automorphism, pool};
use supercohom::scalar::Scalar;
use supercohom::superalgebra::{validate_superalgebra, LModule, StructureConstants};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn load(name: &str) -> Workspace {
    Workspace::parse(fixture(name).expect("shipped fixture")).expect("fixture parses")
}

fn vector(ws: &Workspace, terms: &[(&str, i64)]) -> Vector {
    let b = ws.algebra.basis();
    let f = ws.field;
    let mut v = Vector::zero(f, b.dim());
    for (label, c) in terms {
        v = v.add(&Vector::basis(f, b.dim(), b.index_of(label).unwrap()).scale(&f.from_int(*c)));
    }
    v
}

/// gl(1|1) by hand: `e_ij` as 2x2 unit matrices, coordinates in the order
/// e11, e22, e12, e21.
mod gl11 {
    pub type V = [i64; 4];
    pub const UNITS: [(usize, usize); 4] = [(0, 0), (1, 1), (0, 1), (1, 0)];
    pub const NAMES: [&str; 4] = ["e11", "e22", "e12", "e21"];

    pub fn parity(k: usize) -> i64 {
        (k >= 2) as i64
    }

    fn index(i: usize, j: usize) -> usize {
        UNITS.iter().position(|&u| u == (i, j)).unwrap()
    }

    pub fn unit(k: usize) -> V {
        let mut v = [0; 4];
        v[k] = 1;
        v
    }

    pub fn add(a: V, b: V, s: i64) -> V {
        [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2], a[3] + s * b[3]]
    }

    fn bilinear(op: fn(usize, usize) -> V, x: V, y: V) -> V {
        let mut out = [0; 4];
        for a in 0..4 {
            for b in 0..4 {
                if x[a] != 0 && y[b] != 0 {
                    out = add(out, op(a, b), x[a] * y[b]);
                }
            }
        }
        out
    }

    /// Matrix product of units: `e_ij e_kl = [j == k] e_il`.
    fn product(a: usize, b: usize) -> V {
        let ((i, j), (k, l)) = (UNITS[a], UNITS[b]);
        if j == k {
            unit(index(i, l))
        } else {
            [0; 4]
        }
    }

    /// `e_ij * e_kl = [j == k] e_li`.
    fn star(a: usize, b: usize) -> V {
        let ((i, j), (k, l)) = (UNITS[a], UNITS[b]);
        if j == k {
            unit(index(l, i))
        } else {
            [0; 4]
        }
    }

    fn sign(a: usize, b: usize) -> i64 {
        if parity(a) * parity(b) == 1 {
            -1
        } else {
            1
        }
    }

    fn bracket_basis(a: usize, b: usize) -> V {
        add(product(a, b), product(b, a), -sign(a, b))
    }

    fn mu1_basis(a: usize, b: usize) -> V {
        add(star(a, b), star(b, a), -sign(a, b))
    }

    pub fn bracket(x: V, y: V) -> V {
        bilinear(bracket_basis, x, y)
    }

    pub fn mu1(x: V, y: V) -> V {
        bilinear(mu1_basis, x, y)
    }

    /// The swap `e11 <-> e22`, `e12 <-> e21`.
    pub fn swap(x: V) -> V {
        [x[1], x[0], x[3], x[2]]
    }

    /// `-mu1(a,[b,c]) - [a,mu1(b,c)] + mu1([a,b],c) + (-1)^{ab} mu1(b,[a,c])
    ///  + [mu1(a,b),c] + (-1)^{ab} [b,mu1(a,c)]` on basis vectors.
    pub fn displayed_d2(a: usize, b: usize, c: usize) -> V {
        let (ea, eb, ec) = (unit(a), unit(b), unit(c));
        let s = sign(a, b);
        let mut out = [0; 4];
        out = add(out, mu1(ea, bracket(eb, ec)), -1);
        out = add(out, bracket(ea, mu1(eb, ec)), -1);
        out = add(out, mu1(bracket(ea, eb), ec), 1);
        out = add(out, mu1(eb, bracket(ea, ec)), s);
        out = add(out, bracket(mu1(ea, eb), ec), 1);
        out = add(out, bracket(eb, mu1(ea, ec)), s);
        out
    }
}

fn to_vector(ws: &Workspace, v: gl11::V) -> Vector {
    let terms: Vec<(&str, i64)> = (0..4).map(|k| (gl11::NAMES[k], v[k])).collect();
    vector(ws, &terms)
}

fn idx(ws: &Workspace, label: &str) -> usize {
    ws.algebra.basis().index_of(label).unwrap()
}

/// Unit `e_ij` (1-based indices) of gl(1|1) in oracle coordinates.
fn e(i: usize, j: usize) -> gl11::V {
    gl11::unit(gl11::UNITS.iter().position(|&u| u == (i - 1, j - 1)).unwrap())
}

fn criterion_1() -> Outcome {
    let ws = load("gl11_z2");
    let g = &ws.group.as_ref().unwrap().action;
    let act = |v: &Vector| g.apply(1, v);
    let br = |x: gl11::V, y: gl11::V| ws.algebra.bracket(&to_vector(&ws, x), &to_vector(&ws, y));
    let v = |x: gl11::V| to_vector(&ws, x);
    let zero = Vector::zero(ws.field, 4);
    let mut checked = 0;
    let mut failed = Vec::new();
    for (i, j) in [(1, 2), (2, 1)] {
        let (eii, ejj, eij, eji) = (e(i, i), e(j, j), e(i, j), e(j, i));
        let sg = |x: gl11::V| gl11::swap(x);
        // Each identity is a chain of equal expressions; the library bracket
        // and action are compared with the matrix oracle and the stated value.
        let chains: Vec<(&str, Vec<Vector>)> = vec![
            ("1[eii,eii]=0=[1eii,1eii]", vec![act(&br(eii, eii)), zero.clone(), br(sg(eii), sg(eii)), v(gl11::bracket(eii, eii))]),
            (
                "1[eii,ejj]=0=[ejj,eii]=[1eii,1ejj]",
                vec![act(&br(eii, ejj)), zero.clone(), br(ejj, eii), br(sg(eii), sg(ejj)), v(gl11::bracket(eii, ejj))],
            ),
            (
                "1[eij,eji]=ejj+eii=[1eij,1eji]",
                vec![
                    act(&br(eij, eji)),
                    v(gl11::add(ejj, eii, 1)),
                    br(sg(eij), sg(eji)),
                    v(sg(gl11::bracket(eij, eji))),
                ],
            ),
            (
                "1[eij,eij]=0=[eji,eji]=[1eij,1eij]",
                vec![act(&br(eij, eij)), zero.clone(), br(eji, eji), br(sg(eij), sg(eij)), v(gl11::bracket(eij, eij))],
            ),
            (
                "1[eii,eij]=eji=[ejj,eji]=[1eii,1eij]",
                vec![act(&br(eii, eij)), v(eji), br(ejj, eji), br(sg(eii), sg(eij)), v(sg(gl11::bracket(eii, eij)))],
            ),
            (
                "1[ejj,eij]=-eji=[eii,eji]=[1ejj,1eij]",
                vec![
                    act(&br(ejj, eij)),
                    v(gl11::add([0; 4], eji, -1)),
                    br(eii, eji),
                    br(sg(ejj), sg(eij)),
                    v(sg(gl11::bracket(ejj, eij))),
                ],
            ),
        ];
        for (name, exprs) in chains {
            checked += 1;
            if exprs.iter().any(|x| *x != exprs[0]) {
                failed.push(format!("{name} (i={i}, j={j})"));
            }
        }
    }
    let out = run_command(&["validate", "fixture_gl11_z2"]);
    let pass = failed.is_empty() && out.code == 0;
    outcome(
        pass,
        format!("{}/{} identity chains exact, validate exit {}{}", checked - failed.len(), checked, out.code, fmt_failures(&failed)),
    )
}

fn fmt_failures(f: &[String]) -> String {
    if f.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", f.join(", "))
    }
}

fn criterion_2() -> Outcome {
    let ws = load("gl11_z2");
    let mu = &ws.cochains["mu1_star"].cochain;
    let adj = &ws.modules[ADJOINT].module;
    let g = &ws.group.as_ref().unwrap().action;
    // The shipped cochain is the oracle's a*b - (-1)^{ab} b*a on every pair.
    let mut fixture_ok = true;
    for a in 0..4 {
        for b in 0..4 {
            let lhs = mu.eval_basis(&[idx(&ws, gl11::NAMES[a]), idx(&ws, gl11::NAMES[b])]);
            fixture_ok &= lhs == to_vector(&ws, gl11::mu1(gl11::unit(a), gl11::unit(b)));
        }
    }
    let m = |x: gl11::V, y: gl11::V| mu.eval(&[to_vector(&ws, x), to_vector(&ws, y)]);
    let act = |v: &Vector| g.apply(1, v);
    let v = |x: gl11::V| to_vector(&ws, x);
    let sg = gl11::swap;
    let zero = Vector::zero(ws.field, 4);
    let mut eq_checked = 0;
    let mut eq_failed = Vec::new();
    for (i, j) in [(1, 2), (2, 1)] {
        let (eii, ejj, eij, eji) = (e(i, i), e(j, j), e(i, j), e(j, i));
        let chains: Vec<(&str, Vec<Vector>)> = vec![
            ("1mu(eii,eii)=0=mu(1eii,1eii)", vec![act(&m(eii, eii)), zero.clone(), m(sg(eii), sg(eii))]),
            ("1mu(eii,ejj)=0=mu(ejj,eii)=mu(1eii,1ejj)", vec![act(&m(eii, ejj)), zero.clone(), m(ejj, eii), m(sg(eii), sg(ejj))]),
            ("1mu(eij,eji)=eii+ejj=mu(1eij,1eji)", vec![act(&m(eij, eji)), v(gl11::add(eii, ejj, 1)), m(sg(eij), sg(eji))]),
            ("1mu(eij,eij)=0=mu(eji,eji)=mu(1eij,1eij)", vec![act(&m(eij, eij)), zero.clone(), m(eji, eji), m(sg(eij), sg(eij))]),
            ("1mu(eii,eij)=eij=mu(ejj,eji)=mu(1eii,1eij)", vec![act(&m(eii, eij)), v(eij), m(ejj, eji), m(sg(eii), sg(eij))]),
            (
                "1mu(ejj,eij)=-eij=mu(eii,eji)=mu(1ejj,1eij)",
                vec![act(&m(ejj, eij)), v(gl11::add([0; 4], eij, -1)), m(eii, eji), m(sg(ejj), sg(eij))],
            ),
        ];
        for (name, exprs) in chains {
            eq_checked += 1;
            if exprs.iter().any(|x| *x != exprs[0]) {
                eq_failed.push(format!("{name} (i={i}, j={j})"));
            }
        }
    }
    let displayed = [
        ("e11", "e12", "e21"),
        ("e11", "e21", "e12"),
        ("e11", "e12", "e22"),
        ("e11", "e22", "e12"),
        ("e11", "e22", "e21"),
        ("e11", "e21", "e22"),
        ("e22", "e12", "e21"),
        ("e22", "e21", "e12"),
    ];
    let pos = |s: &str| gl11::NAMES.iter().position(|n| *n == s).unwrap();
    let mut displayed_zero = 0;
    for (a, b, c) in displayed {
        let oracle = gl11::displayed_d2(pos(a), pos(b), pos(c));
        let lib = coboundary_eval(mu, &ws.algebra, adj, &[idx(&ws, a), idx(&ws, b), idx(&ws, c)]);
        if oracle == [0; 4] && lib.is_zero() {
            displayed_zero += 1;
        }
    }
    // The same expression on every ordered basis triple.
    let mut nonzero = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let r = gl11::displayed_d2(a, b, c);
                if r != [0; 4] {
                    nonzero.push(format!("({},{},{})", gl11::NAMES[a], gl11::NAMES[b], gl11::NAMES[c]));
                }
            }
        }
    }
    let out = run_command(&["deform", "check", "fixture_gl11_z2", "--deformation", "mu_star"]);
    let pass = fixture_ok && eq_failed.is_empty() && displayed_zero == 8 && out.code == 0;
    let first = out.stdout.lines().find(|l| l.trim_start().starts_with('(')).unwrap_or("").trim().to_string();
    outcome(
        pass,
        format!(
            "fixture matches a*b oracle: {fixture_ok}; equivariance {}/{eq_checked}; displayed delta^2 mu1 zero {displayed_zero}/8; \
             delta^2 mu1 nonzero on {} ordered triples not displayed (first {}), e.g. {first}; deform check exit {}{}",
            eq_checked - eq_failed.len(),
            nonzero.len(),
            nonzero.first().cloned().unwrap_or_default(),
            out.code,
            fmt_failures(&eq_failed),
        ),
    )
}

fn module_kind(i: usize) -> ModuleKind {
    if i % 2 == 0 {
        ModuleKind::Adjoint
    } else {
        ModuleKind::Trivial
    }
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut products = 0;
    let mut failed = Vec::new();
    let mut with_group = 0;
    for i in 0..100 {
        let inst = random_instance(&mut rng);
        let (m, sym) = random_symmetry(&mut rng, &inst, module_kind(i));
        let l = &inst.algebra;
        if sym.group().order() > 1 {
            with_group += 1;
        }
        for n in 0..=2 {
            let d = coboundary_matrix_full(n, l, &m);
            let d1 = coboundary_matrix_full(n + 1, l, &m);
            products += 1;
            if !d1.mul(&d).is_zero() {
                failed.push(format!("{} n={n} plain", inst.name));
            }
            let e = coboundary_matrix(n, l, &m, Some(&sym)).unwrap();
            let e1 = coboundary_matrix(n + 1, l, &m, Some(&sym)).unwrap();
            products += 1;
            if !e1.mul(&e).is_zero() {
                failed.push(format!("{} n={n} |G|={}", inst.name, sym.group().order()));
            }
        }
    }
    outcome(
        failed.is_empty(),
        format!(
            "{} of {products} products delta^(n+1) delta^n exactly zero, 100 instances, {with_group} with a nontrivial group{}",
            products - failed.len(),
            fmt_failures(&failed)
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failed = Vec::new();
    let n = 24;
    for i in 0..n {
        let inst = random_instance(&mut rng);
        let (m, sym) = random_symmetry(&mut rng, &inst, module_kind(i));
        let s = (i % 3 != 0).then_some(&sym);
        let l = &inst.algebra;
        let h0 = cohomology(0, l, &m, s).unwrap().even.cohomology;
        let ann = annihilator(l, &m, s).ncols();
        let h1 = cohomology(1, l, &m, s).unwrap().even.cohomology;
        let d = derivations(l, &m, s);
        if h0 != ann || h1 != d.derivations.len() - d.inner.len() {
            failed.push(format!(
                "{}: H0={h0} ann={ann} H1={h1} der={} inn={}",
                inst.name,
                d.derivations.len(),
                d.inner.len()
            ));
        }
    }
    outcome(failed.is_empty(), format!("{} of {n} instances agree on H^0 and H^1{}", n - failed.len(), fmt_failures(&failed)))
}

/// Exhaustive super Jacobi loop on the raw table.
fn jacobi_oracle(sc: &StructureConstants) -> bool {
    let d = sc.dim();
    let b = sc.basis();
    let f = sc.field();
    let apply = |i: usize, v: &Vector| {
        let mut out = Vector::zero(f, d);
        for (k, c) in v.coords() {
            out = out.axpy(c, sc.bracket_basis(i, *k));
        }
        out
    };
    for a in 0..d {
        for bb in 0..d {
            let ab = sc.bracket_basis(a, bb);
            for c in 0..d {
                let lhs = apply(a, sc.bracket_basis(bb, c));
                let mut rhs = Vector::zero(f, d);
                for (k, s) in ab.coords() {
                    rhs = rhs.axpy(s, sc.bracket_basis(*k, c));
                }
                let sign = if b.parity(a).is_odd() && b.parity(bb).is_odd() { -1 } else { 1 };
                rhs = rhs.axpy(&f.from_int(sign), &apply(bb, sc.bracket_basis(a, c)));
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

fn rescale(sc: &StructureConstants, k: usize, s: &Scalar) -> StructureConstants {
    let d = sc.dim();
    let f = sc.field();
    let one = f.one();
    let factor = |i: usize| if i == k { s.clone() } else { one.clone() };
    let mut out = StructureConstants::zero(f, sc.basis().clone());
    for i in 0..d {
        for j in 0..d {
            let coords = sc
                .bracket_basis(i, j)
                .coords()
                .iter()
                .map(|(r, c)| (*r, c * &factor(i) * factor(j) / factor(*r)))
                .collect();
            out.set_entry(i, j, Vector::from_sparse(f, d, coords));
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let bases: Vec<(String, StructureConstants, Option<ActionRep>)> = ["gl11_z2", "gl21", "sl11", "super_poincare"]
        .iter()
        .map(|n| {
            let ws = load(n);
            (n.to_string(), ws.algebra.structure().clone(), ws.group.map(|g| g.action))
        })
        .collect();
    let mut cases: Vec<(String, StructureConstants, Option<ActionRep>)> = bases.clone();
    // A mutation known to break Jacobi: the sign of [e11, e12] in gl(1|1).
    let gl = &bases[0].1;
    let mut bad = gl.clone();
    let (i, j) = (gl.basis().index_of("e11").unwrap(), gl.basis().index_of("e12").unwrap());
    bad.set_pair(i, j, gl.bracket_basis(i, j).neg());
    cases.push(("gl(1|1) sign flip".into(), bad, None));
    for t in 1..50 {
        let (name, sc, _) = &bases[t % bases.len()];
        let f = sc.field();
        let d = sc.dim();
        let pert = if t % 2 == 0 {
            let k = rng.gen_range(0..d);
            let s = [f.from_int(2), f.from_int(-1), f.from_frac(1, 3), f.from_int(3)][rng.gen_range(0..4)].clone();
            (format!("{name} rescale"), rescale(sc, k, &s))
        } else {
            let (a, b) = loop {
                let a = rng.gen_range(0..d);
                let b = rng.gen_range(a..d);
                if !sc.bracket_basis(a, b).is_zero() || rng.gen_bool(0.2) {
                    break (a, b);
                }
            };
            let homog: Vec<usize> = (0..d)
                .filter(|&r| sc.basis().parity(r) == sc.basis().parity(a) + sc.basis().parity(b))
                .collect();
            let r = homog[rng.gen_range(0..homog.len())];
            let delta = Vector::basis(f, d, r).scale(&f.from_int([1, -1, 2][rng.gen_range(0..3)]));
            let mut m = sc.clone();
            m.set_pair(a, b, sc.bracket_basis(a, b).add(&delta));
            (format!("{name} mutation"), m)
        };
        cases.push((pert.0, pert.1, None));
    }
    let mut disagreements = Vec::new();
    let (mut mc_true, mut mc_false) = (0, 0);
    let mut errors = Vec::new();
    for (name, sc, rep) in &cases {
        let oracle = jacobi_oracle(sc) && validate_superalgebra(sc).antisymmetry_ok;
        match mc_check(&bracket_to_element(sc), rep.as_ref()) {
            Ok(r) => {
                if r.is_mc != oracle {
                    disagreements.push(name.clone());
                }
                if r.is_mc {
                    mc_true += 1;
                } else {
                    mc_false += 1;
                }
            }
            Err(e) => errors.push(format!("{name}: {e}")),
        }
    }
    let sign_flip_fails = !jacobi_oracle(&cases[4].1);
    let pass = disagreements.is_empty() && errors.is_empty() && sign_flip_fails && mc_false > 0;
    outcome(
        pass,
        format!(
            "{} cases ({mc_true} Maurer-Cartan, {mc_false} not), {} disagreements, guaranteed mutation fails: {sign_flip_fails}{}{}",
            cases.len(),
            disagreements.len(),
            fmt_failures(&disagreements),
            fmt_failures(&errors)
        ),
    )
}

fn random_element<R: Rng>(rng: &mut R, l: &StructureConstants, sym: &Symmetry, arity: usize) -> NRElement {
    let m = LModule::adjoint(l);
    let space = CochainSpace::for_pair(l, &m, arity);
    let p = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
    NRElement::from_cochain(random_equivariant_cochain(rng, space, Some(sym), p)).unwrap()
}

fn sign(e: i64) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let ws = load("gl11_z2");
    let l = ws.algebra.structure().clone();
    let swap = ws.group.as_ref().unwrap().action.clone();
    let z2 = Symmetry::new(swap.clone(), swap.clone()).unwrap();
    let klein = {
        let g = Arc::new(FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)));
        let s = swap.matrix(1).clone();
        let p = parity_automorphism(l.basis());
        let mats = vec![Matrix::identity(l.field(), 4), p.clone(), s.clone(), s.mul(&p)];
        let rep = ActionRep::new(g, l.basis().clone(), mats).unwrap();
        Symmetry::new(rep.clone(), rep).unwrap()
    };
    let mut failures = Vec::new();
    let mut nonzero = 0;
    for t in 0..50 {
        let sym = if t % 2 == 0 { &z2 } else { &klein };
        let af = rng.gen_range(1..=2);
        let f = random_element(&mut rng, &l, sym, af);
        let ag = rng.gen_range(1..=2);
        let g = random_element(&mut rng, &l, sym, ag);
        let ah = rng.gen_range(1..=2);
        let h = random_element(&mut rng, &l, sym, ah);
        let (n1, n2) = (g.degree(), h.degree());
        let (p1, p2) = (g.parity().bit() as i64, h.parity().bit() as i64);
        // graded antisymmetry
        let fg = nr_bracket(&f, &g).unwrap();
        let gf = nr_bracket(&g, &f).unwrap();
        let s = sign(f.degree() * n1 + f.parity().bit() as i64 * p1);
        if fg != gf.scale(&l.field().from_int(-s)) {
            failures.push(format!("antisymmetry #{t}"));
        }
        // pre-Lie
        let lhs = circ(&circ(&f, &g).unwrap(), &h).unwrap().combine(&circ(&f, &circ(&g, &h).unwrap()).unwrap(), &l.field().from_int(-1));
        let rhs = circ(&circ(&f, &h).unwrap(), &g).unwrap().combine(&circ(&f, &circ(&h, &g).unwrap()).unwrap(), &l.field().from_int(-1));
        if lhs != rhs.scale(&l.field().from_int(sign(n1 * n2 + p1 * p2))) {
            failures.push(format!("pre-Lie #{t}"));
        }
        if !lhs.is_zero() {
            nonzero += 1;
        }
        let rep = &sym.algebra;
        if !fg.is_equivariant(rep) {
            failures.push(format!("bracket not equivariant #{t}"));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "50 triples, {} failures; associator nonzero in {nonzero} triples{}",
            failures.len(),
            fmt_failures(&failures)
        ),
    )
}

/// `v` is in the span of `delta` applied to the equivariant even 1-cochains.
fn is_coboundary_oracle(l: &StructureConstants, m: &LModule, sym: Option<&Symmetry>, v: &Cochain) -> bool {
    let src = CochainSpace::for_pair(l, m, 1);
    let [even, _] = cochain_bases(&src, sym).unwrap();
    let b = coboundary_matrix_full(1, l, m).mul(&even.columns);
    let col = Matrix::from_columns(l.field(), v.space().dim(), &[v.coords().to_dense()]);
    b.hstack(&col).rank() == b.rank()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let heis = load("super_heisenberg");
    let mut instances: Vec<(String, StructureConstants, LModule, Option<Symmetry>)> = vec![(
        "super-Heisenberg".into(),
        heis.algebra.structure().clone(),
        heis.modules["z"].module.clone(),
        heis.symmetry("z"),
    )];
    for i in 0..40 {
        let inst = random_instance(&mut rng);
        let (m, sym) = random_symmetry(&mut rng, &inst, module_kind(i));
        instances.push((inst.name.clone(), inst.algebra.structure().clone(), m, Some(sym)));
    }
    let (mut cocycles, mut non_cocycles) = (0, 0);
    let (mut certified, mut refused) = (0, 0);
    let mut failures = Vec::new();
    for (name, l, m, sym) in &instances {
        let s = sym.as_ref();
        let s2 = CochainSpace::for_pair(l, m, 2);
        let s1 = CochainSpace::for_pair(l, m, 1);
        let reps = cohomology_with_representatives(2, l, m, s).unwrap().even.representatives;
        if cocycles < 10 {
            let f = random_equivariant_cochain(&mut rng, s1.clone(), s, Parity::Even);
            let mut h = coboundary(&f, l, m, None).unwrap();
            for r in &reps {
                h = h.add(&r.scale(&l.field().from_int(rng.gen_range(-2..=2))));
            }
            let jc = jacobi_iff_cocycle(l, m, &h);
            cocycles += 1;
            match jc {
                Ok(j) if j.jacobi && j.is_cocycle => {}
                other => failures.push(format!("{name}: cocycle gave {other:?}")),
            }
            // a coboundary difference is certified
            let g = random_equivariant_cochain(&mut rng, s1.clone(), s, Parity::Even);
            let h2 = h.add(&coboundary(&g, l, m, None).unwrap().neg());
            match extensions_equivalent(l, m, s, &h, &h2).unwrap() {
                Some(cert) => {
                    let diff = h.add(&h2.neg());
                    let ok_delta = coboundary(&cert, l, m, None).unwrap() == diff;
                    let (a, b) = (build_extension(l, m, &h).unwrap(), build_extension(l, m, &h2).unwrap());
                    let ok_iso = verify_isomorphism(&a, &b, &certificate_map(&a, &cert), s);
                    if ok_delta && ok_iso && is_coboundary_oracle(l, m, s, &diff) {
                        certified += 1;
                    } else {
                        failures.push(format!("{name}: certificate delta {ok_delta} iso {ok_iso}"));
                    }
                }
                None => failures.push(format!("{name}: coboundary difference not certified")),
            }
            // a non-trivial class is refused
            if let Some(r) = reps.first() {
                let h3 = h.add(r);
                let diff = h.add(&h3.neg());
                match extensions_equivalent(l, m, s, &h, &h3).unwrap() {
                    None if !is_coboundary_oracle(l, m, s, &diff) => refused += 1,
                    other => failures.push(format!("{name}: nonzero class gave {:?}", other.is_some())),
                }
            }
        }
        if non_cocycles < 10 {
            for _ in 0..5 {
                let h = random_equivariant_cochain(&mut rng, s2.clone(), s, Parity::Even);
                if coboundary(&h, l, m, None).unwrap().is_zero() {
                    continue;
                }
                non_cocycles += 1;
                match jacobi_iff_cocycle(l, m, &h) {
                    Ok(j) if !j.jacobi && !j.is_cocycle => {}
                    other => failures.push(format!("{name}: non-cocycle gave {other:?}")),
                }
                break;
            }
        }
    }
    let pass = failures.is_empty() && cocycles >= 10 && non_cocycles >= 10 && refused > 0;
    outcome(
        pass,
        format!(
            "{cocycles} cocycles and {non_cocycles} non-cocycles agree; {certified} certificates verified, {refused} inequivalent pairs refused{}",
            fmt_failures(&failures)
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let ws = load("gl11_z2");
    let l = ws.algebra.clone();
    let adj = LModule::adjoint(&l);
    let rep = ws.group.as_ref().unwrap().action.clone();
    let sym = ws.symmetry(ADJOINT).unwrap();
    let s1 = CochainSpace::for_pair(&l, &adj, 1);
    let mut failures = Vec::new();
    let mut second_order = 0;
    for t in 0..20 {
        let mu1 = loop {
            let phi = random_equivariant_cochain(&mut rng, s1.clone(), Some(&sym), Parity::Even);
            let c = coboundary(&phi, &l, &adj, None).unwrap();
            if !c.is_zero() {
                break c;
            }
        };
        let mut d = Deformation::new(l.clone(), Some(rep.clone()), vec![mu1.clone()]).unwrap();
        if t % 2 == 1 {
            if let Some(mu2) = obstruction(&d).unwrap().next_term {
                d = Deformation::new(l.clone(), Some(rep.clone()), vec![mu1.clone(), mu2]).unwrap();
                second_order += 1;
            }
        }
        let psi: Vec<Matrix> = (0..2)
            .map(|_| cochain_to_matrix(&random_equivariant_cochain(&mut rng, s1.clone(), Some(&sym), Parity::Even)))
            .collect();
        let mut maps = vec![Matrix::identity(l.field(), l.dim())];
        maps.extend(psi.iter().cloned());
        let g = GaugeTransform::new(&l, Some(&rep), maps).unwrap();
        let dt = gauge_transform(&d, &g).unwrap();
        let valid = validate(&d, Mode::Truncated).ok() && validate(&dt, Mode::Truncated).ok();
        let psi1 = matrix_to_cochain(s1.clone(), Parity::Even, &psi[0]).unwrap();
        let lhs = d.term(1).unwrap().add(&dt.term(1).unwrap().neg());
        let rhs = coboundary(&psi1, &l, &adj, None).unwrap();
        let exact = lhs.coords() == rhs.coords();
        let coh = infinitesimals_cohomologous(&d, &dt).unwrap();
        if !(valid && exact && coh) {
            failures.push(format!("#{t}: valid {valid} exact {exact} cohomologous {coh}"));
        }
    }
    outcome(
        failures.is_empty(),
        format!("20 pairs ({second_order} of order 2), {} failures{}", failures.len(), fmt_failures(&failures)),
    )
}

fn criterion_9() -> Outcome {
    let ws = load("super_poincare");
    let l = &ws.algebra;
    let r = validate_superalgebra(l);
    let rep = &ws.group.as_ref().unwrap().action;
    let a = validate_action(rep, l);
    let f = ws.field;
    let i = f.root_of_unity(1).unwrap();
    let mut mapping_ok = ws.group.as_ref().unwrap().group.order() == 4;
    for (k, name) in l.basis().names().iter().enumerate() {
        let expected = if name.starts_with("Qb") {
            i.pow(3)
        } else if name.starts_with('Q') {
            i.clone()
        } else {
            f.one()
        };
        mapping_ok &= rep.apply(1, &Vector::basis(f, 14, k)) == Vector::basis(f, 14, k).scale(&expected);
    }
    let mut zero_ok = true;
    let names = l.basis().names().to_vec();
    for x in &names {
        for y in &names {
            let pp = x.starts_with('P') && y.starts_with('P');
            let qq = x.starts_with('Q') && !x.starts_with("Qb") && y.starts_with('Q') && !y.starts_with("Qb");
            let bb = x.starts_with("Qb") && y.starts_with("Qb");
            if pp || qq || bb {
                zero_ok &= l.bracket_basis(idx(&ws, x), idx(&ws, y)).is_zero();
            }
        }
    }
    let out = run_command(&["validate", "fixture_super_poincare"]);
    let pass = r.ok() && a.ok() && mapping_ok && zero_ok && jacobi_oracle(l) && out.code == 0;
    outcome(
        pass,
        format!(
            "super Jacobi {}, Z_4 action {}, g.Q = iQ and g.Qb = i^3 Qb {mapping_ok}, [P,P]={{Q,Q}}={{Qb,Qb}}=0 {zero_ok}, validate exit {}",
            r.ok(),
            a.ok(),
            out.code
        ),
    )
}

fn commands_for(name: &str) -> Vec<Vec<String>> {
    let ws = load(name);
    let file = format!("fixture_{name}");
    let mut cmds: Vec<Vec<&str>> = vec![vec!["validate"], vec!["mc-check"]];
    let mut owned: Vec<Vec<String>> = Vec::new();
    for module in ws.modules.keys() {
        for n in 0..=2 {
            owned.push(vec!["cohomology".into(), file.clone(), "--n".into(), n.to_string(), "--module".into(), module.clone()]);
        }
        owned.push(vec!["derivations".into(), file.clone(), "--module".into(), module.clone()]);
        owned.push(vec!["extend".into(), "classify".into(), file.clone(), "--module".into(), module.clone()]);
    }
    for (cname, c) in &ws.cochains {
        if c.cochain.arity() == 2 && c.cochain.parity() == Parity::Even {
            owned.push(vec!["extend".into(), file.clone(), "--cocycle".into(), cname.clone()]);
            if c.module == ADJOINT {
                owned.push(vec!["mc-check".into(), file.clone(), "--candidate".into(), cname.clone()]);
            }
        }
    }
    for d in ws.deformations.keys() {
        owned.push(vec!["deform".into(), "check".into(), file.clone(), "--deformation".into(), d.clone()]);
        owned.push(vec!["deform".into(), "check".into(), file.clone(), "--deformation".into(), d.clone(), "--strict".into()]);
        owned.push(vec!["deform".into(), "obstruct".into(), file.clone(), "--deformation".into(), d.clone()]);
    }
    for c in cmds.drain(..) {
        let mut v: Vec<String> = c.iter().map(|s| s.to_string()).collect();
        v.push(file.clone());
        owned.push(v);
    }
    let mut all = Vec::new();
    for c in owned {
        let mut j = c.clone();
        j.push("--emit".into());
        j.push("json".into());
        all.push(c);
        all.push(j);
    }
    all
}

fn criterion_10() -> Outcome {
    let mut runs = 0;
    let mut differing = Vec::new();
    for name in ["gl11_z2", "gl21", "sl11", "super_poincare", "super_heisenberg"] {
        for cmd in commands_for(name) {
            let a = run_command_with_threads(&cmd, 1);
            let b = run_command_with_threads(&cmd, 4);
            let c = run_command_with_threads(&cmd, 3);
            runs += 3;
            if a != b || a != c || a.stdout.is_empty() && a.stderr.is_empty() {
                differing.push(cmd.join(" "));
            }
        }
    }
    outcome(
        differing.is_empty(),
        format!(
            "{} commands x 3 runs (1, 4, 3 threads), {} differing{}",
            runs / 3,
            differing.len(),
            fmt_failures(&differing)
        ),
    )
}

fn main() {
    let criteria: [(u32, &str, Option<Duration>, fn() -> Outcome); 10] = [
        (1, "gl(1|1) swap action identities", Some(Duration::from_secs(1)), criterion_1),
        (2, "gl(1|1) deformation mu_1", Some(Duration::from_secs(1)), criterion_2),
        (3, "delta^2 = 0 on random superalgebras", Some(Duration::from_secs(60)), criterion_3),
        (4, "H^0 and H^1 characterizations", None, criterion_4),
        (5, "Maurer-Cartan equivalence", None, criterion_5),
        (6, "graded Lie structure of E", None, criterion_6),
        (7, "extension correspondence", None, criterion_7),
        (8, "gauge and cohomology", None, criterion_8),
        (9, "super-Poincare stress test", Some(Duration::from_secs(30)), criterion_9),
        (10, "determinism", None, criterion_10),
    ];
    let _ = pool();
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let out = result.unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        let limit_text = limit.map_or(String::new(), |l| format!(" (limit {}s)", l.as_secs()));
        println!(
            "criterion {n:>2} {name}: {} -- {}; {:.2}s{limit_text}",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of 10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
