//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report is always printed; exits
//! non-zero if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use equivar_core::actions::{act_phi_dagger, act_psi, act_theta};
use equivar_core::linalg::same_span;
use equivar_core::{
    check_related, equivariant_basis, equivariant_module_generators, integrate_pair,
    invariant_basis, invariant_ring_generators, is_invariant, molien, molien_equivariant, pairing,
    reduce, reynolds, unpairing, InvariantGens, MatGroup, Monomial, MultiPoly, PhaseAction,
    PhasePoly, PolyAction, PolyVectorField, Rat, RatMatrix, VectorFieldAction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

fn group(n: usize, m: &[i64]) -> MatGroup {
    MatGroup::from_generators(n, &[RatMatrix::from_i64(n, n, m)]).unwrap()
}

fn samples() -> Vec<(&'static str, MatGroup)> {
    vec![
        ("z2", group(1, &[-1])),
        ("z2-diag", group(2, &[-1, 0, 0, -1])),
        ("swap", group(2, &[0, 1, 1, 0])),
        ("c4", group(2, &[0, -1, 1, 0])),
    ]
}

fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn var(n: usize, i: usize) -> MultiPoly {
    MultiPoly::var(n, i)
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(
        rng.gen_range(-5i64..=5).into(),
        rng.gen_range(1i64..=4).into(),
    )
}

/// Random polynomial of total degree at most `max_deg`.
fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, max_deg: u32) -> MultiPoly {
    let count = rng.gen_range(1..=6);
    let terms = (0..count).map(|_| {
        let d = rng.gen_range(0..=max_deg);
        let mut exps = vec![0u32; nvars];
        for _ in 0..d {
            exps[rng.gen_range(0..nvars)] += 1;
        }
        (random_rat(rng), exps)
    });
    MultiPoly::from_terms(nvars, terms.collect::<Vec<_>>()).unwrap()
}

fn random_field(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> PolyVectorField {
    PolyVectorField::new((0..n).map(|_| random_poly(rng, n, max_deg)).collect()).unwrap()
}

/// A random polynomial linear in ξ with x-degree at most `max_deg`.
fn random_xi_linear(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> PhasePoly {
    pairing(&random_field(rng, n, max_deg))
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))
}

fn is_multiple_of(p: &MultiPoly, target: &MultiPoly) -> bool {
    let (Some((m, c)), Some((tm, tc))) = (p.leading_term(), target.leading_term()) else {
        return false;
    };
    m == tm && p == &target.scale(&(c / tc))
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let g = group(1, &[-1]);
    let inv = ok(invariant_ring_generators(&g, None))?;
    ensure(
        inv.degrees() == [2],
        format!("invariant degrees {:?}", inv.degrees()),
    )?;
    ensure(
        is_multiple_of(&inv.gens()[0], &var(1, 0).pow(2)),
        "generator is not a multiple of x^2",
    )?;
    let eg = ok(equivariant_module_generators(&g, &inv, None))?;
    ensure(
        eg.degrees() == [1],
        format!("equivariant degrees {:?}", eg.degrees()),
    )?;
    ensure(
        is_multiple_of(&eg.vgens()[0].comps()[0], &var(1, 0)),
        "field generator is not a multiple of (x)",
    )?;
    within(start, Duration::from_secs(1))?;
    Ok(format!(
        "p1 = {}, V1 = ({})",
        inv.gens()[0],
        eg.vgens()[0].comps()[0]
    ))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let g = group(2, &[-1, 0, 0, -1]);
    let inv = ok(invariant_ring_generators(&g, None))?;
    ensure(
        inv.degrees() == [2, 2, 2],
        format!("invariant degrees {:?}", inv.degrees()),
    )?;
    let rels = inv.relations(4);
    ensure(
        rels.len() == 1,
        format!("{} relations up to weighted degree 4", rels.len()),
    )?;
    let p = |i| var(3, i);
    let expected = &(&p(0) * &p(2)) - &p(1).pow(2);
    // generators are x², xy, y² in that order
    let order = [var(2, 0).pow(2), &var(2, 0) * &var(2, 1), var(2, 1).pow(2)];
    ensure(inv.gens() == order, "generators are not x^2, xy, y^2")?;
    ensure(
        is_multiple_of(&rels.rels()[0], &expected),
        format!("relation {}", rels.rels()[0]),
    )?;
    let eg = ok(equivariant_module_generators(&g, &inv, None))?;
    ensure(
        eg.degrees() == [1, 1, 1, 1],
        format!("equivariant degrees {:?}", eg.degrees()),
    )?;
    within(start, Duration::from_secs(5))?;
    Ok(format!(
        "relation {} = 0",
        rels.rels()[0].to_string().replace('x', "P")
    ))
}

fn criterion_3() -> Check {
    let g = group(2, &[0, 1, 1, 0]);
    let inv = ok(invariant_ring_generators(&g, None))?;
    ensure(
        inv.degrees() == [1, 2],
        format!("invariant degrees {:?}", inv.degrees()),
    )?;
    let eg = ok(equivariant_module_generators(&g, &inv, None))?;
    ensure(
        eg.degrees() == [0, 1],
        format!("equivariant degrees {:?}", eg.degrees()),
    )?;
    let (x, y) = (var(2, 0), var(2, 1));
    let target = PolyVectorField::new(vec![y.clone(), x.clone()]).unwrap();
    let coeffs = ok(eg.express_equivariant(&target))?;
    ensure(
        ok(eg.combine(&coeffs))? == target,
        "express_equivariant round-trip failed",
    )?;
    // the hand decomposition (x+y)·(1,1) − (x,y) = (y,x)
    let one = MultiPoly::one(2);
    let hand = ok(ok(PolyVectorField::new(vec![one.clone(), one])
        .unwrap()
        .mul_poly(&(&x + &y)))?
    .sub(&PolyVectorField::new(vec![x, y]).unwrap()))?;
    ensure(
        hand == target,
        "hand decomposition does not reproduce (y,x)",
    )?;
    let shown: Vec<String> = coeffs
        .iter()
        .map(|c| c.to_string().replace('x', "P"))
        .collect();
    let gens: Vec<String> = eg
        .vgens()
        .iter()
        .map(|v| format!("({}, {})", v.comps()[0], v.comps()[1]))
        .collect();
    Ok(format!(
        "generators {}; coefficients [{}]",
        gens.join(", "),
        shown.join(", ")
    ))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let g = group(2, &[0, -1, 1, 0]);
    let inv = ok(invariant_ring_generators(&g, None))?;
    let mut degrees = inv.degrees().to_vec();
    degrees.sort_unstable();
    ensure(
        degrees == [2, 4, 4],
        format!("invariant degrees {degrees:?}"),
    )?;
    let m = ok(molien(&g))?.dimensions(9);
    let me = ok(molien_equivariant(&g))?.dimensions(9);
    for d in 0..=8u32 {
        let b = ok(invariant_basis(&g, d))?.len();
        ensure(
            b == m[d as usize],
            format!("degree {d}: basis {b}, Molien {}", m[d as usize]),
        )?;
        let e = ok(equivariant_basis(&g, d))?.len();
        ensure(
            e == me[d as usize],
            format!(
                "degree {d}: equivariant basis {e}, Molien {}",
                me[d as usize]
            ),
        )?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("invariant dims {m:?}, equivariant dims {me:?}"))
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut count = 0;
    for (name, g) in samples() {
        let n = g.dim();
        for _ in 0..100 {
            let a = rng.gen_range(0..g.order());
            let b = rng.gen_range(0..g.order());
            let ab = ok(g.product(a, b))?;
            let p = random_poly(&mut rng, n, 4);
            let lhs = ok(act_phi_dagger(&g, ab, &p))?;
            let rhs = ok(act_phi_dagger(&g, a, &ok(act_phi_dagger(&g, b, &p))?))?;
            ensure(
                lhs == rhs,
                format!("{name}: polynomial action law fails for ({a},{b})"),
            )?;

            let v = random_field(&mut rng, n, 4);
            let lhs = ok(act_theta(&g, ab, &v))?;
            let rhs = ok(act_theta(&g, a, &ok(act_theta(&g, b, &v))?))?;
            ensure(
                lhs == rhs,
                format!("{name}: field action law fails for ({a},{b})"),
            )?;

            let q = PhasePoly::new(n, random_poly(&mut rng, 2 * n, 4)).unwrap();
            let lhs = ok(act_psi(&g, ab, &q))?;
            let rhs = ok(act_psi(&g, a, &ok(act_psi(&g, b, &q))?))?;
            ensure(
                lhs == rhs,
                format!("{name}: phase action law fails for ({a},{b})"),
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} triples per action, 100 per group"))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (name, g) in samples() {
        let n = g.dim();
        let inv = ok(invariant_ring_generators(&g, None))?;
        for _ in 0..100 {
            let p = random_poly(&mut rng, n, 4);
            let r = ok(reynolds::<PolyAction>(&g, &p))?;
            ensure(
                ok(reynolds::<PolyAction>(&g, &r))? == r,
                format!("{name}: not idempotent"),
            )?;
            ensure(
                ok(is_invariant::<PolyAction>(&g, &r))?.holds(),
                format!("{name}: average not invariant"),
            )?;
            // an invariant built without averaging is a fixed point
            let f = random_poly(&mut rng, inv.len(), 2);
            let q = ok(inv.substitute(&f))?;
            ensure(
                ok(reynolds::<PolyAction>(&g, &q))? == q,
                format!("{name}: invariant moved by averaging"),
            )?;

            let v = random_field(&mut rng, n, 3);
            let rv = ok(reynolds::<VectorFieldAction>(&g, &v))?;
            ensure(
                ok(is_invariant::<VectorFieldAction>(&g, &rv))?.holds(),
                format!("{name}: field average"),
            )?;
            ensure(
                ok(reynolds::<VectorFieldAction>(&g, &rv))? == rv,
                format!("{name}: field idempotence"),
            )?;
            let q = PhasePoly::new(n, random_poly(&mut rng, 2 * n, 3)).unwrap();
            let rq = ok(reynolds::<PhaseAction>(&g, &q))?;
            ensure(
                ok(is_invariant::<PhaseAction>(&g, &rq))?.holds(),
                format!("{name}: phase average"),
            )?;
            ensure(
                ok(reynolds::<PhaseAction>(&g, &rq))? == rq,
                format!("{name}: phase idempotence"),
            )?;
        }
    }
    Ok("100 polynomials per group".into())
}

/// Basis of degree-`m` equivariant fields from averaging `x^α e_i` directly.
fn theta_route(g: &MatGroup, m: u32) -> Result<Vec<PolyVectorField>, String> {
    let n = g.dim();
    let mut out = Vec::new();
    for alpha in Monomial::all_of_degree(n, m) {
        for i in 0..n {
            let v = PolyVectorField::basis(MultiPoly::from_monomial(alpha.clone(), int(1)), i);
            out.push(ok(reynolds::<VectorFieldAction>(g, &v))?);
        }
    }
    Ok(out)
}

fn flatten(fields: &[PolyVectorField]) -> Vec<std::collections::BTreeMap<(usize, Monomial), Rat>> {
    fields
        .iter()
        .map(|v| {
            v.comps()
                .iter()
                .enumerate()
                .flat_map(|(i, c)| c.terms().map(move |(m, k)| ((i, m.clone()), k.clone())))
                .collect()
        })
        .collect()
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for (name, g) in samples() {
        let n = g.dim();
        for _ in 0..100 {
            let v = random_field(&mut rng, n, 4);
            ensure(
                ok(unpairing(&pairing(&v)))? == v,
                format!("{name}: pairing round-trip"),
            )?;
            let theta = ok(is_invariant::<VectorFieldAction>(&g, &v))?.holds();
            let psi = ok(is_invariant::<PhaseAction>(&g, &pairing(&v)))?.holds();
            ensure(
                theta == psi,
                format!("{name}: invariance disagrees on a random field"),
            )?;
            let q = ok(reynolds::<PhaseAction>(
                &g,
                &random_xi_linear(&mut rng, n, 3),
            ))?;
            let back = ok(unpairing(&q))?;
            ensure(
                ok(is_invariant::<VectorFieldAction>(&g, &back))?.holds(),
                format!("{name}: averaged phase poly"),
            )?;
        }
        for m in 0..=2 * g.order() as u32 {
            let basis = ok(equivariant_basis(&g, m))?;
            for v in &basis {
                ensure(
                    ok(is_invariant::<VectorFieldAction>(&g, v))?.holds(),
                    format!("{name} degree {m}: field"),
                )?;
                ensure(
                    ok(is_invariant::<PhaseAction>(&g, &pairing(v)))?.holds(),
                    format!("{name} degree {m}: phase"),
                )?;
            }
            let direct = theta_route(&g, m)?;
            ensure(
                same_span(&flatten(&basis), &flatten(&direct)),
                format!("{name} degree {m}: spans differ"),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (group, degree) spans agree"))
}

fn radial_field() -> PolyVectorField {
    let (x, y) = (var(2, 0), var(2, 1));
    let r = &(&MultiPoly::one(2) - &x.pow(2)) - &y.pow(2);
    PolyVectorField::new(vec![&x * &r, &y * &r]).unwrap()
}

fn cubic_field() -> PolyVectorField {
    let x = var(1, 0);
    PolyVectorField::new(vec![&x - &x.pow(3)]).unwrap()
}

/// `Σ_j X_j ∂p_i/∂x_j` evaluated at a point, against `Y_i(σ(x))`.
fn pointwise_identity(
    x: &PolyVectorField,
    y: &[MultiPoly],
    inv: &InvariantGens,
    pt: &[Rat],
) -> bool {
    let sigma = inv.hilbert_map_eval(pt).unwrap();
    let xv = x.eval(pt).unwrap();
    inv.gens().iter().zip(y).all(|(p, yi)| {
        let lhs: Rat = xv
            .iter()
            .enumerate()
            .map(|(j, xj)| xj * p.partial(j).unwrap().eval(pt).unwrap())
            .sum();
        lhs == yi.eval(&sigma).unwrap()
    })
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let two = int(2);

    let g1 = group(1, &[-1]);
    let inv1 = ok(invariant_ring_generators(&g1, None))?;
    let y1 = ok(reduce(&cubic_field(), &inv1))?;
    let p = var(1, 0);
    let expected1 = &p.scale(&two) - &p.pow(2).scale(&two);
    ensure(
        y1.comps() == [expected1.clone()],
        format!("line system {}", y1.comps()[0]),
    )?;
    ensure(
        ok(check_related(&cubic_field(), y1.comps(), &inv1))?.holds(),
        "line system not related",
    )?;
    // chain rule by hand: d(x²)/dt = 2x·(x − x³)
    let x = var(1, 0);
    ensure(
        ok(inv1.substitute(&y1.comps()[0]))?
            == &(&x * &cubic_field().comps()[0]) * &MultiPoly::constant(1, two.clone()),
        "line expansion",
    )?;

    let g2 = group(2, &[-1, 0, 0, -1]);
    let inv2 = ok(invariant_ring_generators(&g2, None))?;
    let field = radial_field();
    let y2 = ok(reduce(&field, &inv2))?;
    let q = |i| var(3, i);
    let s = &(&MultiPoly::one(3) - &q(0)) - &q(2);
    let by_hand2: Vec<MultiPoly> = (0..3).map(|i| (&q(i) * &s).scale(&two)).collect();
    ensure(
        ok(check_related(&field, y2.comps(), &inv2))?.holds(),
        "computed plane system not related",
    )?;
    ensure(
        ok(check_related(&field, &by_hand2, &inv2))?.holds(),
        "hand-derived plane system not related",
    )?;
    let rel = inv2.relations(4).rels()[0].clone();
    let mut literal = true;
    for (got, want) in y2.comps().iter().zip(&by_hand2) {
        let diff = got - want;
        literal &= diff.is_zero();
        ensure(
            diff.is_zero() || is_multiple_of(&diff, &rel),
            format!("difference {diff} is not a multiple of {rel}"),
        )?;
    }
    // chain rule by hand on x², xy, y² with r = 1 − x² − y²
    let (x, y) = (var(2, 0), var(2, 1));
    let r = &(&MultiPoly::one(2) - &x.pow(2)) - &y.pow(2);
    let by_hand = [
        &(&x.pow(2) * &r) * &MultiPoly::constant(2, two.clone()),
        &(&(&x * &y) * &r) * &MultiPoly::constant(2, two.clone()),
        &(&y.pow(2) * &r) * &MultiPoly::constant(2, two.clone()),
    ];
    for (yi, h) in y2.comps().iter().zip(&by_hand) {
        ensure(&ok(inv2.substitute(yi))? == h, "plane expansion")?;
    }
    for _ in 0..20 {
        let pt1 = [random_rat(&mut rng)];
        ensure(
            pointwise_identity(&cubic_field(), y1.comps(), &inv1, &pt1),
            "line pointwise",
        )?;
        let pt2 = [random_rat(&mut rng), random_rat(&mut rng)];
        ensure(
            pointwise_identity(&field, y2.comps(), &inv2, &pt2),
            "plane pointwise",
        )?;
    }
    let shown: Vec<String> = y2
        .comps()
        .iter()
        .map(|c| c.to_string().replace('x', "P"))
        .collect();
    Ok(format!(
        "plane system ({}); {}",
        shown.join(", "),
        if literal {
            "identical to the hand-derived form".to_string()
        } else {
            format!(
                "equal to the hand-derived form modulo {} = 0",
                rel.to_string().replace('x', "P")
            )
        }
    ))
}

/// Defect from `near` at step 1e-3, and the halving ratio from `far`, where
/// the error is well above rounding.
fn rk4_case(
    name: &str,
    x: &PolyVectorField,
    inv: &InvariantGens,
    near: &[Rat],
    far: &[Rat],
) -> Check {
    let y = ok(reduce(x, inv))?;
    let y = y.comps();
    let d = ok(integrate_pair(x, y, inv, near, 1.0, 1e-3))?.max_defect;
    ensure(d <= 1e-6, format!("{name}: max_defect {d:e} at step 1e-3"))?;
    let coarse = ok(integrate_pair(x, y, inv, far, 1.0, 1e-3))?.max_defect;
    let fine = ok(integrate_pair(x, y, inv, far, 1.0, 5e-4))?.max_defect;
    let ratio = coarse / fine;
    ensure(
        ratio >= 8.0,
        format!("{name}: halving ratio {ratio:.2} ({coarse:e} -> {fine:e})"),
    )?;
    Ok(format!(
        "{name} defect {d:.1e}, halving ratio {ratio:.1} ({coarse:.1e} -> {fine:.1e})"
    ))
}

fn criterion_9() -> Check {
    let inv1 = ok(invariant_ring_generators(&group(1, &[-1]), None))?;
    let inv2 = ok(invariant_ring_generators(&group(2, &[-1, 0, 0, -1]), None))?;
    let half = Rat::new(1.into(), 2.into());
    let quarter = Rat::new(1.into(), 4.into());
    let line = rk4_case(
        "line",
        &cubic_field(),
        &inv1,
        std::slice::from_ref(&half),
        &[int(2)],
    )?;
    let plane = rk4_case(
        "plane",
        &radial_field(),
        &inv2,
        &[half.clone(), quarter],
        &[int(2), int(1)],
    )?;
    Ok(format!("{line}; {plane}"))
}

fn criterion_10() -> Check {
    let bin = env!("CARGO_BIN_EXE_equivar");
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let groups = ["z2.json", "z2diag.json", "swap.json", "c4.json"];
    let fields = [
        ("z2.json", "cubic_line.json"),
        ("z2diag.json", "radial_plane.json"),
        ("swap.json", "swap_field.json"),
    ];
    let mut runs: Vec<Vec<String>> = Vec::new();
    for g in groups {
        let gp = data.join(g).to_string_lossy().into_owned();
        for cmd in ["invariants", "equivariants", "relations"] {
            runs.push(vec![cmd.into(), "--group".into(), gp.clone()]);
        }
        runs.push(vec![
            "molien".into(),
            "--group".into(),
            gp.clone(),
            "--degrees".into(),
            "12".into(),
        ]);
        runs.push(vec![
            "invariants".into(),
            "--group".into(),
            gp,
            "--text".into(),
        ]);
    }
    for (g, f) in fields {
        let gp = data.join(g).to_string_lossy().into_owned();
        let fp = data.join(f).to_string_lossy().into_owned();
        runs.push(vec![
            "reduce".into(),
            "--group".into(),
            gp.clone(),
            "--field".into(),
            fp.clone(),
        ]);
        runs.push(vec![
            "express".into(),
            "--group".into(),
            gp,
            "--field".into(),
            fp,
        ]);
    }
    for args in &runs {
        let once = ok(Command::new(bin)
            .args(args)
            .env_remove("EQUIVAR_CAP")
            .output())?;
        let twice = ok(Command::new(bin)
            .args(args)
            .env_remove("EQUIVAR_CAP")
            .output())?;
        ensure(
            once.status.success(),
            format!(
                "{} failed: {}",
                args.join(" "),
                String::from_utf8_lossy(&once.stderr)
            ),
        )?;
        ensure(
            once.stdout == twice.stdout && once.stderr == twice.stderr,
            format!("{} differs between runs", args[0]),
        )?;
    }
    Ok(format!(
        "{} commands byte-identical across two runs",
        runs.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("z2 on the line: generators", criterion_1),
        ("z2 diagonal: generators and relation", criterion_2),
        ("swap: degrees and field expression", criterion_3),
        ("c4: degrees and Molien agreement to degree 8", criterion_4),
        ("action laws on random triples", criterion_5),
        ("Reynolds projector", criterion_6),
        ("pairing correspondence and equivariant spans", criterion_7),
        ("orbit-space reduction", criterion_8),
        ("numeric relatedness", criterion_9),
        ("CLI determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let t = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS  {:>2}. {name} ({t:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}. {name} ({t:.2}s): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
