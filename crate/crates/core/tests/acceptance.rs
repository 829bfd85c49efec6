//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::time::Instant;

use common::{as_rationals, oracle_models, seeded_models};
use orthant_walks::algebra::{rat, GaussianRational};
use orthant_walks::asymptotics::{
    compare_with_dp, excursion_asymptotics, hessian_det, leading_constant, minimal_points,
    phase_hessian, walk_asymptotics, ExpansionOptions,
};
use orthant_walks::diagonal::{
    build_excursion_rational, build_walk_rational, diagonal_coeffs, verify_orbit_sum_identity,
    verify_pospart_to_diagonal,
};
use orthant_walks::holonomic::to_signed;
use orthant_walks::report::term_text;
use orthant_walks::{
    count_totals, count_walks, models, DpOptions, Execution, OdeSpec, RecurrenceSpec,
    SurdConstant,
};

type Outcome = Result<String, String>;

fn surd(qn: i64, qd: i64, r: i64, h: i32) -> SurdConstant {
    SurdConstant::new(rat(qn, qd), rat(r, 1), h)
}

fn expect_eq<T: PartialEq + std::fmt::Display>(what: &str, got: &T, want: &T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn options(execution: Execution) -> ExpansionOptions {
    ExpansionOptions {
        execution,
        degree: None,
    }
}

fn table_constants() -> Outcome {
    let want = [
        ("nsew", surd(4, 1, 1, -2)),
        ("diagonal", surd(2, 1, 1, -2)),
        ("six_step", surd(1, 1, 6, -2)),
        ("king", surd(8, 3, 1, -2)),
    ];
    for ((name, m), (wname, c)) in models::quarter_plane().into_iter().zip(want) {
        assert_eq!(name, wname);
        expect_eq(name, &leading_constant(&m), &c)?;
    }
    Ok("4/π, 2/π, √6/π, 8/(3π)".into())
}

fn subdominant_terms() -> Outcome {
    let e = walk_asymptotics(&models::six_step(), 3, ExpansionOptions::default())
        .map_err(|e| e.to_string())?;
    let want = [
        (surd(1, 1, 6, -2), SurdConstant::zero()),
        (surd(-17, 16, 6, -2), surd(4, 16, 6, -2)),
        (surd(38720, 32768, 6, -2), surd(-16896, 32768, 6, -2)),
    ];
    for (t, (even, odd)) in e.terms.iter().zip(&want) {
        expect_eq(&format!("l={} even", t.l), &t.even, even)?;
        expect_eq(&format!("l={} odd", t.l), &t.odd, odd)?;
    }
    expect_eq("point (1,1) at l=2", &e.points[0].terms[1], &surd(-17, 16, 6, -2))?;
    expect_eq("point (1,-1) at l=2", &e.points[1].terms[1], &surd(1, 4, 6, -2))?;
    Ok(format!(
        "{} | {} | {}",
        term_text(&e, &e.terms[0]),
        term_text(&e, &e.terms[1]),
        term_text(&e, &e.terms[2])
    ))
}

fn octant_example() -> Outcome {
    let m = models::octant_eight();
    let pts = minimal_points(&m).map_err(|e| e.to_string())?;
    let ws: Vec<Vec<i32>> = pts.iter().map(|p| p.w.clone()).collect();
    let want = vec![vec![1, 1, 1], vec![1, 1, -1], vec![-1, -1, 1], vec![-1, -1, -1]];
    if ws != want {
        return Err(format!("minimal points {ws:?}"));
    }
    for p in &pts {
        let h = hessian_det(&m, &p.w).map_err(|e| e.to_string())?;
        expect_eq(&format!("Hessian at {:?}", p.w), &h, &rat(1, 4))?;
    }
    let e = walk_asymptotics(&m, 1, ExpansionOptions::default()).map_err(|e| e.to_string())?;
    expect_eq("leading term", &e.terms[0].even, &surd(4, 1, 2, -3))?;
    let text = term_text(&e, &e.terms[0]);
    expect_eq("rendering", &text.as_str(), &"4√2·π^{-3/2} · n^{-3/2} · 8^n")?;
    Ok(text)
}

fn excursions() -> Outcome {
    let e = excursion_asymptotics(&models::six_step(), 1, ExpansionOptions::default())
        .map_err(|e| e.to_string())?;
    for t in e.terms.iter().filter(|t| t.l < 4) {
        if !t.is_zero() {
            return Err(format!("nonzero term at l = {}", t.l));
        }
    }
    let lead = e.leading_term().ok_or("no nonzero term")?;
    expect_eq("leading l", &lead.l, &4)?;
    expect_eq("even part", &lead.even, &surd(3, 2, 6, -2))?;
    expect_eq("odd part", &lead.odd, &surd(3, 2, 6, -2))?;
    Ok(term_text(&e, lead))
}

fn oracle_agreement() -> Outcome {
    let mut checked = Vec::new();
    for (name, m) in oracle_models() {
        let table = count_walks(&m, 12, DpOptions::default()).map_err(|e| e.to_string())?;
        let walks = diagonal_coeffs(&build_walk_rational(&m), 12, Execution::Parallel);
        if as_rationals(table.totals()) != walks {
            return Err(format!("{name}: totals differ from the diagonal"));
        }
        let exc = diagonal_coeffs(&build_excursion_rational(&m), 12, Execution::Parallel);
        if as_rationals(&table.excursions()) != exc {
            return Err(format!("{name}: excursions differ from the shifted diagonal"));
        }
        verify_orbit_sum_identity(&m, &table, 8).map_err(|d| format!("{name}: {d}"))?;
        verify_pospart_to_diagonal(&m, 8).map_err(|d| format!("{name}: {d}"))?;
        checked.push(name);
    }
    Ok(checked.join(", "))
}

fn holonomic() -> Outcome {
    let ops = [
        (models::nsew(), include_str!("../data/ode_nsew.json")),
        (models::diagonal(), include_str!("../data/ode_diagonal.json")),
        (models::six_step(), include_str!("../data/ode_six_step.json")),
        (models::king(), include_str!("../data/ode_king.json")),
    ];
    for (m, text) in ops {
        let op: OdeSpec = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let s = to_signed(&count_totals(&m, 50, DpOptions::default()).map_err(|e| e.to_string())?.totals);
        op.check(&s).map_err(|e| format!("{m}: {e}"))?;
    }
    let rec: RecurrenceSpec =
        serde_json::from_str(include_str!("../data/rec_six_step.json")).map_err(|e| e.to_string())?;
    let s = to_signed(
        &count_totals(&models::six_step(), 60, DpOptions::default())
            .map_err(|e| e.to_string())?
            .totals,
    );
    let last = rec.check(&s).map_err(|e| e.to_string())?;
    Ok(format!("4 operators through order 50, recurrence for n ≤ {last} (c_n up to n = 60)"))
}

fn convergence() -> Outcome {
    let m = models::six_step();
    let counts = count_totals(&m, 200, DpOptions::default())
        .map_err(|e| e.to_string())?
        .totals;
    let e1 = walk_asymptotics(&m, 1, ExpansionOptions::default()).map_err(|e| e.to_string())?;
    let e3 = walk_asymptotics(&m, 3, ExpansionOptions::default()).map_err(|e| e.to_string())?;
    let c1 = compare_with_dp(&e1, &counts, 100..=200).map_err(|e| e.to_string())?;
    let c3 = compare_with_dp(&e3, &counts, 100..=200).map_err(|e| e.to_string())?;
    let root6_over_pi = 6f64.sqrt() / std::f64::consts::PI;
    let mut worst = 0f64;
    for (a, b) in c1.rows.iter().zip(&c3.rows) {
        let parity = if a.n % 2 == 0 { 1.0 } else { -1.0 };
        let envelope = -root6_over_pi * (17.0 - 4.0 * parity) / 16.0;
        let dev = (a.scaled_residual / envelope - 1.0).abs();
        worst = worst.max(dev);
        if dev > 0.25 {
            return Err(format!(
                "n = {}: scaled one-term residual {} vs {envelope}",
                a.n, a.scaled_residual
            ));
        }
        if b.abs_residual() >= a.abs_residual() {
            return Err(format!("n = {}: three-term residual is not smaller", a.n));
        }
    }
    Ok(format!("max deviation from the parity envelope {:.2}%", 100.0 * worst))
}

fn invariants() -> Outcome {
    let models = seeded_models(0x5eed_2024, 20);
    let mut points = 0;
    for m in &models {
        if !build_walk_rational(m).smoothness_identity_holds() {
            return Err(format!("{m}: t·H_t ≠ H − 1"));
        }
        for p in minimal_points(m).map_err(|e| format!("{m}: {e}"))? {
            let h = phase_hessian(m, &p.w).map_err(|e| e.to_string())?;
            let mut det = GaussianRational::real(rat(1, 1));
            for (j, row) in h.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    if j != k && *v != GaussianRational::real(rat(0, 1)) {
                        return Err(format!("{m}: off-diagonal Hessian entry at {:?}", p.w));
                    }
                }
                det = &det * &row[j];
            }
            let formula = hessian_det(m, &p.w).map_err(|e| e.to_string())?;
            if det != GaussianRational::real(formula) {
                return Err(format!("{m}: Hessian determinant mismatch at {:?}", p.w));
            }
            points += 1;
        }
        // Any nonzero imaginary part in an L_k is reported as an error.
        let seq = walk_asymptotics(m, 3, options(Execution::Sequential)).map_err(|e| format!("{m}: {e}"))?;
        let par = walk_asymptotics(m, 3, options(Execution::Parallel)).map_err(|e| format!("{m}: {e}"))?;
        if seq != par {
            return Err(format!("{m}: parallel expansion differs"));
        }
        let exc = excursion_asymptotics(m, 1, options(Execution::Parallel)).map_err(|e| format!("{m}: {e}"))?;
        if exc != excursion_asymptotics(m, 1, options(Execution::Sequential)).map_err(|e| e.to_string())? {
            return Err(format!("{m}: parallel excursion expansion differs"));
        }
        let n = if m.dim() == 3 { 8 } else { 12 };
        let a = count_walks(m, n, DpOptions::default().with_execution(Execution::Sequential));
        let b = count_walks(m, n, DpOptions::default().with_execution(Execution::Parallel));
        if a != b {
            return Err(format!("{m}: parallel DP differs"));
        }
        let spec = build_walk_rational(m);
        if diagonal_coeffs(&spec, n, Execution::Sequential) != diagonal_coeffs(&spec, n, Execution::Parallel) {
            return Err(format!("{m}: parallel series expansion differs"));
        }
    }
    let dims: Vec<usize> = models.iter().map(|m| m.dim()).collect();
    Ok(format!("{} models (dimensions {dims:?}), {points} minimal points", models.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("leading constants of the four planar models", table_constants),
        ("three-term expansion of the six-step model", subdominant_terms),
        ("three-dimensional eight-step example", octant_example),
        ("excursion leading term and vanishing orders", excursions),
        ("enumeration, diagonal and kernel identities agree", oracle_agreement),
        ("differential operators and recurrence annihilate counts", holonomic),
        ("empirical convergence against enumeration to n = 200", convergence),
        ("invariants on 20 seeded random models", invariants),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({secs:.2}s) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.2}s) {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
