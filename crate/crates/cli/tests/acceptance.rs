//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use orbit_sheets::ks;
use orbit_sheets::verify::{self, Check, VerifyConfig};
use orbit_sheets::{
    induce_step, sheets_containing, w_report, Label, NilpotentOrbit, Partition, Sign,
};

const SWEEP_N: usize = 18;
const MATRIX_N: usize = 10;
const INVARIANTS_N: usize = 6;
const INDEX_N: usize = 10;
const SEED: u64 = 7;

type Criterion = (&'static str, fn() -> Result<(), String>);

const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

fn sweep(signs: &[Sign], max_n: usize, checks: &[Check]) -> Result<(), String> {
    let rep = verify::run(&VerifyConfig {
        signs: signs.to_vec(),
        max_n,
        checks: checks.to_vec(),
        seed: SEED,
        jobs: None,
    })
    .map_err(|e| e.to_string())?;
    match rep.failures.first() {
        None => Ok(()),
        Some(f) => Err(format!(
            "{} fails at {:?} (eps {}): {}",
            f.check, f.parts, f.eps, f.message
        )),
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    if took <= limit {
        Ok(())
    } else {
        Err(format!("took {took:.1?}, target {limit:?}"))
    }
}

fn orbit(eps: i64, parts: &[i64], label: Option<Label>) -> NilpotentOrbit {
    let p = Partition::new(Sign::from_int(eps).unwrap(), parts).unwrap();
    NilpotentOrbit::new(p, label).unwrap()
}

fn all(max_n: usize) -> impl Iterator<Item = Partition> {
    BOTH.into_iter()
        .flat_map(move |eps| (0..=max_n).flat_map(move |n| Partition::all(eps, n)))
}

fn any_label(p: &Partition) -> Option<Label> {
    p.is_very_even().then_some(Label::I)
}

fn z_max() -> Result<(), String> {
    let start = Instant::now();
    sweep(&BOTH, SWEEP_N, &[Check::ZMax])?;
    within(Duration::from_secs(120), start)
}

fn trichotomy() -> Result<(), String> {
    sweep(&BOTH, SWEEP_N, &[Check::CVsZ, Check::PhiUnique])?;
    for p in all(SWEEP_N) {
        let st = p.stats();
        let none_bad = p.two_steps().bad.is_empty();
        let unique = ks::enumerate_maximal(&p).len() == 1;
        if (st.c == st.z) != none_bad || none_bad != unique {
            return Err(format!(
                "{p}: c = {}, z = {}, no bad 2-step = {none_bad}, |Phi| = 1 is {unique}",
                st.c, st.z
            ));
        }
    }
    Ok(())
}

fn rigidity() -> Result<(), String> {
    for p in all(SWEEP_N) {
        let rigid = p.classify().rigid;
        let phi = ks::enumerate_maximal(&p);
        if (p.stats().c == 0) != rigid {
            return Err(format!("{p}: c = 0 disagrees with rigidity"));
        }
        if rigid && !(phi.len() == 1 && phi.iter().all(Vec::is_empty)) {
            return Err(format!(
                "{p}: rigid but Phi is not the empty sequence alone"
            ));
        }
        for seq in phi.iter() {
            let residue = ks::apply_sequence(&p, seq)
                .map_err(|e| e.to_string())?
                .result;
            if !residue.classify().rigid {
                return Err(format!("{p}: residue {residue} of {seq:?} is not rigid"));
            }
        }
    }
    Ok(())
}

fn inversion() -> Result<(), String> {
    sweep(&BOTH, SWEEP_N, &[Check::InduceInverse])?;
    for mu in all(SWEEP_N) {
        for i in 1..=(SWEEP_N - mu.size()) / 2 {
            let o = NilpotentOrbit::new(mu.clone(), any_label(&mu)).unwrap();
            let lam =
                induce_step(&o, i, Some(Label::I)).map_err(|e| format!("{mu} at {i}: {e}"))?;
            let back = ks::step(lam.partition(), i).map_err(|e| format!("{mu} at {i}: {e}"))?;
            if back != mu {
                return Err(format!(
                    "{mu} at {i}: induced {} reduces to {back}",
                    lam.partition()
                ));
            }
        }
    }
    Ok(())
}

fn matrix() -> Result<(), String> {
    let start = Instant::now();
    sweep(&BOTH, MATRIX_N, &[Check::Matrix])?;
    within(Duration::from_secs(600), start)
}

fn worked_sheets() -> Result<(), String> {
    let describe = |o: &NilpotentOrbit| {
        let mut rows: Vec<String> = sheets_containing(o)
            .iter()
            .map(|s| {
                format!(
                    "{}->{} r{} d{}",
                    s.levi, s.rigid_residue, s.rank, s.dim_sheet
                )
            })
            .collect();
        rows.sort();
        rows
    };
    let got = describe(&orbit(-1, &[2, 2], None));
    let want = ["(1)->(1,1) r1 d7", "(2)->() r1 d7"];
    if got != want {
        return Err(format!("(2,2): {got:?}"));
    }
    let big = sheets_containing(&orbit(-1, &[4, 4, 3, 3], None));
    if big.len() != 1 || big[0].rank != 2 {
        return Err(format!("(4,4,3,3): {} sheets", big.len()));
    }
    Ok(())
}

fn profile_example() -> Result<(), String> {
    let p = Partition::new(Sign::Minus, &[7, 7, 6, 4, 4, 2, 1, 1]).unwrap();
    let got: Vec<(usize, usize, Vec<usize>)> = p
        .profiles()
        .iter()
        .map(|pr| (pr.j, pr.k, pr.mu.parts().to_vec()))
        .collect();
    if got == [(3, 7, vec![5, 3, 3, 1])] {
        Ok(())
    } else {
        Err(format!("{got:?}"))
    }
}

fn invariants() -> Result<(), String> {
    let start = Instant::now();
    sweep(&BOTH, INVARIANTS_N, &[Check::Invariants])?;
    within(Duration::from_secs(300), start)
}

fn index() -> Result<(), String> {
    sweep(&BOTH, INDEX_N, &[Check::Index])
}

fn w_reports() -> Result<(), String> {
    let a = w_report(&orbit(-1, &[2, 2], None));
    if (a.dim_e, a.e_polynomial, a.dim_e_gamma) != (1, false, 1) {
        return Err(format!("(2,2): {a:?}"));
    }
    let b = w_report(&orbit(1, &[3, 3, 2, 2], None));
    if (b.dim_e, b.e_polynomial, b.dim_e_gamma) != (2, true, 2) {
        return Err(format!("(3,3,2,2): {b:?}"));
    }
    for p in all(SWEEP_N).filter(|p| p.classify().rigid) {
        let w = w_report(&NilpotentOrbit::new(p.clone(), any_label(&p)).unwrap());
        if w.dim_e != 0 {
            return Err(format!("{p}: rigid with dim_E = {}", w.dim_e));
        }
    }
    Ok(())
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_orbit-sheets"))
        .args(args)
        .env_remove("ORBIT_SHEETS_JOBS")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn cli_contract() -> Result<(), String> {
    let analyze = [
        "analyze",
        "--eps",
        "-1",
        "--parts",
        "7,7,6,4,4,2,1,1",
        "--json",
    ];
    let (code, first) = cli(&analyze);
    let (_, second) = cli(&analyze);
    if code != 0 || first != second {
        return Err("analyze is not byte-stable".into());
    }
    let expect = [
        (&["analyze", "--eps", "-1", "--parts", "3,1"][..], 1),
        (&["induce", "--eps", "1", "--seq", "2"][..], 1),
        (&["levis", "--eps", "-1", "--rank", "2", "--type-d"][..], 1),
        (&["verify", "--max-n", "0"][..], 1),
        (&["verify"][..], 0),
    ];
    for (args, want) in expect {
        let (got, _) = cli(args);
        if got != want {
            return Err(format!("{args:?} exited {got}, expected {want}"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("z-max theorem, N <= 18", z_max),
        ("non-singularity trichotomy, N <= 18", trichotomy),
        ("rigidity, N <= 18", rigidity),
        ("induction inverts reduction, N <= 18", inversion),
        ("matrix oracle, N <= 10", matrix),
        ("worked sheet examples", worked_sheets),
        ("profile of (7,7,6,4,4,2,1,1)", profile_example),
        ("invariants, N <= 6", invariants),
        ("index oracles, N <= 10", index),
        ("W-report spot checks", w_reports),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({took:.1?})", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({took:.1?}): {why}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
