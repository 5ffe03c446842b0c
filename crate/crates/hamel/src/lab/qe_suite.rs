//! Elimination suite: output shape, determinism, evaluation equivalence
//! against direct witness search, and decided sentences constant across
//! random plain towers.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::lab::sample::{random_formula, random_plain_model, random_sentence, random_vector};
use crate::lab::{err_str, run_trials, Report, SuiteConfig, Trial};
use crate::linear::Point;
use crate::logic::{
    decide_sentence, evaluate_qf, holds, parse_formula, print_formula, qe, Assignment, Formula,
};
use crate::tower::{render_point, Model};

/// Plain towers the equivalence of a formula is checked in.
const EQUIV_MODELS: usize = 3;
/// Assignments checked per formula in each tower.
const ASSIGNMENTS: usize = 100;
/// Plain towers a decided sentence is re-checked in.
const SENTENCE_MODELS: usize = 5;

/// Checks that elimination yields quantifier-free output over the same
/// free names, deterministically, and that the output is equivalent to
/// the input under direct quantifier search in random plain towers.
/// Every fifth trial also decides a random sentence and confirms the
/// verdict is what search reports in several towers.
pub fn run_qe_suite(cfg: &SuiteConfig) -> Report {
    run_trials("qe", cfg, |t, rng, trial| {
        if t == 0 {
            if let Err(e) = pinned(trial) {
                trial.engine_error("trial=0 pinned", &e);
            }
        }
        if let Err(e) = formula_trial(t, rng, cfg, trial) {
            trial.engine_error(&format!("trial={t}"), &e);
        }
        if t % 5 == 0 {
            if let Err(e) = sentence_trial(t, rng, cfg, trial) {
                trial.engine_error(&format!("trial={t} sentence"), &e);
            }
        }
    })
}

fn quantifier_depth(f: &Formula) -> usize {
    match f {
        Formula::True | Formula::False | Formula::Eq(_, _) | Formula::Lt(_, _, _) => 0,
        Formula::Not(a) => quantifier_depth(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            quantifier_depth(a).max(quantifier_depth(b))
        }
        Formula::Exists(_, a) | Formula::Forall(_, a) => 1 + quantifier_depth(a),
    }
}

fn formula_trial(
    t: u64,
    rng: &mut ChaCha8Rng,
    cfg: &SuiteConfig,
    trial: &mut Trial,
) -> Result<(), String> {
    let phi = random_formula(rng, 2);
    let text = print_formula(&phi);
    let tag = format!("trial={t} formula {text}");
    trial.bump("formulas");
    trial.bump(&format!("depth={}", quantifier_depth(&phi)));

    let psi = qe(&phi, 2).map_err(err_str)?;
    trial.check(
        psi.is_quantifier_free(),
        &tag,
        "eliminated formula is quantifier-free",
        &print_formula(&psi),
    );
    trial.check(
        psi.free_vars().is_subset(&phi.free_vars()),
        &tag,
        "free names survive elimination",
        &print_formula(&psi),
    );
    let again = qe(&phi, 2).map_err(err_str)?;
    trial.check(
        again == psi,
        &tag,
        "elimination is deterministic",
        &print_formula(&again),
    );

    let free: Vec<String> = phi.free_vars().into_iter().collect();
    for _ in 0..EQUIV_MODELS {
        let seed = rng.gen::<u64>();
        let size = rng.gen_range(1..=cfg.bounds.max_gens);
        let model = random_plain_model(seed, size);
        for _ in 0..ASSIGNMENTS {
            trial.bump("assignments");
            let mut sigma = Assignment::new();
            for name in &free {
                let v = random_vector(rng, &model, &cfg.bounds);
                sigma.insert(name.clone(), Point::Finite(v));
            }
            let searched = holds(&model, &phi, &sigma).map_err(err_str)?;
            let direct = evaluate_qf(&model, &psi, &sigma).map_err(err_str)?;
            if searched != direct {
                let rendered = render_assignment(&model, &sigma);
                trial.check(
                    false,
                    &format!("{tag} in tower(seed={seed}, size={size}) at {rendered}"),
                    &format!("search verdict {searched}"),
                    &format!("eliminated verdict {direct}"),
                );
            }
        }
    }
    Ok(())
}

fn sentence_trial(
    t: u64,
    rng: &mut ChaCha8Rng,
    cfg: &SuiteConfig,
    trial: &mut Trial,
) -> Result<(), String> {
    let sentence = random_sentence(rng);
    let text = print_formula(&sentence);
    trial.bump("sentences");
    let verdict = decide_sentence(&sentence, 2).map_err(err_str)?;
    for _ in 0..SENTENCE_MODELS {
        let seed = rng.gen::<u64>();
        let size = rng.gen_range(1..=cfg.bounds.max_gens);
        let model = random_plain_model(seed, size);
        let searched = holds(&model, &sentence, &Assignment::new()).map_err(err_str)?;
        trial.check(
            searched == verdict,
            &format!("trial={t} sentence {text} in tower(seed={seed}, size={size})"),
            &format!("decided verdict {verdict} in every tower"),
            &format!("search verdict {searched}"),
        );
    }
    Ok(())
}

fn render_assignment(model: &Model, sigma: &Assignment<Point>) -> String {
    let parts: Vec<String> = sigma
        .iter()
        .map(|(name, p)| format!("{name} = {}", render_point(model, p)))
        .collect();
    parts.join(", ")
}

/// The elimination shape of the interval-plus-side-condition example is
/// pinned, as are two one-quantifier sentence verdicts.
fn pinned(trial: &mut Trial) -> Result<(), String> {
    let phi = parse_formula("E x. (a <0 x & x <0 b & c <1 x)").map_err(err_str)?;
    let psi = qe(&phi, 2).map_err(err_str)?;
    trial.check(
        print_formula(&psi) == "a <0 b",
        "pinned elimination of E x. (a <0 x & x <0 b & c <1 x)",
        "a <0 b",
        &print_formula(&psi),
    );

    let pos = parse_formula("E x. 0 <0 x").map_err(err_str)?;
    let verdict = decide_sentence(&pos, 2).map_err(err_str)?;
    trial.check(verdict, "pinned verdict of E x. 0 <0 x", "true", "false");

    let irr = parse_formula("E x. x <0 x").map_err(err_str)?;
    let verdict = decide_sentence(&irr, 2).map_err(err_str)?;
    trial.check(!verdict, "pinned verdict of E x. x <0 x", "false", "true");
    Ok(())
}
