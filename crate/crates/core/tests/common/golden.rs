//! Fixed CLI invocations whose full transcript (stdout, stderr, exit code)
//! is stored under `tests/golden/`. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;
use std::process::Command;

pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    /// Expected exit status, checked independently of the transcript.
    pub exit: i32,
}

macro_rules! case {
    ($name:literal, $exit:literal, [$($arg:literal),* $(,)?]) => {
        GoldenCase { name: $name, args: &[$($arg),*], exit: $exit }
    };
}

pub const CASES: &[GoldenCase] = &[
    case!("ring_eval_square", 0, ["ring-eval", "--spec", "1,1", "(x1+x2)^2"]),
    case!("ring_eval_truncated", 0, ["ring-eval", "--spec", "2", "x1^3"]),
    case!("ring_eval_mixed", 0, ["ring-eval", "--spec", "1,2", "x1*x2^2"]),
    case!("ring_eval_json", 0, ["ring-eval", "--spec", "2,3", "--json", "(x1+x2)^2"]),
    case!("ring_eval_parse_error", 2, ["ring-eval", "--spec", "1,1", "x1 +"]),
    case!("ring_eval_spec_mismatch", 2, ["ring-eval", "--spec", "1,1", "x3"]),
    case!("check_endo_swap", 1, ["check-endo", "--spec", "1,2", "--matrix", "swap.txt"]),
    case!("check_endo_identity", 0, ["check-endo", "--spec", "1,2", "--matrix", "id2.txt"]),
    case!("check_endo_ragged", 2, ["check-endo", "--spec", "1,1", "--matrix", "ragged.txt"]),
    case!("check_endo_shear", 1, ["check-endo", "--spec", "2,1", "--matrix", "shear.txt"]),
    case!("normal_form_rotation", 0, ["normal-form", "--spec", "1,1", "--matrix", "rot.txt"]),
    case!("normal_form_profile", 1, ["normal-form", "--spec", "1,2", "--matrix", "swap.txt"]),
    case!("classify_11_b2", 0, ["classify", "--spec", "1,1", "--bound", "2"]),
    case!("classify_12_b1", 0, ["classify", "--spec", "1,2", "--bound", "1"]),
    case!("classify_112_pruned", 0, ["classify", "--spec", "1,1,2", "--bound", "1", "--pruning", "on"]),
    case!("classify_oversize", 3, ["classify", "--spec", "1,1,1", "--bound", "10"]),
    case!("enumerate_12_b2", 0, ["enumerate", "--spec", "1,2", "--bound", "2"]),
    case!("factor_identity", 0, ["factor", "--spec", "1,1", "--matrix", "id2.txt", "--h-star", "id2.txt"]),
    case!("factor_swap", 0, ["factor", "--spec", "1,1", "--matrix", "swap.txt"]),
    case!("factor_flip_through_swap", 0, ["factor", "--spec", "1,1", "--matrix", "flip1.txt", "--h-star", "swap.txt"]),
    case!("factor_reverse3", 0, ["factor", "--spec", "2,1,2", "--matrix", "rev3.txt"]),
    case!("factor_not_automorphism", 1, ["factor", "--spec", "1,1", "--matrix", "scale2.txt"]),
    case!("powers_12", 0, ["powers", "--spec", "1,2", "--coeffs", "1,-1"]),
    case!("selftest_seed42", 0, ["selftest", "--seed", "42", "--trials", "25"]),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct Transcript {
    pub text: String,
    pub exit: i32,
}

pub fn run_case(case: &GoldenCase) -> Transcript {
    let out = Command::new(env!("CARGO_BIN_EXE_rigidity"))
        .args(case.args)
        .current_dir(golden_dir().join("inputs"))
        .output()
        .expect("spawn rigidity");
    let exit = out.status.code().unwrap_or(-1);
    let text = format!(
        "$ rigidity {}\n--- stdout\n{}--- stderr\n{}--- exit {}\n",
        case.args.join(" "),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
        exit
    );
    Transcript { text, exit }
}

/// `Ok(())` when the transcript matches the stored file byte for byte.
pub fn check_case(case: &GoldenCase) -> Result<(), String> {
    let got = run_case(case);
    let path = golden_dir().join(format!("{}.txt", case.name));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got.text).unwrap();
    }
    let want = std::fs::read_to_string(&path)
        .map_err(|e| format!("{}: cannot read {}: {e}", case.name, path.display()))?;
    if got.exit != case.exit {
        return Err(format!("{}: exit {} (expected {})", case.name, got.exit, case.exit));
    }
    if got.text != want {
        return Err(format!("{}: transcript differs\n--- got\n{}--- want\n{}", case.name, got.text, want));
    }
    Ok(())
}
