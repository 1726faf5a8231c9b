use std::process::{Command, Output};

use zetaint_cli::args::DIGITS_ENV;
use zetaint_cli::report::{DiscoverPayload, Envelope, TableRow, VerifyRow, ZetaRow};

fn zetaint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetaint"))
        .args(args)
        .env_remove(DIGITS_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_exit_codes() {
    let ok = zetaint(&["verify", "--id", "MAIN_Z4_REAL_LINE", "--digits", "50"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("PASS"));
    assert_eq!(
        zetaint(&["verify", "--id", "NO_SUCH"]).status.code(),
        Some(2)
    );
    let under = zetaint(&["verify", "--id", "BORWEIN_Z4", "--max-level", "4"]);
    assert_eq!(under.status.code(), Some(1));
    assert_eq!(
        zetaint(&["verify", "--id", "all", "--digits", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_all_json_has_every_row_and_round_trips() {
    let o = zetaint(&[
        "verify", "--id", "all", "--digits", "30", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let env: Envelope<VerifyRow> = serde_json::from_str(&text).unwrap();
    assert_eq!(env.payload.len(), 17);
    assert_eq!(env.command, "verify");
    assert_eq!(env.config.digits, 30);
    let again: Envelope<VerifyRow> =
        serde_json::from_str(&serde_json::to_string(&env).unwrap()).unwrap();
    assert_eq!(again, env);
}

fn stable_payload(args: &[&str]) -> Vec<VerifyRow> {
    let env: Envelope<VerifyRow> = serde_json::from_str(&stdout(&zetaint(args))).unwrap();
    env.payload
        .into_iter()
        .map(|mut r| {
            r.elapsed = 0.0;
            r
        })
        .collect()
}

#[test]
fn json_payload_is_stable() {
    let args = [
        "verify",
        "--id",
        "BLOCK_A,BLOCK_B,MELLIN_REP",
        "--digits",
        "40",
        "--format",
        "json",
    ];
    let a = serde_json::to_string(&stable_payload(&args)).unwrap();
    let b = serde_json::to_string(&stable_payload(&args)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn formats_carry_the_same_numbers() {
    let base = ["verify", "--id", "BLOCK_C", "--digits", "30"];
    let json: Envelope<VerifyRow> = serde_json::from_str(&stdout(&zetaint(
        &[&base[..], &["--format", "json"]].concat(),
    )))
    .unwrap();
    let row = &json.payload[0];
    let csv_text = stdout(&zetaint(&[&base[..], &["--format", "csv"]].concat()));
    let mut rdr = csv::Reader::from_reader(csv_text.as_bytes());
    let csv_row: VerifyRow = rdr.deserialize().next().unwrap().unwrap();
    let text = stdout(&zetaint(&base));
    for field in [
        &row.lhs_value,
        &row.rhs_value,
        &row.abs_residual,
        &row.tolerance,
    ] {
        assert!(text.contains(field.as_str()), "{field} missing from text");
    }
    assert_eq!(csv_row.lhs_value, row.lhs_value);
    assert_eq!(csv_row.abs_residual, row.abs_residual);
    assert_eq!(csv_row.passed, row.passed);
}

#[test]
fn table_command() {
    let o = zetaint(&["table", "--pmax", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let env: Envelope<TableRow> = serde_json::from_str(&stdout(&o)).unwrap();
    let zeta: Vec<_> = env
        .payload
        .iter()
        .map(|r| r.coeff_zeta.clone().unwrap())
        .collect();
    assert_eq!(zeta, ["1", "7", "279/2", "5715", "804825/2"]);

    let csv_out = zetaint(&["table", "--pmax", "5", "--format", "csv", "--digits", "60"]);
    assert_eq!(csv_out.status.code(), Some(0));
    let text = stdout(&csv_out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,value,coeff_zeta,coeff_eta,residual_zeta,residual_eta,note"
    );
    assert_eq!(lines.count(), 6);

    assert_eq!(zetaint(&["table", "--pmax", "99"]).status.code(), Some(2));
}

#[test]
fn discover_command() {
    let o = zetaint(&[
        "discover", "--pfit", "4", "--pcheck", "8", "--digits", "60", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let env: Envelope<DiscoverPayload> = serde_json::from_str(&stdout(&o)).unwrap();
    let p = &env.payload[0];
    assert_eq!(p.fit_range, vec![0, 1, 2, 3, 4]);
    assert_eq!(p.validated_range, vec![5, 6, 7, 8]);
    assert_eq!(p.ratio_polynomial.as_deref(), Some("4p^2 + 2p - 2"));
    assert_eq!(
        p.ratio_polynomial_factored.as_deref(),
        Some("(2p - 1)(2p + 2)")
    );

    let text = stdout(&zetaint(&[
        "discover", "--pfit", "4", "--pcheck", "6", "--digits", "40",
    ]));
    assert!(text.contains("2(p+1)(2p)!"));

    assert_eq!(
        zetaint(&["discover", "--pfit", "2", "--pcheck", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        zetaint(&["discover", "--pfit", "5", "--pcheck", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn zeta_command() {
    let o = zetaint(&["zeta", "--s", "4", "--method", "bernoulli"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("1/90 * pi^4"));
    let m = zetaint(&["zeta", "--s", "4", "--method", "mellin", "--format", "json"]);
    let env: Envelope<ZetaRow> = serde_json::from_str(&stdout(&m)).unwrap();
    let b = zetaint(&[
        "zeta",
        "--s",
        "4",
        "--method",
        "bernoulli",
        "--format",
        "json",
    ]);
    let envb: Envelope<ZetaRow> = serde_json::from_str(&stdout(&b)).unwrap();
    // Agreement to 1e-(digits-8): compare the leading 42 significant digits.
    assert_eq!(env.payload[0].value[..43], envb.payload[0].value[..43]);
    assert_eq!(envb.payload[0].pi_coefficient.as_deref(), Some("1/90"));

    assert_eq!(
        zetaint(&["zeta", "--s", "3", "--method", "bernoulli"])
            .status
            .code(),
        Some(2)
    );
    let em = zetaint(&[
        "zeta",
        "--s",
        "3",
        "--method",
        "euler-maclaurin",
        "--digits",
        "30",
    ]);
    assert_eq!(em.status.code(), Some(0));
    assert!(stdout(&em).contains("1.20205690315959428539973816151"));
}

#[test]
fn digits_from_environment_and_flag_precedence() {
    let run = |args: &[&str]| {
        let o = Command::new(env!("CARGO_BIN_EXE_zetaint"))
            .args(args)
            .env(DIGITS_ENV, "20")
            .output()
            .unwrap();
        serde_json::from_str::<Envelope<ZetaRow>>(&stdout(&o)).unwrap()
    };
    let from_env = run(&["zeta", "--s", "2", "--format", "json"]);
    assert_eq!(from_env.config.digits, 20);
    let flagged = run(&["zeta", "--s", "2", "--format", "json", "--digits", "25"]);
    assert_eq!(flagged.config.digits, 25);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.csv");
    let o = zetaint(&[
        "zeta",
        "--s",
        "6",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("s,method,value,pi_coefficient"));
    assert!(written.contains("1/945"));
}
