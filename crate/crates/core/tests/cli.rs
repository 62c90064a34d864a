use std::process::{Command, Output};

use topokit::cli::rerender;

fn topokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topokit"))
        .args(args)
        .env_remove("TOPOKIT_CONFIG_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = topokit(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .trim_end()
        .to_string()
}

#[test]
fn golden_outputs() {
    let cases: &[(&[&str], &str)] = &[
        (&["bernoulli", "12"], "-691/2730"),
        (&["bernoulli", "3"], "0"),
        (&["lpoly", "1"], "p1/3"),
        (&["lpoly", "3"], "(62*p3 - 13*p2*p1 + 2*p1^3)/945"),
        (&["lseries", "2"], "1 + z/3 - z^2/45"),
        (&["spoly", "2", "2"], "s2^2 - 2*s1*s3 + 2*s4"),
        (
            &["cp-signature", "4"],
            "sigma(CP^8) = (48006 - 53676 - 24624 + 64152 - 19683)/14175 = 1",
        ),
        (&["chi", "product(sphere(2), sphere(2))"], "4 (dimension 4)"),
        (&["theta", "7"], "Z_28"),
        (&["bp-order", "4"], "8128"),
        (&["bordism", "4"], "Z_2 ⊕ Z_2 ⊕ Z_2"),
        (&["lgroup", "4"], "Z"),
    ];
    for (args, want) in cases {
        assert_eq!(stdout(args), *want, "{args:?}");
    }
}

#[test]
fn signature_from_inline_json_and_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("form.json");
    std::fs::write(&path, "[[0,1],[1,0]]").unwrap();
    let from_file = stdout(&["signature", path.to_str().unwrap()]);
    assert_eq!(from_file, stdout(&["signature", "[[0,1],[1,0]]"]));
    assert!(from_file.starts_with("signature: 0"));
}

#[test]
fn exit_codes() {
    assert_eq!(topokit(&["milnor", "2"]).status.code(), Some(2));
    assert_eq!(topokit(&["lpoly"]).status.code(), Some(2));
    assert_eq!(
        topokit(&["signature", "/nonexistent/form.json"])
            .status
            .code(),
        Some(2)
    );
    let verify = topokit(&["verify", "tables"]);
    let text = String::from_utf8(verify.stdout).unwrap();
    let failing = text.contains("MISMATCH");
    assert_eq!(verify.status.code(), Some(if failing { 1 } else { 0 }));
}

#[test]
fn json_rerenders_byte_identically() {
    for args in [
        vec!["milnor", "5"],
        vec!["lpoly", "4"],
        vec!["bordism", "6"],
        vec!["theta", "16", "--annotate"],
        vec!["verify", "tables"],
        vec!["jetdims", "2", "3"],
    ] {
        let plain = topokit(&args);
        let mut json_args = args.clone();
        json_args.insert(0, "--json");
        let json = topokit(&json_args);
        assert_eq!(plain.status.code(), json.status.code());
        let doc = String::from_utf8(json.stdout).unwrap();
        let value: serde_json::Value = serde_json::from_str(&doc).unwrap();
        assert!(value.is_object());
        assert_eq!(
            rerender(&doc).unwrap(),
            String::from_utf8(plain.stdout).unwrap().trim_end(),
            "{args:?}"
        );
    }
}
