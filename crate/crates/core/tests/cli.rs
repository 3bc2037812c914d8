use std::process::Command;

fn hsmcli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hsmcli"))
}

#[test]
fn volume_and_exit_codes() {
    let out = hsmcli().arg("volume").output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("volume: 81.1953"));

    let bad = hsmcli().args(["volume", "--base-edge", "0,2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!hsmcli().arg("no-such-command").output().unwrap().status.success());
}

#[test]
fn render_writes_three_svgs() {
    let dir = std::env::temp_dir().join(format!("hsmcli-render-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("layout.svg");
    let status = hsmcli().args(["render", "--out"]).arg(&out).status().unwrap();
    assert!(status.success());
    let layout = std::fs::read_to_string(&out).unwrap();
    assert_eq!(layout.matches("<polygon").count(), 13);
    for name in ["layout-type1.svg", "layout-type2.svg"] {
        assert!(std::fs::read_to_string(dir.join(name)).unwrap().contains("<svg"));
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn geodesics_table() {
    let out = hsmcli().arg("geodesics").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().filter(|l| l.contains(" 4.5848633391") || l.contains(" 7.0509886962")).count(), 2);
}
