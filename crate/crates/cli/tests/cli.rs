use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn dtnsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtnsim"))
        .args(args)
        .env_remove("DTNSIM_OUT")
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// The bundled scenario cut to one simulated hour, with absolute map paths.
fn short_scenario(dir: &Path, extra: &str) -> PathBuf {
    let text = std::fs::read_to_string(root().join("scenarios/nepal.scen")).unwrap();
    let maps = root().join("maps");
    let text = text
        .replace("end_time = 43200", "end_time = 1800")
        .replace("map_dir = ../maps", &format!("map_dir = {}", maps.display()));
    let path = dir.join("short.scen");
    std::fs::write(&path, format!("{text}\n{extra}")).unwrap();
    path
}

#[test]
fn validate_accepts_bundled_scenario() {
    let o = dtnsim(&["validate", "-s", root().join("scenarios/nepal.scen").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(String::from_utf8_lossy(&o.stdout).contains("177 hosts"));
}

#[test]
fn validate_lists_violations_and_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.scen");
    std::fs::write(
        &bad,
        "end_time = 100\nworld = 10, 10\ninterface.bt.speed = 2M\ninterface.bt.range = 10\n\
         Group1.name = A\nGroup1.interfaces = wifi\nGroup1.speed = 2, 1\n",
    )
    .unwrap();
    let o = dtnsim(&["validate", "-s", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("wifi"), "{err}");
    assert!(err.contains("speed"), "{err}");
}

#[test]
fn unknown_flag_prints_usage_and_exits_1() {
    let o = dtnsim(&["run", "--bogus"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Usage"), "{}", stderr(&o));
    let o = dtnsim(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn run_writes_reports_and_env_overrides_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let scen = short_scenario(dir.path(), "");
    let flag_out = dir.path().join("flag");
    let env_out = dir.path().join("env");
    let o = Command::new(env!("CARGO_BIN_EXE_dtnsim"))
        .args([
            "run",
            "-s",
            scen.to_str().unwrap(),
            "--seed",
            "3",
            "--out",
            flag_out.to_str().unwrap(),
        ])
        .args(["--contacts", "--events"])
        .env("DTNSIM_OUT", &env_out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(!flag_out.exists());
    for f in ["summary.csv", "timeline.csv", "hops.csv", "contacts.csv", "events.csv"] {
        assert!(env_out.join(f).is_file(), "{f} missing");
    }
    let summary = std::fs::read_to_string(env_out.join("summary.csv")).unwrap();
    let row = summary.lines().nth(1).unwrap();
    assert!(row.starts_with("nepal,snw,50000000,3,"), "{row}");
    let contacts = std::fs::read_to_string(env_out.join("contacts.csv")).unwrap();
    assert!(contacts.starts_with("time,event,node_a,node_b,interface\n"));
    assert!(contacts
        .lines()
        .skip(1)
        .all(|l| l.contains(",up,") || l.contains(",down,")));
    let events = std::fs::read_to_string(env_out.join("events.csv")).unwrap();
    assert!(events.starts_with("time,id,source,destination,size\n"));
}

#[test]
fn sweep_writes_one_row_per_value() {
    let dir = tempfile::tempdir().unwrap();
    let scen = short_scenario(dir.path(), "");
    let out = dir.path().join("sweep");
    let o = dtnsim(&[
        "sweep",
        "-s",
        scen.to_str().unwrap(),
        "--axis",
        "Group4.bufferSize",
        "--values",
        "10M,50M,100M",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let summary = std::fs::read_to_string(out.join("summary.csv")).unwrap();
    let buffers: Vec<&str> = summary.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(buffers, ["10000000", "50000000", "100000000"]);
}

#[test]
fn sweep_rejects_unknown_axis() {
    let dir = tempfile::tempdir().unwrap();
    let scen = short_scenario(dir.path(), "");
    let o = dtnsim(&[
        "sweep",
        "-s",
        scen.to_str().unwrap(),
        "--axis",
        "Group99.speed",
        "--values",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unreadable_map_is_a_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("broken.wkt"), "LINESTRING (0 0, 1").unwrap();
    let scen = dir.path().join("broken.scen");
    std::fs::write(
        &scen,
        "end_time = 10\nworld = 100, 100\ninterface.bt.speed = 2M\ninterface.bt.range = 10\n\
         Group1.name = A\nGroup1.interfaces = bt\nGroup1.okMaps = broken.wkt\n",
    )
    .unwrap();
    let o = dtnsim(&[
        "run",
        "-s",
        scen.to_str().unwrap(),
        "--out",
        dir.path().join("o").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn genmap_reproduces_bundled_maps() {
    let dir = tempfile::tempdir().unwrap();
    let o = dtnsim(&[
        "genmap",
        "--world",
        "4500x3400",
        "--seed",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for f in ["roads.wkt", "pedestrian_paths.wkt", "shops.wkt"] {
        let fresh = std::fs::read(dir.path().join(f)).unwrap();
        let bundled = std::fs::read(root().join("maps").join(f)).unwrap();
        assert!(fresh == bundled, "{f} differs from the bundled copy");
    }
    let o = dtnsim(&["genmap", "--world", "0x3400", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn plot_emits_data_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let timeline = dir.path().join("timeline.csv");
    std::fs::write(
        &timeline,
        "time,created,delivered,delivery_rate\n0.0000,0,0,0.0000\n3600.0000,40,30,0.7500\n7200.0000,80,70,0.8750\n",
    )
    .unwrap();
    let svg = dir.path().join("fig.svg");
    let o = dtnsim(&[
        "plot",
        "--timeline",
        timeline.to_str().unwrap(),
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dat = std::fs::read_to_string(dir.path().join("fig.dat")).unwrap();
    assert_eq!(dat.lines().nth(2), Some("1.0000 0.7500"));
    assert!(std::fs::read_to_string(svg).unwrap().contains("<polyline"));
}
