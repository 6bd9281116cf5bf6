//! Driving the command-line interface in-process, as a script would.

use daha_leonard::cli;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("daha-leonard-cli-example");
    std::fs::create_dir_all(&dir)?;
    let h = dir.join("h.json");
    let h2 = dir.join("h2.json");
    std::fs::write(&h, r#"{"q": "2", "a": 3, "b": 5, "c": 7, "d": 2}"#)?;
    std::fs::write(&h2, r#"{"q": "2", "a": 3, "b": 5, "c": 7, "d": 0}"#)?;
    let out = dir.join("link.json");

    let code = cli::run([
        "daha-leonard".as_ref(),
        "link".as_ref(),
        h.as_os_str(),
        h2.as_os_str(),
        "--construct".as_ref(),
        "--out".as_ref(),
        out.as_os_str(),
    ]);
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out)?)?;
    println!("exit code {code}, failures {}", report["failures"]);
    println!("cases: {}", report["result"]["cases"].as_array().map_or(0, Vec::len));
    println!("module type: {}", report["result"]["construction"]["module"]["xtype"]);
    Ok(())
}
