//! Builds a run configuration in code, runs it and writes the report and
//! CSV series, as the command-line front end does.

use gammaspace::cli::{export_csv, run, Command, RunConfig};

fn main() -> gammaspace::Result<()> {
    let cfg = RunConfig::from_json(
        r#"{
            "command": "dual-weight",
            "p": 2,
            "weight": {"b": "inf", "pieces": [{"lo": 0, "hi": "inf", "coeff": 1, "exp": 0}]},
            "grid": {"decades_lo": -2, "decades_hi": 2, "points_per_decade": 2}
        }"#,
    )?;
    let report = run(&cfg)?;
    println!("{}", report.to_json_untimed());
    let dir = std::env::temp_dir();
    export_csv(&report, &dir.join("gammaspace_psi.csv"))?;
    let indices = run(&RunConfig { command: Some(Command::Indices), ..cfg })?;
    export_csv(&indices, &dir.join("gammaspace_h.csv"))?;
    println!("i = {}, I = {}", indices.results["i_lower"], indices.results["I_upper"]);
    Ok(())
}
