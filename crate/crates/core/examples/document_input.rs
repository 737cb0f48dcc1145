//! Reading a threefold from its JSON document and running the command-line
//! front end on it in-process.

use delsarte::cli;
use delsarte::{DelsarteThreefold, WeightSystem};

fn main() -> delsarte::Result<()> {
    let x = DelsarteThreefold::from_quasidiagonal(
        WeightSystem::calabi_yau([1, 1, 12, 28, 42]),
        [83, 84, 7, 3, 2],
    )?;
    let path = std::env::temp_dir().join("delsarte-example-84.json");
    std::fs::write(&path, x.to_json())?;
    println!("{}", x.to_json());

    let input = path.to_string_lossy().into_owned();
    for args in [
        vec!["delsarte", "reduce", "--input", &input],
        vec!["delsarte", "height", "--input", &input, "-p", "211"],
        vec!["delsarte", "spectrum", "--input", &input, "--format", "csv"],
    ] {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cli::run(args, &mut out, &mut err);
        print!("{}", String::from_utf8_lossy(&out));
        eprint!("{}", String::from_utf8_lossy(&err));
        println!("(exit {code})");
    }
    Ok(())
}
