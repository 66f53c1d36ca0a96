// Running a check the way the command line does and rendering the report.

use lsalgebroid::cli::{self, Invocation};

pub fn run() -> lsalgebroid::Result<()> {
    let inv = Invocation {
        command: "nijenhuis".into(),
        document: "omega".into(),
        tensors: vec!["N".into()],
        depth: 3,
        machine: false,
        verbose: false,
    };
    let human = cli::execute(&inv);
    print!("{}", human.stdout);
    println!("exit code {}", human.code);
    assert_eq!(human.code, 1);

    let machine = cli::execute(&Invocation { machine: true, ..inv.clone() });
    let json: serde_json::Value = serde_json::from_str(&machine.stdout).expect("machine output is JSON");
    println!("machine verdict: {}", json["verdict"]);
    println!("first residual:  {}", json["checks"][0]["residuals"][0]);

    let unknown = cli::execute(&Invocation { command: "frobenius".into(), ..inv });
    print!("{}", unknown.stderr);
    assert_eq!(unknown.code, 2);
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
