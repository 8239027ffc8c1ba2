//! Loading an operad from a spec file: the cyclic group of order 3 as a
//! unary operad, checked, and then with one composition entry corrupted.

use fdb_operad::bialgebra::Bialgebra;
use fdb_operad::fdb::fdb_check;
use fdb_operad::operad::validate_operad;
use fdb_operad::table::OperadData;

const SPEC: &str = r#"{
  "mode": "identity",
  "colours": ["*"],
  "cap": 1,
  "ops": [
    {"id": "e", "in": ["*"], "out": "*"},
    {"id": "a", "in": ["*"], "out": "*"},
    {"id": "b", "in": ["*"], "out": "*"}
  ],
  "compose": [
    {"outer": "e", "inner": ["e"], "result": "e"},
    {"outer": "e", "inner": ["a"], "result": "a"},
    {"outer": "e", "inner": ["b"], "result": "b"},
    {"outer": "a", "inner": ["e"], "result": "a"},
    {"outer": "a", "inner": ["a"], "result": "b"},
    {"outer": "a", "inner": ["b"], "result": "e"},
    {"outer": "b", "inner": ["e"], "result": "b"},
    {"outer": "b", "inner": ["a"], "result": "e"},
    {"outer": "b", "inner": ["b"], "result": "a"}
  ]
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut d = OperadData::from_json_str(SPEC)?;
    println!("clean: {}", validate_operad(&d).is_clean());
    let b = Bialgebra::new(&d)?;
    let e = b.class("e").expect("unit").clone();
    println!("Δ(e) = {}", b.delta_gen(&e)?.value);
    println!("fdb verdict: {}", fdb_check(&b)?.verdict);
    drop(b);

    d.corrupt_compose("a", &["a"], "e");
    for v in validate_operad(&d).violations {
        println!("{:?}: {}", v.kind, v.detail);
    }
    match OperadData::from_json_str(&SPEC.replace("\"out\": \"*\"}\n  ]", "\"out\": \"?\"}\n  ]")) {
        Err(err) => println!("rejected: {err}"),
        Ok(_) => println!("unexpectedly accepted"),
    }
    Ok(())
}
