//! Parse a circuit document and round-trip it through JSON.

use concordant::circuit::load_circuit;

const DOC: &str = r#"{
  "dims": [2, 2],
  "initial": {
    "probs": [["1/3", "2/3"], ["1", "0"]],
    "basis": [
      [[["1","0"],["0","0"]], [["0","0"],["0","1"]]],
      [[["1","0"],["0","0"]], [["0","0"],["0","1"]]]
    ]
  },
  "gates": [
    {"support": [0], "radicand": 2, "matrix": [["1","1"],["1","-1"]]},
    {"support": [0, 1], "radicand": 1,
     "matrix": [["1","0","0","0"],["0","1","0","0"],["0","0","0","1"],["0","0","1","0"]]}
  ]
}"#;

fn main() {
    let c = load_circuit(DOC).expect("valid circuit");
    println!("register {:?}", c.register().dims());
    for (t, g) in c.gates().iter().enumerate() {
        println!("gate {} on {:?}, matrix / sqrt({})", t + 1, g.support(), g.radicand());
    }
    let again = load_circuit(&c.to_json()).unwrap();
    assert_eq!(again, c);
    println!("round trip ok");
}
