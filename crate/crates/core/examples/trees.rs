//! Wall-orbit tree analysis for one of the built-in systems.
//!
//! cargo run --release --example trees -- 237 24 3

use coxtrees::coxeter::library;
use coxtrees::wall_trees::{analyze, TreesConfig};
use coxtrees::Order;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let which = args.first().map_or("237", String::as_str);
    let radius = args.get(1).map_or(12, |s| s.parse().expect("radius"));
    let prime = args.get(2).map(|s| s.parse().expect("prime"));
    let sys = match which {
        "pentagon" => library::right_angled_polygon(5),
        "237" => library::triangle(2, 3, 7),
        "inf" => library::dihedral(Order::Infinite),
        "affine" => library::affine_a2(),
        other => {
            eprintln!("unknown system {other}; expected pentagon, 237, inf or affine");
            std::process::exit(2);
        }
    };
    let cfg = TreesConfig {
        radius,
        prime,
        ..TreesConfig::default()
    };
    let start = std::time::Instant::now();
    match analyze(&sys, &cfg) {
        Ok(a) => println!("{}", serde_json::to_string_pretty(&a.report).unwrap()),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(3);
        }
    }
    eprintln!("elapsed {:?}", start.elapsed());
}
