// Scratch expression runner for development: evaluates an expression from
// argv and prints leading coefficients.

use qwb_core::dsl::{eval, parse_expr, MemoCache};
use qwb_core::Ring;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let expr_text = args.get(1).expect("usage: scratch EXPR [ORDER] [RING]");
    let order: i64 = args.get(2).map_or(20, |s| s.parse().unwrap());
    let ring = args.get(3).map_or(Ring::Int, |s| Ring::parse(s).unwrap());
    let expr = parse_expr(expr_text).unwrap();
    let s = eval(&expr, order, &ring, &MemoCache::new()).unwrap();
    println!("expr: {expr}");
    println!("valuation {}  precision {}", s.valuation(), s.precision());
    let lo = s.valuation().min(0);
    for e in lo..order.min(s.precision()) {
        let c = s.coeff(e).unwrap();
        println!("q^{e}\t{}", ring.format_elem(&c));
    }
}
