//! The normal-order reference reducer: the independent oracle the net
//! normalizer is checked against.
//!
//! ```sh
//! cargo run --example reference_reducer
//! ```

use lamopt::term::{normal_order_nf, parse_term};

fn main() {
    let cases = [
        ("(\\x.x) y", 10),
        ("(\\f.\\x.f (f x)) (\\f.\\x.f (f x))", 100),
        // the famous corner case: a diverging argument that is never needed
        ("(\\f.\\x.(\\a.\\b.a) x f) ((\\x.x x) (\\x.x x))", 10),
    ];
    for (src, fuel) in cases {
        let t = parse_term(src).unwrap();
        match normal_order_nf(&t, fuel) {
            Ok(nf) => println!("{src}  -->  {nf}   (fuel {fuel})"),
            Err(e) => println!("{src}  -->  {e}"),
        }
    }

    // divergence is reported deterministically through the fuel bound
    let omega = parse_term("(\\x.x x) (\\x.x x)").unwrap();
    println!("Ω with fuel 1000: {:?}", normal_order_nf(&omega, 1000).err());
}
