use zeroprofile_core::families;
use zeroprofile_core::roots::{isolate_real_roots, IsolateOptions};

fn he_sign(n: usize, x: f64) -> f64 {
    let (mut a, mut b) = (1.0f64, x);
    for k in 1..n {
        let c = x * b - k as f64 * a;
        a = b; b = c;
        let m = a.abs().max(b.abs());
        if m > 1e200 { a /= 1e200; b /= 1e200; }
    }
    b.signum()
}

fn main() {
    let n = 200usize;
    let mut oracle = Vec::new();
    let bound = (4.0 * n as f64 + 2.0).sqrt();
    let m = 400_000;
    let mut prev = he_sign(n, 0.001);
    let mut prevx = 0.001;
    for i in 1..=m {
        let x = 0.001 + bound * i as f64 / m as f64;
        let s = he_sign(n, x);
        if s != prev {
            oracle.push(0.5 * (prevx + x));
        }
        prev = s; prevx = x;
    }
    eprintln!("oracle positive roots: {}", oracle.len());
    for r in &oracle { eprintln!("OR {:.9e}", r); }
    let p = families::hermite_poly(n);
    let _ = isolate_real_roots(&p, IsolateOptions::default());
}
