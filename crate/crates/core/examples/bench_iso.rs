use std::time::Instant;
use zeroprofile_core::families;
use zeroprofile_core::roots::{isolate_real_roots, IsolateOptions};
use zeroprofile_core::exact::rat_int;

fn main() {
    for n in [200usize, 400] {
        for (name, p) in [
            ("touchard", families::touchard_poly(n)),
            ("eulerian", families::eulerian_poly(n)),
            ("hermite", families::hermite_poly(n)),
            ("legendre", families::jacobi_poly(n, &rat_int(0), &rat_int(0)).unwrap()),
        ] {
            let t0 = Instant::now();
            match isolate_real_roots(&p, IsolateOptions::default()) {
                Ok(r) => println!("{name} n={n}: {} roots in {:?}", r.len(), t0.elapsed()),
                Err(e) => println!("{name} n={n}: ERROR {e} in {:?}", t0.elapsed()),
            }
        }
    }
}
