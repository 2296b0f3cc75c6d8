#![no_main]

use libfuzzer_sys::fuzz_target;
use slicedeg::staircase::{staircase_from_alexander, torsion_coefficients, vs_lspace_formula};

fuzz_target!(|coeffs: Vec<i8>| {
    let coeffs: Vec<i64> = coeffs.into_iter().map(i64::from).collect();
    if let Ok(st) = staircase_from_alexander(&coeffs) {
        assert_eq!(st.alexander(), coeffs);
        let v = vs_lspace_formula(&st);
        for s in 0..=st.top() {
            assert_eq!(v.get(s) as i64, torsion_coefficients(&coeffs, s));
        }
    }
});
