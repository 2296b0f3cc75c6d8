#![no_main]

use libfuzzer_sys::fuzz_target;
use slicedeg::lattice::HomologyClass;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((class, _)) = HomologyClass::parse(text) {
        assert!(class.coords().windows(2).all(|w| w[0] >= w[1]));
        assert!(class.coords().iter().all(|&a| a >= 1));
        let (again, changed) = HomologyClass::parse(&class.to_string()).expect("display reparses");
        assert_eq!(again, class);
        assert!(!changed);
    }
});
