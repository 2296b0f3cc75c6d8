#![no_main]

use libfuzzer_sys::fuzz_target;
use slicedeg::knot_model::{parse_knot_db, serialize_knot_db};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(db) = parse_knot_db(text) {
        // anything accepted must survive a round trip
        let again = parse_knot_db(&serialize_knot_db(&db)).expect("serialized database reparses");
        assert_eq!(again, db);
    }
});
