//! Temporary diagnostic dump; removed before finishing.

use constraint_core::text::render_system;
use region_templates::derive::all_derivations;

#[test]
fn dump() {
    for d in all_derivations().expect("derivations run") {
        println!("=== {} derived ({} rows) ===", d.name, d.derived.len());
        println!("{}", render_system(&d.derived));
        println!("=== {} expected ({} rows) ===", d.name, d.expected.len());
        println!("{}", render_system(&d.expected));
    }
}
