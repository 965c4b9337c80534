use std::path::Path;

use mirrorbench::objects::{shifted_name, split_shift};
use mirrorbench::skeleton_file::{parse_skeleton, write_skeleton};
use mirrorbench_core::skeleton::{punctured_sphere_skeleton, Incidence, RibbonSkeleton};
use proptest::prelude::*;

/// Incidence order in a file carries no meaning beyond the start/end of loops.
fn canonical(s: &RibbonSkeleton) -> (String, Vec<Incidence>) {
    let mut inc = s.incidences().to_vec();
    inc.sort_by(|a, b| (&a.vertex, &a.edge, a.end, &a.left).cmp(&(&b.vertex, &b.edge, b.end, &b.left)));
    (format!("{:?}{:?}", s.vertices(), s.edges()), inc)
}

proptest! {
    #[test]
    fn skeleton_files_round_trip(n in 2usize..=8, pad in 0usize..3) {
        let s = punctured_sphere_skeleton(n).unwrap();
        let text = write_skeleton(&s);
        // blank lines and comments are ignored
        let noisy: String = text.lines().map(|l| format!("{l}\n{}", "\n# note\n".repeat(pad))).collect();
        prop_assert_eq!(canonical(&parse_skeleton(&text, Path::new("mem")).unwrap()), canonical(&s));
        prop_assert_eq!(canonical(&parse_skeleton(&noisy, Path::new("mem")).unwrap()), canonical(&s));
        prop_assert_eq!(write_skeleton(&parse_skeleton(&text, Path::new("mem")).unwrap()), text);
    }

    #[test]
    fn shifted_names_round_trip(kind in prop::sample::select(vec!["P", "k", "I"]), a in 1usize..10, s in -50i64..50) {
        let name = format!("{kind}{a}");
        let text = shifted_name(&name, s);
        prop_assert_eq!(split_shift(&text).unwrap(), (name.as_str(), s));
    }
}
