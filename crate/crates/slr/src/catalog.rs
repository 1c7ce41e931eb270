//! Built-in square-filling curves.

use crate::geometry::{AffineMap, Point2};
use crate::rational::{rat, Rational};
use crate::selfsimilar::SelfSimilarCurveSpec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown curve `{0}` (available: hilbert, peano9, serpentine9)")]
pub struct UnknownCurve(pub String);

pub const CATALOG_NAMES: [&str; 3] = ["hilbert", "peano9", "serpentine9"];

/// Looks up a validated built-in curve spec by name.
pub fn catalog(name: &str) -> Result<SelfSimilarCurveSpec, UnknownCurve> {
    match name {
        "hilbert" => Ok(hilbert()),
        "peano9" => Ok(peano9()),
        "serpentine9" => Ok(serpentine9()),
        other => Err(UnknownCurve(other.to_string())),
    }
}

fn map(m: [[(i64, i64); 2]; 2], t: [(i64, i64); 2]) -> AffineMap {
    AffineMap::new(
        [
            [rat(m[0][0].0, m[0][0].1), rat(m[0][1].0, m[0][1].1)],
            [rat(m[1][0].0, m[1][0].1), rat(m[1][1].0, m[1][1].1)],
        ],
        [rat(t[0].0, t[0].1), rat(t[1].0, t[1].1)],
    )
}

fn point(x: (i64, i64), y: (i64, i64)) -> Point2 {
    Point2::new(rat(x.0, x.1), rat(y.0, y.1))
}

fn equal_weights(n: i64) -> Vec<Rational> {
    (0..n).map(|_| rat(1, n)).collect()
}

/// Classic four-cell Hilbert curve: entry (0,0), exit (1,0), scale 1/2.
fn hilbert() -> SelfSimilarCurveSpec {
    let z = (0, 1);
    let h = (1, 2);
    let nh = (-1, 2);
    let sub_maps = vec![
        map([[z, h], [h, z]], [z, z]),
        map([[h, z], [z, h]], [z, h]),
        map([[h, z], [z, h]], [h, h]),
        map([[z, nh], [nh, z]], [(1, 1), h]),
    ];
    SelfSimilarCurveSpec::new(sub_maps, equal_weights(4), point(z, z), point((1, 1), z))
        .expect("hilbert spec is valid")
}

/// Classic nine-cell Peano curve: entry (0,0), exit (1,1), scale 1/3,
/// column-serpentine cell order with coordinate reflections.
fn peano9() -> SelfSimilarCurveSpec {
    let z = (0, 1);
    let t = (1, 3);
    let nt = (-1, 3);
    let sub_maps = vec![
        map([[t, z], [z, t]], [z, z]),
        map([[nt, z], [z, t]], [t, t]),
        map([[t, z], [z, t]], [z, (2, 3)]),
        map([[t, z], [z, nt]], [t, (1, 1)]),
        map([[nt, z], [z, nt]], [(2, 3), (2, 3)]),
        map([[t, z], [z, nt]], [t, t]),
        map([[t, z], [z, t]], [(2, 3), z]),
        map([[nt, z], [z, t]], [(1, 1), t]),
        map([[t, z], [z, t]], [(2, 3), (2, 3)]),
    ];
    SelfSimilarCurveSpec::new(sub_maps, equal_weights(9), point(z, z), point((1, 1), (1, 1)))
        .expect("peano9 spec is valid")
}

/// Nine-cell snake: up the left column, across the top, then winding down
/// through the right block to exit at (1,0). Entry (0,0), scale 1/3.
fn serpentine9() -> SelfSimilarCurveSpec {
    let z = (0, 1);
    let t = (1, 3);
    let nt = (-1, 3);
    let sub_maps = vec![
        map([[z, t], [t, z]], [z, z]),
        map([[z, t], [t, z]], [z, t]),
        map([[t, z], [z, t]], [z, (2, 3)]),
        map([[t, z], [z, t]], [t, (2, 3)]),
        map([[t, z], [z, t]], [(2, 3), (2, 3)]),
        map([[nt, z], [z, nt]], [(1, 1), (2, 3)]),
        map([[z, nt], [nt, z]], [(2, 3), (2, 3)]),
        map([[z, nt], [nt, z]], [(2, 3), t]),
        map([[t, z], [z, t]], [(2, 3), z]),
    ];
    SelfSimilarCurveSpec::new(sub_maps, equal_weights(9), point(z, z), point((1, 1), z))
        .expect("serpentine9 spec is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn lookup_by_name() {
        for name in CATALOG_NAMES {
            let spec = catalog(name).unwrap();
            assert!(spec.coverage_verified(), "{name} coverage should verify");
        }
        assert!(catalog("nope").is_err());
    }

    #[test]
    fn hilbert_shape() {
        let h = catalog("hilbert").unwrap();
        assert_eq!(h.sub_maps().len(), 4);
        assert!(h.time_weights().iter().all(|w| *w == rat(1, 4)));
        assert_eq!(*h.entry(), point((0, 1), (0, 1)));
        assert_eq!(*h.exit(), point((1, 1), (0, 1)));
    }

    #[test]
    fn peano9_endpoints_on_opposite_corners() {
        let p = catalog("peano9").unwrap();
        assert_eq!(p.sub_maps().len(), 9);
        assert_eq!(*p.entry(), point((0, 1), (0, 1)));
        assert_eq!(*p.exit(), point((1, 1), (1, 1)));
    }

    #[test]
    fn hilbert_cell_corners_chain_up() {
        // Shared corners of consecutive cells, checked one by one.
        let h = catalog("hilbert").unwrap();
        let expected = [
            point((0, 1), (1, 2)),
            point((1, 2), (1, 2)),
            point((1, 1), (1, 2)),
        ];
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(h.sub_maps()[i].apply(h.exit()), *want);
            assert_eq!(h.sub_maps()[i + 1].apply(h.entry()), *want);
        }
    }

    #[test]
    fn all_catalog_maps_are_measure_preserving_similarities() {
        for name in CATALOG_NAMES {
            let spec = catalog(name).unwrap();
            for (map, w) in spec.sub_maps().iter().zip(spec.time_weights()) {
                let r_sq = map.similarity_ratio_sq().expect("catalog maps are similarities");
                assert_eq!(&r_sq, w, "{name}: r^2 must equal the time weight");
            }
        }
    }

    #[test]
    fn serpentine_exits_bottom_right() {
        let s = catalog("serpentine9").unwrap();
        assert_eq!(*s.exit(), point((1, 1), (0, 1)));
        let v = s.vertices(1).unwrap();
        assert_eq!(v.len(), 10);
        assert_eq!(v.samples()[9].t, rat_int(1));
    }
}
