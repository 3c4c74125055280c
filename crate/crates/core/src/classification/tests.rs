use super::*;
use crate::angle::ConeAngle;

fn pm(n: i64, d: i64) -> PiMultiple {
    PiMultiple::new(n, d)
}

/// Rows of the positive-curvature table, transcribed.
const GOLDEN_POSITIVE: &str = "\
#,Ext ∠'s,Int ∠'s,Tiling?,Tile,No. Tiles
1,,,Yes,S^2,1
2,,2π/p,No,,
3,,\"2π/p, 2π/q\",No,,
4,,\"π, π, 2π/p\",Yes,\"(π/2,π/2,π/p)\",4p
5,,\"π, 2π/3, 2π/3\",Yes,\"(π/2,π/3,π/3)\",24
6,,\"π, 2π/3, π/2\",Yes,\"(π/2,π/3,π/4)\",48
7,,\"π, 2π/3, 2π/5\",Yes,\"(π/2,π/3,π/5)\",120
8,π,,Yes,Hemisphere,2
9,α,,No,,
10,\"α, β\",,No,,
11,\"π/2, π/2, α\",,Yes,\"(π/2,π/2,α)\",4π/α
12,\"π/2, π/3, π/3\",,Yes,\"(π/2,π/3,π/3)\",24
13,\"π/2, π/3, π/4\",,Yes,\"(π/2,π/3,π/4)\",48
";

const GOLDEN_FLAT: &str = "\
#,Ext ∠'s,Int ∠'s,Tiling?,Tile
14,\"π/2, π/3, π/6\",,Yes,\"(π/2,π/3,π/6)\"
15,\"π/2, π/4, π/4\",,Yes,\"(π/2,π/4,π/4)\"
16,\"π/3, π/3, π/3\",,Yes,\"(π/3,π/3,π/3)\"
17,\"π/2, π/2, π/2, π/2\",,Yes,\"(π/2,π/2,π/2,π/2)\"
";

#[test]
fn positive_table_matches_golden() {
    let csv = cases_to_csv(&enumerate_positive_cases(), TableLayout::WithTileCount);
    assert_eq!(csv, GOLDEN_POSITIVE);
}

#[test]
fn flat_table_matches_golden() {
    let csv = cases_to_csv(&enumerate_flat_cases(), TableLayout::WithoutTileCount);
    assert_eq!(csv, GOLDEN_FLAT);
}

#[test]
fn angle_sum_examples() {
    use CurvatureClass::*;
    assert!(angle_sum_test([pm(1, 2); 3], ConstantPositive));
    assert!(angle_sum_test([pm(1, 2), pm(1, 4), pm(1, 4)], Flat));
    assert!(!angle_sum_test(
        [pm(1, 2), pm(1, 4), pm(1, 6)],
        ConstantPositive
    ));
    assert!(!angle_sum_test([pm(1, 2); 3], Flat));
    // exactly π is not positive
    assert!(!angle_sum_test([pm(1, 3); 3], ConstantPositive));
}

#[test]
fn averaging_examples() {
    assert_eq!(average_angle_argument(4).unwrap(), PiMultiple::PI);
    assert_eq!(average_angle_argument(5).unwrap(), pm(5, 6));
    assert_eq!(average_angle_argument(3).unwrap(), pm(3, 2));
    assert!(average_angle_argument(2).is_err());
    assert_eq!(cone_average_angle_argument(4).unwrap(), PiMultiple::PI);
    assert!(cone_average_angle_argument(1).is_err());
}

#[test]
fn case_six_record() {
    let c = case_by_id(6).unwrap();
    let orders: Vec<u32> = c.cone_angles().unwrap().iter().map(|c| c.order()).collect();
    assert_eq!(orders, vec![2, 3, 4]);
    let angles: Vec<PiMultiple> = c.cone_angles().unwrap().iter().map(|c| c.angle()).collect();
    assert_eq!(angles, vec![PiMultiple::PI, pm(2, 3), pm(1, 2)]);
    let t = c.tiling.unwrap();
    assert_eq!(t.tile_angles().unwrap(), vec![pm(1, 2), pm(1, 3), pm(1, 4)]);
    assert_eq!(t.tile_count, TileCount::Finite(48));
}

#[test]
fn case_two_is_a_teardrop_without_tiling() {
    let c = case_by_id(2).unwrap();
    assert_eq!(c.cones, vec![ConeSlot::Free(Param::P)]);
    assert!(c.tiling.is_none());
    assert_eq!(c.curvature_class, CurvatureClass::PositiveNonConstant);
}

#[test]
fn case_eleven_family_counts() {
    let c = case_by_id(11).unwrap();
    let t = c.tiling.as_ref().unwrap();
    assert_eq!(
        t.tile_count,
        TileCount::Linear {
            factor: 4,
            param: Param::Alpha
        }
    );
    let counts: Vec<u64> = c
        .instances()
        .iter()
        .map(|i| i.tiling.as_ref().unwrap().finite_count().unwrap())
        .collect();
    assert_eq!(counts, vec![8, 12, 16, 24]);
}

#[test]
fn case_four_family_instances() {
    let c = case_by_id(4).unwrap();
    let inst = c.instances();
    assert_eq!(inst.len(), 5);
    for (member, p) in inst.iter().zip(2..) {
        assert_eq!(member.tiling.as_ref().unwrap().finite_count(), Some(4 * p));
        assert_eq!(
            member.tiling.as_ref().unwrap().tile_angles().unwrap(),
            vec![pm(1, 2), pm(1, 2), pm(1, p as i64)]
        );
    }
}

#[test]
fn flat_examples() {
    let c = case_by_id(16).unwrap();
    assert_eq!(
        c.boundary_angles().unwrap(),
        vec![BoundaryAngle::pi_over(3).unwrap(); 3]
    );
    let c = case_by_id(17).unwrap();
    assert_eq!(
        c.boundary_angles().unwrap(),
        vec![BoundaryAngle::pi_over(2).unwrap(); 4]
    );
    assert!(enumerate_flat_cases()
        .iter()
        .all(|c| c.boundary_angles().unwrap() != vec![BoundaryAngle::pi_over(2).unwrap(); 3]));
}

#[test]
fn ids_are_one_through_seventeen() {
    let ids: Vec<u32> = enumerate_all_cases().iter().map(|c| c.case_id).collect();
    assert_eq!(ids, (1..=17).collect::<Vec<_>>());
    assert_eq!(enumerate_positive_cases().len(), 13);
    assert_eq!(enumerate_flat_cases().len(), 4);
}

#[test]
fn structural_invariants_hold() {
    for case in enumerate_all_cases() {
        case.validate().unwrap();
        for inst in case.instances() {
            inst.validate().unwrap();
        }
    }
}

#[test]
fn tiles_pass_their_angle_sum_test() {
    for case in enumerate_all_cases() {
        for inst in case.instances() {
            let Some(angles) = inst.tiling.as_ref().and_then(|t| t.tile_angles()) else {
                continue;
            };
            match inst.curvature_class {
                CurvatureClass::Flat => {
                    assert!(polygon_angle_sum_test(&angles, CurvatureClass::Flat))
                }
                _ => assert!(angle_sum_test(
                    [angles[0], angles[1], angles[2]],
                    inst.curvature_class
                )),
            }
        }
    }
}

#[test]
fn validate_rejects_bad_records() {
    let mut c = case_by_id(12).unwrap();
    c.cones.push(ConeSlot::Fixed(ConeAngle::new(2).unwrap()));
    assert!(c.validate().is_err());
    let mut c = case_by_id(17).unwrap();
    c.curvature_class = CurvatureClass::ConstantPositive;
    assert!(c.validate().is_err());
}

// Independent admissibility oracle in units of π/12, integer arithmetic only.
fn twelfths(a: BoundaryAngle) -> i64 {
    12 * a.angle().numer() / a.angle().denom()
}

fn boundary_admissible(corners: &[BoundaryAngle]) -> bool {
    let s: i64 = corners.iter().map(|&a| twelfths(a)).sum();
    match corners.len() {
        1 | 2 => true,
        3 => s >= 12,
        4 => s == 24,
        _ => false,
    }
}

fn cones_admissible(orders: &[u32]) -> bool {
    match orders {
        [] | [_] | [_, _] => true,
        [p, q, r] => {
            let (p, q, r) = (*p as u64, *q as u64, *r as u64);
            q * r + p * r + p * q > p * q * r
        }
        _ => false,
    }
}

#[test]
fn exhaustive_over_bounded_window() {
    let all = enumerate_all_cases();
    let covered = |b: &[BoundaryAngle], c: &[u32]| all.iter().any(|case| case.matches(b, c));
    let set = crate::angle::admissible_boundary_angles();
    for k in 1..=4 {
        for corners in multisets(&set, k) {
            assert_eq!(
                boundary_admissible(&corners),
                covered(&corners, &[]),
                "boundary {corners:?}"
            );
        }
    }
    assert!(covered(&[BoundaryAngle::NO_VERTEX], &[]));
    let orders: Vec<u32> = (2..=30).collect();
    for k in 0..=4 {
        for cones in multisets(&orders, k) {
            assert_eq!(
                cones_admissible(&cones),
                covered(&[], &cones),
                "cones {cones:?}"
            );
        }
    }
}
