use medlat_core::bn;
use medlat_core::freedist::{
    free_algebra, free_enumerate, free_imp, free_join, free_leq, free_meet, iso_to_bn, FreeElement,
};
use medlat_core::poset::{open_sets, powerset_poset};

/// Image of a normal form as a set of nonempty subsets (bitmask over `1..2^n`),
/// computed from scratch: a product `∏A` is sent to the subsets not containing
/// `A`, a join of products to the intersection of the images.
fn image(x: &FreeElement) -> Vec<bool> {
    let n = x.n();
    (1u32..1 << n).map(|s| x.family().iter().all(|&a| a & s != a)).collect()
}

#[test]
fn sizes_agree_with_open_set_count() {
    let expect = [2usize, 5, 19, 167];
    for n in 1..=4 {
        let free = free_enumerate(n).unwrap().len();
        let opens = open_sets(&powerset_poset(n).unwrap()).unwrap().len();
        assert_eq!(free, opens, "n = {n}");
        assert_eq!(free, expect[n - 1]);
    }
    assert_eq!(free_enumerate(5).unwrap().len(), 7580);
}

#[test]
fn isomorphism_verified() {
    for n in 1..=4 {
        let iso = iso_to_bn(n).unwrap();
        assert!(iso.is_verified(), "n = {n}");
    }
}

#[test]
fn order_matches_reverse_inclusion_of_images() {
    for n in 1..=3 {
        let els = free_enumerate(n).unwrap();
        let imgs: Vec<_> = els.iter().map(image).collect();
        for (i, a) in els.iter().enumerate() {
            for (j, b) in els.iter().enumerate() {
                let sup = imgs[i].iter().zip(&imgs[j]).all(|(x, y)| !*y || *x);
                assert_eq!(free_leq(a, b).unwrap(), sup, "{a} <= {b}");
                let join: Vec<bool> = imgs[i].iter().zip(&imgs[j]).map(|(x, y)| *x && *y).collect();
                let meet: Vec<bool> = imgs[i].iter().zip(&imgs[j]).map(|(x, y)| *x || *y).collect();
                assert_eq!(image(&free_join(a, b).unwrap()), join);
                assert_eq!(image(&free_meet(a, b).unwrap()), meet);
            }
        }
    }
}

#[test]
fn arrow_equals_min_scan_through_iso() {
    for n in 1..=4 {
        let fa = free_algebra(n).unwrap();
        let iso = iso_to_bn(n).unwrap();
        let b = bn(n).unwrap();
        for (i, x) in fa.elements.iter().enumerate() {
            for (j, y) in fa.elements.iter().enumerate() {
                let k = fa.index_of(&free_imp(x, y).unwrap()).unwrap();
                let scan = b.imp_by_min_scan(iso.map.apply(i), iso.map.apply(j)).unwrap();
                assert_eq!(iso.map.apply(k), scan, "n={n}: {x} -> {y}");
            }
        }
    }
}
