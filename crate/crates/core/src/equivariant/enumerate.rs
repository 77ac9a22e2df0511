use super::{all_coords, coords_commute, Coord, CoordSubspace};

fn compatible(x: Coord, y: Coord) -> bool {
    match (x, y) {
        (Coord::X(a, b), Coord::Y(c, d)) | (Coord::Y(c, d), Coord::X(a, b)) => coords_commute((a, b), (c, d)),
        _ => true,
    }
}

/// Every commuting coordinate subspace of dimension at most `size_bound`,
/// sorted. Backtracks over coordinates, keeping only pairwise-commuting sets.
pub fn enumerate_comm_subspaces(n: usize, size_bound: usize) -> Vec<CoordSubspace> {
    let coords = all_coords(n);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend(n, &coords, 0, size_bound, &mut chosen, &mut out);
    out.sort();
    out
}

fn extend(
    n: usize,
    coords: &[Coord],
    from: usize,
    bound: usize,
    chosen: &mut Vec<Coord>,
    out: &mut Vec<CoordSubspace>,
) {
    out.push(CoordSubspace::from_coords(n, chosen.iter().copied()).expect("coordinates in range"));
    if chosen.len() == bound {
        return;
    }
    for idx in from..coords.len() {
        let c = coords[idx];
        if chosen.iter().all(|&d| compatible(c, d)) {
            chosen.push(c);
            extend(n, coords, idx + 1, bound, chosen, out);
            chosen.pop();
        }
    }
}

/// Exhaustive filter over all `2^{2n²}` coordinate subsets; small `n` only.
pub fn enumerate_comm_subspaces_brute(n: usize, size_bound: usize) -> Vec<CoordSubspace> {
    let coords = all_coords(n);
    assert!(coords.len() < 24, "brute force is for n <= 3");
    let mut out: Vec<CoordSubspace> = (0u32..(1 << coords.len()))
        .filter(|m| m.count_ones() as usize <= size_bound)
        .map(|m| {
            let picked = coords.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, c)| *c);
            CoordSubspace::from_coords(n, picked).expect("coordinates in range")
        })
        .filter(CoordSubspace::is_commuting)
        .collect();
    out.sort();
    out
}
