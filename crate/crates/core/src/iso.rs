//! Brute-force isomorphism test by backtracking over generator images.

use crate::group::FiniteGroup;
use crate::subgroup::Subgroup;

/// Returns an isomorphism `g -> h` as an element map, if one exists.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() || g.is_abelian() != h.is_abelian() {
        return None;
    }
    let mut og = g.element_orders();
    let mut oh = h.element_orders();
    let gens = Subgroup::whole(g).generators().to_vec();
    let gen_orders: Vec<usize> = gens.iter().map(|&s| og[s]).collect();
    og.sort_unstable();
    let by_order = oh.clone();
    oh.sort_unstable();
    if og != oh {
        return None;
    }
    let candidates: Vec<Vec<usize>> =
        gen_orders.iter().map(|&o| (0..h.order()).filter(|&y| by_order[y] == o).collect()).collect();
    let mut images = Vec::with_capacity(gens.len());
    search(g, h, &gens, &candidates, &mut images)
}

pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    find_isomorphism(g, h).is_some()
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if images.len() == gens.len() {
        return extend(g, h, gens, images);
    }
    for &y in &candidates[images.len()] {
        images.push(y);
        if let Some(map) = search(g, h, gens, candidates, images) {
            return Some(map);
        }
        images.pop();
    }
    None
}

/// Extends generator images to a map by BFS over right multiplication and
/// checks it is a well-defined bijective homomorphism.
fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[g.identity()] = h.identity();
    used[h.identity()] = true;
    let mut queue = vec![g.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = h.mul(map[x], t);
            if map[y] == usize::MAX {
                if used[fy] {
                    return None;
                }
                used[fy] = true;
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    if queue.len() != n {
        return None;
    }
    for a in 0..n {
        for b in 0..n {
            if map[g.mul(a, b)] != h.mul(map[a], map[b]) {
                return None;
            }
        }
    }
    Some(map)
}
