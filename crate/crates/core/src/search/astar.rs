use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::engine::{Cell, GameState};

use super::bfs::body_grid;

/// Shortest 4-neighbor path from `from` to `to` avoiding both current bodies
/// (the start cell excepted). Returns the cells from `from` to `to`
/// inclusive, or `None` when `to` is blocked or cut off.
pub fn astar_path(state: &GameState, from: Cell, to: Cell) -> Option<Vec<Cell>> {
    let grid = body_grid(state);
    astar_on_grid(state.width(), state.height(), from, to, |c| {
        grid[(c.y * state.width() + c.x) as usize]
    })
}

/// A* with the Manhattan heuristic over an arbitrary blocked predicate.
pub fn astar_on_grid(
    width: i32,
    height: i32,
    from: Cell,
    to: Cell,
    blocked: impl Fn(Cell) -> bool,
) -> Option<Vec<Cell>> {
    if !from.on_board(width, height) || !to.on_board(width, height) {
        return None;
    }
    if from == to {
        return Some(vec![from]);
    }
    if blocked(to) {
        return None;
    }
    let n = (width * height) as usize;
    let idx = |c: Cell| (c.y * width + c.x) as usize;
    let mut g = vec![u32::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut closed = vec![false; n];
    // (f, h, insertion order) keeps pops deterministic
    let mut open = BinaryHeap::new();
    let mut order = 0u64;
    g[idx(from)] = 0;
    open.push(Reverse((from.manhattan(to), from.manhattan(to), order, from)));

    while let Some(Reverse((_, _, _, cell))) = open.pop() {
        let ci = idx(cell);
        if closed[ci] {
            continue;
        }
        if cell == to {
            let mut path = vec![to];
            let mut at = ci;
            while parent[at] != usize::MAX {
                at = parent[at];
                path.push(Cell::new((at % width as usize) as i32, (at / width as usize) as i32));
            }
            path.reverse();
            return Some(path);
        }
        closed[ci] = true;
        for (_, nb) in cell.neighbors() {
            if !nb.on_board(width, height) || blocked(nb) {
                continue;
            }
            let ni = idx(nb);
            let cand = g[ci] + 1;
            if cand < g[ni] {
                g[ni] = cand;
                parent[ni] = ci;
                order += 1;
                let h = nb.manhattan(to);
                open.push(Reverse((cand + h, h, order, nb)));
            }
        }
    }
    None
}
