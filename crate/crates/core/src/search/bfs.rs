use std::collections::VecDeque;

use crate::engine::{Cell, GameState};

/// Shortest 4-neighbor distances from a set of sources.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceField {
    width: i32,
    height: i32,
    dist: Vec<u32>,
}

const UNREACHABLE: u32 = u32::MAX;

impl DistanceField {
    /// Breadth-first search from `sources`. Sources get distance 0 even when
    /// `blocked`; the search never enters a blocked cell otherwise.
    pub fn compute(
        width: i32,
        height: i32,
        sources: &[Cell],
        blocked: impl Fn(Cell) -> bool,
    ) -> Self {
        let mut dist = vec![UNREACHABLE; (width * height).max(0) as usize];
        let idx = |c: Cell| (c.y * width + c.x) as usize;
        let mut queue = VecDeque::new();
        for &s in sources {
            if s.on_board(width, height) && dist[idx(s)] == UNREACHABLE {
                dist[idx(s)] = 0;
                queue.push_back(s);
            }
        }
        while let Some(c) = queue.pop_front() {
            let d = dist[idx(c)];
            for (_, n) in c.neighbors() {
                if n.on_board(width, height) && dist[idx(n)] == UNREACHABLE && !blocked(n) {
                    dist[idx(n)] = d + 1;
                    queue.push_back(n);
                }
            }
        }
        Self {
            width,
            height,
            dist,
        }
    }

    pub fn get(&self, cell: Cell) -> Option<u32> {
        if !cell.on_board(self.width, self.height) {
            return None;
        }
        match self.dist[(cell.y * self.width + cell.x) as usize] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    pub fn width(&self) -> i32 {
        self.width
    }

    pub fn height(&self) -> i32 {
        self.height
    }

    /// Number of reachable cells, sources included.
    pub fn reachable_count(&self) -> usize {
        self.dist.iter().filter(|&&d| d != UNREACHABLE).count()
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.dist
    }
}

/// Occupancy of both live snake bodies, row-major.
pub fn body_grid(state: &GameState) -> Vec<bool> {
    let mut grid = vec![false; state.config().cell_count()];
    for snake in state.snakes().iter().filter(|s| s.is_alive()) {
        for &c in snake.body() {
            if state.on_board(c) {
                grid[state.index_of(c)] = true;
            }
        }
    }
    grid
}

/// BFS over `state`'s board.
pub fn bfs_distances(
    state: &GameState,
    sources: &[Cell],
    blocked: impl Fn(Cell) -> bool,
) -> DistanceField {
    DistanceField::compute(state.width(), state.height(), sources, blocked)
}

/// Number of empty cells reachable from `from` around the current bodies.
pub fn flood_count(state: &GameState, from: Cell) -> usize {
    let grid = body_grid(state);
    let w = state.width();
    let field = bfs_distances(state, &[from], |c| grid[(c.y * w + c.x) as usize]);
    let start_blocked = state.on_board(from) && grid[state.index_of(from)];
    field.reachable_count() - usize::from(start_blocked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walls(cells: &[(i32, i32)]) -> impl Fn(Cell) -> bool + '_ {
        move |c| cells.contains(&(c.x, c.y))
    }

    #[test]
    fn open_grid_is_manhattan() {
        let f = DistanceField::compute(5, 5, &[Cell::new(0, 0)], |_| false);
        assert_eq!(f.get(Cell::new(4, 4)), Some(8));
        assert_eq!(f.get(Cell::new(0, 0)), Some(0));
        assert_eq!(f.get(Cell::new(5, 0)), None);
    }

    #[test]
    fn detour_around_wall() {
        let w = [(1, 0), (1, 1)];
        let f = DistanceField::compute(3, 3, &[Cell::new(0, 0)], walls(&w));
        assert_eq!(f.get(Cell::new(2, 0)), Some(6));
    }

    #[test]
    fn enclosed_source_reaches_nothing() {
        let w = [(1, 0), (0, 1)];
        let f = DistanceField::compute(4, 4, &[Cell::new(0, 0)], walls(&w));
        assert_eq!(f.reachable_count(), 1);
        assert_eq!(f.get(Cell::new(3, 3)), None);
    }
}
