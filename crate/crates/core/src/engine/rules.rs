use super::*;

impl GameState {
    /// Starts a match with two point-symmetric snakes and one apple.
    ///
    /// White occupies a vertical column two cells in from the west edge (one
    /// cell on 5-wide boards), head at the top, heading east. Blue is the same
    /// body rotated 180 degrees about the board center.
    pub fn new_match(config: &MatchConfig, seed: u64) -> Result<Self, EngineError> {
        config.validate_limits()?;
        let (w, h, len) = (config.width, config.height, config.initial_length);
        if w < 5 || h < 5 {
            return Err(EngineError::InvalidConfig(format!(
                "board {w}x{h} is smaller than 5x5"
            )));
        }
        if len > h as usize {
            return Err(EngineError::InvalidConfig(format!(
                "initial length {len} does not fit a {h}-row board"
            )));
        }
        if 2 * len >= config.cell_count() {
            return Err(EngineError::InvalidConfig(
                "no room for an apple beside both snakes".into(),
            ));
        }
        let x = (w / 2 - 1).min(2);
        let y0 = (h - len as i32) / 2;
        let white: Vec<Cell> = (0..len as i32).map(|i| Cell::new(x, y0 + i)).collect();
        let blue: Vec<Cell> = white
            .iter()
            .map(|c| Cell::new(w - 1 - c.x, h - 1 - c.y))
            .collect();
        let mut state = GameState::from_parts(
            *config,
            (white, Direction::East),
            (blue, Direction::West),
            None,
            seed,
        )?;
        state.place_apple()?;
        Ok(state)
    }

    /// Moves both snakes simultaneously, advancing the clock by one nominal step.
    pub fn step(&self, white: Direction, blue: Direction) -> Result<StepOutcome, EngineError> {
        self.step_elapsed(white, blue, self.config.nominal_step())
    }

    /// Like [`GameState::step`] with an explicit elapsed time in clock units.
    pub fn step_elapsed(
        &self,
        white: Direction,
        blue: Direction,
        elapsed: u64,
    ) -> Result<StepOutcome, EngineError> {
        let mut next = self.clone();
        let terminal = next.advance([white, blue], elapsed)?;
        Ok(StepOutcome { next, terminal })
    }

    /// In-place transition. Returns the outcome if this step ends the match.
    ///
    /// Order: respawn a missing apple; compute new heads; resolve losses
    /// against post-move bodies (a tail vacates unless its snake eats);
    /// grow the surviving eater; advance the clock; age the apple.
    pub fn advance(
        &mut self,
        moves: [Direction; 2],
        elapsed: u64,
    ) -> Result<Option<MatchOutcome>, EngineError> {
        if !self.is_running() {
            return Err(EngineError::NotRunning);
        }
        if self.apple.position.is_none() {
            // A full board leaves the apple absent until a later step.
            let _ = self.place_apple();
        }

        let (w, h) = (self.config.width, self.config.height);
        let old_heads = [self.snakes[0].head(), self.snakes[1].head()];
        let heads = [old_heads[0].step(moves[0]), old_heads[1].step(moves[1])];
        let on_board = [heads[0].on_board(w, h), heads[1].on_board(w, h)];
        let eats = [0, 1].map(|i| on_board[i] && self.apple.position == Some(heads[i]));

        let same_cell = heads[0] == heads[1];
        let swapped = heads[0] == old_heads[1] && heads[1] == old_heads[0];
        let head_to_head = on_board[0] && on_board[1] && (same_cell || swapped);

        let mut cause: [Option<Cause>; 2] = [None, None];
        for i in 0..2 {
            let j = 1 - i;
            cause[i] = if !on_board[i] {
                Some(Cause::OffBoard)
            } else if self.snakes[i].occupies_after_move(heads[i], eats[i]) {
                Some(Cause::SelfCollision)
            } else if !swapped && self.snakes[j].occupies_after_move(heads[i], eats[j]) {
                // In a swap the only contact is head against head.
                Some(Cause::OpponentCollision)
            } else {
                None
            };
        }
        let independent = [cause[0].is_some(), cause[1].is_some()];
        let mut lost = independent;
        if head_to_head {
            let (l0, l1) = (self.snakes[0].len(), self.snakes[1].len());
            lost[0] |= l0 <= l1;
            lost[1] |= l1 <= l0;
        }

        for i in 0..2 {
            if lost[i] {
                self.snakes[i].alive = false;
                continue;
            }
            let snake = &mut self.snakes[i];
            snake.body.push_front(heads[i]);
            snake.heading = moves[i];
            if eats[i] {
                self.scores[i] += 1;
                self.apple = AppleState { position: None, age: 0 };
            } else {
                snake.body.pop_back();
            }
        }

        let limit = self.config.match_limit;
        self.clock = (self.clock + elapsed.max(1)).min(limit);

        let outcome = match lost {
            [true, true] => {
                let cause = if head_to_head && !independent[0] && !independent[1] {
                    Cause::HeadToHead
                } else {
                    Cause::SimultaneousLoss
                };
                Some((MatchResult::Draw, cause))
            }
            [true, false] => Some((
                MatchResult::Blue,
                cause[0].unwrap_or(Cause::HeadToHead),
            )),
            [false, true] => Some((
                MatchResult::White,
                cause[1].unwrap_or(Cause::HeadToHead),
            )),
            [false, false] if self.clock >= limit => {
                let result = match self.scores[0].cmp(&self.scores[1]) {
                    std::cmp::Ordering::Greater => MatchResult::White,
                    std::cmp::Ordering::Less => MatchResult::Blue,
                    std::cmp::Ordering::Equal => MatchResult::Draw,
                };
                Some((result, Cause::TimeLimit))
            }
            [false, false] => None,
        };

        if let Some((result, cause)) = outcome {
            let o = MatchOutcome {
                result,
                cause,
                final_scores: self.scores,
            };
            self.phase = Phase::Finished(o);
            return Ok(Some(o));
        }
        self.age_apple(elapsed.max(1));
        Ok(None)
    }

    /// Places the apple uniformly at random on a cell free of both snakes.
    pub fn spawn_apple(&self) -> Result<GameState, EngineError> {
        let mut next = self.clone();
        next.place_apple()?;
        Ok(next)
    }

    pub(crate) fn place_apple(&mut self) -> Result<(), EngineError> {
        let free: Vec<Cell> = (0..self.config.cell_count())
            .map(|i| self.cell_at(i))
            .filter(|&c| !self.occupied(c))
            .collect();
        if free.is_empty() {
            self.apple = AppleState { position: None, age: 0 };
            return Err(EngineError::BoardFull);
        }
        let pick = free[self.rng.below(free.len())];
        self.apple = AppleState {
            position: Some(pick),
            age: 0,
        };
        Ok(())
    }

    /// Ages the apple by one nominal step, relocating it once it reaches its TTL.
    pub fn tick_apple(&self) -> GameState {
        let mut next = self.clone();
        next.age_apple(self.config.nominal_step());
        next
    }

    pub(crate) fn age_apple(&mut self, elapsed: u64) {
        if self.apple.position.is_none() {
            return;
        }
        self.apple.age += elapsed;
        if let Some(ttl) = self.config.apple_ttl {
            if self.apple.age >= ttl {
                self.apple.position = None;
                let _ = self.place_apple();
            }
        }
    }

    /// Hypothetical position where only `side` moves and the opponent stands
    /// still. `None` if the move is not a survival move. The clock does not
    /// advance; an eaten apple becomes absent.
    pub fn solo_step(&self, side: Side, dir: Direction) -> Option<GameState> {
        if !self.legal_survival_moves(side).contains(dir) {
            return None;
        }
        let mut next = self.clone();
        let head = next.snakes[side.index()].head().step(dir);
        let snake = &mut next.snakes[side.index()];
        snake.body.push_front(head);
        snake.heading = dir;
        if next.apple.position == Some(head) {
            next.scores[side.index()] += 1;
            next.apple = AppleState { position: None, age: 0 };
        } else {
            snake.body.pop_back();
        }
        Some(next)
    }

    /// Directions whose new head stays on the board and outside both bodies,
    /// with this snake's tail vacating (unless it eats) and the opponent
    /// standing still.
    pub fn legal_survival_moves(&self, side: Side) -> DirSet {
        let me = self.snake(side);
        let them = self.snake(side.other());
        let head = me.head();
        Direction::ALL
            .into_iter()
            .filter(|&d| {
                let c = head.step(d);
                if !self.on_board(c) {
                    return false;
                }
                let grows = self.apple.position == Some(c);
                !me.occupies_after_move(c, grows) && !(them.alive && them.contains(c))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(v: &[(i32, i32)]) -> Vec<Cell> {
        v.iter().map(|&(x, y)| Cell::new(x, y)).collect()
    }

    fn logical(w: i32, h: i32) -> MatchConfig {
        MatchConfig::logical().with_board(w, h).with_length(1)
    }

    #[test]
    fn default_start_is_symmetric() {
        let s = GameState::new_match(&MatchConfig::logical(), 42).unwrap();
        let white = s.snake(Side::White);
        assert_eq!(
            white.body().iter().copied().collect::<Vec<_>>(),
            cells(&[(2, 6), (2, 7), (2, 8)])
        );
        assert_eq!(white.heading(), Direction::East);
        let blue = s.snake(Side::Blue);
        assert_eq!(
            blue.body().iter().copied().collect::<Vec<_>>(),
            cells(&[(12, 8), (12, 7), (12, 6)])
        );
        assert_eq!(blue.heading(), Direction::West);
        let apple = s.apple().position.unwrap();
        assert!(!s.occupied(apple));
        assert_eq!(s.scores(), [0, 0]);
        assert_eq!(s.clock(), 0);
        assert!(s.is_running());
    }

    #[test]
    fn too_long_for_board_is_rejected() {
        let c = MatchConfig::logical().with_board(5, 5).with_length(12);
        assert!(matches!(
            GameState::new_match(&c, 1),
            Err(EngineError::InvalidConfig(_))
        ));
        let c = MatchConfig::logical().with_board(4, 4);
        assert!(GameState::new_match(&c, 1).is_err());
    }

    #[test]
    fn new_match_is_deterministic() {
        let c = MatchConfig::logical();
        assert_eq!(
            GameState::new_match(&c, 9).unwrap(),
            GameState::new_match(&c, 9).unwrap()
        );
    }

    #[test]
    fn tail_chasing_is_legal() {
        // 2x2 loop: head moves into the cell the tail vacates.
        let s = GameState::from_parts(
            logical(5, 5),
            (cells(&[(0, 0), (1, 0), (1, 1), (0, 1)]), Direction::West),
            (cells(&[(4, 4)]), Direction::West),
            Some(Cell::new(3, 3)),
            1,
        )
        .unwrap();
        let out = s.step(Direction::South, Direction::North).unwrap();
        assert!(out.terminal.is_none());
        assert!(s.legal_survival_moves(Side::White).contains(Direction::South));
    }

    #[test]
    fn eating_keeps_the_tail() {
        let s = GameState::from_parts(
            logical(5, 5),
            (cells(&[(1, 1), (1, 2), (1, 3)]), Direction::North),
            (cells(&[(4, 4)]), Direction::West),
            Some(Cell::new(2, 1)),
            1,
        )
        .unwrap();
        let out = s.step(Direction::East, Direction::North).unwrap();
        assert!(out.terminal.is_none());
        let white = out.next.snake(Side::White);
        assert_eq!(white.len(), 4);
        assert_eq!(white.tail(), Cell::new(1, 3));
        assert_eq!(out.next.scores(), [s.score(Side::White) + 1, 0]);
        assert_eq!(out.next.apple().position, None);
        // respawned at the start of the following step
        let out2 = out.next.step(Direction::East, Direction::West).unwrap();
        assert!(out2.next.apple().position.is_some());
    }

    #[test]
    fn swap_is_head_to_head() {
        let s = GameState::from_parts(
            logical(5, 5),
            (cells(&[(1, 2), (0, 2)]), Direction::East),
            (cells(&[(2, 2), (3, 2)]), Direction::West),
            Some(Cell::new(4, 4)),
            1,
        )
        .unwrap();
        let out = s.step(Direction::East, Direction::West).unwrap();
        let o = out.terminal.unwrap();
        assert_eq!(o.result, MatchResult::Draw);
        assert_eq!(o.cause, Cause::HeadToHead);
    }

    #[test]
    fn step_on_finished_state_errors() {
        let s = GameState::from_parts(
            logical(5, 5),
            (cells(&[(0, 0)]), Direction::West),
            (cells(&[(4, 4)]), Direction::West),
            None,
            1,
        )
        .unwrap();
        let out = s.step(Direction::West, Direction::West).unwrap();
        assert!(out.terminal.is_some());
        assert_eq!(
            out.next.step(Direction::North, Direction::North),
            Err(EngineError::NotRunning)
        );
    }

    #[test]
    fn spawn_on_single_free_cell() {
        let s = GameState::from_parts(
            logical(3, 3).with_length(1),
            (cells(&[(0, 0), (1, 0), (2, 0), (2, 1)]), Direction::West),
            (cells(&[(1, 1), (0, 1), (0, 2), (1, 2)]), Direction::West),
            None,
            5,
        )
        .unwrap();
        for seed in 0..20 {
            let t = GameState::from_parts(
                *s.config(),
                (s.snake(Side::White).body().iter().copied().collect(), Direction::West),
                (s.snake(Side::Blue).body().iter().copied().collect(), Direction::West),
                None,
                seed,
            )
            .unwrap();
            let a = t.spawn_apple().unwrap();
            assert_eq!(a.apple().position, Some(Cell::new(2, 2)));
            assert_eq!(a.apple().age, 0);
        }
    }

    #[test]
    fn spawn_on_full_board_fails() {
        let s = GameState::from_parts(
            logical(2, 2).with_length(1),
            (cells(&[(0, 0), (1, 0)]), Direction::West),
            (cells(&[(0, 1), (1, 1)]), Direction::West),
            None,
            5,
        )
        .unwrap();
        assert_eq!(s.spawn_apple(), Err(EngineError::BoardFull));
    }

    #[test]
    fn tick_apple_below_and_at_ttl() {
        let base = GameState::new_match(&MatchConfig::logical(), 3).unwrap();
        let pos = base.apple().position;
        let t = base.clone().with_apple_age(50).tick_apple();
        assert_eq!(t.apple().age, 51);
        assert_eq!(t.apple().position, pos);

        let t = base.with_apple_age(99).tick_apple();
        assert_eq!(t.apple().age, 0);
        let p = t.apple().position.unwrap();
        assert!(!t.occupied(p));
    }

    #[test]
    fn no_ttl_means_no_relocation() {
        let mut c = MatchConfig::logical();
        c.apple_ttl = None;
        let s = GameState::new_match(&c, 3).unwrap().with_apple_age(10_000);
        let t = s.tick_apple();
        assert_eq!(t.apple().position, s.apple().position);
    }

    #[test]
    fn survival_moves_open_center_and_corner() {
        let s = GameState::from_parts(
            logical(9, 9),
            (cells(&[(4, 4), (3, 4), (2, 4)]), Direction::East),
            (cells(&[(8, 8)]), Direction::West),
            Some(Cell::new(0, 8)),
            1,
        )
        .unwrap();
        let m = s.legal_survival_moves(Side::White);
        assert_eq!(m.len(), 3);
        assert!(!m.contains(Direction::West));

        let s = GameState::from_parts(
            logical(9, 9),
            (cells(&[(0, 0), (1, 0), (2, 0)]), Direction::West),
            (cells(&[(8, 8)]), Direction::West),
            Some(Cell::new(0, 8)),
            1,
        )
        .unwrap();
        let m = s.legal_survival_moves(Side::White);
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![Direction::South]);
    }

    #[test]
    fn enclosed_head_has_no_survival_moves() {
        // head at (1,1) wrapped by its own body on all four sides
        let body = cells(&[
            (1, 1),
            (1, 0),
            (2, 0),
            (2, 1),
            (2, 2),
            (1, 2),
            (0, 2),
            (0, 1),
            (0, 0),
        ]);
        // tail (0,0) is not adjacent to the head, so nothing vacates into reach
        let s = GameState::from_parts(
            logical(5, 5),
            (body, Direction::South),
            (cells(&[(4, 4)]), Direction::West),
            Some(Cell::new(4, 0)),
            1,
        )
        .unwrap();
        assert!(s.legal_survival_moves(Side::White).is_empty());
    }
}
