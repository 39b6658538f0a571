//! Map-constrained random waypoint movement.
//!
//! A node picks a uniformly random destination vertex on its allowed graph,
//! a uniformly random speed from its group range, walks the shortest path
//! there and immediately starts the next leg (no pause).

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Graph, Point};
use crate::Scalar;

/// Destination draws per leg before a node gives up and stays put for the
/// rest of the current step.
pub const MAX_REDRAWS: usize = 16;

// Upper bound on legs started within one `advance` call.
const MAX_LEGS_PER_ADVANCE: usize = 64;

#[derive(Debug, Clone)]
pub struct Mover<T> {
    position: Point<T>,
    last_vertex: usize,
    path: Vec<usize>,
    cursor: usize,
    speed: T,
    speed_range: (T, T),
    stalled: bool,
    legs: u64,
    rng: ChaCha8Rng,
}

impl<T: Scalar> Mover<T> {
    /// Places the node on a uniformly drawn vertex of `graph` and plans the
    /// first leg. `graph` must have at least one vertex.
    pub fn new(graph: &Graph<T>, speed_range: (T, T), mut rng: ChaCha8Rng) -> Self {
        assert!(graph.vertex_count() > 0, "movement graph has no vertices");
        let start = rng.gen_range(0..graph.vertex_count());
        let mut m = Mover {
            position: graph.vertex(start),
            last_vertex: start,
            path: vec![start],
            cursor: 1,
            speed: speed_range.0,
            speed_range,
            stalled: false,
            legs: 0,
            rng,
        };
        m.next_leg(graph);
        m
    }

    pub fn position(&self) -> Point<T> {
        self.position
    }

    pub fn speed(&self) -> T {
        self.speed
    }

    /// Final vertex of the current leg.
    pub fn destination(&self) -> usize {
        *self.path.last().unwrap_or(&self.last_vertex)
    }

    pub fn active_path(&self) -> &[usize] {
        &self.path
    }

    /// Number of legs planned so far, including stalled ones.
    pub fn legs(&self) -> u64 {
        self.legs
    }

    pub fn is_stalled(&self) -> bool {
        self.stalled
    }

    fn arrived(&self) -> bool {
        self.cursor >= self.path.len()
    }

    /// Plans a new leg from the last reached vertex: destination uniform over
    /// all vertices (redrawn while unreachable), then speed uniform in the
    /// group range.
    pub fn next_leg(&mut self, graph: &Graph<T>) {
        self.legs += 1;
        let from = self.last_vertex;
        let n = graph.vertex_count();
        let mut planned = None;
        if n > 1 {
            for _ in 0..MAX_REDRAWS {
                let dest = self.rng.gen_range(0..n);
                if let Some(p) = graph.shortest_path(from, dest) {
                    planned = Some(p.vertices);
                    break;
                }
            }
        }
        let (lo, hi) = self.speed_range;
        self.speed = if lo < hi { self.rng.gen_range(lo..=hi) } else { lo };
        match planned {
            Some(path) => {
                self.path = path;
                self.cursor = 1;
                self.stalled = false;
            }
            None => {
                self.path = vec![from];
                self.cursor = 1;
                self.stalled = true;
            }
        }
    }

    /// Moves `speed * dt` along the active path. Time left over after
    /// reaching the destination is spent on the next leg at its own speed.
    pub fn advance(&mut self, graph: &Graph<T>, dt: T) {
        let mut t_left = dt;
        let mut legs = 0;
        while t_left > T::zero() {
            if self.arrived() {
                if legs >= MAX_LEGS_PER_ADVANCE {
                    return;
                }
                legs += 1;
                self.next_leg(graph);
                if self.stalled {
                    return;
                }
                continue;
            }
            let next = self.path[self.cursor];
            let target = graph.vertex(next);
            let dist = self.position.distance(&target);
            if dist == T::zero() {
                self.last_vertex = next;
                self.cursor += 1;
                continue;
            }
            if self.speed <= T::zero() {
                return;
            }
            let need = dist / self.speed;
            if need <= t_left {
                self.position = target;
                self.last_vertex = next;
                self.cursor += 1;
                t_left = t_left - need;
            } else {
                let frac = self.speed * t_left / dist;
                self.position = self.position.lerp(&target, frac);
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geo::{parse_wkt, GraphBuilder};
    use crate::rng::{stream, Stream};

    fn line() -> Graph<f64> {
        parse_wkt("LINESTRING (0 0, 100 0, 200 0)").unwrap()
    }

    #[test]
    fn displacement_is_speed_times_dt() {
        let g = line();
        let mut m = Mover::new(&g, (2.0, 2.0), stream(3, Stream::Mobility(0)));
        // force a leg that is long enough
        while m.destination() == m.last_vertex || g.shortest_path(m.last_vertex, m.destination()).unwrap().length < 2.0
        {
            m.next_leg(&g);
        }
        let before = m.position();
        m.advance(&g, 0.5);
        assert!((m.position().distance(&before) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn single_vertex_graph_is_stationary() {
        let mut b = GraphBuilder::<f64>::new();
        b.vertex(Point::new(5.0, 5.0));
        let g = b.build();
        let mut m = Mover::new(&g, (1.0, 3.0), stream(1, Stream::Mobility(0)));
        for _ in 0..10 {
            m.advance(&g, 0.5);
        }
        assert_eq!(m.position(), Point::new(5.0, 5.0));
        assert!(m.is_stalled());
    }

    #[test]
    fn speeds_stay_in_range() {
        let g = line();
        let mut m = Mover::new(&g, (0.1, 0.3), stream(9, Stream::Mobility(2)));
        for _ in 0..500 {
            m.next_leg(&g);
            assert!((0.1..=0.3).contains(&m.speed()));
        }
    }

    #[test]
    fn one_step_equals_two_steps() {
        let g: Graph<f64> = parse_wkt("LINESTRING (0 0, 30 0, 30 40, 90 40, 90 0)").unwrap();
        let mut a = Mover::new(&g, (5.0, 15.0), stream(11, Stream::Mobility(1)));
        let mut b = a.clone();
        for _ in 0..200 {
            a.advance(&g, 7.0);
            b.advance(&g, 3.0);
            b.advance(&g, 4.0);
            assert!(a.position().distance(&b.position()) < 1e-6);
        }
    }

    #[test]
    fn unreachable_destination_stalls_after_redraws() {
        // two far components: from an isolated single edge most draws miss
        let g: Graph<f64> =
            parse_wkt("LINESTRING (0 0, 1 0)\nLINESTRING (50 0, 60 0, 70 0, 80 0, 90 0, 100 0)").unwrap();
        let mut m = Mover::new(&g, (1.0, 1.0), stream(2, Stream::Mobility(0)));
        for _ in 0..2000 {
            m.advance(&g, 0.5);
            assert!(g.distance_to(&m.position()) < 1e-9);
        }
    }
}
