//! Fixtures and hand-encoded maps shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use knotword::diagram::{read_presentation, SurfacePresentation};
use knotword::pullback::Map;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> SurfacePresentation {
    read_presentation(fixture_path(name)).unwrap()
}

/// Two saddles joined by four arcs.
pub fn bigon_sphere() -> Map {
    let mut sigma = vec![0; 8];
    for i in 0..4u32 {
        let t = 4 + ((5 - i) & 3);
        sigma[i as usize] = t;
        sigma[t as usize] = i;
    }
    Map::new(sigma, vec![true; 8]).unwrap()
}

/// The 2x2 square grid on the torus. Corners run E, N, W, S, shifted by one
/// at odd vertices so that every edge joins an even corner to an odd one.
pub fn quad_torus() -> Map {
    let vertex = |x: u32, y: u32| 2 * (x % 2) + y % 2;
    let half = |x: u32, y: u32, d: u32| 4 * vertex(x, y) + (d + (x + y) % 2) % 4;
    let mut sigma = vec![0; 16];
    for x in 0..2 {
        for y in 0..2 {
            let east = (half(x, y, 0), half(x + 1, y, 2));
            let north = (half(x, y, 1), half(x, y + 1, 3));
            for (a, b) in [east, north] {
                sigma[a as usize] = b;
                sigma[b as usize] = a;
            }
        }
    }
    Map::new(sigma, vec![true; 16]).unwrap()
}
