//! Size guards for scan loops, minor enumeration, and homological windows.
//!
//! The dimension cap can be raised or lowered through the `QCJT_SIZE_GUARD`
//! environment variable (read once per process).

use std::sync::OnceLock;

#[derive(Debug, Clone)]
pub struct Guards {
    /// Maximum number of projective points a scan may visit.
    pub scan_points_max: u64,
    /// Maximum number of minors a symbolic certificate may enumerate.
    pub minor_count_max: u64,
    /// Maximum module dimension for syzygy and Betti windows.
    pub dim_max: usize,
}

impl Default for Guards {
    fn default() -> Guards {
        Guards {
            scan_points_max: 1_000_000,
            minor_count_max: 200_000,
            dim_max: 4096,
        }
    }
}

static GUARDS: OnceLock<Guards> = OnceLock::new();

pub fn guards() -> &'static Guards {
    GUARDS.get_or_init(|| {
        let mut g = Guards::default();
        if let Ok(raw) = std::env::var("QCJT_SIZE_GUARD") {
            if let Ok(v) = raw.trim().parse::<usize>() {
                g.dim_max = v;
            }
        }
        g
    })
}
