/// Resource guards that keep every computation at desk scale.
///
/// All three limits are overridable from the command line and from the
/// environment (`CHARDEG_ELEMENT_LIMIT`, `CHARDEG_TABLE_LIMIT`,
/// `CHARDEG_SUBGROUP_LIMIT`). Exceeding a guard is a reported condition,
/// never a panic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Guards {
    /// Maximum number of group elements enumerated by closure.
    pub element_limit: usize,
    /// Maximum group order for which a character table is computed.
    pub table_limit: usize,
    /// Maximum group order for full subgroup-lattice enumeration.
    pub subgroup_limit: usize,
}

pub const DEFAULT_ELEMENT_LIMIT: usize = 100_000;
pub const DEFAULT_TABLE_LIMIT: usize = 5_000;
pub const DEFAULT_SUBGROUP_LIMIT: usize = 300;

impl Default for Guards {
    fn default() -> Self {
        Guards {
            element_limit: DEFAULT_ELEMENT_LIMIT,
            table_limit: DEFAULT_TABLE_LIMIT,
            subgroup_limit: DEFAULT_SUBGROUP_LIMIT,
        }
    }
}

impl Guards {
    /// Defaults overlaid with any environment overrides.
    pub fn from_env() -> Self {
        let mut g = Guards::default();
        if let Some(v) = read_env("CHARDEG_ELEMENT_LIMIT") {
            g.element_limit = v;
        }
        if let Some(v) = read_env("CHARDEG_TABLE_LIMIT") {
            g.table_limit = v;
        }
        if let Some(v) = read_env("CHARDEG_SUBGROUP_LIMIT") {
            g.subgroup_limit = v;
        }
        g
    }
}

fn read_env(key: &str) -> Option<usize> {
    std::env::var(key).ok()?.trim().parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_documented_limits() {
        let g = Guards::default();
        assert_eq!(g.element_limit, 100_000);
        assert_eq!(g.table_limit, 5_000);
        assert_eq!(g.subgroup_limit, 300);
    }
}
