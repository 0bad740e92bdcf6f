use crate::params::GeneratorMatrix;

/// How a preset chooses the insertion count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeRule {
    /// `m = factor * 2^levels`
    PerNode(u64),
    Fixed(u64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub matrix: GeneratorMatrix,
    pub levels: u32,
    pub edges: EdgeRule,
}

/// Graph500 sizes with tabulated isolated-vertex and repeat-edge figures.
pub const GRAPH500_LEVELS: [u32; 6] = [26, 29, 32, 36, 39, 42];

impl Preset {
    pub fn graph500() -> Self {
        Preset {
            name: "graph500",
            matrix: GeneratorMatrix { t1: 0.57, t2: 0.19, t3: 0.19, t4: 0.05 },
            levels: 26,
            edges: EdgeRule::PerNode(16),
        }
    }

    pub fn cahepph() -> Self {
        Preset {
            name: "cahepph",
            matrix: GeneratorMatrix { t1: 0.42, t2: 0.19, t3: 0.19, t4: 0.20 },
            levels: 14,
            edges: EdgeRule::Fixed(237_010),
        }
    }

    pub fn webnotredame() -> Self {
        Preset {
            name: "webnotredame",
            matrix: GeneratorMatrix { t1: 0.48, t2: 0.20, t3: 0.21, t4: 0.11 },
            levels: 18,
            edges: EdgeRule::Fixed(1_497_134),
        }
    }

    pub fn all() -> [Preset; 3] {
        [Self::graph500(), Self::cahepph(), Self::webnotredame()]
    }

    pub fn by_name(name: &str) -> Option<Preset> {
        Self::all().into_iter().find(|p| p.name.eq_ignore_ascii_case(name))
    }

    pub fn insertions(&self, levels: u32) -> u64 {
        match self.edges {
            EdgeRule::PerNode(f) => f << levels,
            EdgeRule::Fixed(m) => m,
        }
    }
}
