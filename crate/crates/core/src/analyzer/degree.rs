use serde::{Deserialize, Serialize};

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub min: usize,
    pub max: usize,
    pub mean: f64,
    /// `max / min`; infinite when some node is isolated.
    pub ratio: f64,
    /// Lower end `D` of the degree band of a regularized graph.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band_d: Option<f64>,
    /// Band multiplier: all degrees lie in `[D, multiplier * D]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band_multiplier: Option<f64>,
}

impl DegreeStats {
    pub fn of(g: &Graph) -> Self {
        let degrees = g.degrees();
        let min = degrees.iter().copied().min().unwrap_or(0);
        let max = degrees.iter().copied().max().unwrap_or(0);
        let mean = if g.n() == 0 {
            0.0
        } else {
            2.0 * g.m() as f64 / g.n() as f64
        };
        let ratio = if min == 0 {
            f64::INFINITY
        } else {
            max as f64 / min as f64
        };
        DegreeStats {
            min,
            max,
            mean,
            ratio,
            band_d: None,
            band_multiplier: None,
        }
    }

    pub fn with_band(mut self) -> Self {
        if self.min > 0 {
            self.band_d = Some(self.min as f64);
            self.band_multiplier = Some(self.ratio);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_degrees() {
        let star = Graph::unweighted(5, (1..5).map(|i| (0, i))).unwrap();
        let s = DegreeStats::of(&star);
        assert_eq!((s.min, s.max), (1, 4));
        assert_eq!(s.mean, 1.6);
        assert_eq!(s.ratio, 4.0);
        assert!(s.min as f64 <= s.mean && s.mean <= s.max as f64);
        let s = s.with_band();
        assert_eq!((s.band_d, s.band_multiplier), (Some(1.0), Some(4.0)));
        assert_eq!(DegreeStats::of(&Graph::new(3)).ratio, f64::INFINITY);
    }
}
