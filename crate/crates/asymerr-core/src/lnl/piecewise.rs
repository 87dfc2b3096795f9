use alloc::vec::Vec;

/// Piecewise polynomial in `x`. Piece `i` covers `[breaks[i−1], breaks[i]]`;
/// coefficients are in ascending powers of `x`.
#[derive(Debug, Clone)]
pub(super) struct Piecewise {
    breaks: Vec<f64>,
    pieces: Vec<Vec<f64>>,
    domain: (f64, f64),
    params: Vec<(&'static str, f64)>,
}

impl Piecewise {
    pub(super) fn new(breaks: Vec<f64>, pieces: Vec<Vec<f64>>) -> Self {
        debug_assert_eq!(breaks.len() + 1, pieces.len());
        Self { breaks, pieces, domain: (f64::NEG_INFINITY, f64::INFINITY), params: Vec::new() }
    }

    pub(super) fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        self.domain = (lo, hi);
        self
    }

    pub(super) fn with_params(mut self, params: Vec<(&'static str, f64)>) -> Self {
        self.params = params;
        self
    }

    /// The curve of `−x`.
    pub(super) fn mirrored(self) -> Self {
        let breaks = self.breaks.iter().rev().map(|b| -b).collect();
        let pieces = self
            .pieces
            .into_iter()
            .rev()
            .map(|c| c.into_iter().enumerate().map(|(k, ck)| if k % 2 == 1 { -ck } else { ck }).collect())
            .collect();
        Self { breaks, pieces, domain: (-self.domain.1, -self.domain.0), params: self.params }
    }

    fn piece(&self, x: f64) -> &[f64] {
        let i = self.breaks.iter().take_while(|&&b| x > b).count();
        &self.pieces[i]
    }

    pub(super) fn value(&self, x: f64) -> f64 {
        horner(self.piece(x), x)
    }

    pub(super) fn slope(&self, x: f64) -> f64 {
        let c = self.piece(x);
        let mut s = 0.0;
        for k in (1..c.len()).rev() {
            s = s * x + k as f64 * c[k];
        }
        s
    }

    pub(super) fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub(super) fn params(&self) -> Vec<(&'static str, f64)> {
        self.params.clone()
    }
}

pub(super) fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci)
}

/// Coefficients of the quadratic through `(s, v)` with slope `d` and second
/// derivative `k` there.
pub(super) fn tail(s: f64, v: f64, d: f64, k: f64) -> Vec<f64> {
    alloc::vec![v - d * s + 0.5 * k * s * s, d - k * s, 0.5 * k]
}

/// Value and first derivative of the polynomial `c` at `x`.
pub(super) fn value_slope(c: &[f64], x: f64) -> (f64, f64) {
    let mut v = 0.0;
    let mut d = 0.0;
    for &ci in c.iter().rev() {
        d = d * x + v;
        v = v * x + ci;
    }
    (v, d)
}
