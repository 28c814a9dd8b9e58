use super::{Oracle, OracleError, DEFAULT_BALL_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EstimateParams {
    pub inner: usize,
    pub outer: usize,
    pub stability: usize,
    pub cap: usize,
}

impl Default for EstimateParams {
    fn default() -> Self {
        EstimateParams { inner: 4, outer: 12, stability: 3, cap: DEFAULT_BALL_CAP }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndsEstimate {
    Zero { order: usize },
    One,
    Two,
    Many,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndsReport {
    pub estimate: EndsEstimate,
    /// `(R, components of B_R - B_inner meeting the sphere of radius R)`.
    pub counts: Vec<(usize, usize)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub(super) fn estimate(o: &Oracle<'_>, p: &EstimateParams) -> Result<EndsReport, OracleError> {
    if p.inner >= p.outer {
        return Err(OracleError::InvalidParams("inner must be below outer".into()));
    }
    if p.stability == 0 || p.stability > p.outer - p.inner {
        return Err(OracleError::InvalidParams(format!("stability must lie in 1..={}", p.outer - p.inner)));
    }
    let ball = o.cayley_ball(p.outer, p.cap)?;
    if ball.closed {
        return Ok(EndsReport {
            estimate: EndsEstimate::Zero { order: ball.elements.len() },
            counts: Vec::new(),
        });
    }

    // Edges bucketed by the outer endpoint's distance, skipping any that
    // touch the inner ball.
    let mut by_layer: Vec<Vec<(usize, usize)>> = vec![Vec::new(); p.outer + 1];
    for &(a, b) in &ball.edges {
        let (da, db) = (ball.dist[a], ball.dist[b]);
        if da.min(db) > p.inner {
            by_layer[da.max(db)].push((a, b));
        }
    }
    let mut layers: Vec<Vec<usize>> = vec![Vec::new(); p.outer + 1];
    for (i, &d) in ball.dist.iter().enumerate() {
        layers[d].push(i);
    }

    let mut uf = UnionFind((0..ball.elements.len()).collect());
    let mut counts = Vec::new();
    for r in p.inner + 1..=p.outer {
        for &(a, b) in &by_layer[r] {
            uf.union(a, b);
        }
        let mut roots: Vec<usize> = layers[r].iter().map(|&x| uf.find(x)).collect();
        roots.sort_unstable();
        roots.dedup();
        counts.push((r, roots.len()));
    }

    let tail = &counts[counts.len() - p.stability..];
    let c = tail[0].1;
    let estimate = if tail.iter().all(|&(_, k)| k == c) {
        match c {
            0 => EndsEstimate::Inconclusive,
            1 => EndsEstimate::One,
            2 => EndsEstimate::Two,
            _ => EndsEstimate::Many,
        }
    } else {
        EndsEstimate::Inconclusive
    };
    Ok(EndsReport { estimate, counts })
}
