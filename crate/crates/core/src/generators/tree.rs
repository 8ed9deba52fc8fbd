use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph};
use crate::rng::SimRng;

use super::{FamilyParams, GraphFamily, MAX_NODES};

/// `(c^(H+1) - 1) / (c - 1)`, or `None` on overflow.
pub fn cary_node_count(c: usize, h: usize) -> Option<usize> {
    let mut total: usize = 1;
    let mut level: usize = 1;
    for _ in 0..h {
        level = level.checked_mul(c)?;
        total = total.checked_add(level)?;
    }
    Some(total)
}

/// Complete `c`-ary tree of height `h`, numbered breadth-first from root 0;
/// the children of `v` are `c v + 1 ..= c v + c`.
pub fn c_ary_tree(c: usize, h: usize) -> Result<Graph> {
    if c < 2 || h < 1 {
        return Err(Error::InvalidParams(format!("need c >= 2 and H >= 1, got c={c}, H={h}")));
    }
    let n = cary_node_count(c, h)
        .filter(|&n| n <= MAX_NODES)
        .ok_or_else(|| Error::TooLarge(format!("c-ary tree with c={c}, H={h}")))?;
    let edges: Vec<_> = (1..n).map(|v| ((v - 1) / c, v)).collect();
    build_graph(&edges, Some(n))
}

pub struct CaryTree;

impl GraphFamily for CaryTree {
    fn name(&self) -> &'static str {
        "cary"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["tree", "c-ary"]
    }

    fn generate(&self, params: &FamilyParams, _rng: &mut SimRng) -> Result<Graph> {
        let c = FamilyParams::need(params.c, self.name(), "c")?;
        let h = FamilyParams::need(params.h, self.name(), "H")?;
        c_ary_tree(c, h)
    }

    fn search_schedule(&self, c_target: f64, h_target: usize, _tol_c: f64) -> Result<Vec<FamilyParams>> {
        let c = c_target.round();
        if c < 2.0 || h_target < 1 {
            return Ok(Vec::new());
        }
        Ok(vec![FamilyParams {
            c: Some(c as usize),
            h: Some(h_target),
            ..Default::default()
        }])
    }

    fn deterministic(&self) -> bool {
        true
    }

    fn targets_mean_degree(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_trees() {
        let t = c_ary_tree(2, 1).unwrap();
        assert_eq!((t.node_count(), t.edge_count()), (3, 2));
        assert_eq!(c_ary_tree(2, 2).unwrap().node_count(), 7);
        let t3 = c_ary_tree(3, 2).unwrap();
        assert_eq!(t3.node_count(), 13);
        for v in 0..4 {
            // internal: 3 children (+ parent unless root)
            assert_eq!(t3.degree(v), if v == 0 { 3 } else { 4 });
        }
        assert!((4..13).all(|v| t3.degree(v) == 1));
    }

    #[test]
    fn node_count_formula() {
        for c in 2..=5usize {
            for h in 1..=5usize {
                let t = c_ary_tree(c, h).unwrap();
                let expected = (c.pow(h as u32 + 1) - 1) / (c - 1);
                assert_eq!(t.node_count(), expected);
                assert_eq!(t.edge_count(), expected - 1);
                assert!(t.is_tree());
                assert_eq!(t.half_diameter().unwrap(), h);
            }
        }
    }

    #[test]
    fn rejects_bad_and_huge() {
        assert!(matches!(c_ary_tree(1, 3), Err(Error::InvalidParams(_))));
        assert!(matches!(c_ary_tree(2, 0), Err(Error::InvalidParams(_))));
        assert!(matches!(c_ary_tree(10, 40), Err(Error::TooLarge(_))));
        assert_eq!(cary_node_count(2, 200), None);
    }
}
