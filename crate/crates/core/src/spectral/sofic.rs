//! Rooted, labelled balls in Cayley graphs and the sofic fraction of a quotient.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::algebra::{Group, GroupElement, GeneratorAlphabet, Lamplighter};
use crate::rational::Rational;

use super::quotient::FiniteQuotient;
use super::SpectralError;

/// Default cap on ball size (vertices).
pub const MAX_BALL: usize = 1 << 20;

/// The ball `B(root, R)` of a Cayley graph: vertices in BFS order with
/// distances, and labelled edges `v --s--> v s`. The ball is the union of the
/// paths of length at most `R` from the root, so only vertices at distance
/// below `R` carry outgoing edges.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    pub vertices: Vec<GroupElement>,
    pub distance: Vec<usize>,
    /// `edges[v][s]` is the target index; `None` on the boundary sphere.
    pub edges: Vec<Vec<Option<usize>>>,
}

impl CayleyBall {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

pub fn cayley_ball_in<G: Group<Elem = GroupElement>>(
    group: &G,
    root: &GroupElement,
    gens: &[GroupElement],
    radius: usize,
    max: usize,
) -> Result<CayleyBall, SpectralError> {
    let mut index: HashMap<GroupElement, usize> = HashMap::new();
    let mut vertices = vec![root.clone()];
    let mut distance = vec![0];
    index.insert(root.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        if distance[v] == radius {
            continue;
        }
        for s in gens {
            let w = group.mul(&vertices[v], s);
            if !index.contains_key(&w) {
                if vertices.len() >= max {
                    return Err(SpectralError::TooLarge { what: "Cayley ball", limit: max });
                }
                index.insert(w.clone(), vertices.len());
                vertices.push(w);
                distance.push(distance[v] + 1);
                queue.push_back(vertices.len() - 1);
            }
        }
    }
    let edges = vertices
        .iter()
        .zip(&distance)
        .map(|(v, &d)| {
            if d < radius {
                gens.iter().map(|s| index.get(&group.mul(v, s)).copied()).collect()
            } else {
                vec![None; gens.len()]
            }
        })
        .collect();
    Ok(CayleyBall { vertices, distance, edges })
}

/// Ball of radius `R` around the identity of `(Z/2 wr Z)^d`.
pub fn cayley_ball(alphabet: &GeneratorAlphabet, radius: usize) -> Result<CayleyBall, SpectralError> {
    let group = Lamplighter::new(alphabet.dim());
    cayley_ball_in(&group, &group.identity(), &alphabet.values(), radius, MAX_BALL)
}

/// Whether the ball of `group` around `root` is isomorphic to `reference` as
/// a rooted, edge-labelled graph. Labels force the map, so it is built by a
/// parallel walk and then checked to be a bijection preserving all edges.
fn ball_matches<G: Group<Elem = GroupElement>>(
    group: &G,
    root: &GroupElement,
    gens: &[GroupElement],
    reference: &CayleyBall,
) -> bool {
    let radius = reference.distance.iter().copied().max().unwrap_or(0);
    let Ok(local) = cayley_ball_in(group, root, gens, radius, reference.len() + 1) else {
        return false;
    };
    if local.len() != reference.len() {
        return false;
    }
    // phi: reference index -> local index, fixed by walking the same labels
    let mut phi = vec![usize::MAX; reference.len()];
    let mut inv = vec![usize::MAX; local.len()];
    phi[0] = 0;
    inv[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for s in 0..gens.len() {
            match (reference.edges[v][s], local.edges[phi[v]][s]) {
                (None, None) => {}
                (Some(a), Some(b)) => {
                    if phi[a] == usize::MAX && inv[b] == usize::MAX {
                        phi[a] = b;
                        inv[b] = a;
                        queue.push_back(a);
                    } else if phi[a] != b || inv[b] != a {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
    phi.iter().all(|&x| x != usize::MAX)
}

/// Fraction of vertices of the quotient's labelled Cayley graph whose `R`-ball
/// matches the group's.
pub fn verify_sofic_fraction(
    q: &FiniteQuotient,
    alphabet: &GeneratorAlphabet,
    radius: usize,
) -> Result<Rational, SpectralError> {
    if alphabet.dim() != q.dim {
        return Err(SpectralError::InvalidParameter("alphabet and quotient differ in d".into()));
    }
    let order = q.order().filter(|&o| o <= MAX_BALL).ok_or(SpectralError::TooLarge {
        what: "quotient",
        limit: MAX_BALL,
    })?;
    let reference = cayley_ball(alphabet, radius)?;
    let group = q.group();
    let gens: Vec<GroupElement> = alphabet.values().iter().map(|g| q.quotient_map(g)).collect();
    let good = (0..order)
        .into_par_iter()
        .filter(|&i| ball_matches(&group, &q.element(i), &gens, &reference))
        .count();
    Ok(Rational::new(good.into(), order.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::spectral::build_quotient;

    #[test]
    fn ball_sizes() {
        let a = GeneratorAlphabet::walker_lamp();
        assert_eq!(cayley_ball(&a, 0).unwrap().len(), 1);
        assert_eq!(cayley_ball(&a, 1).unwrap().len(), 4);
    }

    #[test]
    fn fractions() {
        let a = GeneratorAlphabet::walker_lamp();
        assert_eq!(verify_sofic_fraction(&build_quotient(6, 1).unwrap(), &a, 2).unwrap(), int(1));
        assert_eq!(verify_sofic_fraction(&build_quotient(4, 1).unwrap(), &a, 3).unwrap(), int(0));
        assert_eq!(verify_sofic_fraction(&build_quotient(2, 1).unwrap(), &a, 0).unwrap(), int(1));
        for r in 1..=3 {
            let n = 2 * r as u32 + 1;
            assert_eq!(verify_sofic_fraction(&build_quotient(n, 1).unwrap(), &a, r).unwrap(), int(1));
            assert_eq!(verify_sofic_fraction(&build_quotient(n - 1, 1).unwrap(), &a, r).unwrap(), int(0));
        }
    }
}
