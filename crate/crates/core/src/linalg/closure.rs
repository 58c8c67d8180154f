use std::collections::VecDeque;

use rayon::prelude::*;

use super::{ExactMatrix, LinalgError, MatrixSpace, SparseVec};

/// Which side generators multiply onto worklist elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Side {
    #[default]
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ClosureOptions {
    pub side: Side,
    /// Record, for every inserted element, the generator word it came from.
    pub record_words: bool,
}

/// Result of a closure run.
#[derive(Debug, Clone)]
pub struct Closure {
    pub space: MatrixSpace,
    /// `words[k]` lists generator indices whose product (in order) was reduced
    /// to give the k-th inserted element. Empty unless requested.
    pub words: Vec<Vec<usize>>,
    /// Number of candidate products formed.
    pub products: usize,
}

/// Algebra (not necessarily unital) generated by `generators`.
pub fn algebra_closure(generators: &[ExactMatrix]) -> Result<MatrixSpace, LinalgError> {
    Ok(algebra_closure_with(generators, ClosureOptions::default())?.space)
}

/// Worklist closure: seed with the generators, then multiply every generator
/// onto each newly inserted element until nothing new appears.
///
/// The worklist is FIFO over inserted elements and generators are applied in
/// index order, so the resulting trace is deterministic. Products for one
/// element are computed in parallel; insertions are applied serially.
pub fn algebra_closure_with(
    generators: &[ExactMatrix],
    opts: ClosureOptions,
) -> Result<Closure, LinalgError> {
    let Some(first) = generators.first() else {
        return Ok(Closure {
            space: MatrixSpace::new(0, 0),
            words: Vec::new(),
            products: 0,
        });
    };
    let n = first.rows();
    for g in generators {
        if g.shape() != (n, n) {
            return Err(LinalgError::Shape {
                op: "algebra_closure",
                left: (n, n),
                right: g.shape(),
            });
        }
    }

    let mut space = MatrixSpace::new(n, n);
    let mut words = Vec::new();
    let mut queue: VecDeque<(SparseVec, usize)> = VecDeque::new();
    for (gi, g) in generators.iter().enumerate() {
        if let Some(v) = space.insert_vector(&g.vectorize()) {
            queue.push_back((v, words.len()));
            if opts.record_words {
                words.push(vec![gi]);
            } else {
                words.push(Vec::new());
            }
        }
    }

    let mut products = 0;
    while let Some((item, word_id)) = queue.pop_front() {
        let item = ExactMatrix::from_vector(n, n, &item);
        let candidates: Vec<SparseVec> = generators
            .par_iter()
            .map(|g| match opts.side {
                Side::Left => g.mat_mul(&item),
                Side::Right => item.mat_mul(g),
            })
            .map(|p| p.map(|p| p.vectorize()))
            .collect::<Result<_, _>>()?;
        products += candidates.len();
        for (gi, cand) in candidates.into_iter().enumerate() {
            if cand.is_zero() {
                continue;
            }
            if let Some(v) = space.insert_vector(&cand) {
                let word = if opts.record_words {
                    let parent = &words[word_id];
                    match opts.side {
                        Side::Left => std::iter::once(gi).chain(parent.iter().copied()).collect(),
                        Side::Right => parent.iter().copied().chain(std::iter::once(gi)).collect(),
                    }
                } else {
                    Vec::new()
                };
                queue.push_back((v, words.len()));
                words.push(word);
            }
        }
    }

    if !opts.record_words {
        words.clear();
    }
    Ok(Closure {
        space,
        words,
        products,
    })
}

/// Evaluates a generator word as a matrix product.
pub fn word_product(
    generators: &[ExactMatrix],
    word: &[usize],
) -> Result<ExactMatrix, LinalgError> {
    let mut it = word.iter();
    let first = it.next().expect("empty word");
    let mut acc = generators[*first].clone();
    for &g in it {
        acc = acc.mat_mul(&generators[g])?;
    }
    Ok(acc)
}

/// `true` if `b1 * b2` lies in the space for every pair of basis elements.
pub fn is_multiplicatively_closed(space: &MatrixSpace) -> Result<bool, LinalgError> {
    let basis: Vec<ExactMatrix> = space.basis_matrices().collect();
    let ok = basis
        .par_iter()
        .map(|a| {
            for b in &basis {
                if !space.contains(&a.mat_mul(b)?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect::<Result<Vec<bool>, LinalgError>>()?;
    Ok(ok.into_iter().all(|b| b))
}
