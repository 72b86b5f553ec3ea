//! DFA minimization by partition refinement, plus canonical renumbering.
//!
//! States start partitioned into accepting and rejecting blocks; blocks are
//! split by transition signatures until stable. The quotient automaton is
//! then renumbered by breadth-first traversal from the initial state with
//! minterms in alphabet order, so that two automata with the same language
//! produce identical tables.

use super::Dfa;

/// Returns the canonical minimal DFA for the same language.
///
/// Idempotent: minimizing a minimal DFA returns an identical value. Every
/// state of the result is reachable and no two states are equivalent.
pub fn minimize(dfa: &Dfa) -> Dfa {
    let n = dfa.state_count();
    if n == 0 {
        return dfa.clone();
    }

    // block id per state; start from the accepting/rejecting split
    let mut block: Vec<usize> = dfa
        .accepting
        .iter()
        .map(|&acc| if acc { 1 } else { 0 })
        .collect();
    let mut block_count = if dfa.accepting.iter().all(|&a| a == dfa.accepting[0]) {
        1
    } else {
        2
    };
    if block_count == 1 {
        block.iter_mut().for_each(|b| *b = 0);
    }

    loop {
        let mut index: std::collections::HashMap<Vec<usize>, usize> =
            std::collections::HashMap::new();
        let mut next_block = vec![0usize; n];
        for s in 0..n {
            let mut signature = Vec::with_capacity(dfa.minterm_count + 1);
            signature.push(block[s]);
            for m in 0..dfa.minterm_count {
                signature.push(block[dfa.next(s, m)]);
            }
            let fresh = index.len();
            let id = *index.entry(signature).or_insert(fresh);
            next_block[s] = id;
        }
        let next_count = index.len();
        block = next_block;
        if next_count == block_count {
            break;
        }
        block_count = next_count;
    }

    // canonical BFS renumbering over blocks, dropping unreachable ones
    let representative = |target: usize, blocks: &[usize]| -> usize {
        blocks.iter().position(|&b| b == target).expect("block member")
    };
    let mut order: Vec<usize> = vec![block[dfa.initial]];
    let mut numbered: Vec<Option<usize>> = vec![None; block_count];
    numbered[block[dfa.initial]] = Some(0);
    let mut table = Vec::new();
    let mut accepting = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let b = order[i];
        let state = representative(b, &block);
        accepting.push(dfa.accepting[state]);
        for m in 0..dfa.minterm_count {
            let target = block[dfa.next(state, m)];
            let id = match numbered[target] {
                Some(id) => id,
                None => {
                    let id = order.len();
                    numbered[target] = Some(id);
                    order.push(target);
                    id
                }
            };
            table.push(id);
        }
        i += 1;
    }

    Dfa {
        minterm_count: dfa.minterm_count,
        initial: 0,
        accepting,
        table,
    }
}
