//! Oracle-backed DFA tests: compiled automata are compared against an
//! independent set-theoretic reference matcher on bounded domains, and
//! minimization is checked against brute-force membership.

use infere_core::dfa::{
    compile, derive_alphabet, equivalent, minimize, Alphabet, Dfa,
};
use infere_core::dsl::{LeafKind, OperatorKind, RegexAst};
use infere_core::gen::{random_asts, seeded_rng, GenConfig};
use rand::Rng;
use std::collections::HashSet;

type Word = Vec<usize>;

/// All minterm words of length at most `max_len`.
fn all_words(minterms: usize, max_len: usize) -> Vec<Word> {
    let mut words: Vec<Word> = vec![Vec::new()];
    let mut frontier: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for word in &frontier {
            for m in 0..minterms {
                let mut w = word.clone();
                w.push(m);
                next.push(w);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    words
}

/// The language of `ast` restricted to words of length at most `max_len`,
/// computed by direct set semantics — no automata involved.
fn bounded_language(ast: &RegexAst, alphabet: &Alphabet, max_len: usize) -> HashSet<Word> {
    let ast = ast.desugar();
    language(&ast, alphabet, max_len)
}

fn language(ast: &RegexAst, alphabet: &Alphabet, max_len: usize) -> HashSet<Word> {
    match ast {
        RegexAst::Leaf(kind) => alphabet
            .leaf_minterms(*kind)
            .unwrap()
            .into_iter()
            .map(|m| vec![m])
            .filter(|w| w.len() <= max_len)
            .collect(),
        RegexAst::Op {
            kind,
            children,
            params,
        } => match kind {
            OperatorKind::Concat => {
                let a = language(&children[0], alphabet, max_len);
                let b = language(&children[1], alphabet, max_len);
                join(&a, &b, max_len)
            }
            OperatorKind::Or => {
                let mut a = language(&children[0], alphabet, max_len);
                a.extend(language(&children[1], alphabet, max_len));
                a
            }
            OperatorKind::And => {
                let a = language(&children[0], alphabet, max_len);
                let b = language(&children[1], alphabet, max_len);
                a.intersection(&b).cloned().collect()
            }
            OperatorKind::Not => {
                let inner = language(&children[0], alphabet, max_len);
                all_words(alphabet.len(), max_len)
                    .into_iter()
                    .filter(|w| !inner.contains(w))
                    .collect()
            }
            OperatorKind::Optional => {
                let mut inner = language(&children[0], alphabet, max_len);
                inner.insert(Vec::new());
                inner
            }
            OperatorKind::Star => closure(&language(&children[0], alphabet, max_len), max_len),
            OperatorKind::Rep => power(&language(&children[0], alphabet, max_len), params[0], max_len),
            OperatorKind::RepeatLeast => {
                let inner = language(&children[0], alphabet, max_len);
                join(&power(&inner, params[0], max_len), &closure(&inner, max_len), max_len)
            }
            OperatorKind::RepRange => {
                let inner = language(&children[0], alphabet, max_len);
                let mut out = HashSet::new();
                for k in params[0]..=params[1] {
                    out.extend(power(&inner, k, max_len));
                }
                out
            }
            OperatorKind::StartWith | OperatorKind::EndWith | OperatorKind::Contain => {
                unreachable!("desugared")
            }
        },
    }
}

fn join(a: &HashSet<Word>, b: &HashSet<Word>, max_len: usize) -> HashSet<Word> {
    let mut out = HashSet::new();
    for x in a {
        for y in b {
            if x.len() + y.len() <= max_len {
                let mut w = x.clone();
                w.extend_from_slice(y);
                out.insert(w);
            }
        }
    }
    out
}

fn closure(inner: &HashSet<Word>, max_len: usize) -> HashSet<Word> {
    let mut out: HashSet<Word> = HashSet::new();
    out.insert(Vec::new());
    loop {
        let grown = join(&out, inner, max_len);
        let before = out.len();
        out.extend(grown);
        if out.len() == before {
            return out;
        }
    }
}

fn power(inner: &HashSet<Word>, k: u32, max_len: usize) -> HashSet<Word> {
    let mut out: HashSet<Word> = HashSet::new();
    out.insert(Vec::new());
    for _ in 0..k {
        out = join(&out, inner, max_len);
        if out.is_empty() {
            return out;
        }
    }
    out
}

fn oracle_cfg() -> GenConfig {
    GenConfig {
        max_depth: 3,
        leaves: vec![LeafKind::Low, LeafKind::Num],
        max_count: 2,
        sugar: true,
        complement: true,
    }
}

#[test]
fn compiled_membership_matches_reference_matcher() {
    const MAX_LEN: usize = 4;
    let asts = random_asts(23, 150, &oracle_cfg());
    for ast in &asts {
        let alphabet = derive_alphabet(&[ast]);
        let dfa = compile(ast, &alphabet).unwrap();
        let expected = bounded_language(ast, &alphabet, MAX_LEN);
        for word in all_words(alphabet.len(), MAX_LEN) {
            assert_eq!(
                dfa.accepts(&word),
                expected.contains(&word),
                "ast {ast:?}, word {word:?}"
            );
        }
    }
}

#[test]
fn equivalence_matches_bounded_set_equality() {
    const MAX_LEN: usize = 6;
    let mut rng = seeded_rng(29);
    let cfg = oracle_cfg();
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 120 {
        attempts += 1;
        assert!(attempts < 20_000, "filter rejected too many pairs");
        let a = infere_core::gen::random_ast(&mut rng, &cfg);
        let b = if rng.random_range(0..4) == 0 {
            a.clone()
        } else {
            infere_core::gen::random_ast(&mut rng, &cfg)
        };
        let alphabet = derive_alphabet(&[&a, &b]);
        let da = compile(&a, &alphabet).unwrap();
        let db = compile(&b, &alphabet).unwrap();
        // only sound when the shortest separating word fits the bound
        if da.state_count() * db.state_count() > MAX_LEN {
            continue;
        }
        let la = bounded_language(&a, &alphabet, MAX_LEN);
        let lb = bounded_language(&b, &alphabet, MAX_LEN);
        assert_eq!(
            equivalent(&a, &b).unwrap(),
            la == lb,
            "a {a:?}, b {b:?}"
        );
        checked += 1;
    }
}

#[test]
fn equivalence_is_an_equivalence_relation() {
    let pool = random_asts(31, 40, &oracle_cfg());
    let mut rng = seeded_rng(37);
    for _ in 0..200 {
        let a = &pool[rng.random_range(0..pool.len())];
        let b = &pool[rng.random_range(0..pool.len())];
        let c = &pool[rng.random_range(0..pool.len())];
        assert!(equivalent(a, a).unwrap());
        assert_eq!(equivalent(a, b).unwrap(), equivalent(b, a).unwrap());
        if equivalent(a, b).unwrap() && equivalent(b, c).unwrap() {
            assert!(equivalent(a, c).unwrap());
        }
    }
}

#[test]
fn minimize_preserves_membership_on_random_dfas() {
    let mut rng = seeded_rng(41);
    for _ in 0..200 {
        let states = rng.random_range(1..=5usize);
        let minterms = rng.random_range(1..=3usize);
        let accepting: Vec<bool> = (0..states).map(|_| rng.random_range(0..2) == 1).collect();
        let table: Vec<usize> = (0..states * minterms)
            .map(|_| rng.random_range(0..states))
            .collect();
        let dfa = Dfa::from_parts(minterms, 0, accepting, table);
        let small = minimize(&dfa);
        assert!(small.state_count() <= dfa.state_count());
        assert_eq!(minimize(&small), small, "idempotence");
        // pumping bound: words up to the original state count separate
        // any pair of distinguishable states
        for word in all_words(minterms, states) {
            assert_eq!(dfa.accepts(&word), small.accepts(&word), "word {word:?}");
        }
    }
}
