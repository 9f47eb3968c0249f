//! F(M) halts from every configuration; search finds the inputs it rejects.
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zdforge::turing::corpus::{m_always, m_never};
use zdforge::turing::{construct_foolproof, halting_bound, run_readonly, search_rejected_word, RoConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = construct_foolproof(&m_always())?;
    println!("F(M_always): {} states, valid: {}", f.states.len(), f.validate().is_valid());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..2000 {
        let tapes: Vec<Vec<usize>> =
            (0..3).map(|_| (0..rng.random_range(1..10)).map(|_| rng.random_range(0..f.alphabet.len())).collect()).collect();
        let heads = tapes.iter().map(|t| rng.random_range(0..t.len() as i64)).collect();
        let c = RoConfig { tapes, heads, state: rng.random_range(0..f.states.len()), last: vec![None; 3] };
        let bound = halting_bound(&f, &c);
        let r = run_readonly(&f, c, bound)?;
        worst = worst.max(r.steps as f64 / bound as f64);
    }
    println!("2000 random configurations halt; worst steps/bound = {worst:.2}");

    let w = search_rejected_word(&f, 200, 10_000).expect("M_always accepts something");
    let show = |t: &Vec<usize>| t.iter().map(|&s| f.symbol_name(s)).collect::<Vec<_>>().join(" ");
    println!("rejected: [{}] [{}] [{}]", show(&w[0]), show(&w[1]), show(&w[2]));

    let g = construct_foolproof(&m_never())?;
    println!("F(M_never), words up to 6: {:?}", search_rejected_word(&g, 6, 10_000));
    Ok(())
}
