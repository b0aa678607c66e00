use crate::balls::Direction;
use crate::code::Code;
use crate::error::Result;
use crate::search::SetSystem;
use crate::verify::ensure_covering;
use crate::word::Alphabet;

/// Greedy set cover over the full candidate space: each step takes the word
/// covering the most still-uncovered targets, smallest word first on ties.
pub fn greedy_cover(q: u32, n: usize, radius: usize, direction: Direction) -> Result<Code> {
    let alphabet = Alphabet::new(q)?;
    let sys = SetSystem::build(alphabet, n, radius, direction)?;
    let chosen = sys.greedy();
    let code = Code::from_ranks(&sys.candidates, chosen.into_iter().map(u64::from));
    ensure_covering(&code, radius, direction)?;
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::vt_code;

    #[test]
    fn small_examples() {
        let ins = greedy_cover(2, 2, 1, Direction::Insertion).unwrap();
        assert_eq!(ins, Code::binary(&["00", "11"]).unwrap());
        let del = greedy_cover(2, 2, 1, Direction::Deletion).unwrap();
        assert_eq!(del, Code::binary(&["01"]).unwrap());
    }

    #[test]
    fn n8_deletion_close_to_vt() {
        let g = greedy_cover(2, 8, 1, Direction::Deletion).unwrap();
        let best_vt = (0..=8).map(|a| vt_code(8, a).unwrap().len()).min().unwrap();
        assert!(g.len() <= best_vt + 8, "greedy {} vs vt {}", g.len(), best_vt);
    }
}
