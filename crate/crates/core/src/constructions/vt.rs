use crate::balls::Direction;
use crate::code::Code;
use crate::error::{Error, Result};
use crate::space::WordSpace;
use crate::verify::ensure_covering;
use crate::word::{Alphabet, Word};

/// `Σ_{i=1}^{n} i·(x_i mod 2)`.
fn vt_syndrome(symbols: &[u8]) -> u64 {
    symbols
        .iter()
        .enumerate()
        .map(|(i, &s)| (i as u64 + 1) * (s & 1) as u64)
        .sum()
}

fn half_sum(symbols: &[u8]) -> u64 {
    symbols.iter().map(|&s| (s / 2) as u64).sum()
}

fn check_a(n: usize, a: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidParameter("VT codes need n >= 1".into()));
    }
    if a > n as u64 {
        return Err(Error::InvalidParameter(format!("residue a={a} outside 0..={n}")));
    }
    Ok(())
}

/// The Varshamov-Tenengolts code `{c ∈ {0,1}^n : Σ i·c_i ≡ a (mod n+1)}`.
/// Each class covers `{0,1}^{n-1}` under one deletion.
pub fn vt_code(n: usize, a: u64) -> Result<Code> {
    check_a(n, a)?;
    residue_code(Alphabet::BINARY, n, a, 0)
}

/// Non-binary extension: `Σ i·(c_i mod 2) ≡ a (mod n+1)` and
/// `Σ ⌊c_i / 2⌋ ≡ b (mod ⌊q/2⌋)`. Covers `Σ_q^{n-1}` under one deletion;
/// for `q = 2` it is the VT code.
pub fn nbvt_code(q: u32, n: usize, a: u64, b: u64) -> Result<Code> {
    let alphabet = Alphabet::new(q)?;
    check_a(n, a)?;
    check_b(q, b)?;
    residue_code(alphabet, n, a, b)
}

fn check_b(q: u32, b: u64) -> Result<()> {
    let half = (q / 2) as u64;
    if b >= half {
        return Err(Error::InvalidParameter(format!("residue b={b} outside 0..{half}")));
    }
    Ok(())
}

fn residue_code(alphabet: Alphabet, n: usize, a: u64, b: u64) -> Result<Code> {
    let space = WordSpace::new(alphabet, n)?;
    let modulus = n as u64 + 1;
    let half = (alphabet.size() / 2) as u64;
    let words = space.iter().filter(|w| {
        let s = w.symbols();
        vt_syndrome(s) % modulus == a && half_sum(s) % half == b
    });
    let code = Code::from_words(alphabet, n, words)?;
    ensure_covering(&code, 1, Direction::Deletion)?;
    Ok(code)
}

/// First `(position, bit)` (0-based position, position-major order) whose
/// insertion into the binary word `bits` lands in `C_VT(|bits|+1; a)`.
fn vt_insertion(bits: &[u8], a: u64) -> (usize, u8) {
    let n = bits.len() + 1;
    let modulus = n as u64 + 1;
    // syndrome of the extended word: symbols left of `pos` keep their
    // weight, symbols right of it shift by one
    let total_ones: u64 = bits.iter().map(|&b| b as u64).sum();
    let mut left = 0u64; // Σ i·b_i over the prefix, 1-based
    let mut ones_right = total_ones;
    let mut right = vt_syndrome(bits); // Σ i·b_i over the suffix, unshifted
    for pos in 0..n {
        for bit in 0..2u8 {
            let syn = left + bit as u64 * (pos as u64 + 1) + right + ones_right;
            if syn % modulus == a {
                return (pos, bit);
            }
        }
        if pos < bits.len() {
            let v = bits[pos] as u64;
            left += v * (pos as u64 + 1);
            right -= v * (pos as u64 + 1);
            ones_right -= v;
        }
    }
    unreachable!("VT codes cover every word of length n-1 under one deletion")
}

/// The VT codeword of length `|y|+1` and residue `a` obtained from the
/// first valid single-bit insertion into `y` (by position, then bit).
pub fn vt_covering_witness(y: &Word, a: u64) -> Result<Word> {
    if y.q() != 2 {
        return Err(Error::InvalidParameter("VT witness needs a binary word".into()));
    }
    check_a(y.len() + 1, a)?;
    let (pos, bit) = vt_insertion(y.symbols(), a);
    let mut c = y.symbols().to_vec();
    c.insert(pos, bit);
    Ok(Word::from_raw(y.alphabet(), c))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbvtWitness {
    /// 1-based insertion position `i`, `1 ≤ i ≤ n`.
    pub position: usize,
    pub symbol: u8,
    pub codeword: Word,
}

/// A codeword of `C_NBVT^q(|y|+1; a, b)` covering `y` under one deletion.
///
/// The VT witness of the parity projection `(y)_2` fixes the position and
/// the parity `d` of the inserted symbol; its half-value `s` then repairs
/// the second residue, giving the symbol `2s + d`.
pub fn nbvt_covering_witness(y: &Word, a: u64, b: u64) -> Result<NbvtWitness> {
    let q = y.q() as u32;
    let n = y.len() + 1;
    check_a(n, a)?;
    check_b(q, b)?;
    let (pos, d) = vt_insertion(y.parity_projection().symbols(), a);
    let half = (q / 2) as u64;
    let s = (b + half - half_sum(y.symbols()) % half) % half;
    let symbol = (2 * s) as u8 + d;
    let mut c = y.symbols().to_vec();
    c.insert(pos, symbol);
    Ok(NbvtWitness {
        position: pos + 1,
        symbol,
        codeword: Word::from_raw(y.alphabet(), c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balls::deletion_ball;

    fn strings(c: &Code) -> Vec<String> {
        c.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn vt_examples() {
        assert_eq!(strings(&vt_code(4, 1).unwrap()), ["0101", "1000", "1110"]);
        assert_eq!(strings(&vt_code(2, 1).unwrap()), ["10"]);
        let total: usize = (0..=4).map(|a| vt_code(4, a).unwrap().len()).sum();
        assert_eq!(total, 16);
        assert!(vt_code(4, 5).is_err());
        assert!(vt_code(0, 0).is_err());
    }

    #[test]
    fn vt_witness_examples() {
        let w = |s: &str| s.parse::<Word>().unwrap();
        assert_eq!(vt_covering_witness(&w("000"), 1).unwrap(), w("1000"));
        assert_eq!(vt_covering_witness(&w("101"), 1).unwrap(), w("0101"));
        assert_eq!(vt_covering_witness(&w("1"), 1).unwrap(), w("10"));
    }

    #[test]
    fn vt_witness_matches_scan() {
        for n in 1..=9usize {
            let space = WordSpace::new(Alphabet::BINARY, n - 1).unwrap();
            for a in 0..=n as u64 {
                for y in space.iter() {
                    let c = vt_covering_witness(&y, a).unwrap();
                    // brute force: first valid (pos, bit)
                    let mut expect = None;
                    'scan: for pos in 0..n {
                        for bit in 0..2u8 {
                            let mut s = y.symbols().to_vec();
                            s.insert(pos, bit);
                            if vt_syndrome(&s) % (n as u64 + 1) == a {
                                expect = Some(s);
                                break 'scan;
                            }
                        }
                    }
                    assert_eq!(c.symbols(), expect.unwrap().as_slice());
                }
            }
        }
    }

    #[test]
    fn nbvt_witness_example() {
        let q4 = Alphabet::new(4).unwrap();
        let y = Word::parse("3", q4).unwrap();
        let wit = nbvt_covering_witness(&y, 0, 0).unwrap();
        assert_eq!(wit.position, 1);
        assert_eq!(wit.symbol, 3);
        assert_eq!(wit.codeword, Word::parse("33", q4).unwrap());
        assert!(deletion_ball(&wit.codeword, 1).unwrap().contains(&y));
    }

    #[test]
    fn nbvt_binary_is_vt() {
        assert_eq!(nbvt_code(2, 4, 1, 0).unwrap(), vt_code(4, 1).unwrap());
        assert!(nbvt_code(2, 4, 1, 1).is_err());
        let y: Word = "000".parse().unwrap();
        assert_eq!(nbvt_covering_witness(&y, 1, 0).unwrap().codeword, vt_covering_witness(&y, 1).unwrap());
    }

    #[test]
    fn nbvt_witness_for_all_residues() {
        let q4 = Alphabet::new(4).unwrap();
        let y = Word::parse("01", q4).unwrap();
        for a in 0..=3 {
            for b in 0..2 {
                let wit = nbvt_covering_witness(&y, a, b).unwrap();
                let c = wit.codeword.symbols();
                assert_eq!(vt_syndrome(c) % 4, a);
                assert_eq!(half_sum(c) % 2, b);
                assert!(deletion_ball(&wit.codeword, 1).unwrap().contains(&y));
            }
        }
    }
}
