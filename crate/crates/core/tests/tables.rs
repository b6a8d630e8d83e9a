use bposit::bposit::tables::{one_hot_from_xored, regime_size_of, regime_string_of};

const RS: u32 = 6;

fn bits(s: &str) -> u32 {
    u32::from_str_radix(s, 2).unwrap()
}

/// Every 5-bit value matching a pattern such as `01XXX`.
fn expand(pattern: &str) -> Vec<u64> {
    (0..32u64)
        .filter(|x| {
            pattern.chars().enumerate().all(|(i, c)| {
                let bit = (x >> (4 - i)) & 1;
                c == 'X' || bit == c.to_digit(2).unwrap() as u64
            })
        })
        .collect()
}

#[test]
fn one_hot_size_rows() {
    let rows = [
        ("1XXXX", "100000"),
        ("01XXX", "010000"),
        ("001XX", "001000"),
        ("0001X", "000100"),
        ("00001", "000010"),
        ("00000", "000001"),
    ];
    let mut covered = 0;
    for (input, one_hot) in rows {
        for x in expand(input) {
            assert_eq!(one_hot_from_xored(x, RS).to_string(), one_hot, "input {x:05b}");
            covered += 1;
        }
    }
    assert_eq!(covered, 32);
}

#[test]
fn regime_size_rows() {
    let rows = [
        ("0000", "1111", 2),
        ("0001", "1110", 3),
        ("0010", "1101", 4),
        ("0011", "1100", 5),
        ("0100", "1011", 6),
        ("0101", "1010", 6),
    ];
    for (a, b, size) in rows {
        assert_eq!(regime_size_of(bits(a), RS).unwrap(), size, "{a}");
        assert_eq!(regime_size_of(bits(b), RS).unwrap(), size, "{b}");
    }
}

#[test]
fn regime_string_rows() {
    let rows = [
        ("000", 2, "100000", "0100000"),
        ("001", 3, "010000", "0010000"),
        ("010", 4, "001000", "0001000"),
        ("011", 5, "000100", "0000100"),
        ("100", 6, "000010", "0000010"),
        ("101", 6, "000001", "0000001"),
    ];
    for (folded, size, decoder, intermediate) in rows {
        // A regime value and its one's complement share a row.
        for code in [bits(folded), bits(folded) ^ 0b1111] {
            for sign in [false, true] {
                let s = regime_string_of(code, sign, RS).unwrap();
                assert_eq!(s.folded, bits(folded));
                assert_eq!(s.width, size, "code {code:04b}");
                assert_eq!(s.decoder_string(), decoder, "code {code:04b}");
                assert_eq!(s.intermediate_string(), intermediate, "code {code:04b}");
                assert_eq!(s.bits_string().len(), size as usize);
            }
        }
    }
}
