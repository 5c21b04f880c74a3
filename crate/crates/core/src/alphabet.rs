use std::fmt;
use std::str::FromStr;

/// The three symbol sets used by graphs and patterns in this crate.
///
/// Symbol order is fixed and part of the file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `b`, `e`, `0`, `1`
    Base4,
    /// `0`, `1`
    Binary,
    /// `b`, `e`, `A`, `B`, `x`, `y`
    Zigzag6,
}

impl Alphabet {
    pub fn symbols(self) -> &'static [u8] {
        match self {
            Alphabet::Base4 => b"be01",
            Alphabet::Binary => b"01",
            Alphabet::Zigzag6 => b"beABxy",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Alphabet::Base4 => "base4",
            Alphabet::Binary => "binary",
            Alphabet::Zigzag6 => "zigzag6",
        }
    }

    pub fn contains(self, symbol: u8) -> bool {
        self.symbols().contains(&symbol)
    }

    pub fn size(self) -> usize {
        self.symbols().len()
    }

    /// First symbol of `s` that does not belong to the alphabet.
    pub fn first_foreign(self, s: &[u8]) -> Option<u8> {
        s.iter().copied().find(|&c| !self.contains(c))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Alphabet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "base4" => Ok(Alphabet::Base4),
            "binary" => Ok(Alphabet::Binary),
            "zigzag6" => Ok(Alphabet::Zigzag6),
            other => Err(format!("unknown alphabet '{other}'")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_sets_are_fixed() {
        assert_eq!(Alphabet::Base4.symbols(), b"be01");
        assert_eq!(Alphabet::Binary.symbols(), b"01");
        assert_eq!(Alphabet::Zigzag6.symbols(), b"beABxy");
        assert_eq!(Alphabet::Zigzag6.size(), 6);
    }

    #[test]
    fn names_round_trip() {
        for a in [Alphabet::Base4, Alphabet::Binary, Alphabet::Zigzag6] {
            assert_eq!(a.name().parse::<Alphabet>().unwrap(), a);
        }
        assert!("base5".parse::<Alphabet>().is_err());
    }

    #[test]
    fn foreign_symbol_detection() {
        assert_eq!(Alphabet::Binary.first_foreign(b"0110"), None);
        assert_eq!(Alphabet::Binary.first_foreign(b"01b0"), Some(b'b'));
    }
}
