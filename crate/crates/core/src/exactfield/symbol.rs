use std::fmt;

/// Number of symbols in the fixed variable list.
pub const NVARS: usize = 6;

/// The fixed, ordered symbol list every polynomial is written over.
///
/// `Hbar` is the deformation parameter, `U`/`V` are spectral parameters,
/// `A`/`B` are evaluation points and `Lambda` is the auxiliary scaling symbol
/// used by homogeneity checks. The declaration order is the variable order of
/// the graded-lexicographic monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Hbar,
    U,
    V,
    A,
    B,
    Lambda,
}

impl Symbol {
    pub const ALL: [Symbol; NVARS] = [
        Symbol::Hbar,
        Symbol::U,
        Symbol::V,
        Symbol::A,
        Symbol::B,
        Symbol::Lambda,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::Hbar => "hbar",
            Symbol::U => "u",
            Symbol::V => "v",
            Symbol::A => "a",
            Symbol::B => "b",
            Symbol::Lambda => "lambda",
        }
    }

    pub fn parse(s: &str) -> Option<Symbol> {
        Symbol::ALL.into_iter().find(|x| x.name() == s)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
