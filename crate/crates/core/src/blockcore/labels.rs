use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Letter {
        Letter::ALL[i % 3]
    }

    /// `A → B → C → A`.
    pub fn next(self) -> Letter {
        Letter::from_index(self.index() + 1)
    }
}

/// One of the standard vertices `A_j`, `B_j`, `C_j` (index is 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabelABC {
    pub letter: Letter,
    pub index: usize,
}

impl VertexLabelABC {
    pub fn new(letter: Letter, index: usize) -> Self {
        VertexLabelABC { letter, index }
    }

    /// Position in the table `A_1..A_k, B_1..B_k, C_1..C_k`.
    pub fn id(self, k: usize) -> usize {
        self.letter.index() * k + self.index - 1
    }

    pub fn from_id(id: usize, k: usize) -> Self {
        VertexLabelABC {
            letter: Letter::from_index(id / k),
            index: id % k + 1,
        }
    }

    pub fn sigma(self) -> Self {
        VertexLabelABC {
            letter: self.letter.next(),
            index: self.index,
        }
    }
}

impl fmt::Display for VertexLabelABC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.letter, self.index)
    }
}

impl FromStr for VertexLabelABC {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("bad vertex label {s:?}"));
        let mut ch = s.chars();
        let letter = match ch.next() {
            Some('A') => Letter::A,
            Some('B') => Letter::B,
            Some('C') => Letter::C,
            _ => return Err(bad()),
        };
        let index: usize = ch.as_str().parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(VertexLabelABC { letter, index })
    }
}

impl Serialize for VertexLabelABC {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for VertexLabelABC {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The two letters kept at one index of a good set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pair {
    AB,
    BC,
    CA,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::AB, Pair::BC, Pair::CA];

    pub fn letters(self) -> [Letter; 2] {
        match self {
            Pair::AB => [Letter::A, Letter::B],
            Pair::BC => [Letter::B, Letter::C],
            Pair::CA => [Letter::C, Letter::A],
        }
    }

    pub fn missing(self) -> Letter {
        match self {
            Pair::AB => Letter::C,
            Pair::BC => Letter::A,
            Pair::CA => Letter::B,
        }
    }

    pub fn contains(self, l: Letter) -> bool {
        self.missing() != l
    }

    pub fn without(l: Letter) -> Pair {
        match l {
            Letter::C => Pair::AB,
            Letter::A => Pair::BC,
            Letter::B => Pair::CA,
        }
    }

    pub fn sigma(self) -> Pair {
        match self {
            Pair::AB => Pair::BC,
            Pair::BC => Pair::CA,
            Pair::CA => Pair::AB,
        }
    }
}
