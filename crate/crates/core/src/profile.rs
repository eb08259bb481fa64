//! Signatures, factors, profiles and profile sequences.
//!
//! A [`ProfileSequence`] is stored oldest-first. The suffix order reads
//! "`p` extends `q` backwards in time": `p.is_extension_of(&q)` holds when `q`
//! is obtained from `p` by dropping some of its oldest profiles.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One of the twelve reaction signatures.
///
/// The linear chain runs `-!!! < -!! < -! < - < 0 < + < +! < +!! < +!!!`;
/// the ambivalent chain runs `pm- < pm < pm+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Signature {
    Minus3,
    Minus2,
    Minus1,
    Minus,
    Zero,
    Plus,
    Plus1,
    Plus2,
    Plus3,
    /// `±` with rejection bias.
    PmLow,
    Pm,
    /// `±` with approval bias.
    PmHigh,
}

impl Signature {
    pub const ALL: [Signature; 12] = [
        Signature::Minus3,
        Signature::Minus2,
        Signature::Minus1,
        Signature::Minus,
        Signature::Zero,
        Signature::Plus,
        Signature::Plus1,
        Signature::Plus2,
        Signature::Plus3,
        Signature::PmLow,
        Signature::Pm,
        Signature::PmHigh,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn token(self) -> &'static str {
        match self {
            Signature::Minus3 => "-!!!",
            Signature::Minus2 => "-!!",
            Signature::Minus1 => "-!",
            Signature::Minus => "-",
            Signature::Zero => "0",
            Signature::Plus => "+",
            Signature::Plus1 => "+!",
            Signature::Plus2 => "+!!",
            Signature::Plus3 => "+!!!",
            Signature::PmLow => "pm-",
            Signature::Pm => "pm",
            Signature::PmHigh => "pm+",
        }
    }

    /// Chain id and rank within the chain.
    fn chain_position(self) -> (u8, u8) {
        let i = self as u8;
        if i <= Signature::Plus3 as u8 {
            (0, i)
        } else {
            (1, i - Signature::PmLow as u8)
        }
    }

    /// The order of the signature Hasse diagram.
    pub fn leq(self, other: Signature) -> bool {
        let (ca, ra) = self.chain_position();
        let (cb, rb) = other.chain_position();
        ca == cb && ra <= rb
    }

    /// Strips quanta and bias marks.
    pub fn modulo_quanta(self) -> PlainSignature {
        match self {
            Signature::Minus3 | Signature::Minus2 | Signature::Minus1 | Signature::Minus => {
                PlainSignature::Minus
            }
            Signature::Zero => PlainSignature::Zero,
            Signature::Plus | Signature::Plus1 | Signature::Plus2 | Signature::Plus3 => {
                PlainSignature::Plus
            }
            Signature::PmLow | Signature::Pm | Signature::PmHigh => PlainSignature::Pm,
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Signature {
    type Err = UnknownToken;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Signature::ALL
            .iter()
            .copied()
            .find(|sig| sig.token() == s)
            .ok_or_else(|| UnknownToken(s.to_owned()))
    }
}

impl TryFrom<String> for Signature {
    type Error = UnknownToken;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Signature> for String {
    fn from(s: Signature) -> String {
        s.token().to_owned()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown token `{0}`")]
pub struct UnknownToken(pub String);

/// A signature without quanta: one of `0`, `+`, `-`, `pm`.
///
/// The discriminant is the row/column code used by implication tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum PlainSignature {
    Zero = 0,
    Plus = 1,
    Minus = 2,
    Pm = 3,
}

impl PlainSignature {
    pub const ALL: [PlainSignature; 4] = [
        PlainSignature::Zero,
        PlainSignature::Plus,
        PlainSignature::Minus,
        PlainSignature::Pm,
    ];

    pub fn code(self) -> usize {
        self as usize
    }

    pub fn from_code(code: usize) -> Option<PlainSignature> {
        PlainSignature::ALL.get(code).copied()
    }

    /// The three other plain signatures.
    pub fn co_set(self) -> [PlainSignature; 3] {
        let mut out = [PlainSignature::Zero; 3];
        let mut n = 0;
        for s in PlainSignature::ALL {
            if s != self {
                out[n] = s;
                n += 1;
            }
        }
        out
    }

    pub fn to_signature(self) -> Signature {
        match self {
            PlainSignature::Zero => Signature::Zero,
            PlainSignature::Plus => Signature::Plus,
            PlainSignature::Minus => Signature::Minus,
            PlainSignature::Pm => Signature::Pm,
        }
    }

    pub fn token(self) -> &'static str {
        self.to_signature().token()
    }
}

impl fmt::Display for PlainSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for PlainSignature {
    type Err = UnknownToken;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PlainSignature::ALL
            .iter()
            .copied()
            .find(|sig| sig.token() == s)
            .ok_or_else(|| UnknownToken(s.to_owned()))
    }
}

impl TryFrom<String> for PlainSignature {
    type Error = UnknownToken;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<PlainSignature> for String {
    fn from(s: PlainSignature) -> String {
        s.token().to_owned()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vector {
    S,
    P,
    Sch,
    C,
}

impl Vector {
    pub fn name(self) -> &'static str {
        match self {
            Vector::S => "S",
            Vector::P => "P",
            Vector::Sch => "Sch",
            Vector::C => "C",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Factor {
    H,
    S,
    E,
    Hy,
    K,
    P,
    D,
    M,
}

impl Factor {
    pub const ALL: [Factor; 8] = [
        Factor::H,
        Factor::S,
        Factor::E,
        Factor::Hy,
        Factor::K,
        Factor::P,
        Factor::D,
        Factor::M,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Factor> {
        Factor::ALL.get(i).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            Factor::H => "h",
            Factor::S => "s",
            Factor::E => "e",
            Factor::Hy => "hy",
            Factor::K => "k",
            Factor::P => "p",
            Factor::D => "d",
            Factor::M => "m",
        }
    }

    pub fn vector(self) -> Vector {
        match self {
            Factor::H | Factor::S => Vector::S,
            Factor::E | Factor::Hy => Vector::P,
            Factor::K | Factor::P => Vector::Sch,
            Factor::D | Factor::M => Vector::C,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Factor {
    type Err = UnknownToken;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Factor::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| UnknownToken(s.to_owned()))
    }
}

impl TryFrom<String> for Factor {
    type Error = UnknownToken;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Factor> for String {
    fn from(f: Factor) -> String {
        f.name().to_owned()
    }
}

/// One signature per factor, in factor order `h s e hy k p d m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile([Signature; 8]);

impl Profile {
    /// `h+ s+ e- hy- k- p- d+ m+`
    pub const NORM: Profile = Profile([
        Signature::Plus,
        Signature::Plus,
        Signature::Minus,
        Signature::Minus,
        Signature::Minus,
        Signature::Minus,
        Signature::Plus,
        Signature::Plus,
    ]);

    pub const fn new(signatures: [Signature; 8]) -> Self {
        Profile(signatures)
    }

    pub fn get(&self, factor: Factor) -> Signature {
        self.0[factor.index()]
    }

    pub fn plain(&self, factor: Factor) -> PlainSignature {
        self.get(factor).modulo_quanta()
    }

    pub fn signatures(&self) -> &[Signature; 8] {
        &self.0
    }

    pub fn with(mut self, factor: Factor, sig: Signature) -> Self {
        self.0[factor.index()] = sig;
        self
    }

    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Self, ParseError> {
        if tokens.len() != 8 {
            return Err(ParseError::Arity {
                line: 1,
                found: tokens.len(),
            });
        }
        let mut sigs = [Signature::Zero; 8];
        for (slot, tok) in sigs.iter_mut().zip(tokens) {
            *slot = tok.as_ref().parse().map_err(|_| ParseError::Token {
                line: 1,
                token: tok.as_ref().to_owned(),
            })?;
        }
        Ok(Profile(sigs))
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl Serialize for Profile {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Profile {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let tokens: Vec<String> = Vec::deserialize(deserializer)?;
        Profile::from_tokens(&tokens).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input: no profiles found")]
    Empty,
    #[error("line {line}: unknown signature token `{token}`")]
    Token { line: usize, token: String },
    #[error("line {line}: expected 8 signatures, found {found}")]
    Arity { line: usize, found: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
}

impl ParseError {
    fn at_line(self, line: usize) -> Self {
        match self {
            ParseError::Token { token, .. } => ParseError::Token { line, token },
            ParseError::Arity { found, .. } => ParseError::Arity { line, found },
            other => other,
        }
    }
}

/// A nonempty, oldest-first sequence of profiles.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProfileSequence(Vec<Profile>);

impl ProfileSequence {
    pub fn new(profiles: Vec<Profile>) -> Option<Self> {
        if profiles.is_empty() {
            None
        } else {
            Some(ProfileSequence(profiles))
        }
    }

    pub fn single(profile: Profile) -> Self {
        ProfileSequence(vec![profile])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn profiles(&self) -> &[Profile] {
        &self.0
    }

    /// The oldest profile.
    pub fn head(&self) -> &Profile {
        &self.0[0]
    }

    pub fn concat(&self, suffix: &ProfileSequence) -> ProfileSequence {
        let mut v = Vec::with_capacity(self.len() + suffix.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&suffix.0);
        ProfileSequence(v)
    }

    /// `self == other` or `self = r ++ other` for some nonempty `r`.
    pub fn is_extension_of(&self, other: &ProfileSequence) -> bool {
        self.0.ends_with(&other.0)
    }

    /// All suffixes, longest (the sequence itself) first.
    pub fn suffixes(&self) -> Vec<ProfileSequence> {
        (0..self.len())
            .map(|i| ProfileSequence(self.0[i..].to_vec()))
            .collect()
    }

    /// Drops the `k` oldest profiles, or `None` if that would leave nothing.
    pub fn drop_oldest(&self, k: usize) -> Option<ProfileSequence> {
        if k < self.len() {
            Some(ProfileSequence(self.0[k..].to_vec()))
        } else {
            None
        }
    }

    pub fn reversed(&self) -> ProfileSequence {
        let mut v = self.0.clone();
        v.reverse();
        ProfileSequence(v)
    }

    pub fn map_profiles(&self, f: impl FnMut(&Profile) -> Profile) -> ProfileSequence {
        ProfileSequence(self.0.iter().map(f).collect())
    }

    /// Text form, one profile per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.0 {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("profiles serialize")
    }
}

impl Serialize for ProfileSequence {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ProfileSequence {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v: Vec<Profile> = Vec::deserialize(deserializer)?;
        ProfileSequence::new(v).ok_or_else(|| serde::de::Error::custom(ParseError::Empty))
    }
}

/// Parses the line-oriented text format.
///
/// `#` starts a comment, blank lines are skipped, and every data line holds
/// exactly eight whitespace-separated signature tokens.
pub fn parse_sequence(text: &str) -> Result<ProfileSequence, ParseError> {
    let mut profiles = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        profiles.push(Profile::from_tokens(&tokens).map_err(|e| e.at_line(i + 1))?);
    }
    ProfileSequence::new(profiles).ok_or(ParseError::Empty)
}

/// Parses the JSON form: an array of arrays of eight signature tokens.
pub fn parse_sequence_json(text: &str) -> Result<ProfileSequence, ParseError> {
    let rows: Vec<Vec<String>> =
        serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let mut profiles = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        profiles.push(Profile::from_tokens(row).map_err(|e| e.at_line(i + 1))?);
    }
    ProfileSequence::new(profiles).ok_or(ParseError::Empty)
}

/// Dispatches on the first non-blank character: `[` selects JSON.
pub fn parse_sequence_any(text: &str) -> Result<ProfileSequence, ParseError> {
    if text.trim_start().starts_with('[') {
        parse_sequence_json(text)
    } else {
        parse_sequence(text)
    }
}
