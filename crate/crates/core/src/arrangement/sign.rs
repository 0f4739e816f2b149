use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::ArrangementError;

/// Variant order matches the ASCII order of `+`, `-`, `0`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            '0' => Some(Sign::Zero),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }

    pub fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn of<T: PartialOrd + Default>(x: &T) -> Sign {
        let zero = T::default();
        if *x > zero {
            Sign::Plus
        } else if *x < zero {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn zero(n: usize) -> Self {
        SignVector(vec![Sign::Zero; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn neg(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.neg()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&s| s == Sign::Zero)
    }

    pub fn is_tope(&self) -> bool {
        self.0.iter().all(|&s| s != Sign::Zero)
    }

    /// Indices of the nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.0[i] != Sign::Zero)
            .collect()
    }

    /// Conformal order: every nonzero entry of `self` agrees with `other`.
    pub fn is_face_of(&self, other: &SignVector) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&a, &b)| a == Sign::Zero || a == b)
    }

    /// X∘Y: X where nonzero, Y elsewhere.
    pub fn compose(&self, other: &SignVector) -> SignVector {
        SignVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| if a == Sign::Zero { b } else { a })
                .collect(),
        )
    }

    /// Elements on which the two vectors have opposite nonzero signs.
    pub fn separation(&self, other: &SignVector) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.0[i] != Sign::Zero && self.0[i] == other.0[i].neg())
            .collect()
    }

    pub fn zeros(&self) -> usize {
        self.0.iter().filter(|&&s| s == Sign::Zero).count()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = char;

    fn from_str(s: &str) -> Result<Self, char> {
        s.chars()
            .map(|c| Sign::from_char(c).ok_or(c))
            .collect::<Result<Vec<_>, _>>()
            .map(SignVector)
    }
}

/// The covectors of an oriented matroid, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    n: usize,
    covectors: Vec<SignVector>,
}

impl FaceLattice {
    /// Validates negation closure and the presence of the zero vector.
    pub fn new(
        n: usize,
        vectors: impl IntoIterator<Item = SignVector>,
    ) -> Result<Self, ArrangementError> {
        let set: BTreeSet<SignVector> = vectors.into_iter().collect();
        if let Some(bad) = set.iter().find(|x| x.len() != n) {
            return Err(ArrangementError::RaggedLengths {
                expected: n,
                found: bad.len(),
            });
        }
        if let Some(missing) = set.iter().find(|x| !set.contains(&x.neg())) {
            return Err(ArrangementError::NotCentrallySymmetric(missing.clone()));
        }
        if !set.contains(&SignVector::zero(n)) {
            return Err(ArrangementError::MissingZero);
        }
        Ok(FaceLattice {
            n,
            covectors: set.into_iter().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn covectors(&self) -> &[SignVector] {
        &self.covectors
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    pub fn contains(&self, x: &SignVector) -> bool {
        self.covectors.binary_search(x).is_ok()
    }

    pub fn position(&self, x: &SignVector) -> Option<usize> {
        self.covectors.binary_search(x).ok()
    }

    pub fn topes(&self) -> Vec<&SignVector> {
        self.covectors.iter().filter(|x| x.is_tope()).collect()
    }

    /// One sign string per line.
    pub fn to_text(&self) -> String {
        self.covectors.iter().map(|x| format!("{x}\n")).collect()
    }
}

/// Parses sign strings, one per line, `#` comments allowed.
pub fn parse_sign_vectors(text: &str) -> Result<Vec<SignVector>, ArrangementError> {
    let mut out: Vec<SignVector> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let x: SignVector = line.parse().map_err(|ch| ArrangementError::BadSignChar {
            line: lineno + 1,
            ch,
        })?;
        if let Some(first) = out.first() {
            if first.len() != x.len() {
                return Err(ArrangementError::RaggedLengths {
                    expected: first.len(),
                    found: x.len(),
                });
            }
        }
        out.push(x);
    }
    Ok(out)
}

pub fn load_covectors(text: &str) -> Result<FaceLattice, ArrangementError> {
    let vectors = parse_sign_vectors(text)?;
    let n = vectors
        .first()
        .map(|x| x.len())
        .ok_or(ArrangementError::Empty)?;
    FaceLattice::new(n, vectors)
}

pub fn save_covectors(fl: &FaceLattice) -> String {
    fl.to_text()
}

/// First vector whose negation is missing, if any.
pub fn check_symmetric(vectors: &[SignVector]) -> Option<SignVector> {
    let set: BTreeSet<&SignVector> = vectors.iter().collect();
    vectors.iter().find(|x| !set.contains(&x.neg())).cloned()
}
