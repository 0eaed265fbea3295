use serde::{Deserialize, Serialize};

use super::HopfError;

/// A finite group by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupDoc", into = "GroupDoc")]
pub struct GroupTable {
    pub name: String,
    /// Element names, index-aligned with the table.
    pub elements: Vec<String>,
    /// `mul[a][b]` is the index of `ab`.
    pub mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

/// Wire form of a group table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub name: String,
    pub elements: Vec<String>,
    pub mul: Vec<Vec<usize>>,
}

impl TryFrom<GroupDoc> for GroupTable {
    type Error = HopfError;

    fn try_from(doc: GroupDoc) -> Result<Self, Self::Error> {
        GroupTable::new(doc.name, doc.elements, doc.mul)
    }
}

impl From<GroupTable> for GroupDoc {
    fn from(g: GroupTable) -> Self {
        GroupDoc {
            name: g.name,
            elements: g.elements,
            mul: g.mul,
        }
    }
}

impl GroupTable {
    /// Validates associativity, identity and inverses.
    pub fn new(
        name: impl Into<String>,
        elements: Vec<String>,
        mul: Vec<Vec<usize>>,
    ) -> Result<Self, HopfError> {
        let n = elements.len();
        let bad = |msg: String| HopfError::InvalidGroup(msg);
        if n == 0 {
            return Err(bad("empty group".into()));
        }
        if mul.len() != n
            || mul
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(bad("table is not n×n with entries in 0..n".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(bad(format!("associativity fails on ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a))
            .ok_or_else(|| bad("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| mul[a][b] == identity && mul[b][a] == identity)
                .ok_or_else(|| bad(format!("element {a} has no inverse")))?;
            inverse.push(inv);
        }
        Ok(GroupTable {
            name: name.into(),
            elements,
            mul,
            identity,
            inverse,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        let elements = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        GroupTable::new(format!("Z{n}"), elements, mul).expect("cyclic group")
    }

    /// The symmetric group on three letters, elements as permutations in
    /// lexicographic order, `(στ)(x) = σ(τ(x))`.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let mul = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index([s[t[0]], s[t[1]], s[t[2]]]))
                    .collect()
            })
            .collect();
        let elements = perms
            .iter()
            .map(|p| format!("[{}{}{}]", p[0] + 1, p[1] + 1, p[2] + 1))
            .collect();
        GroupTable::new("S3", elements, mul).expect("symmetric group")
    }

    /// Look up a catalog group by name: `Z1`, `Z2`, ..., `S3`.
    pub fn by_name(name: &str) -> Result<Self, HopfError> {
        match name {
            "S3" => Ok(GroupTable::symmetric3()),
            _ => name
                .strip_prefix('Z')
                .or_else(|| name.strip_prefix('C'))
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| (1..=12).contains(&n))
                .map(GroupTable::cyclic)
                .ok_or_else(|| HopfError::InvalidGroup(format!("unknown group `{name}`"))),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    /// `a^k`.
    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul[acc][a])
    }

    pub fn element_order(&self, a: usize) -> usize {
        (1..=self.order())
            .find(|&k| self.power(a, k) == self.identity)
            .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_groups() {
        let s3 = GroupTable::symmetric3();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.identity(), 0);
        for a in 0..6 {
            assert_eq!(s3.product(a, s3.inverse(a)), 0);
        }
        assert!(GroupTable::cyclic(3).is_abelian());
        assert_eq!(GroupTable::by_name("Z1").unwrap().order(), 1);
        assert!(GroupTable::by_name("A5").is_err());
    }

    #[test]
    fn broken_tables_are_rejected() {
        let els = vec!["a".to_string(), "b".to_string()];
        assert!(GroupTable::new("bad", els.clone(), vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(GroupTable::new("bad", els, vec![vec![0, 0], vec![0, 0]]).is_err());
    }
}
