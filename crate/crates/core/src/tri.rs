use serde::Serialize;

/// Membership outcome; `Boundary` covers both exact boundary hits and undecided cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    In,
    Out,
    Boundary,
}

impl Membership {
    pub fn is_in(self) -> bool {
        self == Membership::In
    }

    pub fn is_out(self) -> bool {
        self == Membership::Out
    }

    /// Intersection of two conditions.
    pub fn and(self, o: Membership) -> Membership {
        match (self, o) {
            (Membership::Out, _) | (_, Membership::Out) => Membership::Out,
            (Membership::In, Membership::In) => Membership::In,
            _ => Membership::Boundary,
        }
    }

    /// Union of two conditions.
    pub fn or(self, o: Membership) -> Membership {
        match (self, o) {
            (Membership::In, _) | (_, Membership::In) => Membership::In,
            (Membership::Out, Membership::Out) => Membership::Out,
            _ => Membership::Boundary,
        }
    }

    /// Complement; `Boundary` stays undecided.
    pub fn not(self) -> Membership {
        match self {
            Membership::In => Membership::Out,
            Membership::Out => Membership::In,
            Membership::Boundary => Membership::Boundary,
        }
    }
}

/// Three-valued truth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    True,
    False,
    Uncertain,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }

    pub fn and(self, o: Tri) -> Tri {
        match (self, o) {
            (Tri::False, _) | (_, Tri::False) => Tri::False,
            (Tri::True, Tri::True) => Tri::True,
            _ => Tri::Uncertain,
        }
    }

    pub fn or(self, o: Tri) -> Tri {
        match (self, o) {
            (Tri::True, _) | (_, Tri::True) => Tri::True,
            (Tri::False, Tri::False) => Tri::False,
            _ => Tri::Uncertain,
        }
    }
}
