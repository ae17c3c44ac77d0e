//! The fixed set of results a certificate step may cite.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Citation {
    FieldHypotheses,
    FrobeniusCertificate,
    IsogenyFibre,
    KrausPotMult,
    KrausOrdinary,
    KrausSupersingular,
    ExceptionalImages,
    ResidualLifting,
    LocalExclusion,
    SemistableAtSeven,
    SkinnerWiles,
    ModSevenDispatch,
    Thorne,
    BorelOrders,
    InertiaIndependence,
    SemistableTwist,
    Freitas,
    TwistInvariance,
    CmBaseChange,
}

impl Citation {
    pub const ALL: [Citation; 19] = [
        Citation::FieldHypotheses,
        Citation::FrobeniusCertificate,
        Citation::IsogenyFibre,
        Citation::KrausPotMult,
        Citation::KrausOrdinary,
        Citation::KrausSupersingular,
        Citation::ExceptionalImages,
        Citation::ResidualLifting,
        Citation::LocalExclusion,
        Citation::SemistableAtSeven,
        Citation::SkinnerWiles,
        Citation::ModSevenDispatch,
        Citation::Thorne,
        Citation::BorelOrders,
        Citation::InertiaIndependence,
        Citation::SemistableTwist,
        Citation::Freitas,
        Citation::TwistInvariance,
        Citation::CmBaseChange,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Citation::FieldHypotheses => "field hypotheses",
            Citation::FrobeniusCertificate => "Frobenius characteristic polynomial",
            Citation::IsogenyFibre => "X0(p) j-map fibre",
            Citation::KrausPotMult => "Kraus, Prop. 10",
            Citation::KrausOrdinary => "Kraus, Prop. 1",
            Citation::KrausSupersingular => "Kraus, Prop. 2",
            Citation::ExceptionalImages => "Freitas-Le Hung-Siksek, Prop. 9.1",
            Citation::ResidualLifting => "Freitas-Le Hung-Siksek, Thms. 3 and 4",
            Citation::LocalExclusion => "local inertia exclusion",
            Citation::SemistableAtSeven => "Freitas-Le Hung-Siksek, Thm. 7",
            Citation::SkinnerWiles => "Skinner-Wiles, nearly ordinary lifting",
            Citation::ModSevenDispatch => "mod 7 criterion for fields unramified at 7",
            Citation::Thorne => "Thorne, Thm. 7.6",
            Citation::BorelOrders => "Borel subgroup enumeration",
            Citation::InertiaIndependence => "Silverman, AEC VII, Ex. 7.9",
            Citation::SemistableTwist => "semistabilising quadratic twist",
            Citation::Freitas => "Freitas, Thm. 6.3",
            Citation::TwistInvariance => "twist invariance of modularity",
            Citation::CmBaseChange => "Breuil-Conrad-Diamond-Taylor with solvable base change",
        }
    }

    /// What the cited result delivers here, in the engine's own terms.
    pub fn anchor(self) -> &'static str {
        match self {
            Citation::FieldHypotheses => "totally real, abelian, unramified at 3, 5 and 7",
            Citation::FrobeniusCertificate => "irreducible x^2 - a x + N mod p forces an irreducible residual representation",
            Citation::IsogenyFibre => "reducible exactly when j has a K-rational preimage under F_p",
            Citation::KrausPotMult => "inertia on E[p] for additive potentially multiplicative reduction",
            Citation::KrausOrdinary => "inertia on E[p] for additive potentially good ordinary reduction",
            Citation::KrausSupersingular => "inertia on E[p] for additive potentially good supersingular reduction",
            Citation::ExceptionalImages => "projective images when irreducibility fails over K(zeta_p)",
            Citation::ResidualLifting => "absolutely irreducible over K(zeta_p) implies modular, p = 5, 7",
            Citation::LocalExclusion => "a large cyclic inertia image rules out every exceptional image",
            Citation::SemistableAtSeven => "irreducible mod 7 and semistable at a prime above 7",
            Citation::SkinnerWiles => "potentially ordinary at every prime above 7",
            Citation::ModSevenDispatch => "irreducible mod 7 over a totally real field unramified at 7",
            Citation::Thorne => "irreducible mod 5 over a totally real field not containing sqrt(5)",
            Citation::BorelOrders => "orders of B(F_5), B(F_7) and their order-4 elements",
            Citation::InertiaIndependence => "the inertia image on E[m] does not depend on m",
            Citation::SemistableTwist => "Tate's algorithm re-run on the twist at every prime above 3",
            Citation::Freitas => "abelian totally real, 3 unramified, semistable above 3",
            Citation::TwistInvariance => "E and its quadratic twists are modular together",
            Citation::CmBaseChange => "j = 0 becomes defined over Q after a solvable extension",
        }
    }
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.label(), self.anchor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn registry_strings_are_distinct() {
        let labels: HashSet<_> = Citation::ALL.iter().map(|c| c.label()).collect();
        assert_eq!(labels.len(), Citation::ALL.len());
        assert!(Citation::ALL.iter().all(|c| !c.anchor().is_empty()));
    }
}
