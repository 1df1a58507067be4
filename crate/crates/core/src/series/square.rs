use serde::Serialize;

use super::puiseux::PuiseuxSeries;
use super::ratfun::RationalFunction;
use super::SeriesError;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SquareMode {
    /// Over an algebraically closed coefficient field: only the order's
    /// parity matters.
    OverC,
    /// Over the element's own coefficient field.
    Exact,
}

#[derive(Clone, Debug, PartialEq)]
pub enum NonSquareCertificate<K> {
    /// The `r`-order is odd; `ram` converts it to a `t`-valuation.
    OddOrder { order: i64, ram: u32 },
    /// Even order, but the leading coefficient has no root in the field.
    NonSquareLeading { order: i64, leading: K },
}

#[derive(Clone, Debug, PartialEq)]
pub enum LocalSquare<K> {
    Square,
    NonSquare(NonSquareCertificate<K>),
    /// The element is zero to the available precision.
    Undecided,
}

impl<K> LocalSquare<K> {
    pub fn is_square(&self) -> bool {
        matches!(self, LocalSquare::Square)
    }
}

/// Elements of a local field that expose an order and a leading term.
pub trait LocalElement<K: Scalar> {
    /// `Ok(None)` when only known to be zero to some precision.
    fn local_order(&self) -> Result<Option<i64>, SeriesError>;
    fn local_leading(&self) -> Result<K, SeriesError>;
    fn local_ram(&self) -> u32;
    fn local_domain(&self) -> K::Domain;
}

impl<K: Scalar> LocalElement<K> for RationalFunction<K> {
    fn local_order(&self) -> Result<Option<i64>, SeriesError> {
        self.order_at_zero().map(Some)
    }

    fn local_leading(&self) -> Result<K, SeriesError> {
        self.leading_coefficient()
    }

    fn local_ram(&self) -> u32 {
        self.place().ram()
    }

    fn local_domain(&self) -> K::Domain {
        self.domain().clone()
    }
}

impl<K: Scalar> LocalElement<K> for PuiseuxSeries<K> {
    fn local_order(&self) -> Result<Option<i64>, SeriesError> {
        Ok(self.lead())
    }

    fn local_leading(&self) -> Result<K, SeriesError> {
        self.leading_coefficient()
    }

    fn local_ram(&self) -> u32 {
        self.place().ram()
    }

    fn local_domain(&self) -> K::Domain {
        self.domain().clone()
    }
}

/// Decides whether `f` is a square in the local field at its place.
///
/// The exact zero function has no order and is an error; a series that is
/// merely zero to precision is [`LocalSquare::Undecided`].
pub fn is_square_local<K: Scalar, E: LocalElement<K>>(
    f: &E,
    mode: SquareMode,
) -> Result<LocalSquare<K>, SeriesError> {
    let Some(order) = f.local_order()? else {
        return Ok(LocalSquare::Undecided);
    };
    if order % 2 != 0 {
        return Ok(LocalSquare::NonSquare(NonSquareCertificate::OddOrder { order, ram: f.local_ram() }));
    }
    if mode == SquareMode::OverC {
        return Ok(LocalSquare::Square);
    }
    let leading = f.local_leading()?;
    Ok(match leading.sqrt_in(&f.local_domain()) {
        Some(_) => LocalSquare::Square,
        None => LocalSquare::NonSquare(NonSquareCertificate::NonSquareLeading { order, leading }),
    })
}
