use rand::Rng;

use crate::action::OreAction;

/// Random generation of elements and points, used by presets and randomized law checks.
///
/// Generated values are kept small so that long composition chains stay cheap.
pub trait RandomSample: OreAction {
    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Element;
    fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Point;
}
