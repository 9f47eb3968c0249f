use std::fmt::Debug;
use std::hash::Hash;

/// A group law over a concrete element type.
///
/// The law lives on a context value so that elements can stay plain data
/// (finite quotients need their modulus, finite groups need their table).
pub trait Group {
    type Elem: Clone + Ord + Hash + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }
}
