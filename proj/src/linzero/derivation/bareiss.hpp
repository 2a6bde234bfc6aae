#ifndef LINZERO_DERIVATION_BAREISS_HPP
#define LINZERO_DERIVATION_BAREISS_HPP

#include <cstddef>

#include "linzero/derivation/linsys.hpp"

namespace linzero {

// Fraction-free (Bareiss) elimination over Q[t, p]. Pivots are taken from the
// lowest available row index in each column so results are reproducible.

// Rank over the fraction field of the polynomial ring.
std::size_t bareiss_rank(PolyMatrix m);

// Determinant of a square matrix.
MPoly bareiss_determinant(PolyMatrix m);

}  // namespace linzero

#endif
