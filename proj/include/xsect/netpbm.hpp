#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "xsect/binary_matrix.hpp"
#include "xsect/dyadic_set.hpp"

namespace xsect {

/// Matrix text: one row per line of '0'/'1' characters.
void write_matrix_text(std::ostream& os, const BinaryMatrix& a);
BinaryMatrix read_matrix_text(std::istream& is);

/// PBM P1; matrix row 1 is the top image row, 1 = black.
void write_pbm(std::ostream& os, const BinaryMatrix& a);
BinaryMatrix read_pbm(std::istream& is);

/// Image of a dyadic set, one pixel per finest cell. Row band 1 (lowest y) is
/// the bottom image row. Writes PBM P1 when K = 0 and PGM P2 otherwise, with
/// pixel = round(maxval * fill / 2^K); maxval is 255 for K <= 7 and 2^K
/// above that so the image stays invertible. A comment records N and K.
void write_set_image(std::ostream& os, const DyadicSet& e);

/// Inverse of write_set_image. K comes from the "# xsect N=.. K=.." comment,
/// or from `refinement` when the comment is absent (PBM implies K = 0).
DyadicSet read_set_image(std::istream& is, std::optional<int> refinement = std::nullopt);

}  // namespace xsect
