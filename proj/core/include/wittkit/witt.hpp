#pragma once

#include "wittkit/form_classify.hpp"

namespace wittkit::formcore {

using exactalg::AbelianGroupPresentation;

/// Output of gw0 / witt_group: the group in invariant-factor form, the image
/// of each labelled generator in canonical coordinates, and a printable
/// description. Over Z the coordinates are (signature, positive rank) and
/// `image_basis` holds a Hermite basis of the image sublattice.
struct GroupResult {
  AbelianGroupPresentation group;
  std::vector<std::pair<std::string, std::vector<Int>>> generator_images;
  std::optional<Matrix> image_basis; // rows, over Z (subgroup-of-Z^2 cases)
  std::string description;
};

/// Grothendieck-Witt group of the monoid of isometry classes under
/// orthogonal sum.
///  - finite rings: classes up to rank_cap are enumerated, the relation
///    [F] + [G] = [F (+) G] is imposed for all sums within the cap, and the
///    presentation is put in invariant-factor form by SNF.
///  - Z, symmetric/quadratic with eps = +1: coordinates are (signature,
///    rank of the positive definite part); the listed generators span the
///    image sublattice.
GroupResult gw0(const FormParameter &param,
                const std::vector<UnimodularForm> &generators_over_Z,
                int rank_cap);

/// Witt group L_0^ht: gw0 modulo the subgroup generated by strictly
/// metabolic classes (those with a Lagrangian). Over Z computed by
/// signature; brute force over finite rings.
GroupResult witt_group(const FormParameter &param, int rank_cap);

/// Classes of rank <= rank_cap with their Witt coordinates (finite rings).
struct WittClassTable {
  std::vector<UnimodularForm> classes;
  std::vector<std::vector<Int>> witt_coords;
  GroupResult group;
};
WittClassTable witt_classes(const FormParameter &param, int rank_cap);

/// E8: the rank-8 even positive definite form (Cartan matrix), as a form
/// for the given parameter (symmetric or quadratic over Z).
UnimodularForm e8_form(const FormParameter &param);

} // namespace wittkit::formcore
