#pragma once
// Seeded generators for Tate-type test objects.  The filtration is built as
// a graph over the Hodge filtration plus a graph over the inf part, which
// satisfies the defining conditions by shape; each mutation then breaks
// exactly one condition and leaves the rest intact.

#include <array>
#include <optional>
#include <random>

#include "modhodge/mhsm.hpp"

namespace modhodge {

struct TateFixture {
  MHSMObject valid;
  std::array<MHSMObject, 4> broken;  // breaks clause a, b, c, d respectively
};

TateFixture random_tate_fixture(std::mt19937_64& rng, bool with_torsion);

// free level-one object: weights in [-2, 0], level-zero addition and
// infinity parts, middle graded piece split by a genuinely complex line
MHSMObject random_mhsm1(std::mt19937_64& rng);

// window fixture at n = 1: weights in [0, 2], level-one parts only;
// sigma_zero decides whether the infinity part dies in the drop-add quotient
MHSMObject random_box1_fixture(std::mt19937_64& rng, bool sigma_zero);

// basis of the morphism space x -> y (integral lattice map, level blocks,
// transition and filtration compatibility), then random integer combinations
std::vector<MHSMMorphism> sample_morphisms(std::mt19937_64& rng, const MHSMObject& x,
                                           const MHSMObject& y, size_t count);

std::optional<MHSMMorphism> find_isomorphism(std::mt19937_64& rng, const MHSMObject& x,
                                             const MHSMObject& y, size_t tries);

// direct sum with the evident inclusions/projections; free lattices only
MHSMObject direct_sum(const MHSMObject& x, const MHSMObject& y);
MHSMMorphism summand_inclusion(const MHSMObject& x, const MHSMObject& y, int which);
MHSMMorphism summand_projection(const MHSMObject& x, const MHSMObject& y, int which);

}  // namespace modhodge
