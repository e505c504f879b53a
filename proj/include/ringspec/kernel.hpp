#ifndef RINGSPEC_KERNEL_HPP
#define RINGSPEC_KERNEL_HPP

#include <concepts>
#include <string_view>
#include <vector>

#include "ringspec/bc.hpp"
#include "ringspec/matalg.hpp"

namespace ringspec {

enum class Theory { dirac, schrod };

inline std::string_view to_string(Theory t) { return t == Theory::dirac ? "dirac" : "schrod"; }

/// Anything that maps a dimensionless energy to the unitary boundary matrix
/// B(x), whose secular equation det(B(x) - U) = 0 gives the spectrum.
/// `boundary` may throw PoleError where B has no value.
template <typename K>
concept SpectralKernel = requires(const K& k, double x, const UnitaryBC& u) {
  { k.boundary(x) } -> std::convertible_to<Mat2>;
  { k.value(x, u) } -> std::convertible_to<cplx>;
  { k.mandatory_nodes() } -> std::convertible_to<std::vector<double>>;
  { K::theory } -> std::convertible_to<Theory>;
};

}  // namespace ringspec

#endif  // RINGSPEC_KERNEL_HPP
