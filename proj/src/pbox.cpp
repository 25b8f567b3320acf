#include "shockcop/pbox.hpp"

#include <sstream>

#include "shockcop/error.hpp"

namespace shockcop {

PBox make_pbox(DistFn lower, DistFn upper) {
  if (!lower.is_standardized() || !upper.is_standardized()) {
    throw InvalidParameter("p-box bounds must vanish at -inf");
  }
  if (const auto w = find_order_violation(lower, upper)) {
    std::ostringstream os;
    os << "p-box lower bound exceeds upper bound at x=" << w->x << " (" << w->lhs << " > "
       << w->rhs << ")";
    throw OrderViolation(os.str(), w->x);
  }
  return PBox(std::move(lower), std::move(upper));
}

PBox precise(const DistFn& f) { return make_pbox(f, f); }

PBox max_pbox(const PBox& a, const PBox& b) {
  return make_pbox(product(a.lower(), b.lower()), product(a.upper(), b.upper()));
}

PBox min_pbox(const PBox& a, const PBox& b) {
  return make_pbox(comix(a.lower(), b.lower()), comix(a.upper(), b.upper()));
}

}  // namespace shockcop
