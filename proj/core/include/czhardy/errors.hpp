#pragma once

#include <stdexcept>

namespace czhardy {

// Raised when a set construction or closed-form evaluation would involve
// vertices outside the truncation.  Closed-form measure formulas are only
// valid for fully contained sets, so these fail loudly instead of clipping.
class containment_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

}  // namespace czhardy
