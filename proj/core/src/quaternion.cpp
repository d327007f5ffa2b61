#include "isonet/quaternion.hpp"

#include <ostream>

#include "isonet/error.hpp"

namespace isonet {

Quaternion inverse(const Quaternion& q, double scale) {
  const double n2 = q.norm2();
  if (!q.finite() || !(std::sqrt(n2) > kEpsZero * scale)) {
    throw Error(ErrorKind::ZeroDivision, "quaternion is not invertible");
  }
  return q.conj() / n2;
}

Quaternion right_divide(const Quaternion& p, const Quaternion& q, double scale) {
  return p * inverse(q, scale);
}

Quaternion left_divide(const Quaternion& q, const Quaternion& p, double scale) {
  return inverse(q, scale) * p;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
}

}  // namespace isonet
