#include "locind/scalar.hpp"

#include <cstdlib>

namespace locind {

BigRat bigrat_from_string(const std::string& s) {
  if (s.empty()) fail_validation("empty rational literal");
  if (s.find('/') != std::string::npos) {
    BigRat q;
    if (q.set_str(s, 10) != 0) fail_validation("bad rational literal: " + s);
    if (q.get_den() == 0) fail_validation("zero denominator in: " + s);
    q.canonicalize();
    return q;
  }
  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos) {
    char* end = nullptr;
    double d = std::strtod(s.c_str(), &end);
    if (end == nullptr || *end != '\0')
      fail_validation("bad numeric literal: " + s);
    return bigrat_from_double(d);
  }
  BigRat q;
  if (q.set_str(s, 10) != 0) fail_validation("bad integer literal: " + s);
  q.canonicalize();
  return q;
}

}  // namespace locind
