#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gg {

using ext = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                          boost::multiprecision::et_off>;

enum class Precision { dbl, extended };

struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct unsupported_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class R>
R parse_real(const std::string& s) {
  if constexpr (std::is_same_v<R, double>) {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw domain_error("bad number: " + s);
    return v;
  } else {
    try {
      return R(s);
    } catch (const std::exception&) {
      throw domain_error("bad number: " + s);
    }
  }
}

template <class R>
std::string format_real(const R& v, int digits) {
  std::ostringstream os;
  os.precision(digits);
  if constexpr (std::is_same_v<R, double>) {
    os << v;
  } else {
    os << ext(v);
  }
  return os.str();
}

inline double to_double(double v) { return v; }
inline double to_double(const ext& v) { return static_cast<double>(v); }

// decimal literal at full precision of R
template <class R>
R lit(const char* s) {
  if constexpr (std::is_same_v<R, double>)
    return std::stod(s);
  else
    return R(s);
}

template <class R>
R eps_of() { return std::numeric_limits<R>::epsilon(); }

}  // namespace gg
