#ifndef EVOMLP_FORMAT_HPP
#define EVOMLP_FORMAT_HPP

#include <string>

namespace evomlp {

/// Shortest decimal text that reads back to the same binary64 value.
std::string format_real(double value);

}  // namespace evomlp

#endif  // EVOMLP_FORMAT_HPP
