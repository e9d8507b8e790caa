#include "evomlp/format.hpp"

#include <charconv>
#include <system_error>

namespace evomlp {

std::string format_real(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc())
        return "nan";
    return std::string(buf, ptr);
}

}  // namespace evomlp
