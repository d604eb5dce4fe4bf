#ifndef LSQ_PRINTER_HPP
#define LSQ_PRINTER_HPP

#include "lsq/syntax.hpp"

#include <string>

namespace lsq {

// Renders with minimal parentheses; parse(pretty(x)) is alpha-equal to x.
// Sugar (Q^n) is not reconstructed.
std::string pretty(const PropPtr &p);
std::string pretty(const TermPtr &t);

} // namespace lsq

#endif
