#include "expbern/types.hpp"

#include <cmath>
#include <cstdio>

namespace expbern {

double require_real(cplx z, const std::string& what, double rel) {
    double scale = std::max(1.0, std::abs(z));
    if (std::abs(z.imag()) > rel * scale) {
        throw Error(what + " is not real: imaginary part " +
                    format_double(z.imag()) + " at modulus " +
                    format_double(std::abs(z)));
    }
    return z.real();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_complex(cplx z) {
    return "(" + format_double(z.real()) + "," + format_double(z.imag()) + ")";
}

}  // namespace expbern
